//! The tangle expression language used by the command line.

use skein::cli::parse_expression;

fn main() {
    for text in ["I(2,1)", "compose(M(2,2,2), E(2), _)", "compose(M(3,3,3), I(2,1), I(2,1))", "compose(M(3,3,3), T(3,2), _)", "M(1,1,5)", "compose(I(2,1),\n  Foo(1))"] {
        match parse_expression(text) {
            Ok(e) => match e.build() {
                Ok(t) => println!("{e}: colour {}, code {}", t.external(), t.canonical_code()),
                Err(err) => println!("{e}: parses, does not build: {err}"),
            },
            Err(err) => println!("{text:?}: {err}"),
        }
    }
}
