//! The semisimple quotient at delta = 2cos(pi/m): dimensions and the trace form.

use skein::tl::{ConcreteInstance, Model};

fn main() {
    let m = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let inst = ConcreteInstance::build(Model::QuotientTL(m), 6).unwrap();
    println!("{} over {}, delta = {}", inst.model(), inst.field().name(), inst.field().delta());
    for c in inst.colours() {
        println!(
            "P_{c}: dim {}, Gram determinant {}, positive {}",
            inst.dim(c).unwrap(),
            inst.gram_determinant(c).unwrap(),
            inst.is_positive(c).unwrap()
        );
    }
}
