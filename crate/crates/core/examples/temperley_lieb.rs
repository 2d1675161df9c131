//! Temperley-Lieb elements over the generic modulus and in a quotient.

use skein::exact::ScalarField;
use skein::tangle::Colour;
use skein::tl::{tl_basis, TLElement};

fn main() {
    let f = ScalarField::GenericDelta;
    let e1 = TLElement::jones_e(f, 3, 1).unwrap();
    let e2 = TLElement::jones_e(f, 3, 2).unwrap();
    println!("E1^2 = {}", e1.multiply(&e1).unwrap());
    println!("E1 E2 E1 = {}", e1.multiply(&e2).unwrap().multiply(&e1).unwrap());
    println!("tr(E1 E2) = {}, tau(E1 E2) = {}", e1.multiply(&e2).unwrap().trace(), e1.multiply(&e2).unwrap().tau());
    for n in 0..=6 {
        println!("dim TL_{n} = {}", tl_basis(Colour::n(n)).len());
    }
    let g = ScalarField::QuadraticGolden;
    let x = TLElement::jones_e(g, 2, 1).unwrap();
    println!("at delta = golden ratio, tr(E1) in TL_2 = {}", x.trace());
}
