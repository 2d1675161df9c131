//! Build zoo tangles, compose them, and compare canonical codes.

use skein::tangle::Colour;
use skein::zoo;

fn main() {
    let m = zoo::mult(2, 2, 2).unwrap();
    let e = zoo::jones(2).unwrap();
    // E * E closes one loop and leaves E behind.
    let ee = m.compose(&[(1, &e), (2, &e)]).unwrap();
    println!("M(2,2,2)(E,E): {} loop(s), code {}", ee.loop_count(), ee.canonical_code());
    let (stripped, _, _) = ee.remove_all_loops();
    println!("after removing loops, equals E: {}", stripped.canonical_code() == e.canonical_code());

    let t = zoo::t(Colour::n(4), 2).unwrap();
    println!("T(4,2) has boxes {:?}", t.boxes());
    let tt = t.adjoint().adjoint();
    println!("adjoint is an involution: {}", tt.canonical_code() == t.canonical_code());

    let r = zoo::rotation(2).unwrap();
    let r3 = r.compose(&[(1, &r)]).unwrap().compose(&[(1, &r)]).unwrap();
    println!("R(2)^3 = identity: {}", r3.canonical_code() == zoo::identity(3).unwrap().canonical_code());
    println!("{}", zoo::jones(2).unwrap().to_json_string());
}
