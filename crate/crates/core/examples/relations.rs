//! Generate the finite relation set of a quotient and check it.

use skein::present::{generate_relations, spanning_report, verify_relations_vanish, PresentationConfig};
use skein::tl::{ConcreteInstance, Model};

fn main() {
    let m = 4;
    let inst = ConcreteInstance::build(Model::QuotientTL(m), m + 1).unwrap();
    let cfg = PresentationConfig::new(inst, m - 2).unwrap();
    let rel = generate_relations(&cfg).unwrap();
    println!("{} relations", rel.len());
    for r in &rel.relations {
        println!("{:>15}: colour {}, {} term(s) on the right", r.template, r.lhs[0].1.tangle.external(), r.rhs.len());
    }
    println!("all vanish: {}", verify_relations_vanish(&cfg.instance, &rel).unwrap().ok());
    for s in spanning_report(&cfg, m + 1).unwrap() {
        println!("T^{} spans P_{}: rank {} of {}", s.colour, s.colour, s.rank, s.dim);
    }
}
