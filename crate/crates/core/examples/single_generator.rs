//! One 2k-box z generating the quotient, and relations rewritten in z.

use skein::present::{change_of_generators, generate_relations, single_generator, PresentationConfig};
use skein::tl::{ConcreteInstance, Model};

fn main() {
    let inst = ConcreteInstance::build(Model::QuotientTL(5), 6).unwrap();
    let cfg = PresentationConfig::new(inst.clone(), 3).unwrap();
    let g = single_generator(&inst, 3, 0).unwrap();
    let c = &g.certificate;
    println!("x = {}", g.x.element);
    println!("tau(x) = {}, algebra generated by x, x*: dim {} of {}", c.tau, c.closure_rank, c.dim);
    println!("Recover_1(z) = {} x, Recover_2(z) = {} x*", c.recovery[0], c.recovery[1]);
    let (to_b, to_z) = (g.to_basis(&inst, &cfg.basis).unwrap(), g.to_z(&inst, &cfg.basis).unwrap());
    let (rel, rep) = change_of_generators(&inst, &to_b, &to_z, &generate_relations(&cfg).unwrap()).unwrap();
    println!("{} relations in the label z, all vanish: {}", rel.len(), rep.ok());
}
