//! P_m (x) P_n over P_{k-1} against P_{m+n-k+1}, and the partition of unity.

use skein::present::{kernel_decomposition_check, partition_of_unity, tensor_dim_check, PresentationConfig};
use skein::tl::{ConcreteInstance, Model};

fn main() {
    let inst = ConcreteInstance::build(Model::QuotientTL(5), 5).unwrap();
    let cfg = PresentationConfig::new(inst, 3).unwrap();
    for (a, b) in [(3, 3), (3, 4)] {
        let t = tensor_dim_check(&cfg, a, b).unwrap();
        println!(
            "P_{a} (x) P_{b}: dim {}, image {} of {}, middle relators span {}, ok {}",
            t.tensor_dim, t.rank, t.target_dim, t.relator_rank, t.ok()
        );
    }
    let p = partition_of_unity(&cfg, 3).unwrap();
    println!("partition of unity at n=3 uses {} pairs, reproducing identity {}", p.pairs.len(), p.ok());
    let k = kernel_decomposition_check(&cfg, 3, 3, 4, &[]).unwrap();
    println!("kernel decomposition on {} kernel vectors: {}", k.samples.len(), k.ok());
}
