//! Finite presentations of the concrete planar algebras: the relation set
//! cut out by the basic templates, the checks that make it a presentation
//! at each colour up to a bound, the bimodule identities behind the
//! templates, and change of generating sets.

mod bimodule;
mod relations;
mod single;

pub use bimodule::{
    generating_closure_check, iterated_tensor_rank, kernel_decomposition_check, partition_of_unity, reproducing_identity, spanning_report,
    tensor_dim_check, tensor_kernel, ClosureVerdict, KernelReport, KernelSample, PartitionReport, SpanVerdict,
    TensorReport,
};
pub use relations::{generate_relations, verify_relations_vanish, Relation, RelationSet, VanishReport};
pub use single::{
    change_of_generators, combine, random_labelled_tangle, single_generator, telescoping_decomposition,
    GeneratorCertificate, LabelMorphism,
    SingleGenerator, TelescopeReport,
};

use thiserror::Error;

use crate::exact::{rank, Matrix, Scalar};
use crate::tangle::{Colour, PlanarTangle, TangleError};
use crate::template::{basic_templates, TemplateError, TemplateSet};
use crate::tl::{ConcreteInstance, Label, TLElement, TlError};
use crate::zoo;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentError {
    #[error(transparent)]
    Tl(#[from] TlError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error("{0} is not of finite depth")]
    InfiniteDepth(String),
    #[error("depth check fails at k = {k}: rank {rank} < dim {dim}")]
    Depth { k: u32, rank: usize, dim: usize },
    #[error("template `{template}` has no solution for labels {labels:?}")]
    Unsolvable { template: String, labels: Vec<String> },
    #[error("relation file: {0}")]
    Format(String),
    #[error("{0}")]
    Search(String),
}

/// The data fixed for a presentation: an instance, the depth bound `k`,
/// the basis `B` of `P_k` used as labels, and the basic templates.
#[derive(Clone, Debug)]
pub struct PresentationConfig {
    pub instance: ConcreteInstance,
    pub k: u32,
    pub basis: Vec<Label>,
    pub templates: TemplateSet,
}

impl PresentationConfig {
    /// Checks finite depth and the depth condition at `k`.
    pub fn new(instance: ConcreteInstance, k: u32) -> Result<PresentationConfig, PresentError> {
        if !instance.is_finite_depth() {
            return Err(PresentError::InfiniteDepth(instance.model().to_string()));
        }
        let cert = depth_check(&instance, k)?;
        if !cert.holds {
            return Err(PresentError::Depth { k, rank: cert.rank, dim: cert.dim });
        }
        Self::unchecked(instance, k)
    }

    /// No depth check; for negative controls.
    pub fn unchecked(instance: ConcreteInstance, k: u32) -> Result<PresentationConfig, PresentError> {
        let basis = Label::basis(&instance, Colour::n(k))?;
        let templates = basic_templates(k)?;
        Ok(PresentationConfig { instance, k, basis, templates })
    }

    pub fn basis_elements(&self) -> Vec<TLElement> {
        self.basis.iter().map(|l| l.element.clone()).collect()
    }

    /// The `m` of a quotient instance.
    pub fn m(&self) -> Option<u32> {
        match self.instance.model() {
            crate::tl::Model::QuotientTL(m) => Some(m),
            crate::tl::Model::GenericTL => None,
        }
    }
}

/// Outcome of [`depth_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthCertificate {
    pub k: u32,
    pub holds: bool,
    /// Rank of `{x E_{k+1} y}` in `P_{k+1}`.
    pub rank: usize,
    pub dim: usize,
}

/// Whether `P_{k+1} = P_k E_{k+1} P_k`, by the rank of all products of
/// basis elements of `P_k` (included in `P_{k+1}`) with `E_{k+1}` between.
pub fn depth_check(inst: &ConcreteInstance, k: u32) -> Result<DepthCertificate, PresentError> {
    if k == 0 {
        return Err(PresentError::Tangle(TangleError::Invalid("depth needs k >= 1".into())));
    }
    let big = Colour::n(k + 1);
    let dim = inst.dim(big)?;
    let incl = zoo::inclusion(k, 1)?;
    let stack = zoo::mult(k + 1, k + 1, k + 1)?;
    let e = crate::tl::evaluate_in(inst.field(), &zoo::jones(k + 1)?, &[])?;
    let lifted: Vec<TLElement> = (0..inst.dim(Colour::n(k))?)
        .map(|i| crate::tl::evaluate_in(inst.field(), &incl, &[&inst.basis_element(Colour::n(k), i)?]))
        .collect::<Result<_, _>>()?;
    let mut rows = Matrix::zeros(inst.field(), 0, dim);
    for x in &lifted {
        let xe = crate::tl::evaluate_in(inst.field(), &stack, &[x, &e])?;
        for y in &lifted {
            rows.push_row(inst.evaluate(&stack, &[&xe, y])?);
        }
    }
    let r = rank(&rows);
    Ok(DepthCertificate { k, holds: r == dim, rank: r, dim })
}

/// Every `len`-tuple of indices below `base`, box 1 slowest.
pub(crate) fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len > 0 && base == 0 {
        return out;
    }
    let mut idx = vec![0usize; len];
    loop {
        out.push(idx.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < base {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Quotient coordinates of `Z_T` applied to elements given by coordinates.
pub(crate) fn eval_coords(inst: &ConcreteInstance, t: &PlanarTangle, inputs: &[&[Scalar]]) -> Result<Vec<Scalar>, PresentError> {
    let elems: Vec<TLElement> =
        inputs.iter().zip(t.boxes()).map(|(c, &col)| inst.lift(col, c)).collect::<Result<_, _>>()?;
    let refs: Vec<&TLElement> = elems.iter().collect();
    Ok(inst.evaluate(t, &refs)?)
}

pub(crate) fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub(crate) fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::Model;

    fn quotient(m: u32, nmax: u32) -> ConcreteInstance {
        ConcreteInstance::build(Model::QuotientTL(m), nmax).unwrap()
    }

    #[test]
    fn depth_of_small_quotients() {
        assert!(depth_check(&quotient(3, 3), 1).unwrap().holds);
        let q4 = quotient(4, 4);
        assert!(depth_check(&q4, 2).unwrap().holds);
        let c = depth_check(&q4, 1).unwrap();
        assert!(!c.holds);
        assert_eq!((c.rank, c.dim), (1, 2));
        let generic = ConcreteInstance::build(Model::GenericTL, 4).unwrap();
        for k in 1..=3 {
            assert!(!depth_check(&generic, k).unwrap().holds);
        }
    }

    #[test]
    fn config_rejects_generic_and_shallow() {
        let generic = ConcreteInstance::build(Model::GenericTL, 3).unwrap();
        assert!(matches!(PresentationConfig::new(generic, 1), Err(PresentError::InfiniteDepth(_))));
        assert!(matches!(PresentationConfig::new(quotient(4, 4), 1), Err(PresentError::Depth { .. })));
        assert_eq!(PresentationConfig::new(quotient(4, 4), 2).unwrap().basis.len(), 2);
    }

    #[test]
    fn tuple_order() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(0, 5), vec![Vec::<usize>::new()]);
    }
}
