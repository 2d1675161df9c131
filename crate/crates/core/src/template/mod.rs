//! Templates (ordered tangle pairs), their consequences under
//! reflexivity, transitivity and composition on the outside, a checker for
//! derivation scripts, and the linear-algebra test of when a template holds
//! in a concrete planar algebra.

mod derivation;
mod holds;
mod scripts;

pub use derivation::{check_derivation, Derivation, DerivationReport, ProofBuilder, Side, Step, StepReport};
pub use holds::{holds_for, rpb_span, span_rank};
pub use scripts::{thm32_scripts, Script};

use std::fmt;

use thiserror::Error;

use crate::tangle::{Colour, PlanarTangle, TangleError};
use crate::zoo;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemplateError {
    #[error("tangle error: {0}")]
    Tangle(#[from] TangleError),
    #[error("template sides have different colours: {0} and {1}")]
    ColourMismatch(Colour, Colour),
    #[error("step {step}: {msg}")]
    Step { step: usize, msg: String },
    #[error("unknown template `{0}`")]
    UnknownTemplate(String),
    #[error("evaluation error: {0}")]
    Eval(String),
}

/// An implication `lhs => rhs` between tangles of one colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    pub lhs: PlanarTangle,
    pub rhs: PlanarTangle,
}

impl Template {
    pub fn new(lhs: PlanarTangle, rhs: PlanarTangle) -> Result<Template, TemplateError> {
        if lhs.external() != rhs.external() {
            return Err(TemplateError::ColourMismatch(lhs.external(), rhs.external()));
        }
        Ok(Template { lhs, rhs })
    }

    pub fn colour(&self) -> Colour {
        self.lhs.external()
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.lhs.canonical_code(), self.rhs.canonical_code())
    }
}

/// A named list of templates.
#[derive(Clone, Debug, Default)]
pub struct TemplateSet {
    pub k: u32,
    entries: Vec<(String, Template)>,
}

impl TemplateSet {
    pub fn new(k: u32) -> TemplateSet {
        TemplateSet { k, entries: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, t: Template) {
        self.entries.push((name.into(), t));
    }

    pub fn get(&self, name: &str) -> Option<&Template> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Template)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The basic templates for depth parameter `k`.
///
/// Names: `modulus+`, `modulus+rev`, `modulus-`, `modulus-rev` (the two
/// directions of `C <=> 1` at each zero colour), `identity`, `inclusion`,
/// `jones{n}` for `2 <= n <= k`, `multiplication`, `condexp`, `depth`, `shift`.
pub fn basic_templates(k: u32) -> Result<TemplateSet, TemplateError> {
    if k == 0 {
        return Err(TemplateError::Tangle(TangleError::Invalid("k must be positive".into())));
    }
    let kc = Colour::n(k);
    let mut set = TemplateSet::new(k);
    for (c, tag) in [(Colour::ZeroPlus, "+"), (Colour::ZeroMinus, "-")] {
        let circle = zoo::circle(c)?;
        let empty = zoo::unit(c);
        set.push(format!("modulus{tag}"), Template::new(circle.clone(), empty.clone())?);
        set.push(format!("modulus{tag}rev"), Template::new(empty, circle)?);
    }
    let id = zoo::identity(k)?;
    set.push("identity", Template::new(zoo::unit(kc), id.clone())?);
    set.push("inclusion", Template::new(zoo::inclusion(k, 1)?, zoo::t(Colour::n(k + 1), k)?)?);
    for n in 2..=k {
        let lhs = zoo::inclusion(n, k - n)?.compose(&[(1, &zoo::jones(n)?)])?;
        set.push(format!("jones{n}"), Template::new(lhs, id.clone())?);
    }
    set.push("multiplication", Template::new(zoo::mult(k, k, k)?, id.clone())?);
    let ce = zoo::inclusion(k - 1, 1)?.compose(&[(1, &zoo::er(Colour::n(k - 1), 1)?)])?;
    set.push("condexp", Template::new(ce, id)?);
    set.push("depth", Template::new(zoo::unit(Colour::n(k + 1)), zoo::t(Colour::n(k + 1), k)?)?);
    set.push("shift", Template::new(zoo::shift(k)?, zoo::t(Colour::n(k + 2), k)?)?);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_template_counts() {
        // Four modulus directions plus six single templates, plus k-1 Jones templates.
        assert_eq!(basic_templates(1).unwrap().len(), 10);
        assert_eq!(basic_templates(3).unwrap().len(), 12);
        assert!(basic_templates(1).unwrap().iter().all(|(n, _)| !n.starts_with("jones")));
    }
}
