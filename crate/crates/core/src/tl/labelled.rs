use std::fmt;

use super::element::TLElement;
use super::instance::ConcreteInstance;
use super::TlError;
use crate::exact::Scalar;
use crate::tangle::{Colour, PlanarTangle};

/// A named element used to fill boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub name: String,
    pub element: TLElement,
}

impl Label {
    pub fn new(name: impl Into<String>, element: TLElement) -> Label {
        Label { name: name.into(), element }
    }

    pub fn colour(&self) -> Colour {
        self.element.colour()
    }

    /// The basis labels `b{n}.{i}` of an instance at a colour.
    pub fn basis(inst: &ConcreteInstance, colour: Colour) -> Result<Vec<Label>, TlError> {
        (0..inst.dim(colour)?)
            .map(|i| Ok(Label::new(format!("b{colour}.{i}"), inst.basis_element(colour, i)?)))
            .collect()
    }
}

/// A tangle with every internal box filled by a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTangle {
    pub tangle: PlanarTangle,
    pub labels: Vec<Label>,
}

impl LabelledTangle {
    pub fn new(tangle: PlanarTangle, labels: Vec<Label>) -> Result<LabelledTangle, TlError> {
        if labels.len() != tangle.box_count() {
            return Err(TlError::Unlabelled(labels.len() + 1));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.colour() != tangle.boxes()[i] {
                return Err(TlError::ColourMismatch { expected: tangle.boxes()[i], found: l.colour() });
            }
        }
        Ok(LabelledTangle { tangle, labels })
    }

    pub fn colour(&self) -> Colour {
        self.tangle.external()
    }

    pub fn evaluate(&self, inst: &ConcreteInstance) -> Result<Vec<Scalar>, TlError> {
        let inputs: Vec<&TLElement> = self.labels.iter().map(|l| &l.element).collect();
        inst.evaluate(&self.tangle, &inputs)
    }
}

impl fmt::Display for LabelledTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.labels.iter().map(|l| l.name.as_str()).collect();
        write!(f, "{}({})", self.tangle.canonical_code(), names.join(","))
    }
}

/// A scalar combination of labelled tangles of one colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    pub colour: Colour,
    pub terms: Vec<(Scalar, LabelledTangle)>,
}

impl FormalSum {
    pub fn new(colour: Colour) -> FormalSum {
        FormalSum { colour, terms: Vec::new() }
    }

    pub fn push(&mut self, c: Scalar, t: LabelledTangle) -> Result<(), TlError> {
        if t.colour() != self.colour {
            return Err(TlError::ColourMismatch { expected: self.colour, found: t.colour() });
        }
        self.terms.push((c, t));
        Ok(())
    }

    pub fn evaluate(&self, inst: &ConcreteInstance) -> Result<Vec<Scalar>, TlError> {
        let mut acc = vec![inst.field().zero(); inst.dim(self.colour)?];
        for (c, t) in &self.terms {
            for (a, v) in acc.iter_mut().zip(t.evaluate(inst)?) {
                *a = &*a + &(c * &v);
            }
        }
        Ok(acc)
    }
}
