use std::collections::BTreeMap;
use std::fmt;

use super::diagram::TLDiagram;
use super::TlError;
use crate::exact::{Scalar, ScalarField};
use crate::tangle::{Colour, Endpoint, PlanarTangle};
use crate::zoo;

/// Substitute one diagram into each internal box of `t`; returns the
/// resulting diagram and the number of closed loops (including the free
/// loops `t` already had).
pub fn substitute(t: &PlanarTangle, diagrams: &[&TLDiagram]) -> Result<(TLDiagram, usize), TlError> {
    if diagrams.len() != t.box_count() {
        return Err(TlError::Arity { expected: t.box_count(), found: diagrams.len() });
    }
    for (i, d) in diagrams.iter().enumerate() {
        if d.colour() != t.boxes()[i] {
            return Err(TlError::ColourMismatch { expected: t.boxes()[i], found: d.colour() });
        }
    }
    // Walk from `e` along the tangle, hopping across boxes through the
    // diagrams, until the walk reaches the boundary again.
    let walk = |start: Endpoint, seen: &mut Vec<Vec<bool>>| -> Endpoint {
        let mut e = start;
        loop {
            let f = t.partner(e);
            if f.vertex == 0 {
                return f;
            }
            seen[f.vertex][f.point - 1] = true;
            let q = diagrams[f.vertex - 1].partner()[f.point - 1] + 1;
            seen[f.vertex][q - 1] = true;
            e = Endpoint::int(f.vertex, q);
        }
    };
    let mut seen: Vec<Vec<bool>> = (0..t.vertex_count()).map(|v| vec![false; t.colour_of(v).points()]).collect();
    let d = t.external().points();
    let mut partner = vec![0; d];
    for p in 1..=d {
        let f = walk(Endpoint::ext(p), &mut seen);
        partner[p - 1] = f.point - 1;
    }
    let mut loops = t.loop_count();
    for v in 1..t.vertex_count() {
        for p in 1..=t.colour_of(v).points() {
            if seen[v][p - 1] {
                continue;
            }
            // A closed cycle through box points only.
            loops += 1;
            let start = Endpoint::int(v, p);
            let mut e = start;
            loop {
                seen[e.vertex][e.point - 1] = true;
                let q = diagrams[e.vertex - 1].partner()[e.point - 1] + 1;
                seen[e.vertex][q - 1] = true;
                let f = t.partner(Endpoint::int(e.vertex, q));
                if f == start {
                    break;
                }
                e = f;
            }
        }
    }
    let diagram = TLDiagram::from_partner(t.external(), partner).expect("planar substitution is non-crossing");
    Ok((diagram, loops))
}

/// A finite linear combination of diagrams of one colour. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    colour: Colour,
    field: ScalarField,
    terms: BTreeMap<TLDiagram, Scalar>,
}

impl TLElement {
    pub fn zero(field: ScalarField, colour: Colour) -> TLElement {
        TLElement { colour, field, terms: BTreeMap::new() }
    }

    pub fn diagram(field: ScalarField, d: TLDiagram) -> TLElement {
        let mut e = TLElement::zero(field, d.colour());
        e.terms.insert(d, field.one());
        e
    }

    pub fn one(field: ScalarField, colour: Colour) -> TLElement {
        TLElement::diagram(field, TLDiagram::identity(colour))
    }

    /// Non-normalised Jones projection `E_i` at colour `n` (cup-cap at `i, i+1`).
    pub fn jones_e(field: ScalarField, n: u32, i: usize) -> Result<TLElement, TlError> {
        TLDiagram::jones(n, i)
            .map(|d| TLElement::diagram(field, d))
            .ok_or(TlError::Range(format!("E_{i} does not exist at colour {n}")))
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: TLDiagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TLElement) -> TLElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TLElement) -> TLElement {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> TLElement {
        let mut out = TLElement::zero(self.field, self.colour);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    /// Product `self * other`: `self` on top, through `M(n,n,n)`.
    pub fn multiply(&self, other: &TLElement) -> Result<TLElement, TlError> {
        if self.colour != other.colour {
            return Err(TlError::ColourMismatch { expected: self.colour, found: other.colour });
        }
        match self.colour {
            Colour::Positive(n) => {
                let m = zoo::mult(n, n, n).expect("stacking tangle exists");
                evaluate(&m, &[self, other])
            }
            // Zero colours: both are multiples of the empty diagram.
            _ => {
                let a = self.coefficient(&TLDiagram::identity(self.colour));
                let b = other.coefficient(&TLDiagram::identity(self.colour));
                let mut out = TLElement::zero(self.field, self.colour);
                out.add_term(TLDiagram::identity(self.colour), a * b);
                Ok(out)
            }
        }
    }

    /// Adjoint: reflect every diagram (coefficients are real).
    pub fn adjoint(&self) -> TLElement {
        let mut out = TLElement::zero(self.field, self.colour);
        for (d, c) in &self.terms {
            out.add_term(d.adjoint(), c.clone());
        }
        out
    }

    /// Unnormalised trace: close on the right and count loops.
    pub fn trace(&self) -> Scalar {
        self.closure(false)
    }

    /// Trace through the closure around the left.
    pub fn left_trace(&self) -> Scalar {
        self.closure(true)
    }

    fn closure(&self, left: bool) -> Scalar {
        match self.colour {
            Colour::Positive(n) => {
                let t = if left { zoo::trl(n) } else { zoo::tr(n) }.expect("closure tangle exists");
                let v = evaluate(&t, &[self]).expect("closure has matching colour");
                v.coefficient(&TLDiagram::identity(t.external()))
            }
            _ => self.coefficient(&TLDiagram::identity(self.colour)),
        }
    }

    /// Normalised trace `delta^{-n} trace(x)`.
    pub fn tau(&self) -> Scalar {
        let n = self.colour.level() as i64;
        self.trace() * self.field.delta_pow(-n)
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]{d}")?;
        }
        Ok(())
    }
}

/// Multilinear evaluation of a tangle on elements placed in its boxes.
pub fn evaluate(t: &PlanarTangle, inputs: &[&TLElement]) -> Result<TLElement, TlError> {
    if inputs.len() != t.box_count() {
        return Err(TlError::Arity { expected: t.box_count(), found: inputs.len() });
    }
    let field = inputs.first().map(|x| x.field).unwrap_or(ScalarField::GenericDelta);
    evaluate_in(field, t, inputs)
}

/// As [`evaluate`], with the field given explicitly (needed for boxless tangles).
pub fn evaluate_in(field: ScalarField, t: &PlanarTangle, inputs: &[&TLElement]) -> Result<TLElement, TlError> {
    let mut out = TLElement::zero(field, t.external());
    let lists: Vec<Vec<(&TLDiagram, &Scalar)>> = inputs.iter().map(|x| x.terms.iter().collect()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; lists.len()];
    loop {
        let ds: Vec<&TLDiagram> = idx.iter().zip(&lists).map(|(&i, l)| l[i].0).collect();
        let (d, loops) = substitute(t, &ds)?;
        let mut c = field.delta_pow(loops as i64);
        for (&i, l) in idx.iter().zip(&lists) {
            c = c * l[i].1;
        }
        out.add_term(d, c);
        // Odometer over the term lists.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: ScalarField = ScalarField::GenericDelta;

    #[test]
    fn e2_squared_is_delta_e2() {
        let e = TLElement::jones_e(G, 2, 1).unwrap();
        assert_eq!(e.multiply(&e).unwrap(), e.scale(&G.delta()));
    }

    #[test]
    fn identity_is_unit() {
        let x = TLElement::jones_e(G, 3, 2).unwrap().add(&TLElement::jones_e(G, 3, 1).unwrap());
        let one = TLElement::one(G, Colour::n(3));
        assert_eq!(one.multiply(&x).unwrap(), x);
        assert_eq!(x.multiply(&one).unwrap(), x);
    }

    #[test]
    fn traces() {
        let one = TLElement::one(G, Colour::n(2));
        assert!(one.tau().is_one());
        let e = TLElement::jones_e(G, 2, 1).unwrap();
        assert_eq!(e.trace(), G.delta());
        assert_eq!(e.scale(&G.delta_pow(-1)).tau(), G.delta_pow(-2));
    }

    #[test]
    fn substitution_counts_loops() {
        let t = zoo::er(Colour::n(2), 1).unwrap().compose(&[(1, &zoo::inclusion(2, 1).unwrap())]).unwrap();
        let id = TLDiagram::identity(Colour::n(2));
        assert_eq!(substitute(&t, &[&id]).unwrap(), (id.clone(), 1));
        let tr = zoo::tr(2).unwrap();
        assert_eq!(substitute(&tr, &[&id]).unwrap().1, 2);
    }
}
