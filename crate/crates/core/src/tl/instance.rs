use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::diagram::{colour_key, tl_basis, TLDiagram};
use super::element::{evaluate_in, substitute, TLElement};
use super::TlError;
use crate::exact::{rref, Matrix, Scalar, ScalarField};
use crate::tangle::{Colour, PlanarTangle};
use crate::zoo;

/// Which concrete planar algebra to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    /// Temperley-Lieb with an indeterminate modulus (infinite depth).
    GenericTL,
    /// Temperley-Lieb modulo the radical of its trace form at `delta = 2cos(pi/m)`.
    QuotientTL(u32),
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::GenericTL => write!(f, "generic-tl"),
            Model::QuotientTL(m) => write!(f, "quotient-tl(m={m})"),
        }
    }
}

impl Model {
    pub fn field(self) -> Result<ScalarField, TlError> {
        match self {
            Model::GenericTL => Ok(ScalarField::GenericDelta),
            Model::QuotientTL(m) => ScalarField::for_m(m).ok_or(TlError::UnsupportedModel(m)),
        }
    }
}

/// Full unnormalised trace Gram matrix `trace(d* e)` over all diagrams.
fn raw_gram(field: ScalarField, diagrams: &[TLDiagram]) -> Matrix {
    let colour = diagrams[0].colour();
    let n = colour.level();
    let mut g = Matrix::zeros(field, diagrams.len(), diagrams.len());
    if n == 0 {
        g.set(0, 0, field.one());
        return g;
    }
    let pairing = zoo::tr(n)
        .and_then(|tr| tr.compose(&[(1, &zoo::mult(n, n, n)?)]))
        .expect("pairing tangle exists");
    let adj: Vec<TLDiagram> = diagrams.iter().map(TLDiagram::adjoint).collect();
    for i in 0..diagrams.len() {
        for j in i..diagrams.len() {
            let (_, loops) = substitute(&pairing, &[&adj[i], &diagrams[j]]).expect("colours match");
            let v = field.delta_pow(loops as i64);
            g.set(j, i, v.clone());
            g.set(i, j, v);
        }
    }
    g
}

/// Normalised trace Gram matrix `tau(d* e)` over all diagrams at a colour.
pub fn gram_matrix(colour: Colour, field: ScalarField) -> Matrix {
    let diagrams = tl_basis(colour);
    let mut g = raw_gram(field, &diagrams);
    let s = field.delta_pow(-(colour.level() as i64));
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let v = g.get(i, j) * &s;
            g.set(i, j, v);
        }
    }
    g
}

/// Per-colour data of an instance.
#[derive(Clone, Debug)]
pub struct ColourData {
    pub colour: Colour,
    /// Every diagram at this colour, in basis order.
    pub diagrams: Vec<TLDiagram>,
    /// Indices (into `diagrams`) of the quotient basis.
    pub basis: Vec<usize>,
    /// `basis.len() x diagrams.len()`: coordinates of each diagram's image.
    pub projection: Matrix,
    /// Normalised trace form on the quotient basis.
    pub gram: Matrix,
    index: BTreeMap<TLDiagram, usize>,
}

/// A finite-dimensional planar algebra built from Temperley-Lieb
/// diagrams, available at colours `0+`, `0-` and `1..=nmax`.
#[derive(Clone, Debug)]
pub struct ConcreteInstance {
    model: Model,
    field: ScalarField,
    nmax: u32,
    data: BTreeMap<(u8, u32), ColourData>,
}

impl ConcreteInstance {
    pub fn build(model: Model, nmax: u32) -> Result<ConcreteInstance, TlError> {
        let field = model.field()?;
        let mut data = BTreeMap::new();
        let colours = [Colour::ZeroPlus, Colour::ZeroMinus].into_iter().chain((1..=nmax).map(Colour::n));
        for colour in colours {
            let cd = build_colour(model, field, colour)?;
            data.insert(colour_key(colour), cd);
        }
        Ok(ConcreteInstance { model, field, nmax, data })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    /// Only the quotients at roots of unity have finite depth.
    pub fn is_finite_depth(&self) -> bool {
        matches!(self.model, Model::QuotientTL(_))
    }

    pub fn colour_data(&self, colour: Colour) -> Result<&ColourData, TlError> {
        self.data.get(&colour_key(colour)).ok_or(TlError::ColourUnavailable(colour))
    }

    pub fn dim(&self, colour: Colour) -> Result<usize, TlError> {
        Ok(self.colour_data(colour)?.basis.len())
    }

    pub fn basis_diagrams(&self, colour: Colour) -> Result<Vec<TLDiagram>, TlError> {
        let cd = self.colour_data(colour)?;
        Ok(cd.basis.iter().map(|&i| cd.diagrams[i].clone()).collect())
    }

    pub fn basis_element(&self, colour: Colour, i: usize) -> Result<TLElement, TlError> {
        let cd = self.colour_data(colour)?;
        let d = cd.basis.get(i).ok_or_else(|| TlError::Range(format!("no basis element {i} at colour {colour}")))?;
        Ok(TLElement::diagram(self.field, cd.diagrams[*d].clone()))
    }

    /// Quotient coordinates of an element.
    pub fn project(&self, x: &TLElement) -> Result<Vec<Scalar>, TlError> {
        let cd = self.colour_data(x.colour())?;
        let mut out = vec![self.field.zero(); cd.basis.len()];
        for (d, c) in x.terms() {
            let j = cd.index[d];
            for (r, o) in out.iter_mut().enumerate() {
                let p = cd.projection.get(r, j);
                if !p.is_zero() {
                    *o = &*o + &(p * c);
                }
            }
        }
        Ok(out)
    }

    /// The element with the given quotient coordinates (a combination of basis diagrams).
    pub fn lift(&self, colour: Colour, coords: &[Scalar]) -> Result<TLElement, TlError> {
        let cd = self.colour_data(colour)?;
        if coords.len() != cd.basis.len() {
            return Err(TlError::Range(format!("expected {} coordinates, got {}", cd.basis.len(), coords.len())));
        }
        let mut x = TLElement::zero(self.field, colour);
        for (c, &i) in coords.iter().zip(&cd.basis) {
            x.add_term(cd.diagrams[i].clone(), c.clone());
        }
        Ok(x)
    }

    /// `Z_T(x_1, ..., x_b)` in quotient coordinates.
    pub fn evaluate(&self, t: &PlanarTangle, inputs: &[&TLElement]) -> Result<Vec<Scalar>, TlError> {
        let v = evaluate_in(self.field, t, inputs)?;
        self.project(&v)
    }

    /// Normalised trace of quotient coordinates.
    pub fn tau(&self, colour: Colour, coords: &[Scalar]) -> Result<Scalar, TlError> {
        Ok(self.lift(colour, coords)?.tau())
    }

    /// Exact determinant of the quotient trace form.
    pub fn gram_determinant(&self, colour: Colour) -> Result<Scalar, TlError> {
        Ok(self.colour_data(colour)?.gram.determinant())
    }

    /// All leading principal minors of the quotient trace form are positive.
    pub fn is_positive(&self, colour: Colour) -> Result<bool, TlError> {
        Ok(self.colour_data(colour)?.gram.leading_principal_minors().iter().all(Scalar::is_positive))
    }

    pub fn colours(&self) -> Vec<Colour> {
        self.data.values().map(|d| d.colour).collect()
    }
}

fn build_colour(model: Model, field: ScalarField, colour: Colour) -> Result<ColourData, TlError> {
    let diagrams = tl_basis(colour);
    let index = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let raw = raw_gram(field, &diagrams);
    let s = field.delta_pow(-(colour.level() as i64));
    let (basis, projection) = match model {
        Model::GenericTL => ((0..diagrams.len()).collect(), Matrix::identity(field, diagrams.len())),
        Model::QuotientTL(_) => {
            let (_, pivots) = rref(&raw);
            let all: Vec<usize> = (0..diagrams.len()).collect();
            let g_ss = raw.select(&pivots, &pivots);
            let g_sa = raw.select(&pivots, &all);
            // Solve G_SS P = G_S,all by reducing [G_SS | G_S,all].
            let k = pivots.len();
            let mut aug = Matrix::zeros(field, k, k + all.len());
            for r in 0..k {
                for c in 0..k {
                    aug.set(r, c, g_ss.get(r, c).clone());
                }
                for c in 0..all.len() {
                    aug.set(r, k + c, g_sa.get(r, c).clone());
                }
            }
            let (red, piv) = rref(&aug);
            if piv.len() != k || piv.iter().enumerate().any(|(i, &p)| p != i) {
                return Err(TlError::Degenerate(colour));
            }
            let mut p = Matrix::zeros(field, k, all.len());
            for r in 0..k {
                for c in 0..all.len() {
                    p.set(r, c, red.get(r, k + c).clone());
                }
            }
            (pivots, p)
        }
    };
    let mut gram = raw.select(&basis, &basis);
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            let v = gram.get(i, j) * &s;
            gram.set(i, j, v);
        }
    }
    if let Model::QuotientTL(_) = model {
        if !gram.leading_principal_minors().iter().all(Scalar::is_positive) {
            return Err(TlError::NotPositive(colour));
        }
    }
    Ok(ColourData { colour, diagrams, basis, projection, gram, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_examples() {
        let g1 = gram_matrix(Colour::n(1), ScalarField::Rational);
        assert_eq!(g1, Matrix::identity(ScalarField::Rational, 1));
        let f = ScalarField::GenericDelta;
        let g2 = gram_matrix(Colour::n(2), f);
        let d1 = f.delta_pow(-1);
        assert_eq!(g2, Matrix::from_rows(f, 2, vec![vec![f.one(), d1.clone()], vec![d1, f.one()]]));
        assert!(gram_matrix(Colour::n(2), ScalarField::Rational).determinant().is_zero());
    }

    #[test]
    fn quotient_dims_m4() {
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 4).unwrap();
        let dims: Vec<usize> = [Colour::ZeroPlus, Colour::n(1), Colour::n(2), Colour::n(3), Colour::n(4)]
            .iter()
            .map(|&c| inst.dim(c).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 2, 4, 8]);
    }

    #[test]
    fn projection_fixes_basis() {
        let inst = ConcreteInstance::build(Model::QuotientTL(5), 4).unwrap();
        let c = Colour::n(4);
        for i in 0..inst.dim(c).unwrap() {
            let coords = inst.project(&inst.basis_element(c, i).unwrap()).unwrap();
            for (j, x) in coords.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert!(i == j || x.is_zero());
            }
        }
    }

    #[test]
    fn trace_of_closure() {
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 2).unwrap();
        let one = TLElement::one(inst.field(), Colour::n(2));
        let v = inst.evaluate(&zoo::tr(2).unwrap(), &[&one]).unwrap();
        assert_eq!(v, vec![inst.field().from_int(2)]);
    }
}
