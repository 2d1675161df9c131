//! A single `2k`-box generator and change of generating label sets.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::relations::{Relation, RelationSet, VanishReport};
use super::{add_scaled, depth_check, is_zero_vec, PresentError};
use crate::exact::{solve, Echelon, Matrix, Scalar};
use crate::tangle::{Colour, PlanarTangle};
use crate::tl::{evaluate_in, ConcreteInstance, FormalSum, Label, LabelledTangle, TLElement};
use crate::zoo;

/// What [`single_generator`] verified about its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCertificate {
    /// Dimension of the unital algebra generated by `x` and `x*`.
    pub closure_rank: usize,
    pub dim: usize,
    pub tau: Scalar,
    /// `x` is the search hit plus the unit.
    pub shifted: bool,
    /// `s` with `Recover_i(z) = s x` (i = 1) and `s x*` (i = 2).
    pub recovery: [Scalar; 2],
    pub recovers: bool,
}

impl GeneratorCertificate {
    pub fn ok(&self) -> bool {
        self.closure_rank == self.dim
            && !self.tau.is_zero()
            && self.recovers
            && self.recovery.iter().all(|s| !s.is_zero())
    }
}

/// `x`, `x*` and `z = Zgen(x, x*)`, with the words in `x`, `x*` that span `P_k`.
#[derive(Clone, Debug)]
pub struct SingleGenerator {
    pub k: u32,
    /// Quotient coordinates of `x` in the basis of `P_k`.
    pub coords: Vec<Scalar>,
    pub x: Label,
    pub x_star: Label,
    pub z: Label,
    /// A spanning set of words; letter 0 is `x`, letter 1 is `x*`.
    pub words: Vec<Vec<u8>>,
    pub certificate: GeneratorCertificate,
}

/// Small-integer candidates with entries in -3..3, fewest nonzeros first,
/// then smallest magnitude, then fewest negative entries.
fn small_candidates(dim: usize, max_nonzero: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for nnz in 1..=max_nonzero.min(dim) {
        for support in subsets(dim, nnz) {
            let mut vals = vec![0usize; nnz];
            loop {
                let mut v = vec![0i64; dim];
                for (s, &i) in vals.iter().zip(&support) {
                    v[i] = [1, -1, 2, -2, 3, -3][*s];
                }
                out.push(v);
                let mut p = nnz;
                while p > 0 {
                    p -= 1;
                    vals[p] += 1;
                    if vals[p] < 6 {
                        break;
                    }
                    vals[p] = 0;
                    if p == 0 {
                        p = usize::MAX;
                        break;
                    }
                }
                if p == usize::MAX || nnz == 0 {
                    break;
                }
            }
        }
    }
    let key = |v: &Vec<i64>| {
        let nnz = v.iter().filter(|&&a| a != 0).count();
        let mag = v.iter().map(|a| a.abs()).max().unwrap_or(0);
        let neg = v.iter().filter(|&&a| a < 0).count();
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        let abs: Vec<i64> = v.iter().map(|a| a.abs()).collect();
        (nnz, mag, neg, support, abs)
    };
    out.sort_by_cached_key(key);
    out
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if n < r {
        return Vec::new();
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// Letters 0 and 1 stand for `x` and `x*`.
type Word = Vec<u8>;

/// Grow the unital algebra generated by `x` and `x*` by left multiplication,
/// recording one word per new independent vector.
fn closure(
    inst: &ConcreteInstance,
    k: u32,
    x: &TLElement,
    xs: &TLElement,
) -> Result<(Vec<Word>, Vec<Vec<Scalar>>), PresentError> {
    let colour = Colour::n(k);
    let one = inst.project(&TLElement::one(inst.field(), colour))?;
    let mut ech = Echelon::new(one.len());
    ech.insert(&one);
    let (mut words, mut vecs) = (vec![Vec::new()], vec![one]);
    let mut next = 0;
    while next < vecs.len() && !ech.is_full() {
        let v = inst.lift(colour, &vecs[next])?;
        let w = words[next].clone();
        next += 1;
        for (letter, g) in [x, xs].into_iter().enumerate() {
            let p = inst.project(&g.multiply(&v)?)?;
            if !ech.contains(&p) {
                ech.insert(&p);
                let mut word = vec![letter as u8];
                word.extend(&w);
                words.push(word);
                vecs.push(p);
            }
        }
    }
    Ok((words, vecs))
}

fn scalar_ratio(v: &[Scalar], x: &[Scalar]) -> Option<Scalar> {
    let i = x.iter().position(|a| !a.is_zero())?;
    let s = v[i].div(&x[i])?;
    v.iter().zip(x).all(|(a, b)| *a == &s * b).then_some(s)
}

/// Find `x` in `P_k` that generates `P_k` together with `x*` and has
/// `tau(x) != 0`, and certify the recovery of `x` and `x*` from `z`.
/// Needs instance data up to colour `2k`.
pub fn single_generator(inst: &ConcreteInstance, k: u32, seed: u64) -> Result<SingleGenerator, PresentError> {
    if !depth_check(inst, k)?.holds {
        return Err(PresentError::Search(format!("depth check fails at k = {k}")));
    }
    inst.dim(Colour::n(2 * k))?;
    let field = inst.field();
    let colour = Colour::n(k);
    let dim = inst.dim(colour)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..256).map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>());
    for cand in small_candidates(dim, 2).into_iter().chain(random) {
        if cand.iter().all(|&a| a == 0) {
            continue;
        }
        let coords: Vec<Scalar> = cand.iter().map(|&a| field.from_int(a)).collect();
        let mut x = inst.lift(colour, &coords)?;
        let xs = x.adjoint();
        let (words, _) = closure(inst, k, &x, &xs)?;
        if words.len() < dim {
            continue;
        }
        let mut shifted = false;
        if x.tau().is_zero() {
            x = x.add(&TLElement::one(field, colour));
            shifted = true;
        }
        return build_generator(inst, k, x, shifted);
    }
    Err(PresentError::Search(format!("no generator of P_{k} found; retry with another seed")))
}

fn build_generator(inst: &ConcreteInstance, k: u32, x: TLElement, shifted: bool) -> Result<SingleGenerator, PresentError> {
    let field = inst.field();
    let colour = Colour::n(k);
    let xs = x.adjoint();
    let (words, _) = closure(inst, k, &x, &xs)?;
    let z = evaluate_in(field, &zoo::zgen(k)?, &[&x, &xs])?;
    let (px, pxs) = (inst.project(&x)?, inst.project(&xs)?);
    let zero = field.zero();
    let mut recovery = [zero.clone(), zero];
    let mut recovers = true;
    for (i, target) in [&px, &pxs].into_iter().enumerate() {
        let r = inst.evaluate(&zoo::zgen_recover(k, i as u32 + 1)?, &[&z])?;
        match scalar_ratio(&r, target) {
            Some(s) => recovery[i] = s,
            None => recovers = false,
        }
    }
    let certificate = GeneratorCertificate {
        closure_rank: words.len(),
        dim: inst.dim(colour)?,
        tau: x.tau(),
        shifted,
        recovery,
        recovers,
    };
    Ok(SingleGenerator {
        k,
        coords: px,
        x: Label::new("x", x),
        x_star: Label::new("x*", xs),
        z: Label::new("z", z),
        words,
        certificate,
    })
}

/// A map from labels to formal sums of labelled tangles of the same colour,
/// extended to labelled tangles by substitution.
#[derive(Clone, Debug)]
pub struct LabelMorphism {
    pub source: Vec<Label>,
    pub target: Vec<Label>,
    pub image: Vec<FormalSum>,
}

fn plain(l: &Label) -> Result<LabelledTangle, PresentError> {
    Ok(LabelledTangle::new(zoo::identity(l.colour().level())?, vec![l.clone()])?)
}

fn key(t: &LabelledTangle) -> (String, Vec<String>) {
    (t.tangle.canonical_code().to_string(), t.labels.iter().map(|l| l.name.clone()).collect())
}

/// Merge equal labelled tangles and drop zero coefficients; order is by key.
pub fn combine(colour: Colour, terms: impl IntoIterator<Item = (Scalar, LabelledTangle)>) -> FormalSum {
    let mut map: BTreeMap<(String, Vec<String>), (Scalar, LabelledTangle)> = BTreeMap::new();
    for (c, t) in terms {
        match map.get_mut(&key(&t)) {
            Some(e) => e.0 = &e.0 + &c,
            None => {
                map.insert(key(&t), (c, t));
            }
        }
    }
    FormalSum { colour, terms: map.into_values().filter(|(c, _)| !c.is_zero()).collect() }
}

/// Substitute a formal sum into every box at once and expand.
fn substitute_sums(t: &PlanarTangle, sums: &[&FormalSum]) -> Result<Vec<(Scalar, LabelledTangle)>, PresentError> {
    let colour = t.external();
    let field = sums.first().and_then(|s| s.terms.first()).map(|(c, _)| c.field());
    let mut out = Vec::new();
    let mut idx = vec![0usize; sums.len()];
    if sums.iter().any(|s| s.terms.is_empty()) {
        return Ok(out);
    }
    if sums.is_empty() {
        return Err(PresentError::Search(format!("substitution into a boxless tangle of colour {colour}")));
    }
    let one = field.expect("nonempty sums").one();
    loop {
        let mut coef = one.clone();
        let mut labels = Vec::new();
        let mut parts = Vec::new();
        for (s, &i) in sums.iter().zip(&idx) {
            let (c, lt) = &s.terms[i];
            coef = &coef * c;
            labels.extend(lt.labels.iter().cloned());
            parts.push(&lt.tangle);
        }
        let assign: Vec<(usize, &PlanarTangle)> = parts.iter().enumerate().map(|(i, p)| (i + 1, *p)).collect();
        out.push((coef, LabelledTangle::new(t.compose(&assign)?, labels)?));
        let mut p = sums.len();
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < sums[p].terms.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

impl LabelMorphism {
    pub fn new(source: Vec<Label>, target: Vec<Label>, image: Vec<FormalSum>) -> Result<LabelMorphism, PresentError> {
        if source.len() != image.len() {
            return Err(PresentError::Search("one image per source label".into()));
        }
        for (l, s) in source.iter().zip(&image) {
            if l.colour() != s.colour {
                return Err(PresentError::Search(format!("label `{}` has colour {} but its image {}", l.name, l.colour(), s.colour)));
            }
            if let Some((_, t)) = s.terms.iter().find(|(_, t)| t.labels.iter().any(|x| !target.iter().any(|y| y.name == x.name))) {
                return Err(PresentError::Search(format!("image of `{}` uses a label outside the target: {t}", l.name)));
            }
        }
        Ok(LabelMorphism { source, target, image })
    }

    fn image_of(&self, l: &Label) -> Result<&FormalSum, PresentError> {
        self.source
            .iter()
            .position(|s| s.name == l.name)
            .map(|i| &self.image[i])
            .ok_or_else(|| PresentError::Search(format!("label `{}` is not in the source", l.name)))
    }

    /// Image of a labelled tangle: substitute the image of every label.
    pub fn apply(&self, t: &LabelledTangle) -> Result<FormalSum, PresentError> {
        if t.labels.is_empty() {
            let one = self.image.iter().flat_map(|s| s.terms.first()).map(|(c, _)| c.field().one()).next();
            let one = one.ok_or_else(|| PresentError::Search("empty morphism".into()))?;
            return Ok(FormalSum { colour: t.colour(), terms: vec![(one, t.clone())] });
        }
        let sums: Vec<&FormalSum> = t.labels.iter().map(|l| self.image_of(l)).collect::<Result<_, _>>()?;
        Ok(combine(t.colour(), substitute_sums(&t.tangle, &sums)?))
    }

    pub fn apply_sum(&self, s: &FormalSum) -> Result<FormalSum, PresentError> {
        let mut terms = Vec::new();
        for (c, t) in &s.terms {
            terms.extend(self.apply(t)?.terms.into_iter().map(|(d, u)| (c * &d, u)));
        }
        Ok(combine(s.colour, terms))
    }

    /// Source labels whose image evaluates differently from the label.
    pub fn mismatches(&self, inst: &ConcreteInstance) -> Result<Vec<String>, PresentError> {
        let mut bad = Vec::new();
        for (l, s) in self.source.iter().zip(&self.image) {
            if s.evaluate(inst)? != inst.project(&l.element)? {
                bad.push(l.name.clone());
            }
        }
        Ok(bad)
    }
}

impl SingleGenerator {
    /// `z -> sum a_i c_j Zgen(b_i, b_j)` with `x = sum a_i b_i`, `x* = sum c_j b_j`.
    pub fn to_basis(&self, inst: &ConcreteInstance, basis: &[Label]) -> Result<LabelMorphism, PresentError> {
        let zgen = zoo::zgen(self.k)?;
        let cs = inst.project(&self.x_star.element)?;
        let mut terms = Vec::new();
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, c) in cs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                terms.push((a * c, LabelledTangle::new(zgen.clone(), vec![basis[i].clone(), basis[j].clone()])?));
            }
        }
        let image = combine(Colour::n(2 * self.k), terms);
        LabelMorphism::new(vec![self.z.clone()], basis.to_vec(), vec![image])
    }

    /// The tangle of a word in `x`, `x*` with every box labelled `z`, and
    /// the coefficient that makes it evaluate to the word.
    fn word_tangle(&self, word: &[u8]) -> Result<(Scalar, PlanarTangle), PresentError> {
        let k = self.k;
        let one = self.certificate.tau.field().one();
        let Some((&first, rest)) = word.split_first() else {
            return Ok((one, zoo::unit(Colour::n(k))));
        };
        let s = &self.certificate.recovery[first as usize];
        let c = s.inv().ok_or_else(|| PresentError::Search("zero recovery scalar".into()))?;
        let head = zoo::zgen_recover(k, first as u32 + 1)?;
        if rest.is_empty() {
            return Ok((c, head));
        }
        let (d, tail) = self.word_tangle(rest)?;
        Ok((&c * &d, zoo::mult(k, k, k)?.compose(&[(1, &head), (2, &tail)])?))
    }

    /// `b -> sum_w lambda_w w(z)`, each basis label written in the spanning words.
    pub fn to_z(&self, inst: &ConcreteInstance, basis: &[Label]) -> Result<LabelMorphism, PresentError> {
        let colour = Colour::n(self.k);
        let (x, xs) = (&self.x.element, &self.x_star.element);
        let (words, vecs) = closure(inst, self.k, x, xs)?;
        let a = Matrix::from_rows(inst.field(), inst.dim(colour)?, vecs).transpose();
        let word_tangles: Vec<(Scalar, PlanarTangle)> = words.iter().map(|w| self.word_tangle(w)).collect::<Result<_, _>>()?;
        let mut image = Vec::new();
        for b in basis {
            let target = inst.project(&b.element)?;
            let lambda = solve(&a, &target)
                .map_err(|e| PresentError::Search(e.to_string()))?
                .ok_or_else(|| PresentError::Search(format!("`{}` is not in the generated algebra", b.name)))?;
            let mut terms = Vec::new();
            for (l, (c, t)) in lambda.iter().zip(&word_tangles).filter(|(l, _)| !l.is_zero()) {
                let labels = vec![self.z.clone(); t.box_count()];
                terms.push((l * c, LabelledTangle::new(t.clone(), labels)?));
            }
            image.push(combine(colour, terms));
        }
        LabelMorphism::new(basis.to_vec(), vec![self.z.clone()], image)
    }
}

/// `R = phi~(R~) u {x - phi~ phi(x) : x in L}` for `phi: L -> L~` and
/// `phi~: L~ -> L`, with the check that every member evaluates to zero.
pub fn change_of_generators(
    inst: &ConcreteInstance,
    phi: &LabelMorphism,
    phi_t: &LabelMorphism,
    rel: &RelationSet,
) -> Result<(RelationSet, VanishReport), PresentError> {
    for m in [phi, phi_t] {
        let bad = m.mismatches(inst)?;
        if !bad.is_empty() {
            return Err(PresentError::Search(format!("evaluation mismatch on {bad:?}")));
        }
    }
    let side = |terms: &[(Scalar, LabelledTangle)], colour: Colour| -> Result<Vec<(Scalar, LabelledTangle)>, PresentError> {
        let mut out = Vec::new();
        for (c, t) in terms {
            out.extend(phi_t.apply(t)?.terms.into_iter().map(|(d, u)| (c * &d, u)));
        }
        Ok(combine(colour, out).terms)
    };
    let mut relations = Vec::new();
    for r in &rel.relations {
        let colour = r.lhs.first().or(r.rhs.first()).map(|(_, t)| t.colour()).unwrap_or(Colour::ZeroPlus);
        relations.push(Relation { template: r.template.clone(), lhs: side(&r.lhs, colour)?, rhs: side(&r.rhs, colour)? });
    }
    for l in &phi.source {
        let back = phi_t.apply_sum(&phi.apply(&plain(l)?)?)?;
        let one = inst.field().one();
        relations.push(Relation { template: format!("{} - round trip", l.name), lhs: vec![(one, plain(l)?)], rhs: back.terms });
    }
    let out = RelationSet {
        model: inst.model().to_string(),
        m: rel.m,
        k: rel.k,
        labels: phi.source.iter().map(|l| l.name.clone()).collect(),
        relations,
    };
    let report = super::verify_relations_vanish(inst, &out)?;
    Ok((out, report))
}

/// The `b` telescoping terms of `T - phi~ phi(T)` and their checks.
#[derive(Clone, Debug)]
pub struct TelescopeReport {
    pub terms: Vec<FormalSum>,
    /// The terms cancel to `T - phi~ phi(T)` as formal sums.
    pub symbolic: bool,
    /// Each term, and their sum minus the difference, evaluate as expected.
    pub numeric: bool,
    /// Each term evaluates to zero.
    pub terms_vanish: bool,
}

impl TelescopeReport {
    pub fn ok(&self) -> bool {
        self.symbolic && self.numeric && self.terms_vanish
    }
}

/// Term `i` is `T(y_1, ..., y_{i-1}, x_i - y_i, x_{i+1}, ..., x_b)` with
/// `y = phi~ phi(x)`.
pub fn telescoping_decomposition(
    inst: &ConcreteInstance,
    t: &LabelledTangle,
    phi: &LabelMorphism,
    phi_t: &LabelMorphism,
) -> Result<TelescopeReport, PresentError> {
    let b = t.labels.len();
    if b == 0 {
        return Err(PresentError::Search("telescoping needs at least one box".into()));
    }
    let colour = t.colour();
    let minus = -inst.field().one();
    let xs: Vec<FormalSum> = t.labels.iter().map(|l| Ok(combine(l.colour(), [(inst.field().one(), plain(l)?)]))).collect::<Result<_, PresentError>>()?;
    let ys: Vec<FormalSum> = t.labels.iter().map(|l| phi_t.apply_sum(&phi.apply(&plain(l)?)?)).collect::<Result<_, _>>()?;
    let diffs: Vec<FormalSum> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| combine(x.colour, x.terms.iter().cloned().chain(y.terms.iter().map(|(c, u)| (c * &minus, u.clone())))))
        .collect();
    let mut terms = Vec::new();
    for i in 0..b {
        let sums: Vec<&FormalSum> = (0..b).map(|j| if j < i { &ys[j] } else if j == i { &diffs[j] } else { &xs[j] }).collect();
        terms.push(combine(colour, substitute_sums(&t.tangle, &sums)?));
    }
    let all_x: Vec<&FormalSum> = xs.iter().collect();
    let all_y: Vec<&FormalSum> = ys.iter().collect();
    let lhs = substitute_sums(&t.tangle, &all_x)?;
    let rhs = substitute_sums(&t.tangle, &all_y)?;
    let rhs_value = combine(colour, rhs.clone()).evaluate(inst)?;
    let mut total: Vec<(Scalar, LabelledTangle)> = terms.iter().flat_map(|s| s.terms.iter().cloned()).collect();
    total.extend(lhs.into_iter().map(|(c, u)| (&c * &minus, u)));
    total.extend(rhs);
    let symbolic = combine(colour, total).terms.is_empty();
    let mut sum = vec![inst.field().zero(); inst.dim(colour)?];
    let mut terms_vanish = true;
    for s in &terms {
        let v = s.evaluate(inst)?;
        terms_vanish &= is_zero_vec(&v);
        add_scaled(&mut sum, &inst.field().one(), &v);
    }
    let diff = {
        let mut d = t.evaluate(inst)?;
        add_scaled(&mut d, &minus, &rhs_value);
        d
    };
    Ok(TelescopeReport { terms, symbolic, numeric: sum == diff, terms_vanish })
}

/// A random tangle with `boxes` boxes of one colour, built from products,
/// Jones projections and `EL`, with boxes shuffled and labels drawn from `labels`.
pub fn random_labelled_tangle(rng: &mut impl Rng, labels: &[Label], boxes: usize) -> Result<LabelledTangle, PresentError> {
    let c = labels.first().ok_or_else(|| PresentError::Search("no labels".into()))?.colour().level();
    let t = random_shape(rng, c, boxes.max(1))?;
    let mut order: Vec<usize> = (1..=t.box_count()).collect();
    order.shuffle(rng);
    let t = t.permute_boxes(&order)?;
    let ls = (0..t.box_count()).map(|_| labels[rng.gen_range(0..labels.len())].clone()).collect();
    Ok(LabelledTangle::new(t, ls)?)
}

fn random_shape(rng: &mut impl Rng, c: u32, b: usize) -> Result<PlanarTangle, PresentError> {
    let mm = zoo::mult(c, c, c)?;
    if b == 1 {
        let id = zoo::identity(c)?;
        let choice = rng.gen_range(0..if c >= 2 { 4 } else { 2 });
        return Ok(match choice {
            0 => id,
            1 => zoo::el(c)?,
            2 => mm.compose(&[(2, &zoo::jones(c)?)])?,
            _ => mm.compose(&[(1, &zoo::jones(c)?)])?,
        });
    }
    let a = rng.gen_range(1..b);
    let (l, r) = (random_shape(rng, c, a)?, random_shape(rng, c, b - a)?);
    Ok(mm.compose(&[(1, &l), (2, &r)])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::{generate_relations, PresentationConfig};
    use crate::tl::Model;

    #[test]
    fn candidates_are_ordered() {
        let c = small_candidates(3, 2);
        assert_eq!(c[0], vec![1, 0, 0]);
        assert_eq!(c[1], vec![0, 1, 0]);
        assert_eq!(c[3], vec![-1, 0, 0]);
        assert_eq!(c.len(), 3 * 6 + 3 * 36);
    }

    #[test]
    fn generator_at_m3_and_m4() {
        let q3 = ConcreteInstance::build(Model::QuotientTL(3), 2).unwrap();
        let g = single_generator(&q3, 1, 0).unwrap();
        assert!(g.certificate.ok());
        let q4 = ConcreteInstance::build(Model::QuotientTL(4), 4).unwrap();
        let g = single_generator(&q4, 2, 0).unwrap();
        assert!(g.certificate.ok(), "{:?}", g.certificate);
        assert_eq!(g.certificate.closure_rank, 2);
    }

    #[test]
    fn change_of_generators_at_m4() {
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 4).unwrap();
        let cfg = PresentationConfig::new(inst.clone(), 2).unwrap();
        let g = single_generator(&inst, 2, 0).unwrap();
        let phi = g.to_basis(&inst, &cfg.basis).unwrap();
        let phi_t = g.to_z(&inst, &cfg.basis).unwrap();
        let rel = generate_relations(&cfg).unwrap();
        let (r, rep) = change_of_generators(&inst, &phi, &phi_t, &rel).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(r.len(), rel.len() + 1);
        assert_eq!(r.labels, vec!["z".to_string()]);
    }

    #[test]
    fn telescoping_at_m4() {
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 4).unwrap();
        let basis = Label::basis(&inst, Colour::n(2)).unwrap();
        let g = single_generator(&inst, 2, 0).unwrap();
        let (to_z, to_b) = (g.to_z(&inst, &basis).unwrap(), g.to_basis(&inst, &basis).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for b in 1..=3 {
            let t = random_labelled_tangle(&mut rng, &basis, b).unwrap();
            let r = telescoping_decomposition(&inst, &t, &to_z, &to_b).unwrap();
            assert!(r.ok(), "b = {b}");
            assert_eq!(r.terms.len(), b);
        }
        // phi~ phi = id on a single label: the only term is zero.
        let t = plain(&basis[0]).unwrap();
        let id = LabelMorphism::new(basis.clone(), basis.clone(), basis.iter().map(|l| combine(l.colour(), [(inst.field().one(), plain(l).unwrap())])).collect()).unwrap();
        let r = telescoping_decomposition(&inst, &t, &id, &id).unwrap();
        assert!(r.ok() && r.terms[0].terms.is_empty());
    }
}
