//! Spanning and bimodule checks: the `T^n` spans, the generating tangles,
//! `P_m (x)_{P_{k-1}} P_n = P_{m+n-k+1}`, and the partition of unity and
//! `W`, `W*` identities used for injectivity.

use super::{add_scaled, eval_coords, is_zero_vec, PresentError, PresentationConfig};
use crate::exact::{nullspace, solve, Echelon, Matrix, Scalar};
use crate::tangle::{Colour, PlanarTangle};
use crate::template::{holds_for, span_rank, Template};
use crate::tl::{ConcreteInstance, TLElement};
use crate::zoo;

fn c(n: u32) -> Colour {
    Colour::n(n)
}

/// The colours `0+, 0-, 1, ..., nmax`.
fn colours_to(nmax: u32) -> Vec<Colour> {
    let mut v = vec![Colour::ZeroPlus, Colour::ZeroMinus];
    v.extend((1..=nmax).map(c));
    v
}

fn unit_vec(inst: &ConcreteInstance, colour: Colour, i: usize) -> Result<Vec<Scalar>, PresentError> {
    let mut v = vec![inst.field().zero(); inst.dim(colour)?];
    v[i] = inst.field().one();
    Ok(v)
}

fn basis_coords(inst: &ConcreteInstance, colour: Colour) -> Result<Vec<Vec<Scalar>>, PresentError> {
    (0..inst.dim(colour)?).map(|i| unit_vec(inst, colour, i)).collect()
}

/// Rank of `Z_{T^n}` on `B`-labels against `dim P_n`, at one colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanVerdict {
    pub colour: Colour,
    pub rank: usize,
    pub dim: usize,
}

impl SpanVerdict {
    pub fn ok(&self) -> bool {
        self.rank == self.dim
    }
}

/// Surjectivity of `Z_{T^n}` on `B`-labels for every colour up to `nmax`.
pub fn spanning_report(config: &PresentationConfig, nmax: u32) -> Result<Vec<SpanVerdict>, PresentError> {
    let b = config.basis_elements();
    colours_to(nmax)
        .into_iter()
        .map(|n| {
            let t = zoo::t(n, config.k)?;
            Ok(SpanVerdict { colour: n, rank: span_rank(&config.instance, &b, &t)?, dim: config.instance.dim(n)? })
        })
        .collect()
}

/// One generating tangle `G` and whether `G o T => T` holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub generator: String,
    pub colour: Colour,
    pub holds: bool,
}

/// The generating tangles `1^{0+-}`, `E^n`, `ER^n_{n+1}`, `M^n_{n,n}`,
/// `I^{n+1}_n` and `EL^n_n`, each filled with `T`-tangles, checked against
/// `T` of the outer colour.
pub fn generating_closure_check(config: &PresentationConfig, nmax: u32) -> Result<Vec<ClosureVerdict>, PresentError> {
    let k = config.k;
    let t = |n: Colour| zoo::t(n, k);
    let mut cases: Vec<(String, Template)> = Vec::new();
    for z in [Colour::ZeroPlus, Colour::ZeroMinus] {
        cases.push((format!("1^{z}"), Template::new(zoo::unit(z), t(z)?)?));
    }
    for n in 2..=nmax {
        cases.push((format!("E^{n}"), Template::new(zoo::jones(n)?, t(c(n))?)?));
    }
    let mut lower = vec![Colour::ZeroPlus, Colour::ZeroMinus];
    lower.extend((1..nmax).map(c));
    for &n in &lower {
        let up = t(c(n.level() + 1))?;
        let er = zoo::er(n, 1)?.compose(&[(1, &up)])?;
        cases.push((format!("ER^{n}_{}", n.level() + 1), Template::new(er, t(n)?)?));
        let incl = match n {
            Colour::ZeroMinus => zoo::i_zero_minus(),
            _ => zoo::inclusion(n.level(), 1)?,
        };
        let lhs = incl.compose(&[(1, &t(n)?)])?;
        cases.push((format!("I^{}_{n}", n.level() + 1), Template::new(lhs, up)?));
    }
    for n in colours_to(nmax) {
        let tn = t(n)?;
        let lhs = zoo::mult_square(n)?.compose(&[(1, &tn), (2, &tn)])?;
        cases.push((format!("M^{n}_{{{n},{n}}}"), Template::new(lhs, tn)?));
    }
    for n in 1..=nmax {
        let tn = t(c(n))?;
        cases.push((format!("EL^{n}_{n}"), Template::new(zoo::el(n)?.compose(&[(1, &tn)])?, tn)?));
    }
    let b = config.basis_elements();
    cases
        .into_iter()
        .map(|(generator, tpl)| {
            let holds = holds_for(&config.instance, &b, &tpl)?;
            Ok(ClosureVerdict { generator, colour: tpl.colour(), holds })
        })
        .collect()
}

/// Result of [`tensor_dim_check`] at one pair of colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub m: u32,
    pub n: u32,
    /// `m + n - k + 1`.
    pub p: u32,
    /// `dim P_m * dim P_n`.
    pub tensor_dim: usize,
    /// Rank of `Z_M` on `P_m (x) P_n`.
    pub rank: usize,
    pub target_dim: usize,
    /// Dimension of the span of `xa (x) y - x (x) ay`.
    pub relator_rank: usize,
    /// Every relator is killed by `Z_M`.
    pub relators_in_kernel: bool,
}

impl TensorReport {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    /// Kernel of `Z_M` equals the span of the middle relators.
    pub fn kernel_is_relators(&self) -> bool {
        self.relators_in_kernel && self.relator_rank == self.tensor_dim - self.rank
    }

    pub fn ok(&self) -> bool {
        self.surjective() && self.kernel_is_relators()
    }
}

/// `a in P_{k-1}` placed at the bottom-left of an `m`-box (acting on the right).
fn middle_embedding(k: u32, m: u32) -> Result<PlanarTangle, PresentError> {
    Ok(zoo::inclusion(k - 1, m - k + 1)?)
}

/// `Z_M: P_m (x) P_n -> P_{m+n-k+1}` with `M = M^{m+n-k+1}_{m,n}`: its rank,
/// and the comparison of its kernel with the middle relators over `P_{k-1}`.
pub fn tensor_dim_check(config: &PresentationConfig, m: u32, n: u32) -> Result<TensorReport, PresentError> {
    let (inst, k) = (&config.instance, config.k);
    if m < k || n < k {
        return Err(PresentError::Search(format!("tensor check needs m, n >= k, got {m}, {n}")));
    }
    let p = m + n - k + 1;
    let mm = zoo::mult(m, n, p)?;
    let (bm, bn) = (basis_coords(inst, c(m))?, basis_coords(inst, c(n))?);
    let (dm, dn) = (bm.len(), bn.len());
    let target_dim = inst.dim(c(p))?;
    let mut image = Echelon::new(target_dim);
    for x in &bm {
        for y in &bn {
            image.insert(&eval_coords(inst, &mm, &[x, y])?);
        }
    }
    let tensor_dim = dm * dn;
    let mut rel = Echelon::new(tensor_dim);
    let mut relators_in_kernel = true;
    if k > 1 {
        let stack_m = zoo::mult(m, m, m)?;
        let stack_n = zoo::mult(n, n, n)?;
        let (em, en) = (middle_embedding(k, m)?, middle_embedding(k, n)?);
        for a in basis_coords(inst, c(k - 1))? {
            let am = eval_coords(inst, &em, &[&a])?;
            let an = eval_coords(inst, &en, &[&a])?;
            let xa: Vec<Vec<Scalar>> = bm.iter().map(|x| eval_coords(inst, &stack_m, &[x, &am])).collect::<Result<_, _>>()?;
            let ay: Vec<Vec<Scalar>> = bn.iter().map(|y| eval_coords(inst, &stack_n, &[&an, y])).collect::<Result<_, _>>()?;
            for (i, x) in bm.iter().enumerate() {
                for (j, y) in bn.iter().enumerate() {
                    let mut v = vec![inst.field().zero(); tensor_dim];
                    for (r, s) in xa[i].iter().enumerate() {
                        if !s.is_zero() {
                            v[r * dn + j] = &v[r * dn + j] + s;
                        }
                    }
                    for (s2, t) in ay[j].iter().enumerate() {
                        if !t.is_zero() {
                            v[i * dn + s2] = &v[i * dn + s2] - t;
                        }
                    }
                    if relators_in_kernel {
                        let mut d = eval_coords(inst, &mm, &[&xa[i], y])?;
                        add_scaled(&mut d, &-inst.field().one(), &eval_coords(inst, &mm, &[x, &ay[j]])?);
                        relators_in_kernel = is_zero_vec(&d);
                    }
                    rel.insert(&v);
                }
            }
        }
    }
    Ok(TensorReport {
        m,
        n,
        p,
        tensor_dim,
        rank: image.rank(),
        target_dim,
        relator_rank: rel.rank(),
        relators_in_kernel,
    })
}

/// Rank of `x_1 ... x_f -> M(...M(M(x_1, x_2), x_3)..., x_f)` from
/// `P_k^{(x) f}` to `P_{k+f-1}`, against that dimension.
pub fn iterated_tensor_rank(config: &PresentationConfig, factors: u32) -> Result<(usize, usize), PresentError> {
    let (inst, k) = (&config.instance, config.k);
    let b = basis_coords(inst, c(k))?;
    let mut span = b.clone();
    for s in 1..factors.max(1) {
        let (from, to) = (k + s - 1, k + s);
        let mm = zoo::mult(from, k, to)?;
        let mut ech = Echelon::new(inst.dim(c(to))?);
        for v in &span {
            for y in &b {
                ech.insert(&eval_coords(inst, &mm, &[v, y])?);
            }
        }
        span = ech.basis();
    }
    Ok((span.len(), inst.dim(c(k + factors.max(1) - 1))?))
}

/// Result of [`partition_of_unity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub n: u32,
    /// `(x_i, y_i)` in quotient coordinates of `P_n`.
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    /// `v = sum ER(v x_i) y_i` for every basis `v`.
    pub reproducing: bool,
    /// The same sum computed through the `W` tangle agrees.
    pub via_w: bool,
}

impl PartitionReport {
    pub fn ok(&self) -> bool {
        self.reproducing && self.via_w
    }
}

/// `I(ER^{k-1}_n(v x))` in `P_target`, with the box on the left.
fn expect_then_include(
    inst: &ConcreteInstance,
    k: u32,
    n: u32,
    target: u32,
    v: &[Scalar],
    x: &[Scalar],
) -> Result<Vec<Scalar>, PresentError> {
    let vx = eval_coords(inst, &zoo::mult(n, n, n)?, &[v, x])?;
    let e = eval_coords(inst, &zoo::er(c(k - 1), n - k + 1)?, &[&vx])?;
    eval_coords(inst, &middle_embedding(k, target)?, &[&e])
}

/// `sum_i ER^{k-1}_n(v x_i) y_i` for one `v`.
fn reproduce(inst: &ConcreteInstance, k: u32, n: u32, pairs: &[(Vec<Scalar>, Vec<Scalar>)], v: &[Scalar]) -> Result<Vec<Scalar>, PresentError> {
    let stack = zoo::mult(n, n, n)?;
    let mut acc = vec![inst.field().zero(); v.len()];
    for (x, y) in pairs {
        let a = expect_then_include(inst, k, n, n, v, x)?;
        add_scaled(&mut acc, &inst.field().one(), &eval_coords(inst, &stack, &[&a, y])?);
    }
    Ok(acc)
}

/// Whether `v = sum_i ER(v x_i) y_i` for every basis element `v` of `P_n`.
pub fn reproducing_identity(
    config: &PresentationConfig,
    n: u32,
    pairs: &[(Vec<Scalar>, Vec<Scalar>)],
) -> Result<bool, PresentError> {
    for v in basis_coords(&config.instance, c(n))? {
        if reproduce(&config.instance, config.k, n, pairs, &v)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solve `1_{2n-k+1} = sum Z_M(x_i (x) y_i)` over basis pairs and check the
/// reproducing identity it implies, directly and through `W`.
pub fn partition_of_unity(config: &PresentationConfig, n: u32) -> Result<PartitionReport, PresentError> {
    let (inst, k) = (&config.instance, config.k);
    if n < k {
        return Err(PresentError::Search(format!("partition of unity needs n >= k, got {n}")));
    }
    let big = 2 * n - k + 1;
    let mm = zoo::mult(n, n, big)?;
    let b = basis_coords(inst, c(n))?;
    let mut cols = Matrix::zeros(inst.field(), 0, inst.dim(c(big))?);
    let mut idx = Vec::new();
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            cols.push_row(eval_coords(inst, &mm, &[x, y])?);
            idx.push((i, j));
        }
    }
    let one = inst.project(&TLElement::one(inst.field(), c(big)))?;
    let lambda = solve(&cols.transpose(), &one)
        .map_err(|e| PresentError::Search(e.to_string()))?
        .ok_or_else(|| PresentError::Search(format!("1 is not in the image of M at colour {big}")))?;
    let pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = lambda
        .iter()
        .zip(&idx)
        .filter(|(l, _)| !l.is_zero())
        .map(|(l, &(i, j))| (b[i].iter().map(|s| s * l).collect(), b[j].clone()))
        .collect();
    let reproducing = reproducing_identity(config, n, &pairs)?;
    // W o_{D2} M has boxes (v, x, y).
    let wm = zoo::w(n, k)?.compose(&[(2, &mm)])?;
    let mut via_w = true;
    for v in &b {
        let mut acc = vec![inst.field().zero(); v.len()];
        for (x, y) in &pairs {
            add_scaled(&mut acc, &inst.field().one(), &eval_coords(inst, &wm, &[v, x, y])?);
        }
        via_w &= acc == reproduce(inst, k, n, &pairs, v)?;
    }
    Ok(PartitionReport { n, pairs, reproducing, via_w })
}

/// Checks of the two-term decomposition for a list of elements of `P_m (x) P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub m: u32,
    pub n: u32,
    pub samples: Vec<KernelSample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSample {
    pub in_kernel: bool,
    /// The first term reproduces the element.
    pub first_term_equal: bool,
    /// Every `sum_j u_j ER(v_j x_i)` is zero.
    pub second_term_zero: bool,
    /// Those sums agree with `Z_{W*}(x_i, Z_M(element))`.
    pub wstar_agrees: bool,
}

impl KernelReport {
    /// Kernel elements decompose with vanishing second term, and the `W*`
    /// form agrees everywhere.
    pub fn ok(&self) -> bool {
        self.samples.iter().all(|s| s.first_term_equal && s.wstar_agrees && (!s.in_kernel || s.second_term_zero))
    }
}

/// Exact basis of the kernel of `Z_M` on `P_m (x) P_n`, coordinates indexed
/// `i * dim P_n + j`.
pub fn tensor_kernel(config: &PresentationConfig, m: u32, n: u32) -> Result<Vec<Vec<Scalar>>, PresentError> {
    let inst = &config.instance;
    let mm = zoo::mult(m, n, m + n - config.k + 1)?;
    let (bm, bn) = (basis_coords(inst, c(m))?, basis_coords(inst, c(n))?);
    let mut rows = Matrix::zeros(inst.field(), 0, inst.dim(c(m + n - config.k + 1))?);
    for x in &bm {
        for y in &bn {
            rows.push_row(eval_coords(inst, &mm, &[x, y])?);
        }
    }
    Ok(nullspace(&rows.transpose()))
}

/// Decompose each element (kernel basis vectors first, then the extra
/// `elements`) as `first - second`, using a partition of unity of `P_n`.
pub fn kernel_decomposition_check(
    config: &PresentationConfig,
    m: u32,
    n: u32,
    samples: usize,
    extra: &[Vec<Scalar>],
) -> Result<KernelReport, PresentError> {
    let (inst, k) = (&config.instance, config.k);
    let part = partition_of_unity(config, n)?;
    let p = m + n - k + 1;
    let mm = zoo::mult(m, n, p)?;
    let wstar = zoo::wstar_general(m, n, k)?;
    let stack_m = zoo::mult(m, m, m)?;
    let (bm, bn) = (basis_coords(inst, c(m))?, basis_coords(inst, c(n))?);
    let dn = bn.len();
    let mut elements: Vec<Vec<Scalar>> = tensor_kernel(config, m, n)?.into_iter().take(samples).collect();
    elements.extend(extra.iter().cloned());
    let zero = inst.field().zero();
    let mut out = Vec::new();
    for s in &elements {
        let mut image = vec![zero.clone(); inst.dim(c(p))?];
        for (idx, coef) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            add_scaled(&mut image, coef, &eval_coords(inst, &mm, &[&bm[idx / dn], &bn[idx % dn]])?);
        }
        let in_kernel = is_zero_vec(&image);
        // First term: sum u_j (x) ER(v_j x_i) y_i.
        let mut first = vec![zero.clone(); s.len()];
        for (idx, coef) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (i, j) = (idx / dn, idx % dn);
            let w = reproduce(inst, k, n, &part.pairs, &bn[j])?;
            for (j2, val) in w.iter().enumerate() {
                if !val.is_zero() {
                    first[i * dn + j2] = &first[i * dn + j2] + &(coef * val);
                }
            }
        }
        let mut second_term_zero = true;
        let mut wstar_agrees = true;
        for (x, _) in &part.pairs {
            let mut w = vec![zero.clone(); bm.len()];
            for (idx, coef) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (i, j) = (idx / dn, idx % dn);
                let a = expect_then_include(inst, k, n, m, &bn[j], x)?;
                add_scaled(&mut w, coef, &eval_coords(inst, &stack_m, &[&bm[i], &a])?);
            }
            second_term_zero &= is_zero_vec(&w);
            wstar_agrees &= eval_coords(inst, &wstar, &[x, &image])? == w;
        }
        out.push(KernelSample { in_kernel, first_term_equal: &first == s, second_term_zero, wstar_agrees });
    }
    Ok(KernelReport { m, n, samples: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::Model;

    fn config(m: u32, nmax: u32) -> PresentationConfig {
        PresentationConfig::new(ConcreteInstance::build(Model::QuotientTL(m), nmax).unwrap(), m - 2).unwrap()
    }

    #[test]
    fn spanning_at_m4() {
        let v = spanning_report(&config(4, 5), 5).unwrap();
        assert!(v.iter().all(SpanVerdict::ok));
        let four = v.iter().find(|s| s.colour == c(4)).unwrap();
        assert_eq!((four.rank, four.dim), (8, 8));
        assert_eq!(v.iter().find(|s| s.colour == Colour::ZeroMinus).unwrap().rank, 1);
    }

    #[test]
    fn closure_at_m4() {
        let v = generating_closure_check(&config(4, 4), 4).unwrap();
        assert!(v.iter().all(|x| x.holds), "{v:?}");
        assert!(v.iter().any(|x| x.generator.starts_with("EL")));
    }

    #[test]
    fn tensor_at_m5() {
        let cfg = config(5, 5);
        let r = tensor_dim_check(&cfg, 3, 3).unwrap();
        assert_eq!((r.tensor_dim, r.target_dim), (25, 13));
        assert!(r.ok(), "{r:?}");
        assert!(tensor_dim_check(&cfg, 3, 4).unwrap().ok());
    }

    #[test]
    fn tensor_fails_generically() {
        let inst = ConcreteInstance::build(Model::GenericTL, 4).unwrap();
        let cfg = PresentationConfig::unchecked(inst, 1).unwrap();
        let r = tensor_dim_check(&cfg, 1, 2).unwrap();
        assert!(!r.surjective());
    }

    #[test]
    fn partition_and_perturbation() {
        let cfg = config(5, 5);
        let p = partition_of_unity(&cfg, 3).unwrap();
        assert!(p.ok());
        let mut bad = p.pairs.clone();
        let f = cfg.instance.field();
        bad[0].0[0] = &bad[0].0[0] + &f.one();
        assert!(!reproducing_identity(&cfg, 3, &bad).unwrap());
        let q = partition_of_unity(&config(4, 5), 3).unwrap();
        assert!(q.ok());
    }

    #[test]
    fn kernel_decomposition_at_m5() {
        let cfg = config(5, 5);
        let ker = tensor_kernel(&cfg, 3, 3).unwrap();
        assert_eq!(ker.len(), 25 - 13);
        let f = cfg.instance.field();
        let mut outside = vec![f.zero(); 25];
        outside[0] = f.one();
        let zero = vec![f.zero(); 25];
        let r = kernel_decomposition_check(&cfg, 3, 3, ker.len(), &[outside, zero]).unwrap();
        assert!(r.ok());
        let n = r.samples.len();
        assert!(!r.samples[n - 2].in_kernel && !r.samples[n - 2].second_term_zero);
        assert!(r.samples[n - 1].in_kernel && r.samples[n - 1].second_term_zero);
        assert!(r.samples[..n - 2].iter().all(|s| s.in_kernel && s.second_term_zero));
    }
}
