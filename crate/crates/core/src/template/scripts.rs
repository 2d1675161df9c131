//! Derivation scripts for the consequences of the basic templates.
//!
//! Each script is built by a [`ProofBuilder`], so every step is checked as
//! it is emitted. Where a proof says "a little doodling" the decomposition
//! is recovered by a small search over tangles that are known to imply
//! `I^k_k`; the resulting steps are ordinary checked steps.

use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};

use super::derivation::{ProofBuilder, Side};
use super::{Derivation, Template, TemplateError, TemplateSet};
use crate::tangle::{Colour, PlanarTangle};
use crate::tl::{tl_basis, TLDiagram};
use crate::zoo::{self, Pos};

type R = Result<usize, TemplateError>;

/// A generated derivation with the template it is meant to conclude.
#[derive(Clone, Debug)]
pub struct Script {
    pub item: u32,
    /// Short label, e.g. `"5(1^n)"` or `"8[(1,4)(2,3)]"`.
    pub label: String,
    pub n: Colour,
    pub derivation: Derivation,
    pub expected: Template,
    /// Set when the script could not be completed; `derivation` then holds
    /// the checked steps emitted before the failure.
    pub build_error: Option<String>,
}

type WordCache = RefCell<HashMap<u32, HashMap<Vec<usize>, Vec<u32>>>>;

fn c(n: u32) -> Colour {
    Colour::n(n)
}

fn succ(n: Colour) -> Colour {
    c(n.level() + 1)
}

fn fail(msg: String) -> TemplateError {
    TemplateError::Step { step: 0, msg }
}

/// Tangles of colour `k` built from boxes by multiplication and conditional
/// expectation; each implies `I^k_k`.
#[derive(Clone, Debug)]
enum KExpr {
    Id,
    Ce(Box<KExpr>),
    M(Box<KExpr>, Box<KExpr>),
}

impl KExpr {
    /// All expressions with exactly `b` boxes, without nested `Ce(Ce(..))`.
    fn all(b: usize) -> Vec<KExpr> {
        let mut plain = Vec::new();
        if b == 1 {
            plain.push(KExpr::Id);
        }
        for left in 1..b {
            for x in KExpr::all(left) {
                for y in KExpr::all(b - left) {
                    plain.push(KExpr::M(Box::new(x.clone()), Box::new(y)));
                }
            }
        }
        let wrapped: Vec<KExpr> = plain.iter().map(|x| KExpr::Ce(Box::new(x.clone()))).collect();
        plain.extend(wrapped);
        plain
    }
}

struct Ctx<'a> {
    b: ProofBuilder<'a>,
    k: u32,
    memo: HashMap<String, usize>,
    words: &'a WordCache,
}

impl<'a> Ctx<'a> {
    fn new(axioms: &'a TemplateSet, words: &'a WordCache) -> Ctx<'a> {
        Ctx { b: ProofBuilder::new(axioms), k: axioms.k, memo: HashMap::new(), words }
    }

    fn tl_word(&self, q: &PlanarTangle) -> Result<Vec<u32>, TemplateError> {
        let n = q.external().level();
        let bad = || fail(format!("{} is not a loop-free Temperley-Lieb tangle", q.canonical_code()));
        let (d, loops) = TLDiagram::from_tangle(q).ok_or_else(bad)?;
        if loops > 0 || !q.is_boxless() {
            return Err(bad());
        }
        let mut cache = self.words.borrow_mut();
        let words = cache.entry(n).or_insert_with(|| tl_words(n));
        words.get(d.partner()).cloned().ok_or_else(bad)
    }

    fn memo(&mut self, key: String, f: impl FnOnce(&mut Self) -> R) -> R {
        if let Some(&i) = self.memo.get(&key) {
            return Ok(i);
        }
        let i = f(self)?;
        self.memo.insert(key, i);
        Ok(i)
    }

    fn t(&self, n: Colour) -> Result<PlanarTangle, TemplateError> {
        Ok(zoo::t(n, self.k)?)
    }

    fn tn(&self, n: u32) -> Result<PlanarTangle, TemplateError> {
        self.t(c(n))
    }

    fn ce(&self) -> Result<PlanarTangle, TemplateError> {
        let k = self.k;
        Ok(zoo::inclusion(k - 1, 1)?.compose(&[(1, &zoo::er(c(k - 1), 1)?)])?)
    }

    fn kexpr_tangle(&self, e: &KExpr) -> Result<PlanarTangle, TemplateError> {
        Ok(match e {
            KExpr::Id => zoo::identity(self.k)?,
            KExpr::Ce(a) => self.ce()?.compose(&[(1, &self.kexpr_tangle(a)?)])?,
            KExpr::M(a, b) => {
                let k = self.k;
                zoo::mult(k, k, k)?.compose(&[(1, &self.kexpr_tangle(a)?), (2, &self.kexpr_tangle(b)?)])?
            }
        })
    }

    /// `e => I^k_k`.
    fn kexpr_proof(&mut self, e: &KExpr) -> R {
        let k = self.k;
        match e {
            KExpr::Id => self.b.refl(zoo::identity(k)?),
            KExpr::Ce(a) => {
                let p = self.kexpr_proof(a)?;
                let s = self.b.compose(self.ce()?, &[(1, p)])?;
                let ax = self.b.axiom("condexp")?;
                self.b.chain(s, ax)
            }
            KExpr::M(x, y) => {
                let px = self.kexpr_proof(x)?;
                let py = self.kexpr_proof(y)?;
                let s = self.b.compose(zoo::mult(k, k, k)?, &[(1, px), (2, py)])?;
                let ax = self.b.axiom("multiplication")?;
                self.b.chain(s, ax)
            }
        }
    }

    /// Find fillings of one or two boxes of `outer` by expressions that
    /// turn `outer` into `target` (up to box numbering).
    fn search_fill(&self, outer: &PlanarTangle, target: &PlanarTangle) -> Result<Option<Vec<(usize, KExpr)>>, TemplateError> {
        let ob = outer.box_count();
        let tb = target.box_count();
        if tb < ob {
            return Ok(None);
        }
        let extra = tb - ob;
        for j in 1..=ob {
            if outer.boxes()[j - 1] != c(self.k) {
                continue;
            }
            for e in KExpr::all(extra + 1) {
                let x = outer.compose(&[(j, &self.kexpr_tangle(&e)?)])?;
                if x.find_renumbering(target).is_some() {
                    return Ok(Some(vec![(j, e)]));
                }
            }
        }
        for j1 in 1..=ob {
            for j2 in j1 + 1..=ob {
                for b1 in 1..=extra + 1 {
                    let b2 = extra + 2 - b1;
                    if b2 == 0 {
                        continue;
                    }
                    for e1 in KExpr::all(b1) {
                        let t1 = self.kexpr_tangle(&e1)?;
                        for e2 in KExpr::all(b2) {
                            let t2 = self.kexpr_tangle(&e2)?;
                            let x = outer.compose(&[(j1, &t1), (j2, &t2)])?;
                            if x.find_renumbering(target).is_some() {
                                return Ok(Some(vec![(j1, e1), (j2, e2.clone())]));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// `target => outer`, where `target` is `outer` with some boxes filled
    /// by tangles implying `I^k_k`.
    fn fill_proof(&mut self, outer: &PlanarTangle, target: &PlanarTangle) -> R {
        if outer == target {
            return self.b.refl(outer.clone());
        }
        let fills = self.search_fill(outer, target)?.ok_or_else(|| {
            fail(format!("no filling of {} gives {}", outer.canonical_code(), target.canonical_code()))
        })?;
        let mut slots = Vec::new();
        for (j, e) in &fills {
            slots.push((*j, self.kexpr_proof(e)?));
        }
        let s = self.b.compose(outer.clone(), &slots)?;
        let s = self.b.conform(s, Side::Lhs, target)?;
        self.b.conform(s, Side::Rhs, outer)
    }

    // (1) 1^k => T^k.
    fn item1(&mut self) -> R {
        self.memo("1".into(), |x| {
            let k = x.k;
            let d = x.b.axiom("depth")?;
            let s = x.b.compose(zoo::er(c(k), 1)?, &[(1, d)])?;
            let s = x.b.rewrite(s, Side::Rhs, zoo::mult(k, k, k)?)?;
            let s = x.b.remove_all_loops(s, Side::Lhs)?;
            let m = x.b.axiom("multiplication")?;
            x.b.chain(s, m)
        })
    }

    // (2) I_k^{k+1} => T^{k+1}.
    fn item2(&mut self) -> R {
        self.memo("2".into(), |x| {
            let k = x.k;
            let d = x.b.axiom("depth")?;
            let r = x.b.refl(zoo::inclusion(k, 1)?)?;
            let s = x.b.compose(zoo::mult(k + 1, k + 1, k + 1)?, &[(1, d), (2, r)])?;
            let s = x.b.rewrite(s, Side::Lhs, zoo::inclusion(k, 1)?)?;
            let tk1 = x.tn(k + 1)?;
            let mid = tk1.compose(&[(2, &zoo::mult(k, k, k)?)])?;
            let s = x.b.conform(s, Side::Rhs, &mid)?;
            let m = x.b.axiom("multiplication")?;
            let u = x.b.compose(tk1, &[(2, m)])?;
            x.b.chain(s, u)
        })
    }

    // (3) ER^n_{n+1} o T^{n+1} => T^n.
    fn item3(&mut self, n: Colour) -> R {
        self.memo(format!("3:{n}"), |x| {
            let lhs = zoo::er(n, 1)?.compose(&[(1, &x.t(succ(n))?)])?;
            let tn = x.t(n)?;
            if n.is_zero() || n.level() < x.k {
                let r = x.b.refl(lhs)?;
                return x.b.rewrite(r, Side::Rhs, tn);
            }
            x.fill_proof(&tn, &lhs)
        })
    }

    /// `ER^n_{n+j} o T^{n+j} => T^n` by repeated (3).
    fn er_chain(&mut self, n: Colour, j: u32) -> R {
        self.memo(format!("er:{n}:{j}"), |x| {
            if j == 0 {
                return x.b.refl(x.t(n)?);
            }
            if j == 1 {
                return x.item3(n);
            }
            let inner = x.er_chain(succ(n), j - 1)?;
            let s = x.b.compose(zoo::er(n, 1)?, &[(1, inner)])?;
            let target = zoo::er(n, j)?.compose(&[(1, &x.t(c(n.level() + j))?)])?;
            let s = x.b.conform(s, Side::Lhs, &target)?;
            let i3 = x.item3(n)?;
            x.b.chain(s, i3)
        })
    }

    // (4) I_n^{n+1} o T^n => T^{n+1} for n >= k.
    fn item4(&mut self, n: u32) -> R {
        self.memo(format!("4:{n}"), |x| {
            let k = x.k;
            if n == k {
                return x.b.axiom("inclusion");
            }
            let lhs = zoo::inclusion(n, 1)?.compose(&[(1, &x.tn(n)?)])?;
            let big = x.tn(n + 1)?;
            // T^{n+1} with one box filled by vertical strands.
            for j in 1..=big.box_count() {
                let y = big.compose(&[(j, &zoo::unit(c(k)))])?;
                if y.find_renumbering(&lhs).is_some() {
                    let one = x.item1()?;
                    let s = x.b.compose(big.clone(), &[(j, one)])?;
                    return x.b.conform(s, Side::Lhs, &lhs);
                }
            }
            // T^{n+1} = W o T^{k+1} with W o I_k^{k+1} the left side.
            for (w, j) in x.holes(n + 1)? {
                let wi = w.compose(&[(j, &zoo::inclusion(k, 1)?)])?;
                if wi.find_renumbering(&lhs).is_some() {
                    let inc = x.b.axiom("inclusion")?;
                    let s = x.b.compose(w, &[(j, inc)])?;
                    let s = x.b.conform(s, Side::Lhs, &lhs)?;
                    return x.b.conform(s, Side::Rhs, &big);
                }
            }
            Err(fail(format!("no decomposition of I o T^{n} found")))
        })
    }

    /// Tangles `W` with a box `j` of colour `k+1` such that `W o_j T^{k+1}`
    /// is `T^big` up to box numbering, from splittings
    /// `T^big = M(T^m, T^r)` with `m + r - k + 1 = big`.
    fn holes(&self, big: u32) -> Result<Vec<(PlanarTangle, usize)>, TemplateError> {
        let k = self.k;
        let hole_box = |w: &PlanarTangle| w.boxes().iter().position(|&b| b == c(k + 1)).map(|i| i + 1);
        if big == k + 1 {
            return Ok(vec![(zoo::identity(k + 1)?, 1)]);
        }
        let mut out = Vec::new();
        let tb = self.tn(big)?;
        for m in k..big {
            let r = big + k - 1 - m;
            if r < k || r >= big {
                continue;
            }
            let mm = zoo::mult(m, r, big)?;
            for (w, _) in self.holes(m)? {
                let cand = mm.compose(&[(1, &w), (2, &self.tn(r)?)])?;
                out.push(cand);
            }
            for (w, _) in self.holes(r)? {
                let cand = mm.compose(&[(1, &self.tn(m)?), (2, &w)])?;
                out.push(cand);
            }
        }
        let mut res = Vec::new();
        for w in out {
            if let Some(j) = hole_box(&w) {
                if w.compose(&[(j, &self.tn(k + 1)?)])?.find_renumbering(&tb).is_some() {
                    res.push((w, j));
                }
            }
        }
        Ok(res)
    }

    /// `I_a^{n} o T^a => T^n` for `k <= a <= n` by repeated (4).
    fn incl_chain(&mut self, a: u32, n: u32) -> R {
        self.memo(format!("ic:{a}:{n}"), |x| {
            if a == n {
                return x.b.refl(x.tn(n)?);
            }
            let prev = x.incl_chain(a, n - 1)?;
            let s = x.b.compose(zoo::inclusion(n - 1, 1)?, &[(1, prev)])?;
            let target = zoo::inclusion(a, n - a)?.compose(&[(1, &x.tn(a)?)])?;
            let s = x.b.conform(s, Side::Lhs, &target)?;
            let i4 = x.item4(n - 1)?;
            x.b.chain(s, i4)
        })
    }

    // (5) I_k^n => T^n.
    fn item5_incl(&mut self, n: u32) -> R {
        self.memo(format!("5i:{n}"), |x| {
            let k = x.k;
            let s = x.incl_chain(k, n)?;
            x.b.rewrite(s, Side::Lhs, zoo::inclusion(k, n - k)?)
        })
    }

    // (5) 1^n => T^n.
    fn item5_unit(&mut self, n: u32) -> R {
        self.memo(format!("5u:{n}"), |x| {
            let k = x.k;
            if n == k {
                return x.item1();
            }
            let prev = x.item5_unit(n - 1)?;
            let s = x.b.compose(zoo::inclusion(n - 1, 1)?, &[(1, prev)])?;
            let s = x.b.rewrite(s, Side::Lhs, zoo::unit(c(n)))?;
            let i4 = x.item4(n - 1)?;
            x.b.chain(s, i4)
        })
    }

    // (6) M(T^n, T^n) => T^n for n >= k.
    fn item6(&mut self, n: u32) -> R {
        self.memo(format!("6:{n}"), |x| {
            let k = x.k;
            let tn = x.tn(n)?;
            let lhs = zoo::mult(n, n, n)?.compose(&[(1, &tn), (2, &tn)])?;
            if n == k {
                let m = x.b.axiom("multiplication")?;
                return x.b.conform(m, Side::Lhs, &lhs);
            }
            let j = n - k + 1;
            let s = x.er_chain(c(n), j)?;
            x.b.conform(s, Side::Lhs, &lhs)
        })
    }

    /// `M^n_{n,n} o (A, B) => T^n` from proofs of `A => T^n` and `B => T^n`.
    fn product(&mut self, n: u32, pa: usize, pb: usize) -> R {
        let s = self.b.compose(zoo::mult(n, n, n)?, &[(1, pa), (2, pb)])?;
        let i6 = self.item6(n)?;
        self.b.chain(s, i6)
    }

    // (7) 1^{0±} => T^{0±}.
    fn item7_zero(&mut self, z: Colour) -> R {
        self.memo(format!("7:{z}"), |x| {
            let id = x.b.axiom("identity")?;
            let s = x.b.compose(zoo::er(z, x.k)?, &[(1, id)])?;
            x.b.remove_all_loops(s, Side::Lhs)
        })
    }

    // (7) E^n => T^n for n >= 2.
    fn item7(&mut self, n: u32) -> R {
        self.memo(format!("7:{n}"), |x| {
            let k = x.k;
            if n <= k {
                let ax = x.b.axiom(&format!("jones{n}"))?;
                let s = x.b.compose(zoo::er(c(n), k - n)?, &[(1, ax)])?;
                let s = x.b.remove_all_loops(s, Side::Lhs)?;
                return x.b.conform(s, Side::Rhs, &x.tn(n)?);
            }
            let big = 2 * n - k - 1;
            let outer = zoo::er(c(n), n - k - 1)?.compose(&[(1, &zoo::mult(n - 1, n - 1, big)?)])?;
            let u = x.item5_unit(n - 1)?;
            let s = x.b.compose(outer, &[(1, u), (2, u)])?;
            let s = x.b.rewrite(s, Side::Lhs, zoo::jones(n)?)?;
            let e = x.er_chain(c(n), n - k - 1)?;
            x.b.chain(s, e)
        })
    }

    /// `E_i => T^n`: cup and cap at positions `i, i+1` of colour `n >= k`.
    fn jones_at(&mut self, n: u32, i: u32) -> R {
        self.memo(format!("e:{n}:{i}"), |x| {
            let k = x.k;
            let ei = zoo::inclusion(i + 1, n - i - 1)?.compose(&[(1, &zoo::jones(i + 1)?)])?;
            if i < k {
                // Jones axiom, included up to colour n, then (5).
                let ax = x.b.axiom(&format!("jones{}", i + 1))?;
                let s = x.b.compose(zoo::inclusion(k, n - k)?, &[(1, ax)])?;
                let s = x.b.rewrite(s, Side::Lhs, ei)?;
                let i5 = x.item5_incl(n)?;
                return x.b.chain(s, i5);
            }
            let e = x.item7(i + 1)?;
            let s = x.b.compose(zoo::inclusion(i + 1, n - i - 1)?, &[(1, e)])?;
            let s = x.b.rewrite(s, Side::Lhs, ei)?;
            let ic = x.incl_chain(i + 1, n)?;
            x.b.chain(s, ic)
        })
    }

    // (8) Q => T^n for every loop-free Temperley-Lieb tangle Q of colour n >= k.
    fn item8(&mut self, q: &PlanarTangle) -> R {
        let n = q.external().level();
        self.memo(format!("8:{}", q.canonical_code()), |x| {
            let word = x.tl_word(q)?;
            if word.is_empty() {
                return x.item5_unit(n);
            }
            // Q = E_{w0} (E_{w1} (...)), built right to left.
            let mut acc = x.jones_at(n, word[word.len() - 1])?;
            for &i in word[..word.len() - 1].iter().rev() {
                let e = x.jones_at(n, i)?;
                acc = x.product(n, e, acc)?;
            }
            x.b.conform(acc, Side::Lhs, q)
        })
    }

    // (9) SH_n^{n+2} o T^n => T^{n+2} for n >= k.
    fn item9(&mut self, n: u32) -> R {
        self.memo(format!("9:{n}"), |x| {
            let k = x.k;
            if n == k {
                let ax = x.b.axiom("shift")?;
                return x.b.conform(ax, Side::Lhs, &zoo::shift(k)?.compose(&[(1, &x.tn(k)?)])?);
            }
            let lhs = zoo::shift(n)?.compose(&[(1, &x.tn(n)?)])?;
            let m = zoo::mult(n + 1, k + 2, n + 2)?;
            let prev_l = zoo::shift(n - 1)?.compose(&[(1, &x.tn(n - 1)?)])?;
            let split = m.compose(&[(1, &prev_l), (2, &zoo::shift(k)?)])?;
            if split.find_renumbering(&lhs).is_none() {
                return Err(fail(format!("SH o T^{n} does not split")));
            }
            let p = x.item9(n - 1)?;
            let sh = x.b.axiom("shift")?;
            let s = x.b.compose(m.clone(), &[(1, p), (2, sh)])?;
            let s = x.b.conform(s, Side::Lhs, &lhs)?;
            let mid = m.compose(&[(1, &x.tn(n + 1)?), (2, &x.tn(k + 2)?)])?;
            let f = x.fill_proof(&x.tn(n + 2)?, &mid)?;
            x.b.chain(s, f)
        })
    }

    /// `M3(A, B, C) => T^N` (three boxes stacked top to bottom) from proofs.
    fn product3(&mut self, big: u32, pa: usize, pb: usize, pc: usize) -> R {
        let bc = self.product(big, pb, pc)?;
        self.product(big, pa, bc)
    }

    // (10) EL_n^n o T^n => T^n for n >= 1.
    fn item10(&mut self, n: u32) -> R {
        self.memo(format!("10:{n}"), |x| {
            let k = x.k;
            let lhs = zoo::el(n)?.compose(&[(1, &x.tn(n)?)])?;
            if n < k {
                let top = x.item10(k)?;
                let s = x.b.compose(zoo::er(c(n), k - n)?, &[(1, top)])?;
                let s = x.b.conform(s, Side::Lhs, &lhs)?;
                return x.b.conform(s, Side::Rhs, &x.tn(n)?);
            }
            let big = n + 2;
            let q = zoo::q(n)?;
            let qs = q.adjoint();
            let pq = x.item8(&q)?;
            let p9 = x.item9(n)?;
            let pqs = x.item8(&qs)?;
            let s = x.product3(big, pq, p9, pqs)?;
            let s = x.b.compose(zoo::er(c(n), 2)?, &[(1, s)])?;
            let s = x.b.remove_all_loops(s, Side::Lhs)?;
            let s = x.b.conform(s, Side::Lhs, &lhs)?;
            let e = x.er_chain(c(n), 2)?;
            x.b.chain(s, e)
        })
    }

    // (11) I_n^{n+1} o T^n => T^{n+1} for every colour.
    fn item11(&mut self, n: Colour) -> R {
        self.memo(format!("11:{n}"), |x| {
            let k = x.k;
            match n {
                Colour::Positive(m) if m >= k => x.item4(m),
                Colour::ZeroMinus => {
                    let lhs = zoo::i_zero_minus().compose(&[(1, &x.t(n)?)])?;
                    let s = x.item10(1)?;
                    x.b.conform(s, Side::Lhs, &lhs)
                }
                _ => {
                    let m = n.level();
                    let t = 2 * k - m + 1;
                    let kt = zoo::k_family(m, k)?;
                    let pk = x.item8(&kt)?;
                    let pks = x.item8(&kt.adjoint())?;
                    let pi = x.item5_incl(t)?;
                    let s = x.product3(t, pk, pi, pks)?;
                    let s = x.b.compose(zoo::er(c(m + 1), t - m - 1)?, &[(1, s)])?;
                    let s = x.b.remove_all_loops(s, Side::Lhs)?;
                    let lhs = zoo::inclusion(m, 1)?.compose(&[(1, &x.t(n)?)])?;
                    let s = x.b.conform(s, Side::Lhs, &lhs)?;
                    let e = x.er_chain(c(m + 1), t - m - 1)?;
                    x.b.chain(s, e)
                }
            }
        })
    }

    fn item12_lhs(&self, n: Colour) -> Result<PlanarTangle, TemplateError> {
        let tn = self.t(n)?;
        Ok(zoo::mult_square(n)?.compose(&[(1, &tn), (2, &tn)])?)
    }

    // (12) M(T^n, T^n) => T^n for every colour.
    fn item12(&mut self, n: Colour) -> R {
        self.memo(format!("12:{n}"), |x| {
            let k = x.k;
            match n {
                Colour::Positive(m) if m >= k => x.item6(m),
                Colour::ZeroMinus => x.item12_zero_minus(),
                _ => {
                    let m = n.level();
                    let u = 2 * k - m;
                    let l = zoo::l_family(m, k)?;
                    let pl = x.item8(&l)?;
                    let pi = x.item5_incl(u)?;
                    let lower = x.product3(u, pl, pi, pl)?;
                    let s = x.product3(u, pl, pi, lower)?;
                    let s = x.b.compose(zoo::er(n, u - m)?, &[(1, s)])?;
                    let s = x.b.remove_all_loops(s, Side::Lhs)?;
                    let lhs = x.item12_lhs(n)?;
                    let s = x.b.conform(s, Side::Lhs, &lhs)?;
                    let e = x.er_chain(n, u - m)?;
                    x.b.chain(s, e)
                }
            }
        })
    }

    /// (12) at `0-`: a closed box is produced inside a colour-`4k` sandwich,
    /// then a second one from the shift template, and both are closed off.
    fn item12_zero_minus(&mut self) -> R {
        let k = self.k;
        let (n2, n4, big) = (2 * k, 4 * k, 2 * k + 2);
        // SH^{4k}_{2k} o I_k^{2k} => T^{4k}, one shift at a time.
        let mut p = self.item5_incl(n2)?;
        for j in 0..k {
            let s = self.b.compose(zoo::shift(n2 + 2 * j)?, &[(1, p)])?;
            let i9 = self.item9(n2 + 2 * j)?;
            p = self.b.chain(s, i9)?;
        }
        let pa = zoo::shift_by(n2, n2)?.compose(&[(1, &zoo::inclusion(k, k)?)])?;
        let p = self.b.conform(p, Side::Lhs, &pa)?;
        // Sandwich, close the right half and drop the k loops.
        let a = a_tangle(k)?;
        let top = self.item8(&a)?;
        let bottom = self.item8(&a.adjoint())?;
        let s = self.product3(n4, top, p, bottom)?;
        let s = self.b.compose(zoo::er(c(n2), n2)?, &[(1, s)])?;
        let s = self.b.remove_all_loops(s, Side::Lhs)?;
        let e = self.er_chain(c(n2), n2)?;
        let y = self.b.chain(s, e)?;
        let y = self.b.compose(zoo::inclusion(n2, 2)?, &[(1, y)])?;
        let ic = self.incl_chain(n2, big)?;
        let y = self.b.chain(y, ic)?;
        // I^{2k+2}_{k+2} o SH^{k+2}_k => T^{2k+2}.
        let sh = self.b.axiom("shift")?;
        let z = self.b.compose(zoo::inclusion(k + 2, k)?, &[(1, sh)])?;
        let ic = self.incl_chain(k + 2, big)?;
        let z = self.b.chain(z, ic)?;
        // Y, B, Z, B* stacked, then closed around the left.
        let bt = b_tangle(k)?;
        let pb = self.item8(&bt)?;
        let pbs = self.item8(&bt.adjoint())?;
        let lower = self.product(big, z, pbs)?;
        let lower = self.product(big, pb, lower)?;
        let x = self.product(big, y, lower)?;
        let s = self.b.compose(zoo::er(Colour::ZeroMinus, big)?, &[(1, x)])?;
        let s = self.b.remove_all_loops(s, Side::Lhs)?;
        let lhs = self.item12_lhs(Colour::ZeroMinus)?;
        let s = self.b.conform(s, Side::Lhs, &lhs)?;
        let e = self.er_chain(Colour::ZeroMinus, big)?;
        self.b.chain(s, e)
    }
}

/// `a` on top of `b` for loop-free diagrams given by 0-based partner
/// vectors (top position `i` is index `i - 1`, bottom position `j` is index
/// `2n - j`). `None` when a closed loop forms.
fn stack(n: usize, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let d = 2 * n;
    let is_top = |p: usize| p < n;
    let pos = |p: usize| if is_top(p) { p + 1 } else { d - p };
    let mut out = vec![usize::MAX; d];
    let mut crossings = 0;
    // Result index r: top positions come from a, bottom positions from b.
    for start in 0..d {
        if out[start] != usize::MAX {
            continue;
        }
        let (mut in_a, mut p) = (is_top(start), start);
        let end = loop {
            let q = if in_a { a[p] } else { b[p] };
            match (in_a, is_top(q)) {
                (true, true) => break q,
                (false, false) => break q,
                // a's bottom j meets b's top j, and back.
                (true, false) => {
                    crossings += 1;
                    in_a = false;
                    p = pos(q) - 1;
                }
                (false, true) => {
                    crossings += 1;
                    in_a = true;
                    p = d - pos(q);
                }
            }
        };
        out[start] = end;
        out[end] = start;
    }
    // Every glued point lies on exactly one strand through the middle.
    (crossings == n).then_some(out)
}

/// A word `[i_1, ..., i_r]` with `Q = E_{i_1} ... E_{i_r}` (top to bottom)
/// for every loop-free Temperley-Lieb diagram of colour `n`, keyed by the
/// partner vector and found by breadth-first search over loop-free
/// products. The unit has the empty word.
fn tl_words(n: u32) -> HashMap<Vec<usize>, Vec<u32>> {
    let nn = n as usize;
    let d = 2 * nn;
    let identity: Vec<usize> = (0..d).map(|p| d - 1 - p).collect();
    let mut seen = HashMap::new();
    seen.insert(identity.clone(), vec![]);
    let gens: Vec<(u32, Vec<usize>)> = (1..nn)
        .map(|i| {
            let mut g = identity.clone();
            let (t1, t2, b1, b2) = (i - 1, i, d - i, d - i - 1);
            g[t1] = t2;
            g[t2] = t1;
            g[b1] = b2;
            g[b2] = b1;
            (i as u32, g)
        })
        .collect();
    let mut queue = VecDeque::new();
    queue.push_back(identity);
    while let Some(t) = queue.pop_front() {
        let w: Vec<u32> = seen[&t].clone();
        for (i, g) in &gens {
            let Some(p) = stack(nn, g, &t) else { continue };
            if seen.contains_key(&p) {
                continue;
            }
            let mut w2 = vec![*i];
            w2.extend(&w);
            seen.insert(p.clone(), w2);
            queue.push_back(p);
        }
    }
    seen
}

/// `A^{4k}`: through strands `1..2k-1`, a bottom cup at `2k, 2k+1` and
/// nested bottom cups over `2k+2..4k-1`, bottom `4k` to top `2k`, and
/// adjacent top caps over `2k+1..4k`.
fn a_tangle(k: u32) -> Result<PlanarTangle, TemplateError> {
    let mut pairs: Vec<(Pos, Pos)> = (1..2 * k).map(|i| (Pos::Top(i), Pos::Bot(i))).collect();
    pairs.push((Pos::Bot(2 * k), Pos::Bot(2 * k + 1)));
    for i in 1..k {
        pairs.push((Pos::Bot(3 * k - i + 1), Pos::Bot(3 * k + i)));
    }
    pairs.push((Pos::Bot(4 * k), Pos::Top(2 * k)));
    for i in 1..=k {
        pairs.push((Pos::Top(2 * k + 2 * i - 1), Pos::Top(2 * k + 2 * i)));
    }
    Ok(zoo::tl_tangle(4 * k, &pairs)?)
}

/// `B^{2k+2}`: outer through strands, adjacent top caps, and bottom cups at
/// `2, 3` and nested over `4..2k+1`.
fn b_tangle(k: u32) -> Result<PlanarTangle, TemplateError> {
    let big = 2 * k + 2;
    let mut pairs = vec![(Pos::Top(1), Pos::Bot(1)), (Pos::Top(big), Pos::Bot(big)), (Pos::Bot(2), Pos::Bot(3))];
    for i in 1..=k {
        pairs.push((Pos::Top(2 * i), Pos::Top(2 * i + 1)));
    }
    for i in 1..k {
        pairs.push((Pos::Bot(k + 3 - i), Pos::Bot(k + 2 + i)));
    }
    Ok(zoo::tl_tangle(big, &pairs)?)
}

fn zero_and_up(nmax: u32) -> Vec<Colour> {
    let mut v = vec![Colour::ZeroPlus, Colour::ZeroMinus];
    v.extend((1..=nmax).map(c));
    v
}

/// Scripts for items (1)-(12) at every colour up to `nmax` (conclusion colour).
pub fn thm32_scripts(k: u32, nmax: u32) -> Result<Vec<Script>, TemplateError> {
    let axioms = super::basic_templates(k)?;
    let words = WordCache::default();
    let t = |n: Colour| -> Result<PlanarTangle, TemplateError> { Ok(zoo::t(n, k)?) };
    let mut out = Vec::new();
    let mut run = |item: u32,
                   label: String,
                   n: Colour,
                   expected: Template,
                   f: &dyn Fn(&mut Ctx) -> R|
     -> Result<(), TemplateError> {
        let mut ctx = Ctx::new(&axioms, &words);
        let done = f(&mut ctx).and_then(|i| {
            let i = ctx.b.conform(i, Side::Lhs, &expected.lhs)?;
            ctx.b.conform(i, Side::Rhs, &expected.rhs)
        });
        let (derivation, build_error) = match done {
            Ok(i) => (ctx.b.finish_at(i, label.clone()), None),
            Err(e) => (ctx.b.finish(label.clone()), Some(e.to_string())),
        };
        out.push(Script { item, label, n, derivation, expected, build_error });
        Ok(())
    };
    let kc = c(k);
    run(1, "1".into(), kc, Template::new(zoo::unit(kc), t(kc)?)?, &|x| x.item1())?;
    run(2, "2".into(), c(k + 1), Template::new(zoo::inclusion(k, 1)?, t(c(k + 1))?)?, &|x| x.item2())?;
    for n in zero_and_up(nmax.saturating_sub(1)) {
        let lhs = zoo::er(n, 1)?.compose(&[(1, &t(succ(n))?)])?;
        run(3, format!("3({n})"), n, Template::new(lhs, t(n)?)?, &|x| x.item3(n))?;
    }
    for n in k..nmax {
        let lhs = zoo::inclusion(n, 1)?.compose(&[(1, &t(c(n))?)])?;
        run(4, format!("4({n})"), c(n), Template::new(lhs, t(c(n + 1))?)?, &|x| x.item4(n))?;
    }
    for n in k..=nmax {
        let e = Template::new(zoo::inclusion(k, n - k)?, t(c(n))?)?;
        run(5, format!("5(I,{n})"), c(n), e, &|x| x.item5_incl(n))?;
        let e = Template::new(zoo::unit(c(n)), t(c(n))?)?;
        run(5, format!("5(1,{n})"), c(n), e, &|x| x.item5_unit(n))?;
    }
    for n in k..=nmax {
        let tn = t(c(n))?;
        let lhs = zoo::mult(n, n, n)?.compose(&[(1, &tn), (2, &tn)])?;
        run(6, format!("6({n})"), c(n), Template::new(lhs, tn)?, &|x| x.item6(n))?;
    }
    for z in [Colour::ZeroPlus, Colour::ZeroMinus] {
        run(7, format!("7({z})"), z, Template::new(zoo::unit(z), t(z)?)?, &|x| x.item7_zero(z))?;
    }
    for n in 2..=nmax {
        run(7, format!("7({n})"), c(n), Template::new(zoo::jones(n)?, t(c(n))?)?, &|x| x.item7(n))?;
    }
    for n in k..=nmax {
        for d in tl_basis(c(n)) {
            let q = d.to_tangle();
            let label = format!("8({n},{})", d.label());
            run(8, label, c(n), Template::new(q.clone(), t(c(n))?)?, &|x| x.item8(&q))?;
        }
    }
    for n in k..=nmax.saturating_sub(2) {
        let lhs = zoo::shift(n)?.compose(&[(1, &t(c(n))?)])?;
        run(9, format!("9({n})"), c(n), Template::new(lhs, t(c(n + 2))?)?, &|x| x.item9(n))?;
    }
    for n in 1..=nmax.saturating_sub(2) {
        let lhs = zoo::el(n)?.compose(&[(1, &t(c(n))?)])?;
        run(10, format!("10({n})"), c(n), Template::new(lhs, t(c(n))?)?, &|x| x.item10(n))?;
    }
    for n in zero_and_up(nmax.saturating_sub(1)) {
        let inc = match n {
            Colour::ZeroMinus => zoo::i_zero_minus(),
            _ => zoo::inclusion(n.level(), 1)?,
        };
        let lhs = inc.compose(&[(1, &t(n)?)])?;
        run(11, format!("11({n})"), n, Template::new(lhs, t(succ(n))?)?, &|x| x.item11(n))?;
    }
    for n in zero_and_up(nmax) {
        let tn = t(n)?;
        let lhs = zoo::mult_square(n)?.compose(&[(1, &tn), (2, &tn)])?;
        run(12, format!("12({n})"), n, Template::new(lhs, tn)?, &|x| x.item12(n))?;
    }
    Ok(out)
}
