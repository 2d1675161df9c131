//! The `run` suites. Each returns a [`Report`]; a suite never stops at the
//! first failure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::report::Report;
use super::CliError;
use crate::exact::ScalarField;
use crate::present::{self, PresentationConfig};
use crate::tangle::{Colour, PlanarTangle, Site, TangleBuilder};
use crate::template::{basic_templates, check_derivation, holds_for, thm32_scripts, Template};
use crate::tl::{tl_basis, ConcreteInstance, Model, TLElement};
use crate::zoo;

pub const SUITES: &[&str] = &["core-props", "tl-props", "thm32", "present", "tensor", "single-gen", "all"];

/// Largest colour an instance is built to in the tensor suite.
pub const TENSOR_COLOUR_CAP: u32 = 7;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub nmax: Option<u32>,
    pub seed: u64,
}

pub fn run_suite(name: &str, o: &RunOptions) -> Result<Report, CliError> {
    match name {
        "core-props" => Ok(core_props(o.seed)),
        "tl-props" => tl_props(o.m),
        "thm32" => thm32(o.k, o.nmax),
        "present" => present_suite(o.m.unwrap_or(4)),
        "tensor" => tensor_suite(o.m.unwrap_or(4)),
        "single-gen" => single_gen(o.m.unwrap_or(5), o.seed),
        "all" => {
            let mut r = Report::new("all");
            let m = o.m.unwrap_or(4);
            r.merge(core_props(o.seed));
            r.merge(tl_props(o.m)?);
            r.merge(thm32(Some(m - 2), None)?);
            r.merge(present_suite(m)?);
            r.merge(tensor_suite(m)?);
            if m <= 5 {
                r.merge(single_gen(m, o.seed)?);
            }
            Ok(r)
        }
        _ => Err(CliError::Usage(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", ")))),
    }
}

/// Zoo tangles of colour at most 4, the material for random chains.
pub fn tangle_pool() -> Vec<PlanarTangle> {
    let mut pool = Vec::new();
    let mut add = |t: Result<PlanarTangle, crate::tangle::TangleError>| {
        if let Ok(t) = t {
            if t.external().level() <= 4 {
                pool.push(t);
            }
        }
    };
    for a in 1..=3 {
        for b in 1..=3 {
            for p in 1..=4 {
                add(zoo::mult(a, b, p));
            }
        }
    }
    for a in 0..=3 {
        for j in 0..=2 {
            add(zoo::inclusion(a, j));
        }
    }
    for n in 1..=3 {
        add(zoo::el(n));
        add(zoo::rotation(n));
        add(zoo::tr(n));
        add(zoo::trl(n));
        add(zoo::jones(n + 1));
        for k in 1..=2 {
            add(zoo::t(Colour::n(n + 1), k));
            add(zoo::w(n + 1, k));
        }
    }
    for c in [Colour::ZeroPlus, Colour::ZeroMinus, Colour::n(1), Colour::n(2)] {
        for j in 1..=2 {
            add(zoo::er(c, j));
        }
        add(zoo::mult_square(c));
    }
    add(Ok(zoo::i_zero_minus()));
    pool
}

fn pick<'a>(rng: &mut impl Rng, pool: &'a [PlanarTangle], colour: Colour) -> Option<&'a PlanarTangle> {
    let c: Vec<&PlanarTangle> = pool.iter().filter(|t| t.external() == colour).collect();
    c.choose(rng).copied()
}

/// One chain `(T o_i S) o_j U` against the single-pass composite; `None`
/// when the draw has no compatible pieces.
pub fn random_chain(rng: &mut impl Rng, pool: &[PlanarTangle]) -> Option<Result<(String, bool), String>> {
    let t = pool.choose(rng)?;
    if t.box_count() == 0 {
        return None;
    }
    let i = rng.gen_range(1..=t.box_count());
    let s = pick(rng, pool, t.boxes()[i - 1])?;
    let r1 = t.compose(&[(i, s)]).ok()?;
    if r1.box_count() == 0 {
        return None;
    }
    let j = rng.gen_range(1..=r1.box_count());
    let u = pick(rng, pool, r1.boxes()[j - 1])?;
    let run = || -> Result<(String, bool), crate::tangle::TangleError> {
        let seq = r1.compose(&[(j, u)])?;
        let rest = t.box_count() - 1;
        let single = if j <= rest {
            let orig = if j < i { j } else { j + 1 };
            t.compose(&[(i, s), (orig, u)])?
        } else {
            t.compose(&[(i, &s.compose(&[(j - rest, u)])?)])?
        };
        let code = seq.canonical_code().to_string();
        Ok((code, seq.canonical_code() == single.canonical_code()))
    };
    Some(run().map_err(|e| e.to_string()))
}

fn two_loops(nested: bool) -> PlanarTangle {
    let mut b = TangleBuilder::new(Colour::ZeroPlus, vec![]);
    let first = b.free_loop(Site::Corner(0, 0));
    b.free_loop(if nested { Site::InsideLoop(first) } else { Site::Corner(0, 0) });
    b.build().expect("two free loops form a valid tangle")
}

pub fn core_props(seed: u64) -> Report {
    let mut r = Report::new("core-props");
    let pool = tangle_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut done, mut bad, mut draws) = (0, Vec::new(), 0);
    while done < 100 && draws < 100_000 {
        draws += 1;
        match random_chain(&mut rng, &pool) {
            None => {}
            Some(Ok((code, ok))) => {
                done += 1;
                if !ok {
                    bad.push(code);
                }
            }
            Some(Err(e)) => {
                done += 1;
                bad.push(e);
            }
        }
    }
    r.check("operad chains (100)", done == 100 && bad.is_empty(), json!({ "chains": done, "failures": bad }));
    let not_involutive: Vec<String> = pool
        .iter()
        .filter(|t| t.adjoint().adjoint().canonical_code() != t.canonical_code())
        .map(|t| t.canonical_code().to_string())
        .collect();
    r.check("adjoint involutive", not_involutive.is_empty(), json!({ "tangles": pool.len(), "failures": not_involutive }));
    for n in 1..=4 {
        let rot = zoo::rotation(n).expect("rotation exists");
        let id = zoo::identity(n + 1).expect("identity exists");
        let mut acc = rot.clone();
        let mut period = 1;
        while acc.canonical_code() != id.canonical_code() && period <= 2 * n + 2 {
            acc = acc.compose(&[(1, &rot)]).expect("rotations compose");
            period += 1;
        }
        r.check(format!("rotation period n={n}"), period == n + 1, json!({ "period": period }));
    }
    let (nested, apart) = (two_loops(true), two_loops(false));
    r.check(
        "nested loops distinguished",
        nested.canonical_code() != apart.canonical_code() && nested.canonical_code() == two_loops(true).canonical_code(),
        json!({ "nested": nested.canonical_code().to_string(), "apart": apart.canonical_code().to_string() }),
    );
    r
}

fn catalan(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    (0..n).map(|i| catalan(i) * catalan(n - 1 - i)).sum()
}

/// Closed walks of length `2n` from an end vertex of the path with `m - 1` vertices.
pub fn walk_count(m: u32, n: u32) -> u64 {
    let v = (m - 1) as usize;
    let mut x = vec![0u64; v];
    x[0] = 1;
    for _ in 0..2 * n {
        x = (0..v)
            .map(|i| (if i > 0 { x[i - 1] } else { 0 }) + (if i + 1 < v { x[i + 1] } else { 0 }))
            .collect();
    }
    x[0]
}

pub fn tl_props(only_m: Option<u32>) -> Result<Report, CliError> {
    let mut r = Report::new("tl-props");
    let counts: Vec<(u32, usize, u64)> = (0..=8).map(|n| (n, tl_basis(Colour::n(n)).len(), catalan(n as u64))).collect();
    r.check("TL dimensions are Catalan (n <= 8)", counts.iter().all(|(_, a, b)| *a as u64 == *b), json!(counts));
    let f = ScalarField::GenericDelta;
    let mut bad = Vec::new();
    for n in 2..=6u32 {
        let e: Vec<TLElement> = (1..n as usize).map(|i| TLElement::jones_e(f, n, i)).collect::<Result<_, _>>()?;
        for i in 0..e.len() {
            if e[i].multiply(&e[i])? != e[i].scale(&f.delta()) {
                bad.push(format!("E{}^2 at n={n}", i + 1));
            }
            if i + 1 < e.len() && e[i].multiply(&e[i + 1])?.multiply(&e[i])? != e[i] {
                bad.push(format!("E{0}E{1}E{0} at n={n}", i + 1, i + 2));
            }
            if i > 0 && e[i].multiply(&e[i - 1])?.multiply(&e[i])? != e[i] {
                bad.push(format!("E{0}E{1}E{0} at n={n}", i + 1, i));
            }
            for j in i + 2..e.len() {
                if e[i].multiply(&e[j])? != e[j].multiply(&e[i])? {
                    bad.push(format!("E{}E{} at n={n}", i + 1, j + 1));
                }
            }
        }
    }
    r.check("Jones relations (n <= 6)", bad.is_empty(), json!({ "failures": bad }));
    let ms: Vec<u32> = only_m.map(|m| vec![m]).unwrap_or_else(|| vec![3, 4, 5, 6]);
    for m in ms {
        let inst = ConcreteInstance::build(Model::QuotientTL(m), 6)?;
        let mut rows = Vec::new();
        let (mut dims_ok, mut pos_ok, mut sph_ok) = (true, true, true);
        for n in 0..=6 {
            let c = Colour::n(n);
            let (d, w) = (inst.dim(c)?, walk_count(m, n));
            let det = inst.gram_determinant(c)?;
            let positive = inst.is_positive(c)?;
            dims_ok &= d as u64 == w;
            pos_ok &= positive && !det.is_zero();
            if n <= 5 {
                for i in 0..d {
                    let b = inst.basis_element(c, i)?;
                    sph_ok &= b.trace() == b.left_trace();
                }
            }
            rows.push(json!({ "n": n, "dim": d, "walks": w, "gram_det": det.to_string(), "positive": positive }));
        }
        r.check(format!("m={m} dimensions match walk counts"), dims_ok, json!(rows));
        r.check(format!("m={m} trace form positive definite"), pos_ok, Value::Null);
        r.check(format!("m={m} left and right traces agree (n <= 5)"), sph_ok, Value::Null);
    }
    Ok(r)
}

fn same_template(a: &Template, b: &Template) -> bool {
    a.lhs.canonical_code() == b.lhs.canonical_code() && a.rhs.canonical_code() == b.rhs.canonical_code()
}

pub fn thm32(k: Option<u32>, nmax: Option<u32>) -> Result<Report, CliError> {
    let mut r = Report::new("thm32");
    let ks: Vec<u32> = k.map(|k| vec![k]).unwrap_or_else(|| vec![1, 2, 3]);
    let mut scripts_json = Vec::new();
    for k in ks {
        let nmax = nmax.unwrap_or(k + 4);
        let axioms = basic_templates(k)?;
        let scripts = thm32_scripts(k, nmax)?;
        let mut failed = Vec::new();
        for s in &scripts {
            let rep = check_derivation(&axioms, &s.derivation);
            let matches = rep.conclusion.as_ref().is_some_and(|c| same_template(c, &s.expected));
            if s.build_error.is_some() || !matches {
                failed.push(json!({
                    "item": s.item,
                    "label": s.label,
                    "build_error": s.build_error,
                    "first_error": rep.first_error().and_then(|e| e.error.clone()),
                    "conclusion": rep.conclusion.as_ref().map(|c| c.to_string()),
                    "expected": s.expected.to_string(),
                }));
            }
            scripts_json.push(json!({ "k": k, "item": s.item, "label": s.label, "steps": s.derivation.steps.len() }));
        }
        r.check(
            format!("k={k} nmax={nmax}: {} scripts validate", scripts.len()),
            failed.is_empty(),
            json!({ "scripts": scripts.len(), "failures": failed }),
        );
    }
    r.data = json!(scripts_json);
    Ok(r)
}

pub fn quotient_config(m: u32, nmax: u32) -> Result<PresentationConfig, CliError> {
    if m < 3 {
        return Err(CliError::Usage(format!("m must be at least 3, got {m}")));
    }
    let inst = ConcreteInstance::build(Model::QuotientTL(m), nmax)?;
    Ok(PresentationConfig::new(inst, m - 2)?)
}

pub fn present_suite(m: u32) -> Result<Report, CliError> {
    let mut r = Report::new("present");
    let k = m.saturating_sub(2);
    let cfg = quotient_config(m, k + 3)?;
    let inst = &cfg.instance;
    r.check(format!("depth m={m} k={k}"), true, json!({ "basis": cfg.basis.len() }));
    let b = cfg.basis_elements();
    let mut failing = Vec::new();
    for (name, t) in cfg.templates.iter() {
        if !holds_for(inst, &b, t)? {
            failing.push(name.to_string());
        }
    }
    r.check("basic templates hold", failing.is_empty(), json!({ "failures": failing }));
    let rel = present::generate_relations(&cfg)?;
    let formula: usize = cfg.templates.iter().map(|(_, t)| cfg.basis.len().pow(t.lhs.box_count() as u32)).sum();
    r.check("relation count matches formula", rel.len() == formula, json!({ "relations": rel.len(), "formula": formula }));
    let vanish = present::verify_relations_vanish(inst, &rel)?;
    let fails: Vec<Value> = vanish.failures.iter().map(|(i, t, _)| json!({ "index": i, "template": t })).collect();
    r.check("relations vanish", vanish.ok(), json!({ "checked": vanish.checked, "failures": fails }));
    let text = rel.to_json_string();
    let back = present::RelationSet::from_json_str(&text, inst.field(), &cfg.basis)?;
    r.check("round trip", back == rel && present::verify_relations_vanish(inst, &back)?.ok(), Value::Null);
    let again = present::generate_relations(&cfg)?.to_json_string();
    r.check("deterministic output", again == text, Value::Null);
    let span = present::spanning_report(&cfg, k + 3)?;
    let span_json: Vec<Value> = span.iter().map(|s| json!({ "n": s.colour.to_string(), "rank": s.rank, "dim": s.dim })).collect();
    r.check(format!("spanning (n <= {})", k + 3), span.iter().all(|s| s.ok()), json!(span_json));
    let closure = present::generating_closure_check(&cfg, k + 2)?;
    let bad: Vec<&str> = closure.iter().filter(|c| !c.holds).map(|c| c.generator.as_str()).collect();
    r.check(format!("generating tangles (n <= {})", k + 2), bad.is_empty(), json!({ "checked": closure.len(), "failures": bad }));
    r.data = rel.to_json();
    Ok(r)
}

/// Pairs `(a, b)` with `k <= a, b <= k + 2`; those needing colours past
/// [`TENSOR_COLOUR_CAP`] are listed as skipped.
pub fn tensor_suite(m: u32) -> Result<Report, CliError> {
    let mut r = Report::new("tensor");
    let k = m.saturating_sub(2);
    let pairs: Vec<(u32, u32)> = (k..=k + 2).flat_map(|a| (k..=k + 2).map(move |b| (a, b))).collect();
    let target = |a: u32, b: u32| a + b + 1 - k;
    let (run, skipped): (Vec<_>, Vec<_>) = pairs.into_iter().partition(|&(a, b)| target(a, b) <= TENSOR_COLOUR_CAP);
    let nmax = run.iter().map(|&(a, b)| target(a, b)).max().unwrap_or(k + 1).max(2 * k + 1);
    let cfg = quotient_config(m, nmax.min(TENSOR_COLOUR_CAP))?;
    for (a, b) in &run {
        let t = present::tensor_dim_check(&cfg, *a, *b)?;
        r.check(
            format!("m={m} P_{a} (x) P_{b} = P_{}", t.p),
            t.ok(),
            json!({ "tensor": t.tensor_dim, "rank": t.rank, "target": t.target_dim, "relators": t.relator_rank, "relators_in_kernel": t.relators_in_kernel }),
        );
    }
    let skipped_json: Vec<String> = skipped.iter().map(|(a, b)| format!("({a},{b}) needs P_{}", a + b - k + 1)).collect();
    r.check(
        format!("m={m} all pairs up to k+2 attempted"),
        skipped.is_empty(),
        json!({ "skipped": skipped_json, "colour_cap": TENSOR_COLOUR_CAP }),
    );
    if k + 2 <= cfg.instance.nmax() {
        let (rank, dim) = present::iterated_tensor_rank(&cfg, 3)?;
        r.check(format!("m={m} P_{k} (x) P_{k} (x) P_{k} onto P_{}", k + 2), rank == dim, json!({ "rank": rank, "dim": dim }));
    }
    for n in [k, k + 1] {
        if 2 * n - k + 1 > cfg.instance.nmax() {
            continue;
        }
        let p = present::partition_of_unity(&cfg, n)?;
        r.check(format!("m={m} partition of unity n={n}"), p.ok(), json!({ "pairs": p.pairs.len() }));
    }
    let kr = present::kernel_decomposition_check(&cfg, k, k, usize::MAX, &[])?;
    r.check(format!("m={m} kernel decomposition at ({k},{k})"), kr.ok(), json!({ "samples": kr.samples.len() }));
    let generic = PresentationConfig::unchecked(ConcreteInstance::build(Model::GenericTL, k + 1)?, k)?;
    let g = present::tensor_dim_check(&generic, k, k)?;
    r.check("GenericTL is not surjective", !g.surjective(), json!({ "rank": g.rank, "target": g.target_dim }));
    Ok(r)
}

pub fn single_gen(m: u32, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new("single-gen");
    let k = m.saturating_sub(2);
    let cfg = quotient_config(m, 2 * k)?;
    let inst = &cfg.instance;
    let g = present::single_generator(inst, k, seed)?;
    let c = &g.certificate;
    r.check(
        format!("m={m} k={k} generator"),
        c.closure_rank == c.dim && !c.tau.is_zero(),
        json!({ "x": g.x.element.to_string(), "tau": c.tau.to_string(), "closure_rank": c.closure_rank, "dim": c.dim, "shifted": c.shifted }),
    );
    r.check(
        "recoveries are nonzero multiples of x and x*",
        c.recovers && c.recovery.iter().all(|s| !s.is_zero()),
        json!({ "scalars": c.recovery.iter().map(|s| s.to_string()).collect::<Vec<_>>() }),
    );
    let (to_b, to_z) = (g.to_basis(inst, &cfg.basis)?, g.to_z(inst, &cfg.basis)?);
    let rel = present::generate_relations(&cfg)?;
    let (changed, rep) = present::change_of_generators(inst, &to_b, &to_z, &rel)?;
    r.check("change of generators: relations vanish", rep.ok(), json!({ "relations": changed.len(), "failures": rep.failures.len() }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for i in 0..20 {
        let t = present::random_labelled_tangle(&mut rng, &cfg.basis, 1 + i % 3)?;
        if !present::telescoping_decomposition(inst, &t, &to_z, &to_b)?.ok() {
            bad += 1;
        }
    }
    r.check("telescoping on 20 random tangles", bad == 0, json!({ "failures": bad }));
    r.data = changed.to_json();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles() {
        assert_eq!((0..6).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(walk_count(4, 4), 8);
        assert_eq!(walk_count(5, 3), 5);
    }

    #[test]
    fn core_props_pass() {
        let r = core_props(0);
        assert!(r.ok(), "{}", r.footer());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &RunOptions::default()), Err(CliError::Usage(_))));
    }
}
