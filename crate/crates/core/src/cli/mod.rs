//! The command-line surface as library functions: every command returns
//! JSON (or a [`Report`]) and the binary only parses flags and prints.

mod expr;
mod report;
mod suites;

pub use expr::{parse_expression, BuildError, ParseError, Pos, TangleExpression};
pub use report::{Check, Report};
pub use suites::{
    core_props, quotient_config, random_chain, run_suite, tangle_pool, walk_count, RunOptions, SUITES,
    TENSOR_COLOUR_CAP,
};

use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{ExactError, Scalar, ScalarField};
use crate::present::{self, PresentError};
use crate::tangle::{Colour, PlanarTangle, TangleError};
use crate::template::{check_derivation, thm32_scripts, TemplateError};
use crate::tl::{gram_matrix, ConcreteInstance, Model, TLElement, TlError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Tl(#[from] TlError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Present(#[from] PresentError),
    #[error("{0}")]
    Usage(String),
}

/// A tangle given as an expression, or as JSON when the text starts with `{`.
pub fn read_tangle(text: &str) -> Result<PlanarTangle, CliError> {
    if text.trim_start().starts_with('{') {
        return Ok(PlanarTangle::from_json_str(text)?);
    }
    Ok(parse_expression(text)?.build()?)
}

fn tangle_json(t: &PlanarTangle) -> Value {
    json!({
        "colour": t.external().to_string(),
        "boxes": t.boxes().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "loops": t.loop_count(),
        "code": t.canonical_code().to_string(),
        "tangle": t.to_json(),
    })
}

/// `tangle validate|canon|adjoint <t>` and `tangle compose <outer> <inner>...`.
pub fn tangle_command(action: &str, inputs: &[String]) -> Result<Value, CliError> {
    let first = inputs.first().ok_or_else(|| CliError::Usage("a tangle is required".into()))?;
    match action {
        "validate" => match read_tangle(first) {
            Ok(t) => Ok(json!({ "valid": true, "colour": t.external().to_string(), "code": t.canonical_code().to_string() })),
            Err(e) => Ok(json!({ "valid": false, "error": e.to_string() })),
        },
        "canon" => Ok(json!({ "code": read_tangle(first)?.canonical_code().to_string() })),
        "adjoint" => Ok(tangle_json(&read_tangle(first)?.adjoint())),
        "compose" => {
            let outer = read_tangle(first)?;
            let inner: Vec<PlanarTangle> = inputs[1..].iter().map(|s| read_tangle(s)).collect::<Result<_, _>>()?;
            let assign: Vec<(usize, &PlanarTangle)> = inner.iter().enumerate().map(|(i, t)| (i + 1, t)).collect();
            Ok(tangle_json(&outer.compose(&assign)?))
        }
        _ => Err(CliError::Usage(format!("unknown tangle action `{action}`"))),
    }
}

/// The field of a model: `GenericTL` when `m` is absent.
pub fn model_for(m: Option<u32>) -> Model {
    m.map(Model::QuotientTL).unwrap_or(Model::GenericTL)
}

/// A TL element written as a sum of words in the `E_i`, e.g. `2*E1E2 - 1`.
pub fn parse_element(field: ScalarField, n: u32, text: &str) -> Result<TLElement, CliError> {
    let colour = Colour::n(n);
    let mut out = TLElement::zero(field, colour);
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in cleaned.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&cleaned[start..i]);
            start = i;
        }
    }
    terms.push(&cleaned[start..]);
    for term in terms.into_iter().filter(|t| !t.is_empty()) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-field.one(), b),
            None => (field.one(), term.strip_prefix('+').unwrap_or(term)),
        };
        let (coef, word) = match body.split_once('*') {
            Some((c, w)) => (field.parse(c)?, w),
            None if body.chars().all(|c| c.is_ascii_digit() || c == '/') => (field.parse(body)?, "1"),
            None => (field.one(), body),
        };
        let mut x = TLElement::one(field, colour);
        if word != "1" {
            for idx in word.split('E').filter(|s| !s.is_empty()) {
                let i: usize = idx.parse().map_err(|_| CliError::Usage(format!("bad word `{word}`")))?;
                x = x.multiply(&TLElement::jones_e(field, n, i)?)?;
            }
        }
        out = out.add(&x.scale(&(&sign * &coef)));
    }
    Ok(out)
}

fn element_json(x: &TLElement) -> Value {
    let terms: Vec<Value> = x.terms().map(|(d, c)| json!({ "diagram": d.label(), "coefficient": c.to_string() })).collect();
    json!({ "colour": x.colour().to_string(), "terms": terms })
}

/// `tl mult|trace|gram`.
pub fn tl_command(action: &str, n: u32, m: Option<u32>, args: &[String]) -> Result<Value, CliError> {
    let field = model_for(m).field()?;
    match action {
        "mult" => {
            let [a, b] = args else {
                return Err(CliError::Usage("tl mult takes two elements".into()));
            };
            let (x, y) = (parse_element(field, n, a)?, parse_element(field, n, b)?);
            Ok(json!({ "product": element_json(&x.multiply(&y)?) }))
        }
        "trace" => {
            let a = args.first().ok_or_else(|| CliError::Usage("tl trace takes an element".into()))?;
            let x = parse_element(field, n, a)?;
            Ok(json!({ "trace": x.trace().to_string(), "left_trace": x.left_trace().to_string(), "tau": x.tau().to_string() }))
        }
        "gram" => {
            let g = gram_matrix(Colour::n(n), field);
            let rows: Vec<Vec<String>> = g.row_vecs().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect();
            Ok(json!({ "n": n, "field": field.name(), "matrix": rows, "determinant": g.determinant().to_string() }))
        }
        _ => Err(CliError::Usage(format!("unknown tl action `{action}`"))),
    }
}

/// `instance info`: dimensions, Gram determinants and positivity per colour.
pub fn instance_info(m: Option<u32>, nmax: u32) -> Result<Value, CliError> {
    let inst = ConcreteInstance::build(model_for(m), nmax)?;
    let mut colours = Vec::new();
    for c in inst.colours() {
        colours.push(json!({
            "colour": c.to_string(),
            "dim": inst.dim(c)?,
            "gram_det": inst.gram_determinant(c)?.to_string(),
            "positive": inst.is_positive(c)?,
        }));
    }
    Ok(json!({
        "model": inst.model().to_string(),
        "field": inst.field().name(),
        "delta": inst.field().delta().to_string(),
        "finite_depth": inst.is_finite_depth(),
        "colours": colours,
    }))
}

/// `derive thm32`: all scripts with their checked steps.
pub fn derive_thm32(k: u32, nmax: u32) -> Result<Report, CliError> {
    let mut r = suites::thm32(Some(k), Some(nmax))?;
    let axioms = crate::template::basic_templates(k)?;
    let scripts: Vec<Value> = thm32_scripts(k, nmax)?
        .iter()
        .map(|s| {
            let rep = check_derivation(&axioms, &s.derivation);
            json!({
                "item": s.item,
                "label": s.label,
                "colour": s.n.to_string(),
                "expected": s.expected.to_string(),
                "valid": rep.is_valid(),
                "derivation": s.derivation.to_json(Some(&rep)),
            })
        })
        .collect();
    r.data = json!({ "k": k, "nmax": nmax, "scripts": scripts });
    Ok(r)
}

/// `present build`: the relation set and the obligations report.
pub fn present_build(m: u32) -> Result<Report, CliError> {
    suites::present_suite(m)
}

/// `present verify`: re-evaluate a relation file in a freshly built instance.
pub fn present_verify(m: u32, text: &str) -> Result<Report, CliError> {
    let cfg = quotient_config(m, m)?;
    let mut labels = cfg.basis.clone();
    let single = text.contains("\"z\"");
    if single {
        let cfg2 = quotient_config(m, 2 * cfg.k)?;
        let g = present::single_generator(&cfg2.instance, cfg.k, 0)?;
        labels.push(g.z);
        return verify_with(&cfg2.instance, text, &labels);
    }
    verify_with(&cfg.instance, text, &labels)
}

fn verify_with(inst: &ConcreteInstance, text: &str, labels: &[crate::tl::Label]) -> Result<Report, CliError> {
    let mut r = Report::new("present-verify");
    let rel = present::RelationSet::from_json_str(text, inst.field(), labels)?;
    let v = present::verify_relations_vanish(inst, &rel)?;
    let fails: Vec<Value> = v
        .failures
        .iter()
        .map(|(i, t, res)| json!({ "index": i, "template": t, "residual": res.iter().map(Scalar::to_string).collect::<Vec<_>>() }))
        .collect();
    r.check(format!("{} relations vanish", v.checked), v.ok(), json!({ "failures": fails }));
    Ok(r)
}

/// `gen single`: the generator, its certificate, and the recovery scalars.
pub fn gen_single(m: u32, seed: u64) -> Result<Value, CliError> {
    let k = m.saturating_sub(2);
    let cfg = quotient_config(m, 2 * k)?;
    let g = present::single_generator(&cfg.instance, k, seed)?;
    let c = &g.certificate;
    let words: Vec<String> = g
        .words
        .iter()
        .map(|w| if w.is_empty() { "1".into() } else { w.iter().map(|&l| if l == 0 { "x" } else { "x*" }).collect::<Vec<_>>().join(" ") })
        .collect();
    Ok(json!({
        "m": m,
        "k": k,
        "seed": seed,
        "x": element_json(&g.x.element),
        "coords": g.coords.iter().map(Scalar::to_string).collect::<Vec<_>>(),
        "tau": c.tau.to_string(),
        "shifted": c.shifted,
        "closure_rank": c.closure_rank,
        "dim": c.dim,
        "words": words,
        "recovery": c.recovery.iter().map(Scalar::to_string).collect::<Vec<_>>(),
        "ok": c.ok(),
    }))
}

/// `gen change-of-labels`: relations in the single label `z`.
pub fn gen_change_of_labels(m: u32, seed: u64) -> Result<Report, CliError> {
    suites::single_gen(m, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_parse() {
        let f = ScalarField::GenericDelta;
        let x = parse_element(f, 3, "E1E2 + 2*E1 - 1").unwrap();
        let e1 = TLElement::jones_e(f, 3, 1).unwrap();
        let e2 = TLElement::jones_e(f, 3, 2).unwrap();
        let want = e1.multiply(&e2).unwrap().add(&e1.scale(&f.from_int(2))).sub(&TLElement::one(f, Colour::n(3)));
        assert_eq!(x, want);
        assert!(parse_element(f, 3, "E7").is_err());
    }

    #[test]
    fn commands_answer() {
        let v = tangle_command("validate", &["M(1,1,5)".into()]).unwrap();
        assert_eq!(v["valid"], false);
        let v = tangle_command("compose", &["M(2,2,2)".into(), "E(2)".into(), "E(2)".into()]).unwrap();
        assert_eq!(v["boxes"].as_array().unwrap().len(), 0);
        assert_eq!(v["loops"], 1);
        let g = tl_command("gram", 2, Some(4), &[]).unwrap();
        assert_eq!(g["matrix"].as_array().unwrap().len(), 2);
        let t = tl_command("trace", 2, None, &["E1".into()]).unwrap();
        assert_eq!(t["trace"], t["left_trace"]);
        let i = instance_info(Some(4), 3).unwrap();
        assert_eq!(i["finite_depth"], true);
    }
}
