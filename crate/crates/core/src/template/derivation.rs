use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use super::{Template, TemplateError, TemplateSet};
use crate::tangle::{PlanarTangle, Shade};
use crate::zoo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        })
    }
}

/// One inference. Premise indices refer to earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// A template of the axiom set, by name.
    Axiom(String),
    /// `T => T`.
    Reflexivity(PlanarTangle),
    /// From `A => B` (step i) and `B => C` (step j), `A => C`.
    Transitivity(usize, usize),
    /// From `S_i => T_i` in the listed boxes, `W(S) => W(T)`. Boxes not
    /// listed stay as boxes on both sides.
    ComposeOutside { outer: PlanarTangle, slots: Vec<(usize, usize)> },
    /// Delete a contractible loop from one side, using the modulus templates
    /// (`1 => C` for the left side, `C => 1` for the right).
    RemoveLoop { premise: usize, side: Side },
    /// Replace one side by an isotopic tangle.
    RewriteEqual { premise: usize, side: Side, replacement: PlanarTangle },
    /// Renumber the internal boxes of one side (`order` as in `permute_boxes`).
    Renumber { premise: usize, side: Side, order: Vec<usize> },
}

impl Step {
    pub fn kind(&self) -> &'static str {
        match self {
            Step::Axiom(_) => "axiom",
            Step::Reflexivity(_) => "reflexivity",
            Step::Transitivity(..) => "transitivity",
            Step::ComposeOutside { .. } => "compose-outside",
            Step::RemoveLoop { .. } => "remove-loop",
            Step::RewriteEqual { .. } => "rewrite-equal",
            Step::Renumber { .. } => "renumber",
        }
    }

    fn premises(&self) -> Vec<usize> {
        match self {
            Step::Axiom(_) | Step::Reflexivity(_) => vec![],
            Step::Transitivity(i, j) => vec![*i, *j],
            Step::ComposeOutside { slots, .. } => slots.iter().map(|s| s.1).collect(),
            Step::RemoveLoop { premise, .. } | Step::RewriteEqual { premise, .. } | Step::Renumber { premise, .. } => {
                vec![*premise]
            }
        }
    }

    fn args_json(&self) -> Value {
        match self {
            Step::Axiom(name) => json!({ "template": name }),
            Step::Reflexivity(t) => json!({ "tangle": t.to_json() }),
            Step::Transitivity(i, j) => json!({ "first": i, "second": j }),
            Step::ComposeOutside { outer, slots } => json!({
                "outer": outer.to_json(),
                "slots": slots.iter().map(|(b, p)| json!({ "box": b, "premise": p })).collect::<Vec<_>>(),
            }),
            Step::RemoveLoop { premise, side } => json!({ "premise": premise, "side": side }),
            Step::RewriteEqual { premise, side, replacement } => {
                json!({ "premise": premise, "side": side, "replacement": replacement.to_json() })
            }
            Step::Renumber { premise, side, order } => json!({ "premise": premise, "side": side, "order": order }),
        }
    }
}

fn side_of(t: &Template, side: Side) -> &PlanarTangle {
    match side {
        Side::Lhs => &t.lhs,
        Side::Rhs => &t.rhs,
    }
}

fn with_side(t: &Template, side: Side, x: PlanarTangle) -> Template {
    match side {
        Side::Lhs => Template { lhs: x, rhs: t.rhs.clone() },
        Side::Rhs => Template { lhs: t.lhs.clone(), rhs: x },
    }
}

/// The modulus template a loop removal relies on.
fn modulus_name(shade: Shade, side: Side) -> String {
    let tag = match shade {
        Shade::White => "+",
        Shade::Black => "-",
    };
    match side {
        Side::Lhs => format!("modulus{tag}rev"),
        Side::Rhs => format!("modulus{tag}"),
    }
}

/// Lemma-3.1 data for removing the loop `remove_contractible_loop` picks:
/// `(W, loopless, shade)` with `W(C) = t` and `W(1) = loopless`.
fn loop_witness(t: &PlanarTangle) -> Result<(PlanarTangle, PlanarTangle, Shade), String> {
    let idx = t.innermost_loop().ok_or_else(|| format!("no contractible loop in {}", t.canonical_code()))?;
    let (loopless, shade) = t.remove_contractible_loop().map_err(|e| e.to_string())?;
    let w = t.loop_to_zero_box(idx).map_err(|e| e.to_string())?;
    let b = w.box_count();
    let c = w.boxes()[b - 1];
    let circle = zoo::circle(c).map_err(|e| e.to_string())?;
    if w.compose(&[(b, &circle)]).map_err(|e| e.to_string())? != *t {
        return Err("loop witness does not recompose to the original tangle".into());
    }
    if w.compose(&[(b, &zoo::unit(c))]).map_err(|e| e.to_string())? != loopless {
        return Err("loop witness does not compose to the loopless tangle".into());
    }
    Ok((w, loopless, shade))
}

fn code_mismatch(what: &str, a: &PlanarTangle, b: &PlanarTangle) -> String {
    format!("{what}: {} differs from {}", a.canonical_code(), b.canonical_code())
}

/// The template a step produces, given the templates of earlier steps.
pub(crate) fn apply(axioms: &TemplateSet, step: &Step, produced: &[Template]) -> Result<Template, String> {
    for p in step.premises() {
        if p >= produced.len() {
            return Err(format!("premise {p} does not refer to an earlier step"));
        }
    }
    match step {
        Step::Axiom(name) => axioms.get(name).cloned().ok_or_else(|| format!("unknown template `{name}`")),
        Step::Reflexivity(t) => Ok(Template { lhs: t.clone(), rhs: t.clone() }),
        Step::Transitivity(i, j) => {
            let (a, b) = (&produced[*i], &produced[*j]);
            if a.rhs != b.lhs {
                return Err(code_mismatch("middle tangles", &a.rhs, &b.lhs));
            }
            Ok(Template { lhs: a.lhs.clone(), rhs: b.rhs.clone() })
        }
        Step::ComposeOutside { outer, slots } => {
            let l: Vec<(usize, &PlanarTangle)> = slots.iter().map(|&(b, p)| (b, &produced[p].lhs)).collect();
            let r: Vec<(usize, &PlanarTangle)> = slots.iter().map(|&(b, p)| (b, &produced[p].rhs)).collect();
            let lhs = outer.compose(&l).map_err(|e| e.to_string())?;
            let rhs = outer.compose(&r).map_err(|e| e.to_string())?;
            Ok(Template { lhs, rhs })
        }
        Step::RemoveLoop { premise, side } => {
            let t = &produced[*premise];
            let (_, loopless, shade) = loop_witness(side_of(t, *side))?;
            let name = modulus_name(shade, *side);
            if axioms.get(&name).is_none() {
                return Err(format!("loop removal needs the `{name}` template"));
            }
            Ok(with_side(t, *side, loopless))
        }
        Step::RewriteEqual { premise, side, replacement } => {
            let t = &produced[*premise];
            if side_of(t, *side) != replacement {
                return Err(code_mismatch("rewrite", side_of(t, *side), replacement));
            }
            Ok(with_side(t, *side, replacement.clone()))
        }
        Step::Renumber { premise, side, order } => {
            let t = &produced[*premise];
            let x = side_of(t, *side).permute_boxes(order).map_err(|e| e.to_string())?;
            Ok(with_side(t, *side, x))
        }
    }
}

/// A derivation script; its conclusion is the template of the last step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub name: String,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub kind: &'static str,
    pub ok: bool,
    /// `lhs-code => rhs-code` of the produced template.
    pub produces: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub name: String,
    pub steps: Vec<StepReport>,
    pub conclusion: Option<Template>,
}

impl DerivationReport {
    pub fn is_valid(&self) -> bool {
        self.conclusion.is_some()
    }

    pub fn first_error(&self) -> Option<&StepReport> {
        self.steps.iter().find(|s| !s.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "valid": self.is_valid(),
            "steps": self.steps,
            "conclusion": self.conclusion.as_ref().map(|t| t.to_string()),
        })
    }
}

/// Check every step in order. Checking stops at the first failing step;
/// later steps are not reported.
pub fn check_derivation(axioms: &TemplateSet, d: &Derivation) -> DerivationReport {
    let mut produced = Vec::new();
    let mut steps = Vec::new();
    for (index, step) in d.steps.iter().enumerate() {
        match apply(axioms, step, &produced) {
            Ok(t) => {
                steps.push(StepReport { index, kind: step.kind(), ok: true, produces: Some(t.to_string()), error: None });
                produced.push(t);
            }
            Err(e) => {
                steps.push(StepReport { index, kind: step.kind(), ok: false, produces: None, error: Some(e) });
                return DerivationReport { name: d.name.clone(), steps, conclusion: None };
            }
        }
    }
    let conclusion = produced.pop();
    DerivationReport { name: d.name.clone(), steps, conclusion }
}

impl Derivation {
    /// `{"steps": [{"kind", "args", "produces"}]}`; `produces` is filled
    /// from a report when one is given.
    pub fn to_json(&self, report: Option<&DerivationReport>) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let produces = report.and_then(|r| r.steps.get(i)).and_then(|r| r.produces.clone());
                json!({ "kind": s.kind(), "args": s.args_json(), "produces": produces })
            })
            .collect();
        json!({ "name": self.name, "steps": steps })
    }

    /// Replace every loop removal by the explicit Lemma-3.1 steps: the
    /// modulus axiom, composition on the outside with the witness tangle,
    /// two isotopy rewrites and a transitivity.
    pub fn expand_loops(&self, axioms: &TemplateSet) -> Result<Derivation, TemplateError> {
        let mut b = ProofBuilder::new(axioms);
        let mut remap = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            let err = |msg: String| TemplateError::Step { step: i, msg };
            let m = |p: usize| remap[p];
            let new = match step {
                Step::RemoveLoop { premise, side } => {
                    let t = b.template(m(*premise)).clone();
                    let target = side_of(&t, *side).clone();
                    let (w, loopless, shade) = loop_witness(&target).map_err(err)?;
                    let ax = b.axiom(&modulus_name(shade, *side))?;
                    let slot = w.box_count();
                    let c = b.push(Step::ComposeOutside { outer: w, slots: vec![(slot, ax)] })?;
                    match side {
                        // W(1) => W(C) = S, then S => T.
                        Side::Lhs => {
                            let c = b.rewrite(c, Side::Lhs, loopless)?;
                            let c = b.rewrite(c, Side::Rhs, target)?;
                            b.trans(c, m(*premise))?
                        }
                        // S => T = W(C) => W(1).
                        Side::Rhs => {
                            let c = b.rewrite(c, Side::Lhs, target)?;
                            let c = b.rewrite(c, Side::Rhs, loopless)?;
                            b.trans(m(*premise), c)?
                        }
                    }
                }
                Step::Transitivity(x, y) => b.push(Step::Transitivity(m(*x), m(*y)))?,
                Step::ComposeOutside { outer, slots } => b.push(Step::ComposeOutside {
                    outer: outer.clone(),
                    slots: slots.iter().map(|&(bx, p)| (bx, m(p))).collect(),
                })?,
                Step::RewriteEqual { premise, side, replacement } => {
                    b.push(Step::RewriteEqual { premise: m(*premise), side: *side, replacement: replacement.clone() })?
                }
                Step::Renumber { premise, side, order } => {
                    b.push(Step::Renumber { premise: m(*premise), side: *side, order: order.clone() })?
                }
                s => b.push(s.clone())?,
            };
            remap.push(new);
        }
        Ok(b.finish(format!("{} (loops expanded)", self.name)))
    }
}

/// Builds a derivation step by step, checking each step as it is added.
/// Named lemmas are memoized so a sub-proof is emitted once per derivation.
pub struct ProofBuilder<'a> {
    axioms: &'a TemplateSet,
    steps: Vec<Step>,
    produced: Vec<Template>,
    memo: HashMap<String, usize>,
}

impl<'a> ProofBuilder<'a> {
    pub fn new(axioms: &'a TemplateSet) -> ProofBuilder<'a> {
        ProofBuilder { axioms, steps: Vec::new(), produced: Vec::new(), memo: HashMap::new() }
    }

    pub fn k(&self) -> u32 {
        self.axioms.k
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step) -> Result<usize, TemplateError> {
        let t = apply(self.axioms, &step, &self.produced)
            .map_err(|msg| TemplateError::Step { step: self.steps.len(), msg })?;
        self.steps.push(step);
        self.produced.push(t);
        Ok(self.steps.len() - 1)
    }

    pub fn template(&self, i: usize) -> &Template {
        &self.produced[i]
    }

    pub fn lhs(&self, i: usize) -> &PlanarTangle {
        &self.produced[i].lhs
    }

    pub fn rhs(&self, i: usize) -> &PlanarTangle {
        &self.produced[i].rhs
    }

    pub fn axiom(&mut self, name: &str) -> Result<usize, TemplateError> {
        if self.axioms.get(name).is_none() {
            return Err(TemplateError::UnknownTemplate(name.to_string()));
        }
        self.push(Step::Axiom(name.to_string()))
    }

    pub fn refl(&mut self, t: PlanarTangle) -> Result<usize, TemplateError> {
        self.push(Step::Reflexivity(t))
    }

    pub fn trans(&mut self, i: usize, j: usize) -> Result<usize, TemplateError> {
        self.push(Step::Transitivity(i, j))
    }

    pub fn compose(&mut self, outer: PlanarTangle, slots: &[(usize, usize)]) -> Result<usize, TemplateError> {
        self.push(Step::ComposeOutside { outer, slots: slots.to_vec() })
    }

    pub fn remove_loop(&mut self, i: usize, side: Side) -> Result<usize, TemplateError> {
        self.push(Step::RemoveLoop { premise: i, side })
    }

    /// Remove loops from one side until none is left.
    pub fn remove_all_loops(&mut self, mut i: usize, side: Side) -> Result<usize, TemplateError> {
        while side_of(&self.produced[i], side).loop_count() > 0 {
            i = self.remove_loop(i, side)?;
        }
        Ok(i)
    }

    /// Rewrite one side to `t`; no step is added when it already is `t`.
    pub fn rewrite(&mut self, i: usize, side: Side, t: PlanarTangle) -> Result<usize, TemplateError> {
        if *side_of(&self.produced[i], side) == t {
            return Ok(i);
        }
        self.push(Step::RewriteEqual { premise: i, side, replacement: t })
    }

    pub fn renumber(&mut self, i: usize, side: Side, order: Vec<usize>) -> Result<usize, TemplateError> {
        self.push(Step::Renumber { premise: i, side, order })
    }

    /// Bring one side to `t`, renumbering boxes if the two differ only in
    /// box numbering.
    pub fn conform(&mut self, i: usize, side: Side, t: &PlanarTangle) -> Result<usize, TemplateError> {
        let cur = side_of(&self.produced[i], side).clone();
        if cur == *t {
            return Ok(i);
        }
        match cur.find_renumbering(t) {
            Some(order) => self.renumber(i, side, order),
            None => Err(TemplateError::Step {
                step: self.steps.len(),
                msg: code_mismatch("conform", &cur, t),
            }),
        }
    }

    /// Transitivity, renumbering the second premise's left side if needed.
    pub fn chain(&mut self, i: usize, j: usize) -> Result<usize, TemplateError> {
        let mid = self.produced[i].rhs.clone();
        let j = self.conform(j, Side::Lhs, &mid)?;
        self.trans(i, j)
    }

    /// Fold [`chain`](Self::chain) over a list of steps.
    pub fn chain_all(&mut self, ids: &[usize]) -> Result<usize, TemplateError> {
        let mut acc = ids[0];
        for &j in &ids[1..] {
            acc = self.chain(acc, j)?;
        }
        Ok(acc)
    }

    /// Run `f` once per key; later calls return the memoized step.
    pub fn lemma(
        &mut self,
        key: impl Into<String>,
        f: impl FnOnce(&mut Self) -> Result<usize, TemplateError>,
    ) -> Result<usize, TemplateError> {
        let key = key.into();
        if let Some(&i) = self.memo.get(&key) {
            return Ok(i);
        }
        let i = f(self)?;
        self.memo.insert(key, i);
        Ok(i)
    }

    /// Make step `i` the last step (by a reflexivity-free copy when needed)
    /// and return the derivation.
    pub fn finish_at(mut self, i: usize, name: impl Into<String>) -> Derivation {
        if i + 1 != self.steps.len() {
            let t = self.produced[i].clone();
            // A rewrite of the lhs to itself re-states step i as the conclusion.
            self.steps.push(Step::RewriteEqual { premise: i, side: Side::Lhs, replacement: t.lhs.clone() });
            self.produced.push(t);
        }
        Derivation { name: name.into(), steps: self.steps }
    }

    pub fn finish(self, name: impl Into<String>) -> Derivation {
        Derivation { name: name.into(), steps: self.steps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::{basic_templates, thm32_scripts};
    use crate::zoo;

    #[test]
    fn reflexivity_is_valid() {
        let ax = basic_templates(2).unwrap();
        let t = zoo::t(crate::tangle::Colour::n(3), 2).unwrap();
        let d = Derivation { name: "refl".into(), steps: vec![Step::Reflexivity(t.clone())] };
        let r = check_derivation(&ax, &d);
        assert_eq!(r.conclusion, Some(Template { lhs: t.clone(), rhs: t }));
    }

    #[test]
    fn bad_transitivity_reports_both_codes() {
        let ax = basic_templates(2).unwrap();
        let d = Derivation {
            name: "bad".into(),
            steps: vec![Step::Axiom("identity".into()), Step::Axiom("inclusion".into()), Step::Transitivity(0, 1)],
        };
        let r = check_derivation(&ax, &d);
        assert!(!r.is_valid());
        let e = r.first_error().unwrap();
        assert_eq!(e.index, 2);
        let msg = e.error.as_deref().unwrap();
        let (a, b) = (&ax.get("identity").unwrap().rhs, &ax.get("inclusion").unwrap().lhs);
        assert!(msg.contains(&a.canonical_code().to_string()) && msg.contains(&b.canonical_code().to_string()));
    }

    #[test]
    fn unknown_axiom_and_forward_premise_rejected() {
        let ax = basic_templates(1).unwrap();
        let d = Derivation { name: "j".into(), steps: vec![Step::Axiom("jones2".into())] };
        assert!(!check_derivation(&ax, &d).is_valid());
        let d = Derivation { name: "f".into(), steps: vec![Step::Transitivity(0, 0)] };
        assert!(!check_derivation(&ax, &d).is_valid());
    }

    #[test]
    fn item_one_by_hand() {
        // Depth template, closed on the right, loop removed, then multiplication.
        for k in 1..=3 {
            let ax = basic_templates(k).unwrap();
            let kc = crate::tangle::Colour::n(k);
            let mut b = ProofBuilder::new(&ax);
            let d = b.axiom("depth").unwrap();
            let s = b.compose(zoo::er(kc, 1).unwrap(), &[(1, d)]).unwrap();
            let s = b.rewrite(s, Side::Rhs, zoo::mult(k, k, k).unwrap()).unwrap();
            let s = b.remove_all_loops(s, Side::Lhs).unwrap();
            let m = b.axiom("multiplication").unwrap();
            let s = b.chain(s, m).unwrap();
            let d = b.finish_at(s, "1");
            let r = check_derivation(&ax, &d);
            assert_eq!(r.conclusion.unwrap(), Template { lhs: zoo::unit(kc), rhs: zoo::identity(k).unwrap() });
        }
    }

    #[test]
    fn expanded_loops_still_check() {
        let ax = basic_templates(2).unwrap();
        let scripts = thm32_scripts(2, 4).unwrap();
        let mut expanded = 0;
        for s in scripts.iter().filter(|s| s.derivation.steps.iter().any(|x| matches!(x, Step::RemoveLoop { .. }))).take(12) {
            let e = s.derivation.expand_loops(&ax).unwrap();
            assert!(e.steps.iter().all(|x| !matches!(x, Step::RemoveLoop { .. })));
            assert_eq!(check_derivation(&ax, &e).conclusion.as_ref(), Some(&s.expected), "{}", s.label);
            expanded += 1;
        }
        assert!(expanded > 0);
    }

    #[test]
    fn json_shape() {
        let ax = basic_templates(1).unwrap();
        let d = Derivation { name: "a".into(), steps: vec![Step::Axiom("identity".into())] };
        let r = check_derivation(&ax, &d);
        let j = d.to_json(Some(&r));
        assert_eq!(j["steps"][0]["kind"], "axiom");
        assert!(j["steps"][0]["produces"].as_str().unwrap().contains("=>"));
    }
}
