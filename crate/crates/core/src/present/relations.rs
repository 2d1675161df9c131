use serde_json::{json, Value};

use super::{add_scaled, eval_coords, is_zero_vec, tuples, PresentError, PresentationConfig};
use crate::exact::{solve, Matrix, Scalar, ScalarField};
use crate::tangle::PlanarTangle;
use crate::tl::{ConcreteInstance, Label, LabelledTangle};

/// `sum lhs - sum rhs = 0` between labelled tangles of one colour. Relations
/// from templates have a single left term with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// Name of the template (or construction) the relation comes from.
    pub template: String,
    pub lhs: Vec<(Scalar, LabelledTangle)>,
    pub rhs: Vec<(Scalar, LabelledTangle)>,
}

impl Relation {
    /// `Z(lhs) - Z(rhs)` in quotient coordinates.
    pub fn residual(&self, inst: &ConcreteInstance) -> Result<Vec<Scalar>, PresentError> {
        let colour = self.lhs.first().or(self.rhs.first()).map(|(_, t)| t.colour());
        let Some(colour) = colour else {
            return Ok(Vec::new());
        };
        let mut acc = vec![inst.field().zero(); inst.dim(colour)?];
        for (c, t) in &self.lhs {
            add_scaled(&mut acc, c, &t.evaluate(inst)?);
        }
        for (c, t) in &self.rhs {
            add_scaled(&mut acc, &-c, &t.evaluate(inst)?);
        }
        Ok(acc)
    }
}

/// A finite relation set with the data it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub model: String,
    pub m: Option<u32>,
    pub k: u32,
    pub labels: Vec<String>,
    pub relations: Vec<Relation>,
}

/// For every template `S => T` and every labelling of `S` by `B`, the
/// coefficients expressing `S(x)` through the `T(y)`, free ones set to zero.
/// Only nonzero coefficients are kept.
pub fn generate_relations(config: &PresentationConfig) -> Result<RelationSet, PresentError> {
    let inst = &config.instance;
    let field = inst.field();
    let b = &config.basis;
    let coords: Vec<Vec<Scalar>> = b.iter().map(|l| inst.project(&l.element)).collect::<Result<_, _>>()?;
    let mut relations = Vec::new();
    for (name, t) in config.templates.iter() {
        let rhs_tuples = tuples(t.rhs.box_count(), b.len());
        let dim = inst.dim(t.colour())?;
        // Columns are the values T(y), one per tuple.
        let mut cols = Matrix::zeros(field, 0, dim);
        for y in &rhs_tuples {
            let ins: Vec<&[Scalar]> = y.iter().map(|&i| coords[i].as_slice()).collect();
            cols.push_row(eval_coords(inst, &t.rhs, &ins)?);
        }
        let a = cols.transpose();
        for x in tuples(t.lhs.box_count(), b.len()) {
            let ins: Vec<&[Scalar]> = x.iter().map(|&i| coords[i].as_slice()).collect();
            let s = eval_coords(inst, &t.lhs, &ins)?;
            let names: Vec<String> = x.iter().map(|&i| b[i].name.clone()).collect();
            let lambda = solve(&a, &s)
                .map_err(|e| PresentError::Format(e.to_string()))?
                .ok_or_else(|| PresentError::Unsolvable { template: name.to_string(), labels: names.clone() })?;
            let lhs = labelled(&t.lhs, &x, b)?;
            let mut rhs = Vec::new();
            for (l, y) in lambda.into_iter().zip(&rhs_tuples) {
                if !l.is_zero() {
                    rhs.push((l, labelled(&t.rhs, y, b)?));
                }
            }
            relations.push(Relation { template: name.to_string(), lhs: vec![(field.one(), lhs)], rhs });
        }
    }
    Ok(RelationSet {
        model: inst.model().to_string(),
        m: config.m(),
        k: config.k,
        labels: b.iter().map(|l| l.name.clone()).collect(),
        relations,
    })
}

fn labelled(t: &PlanarTangle, idx: &[usize], b: &[Label]) -> Result<LabelledTangle, PresentError> {
    Ok(LabelledTangle::new(t.clone(), idx.iter().map(|&i| b[i].clone()).collect())?)
}

/// Outcome of [`verify_relations_vanish`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishReport {
    pub checked: usize,
    /// `(index, template, residual)` of each relation that does not vanish.
    pub failures: Vec<(usize, String, Vec<Scalar>)>,
}

impl VanishReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluate every relation in the instance; all must be exactly zero.
pub fn verify_relations_vanish(inst: &ConcreteInstance, r: &RelationSet) -> Result<VanishReport, PresentError> {
    let mut failures = Vec::new();
    for (i, rel) in r.relations.iter().enumerate() {
        let res = rel.residual(inst)?;
        if !is_zero_vec(&res) {
            failures.push((i, rel.template.clone(), res));
        }
    }
    Ok(VanishReport { checked: r.relations.len(), failures })
}

fn term_json(c: &Scalar, t: &LabelledTangle) -> Value {
    let names: Vec<&str> = t.labels.iter().map(|l| l.name.as_str()).collect();
    json!({
        "lambda": c.to_string(),
        "term": { "tangle": t.tangle.to_json(), "labels": names },
    })
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                json!({
                    "template": r.template,
                    "lhs": r.lhs.iter().map(|(c, t)| term_json(c, t)).collect::<Vec<_>>(),
                    "rhs": r.rhs.iter().map(|(c, t)| term_json(c, t)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "config": { "model": self.model, "m": self.m, "k": self.k, "basis": self.labels },
            "relations": rels,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("relation sets serialize")
    }

    /// Read a relation file back; label names are resolved against `labels`.
    pub fn from_json_str(text: &str, field: ScalarField, labels: &[Label]) -> Result<RelationSet, PresentError> {
        let bad = |m: &str| PresentError::Format(m.to_string());
        let v: Value = serde_json::from_str(text).map_err(|e| PresentError::Format(e.to_string()))?;
        let cfg = &v["config"];
        let terms = |arr: &Value| -> Result<Vec<(Scalar, LabelledTangle)>, PresentError> {
            arr.as_array()
                .ok_or_else(|| bad("term list expected"))?
                .iter()
                .map(|t| {
                    let c = field
                        .parse(t["lambda"].as_str().ok_or_else(|| bad("lambda must be a string"))?)
                        .map_err(|e| PresentError::Format(e.to_string()))?;
                    let tj = serde_json::from_value(t["term"]["tangle"].clone())
                        .map_err(|e| PresentError::Format(e.to_string()))?;
                    let tangle = PlanarTangle::from_json(&tj)?;
                    let ls = t["term"]["labels"]
                        .as_array()
                        .ok_or_else(|| bad("labels expected"))?
                        .iter()
                        .map(|n| {
                            let n = n.as_str().unwrap_or_default();
                            labels.iter().find(|l| l.name == n).cloned().ok_or_else(|| bad(&format!("unknown label `{n}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((c, LabelledTangle::new(tangle, ls)?))
                })
                .collect()
        };
        let relations = v["relations"]
            .as_array()
            .ok_or_else(|| bad("relations expected"))?
            .iter()
            .map(|r| {
                Ok(Relation {
                    template: r["template"].as_str().unwrap_or_default().to_string(),
                    lhs: terms(&r["lhs"])?,
                    rhs: terms(&r["rhs"])?,
                })
            })
            .collect::<Result<Vec<_>, PresentError>>()?;
        Ok(RelationSet {
            model: cfg["model"].as_str().unwrap_or_default().to_string(),
            m: cfg["m"].as_u64().map(|m| m as u32),
            k: cfg["k"].as_u64().ok_or_else(|| bad("config.k expected"))? as u32,
            labels: serde_json::from_value(cfg["basis"].clone()).map_err(|e| PresentError::Format(e.to_string()))?,
            relations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Colour;
    use crate::tl::Model;

    fn config(m: u32) -> PresentationConfig {
        let inst = ConcreteInstance::build(Model::QuotientTL(m), m).unwrap();
        PresentationConfig::new(inst, m - 2).unwrap()
    }

    /// Sum over templates of |B|^(boxes on the left).
    fn expected_count(c: &PresentationConfig) -> usize {
        c.templates.iter().map(|(_, t)| c.basis.len().pow(t.lhs.box_count() as u32)).sum()
    }

    #[test]
    fn counts_match_formula() {
        let c4 = config(4);
        let r = generate_relations(&c4).unwrap();
        // 4 + 1 + 2 + 1 + 4 + 2 + 1 + 2: the Jones template has no boxes
        assert_eq!(r.len(), 17);
        assert_eq!(r.len(), expected_count(&c4));
        let c3 = config(3);
        assert_eq!(generate_relations(&c3).unwrap().len(), 10);
    }

    #[test]
    fn modulus_coefficient_is_delta() {
        let c = config(4);
        let r = generate_relations(&c).unwrap();
        let m = r.relations.iter().find(|r| r.template == "modulus+").unwrap();
        assert_eq!(m.rhs.len(), 1);
        assert_eq!(m.rhs[0].0, c.instance.field().delta());
        let rev = r.relations.iter().find(|r| r.template == "modulus-rev").unwrap();
        assert_eq!(rev.rhs[0].0, c.instance.field().delta_pow(-1));
    }

    #[test]
    fn identity_relation_expands_unit() {
        let c = config(4);
        let r = generate_relations(&c).unwrap();
        let id = r.relations.iter().find(|r| r.template == "identity").unwrap();
        let unit = c.instance.project(&crate::tl::TLElement::one(c.instance.field(), Colour::n(2))).unwrap();
        let mut acc = vec![c.instance.field().zero(); 2];
        for (l, t) in &id.rhs {
            add_scaled(&mut acc, l, &t.evaluate(&c.instance).unwrap());
        }
        assert_eq!(acc, unit);
    }

    #[test]
    fn vanish_perturb_and_round_trip() {
        let c = config(4);
        let r = generate_relations(&c).unwrap();
        assert!(verify_relations_vanish(&c.instance, &r).unwrap().ok());
        let mut bad = r.clone();
        let i = bad.relations.iter().position(|r| r.template == "multiplication").unwrap();
        let (l, _) = &mut bad.relations[i].rhs[0];
        *l = &*l + &c.instance.field().one();
        let rep = verify_relations_vanish(&c.instance, &bad).unwrap();
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].0, i);
        let text = r.to_json_string();
        let back = RelationSet::from_json_str(&text, c.instance.field(), &c.basis).unwrap();
        assert_eq!(back, r);
        assert!(verify_relations_vanish(&c.instance, &back).unwrap().ok());
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn deterministic_output() {
        let a = generate_relations(&config(4)).unwrap().to_json_string();
        let b = generate_relations(&config(4)).unwrap().to_json_string();
        assert_eq!(a, b);
    }
}
