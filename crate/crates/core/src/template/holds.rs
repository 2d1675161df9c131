use super::{Template, TemplateError};
use crate::exact::{Echelon, Matrix, Scalar};
use crate::tangle::PlanarTangle;
use crate::tl::{ConcreteInstance, TLElement};

/// Coordinates of `Z_T(x_1, ..., x_b)` for every tuple of elements of `basis`,
/// one row per tuple (the odometer runs over box 1 slowest).
pub fn rpb_span(inst: &ConcreteInstance, basis: &[TLElement], t: &PlanarTangle) -> Result<Matrix, TemplateError> {
    let dim = inst.dim(t.external()).map_err(eval)?;
    let mut m = Matrix::zeros(inst.field(), 0, dim);
    each_value(inst, basis, t, |row| {
        m.push_row(row);
        true
    })?;
    Ok(m)
}

fn eval(e: crate::tl::TlError) -> TemplateError {
    TemplateError::Eval(e.to_string())
}

/// Feed `Z_T` of every basis tuple to `f` until it returns false.
fn each_value(
    inst: &ConcreteInstance,
    basis: &[TLElement],
    t: &PlanarTangle,
    mut f: impl FnMut(Vec<Scalar>) -> bool,
) -> Result<(), TemplateError> {
    let b = t.box_count();
    if let Some(x) = basis.first() {
        if let Some((i, c)) = t.boxes().iter().enumerate().find(|(_, c)| **c != x.colour()) {
            return Err(TemplateError::Eval(format!(
                "box {} has colour {c}, the basis has colour {}",
                i + 1,
                x.colour()
            )));
        }
    } else if b > 0 {
        return Err(TemplateError::Eval("empty basis".into()));
    }
    let mut idx = vec![0usize; b];
    loop {
        let inputs: Vec<&TLElement> = idx.iter().map(|&i| &basis[i]).collect();
        if !f(inst.evaluate(t, &inputs).map_err(eval)?) {
            return Ok(());
        }
        let mut pos = b;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < basis.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Rank of the span of `Z_T` on basis tuples, stopping once it is all of `P_n`.
pub fn span_rank(inst: &ConcreteInstance, basis: &[TLElement], t: &PlanarTangle) -> Result<usize, TemplateError> {
    let mut e = Echelon::new(inst.dim(t.external()).map_err(eval)?);
    each_value(inst, basis, t, |row| {
        e.insert(&row);
        !e.is_full()
    })?;
    Ok(e.rank())
}

/// Whether the span of the left side lies in the span of the right side.
pub fn holds_for(inst: &ConcreteInstance, basis: &[TLElement], t: &Template) -> Result<bool, TemplateError> {
    let mut e = Echelon::new(inst.dim(t.colour()).map_err(eval)?);
    each_value(inst, basis, &t.rhs, |row| {
        e.insert(&row);
        !e.is_full()
    })?;
    if e.is_full() {
        return Ok(true);
    }
    let mut inside = true;
    each_value(inst, basis, &t.lhs, |row| {
        inside = e.contains(&row);
        inside
    })?;
    Ok(inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank;
    use crate::tangle::Colour;
    use crate::template::{basic_templates, thm32_scripts};
    use crate::tl::Model;
    use crate::zoo;

    fn basis(inst: &ConcreteInstance, k: u32) -> Vec<TLElement> {
        (0..inst.dim(Colour::n(k)).unwrap()).map(|i| inst.basis_element(Colour::n(k), i).unwrap()).collect()
    }

    #[test]
    fn basic_templates_hold_in_quotients() {
        for m in 3..=5 {
            let k = m - 2;
            let inst = ConcreteInstance::build(Model::QuotientTL(m), k + 2).unwrap();
            let b = basis(&inst, k);
            for (name, t) in basic_templates(k).unwrap().iter() {
                assert!(holds_for(&inst, &b, t).unwrap(), "m={m} {name}");
            }
        }
    }

    #[test]
    fn depth_template_fails_generically() {
        for k in 1..=2 {
            let inst = ConcreteInstance::build(Model::GenericTL, k + 2).unwrap();
            let b = basis(&inst, k);
            let ax = basic_templates(k).unwrap();
            assert!(!holds_for(&inst, &b, ax.get("depth").unwrap()).unwrap());
            assert!(holds_for(&inst, &b, ax.get("multiplication").unwrap()).unwrap());
        }
    }

    #[test]
    fn t3_spans_p3_at_m4() {
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 3).unwrap();
        let span = rpb_span(&inst, &basis(&inst, 2), &zoo::t(Colour::n(3), 2).unwrap()).unwrap();
        assert_eq!(rank(&span), 4);
        assert_eq!(inst.dim(Colour::n(3)).unwrap(), 4);
    }

    #[test]
    fn box_colour_checked() {
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 3).unwrap();
        assert!(rpb_span(&inst, &basis(&inst, 1), &zoo::t(Colour::n(3), 2).unwrap()).is_err());
    }

    #[test]
    fn derived_conclusions_hold() {
        // Consequences of templates that hold must hold too.
        let inst = ConcreteInstance::build(Model::QuotientTL(4), 5).unwrap();
        let b = basis(&inst, 2);
        let scripts = thm32_scripts(2, 4).unwrap();
        let mut checked = 0;
        for s in &scripts {
            if s.expected.lhs.box_count().max(s.expected.rhs.box_count()) <= 3 {
                assert!(holds_for(&inst, &b, &s.expected).unwrap(), "{}", s.label);
                checked += 1;
            }
        }
        assert!(checked > 20);
    }
}
