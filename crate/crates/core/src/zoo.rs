//! Constructors for the named tangle families.
//!
//! Conventions: points of a colour-`n` box are numbered `1..=2n` clockwise
//! from the star (top-left), so top position `i` is point `i` and bottom
//! position `j` (counted left to right) is point `2n + 1 - j`.

use crate::tangle::{Colour, Endpoint, PlanarTangle, Site, TangleBuilder, TangleError};

fn ext(p: usize) -> Endpoint {
    Endpoint::ext(p)
}

fn int(v: usize, p: usize) -> Endpoint {
    Endpoint::int(v, p)
}

fn bad(msg: String) -> TangleError {
    TangleError::Invalid(msg)
}

/// Assemble from a strand list plus placements `(vertex, gap, site)` for
/// components that do not reach the external boundary.
fn assemble(
    external: Colour,
    boxes: Vec<Colour>,
    pairs: &[(Endpoint, Endpoint)],
    places: &[(usize, usize, Site)],
) -> Result<PlanarTangle, TangleError> {
    let mut b = TangleBuilder::new(external, boxes);
    for &(x, y) in pairs {
        b.strand(x, y);
    }
    for &(v, g, s) in places {
        b.place(v, g, s);
    }
    b.build()
}

fn pos(n: u32) -> Colour {
    Colour::n(n)
}

/// `ER^n_{n+j}`: right expectation closing `j` strands on the right.
/// For `n = 0-` the closure runs around the left so the outside is black.
pub fn er(n: Colour, j: u32) -> Result<PlanarTangle, TangleError> {
    let nn = n.level() as usize;
    let big = nn + j as usize;
    if big == 0 {
        return Err(bad("ER needs an internal colour of at least 1".into()));
    }
    let mut pairs = Vec::new();
    for i in 1..=j as usize {
        pairs.push((int(1, big - i + 1), int(1, big + i)));
    }
    for i in 1..=nn {
        pairs.push((int(1, i), ext(i)));
    }
    for t in 1..=nn {
        pairs.push((int(1, big + j as usize + t), ext(nn + t)));
    }
    let places: Vec<(usize, usize, Site)> = match n {
        Colour::ZeroPlus => vec![(1, 0, Site::Corner(0, 0))],
        Colour::ZeroMinus => vec![(1, 1, Site::Corner(0, 0))],
        Colour::Positive(_) => vec![],
    };
    assemble(n, vec![pos(big as u32)], &pairs, &places)
}

/// `I^{n+j}_n`: inclusion, adding `j` vertical strands on the right.
/// `n` may be `0+`; use [`i_zero_minus`] for the `0-` box.
pub fn inclusion(n: u32, j: u32) -> Result<PlanarTangle, TangleError> {
    let (n, j) = (n as usize, j as usize);
    if n + j == 0 {
        return Err(bad("inclusion needs an external colour of at least 1".into()));
    }
    let mut pairs = Vec::new();
    for i in 1..=n {
        pairs.push((int(1, i), ext(i)));
    }
    for t in 1..=n {
        pairs.push((int(1, n + t), ext(n + 2 * j + t)));
    }
    for i in 1..=j {
        pairs.push((ext(n + i), ext(n + 2 * j + 1 - i)));
    }
    let places: Vec<(usize, usize, Site)> = if n == 0 { vec![(1, 0, Site::Corner(0, 0))] } else { vec![] };
    assemble(pos((n + j) as u32), vec![pos(n as u32)], &pairs, &places)
}

/// `I^n_n`.
pub fn identity(n: u32) -> Result<PlanarTangle, TangleError> {
    inclusion(n, 0)
}

/// `I^1_{0-}`: one vertical strand with a `0-` box in the black region to its right.
pub fn i_zero_minus() -> PlanarTangle {
    assemble(pos(1), vec![Colour::ZeroMinus], &[(ext(1), ext(2))], &[(1, 0, Site::Corner(0, 1))])
        .expect("I^1_{0-} is valid")
}

/// `EL^n_n`: left expectation, capping point 1 with point `2n` on both the
/// box and the boundary.
pub fn el(n: u32) -> Result<PlanarTangle, TangleError> {
    let n = n as usize;
    if n == 0 {
        return Err(bad("EL needs n >= 1".into()));
    }
    let mut pairs = vec![(int(1, 1), int(1, 2 * n)), (ext(1), ext(2 * n))];
    for t in 2..2 * n {
        pairs.push((int(1, t), ext(t)));
    }
    // For n = 1 the box only meets the cap; its right side faces the black region.
    let places: Vec<(usize, usize, Site)> = if n == 1 { vec![(1, 1, Site::Corner(0, 1))] } else { vec![] };
    assemble(pos(n as u32), vec![pos(n as u32)], &pairs, &places)
}

/// `1^n`: the boxless tangle of `n` vertical strands (for `n` zero, the empty tangle).
pub fn unit(n: Colour) -> PlanarTangle {
    let k = n.level() as usize;
    let pairs: Vec<_> = (1..=k).map(|i| (ext(i), ext(2 * k + 1 - i))).collect();
    assemble(n, vec![], &pairs, &[]).expect("unit tangle is valid")
}

/// `E^n`: the Jones projection tangle (cup and cap between positions `n-1` and `n`).
pub fn jones(n: u32) -> Result<PlanarTangle, TangleError> {
    let n = n as usize;
    if n < 2 {
        return Err(bad("E(n) needs n >= 2".into()));
    }
    let mut pairs = vec![(ext(n - 1), ext(n)), (ext(n + 1), ext(n + 2))];
    for i in 1..=n - 2 {
        pairs.push((ext(i), ext(2 * n + 1 - i)));
    }
    assemble(pos(n as u32), vec![], &pairs, &[])
}

/// `TR^{0+}_n`: full closure around the right.
pub fn tr(n: u32) -> Result<PlanarTangle, TangleError> {
    er(Colour::ZeroPlus, n)
}

/// `TR^{0-}_n`: full closure around the left.
pub fn trl(n: u32) -> Result<PlanarTangle, TangleError> {
    er(Colour::ZeroMinus, n)
}

/// `C^{0+}` (white outside) or `C^{0-}` (black outside): one free loop.
pub fn circle(external: Colour) -> Result<PlanarTangle, TangleError> {
    if !external.is_zero() {
        return Err(bad("the circle tangle has colour 0+ or 0-".into()));
    }
    let mut b = TangleBuilder::new(external, vec![]);
    b.free_loop(Site::Corner(0, 0));
    b.build()
}

/// Rotation of an `(n+1)`-box by one click: external point `p` meets
/// internal point `p - 2`, so two points travel around the left.
pub fn rotation(n: u32) -> Result<PlanarTangle, TangleError> {
    if n == 0 {
        return Err(bad("R(n) needs n >= 1".into()));
    }
    let d = 2 * (n as usize + 1);
    let pairs: Vec<_> = (1..=d).map(|p| (ext(p), int(1, (p + d - 3) % d + 1))).collect();
    assemble(pos(n + 1), vec![pos(n + 1)], &pairs, &[])
}

/// `M^p_{m,n}`: multiplication with `t = m + n - p` strands joining the
/// bottom-left of `D1` to the top-left of `D2`. `M(n,n,n)` is stacking.
pub fn mult(m: u32, n: u32, p: u32) -> Result<PlanarTangle, TangleError> {
    if m == 0 || n == 0 || p == 0 || p > m + n || p < m.abs_diff(n) {
        return Err(bad(format!("M({m},{n},{p}) is out of range")));
    }
    let (m, n, t) = (m as usize, n as usize, (m + n - p) as usize);
    let mut pairs = Vec::new();
    for i in 1..=2 * m - t {
        pairs.push((int(1, i), ext(i)));
    }
    for j in 1..=t {
        pairs.push((int(1, 2 * m + 1 - j), int(2, j)));
    }
    for r in 1..=2 * n - t {
        pairs.push((int(2, t + r), ext(2 * m - t + r)));
    }
    assemble(pos(p), vec![pos(m as u32), pos(n as u32)], &pairs, &[])
}

/// `M^c_{c,c}` for a zero colour `c`: two boxes of colour `c` side by side.
pub fn mult_zero(c: Colour) -> Result<PlanarTangle, TangleError> {
    if !c.is_zero() {
        return Err(bad(format!("mult_zero needs 0+ or 0-, got {c}")));
    }
    assemble(c, vec![c, c], &[], &[(1, 0, Site::Corner(0, 0)), (2, 0, Site::Corner(0, 0))])
}

/// `M^n_{n,n}` for any colour (stacking, or side by side at zero colours).
pub fn mult_square(n: Colour) -> Result<PlanarTangle, TangleError> {
    match n {
        Colour::Positive(k) => mult(k, k, k),
        c => mult_zero(c),
    }
}

/// `T^n` for the depth parameter `k`: one box for `n <= k`, and `n - k + 1`
/// stacked `k`-boxes each sharing `k - 1` strands with the next for `n > k`.
pub fn t(n: Colour, k: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 {
        return Err(bad("T needs k >= 1".into()));
    }
    match n {
        Colour::ZeroPlus | Colour::ZeroMinus => er(n, k),
        Colour::Positive(n) if n < k => er(pos(n), k - n),
        Colour::Positive(n) if n == k => identity(k),
        Colour::Positive(n) => {
            let prev = t(pos(n - 1), k)?;
            let id = identity(k)?;
            mult(n - 1, k, n)?.compose(&[(1, &prev), (2, &id)])
        }
    }
}

/// `W`: external colour `n`, `D1` of colour `n`, `D2` of colour `2n - k + 1`.
/// Inserting `1` in `D2` gives back `D1`; inserting a product `x y` gives
/// `(I ER (v x)) y`.
pub fn w(n: u32, k: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 || k > n {
        return Err(bad(format!("W({n},{k}) needs n >= k >= 1")));
    }
    let (n, k) = (n as usize, k as usize);
    let mut pairs = Vec::new();
    for i in 1..k {
        pairs.push((int(1, i), ext(i)));
    }
    for j in k..=n {
        pairs.push((int(1, j), int(2, 2 * n + 1 - j)));
    }
    for j in 1..=n {
        pairs.push((int(1, 2 * n + 1 - j), int(2, j)));
    }
    for r in 1..=n - k + 1 {
        pairs.push((int(2, 2 * n - k + 1 + r), ext(k - 1 + r)));
    }
    for s in 1..=n {
        pairs.push((int(2, 3 * n - 2 * k + 2 + s), ext(n + s)));
    }
    assemble(pos(n as u32), vec![pos(n as u32), pos((2 * n - k + 1) as u32)], &pairs, &[])
}

/// `W*` with external colour `m`, `D1` of colour `n` and `D2` of colour
/// `m + n - k + 1`. Inserting `u v` in `D2` gives `u I(ER(v x))`.
pub fn wstar_general(m: u32, n: u32, k: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 || k > n || k > m {
        return Err(bad(format!("W*({m},{n},{k}) needs m, n >= k >= 1")));
    }
    let (m, n, k) = (m as usize, n as usize, k as usize);
    let mut pairs = Vec::new();
    for i in 1..=m {
        pairs.push((int(2, i), ext(i)));
    }
    for i in 1..=m - k + 1 {
        pairs.push((int(2, m + i), ext(m + i)));
    }
    for j in k..=n {
        pairs.push((int(2, 2 * m - 2 * k + 2 + j), int(1, 2 * n + 1 - j)));
    }
    for j in 1..=n {
        pairs.push((int(2, 2 * m - 2 * k + 3 + 2 * n - j), int(1, j)));
    }
    for j in 1..k {
        pairs.push((int(1, 2 * n + 1 - j), ext(2 * m + 1 - j)));
    }
    assemble(pos(m as u32), vec![pos(n as u32), pos((m + n - k + 1) as u32)], &pairs, &[])
}

/// `W*` with external and `D1` colour `n`.
pub fn wstar(n: u32, k: u32) -> Result<PlanarTangle, TangleError> {
    wstar_general(n, n, k)
}

/// `SH^{n+s}_n`: shift an `n`-box right past `s` vertical strands (`s` even).
pub fn shift_by(n: u32, s: u32) -> Result<PlanarTangle, TangleError> {
    if s % 2 == 1 || n + s == 0 {
        return Err(bad(format!("SH needs an even shift, got {s}")));
    }
    let (n, s) = (n as usize, s as usize);
    let big = n + s;
    let mut pairs = Vec::new();
    for i in 1..=s {
        pairs.push((ext(i), ext(2 * big + 1 - i)));
    }
    for i in 1..=n {
        pairs.push((int(1, i), ext(i + s)));
    }
    for t in 1..=n {
        pairs.push((int(1, n + t), ext(big + t)));
    }
    let places: Vec<(usize, usize, Site)> = if n == 0 { vec![(1, 0, Site::Corner(0, s))] } else { vec![] };
    assemble(pos(big as u32), vec![pos(n as u32)], &pairs, &places)
}

/// `SH^{n+2}_n`.
pub fn shift(n: u32) -> Result<PlanarTangle, TangleError> {
    shift_by(n, 2)
}

/// Annular tangle capping the last `j` top and bottom positions of an
/// `(n+j)`-box on the right, as [`er`]; kept as a separate name for
/// readability at call sites that isolate a box.
pub fn annular_cap_right(n: u32, j: u32) -> Result<PlanarTangle, TangleError> {
    er(pos(n), j)
}

/// Boxless tangle of colour `n` from 1-based position pairs: `Top(i)`
/// and `Bot(j)` positions counted left to right.
#[derive(Clone, Copy)]
pub enum Pos {
    Top(u32),
    Bot(u32),
}

pub fn tl_tangle(n: u32, pairs: &[(Pos, Pos)]) -> Result<PlanarTangle, TangleError> {
    let pt = |p: Pos| match p {
        Pos::Top(i) => i as usize - 1,
        Pos::Bot(j) => (2 * n + 1 - j) as usize - 1,
    };
    let mut partner = vec![usize::MAX; 2 * n as usize];
    for &(a, b) in pairs {
        partner[pt(a)] = pt(b);
        partner[pt(b)] = pt(a);
    }
    let d = crate::tl::TLDiagram::from_partner(pos(n), partner).ok_or_else(|| bad(format!("{} pairs do not form a planar diagram at colour {n}", pairs.len())))?;
    Ok(d.to_tangle())
}

/// `Q^{n+2}`: bottom cup at 2,3 and top cap at n+1,n+2, the rest shifted.
pub fn q(n: u32) -> Result<PlanarTangle, TangleError> {
    if n == 0 {
        return Err(bad("Q needs n >= 1".into()));
    }
    let big = n + 2;
    let mut pairs = vec![(Pos::Top(1), Pos::Bot(1)), (Pos::Bot(2), Pos::Bot(3)), (Pos::Top(n + 1), Pos::Top(n + 2))];
    for j in 4..=big {
        pairs.push((Pos::Bot(j), Pos::Top(j - 2)));
    }
    tl_tangle(big, &pairs)
}

/// `K^{2k-n+1}`: through strands `1..n`, nested bottom cups around `k`,
/// the last bottom point to top `n+1`, adjacent top caps after that.
pub fn k_family(n: u32, k: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 || n > k {
        return Err(bad(format!("K({n},{k}) needs n <= k")));
    }
    let t = 2 * k - n + 1;
    let mut pairs: Vec<(Pos, Pos)> = (1..=n).map(|i| (Pos::Top(i), Pos::Bot(i))).collect();
    for i in 1..=k - n {
        pairs.push((Pos::Bot(k - i + 1), Pos::Bot(k + i)));
    }
    pairs.push((Pos::Bot(t), Pos::Top(n + 1)));
    let mut a = n + 2;
    while a < t {
        pairs.push((Pos::Top(a), Pos::Top(a + 1)));
        a += 2;
    }
    tl_tangle(t, &pairs)
}

/// `L^{2k-n}`: through strands `1..n` and nested caps and cups around `k`.
pub fn l_family(n: u32, k: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 || n > k {
        return Err(bad(format!("L({n},{k}) needs n <= k")));
    }
    let u = 2 * k - n;
    let mut pairs: Vec<(Pos, Pos)> = (1..=n).map(|i| (Pos::Top(i), Pos::Bot(i))).collect();
    for i in 1..=k - n {
        pairs.push((Pos::Top(k - i + 1), Pos::Top(k + i)));
        pairs.push((Pos::Bot(k - i + 1), Pos::Bot(k + i)));
    }
    tl_tangle(u, &pairs)
}

/// `Q*`: the reflection of [`q`].
pub fn qstar(n: u32) -> Result<PlanarTangle, TangleError> {
    Ok(q(n)?.adjoint())
}

/// `K*`: the reflection of [`k_family`].
pub fn kstar(n: u32, k: u32) -> Result<PlanarTangle, TangleError> {
    Ok(k_family(n, k)?.adjoint())
}

/// `z`: a `2k`-tangle with two disjoint `k`-boxes. `D1` has all `2k` legs
/// on the top edge and `D2` all `2k` legs on the bottom edge, both read
/// clockwise from their stars, so both stars face white regions for every `k`.
pub fn zgen(k: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 {
        return Err(bad("Zgen needs k >= 1".into()));
    }
    let d = 2 * k as usize;
    let mut pairs: Vec<_> = (1..=d).map(|p| (int(1, p), ext(p))).collect();
    pairs.extend((1..=d).map(|p| (int(2, p), ext(d + p))));
    assemble(pos(2 * k), vec![pos(k), pos(k)], &pairs, &[])
}

/// Annular `k`-tangle on a `2k`-box that passes the legs of box `which`
/// (1 or 2) of [`zgen`] straight through and closes the other half off.
pub fn zgen_recover(k: u32, which: u32) -> Result<PlanarTangle, TangleError> {
    if k == 0 || !(which == 1 || which == 2) {
        return Err(bad(format!("ZgenRecover({k},{which}) needs k >= 1 and box 1 or 2")));
    }
    let d = 2 * k as usize;
    let (keep, close) = if which == 1 { (0, d) } else { (d, 0) };
    let mut pairs: Vec<_> = (1..=d).map(|p| (int(1, keep + p), ext(p))).collect();
    pairs.extend((1..=k as usize).map(|i| (int(1, close + i), int(1, close + d + 1 - i))));
    assemble(pos(k), vec![pos(2 * k)], &pairs, &[])
}

/// Name and parameters of a zoo tangle, as accepted by [`build`].
pub fn build(name: &str, args: &[Colour]) -> Result<PlanarTangle, TangleError> {
    let num = |i: usize| -> Result<u32, TangleError> {
        match args.get(i) {
            Some(c) if !matches!(c, Colour::ZeroMinus) => Ok(c.level()),
            Some(c) => Err(bad(format!("{name}: argument {} must be a number, got {c}", i + 1))),
            None => Err(bad(format!("{name}: missing argument {}", i + 1))),
        }
    };
    let col = |i: usize| -> Result<Colour, TangleError> {
        args.get(i).copied().ok_or_else(|| bad(format!("{name}: missing argument {}", i + 1)))
    };
    let arity = |n: usize| -> Result<(), TangleError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(format!("{name} takes {n} arguments, got {}", args.len())))
        }
    };
    match name {
        "ER" => arity(2).and_then(|_| er(col(0)?, num(1)?)),
        "I" => match args.len() {
            1 => identity(num(0)?),
            _ => arity(2).and_then(|_| inclusion(num(0)?, num(1)?)),
        },
        "IZeroMinus" => arity(0).map(|_| i_zero_minus()),
        "EL" => arity(1).and_then(|_| el(num(0)?)),
        "Unit" => arity(1).map(|_| unit(col(0).unwrap())),
        "E" => arity(1).and_then(|_| jones(num(0)?)),
        "TR" => arity(1).and_then(|_| tr(num(0)?)),
        "TRL" => arity(1).and_then(|_| trl(num(0)?)),
        "C" => arity(1).and_then(|_| circle(col(0)?)),
        "R" => arity(1).and_then(|_| rotation(num(0)?)),
        "M" if args.len() == 1 => mult_square(col(0)?),
        "M" => arity(3).and_then(|_| mult(num(0)?, num(1)?, num(2)?)),
        "T" => arity(2).and_then(|_| t(col(0)?, num(1)?)),
        "W" => arity(2).and_then(|_| w(num(0)?, num(1)?)),
        "Wstar" => match args.len() {
            3 => wstar_general(num(0)?, num(1)?, num(2)?),
            _ => arity(2).and_then(|_| wstar(num(0)?, num(1)?)),
        },
        "SH" => match args.len() {
            2 => shift_by(num(0)?, num(1)?),
            _ => arity(1).and_then(|_| shift(num(0)?)),
        },
        "Q" if args.len() == 1 => q(num(0)?),
        "Q" => arity(2).and_then(|_| q(num(0)?)),
        "Qstar" if args.len() == 1 => qstar(num(0)?),
        "Qstar" => arity(2).and_then(|_| qstar(num(0)?)),
        "K" => arity(2).and_then(|_| k_family(num(0)?, num(1)?)),
        "Kstar" => arity(2).and_then(|_| kstar(num(0)?, num(1)?)),
        "L" => arity(2).and_then(|_| l_family(num(0)?, num(1)?)),
        "Zgen" => arity(1).and_then(|_| zgen(num(0)?)),
        "ZgenRecover" => arity(2).and_then(|_| zgen_recover(num(0)?, num(1)?)),
        "AnnularCapRight" => arity(2).and_then(|_| annular_cap_right(num(0)?, num(1)?)),
        _ => Err(TangleError::Parse(format!("unknown tangle `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<(Endpoint, Endpoint)>) -> Vec<(Endpoint, Endpoint)> {
        v.sort();
        v
    }

    fn pairs_of(v: &[(Endpoint, Endpoint)]) -> Vec<(Endpoint, Endpoint)> {
        sorted(v.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect())
    }

    #[test]
    fn er_formula_and_trivial_cases() {
        let e = er(pos(1), 1).unwrap();
        assert_eq!(e.strands(), pairs_of(&[(int(1, 2), int(1, 3)), (int(1, 1), ext(1)), (int(1, 4), ext(2))]));
        for n in 1..4 {
            assert_eq!(er(pos(n), 0).unwrap(), identity(n).unwrap());
        }
        assert_eq!(er(Colour::ZeroPlus, 2).unwrap(), t(Colour::ZeroPlus, 2).unwrap());
    }

    #[test]
    fn small_boxless_tangles() {
        assert_eq!(unit(pos(1)).strands(), vec![(ext(1), ext(2))]);
        assert_eq!(jones(2).unwrap().strands(), vec![(ext(1), ext(2)), (ext(3), ext(4))]);
        for n in 2..5 {
            let e = jones(n).unwrap();
            assert_eq!(e.adjoint(), e);
            assert_eq!(unit(pos(n)).adjoint(), unit(pos(n)));
        }
    }

    #[test]
    fn left_and_right_traces_differ_only_in_embedding() {
        for n in 1..4 {
            let (r, l) = (tr(n).unwrap(), trl(n).unwrap());
            assert_eq!(r.strands(), l.strands());
            assert_ne!(r.canonical_code(), l.canonical_code());
        }
    }

    #[test]
    fn mult_glues_t_tangles() {
        assert!(mult(1, 1, 2).unwrap().strands().iter().all(|(a, b)| a.vertex == 0 || b.vertex == 0));
        assert!(mult(1, 1, 5).is_err());
        for k in 1..=3 {
            for m in k..=k + 2 {
                for n in k..=k + 2 {
                    let p = m + n - k + 1;
                    let lhs = mult(m, n, p).unwrap().compose(&[(1, &t(pos(m), k).unwrap()), (2, &t(pos(n), k).unwrap())]).unwrap();
                    assert_eq!(lhs, t(pos(p), k).unwrap(), "k={k} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn t_shapes() {
        for k in 1..=3 {
            assert_eq!(t(pos(k), k).unwrap(), identity(k).unwrap());
            let t1 = t(pos(k + 1), k).unwrap();
            assert_eq!(t1.box_count(), 2);
            let joined = t1.strands().iter().filter(|(a, b)| a.vertex == 1 && b.vertex == 2).count();
            assert_eq!(joined as u32, k - 1);
        }
    }

    #[test]
    fn rotation_period() {
        for n in 1..=4 {
            let r = rotation(n).unwrap();
            let mut acc = r.clone();
            for _ in 0..n {
                acc = acc.compose(&[(1, &r)]).unwrap();
            }
            assert_eq!(acc, inclusion(n + 1, 0).unwrap());
            assert_ne!(r, inclusion(n + 1, 0).unwrap());
        }
    }

    #[test]
    fn shift_recursion() {
        for k in 1..=3 {
            for n in k + 1..=k + 3 {
                let lhs = shift(n).unwrap().compose(&[(1, &t(pos(n), k).unwrap())]).unwrap();
                let prev = shift(n - 1).unwrap().compose(&[(1, &t(pos(n - 1), k).unwrap())]).unwrap();
                let rhs = mult(n + 1, k + 2, n + 2).unwrap().compose(&[(1, &prev), (2, &shift(k).unwrap())]).unwrap();
                assert!(rhs.find_renumbering(&lhs).is_some(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn w_pinning() {
        for k in 1..=3 {
            for n in k..=k + 2 {
                let w = w(n, k).unwrap();
                let one = unit(pos(2 * n - k + 1));
                assert_eq!(w.compose(&[(2, &one)]).unwrap(), identity(n).unwrap());
                assert_eq!(w.adjoint(), wstar(n, k).unwrap());
            }
        }
    }

    #[test]
    fn figure_families_are_boxless_with_expected_colours() {
        for k in 1..=3 {
            for n in 1..=k {
                assert_eq!(q(n).unwrap().external(), pos(n + 2));
                assert_eq!(qstar(n).unwrap().external(), pos(n + 2));
                assert_eq!(k_family(n, k).unwrap().external(), pos(2 * k - n + 1));
                assert_eq!(kstar(n, k).unwrap().external(), pos(2 * k - n + 1));
                assert_eq!(l_family(n, k).unwrap().external(), pos(2 * k - n));
                assert!(q(n).unwrap().is_boxless() && k_family(n, k).unwrap().is_boxless());
            }
        }
        assert!(k_family(3, 2).is_err());
    }

    #[test]
    fn zgen_shape_and_recovery() {
        for k in 1..=3 {
            let z = zgen(k).unwrap();
            assert_eq!(z.external(), pos(2 * k));
            assert_eq!(z.boxes(), &[pos(k), pos(k)]);
            // Reflection swaps the two boxes.
            assert_eq!(z.adjoint(), z.permute_boxes(&[2, 1]).unwrap());
            for which in 1..=2 {
                let r = zgen_recover(k, which).unwrap().compose(&[(1, &z)]).unwrap();
                let kept = r.strands().iter().filter(|(a, _)| a.vertex == 0).count();
                assert_eq!(kept, 2 * k as usize);
                assert!(r.strands().iter().all(|(a, b)| a.vertex == 0 && b.vertex == which as usize || a.vertex == b.vertex));
            }
        }
    }

    #[test]
    fn build_by_name() {
        assert_eq!(build("M", &[pos(3), pos(3), pos(3)]).unwrap(), mult(3, 3, 3).unwrap());
        assert_eq!(build("Zgen", &[pos(2)]).unwrap(), zgen(2).unwrap());
        assert!(build("Nope", &[]).is_err());
        assert!(build("E", &[]).is_err());
    }
}
