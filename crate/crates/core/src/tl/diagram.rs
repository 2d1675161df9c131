use std::cmp::Ordering;
use std::fmt;

use crate::tangle::{Colour, Endpoint, PlanarTangle, TangleBuilder};

/// A Temperley-Lieb diagram: a non-crossing perfect matching of the `2n`
/// points of a colour-`n` disc. At colours `0+` and `0-` it is the empty
/// diagram, white or black.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TLDiagram {
    colour: Colour,
    /// 0-based: `partner[i]` is matched with `i` (points are `i + 1`).
    partner: Vec<usize>,
}

pub(crate) fn colour_key(c: Colour) -> (u8, u32) {
    match c {
        Colour::ZeroPlus => (0, 0),
        Colour::ZeroMinus => (1, 0),
        Colour::Positive(n) => (2, n),
    }
}

impl Ord for TLDiagram {
    /// Identity first: matchings compare by partner vector, descending.
    fn cmp(&self, other: &Self) -> Ordering {
        colour_key(self.colour)
            .cmp(&colour_key(other.colour))
            .then_with(|| other.partner.cmp(&self.partner))
    }
}

impl PartialOrd for TLDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TLDiagram {
    /// From a 0-based partner vector; checks it is a non-crossing matching.
    pub fn from_partner(colour: Colour, partner: Vec<usize>) -> Option<TLDiagram> {
        let d = colour.points();
        if partner.len() != d {
            return None;
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= d || j == i || partner[j] != i {
                return None;
            }
        }
        for i in 0..d {
            let j = partner[i];
            if i < j && (i + 1..j).any(|x| partner[x] < i || partner[x] > j) {
                return None;
            }
        }
        Some(TLDiagram { colour, partner })
    }

    pub fn identity(colour: Colour) -> TLDiagram {
        let d = colour.points();
        TLDiagram { colour, partner: (0..d).map(|i| d - 1 - i).collect() }
    }

    /// `E_i` at colour `n`: cup and cap joining positions `i` and `i + 1`.
    pub fn jones(n: u32, i: usize) -> Option<TLDiagram> {
        let nn = n as usize;
        if i == 0 || i >= nn {
            return None;
        }
        let mut d = TLDiagram::identity(Colour::n(n));
        let (a, b) = (i - 1, i);
        let (c, e) = (2 * nn - i, 2 * nn - 1 - i);
        d.partner[a] = b;
        d.partner[b] = a;
        d.partner[c] = e;
        d.partner[e] = c;
        Some(d)
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// Reflection (the adjoint): point `j` goes to `2n + 1 - j`.
    pub fn adjoint(&self) -> TLDiagram {
        let d = self.partner.len();
        let partner = (0..d).map(|i| d - 1 - self.partner[d - 1 - i]).collect();
        TLDiagram { colour: self.colour, partner }
    }

    /// The boxless tangle drawing this diagram.
    pub fn to_tangle(&self) -> PlanarTangle {
        let mut b = TangleBuilder::new(self.colour, vec![]);
        for (i, &j) in self.partner.iter().enumerate() {
            if i < j {
                b.strand(Endpoint::ext(i + 1), Endpoint::ext(j + 1));
            }
        }
        b.build().expect("a non-crossing matching is a valid tangle")
    }

    /// Read a boxless tangle as a diagram and its number of free loops.
    pub fn from_tangle(t: &PlanarTangle) -> Option<(TLDiagram, usize)> {
        if !t.is_boxless() {
            return None;
        }
        let d = t.external().points();
        let partner = (1..=d).map(|p| t.partner(Endpoint::ext(p)).point - 1).collect();
        Some((TLDiagram { colour: t.external(), partner }, t.loop_count()))
    }

    /// Compact text: the pairs, e.g. `(1,4)(2,3)`; `empty+` / `empty-` at zero colours.
    pub fn label(&self) -> String {
        match self.colour {
            Colour::ZeroPlus => "empty+".into(),
            Colour::ZeroMinus => "empty-".into(),
            _ => self
                .partner
                .iter()
                .enumerate()
                .filter(|(i, &j)| *i < j)
                .map(|(i, &j)| format!("({},{})", i + 1, j + 1))
                .collect(),
        }
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All diagrams at a colour, identity first.
pub fn tl_basis(colour: Colour) -> Vec<TLDiagram> {
    let d = colour.points();
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; d];
    matchings(&mut partner, &mut out);
    let mut diagrams: Vec<TLDiagram> = out.into_iter().map(|partner| TLDiagram { colour, partner }).collect();
    diagrams.sort();
    diagrams
}

fn matchings(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
        out.push(partner.clone());
        return;
    };
    // Point i pairs with j when the free points strictly between them can
    // be matched among themselves: an even count, none already used.
    let mut j = i + 1;
    while j < partner.len() {
        if partner[j] == usize::MAX && (j - i) % 2 == 1 && (i + 1..j).all(|x| partner[x] == usize::MAX) {
            partner[i] = j;
            partner[j] = i;
            matchings(partner, out);
            partner[i] = usize::MAX;
            partner[j] = usize::MAX;
        }
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        assert_eq!(tl_basis(Colour::ZeroPlus).len(), 1);
        let b2 = tl_basis(Colour::n(2));
        assert_eq!(b2.len(), 2);
        assert_eq!(b2[0], TLDiagram::identity(Colour::n(2)));
        assert_eq!(b2[1].label(), "(1,2)(3,4)");
        assert_eq!(tl_basis(Colour::n(4)).len(), 14);
    }

    #[test]
    fn jones_diagram_matches_zoo() {
        for n in 2..6u32 {
            let zoo = crate::zoo::jones(n).unwrap();
            let (d, loops) = TLDiagram::from_tangle(&zoo).unwrap();
            assert_eq!(loops, 0);
            assert_eq!(d, TLDiagram::jones(n, n as usize - 1).unwrap());
        }
    }

    #[test]
    fn crossing_rejected() {
        assert!(TLDiagram::from_partner(Colour::n(2), vec![2, 3, 0, 1]).is_none());
        assert!(TLDiagram::from_partner(Colour::n(2), vec![3, 2, 1, 0]).is_some());
    }

    #[test]
    fn tangle_round_trip_and_adjoint() {
        for d in tl_basis(Colour::n(3)) {
            assert_eq!(TLDiagram::from_tangle(&d.to_tangle()).unwrap(), (d.clone(), 0));
            assert_eq!(d.adjoint().to_tangle(), d.to_tangle().adjoint());
        }
    }
}
