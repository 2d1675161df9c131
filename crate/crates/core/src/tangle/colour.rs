use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TangleError;

/// Colour of a box: `0+`, `0-`, or a positive `n` (a box with `2n` points).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Colour {
    ZeroPlus,
    ZeroMinus,
    Positive(u32),
}

impl Colour {
    pub fn n(n: u32) -> Colour {
        if n == 0 {
            Colour::ZeroPlus
        } else {
            Colour::Positive(n)
        }
    }

    /// Number of marked points on a box of this colour.
    pub fn points(self) -> usize {
        match self {
            Colour::Positive(n) => 2 * n as usize,
            _ => 0,
        }
    }

    /// Number of corners (gaps between consecutive points) around a box;
    /// a pointless box still has the one region touching it.
    pub fn corners(self) -> usize {
        self.points().max(1)
    }

    /// `n` for `Positive(n)`, 0 for both zero colours.
    pub fn level(self) -> u32 {
        match self {
            Colour::Positive(n) => n,
            _ => 0,
        }
    }

    pub fn is_zero(self) -> bool {
        !matches!(self, Colour::Positive(_))
    }

    /// Shading of the region touching the boundary of a box (and of its
    /// star region, when it has points): `true` for black.
    pub fn boundary_black(self) -> bool {
        matches!(self, Colour::ZeroMinus)
    }
}

impl PartialOrd for Colour {
    /// `0+` and `0-` are incomparable; both sit below every positive colour.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use Colour::*;
        match (self, other) {
            (Positive(a), Positive(b)) => Some(a.cmp(b)),
            (Positive(_), _) => Some(Ordering::Greater),
            (_, Positive(_)) => Some(Ordering::Less),
            (a, b) if a == b => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colour::ZeroPlus => write!(f, "0+"),
            Colour::ZeroMinus => write!(f, "0-"),
            Colour::Positive(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for Colour {
    type Err = TangleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0+" | "0" => Ok(Colour::ZeroPlus),
            "0-" => Ok(Colour::ZeroMinus),
            t => match t.parse::<u32>() {
                Ok(n) if n > 0 => Ok(Colour::Positive(n)),
                _ => Err(TangleError::Parse(format!("bad colour `{s}`"))),
            },
        }
    }
}

impl From<Colour> for String {
    fn from(c: Colour) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Colour {
    type Error = TangleError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_order() {
        use Colour::*;
        assert_eq!(ZeroPlus.partial_cmp(&ZeroMinus), None);
        assert!(ZeroPlus < Positive(1));
        assert!(ZeroMinus < Positive(1));
        assert!(Positive(2) <= Positive(5));
        assert!(Positive(3) > Positive(2));
    }

    #[test]
    fn text() {
        for c in [Colour::ZeroPlus, Colour::ZeroMinus, Colour::Positive(7)] {
            assert_eq!(c.to_string().parse::<Colour>().unwrap(), c);
        }
        assert!("-3".parse::<Colour>().is_err());
    }
}
