use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::ExactError;

/// The exact field a modulus `delta` lives in.
///
/// The quadratic kinds are `Q(delta)` with `delta = 2cos(pi/m)` for
/// `m = 4, 5, 6`; `Rational` is the degenerate `m = 3` case `delta = 1`.
/// `GenericDelta` is the field of rational functions in an indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScalarField {
    Rational,
    QuadraticRoot2,
    QuadraticGolden,
    QuadraticRoot3,
    GenericDelta,
}

impl ScalarField {
    /// Field of `delta = 2cos(pi/m)`, for the shipped `m` in `3..=6`.
    pub fn for_m(m: u32) -> Option<ScalarField> {
        match m {
            3 => Some(ScalarField::Rational),
            4 => Some(ScalarField::QuadraticRoot2),
            5 => Some(ScalarField::QuadraticGolden),
            6 => Some(ScalarField::QuadraticRoot3),
            _ => None,
        }
    }

    /// `delta^2 = p + q*delta` for the quadratic kinds.
    fn relation(self) -> Option<(i64, i64)> {
        match self {
            ScalarField::QuadraticRoot2 => Some((2, 0)),
            ScalarField::QuadraticGolden => Some((1, 1)),
            ScalarField::QuadraticRoot3 => Some((3, 0)),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScalarField::Rational => "rational",
            ScalarField::QuadraticRoot2 => "quadratic-root2",
            ScalarField::QuadraticGolden => "quadratic-golden",
            ScalarField::QuadraticRoot3 => "quadratic-root3",
            ScalarField::GenericDelta => "generic-delta",
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self, r: BigRational) -> Scalar {
        let value = match self {
            ScalarField::GenericDelta => Value::Func(Poly::constant(r), Poly::one()),
            _ => Value::Quad(r, BigRational::zero()),
        };
        Scalar { field: self, value }
    }

    /// The modulus itself.
    pub fn delta(self) -> Scalar {
        let value = match self {
            ScalarField::Rational => Value::Quad(BigRational::one(), BigRational::zero()),
            ScalarField::GenericDelta => Value::Func(Poly::monomial(1), Poly::one()),
            _ => Value::Quad(BigRational::zero(), BigRational::one()),
        };
        Scalar { field: self, value }
    }

    /// `delta^e` for any integer exponent.
    pub fn delta_pow(self, e: i64) -> Scalar {
        self.delta().pow(e)
    }

    /// Parse the text form produced by `Scalar`'s `Display`.
    pub fn parse(self, text: &str) -> Result<Scalar, ExactError> {
        let text = text.trim();
        let bad = || ExactError::Parse(text.to_string());
        if self == ScalarField::GenericDelta {
            if let Some((num, den)) = split_fraction(text) {
                let n = parse_poly(num).ok_or_else(bad)?;
                let d = parse_poly(den).ok_or_else(bad)?;
                if d.is_zero() {
                    return Err(bad());
                }
                return Ok(Scalar::from_func(n, d));
            }
            let n = parse_poly(text).ok_or_else(bad)?;
            return Ok(Scalar::from_func(n, Poly::one()));
        }
        let p = parse_poly(text).ok_or_else(bad)?;
        Ok(self.reduce_poly(&p))
    }

    /// Reduce a polynomial in `delta` into this (non-generic) field.
    fn reduce_poly(self, p: &Poly) -> Scalar {
        let d = self.delta();
        let mut acc = self.zero();
        let mut power = self.one();
        for c in p.coeffs() {
            acc = &acc + &(&power * &self.from_rational(c.clone()));
            power = &power * &d;
        }
        acc
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalarField {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            ScalarField::Rational,
            ScalarField::QuadraticRoot2,
            ScalarField::QuadraticGolden,
            ScalarField::QuadraticRoot3,
            ScalarField::GenericDelta,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| ExactError::Parse(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    /// `a + b*delta`, with `b = 0` always for `Rational`.
    Quad(BigRational, BigRational),
    /// `num / den` with `den` monic and coprime to `num`.
    Func(Poly, Poly),
}

/// An exact element of a [`ScalarField`], stored in canonical reduced form
/// so that structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: ScalarField,
    value: Value,
}

impl Scalar {
    fn from_func(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return ScalarField::GenericDelta.zero();
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().unwrap().recip();
        Scalar {
            field: ScalarField::GenericDelta,
            value: Value::Func(n.scale(&lead), d.scale(&lead)),
        }
    }

    fn quad(field: ScalarField, a: BigRational, b: BigRational) -> Scalar {
        if field == ScalarField::Rational {
            Scalar { field, value: Value::Quad(a + b, BigRational::zero()) }
        } else {
            Scalar { field, value: Value::Quad(a, b) }
        }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Quad(a, b) => a.is_zero() && b.is_zero(),
            Value::Func(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Coefficients `(a, b)` of `a + b*delta` for the quadratic kinds.
    pub fn quadratic_parts(&self) -> Option<(&BigRational, &BigRational)> {
        match &self.value {
            Value::Quad(a, b) => Some((a, b)),
            Value::Func(..) => None,
        }
    }

    /// Rational value, when the scalar lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Quad(a, b) if b.is_zero() => Some(a.clone()),
            Value::Func(n, d) if d.is_one() && n.degree().unwrap_or(0) == 0 => {
                Some(n.coeffs().first().cloned().unwrap_or_else(BigRational::zero))
            }
            _ => None,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field, other.field, "scalars from different fields");
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match (&self.value, self.field.relation()) {
            (Value::Quad(a, _), None) => Scalar::quad(self.field, a.recip(), BigRational::zero()),
            (Value::Quad(a, b), Some((p, q))) => {
                let p = BigRational::from_integer(p.into());
                let q = BigRational::from_integer(q.into());
                let norm = a * a + a * b * &q - b * b * &p;
                let re = (a + b * &q) / &norm;
                let im = -(b / &norm);
                Scalar::quad(self.field, re, im)
            }
            (Value::Func(n, d), _) => Scalar::from_func(d.clone(), n.clone()),
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut result = self.field.one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        result
    }

    /// Sign under the real embedding with `delta > 0`. `None` for the
    /// generic field, where no embedding is fixed.
    pub fn signum(&self) -> Option<Ordering> {
        let Value::Quad(a, b) = &self.value else {
            return None;
        };
        // Rewrite as u + v*sqrt(d).
        let (u, v, d): (BigRational, BigRational, i64) = match self.field {
            ScalarField::Rational => (a.clone(), BigRational::zero(), 1),
            ScalarField::QuadraticRoot2 => (a.clone(), b.clone(), 2),
            ScalarField::QuadraticRoot3 => (a.clone(), b.clone(), 3),
            ScalarField::QuadraticGolden => {
                let half = BigRational::new(1.into(), 2.into());
                (a + b * &half, b * &half, 5)
            }
            ScalarField::GenericDelta => unreachable!(),
        };
        let su = u.signum();
        let sv = v.signum();
        let zero = BigRational::zero();
        let cmp = |x: &BigRational| x.cmp(&zero);
        if sv.is_zero() {
            return Some(cmp(&su));
        }
        if su.is_zero() || su == sv {
            return Some(cmp(&sv));
        }
        // Opposite signs: compare u^2 with v^2 d.
        let lhs = &u * &u;
        let rhs = &v * &v * BigRational::from_integer(d.into());
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => cmp(&su),
            Ordering::Less => cmp(&sv),
            Ordering::Equal => Ordering::Equal,
        })
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Some(Ordering::Greater)
    }

    /// Approximate real value (for reports only).
    pub fn to_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        let Value::Quad(a, b) = &self.value else {
            return None;
        };
        let delta = match self.field {
            ScalarField::Rational => 1.0,
            ScalarField::QuadraticRoot2 => 2f64.sqrt(),
            ScalarField::QuadraticGolden => (1.0 + 5f64.sqrt()) / 2.0,
            ScalarField::QuadraticRoot3 => 3f64.sqrt(),
            ScalarField::GenericDelta => return None,
        };
        Some(a.to_f64()? + b.to_f64()? * delta)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.value, &rhs.value) {
            (Value::Quad(a, b), Value::Quad(c, d)) => Scalar::quad(self.field, a + c, b + d),
            (Value::Func(n1, d1), Value::Func(n2, d2)) => {
                if d1 == d2 {
                    Scalar::from_func(n1.add(n2), d1.clone())
                } else {
                    Scalar::from_func(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let value = match &self.value {
            Value::Quad(a, b) => Value::Quad(-a, -b),
            Value::Func(n, d) => Value::Func(n.neg(), d.clone()),
        };
        Scalar { field: self.field, value }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.value, &rhs.value) {
            (Value::Quad(a, b), Value::Quad(c, d)) => match self.field.relation() {
                None => Scalar::quad(self.field, a * c, BigRational::zero()),
                Some((p, q)) => {
                    let bd = b * d;
                    let re = a * c + &bd * BigRational::from_integer(p.into());
                    let im = a * d + b * c + &bd * BigRational::from_integer(q.into());
                    Scalar::quad(self.field, re, im)
                }
            },
            (Value::Func(n1, d1), Value::Func(n2, d2)) => {
                if n1.is_zero() || n2.is_zero() {
                    return ScalarField::GenericDelta.zero();
                }
                Scalar::from_func(n1.mul(n2), d1.mul(d2))
            }
            _ => unreachable!(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom() == &BigInt::one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Quad(a, b) => {
                if self.field == ScalarField::Rational {
                    return write!(f, "{}", fmt_rational(a));
                }
                if b.is_negative() {
                    write!(f, "{} - {}*delta", fmt_rational(a), fmt_rational(&-b))
                } else {
                    write!(f, "{} + {}*delta", fmt_rational(a), fmt_rational(b))
                }
            }
            Value::Func(n, d) => {
                if d.is_one() {
                    write!(f, "{n}")
                } else {
                    write!(f, "({n})/({d})")
                }
            }
        }
    }
}

/// Split `(num)/(den)` at the top-level slash that sits between parentheses.
fn split_fraction(text: &str) -> Option<(&str, &str)> {
    let t = text.trim();
    if !t.starts_with('(') {
        return None;
    }
    let mut depth = 0i32;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let rest = t[i + 1..].trim_start();
                    let den = rest.strip_prefix('/')?.trim();
                    let num = &t[1..i];
                    let den = den.strip_prefix('(')?.strip_suffix(')')?;
                    return Some((num, den));
                }
            }
            _ => {}
        }
    }
    None
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parse a sum of terms `c`, `c*delta`, `delta`, `c*delta^k`, `delta^k`.
fn parse_poly(text: &str) -> Option<Poly> {
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                    neg = ch == '-';
                } else if ch == '-' {
                    neg = !neg;
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        terms.push((neg, cur));
    }
    if terms.is_empty() {
        return None;
    }
    let mut acc = Poly::zero();
    for (neg, term) in terms {
        let (coeff, power) = if let Some(idx) = term.find("delta") {
            let coeff_text = term[..idx].trim_end_matches('*');
            let coeff = if coeff_text.is_empty() { BigRational::one() } else { parse_rational(coeff_text)? };
            let rest = &term[idx + "delta".len()..];
            let power = match rest.strip_prefix('^') {
                Some(p) => p.parse::<usize>().ok()?,
                None if rest.is_empty() => 1,
                None => return None,
            };
            (coeff, power)
        } else {
            (parse_rational(&term)?, 0)
        };
        let coeff = if neg { -coeff } else { coeff };
        acc = acc.add(&Poly::monomial(power).scale(&coeff));
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUAD: [ScalarField; 4] = [
        ScalarField::Rational,
        ScalarField::QuadraticRoot2,
        ScalarField::QuadraticGolden,
        ScalarField::QuadraticRoot3,
    ];

    #[test]
    fn delta_squares_follow_minimal_polynomial() {
        let d = ScalarField::QuadraticRoot2.delta();
        assert_eq!(&d * &d, ScalarField::QuadraticRoot2.from_int(2));
        let g = ScalarField::QuadraticGolden.delta();
        assert_eq!(&g * &g, &g + &ScalarField::QuadraticGolden.one());
        let r = ScalarField::QuadraticRoot3.delta();
        assert_eq!(&r * &r, ScalarField::QuadraticRoot3.from_int(3));
        assert!(ScalarField::Rational.delta().is_one());
    }

    #[test]
    fn delta_times_inverse_is_one() {
        for f in QUAD.into_iter().chain([ScalarField::GenericDelta]) {
            let d = f.delta();
            assert!((&d * &d.inv().unwrap()).is_one(), "{f}");
        }
    }

    #[test]
    fn golden_inverse_is_delta_minus_one() {
        let f = ScalarField::QuadraticGolden;
        assert_eq!(f.delta().inv().unwrap(), f.delta() - f.one());
    }

    #[test]
    fn signs_under_real_embedding() {
        let f = ScalarField::QuadraticRoot2;
        // 3 - 2*sqrt2 > 0, 1 - sqrt2 < 0
        let a = f.parse("3 - 2*delta").unwrap();
        let b = f.parse("1 - delta").unwrap();
        assert!(a.is_positive());
        assert_eq!(b.signum(), Some(Ordering::Less));
        // golden: delta - 2 < 0, delta^2 - delta - 1 = 0
        let g = ScalarField::QuadraticGolden;
        assert_eq!(g.parse("-2 + delta").unwrap().signum(), Some(Ordering::Less));
        assert_eq!(g.parse("delta^2 - delta - 1").unwrap().signum(), Some(Ordering::Equal));
    }

    #[test]
    fn text_round_trip() {
        for f in QUAD {
            let x = f.parse("-3/4 + 5/2*delta").unwrap();
            assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        }
        let g = ScalarField::GenericDelta;
        let x = g.delta().pow(-2) + g.from_int(3);
        assert_eq!(x.to_string(), "(3*delta^2 + 1)/(delta^2)");
        assert_eq!(g.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn generic_fractions_reduce() {
        let g = ScalarField::GenericDelta;
        let d = g.delta();
        let one = g.one();
        // (delta^2 - 1)/(delta - 1) = delta + 1
        let num = &(&d * &d) - &one;
        let den = &d - &one;
        assert_eq!(num.div(&den).unwrap(), &d + &one);
    }
}
