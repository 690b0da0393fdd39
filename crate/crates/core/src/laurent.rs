//! Integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are arbitrary precision and the representation is canonical:
//! a sorted map from exponent to a nonzero coefficient. Two polynomials are
//! equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigjson::JsonInt;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("no unit multiple ±t^k of {0} is palindromic")]
    NotSymmetrizable(String),
    #[error("division does not leave a zero remainder")]
    NonExactDivision,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_terms([(exp, coeff.into())])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_default() += c.into();
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    /// Coefficients listed from exponent `low` upwards.
    pub fn from_coeffs_ascending<C: Into<BigInt>>(low: i64, coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (low + i as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn degree_span(&self) -> Result<i64, LaurentError> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(LaurentError::ZeroPolynomial),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// The polynomial `p(t⁻¹)`.
    pub fn invert_variable(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_variable()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Returns `u·p` for the unique unit `u = ±t^k` making the result
    /// palindromic with a positive top coefficient.
    ///
    /// Every shift in the exponent range is tried; a failure means the input
    /// cannot be an Alexander polynomial.
    pub fn symmetric_normalize(&self) -> Result<Self, LaurentError> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::ZeroPolynomial),
        };
        for k in -hi..=-lo {
            let shifted = self.shift(k);
            if !shifted.is_palindromic() {
                continue;
            }
            let top = shifted.coeffs.values().next_back().expect("nonzero");
            return Ok(if top.is_negative() { -shifted } else { shifted });
        }
        Err(LaurentError::NotSymmetrizable(self.to_string()))
    }

    /// Exact quotient `self / divisor`. Fails unless the divisor divides
    /// with zero remainder in `ℤ[t, t⁻¹]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::ZeroPolynomial),
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some(rhi) = rem.max_exp() {
            let rlo = rem.min_exp().expect("nonzero");
            if rhi - rlo < dhi - dlo {
                return Err(LaurentError::NonExactDivision);
            }
            let (q, r) = rem.coeff(rhi).div_rem(&lead);
            if !r.is_zero() {
                return Err(LaurentError::NonExactDivision);
            }
            let e = rhi - dhi;
            rem = &rem - &divisor.shift(e).scale(&q);
            quotient.insert(e, q);
        }
        Ok(Self { coeffs: quotient })
    }

    /// Explicit ascending form `c*t^e + ... + c*t^e`; `0` for zero.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|(e, c)| format!("{c}*t^{e}")).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending human form, e.g. `t^2 - 2t + 3 - 2t^-1 + t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if *e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts both the explicit form produced by [`LaurentPoly::to_text`]
    /// and the human form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TermParser { src: s.as_bytes(), pos: 0 }.parse()
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sign(&mut self) -> bool {
        let mut negative = false;
        while let Some(b @ (b'+' | b'-')) = self.peek() {
            negative ^= b == b'-';
            self.pos += 1;
        }
        negative
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        loop {
            let negative = self.sign();
            let coeff = self.digits().map(|d| d.parse::<BigInt>().expect("digits"));
            if self.peek() == Some(b'*') {
                if coeff.is_none() {
                    return self.err("'*' without coefficient");
                }
                self.pos += 1;
            }
            let exp = if self.peek() == Some(b't') {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg_exp = self.sign();
                    let Some(d) = self.digits() else {
                        return self.err("expected exponent");
                    };
                    let Ok(e) = d.parse::<i64>() else {
                        return self.err("exponent out of range");
                    };
                    if neg_exp {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                }
            } else if coeff.is_some() {
                0
            } else {
                return self.err("expected a term");
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            terms.push((exp, c));
            match self.peek() {
                None => break,
                Some(b'+' | b'-') => {}
                Some(_) => return self.err("expected '+' or '-' between terms"),
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &rhs.coeffs {
            *coeffs.entry(*e).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                *coeffs.entry(ea + eb).or_default() += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// JSON form: `{"exp": coeff}` with string keys. Coefficients that do not
/// fit in an `i64` are written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &JsonInt(c.clone()))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, JsonInt>()? {
                    let e: i64 = k.trim().parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    terms.push((e, v.0));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Schoolbook convolution over dense vectors, independent of the map path.
    fn brute_mul(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
        let mut dense = [0i64; 17];
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                dense[(ea + eb + 8) as usize] += ca * cb;
            }
        }
        dense.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i as i64 - 8, *c)).collect()
    }

    #[test]
    fn add_examples() {
        assert!((&p("t - 1") + &p("1 - t")).is_zero());
        assert_eq!(&p("t + t^-1") + &p("t"), p("2t + t^-1"));
    }

    #[test]
    fn mul_examples() {
        let trefoil = p("t - 1 + t^-1");
        assert_eq!(&trefoil * &trefoil, p("t^2 - 2t + 3 - 2t^-1 + t^-2"));
        assert_eq!(&trefoil * &LaurentPoly::one(), trefoil);
        assert!((&trefoil * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(p("t - 1 + t^-1").eval_at_one(), BigInt::from(1));
        assert_eq!(LaurentPoly::zero().eval_at_one(), BigInt::from(0));
        assert_eq!(p("t^2 - 2t + 3 - 2t^-1 + t^-2").eval_at_one(), BigInt::from(1));
    }

    #[test]
    fn symmetric_normalize_examples() {
        assert!(matches!(p("-t^2 + t").symmetric_normalize(), Err(LaurentError::NotSymmetrizable(_))));
        assert!(matches!(p("t^2 - t").symmetric_normalize(), Err(LaurentError::NotSymmetrizable(_))));
        // even span but not palindromic
        assert!(matches!(p("t^2 + 2t + 3").symmetric_normalize(), Err(LaurentError::NotSymmetrizable(_))));
        assert_eq!(p("-t + 1 - t^-1").symmetric_normalize().unwrap(), p("t - 1 + t^-1"));
        assert_eq!(p("t^5 - t^4 + t^3").symmetric_normalize().unwrap(), p("t - 1 + t^-1"));
        assert_eq!(LaurentPoly::zero().symmetric_normalize(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn degree_span_examples() {
        assert_eq!(p("t - 1 + t^-1").degree_span(), Ok(2));
        assert_eq!(LaurentPoly::one().degree_span(), Ok(0));
        assert_eq!(p("t^5 + t^-5").degree_span(), Ok(10));
        assert_eq!(LaurentPoly::zero().degree_span(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let num = p("t^6 - 1");
        let den = p("t^2 - 1");
        assert_eq!(num.div_exact(&den).unwrap(), p("t^4 + t^2 + 1"));
        assert_eq!(p("t^3 + 1").div_exact(&p("t - 1")), Err(LaurentError::NonExactDivision));
        assert_eq!(p("2t").div_exact(&p("3")), Err(LaurentError::NonExactDivision));
    }

    #[test]
    fn text_forms() {
        let q = p("t^2 - 2t + 3 - 2t^-1 + t^-2");
        assert_eq!(q.to_string(), "t^2 - 2t + 3 - 2t^-1 + t^-2");
        assert_eq!(q.to_text(), "1*t^-2 + -2*t^-1 + 3*t^0 + -2*t^1 + 1*t^2");
        assert_eq!(p(&q.to_text()), q);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly::zero());
        assert_eq!(p("-t"), LaurentPoly::monomial(-1, 1));
        assert!(matches!("t ^".parse::<LaurentPoly>(), Err(LaurentError::Parse { .. })));
        assert!(matches!("3 x".parse::<LaurentPoly>(), Err(LaurentError::Parse { pos: 2, .. })));
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let q = p("t^2 - 2t + 3");
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, r#"{"0":3,"1":-2,"2":1}"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
        let big = LaurentPoly::monomial(BigInt::from(i64::MAX) * 4, -3);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    fn small_terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-4i64..=4, -3i64..=3), 0..6)
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        small_terms().prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn mul_matches_brute_force(a in small_terms(), b in small_terms()) {
            let pa = LaurentPoly::from_terms(a.clone());
            let pb = LaurentPoly::from_terms(b.clone());
            prop_assert_eq!(&pa * &pb, LaurentPoly::from_terms(brute_mul(&a, &b)));
        }

        #[test]
        fn degree_span_additive(a in poly(), b in poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree_span().unwrap(), a.degree_span().unwrap() + b.degree_span().unwrap());
        }

        #[test]
        fn normalize_idempotent(a in poly(), k in -5i64..5, neg in any::<bool>()) {
            prop_assume!(!a.is_zero());
            let sym = &a * &a.invert_variable();
            let mut u = sym.shift(k);
            if neg { u = -u; }
            let n = u.symmetric_normalize().unwrap();
            prop_assert_eq!(n.symmetric_normalize().unwrap(), n.clone());
            let mut before: Vec<BigInt> = u.terms().map(|(_, c)| c.abs()).collect();
            let mut after: Vec<BigInt> = n.terms().map(|(_, c)| c.abs()).collect();
            before.sort();
            after.sort();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn division_inverts_mul(a in poly(), b in poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in poly()) {
            prop_assert_eq!(a.to_text().parse::<LaurentPoly>().unwrap(), a.clone());
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
