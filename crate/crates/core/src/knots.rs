//! Knots described by algebraic data and their Alexander polynomials.
//!
//! A knot is either a named family member (unknot, torus knot, twist knot),
//! an explicit Seifert matrix, or a connected sum of two knots. Alexander
//! polynomials are returned in symmetric form: palindromic with a positive
//! top coefficient.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::intmat::IntMatrix;
use crate::laurent::{LaurentError, LaurentPoly};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifertMatrix(String),
    #[error("invalid knot: {0}")]
    InvalidKnot(String),
    #[error("Alexander polynomial {poly} has Δ(1) = {value}, expected ±1")]
    BadNormalization { poly: String, value: BigInt },
    #[error("knot syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Square integer matrix of even size `2g` whose antisymmetrization
/// `V - Vᵀ` is unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, KnotError> {
        if m.nrows() != m.ncols() {
            return Err(KnotError::InvalidSeifertMatrix(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        if !m.nrows().is_multiple_of(2) {
            return Err(KnotError::InvalidSeifertMatrix(format!("size {} is odd", m.nrows())));
        }
        let n = m.nrows();
        let mut form = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                form.set(i, j, m.get(i, j) - m.get(j, i));
            }
        }
        let det = form.determinant();
        if det.abs() != BigInt::one() {
            return Err(KnotError::InvalidSeifertMatrix(format!("det(V - Vᵀ) = {det}, expected ±1")));
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, KnotError> {
        let m = IntMatrix::from_rows(rows.len(), rows).map_err(|e| KnotError::InvalidSeifertMatrix(e.to_string()))?;
        Self::new(m)
    }

    /// Seifert matrix of the `(2, q)` torus knot, `q` odd: `-1` on the
    /// diagonal and `1` on the superdiagonal.
    pub fn torus_two(q: i64) -> Result<Self, KnotError> {
        if q < 3 || q % 2 == 0 {
            return Err(KnotError::InvalidKnot(format!("T(2,{q}) needs odd q >= 3")));
        }
        let n = (q - 1) as usize;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match j as i64 - i as i64 {
                        0 => -1,
                        1 => 1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }

    /// Seifert matrix `[[-1, 1], [0, n]]` of the twist knot with `n` full twists.
    pub fn twist(n: i64) -> Result<Self, KnotError> {
        Self::from_rows(&[vec![-1, 1], vec![0, n]])
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn genus(&self) -> usize {
        self.0.nrows() / 2
    }

    /// `det(V - t·Vᵀ)` before normalization.
    pub fn alexander_determinant(&self) -> LaurentPoly {
        let n = self.0.nrows();
        let entries: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let constant = LaurentPoly::monomial(self.0.get(i, j).clone(), 0);
                        let linear = LaurentPoly::monomial(self.0.get(j, i).clone(), 1);
                        &constant - &linear
                    })
                    .collect()
            })
            .collect();
        poly_determinant(entries)
    }
}

/// Bareiss elimination over `ℤ[t, t⁻¹]`; every division is exact.
fn poly_determinant(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Algebraic description of a knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Knot {
    Unknot,
    Torus { p: i64, q: i64 },
    Twist(i64),
    Seifert(SeifertMatrix),
    Sum(Box<Knot>, Box<Knot>),
}

impl Knot {
    pub fn torus(p: i64, q: i64) -> Result<Self, KnotError> {
        let k = Knot::Torus { p, q };
        k.validate()?;
        Ok(k)
    }

    pub fn sum(a: Knot, b: Knot) -> Self {
        Knot::Sum(Box::new(a), Box::new(b))
    }

    /// `K # K`.
    pub fn doubled(&self) -> Self {
        Knot::sum(self.clone(), self.clone())
    }

    pub fn validate(&self) -> Result<(), KnotError> {
        match self {
            Knot::Unknot | Knot::Seifert(_) => Ok(()),
            Knot::Torus { p, q } => {
                if *p < 2 || *q < 2 {
                    Err(KnotError::InvalidKnot(format!("torus:{p},{q} needs p, q >= 2")))
                } else if !p.gcd(q).is_one() {
                    Err(KnotError::InvalidKnot(format!("torus:{p},{q} needs gcd(p, q) = 1")))
                } else {
                    Ok(())
                }
            }
            Knot::Twist(n) if *n == 0 => Err(KnotError::InvalidKnot("twist:0 is the unknot; use n != 0".into())),
            Knot::Twist(_) => Ok(()),
            Knot::Sum(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    pub fn alexander(&self) -> Result<LaurentPoly, KnotError> {
        alexander(self)
    }
}

/// Symmetric-normalized Alexander polynomial, checked to satisfy `Δ(1) = ±1`.
pub fn alexander(k: &Knot) -> Result<LaurentPoly, KnotError> {
    k.validate()?;
    let raw = match k {
        Knot::Unknot => LaurentPoly::one(),
        Knot::Torus { p, q } => torus_alexander(*p, *q)?,
        Knot::Twist(n) => twist_alexander(*n)?,
        Knot::Seifert(v) => v.alexander_determinant(),
        Knot::Sum(a, b) => &alexander(a)? * &alexander(b)?,
    };
    let poly = raw.symmetric_normalize()?;
    let value = poly.eval_at_one();
    if value.abs() != BigInt::one() {
        return Err(KnotError::BadNormalization { poly: poly.to_string(), value });
    }
    Ok(poly)
}

/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, normalized.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly, KnotError> {
    Knot::Torus { p, q }.validate()?;
    let unit_minus = |e: i64| &LaurentPoly::monomial(1, e) - &LaurentPoly::one();
    let num = &unit_minus(p * q) * &unit_minus(1);
    let den = &unit_minus(p) * &unit_minus(q);
    Ok(num.div_exact(&den)?.symmetric_normalize()?)
}

/// Twist-knot polynomial from the Seifert matrix `[[-1, 1], [0, n]]`;
/// equals `n·t - (2n+1) + n·t⁻¹` up to the sign fixed by normalization.
pub fn twist_alexander(n: i64) -> Result<LaurentPoly, KnotError> {
    if n == 0 {
        return Err(KnotError::InvalidKnot("twist:0 is the unknot; use n != 0".into()));
    }
    Ok(SeifertMatrix::twist(n)?.alexander_determinant().symmetric_normalize()?)
}

/// `[T(2,3), T(2,5), …, T(2, 2·n_max + 1)]`, with the strictly increasing
/// degree spans `2, 4, …, 2·n_max` checked before returning.
pub fn torus_family(n_max: usize) -> Result<Vec<Knot>, KnotError> {
    if n_max == 0 {
        return Err(KnotError::InvalidKnot("torus family needs n_max >= 1".into()));
    }
    let family: Vec<Knot> = (1..=n_max as i64).map(|n| Knot::Torus { p: 2, q: 2 * n + 1 }).collect();
    let mut last = -1;
    for k in &family {
        let span = alexander(k)?.degree_span()?;
        if span <= last {
            return Err(KnotError::InvalidKnot(format!("family spans not increasing at {k}")));
        }
        last = span;
    }
    Ok(family)
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Knot::Unknot => f.write_str("unknot"),
            Knot::Torus { p, q } => write!(f, "torus:{p},{q}"),
            Knot::Twist(n) => write!(f, "twist:{n}"),
            Knot::Seifert(v) => {
                f.write_str("seifert:[")?;
                for (i, row) in v.matrix().to_rows().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    write!(f, "[{}]", cells.join(","))?;
                }
                f.write_str("]")
            }
            Knot::Sum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

impl FromStr for Knot {
    type Err = KnotError;

    /// Grammar: `unknot | torus:p,q | twist:n | seifert:[[..],..] | sum(K,K)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = KnotParser { src: s.as_bytes(), pos: 0 };
        let k = p.knot()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("trailing input");
        }
        k.validate()?;
        Ok(k)
    }
}

struct KnotParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl KnotParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, KnotError> {
        Err(KnotError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), KnotError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(&format!("expected '{token}'"))
        }
    }

    fn int(&mut self) -> Result<i64, KnotError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn knot(&mut self) -> Result<Knot, KnotError> {
        if self.eat("unknot") {
            Ok(Knot::Unknot)
        } else if self.eat("torus:") {
            let p = self.int()?;
            self.expect(",")?;
            let q = self.int()?;
            Ok(Knot::Torus { p, q })
        } else if self.eat("twist:") {
            Ok(Knot::Twist(self.int()?))
        } else if self.eat("seifert:") {
            let start = self.pos;
            let rows = self.matrix()?;
            SeifertMatrix::from_rows(&rows).map(Knot::Seifert).map_err(|e| match e {
                KnotError::InvalidSeifertMatrix(m) => KnotError::InvalidSeifertMatrix(format!("{m} (at byte {start})")),
                other => other,
            })
        } else if self.eat("sum(") {
            let a = self.knot()?;
            self.expect(",")?;
            let b = self.knot()?;
            self.expect(")")?;
            Ok(Knot::sum(a, b))
        } else {
            self.err("expected unknot, torus:, twist:, seifert: or sum(")
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, KnotError> {
        self.expect("[")?;
        let mut rows = Vec::new();
        if self.eat("]") {
            return Ok(rows);
        }
        loop {
            self.expect("[")?;
            let mut row = vec![self.int()?];
            while self.eat(",") {
                row.push(self.int()?);
            }
            self.expect("]")?;
            rows.push(row);
            if self.eat("]") {
                return Ok(rows);
            }
            self.expect(",")?;
        }
    }
}

impl Serialize for Knot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Knot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
