//! Formal Seiberg–Witten invariants as group-ring elements over a homology
//! lattice, and the torus-surgery product formula acting on them.
//!
//! A [`HomologyLattice`] is `ℤ^rank` modulo the integer span of a list of
//! relation vectors. Classes are stored as canonical representatives
//! (reduced against the Hermite form of the relations), so structural
//! equality of [`HClass`] values is equality in the quotient.
//!
//! Surgery along a torus `T` with a knot polynomial `Δ(t)` multiplies the
//! invariant by `Δ` under `tⁿ ↦ 2n·[T]`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigjson::{self, JsonInt};
use crate::intmat::{self, IntMatError};
use crate::knots::{self, Knot, KnotError};
use crate::laurent::LaurentPoly;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SwError {
    #[error("torus class {0:?} has finite order; the product formula does not apply")]
    TorsionTorusClass(Vec<BigInt>),
    #[error("class vector has length {found}, lattice rank is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lattice rank must be at least 1")]
    ZeroRank,
    #[error("surgery needs at least one torus")]
    NoTori,
    #[error("knot polynomial {0} is not in symmetric normal form")]
    DeltaNotNormalized(String),
    #[error("base Seiberg-Witten invariant is zero")]
    ZeroBase,
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Matrix(#[from] IntMatError),
}

/// `ℤ^rank / ⟨relations⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyLattice {
    rank: usize,
    relations: Vec<Vec<BigInt>>,
    /// Hermite basis of the relation span with the pivot column of each row.
    reducer: Vec<(usize, Vec<BigInt>)>,
}

impl HomologyLattice {
    pub fn free(rank: usize) -> Result<Self, SwError> {
        Self::with_relations(rank, Vec::new())
    }

    pub fn with_relations(rank: usize, relations: Vec<Vec<BigInt>>) -> Result<Self, SwError> {
        if rank == 0 {
            return Err(SwError::ZeroRank);
        }
        let hermite = intmat::hermite_rows(rank, &relations).map_err(|e| match e {
            IntMatError::DimensionMismatch { expected, found } => SwError::DimensionMismatch { expected, found },
            other => SwError::Matrix(other),
        })?;
        let reducer = hermite
            .into_iter()
            .map(|row| {
                let pivot = row.iter().position(|x| !x.is_zero()).expect("Hermite rows are nonzero");
                (pivot, row)
            })
            .collect();
        Ok(Self { rank, relations, reducer })
    }

    /// Lattice of the `d`-fold cover model: `ℤ^d` with the single relation
    /// `e₁ + … + e_d = 0`.
    pub fn cover(d: usize) -> Result<Self, SwError> {
        Self::with_relations(d, vec![vec![BigInt::one(); d]])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    pub fn class(&self, v: &[BigInt]) -> Result<HClass, SwError> {
        if v.len() != self.rank {
            return Err(SwError::DimensionMismatch { expected: self.rank, found: v.len() });
        }
        let mut out = v.to_vec();
        for (pivot, row) in &self.reducer {
            let q = out[*pivot].div_floor(&row[*pivot]);
            if q.is_zero() {
                continue;
            }
            for (x, r) in out.iter_mut().zip(row) {
                *x -= &q * r;
            }
        }
        Ok(HClass(out))
    }

    pub fn class_i64(&self, v: &[i64]) -> Result<HClass, SwError> {
        self.class(&intmat::to_big(v))
    }

    pub fn zero(&self) -> HClass {
        HClass(vec![BigInt::zero(); self.rank])
    }

    /// The `i`-th standard generator.
    pub fn basis(&self, i: usize) -> HClass {
        let mut v = vec![BigInt::zero(); self.rank];
        v[i] = BigInt::one();
        self.class(&v).expect("rank matches")
    }

    pub fn add(&self, a: &HClass, b: &HClass) -> HClass {
        let v: Vec<BigInt> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.class(&v).expect("rank matches")
    }

    pub fn scale(&self, a: &HClass, k: &BigInt) -> HClass {
        let v: Vec<BigInt> = a.0.iter().map(|x| x * k).collect();
        self.class(&v).expect("rank matches")
    }

    pub fn negate(&self, a: &HClass) -> HClass {
        self.scale(a, &BigInt::from(-1))
    }

    /// True iff no positive multiple of `c` is zero, i.e. `c` is outside the
    /// rational span of the relations.
    pub fn has_infinite_order(&self, c: &HClass) -> bool {
        !intmat::in_rational_span(&self.relations, &c.0).expect("rank matches")
    }
}

/// Canonical representative of a lattice class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HClass(Vec<BigInt>);

impl HClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

pub fn has_infinite_order(lattice: &HomologyLattice, c: &HClass) -> bool {
    lattice.has_infinite_order(c)
}

/// Finitely supported integer function on a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwPolynomial {
    lattice: HomologyLattice,
    terms: BTreeMap<HClass, BigInt>,
}

impl SwPolynomial {
    pub fn zero(lattice: HomologyLattice) -> Self {
        Self { lattice, terms: BTreeMap::new() }
    }

    /// `{0 ↦ 1}`: a single basic class at the origin.
    pub fn k3_like(lattice: HomologyLattice) -> Self {
        let z = lattice.zero();
        Self { lattice, terms: BTreeMap::from([(z, BigInt::one())]) }
    }

    /// Canonicalizes every class vector and sums coefficients that collide.
    pub fn from_terms<C: Into<BigInt>>(
        lattice: HomologyLattice,
        terms: impl IntoIterator<Item = (Vec<BigInt>, C)>,
    ) -> Result<Self, SwError> {
        let mut out = Self::zero(lattice);
        for (v, c) in terms {
            let class = out.lattice.class(&v)?;
            out.add_term(class, c.into());
        }
        Ok(out)
    }

    fn add_term(&mut self, class: HClass, c: BigInt) {
        let slot = self.terms.entry(class).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn lattice(&self) -> &HomologyLattice {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, class: &HClass) -> BigInt {
        self.terms.get(class).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HClass, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Translate every class by `by`.
    pub fn shift(&self, by: &HClass) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (self.lattice.add(k, by), c.clone())).collect();
        Self { lattice: self.lattice.clone(), terms }
    }

    /// Invariance under conjugation `β ↦ -β`. Not enforced on inputs; the
    /// certificate records it.
    pub fn is_conjugation_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.coeff(&self.lattice.negate(k)) == *c)
    }

    fn accumulate(&mut self, other: &SwPolynomial, scale: &BigInt) {
        for (k, c) in &other.terms {
            *self.terms.entry(k.clone()).or_default() += c * scale;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }
}

/// The support of `sw`.
pub fn basic_classes(sw: &SwPolynomial) -> BTreeSet<HClass> {
    sw.terms.keys().cloned().collect()
}

/// `sw · Δ(t)` with `tⁿ ↦ 2n·[torus]`.
pub fn fs_surgery(sw: &SwPolynomial, torus: &HClass, delta: &LaurentPoly) -> Result<SwPolynomial, SwError> {
    if torus.0.len() != sw.lattice.rank {
        return Err(SwError::DimensionMismatch { expected: sw.lattice.rank, found: torus.0.len() });
    }
    // Re-canonicalize in case the class came from another lattice of equal rank.
    let torus = sw.lattice.class(&torus.0)?;
    if !sw.lattice.has_infinite_order(&torus) {
        return Err(SwError::TorsionTorusClass(torus.0));
    }
    check_normalized(delta)?;
    let mut out = SwPolynomial::zero(sw.lattice.clone());
    for (n, c) in delta.terms() {
        let offset = sw.lattice.scale(&torus, &BigInt::from(2 * n));
        out.accumulate(&sw.shift(&offset), c);
    }
    Ok(out)
}

fn check_normalized(delta: &LaurentPoly) -> Result<(), SwError> {
    match delta.symmetric_normalize() {
        Ok(n) if n == *delta => Ok(()),
        _ => Err(SwError::DeltaNotNormalized(delta.to_string())),
    }
}

/// Surgery along each torus in turn with the same polynomial.
pub fn multi_torus_surgery(sw: &SwPolynomial, tori: &[HClass], delta: &LaurentPoly) -> Result<SwPolynomial, SwError> {
    if tori.is_empty() {
        return Err(SwError::NoTori);
    }
    tori.iter().try_fold(sw.clone(), |acc, t| fs_surgery(&acc, t, delta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    pub relations: Vec<Vec<JsonInt>>,
}

impl From<&HomologyLattice> for LatticeJson {
    fn from(l: &HomologyLattice) -> Self {
        Self { rank: l.rank, relations: l.relations.iter().map(|r| bigjson::wrap_vec(r)).collect() }
    }
}

impl TryFrom<LatticeJson> for HomologyLattice {
    type Error = SwError;
    fn try_from(j: LatticeJson) -> Result<Self, SwError> {
        HomologyLattice::with_relations(j.rank, j.relations.into_iter().map(bigjson::unwrap_vec).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub class: Vec<JsonInt>,
    pub coeff: JsonInt,
}

impl SwPolynomial {
    pub fn terms_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(k, c)| TermJson { class: bigjson::wrap_vec(&k.0), coeff: JsonInt(c.clone()) }).collect()
    }

    pub fn from_terms_json(lattice: HomologyLattice, terms: Vec<TermJson>) -> Result<Self, SwError> {
        Self::from_terms(lattice, terms.into_iter().map(|t| (bigjson::unwrap_vec(t.class), t.coeff.0)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwPolynomialJson {
    pub lattice: LatticeJson,
    pub terms: Vec<TermJson>,
}

impl Serialize for SwPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SwPolynomialJson { lattice: (&self.lattice).into(), terms: self.terms_json() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SwPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SwPolynomialJson::deserialize(d)?;
        let lattice = HomologyLattice::try_from(j.lattice).map_err(serde::de::Error::custom)?;
        SwPolynomial::from_terms_json(lattice, j.terms).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub knot: Knot,
    /// Knot actually used for surgery (`K # K` unless doubling is off).
    pub surgery_knot: Knot,
    pub alexander: LaurentPoly,
    pub sw_terms: Vec<TermJson>,
    pub basic_class_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessCertificate {
    pub lattice: LatticeJson,
    pub tori: Vec<Vec<JsonInt>>,
    pub base_sw: Vec<TermJson>,
    pub base_conjugation_symmetric: bool,
    pub doubled: bool,
    pub normalization: String,
    pub entries: Vec<FamilyEntry>,
    /// `[i][j]` is true iff the invariants of knots `i` and `j` differ.
    pub pairwise_distinct: Vec<Vec<bool>>,
    /// Same, comparing only the number of basic classes.
    pub pairwise_count_distinct: Vec<Vec<bool>>,
    pub verdict: Verdict,
}

impl DistinctnessCertificate {
    pub fn counts(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.basic_class_count).collect()
    }

    pub fn counts_pairwise_distinct(&self) -> bool {
        all_off_diagonal(&self.pairwise_count_distinct)
    }
}

fn all_off_diagonal(m: &[Vec<bool>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &b)| i == j || b))
}

pub const NORMALIZATION: &str = "symmetric: Δ(t) = Δ(t⁻¹), positive top coefficient";

/// Applies the surgery for every knot (doubled to `K # K` unless
/// `doubled` is false) and compares the resulting invariants pairwise.
/// The verdict is `Pass` iff all pairs differ as polynomials.
pub fn certify_family_distinct(
    sw0: &SwPolynomial,
    tori: &[HClass],
    family: &[Knot],
    doubled: bool,
) -> Result<DistinctnessCertificate, SwError> {
    if sw0.is_zero() {
        return Err(SwError::ZeroBase);
    }
    if tori.is_empty() {
        return Err(SwError::NoTori);
    }
    for t in tori {
        let t = sw0.lattice.class(&t.0)?;
        if !sw0.lattice.has_infinite_order(&t) {
            return Err(SwError::TorsionTorusClass(t.0));
        }
    }

    let results: Vec<(Knot, LaurentPoly, SwPolynomial)> = family
        .par_iter()
        .map(|k| {
            let surgery_knot = if doubled { k.doubled() } else { k.clone() };
            let delta = knots::alexander(&surgery_knot)?;
            let sw = multi_torus_surgery(sw0, tori, &delta)?;
            Ok((surgery_knot, delta, sw))
        })
        .collect::<Result<_, SwError>>()?;

    let n = results.len();
    let mut pairwise_distinct = vec![vec![false; n]; n];
    let mut pairwise_count_distinct = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            pairwise_distinct[i][j] = results[i].2 != results[j].2;
            pairwise_count_distinct[i][j] = results[i].2.num_terms() != results[j].2.num_terms();
        }
    }
    let verdict = if all_off_diagonal(&pairwise_distinct) { Verdict::Pass } else { Verdict::Fail };

    let entries = family
        .iter()
        .zip(results)
        .map(|(k, (surgery_knot, alexander, sw))| FamilyEntry {
            knot: k.clone(),
            surgery_knot,
            alexander,
            basic_class_count: sw.num_terms(),
            sw_terms: sw.terms_json(),
        })
        .collect();

    Ok(DistinctnessCertificate {
        lattice: (&sw0.lattice).into(),
        tori: tori.iter().map(|t| bigjson::wrap_vec(&t.0)).collect(),
        base_sw: sw0.terms_json(),
        base_conjugation_symmetric: sw0.is_conjugation_symmetric(),
        doubled,
        normalization: NORMALIZATION.to_string(),
        entries,
        pairwise_distinct,
        pairwise_count_distinct,
        verdict,
    })
}
