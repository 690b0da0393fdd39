//! Presentations of `π₁` for the complement of a maximal-nest curve with
//! punctured complementary regions.
//!
//! Base group: `⟨a, b | aᵈbᵈ⟩`, with `a`, `b` loops around the two halves of
//! the complexified curve. Puncturing region `Rᵢ` adds `a^{d-i}bⁱ` and
//! `b^{d-i}aⁱ`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::fpgroups::{Presentation, Word};

const A: usize = 0;
const B: usize = 1;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum NestError {
    #[error("invalid nest configuration: {0}")]
    InvalidConfig(String),
}

/// Maximal nest of degree `d`: ovals `O₁ ⊂ … ⊂ O_k`, `k = ⌊d/2⌋`, with
/// complementary regions `R₀, …, R_k` (`R₀` inside `O₁`, `Rᵢ` the annulus
/// between `Oᵢ` and `O_{i+1}`, `R_k` outside). The membrane sits in region
/// `membrane_index`; the regions in `punctured` are removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestConfig {
    degree: usize,
    membrane_index: usize,
    punctured: BTreeSet<usize>,
}

impl NestConfig {
    pub fn new(
        degree: usize,
        membrane_index: usize,
        punctured: impl IntoIterator<Item = usize>,
    ) -> Result<Self, NestError> {
        let punctured: BTreeSet<usize> = punctured.into_iter().collect();
        if degree < 2 {
            return Err(NestError::InvalidConfig(format!("degree {degree} < 2")));
        }
        let k = degree / 2;
        if k < 2 {
            return Err(NestError::InvalidConfig(format!(
                "degree {degree} has {k} oval(s); a membrane needs an annulus between two ovals (degree >= 4)"
            )));
        }
        if membrane_index < 1 || membrane_index > k - 1 {
            return Err(NestError::InvalidConfig(format!("membrane index {membrane_index} outside [1, {}]", k - 1)));
        }
        if let Some(bad) = punctured.iter().find(|&&i| i > k) {
            return Err(NestError::InvalidConfig(format!("region {bad} does not exist (regions are 0..={k})")));
        }
        if punctured.contains(&membrane_index) {
            return Err(NestError::InvalidConfig(format!("membrane region {membrane_index} cannot be punctured")));
        }
        Ok(Self { degree, membrane_index, punctured })
    }

    /// Every region except the membrane's is punctured.
    pub fn all_but_membrane(degree: usize, membrane_index: usize) -> Result<Self, NestError> {
        let k = degree / 2;
        Self::new(degree, membrane_index, (0..=k).filter(|&i| i != membrane_index))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of ovals.
    pub fn ovals(&self) -> usize {
        self.degree / 2
    }

    pub fn membrane_index(&self) -> usize {
        self.membrane_index
    }

    pub fn punctured(&self) -> &BTreeSet<usize> {
        &self.punctured
    }
}

pub fn nest_presentation(c: &NestConfig) -> Presentation {
    let d = c.degree as i64;
    let mut relators = vec![Word::from_syllables(&[(A, d), (B, d)])];
    for &i in &c.punctured {
        let i = i as i64;
        let first = Word::from_syllables(&[(A, d - i), (B, i)]);
        let second = Word::from_syllables(&[(B, d - i), (A, i)]);
        relators.push(first.clone());
        if second != first {
            relators.push(second);
        }
    }
    Presentation::new(2, relators).expect("two generators")
}

/// Vertex bookkeeping of the lifted genetic graph of a maximal nest: `2d`
/// vertices in two components of `d` each, separated by a big circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneticNestModel {
    pub degree: usize,
}

/// Vertices of each component lying in one hemisphere of a big-circle cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HemisphereCut {
    pub from_a: usize,
    pub from_b: usize,
}

impl GeneticNestModel {
    pub fn component_sizes(&self) -> [usize; 2] {
        [self.degree, self.degree]
    }

    /// The two hemispheres cut out by the big circle dual to a point of
    /// region `Rᵢ`.
    pub fn hemispheres(&self, i: usize) -> [HemisphereCut; 2] {
        let d = self.degree;
        [HemisphereCut { from_a: i, from_b: d - i }, HemisphereCut { from_a: d - i, from_b: i }]
    }
}

impl HemisphereCut {
    /// Relator `a^{from_a} b^{from_b}` contributed by the attached 2-cell.
    pub fn relator(&self) -> Word {
        Word::from_syllables(&[(A, self.from_a as i64), (B, self.from_b as i64)])
    }
}

/// The relator pair `(aⁱb^{d-i}, a^{d-i}bⁱ)` from puncturing `Rᵢ`.
pub fn hemisphere_relation(d: usize, i: usize) -> Result<(Word, Word), NestError> {
    if i > d {
        return Err(NestError::InvalidConfig(format!("hemisphere index {i} exceeds degree {d}")));
    }
    let [first, second] = GeneticNestModel { degree: d }.hemispheres(i);
    Ok((first.relator(), second.relator()))
}

/// The distinct relators of [`hemisphere_relation`] (one when `i = d - i`).
pub fn hemisphere_relators(d: usize, i: usize) -> Result<Vec<Word>, NestError> {
    let (x, y) = hemisphere_relation(d, i)?;
    Ok(if x == y { vec![x] } else { vec![x, y] })
}
