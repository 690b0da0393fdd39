//! Finitely presented groups: words, presentations, abelianization, coset
//! enumeration over the trivial subgroup, and homomorphism search into
//! small finite groups.

mod enumerate;
mod finite;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::intmat::{self, IntMatrix};

pub use enumerate::{coset_enumeration, CosetTable, EnumerationResult};
pub use finite::{find_finite_quotient, find_homomorphisms, FiniteGroup, Homomorphism};

/// Default coset limit for enumeration.
pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("presentation syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generator index {index} out of range for {n_generators} generators")]
    GeneratorOutOfRange { index: usize, n_generators: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("at most 26 generators (a..z) are supported")]
    TooManyGenerators,
}

/// A letter `x_g^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    /// Column of this letter in a coset table with `2 · n_generators` columns.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// Freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// `x_g^e`.
    pub fn power(generator: usize, e: i64) -> Self {
        let l = Letter::new(generator, e < 0);
        Self(vec![l; e.unsigned_abs() as usize])
    }

    /// Builds a word from `(generator, exponent)` syllables.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        Self::from_letters(syllables.iter().flat_map(|&(g, e)| Self::power(g, e).0))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Self::from_letters(self.0.iter().chain(&other.0).copied())
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: &Word) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    pub fn exponent_sums(&self, n_generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n_generators];
        for l in &self.0 {
            sums[l.generator] += if l.inverse { -1 } else { 1 };
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Syllable form: maximal runs of one letter.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            let step = if l.inverse { -1 } else { 1 };
            match out.last_mut() {
                Some((g, e)) if *g == l.generator && (*e > 0) == (step > 0) => *e += step,
                _ => out.push((l.generator, step)),
            }
        }
        out
    }
}

fn generator_name(g: usize) -> char {
    (b'a' + g as u8) as char
}

impl fmt::Display for Word {
    /// `a^3 b^-2`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.syllables().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = generator_name(g);
            if e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WordParser { src: s.as_bytes(), pos: 0, offset: 0 }.word()
    }
}

/// Parses `a^5 b^-2 -a c` style words. A leading `-` inverts the following
/// letter; `^n` raises it to a (possibly negative) power; `1` is the empty
/// word.
struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl WordParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, GroupError> {
        Err(GroupError::Parse { pos: self.offset + self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn word(mut self) -> Result<Word, GroupError> {
        let mut syllables = Vec::new();
        self.skip_ws();
        if self.pos == self.src.len() {
            return self.err("empty word");
        }
        if self.src[self.pos] == b'1' {
            self.pos += 1;
            self.skip_ws();
            return if self.pos == self.src.len() { Ok(Word::identity()) } else { self.err("trailing input after 1") };
        }
        loop {
            self.skip_ws();
            let Some(&b) = self.src.get(self.pos) else { break };
            let mut negate = false;
            if b == b'-' {
                negate = true;
                self.pos += 1;
                self.skip_ws();
            }
            let Some(&c) = self.src.get(self.pos) else {
                return self.err("expected a generator letter");
            };
            if !c.is_ascii_lowercase() {
                return self.err("expected a generator letter a..z");
            }
            self.pos += 1;
            let mut e: i64 = 1;
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
                    self.pos += 1;
                }
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                e = match text.parse() {
                    Ok(v) => v,
                    Err(_) => {
                        self.pos = start;
                        return self.err("expected an integer exponent");
                    }
                };
            }
            if negate {
                e = -e;
            }
            syllables.push(((c - b'a') as usize, e));
        }
        Ok(Word::from_syllables(&syllables))
    }
}

/// `⟨x₀, …, x_{n-1} | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n_generators: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(n_generators: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        if n_generators == 0 {
            return Err(GroupError::NoGenerators);
        }
        if n_generators > 26 {
            return Err(GroupError::TooManyGenerators);
        }
        for r in &relators {
            if let Some(index) = r.max_generator().filter(|&g| g >= n_generators) {
                return Err(GroupError::GeneratorOutOfRange { index, n_generators });
            }
        }
        Ok(Self { n_generators, relators })
    }

    /// Parses a comma-separated relator list such as `a^5 b^5, a^3 b^2`.
    pub fn parse(n_generators: usize, relators: &str) -> Result<Self, GroupError> {
        let mut words = Vec::new();
        let mut offset = 0;
        if !relators.trim().is_empty() {
            for part in relators.split(',') {
                let w = WordParser { src: part.as_bytes(), pos: 0, offset }.word()?;
                words.push(w);
                offset += part.len() + 1;
            }
        }
        Self::new(n_generators, words)
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Rows are relators, columns generators.
    pub fn exponent_sum_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(self.n_generators)).collect();
        IntMatrix::from_rows(self.n_generators, &rows).expect("rows have generator count")
    }

    pub fn relators_text(&self) -> String {
        self.relators.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.n_generators).map(|g| generator_name(g).to_string()).collect();
        write!(f, "<{} | {}>", gens.join(","), self.relators_text())
    }
}

/// JSON mirror of the text syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: usize,
    pub relators: Vec<String>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        Self { generators: p.n_generators, relators: p.relators.iter().map(ToString::to_string).collect() }
    }
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = GroupError;
    fn try_from(j: PresentationJson) -> Result<Self, GroupError> {
        let words = j.relators.iter().map(|r| r.parse()).collect::<Result<Vec<Word>, _>>()?;
        Presentation::new(j.generators, words)
    }
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PresentationJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Presentation::try_from(PresentationJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Invariant factors of the abelianization: `d₁ | d₂ | …` with factors
/// equal to 1 dropped, followed by one `0` per free summand.
pub fn abelianization(p: &Presentation) -> Vec<BigInt> {
    let m = p.exponent_sum_matrix();
    let snf = intmat::smith_normal_form(&m);
    let mut factors: Vec<BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
    let nonzero = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
    factors.extend(std::iter::repeat_n(BigInt::zero(), p.n_generators - nonzero));
    factors
}

/// Order of the abelianization, or `None` when it is infinite.
pub fn abelianization_order(factors: &[BigInt]) -> Option<BigInt> {
    if factors.iter().any(Zero::is_zero) {
        None
    } else {
        Some(factors.iter().product())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CyclicCheck {
    /// Enumeration closed with the expected order and the abelianization is
    /// `ℤ/n`, so the group is cyclic of order `n`.
    Pass {
        order: usize,
        cosets_used: usize,
    },
    Fail {
        reason: String,
    },
    Inconclusive {
        max_cosets: usize,
    },
}

/// Three-valued check that `p` presents the cyclic group of order `n`.
pub fn is_cyclic_of_order(p: &Presentation, n: usize, max_cosets: usize) -> CyclicCheck {
    assert!(n >= 1, "order must be positive");
    let ab = abelianization(p);
    let expected: Vec<BigInt> = if n == 1 { vec![] } else { vec![BigInt::from(n)] };
    match coset_enumeration(p, max_cosets) {
        EnumerationResult::Inconclusive { max_cosets } => CyclicCheck::Inconclusive { max_cosets },
        EnumerationResult::Finite(table) => {
            if table.order() != n {
                CyclicCheck::Fail { reason: format!("group has order {}, expected {n}", table.order()) }
            } else if ab != expected {
                let shown: Vec<String> = ab.iter().map(ToString::to_string).collect();
                CyclicCheck::Fail {
                    reason: format!("abelianization invariants [{}], expected ℤ/{n}", shown.join(", ")),
                }
            } else {
                CyclicCheck::Pass { order: n, cosets_used: table.cosets_defined() }
            }
        }
    }
}

pub fn invariants_to_u64(factors: &[BigInt]) -> Vec<u64> {
    factors.iter().map(|f| f.to_u64().expect("invariant factor fits in u64")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pres(n: usize, s: &str) -> Presentation {
        Presentation::parse(n, s).unwrap()
    }

    fn ab(p: &Presentation) -> Vec<u64> {
        invariants_to_u64(&abelianization(p))
    }

    #[test]
    fn words_reduce_freely() {
        let w: Word = "a b -b a^-1 c".parse().unwrap();
        assert_eq!(w.to_string(), "c");
        let w: Word = "a^3 b^-2".parse().unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.inverse().to_string(), "b^2 a^-3");
        assert_eq!(w.concat(&w.inverse()), Word::identity());
        assert_eq!("1".parse::<Word>().unwrap(), Word::identity());
        assert_eq!("-a^2".parse::<Word>().unwrap(), Word::power(0, -2));
        assert!(matches!("a^".parse::<Word>(), Err(GroupError::Parse { pos: 2, .. })));
        assert!(matches!("A".parse::<Word>(), Err(GroupError::Parse { pos: 0, .. })));
    }

    #[test]
    fn presentation_parse_errors() {
        assert_eq!(Presentation::parse(1, "a b"), Err(GroupError::GeneratorOutOfRange { index: 1, n_generators: 1 }));
        assert_eq!(Presentation::parse(0, ""), Err(GroupError::NoGenerators));
        match Presentation::parse(2, "a^5 b^5, a^x") {
            Err(GroupError::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        let p = pres(2, "a^5 b^5, a^3 b^2, b^3 a^2");
        assert_eq!(p.to_string(), "<a,b | a^5 b^5, a^3 b^2, b^3 a^2>");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"generators":2,"relators":["a^5 b^5","a^3 b^2","b^3 a^2"]}"#);
        assert_eq!(serde_json::from_str::<Presentation>(&js).unwrap(), p);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(ab(&pres(2, "a^5 b^5")), vec![5, 0]);
        assert_eq!(ab(&pres(1, "")), vec![0]);
        assert_eq!(ab(&pres(2, "a b a^-1 b^-1")), vec![0, 0]);
        assert_eq!(ab(&pres(1, "a^5")), vec![5]);
        assert_eq!(ab(&pres(2, "a^2, b^4")), vec![2, 4]);
        assert_eq!(ab(&pres(2, "a^2, b^3")), vec![6]);
        assert_eq!(ab(&pres(1, "a")), Vec::<u64>::new());
        for d in 2..=12 {
            assert_eq!(
                ab(&Presentation::new(2, vec![Word::from_syllables(&[(0, d), (1, d)])]).unwrap()),
                vec![d as u64, 0]
            );
        }
    }

    #[test]
    fn cyclic_checks() {
        assert!(matches!(is_cyclic_of_order(&pres(1, "a^5"), 5, 1000), CyclicCheck::Pass { order: 5, .. }));
        assert!(matches!(is_cyclic_of_order(&pres(1, "a"), 1, 1000), CyclicCheck::Pass { order: 1, .. }));
        assert!(matches!(is_cyclic_of_order(&pres(1, "a^5"), 4, 1000), CyclicCheck::Fail { .. }));
        // Klein four-group: order 4, not cyclic.
        assert!(matches!(is_cyclic_of_order(&pres(2, "a^2, b^2, a b a^-1 b^-1"), 4, 1000), CyclicCheck::Fail { .. }));
        assert_eq!(is_cyclic_of_order(&pres(2, ""), 3, 500), CyclicCheck::Inconclusive { max_cosets: 500 });
    }

    fn word_strategy(n: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..n, -3i64..=3), 0..5).prop_map(|s| Word::from_syllables(&s))
    }

    proptest! {
        #[test]
        fn abelianization_invariant_under_rewrites(
            rels in prop::collection::vec(word_strategy(3), 1..4),
            conj in word_strategy(3),
            which in 0usize..4,
        ) {
            let base = Presentation::new(3, rels.clone()).unwrap();
            let mut changed = rels.clone();
            let i = which % changed.len();
            changed[i] = changed[i].inverse().conjugate(&conj);
            let other = Presentation::new(3, changed).unwrap();
            prop_assert_eq!(abelianization(&base), abelianization(&other));
        }

        #[test]
        fn word_text_round_trip(w in word_strategy(4)) {
            prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
    }
}
