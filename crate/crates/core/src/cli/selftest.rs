//! Seeded randomized checks of the core invariants, plus a few fixed
//! end-to-end cases.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{big, cmd_pi1, cmd_sw_family, BaseSw, Pi1Outcome, SubCertificate, Verdict};
use crate::fpgroups::{abelianization, invariants_to_u64, Presentation, Word};
use crate::knots::{self, Knot, SeifertMatrix};
use crate::swcalc::{fs_surgery, multi_torus_surgery, HClass, HomologyLattice, SwPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

/// A prime knot or a sum of two, with span at most 8.
pub fn random_knot(rng: &mut impl Rng) -> Knot {
    let a = random_prime_knot(rng);
    if rng.gen_bool(0.3) {
        Knot::sum(a, random_prime_knot(rng))
    } else {
        a
    }
}

/// A torus, twist or trivial knot with span at most 4.
pub fn random_prime_knot(rng: &mut impl Rng) -> Knot {
    match rng.gen_range(0..3) {
        0 => Knot::Torus { p: 2, q: 2 * rng.gen_range(1..=2) + 1 },
        1 => Knot::Twist([-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)]),
        _ => Knot::Unknot,
    }
}

/// A random nonzero invariant with up to 4 terms and coordinates in `[-3, 3]`.
pub fn random_sw(rng: &mut impl Rng, lattice: &HomologyLattice) -> SwPolynomial {
    loop {
        let n = rng.gen_range(1..=4);
        let terms: Vec<(Vec<BigInt>, i64)> = (0..n)
            .map(|_| {
                let v: Vec<i64> = (0..lattice.rank()).map(|_| rng.gen_range(-3..=3)).collect();
                let c = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
                (big(&v), c)
            })
            .collect();
        let sw = SwPolynomial::from_terms(lattice.clone(), terms).expect("rank matches");
        if !sw.is_zero() {
            return sw;
        }
    }
}

/// A random class of infinite order.
pub fn random_torus(rng: &mut impl Rng, lattice: &HomologyLattice) -> HClass {
    loop {
        let v: Vec<i64> = (0..lattice.rank()).map(|_| rng.gen_range(-2..=2)).collect();
        let c = lattice.class(&big(&v)).expect("rank matches");
        if lattice.has_infinite_order(&c) {
            return c;
        }
    }
}

fn check(name: &str, cases: usize, failure: Option<String>) -> Check {
    Check { name: name.into(), cases, passed: failure.is_none(), detail: failure }
}

/// Runs every check; `cases` sets the size of each randomized suite.
pub fn run_selftest(seed: u64, cases: usize, max_cosets: usize) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // surgery twice with Δ equals surgery once with Δ²
    let mut failure = None;
    for i in 0..cases {
        let lattice = HomologyLattice::free(rng.gen_range(1..=3)).unwrap();
        let sw = random_sw(&mut rng, &lattice);
        let torus = random_torus(&mut rng, &lattice);
        let k = random_knot(&mut rng);
        let delta = knots::alexander(&k).unwrap();
        let twice = fs_surgery(&fs_surgery(&sw, &torus, &delta).unwrap(), &torus, &delta).unwrap();
        let once = fs_surgery(&sw, &torus, &(&delta * &delta)).unwrap();
        if twice != once {
            failure = Some(format!("case {i}: knot {k}"));
            break;
        }
    }
    checks.push(check("surgery additivity", cases, failure));

    // all-ones shift invariance on the cover lattice
    let mut failure = None;
    'outer: for i in 0..cases {
        let d = rng.gen_range(3..=5);
        let lattice = HomologyLattice::cover(d).unwrap();
        let ones = vec![BigInt::from(rng.gen_range(-2i64..=2)); d];
        let reps: Vec<Vec<i64>> = (0..3).map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let shifted = |v: &Vec<i64>| -> Vec<BigInt> { big(v).iter().zip(&ones).map(|(a, b)| a + b).collect() };
        let sw_a = SwPolynomial::from_terms(lattice.clone(), reps.iter().map(|v| (big(v), 1))).unwrap();
        let sw_b = SwPolynomial::from_terms(lattice.clone(), reps.iter().map(|v| (shifted(v), 1))).unwrap();
        let t_a = lattice.class(&big(&reps[0])).unwrap();
        let t_b = lattice.class(&shifted(&reps[0])).unwrap();
        if sw_a != sw_b || t_a != t_b {
            failure = Some(format!("case {i}: class canonicalization, d = {d}"));
            break;
        }
        if !lattice.has_infinite_order(&t_a) {
            continue;
        }
        let delta = knots::alexander(&random_prime_knot(&mut rng)).unwrap();
        let tori_a: Vec<HClass> = (0..d).map(|j| lattice.basis(j)).collect();
        let tori_b: Vec<HClass> = (0..d)
            .map(|j| {
                let mut v = vec![0i64; d];
                v[j] = 1;
                lattice.class(&shifted(&v)).unwrap()
            })
            .collect();
        let pairs = [
            (fs_surgery(&sw_a, &t_a, &delta), fs_surgery(&sw_b, &t_b, &delta)),
            (multi_torus_surgery(&sw_a, &tori_a, &delta), multi_torus_surgery(&sw_b, &tori_b, &delta)),
        ];
        for (x, y) in pairs {
            if x.unwrap() != y.unwrap() {
                failure = Some(format!("case {i}: surgery output, d = {d}"));
                break 'outer;
            }
        }
    }
    checks.push(check("cover lattice shift invariance", cases, failure));

    // Seifert determinant against the closed form
    let mut failure = None;
    for _ in 0..cases {
        let q = 2 * rng.gen_range(1..=8) + 1;
        let seifert = SeifertMatrix::torus_two(q).unwrap().alexander_determinant().symmetric_normalize().unwrap();
        let closed = knots::torus_alexander(2, q).unwrap();
        if seifert != closed || !closed.is_palindromic() || closed.eval_at_one() != BigInt::from(1) {
            failure = Some(format!("T(2,{q})"));
            break;
        }
    }
    checks.push(check("alexander paths agree", cases, failure));

    // abelianization of <a, b | a^d b^d>
    let failure = (2..=12usize).find_map(|d| {
        let p = Presentation::new(2, vec![Word::from_syllables(&[(0, d as i64), (1, d as i64)])]).unwrap();
        let ab = invariants_to_u64(&abelianization(&p));
        (ab != [d as u64, 0]).then(|| format!("d = {d}: {ab:?}"))
    });
    checks.push(check("abelianization [d, 0]", 11, failure));

    // fixed end-to-end cases
    let failure = (5..=7).find_map(|d| match cmd_pi1(d, 1, max_cosets) {
        Ok(r) if r.verdict == Verdict::Pass => None,
        Ok(r) => Some(format!("d = {d}: {}", r.summary)),
        Err(e) => Some(format!("d = {d}: {e}")),
    });
    checks.push(check("pi1 cyclic for d = 5..7", 3, failure));

    let failure = match cmd_pi1(4, 1, max_cosets) {
        Ok(r) => match r.certificate {
            SubCertificate::Pi1(c) if matches!(&c.outcome, Pi1Outcome::NonAbelian { witness } if witness.target == "Q8") => {
                None
            }
            _ => Some(r.summary),
        },
        Err(e) => Some(e.to_string()),
    };
    checks.push(check("pi1 quartic has Q8 quotient", 1, failure));

    let failure = match cmd_sw_family(&BaseSw::K3Like, 2, &knots::torus_family(4).unwrap(), true, true) {
        Ok(r) => match &r.certificate {
            SubCertificate::SwFamily(c) if r.verdict == Verdict::Pass && c.counts == [5, 9, 13, 17] => None,
            _ => Some(r.summary),
        },
        Err(e) => Some(e.to_string()),
    };
    checks.push(check("sw family counts", 1, failure));

    SelftestReport { seed, checks }
}
