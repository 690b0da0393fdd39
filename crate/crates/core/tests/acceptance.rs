//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the PASS/FAIL lines always appear in the output.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rimcert::cli::selftest::{random_knot, random_sw, random_torus};
use rimcert::cli::{cmd_pi1, cmd_sw_family, cmd_x9, BaseSw, Pi1Outcome, SubCertificate, Verdict};
use rimcert::fpgroups::{abelianization, invariants_to_u64, Presentation, Word};
use rimcert::intmat::IntMatrix;
use rimcert::knots::{self, Knot, SeifertMatrix};
use rimcert::laurent::LaurentPoly;
use rimcert::lcurve::{x9_ovals, Window};
use rimcert::swcalc::{basic_classes, fs_surgery, multi_torus_surgery, HClass, HomologyLattice, SwPolynomial};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?} (limit {limit:?})"))?;
    Ok(t)
}

fn pi1_cyclic() -> Outcome {
    let mut slowest = Duration::ZERO;
    for d in 5..=10 {
        let start = Instant::now();
        let r = cmd_pi1(d, 1, 100_000).map_err(|e| format!("d = {d}: {e}"))?;
        slowest = slowest.max(within(Duration::from_secs(1), start, &format!("d = {d}"))?);
        let SubCertificate::Pi1(c) = &r.certificate else { return Err("wrong certificate kind".into()) };
        ensure(r.verdict == Verdict::Pass, || format!("d = {d}: {}", r.summary))?;
        ensure(matches!(c.outcome, Pi1Outcome::Cyclic { order, .. } if order == d), || {
            format!("d = {d}: {:?}", c.outcome)
        })?;
        ensure(
            invariants_to_u64(&c.abelianization.iter().map(|j| j.0.clone()).collect::<Vec<_>>()) == [d as u64],
            || format!("d = {d}: abelianization"),
        )?;
    }
    Ok(format!("ℤ/d for d = 5..10, slowest {slowest:.2?}"))
}

/// Unit quaternions `±1, ±i, ±j, ±k` as integer 4-tuples.
type Quat = [i64; 4];

fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qinv(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn quat_from_label(s: &str) -> Option<Quat> {
    let (sign, base) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let unit = match base {
        "1" => [1, 0, 0, 0],
        "i" => [0, 1, 0, 0],
        "j" => [0, 0, 1, 0],
        "k" => [0, 0, 0, 1],
        _ => return None,
    };
    Some(unit.map(|x| x * sign))
}

fn quartic_q8() -> Outcome {
    let start = Instant::now();
    let r = cmd_pi1(4, 1, 100_000).map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(1), start, "d = 4")?;
    let SubCertificate::Pi1(c) = &r.certificate else { return Err("wrong certificate kind".into()) };
    let Pi1Outcome::NonAbelian { witness } = &c.outcome else { return Err(format!("{:?}", c.outcome)) };
    ensure(witness.target == "Q8" && witness.surjective, || format!("witness {witness:?}"))?;

    // independent check in the integer quaternions
    let images: Vec<Quat> = witness
        .image_labels
        .iter()
        .map(|l| quat_from_label(l).ok_or_else(|| format!("label {l}")))
        .collect::<Result<_, _>>()?;
    for rel in c.presentation.relators() {
        let v = rel.letters().iter().fold([1, 0, 0, 0], |acc, l| {
            let g = images[l.generator];
            qmul(acc, if l.inverse { qinv(g) } else { g })
        });
        ensure(v == [1, 0, 0, 0], || format!("relator {rel} maps to {v:?}"))?;
    }
    let mut group = vec![[1i64, 0, 0, 0]];
    let mut k = 0;
    while k < group.len() {
        for &g in &images {
            let h = qmul(group[k], g);
            if !group.contains(&h) {
                group.push(h);
            }
        }
        k += 1;
    }
    ensure(group.len() == 8, || format!("images generate {} elements", group.len()))?;
    ensure(qmul(images[0], images[1]) != qmul(images[1], images[0]), || "images commute".into())?;
    Ok(format!("a ↦ {}, b ↦ {} onto Q8, {t:.2?}", witness.image_labels[0], witness.image_labels[1]))
}

fn sw_distinct() -> Outcome {
    let start = Instant::now();
    let family = knots::torus_family(10).map_err(|e| e.to_string())?;
    let r = cmd_sw_family(&BaseSw::K3Like, 2, &family, true, false).map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(1), start, "family")?;
    let SubCertificate::SwFamily(c) = &r.certificate else { return Err("wrong certificate kind".into()) };
    let expected: Vec<usize> = (1..=10).map(|n| 4 * n + 1).collect();
    ensure(c.counts == expected, || format!("counts {:?}", c.counts))?;
    ensure(c.counts_pairwise_distinct, || "counts not pairwise distinct".into())?;
    ensure(r.verdict == Verdict::Pass, || r.summary.clone())?;
    let terms: Vec<_> = c.distinctness.entries.iter().map(|e| &e.sw_terms).collect();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            ensure(terms[i] != terms[j], || format!("entries {i} and {j} coincide"))?;
        }
    }
    Ok(format!("counts 5, 9, …, 41, polynomials pairwise unequal, {t:.2?}"))
}

fn additivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for i in 0..50 {
        let lattice = HomologyLattice::free(rng.gen_range(1..=3)).unwrap();
        let sw = random_sw(&mut rng, &lattice);
        let torus = random_torus(&mut rng, &lattice);
        let k = random_knot(&mut rng);
        let delta = knots::alexander(&k).map_err(|e| e.to_string())?;
        let twice = fs_surgery(&fs_surgery(&sw, &torus, &delta).unwrap(), &torus, &delta).unwrap();
        let once = fs_surgery(&sw, &torus, &(&delta * &delta)).unwrap();
        ensure(twice == once, || format!("instance {i}: knot {k}"))?;
    }
    Ok("50 random instances, exact equality".into())
}

fn block_diagonal(blocks: &[&IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = IntMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for r in 0..b.nrows() {
            for c in 0..b.ncols() {
                m.set(off + r, off + c, b.get(r, c).clone());
            }
        }
        off += b.nrows();
    }
    m
}

fn random_seifert_atom(rng: &mut ChaCha8Rng) -> (Knot, SeifertMatrix) {
    if rng.gen_bool(0.5) {
        let q = 2 * rng.gen_range(1..=6) + 1;
        (Knot::Torus { p: 2, q }, SeifertMatrix::torus_two(q).unwrap())
    } else {
        let n = [-4i64, -3, -2, -1, 1, 2, 3, 4][rng.gen_range(0..8)];
        (Knot::Twist(n), SeifertMatrix::twist(n).unwrap())
    }
}

fn alexander_paths() -> Outcome {
    for q in [3, 5, 7, 9] {
        let closed = knots::torus_alexander(2, q).map_err(|e| e.to_string())?;
        let seifert = SeifertMatrix::torus_two(q).unwrap().alexander_determinant().symmetric_normalize().unwrap();
        ensure(closed == seifert, || format!("T(2,{q}): {closed} vs {seifert}"))?;
        ensure(closed.to_text() == seifert.to_text(), || format!("T(2,{q}) text differs"))?;
    }

    // a connected sum via its block-diagonal Seifert matrix against the
    // product of the closed forms
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let cases = 256;
    for i in 0..cases {
        let parts: Vec<(Knot, SeifertMatrix)> =
            (0..rng.gen_range(1..=3)).map(|_| random_seifert_atom(&mut rng)).collect();
        let knot = parts[1..].iter().fold(parts[0].0.clone(), |acc, (k, _)| Knot::sum(acc, k.clone()));
        let via_product = knots::alexander(&knot).map_err(|e| format!("case {i}: {e}"))?;
        let blocks: Vec<&IntMatrix> = parts.iter().map(|(_, v)| v.matrix()).collect();
        let v = SeifertMatrix::new(block_diagonal(&blocks)).map_err(|e| format!("case {i}: {e}"))?;
        let via_det = knots::alexander(&Knot::Seifert(v)).map_err(|e| format!("case {i}: {e}"))?;
        ensure(via_product == via_det, || format!("case {i} {knot}: {via_product} vs {via_det}"))?;
        ensure(via_product.is_palindromic(), || format!("case {i}: not palindromic"))?;
        ensure(via_product.eval_at_one().magnitude() == &1u32.into(), || format!("case {i}: |Δ(1)| ≠ 1"))?;
        ensure(via_product == via_product.symmetric_normalize().unwrap(), || format!("case {i}: not normalized"))?;
    }
    Ok(format!("T(2,q) agree for q = 3, 5, 7, 9; {cases} random sums agree"))
}

fn abelianization_d0() -> Outcome {
    for d in 2..=12i64 {
        let p = Presentation::new(2, vec![Word::from_syllables(&[(0, d), (1, d)])]).unwrap();
        let ab = invariants_to_u64(&abelianization(&p));
        ensure(ab == [d as u64, 0], || format!("d = {d}: {ab:?}"))?;
    }
    Ok("[d, 0] for d = 2..12".into())
}

fn x9_nested() -> Outcome {
    let w = Window::square(-0.3, 0.3);
    let mut t1024 = Duration::ZERO;
    for res in [256, 512, 1024] {
        let start = Instant::now();
        let r = cmd_x9(0.01, 1e-7, w, res, None).map_err(|e| format!("{res}: {e}"))?;
        if res == 1024 {
            t1024 = within(Duration::from_secs(5), start, "1024²")?;
        }
        let SubCertificate::Ovals(o) = &r.certificate else { return Err("wrong certificate kind".into()) };
        ensure(r.verdict == Verdict::Pass && o.component_count == 2 && o.containment == [[0, 1]], || {
            format!("{res}²: {}", r.summary)
        })?;
    }
    // direct call agrees with the command
    ensure(x9_ovals(0.01, 1e-7, w, 256).map_err(|e| e.to_string())?.nested_pair, || "direct call".into())?;
    Ok(format!("2 nested ovals at 256², 512², 1024²; 1024² in {t1024:.2?}"))
}

fn shifted(v: &[i64], k: i64) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x + k)).collect()
}

fn lattice_shift() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut cases = 0;
    for d in 3..=5usize {
        let l = HomologyLattice::cover(d).unwrap();
        for i in 0..40 {
            let k = rng.gen_range(-3i64..=3);
            let reps: Vec<Vec<i64>> = (0..3).map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
            let fail = |op: &str| format!("d = {d}, case {i}: {op}");
            let plain = |v: &[i64]| shifted(v, 0);

            let a = l.class(&plain(&reps[0])).unwrap();
            let a2 = l.class(&shifted(&reps[0], k)).unwrap();
            let b = l.class(&plain(&reps[1])).unwrap();
            let b2 = l.class(&shifted(&reps[1], -k)).unwrap();
            ensure(a == a2, || fail("class"))?;
            ensure(l.add(&a, &b) == l.add(&a2, &b2), || fail("add"))?;
            ensure(l.scale(&a, &BigInt::from(3)) == l.scale(&a2, &BigInt::from(3)), || fail("scale"))?;
            ensure(l.negate(&a) == l.negate(&a2), || fail("negate"))?;
            ensure(l.has_infinite_order(&a) == l.has_infinite_order(&a2), || fail("infinite order"))?;

            let terms = |shift: i64| -> Vec<(Vec<BigInt>, i64)> {
                reps.iter().zip(&coeffs).map(|(v, &c)| (shifted(v, shift), c)).collect()
            };
            let sw = SwPolynomial::from_terms(l.clone(), terms(0)).unwrap();
            let sw2 = SwPolynomial::from_terms(l.clone(), terms(k)).unwrap();
            ensure(sw == sw2, || fail("from_terms"))?;
            ensure(basic_classes(&sw) == basic_classes(&sw2), || fail("basic_classes"))?;
            ensure(sw.coeff(&a) == sw2.coeff(&a2), || fail("coeff"))?;
            ensure(sw.is_conjugation_symmetric() == sw2.is_conjugation_symmetric(), || fail("conjugation"))?;
            ensure(sw.shift(&b) == sw2.shift(&b2), || fail("shift"))?;

            if sw.is_zero() || !l.has_infinite_order(&a) {
                continue;
            }
            let small = [Knot::Unknot, Knot::Torus { p: 2, q: 3 }, Knot::Twist(1), Knot::Twist(-2)];
            let delta: LaurentPoly = knots::alexander(&small[rng.gen_range(0..small.len())]).unwrap();
            ensure(fs_surgery(&sw, &a, &delta).unwrap() == fs_surgery(&sw2, &a2, &delta).unwrap(), || {
                fail("fs_surgery")
            })?;
            let tori: Vec<HClass> = (0..d).map(|j| l.basis(j)).collect();
            let tori2: Vec<HClass> = (0..d)
                .map(|j| {
                    let mut e = vec![0i64; d];
                    e[j] = 1;
                    l.class(&shifted(&e, k)).unwrap()
                })
                .collect();
            ensure(
                multi_torus_surgery(&sw, &tori, &delta).unwrap() == multi_torus_surgery(&sw2, &tori2, &delta).unwrap(),
                || fail("multi_torus_surgery"),
            )?;
            cases += 1;
        }
    }
    Ok(format!("d = 3, 4, 5; 120 random cases, {cases} with surgery"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("pi1 cyclic for d = 5..10", pi1_cyclic),
        ("quartic has a Q8 quotient", quartic_q8),
        ("sw distinctness for T(2,3)..T(2,21)", sw_distinct),
        ("surgery additivity", additivity),
        ("alexander engine", alexander_paths),
        ("abelianization of <a,b | a^d b^d>", abelianization_d0),
        ("x9 ovals", x9_nested),
        ("cover lattice shift invariance", lattice_shift),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
