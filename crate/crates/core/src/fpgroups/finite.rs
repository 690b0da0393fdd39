//! Small finite groups given by multiplication tables, and exhaustive
//! homomorphism search from a presentation into them.

use serde::{Deserialize, Serialize};

use super::{Letter, Presentation, Word};

/// Finite group on elements `0..order` with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from its table, checking identity, inverses and
    /// associativity. `generators` is the designated generating set.
    pub fn from_table(
        name: &str,
        labels: Vec<String>,
        mul: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self, String> {
        let n = mul.len();
        if n == 0 || labels.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(format!("{name}: malformed table"));
        }
        if (0..n).any(|x| mul[0][x] != x || mul[x][0] != x) {
            return Err(format!("{name}: element 0 is not the identity"));
        }
        let mut inv = vec![0; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n).find(|&y| mul[x][y] == 0).ok_or_else(|| format!("{name}: element {x} has no inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(format!("{name}: not associative"));
                    }
                }
            }
        }
        let g = Self { name: name.to_string(), labels, mul, inv, generators };
        if g.generated_by(&g.generators).len() != n {
            return Err(format!("{name}: designated generators do not generate"));
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul[x][g];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    fn letter(&self, images: &[usize], l: Letter) -> usize {
        let x = images[l.generator];
        if l.inverse {
            self.inv[x]
        } else {
            x
        }
    }

    pub fn evaluate(&self, images: &[usize], w: &Word) -> usize {
        w.letters().iter().fold(0, |acc, &l| self.mul[acc][self.letter(images, l)])
    }

    pub fn trivial() -> Self {
        Self::from_table("1", vec!["e".into()], vec![vec![0]], vec![]).expect("valid")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` generated by `i` and `j`.
    pub fn quaternion() -> Self {
        // Element 2u + s encodes sign s ∈ {0: +, 1: −} times unit u ∈ {1, i, j, k}.
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let names = ["1", "i", "j", "k"];
        let labels = (0..8).map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2])).collect();
        let mul = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, s) = UNIT[a / 2][b / 2];
                        2 * u + ((a % 2 + b % 2 + s) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", labels, mul, vec![2, 4]).expect("valid")
    }

    /// Dihedral group of order `2n`, elements `r^k` (index `k`) and `s r^k`
    /// (index `n + k`), generated by `r` and `s`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral groups need n >= 3");
        let labels = (0..2 * n).map(|x| if x < n { format!("r^{x}") } else { format!("s r^{}", x - n) }).collect();
        let mul = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (sa, ka) = (a / n, a % n);
                        let (sb, kb) = (b / n, b % n);
                        // s^sa r^ka s^sb r^kb = s^(sa+sb) r^((-1)^sb ka + kb)
                        let k = if sb == 1 { (n - ka + kb) % n } else { (ka + kb) % n };
                        ((sa + sb) % 2) * n + k
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&format!("D{n}"), labels, mul, vec![1, n]).expect("valid")
    }

    /// Symmetric group on three letters generated by a transposition and a
    /// 3-cycle.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [1, 2, 0], [0, 2, 1], [2, 1, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let mul = perms.iter().map(|a| perms.iter().map(|b| index([b[a[0]], b[a[1]], b[a[2]]])).collect()).collect();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Self::from_table("S3", labels, mul, vec![1, 2]).expect("valid")
    }

    /// Non-abelian targets tried when certifying that a group is not abelian.
    pub fn library() -> Vec<FiniteGroup> {
        let mut out = vec![Self::quaternion()];
        out.extend((3..=6).map(Self::dihedral));
        out.push(Self::symmetric3());
        out
    }
}

/// A homomorphism from a presented group, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub target: String,
    pub images: Vec<usize>,
    pub image_labels: Vec<String>,
    pub surjective: bool,
}

/// Every assignment of generator images that kills all relators, in
/// lexicographic order of image tuples.
pub fn find_homomorphisms(p: &Presentation, target: &FiniteGroup) -> Vec<Homomorphism> {
    let n = p.n_generators();
    let order = target.order();
    let mut images = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        if p.relators().iter().all(|r| target.evaluate(&images, r) == 0) {
            out.push(Homomorphism {
                target: target.name().to_string(),
                images: images.clone(),
                image_labels: images.iter().map(|&x| target.label(x).to_string()).collect(),
                surjective: target.generated_by(&images).len() == order,
            });
        }
        // odometer increment, last generator fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            images[i] += 1;
            if images[i] < order {
                break;
            }
            images[i] = 0;
        }
    }
}

/// First surjection onto `target`, if any.
pub fn find_finite_quotient(p: &Presentation, target: &FiniteGroup) -> Option<Homomorphism> {
    find_homomorphisms(p, target).into_iter().find(|h| h.surjective)
}
