//! HLT-style coset enumeration over the trivial subgroup.
//!
//! Cosets are defined in order (lowest live coset, lowest undefined column
//! first) and every relator is scanned at every live coset, so the run is
//! deterministic. Coincidences are merged with a union-find queue.

use serde::{Deserialize, Serialize};

use super::{Letter, Presentation, Word};

const UNDEF: usize = usize::MAX;

/// Closed coset table of a finite group: the regular permutation action of
/// each generator on the group elements `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    /// `action[g][c]` is the coset `c · x_g`.
    action: Vec<Vec<usize>>,
    cosets_defined: usize,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.action.first().map_or(1, Vec::len)
    }

    /// Total number of cosets defined during the run, including the ones
    /// later found to coincide.
    pub fn cosets_defined(&self) -> usize {
        self.cosets_defined
    }

    pub fn action(&self, generator: usize) -> &[usize] {
        &self.action[generator]
    }

    pub fn apply(&self, coset: usize, letter: Letter) -> usize {
        let perm = &self.action[letter.generator];
        if letter.inverse {
            perm.iter().position(|&x| x == coset).expect("permutation")
        } else {
            perm[coset]
        }
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.apply(c, l))
    }

    /// Every relator acts trivially on every coset and each generator acts
    /// as a permutation.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        let n = self.order();
        let perms_ok = self.action.iter().all(|perm| {
            let mut seen = vec![false; n];
            perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        });
        perms_ok && p.relators().iter().all(|r| (0..n).all(|c| self.trace(c, r) == c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnumerationResult {
    Finite(CosetTable),
    Inconclusive { max_cosets: usize },
}

impl EnumerationResult {
    pub fn order(&self) -> Option<usize> {
        match self {
            EnumerationResult::Finite(t) => Some(t.order()),
            EnumerationResult::Inconclusive { .. } => None,
        }
    }
}

struct LimitHit;

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    max_cosets: usize,
}

impl Enumerator {
    fn new(n_generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * n_generators;
        Self { cols, table: vec![vec![UNDEF; cols]], parent: vec![0], queue: Vec::new(), max_cosets }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), LimitHit> {
        if self.table.len() >= self.max_cosets {
            return Err(LimitHit);
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(n);
        self.table[c][col] = n;
        self.table[n][col ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let target = self.table[dead][col];
                if target == UNDEF {
                    continue;
                }
                if self.table[target][col ^ 1] == dead {
                    self.table[target][col ^ 1] = UNDEF;
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                if self.table[mu][col] != UNDEF {
                    let other = self.table[mu][col];
                    self.merge(nu, other);
                } else if self.table[nu][col ^ 1] != UNDEF {
                    let other = self.table[nu][col ^ 1];
                    self.merge(mu, other);
                } else {
                    self.table[mu][col] = nu;
                    self.table[nu][col ^ 1] = mu;
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `coset · word`, defining new cosets to complete the scan.
    fn scan_and_fill(&mut self, coset: usize, word: &[usize]) -> Result<(), LimitHit> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (coset, coset);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][word[i]] != UNDEF {
                f = self.table[f][word[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][word[j as usize] ^ 1] != UNDEF {
                b = self.table[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][word[i]] = b;
                self.table[b][word[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<(), LimitHit> {
        let mut c = 0;
        while c < self.table.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.is_live(c) {
                for col in 0..self.cols {
                    if self.table[c][col] == UNDEF {
                        self.define(c, col)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn into_table(mut self, n_generators: usize) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        let mut index = vec![UNDEF; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let action = (0..n_generators)
            .map(|g| {
                live.iter()
                    .map(|&c| {
                        let t = self.table[c][2 * g];
                        index[self.rep(t)]
                    })
                    .collect()
            })
            .collect();
        CosetTable { action, cosets_defined: self.table.len() }
    }
}

/// Enumerates the cosets of the trivial subgroup. Returns `Inconclusive`
/// once more than `max_cosets` cosets would be needed.
pub fn coset_enumeration(p: &Presentation, max_cosets: usize) -> EnumerationResult {
    let max_cosets = max_cosets.max(1);
    let relators: Vec<Vec<usize>> =
        p.relators().iter().map(|r| r.letters().iter().map(|l| l.column()).collect()).collect();
    let mut e = Enumerator::new(p.n_generators(), max_cosets);
    match e.run(&relators) {
        Ok(()) => {
            let table = e.into_table(p.n_generators());
            debug_assert!(table.satisfies(p));
            EnumerationResult::Finite(table)
        }
        Err(LimitHit) => EnumerationResult::Inconclusive { max_cosets },
    }
}
