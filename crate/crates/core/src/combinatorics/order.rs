use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::Rng;

use super::{distance, enumerate_matchings, Matching};
use crate::error::{Error, Result};

/// Matchings reachable from `a` by one arrow move.
///
/// `a -> b` when two side-by-side arcs `(i,j)`, `(k,l)` of `a` become the
/// nested arcs `(i,l)`, `(j,k)` of `b` and nothing else changes.
pub fn arrow_targets(a: &Matching) -> Vec<Matching> {
    let pairs = a.pairs();
    let mut out = Vec::new();
    for &(i, j) in pairs {
        for &(k, l) in pairs {
            if j < k {
                if let Some(b) = a.rewire([(i, j), (k, l)], [(i, l), (j, k)]) {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out
}

/// All arrows `a -> b` among matchings of `2n` points, sorted.
pub fn arrows(n: usize) -> Vec<(Matching, Matching)> {
    let mut out: Vec<_> = enumerate_matchings(n)
        .into_iter()
        .flat_map(|a| arrow_targets(&a).into_iter().map(move |b| (a.clone(), b)))
        .collect();
    out.sort();
    out
}

/// The arrow relation on `B^n` with its transitive closure.
///
/// `a ≺ b` iff there is a chain of arrows from `a` to `b`.
#[derive(Clone, Debug)]
pub struct ArrowPoset {
    matchings: Vec<Matching>,
    index: HashMap<Matching, usize>,
    successors: Vec<Vec<usize>>,
    below: Vec<Vec<bool>>,
}

impl ArrowPoset {
    pub fn new(n: usize) -> Self {
        let matchings = enumerate_matchings(n);
        let index: HashMap<Matching, usize> =
            matchings.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let successors: Vec<Vec<usize>> = matchings
            .iter()
            .map(|a| arrow_targets(a).iter().map(|b| index[b]).collect())
            .collect();
        let size = matchings.len();
        let mut below = vec![vec![false; size]; size];
        for start in 0..size {
            let mut stack = successors[start].clone();
            while let Some(x) = stack.pop() {
                if !below[start][x] {
                    below[start][x] = true;
                    stack.extend_from_slice(&successors[x]);
                }
            }
        }
        ArrowPoset { matchings, index, successors, below }
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    /// Strict order: a chain of at least one arrow leads from `a` to `b`.
    pub fn precedes(&self, a: &Matching, b: &Matching) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&x), Some(&y)) => self.below[x][y],
            _ => false,
        }
    }

    pub fn precedes_or_equal(&self, a: &Matching, b: &Matching) -> bool {
        a == b || self.precedes(a, b)
    }

    /// Topological sort with lexicographic tie-breaking.
    pub fn total_order(&self) -> Result<Vec<Matching>> {
        let size = self.matchings.len();
        let mut indegree = vec![0usize; size];
        for succ in &self.successors {
            for &y in succ {
                indegree[y] += 1;
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..size).filter(|&x| indegree[x] == 0).map(Reverse).collect();
        let mut out = Vec::with_capacity(size);
        while let Some(Reverse(x)) = ready.pop() {
            out.push(self.matchings[x].clone());
            for &y in &self.successors[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(Reverse(y));
                }
            }
        }
        if out.len() != size {
            return Err(Error::Invariant("arrow relation contains a cycle".into()));
        }
        Ok(out)
    }

    /// A uniformly chosen ready element at each step of a topological sort.
    pub fn random_linear_extension<R: Rng>(&self, rng: &mut R) -> Vec<Matching> {
        let size = self.matchings.len();
        let mut indegree = vec![0usize; size];
        for succ in &self.successors {
            for &y in succ {
                indegree[y] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..size).filter(|&x| indegree[x] == 0).collect();
        let mut out = Vec::with_capacity(size);
        while !ready.is_empty() {
            let x = ready.swap_remove(rng.gen_range(0..ready.len()));
            out.push(self.matchings[x].clone());
            for &y in &self.successors[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
            ready.sort_unstable();
        }
        out
    }

    /// Up to `limit` distinct linear extensions, in lexicographic order of
    /// their index sequences.
    pub fn linear_extensions(&self, limit: usize) -> Vec<Vec<Matching>> {
        let size = self.matchings.len();
        let mut indegree = vec![0usize; size];
        for succ in &self.successors {
            for &y in succ {
                indegree[y] += 1;
            }
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(size);
        self.extensions_from(&mut indegree, &mut prefix, limit, &mut out);
        out
    }

    fn extensions_from(
        &self,
        indegree: &mut [usize],
        prefix: &mut Vec<usize>,
        limit: usize,
        out: &mut Vec<Vec<Matching>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if prefix.len() == self.matchings.len() {
            out.push(prefix.iter().map(|&x| self.matchings[x].clone()).collect());
            return;
        }
        for x in 0..self.matchings.len() {
            if indegree[x] != 0 || prefix.contains(&x) {
                continue;
            }
            prefix.push(x);
            for &y in &self.successors[x] {
                indegree[y] -= 1;
            }
            self.extensions_from(indegree, prefix, limit, out);
            for &y in &self.successors[x] {
                indegree[y] += 1;
            }
            prefix.pop();
        }
    }

    /// Whether `order` lists every matching once and respects `≺`.
    pub fn is_linear_extension(&self, order: &[Matching]) -> bool {
        if order.len() != self.matchings.len() {
            return false;
        }
        let mut position = vec![usize::MAX; order.len()];
        for (pos, m) in order.iter().enumerate() {
            match self.index.get(m) {
                Some(&x) if position[x] == usize::MAX => position[x] = pos,
                _ => return false,
            }
        }
        self.successors
            .iter()
            .enumerate()
            .all(|(x, succ)| succ.iter().all(|&y| position[x] < position[y]))
    }

    /// The first `c` in canonical order with `d(a,b) = d(a,c) + d(c,b)` and
    /// `c ⪯ a`, `c ⪯ b`.
    pub fn find_sink(&self, a: &Matching, b: &Matching) -> Result<Matching> {
        if a.n() != b.n() {
            return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
        }
        let dab = distance(a, b)?;
        for c in &self.matchings {
            if self.precedes_or_equal(c, a)
                && self.precedes_or_equal(c, b)
                && distance(a, c)? + distance(c, b)? == dab
            {
                return Ok(c.clone());
            }
        }
        Err(Error::Invariant(format!("no sink exists for {a} and {b}")))
    }
}

/// Linear extension of `≺` with lexicographic tie-breaking.
pub fn total_order(n: usize) -> Result<Vec<Matching>> {
    ArrowPoset::new(n).total_order()
}

pub fn find_sink(a: &Matching, b: &Matching) -> Result<Matching> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
    }
    ArrowPoset::new(a.n()).find_sink(a, b)
}
