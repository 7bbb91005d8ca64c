//! The dominance order on Fibonacci sets of a fixed rank.
//!
//! `S ⊴ T` when `|S| ≤ |T|` and the elements of `S`, aligned from the
//! largest, are pointwise at most those of `T`. Meets, joins and the rank
//! function are found by exhaustive search over the rank; the search fails
//! loudly if the lattice axioms do not hold.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fibonacci::{enumerate_yfs, FibonacciSet};

pub fn dominance_leq(s: &FibonacciSet, t: &FibonacciSet) -> Result<bool> {
    if s.rank() != t.rank() {
        return Err(Error::RankMismatch(s.rank(), t.rank()));
    }
    Ok(leq(s, t))
}

fn leq(s: &FibonacciSet, t: &FibonacciSet) -> bool {
    let (a, b) = (s.elements(), t.elements());
    a.len() <= b.len() && a.iter().rev().zip(b.iter().rev()).all(|(x, y)| x <= y)
}

/// `S ◁ T` in the dominance sense: dominated and distinct.
pub fn dominance_lt(s: &FibonacciSet, t: &FibonacciSet) -> Result<bool> {
    Ok(dominance_leq(s, t)? && s != t)
}

/// The whole rank-`N` dominance lattice with precomputed order relation.
#[derive(Clone, Debug)]
pub struct DominanceLattice {
    rank: usize,
    elements: Vec<FibonacciSet>,
    index: HashMap<FibonacciSet, usize>,
    leq: Vec<Vec<bool>>,
}

impl DominanceLattice {
    pub fn new(rank: usize) -> Self {
        let elements = enumerate_yfs(rank);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let leq = elements
            .iter()
            .map(|s| elements.iter().map(|t| leq(s, t)).collect())
            .collect();
        DominanceLattice {
            rank,
            elements,
            index,
            leq,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[FibonacciSet] {
        &self.elements
    }

    pub fn index_of(&self, s: &FibonacciSet) -> Result<usize> {
        if s.rank() != self.rank {
            return Err(Error::RankMismatch(s.rank(), self.rank));
        }
        self.index
            .get(s)
            .copied()
            .ok_or_else(|| Error::InvalidSet(format!("{s} not in lattice")))
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn leq(&self, s: &FibonacciSet, t: &FibonacciSet) -> Result<bool> {
        Ok(self.leq[self.index_of(s)?][self.index_of(t)?])
    }

    fn extremal_bound(&self, i: usize, j: usize, lower: bool) -> Result<usize> {
        let n = self.elements.len();
        let bounds: Vec<usize> = (0..n)
            .filter(|&k| {
                if lower {
                    self.leq[k][i] && self.leq[k][j]
                } else {
                    self.leq[i][k] && self.leq[j][k]
                }
            })
            .collect();
        let best: Vec<usize> = bounds
            .iter()
            .copied()
            .filter(|&g| {
                bounds.iter().all(|&b| {
                    if lower {
                        self.leq[b][g]
                    } else {
                        self.leq[g][b]
                    }
                })
            })
            .collect();
        match best.as_slice() {
            [g] => Ok(*g),
            _ => Err(Error::Invariant(format!(
                "{} of {} and {} is not unique ({} candidates)",
                if lower { "meet" } else { "join" },
                self.elements[i],
                self.elements[j],
                best.len()
            ))),
        }
    }

    pub fn meet(&self, s: &FibonacciSet, t: &FibonacciSet) -> Result<FibonacciSet> {
        let g = self.extremal_bound(self.index_of(s)?, self.index_of(t)?, true)?;
        Ok(self.elements[g].clone())
    }

    pub fn join(&self, s: &FibonacciSet, t: &FibonacciSet) -> Result<FibonacciSet> {
        let g = self.extremal_bound(self.index_of(s)?, self.index_of(t)?, false)?;
        Ok(self.elements[g].clone())
    }

    /// Covering pairs `(i, j)` of the dominance order, by index.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| {
                    k != i && k != j && self.leq[i][k] && self.leq[k][j]
                });
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The unique minimal element.
    pub fn bottom(&self) -> Result<usize> {
        let n = self.elements.len();
        let minimal: Vec<usize> = (0..n)
            .filter(|&i| (0..n).all(|k| k == i || !self.leq[k][i]))
            .collect();
        match minimal.as_slice() {
            [b] => Ok(*b),
            _ => Err(Error::Invariant(format!(
                "dominance order of rank {} has {} minimal elements",
                self.rank,
                minimal.len()
            ))),
        }
    }

    /// Rank function of the graded poset: distance from the bottom along
    /// covers. Fails unless every cover raises the rank by exactly one.
    pub fn rank_function(&self) -> Result<Vec<usize>> {
        let n = self.elements.len();
        let bottom = self.bottom()?;
        let edges = self.cover_edges();
        let mut up = vec![Vec::new(); n];
        for &(i, j) in &edges {
            up[i].push(j);
        }
        let mut rank = vec![usize::MAX; n];
        rank[bottom] = 0;
        let mut queue = VecDeque::from([bottom]);
        while let Some(i) = queue.pop_front() {
            for &j in &up[i] {
                if rank[j] == usize::MAX {
                    rank[j] = rank[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        for &(i, j) in &edges {
            if rank[j] != rank[i] + 1 {
                return Err(Error::Invariant(format!(
                    "dominance order of rank {} is not graded at {} ⋖ {}",
                    self.rank, self.elements[i], self.elements[j]
                )));
            }
        }
        Ok(rank)
    }

    pub fn rank_of(&self, s: &FibonacciSet) -> Result<usize> {
        Ok(self.rank_function()?[self.index_of(s)?])
    }
}

pub fn dominance_meet(s: &FibonacciSet, t: &FibonacciSet) -> Result<FibonacciSet> {
    if s.rank() != t.rank() {
        return Err(Error::RankMismatch(s.rank(), t.rank()));
    }
    DominanceLattice::new(s.rank()).meet(s, t)
}

pub fn dominance_join(s: &FibonacciSet, t: &FibonacciSet) -> Result<FibonacciSet> {
    if s.rank() != t.rank() {
        return Err(Error::RankMismatch(s.rank(), t.rank()));
    }
    DominanceLattice::new(s.rank()).join(s, t)
}

pub fn dominance_rank(s: &FibonacciSet) -> Result<usize> {
    DominanceLattice::new(s.rank()).rank_of(s)
}
