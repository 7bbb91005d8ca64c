//! Fibonacci sets, Fibonacci words and saturated chains of the
//! Young-Fibonacci lattice.
//!
//! A Fibonacci set of rank `N` is a subset `{s_1 < ... < s_k}` of `[N]` with
//! `k ≡ N (mod 2)` and `s_l ≡ l (mod 2)` for every `l`. The rank is part of
//! the identity of the set: `{1,2,5}` of rank 5 and of rank 7 are different
//! nodes of the lattice.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct FibonacciSet {
    rank: usize,
    elements: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    rank: usize,
    elements: Vec<usize>,
}

impl TryFrom<RawSet> for FibonacciSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        FibonacciSet::new(raw.rank, raw.elements)
    }
}

/// Checks the two parity conditions on a strictly increasing subset of
/// `[rank]`. Input that is not strictly increasing or leaves `[rank]` is an
/// error rather than `false`.
pub fn is_fibonacci_set(rank: usize, elements: &[usize]) -> Result<bool> {
    check_subset(rank, elements)?;
    if elements.len() % 2 != rank % 2 {
        return Ok(false);
    }
    Ok(elements
        .iter()
        .enumerate()
        .all(|(i, &s)| s % 2 == (i + 1) % 2))
}

fn check_subset(rank: usize, elements: &[usize]) -> Result<()> {
    for (i, &s) in elements.iter().enumerate() {
        if s == 0 || s > rank {
            return Err(Error::InvalidSet(format!(
                "element {s} outside [1, {rank}]"
            )));
        }
        if i > 0 && elements[i - 1] >= s {
            return Err(Error::InvalidSet(format!(
                "elements not strictly increasing: {elements:?}"
            )));
        }
    }
    Ok(())
}

impl FibonacciSet {
    pub fn new(rank: usize, elements: Vec<usize>) -> Result<Self> {
        if !is_fibonacci_set(rank, &elements)? {
            return Err(Error::InvalidSet(format!(
                "{elements:?} violates the parity conditions at rank {rank}"
            )));
        }
        Ok(FibonacciSet { rank, elements })
    }

    pub(crate) fn new_unchecked(rank: usize, elements: Vec<usize>) -> Self {
        debug_assert!(
            is_fibonacci_set(rank, &elements).unwrap_or(false),
            "not a Fibonacci set: {elements:?} at rank {rank}"
        );
        FibonacciSet { rank, elements }
    }

    pub fn empty() -> Self {
        FibonacciSet {
            rank: 0,
            elements: Vec::new(),
        }
    }

    /// The whole interval `[N]`, the top of the dominance order.
    pub fn full(rank: usize) -> Self {
        FibonacciSet {
            rank,
            elements: (1..=rank).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.elements.last().copied()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.elements.binary_search(&s).is_ok()
    }

    /// All `T` of rank `N + 1` with `self ◁ T`, in canonical order.
    pub fn upper_covers(&self) -> Vec<FibonacciSet> {
        let n = self.rank + 1;
        let mut out = Vec::new();
        let lo = self.max().map_or(1, |m| m + 1);
        let parity = (self.len() + 1) % 2;
        for t in lo..=n {
            if t % 2 == parity {
                let mut el = self.elements.clone();
                el.push(t);
                out.push(FibonacciSet::new_unchecked(n, el));
            }
        }
        if !self.is_empty() {
            let mut el = self.elements.clone();
            el.pop();
            out.push(FibonacciSet::new_unchecked(n, el));
        }
        out.sort();
        out
    }

    /// All `T` of rank `N - 1` with `T ◁ self`, in canonical order.
    pub fn lower_covers(&self) -> Vec<FibonacciSet> {
        if self.rank == 0 {
            return Vec::new();
        }
        let n = self.rank - 1;
        let mut out = Vec::new();
        if !self.is_empty() {
            let mut el = self.elements.clone();
            el.pop();
            out.push(FibonacciSet::new_unchecked(n, el));
        }
        let lo = self.max().map_or(1, |m| m + 1);
        let parity = (self.len() + 1) % 2;
        for t in lo..=n {
            if t % 2 == parity {
                let mut el = self.elements.clone();
                el.push(t);
                out.push(FibonacciSet::new_unchecked(n, el));
            }
        }
        out.sort();
        out
    }

    /// `self ◁ other` in the Young-Fibonacci lattice.
    pub fn is_covered_by(&self, other: &FibonacciSet) -> bool {
        if other.rank != self.rank + 1 {
            return false;
        }
        let (a, b) = (&self.elements, &other.elements);
        if b.len() == a.len() + 1 {
            b[..a.len()] == a[..]
        } else if a.len() == b.len() + 1 {
            a[..b.len()] == b[..]
        } else {
            false
        }
    }

    pub fn to_word(&self) -> FibonacciWord {
        set_to_word(self)
    }
}

impl fmt::Display for FibonacciSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}_{}", self.rank)
    }
}

/// All rank-`n` Fibonacci sets, lexicographic on element sequences.
pub fn enumerate_yfs(n: usize) -> Vec<FibonacciSet> {
    fn grow(n: usize, cur: &mut Vec<usize>, out: &mut Vec<FibonacciSet>) {
        if cur.len() % 2 == n % 2 {
            out.push(FibonacciSet::new_unchecked(n, cur.clone()));
        }
        let lo = cur.last().map_or(1, |m| m + 1);
        let parity = (cur.len() + 1) % 2;
        for t in lo..=n {
            if t % 2 == parity {
                cur.push(t);
                grow(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(n, &mut Vec::new(), &mut out);
    out
}

/// Upper covers of `s`; the Hasse diagram edges leaving `s`.
pub fn yf_covers(s: &FibonacciSet) -> Vec<FibonacciSet> {
    s.upper_covers()
}

/// A word over `{1, 2}`; its rank is the sum of its letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibonacciWord(Vec<u8>);

impl FibonacciWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&l| l != 1 && l != 2) {
            return Err(Error::InvalidWord(format!("letter {bad} not in {{1,2}}")));
        }
        Ok(FibonacciWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|&l| l as usize).sum()
    }
}

impl FromStr for FibonacciWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::InvalidWord(format!("character {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(FibonacciWord(letters))
    }
}

impl fmt::Display for FibonacciWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for FibonacciWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FibonacciWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Stanley's bijection: the set of suffix sums of suffixes starting with 1.
pub fn word_to_set(w: &FibonacciWord) -> FibonacciSet {
    let letters = w.letters();
    let mut elements = Vec::new();
    let mut suffix = 0usize;
    for &l in letters.iter().rev() {
        suffix += l as usize;
        if l == 1 {
            elements.push(suffix);
        }
    }
    FibonacciSet::new_unchecked(w.rank(), elements)
}

pub fn set_to_word(s: &FibonacciSet) -> FibonacciWord {
    let mut letters = Vec::new();
    let mut r = s.rank();
    while r > 0 {
        if s.contains(r) {
            letters.push(1);
            r -= 1;
        } else {
            debug_assert!(r >= 2, "Fibonacci set parity violated");
            letters.push(2);
            r -= 2;
        }
    }
    FibonacciWord(letters)
}

/// A saturated chain `C_0 ◁ C_1 ◁ ... ◁ C_N` starting at the empty set of
/// rank 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<FibonacciSet>", into = "Vec<FibonacciSet>")]
pub struct Chain {
    sets: Vec<FibonacciSet>,
}

impl Chain {
    pub fn new(sets: Vec<FibonacciSet>) -> Result<Self> {
        match sets.first() {
            Some(first) if first.rank() == 0 => {}
            _ => return Err(Error::InvalidChain("chain must start at the rank-0 set".into())),
        }
        for w in sets.windows(2) {
            if !w[0].is_covered_by(&w[1]) {
                return Err(Error::InvalidChain(format!(
                    "{} is not covered by {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Chain { sets })
    }

    pub(crate) fn new_unchecked(sets: Vec<FibonacciSet>) -> Self {
        debug_assert!(Chain::new(sets.clone()).is_ok());
        Chain { sets }
    }

    pub fn sets(&self) -> &[FibonacciSet] {
        &self.sets
    }

    pub fn rank(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn endpoint(&self) -> &FibonacciSet {
        self.sets.last().expect("chains are never empty")
    }
}

impl TryFrom<Vec<FibonacciSet>> for Chain {
    type Error = Error;

    fn try_from(sets: Vec<FibonacciSet>) -> Result<Self> {
        Chain::new(sets)
    }
}

impl From<Chain> for Vec<FibonacciSet> {
    fn from(c: Chain) -> Self {
        c.sets
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, " ◁ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Every saturated chain from the rank-0 set up to `s`, in lexicographic
/// order of their set sequences.
pub fn saturated_chains(s: &FibonacciSet) -> Vec<Chain> {
    fn descend(cur: &mut Vec<FibonacciSet>, out: &mut Vec<Chain>) {
        let top = cur.last().unwrap().clone();
        if top.rank() == 0 {
            let mut sets = cur.clone();
            sets.reverse();
            out.push(Chain::new_unchecked(sets));
            return;
        }
        for below in top.lower_covers() {
            cur.push(below);
            descend(cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    descend(&mut vec![s.clone()], &mut out);
    out.sort();
    out
}

/// Number of saturated chains ending at `s`, i.e. the dimension of the
/// irreducible representation indexed by `s`.
pub fn chain_count(s: &FibonacciSet) -> u64 {
    fn count(s: &FibonacciSet, memo: &mut HashMap<FibonacciSet, u64>) -> u64 {
        if s.rank() == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(s) {
            return c;
        }
        let c = s.lower_covers().iter().map(|t| count(t, memo)).sum();
        memo.insert(s.clone(), c);
        c
    }
    count(s, &mut HashMap::new())
}

/// The free set `{ i ∈ [N-1] : i - max({s ∈ S : s ≤ i} ∪ {0}) is odd }`.
pub fn free_set(s: &FibonacciSet) -> Vec<usize> {
    let mut out = Vec::new();
    let mut last = 0;
    for i in 1..s.rank() {
        if s.contains(i) {
            last = i;
        } else if (i - last) % 2 == 1 {
            out.push(i);
        }
    }
    out
}

/// Inverse of [`free_set`]: the complement of the blocks `{i, i+1}`.
pub fn free_set_inverse(free: &[usize], rank: usize) -> Result<FibonacciSet> {
    for (k, &i) in free.iter().enumerate() {
        if i == 0 || i >= rank {
            return Err(Error::InvalidFreeSet(format!(
                "element {i} outside [1, {}]",
                rank.saturating_sub(1)
            )));
        }
        if k > 0 && free[k - 1] + 1 >= i {
            return Err(Error::InvalidFreeSet(format!(
                "{free:?} is not strictly increasing without adjacent entries"
            )));
        }
    }
    let mut covered = vec![false; rank + 1];
    for &i in free {
        covered[i] = true;
        covered[i + 1] = true;
    }
    let elements = (1..=rank).filter(|&i| !covered[i]).collect();
    Ok(FibonacciSet::new_unchecked(rank, elements))
}
