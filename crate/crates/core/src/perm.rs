//! Permutations in one-line notation, their codes and code-words.
//!
//! A word `(w_1, ..., w_l)` evaluates to the permutation
//! `s_{w_1} ∘ s_{w_2} ∘ ... ∘ s_{w_l}` (functions composed right to left),
//! so the code-word of `σ` evaluates back to `σ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<u8>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line()
    }
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("size {n} too large")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line.into_iter().map(|v| v as u8).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::RankMismatch(self.size(), other.size()));
        }
        Ok(Permutation(
            other.0.iter().map(|&v| self.0[v as usize - 1]).collect(),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &v)| self.0[v as usize - 1] as usize == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Evaluates `s_{w_1} ∘ ... ∘ s_{w_l}` in `S_n`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        let mut p: Vec<u8> = (1..=n as u8).collect();
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, rank: n });
            }
        }
        // Composing with s_i on the right swaps the entries at i and i+1.
        for &i in word {
            p.swap(i - 1, i);
        }
        Ok(Permutation(p))
    }

    /// `c_i = #{ j < i : σ⁻¹(j) > σ⁻¹(i) }`, indexed from `i = 1`.
    pub fn code(&self) -> Vec<usize> {
        let inv = self.inverse();
        let n = self.size();
        (1..=n)
            .map(|i| (1..i).filter(|&j| inv.apply(j) > inv.apply(i)).count())
            .collect()
    }

    /// Inverse of [`Permutation::code`]. Requires `c_i < i`.
    pub fn from_code(code: &[usize]) -> Result<Self> {
        let n = code.len();
        if let Some((i, &c)) = code.iter().enumerate().find(|(i, &c)| c > *i) {
            return Err(Error::InvalidPermutation(format!(
                "code entry c_{} = {c} exceeds {i}",
                i + 1
            )));
        }
        Permutation::from_word(&code_word(code), n)
    }

    /// The concatenation over `i` of `(i-1, i-2, ..., i-c_i)`.
    pub fn code_word(&self) -> Vec<usize> {
        code_word(&self.code())
    }

    /// All permutations of size `n` in lexicographic order of one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

fn code_word(code: &[usize]) -> Vec<usize> {
    let mut w = Vec::new();
    for (idx, &c) in code.iter().enumerate() {
        let i = idx + 1;
        w.extend((i - c..i).rev());
    }
    w
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: usize, n: usize) -> Permutation {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, i);
        Permutation::new(v).unwrap()
    }

    #[test]
    fn word_evaluation_is_left_to_right_composition() {
        let w = [1, 2, 1, 3, 2];
        let mut want = Permutation::identity(4);
        for &i in &w {
            want = want.compose(&s(i, 4)).unwrap();
        }
        assert_eq!(Permutation::from_word(&w, 4).unwrap(), want);
        assert_eq!(Permutation::from_word(&[1, 2], 3).unwrap().one_line(), vec![2, 3, 1]);
    }

    #[test]
    fn code_examples() {
        assert_eq!(Permutation::identity(4).code(), vec![0; 4]);
        assert!(Permutation::identity(4).code_word().is_empty());
        let t = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(t.code(), vec![0, 1]);
        assert_eq!(t.code_word(), vec![1]);
    }

    #[test]
    fn code_word_roundtrip_and_length() {
        for n in 0..=6 {
            let all = Permutation::all(n);
            assert_eq!(all.len(), (1..=n).product::<usize>());
            for p in all {
                let w = p.code_word();
                assert_eq!(w.len(), p.length());
                assert_eq!(Permutation::from_word(&w, n).unwrap(), p);
                assert_eq!(Permutation::from_code(&p.code()).unwrap(), p);
                assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(n));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::from_word(&[3], 3).is_err());
        assert!(Permutation::from_code(&[1]).is_err());
    }

    #[test]
    fn json_is_one_line_array() {
        let p = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1,2]");
        assert!(serde_json::from_str::<Permutation>("[1,3]").is_err());
    }
}
