//! Generator words and their normal forms.
//!
//! Words are rewritten modulo commutation of distant letters by
//! `a a → x_a · a` and `a (a-1) a → y_{a-1} · a`. Both rules shorten the
//! word, so rewriting terminates; the irreducible word is commutation
//! equivalent to the code-word of a unique permutation.
//!
//! A redex is located between two consecutive occurrences `p < q` of a
//! letter `a`. Letters strictly between them split into those that depend
//! on `p` (the set `U`), those `q` depends on (`D`), and the rest. Letters
//! outside `U` slide left of `p`, letters in `U \ D` slide right of `q`,
//! and what stays between is `I = U ∩ D`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{Monomial, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(rank: usize, letters: Vec<usize>) -> Result<Self> {
        if rank > 128 {
            return Err(Error::Precondition(format!("rank {rank} exceeds 128")));
        }
        for &i in &letters {
            if i == 0 || i >= rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
        }
        Ok(Word {
            rank,
            letters: letters.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn empty(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> Vec<usize> {
        self.letters.iter().map(|&l| l as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn code_word(perm: &Permutation) -> Word {
        Word {
            rank: perm.size(),
            letters: perm.code_word().into_iter().map(|i| i as u8).collect(),
        }
    }

    /// Parses letters separated by whitespace or commas, or a run of
    /// single digits such as `"212"`.
    pub fn parse(rank: usize, s: &str) -> Result<Word> {
        let s = s.trim();
        let parts: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|p| !p.is_empty())
            .collect();
        let letters: Vec<usize> = if parts.len() == 1 && rank <= 10 {
            parts[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidWord(format!("bad letter {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            parts
                .iter()
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| Error::InvalidWord(format!("bad letter {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Word::new(rank, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace separated letters; the rank is one more than the largest
    /// letter.
    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<usize> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidWord(format!("bad letter {p:?}")))
            })
            .collect::<Result<_>>()?;
        let rank = letters.iter().max().map_or(1, |m| m + 1);
        Word::new(rank, letters)
    }
}

/// Two words are equal modulo commutation of distant letters iff their
/// projections onto every pair of non-commuting letters agree.
pub fn commutation_equivalent(a: &Word, b: &Word) -> bool {
    if a.rank != b.rank || a.letters.len() != b.letters.len() {
        return false;
    }
    let proj = |w: &[u8], i: u8| -> Vec<u8> {
        w.iter().copied().filter(|&l| l == i || l == i + 1).collect()
    };
    (1..a.rank.max(1) as u8).all(|i| proj(&a.letters, i) == proj(&b.letters, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    /// `a a → x_a a`
    Idempotent,
    /// `a (a-1) a → y_{a-1} a`
    Contraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub letter: usize,
    pub first: usize,
    pub second: usize,
    pub kind: RuleKind,
}

fn bit(l: u8) -> u128 {
    1u128 << l
}

fn touches(mask: u128, l: u8) -> bool {
    let near = bit(l) | (bit(l) << 1) | (bit(l) >> 1);
    mask & near != 0
}

/// Positions strictly between `p` and `q` that depend on `p` (first) and
/// that `q` depends on (second), as boolean masks over `p+1..q`.
fn between_sets(w: &[u8], p: usize, q: usize) -> (Vec<bool>, Vec<bool>) {
    let span = q - p - 1;
    let mut up = vec![false; span];
    let mut down = vec![false; span];
    let mut mask = bit(w[p]);
    for (k, j) in (p + 1..q).enumerate() {
        if touches(mask, w[j]) {
            up[k] = true;
            mask |= bit(w[j]);
        }
    }
    let mut mask = bit(w[q]);
    for (k, j) in (p + 1..q).enumerate().rev() {
        if touches(mask, w[j]) {
            down[k] = true;
            mask |= bit(w[j]);
        }
    }
    (up, down)
}

fn classify(w: &[u8], p: usize, q: usize) -> Option<RuleKind> {
    let (up, down) = between_sets(w, p, q);
    let mut inner = (p + 1..q).zip(up.iter().zip(&down)).filter(|(_, (u, d))| **u && **d);
    match (inner.next(), inner.next()) {
        (None, _) => Some(RuleKind::Idempotent),
        (Some((j, _)), None) if w[j] + 1 == w[p] => Some(RuleKind::Contraction),
        _ => None,
    }
}

/// Every redex of `w`, ordered by letter and then by position.
pub fn redexes(w: &Word) -> Vec<Redex> {
    let mut out = Vec::new();
    for a in 1..w.rank as u8 {
        let mut prev: Option<usize> = None;
        for (q, &l) in w.letters.iter().enumerate() {
            if l != a {
                continue;
            }
            if let Some(p) = prev {
                if let Some(kind) = classify(&w.letters, p, q) {
                    out.push(Redex {
                        letter: a as usize,
                        first: p,
                        second: q,
                        kind,
                    });
                }
            }
            prev = Some(q);
        }
    }
    out
}

fn first_redex(w: &[u8], rank: usize) -> Option<(usize, usize, RuleKind)> {
    for a in 1..rank as u8 {
        let mut prev: Option<usize> = None;
        for (q, &l) in w.iter().enumerate() {
            if l != a {
                continue;
            }
            if let Some(p) = prev {
                if let Some(kind) = classify(w, p, q) {
                    return Some((p, q, kind));
                }
            }
            prev = Some(q);
        }
    }
    None
}

/// Applies the rule at `(p, q)` and returns the parameter it produces.
fn apply(w: &mut Vec<u8>, p: usize, q: usize, kind: RuleKind) -> Var {
    let a = w[p];
    let (up, down) = between_sets(w, p, q);
    let mut out = Vec::with_capacity(w.len() - 1);
    out.extend_from_slice(&w[..p]);
    for (k, j) in (p + 1..q).enumerate() {
        if !up[k] {
            out.push(w[j]);
        }
    }
    out.push(a);
    for (k, j) in (p + 1..q).enumerate() {
        if up[k] && !down[k] {
            out.push(w[j]);
        }
    }
    out.extend_from_slice(&w[q + 1..]);
    *w = out;
    match kind {
        RuleKind::Idempotent => Var::X(a as usize),
        RuleKind::Contraction => Var::Y(a as usize - 1),
    }
}

/// One rewriting step at `r`: the produced parameter and the new word.
pub fn apply_redex(w: &Word, r: &Redex) -> Result<(Var, Word)> {
    let ok = r.first < r.second
        && r.second < w.letters.len()
        && w.letters[r.first] as usize == r.letter
        && w.letters[r.second] as usize == r.letter
        && classify(&w.letters, r.first, r.second) == Some(r.kind);
    if !ok {
        return Err(Error::Precondition(format!("{r:?} is not a redex of {w}")));
    }
    let mut letters = w.letters.clone();
    let v = apply(&mut letters, r.first, r.second, r.kind);
    Ok((v, Word { rank: w.rank, letters }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizationResult {
    pub coefficient: Monomial,
    pub normal_word: Word,
    pub permutation: Permutation,
}

impl Serialize for NormalizationResult {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            coeff_x: &'a [u32],
            coeff_y: &'a [u32],
            perm: &'a Permutation,
        }
        Out {
            coeff_x: self.coefficient.x_exponents(),
            coeff_y: self.coefficient.y_exponents(),
            perm: &self.permutation,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for NormalizationResult {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            coeff_x: Vec<u32>,
            coeff_y: Vec<u32>,
            perm: Permutation,
        }
        let raw = In::deserialize(de)?;
        Ok(NormalizationResult {
            coefficient: Monomial::new(raw.coeff_x, raw.coeff_y),
            normal_word: Word::code_word(&raw.perm),
            permutation: raw.perm,
        })
    }
}

fn finish(rank: usize, letters: Vec<u8>, coefficient: Monomial) -> Result<NormalizationResult> {
    let reduced = Word { rank, letters };
    let permutation = Permutation::from_word(&reduced.letters(), rank)?;
    let normal_word = Word::code_word(&permutation);
    if !commutation_equivalent(&reduced, &normal_word) {
        return Err(Error::Invariant(format!(
            "irreducible word {reduced} is not a rearrangement of the code-word {normal_word}"
        )));
    }
    Ok(NormalizationResult {
        coefficient,
        normal_word,
        permutation,
    })
}

/// Deterministic normalization: always rewrites the redex with the
/// smallest letter, leftmost first.
pub fn normalize(w: &Word) -> Result<NormalizationResult> {
    let mut letters = w.letters.clone();
    let mut coefficient = Monomial::one();
    while let Some((p, q, kind)) = first_redex(&letters, w.rank) {
        let v = apply(&mut letters, p, q, kind);
        coefficient.mul_var(v, 1);
    }
    finish(w.rank, letters, coefficient)
}

/// Normalization along a random path: before each step the word is
/// shuffled by random commutations, then a uniformly random redex is
/// rewritten.
pub fn normalize_with<R: Rng + ?Sized>(w: &Word, rng: &mut R) -> Result<NormalizationResult> {
    let mut cur = w.clone();
    let mut coefficient = Monomial::one();
    loop {
        random_commutations(&mut cur.letters, rng);
        let all = redexes(&cur);
        let Some(r) = all.choose(rng) else {
            break;
        };
        let v = apply(&mut cur.letters, r.first, r.second, r.kind);
        coefficient.mul_var(v, 1);
    }
    finish(w.rank, cur.letters, coefficient)
}

fn random_commutations<R: Rng + ?Sized>(w: &mut [u8], rng: &mut R) {
    if w.len() < 2 {
        return;
    }
    for _ in 0..w.len() {
        let i = rng.gen_range(0..w.len() - 1);
        if w[i].abs_diff(w[i + 1]) > 1 {
            w.swap(i, i + 1);
        }
    }
}

/// `E_{w1} · E_{w2}` expressed as `coefficient · E_π`.
pub fn multiply_words(w1: &Word, w2: &Word) -> Result<NormalizationResult> {
    normalize(&w1.concat(w2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(rank: usize, l: &[usize]) -> Word {
        Word::new(rank, l.to_vec()).unwrap()
    }

    #[test]
    fn relations() {
        let r = normalize(&w(3, &[1, 1])).unwrap();
        assert_eq!(r.coefficient, Monomial::var(Var::X(1)));
        assert_eq!(r.normal_word, w(3, &[1]));
        let r = normalize(&w(3, &[2, 1, 2])).unwrap();
        assert_eq!(r.coefficient, Monomial::var(Var::Y(1)));
        assert_eq!(r.normal_word, w(3, &[2]));
        let a = normalize(&w(4, &[1, 3])).unwrap();
        let b = normalize(&w(4, &[3, 1])).unwrap();
        assert_eq!(a, b);
        assert!(a.coefficient.is_one());
        let r = normalize(&w(3, &[1, 2, 1])).unwrap();
        assert!(r.coefficient.is_one());
        assert_eq!(r.permutation.one_line(), vec![3, 2, 1]);
    }

    #[test]
    fn redex_modulo_commutation() {
        // both 1 and 3 are trapped between the two 2s
        let r = normalize(&w(4, &[2, 1, 3, 2])).unwrap();
        assert!(r.coefficient.is_one());
        // the 4 slides out, leaving 2 1 2
        let r = normalize(&w(5, &[2, 4, 1, 2])).unwrap();
        assert_eq!(r.coefficient, Monomial::var(Var::Y(1)));
        let r = normalize(&w(5, &[1, 3, 1])).unwrap();
        assert_eq!(r.coefficient, Monomial::var(Var::X(1)));
        assert_eq!(r.normal_word, w(5, &[1, 3]));
    }

    #[test]
    fn projections_decide_commutation() {
        assert!(commutation_equivalent(&w(5, &[1, 3, 2]), &w(5, &[3, 1, 2])));
        assert!(!commutation_equivalent(&w(5, &[1, 2, 3]), &w(5, &[1, 3, 2])));
        assert!(!commutation_equivalent(&w(5, &[1]), &w(5, &[3])));
    }

    #[test]
    fn random_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let len = rng.gen_range(0..16);
            let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..5)).collect();
            let word = w(5, &letters);
            let det = normalize(&word).unwrap();
            let rnd = normalize_with(&word, &mut rng).unwrap();
            assert_eq!(det, rnd, "word {word}");
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(Word::parse(4, "2 1 2").unwrap(), w(4, &[2, 1, 2]));
        assert_eq!(Word::parse(4, "212").unwrap(), w(4, &[2, 1, 2]));
        assert_eq!(Word::parse(4, "").unwrap(), Word::empty(4));
        assert!(Word::parse(3, "3").is_err());
        assert_eq!("1 1".parse::<Word>().unwrap(), w(2, &[1, 1]));
    }

    #[test]
    fn json_shape() {
        let r = normalize(&w(3, &[2, 1, 2, 2])).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"coeff_x":[0,1],"coeff_y":[1],"perm":[1,3,2]}"#);
        let back: NormalizationResult = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
