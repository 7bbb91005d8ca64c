//! Parsing of command-line operands: words, permutations, sets, diagrams
//! and algebra elements given either as plain text or as JSON.

use okada::algebra::AlgebraTerm;
use okada::{AlgebraElement, ArcDiagram, Chain, FibonacciSet, HalfArcDiagram, Permutation, Word};
use serde::de::DeserializeOwned;

use crate::Failure;

pub fn json<T: DeserializeOwned>(what: &str, s: &str) -> Result<T, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::Validation(format!("malformed {what} JSON: {e}")))
}

fn numbers(s: &str) -> Result<Vec<usize>, Failure> {
    s.trim()
        .trim_start_matches(['[', '{'])
        .trim_end_matches([']', '}'])
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Failure::Validation(format!("expected a number, got {p:?}")))
        })
        .collect()
}

/// `"3 1 2"`, `"3,1,2"` or `"[3,1,2]"`.
pub fn permutation(s: &str) -> Result<Permutation, Failure> {
    Ok(Permutation::new(numbers(s)?)?)
}

/// Elements such as `"1,2,5"` or `"{1,2,5}"`; the empty string is the
/// empty set.
pub fn fibonacci_set(rank: usize, s: &str) -> Result<FibonacciSet, Failure> {
    Ok(FibonacciSet::new(rank, numbers(s)?)?)
}

pub fn chain(s: &str) -> Result<Chain, Failure> {
    json("chain", s)
}

pub fn half(s: &str) -> Result<HalfArcDiagram, Failure> {
    json("half diagram", s)
}

pub fn diagram(s: &str) -> Result<ArcDiagram, Failure> {
    json("diagram", s)
}

/// A multiplication operand.
#[derive(Clone, Debug)]
pub enum Operand {
    Word(Vec<usize>),
    Perm(Permutation),
    Diagram(ArcDiagram),
    Element(serde_json::Value),
}

impl Operand {
    /// JSON objects are diagrams, arrays of numbers are permutations,
    /// arrays of objects are algebra elements; anything else is a word.
    pub fn parse(s: &str) -> Result<Operand, Failure> {
        let t = s.trim();
        if t.starts_with('{') {
            return Ok(Operand::Diagram(diagram(t)?));
        }
        if t.starts_with('[') {
            let v: serde_json::Value = json("operand", t)?;
            let arr = v.as_array().expect("starts with a bracket");
            if arr.iter().all(|x| x.is_u64()) {
                return Ok(Operand::Perm(permutation(t)?));
            }
            return Ok(Operand::Element(v));
        }
        Ok(Operand::Word(numbers(t)?))
    }

    /// The rank carried by the operand itself, if any.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Operand::Word(_) => None,
            Operand::Perm(p) => Some(p.size()),
            Operand::Diagram(d) => Some(d.rank()),
            Operand::Element(v) => v
                .as_array()
                .and_then(|a| a.first())
                .and_then(|t| t.get("perm"))
                .and_then(|p| p.as_array())
                .map(|p| p.len()),
        }
    }

    pub fn max_letter(&self) -> usize {
        match self {
            Operand::Word(w) => w.iter().copied().max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn to_word(&self, rank: usize) -> Result<Option<Word>, Failure> {
        match self {
            Operand::Word(w) => Ok(Some(Word::new(rank, w.clone())?)),
            _ => Ok(None),
        }
    }

    pub fn to_element(&self, rank: usize) -> Result<AlgebraElement, Failure> {
        Ok(match self {
            Operand::Word(w) => AlgebraElement::from_word(&Word::new(rank, w.clone())?)?,
            Operand::Perm(p) => AlgebraElement::basis(p),
            Operand::Diagram(d) => AlgebraElement::basis(&okada::diagram_to_perm(d)?),
            Operand::Element(v) => {
                let terms: Vec<AlgebraTerm> = serde_json::from_value(v.clone())
                    .map_err(|e| Failure::Validation(format!("malformed element JSON: {e}")))?;
                AlgebraElement::from_terms(rank, terms)?
            }
        })
    }
}

/// Resolves the common rank of two operands, checking they agree.
pub fn common_rank(a: &Operand, b: &Operand, given: Option<usize>) -> Result<usize, Failure> {
    let mut rank = given;
    for r in [a.rank(), b.rank()].into_iter().flatten() {
        match rank {
            Some(k) if k != r => {
                return Err(okada::Error::RankMismatch(k, r).into());
            }
            _ => rank = Some(r),
        }
    }
    Ok(rank.unwrap_or_else(|| a.max_letter().max(b.max_letter()) + 1))
}
