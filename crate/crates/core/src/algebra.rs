//! Elements of the algebra with generic parameters, expanded in the basis
//! `E_σ` indexed by permutations.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arc::ArcDiagram;
use crate::dominance::dominance_leq;
use crate::error::{Error, Result};
use crate::fibonacci::{free_set, FibonacciSet};
use crate::perm::Permutation;
use crate::poly::Polynomial;
use crate::rewrite::{multiply_words, normalize, Word};
use crate::theta::{diagram_to_perm, perm_to_diagram};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    rank: usize,
    terms: BTreeMap<Permutation, Polynomial>,
}

impl AlgebraElement {
    pub fn zero(rank: usize) -> Self {
        AlgebraElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        AlgebraElement::basis(&Permutation::identity(rank))
    }

    pub fn basis(sigma: &Permutation) -> Self {
        AlgebraElement::term(sigma.clone(), Polynomial::one())
    }

    pub fn term(sigma: Permutation, coeff: Polynomial) -> Self {
        let mut e = AlgebraElement::zero(sigma.size());
        e.add_term(sigma, coeff);
        e
    }

    pub fn generator(i: usize, rank: usize) -> Result<Self> {
        AlgebraElement::from_word(&Word::new(rank, vec![i])?)
    }

    /// `E_{w_1} ··· E_{w_l}` expanded in the basis.
    pub fn from_word(w: &Word) -> Result<Self> {
        let r = normalize(w)?;
        Ok(AlgebraElement::term(r.permutation, r.coefficient.into()))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Polynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Polynomial {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, sigma: Permutation, coeff: Polynomial) {
        assert_eq!(sigma.size(), self.rank, "basis element of the wrong rank");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(sigma) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        let mut out = AlgebraElement::zero(self.rank);
        for (p, k) in &self.terms {
            out.add_term(p.clone(), k * c);
        }
        out
    }

    /// Bilinear extension of the product of basis words.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = AlgebraElement::zero(self.rank);
        for (s, a) in &self.terms {
            let ws = Word::code_word(s);
            for (t, b) in &other.terms {
                let r = multiply_words(&ws, &Word::code_word(t))?;
                let c = &(a * b) * &Polynomial::from(r.coefficient);
                out.add_term(r.permutation, c);
            }
        }
        Ok(out)
    }

    /// Every coefficient with `y_k = 1`.
    pub fn specialize_y_one(&self) -> Self {
        let mut out = AlgebraElement::zero(self.rank);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.specialize_y_one());
        }
        out
    }

    /// The element of the diagram basis (keyed by diagram instead of
    /// permutation).
    pub fn to_diagrams(&self) -> Result<BTreeMap<ArcDiagram, Polynomial>> {
        self.terms
            .iter()
            .map(|(p, c)| Ok((perm_to_diagram(p)?, c.clone())))
            .collect()
    }

    fn check_rank(&self, other: &AlgebraElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.num_terms() > 1 {
                write!(f, "({c})·E{p}")?;
            } else {
                write!(f, "{c}·E{p}")?;
            }
        }
        Ok(())
    }
}

/// One term of the serialized form, which is a list of these.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraTerm {
    pub perm: Permutation,
    pub coeff: Polynomial,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(ser)
    }
}

impl AlgebraElement {
    pub fn to_terms(&self) -> Vec<AlgebraTerm> {
        self.terms
            .iter()
            .map(|(p, c)| AlgebraTerm {
                perm: p.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    /// Sums the terms; the rank is needed because the list may be empty.
    pub fn from_terms(rank: usize, terms: Vec<AlgebraTerm>) -> Result<Self> {
        let mut out = AlgebraElement::zero(rank);
        for t in terms {
            if t.perm.size() != rank {
                return Err(Error::RankMismatch(t.perm.size(), rank));
            }
            out.add_term(t.perm, t.coeff);
        }
        Ok(out)
    }
}

/// `E_S`: the product of the commuting generators indexed by `𝔉(S)`.
pub fn free_element(s: &FibonacciSet) -> AlgebraElement {
    AlgebraElement::basis(&free_involution(s))
}

pub fn free_involution(s: &FibonacciSet) -> Permutation {
    Permutation::from_word(&free_set(s), s.rank()).expect("free set lies in [N-1]")
}

fn generators(n: usize) -> Vec<ArcDiagram> {
    (1..n)
        .map(|i| ArcDiagram::generator(i, n).expect("index in range"))
        .collect()
}

/// Support of the two-sided ideal generated by `E_S`, sorted.
pub fn ideal_basis(s: &FibonacciSet) -> Result<Vec<Permutation>> {
    let n = s.rank();
    let gens = generators(n);
    let start = perm_to_diagram(&free_involution(s))?;
    let mut seen: BTreeSet<ArcDiagram> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for g in &gens {
            for next in [g.monoid_product(&d)?, d.monoid_product(g)?] {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut out: Vec<Permutation> = seen.iter().map(diagram_to_perm).collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// `σ = ρ · E_S · τ` with `S = PropLab(σ)`, `S ⊴ PropLab(ρ)`,
/// `S ⊴ PropLab(τ)` and `ℓ(σ) = |𝔉(S)| + ℓ(ρ) + ℓ(τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularFactorization {
    pub rho: Permutation,
    pub set: FibonacciSet,
    pub tau: Permutation,
}

/// Finds the factorization by splitting the heap of the code-word of `σ`
/// into a lower part, an antichain spelling `𝔉(S)`, and an upper part.
/// Every split with the length identity is examined; exactly one must pass
/// the dominance conditions.
pub fn triangular_factorization(sigma: &Permutation) -> Result<TriangularFactorization> {
    let n = sigma.size();
    let s = perm_to_diagram(sigma)?.prop_lab();
    let free = free_set(&s);
    let word = sigma.code_word();
    let len = word.len();
    if len > 128 {
        return Err(Error::Precondition(format!(
            "code-word of length {len} is too long to factor"
        )));
    }
    // below[j]: positions i < j with i ≺ j in the heap order.
    let mut below = vec![0u128; len];
    for j in 0..len {
        for i in 0..j {
            if word[i].abs_diff(word[j]) <= 1 {
                below[j] |= below[i] | (1u128 << i);
            }
        }
    }
    let above = |i: usize| -> u128 {
        (0..len)
            .filter(|&j| below[j] >> i & 1 == 1)
            .fold(0u128, |m, j| m | 1u128 << j)
    };
    let occurrences: Vec<Vec<usize>> = free
        .iter()
        .map(|&f| (0..len).filter(|&j| word[j] == f).collect())
        .collect();
    let full = if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
    let mut found: BTreeSet<(Permutation, Permutation)> = BTreeSet::new();
    let mut pick = vec![0usize; free.len()];
    let mut prop_cache: HashMap<Permutation, FibonacciSet> = HashMap::new();
    let mut prop = |p: &Permutation| -> Result<FibonacciSet> {
        if let Some(s) = prop_cache.get(p) {
            return Ok(s.clone());
        }
        let s = perm_to_diagram(p)?.prop_lab();
        prop_cache.insert(p.clone(), s.clone());
        Ok(s)
    };
    loop {
        if occurrences.iter().all(|o| !o.is_empty()) {
            let m: Vec<usize> = pick
                .iter()
                .zip(&occurrences)
                .map(|(&k, o)| o[k])
                .collect();
            let m_mask = m.iter().fold(0u128, |acc, &j| acc | 1u128 << j);
            let antichain = m.iter().all(|&j| below[j] & m_mask == 0);
            if antichain {
                let forced_low = m.iter().fold(0u128, |acc, &j| acc | below[j]);
                let forced_high = m.iter().fold(0u128, |acc, &j| acc | above(j));
                let loose: Vec<usize> = (0..len)
                    .filter(|&j| (forced_low | forced_high | m_mask) >> j & 1 == 0)
                    .collect();
                for low in down_sets(&loose, &below, forced_low) {
                    let rest = !(low | m_mask);
                    let part = |mask: u128| -> Vec<usize> {
                        (0..len).filter(|&j| mask >> j & 1 == 1).map(|j| word[j]).collect()
                    };
                    let rho = Permutation::from_word(&part(low), n)?;
                    let tau = Permutation::from_word(&part(rest & full), n)?;
                    if dominance_leq(&s, &prop(&rho)?)? && dominance_leq(&s, &prop(&tau)?)? {
                        found.insert((rho, tau));
                    }
                }
            }
        }
        // next choice of one occurrence per free letter
        let mut k = 0;
        loop {
            if k == pick.len() {
                return finish_factorization(sigma, s, found);
            }
            pick[k] += 1;
            if pick[k] < occurrences[k].len().max(1) {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn finish_factorization(
    sigma: &Permutation,
    s: FibonacciSet,
    found: BTreeSet<(Permutation, Permutation)>,
) -> Result<TriangularFactorization> {
    let mut it = found.into_iter();
    match (it.next(), it.next()) {
        (Some((rho, tau)), None) => Ok(TriangularFactorization { rho, set: s, tau }),
        (None, _) => Err(Error::Invariant(format!(
            "no triangular factorization of {sigma} through {s}"
        ))),
        (Some(a), Some(b)) => Err(Error::Invariant(format!(
            "triangular factorization of {sigma} is not unique: {} {} and {} {} both work",
            a.0, a.1, b.0, b.1
        ))),
    }
}

/// Down-sets of the heap containing `base`, extended by elements of
/// `loose` (listed in word order).
fn down_sets(loose: &[usize], below: &[u128], base: u128) -> Vec<u128> {
    let mut out = Vec::new();
    fn go(k: usize, loose: &[usize], below: &[u128], cur: u128, out: &mut Vec<u128>) {
        if k == loose.len() {
            out.push(cur);
            return;
        }
        let j = loose[k];
        go(k + 1, loose, below, cur, out);
        if below[j] & !cur == 0 {
            go(k + 1, loose, below, cur | 1u128 << j, out);
        }
    }
    go(0, loose, below, base, &mut out);
    out
}
