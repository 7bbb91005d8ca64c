//! The dictionary between permutations and arc diagrams, and the
//! Robinson-Schensted correspondence it induces.
//!
//! A permutation is sent to the product of the generators along its
//! code-word. The inverse peels generators off the right: each peel of a
//! rank `n` diagram yields the last code run `(n-1, ..., I)`.

use crate::arc::{Arc, ArcDiagram};
use crate::error::{Error, Result};
use crate::fibonacci::Chain;
use crate::half::{glue, HalfArcDiagram};
use crate::perm::Permutation;
use crate::poly::Monomial;
use crate::rewrite::Word;

/// `G_{w_1} ··· G_{w_l}` with all `y` set to 1: loop monomial and diagram.
pub fn evaluate_word(w: &Word) -> Result<(Monomial, ArcDiagram)> {
    let n = w.rank();
    let mut d = ArcDiagram::identity(n);
    let mut m = Monomial::one();
    for i in w.letters() {
        let (lm, nd) = d.product_y1(&ArcDiagram::generator(i, n)?)?;
        m = &m * &lm;
        d = nd;
    }
    Ok((m, d))
}

pub fn perm_to_diagram(sigma: &Permutation) -> Result<ArcDiagram> {
    let w = Word::code_word(sigma);
    let (m, d) = evaluate_word(&w)?;
    if !m.is_one() {
        return Err(Error::Invariant(format!(
            "code-word {w} of {sigma} produced loops {m}"
        )));
    }
    Ok(d)
}

/// Removes the arc `{n, -n}` of height `n`, if present.
fn strip_top(d: &ArcDiagram) -> Option<ArcDiagram> {
    let n = d.rank();
    let top = n as i32;
    if n == 0 || !d.has_arc(top, -top, n) {
        return None;
    }
    let arcs: Vec<Arc> = d
        .arcs()
        .into_iter()
        .filter(|a| a.ends[0].value() != top)
        .collect();
    Some(ArcDiagram::from_arcs(n - 1, &arcs).expect("removing the top arc keeps validity"))
}

fn code_word_of(d: &ArcDiagram) -> Result<Vec<usize>> {
    let n = d.rank();
    if n <= 1 {
        return Ok(Vec::new());
    }
    if let Some(inner) = strip_top(d) {
        return code_word_of(&inner);
    }
    let (flat, cap) = d.peel()?;
    let mut w = code_word_of(&flat)?;
    w.extend((cap..n).rev());
    Ok(w)
}

pub fn diagram_to_perm(d: &ArcDiagram) -> Result<Permutation> {
    d.validate()?;
    let w = code_word_of(d)?;
    Permutation::from_word(&w, d.rank())
}

/// `(chain_of⟨D|, chain_of|D⟩)` for `D` the diagram of `σ`.
pub fn rs(sigma: &Permutation) -> Result<(Chain, Chain)> {
    let d = perm_to_diagram(sigma)?;
    Ok((d.bra().chain_of(), d.ket().chain_of()))
}

pub fn rs_inverse(p: &Chain, q: &Chain) -> Result<Permutation> {
    if p.endpoint() != q.endpoint() {
        return Err(Error::InvalidChain(format!(
            "chains end at {} and {}",
            p.endpoint(),
            q.endpoint()
        )));
    }
    let l = HalfArcDiagram::chain_inverse(p)?;
    let r = HalfArcDiagram::chain_inverse(q)?;
    diagram_to_perm(&glue(&l, &r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci::FibonacciSet;

    #[test]
    fn small_cases() {
        for n in 0..=5 {
            assert_eq!(
                perm_to_diagram(&Permutation::identity(n)).unwrap(),
                ArcDiagram::identity(n)
            );
            assert_eq!(
                diagram_to_perm(&ArcDiagram::identity(n)).unwrap(),
                Permutation::identity(n)
            );
        }
        let t = Permutation::new(vec![2, 1]).unwrap();
        let g = ArcDiagram::generator(1, 2).unwrap();
        assert_eq!(perm_to_diagram(&t).unwrap(), g);
        assert_eq!(diagram_to_perm(&g).unwrap(), t);
    }

    #[test]
    fn roundtrip_and_bijectivity() {
        for n in 0..=6 {
            let mut seen = std::collections::HashSet::new();
            for p in Permutation::all(n) {
                let d = perm_to_diagram(&p).unwrap();
                assert!(d.is_valid());
                assert_eq!(diagram_to_perm(&d).unwrap(), p);
                assert_eq!(d.mirror(), perm_to_diagram(&p.inverse()).unwrap());
                seen.insert(d);
            }
            assert_eq!(seen.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn rs_identity_and_inverse() {
        let id = Permutation::identity(5);
        let (p, q) = rs(&id).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.endpoint(), &FibonacciSet::full(5));
        for sigma in Permutation::all(5) {
            let (p, q) = rs(&sigma).unwrap();
            assert_eq!(rs_inverse(&p, &q).unwrap(), sigma);
            let (pi, qi) = rs(&sigma.inverse()).unwrap();
            assert_eq!((pi, qi), (q, p));
        }
    }
}
