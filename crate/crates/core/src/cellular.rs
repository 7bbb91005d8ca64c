//! The cellular structure: basis `C^S_{L,R} = glue(L, R)` over the
//! dominance lattice, cell modules spanned by half diagrams, and their
//! bilinear forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::arc::ArcDiagram;
use crate::dominance::{dominance_lt, DominanceLattice};
use crate::error::{Error, Result};
use crate::fibonacci::FibonacciSet;
use crate::half::{enumerate_half, glue, HalfArcDiagram};
use crate::perm::Permutation;
use crate::poly::{bareiss_determinant, rational_determinant, Polynomial, Var};
use crate::rewrite::multiply_words;
use crate::rewrite::Word;
use crate::theta::{diagram_to_perm, perm_to_diagram};

pub struct CellDatum {
    pub lattice: DominanceLattice,
    /// Half diagrams with each propagating label set, in lattice order.
    pub cells: Vec<(FibonacciSet, Vec<HalfArcDiagram>)>,
}

impl CellDatum {
    pub fn new(n: usize) -> Result<Self> {
        let lattice = DominanceLattice::new(n);
        let cells = lattice
            .elements()
            .iter()
            .map(|s| Ok((s.clone(), enumerate_half(n, Some(s))?)))
            .collect::<Result<_>>()?;
        Ok(CellDatum { lattice, cells })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn cell(&self, s: &FibonacciSet) -> Result<&[HalfArcDiagram]> {
        let i = self.lattice.index_of(s)?;
        Ok(&self.cells[i].1)
    }

    pub fn basis_element(&self, l: &HalfArcDiagram, r: &HalfArcDiagram) -> Result<ArcDiagram> {
        glue(l, r)
    }

    /// Every basis diagram exactly once, grouped by cell.
    pub fn all_basis_elements(&self) -> Result<Vec<ArcDiagram>> {
        let mut out = Vec::new();
        for (_, halves) in &self.cells {
            for l in halves {
                for r in halves {
                    out.push(glue(l, r)?);
                }
            }
        }
        Ok(out)
    }
}

/// A vector of the cell module: half diagrams with coefficients.
pub type CellVector = BTreeMap<HalfArcDiagram, Polynomial>;

fn product_of_diagrams(a: &ArcDiagram, b: &ArcDiagram) -> Result<(Polynomial, ArcDiagram)> {
    let wa = Word::code_word(&diagram_to_perm(a)?);
    let wb = Word::code_word(&diagram_to_perm(b)?);
    let r = multiply_words(&wa, &wb)?;
    Ok((r.coefficient.into(), perm_to_diagram(&r.permutation)?))
}

/// `D • H`: the positive half of `D · glue(H, H)` with its coefficient when
/// the propagating labels stay equal to `S`, and zero otherwise.
pub fn cell_action(d: &ArcDiagram, h: &HalfArcDiagram, s: &FibonacciSet) -> Result<CellVector> {
    let ps = h.prop_lab();
    if &ps != s {
        return Err(Error::PropLabMismatch {
            left: ps.to_string(),
            right: s.to_string(),
        });
    }
    let (c, p) = product_of_diagrams(d, &glue(h, h)?)?;
    let mut out = CellVector::new();
    if &p.prop_lab() == s {
        out.insert(p.bra(), c);
    }
    Ok(out)
}

/// Extends [`cell_action`] linearly to algebra elements and cell vectors.
pub fn act(a: &AlgebraElement, v: &CellVector, s: &FibonacciSet) -> Result<CellVector> {
    let mut out = CellVector::new();
    for (p, ca) in a.terms() {
        let d = perm_to_diagram(p)?;
        for (h, cv) in v {
            for (h2, c) in cell_action(&d, h, s)? {
                let term = &(ca * cv) * &c;
                let slot = out.entry(h2).or_default();
                *slot += &term;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// How `a · C^S_{L,R}` decomposes: either into the span of lower cells,
/// or as a multiple of a single `C^S_{L',R}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellProduct {
    Lower,
    Same { left: HalfArcDiagram, coeff: Polynomial },
}

/// Classifies `a · glue(L, R)`; fails if the product escapes the cell
/// filtration or changes the right half.
pub fn left_multiply_cell(
    a: &ArcDiagram,
    l: &HalfArcDiagram,
    r: &HalfArcDiagram,
) -> Result<CellProduct> {
    let s = l.prop_lab();
    let (c, p) = product_of_diagrams(a, &glue(l, r)?)?;
    let ps = p.prop_lab();
    if ps == s {
        if &p.ket() != r {
            return Err(Error::Invariant(format!(
                "product of {a} with the basis element ({l}, {r}) changed the right half"
            )));
        }
        Ok(CellProduct::Same {
            left: p.bra(),
            coeff: c,
        })
    } else if dominance_lt(&ps, &s)? {
        Ok(CellProduct::Lower)
    } else {
        Err(Error::Invariant(format!(
            "product of {a} with the basis element ({l}, {r}) lies in cell {ps}, not below {s}"
        )))
    }
}

/// The bilinear form on the cell module of `S`, computed from
/// `C_{L0,R} · C_{L',L0} ≡ φ(R, L') · C_{L0,L0}` modulo lower cells, with
/// `L0` the first half diagram of the cell.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub set: FibonacciSet,
    pub basis: Vec<HalfArcDiagram>,
    pub entries: Vec<Vec<Polynomial>>,
}

pub fn gram_matrix(s: &FibonacciSet) -> Result<GramMatrix> {
    let basis = enumerate_half(s.rank(), Some(s))?;
    let l0 = basis.first().expect("every cell is nonempty");
    gram_matrix_with(s, &basis, l0, l0)
}

/// The form extracted with an arbitrary choice of the outer halves `L` and
/// `R'` of the two basis elements.
pub fn gram_matrix_with(
    s: &FibonacciSet,
    basis: &[HalfArcDiagram],
    outer_left: &HalfArcDiagram,
    outer_right: &HalfArcDiagram,
) -> Result<GramMatrix> {
    let target = glue(outer_left, outer_right)?;
    let n = basis.len();
    let rows: Vec<Vec<Polynomial>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = glue(outer_left, &basis[i])?;
            (0..n)
                .map(|j| {
                    let b = glue(&basis[j], outer_right)?;
                    let (c, p) = product_of_diagrams(&a, &b)?;
                    if &p.prop_lab() != s {
                        return Ok(Polynomial::zero());
                    }
                    if p != target {
                        return Err(Error::Invariant(format!(
                            "cell product landed on {p} instead of {target}"
                        )));
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(GramMatrix {
        set: s.clone(),
        basis: basis.to_vec(),
        entries: rows,
    })
}

impl GramMatrix {
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        bareiss_determinant(&self.entries)
            .ok_or_else(|| Error::Invariant("inexact division in determinant".into()))
    }

    pub fn determinant_at(&self, value: impl Fn(Var) -> BigRational + Sync) -> BigRational {
        let m: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(&value)).collect())
            .collect();
        rational_determinant(&m)
    }

    /// Specializes every `y_k` to 1.
    pub fn y_one(&self) -> GramMatrix {
        GramMatrix {
            set: self.set.clone(),
            basis: self.basis.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(Polynomial::specialize_y_one).collect())
                .collect(),
        }
    }
}

/// Convenience: a value assignment from two integer lists.
pub fn assignment<'a>(xs: &'a [i64], ys: &'a [i64]) -> impl Fn(Var) -> BigRational + Sync + 'a {
    move |v| {
        let k = match v {
            Var::X(k) => xs.get(k - 1),
            Var::Y(k) => ys.get(k - 1),
        };
        BigRational::from_integer(BigInt::from(*k.unwrap_or(&1)))
    }
}

/// The permutation indexing `glue(L, R)`.
pub fn basis_permutation(l: &HalfArcDiagram, r: &HalfArcDiagram) -> Result<Permutation> {
    diagram_to_perm(&glue(l, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci::enumerate_yfs;
    use num_traits::Zero;

    #[test]
    fn identity_cell() {
        for n in 1..=5 {
            let g = gram_matrix(&FibonacciSet::full(n)).unwrap();
            assert_eq!(g.entries, vec![vec![Polynomial::one()]]);
        }
    }

    #[test]
    fn identity_acts_trivially() {
        for n in 1..=4 {
            for s in enumerate_yfs(n) {
                for h in enumerate_half(n, Some(&s)).unwrap() {
                    let v = cell_action(&ArcDiagram::identity(n), &h, &s).unwrap();
                    assert_eq!(v, CellVector::from([(h.clone(), Polynomial::one())]));
                }
            }
        }
    }

    #[test]
    fn gram_matrices_are_symmetric_and_nonsingular() {
        let xs = [3, 5, 7, 11];
        let ys = [13, 17, 19];
        for n in 1..=4 {
            for s in enumerate_yfs(n) {
                let g = gram_matrix(&s).unwrap();
                assert!(g.is_symmetric(), "{s}");
                assert!(!g.determinant_at(assignment(&xs, &ys)).is_zero(), "{s}");
                let det = g.determinant().unwrap();
                assert_eq!(det.evaluate(assignment(&xs, &ys)), g.determinant_at(assignment(&xs, &ys)));
            }
        }
    }

    #[test]
    fn rank_three_small_cell() {
        let s = FibonacciSet::new(3, vec![1]).unwrap();
        let g = gram_matrix(&s).unwrap();
        assert_eq!(g.basis.len(), 2);
        assert!(!g.determinant().unwrap().is_zero());
    }
}
