//! Half arc diagrams: the positive half of an arc diagram, where every
//! arc leaving for the right boundary is cut to a half arc that keeps its
//! height label.
//!
//! A half diagram is scanned from node 1 upward. Half arcs behave like arcs
//! that close beyond node `N`, so they may not sit under a full arc, and a
//! later arc is nested under every earlier half arc.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::{Arc, ArcDiagram, Endpoint, MAX_RANK};
use crate::error::{Error, Result};
use crate::fibonacci::{enumerate_yfs, saturated_chains, Chain, FibonacciSet};

const HALF: u8 = u8::MAX;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfArcDiagram {
    rank: u8,
    /// Partner node index (0-based), or `HALF` for a half arc.
    partner: Vec<u8>,
    height: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FullArc {
    pub ends: [usize; 2],
    pub height: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfArc {
    pub end: usize,
    pub height: usize,
}

impl HalfArcDiagram {
    pub fn new(rank: usize, full_arcs: &[FullArc], half_arcs: &[HalfArc]) -> Result<Self> {
        let h = HalfArcDiagram::new_unvalidated(rank, full_arcs, half_arcs)?;
        h.validate()?;
        Ok(h)
    }

    /// Checks only that the arcs partition `[N]`.
    pub fn new_unvalidated(rank: usize, full_arcs: &[FullArc], half_arcs: &[HalfArc]) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::Precondition(format!(
                "rank {rank} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        let mut partner = vec![0u8; rank];
        let mut height = vec![0u8; rank];
        let mut used = vec![false; rank];
        let mut claim = |node: usize| -> Result<usize> {
            if node == 0 || node > rank {
                return Err(Error::Structure(format!(
                    "node {node} out of range for rank {rank}"
                )));
            }
            if used[node - 1] {
                return Err(Error::Structure(format!("node {node} used twice")));
            }
            used[node - 1] = true;
            Ok(node - 1)
        };
        for arc in full_arcs {
            let p = claim(arc.ends[0])?;
            let q = claim(arc.ends[1])?;
            partner[p] = q as u8;
            partner[q] = p as u8;
            height[p] = label(arc.height)?;
            height[q] = label(arc.height)?;
        }
        for arc in half_arcs {
            let p = claim(arc.end)?;
            partner[p] = HALF;
            height[p] = label(arc.height)?;
        }
        if let Some(p) = used.iter().position(|&u| !u) {
            return Err(Error::Structure(format!("node {} is not covered", p + 1)));
        }
        Ok(HalfArcDiagram {
            rank: rank as u8,
            partner,
            height,
        })
    }

    /// Non-crossing (a `Structure` error), then bound, parity and strict
    /// nesting of heights (a `Label` error).
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        let mut open: Vec<usize> = Vec::new();
        for p in 0..n {
            match self.partner[p] {
                HALF => {
                    if let Some(&q) = open.last() {
                        if self.partner[q] != HALF {
                            return Err(Error::Structure(format!(
                                "half arc at {} lies under a full arc",
                                p + 1
                            )));
                        }
                    }
                    open.push(p);
                }
                q if (q as usize) > p => open.push(p),
                q => {
                    if open.pop() != Some(q as usize) {
                        return Err(Error::Structure(format!(
                            "arc {{{},{}}} crosses another arc",
                            q + 1,
                            p + 1
                        )));
                    }
                }
            }
        }
        let mut stack: Vec<usize> = Vec::new();
        for p in 0..n {
            let q = self.partner[p];
            if q != HALF && (q as usize) < p {
                stack.pop();
                continue;
            }
            let h = self.height[p] as usize;
            let m = p + 1;
            if h < 1 || h > m || (m - h) % 2 != 0 {
                return Err(Error::Label(format!(
                    "arc at node {m} has height {h}, which must be in 1..={m} with the parity of {m}"
                )));
            }
            if let Some(&outer) = stack.last() {
                if self.height[outer] as usize >= h {
                    return Err(Error::Label(format!(
                        "arc at node {m} with height {h} is nested under an arc of height {}",
                        self.height[outer]
                    )));
                }
            }
            stack.push(p);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn empty() -> Self {
        HalfArcDiagram {
            rank: 0,
            partner: Vec::new(),
            height: Vec::new(),
        }
    }

    pub fn full_arcs(&self) -> Vec<FullArc> {
        (0..self.rank())
            .filter(|&p| self.partner[p] != HALF && self.partner[p] as usize > p)
            .map(|p| FullArc {
                ends: [p + 1, self.partner[p] as usize + 1],
                height: self.height[p] as usize,
            })
            .collect()
    }

    pub fn half_arcs(&self) -> Vec<HalfArc> {
        (0..self.rank())
            .filter(|&p| self.partner[p] == HALF)
            .map(|p| HalfArc {
                end: p + 1,
                height: self.height[p] as usize,
            })
            .collect()
    }

    /// Heights of the half arcs, as a Fibonacci set of rank `N`.
    ///
    /// Panics if `self` fails [`HalfArcDiagram::validate`].
    pub fn prop_lab(&self) -> FibonacciSet {
        let labels: Vec<usize> = self.half_arcs().iter().map(|a| a.height).collect();
        FibonacciSet::new(self.rank(), labels.clone()).unwrap_or_else(|e| {
            panic!("half diagram {self} has propagating labels {labels:?}: {e}")
        })
    }

    /// `H/[r]`: nodes `1..=r`, with arcs leaving `[r]` cut to half arcs.
    pub fn restrict(&self, r: usize) -> Result<HalfArcDiagram> {
        if r > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: r,
                rank: self.rank(),
            });
        }
        let partner = (0..r)
            .map(|p| {
                let q = self.partner[p];
                if q == HALF || q as usize >= r {
                    HALF
                } else {
                    q
                }
            })
            .collect();
        Ok(HalfArcDiagram {
            rank: r as u8,
            partner,
            height: self.height[..r].to_vec(),
        })
    }

    /// `C_i = PropLab(H/[i])` for `i = 0..=N`.
    pub fn chain_of(&self) -> Chain {
        let sets = (0..=self.rank())
            .map(|r| self.restrict(r).expect("r is in range").prop_lab())
            .collect();
        Chain::new(sets).unwrap_or_else(|e| panic!("restrictions of {self} do not form a chain: {e}"))
    }

    /// Rebuilds the half diagram whose restrictions give `chain`.
    pub fn chain_inverse(chain: &Chain) -> Result<HalfArcDiagram> {
        let sets = chain.sets();
        let n = chain.rank();
        let mut partner = vec![HALF; n];
        let mut height = vec![0u8; n];
        let mut open: Vec<usize> = Vec::new();
        for i in 1..=n {
            let (prev, cur) = (&sets[i - 1], &sets[i]);
            if cur.len() == prev.len() + 1 {
                let t = cur.max().expect("nonempty after growing");
                partner[i - 1] = HALF;
                height[i - 1] = t as u8;
                open.push(i - 1);
            } else if cur.len() + 1 == prev.len() {
                let c = open.pop().ok_or_else(|| {
                    Error::InvalidChain(format!("step {i} shrinks with no open half arc"))
                })?;
                partner[c] = (i - 1) as u8;
                partner[i - 1] = c as u8;
                height[i - 1] = height[c];
            } else {
                return Err(Error::InvalidChain(format!(
                    "step {i} from {prev} to {cur} is not a cover"
                )));
            }
        }
        let h = HalfArcDiagram {
            rank: n as u8,
            partner,
            height,
        };
        h.validate().map_err(|e| {
            Error::Invariant(format!("chain {chain} rebuilt an invalid half diagram: {e}"))
        })?;
        Ok(h)
    }
}

impl ArcDiagram {
    /// `⟨D|`: the positive half.
    pub fn bra(&self) -> HalfArcDiagram {
        let n = self.rank();
        let mut partner = vec![HALF; n];
        let mut height = vec![0u8; n];
        for p in 0..n {
            let q = self.partner_pos(p);
            if q < n {
                partner[p] = q as u8;
            }
            height[p] = self.height_pos(p) as u8;
        }
        HalfArcDiagram {
            rank: n as u8,
            partner,
            height,
        }
    }

    /// `|D⟩ = ⟨mirror(D)|`.
    pub fn ket(&self) -> HalfArcDiagram {
        self.mirror().bra()
    }

    pub fn prop_lab(&self) -> FibonacciSet {
        self.bra().prop_lab()
    }
}

/// The unique diagram `D` with `⟨D| = left` and `|D⟩ = right`.
pub fn glue(left: &HalfArcDiagram, right: &HalfArcDiagram) -> Result<ArcDiagram> {
    if left.rank() != right.rank() {
        return Err(Error::RankMismatch(left.rank(), right.rank()));
    }
    let (pl, pr) = (left.prop_lab(), right.prop_lab());
    if pl != pr {
        return Err(Error::PropLabMismatch {
            left: pl.to_string(),
            right: pr.to_string(),
        });
    }
    let n = left.rank();
    let mut arcs: Vec<Arc> = Vec::with_capacity(n);
    let to_arc = |a: i32, b: i32, h: usize| Arc {
        ends: [Endpoint::new(a).unwrap(), Endpoint::new(b).unwrap()],
        height: h,
    };
    for f in left.full_arcs() {
        arcs.push(to_arc(f.ends[0] as i32, f.ends[1] as i32, f.height));
    }
    for f in right.full_arcs() {
        arcs.push(to_arc(-(f.ends[0] as i32), -(f.ends[1] as i32), f.height));
    }
    for (a, b) in left.half_arcs().iter().zip(right.half_arcs()) {
        arcs.push(to_arc(a.end as i32, -(b.end as i32), a.height));
    }
    ArcDiagram::from_arcs(n, &arcs)
        .map_err(|e| Error::Invariant(format!("gluing {left} and {right} failed: {e}")))
}

/// All half diagrams of rank `n`, optionally restricted to those with
/// `PropLab = s`. Ordered by propagating label set, then by chain.
pub fn enumerate_half(n: usize, s: Option<&FibonacciSet>) -> Result<Vec<HalfArcDiagram>> {
    let targets = match s {
        Some(s) if s.rank() != n => return Err(Error::RankMismatch(s.rank(), n)),
        Some(s) => vec![s.clone()],
        None => enumerate_yfs(n),
    };
    let mut out = Vec::new();
    for t in targets {
        for c in saturated_chains(&t) {
            out.push(HalfArcDiagram::chain_inverse(&c)?);
        }
    }
    Ok(out)
}

/// All valid arc diagrams of rank `n`, sorted.
pub fn enumerate_diagrams(n: usize) -> Vec<ArcDiagram> {
    let mut out: Vec<ArcDiagram> = enumerate_yfs(n)
        .par_iter()
        .flat_map_iter(|s| {
            let halves = enumerate_half(n, Some(s)).expect("rank matches");
            let mut local = Vec::with_capacity(halves.len() * halves.len());
            for l in &halves {
                for r in &halves {
                    local.push(glue(l, r).expect("equal propagating labels"));
                }
            }
            local
        })
        .collect();
    out.sort_unstable();
    out
}

/// Calls `f` on every diagram of rank `n` grouped by propagating label set,
/// without materializing the whole list. Work is split over rayon threads;
/// `f` sees each diagram exactly once, in no particular order.
pub fn for_each_diagram<F>(n: usize, f: F)
where
    F: Fn(&ArcDiagram) + Sync,
{
    let blocks: Vec<Vec<HalfArcDiagram>> = enumerate_yfs(n)
        .iter()
        .map(|s| enumerate_half(n, Some(s)).expect("rank matches"))
        .collect();
    let pairs: Vec<(usize, usize)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, hs)| (0..hs.len()).map(move |i| (b, i)))
        .collect();
    pairs.par_iter().for_each(|&(b, i)| {
        let l = &blocks[b][i];
        for r in &blocks[b] {
            f(&glue(l, r).expect("equal propagating labels"));
        }
    });
}

impl fmt::Display for HalfArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        let mut first = true;
        for p in 0..self.rank() {
            let q = self.partner[p];
            if q != HALF && (q as usize) < p {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if q == HALF {
                write!(f, "{}h{}", p + 1, self.height[p])?;
            } else {
                write!(f, "{{{},{}}}h{}", p + 1, q + 1, self.height[p])?;
            }
        }
        write!(f, "|_{}", self.rank)
    }
}

impl fmt::Debug for HalfArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfArcDiagram({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HalfJson {
    rank: usize,
    full_arcs: Vec<FullArc>,
    half_arcs: Vec<HalfArc>,
}

impl Serialize for HalfArcDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        HalfJson {
            rank: self.rank(),
            full_arcs: self.full_arcs(),
            half_arcs: self.half_arcs(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for HalfArcDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = HalfJson::deserialize(de)?;
        HalfArcDiagram::new(raw.rank, &raw.full_arcs, &raw.half_arcs)
            .map_err(serde::de::Error::custom)
    }
}

fn label(h: usize) -> Result<u8> {
    u8::try_from(h).map_err(|_| Error::Label(format!("height {h} too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rank: usize, el: &[usize]) -> FibonacciSet {
        FibonacciSet::new(rank, el.to_vec()).unwrap()
    }

    fn diagram(n: usize, arcs: &[(i32, i32, usize)]) -> ArcDiagram {
        let arcs: Vec<Arc> = arcs
            .iter()
            .map(|&(a, b, h)| Arc::new(a, b, h).unwrap())
            .collect();
        ArcDiagram::from_arcs(n, &arcs).unwrap()
    }

    fn chain(n: usize, sets: &[&[usize]]) -> Chain {
        Chain::new(
            sets.iter()
                .enumerate()
                .map(|(i, s)| FibonacciSet::new(i, s.to_vec()).unwrap())
                .collect(),
        )
        .inspect(|c| assert_eq!(c.rank(), n))
        .unwrap()
    }

    fn two_chain_diagram() -> ArcDiagram {
        diagram(
            8,
            &[
                (-3, 1, 1),
                (-8, 4, 2),
                (5, 8, 3),
                (-2, -1, 1),
                (2, 3, 2),
                (-7, -4, 4),
                (6, 7, 6),
                (-6, -5, 5),
            ],
        )
    }

    #[test]
    fn identity_halves() {
        for n in 0..=6 {
            let id = ArcDiagram::identity(n);
            let b = id.bra();
            assert_eq!(b.half_arcs().len(), n);
            assert_eq!(b.prop_lab(), FibonacciSet::full(n));
            let want: Vec<FibonacciSet> = (0..=n).map(FibonacciSet::full).collect();
            assert_eq!(b.chain_of().sets(), want.as_slice());
            assert_eq!(glue(&b, &id.ket()).unwrap(), id);
        }
        let g = ArcDiagram::generator(1, 2).unwrap();
        assert_eq!(g.bra().full_arcs(), vec![FullArc { ends: [1, 2], height: 1 }]);
        assert_eq!(g.prop_lab(), set(2, &[]));
    }

    #[test]
    fn two_chain_example() {
        let d = two_chain_diagram();
        assert_eq!(d.prop_lab(), set(8, &[1, 2]));
        let left = chain(
            8,
            &[&[], &[1], &[1, 2], &[1], &[1, 2], &[1, 2, 3], &[1, 2, 3, 6], &[1, 2, 3], &[1, 2]],
        );
        let right = chain(
            8,
            &[&[], &[1], &[], &[1], &[1, 4], &[1, 4, 5], &[1, 4], &[1], &[1, 2]],
        );
        assert_eq!(d.bra().chain_of(), left);
        assert_eq!(d.ket().chain_of(), right);
        assert_eq!(d.bra().restrict(6).unwrap().prop_lab(), set(6, &[1, 2, 3, 6]));
        assert_eq!(HalfArcDiagram::chain_inverse(&left).unwrap(), d.bra());
        assert_eq!(HalfArcDiagram::chain_inverse(&right).unwrap(), d.ket());
        assert_eq!(glue(&d.bra(), &d.ket()).unwrap(), d);
    }

    #[test]
    fn restriction_is_functorial() {
        let h = two_chain_diagram().bra();
        assert_eq!(h.restrict(8).unwrap(), h);
        assert_eq!(h.restrict(0).unwrap(), HalfArcDiagram::empty());
        for s in 0..=8 {
            for r in 0..=s {
                assert_eq!(
                    h.restrict(s).unwrap().restrict(r).unwrap(),
                    h.restrict(r).unwrap()
                );
            }
        }
        assert!(h.restrict(9).is_err());
    }

    #[test]
    fn glue_rejects_mismatch() {
        let a = ArcDiagram::identity(2).bra();
        let b = ArcDiagram::generator(1, 2).unwrap().bra();
        assert!(matches!(glue(&a, &b), Err(Error::PropLabMismatch { .. })));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_half(3, Some(&set(3, &[1]))).unwrap().len(), 2);
        assert_eq!(enumerate_diagrams(4).len(), 24);
        assert_eq!(enumerate_diagrams(0), vec![ArcDiagram::identity(0)]);
    }

    #[test]
    fn half_validation() {
        let under = HalfArcDiagram::new(
            3,
            &[FullArc { ends: [1, 3], height: 1 }],
            &[HalfArc { end: 2, height: 2 }],
        );
        assert!(matches!(under, Err(Error::Structure(_))));
        let bad_label = HalfArcDiagram::new(1, &[], &[HalfArc { end: 1, height: 2 }]);
        assert!(matches!(bad_label, Err(Error::Label(_))));
        let ok = HalfArcDiagram::new(
            3,
            &[FullArc { ends: [2, 3], height: 2 }],
            &[HalfArc { end: 1, height: 1 }],
        )
        .unwrap();
        let j = serde_json::to_string(&ok).unwrap();
        assert_eq!(
            j,
            r#"{"rank":3,"full_arcs":[{"ends":[2,3],"height":2}],"half_arcs":[{"end":1,"height":1}]}"#
        );
        assert_eq!(serde_json::from_str::<HalfArcDiagram>(&j).unwrap(), ok);
    }
}
