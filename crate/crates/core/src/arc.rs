//! Height-labeled non-crossing arc diagrams.
//!
//! The `2N` endpoints `1 < 2 < ... < N < N̄ < ... < 1̄` are stored by their
//! position in that order (`a ↦ a - 1`, `ā ↦ 2N - a`); overlined endpoints
//! are written as negative integers. A diagram keeps, for each position, the
//! position of its partner and the height label of the arc through it. This
//! array form is canonical, so derived equality, ordering and hashing are
//! those of the underlying diagram.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Var};

/// Largest supported rank. Positions and heights fit in a byte.
pub const MAX_RANK: usize = 127;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Endpoint(i32);

impl Endpoint {
    pub fn new(value: i32) -> Result<Self> {
        if value == 0 {
            return Err(Error::Structure("endpoint 0 does not exist".into()));
        }
        Ok(Endpoint(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn abs(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_left(self) -> bool {
        self.0 > 0
    }

    pub fn position(self, rank: usize) -> usize {
        if self.0 > 0 {
            self.0 as usize - 1
        } else {
            2 * rank - self.abs()
        }
    }

    pub fn from_position(pos: usize, rank: usize) -> Self {
        if pos < rank {
            Endpoint(pos as i32 + 1)
        } else {
            Endpoint(-((2 * rank - pos) as i32))
        }
    }

    fn key(self) -> (bool, i32) {
        (self.0 < 0, self.0)
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arc {
    pub ends: [Endpoint; 2],
    pub height: usize,
}

impl Arc {
    pub fn new(a: i32, b: i32, height: usize) -> Result<Self> {
        Ok(Arc {
            ends: [Endpoint::new(a)?, Endpoint::new(b)?],
            height,
        })
    }

    pub fn is_propagating(&self) -> bool {
        self.ends[0].is_left() != self.ends[1].is_left()
    }
}

/// Loops of one height removed during a composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopRecord {
    pub height: usize,
    pub count: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcDiagram {
    rank: u8,
    partner: Vec<u8>,
    height: Vec<u8>,
}

impl ArcDiagram {
    /// Builds a diagram from arcs, checking that they form a perfect
    /// matching but not the non-crossing or label conditions.
    pub fn from_arcs_unvalidated(rank: usize, arcs: &[Arc]) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::Precondition(format!(
                "rank {rank} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        let n2 = 2 * rank;
        let mut partner = vec![u8::MAX; n2];
        let mut height = vec![0u8; n2];
        for arc in arcs {
            let [a, b] = arc.ends;
            for e in [a, b] {
                if e.abs() > rank {
                    return Err(Error::Structure(format!(
                        "endpoint {e} out of range for rank {rank}"
                    )));
                }
            }
            if a == b {
                return Err(Error::Structure(format!("arc joins {a} to itself")));
            }
            let (p, q) = (a.position(rank), b.position(rank));
            for (e, pos) in [(a, p), (b, q)] {
                if partner[pos] != u8::MAX {
                    return Err(Error::Structure(format!("endpoint {e} used twice")));
                }
                partner[pos] = 0;
            }
            if arc.height > u8::MAX as usize {
                return Err(Error::Label(format!("height {} too large", arc.height)));
            }
            partner[p] = q as u8;
            partner[q] = p as u8;
            height[p] = arc.height as u8;
            height[q] = arc.height as u8;
        }
        if let Some(p) = partner.iter().position(|&q| q == u8::MAX) {
            return Err(Error::Structure(format!(
                "endpoint {} is not matched",
                Endpoint::from_position(p, rank)
            )));
        }
        Ok(ArcDiagram {
            rank: rank as u8,
            partner,
            height,
        })
    }

    /// Builds and fully validates a diagram.
    pub fn from_arcs(rank: usize, arcs: &[Arc]) -> Result<Self> {
        let d = ArcDiagram::from_arcs_unvalidated(rank, arcs)?;
        d.validate()?;
        Ok(d)
    }

    /// Checks non-crossing (a `Structure` error) and the three height
    /// conditions (a `Label` error).
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        let mut stack: Vec<usize> = Vec::new();
        for p in 0..2 * n {
            let q = self.partner[p] as usize;
            if q > p {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return Err(Error::Structure(format!(
                    "arc {{{},{}}} crosses another arc",
                    Endpoint::from_position(q, n),
                    Endpoint::from_position(p, n)
                )));
            }
        }
        for p in 0..2 * n {
            let q = self.partner[p] as usize;
            if q > p {
                let h = self.height[p] as usize;
                let a = Endpoint::from_position(p, n);
                let b = Endpoint::from_position(q, n);
                let m = a.abs().min(b.abs());
                if h < 1 || h > m {
                    return Err(Error::Label(format!(
                        "arc {{{a},{b}}} has height {h} outside 1..={m}"
                    )));
                }
                if (m - h) % 2 != 0 {
                    return Err(Error::Label(format!(
                        "arc {{{a},{b}}} has height {h} of the wrong parity"
                    )));
                }
                if let Some(&outer) = stack.last() {
                    if self.height[outer] as usize >= h {
                        return Err(Error::Label(format!(
                            "arc {{{a},{b}}} with height {h} is nested under an arc of height {}",
                            self.height[outer]
                        )));
                    }
                }
                stack.push(p);
            } else {
                stack.pop();
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// The empty diagram of rank 0 is the unit of the rank-0 monoid.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        let partner = (0..2 * n).map(|p| (2 * n - 1 - p) as u8).collect();
        let height = (0..2 * n)
            .map(|p| Endpoint::from_position(p, n).abs() as u8)
            .collect();
        ArcDiagram {
            rank: n as u8,
            partner,
            height,
        }
    }

    /// The elementary diagram `G_i` for `1 ≤ i < N`.
    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let mut d = ArcDiagram::identity(n);
        let (l1, l2) = (i - 1, i);
        let (r1, r2) = (2 * n - i, 2 * n - i - 1);
        d.set_arc(l1, l2, i);
        d.set_arc(r2, r1, i);
        Ok(d)
    }

    fn set_arc(&mut self, p: usize, q: usize, h: usize) {
        self.partner[p] = q as u8;
        self.partner[q] = p as u8;
        self.height[p] = h as u8;
        self.height[q] = h as u8;
    }

    /// Embeds into rank `N + 1` by adding the arc `{N+1, -(N+1)}` of
    /// height `N + 1`.
    pub fn iota(&self) -> Self {
        let n = self.rank();
        let mut arcs = self.arcs();
        arcs.push(Arc {
            ends: [Endpoint(n as i32 + 1), Endpoint(-(n as i32 + 1))],
            height: n + 1,
        });
        ArcDiagram::from_arcs_unvalidated(n + 1, &arcs).expect("embedding keeps a matching")
    }

    /// Horizontal reflection: every endpoint changes sign.
    pub fn mirror(&self) -> Self {
        if self.rank == 0 {
            return self.clone();
        }
        let m = 2 * self.rank() - 1;
        let len = self.partner.len();
        let mut partner = vec![0u8; len];
        let mut height = vec![0u8; len];
        for p in 0..len {
            partner[p] = (m - self.partner[m - p] as usize) as u8;
            height[p] = self.height[m - p];
        }
        ArcDiagram {
            rank: self.rank,
            partner,
            height,
        }
    }

    /// Arcs sorted by their smaller endpoint.
    pub fn arcs(&self) -> Vec<Arc> {
        let n = self.rank();
        (0..2 * n)
            .filter(|&p| (self.partner[p] as usize) > p)
            .map(|p| Arc {
                ends: [
                    Endpoint::from_position(p, n),
                    Endpoint::from_position(self.partner[p] as usize, n),
                ],
                height: self.height[p] as usize,
            })
            .collect()
    }

    pub fn partner_of(&self, e: Endpoint) -> Endpoint {
        let n = self.rank();
        Endpoint::from_position(self.partner[e.position(n)] as usize, n)
    }

    pub fn height_of(&self, e: Endpoint) -> usize {
        self.height[e.position(self.rank())] as usize
    }

    pub fn has_arc(&self, a: i32, b: i32, h: usize) -> bool {
        let n = self.rank() as i32;
        if a == 0 || b == 0 || a.abs() > n || b.abs() > n {
            return false;
        }
        let (a, b) = (Endpoint(a), Endpoint(b));
        self.partner_of(a) == b && self.height_of(a) == h
    }

    /// Number of arcs joining a left endpoint to a right one.
    pub fn propagating_count(&self) -> usize {
        let n = self.rank();
        (0..n).filter(|&p| self.partner[p] as usize >= n).count()
    }

    pub(crate) fn partner_pos(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub(crate) fn height_pos(&self, p: usize) -> usize {
        self.height[p] as usize
    }

    /// Stacks `self` to the left of `other`, merging the right boundary of
    /// `self` with the left boundary of `other`. Each merged arc and each
    /// closed loop takes the minimum height of its fragments; loop heights
    /// are reported through `on_loop`.
    pub(crate) fn compose_with(&self, other: &ArcDiagram, mut on_loop: impl FnMut(u8)) -> ArcDiagram {
        let n = self.rank();
        debug_assert_eq!(n, other.rank());
        let n2 = 2 * n;
        let mut partner = vec![0u8; n2];
        let mut height = vec![0u8; n2];
        let mut done = vec![false; n2];
        // Middle node j (1-based) sits at position 2n - j of `self` and at
        // position j - 1 of `other`.
        let mut middle_seen = vec![false; n + 1];
        // Outer positions of the result coincide with the left positions of
        // `self` (p < n) and the right positions of `other` (p >= n).
        for start in 0..n2 {
            if done[start] {
                continue;
            }
            let mut in_self = start < n;
            let mut pos = start;
            let mut h = u8::MAX;
            let end = loop {
                let (q, hh) = if in_self {
                    (self.partner[pos] as usize, self.height[pos])
                } else {
                    (other.partner[pos] as usize, other.height[pos])
                };
                h = h.min(hh);
                if in_self {
                    if q < n {
                        break q;
                    }
                    let j = n2 - q;
                    middle_seen[j] = true;
                    in_self = false;
                    pos = j - 1;
                } else {
                    if q >= n {
                        break q;
                    }
                    let j = q + 1;
                    middle_seen[j] = true;
                    in_self = true;
                    pos = n2 - j;
                }
            };
            partner[start] = end as u8;
            partner[end] = start as u8;
            height[start] = h;
            height[end] = h;
            done[start] = true;
            done[end] = true;
        }
        for j0 in 1..=n {
            if middle_seen[j0] {
                continue;
            }
            let mut h = u8::MAX;
            let mut j = j0;
            loop {
                middle_seen[j] = true;
                let q = other.partner[j - 1] as usize;
                h = h.min(other.height[j - 1]);
                debug_assert!(q < n, "a loop only meets the middle boundary");
                let j2 = q + 1;
                middle_seen[j2] = true;
                let p = n2 - j2;
                h = h.min(self.height[p]);
                let q2 = self.partner[p] as usize;
                debug_assert!(q2 >= n);
                j = n2 - q2;
                if j == j0 {
                    break;
                }
            }
            on_loop(h);
        }
        ArcDiagram {
            rank: self.rank,
            partner,
            height,
        }
    }

    /// `[C ∘ D]` together with the loops removed, aggregated by height.
    pub fn compose(&self, other: &ArcDiagram) -> Result<(ArcDiagram, Vec<LoopRecord>)> {
        self.check_rank(other)?;
        let mut counts = vec![0usize; self.rank() + 1];
        let d = self.compose_with(other, |h| counts[h as usize] += 1);
        let loops = counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(height, count)| LoopRecord { height, count })
            .collect();
        Ok((d, loops))
    }

    /// Product with all `y` parameters set to 1: the loop monomial
    /// `∏ x_k^{ℓ_k}` and the reduced diagram.
    pub fn product_y1(&self, other: &ArcDiagram) -> Result<(Monomial, ArcDiagram)> {
        self.check_rank(other)?;
        let mut m = Monomial::one();
        let d = self.compose_with(other, |h| m.mul_var(Var::X(h as usize), 1));
        Ok((m, d))
    }

    /// Product with every parameter set to 1.
    pub fn monoid_product(&self, other: &ArcDiagram) -> Result<ArcDiagram> {
        self.check_rank(other)?;
        Ok(self.compose_with(other, |_| {}))
    }

    fn check_rank(&self, other: &ArcDiagram) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    /// Splits off the rightmost generators: returns `(D♭, I)` with
    /// `D = ι(D♭)·G_{N-1}···G_I`, where `I` is the largest index such that
    /// `D` has the right cap `{-I, -(I+1)}` of height `I`.
    pub fn peel(&self) -> Result<(ArcDiagram, usize)> {
        let n = self.rank();
        if n == 0 {
            return Err(Error::Precondition("cannot peel a rank 0 diagram".into()));
        }
        let top = n as i32;
        if self.has_arc(top, -top, n) {
            return Err(Error::Precondition(format!(
                "diagram contains the arc {{{top},{}}} of height {n}; it is in the image of iota",
                -top
            )));
        }
        let cap = (1..n)
            .rev()
            .find(|&i| self.has_arc(-(i as i32), -(i as i32 + 1), i))
            .ok_or_else(|| {
                Error::Invariant(format!("no right cap of height equal to its index in {self}"))
            })?;
        let remap = |e: Endpoint| -> Endpoint {
            if e.is_left() {
                e
            } else {
                let j = e.abs();
                if j < cap {
                    e
                } else {
                    Endpoint(-(j as i32 - 2))
                }
            }
        };
        let mut arcs = Vec::with_capacity(n - 1);
        for arc in self.arcs() {
            let [a, b] = arc.ends;
            if a == Endpoint(-(cap as i32)) || a == Endpoint(-(cap as i32 + 1)) {
                continue;
            }
            let ends = if a == Endpoint(top) {
                [remap(b), Endpoint(1 - top)]
            } else if b == Endpoint(top) {
                [remap(a), Endpoint(1 - top)]
            } else {
                [remap(a), remap(b)]
            };
            arcs.push(Arc {
                ends,
                height: arc.height,
            });
        }
        let flat = ArcDiagram::from_arcs(n - 1, &arcs)
            .map_err(|e| Error::Invariant(format!("peeling {self} gave an invalid diagram: {e}")))?;
        Ok((flat, cap))
    }

    /// Inverse of [`ArcDiagram::peel`]: `ι(flat)·G_{N-1}···G_I`.
    pub fn unpeel(flat: &ArcDiagram, cap: usize) -> Result<ArcDiagram> {
        let n = flat.rank() + 1;
        if cap == 0 || cap >= n {
            return Err(Error::IndexOutOfRange { index: cap, rank: n });
        }
        let mut d = flat.iota();
        for i in (cap..n).rev() {
            d = d.monoid_product(&ArcDiagram::generator(i, n)?)?;
        }
        Ok(d)
    }
}

impl fmt::Debug for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcDiagram({self})")
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, arc) in self.arcs().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{{},{}}}h{}", arc.ends[0], arc.ends[1], arc.height)?;
        }
        write!(f, "]_{}", self.rank)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    rank: usize,
    arcs: Vec<Arc>,
}

impl Serialize for ArcDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            rank: self.rank(),
            arcs: self.arcs(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ArcDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(de)?;
        ArcDiagram::from_arcs(raw.rank, &raw.arcs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diagram(n: usize, arcs: &[(i32, i32, usize)]) -> ArcDiagram {
        let arcs: Vec<Arc> = arcs
            .iter()
            .map(|&(a, b, h)| Arc::new(a, b, h).unwrap())
            .collect();
        ArcDiagram::from_arcs(n, &arcs).unwrap()
    }

    #[test]
    fn endpoint_order() {
        let n = 4;
        let order: Vec<i32> = (0..2 * n)
            .map(|p| Endpoint::from_position(p, n).value())
            .collect();
        assert_eq!(order, vec![1, 2, 3, 4, -4, -3, -2, -1]);
        let mut es: Vec<Endpoint> = [-1, 3, -4, 1].iter().map(|&v| Endpoint(v)).collect();
        es.sort();
        assert_eq!(es, vec![Endpoint(1), Endpoint(3), Endpoint(-4), Endpoint(-1)]);
    }

    #[test]
    fn identity_and_generators_validate() {
        for n in 0..=8 {
            let id = ArcDiagram::identity(n);
            assert!(id.is_valid());
            assert_eq!(id.propagating_count(), n);
            for i in 1..n {
                let g = ArcDiagram::generator(i, n).unwrap();
                assert!(g.is_valid());
                assert_eq!(g.mirror(), g);
            }
        }
        let g = ArcDiagram::generator(1, 2).unwrap();
        assert_eq!(g, diagram(2, &[(1, 2, 1), (-2, -1, 1)]));
        assert!(ArcDiagram::generator(2, 2).is_err());
        assert_eq!(ArcDiagram::identity(3).iota(), ArcDiagram::identity(4));
    }

    #[test]
    fn third_panel_example_validates() {
        let d = diagram(
            6,
            &[(5, -3, 1), (1, 4, 1), (-5, -4, 2), (6, -6, 4), (2, 3, 2), (-2, -1, 1)],
        );
        assert!(d.is_valid());
    }

    #[test]
    fn label_and_structure_errors_are_distinct() {
        let mut arcs = ArcDiagram::identity(3).arcs();
        arcs[0].height = 2;
        assert!(matches!(ArcDiagram::from_arcs(3, &arcs), Err(Error::Label(_))));
        // parity
        let bad = [Arc::new(1, -1, 1).unwrap(), Arc::new(2, -2, 1).unwrap()];
        assert!(matches!(ArcDiagram::from_arcs(2, &bad), Err(Error::Label(_))));
        // nesting: {2,-2} under {1,-1} needs a larger label, {1,-1} inside is fine
        let crossing = [Arc::new(1, -2, 1).unwrap(), Arc::new(2, -1, 1).unwrap()];
        assert!(matches!(
            ArcDiagram::from_arcs(2, &crossing),
            Err(Error::Structure(_))
        ));
        let unmatched = [Arc::new(1, -1, 1).unwrap()];
        assert!(matches!(
            ArcDiagram::from_arcs(2, &unmatched),
            Err(Error::Structure(_))
        ));
        let twice = [Arc::new(1, -1, 1).unwrap(), Arc::new(1, 2, 1).unwrap()];
        assert!(matches!(
            ArcDiagram::from_arcs_unvalidated(2, &twice),
            Err(Error::Structure(_))
        ));
        // strict nesting with equal labels
        let flat = [
            Arc::new(1, -1, 1).unwrap(),
            Arc::new(2, 3, 2).unwrap(),
            Arc::new(-3, -2, 2).unwrap(),
        ];
        assert!(ArcDiagram::from_arcs(3, &flat).is_ok());
        let nested = [
            Arc::new(1, 4, 1).unwrap(),
            Arc::new(2, 3, 1).unwrap(),
            Arc::new(-4, -1, 1).unwrap(),
            Arc::new(-3, -2, 2).unwrap(),
        ];
        assert!(matches!(ArcDiagram::from_arcs(4, &nested), Err(Error::Label(_))));
    }

    #[test]
    fn generator_squares_to_loop() {
        for n in 2..=6 {
            for i in 1..n {
                let g = ArcDiagram::generator(i, n).unwrap();
                let (d, loops) = g.compose(&g).unwrap();
                assert_eq!(d, g);
                assert_eq!(loops, vec![LoopRecord { height: i, count: 1 }]);
                let id = ArcDiagram::identity(n);
                assert_eq!(id.compose(&g).unwrap(), (g.clone(), vec![]));
            }
        }
    }

    #[test]
    fn braid_like_relation_at_y_one() {
        for n in 3..=6 {
            for i in 1..n - 1 {
                let a = ArcDiagram::generator(i + 1, n).unwrap();
                let b = ArcDiagram::generator(i, n).unwrap();
                let (m1, ab) = a.product_y1(&b).unwrap();
                let (m2, aba) = ab.product_y1(&a).unwrap();
                assert!(m1.is_one() && m2.is_one());
                assert_eq!(aba, a);
            }
        }
    }

    #[test]
    fn x1_composition_example() {
        let c = diagram(
            8,
            &[
                (-7, 5, 3),
                (3, 4, 1),
                (-4, -3, 3),
                (1, 2, 1),
                (-6, -5, 1),
                (-8, 6, 6),
                (7, 8, 7),
                (-2, -1, 1),
            ],
        );
        let d = diagram(
            8,
            &[
                (-7, 5, 3),
                (6, 7, 4),
                (-4, -1, 1),
                (1, 4, 1),
                (-6, -5, 3),
                (-8, 8, 4),
                (2, 3, 2),
                (-3, -2, 2),
            ],
        );
        let want = diagram(
            8,
            &[
                (-7, 5, 1),
                (3, 4, 1),
                (-4, -1, 1),
                (1, 2, 1),
                (-6, -5, 3),
                (-8, 6, 4),
                (7, 8, 7),
                (-3, -2, 2),
            ],
        );
        let (r, loops) = c.compose(&d).unwrap();
        assert_eq!(r, want);
        assert_eq!(loops, vec![LoopRecord { height: 1, count: 1 }]);
    }

    #[test]
    fn peel_generator() {
        for n in 2..=7 {
            let g = ArcDiagram::generator(n - 1, n).unwrap();
            assert_eq!(g.peel().unwrap(), (ArcDiagram::identity(n - 1), n - 1));
            assert!(matches!(
                ArcDiagram::identity(n).peel(),
                Err(Error::Precondition(_))
            ));
            for i in 1..n {
                let d = ArcDiagram::unpeel(&ArcDiagram::identity(n - 1), i).unwrap();
                assert_eq!(d.peel().unwrap().1, i);
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = ArcDiagram::generator(1, 2).unwrap();
        let j = serde_json::to_string(&g).unwrap();
        assert_eq!(
            j,
            r#"{"rank":2,"arcs":[{"ends":[1,2],"height":1},{"ends":[-2,-1],"height":1}]}"#
        );
        assert_eq!(serde_json::from_str::<ArcDiagram>(&j).unwrap(), g);
        let bad = r#"{"rank":1,"arcs":[{"ends":[1,-1],"height":2}]}"#;
        assert!(serde_json::from_str::<ArcDiagram>(bad).is_err());
    }
}
