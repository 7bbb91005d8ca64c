//! Diamond diagrams: words drawn as black boxes in a trapezoid of diamonds.
//!
//! The box in row `r` (1 ≤ r < N) on south-east diagonal `d ≥ r` has its
//! center at `x = 2d - r + 1`, height `r`. Boxes in adjacent rows touch when
//! their centers are one unit apart horizontally. Reading goes diagonal by
//! diagonal, left to right, each diagonal from top to bottom.
//!
//! Filling every box with a tile gives a loop configuration. A white tile
//! joins its two upper edges (weight `r + 1`) and its two lower edges
//! (weight `r`); a black tile joins its two left edges and its two right
//! edges without weight. Boundary stubs on the top and bottom rows carry
//! weights `N` and `1`, boundary endpoint `j` carries weight `j`, and every
//! path or loop takes the minimum weight it meets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arc::{Arc, ArcDiagram, Endpoint};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Var};
use crate::rewrite::Word;

/// A black box: `(diagonal, row)`.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Heap {
    rank: usize,
    /// Boxes in reading order.
    boxes: Vec<Cell>,
}

fn center_x(d: usize, r: usize) -> i64 {
    2 * d as i64 - r as i64 + 1
}

impl Heap {
    pub fn from_boxes(rank: usize, mut boxes: Vec<Cell>) -> Result<Self> {
        for &(d, r) in &boxes {
            if r == 0 || r >= rank || d < r {
                return Err(Error::Precondition(format!(
                    "box ({d},{r}) lies outside the rank {rank} trapezoid"
                )));
            }
        }
        boxes.sort_by_key(|&(d, r)| (d, std::cmp::Reverse(r)));
        if boxes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("repeated box".into()));
        }
        Ok(Heap { rank, boxes })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn boxes(&self) -> &[Cell] {
        &self.boxes
    }

    /// For each row `1..N`, the diagonals of its black boxes.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.rank.saturating_sub(1)];
        for &(d, r) in &self.boxes {
            rows[r - 1].push(d);
        }
        for row in &mut rows {
            row.sort_unstable();
        }
        rows
    }

    /// Number of diagonals spanned, at least `N - 1` so that every row
    /// reaches the right boundary.
    pub fn width(&self) -> usize {
        self.boxes
            .iter()
            .map(|&(d, _)| d)
            .max()
            .unwrap_or(0)
            .max(self.rank.saturating_sub(1))
    }

    /// Traces the loop configuration. Returns the loop monomial and the
    /// arc diagram formed by the boundary-to-boundary paths.
    pub fn trace(&self) -> (Monomial, ArcDiagram) {
        let n = self.rank;
        if n <= 1 {
            return (Monomial::one(), ArcDiagram::identity(n));
        }
        let width = self.width();
        let black: std::collections::HashSet<Cell> = self.boxes.iter().copied().collect();
        let mut ids: HashMap<(i64, i64), usize> = HashMap::new();
        // adj[v] lists (neighbour, weight, edge id)
        let mut adj: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        let mut edge_count = 0usize;
        let mut vertex = |pt: (i64, i64), adj: &mut Vec<Vec<(usize, usize, usize)>>| -> usize {
            *ids.entry(pt).or_insert_with(|| {
                adj.push(Vec::new());
                adj.len() - 1
            })
        };
        let edge = |d: usize, r: usize, corner: &str| -> (i64, i64) {
            let x = center_x(d, r);
            let y = r as i64;
            match corner {
                "NE" => (2 * x + 1, 2 * y + 1),
                "NW" => (2 * x - 1, 2 * y + 1),
                "SE" => (2 * x + 1, 2 * y - 1),
                _ => (2 * x - 1, 2 * y - 1),
            }
        };
        let mut connect =
            |a: (i64, i64), b: (i64, i64), w: usize, adj: &mut Vec<Vec<(usize, usize, usize)>>| {
                let u = vertex(a, adj);
                let v = vertex(b, adj);
                adj[u].push((v, w, edge_count));
                adj[v].push((u, w, edge_count));
                edge_count += 1;
            };
        for d in 1..=width {
            for r in 1..=d.min(n - 1) {
                if black.contains(&(d, r)) {
                    connect(edge(d, r, "NW"), edge(d, r, "SW"), usize::MAX, &mut adj);
                    connect(edge(d, r, "NE"), edge(d, r, "SE"), usize::MAX, &mut adj);
                } else {
                    connect(edge(d, r, "NW"), edge(d, r, "NE"), r + 1, &mut adj);
                    connect(edge(d, r, "SW"), edge(d, r, "SE"), r, &mut adj);
                }
            }
        }
        for d in n - 1..width {
            connect(edge(d, n - 1, "NE"), edge(d + 1, n - 1, "NW"), n, &mut adj);
        }
        for d in 1..width {
            connect(edge(d, 1, "SE"), edge(d + 1, 1, "SW"), 1, &mut adj);
        }
        let left: Vec<(i64, i64)> = (1..=n)
            .map(|j| if j == 1 { edge(1, 1, "SW") } else { edge(j - 1, j - 1, "NW") })
            .collect();
        let right: Vec<(i64, i64)> = (1..=n)
            .map(|j| if j == 1 { edge(width, 1, "SE") } else { edge(width, j - 1, "NE") })
            .collect();
        let mut label: HashMap<usize, i32> = HashMap::new();
        for (j, pt) in left.iter().enumerate() {
            label.insert(ids[pt], j as i32 + 1);
        }
        for (j, pt) in right.iter().enumerate() {
            label.insert(ids[pt], -(j as i32 + 1));
        }
        let mut seen = vec![false; adj.len()];
        let mut arcs = Vec::new();
        let mut ends: Vec<usize> = label.keys().copied().collect();
        ends.sort_unstable();
        for start in ends {
            if seen[start] {
                continue;
            }
            let a = label[&start];
            let mut h = a.unsigned_abs() as usize;
            let (mut came_by, mut cur) = (usize::MAX, start);
            seen[cur] = true;
            loop {
                let &(next, w, e) = adj[cur]
                    .iter()
                    .find(|&&(_, _, e)| e != came_by)
                    .expect("path continues until it reaches the boundary");
                h = h.min(w);
                came_by = e;
                cur = next;
                seen[cur] = true;
                if let Some(&b) = label.get(&cur) {
                    h = h.min(b.unsigned_abs() as usize);
                    arcs.push(Arc {
                        ends: [Endpoint::new(a).unwrap(), Endpoint::new(b).unwrap()],
                        height: h,
                    });
                    break;
                }
            }
        }
        let mut m = Monomial::one();
        for start in 0..adj.len() {
            if seen[start] {
                continue;
            }
            let mut h = usize::MAX;
            let (mut came_by, mut cur) = (usize::MAX, start);
            loop {
                seen[cur] = true;
                let &(next, w, e) = adj[cur]
                    .iter()
                    .find(|&&(_, _, e)| e != came_by)
                    .expect("interior edges have two neighbours");
                h = h.min(w);
                came_by = e;
                cur = next;
                if cur == start {
                    break;
                }
            }
            m.mul_var(Var::X(h), 1);
        }
        let d = ArcDiagram::from_arcs_unvalidated(n, &arcs)
            .expect("boundary paths pair up the endpoints");
        (m, d)
    }
}

/// Drops the letters of `w` into the trapezoid one at a time, each as far
/// left as the letters before it and the reading order allow.
pub fn heap_from_word(w: &Word) -> Heap {
    let n = w.rank();
    let mut last_x = vec![i64::MIN / 2; n + 1];
    let mut boxes = Vec::with_capacity(w.len());
    let mut prev: Option<Cell> = None;
    for r in w.letters() {
        let mut d = r;
        if let Some((pd, pr)) = prev {
            d = d.max(if r < pr { pd } else { pd + 1 });
        }
        let mut bound = last_x[r] + 2;
        bound = bound.max(last_x[r - 1] + 1);
        if r + 1 < n {
            bound = bound.max(last_x[r + 1] + 1);
        }
        while center_x(d, r) < bound {
            d += 1;
        }
        last_x[r] = center_x(d, r);
        boxes.push((d, r));
        prev = Some((d, r));
    }
    Heap { rank: n, boxes }
}

pub fn reading(h: &Heap) -> Word {
    Word::new(h.rank, h.boxes.iter().map(|&(_, r)| r).collect()).expect("rows are in range")
}
