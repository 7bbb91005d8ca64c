//! Brute-force oracles shared by the integration tests. Everything here is
//! built from the defining conditions, not from the library's own
//! enumerators.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::PathBuf;

use okada::dominance::dominance_leq;
use okada::fibonacci::{enumerate_yfs, free_set};
use okada::half::{FullArc, HalfArc};
use okada::{
    free_involution, normalize, perm_to_diagram, Arc, ArcDiagram, FibonacciSet, HalfArcDiagram,
    Permutation, Word,
};
use rand::Rng;

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Endpoint value at linear position `p` of a rank `n` boundary
/// `1 < ... < n < -n < ... < -1`.
fn endpoint_at(p: usize, n: usize) -> i32 {
    if p < n {
        p as i32 + 1
    } else {
        -((2 * n - p) as i32)
    }
}

/// All non-crossing perfect matchings of `0..2n` as lists of pairs.
fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let first = points[0];
    let mut out = Vec::new();
    for k in (1..points.len()).step_by(2) {
        let inside = &points[1..k];
        let outside = &points[k + 1..];
        for a in matchings(inside) {
            for b in matchings(outside) {
                let mut m = vec![(first, points[k])];
                m.extend(a.iter().copied());
                m.extend(b.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

/// Every labeled non-crossing perfect matching satisfying the bound,
/// parity and strict nesting conditions.
pub fn brute_force_diagrams(n: usize) -> Vec<ArcDiagram> {
    let points: Vec<usize> = (0..2 * n).collect();
    let mut out = Vec::new();
    for m in matchings(&points) {
        let ranges: Vec<Vec<usize>> = m
            .iter()
            .map(|&(p, q)| {
                let lo = endpoint_at(p, n).unsigned_abs().min(endpoint_at(q, n).unsigned_abs()) as usize;
                (1..=lo).filter(|h| h % 2 == lo % 2).collect()
            })
            .collect();
        let mut heights = vec![0; m.len()];
        fn assign(
            k: usize,
            m: &[(usize, usize)],
            ranges: &[Vec<usize>],
            heights: &mut Vec<usize>,
            n: usize,
            out: &mut Vec<ArcDiagram>,
        ) {
            if k == m.len() {
                for i in 0..m.len() {
                    for j in 0..m.len() {
                        let (a, b) = m[i];
                        let (c, d) = m[j];
                        if c < a && b < d && heights[i] <= heights[j] {
                            return;
                        }
                    }
                }
                let arcs: Vec<Arc> = m
                    .iter()
                    .zip(heights.iter())
                    .map(|(&(p, q), &h)| Arc::new(endpoint_at(p, n), endpoint_at(q, n), h).unwrap())
                    .collect();
                out.push(ArcDiagram::from_arcs_unvalidated(n, &arcs).unwrap());
                return;
            }
            for &h in &ranges[k] {
                heights[k] = h;
                assign(k + 1, m, ranges, heights, n, out);
            }
        }
        assign(0, &m, &ranges, &mut heights, n, &mut out);
    }
    out.sort();
    out
}

/// Positive parts of the brute-force diagrams: arcs with both ends
/// positive stay, arcs with one positive end become half arcs.
pub fn brute_force_halves(n: usize) -> BTreeSet<HalfArcDiagram> {
    let mut out = BTreeSet::new();
    for d in brute_force_diagrams(n) {
        let mut full = Vec::new();
        let mut half = Vec::new();
        for a in d.arcs() {
            let (x, y) = (a.ends[0].value(), a.ends[1].value());
            match (x > 0, y > 0) {
                (true, true) => full.push(FullArc {
                    ends: [x as usize, y as usize],
                    height: a.height,
                }),
                (true, false) => half.push(HalfArc {
                    end: x as usize,
                    height: a.height,
                }),
                (false, true) => half.push(HalfArc {
                    end: y as usize,
                    height: a.height,
                }),
                (false, false) => {}
            }
        }
        out.insert(HalfArcDiagram::new(n, &full, &half).unwrap());
    }
    out
}

/// Permutations reached from the empty word by appending generators and
/// normalizing, counted breadth first.
pub fn bfs_normal_forms(n: usize) -> usize {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let start = normalize(&Word::empty(n)).unwrap();
    seen.insert(start.permutation.clone());
    let mut frontier = vec![start.normal_word];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..n {
                let g = Word::new(n, vec![i]).unwrap();
                let r = normalize(&w.concat(&g).unwrap()).unwrap();
                if seen.insert(r.permutation.clone()) {
                    next.push(r.normal_word);
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = if n < 2 {
        Vec::new()
    } else {
        (0..len).map(|_| rng.gen_range(1..n)).collect()
    };
    Word::new(n, letters).unwrap()
}

/// Every `(ρ, τ)` with `Θ(ρ)·Θ(E_S)·Θ(τ) = Θ(σ)` in the monoid,
/// `S = PropLab(σ)` dominated by both `PropLab(ρ)` and `PropLab(τ)`, and
/// `ℓ(σ) = weight(S) + ℓ(ρ) + ℓ(τ)`, searched over all of `𝔖_n²`.
pub fn factorization_oracle(
    n: usize,
    weight: impl Fn(&FibonacciSet) -> usize,
) -> BTreeMap<Permutation, Vec<(Permutation, Permutation)>> {
    let perms = Permutation::all(n);
    let diagrams: Vec<ArcDiagram> = perms.iter().map(|p| perm_to_diagram(p).unwrap()).collect();
    let index: HashMap<&ArcDiagram, usize> = diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let labels: Vec<FibonacciSet> = diagrams.iter().map(|d| d.prop_lab()).collect();
    let mut out: BTreeMap<Permutation, Vec<(Permutation, Permutation)>> =
        perms.iter().map(|p| (p.clone(), Vec::new())).collect();
    for s in enumerate_yfs(n) {
        let es = perm_to_diagram(&free_involution(&s)).unwrap();
        let admissible: Vec<usize> = (0..perms.len())
            .filter(|&i| dominance_leq(&s, &labels[i]).unwrap())
            .collect();
        for &r in &admissible {
            let left = diagrams[r].monoid_product(&es).unwrap();
            for &t in &admissible {
                let d = left.monoid_product(&diagrams[t]).unwrap();
                let sigma = index[&d];
                if labels[sigma] != s {
                    continue;
                }
                if perms[sigma].length() == weight(&s) + perms[r].length() + perms[t].length() {
                    out.get_mut(&perms[sigma])
                        .unwrap()
                        .push((perms[r].clone(), perms[t].clone()));
                }
            }
        }
    }
    out
}

pub fn free_weight(s: &FibonacciSet) -> usize {
    free_set(s).len()
}

pub fn card_weight(s: &FibonacciSet) -> usize {
    s.len()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compares `actual` with the stored fixture byte for byte. Setting
/// `OKADA_BLESS=1` rewrites the fixture instead.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if std::env::var_os("OKADA_BLESS").is_some() {
        std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read fixture {}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name} differs from its fixture"))
    }
}

pub fn diagram(n: usize, arcs: &[(i32, i32, usize)]) -> ArcDiagram {
    let arcs: Vec<Arc> = arcs.iter().map(|&(a, b, h)| Arc::new(a, b, h).unwrap()).collect();
    ArcDiagram::from_arcs(n, &arcs).unwrap()
}

/// A generator word for the six-point diamond diagram.
pub const DIAMOND_WORD: [usize; 14] = [2, 1, 3, 4, 2, 5, 2, 1, 4, 2, 3, 2, 1, 1];

pub fn diamond_diagram() -> ArcDiagram {
    diagram(6, &[(5, -3, 1), (1, 4, 1), (-5, -4, 2), (6, -6, 4), (2, 3, 2), (-2, -1, 1)])
}

/// The two factors and the product of the `x_1` composition example.
pub fn x1_composition() -> (ArcDiagram, ArcDiagram, ArcDiagram) {
    let c = diagram(
        8,
        &[(-7, 5, 3), (3, 4, 1), (-4, -3, 3), (1, 2, 1), (-6, -5, 1), (-8, 6, 6), (7, 8, 7), (-2, -1, 1)],
    );
    let d = diagram(
        8,
        &[(-7, 5, 3), (6, 7, 4), (-4, -1, 1), (1, 4, 1), (-6, -5, 3), (-8, 8, 4), (2, 3, 2), (-3, -2, 2)],
    );
    let r = diagram(
        8,
        &[(-7, 5, 1), (3, 4, 1), (-4, -1, 1), (1, 2, 1), (-6, -5, 3), (-8, 6, 4), (7, 8, 7), (-3, -2, 2)],
    );
    (c, d, r)
}

/// The arc diagram drawn with its two chains.
pub fn two_chain_diagram() -> ArcDiagram {
    diagram(
        8,
        &[(-3, 1, 1), (-8, 4, 2), (5, 8, 3), (-2, -1, 1), (2, 3, 2), (-7, -4, 4), (6, 7, 6), (-6, -5, 5)],
    )
}

pub fn set(n: usize, elements: &[usize]) -> FibonacciSet {
    FibonacciSet::new(n, elements.to_vec()).unwrap()
}
