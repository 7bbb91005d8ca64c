//! The Okada monoid: arc diagrams under composition with every loop
//! discarded. Idempotents, aperiodicity and Green's relations.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::free_involution;
use crate::arc::ArcDiagram;
use crate::error::{Error, Result};
use crate::half::{enumerate_diagrams, for_each_diagram};
use crate::theta::perm_to_diagram;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonoidElement(pub ArcDiagram);

impl MonoidElement {
    pub fn identity(n: usize) -> Self {
        MonoidElement(ArcDiagram::identity(n))
    }

    pub fn generator(i: usize, n: usize) -> Result<Self> {
        Ok(MonoidElement(ArcDiagram::generator(i, n)?))
    }

    /// Product of generators along a word, e.g. `[1, 2, 3]` for `E_1E_2E_3`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        let mut e = Self::identity(n);
        for &i in word {
            e = e.mproduct(&Self::generator(i, n)?)?;
        }
        Ok(e)
    }

    pub fn diagram(&self) -> &ArcDiagram {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn mproduct(&self, other: &MonoidElement) -> Result<MonoidElement> {
        Ok(MonoidElement(self.0.monoid_product(&other.0)?))
    }

    pub fn power(&self, k: usize) -> MonoidElement {
        let mut p = Self::identity(self.rank());
        for _ in 0..k {
            p = p.mproduct(self).expect("same rank");
        }
        p
    }

    pub fn mirror(&self) -> MonoidElement {
        MonoidElement(self.0.mirror())
    }

    pub fn is_idempotent(&self) -> bool {
        is_idempotent(&self.0)
    }

    pub fn is_involutive(&self) -> bool {
        self.0.mirror() == self.0
    }

    /// Least `K ≥ 1` with `e^K = e^(K+1)`.
    pub fn aperiodicity_index(&self) -> Result<usize> {
        let mut seen = HashMap::new();
        let mut p = self.clone();
        let mut k = 1;
        loop {
            let next = p.mproduct(self)?;
            if next == p {
                return Ok(k);
            }
            if let Some(j) = seen.insert(p.clone(), k) {
                return Err(Error::Invariant(format!(
                    "powers of {self} cycle with period {} > 1",
                    k - j
                )));
            }
            p = next;
            k += 1;
        }
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_idempotent(d: &ArcDiagram) -> bool {
    &d.compose_with(d, |_| {}) == d
}

/// Number of idempotents among the `N!` elements of rank `n`.
pub fn idempotent_count(n: usize) -> u64 {
    let count = AtomicU64::new(0);
    for_each_diagram(n, |d| {
        if is_idempotent(d) {
            count.fetch_add(1, Ordering::Relaxed);
        }
    });
    count.into_inner()
}

/// Partition of the monoid into R-, L- and J-classes.
///
/// Classes are numbered in order of their smallest element, so the
/// numbering is deterministic.
#[derive(Clone, Debug)]
pub struct GreenClasses {
    rank: usize,
    elements: Vec<ArcDiagram>,
    index: HashMap<ArcDiagram, usize>,
    r_class: Vec<usize>,
    l_class: Vec<usize>,
    j_class: Vec<usize>,
    /// `j_below[a][b]` iff the J-class `a` lies below `b`, i.e. `MaM ⊆ MbM`.
    j_below: Vec<Vec<bool>>,
}

fn class_labels(n: usize, edges: &[(u32, u32)]) -> Vec<usize> {
    let g = DiGraph::<(), ()>::from_edges(edges);
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| v.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    let mut label = vec![0; n];
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            label[v] = k;
        }
    }
    label
}

impl GreenClasses {
    pub fn new(n: usize) -> Result<Self> {
        let elements = enumerate_diagrams(n);
        let index: HashMap<ArcDiagram, usize> =
            elements.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        let gens: Vec<ArcDiagram> = (1..n)
            .map(|i| ArcDiagram::generator(i, n))
            .collect::<Result<_>>()?;
        let (right, left): (Vec<Vec<(u32, u32)>>, Vec<Vec<(u32, u32)>>) = elements
            .par_iter()
            .enumerate()
            .map(|(i, d)| {
                let mut r = Vec::with_capacity(gens.len());
                let mut l = Vec::with_capacity(gens.len());
                for g in &gens {
                    r.push((i as u32, index[&d.compose_with(g, |_| {})] as u32));
                    l.push((i as u32, index[&g.compose_with(d, |_| {})] as u32));
                }
                (r, l)
            })
            .unzip();
        let m = elements.len();
        // Self-loops make sure every element gets a node.
        let loops = (0..m as u32).map(|i| (i, i));
        let right: Vec<(u32, u32)> = right.into_iter().flatten().chain(loops.clone()).collect();
        let left: Vec<(u32, u32)> = left.into_iter().flatten().chain(loops).collect();
        let both: Vec<(u32, u32)> = right.iter().chain(&left).copied().collect();
        let r_class = class_labels(m, &right);
        let l_class = class_labels(m, &left);
        let j_class = class_labels(m, &both);

        let classes = j_class.iter().max().map_or(0, |&k| k + 1);
        let mut succ = vec![Vec::new(); classes];
        for &(a, b) in &both {
            let (ca, cb) = (j_class[a as usize], j_class[b as usize]);
            if ca != cb {
                // b = a·g or g·a, so J(b) ≤ J(a).
                succ[ca].push(cb);
            }
        }
        let mut j_below = vec![vec![false; classes]; classes];
        for top in 0..classes {
            let mut stack = vec![top];
            while let Some(c) = stack.pop() {
                if !j_below[c][top] {
                    j_below[c][top] = true;
                    stack.extend(succ[c].iter().copied());
                }
            }
        }
        Ok(GreenClasses {
            rank: n,
            elements,
            index,
            r_class,
            l_class,
            j_class,
            j_below,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[ArcDiagram] {
        &self.elements
    }

    pub fn index_of(&self, d: &ArcDiagram) -> Result<usize> {
        self.index
            .get(d)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("{d} is not an element of rank {}", self.rank)))
    }

    pub fn r_class_of(&self, d: &ArcDiagram) -> Result<usize> {
        Ok(self.r_class[self.index_of(d)?])
    }

    pub fn l_class_of(&self, d: &ArcDiagram) -> Result<usize> {
        Ok(self.l_class[self.index_of(d)?])
    }

    pub fn j_class_of(&self, d: &ArcDiagram) -> Result<usize> {
        Ok(self.j_class[self.index_of(d)?])
    }

    fn group(labels: &[usize], elements: &[ArcDiagram]) -> Vec<Vec<ArcDiagram>> {
        let k = labels.iter().max().map_or(0, |&k| k + 1);
        let mut out = vec![Vec::new(); k];
        for (i, &c) in labels.iter().enumerate() {
            out[c].push(elements[i].clone());
        }
        out
    }

    pub fn r_classes(&self) -> Vec<Vec<ArcDiagram>> {
        Self::group(&self.r_class, &self.elements)
    }

    pub fn l_classes(&self) -> Vec<Vec<ArcDiagram>> {
        Self::group(&self.l_class, &self.elements)
    }

    pub fn j_classes(&self) -> Vec<Vec<ArcDiagram>> {
        Self::group(&self.j_class, &self.elements)
    }

    pub fn j_class_count(&self) -> usize {
        self.j_below.len()
    }

    /// Whether J-class `a` lies below J-class `b`.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.j_below[a][b]
    }
}

/// The R-class of `e`: elements `f` with `eM = fM`, found as the strongly
/// connected component of `e` in the right Cayley graph of its orbit.
pub fn r_class(e: &MonoidElement) -> Result<Vec<MonoidElement>> {
    let n = e.rank();
    let gens: Vec<ArcDiagram> = (1..n)
        .map(|i| ArcDiagram::generator(i, n))
        .collect::<Result<_>>()?;
    let mut index = HashMap::from([(e.0.clone(), 0u32)]);
    let mut orbit = vec![e.0.clone()];
    let mut edges = Vec::new();
    let mut k = 0;
    while k < orbit.len() {
        for g in &gens {
            let next = orbit[k].compose_with(g, |_| {});
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = orbit.len() as u32;
                    index.insert(next.clone(), id);
                    orbit.push(next);
                    id
                }
            };
            edges.push((k as u32, id));
        }
        k += 1;
    }
    edges.push((0, 0));
    let labels = class_labels(orbit.len(), &edges);
    let mut class: Vec<MonoidElement> = orbit
        .into_iter()
        .zip(labels)
        .filter(|&(_, c)| c == 0)
        .map(|(d, _)| MonoidElement(d))
        .collect();
    class.sort();
    Ok(class)
}

/// The unique involutive element of the R-class of `e`.
pub fn r_class_rep(e: &MonoidElement) -> Result<MonoidElement> {
    let inv: Vec<MonoidElement> = r_class(e)?.into_iter().filter(|f| f.is_involutive()).collect();
    match <[MonoidElement; 1]>::try_from(inv) {
        Ok([f]) => Ok(f),
        Err(v) => Err(Error::Invariant(format!(
            "R-class of {e} has {} involutive elements",
            v.len()
        ))),
    }
}

/// The free element sharing the propagating labels of `e`.
pub fn j_class_rep(e: &MonoidElement) -> Result<MonoidElement> {
    Ok(MonoidElement(perm_to_diagram(&free_involution(
        &e.0.prop_lab(),
    ))?))
}

/// One row of the monoid census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub elements: u64,
    pub idempotents: u64,
    pub involutions: u64,
    pub max_aperiodicity: usize,
}

pub fn census_row(n: usize) -> Result<CensusRow> {
    let elements = AtomicU64::new(0);
    let idempotents = AtomicU64::new(0);
    let involutions = AtomicU64::new(0);
    let max_k = std::sync::atomic::AtomicUsize::new(1);
    let failure = std::sync::Mutex::new(None);
    for_each_diagram(n, |d| {
        elements.fetch_add(1, Ordering::Relaxed);
        if is_idempotent(d) {
            idempotents.fetch_add(1, Ordering::Relaxed);
            if d.mirror() == *d {
                involutions.fetch_add(1, Ordering::Relaxed);
            }
            return;
        }
        match MonoidElement(d.clone()).aperiodicity_index() {
            Ok(k) => {
                max_k.fetch_max(k, Ordering::Relaxed);
            }
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
            }
        }
        if d.mirror() == *d {
            involutions.fetch_add(1, Ordering::Relaxed);
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(CensusRow {
        n,
        elements: elements.into_inner(),
        idempotents: idempotents.into_inner(),
        involutions: involutions.into_inner(),
        max_aperiodicity: max_k.into_inner(),
    })
}
