//! Text rendering of diagrams and lattices as SVG or TikZ.
//!
//! Endpoints `1..N` sit in a left column from bottom to top and `-1..-N`
//! in a right column at the same heights. Every arc carries its height in
//! a circle at its midpoint. Output depends only on the input, so the
//! rendered text doubles as a canonical form for fixtures.

use std::fmt::Write;
use std::str::FromStr;

use crate::arc::ArcDiagram;
use crate::dominance::DominanceLattice;
use crate::error::{Error, Result};
use crate::fibonacci::{enumerate_yfs, FibonacciSet};
use crate::half::HalfArcDiagram;
use crate::perm::Permutation;
use crate::theta::perm_to_diagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Tikz,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            _ => Err(Error::Precondition(format!(
                "unknown format {s:?}; expected svg or tikz"
            ))),
        }
    }
}

const STEP: f64 = 40.0;
const MARGIN: f64 = 30.0;
const GAP: f64 = 160.0;
const TIKZ_STEP: f64 = 1.5;
const TIKZ_GAP: f64 = 4.5;

/// One stroke of a diagram in abstract coordinates: column (0 = left,
/// 1 = right) and level (1 = bottom row).
enum Stroke {
    /// Between the two columns.
    Through { left: usize, right: usize },
    /// Cup on one column, bulging towards the other.
    Cup { column: usize, a: usize, b: usize },
    /// A dangling half arc leaving the left column.
    Dangling { level: usize },
}

struct Drawing {
    rank: usize,
    right_column: bool,
    strokes: Vec<(Stroke, usize)>,
}

fn level(e: i32) -> (usize, usize) {
    if e > 0 {
        (0, e as usize)
    } else {
        (1, (-e) as usize)
    }
}

impl Drawing {
    fn of_diagram(d: &ArcDiagram) -> Self {
        let strokes = d
            .arcs()
            .into_iter()
            .map(|arc| {
                let (ca, la) = level(arc.ends[0].value());
                let (cb, lb) = level(arc.ends[1].value());
                let s = if ca != cb {
                    let (left, right) = if ca == 0 { (la, lb) } else { (lb, la) };
                    Stroke::Through { left, right }
                } else {
                    Stroke::Cup {
                        column: ca,
                        a: la.min(lb),
                        b: la.max(lb),
                    }
                };
                (s, arc.height)
            })
            .collect();
        Drawing {
            rank: d.rank(),
            right_column: true,
            strokes,
        }
    }

    fn of_half(h: &HalfArcDiagram) -> Self {
        let mut strokes: Vec<(Stroke, usize)> = h
            .full_arcs()
            .into_iter()
            .map(|a| {
                (
                    Stroke::Cup {
                        column: 0,
                        a: a.ends[0].min(a.ends[1]),
                        b: a.ends[0].max(a.ends[1]),
                    },
                    a.height,
                )
            })
            .collect();
        strokes.extend(
            h.half_arcs()
                .into_iter()
                .map(|a| (Stroke::Dangling { level: a.end }, a.height)),
        );
        Drawing {
            rank: h.rank(),
            right_column: false,
            strokes,
        }
    }

    fn svg(&self) -> String {
        let n = self.rank as f64;
        let width = 2.0 * MARGIN + GAP;
        let height = 2.0 * MARGIN + STEP * (n - 1.0).max(0.0);
        let y = |l: usize| MARGIN + STEP * (n - l as f64);
        let x = |c: usize| if c == 0 { MARGIN } else { MARGIN + GAP };
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        for l in 1..=self.rank {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="end">{l}</text>"#,
                x(0) - 8.0,
                y(l) + 4.0
            );
            if self.right_column {
                let _ = writeln!(
                    s,
                    r#"<text x="{}" y="{}">-{l}</text>"#,
                    x(1) + 8.0,
                    y(l) + 4.0
                );
            }
        }
        for (stroke, h) in &self.strokes {
            let (path, mx, my) = match *stroke {
                Stroke::Through { left, right } => (
                    format!("M {} {} L {} {}", x(0), y(left), x(1), y(right)),
                    (x(0) + x(1)) / 2.0,
                    (y(left) + y(right)) / 2.0,
                ),
                Stroke::Cup { column, a, b } => {
                    let bulge = 0.3 * STEP * (b - a) as f64;
                    let bx = if column == 0 { x(0) + bulge } else { x(1) - bulge };
                    (
                        format!(
                            "M {} {} C {bx} {} {bx} {} {} {}",
                            x(column),
                            y(a),
                            y(a),
                            y(b),
                            x(column),
                            y(b)
                        ),
                        (x(column) + 3.0 * bx) / 4.0,
                        (y(a) + y(b)) / 2.0,
                    )
                }
                Stroke::Dangling { level } => (
                    format!("M {} {} L {} {}", x(0), y(level), x(0) + GAP / 2.0, y(level)),
                    x(0) + GAP / 4.0,
                    y(level),
                ),
            };
            let _ = writeln!(s, r#"<path d="{path}" fill="none" stroke="black"/>"#);
            let _ = writeln!(
                s,
                r#"<circle cx="{mx}" cy="{my}" r="8" fill="white" stroke="black"/>"#
            );
            let _ = writeln!(
                s,
                r#"<text x="{mx}" y="{}" text-anchor="middle">{h}</text>"#,
                my + 4.0
            );
        }
        s.push_str("</svg>\n");
        s
    }

    fn tikz(&self) -> String {
        let y = |l: usize| TIKZ_STEP * (l as f64 - 1.0);
        let mut s = String::new();
        s.push_str("\\begin{tikzpicture}[thick]\n");
        s.push_str("\\tikzstyle{vertex} = [shape=rectangle, inner sep=1pt]\n");
        s.push_str("\\tikzstyle{mid} = [draw, fill=white, shape=circle, inner sep=1pt]\n");
        for l in 1..=self.rank {
            let _ = writeln!(s, "\\node[vertex] (G-{l}) at (0, {}) {{${l}$}};", y(l));
            if self.right_column {
                let _ = writeln!(
                    s,
                    "\\node[vertex] (G--{l}) at ({TIKZ_GAP}, {}) {{$\\overline{{{l}}}$}};",
                    y(l)
                );
            }
        }
        let name = |c: usize, l: usize| if c == 0 { format!("G-{l}") } else { format!("G--{l}") };
        for (stroke, h) in &self.strokes {
            match *stroke {
                Stroke::Through { left, right } => {
                    let _ = writeln!(
                        s,
                        "\\draw ({}) -- ({}) node[pos=0.5,mid] {{{h}}};",
                        name(0, left),
                        name(1, right)
                    );
                }
                Stroke::Cup { column, a, b } => {
                    let dx = 0.45 * (b - a) as f64 * if column == 0 { 1.0 } else { -1.0 };
                    let dy = 0.2 * (b - a) as f64;
                    let _ = writeln!(
                        s,
                        "\\draw ({}) .. controls +({dx}, {dy}) and +({dx}, -{dy}) .. ({}) node[pos=0.5,mid] {{{h}}};",
                        name(column, a),
                        name(column, b)
                    );
                }
                Stroke::Dangling { level } => {
                    let _ = writeln!(
                        s,
                        "\\draw (G-{level}) -- +({}, 0) node[pos=0.5,mid] {{{h}}};",
                        TIKZ_GAP / 2.0
                    );
                }
            }
        }
        s.push_str("\\end{tikzpicture}\n");
        s
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Svg => self.svg(),
            Format::Tikz => self.tikz(),
        }
    }
}

pub fn render_diagram(d: &ArcDiagram, format: Format) -> String {
    Drawing::of_diagram(d).render(format)
}

pub fn render_half(h: &HalfArcDiagram, format: Format) -> String {
    Drawing::of_half(h).render(format)
}

/// A permutation drawn as its arc diagram.
pub fn render_permutation(sigma: &Permutation, format: Format) -> Result<String> {
    Ok(render_diagram(&perm_to_diagram(sigma)?, format))
}

/// A ranked poset: labels, levels and cover edges `(lower, upper)`.
#[derive(Clone, Debug)]
pub struct Hasse {
    pub labels: Vec<(String, String)>,
    pub levels: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

fn set_label(s: &FibonacciSet) -> String {
    let inner: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn word_label(s: &FibonacciSet) -> String {
    let w = s.to_word().to_string();
    if w.is_empty() {
        "ε".into()
    } else {
        w
    }
}

impl Hasse {
    /// The Young-Fibonacci lattice on ranks `0..=n`.
    pub fn young_fibonacci(n: usize) -> Self {
        let sets: Vec<FibonacciSet> = (0..=n).flat_map(enumerate_yfs).collect();
        let index = |s: &FibonacciSet| sets.iter().position(|t| t == s).expect("rank at most n");
        let mut edges = Vec::new();
        for (i, s) in sets.iter().enumerate() {
            if s.rank() < n {
                for t in s.upper_covers() {
                    edges.push((i, index(&t)));
                }
            }
        }
        Hasse {
            labels: sets.iter().map(|s| (word_label(s), set_label(s))).collect(),
            levels: sets.iter().map(FibonacciSet::rank).collect(),
            edges,
        }
    }

    /// The dominance lattice on rank `n`.
    pub fn dominance(n: usize) -> Result<Self> {
        let lat = DominanceLattice::new(n);
        Ok(Hasse {
            labels: lat
                .elements()
                .iter()
                .map(|s| (word_label(s), set_label(s)))
                .collect(),
            levels: lat.rank_function()?,
            edges: lat.cover_edges(),
        })
    }

    /// Position of each node within its level. Levels are placed bottom
    /// up, each sorted by the mean position of its lower covers.
    fn slots(&self) -> (Vec<usize>, Vec<usize>) {
        let top = self.levels.iter().max().map_or(0, |&l| l + 1);
        let mut width = vec![0; top];
        let mut slot = vec![0; self.levels.len()];
        let mut centered = vec![0.0f64; self.levels.len()];
        for l in 0..top {
            let mut nodes: Vec<(f64, usize)> = (0..self.levels.len())
                .filter(|&i| self.levels[i] == l)
                .map(|i| {
                    let below: Vec<f64> = self
                        .edges
                        .iter()
                        .filter(|&&(_, b)| b == i)
                        .map(|&(a, _)| centered[a])
                        .collect();
                    let key = if below.is_empty() {
                        0.0
                    } else {
                        below.iter().sum::<f64>() / below.len() as f64
                    };
                    (key, i)
                })
                .collect();
            nodes.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            width[l] = nodes.len();
            for (k, &(_, i)) in nodes.iter().enumerate() {
                slot[i] = k;
                centered[i] = k as f64 - (nodes.len() as f64 - 1.0) / 2.0;
            }
        }
        (slot, width)
    }

    pub fn render(&self, format: Format) -> String {
        let (slot, width) = self.slots();
        let widest = width.iter().copied().max().unwrap_or(1) as f64;
        let top = width.len().saturating_sub(1) as f64;
        let x = |i: usize| slot[i] as f64 - (width[self.levels[i]] as f64 - 1.0) / 2.0;
        let mut s = String::new();
        match format {
            Format::Svg => {
                let (dx, dy) = (90.0, 60.0);
                let w = 2.0 * MARGIN + dx * widest;
                let h = 2.0 * MARGIN + dy * top;
                let px = |i: usize| MARGIN + dx * (x(i) + widest / 2.0);
                let py = |i: usize| MARGIN + dy * (top - self.levels[i] as f64);
                let _ = writeln!(
                    s,
                    r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="10">"#
                );
                for &(a, b) in &self.edges {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
                        px(a),
                        py(a),
                        px(b),
                        py(b)
                    );
                }
                for (i, (word, set)) in self.labels.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        r#"<rect x="{}" y="{}" width="70" height="26" fill="white" stroke="black"/>"#,
                        px(i) - 35.0,
                        py(i) - 13.0
                    );
                    let _ = writeln!(
                        s,
                        r#"<text x="{}" y="{}" text-anchor="middle">{word}</text>"#,
                        px(i),
                        py(i) - 2.0
                    );
                    let _ = writeln!(
                        s,
                        r#"<text x="{}" y="{}" text-anchor="middle">{set}</text>"#,
                        px(i),
                        py(i) + 10.0
                    );
                }
                s.push_str("</svg>\n");
            }
            Format::Tikz => {
                s.push_str("\\begin{tikzpicture}[>=latex,xscale=1.8,yscale=1.2]\n");
                s.push_str(
                    "\\tikzset{every node/.style={draw,rectangle split,rectangle split parts=2,inner sep=0.5mm}}\n",
                );
                for (i, (word, set)) in self.labels.iter().enumerate() {
                    let set = set.replace('{', "\\{").replace('}', "\\}");
                    let word = word.replace('ε', "\\varepsilon");
                    let _ = writeln!(
                        s,
                        "\\node (node_{i}) at ({}, {}) {{${word}$ \\nodepart{{second}} ${set}$}};",
                        x(i),
                        self.levels[i]
                    );
                }
                for &(a, b) in &self.edges {
                    let _ = writeln!(s, "\\draw [->] (node_{a}) -- (node_{b});");
                }
                s.push_str("\\end{tikzpicture}\n");
            }
        }
        s
    }
}
