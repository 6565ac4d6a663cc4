//! The base embedding: vertices in convex position on the unit circle, edges
//! as straight chords, and a fixed over/under rule.
//!
//! Vertex `k` sits at the rational circle point for parameter `t = k`, so the
//! vertices are in strictly convex position and ordered counterclockwise by
//! index. Two chords cross iff their endpoints interleave, and then exactly
//! once. At a crossing of edges `e_i` and `e_j` with `i < j`, `e_i` passes
//! under; stacking by index is a total order, so points where three or more
//! chords meet need no special treatment.
//!
//! With both edges oriented from their lower to their higher endpoint, a
//! crossing's sign is the sign of `over × under` (z component): `+1` for a
//! right-handed crossing.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Cycle, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("cycles {0} and {1} share a vertex")]
    NotDisjoint(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    /// `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`
    pub fn on_circle(t: i64) -> Point {
        let t = BigInt::from(t);
        let den = BigInt::one() + &t * &t;
        Point {
            x: BigRational::new(BigInt::one() - &t * &t, den.clone()),
            y: BigRational::new(BigInt::from(2) * t, den),
        }
    }

    fn sub(&self, o: &Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

fn cross(a: &Point, b: &Point) -> BigRational {
    &a.x * &b.y - &a.y * &b.x
}

fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = cross(&b.sub(a), &c.sub(a));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    #[serde(rename = "underEdge")]
    pub under: usize,
    #[serde(rename = "overEdge")]
    pub over: usize,
    /// Sign with both edges oriented low-to-high.
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    positions: Vec<Point>,
    edges: Vec<(usize, usize)>,
    crossings: Vec<Crossing>,
    /// Row-major `m x m` table of indices into `crossings`.
    slots: Vec<u32>,
}

const NO_CROSSING: u32 = u32::MAX;

/// Builds the canonical diagram of `g`.
pub fn canonical_embedding(g: &Graph) -> Diagram {
    let positions: Vec<Point> = (0..g.vertex_count()).map(|k| Point::on_circle(k as i64)).collect();
    let edges = g.edges().to_vec();
    let m = edges.len();
    let mut crossings = Vec::new();
    let mut slots = vec![NO_CROSSING; m * m];
    for under in 0..m {
        let (a, b) = edges[under];
        for over in under + 1..m {
            let (c, d) = edges[over];
            let interleave = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if !interleave {
                continue;
            }
            let du = positions[b].sub(&positions[a]);
            let dov = positions[d].sub(&positions[c]);
            let s = cross(&dov, &du);
            let sign = if s.is_positive() { 1 } else { -1 };
            slots[under * m + over] = crossings.len() as u32;
            slots[over * m + under] = crossings.len() as u32;
            crossings.push(Crossing { under, over, sign });
        }
    }
    Diagram { positions, edges, crossings, slots }
}

impl Diagram {
    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The crossing between edges `k` and `l`, if any.
    pub fn crossing(&self, k: usize, l: usize) -> Option<Crossing> {
        let slot = self.slots[k * self.edges.len() + l];
        (slot != NO_CROSSING).then(|| self.crossings[slot as usize])
    }

    /// The same diagram with the crossing of edges `k` and `l` switched:
    /// the strands trade places and the sign flips.
    pub fn with_crossing_changed(&self, k: usize, l: usize) -> Option<Diagram> {
        let slot = self.slots[k * self.edges.len() + l];
        if slot == NO_CROSSING {
            return None;
        }
        let mut d = self.clone();
        let c = &mut d.crossings[slot as usize];
        *c = Crossing { under: c.over, over: c.under, sign: -c.sign };
        Some(d)
    }

    /// Exact segment-intersection test, independent of the interleaving rule.
    pub fn chords_cross_geometrically(&self, k: usize, l: usize) -> bool {
        let (a, b) = self.edges[k];
        let (c, d) = self.edges[l];
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let p = &self.positions;
        let o1 = orient(&p[a], &p[b], &p[c]);
        let o2 = orient(&p[a], &p[b], &p[d]);
        let o3 = orient(&p[c], &p[d], &p[a]);
        let o4 = orient(&p[c], &p[d], &p[b]);
        o1 * o2 < 0 && o3 * o4 < 0
    }

    pub fn report(&self) -> DiagramReport {
        DiagramReport {
            vertices: self
                .positions
                .iter()
                .enumerate()
                .map(|(index, p)| VertexReport { index, x: p.x.to_string(), y: p.y.to_string() })
                .collect(),
            crossings: self.crossings.clone(),
        }
    }
}

/// Sign of a crossing when the under and over strands are traversed with
/// the given orientations (`+1` = low-to-high).
pub fn crossing_sign(c: &Crossing, under_orientation: i8, over_orientation: i8) -> i8 {
    c.sign * under_orientation * over_orientation
}

/// Sum of the signs of crossings where a strand of `a` passes over a strand
/// of `b`. Edges are given with their traversal orientations.
pub fn over_sum(d: &Diagram, a: &[(usize, i8)], b: &[(usize, i8)]) -> i64 {
    let mut sum = 0i64;
    for &(k, ea) in a {
        for &(l, eb) in b {
            if let Some(c) = d.crossing(k, l) {
                if c.over == k {
                    sum += (c.sign * ea * eb) as i64;
                }
            }
        }
    }
    sum
}

/// Half of the total signed crossing count between `a` and `b`.
pub fn half_total(d: &Diagram, a: &[(usize, i8)], b: &[(usize, i8)]) -> i64 {
    let mut sum = 0i64;
    for &(k, ea) in a {
        for &(l, eb) in b {
            if let Some(c) = d.crossing(k, l) {
                sum += (c.sign * ea * eb) as i64;
            }
        }
    }
    debug_assert!(sum % 2 == 0, "odd total crossing count between closed curves");
    sum / 2
}

/// Linking number of two disjoint cycles under their canonical orientations.
pub fn linking_number(d: &Diagram, a: &Cycle, b: &Cycle) -> Result<i64, DiagramError> {
    if !a.is_disjoint(b) {
        return Err(DiagramError::NotDisjoint(a.id, b.id));
    }
    let lk = over_sum(d, &a.edge_signs, &b.edge_signs);
    debug_assert_eq!(lk, half_total(d, &a.edge_signs, &b.edge_signs));
    Ok(lk)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkEntry {
    pub a: usize,
    pub b: usize,
    pub lk: i64,
}

/// Linking numbers in the base diagram for every vertex-disjoint cycle pair,
/// keyed by `(smaller id, larger id)`.
#[derive(Clone, Debug, Default)]
pub struct LinkTable {
    entries: Vec<LinkEntry>,
    index: HashMap<(usize, usize), usize>,
}

impl LinkTable {
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.index.get(&(a.min(b), a.max(b))).map(|&i| self.entries[i].lk)
    }

    /// Entries sorted by `(a, b)`.
    pub fn entries(&self) -> &[LinkEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn build_link_table(d: &Diagram, cycles: &[Cycle]) -> LinkTable {
    let entries: Vec<LinkEntry> = cycles
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, a)| {
            cycles[i + 1..]
                .iter()
                .filter(|b| a.is_disjoint(b))
                .map(|b| LinkEntry { a: a.id, b: b.id, lk: over_sum(d, &a.edge_signs, &b.edge_signs) })
                .collect::<Vec<_>>()
        })
        .collect();
    let index = entries.iter().enumerate().map(|(i, e)| ((e.a, e.b), i)).collect();
    LinkTable { entries, index }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub index: usize,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub vertices: Vec<VertexReport>,
    pub crossings: Vec<Crossing>,
}
