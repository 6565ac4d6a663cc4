//! Quads, their connecting-path witnesses, and the equation set they induce.
//!
//! A quad is a 4-tuple of distinct cycles `(C1, C2, C3, C4)` with
//! `C1 ∩ C3 = C2 ∩ C4 = ∅` in which every consecutive pair either meets in a
//! nonempty connected subgraph or is joined by a connecting path. Connecting
//! paths avoid the two non-incident cycles, have interiors off their own two
//! cycles, and are pairwise vertex-disjoint.
//!
//! The quad condition depends only on the unordered pair of diagonal pairs
//! `{{C1, C3}, {C2, C4}}`: all eight dihedral reorderings have the same four
//! consecutive pairs. One representative is kept per class, the
//! lexicographically least tuple of cycle ids.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitSet;
use crate::diagram::LinkTable;
use crate::graph::{intersection_class, is_chordless, Cycle, EdgePairs, Graph, IntersectionClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Witness {
    /// A vertex of `C_i ∩ C_{i+1}` (connected intersection).
    SharedVertex(usize),
    /// A vertex sequence from `C_i` to `C_{i+1}` (empty intersection).
    Path(Vec<usize>),
}

impl Witness {
    pub fn vertices(&self) -> &[usize] {
        match self {
            Witness::SharedVertex(v) => std::slice::from_ref(v),
            Witness::Path(p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quad {
    pub cycles: [usize; 4],
    /// `witnesses[i]` joins `cycles[i]` and `cycles[(i + 1) % 4]`.
    pub witnesses: [Witness; 4],
}

impl Quad {
    /// The two diagonal cycle pairs, each as `(smaller id, larger id)`.
    pub fn diagonals(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.cycles;
        [(a.min(c), a.max(c)), (b.min(d), b.max(d))]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadOptions {
    /// Keep only quads whose four cycles are chordless.
    pub chordless_only: bool,
    /// Also require single-vertex witnesses to be disjoint from every other
    /// witness.
    pub strict_witness: bool,
}

/// Enumerates one representative per quad class, sorted by cycle ids.
///
/// Diagonal pairs are taken from `links`, which holds exactly the disjoint
/// cycle pairs.
pub fn enumerate_quads(g: &Graph, cycles: &[Cycle], links: &LinkTable, opts: QuadOptions) -> Vec<Quad> {
    let chordless: Vec<bool> = if opts.chordless_only {
        cycles.iter().map(|c| is_chordless(g, c)).collect()
    } else {
        vec![true; cycles.len()]
    };
    let pairs: Vec<(usize, usize)> = links
        .entries()
        .iter()
        .map(|e| (e.a, e.b))
        .filter(|&(a, b)| chordless[a] && chordless[b])
        .collect();

    let mut quads: Vec<Quad> = pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &(a, c))| {
            pairs[i + 1..]
                .iter()
                .filter_map(|&(b, d)| {
                    if b == a || b == c || d == a || d == c {
                        return None;
                    }
                    let ids = canonical_order([a, b, c, d]);
                    let cs = ids.map(|id| &cycles[id]);
                    let witnesses = find_connecting_paths(g, cs, opts.strict_witness)?;
                    Some(Quad { cycles: ids, witnesses })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    quads.sort_by_key(|q| q.cycles);
    quads
}

/// Lexicographically least dihedral reordering of `(C1, C2, C3, C4)`.
pub fn canonical_order(ids: [usize; 4]) -> [usize; 4] {
    let [a, b, c, d] = ids;
    let (p, q) = ((a.min(c), a.max(c)), (b.min(d), b.max(d)));
    let (first, second) = if p.0 < q.0 { (p, q) } else { (q, p) };
    [first.0, second.0, first.1, second.1]
}

/// The eight dihedral reorderings of a 4-tuple.
pub fn dihedral_images(ids: [usize; 4]) -> [[usize; 4]; 8] {
    let mut out = [[0; 4]; 8];
    for r in 0..4 {
        out[r] = [ids[r], ids[(r + 1) % 4], ids[(r + 2) % 4], ids[(r + 3) % 4]];
        out[4 + r] = [ids[r], ids[(r + 3) % 4], ids[(r + 2) % 4], ids[(r + 1) % 4]];
    }
    out
}

/// Searches for connecting-path witnesses of the candidate `cs`.
///
/// Returns `None` when the diagonals are not disjoint, a consecutive
/// intersection is disconnected, or no disjoint family of paths exists.
pub fn find_connecting_paths(g: &Graph, cs: [&Cycle; 4], strict: bool) -> Option<[Witness; 4]> {
    if !cs[0].is_disjoint(cs[2]) || !cs[1].is_disjoint(cs[3]) {
        return None;
    }
    let classes: [IntersectionClass; 4] = std::array::from_fn(|i| intersection_class(cs[i], cs[(i + 1) % 4]));
    if classes.contains(&IntersectionClass::NonemptyDisconnected) {
        return None;
    }

    let mut covered = BitSet::new(g.vertex_count());
    for c in cs {
        covered.union_with(&c.vertex_mask);
    }
    let free = BitSet::from_indices(g.vertex_count(), (0..g.vertex_count()).filter(|&v| !covered.contains(v)));

    // candidate vertex sequences per slot, in search order
    let mut slots: Vec<Vec<Vec<usize>>> = Vec::with_capacity(4);
    for i in 0..4 {
        let cands = match classes[i] {
            IntersectionClass::Empty => slot_paths(g, cs, i, &free),
            _ if strict => cs[i].vertex_mask.intersection(&cs[(i + 1) % 4].vertex_mask).iter().map(|v| vec![v]).collect(),
            _ => Vec::new(),
        };
        if cands.is_empty() && (classes[i] == IntersectionClass::Empty || strict) {
            return None;
        }
        slots.push(cands);
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(4);
    let mut used = BitSet::new(g.vertex_count());
    if !choose(&slots, 0, &mut chosen, &mut used) {
        return None;
    }

    let mut picked = chosen.into_iter();
    Some(std::array::from_fn(|i| {
        if classes[i] == IntersectionClass::Empty {
            Witness::Path(slots[i][picked.next().unwrap()].clone())
        } else if strict {
            Witness::SharedVertex(slots[i][picked.next().unwrap()][0])
        } else {
            let shared = cs[i].vertex_mask.intersection(&cs[(i + 1) % 4].vertex_mask);
            Witness::SharedVertex(shared.first().unwrap())
        }
    }))
}

fn choose(slots: &[Vec<Vec<usize>>], i: usize, chosen: &mut Vec<usize>, used: &mut BitSet) -> bool {
    let Some(cands) = slots.get(i) else {
        return true;
    };
    if cands.is_empty() {
        return choose(slots, i + 1, chosen, used);
    }
    for (j, p) in cands.iter().enumerate() {
        if p.iter().any(|&v| used.contains(v)) {
            continue;
        }
        for &v in p {
            used.insert(v);
        }
        chosen.push(j);
        if choose(slots, i + 1, chosen, used) {
            return true;
        }
        chosen.pop();
        for &v in p {
            used.remove(v);
        }
    }
    false
}

/// Induced paths from `C_i` to `C_{i+1}` whose interiors lie in `free` and
/// whose endpoints avoid the other two cycles, shortest first.
///
/// Restricting to induced paths loses nothing: a chord of a path yields a
/// shorter valid path on a subset of its vertices.
fn slot_paths(g: &Graph, cs: [&Cycle; 4], i: usize, free: &BitSet) -> Vec<Vec<usize>> {
    let from = cs[i].vertex_mask.difference(&cs[(i + 3) % 4].vertex_mask);
    let to = cs[(i + 1) % 4].vertex_mask.difference(&cs[(i + 2) % 4].vertex_mask);
    let mut out = Vec::new();
    let mut path = Vec::new();

    fn extend(g: &Graph, path: &mut Vec<usize>, to: &BitSet, free: &BitSet, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for &(w, _) in g.neighbors(last) {
            let induced = path[..path.len() - 1].iter().all(|&p| !g.has_edge(p, w));
            if !induced {
                continue;
            }
            if to.contains(w) {
                path.push(w);
                out.push(path.clone());
                path.pop();
            } else if free.contains(w) && !path.contains(&w) {
                path.push(w);
                extend(g, path, to, free, out);
                path.pop();
            }
        }
    }

    for u in from.iter() {
        path.push(u);
        extend(g, &mut path, &to, free, &mut out);
        path.pop();
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Direct check of the quad conditions for explicit witnesses.
pub fn check_witnesses(g: &Graph, cs: [&Cycle; 4], ws: &[Witness; 4], strict: bool) -> bool {
    if (0..4).any(|i| (i + 1..4).any(|j| cs[i].vertices == cs[j].vertices)) {
        return false;
    }
    let meets = |a: &Cycle, v: usize| a.vertex_mask.contains(v);
    if cs[0].vertices.iter().any(|&v| meets(cs[2], v)) || cs[1].vertices.iter().any(|&v| meets(cs[3], v)) {
        return false;
    }
    for i in 0..4 {
        let (ci, cn) = (cs[i], cs[(i + 1) % 4]);
        let shared: Vec<usize> = ci.vertices.iter().copied().filter(|&v| meets(cn, v)).collect();
        match &ws[i] {
            Witness::SharedVertex(v) => {
                if shared.is_empty() || !shared.contains(v) {
                    return false;
                }
                let shared_edges = ci.edges().filter(|&e| cn.edge_mask.contains(e)).count();
                if shared.len() != shared_edges + 1 {
                    return false;
                }
            }
            Witness::Path(p) => {
                if !shared.is_empty() || p.len() < 2 {
                    return false;
                }
                if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                    return false;
                }
                if (0..p.len()).any(|a| (a + 1..p.len()).any(|b| p[a] == p[b])) {
                    return false;
                }
                if !meets(ci, p[0]) || !meets(cn, *p.last().unwrap()) {
                    return false;
                }
                if p[1..p.len() - 1].iter().any(|&v| meets(ci, v) || meets(cn, v)) {
                    return false;
                }
                let others = [cs[(i + 2) % 4], cs[(i + 3) % 4]];
                if p.iter().any(|&v| others.iter().any(|c| meets(c, v))) {
                    return false;
                }
            }
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let both_paths = matches!(ws[i], Witness::Path(_)) && matches!(ws[j], Witness::Path(_));
            if (both_paths || strict) && ws[i].vertices().iter().any(|v| ws[j].vertices().contains(v)) {
                return false;
            }
        }
    }
    true
}

/// `lk(A, B, Γ0) + Σ coef · x = 0` for a disjoint cycle pair `(A, B)`.
///
/// `coef` is the product of the traversal orientations of `e_k` in `A` and
/// `e_l` in `B`: a `+1` crossing change between `e_k` and `e_l` (edges
/// oriented low-to-high) shifts `lk(A, B)` by exactly `coef`. Over GF(2)
/// every coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub id: usize,
    pub cycles: (usize, usize),
    /// `(variable index, coefficient)`, sorted by variable.
    pub terms: Vec<(usize, i8)>,
    pub constant: i64,
}

/// Builds the equation `lk(a, b) = 0` over the crossing-change variables.
pub fn pair_equation(id: usize, a: &Cycle, b: &Cycle, vars: &EdgePairs, constant: i64) -> Equation {
    let mut terms: Vec<(usize, i8)> = a
        .edge_signs
        .iter()
        .flat_map(|&(k, ek)| {
            b.edge_signs.iter().map(move |&(l, el)| {
                let v = vars.index_of(k, l).expect("edges of disjoint cycles are nonadjacent");
                (v, ek * el)
            })
        })
        .collect();
    terms.sort_unstable();
    Equation { id, cycles: (a.id.min(b.id), a.id.max(b.id)), terms, constant }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    /// One `(smaller, larger)` equation-id pair per quad, in quad order.
    pub pairs: Vec<(usize, usize)>,
    /// `related[a]`: sorted ids of the equations related to `a`.
    pub related: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default)]
pub struct EquationSet {
    pub equations: Vec<Equation>,
    pub relations: RelationSet,
    pub num_vars: usize,
}

/// Deduplicates the diagonal equations of `quads` by cycle pair (ids in
/// cycle-pair order) and records one related pair per quad.
pub fn build_equations(cycles: &[Cycle], quads: &[Quad], links: &LinkTable, vars: &EdgePairs) -> EquationSet {
    let mut keys: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for q in quads {
        for d in q.diagonals() {
            keys.insert(d, 0);
        }
    }
    let mut equations = Vec::with_capacity(keys.len());
    for (id, (&(a, b), slot)) in keys.iter_mut().enumerate() {
        *slot = id;
        let lk = links.get(a, b).expect("diagonal pairs are disjoint");
        equations.push(pair_equation(id, &cycles[a], &cycles[b], vars, lk));
    }
    let mut related = vec![Vec::new(); equations.len()];
    let pairs: Vec<(usize, usize)> = quads
        .iter()
        .map(|q| {
            let [p, r] = q.diagonals().map(|d| keys[&d]);
            related[p].push(r);
            related[r].push(p);
            (p.min(r), p.max(r))
        })
        .collect();
    for r in &mut related {
        r.sort_unstable();
        r.dedup();
    }
    EquationSet { equations, relations: RelationSet { pairs, related }, num_vars: vars.len() }
}
