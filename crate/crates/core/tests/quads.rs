use std::collections::BTreeSet;

use ikdetect_core::diagram::{build_link_table, canonical_embedding};
use ikdetect_core::generators;
use ikdetect_core::graph::{enumerate_cycles, is_chordless, nonadjacent_edge_pairs, Cycle, Graph};
use ikdetect_core::quads::{
    build_equations, dihedral_images, enumerate_quads, find_connecting_paths, Quad, QuadOptions, Witness,
};

fn shared(a: &Cycle, b: &Cycle) -> Vec<usize> {
    a.vertices.iter().copied().filter(|v| b.vertices.contains(v)).collect()
}

fn shared_connected(g: &Graph, a: &Cycle, b: &Cycle, vs: &[usize]) -> bool {
    let ea: BTreeSet<usize> = a.edges().collect();
    let eb: BTreeSet<usize> = b.edges().collect();
    let mut seen = vec![vs[0]];
    let mut stack = vec![vs[0]];
    while let Some(u) = stack.pop() {
        for &w in vs {
            if let Some(e) = g.edge_between(u, w) {
                if ea.contains(&e) && eb.contains(&e) && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
    }
    seen.len() == vs.len()
}

/// Every simple path from `starts` to `ends` whose interior uses only `free`.
fn all_paths(g: &Graph, starts: &[usize], ends: &[usize], free: &[bool]) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, ends: &[usize], free: &[bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        for &(w, _) in g.neighbors(u) {
            if path.contains(&w) {
                continue;
            }
            if ends.contains(&w) {
                let mut p = path.clone();
                p.push(w);
                out.push(p);
            } else if free[w] {
                path.push(w);
                extend(g, path, ends, free, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &s in starts {
        extend(g, &mut vec![s], ends, free, &mut out);
    }
    out
}

fn pick_disjoint(options: &[Vec<Vec<usize>>], genuine: &[bool], i: usize, used: &mut Vec<usize>) -> bool {
    if i == options.len() {
        return true;
    }
    for p in &options[i] {
        if genuine[i] && p.iter().any(|v| used.contains(v)) {
            continue;
        }
        let before = used.len();
        if genuine[i] {
            used.extend(p);
        }
        if pick_disjoint(options, genuine, i + 1, used) {
            return true;
        }
        used.truncate(before);
    }
    false
}

/// Direct reading of the quad definition for the ordered tuple `t`.
fn is_quad(g: &Graph, cycles: &[Cycle], t: [usize; 4], strict: bool) -> bool {
    let c = t.map(|i| &cycles[i]);
    if t.iter().collect::<BTreeSet<_>>().len() < 4 {
        return false;
    }
    if !shared(c[0], c[2]).is_empty() || !shared(c[1], c[3]).is_empty() {
        return false;
    }
    let mut free = vec![true; g.vertex_count()];
    for cy in c {
        for &v in &cy.vertices {
            free[v] = false;
        }
    }
    let mut options = Vec::new();
    let mut genuine = Vec::new();
    for i in 0..4 {
        let (a, b) = (c[i], c[(i + 1) % 4]);
        let vs = shared(a, b);
        if vs.is_empty() {
            let starts: Vec<usize> = a.vertices.iter().copied().filter(|v| !c[(i + 3) % 4].vertices.contains(v)).collect();
            let ends: Vec<usize> = b.vertices.iter().copied().filter(|v| !c[(i + 2) % 4].vertices.contains(v)).collect();
            options.push(all_paths(g, &starts, &ends, &free));
            genuine.push(true);
        } else {
            if !shared_connected(g, a, b, &vs) {
                return false;
            }
            options.push(vs.into_iter().map(|v| vec![v]).collect());
            genuine.push(strict);
        }
    }
    pick_disjoint(&options, &genuine, 0, &mut Vec::new())
}

fn oracle(g: &Graph, cycles: &[Cycle], strict: bool) -> BTreeSet<[usize; 4]> {
    let mut pairs = Vec::new();
    for a in cycles {
        for b in cycles.iter().skip(a.id + 1) {
            if shared(a, b).is_empty() {
                pairs.push((a.id, b.id));
            }
        }
    }
    let mut out = BTreeSet::new();
    for &p in &pairs {
        for &q in &pairs {
            for (c1, c3) in [p, (p.1, p.0)] {
                for (c2, c4) in [q, (q.1, q.0)] {
                    let t = [c1, c2, c3, c4];
                    if is_quad(g, cycles, t, strict) {
                        let rotations = (0..4).map(|r| [t[r], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4]]);
                        let images: Vec<[usize; 4]> =
                            rotations.flat_map(|x| [x, [x[0], x[3], x[2], x[1]]]).collect();
                        out.insert(*images.iter().min().unwrap());
                    }
                }
            }
        }
    }
    out
}

/// Witness check written against the definition, without library helpers.
fn witnesses_hold(g: &Graph, cycles: &[Cycle], q: &Quad, strict: bool) -> bool {
    let c = q.cycles.map(|i| &cycles[i]);
    let in_any = |v: usize| c.iter().any(|cy| cy.vertices.contains(&v));
    let mut genuine: Vec<&[usize]> = Vec::new();
    for i in 0..4 {
        let (a, b) = (c[i], c[(i + 1) % 4]);
        match &q.witnesses[i] {
            Witness::SharedVertex(v) => {
                if !a.vertices.contains(v) || !b.vertices.contains(v) {
                    return false;
                }
                if strict {
                    genuine.push(std::slice::from_ref(v));
                }
            }
            Witness::Path(p) => {
                if !shared(a, b).is_empty() || p.len() < 2 {
                    return false;
                }
                let (s, t) = (p[0], *p.last().unwrap());
                if !a.vertices.contains(&s) || c[(i + 3) % 4].vertices.contains(&s) {
                    return false;
                }
                if !b.vertices.contains(&t) || c[(i + 2) % 4].vertices.contains(&t) {
                    return false;
                }
                if p[1..p.len() - 1].iter().any(|&v| in_any(v)) {
                    return false;
                }
                if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                    return false;
                }
                genuine.push(p);
            }
        }
    }
    for (i, p) in genuine.iter().enumerate() {
        for r in &genuine[i + 1..] {
            if p.iter().any(|v| r.contains(v)) {
                return false;
            }
        }
    }
    true
}

fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = ["k6", "cube", "octahedron", "prism:5", "k33", "k331", "wheel:6", "petersen"]
        .iter()
        .map(|n| (n.to_string(), generators::by_name(n).unwrap()))
        .collect();
    for seed in 0..12 {
        out.push((format!("random:8,13,{seed}"), generators::random_graph(8, 13, seed)));
        out.push((format!("random:9,14,{seed}"), generators::random_graph(9, 14, seed)));
        out.push((format!("random:10,17,{seed}"), generators::random_graph(10, 17, seed)));
    }
    out
}

#[test]
fn quads_match_brute_force_oracle() {
    let mut nonempty = 0;
    for (name, g) in corpus() {
        let cycles = enumerate_cycles(&g);
        let links = build_link_table(&canonical_embedding(&g), &cycles);
        for strict in [false, true] {
            let opts = QuadOptions { chordless_only: false, strict_witness: strict };
            let quads = enumerate_quads(&g, &cycles, &links, opts);
            let keys: BTreeSet<[usize; 4]> = quads.iter().map(|q| q.cycles).collect();
            assert_eq!(keys.len(), quads.len(), "{name}: duplicate representatives");
            assert_eq!(keys, oracle(&g, &cycles, strict), "{name} strict={strict}");
            for q in &quads {
                assert!(witnesses_hold(&g, &cycles, q, strict), "{name}: bad witnesses {q:?}");
            }
            if !strict && !quads.is_empty() {
                nonempty += 1;
            }
        }
    }
    assert!(nonempty >= 5);
}

#[test]
fn k6_counts() {
    let g = generators::complete(6);
    let cycles = enumerate_cycles(&g);
    let links = build_link_table(&canonical_embedding(&g), &cycles);
    let quads = enumerate_quads(&g, &cycles, &links, QuadOptions::default());
    // every pair of the ten disjoint triangle pairs forms a quad
    assert_eq!(quads.len(), 45);
    assert_eq!(oracle(&g, &cycles, false).len(), 45);
    let eqs = build_equations(&cycles, &quads, &links, &nonadjacent_edge_pairs(&g));
    assert!(eqs.equations.len() <= 2 * quads.len());
    assert_eq!(eqs.equations.len(), 10);
}

#[test]
fn dihedral_images_remain_quads() {
    for (name, g) in corpus() {
        let cycles = enumerate_cycles(&g);
        let links = build_link_table(&canonical_embedding(&g), &cycles);
        for q in enumerate_quads(&g, &cycles, &links, QuadOptions::default()) {
            for img in dihedral_images(q.cycles) {
                assert!(is_quad(&g, &cycles, img, false), "{name}: {img:?}");
                let cs = img.map(|i| &cycles[i]);
                assert!(find_connecting_paths(&g, cs, false).is_some(), "{name}: {img:?}");
            }
        }
    }
}

#[test]
fn chordless_quads_are_a_subset() {
    for (name, g) in corpus().into_iter().chain([("k7".to_string(), generators::complete(7))]) {
        let cycles = enumerate_cycles(&g);
        let links = build_link_table(&canonical_embedding(&g), &cycles);
        let all: BTreeSet<[usize; 4]> =
            enumerate_quads(&g, &cycles, &links, QuadOptions::default()).into_iter().map(|q| q.cycles).collect();
        let opts = QuadOptions { chordless_only: true, strict_witness: false };
        for q in enumerate_quads(&g, &cycles, &links, opts) {
            assert!(all.contains(&q.cycles), "{name}: {:?}", q.cycles);
            assert!(q.cycles.iter().all(|&i| is_chordless(&g, &cycles[i])));
        }
    }
}

#[test]
fn relations_come_from_quads() {
    for (_, g) in corpus() {
        let cycles = enumerate_cycles(&g);
        let links = build_link_table(&canonical_embedding(&g), &cycles);
        let quads = enumerate_quads(&g, &cycles, &links, QuadOptions::default());
        let vars = nonadjacent_edge_pairs(&g);
        let eqs = build_equations(&cycles, &quads, &links, &vars);
        assert_eq!(eqs.relations.pairs.len(), quads.len());
        for (q, &(x, y)) in quads.iter().zip(&eqs.relations.pairs) {
            let mut got = [eqs.equations[x].cycles, eqs.equations[y].cycles];
            got.sort();
            let [a, b, c, d] = q.cycles;
            let mut want = [(a.min(c), a.max(c)), (b.min(d), b.max(d))];
            want.sort();
            assert_eq!(got, want);
            assert!(!eqs.relations.related[x].contains(&x));
        }
        for e in &eqs.equations {
            let (a, b) = (&cycles[e.cycles.0], &cycles[e.cycles.1]);
            let mut expected: Vec<usize> = Vec::new();
            for k in a.edges() {
                for l in b.edges() {
                    expected.push(vars.index_of(k, l).unwrap());
                }
            }
            expected.sort_unstable();
            assert_eq!(e.terms.iter().map(|t| t.0).collect::<Vec<_>>(), expected);
            assert_eq!(Some(e.constant), links.get(a.id, b.id));
        }
    }
}

/// Under the disjointness conditions a shared vertex can never lie on
/// another slot's witness, so the strict reading selects the same quads.
#[test]
fn strict_witnesses_change_nothing() {
    for (name, g) in corpus().into_iter().chain([("k7".to_string(), generators::complete(7))]) {
        let cycles = enumerate_cycles(&g);
        let links = build_link_table(&canonical_embedding(&g), &cycles);
        let keys = |strict_witness| -> Vec<[usize; 4]> {
            let opts = QuadOptions { chordless_only: false, strict_witness };
            enumerate_quads(&g, &cycles, &links, opts).into_iter().map(|q| q.cycles).collect()
        };
        assert_eq!(keys(false), keys(true), "{name}");
    }
}
