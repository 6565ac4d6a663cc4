use ikdetect_core::diagram::{build_link_table, canonical_embedding, half_total, over_sum, Diagram};
use ikdetect_core::generators;
use ikdetect_core::graph::{enumerate_cycles, Cycle, Graph};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn disjoint_pairs(cycles: &[Cycle]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in cycles {
        for b in cycles.iter().skip(a.id + 1) {
            if a.vertices.iter().all(|v| !b.vertices.contains(v)) {
                out.push((a.id, b.id));
            }
        }
    }
    out
}

fn reversed(c: &Cycle) -> Vec<(usize, i8)> {
    c.edge_signs.iter().map(|&(e, s)| (e, -s)).collect()
}

/// Sign of the crossing of two chords from floating-point coordinates.
fn float_sign(d: &Diagram, g: &Graph, under: usize, over: usize) -> i8 {
    let p = |v: usize| {
        let q = &d.positions()[v];
        (q.x.to_f64().unwrap(), q.y.to_f64().unwrap())
    };
    let dir = |e: usize| {
        let (a, b) = g.edge(e);
        let (pa, pb) = (p(a), p(b));
        (pb.0 - pa.0, pb.1 - pa.1)
    };
    let (o, u) = (dir(over), dir(under));
    let z = o.0 * u.1 - o.1 * u.0;
    assert!(z.abs() > 1e-12);
    if z > 0.0 {
        1
    } else {
        -1
    }
}

#[test]
fn over_sum_equals_half_total_on_k6_and_k7() {
    for n in [6, 7] {
        let g = generators::complete(n);
        let d = canonical_embedding(&g);
        let cycles = enumerate_cycles(&g);
        let pairs = disjoint_pairs(&cycles);
        assert_eq!(pairs.len(), if n == 6 { 10 } else { 175 });
        let table = build_link_table(&d, &cycles);
        assert_eq!(table.len(), pairs.len());
        for (a, b) in pairs {
            let (ca, cb) = (&cycles[a], &cycles[b]);
            let lk = over_sum(&d, &ca.edge_signs, &cb.edge_signs);
            assert_eq!(lk, half_total(&d, &ca.edge_signs, &cb.edge_signs));
            assert_eq!(lk, over_sum(&d, &cb.edge_signs, &ca.edge_signs));
            assert_eq!(-lk, over_sum(&d, &reversed(ca), &cb.edge_signs));
            assert_eq!(lk, over_sum(&d, &reversed(ca), &reversed(cb)));
            assert_eq!(table.get(a, b), Some(lk));
            assert_eq!(table.get(b, a), Some(lk));
        }
    }
}

#[test]
fn crossings_match_geometry() {
    for g in [generators::complete(7), generators::petersen(), generators::random_graph(9, 20, 5)] {
        let d = canonical_embedding(&g);
        let m = g.edge_count();
        for k in 0..m {
            for l in 0..m {
                if k == l {
                    continue;
                }
                let c = d.crossing(k, l);
                assert_eq!(c.is_some(), d.chords_cross_geometrically(k, l));
                if let Some(c) = c {
                    assert!(!g.edges_adjacent(k, l));
                    assert_eq!(c.under, k.min(l));
                    assert_eq!(c.sign, float_sign(&d, &g, c.under, c.over));
                }
            }
        }
    }
}

#[test]
fn k6_triangle_parity_is_odd() {
    let g = generators::complete(6);
    let d = canonical_embedding(&g);
    let cycles = enumerate_cycles(&g);
    let total: i64 = build_link_table(&d, &cycles).entries().iter().map(|e| e.lk).sum();
    assert_eq!(total.rem_euclid(2), 1);
}

#[test]
fn single_crossing_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let setups: Vec<_> = [6, 7]
        .into_iter()
        .map(|n| {
            let g = generators::complete(n);
            let d = canonical_embedding(&g);
            let cycles = enumerate_cycles(&g);
            let pairs = disjoint_pairs(&cycles);
            (g, d, cycles, pairs)
        })
        .collect();
    let mut affected = 0;
    for trial in 0..1000 {
        let (_, d, cycles, pairs) = &setups[trial % 2];
        let c = d.crossings()[rng.gen_range(0..d.crossings().len())];
        let d2 = d.with_crossing_changed(c.under, c.over).unwrap();
        assert_eq!(d2.crossing(c.under, c.over).unwrap().sign, -c.sign);
        let mut parity = 0;
        for &(a, b) in pairs {
            let (ca, cb) = (&cycles[a], &cycles[b]);
            let before = over_sum(d, &ca.edge_signs, &cb.edge_signs);
            let after = over_sum(&d2, &ca.edge_signs, &cb.edge_signs);
            assert_eq!(after, half_total(&d2, &ca.edge_signs, &cb.edge_signs));
            parity += after;
            let orient = |cy: &Cycle, e: usize| cy.edge_signs.iter().find(|x| x.0 == e).map(|x| x.1);
            let hit = match (orient(ca, c.under), orient(cb, c.over), orient(ca, c.over), orient(cb, c.under)) {
                (Some(x), Some(y), _, _) | (_, _, Some(x), Some(y)) => Some(x * y),
                _ => None,
            };
            match hit {
                Some(eps) => {
                    affected += 1;
                    assert_eq!(after - before, -(c.sign * eps) as i64);
                }
                None => assert_eq!(after, before),
            }
        }
        if trial % 2 == 0 {
            // K6: parity of the triangle pairs survives any crossing change
            assert_eq!(parity.rem_euclid(2), 1);
        }
    }
    assert!(affected > 0);
}
