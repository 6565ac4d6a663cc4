use ikdetect_core::diagram::{build_link_table, canonical_embedding};
use ikdetect_core::generators;
use ikdetect_core::graph::{enumerate_cycles, nonadjacent_edge_pairs, Graph};
use ikdetect_core::il::{
    detect_il, detect_zero_linking, linking_equations, linking_system, verify_linking_certificate, IlVerdictKind,
};
use ikdetect_core::linsys::{solve_gf2, Gf2Outcome};

fn run(g: &Graph) -> (IlVerdictKind, IlVerdictKind) {
    let cycles = enumerate_cycles(g);
    let links = build_link_table(&canonical_embedding(g), &cycles);
    let vars = nonadjacent_edge_pairs(g);
    let il = detect_il(&cycles, &links, &vars);
    let zero = detect_zero_linking(&cycles, &links, &vars);
    for v in [&il, &zero] {
        if let Some(cert) = v.certificate(g, &vars) {
            assert!(verify_linking_certificate(g, &cycles, &links, &cert).unwrap());
            let mut bad = cert.clone();
            bad.entries.truncate(bad.entries.len().saturating_sub(1));
            if !cert.entries.is_empty() {
                assert!(verify_linking_certificate(g, &cycles, &links, &bad).is_err());
            }
        }
    }
    (il.kind, zero.kind)
}

#[test]
fn petersen_family_members_are_linked() {
    for name in ["k6", "k331", "petersen"] {
        let (il, zero) = run(&generators::by_name(name).unwrap());
        assert_eq!(il, IlVerdictKind::Il, "{name}");
        assert_eq!(zero, IlVerdictKind::NoZeroLinking, "{name}");
    }
}

#[test]
fn linkless_graphs_are_not_linked() {
    for name in ["k4", "k5", "cube", "octahedron", "wheel:7", "prism:6", "grid:3x4", "two-triangles", "path:5"] {
        let (il, zero) = run(&generators::by_name(name).unwrap());
        assert_eq!(il, IlVerdictKind::NotIl, "{name}");
        assert_eq!(zero, IlVerdictKind::ZeroLinking, "{name}");
    }
}

#[test]
fn two_triangles_need_no_changes() {
    let g = generators::two_triangles(false);
    let cycles = enumerate_cycles(&g);
    let links = build_link_table(&canonical_embedding(&g), &cycles);
    let vars = nonadjacent_edge_pairs(&g);
    let v = detect_zero_linking(&cycles, &links, &vars);
    assert!(v.certificate(&g, &vars).unwrap().is_zero());
}

#[test]
fn k6_triangle_rows_sum_to_odd_constant() {
    let g = generators::complete(6);
    let cycles = enumerate_cycles(&g);
    let links = build_link_table(&canonical_embedding(&g), &cycles);
    let vars = nonadjacent_edge_pairs(&g);
    let eqs = linking_equations(&cycles, &links, &vars);
    assert_eq!(eqs.len(), 10);
    let mut coef = vec![0i64; vars.len()];
    let mut constant = 0;
    for e in &eqs {
        for &(v, c) in &e.terms {
            coef[v] += c as i64;
        }
        constant += e.constant;
    }
    // each variable occurs in exactly two triangle pairs
    assert!(coef.iter().all(|c| c.rem_euclid(2) == 0));
    assert_eq!(constant.rem_euclid(2), 1);
}

#[test]
fn linking_is_monotone_under_added_edges() {
    let mut seen_il = false;
    for n in 4..=7 {
        let (il, zero) = run(&generators::complete(n));
        if seen_il {
            assert_eq!(il, IlVerdictKind::Il, "K{n}");
        }
        seen_il |= il == IlVerdictKind::Il;
        // an integer solution reduces to one mod 2
        if zero == IlVerdictKind::ZeroLinking {
            assert_eq!(il, IlVerdictKind::NotIl);
        }
    }
    assert!(seen_il);
    // for a fixed seed the random graphs are nested as m grows
    for seed in 0..8 {
        let mut linked = false;
        for m in [10, 14, 18, 22, 26] {
            let (il, zero) = run(&generators::random_graph(8, m, seed));
            if linked {
                assert_eq!(il, IlVerdictKind::Il, "seed {seed}, m {m}");
            }
            linked |= il == IlVerdictKind::Il;
            if zero == IlVerdictKind::ZeroLinking {
                assert_eq!(il, IlVerdictKind::NotIl);
            }
        }
    }
}

#[test]
fn gf2_rank_cross_check_on_petersen() {
    let g = generators::petersen();
    let cycles = enumerate_cycles(&g);
    let links = build_link_table(&canonical_embedding(&g), &cycles);
    let vars = nonadjacent_edge_pairs(&g);
    let sys = linking_system(&linking_equations(&cycles, &links, &vars), vars.len());
    // rank of [A] is smaller than rank of [A | b] over GF(2)
    let rank = |with_rhs: bool| {
        let mut rows: Vec<Vec<u8>> = sys
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0u8; vars.len() + 1];
                for &(i, c) in &r.terms {
                    v[i] ^= (c.rem_euclid(2)) as u8;
                }
                if with_rhs {
                    v[vars.len()] = r.rhs.rem_euclid(2) as u8;
                }
                v
            })
            .collect();
        let mut rank = 0;
        for col in 0..=vars.len() {
            if let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] == 1) {
                rows.swap(rank, p);
                let pivot = rows[rank].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != rank && row[col] == 1 {
                        row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                    }
                }
                rank += 1;
            }
        }
        rank
    };
    assert!(rank(false) < rank(true));
    assert!(matches!(solve_gf2(&sys), Gf2Outcome::Infeasible(_)));
}
