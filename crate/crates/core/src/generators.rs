//! Named graph families.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).unwrap()
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let part_of: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(p, &s)| std::iter::repeat_n(p, s))
        .collect();
    let n = part_of.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Hub 0 joined to a rim cycle `1..=n`.
pub fn wheel(n: usize) -> Graph {
    assert!(n >= 3);
    let rim = (0..n).map(|i| (1 + i, 1 + (i + 1) % n));
    let spokes = (1..=n).map(|i| (0, i));
    Graph::new(n + 1, rim.chain(spokes)).unwrap()
}

/// Two `n`-cycles joined by a perfect matching.
pub fn prism(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    Graph::new(2 * n, edges).unwrap()
}

pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v);
    Graph::new(8, edges).unwrap()
}

pub fn octahedron() -> Graph {
    complete_multipartite(&[2, 2, 2])
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, edges).unwrap()
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).unwrap()
}

/// Triangles `{0,1,2}` and `{3,4,5}`, optionally joined by the edge `2 -- 3`.
pub fn two_triangles(bridged: bool) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
    if bridged {
        edges.push((2, 3));
    }
    Graph::new(6, edges).unwrap()
}

/// A uniformly random labeled graph with `n` vertices and `m` edges, drawn
/// from a deterministic 64-bit LCG seeded with `seed`.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Graph {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(m <= all.len());
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    for i in 0..m {
        let j = i + (next() as usize) % (all.len() - i);
        all.swap(i, j);
    }
    all.truncate(m);
    Graph::new(n, all).unwrap()
}

/// Looks up a generator by name: `k7`, `k3311` (multipartite by digits),
/// `complete:N`, `multipartite:a,b,..`, `petersen`, `cube`, `octahedron`,
/// `cycle:N`, `path:N`, `wheel:N`, `prism:N`, `grid:RxC`, `two-triangles`,
/// `two-triangles-bridged`, `random:N,M,SEED`.
pub fn by_name(name: &str) -> Option<Graph> {
    let name = name.trim().to_ascii_lowercase();
    let num = |s: &str| s.parse::<usize>().ok();
    let nums = |s: &str| s.split(',').map(|t| t.trim().parse::<usize>().ok()).collect::<Option<Vec<_>>>();
    if let Some((kind, arg)) = name.split_once(':') {
        return match kind {
            "complete" | "k" => num(arg).map(complete),
            "multipartite" => nums(arg).filter(|p| !p.is_empty()).map(|p| complete_multipartite(&p)),
            "cycle" => num(arg).filter(|&n| n >= 3).map(cycle),
            "path" => num(arg).map(path),
            "wheel" => num(arg).filter(|&n| n >= 3).map(wheel),
            "prism" => num(arg).filter(|&n| n >= 3).map(prism),
            "grid" => {
                let (r, c) = arg.split_once('x')?;
                Some(grid(num(r)?, num(c)?))
            }
            "random" => match nums(arg)?.as_slice() {
                &[n, m, seed] if m <= n * n.saturating_sub(1) / 2 => Some(random_graph(n, m, seed as u64)),
                _ => None,
            },
            _ => None,
        };
    }
    match name.as_str() {
        "petersen" => Some(petersen()),
        "cube" => Some(cube()),
        "octahedron" => Some(octahedron()),
        "two-triangles" => Some(two_triangles(false)),
        "two-triangles-bridged" => Some(two_triangles(true)),
        _ => {
            let digits = name.strip_prefix('k')?;
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return None;
            }
            if digits.len() == 1 {
                Some(complete(num(digits)?))
            } else {
                let parts: Vec<usize> = digits.bytes().map(|c| (c - b'0') as usize).collect();
                Some(complete_multipartite(&parts))
            }
        }
    }
}
