//! The full chain from a graph to its equation system, with phase timings.

use std::time::{Duration, Instant};

use crate::diagram::{build_link_table, canonical_embedding, Diagram, LinkTable};
use crate::graph::{enumerate_cycles, nonadjacent_edge_pairs, Cycle, EdgePairs, Graph};
use crate::quads::{build_equations, enumerate_quads, EquationSet, Quad, QuadOptions};

#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub phases: Vec<(&'static str, Duration)>,
}

impl Timings {
    pub fn time<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases.push((name, start.elapsed()));
        out
    }
}

/// Cycles, diagram and linking numbers of a graph.
pub struct Prepared {
    pub graph: Graph,
    pub cycles: Vec<Cycle>,
    pub diagram: Diagram,
    pub links: LinkTable,
    pub vars: EdgePairs,
}

pub fn prepare(graph: Graph, timings: &mut Timings) -> Prepared {
    let cycles = timings.time("cycles", || enumerate_cycles(&graph));
    let diagram = timings.time("diagram", || canonical_embedding(&graph));
    let links = timings.time("linking", || build_link_table(&diagram, &cycles));
    let vars = nonadjacent_edge_pairs(&graph);
    Prepared { graph, cycles, diagram, links, vars }
}

impl Prepared {
    pub fn quads(&self, opts: QuadOptions, timings: &mut Timings) -> Vec<Quad> {
        timings.time("quads", || enumerate_quads(&self.graph, &self.cycles, &self.links, opts))
    }

    pub fn equations(&self, quads: &[Quad], timings: &mut Timings) -> EquationSet {
        timings.time("equations", || build_equations(&self.cycles, quads, &self.links, &self.vars))
    }
}
