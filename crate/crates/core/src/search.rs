//! Search for an embedding with no double-linked quad.
//!
//! Every quad contributes a related pair of equations, at least one of which
//! must hold. A selection string has one digit per equation (1 = the
//! equation is required); it is valid when every related pair has a 1. The
//! search walks valid strings in lexicographic order (digit `i` is equation
//! `i`; 0 sorts before 1) and asks whether the selected equations are
//! jointly solvable.
//!
//! The walk is a depth-first assignment of digits in index order, trying 0
//! before 1, which visits strings in exactly that order. Blocks of
//! consecutive strings are skipped when
//! - a related pair would be all 0 (invalid strings),
//! - the 1s chosen so far are already inconsistent over GF(2); the rows
//!   combined into the contradiction are recorded as a nogood, and
//! - a recorded nogood would be all 1s (its last member is forced to 0).
//!
//! Equations that must hold in every solution (indispensable: their related
//! set alone is unsolvable) are fixed to 1 up front.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitSet;
use crate::certificate::{twist_map, updated_linking, vanishes, Certificate, CertificateMode, VerifyError};
use crate::diagram::LinkTable;
use crate::graph::{Cycle, EdgePairs, Graph};
use crate::linsys::{
    gf2_row, solve_gf2, solve_integer, solve_integer_via_rational, Gf2Basis, Gf2Outcome, LinearSystem, Ring,
};
use crate::quads::{EquationSet, Quad};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "IK")]
    Ik,
    #[serde(rename = "D4LESS_Z")]
    D4lessZ,
    #[serde(rename = "D4LESS_Z2")]
    D4lessZ2,
    #[serde(rename = "TIMEOUT")]
    Timeout,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::Ik => "IK",
            VerdictKind::D4lessZ => "D4LESS_Z",
            VerdictKind::D4lessZ2 => "D4LESS_Z2",
            VerdictKind::Timeout => "TIMEOUT",
        }
    }
}

/// How a GF(2)-solvable selection is tested over the integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IntegerMethod {
    /// Exact decision via unimodular column reduction.
    #[default]
    Exact,
    /// Accept only if the rational solution with free variables 0 is
    /// integral.
    RationalIntegral,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub ring: Ring,
    pub indispensable: bool,
    pub skipping: bool,
    pub integer_method: IntegerMethod,
    pub time_limit: Option<Duration>,
    /// Maximum number of branching decisions.
    pub node_limit: Option<u64>,
    pub workers: usize,
    /// Oldest nogoods are dropped beyond this many.
    pub max_nogoods: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            ring: Ring::Z,
            indispensable: true,
            skipping: true,
            integer_method: IntegerMethod::Exact,
            time_limit: None,
            node_limit: None,
            workers: 1,
            max_nogoods: 200_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub equations: usize,
    pub relations: usize,
    pub indispensable: usize,
    /// Selected systems whose solvability was tested.
    pub strings_examined: u64,
    /// Strings passed over without a solve: those missing an indispensable
    /// 1 and those containing a known-infeasible subset (decimal; can
    /// exceed 64 bits).
    pub strings_skipped: String,
    pub nogoods_learned: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub complete_strings: u64,
    pub integer_solves: u64,
}

/// A solvable selection and a solution of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub ring: Ring,
    /// Ids of the selected equations.
    pub selection: Vec<usize>,
    /// One value per crossing-change variable.
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub solution: Option<Solution>,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn certificate(&self, g: &Graph, vars: &EdgePairs) -> Option<Certificate> {
        self.solution
            .as_ref()
            .map(|s| Certificate::from_values(CertificateMode::Ik, s.ring, g, vars, &s.values))
    }
}

/// Indispensable equations, and a contradiction among them if one was hit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Indispensables {
    pub ids: Vec<usize>,
    /// Indispensable equation ids that are jointly unsolvable; when set the
    /// graph has no solution at all.
    pub contradiction: Option<Vec<usize>>,
}

fn integer_system<'a>(eqs: &EquationSet, ids: impl IntoIterator<Item = &'a usize>) -> LinearSystem {
    let mut sys = LinearSystem::new(eqs.num_vars);
    for &id in ids {
        let e = &eqs.equations[id];
        sys.push(id, e.terms.iter().map(|&(v, c)| (v, c as i64)).collect(), -e.constant);
    }
    sys
}

fn unsolvable(sys: &LinearSystem, ring: Ring) -> bool {
    match solve_gf2(sys) {
        Gf2Outcome::Infeasible(_) => true,
        Gf2Outcome::Feasible(_) => ring == Ring::Z && solve_integer(sys).is_none(),
    }
}

/// Marks `A` indispensable when the system of equations related to `A` is
/// unsolvable in `ring`. Stops at the first indispensable that makes the
/// accumulated set unsolvable.
pub fn indispensable_equations(eqs: &EquationSet, ring: Ring) -> Indispensables {
    let mut out = Indispensables::default();
    let z = eqs.equations.len();
    let mut basis = Gf2Basis::new(eqs.num_vars, z);
    for a in 0..z {
        let related = &eqs.relations.related[a];
        if !unsolvable(&integer_system(eqs, related), ring) {
            continue;
        }
        out.ids.push(a);
        let e = &eqs.equations[a];
        let (bits, rhs) = gf2_row(eqs.num_vars, &integer_system(eqs, [&a]).rows[0].terms, e.constant);
        if let Err(origin) = basis.push(a, bits, rhs) {
            out.contradiction = Some(origin.iter().collect());
            return out;
        }
        if ring == Ring::Z && solve_integer(&integer_system(eqs, &out.ids)).is_none() {
            out.contradiction = Some(out.ids.clone());
            return out;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Val {
    Unset,
    Off,
    On,
}

enum Outcome {
    Found(Solution),
    Exhausted { fallback: Option<Solution> },
    Timeout,
    Cancelled,
}

enum LeafResult {
    Found(Solution),
    Reject,
}

/// `Err(Some(core))`: the selected rows `core` are inconsistent.
/// `Err(None)`: a related pair or a nogood is violated.
type Propagation = Result<(), Option<Vec<usize>>>;

struct Limits<'a> {
    start: Instant,
    time_limit: Option<Duration>,
    node_limit: Option<u64>,
    block: usize,
    best_block: &'a AtomicUsize,
    stop: &'a AtomicBool,
}

struct Engine<'a> {
    eqs: &'a EquationSet,
    opts: &'a SearchOptions,
    rows: &'a [(BitSet, bool)],
    val: Vec<Val>,
    pos: Vec<usize>,
    trail: Vec<usize>,
    rank_at: Vec<usize>,
    /// `(trail length at entry, decision variable, already flipped to 1)`
    levels: Vec<(usize, usize, bool)>,
    queue_head: usize,
    basis: Gf2Basis,
    nogoods: Vec<Vec<usize>>,
    watched: Vec<[usize; 2]>,
    watches: Vec<Vec<usize>>,
    live: VecDeque<usize>,
    skipped_by_free: Vec<u64>,
    /// Digits fixed before branching.
    base: usize,
    fallback: Option<Solution>,
    stats: SearchStats,
}

impl<'a> Engine<'a> {
    fn new(eqs: &'a EquationSet, opts: &'a SearchOptions, rows: &'a [(BitSet, bool)]) -> Self {
        let z = eqs.equations.len();
        Engine {
            eqs,
            opts,
            rows,
            val: vec![Val::Unset; z],
            pos: vec![0; z],
            trail: Vec::with_capacity(z),
            rank_at: Vec::with_capacity(z),
            levels: Vec::new(),
            queue_head: 0,
            basis: Gf2Basis::new(eqs.num_vars, z),
            nogoods: Vec::new(),
            watched: Vec::new(),
            watches: vec![Vec::new(); z],
            live: VecDeque::new(),
            skipped_by_free: vec![0; z + 1],
            base: 0,
            fallback: None,
            stats: SearchStats::default(),
        }
    }

    fn assign(&mut self, v: usize, value: Val) -> Propagation {
        debug_assert_eq!(self.val[v], Val::Unset);
        self.val[v] = value;
        self.pos[v] = self.trail.len();
        self.rank_at.push(self.basis.rank());
        self.trail.push(v);
        if value == Val::On && self.opts.skipping {
            self.stats.strings_examined += 1;
            let (bits, rhs) = &self.rows[v];
            if let Err(origin) = self.basis.push(v, bits.clone(), *rhs) {
                return Err(Some(origin.iter().collect()));
            }
        }
        Ok(())
    }

    fn propagate(&mut self) -> Propagation {
        while self.queue_head < self.trail.len() {
            let v = self.trail[self.queue_head];
            self.queue_head += 1;
            match self.val[v] {
                Val::Off => {
                    for &p in &self.eqs.relations.related[v] {
                        match self.val[p] {
                            Val::Off => return Err(None),
                            Val::Unset => self.assign(p, Val::On)?,
                            Val::On => {}
                        }
                    }
                }
                Val::On => self.propagate_nogoods(v)?,
                Val::Unset => unreachable!(),
            }
        }
        Ok(())
    }

    /// Watched-member scheme: each nogood watches two members; while a
    /// watched member is not 1 the nogood cannot be all 1s.
    fn propagate_nogoods(&mut self, v: usize) -> Propagation {
        let list = std::mem::take(&mut self.watches[v]);
        let mut keep = Vec::with_capacity(list.len());
        let mut result = Ok(());
        let mut it = list.into_iter();
        for idx in it.by_ref() {
            if self.nogoods[idx].is_empty() {
                continue;
            }
            let [w0, w1] = self.watched[idx];
            let other = if w0 == v { w1 } else { w0 };
            let replacement = self.nogoods[idx]
                .iter()
                .copied()
                .find(|&m| m != v && m != other && self.val[m] != Val::On);
            if let Some(m) = replacement {
                self.watched[idx] = [other, m];
                self.watches[m].push(idx);
                continue;
            }
            keep.push(idx);
            match self.val[other] {
                Val::Off => {}
                Val::Unset if other != v => {
                    if let Err(e) = self.assign(other, Val::Off) {
                        result = Err(e);
                        break;
                    }
                }
                _ => {
                    result = Err(None);
                    break;
                }
            }
        }
        keep.extend(it);
        self.watches[v].append(&mut keep);
        result
    }

    fn learn(&mut self, core: Vec<usize>) -> Option<usize> {
        if !self.opts.skipping || core.is_empty() {
            return None;
        }
        self.stats.nogoods_learned += 1;
        let mut by_recency = core.clone();
        by_recency.sort_by_key(|&m| std::cmp::Reverse(self.pos[m]));
        let w = [by_recency[0], *by_recency.get(1).unwrap_or(&by_recency[0])];
        let idx = self.nogoods.len();
        self.nogoods.push(core);
        self.watched.push(w);
        self.watches[w[0]].push(idx);
        if w[1] != w[0] {
            self.watches[w[1]].push(idx);
        }
        self.live.push_back(idx);
        while self.live.len() > self.opts.max_nogoods.max(1) {
            let old = self.live.pop_front().unwrap();
            self.nogoods[old] = Vec::new();
        }
        Some(idx)
    }

    /// Forces the last non-1 member of nogood `idx` to 0.
    fn enforce(&mut self, idx: usize) -> Propagation {
        let mut open = self.nogoods[idx].iter().copied().filter(|&m| self.val[m] != Val::On);
        match (open.next(), open.next()) {
            (None, _) => Err(None),
            (Some(m), None) if self.val[m] == Val::Unset => self.assign(m, Val::Off),
            _ => Ok(()),
        }
    }

    fn undo_to(&mut self, len: usize) {
        for &v in &self.trail[len..] {
            self.val[v] = Val::Unset;
        }
        if len < self.trail.len() {
            self.basis.truncate(self.rank_at[len]);
        }
        self.trail.truncate(len);
        self.rank_at.truncate(len);
        self.queue_head = len;
    }

    /// Returns the next decision to flip to 1, or `None` when exhausted.
    fn backtrack(&mut self) -> Option<usize> {
        while let Some((len, v, flipped)) = self.levels.pop() {
            self.undo_to(len);
            if !flipped {
                self.levels.push((len, v, true));
                return Some(v);
            }
        }
        None
    }

    fn selection(&self) -> Vec<usize> {
        (0..self.val.len()).filter(|&i| self.val[i] == Val::On).collect()
    }

    fn leaf(&mut self) -> LeafResult {
        self.stats.complete_strings += 1;
        let selection = self.selection();
        let bits = if self.opts.skipping {
            self.basis.solution()
        } else {
            self.stats.strings_examined += 1;
            let mut sys = LinearSystem::new(self.eqs.num_vars);
            for &id in &selection {
                let e = &self.eqs.equations[id];
                sys.push(id, e.terms.iter().map(|&(v, c)| (v, c as i64)).collect(), -e.constant);
            }
            match solve_gf2(&sys) {
                Gf2Outcome::Feasible(x) => x,
                Gf2Outcome::Infeasible(_) => return LeafResult::Reject,
            }
        };
        let z2 = Solution {
            ring: Ring::Z2,
            selection: selection.clone(),
            values: bits.iter().map(|&b| b as i64).collect(),
        };
        if self.opts.ring == Ring::Z2 {
            return LeafResult::Found(z2);
        }
        self.stats.integer_solves += 1;
        let sys = integer_system(self.eqs, &selection);
        let x = match self.opts.integer_method {
            IntegerMethod::Exact => solve_integer(&sys),
            IntegerMethod::RationalIntegral => solve_integer_via_rational(&sys),
        };
        let values: Option<Vec<i64>> = x.and_then(|x| x.iter().map(BigInt::to_i64).collect());
        match values {
            Some(values) => LeafResult::Found(Solution { ring: Ring::Z, selection, values }),
            None => {
                self.fallback.get_or_insert(z2);
                LeafResult::Reject
            }
        }
    }

    /// Backtracks from a conflict. Unless the conflict is a rejected leaf,
    /// every string under the current decisions is skipped.
    fn conflict(&mut self, core: Option<Vec<usize>>, at_leaf: bool) -> Option<Propagation> {
        self.stats.conflicts += 1;
        if self.opts.skipping && !at_leaf {
            let free = self.val.len() - self.base - self.levels.len();
            self.skipped_by_free[free] += 1;
        }
        let learned = core.and_then(|c| self.learn(c));
        let v = self.backtrack()?;
        let mut res = Ok(());
        if let Some(idx) = learned {
            res = self.enforce(idx);
        }
        if res.is_ok() && self.val[v] == Val::Unset {
            res = self.assign(v, Val::On);
        } else if res.is_ok() && self.val[v] == Val::Off {
            // the learned nogood already rules out 1 here
            res = Err(None);
        }
        Some(res.and_then(|_| self.propagate()))
    }

    /// Applies fixed digits before branching; `false` if they conflict.
    fn fix(&mut self, fixed: &[(usize, Val)]) -> bool {
        for &(v, value) in fixed {
            let res = match self.val[v] {
                Val::Unset => self.assign(v, value).and_then(|_| self.propagate()),
                cur if cur == value => Ok(()),
                _ => Err(None),
            };
            if res.is_err() {
                return false;
            }
        }
        self.base = self.trail.len();
        true
    }

    fn run(&mut self, limits: &Limits) -> Outcome {
        let mut ticks = 0u64;
        loop {
            ticks += 1;
            if ticks % 64 == 0 {
                if limits.stop.load(Ordering::Relaxed) || limits.best_block.load(Ordering::Relaxed) < limits.block {
                    return Outcome::Cancelled;
                }
                if limits.time_limit.is_some_and(|t| limits.start.elapsed() >= t) {
                    return Outcome::Timeout;
                }
            }
            if limits.node_limit.is_some_and(|n| self.stats.decisions >= n) {
                return Outcome::Timeout;
            }

            let mut at_leaf = false;
            let mut res = match self.val.iter().position(|&x| x == Val::Unset) {
                Some(v) => {
                    self.stats.decisions += 1;
                    self.levels.push((self.trail.len(), v, false));
                    self.assign(v, Val::Off).and_then(|_| self.propagate())
                }
                None => match self.leaf() {
                    LeafResult::Found(s) => return Outcome::Found(s),
                    LeafResult::Reject => {
                        at_leaf = true;
                        Err(None)
                    }
                },
            };
            while let Err(core) = res {
                let next = self.conflict(core, at_leaf);
                at_leaf = false;
                match next {
                    Some(next) => res = next,
                    None => return Outcome::Exhausted { fallback: self.fallback.take() },
                }
            }
        }
    }

    fn skipped(&self) -> BigUint {
        self.skipped_by_free
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(free, &c)| BigUint::from(c) << free)
            .sum()
    }
}

fn add_stats(total: &mut SearchStats, s: &SearchStats) {
    total.strings_examined += s.strings_examined;
    total.nogoods_learned += s.nogoods_learned;
    total.conflicts += s.conflicts;
    total.decisions += s.decisions;
    total.complete_strings += s.complete_strings;
    total.integer_solves += s.integer_solves;
}

/// Runs the lexicographic search over valid selection strings.
///
/// `indispensables`, when given, fixes those digits to 1 (and answers IK
/// outright if they are contradictory). With `opts.workers > 1` the string
/// space is split on its leading digits; the answer is the one the
/// single-worker walk would give.
pub fn search_d4less(eqs: &EquationSet, indispensables: Option<&Indispensables>, opts: &SearchOptions) -> Verdict {
    let z = eqs.equations.len();
    let mut stats = SearchStats {
        equations: z,
        relations: eqs.relations.pairs.len(),
        indispensable: indispensables.map_or(0, |i| i.ids.len()),
        strings_skipped: "0".into(),
        ..Default::default()
    };
    // strings lacking an indispensable 1 are passed over without a solve
    let forced = indispensables.map_or(0, |i| i.ids.len());
    let excluded = (BigUint::from(1u8) << z) - (BigUint::from(1u8) << (z - forced));
    if indispensables.is_some_and(|i| i.contradiction.is_some()) {
        stats.strings_skipped = (BigUint::from(1u8) << z).to_string();
        return Verdict { kind: VerdictKind::Ik, solution: None, stats };
    }

    let rows: Vec<(BitSet, bool)> = eqs
        .equations
        .iter()
        .map(|e| {
            let terms: Vec<(usize, i64)> = e.terms.iter().map(|&(v, c)| (v, c as i64)).collect();
            gf2_row(eqs.num_vars, &terms, e.constant)
        })
        .collect();
    let fixed: Vec<(usize, Val)> = indispensables
        .map(|i| i.ids.iter().map(|&a| (a, Val::On)).collect())
        .unwrap_or_default();

    let prefix_bits = if opts.workers > 1 {
        let mut d = 3;
        while (1usize << d) < 8 * opts.workers {
            d += 1;
        }
        d.min(z).min(16)
    } else {
        0
    };
    let blocks = 1usize << prefix_bits;
    let best_block = AtomicUsize::new(usize::MAX);
    let stop = AtomicBool::new(false);
    let start = Instant::now();

    let run_block = |block: usize| -> (Outcome, SearchStats, BigUint) {
        let mut engine = Engine::new(eqs, opts, &rows);
        let mut fixed_here = fixed.clone();
        for d in 0..prefix_bits {
            let bit = (block >> (prefix_bits - 1 - d)) & 1;
            fixed_here.push((d, if bit == 1 { Val::On } else { Val::Off }));
        }
        let limits = Limits {
            start,
            time_limit: opts.time_limit,
            node_limit: opts.node_limit,
            block,
            best_block: &best_block,
            stop: &stop,
        };
        let mut block_skipped = BigUint::zero();
        let outcome = if engine.fix(&fixed_here) {
            engine.run(&limits)
        } else {
            // the whole block, unless it was already excluded by a forced 1
            let clash = fixed_here.iter().any(|&(v, val)| val == Val::Off && fixed.iter().any(|f| f.0 == v));
            if !clash {
                let mut vars: Vec<usize> = fixed_here.iter().map(|f| f.0).collect();
                vars.sort_unstable();
                vars.dedup();
                block_skipped = BigUint::from(1u8) << (z - vars.len());
            }
            Outcome::Exhausted { fallback: None }
        };
        match &outcome {
            Outcome::Found(_) => {
                best_block.fetch_min(block, Ordering::Relaxed);
            }
            Outcome::Timeout => stop.store(true, Ordering::Relaxed),
            _ => {}
        }
        let skipped = engine.skipped() + block_skipped;
        (outcome, engine.stats, skipped)
    };

    let results: Vec<(Outcome, SearchStats, BigUint)> = if blocks == 1 {
        vec![run_block(0)]
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build();
        match pool {
            Ok(pool) => pool.install(|| (0..blocks).into_par_iter().map(run_block).collect()),
            Err(_) => (0..blocks).map(run_block).collect(),
        }
    };

    let mut skipped = excluded;
    for (_, s, sk) in &results {
        add_stats(&mut stats, s);
        skipped += sk;
    }
    stats.strings_skipped = skipped.to_string();

    // first block in lexicographic order decides, as in a single walk
    let mut fallback: Option<Solution> = None;
    for (outcome, _, _) in results {
        match outcome {
            Outcome::Found(s) => {
                let kind = match s.ring {
                    Ring::Z => VerdictKind::D4lessZ,
                    Ring::Z2 => VerdictKind::D4lessZ2,
                };
                return Verdict { kind, solution: Some(s), stats };
            }
            Outcome::Exhausted { fallback: f } => {
                if fallback.is_none() {
                    fallback = f;
                }
            }
            Outcome::Timeout | Outcome::Cancelled => {
                return Verdict { kind: VerdictKind::Timeout, solution: None, stats };
            }
        }
    }
    match fallback {
        Some(s) => Verdict { kind: VerdictKind::D4lessZ2, solution: Some(s), stats },
        None => Verdict { kind: VerdictKind::Ik, solution: None, stats },
    }
}

/// Independently checks that after the certificate's crossing changes every
/// quad has a diagonal pair with vanishing linking number (in the
/// certificate's ring).
pub fn verify_certificate(
    g: &Graph,
    cycles: &[Cycle],
    quads: &[Quad],
    links: &LinkTable,
    cert: &Certificate,
) -> Result<bool, VerifyError> {
    let twists = twist_map(g, cert)?;
    for q in quads {
        let [a, b, c, d] = q.cycles.map(|i| &cycles[i]);
        let first = updated_linking(links, a, c, &twists)?;
        if vanishes(first, cert.ring) {
            continue;
        }
        let second = updated_linking(links, b, d, &twists)?;
        if !vanishes(second, cert.ring) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quads::{Equation, RelationSet};

    /// Hand-built equation set: variables `x0, x1`, equations given as
    /// `(vars, constant)` meaning `constant + Σ x = 0`.
    fn eqset(num_vars: usize, eqs: &[(&[usize], i64)], pairs: &[(usize, usize)]) -> EquationSet {
        let equations = eqs
            .iter()
            .enumerate()
            .map(|(id, (vars, c))| Equation {
                id,
                cycles: (id, id),
                terms: vars.iter().map(|&v| (v, 1)).collect(),
                constant: *c,
            })
            .collect::<Vec<_>>();
        let mut related = vec![Vec::new(); equations.len()];
        for &(a, b) in pairs {
            related[a].push(b);
            related[b].push(a);
        }
        EquationSet { equations, relations: RelationSet { pairs: pairs.to_vec(), related }, num_vars }
    }

    fn opts(ring: Ring) -> SearchOptions {
        SearchOptions { ring, ..Default::default() }
    }

    #[test]
    fn empty_equation_set() {
        let v = search_d4less(&EquationSet::default(), None, &opts(Ring::Z));
        assert_eq!(v.kind, VerdictKind::D4lessZ);
        assert!(v.solution.unwrap().values.is_empty());
    }

    #[test]
    fn indispensable_from_contradictory_relations() {
        // A = eq0 related to eq1 (x0 = 0) and eq2 (x0 = 1 i.e. 1 + x0 = 0)
        let e = eqset(1, &[(&[0], 0), (&[0], 0), (&[0], 1)], &[(0, 1), (0, 2)]);
        let ind = indispensable_equations(&e, Ring::Z2);
        assert_eq!(ind.ids, vec![0]);
        assert!(ind.contradiction.is_none());
    }

    #[test]
    fn contradictory_indispensables_mean_ik() {
        // eq0: x0 = 0, eq1: x0 = 1; each is related to both x1 = 0 and x1 = 1
        let e = eqset(2, &[(&[0], 0), (&[0], 1), (&[1], 0), (&[1], 1)], &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let ind = indispensable_equations(&e, Ring::Z2);
        assert!(ind.contradiction.is_some());
        assert_eq!(search_d4less(&e, Some(&ind), &opts(Ring::Z2)).kind, VerdictKind::Ik);
        let plain = SearchOptions { indispensable: false, skipping: false, ..opts(Ring::Z2) };
        assert_eq!(search_d4less(&e, None, &plain).kind, VerdictKind::Ik);
        assert_eq!(search_d4less(&e, None, &opts(Ring::Z2)).kind, VerdictKind::Ik);
    }

    #[test]
    fn lexicographically_first_selection() {
        // related pairs (0,1) and (1,2); string 010 is the smallest valid one
        let e = eqset(2, &[(&[0], 1), (&[1], 0), (&[0], 0)], &[(0, 1), (1, 2)]);
        let v = search_d4less(&e, None, &opts(Ring::Z2));
        assert_eq!(v.kind, VerdictKind::D4lessZ2);
        assert_eq!(v.solution.unwrap().selection, vec![1]);
        let e = eqset(2, &[(&[0], 1), (&[1], 1), (&[0], 0), (&[1], 0)], &[(0, 1), (1, 2), (1, 3)]);
        let s = search_d4less(&e, None, &opts(Ring::Z2)).solution.unwrap();
        assert_eq!(s.selection, vec![1]);
        assert_eq!(s.values, vec![0, 1]);
    }

    #[test]
    fn z_mode_falls_back_to_z2() {
        // 2x0 + 2x1 = 2 and x0 + x1 = 0 agree mod 2 only
        let mut e = eqset(2, &[(&[0, 1], -2), (&[0, 1], 0)], &[(0, 1)]);
        e.equations[0].terms = vec![(0, 2), (1, 2)];
        let both = Indispensables { ids: vec![0, 1], contradiction: None };
        let v = search_d4less(&e, Some(&both), &opts(Ring::Z));
        assert_eq!(v.kind, VerdictKind::D4lessZ2);
        assert_eq!(v.stats.integer_solves, 1);
        let v = search_d4less(&e, None, &opts(Ring::Z));
        assert_eq!(v.kind, VerdictKind::D4lessZ);
        assert_eq!(v.solution.unwrap().selection, vec![1]);
    }

    #[test]
    fn node_budget_times_out() {
        let e = eqset(2, &[(&[0], 1), (&[1], 0), (&[0], 0)], &[(0, 1), (1, 2)]);
        let o = SearchOptions { node_limit: Some(0), ..opts(Ring::Z2) };
        assert_eq!(search_d4less(&e, None, &o).kind, VerdictKind::Timeout);
    }
}
