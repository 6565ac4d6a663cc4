//! Intrinsic linking and zero-linking tests.
//!
//! A graph is intrinsically linked exactly when no crossing changes make
//! every disjoint cycle pair have even linking number, which is a single
//! GF(2) system with one equation per disjoint pair.

use serde::Serialize;

use crate::certificate::{twist_map, updated_linking, vanishes, Certificate, CertificateMode, VerifyError};
use crate::diagram::LinkTable;
use crate::graph::{Cycle, EdgePairs, Graph};
use crate::linsys::{infeasible_core, solve_gf2, solve_integer, Gf2Outcome, LinearSystem, Ring};
use num_traits::ToPrimitive;
use crate::quads::{pair_equation, Equation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IlVerdictKind {
    #[serde(rename = "IL")]
    Il,
    #[serde(rename = "NOT_IL")]
    NotIl,
    /// Every disjoint pair can be made unlinked over the integers.
    #[serde(rename = "ZERO_LINKING")]
    ZeroLinking,
    #[serde(rename = "NO_ZERO_LINKING")]
    NoZeroLinking,
}

impl IlVerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IlVerdictKind::Il => "IL",
            IlVerdictKind::NotIl => "NOT_IL",
            IlVerdictKind::ZeroLinking => "ZERO_LINKING",
            IlVerdictKind::NoZeroLinking => "NO_ZERO_LINKING",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlVerdict {
    pub kind: IlVerdictKind,
    /// Crossing changes achieving the target, when they exist.
    pub values: Option<Vec<i64>>,
    /// Disjoint cycle pairs whose equations are jointly unsolvable.
    pub core: Option<Vec<(usize, usize)>>,
}

impl IlVerdict {
    pub fn certificate(&self, g: &Graph, vars: &EdgePairs) -> Option<Certificate> {
        let (mode, ring) = match self.kind {
            IlVerdictKind::NotIl => (CertificateMode::Il, Ring::Z2),
            IlVerdictKind::ZeroLinking => (CertificateMode::ZeroLinking, Ring::Z),
            _ => return None,
        };
        self.values.as_ref().map(|v| Certificate::from_values(mode, ring, g, vars, v))
    }
}

/// One equation `lk(A, B) + Σ coef · x = 0` per disjoint pair, in link
/// table order.
pub fn linking_equations(cycles: &[Cycle], links: &LinkTable, vars: &EdgePairs) -> Vec<Equation> {
    links
        .entries()
        .iter()
        .enumerate()
        .map(|(id, e)| pair_equation(id, &cycles[e.a], &cycles[e.b], vars, e.lk))
        .collect()
}

pub fn linking_system(equations: &[Equation], num_vars: usize) -> LinearSystem {
    let mut sys = LinearSystem::new(num_vars);
    for e in equations {
        sys.push(e.id, e.terms.iter().map(|&(v, c)| (v, c as i64)).collect(), -e.constant);
    }
    sys
}

fn core_pairs(equations: &[Equation], ids: Vec<usize>) -> Vec<(usize, usize)> {
    let mut pairs: Vec<_> = ids.into_iter().map(|id| equations[id].cycles).collect();
    pairs.sort_unstable();
    pairs
}

pub fn detect_il(cycles: &[Cycle], links: &LinkTable, vars: &EdgePairs) -> IlVerdict {
    let equations = linking_equations(cycles, links, vars);
    match solve_gf2(&linking_system(&equations, vars.len())) {
        Gf2Outcome::Feasible(bits) => IlVerdict {
            kind: IlVerdictKind::NotIl,
            values: Some(bits.into_iter().map(i64::from).collect()),
            core: None,
        },
        Gf2Outcome::Infeasible(ids) => {
            IlVerdict { kind: IlVerdictKind::Il, values: None, core: Some(core_pairs(&equations, ids)) }
        }
    }
}

pub fn detect_zero_linking(cycles: &[Cycle], links: &LinkTable, vars: &EdgePairs) -> IlVerdict {
    let equations = linking_equations(cycles, links, vars);
    let sys = linking_system(&equations, vars.len());
    let values = match solve_gf2(&sys) {
        Gf2Outcome::Infeasible(_) => None,
        Gf2Outcome::Feasible(_) => solve_integer(&sys).and_then(|x| x.iter().map(|v| v.to_i64()).collect()),
    };
    match values {
        Some(values) => IlVerdict { kind: IlVerdictKind::ZeroLinking, values: Some(values), core: None },
        None => {
            let ids = infeasible_core(&sys, Ring::Z).unwrap_or_default();
            IlVerdict { kind: IlVerdictKind::NoZeroLinking, values: None, core: Some(core_pairs(&equations, ids)) }
        }
    }
}

/// Checks that after the certificate's crossing changes every disjoint
/// cycle pair has linking number 0 (mod 2 for a GF(2) certificate).
pub fn verify_linking_certificate(
    g: &Graph,
    cycles: &[Cycle],
    links: &LinkTable,
    cert: &Certificate,
) -> Result<bool, VerifyError> {
    let twists = twist_map(g, cert)?;
    for e in links.entries() {
        let lk = updated_linking(links, &cycles[e.a], &cycles[e.b], &twists)?;
        if !vanishes(lk, cert.ring) {
            return Ok(false);
        }
    }
    Ok(true)
}
