//! Crossing-change certificates and their JSON form.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::LinkTable;
use crate::graph::{Cycle, EdgePairs, Graph};
use crate::linsys::Ring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("certificate has {got} entries but the graph has {expected} nonadjacent edge pairs")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entry for edges {0} and {1} is not a pair of nonadjacent edges of the graph")]
    BadPair(usize, usize),
    #[error("duplicate entry for edges {0} and {1}")]
    DuplicatePair(usize, usize),
    #[error("certificate was issued for graph {expected}, not {got}")]
    GraphMismatch { expected: String, got: String },
    #[error("disjoint cycle pair ({0}, {1}) is missing from the link table")]
    MissingLink(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMode {
    Ik,
    Il,
    ZeroLinking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertEntry {
    pub edge_pair: [usize; 2],
    pub twists: i64,
}

/// Net crossing changes per nonadjacent edge pair. A `+1` twist between
/// edges `k < l`, both oriented from lower to higher endpoint, turns a
/// left-handed crossing into a right-handed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub mode: CertificateMode,
    pub ring: Ring,
    /// `"all"` or `"chordless"`; set for knottedness certificates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quads: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_witness: Option<bool>,
    pub graph_hash: String,
    pub entries: Vec<CertEntry>,
}

impl Certificate {
    /// One entry per variable of `vars`, in variable order.
    pub fn from_values(mode: CertificateMode, ring: Ring, g: &Graph, vars: &EdgePairs, values: &[i64]) -> Self {
        assert_eq!(values.len(), vars.len());
        Certificate {
            mode,
            ring,
            quads: None,
            strict_witness: None,
            graph_hash: g.fingerprint(),
            entries: vars
                .pairs()
                .iter()
                .zip(values)
                .map(|(&(k, l), &twists)| CertEntry { edge_pair: [k, l], twists })
                .collect(),
        }
    }

    pub fn twists(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().map(|e| e.twists)
    }

    pub fn is_zero(&self) -> bool {
        self.twists().all(|t| t == 0)
    }
}

/// Checks that `cert` addresses exactly the nonadjacent edge pairs of `g`
/// and returns its values keyed by `(smaller edge, larger edge)`.
pub(crate) fn twist_map(g: &Graph, cert: &Certificate) -> Result<HashMap<(usize, usize), i64>, VerifyError> {
    let fp = g.fingerprint();
    if cert.graph_hash != fp {
        return Err(VerifyError::GraphMismatch { expected: cert.graph_hash.clone(), got: fp });
    }
    let m = g.edge_count();
    let mut expected = 0;
    for k in 0..m {
        for l in k + 1..m {
            if !g.edges_adjacent(k, l) {
                expected += 1;
            }
        }
    }
    if cert.entries.len() != expected {
        return Err(VerifyError::DimensionMismatch { expected, got: cert.entries.len() });
    }
    let mut seen = HashSet::new();
    let mut map = HashMap::new();
    for e in &cert.entries {
        let [k, l] = e.edge_pair;
        if k >= m || l >= m || k == l || g.edges_adjacent(k, l) {
            return Err(VerifyError::BadPair(k, l));
        }
        let key = (k.min(l), k.max(l));
        if !seen.insert(key) {
            return Err(VerifyError::DuplicatePair(k, l));
        }
        map.insert(key, e.twists);
    }
    Ok(map)
}

/// `lk(a, b)` after applying the twists, recomputed from the cycles'
/// traversal orientations.
pub(crate) fn updated_linking(
    links: &LinkTable,
    a: &Cycle,
    b: &Cycle,
    twists: &HashMap<(usize, usize), i64>,
) -> Result<i64, VerifyError> {
    let mut lk = links.get(a.id, b.id).ok_or(VerifyError::MissingLink(a.id, b.id))?;
    for &(k, ek) in &a.edge_signs {
        for &(l, el) in &b.edge_signs {
            let x = twists.get(&(k.min(l), k.max(l))).copied().unwrap_or(0);
            lk += (ek * el) as i64 * x;
        }
    }
    Ok(lk)
}

pub(crate) fn vanishes(lk: i64, ring: Ring) -> bool {
    match ring {
        Ring::Z => lk == 0,
        Ring::Z2 => lk.rem_euclid(2) == 0,
    }
}
