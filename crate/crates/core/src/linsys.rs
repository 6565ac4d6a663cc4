//! Exact linear systems over GF(2), the rationals and the integers.
//!
//! Every equation has the form `Σ c_v · x_v = rhs` with small integer
//! coefficients. GF(2) elimination runs on bit-packed rows and tracks which
//! input rows were combined into each basis row, so an inconsistent system
//! yields an infeasible subset of its rows (a core) for free.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Z2,
    Z,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z2 => "z2",
            Ring::Z => "z",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinsysError {
    #[error("system is feasible; it has no infeasible core")]
    Feasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    /// Caller-chosen identifier (an equation id).
    pub id: usize,
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, rows: Vec::new() }
    }

    pub fn push(&mut self, id: usize, terms: Vec<(usize, i64)>, rhs: i64) {
        debug_assert!(terms.iter().all(|&(v, _)| v < self.num_vars));
        self.rows.push(Row { id, terms, rhs });
    }

    /// The subsystem made of the rows whose ids are in `ids`.
    pub fn restrict(&self, ids: &[usize]) -> LinearSystem {
        LinearSystem {
            num_vars: self.num_vars,
            rows: self.rows.iter().filter(|r| ids.contains(&r.id)).cloned().collect(),
        }
    }

    /// True iff `x` satisfies every row exactly.
    pub fn satisfied_by_int(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: BigInt = r.terms.iter().map(|&(v, c)| &x[v] * BigInt::from(c)).sum();
            lhs == BigInt::from(r.rhs)
        })
    }

    pub fn satisfied_by_rational(&self, x: &[BigRational]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: BigRational = r.terms.iter().map(|&(v, c)| &x[v] * BigRational::from_integer(c.into())).sum();
            lhs == BigRational::from_integer(r.rhs.into())
        })
    }

    /// True iff the bit vector `x` satisfies every row modulo 2.
    pub fn satisfied_by_bits(&self, x: &[u8]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: i64 = r.terms.iter().map(|&(v, c)| c * x[v] as i64).sum();
            (lhs - r.rhs).rem_euclid(2) == 0
        })
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.num_vars)?;
        for r in &self.rows {
            write!(f, "[{}]", r.id)?;
            if r.terms.is_empty() {
                write!(f, " 0")?;
            }
            for (i, &(v, c)) in r.terms.iter().enumerate() {
                let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
                let mag = c.abs();
                if mag == 1 {
                    write!(f, " {sign}x{v}")?;
                } else {
                    write!(f, " {sign}{mag}x{v}")?;
                }
            }
            writeln!(f, " = {}", r.rhs)?;
        }
        Ok(())
    }
}

struct BasisRow {
    bits: BitSet,
    rhs: bool,
    pivot: usize,
    origin: BitSet,
}

/// Incremental GF(2) row echelon form.
///
/// Each basis row's pivot is its lowest set column. `origin` records, as a
/// GF(2) combination, which pushed rows (by slot) make up a basis row.
pub struct Gf2Basis {
    num_vars: usize,
    slots: usize,
    rows: Vec<BasisRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Gf2Basis {
    /// `slots` bounds the slot numbers accepted by [`Gf2Basis::push`].
    pub fn new(num_vars: usize, slots: usize) -> Self {
        Gf2Basis { num_vars, slots, rows: Vec::new(), pivot_row: vec![None; num_vars] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn reduce(&self, bits: &mut BitSet, rhs: &mut bool, origin: &mut BitSet) {
        while let Some(c) = bits.first() {
            match self.pivot_row[c] {
                Some(r) => {
                    let row = &self.rows[r];
                    bits.xor_with(&row.bits);
                    *rhs ^= row.rhs;
                    origin.xor_with(&row.origin);
                }
                None => return,
            }
        }
    }

    /// Reduces `(bits, rhs)` against the basis. Returns `None` if the row
    /// lies in the span with a matching constant, `Some(true)` if it is
    /// contradicted by the basis, and `Some(false)` if it is independent.
    pub fn test(&self, bits: &BitSet, rhs: bool) -> Option<bool> {
        let mut b = bits.clone();
        let mut r = rhs;
        while let Some(c) = b.first() {
            match self.pivot_row[c] {
                Some(i) => {
                    b.xor_with(&self.rows[i].bits);
                    r ^= self.rows[i].rhs;
                }
                None => return Some(false),
            }
        }
        if r {
            Some(true)
        } else {
            None
        }
    }

    /// Adds a row. On inconsistency returns the slots whose rows sum to
    /// `0 = 1`, and leaves the basis unchanged.
    pub fn push(&mut self, slot: usize, mut bits: BitSet, mut rhs: bool) -> Result<(), BitSet> {
        let mut origin = BitSet::new(self.slots);
        origin.insert(slot);
        self.reduce(&mut bits, &mut rhs, &mut origin);
        match bits.first() {
            Some(pivot) => {
                self.pivot_row[pivot] = Some(self.rows.len());
                self.rows.push(BasisRow { bits, rhs, pivot, origin });
                Ok(())
            }
            None if rhs => Err(origin),
            None => Ok(()),
        }
    }

    /// Drops basis rows added after the basis had `rank` rows.
    pub fn truncate(&mut self, rank: usize) {
        while self.rows.len() > rank {
            let r = self.rows.pop().unwrap();
            self.pivot_row[r.pivot] = None;
        }
    }

    /// A solution with every free variable set to 0.
    pub fn solution(&self) -> Vec<u8> {
        let mut x = vec![0u8; self.num_vars];
        let mut order: Vec<&BasisRow> = self.rows.iter().collect();
        order.sort_by(|a, b| b.pivot.cmp(&a.pivot));
        for row in order {
            let mut v = row.rhs as u8;
            for c in row.bits.iter().skip(1) {
                v ^= x[c];
            }
            x[row.pivot] = v;
        }
        x
    }
}

/// Bit-packed GF(2) form of a row: `(coefficient bits, rhs bit)`.
pub fn gf2_row(num_vars: usize, terms: &[(usize, i64)], rhs: i64) -> (BitSet, bool) {
    let mut bits = BitSet::new(num_vars);
    for &(v, c) in terms {
        if c.rem_euclid(2) == 1 {
            bits.toggle(v);
        }
    }
    (bits, rhs.rem_euclid(2) == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gf2Outcome {
    Feasible(Vec<u8>),
    /// Ids of rows that are jointly inconsistent.
    Infeasible(Vec<usize>),
}

/// Gaussian elimination over GF(2); free variables are set to 0.
pub fn solve_gf2(sys: &LinearSystem) -> Gf2Outcome {
    let mut basis = Gf2Basis::new(sys.num_vars, sys.rows.len());
    for (slot, row) in sys.rows.iter().enumerate() {
        let (bits, rhs) = gf2_row(sys.num_vars, &row.terms, row.rhs);
        if let Err(origin) = basis.push(slot, bits, rhs) {
            return Gf2Outcome::Infeasible(origin.iter().map(|s| sys.rows[s].id).collect());
        }
    }
    Gf2Outcome::Feasible(basis.solution())
}

struct RationalElimination {
    /// Reduced rows: dense coefficients followed by the constant.
    basis: Vec<(usize, Vec<BigRational>)>,
    /// Slots of the input rows that became basis rows, in basis order.
    independent: Vec<usize>,
    /// On inconsistency, a superset-closed set of slots deriving `0 = c ≠ 0`.
    conflict: Option<BitSet>,
}

fn eliminate_rational(sys: &LinearSystem) -> RationalElimination {
    let n = sys.num_vars;
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut origins: Vec<BitSet> = Vec::new();
    let mut independent = Vec::new();
    for (slot, row) in sys.rows.iter().enumerate() {
        let mut dense = vec![BigRational::zero(); n + 1];
        for &(v, c) in &row.terms {
            dense[v] += BigRational::from_integer(c.into());
        }
        dense[n] = BigRational::from_integer(row.rhs.into());
        let mut origin = BitSet::new(sys.rows.len());
        origin.insert(slot);
        for ((pivot, brow), borigin) in basis.iter().zip(&origins) {
            if dense[*pivot].is_zero() {
                continue;
            }
            let f = dense[*pivot].clone();
            for (d, b) in dense.iter_mut().zip(brow) {
                if !b.is_zero() {
                    *d -= &f * b;
                }
            }
            origin.union_with(borigin);
        }
        match dense[..n].iter().position(|c| !c.is_zero()) {
            Some(p) => {
                let inv = dense[p].recip();
                for d in dense.iter_mut() {
                    *d *= &inv;
                }
                // keep the basis fully reduced
                for ((_, brow), borigin) in basis.iter_mut().zip(origins.iter_mut()) {
                    if brow[p].is_zero() {
                        continue;
                    }
                    let f = brow[p].clone();
                    for (b, d) in brow.iter_mut().zip(&dense) {
                        if !d.is_zero() {
                            *b -= &f * d;
                        }
                    }
                    borigin.union_with(&origin);
                }
                basis.push((p, dense));
                origins.push(origin);
                independent.push(slot);
            }
            None if !dense[n].is_zero() => {
                return RationalElimination { basis, independent, conflict: Some(origin) };
            }
            None => {}
        }
    }
    RationalElimination { basis, independent, conflict: None }
}

/// Exact rational solution with free variables set to 0.
pub fn solve_rational(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    let el = eliminate_rational(sys);
    if el.conflict.is_some() {
        return None;
    }
    let n = sys.num_vars;
    let mut x = vec![BigRational::zero(); n];
    for (p, row) in &el.basis {
        x[*p] = row[n].clone();
    }
    Some(x)
}

/// Decides integer solvability exactly and returns an integer solution.
///
/// A maximal rationally independent subset of rows is kept (the remaining
/// rows are rational combinations of it, so any solution of the subset
/// solves them too). Unimodular column operations bring that `r × n` matrix
/// to lower-triangular form `A U = [L 0]`; then `A x = b` has an integer
/// solution iff forward substitution in `L y = b` stays integral, and
/// `x = U y`.
pub fn solve_integer(sys: &LinearSystem) -> Option<Vec<BigInt>> {
    let el = eliminate_rational(sys);
    if el.conflict.is_some() {
        return None;
    }
    let n = sys.num_vars;
    let r = el.independent.len();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    let mut b: Vec<BigInt> = Vec::with_capacity(r);
    for &slot in &el.independent {
        let row = &sys.rows[slot];
        let mut dense = vec![BigInt::zero(); n];
        for &(v, c) in &row.terms {
            dense[v] += c;
        }
        a.push(dense);
        b.push(row.rhs.into());
    }
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    // column operation on columns (i, j): [ci cj] <- [ci cj] * [[s, -q], [t, p]]
    let col_op = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize, s: &BigInt, t: &BigInt, q: &BigInt, p: &BigInt| {
        for row in m.iter_mut() {
            let (x, y) = (row[i].clone(), row[j].clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            row[i] = s * &x + t * &y;
            row[j] = p * &y - q * &x;
        }
    };

    for i in 0..r {
        for j in i + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let (x, y) = (a[i][i].clone(), a[i][j].clone());
            let eg = x.extended_gcd(&y);
            let g = eg.gcd;
            // s*x + t*y = g; the 2x2 matrix [[s, -y/g], [t, x/g]] has determinant 1
            let q = &y / &g;
            let p = &x / &g;
            col_op(&mut a, i, j, &eg.x, &eg.y, &q, &p);
            col_op(&mut u, i, j, &eg.x, &eg.y, &q, &p);
        }
        debug_assert!(!a[i][i].is_zero(), "independent rows keep a nonzero pivot");
        if a[i][i].is_negative() {
            for row in a.iter_mut().chain(u.iter_mut()) {
                row[i] = -row[i].clone();
            }
        }
    }

    let mut y = vec![BigInt::zero(); n];
    for i in 0..r {
        let mut acc = b[i].clone();
        for j in 0..i {
            acc -= &a[i][j] * &y[j];
        }
        let (quot, rem) = acc.div_rem(&a[i][i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = quot;
    }
    let x = (0..n)
        .map(|row| (0..r).map(|k| &u[row][k] * &y[k]).sum())
        .collect();
    Some(x)
}

/// Accepts the rational solution (free variables 0) only when it happens to
/// be integral. Weaker than [`solve_integer`]; kept for comparison runs.
pub fn solve_integer_via_rational(sys: &LinearSystem) -> Option<Vec<BigInt>> {
    let x = solve_rational(sys)?;
    x.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
}

/// Ids of an infeasible subsystem of an infeasible `sys`.
///
/// Over GF(2) the core is the set of rows combined into the contradiction
/// found by elimination; since all but one of them are independent, every
/// proper subset is feasible. Over the integers the GF(2) core, else the
/// rational-elimination conflict, else the whole system (when the
/// obstruction is divisibility) is shrunk by deletion until every row is
/// needed.
pub fn infeasible_core(sys: &LinearSystem, ring: Ring) -> Result<Vec<usize>, LinsysError> {
    match ring {
        Ring::Z2 => match solve_gf2(sys) {
            Gf2Outcome::Infeasible(core) => Ok(core),
            Gf2Outcome::Feasible(_) => Err(LinsysError::Feasible),
        },
        Ring::Z => {
            // a contradiction mod 2 is one over the integers too
            let mut core: Vec<usize> = match solve_gf2(sys) {
                Gf2Outcome::Infeasible(core) => core,
                Gf2Outcome::Feasible(_) => match eliminate_rational(sys).conflict {
                    Some(origin) => origin.iter().map(|s| sys.rows[s].id).collect(),
                    None if solve_integer(sys).is_none() => sys.rows.iter().map(|r| r.id).collect(),
                    None => return Err(LinsysError::Feasible),
                },
            };
            let mut i = 0;
            while i < core.len() {
                let mut trial = core.clone();
                trial.remove(i);
                if solve_integer(&sys.restrict(&trial)).is_none() {
                    core = trial;
                } else {
                    i += 1;
                }
            }
            Ok(core)
        }
    }
}
