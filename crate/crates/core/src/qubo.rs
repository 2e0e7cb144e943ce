//! Upper-triangular QUBO objectives and the MWIS reduction.
//!
//! The objective is `f(x) = sum_{i <= j} x_i Q_ij x_j` over binary `x`, with
//! the diagonal counted once. Ising (+/-1 spin) instances are not modelled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, QuboError};
use crate::graph::WeightedGraph;

/// A binary assignment, one bit per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    pub fn zeros(n: usize) -> Self {
        BitVector(vec![0; n])
    }

    pub fn ones(n: usize) -> Self {
        BitVector(vec![1; n])
    }

    /// Builds from 0/1 values; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        BitVector(bits.iter().map(|&b| u8::from(b != 0)).collect())
    }

    /// Vector of length `n` with ones at `vertices`.
    pub fn from_set(n: usize, vertices: &[usize]) -> Self {
        let mut bits = vec![0; n];
        for &v in vertices {
            bits[v] = 1;
        }
        BitVector(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i] == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = u8::from(value);
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] ^= 1;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

/// Sparse upper-triangular QUBO matrix. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), f64>,
}

impl QuboMatrix {
    pub fn new(n: usize) -> Self {
        QuboMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `value` to entry `(i, j)`; `(j, i)` is folded onto the upper
    /// triangle. Entries that cancel to zero are removed.
    pub fn add(&mut self, i: usize, j: usize, value: f64) -> Result<(), QuboError> {
        let (i, j) = (i.min(j), i.max(j));
        if j >= self.n {
            return Err(QuboError::IndexOutOfRange { i, j, n: self.n });
        }
        if !value.is_finite() {
            return Err(QuboError::NonFinite { i, j });
        }
        let slot = self.entries.entry((i, j)).or_insert(0.0);
        *slot += value;
        if *slot == 0.0 {
            self.entries.remove(&(i, j));
        }
        Ok(())
    }

    /// `Q_ij` for `i <= j`; the lower triangle reads as its mirror.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let key = (i.min(j), i.max(j));
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn num_couplings(&self) -> usize {
        self.entries.keys().filter(|(i, j)| i != j).count()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_abs_nonzero(&self) -> Option<f64> {
        self.entries
            .values()
            .map(|v| v.abs())
            .min_by(|a, b| a.total_cmp(b))
    }

    /// `sum_{i <= j} x_i Q_ij x_j`.
    pub fn energy(&self, x: &BitVector) -> Result<f64, QuboError> {
        if x.len() != self.n {
            return Err(QuboError::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .filter(|((i, j), _)| x.get(*i) && x.get(*j))
            .map(|(_, v)| v)
            .sum())
    }

    /// Every entry divided by `divisor`.
    pub fn scaled(&self, divisor: f64) -> QuboMatrix {
        QuboMatrix {
            n: self.n,
            entries: self.entries.iter().map(|(&k, &v)| (k, v / divisor)).collect(),
        }
    }

    /// Coordinate list, one `i j value` line per stored entry.
    pub fn to_coo(&self) -> String {
        let mut out = String::new();
        for ((i, j), v) in &self.entries {
            writeln!(out, "{i} {j} {v}").unwrap();
        }
        out
    }

    /// Parses a coordinate list for an `n`-variable matrix. Blank lines and
    /// lines starting with `#` are skipped. Entries with `i > j` are rejected.
    pub fn from_coo(n: usize, text: &str) -> Result<QuboMatrix, ParseError> {
        let mut q = QuboMatrix::new(n);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ParseError::Line {
                line: lineno + 1,
                message,
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err(format!("expected `i j value`, got `{line}`")));
            }
            let i: usize = parts[0].parse().map_err(|e| err(format!("row index: {e}")))?;
            let j: usize = parts[1].parse().map_err(|e| err(format!("column index: {e}")))?;
            let v: f64 = parts[2].parse().map_err(|e| err(format!("value: {e}")))?;
            if i > j {
                return Err(err(format!("entry ({i}, {j}) is below the diagonal")));
            }
            q.add(i, j, v).map_err(|e| err(e.to_string()))?;
        }
        Ok(q)
    }
}

/// How the coupling penalty `S` is chosen for the MWIS reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Penalty {
    Explicit(f64),
    /// `W + 1` for integer weights, `1.5 W` otherwise.
    Auto,
}

impl Penalty {
    pub fn resolve(self, g: &WeightedGraph) -> f64 {
        match self {
            Penalty::Explicit(s) => s,
            Penalty::Auto => auto_penalty(g.weights()),
        }
    }
}

pub fn auto_penalty(weights: &[f64]) -> f64 {
    let w = weights.iter().copied().fold(f64::MIN, f64::max);
    if weights.iter().all(|x| x.fract() == 0.0) {
        w + 1.0
    } else {
        w * 1.5
    }
}

/// `Q_ii = -w(v_i)`, `Q_ij = S` for every edge `i < j`, zero elsewhere.
pub fn mwis_to_qubo(g: &WeightedGraph, penalty: Penalty) -> Result<QuboMatrix, QuboError> {
    let s = penalty.resolve(g);
    let w_max = g.max_weight();
    if s.is_nan() || s <= w_max {
        return Err(QuboError::PenaltyTooSmall {
            penalty: s,
            max_weight: w_max,
        });
    }
    let mut q = QuboMatrix::new(g.n());
    for (i, &w) in g.weights().iter().enumerate() {
        q.add(i, i, -w)?;
    }
    for &(u, v) in g.graph().edges() {
        q.add(u, v, s)?;
    }
    Ok(q)
}

/// Vertices selected by `x`.
pub fn decode(x: &BitVector) -> Vec<usize> {
    (0..x.len()).filter(|&i| x.get(i)).collect()
}

/// Turns any assignment into an independent set without increasing the
/// MWIS objective energy.
///
/// While some edge has both endpoints selected, the first such edge (in
/// canonical order) loses its lighter endpoint; on equal weights the higher
/// index is dropped. Then unselected vertices with no selected neighbour are
/// added in ascending (weight, index) order.
pub fn repair(g: &WeightedGraph, x: &BitVector) -> BitVector {
    let graph = g.graph();
    let w = g.weights();
    let mut out = x.clone();
    for &(u, v) in graph.edges() {
        if out.get(u) && out.get(v) {
            let drop = if w[u] < w[v] || (w[u] == w[v] && u > v) { u } else { v };
            out.set(drop, false);
        }
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
    for v in order {
        if !out.get(v) && graph.neighbors(v).iter().all(|&u| !out.get(u)) {
            out.set(v, true);
        }
    }
    out
}

/// Divides by the largest absolute entry so every coefficient lies in
/// `[-1, 1]`. Returns the scaled matrix and the divisor.
pub fn scale_to_unit(q: &QuboMatrix) -> Result<(QuboMatrix, f64), QuboError> {
    let scale = q.max_abs();
    if scale == 0.0 {
        return Err(QuboError::AllZero);
    }
    Ok((q.scaled(scale), scale))
}
