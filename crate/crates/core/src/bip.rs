//! Exact classical baseline: the binary integer program
//! `max sum w_i x_i  s.t.  x_i + x_j <= 1 for every edge`, solved by
//! depth-first branch and bound.
//!
//! The constraint structure depends only on the graph, so it is built once
//! and reused for every weight assignment.

use std::time::{Duration, Instant};

use crate::error::GraphError;
use crate::graph::{validate_weights, Graph};

/// Weight-independent part of the program: one `x_i + x_j <= 1` row per
/// edge, adjacency bitsets, and the branching order.
#[derive(Debug, Clone)]
pub struct ConstraintSet {
    n: usize,
    constraints: Vec<(usize, usize)>,
    adj: Vec<Vec<u64>>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl ConstraintSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[(usize, usize)] {
        &self.constraints
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Branching order: descending degree, then ascending index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Whether `x` satisfies every constraint.
    pub fn is_feasible(&self, vertices: &[usize]) -> bool {
        let set = to_bits(self.n, vertices);
        self.constraints.iter().all(|&(u, v)| !(has(&set, u) && has(&set, v)))
    }
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn has(bits: &[u64], v: usize) -> bool {
    bits[v / 64] >> (v % 64) & 1 == 1
}

fn insert(bits: &mut [u64], v: usize) {
    bits[v / 64] |= 1 << (v % 64);
}

fn to_bits(n: usize, vertices: &[usize]) -> Vec<u64> {
    let mut bits = vec![0; words(n)];
    for &v in vertices {
        insert(&mut bits, v);
    }
    bits
}

pub fn build_constraints(g: &Graph) -> ConstraintSet {
    let n = g.n();
    let adj = (0..n).map(|v| to_bits(n, g.neighbors(v))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    ConstraintSet {
        n,
        constraints: g.edges().to_vec(),
        adj,
        order,
        position,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BipSolution {
    /// Selected vertices in ascending order.
    pub vertices: Vec<usize>,
    /// Total weight, summed in ascending vertex order.
    pub value: f64,
    pub wall_time: Duration,
}

struct Search<'a> {
    cs: &'a ConstraintSet,
    w: &'a [f64],
    chosen: Vec<usize>,
    best: f64,
    best_set: Vec<usize>,
}

impl Search<'_> {
    /// `remaining` is the weight of undecided, unblocked vertices at
    /// positions `>= pos`.
    fn visit(&mut self, pos: usize, current: f64, remaining: f64, blocked: &[u64]) {
        if current + remaining <= self.best {
            return;
        }
        let Some(&v) = self.cs.order.get(pos) else {
            self.best = current;
            self.best_set.clone_from(&self.chosen);
            return;
        };
        if has(blocked, v) {
            self.visit(pos + 1, current, remaining, blocked);
            return;
        }
        let rest = remaining - self.w[v];
        let mut next = blocked.to_vec();
        let mut lost = 0.0;
        for (i, word) in self.cs.adj[v].iter().enumerate() {
            let fresh = word & !blocked[i];
            let mut bits = fresh;
            while bits != 0 {
                let u = i * 64 + bits.trailing_zeros() as usize;
                if self.cs.position[u] > pos {
                    lost += self.w[u];
                }
                bits &= bits - 1;
            }
            next[i] |= fresh;
        }
        self.chosen.push(v);
        self.visit(pos + 1, current + self.w[v], rest - lost, &next);
        self.chosen.pop();
        self.visit(pos + 1, current, rest, blocked);
    }
}

/// Exact maximum-weight independent set for weights `w` against a prebuilt
/// constraint set. The bound at each node is the current weight plus every
/// still-selectable vertex's weight.
pub fn solve_bip(cs: &ConstraintSet, w: &[f64]) -> Result<BipSolution, GraphError> {
    validate_weights(cs.n, w)?;
    let start = Instant::now();
    let total: f64 = w.iter().sum();
    let mut search = Search {
        cs,
        w,
        chosen: Vec::new(),
        best: f64::NEG_INFINITY,
        best_set: Vec::new(),
    };
    search.visit(0, 0.0, total, &vec![0; words(cs.n)]);
    let mut vertices = search.best_set;
    vertices.sort_unstable();
    let value = vertices.iter().map(|&v| w[v]).sum();
    Ok(BipSolution {
        vertices,
        value,
        wall_time: start.elapsed(),
    })
}
