//! Minor embeddings of logical graphs into hardware graphs.
//!
//! An embedding maps each logical vertex to a chain of physical qubits. It is
//! valid when the chains are pairwise disjoint, each chain is connected in
//! the physical graph, and every logical edge is realised by at least one
//! physical edge between the two chains.

mod chains;
mod clique;
mod heuristic;

pub use chains::{auto_chain_strength, embed_qubo, lift, majority_vote, unembed, BrokenChainRule, ChainPolicy, ChainStrength};
pub use clique::clique_embedding;
pub use heuristic::{heuristic_embed, EmbedOptions, HeuristicEmbedding};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    chains: Vec<Vec<usize>>,
    physical_n: usize,
}

impl Embedding {
    /// Chains are sorted and deduplicated; no validity check is made here.
    pub fn new(mut chains: Vec<Vec<usize>>, physical_n: usize) -> Self {
        for c in &mut chains {
            c.sort_unstable();
            c.dedup();
        }
        Embedding { chains, physical_n }
    }

    pub fn logical_n(&self) -> usize {
        self.chains.len()
    }

    pub fn physical_n(&self) -> usize {
        self.physical_n
    }

    pub fn chain(&self, v: usize) -> &[usize] {
        &self.chains[v]
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    /// Total physical qubits used.
    pub fn num_qubits(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    pub fn max_chain_len(&self) -> usize {
        self.chains.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Owning logical vertex of every physical qubit, `None` if unused.
    /// Assumes disjoint chains; with overlaps the last owner wins.
    pub fn owners(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.physical_n];
        for (v, chain) in self.chains.iter().enumerate() {
            for &q in chain {
                if q < self.physical_n {
                    owner[q] = Some(v);
                }
            }
        }
        owner
    }

    pub fn to_json(&self, chimera_k: Option<usize>) -> String {
        let file = EmbeddingFile {
            chimera_k,
            physical_n: Some(self.physical_n),
            chains: self.chains.iter().cloned().enumerate().collect(),
        };
        serde_json::to_string_pretty(&file).expect("embedding serialization cannot fail")
    }

    /// Parses `{"chains": {"0": [...], ...}}`. Keys must be exactly
    /// `0..n`. The physical order is taken from `physical_n`, else
    /// `8 k^2` from `chimera_k`, else one past the largest qubit id.
    pub fn from_json(text: &str) -> Result<(Embedding, Option<usize>), ParseError> {
        let file: EmbeddingFile = serde_json::from_str(text)?;
        let n = file.chains.len();
        for (expected, &key) in file.chains.keys().enumerate() {
            if key != expected {
                return Err(ParseError::Field {
                    field: "chains".into(),
                    message: format!("logical vertices must be 0..{n}; missing {expected}"),
                });
            }
        }
        let max_q = file.chains.values().flatten().copied().max();
        let physical_n = file
            .physical_n
            .or(file.chimera_k.map(|k| 8 * k * k))
            .unwrap_or_else(|| max_q.map_or(0, |q| q + 1));
        let chains: Vec<Vec<usize>> = file.chains.into_values().collect();
        Ok((Embedding::new(chains, physical_n), file.chimera_k))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct EmbeddingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chimera_k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    physical_n: Option<usize>,
    chains: BTreeMap<usize, Vec<usize>>,
}

/// The three minor-embedding conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    Disjoint,
    Connected,
    EdgeCoverage,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::Disjoint, Condition::Connected, Condition::EdgeCoverage];

    pub fn number(self) -> usize {
        match self {
            Condition::Disjoint => 1,
            Condition::Connected => 2,
            Condition::EdgeCoverage => 3,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::Disjoint => "chains are pairwise disjoint",
            Condition::Connected => "every chain is nonempty and connected",
            Condition::EdgeCoverage => "every logical edge has a physical coupler between its chains",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Logical vertex counts disagree between the graph and the embedding.
    LogicalCount { graph: usize, embedding: usize },
    QubitOutOfRange { vertex: usize, qubit: usize },
    SharedQubit { qubit: usize, first: usize, second: usize },
    EmptyChain { vertex: usize },
    DisconnectedChain { vertex: usize },
    UncoveredEdge { u: usize, v: usize },
}

impl Violation {
    pub fn condition(&self) -> Option<Condition> {
        match self {
            Violation::LogicalCount { .. } | Violation::QubitOutOfRange { .. } => None,
            Violation::SharedQubit { .. } => Some(Condition::Disjoint),
            Violation::EmptyChain { .. } | Violation::DisconnectedChain { .. } => Some(Condition::Connected),
            Violation::UncoveredEdge { .. } => Some(Condition::EdgeCoverage),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::LogicalCount { graph, embedding } => {
                write!(f, "graph has {graph} vertices but embedding has {embedding} chains")
            }
            Violation::QubitOutOfRange { vertex, qubit } => {
                write!(f, "chain of v{vertex} uses qubit {qubit} outside the hardware graph")
            }
            Violation::SharedQubit { qubit, first, second } => {
                write!(f, "qubit {qubit} is shared by v{first} and v{second}")
            }
            Violation::EmptyChain { vertex } => write!(f, "chain of v{vertex} is empty"),
            Violation::DisconnectedChain { vertex } => write!(f, "chain of v{vertex} is disconnected"),
            Violation::UncoveredEdge { u, v } => {
                write!(f, "logical edge (v{u}, v{v}) has no coupler between its chains")
            }
        }
    }
}

/// Outcome of [`verify_embedding`]; valid when no violations were found.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EmbeddingReport {
    pub violations: Vec<Violation>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether `c` holds. Structural problems (wrong chain count, qubits out
    /// of range) fail every condition.
    pub fn holds(&self, c: Condition) -> bool {
        self.violations
            .iter()
            .all(|v| v.condition().is_some_and(|vc| vc != c))
    }

    pub fn violations_of(&self, c: Condition) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.condition() == Some(c))
    }
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.violations.iter().filter(|v| v.condition().is_none()) {
            writeln!(f, "error: {v}")?;
        }
        for c in Condition::ALL {
            let status = if self.holds(c) { "PASS" } else { "FAIL" };
            writeln!(f, "condition {} ({}): {status}", c.number(), c.describe())?;
            for v in self.violations_of(c) {
                writeln!(f, "  - {v}")?;
            }
        }
        Ok(())
    }
}

pub fn verify_embedding(gl: &Graph, gp: &Graph, e: &Embedding) -> EmbeddingReport {
    let mut violations = Vec::new();
    if gl.n() != e.logical_n() {
        violations.push(Violation::LogicalCount {
            graph: gl.n(),
            embedding: e.logical_n(),
        });
        return EmbeddingReport { violations };
    }
    let mut owner: Vec<Option<usize>> = vec![None; gp.n()];
    let mut in_range = true;
    for (v, chain) in e.chains().iter().enumerate() {
        for &q in chain {
            if q >= gp.n() {
                violations.push(Violation::QubitOutOfRange { vertex: v, qubit: q });
                in_range = false;
                continue;
            }
            match owner[q] {
                Some(first) => violations.push(Violation::SharedQubit {
                    qubit: q,
                    first,
                    second: v,
                }),
                None => owner[q] = Some(v),
            }
        }
    }
    if !in_range {
        return EmbeddingReport { violations };
    }
    for (v, chain) in e.chains().iter().enumerate() {
        if chain.is_empty() {
            violations.push(Violation::EmptyChain { vertex: v });
        } else if !gp.is_connected_subset(chain) {
            violations.push(Violation::DisconnectedChain { vertex: v });
        }
    }
    for &(u, v) in gl.edges() {
        let covered = e
            .chain(u)
            .iter()
            .any(|&a| e.chain(v).iter().any(|&b| gp.has_edge(a, b)));
        if !covered {
            violations.push(Violation::UncoveredEdge { u, v });
        }
    }
    EmbeddingReport { violations }
}
