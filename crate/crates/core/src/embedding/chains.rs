use serde::{Deserialize, Serialize};

use super::{verify_embedding, Embedding};
use crate::error::EmbeddingError;
use crate::graph::{Graph, WeightedGraph};
use crate::qubo::{repair, BitVector, QuboMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStrength {
    Auto,
    Fixed(f64),
}

/// How broken chains are resolved when reading samples back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BrokenChainRule {
    /// Majority vote per chain (ties read as 0), then [`repair`].
    #[default]
    MajorityThenRepair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainPolicy {
    pub chain_strength: ChainStrength,
    pub broken_chains: BrokenChainRule,
}

impl Default for ChainPolicy {
    fn default() -> Self {
        ChainPolicy {
            chain_strength: ChainStrength::Auto,
            broken_chains: BrokenChainRule::MajorityThenRepair,
        }
    }
}

impl ChainPolicy {
    pub fn with_strength(strength: ChainStrength) -> Self {
        ChainPolicy {
            chain_strength: strength,
            ..ChainPolicy::default()
        }
    }
}

/// Physical QUBO before chain penalties, plus per-qubit load: the sum of the
/// absolute split weights touching each qubit.
struct Split {
    q: QuboMatrix,
    load: Vec<f64>,
}

fn logical_graph_of(q: &QuboMatrix) -> Graph {
    let edges: Vec<_> = q.iter().map(|(k, _)| k).filter(|(i, j)| i != j).collect();
    Graph::new(q.n().max(1), edges).expect("upper-triangular entries form a simple graph")
}

fn split(q: &QuboMatrix, e: &Embedding, gp: &Graph) -> Result<Split, EmbeddingError> {
    if q.n() != e.logical_n() {
        return Err(EmbeddingError::Invalid(format!(
            "QUBO has {} variables, embedding has {} chains",
            q.n(),
            e.logical_n()
        )));
    }
    let report = verify_embedding(&logical_graph_of(q), gp, e);
    if !report.is_valid() {
        return Err(EmbeddingError::Invalid(
            report.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        ));
    }
    let owner = e.owners();
    let mut phys = QuboMatrix::new(gp.n());
    let mut load = vec![0.0; gp.n()];
    for ((i, j), value) in q.iter() {
        if i == j {
            let chain = e.chain(i);
            let share = value / chain.len() as f64;
            for &a in chain {
                phys.add(a, a, share)?;
                load[a] += share.abs();
            }
        } else {
            let couplers: Vec<(usize, usize)> = e
                .chain(i)
                .iter()
                .flat_map(|&a| gp.neighbors(a).iter().map(move |&b| (a, b)))
                .filter(|&(_, b)| owner[b] == Some(j))
                .collect();
            let share = value / couplers.len() as f64;
            for (a, b) in couplers {
                phys.add(a, b, share)?;
                load[a] += share.abs();
                load[b] += share.abs();
            }
        }
    }
    Ok(Split { q: phys, load })
}

/// `2 * max_qubit_load + S`, where `S` is the largest logical coupling
/// magnitude. Any single flip inside an intact chain then costs more than
/// the split weights around the flipped qubit can gain.
pub fn auto_chain_strength(q: &QuboMatrix, e: &Embedding, gp: &Graph) -> Result<f64, EmbeddingError> {
    let s = split(q, e, gp)?;
    Ok(strength_from(q, &s))
}

fn strength_from(q: &QuboMatrix, s: &Split) -> f64 {
    let penalty = q
        .iter()
        .filter(|((i, j), _)| i != j)
        .fold(0.0_f64, |m, (_, v)| m.max(v.abs()));
    let max_load = s.load.iter().copied().fold(0.0, f64::max);
    let m = 2.0 * max_load + penalty;
    if m > 0.0 { m } else { 1.0 }
}

/// Maps a logical QUBO onto the hardware graph.
///
/// Diagonal terms are shared equally by the qubits of the chain; a logical
/// coupling is shared equally by every hardware edge between the two chains.
/// Each edge inside a chain adds `M` to both endpoint diagonals and `-2M` to
/// the coupling, so agreeing bits cost nothing and disagreeing bits cost `M`.
/// Returns the physical matrix and the chain strength used.
pub fn embed_qubo(
    q: &QuboMatrix,
    e: &Embedding,
    gp: &Graph,
    policy: &ChainPolicy,
) -> Result<(QuboMatrix, f64), EmbeddingError> {
    let s = split(q, e, gp)?;
    let m = match policy.chain_strength {
        ChainStrength::Auto => strength_from(q, &s),
        ChainStrength::Fixed(m) if m > 0.0 && m.is_finite() => m,
        ChainStrength::Fixed(m) => return Err(EmbeddingError::ChainStrength(m)),
    };
    let mut phys = s.q;
    let owner = e.owners();
    for chain in e.chains() {
        for &a in chain {
            for &b in gp.neighbors(a) {
                if b > a && owner[b] == owner[a] {
                    phys.add(a, a, m)?;
                    phys.add(b, b, m)?;
                    phys.add(a, b, -2.0 * m)?;
                }
            }
        }
    }
    Ok((phys, m))
}

/// Physical image of a logical assignment: every chain copies its bit and
/// unused qubits are 0.
pub fn lift(x: &BitVector, e: &Embedding) -> BitVector {
    let mut out = BitVector::zeros(e.physical_n());
    for (v, chain) in e.chains().iter().enumerate() {
        if x.get(v) {
            for &q in chain {
                out.set(q, true);
            }
        }
    }
    out
}

/// Majority vote per chain; exact ties read as 0.
pub fn majority_vote(x_phys: &BitVector, e: &Embedding) -> BitVector {
    let mut out = BitVector::zeros(e.logical_n());
    for (v, chain) in e.chains().iter().enumerate() {
        let ones = chain.iter().filter(|&&q| x_phys.get(q)).count();
        out.set(v, 2 * ones > chain.len());
    }
    out
}

/// Reads a physical sample back as a logical independent set.
pub fn unembed(x_phys: &BitVector, e: &Embedding, g: &WeightedGraph, policy: &ChainPolicy) -> BitVector {
    match policy.broken_chains {
        BrokenChainRule::MajorityThenRepair => repair(g, &majority_vote(x_phys, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chimera;
    use crate::qubo::{mwis_to_qubo, Penalty};

    #[test]
    fn single_vertex_two_qubit_chain() {
        let mut q = QuboMatrix::new(1);
        q.add(0, 0, -8.0).unwrap();
        let gp = Graph::new(2, [(0, 1)]).unwrap();
        let e = Embedding::new(vec![vec![0, 1]], 2);
        let (phys, m) = embed_qubo(&q, &e, &gp, &ChainPolicy::with_strength(ChainStrength::Fixed(20.0))).unwrap();
        assert_eq!(m, 20.0);
        assert_eq!(phys.get(0, 0), 16.0);
        assert_eq!(phys.get(1, 1), 16.0);
        assert_eq!(phys.get(0, 1), -40.0);
        let energies: Vec<f64> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|b| phys.energy(&BitVector::from_bits(b)).unwrap())
            .collect();
        assert_eq!(energies, vec![0.0, 16.0, 16.0, -8.0]);
    }

    #[test]
    fn unit_chains_relabel() {
        let g = Graph::new(5, [(0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let wg = WeightedGraph::new(g, vec![2.0, 3.0, 8.0, 3.0, 1.0]).unwrap();
        let q = mwis_to_qubo(&wg, Penalty::Explicit(12.0)).unwrap();
        let map = [0, 1, 4, 2, 7];
        let e = Embedding::new(map.iter().map(|&p| vec![p]).collect(), 8);
        let (phys, _) = embed_qubo(&q, &e, &chimera(1), &ChainPolicy::default()).unwrap();
        assert_eq!(phys.num_entries(), q.num_entries());
        for ((i, j), v) in q.iter() {
            assert_eq!(phys.get(map[i], map[j]), v);
        }
    }

    #[test]
    fn coupling_split_across_all_couplers() {
        // Two 2-qubit chains in one K4,4 block: four couplers between them.
        let mut q = QuboMatrix::new(2);
        q.add(0, 1, 4.0).unwrap();
        let e = Embedding::new(vec![vec![0, 4], vec![1, 5]], 8);
        let (phys, _) = embed_qubo(&q, &e, &chimera(1), &ChainPolicy::default()).unwrap();
        for (a, b) in [(0, 5), (1, 4)] {
            assert_eq!(phys.get(a, b), 2.0);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut q = QuboMatrix::new(2);
        q.add(0, 1, 1.0).unwrap();
        let e = Embedding::new(vec![vec![0], vec![1]], 8); // same side, not adjacent
        assert!(matches!(
            embed_qubo(&q, &e, &chimera(1), &ChainPolicy::default()),
            Err(EmbeddingError::Invalid(_))
        ));
        let e = Embedding::new(vec![vec![0], vec![4]], 8);
        assert!(matches!(
            embed_qubo(&q, &e, &chimera(1), &ChainPolicy::with_strength(ChainStrength::Fixed(0.0))),
            Err(EmbeddingError::ChainStrength(_))
        ));
    }

    #[test]
    fn majority_and_ties() {
        let e = Embedding::new(vec![vec![0, 1, 2], vec![3, 4]], 5);
        let x = BitVector::from_bits(&[1, 1, 0, 1, 0]);
        assert_eq!(majority_vote(&x, &e), BitVector::from_bits(&[1, 0]));
    }

    #[test]
    fn tie_then_repair_re_adds() {
        let g = WeightedGraph::new(Graph::edgeless(1).unwrap(), vec![1.0]).unwrap();
        let e = Embedding::new(vec![vec![0, 1]], 2);
        let x = BitVector::from_bits(&[1, 0]);
        assert_eq!(majority_vote(&x, &e), BitVector::zeros(1));
        assert_eq!(unembed(&x, &e, &g, &ChainPolicy::default()), BitVector::ones(1));
    }

    #[test]
    fn lift_copies_chain_bits() {
        let e = Embedding::new(vec![vec![0, 4], vec![1]], 8);
        let x = BitVector::from_bits(&[1, 0]);
        assert_eq!(lift(&x, &e), BitVector::from_bits(&[1, 0, 0, 0, 1, 0, 0, 0]));
    }
}
