//! Exhaustive maximum-weight independent set search, used as the ground
//! truth for every equivalence check in the crate.

use super::{Graph, WeightedGraph};
use crate::error::GraphError;

pub const BRUTE_FORCE_LIMIT: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct MwisSolution {
    /// Selected vertices in ascending order.
    pub vertices: Vec<usize>,
    pub weight: f64,
}

pub fn is_independent(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Enumerates every independent set and returns a heaviest one.
///
/// Among equally heavy sets the lexicographically smallest characteristic
/// vector `(x_0, x_1, ...)` wins, i.e. the set that leaves low-index
/// vertices out for longest.
pub fn brute_force_mwis(g: &WeightedGraph) -> Result<MwisSolution, GraphError> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(GraphError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.graph().neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut search = Search {
        adj: &adj,
        weights: g.weights(),
        best_mask: 0,
        best_weight: 0.0,
    };
    search.visit(0, 0, 0);
    let vertices = (0..n).filter(|&v| search.best_mask >> v & 1 == 1).collect();
    Ok(MwisSolution {
        vertices,
        weight: search.best_weight,
    })
}

struct Search<'a> {
    adj: &'a [u32],
    weights: &'a [f64],
    best_mask: u32,
    best_weight: f64,
}

impl Search<'_> {
    fn visit(&mut self, v: usize, mask: u32, blocked: u32) {
        if v == self.adj.len() {
            // Weight summed in ascending vertex order so equal sets always
            // compare equal.
            let weight: f64 = (0..v)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.weights[i])
                .sum();
            if weight > self.best_weight
                || (weight == self.best_weight && lex_less(mask, self.best_mask))
            {
                self.best_weight = weight;
                self.best_mask = mask;
            }
            return;
        }
        self.visit(v + 1, mask, blocked);
        if blocked >> v & 1 == 0 {
            self.visit(v + 1, mask | 1 << v, blocked | self.adj[v]);
        }
    }
}

/// Lexicographic order on characteristic vectors stored as bitmasks with
/// `x_i` at bit `i`: the first differing position decides.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    diff != 0 && (b >> diff.trailing_zeros()) & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, FamilySpec};

    fn fig2a() -> WeightedGraph {
        let g = Graph::new(5, [(0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        WeightedGraph::new(g, vec![2.0, 3.0, 8.0, 3.0, 1.0]).unwrap()
    }

    #[test]
    fn worked_example() {
        let sol = brute_force_mwis(&fig2a()).unwrap();
        assert_eq!(sol.vertices, vec![2, 4]);
        assert_eq!(sol.weight, 9.0);
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::new(Graph::edgeless(1).unwrap(), vec![5.0]).unwrap();
        let sol = brute_force_mwis(&g).unwrap();
        assert_eq!(sol.vertices, vec![0]);
        assert_eq!(sol.weight, 5.0);
    }

    #[test]
    fn triangle_picks_heaviest() {
        let g = generate_family(FamilySpec::Complete { n: 3 }).unwrap();
        let g = WeightedGraph::new(g, vec![1.0, 2.0, 3.0]).unwrap();
        let sol = brute_force_mwis(&g).unwrap();
        assert_eq!(sol.vertices, vec![2]);
        assert_eq!(sol.weight, 3.0);
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // K2 with equal weights: (0,1) < (1,0), so vertex 1 is chosen.
        let g = generate_family(FamilySpec::Complete { n: 2 }).unwrap();
        let g = WeightedGraph::new(g, vec![1.0, 1.0]).unwrap();
        assert_eq!(brute_force_mwis(&g).unwrap().vertices, vec![1]);
    }

    #[test]
    fn guard_rejects_large_graphs() {
        let g = Graph::edgeless(27).unwrap();
        let g = WeightedGraph::new(g, vec![1.0; 27]).unwrap();
        assert!(matches!(
            brute_force_mwis(&g),
            Err(GraphError::TooLarge { n: 27, .. })
        ));
    }

    #[test]
    fn lex_order() {
        assert!(lex_less(0b10, 0b01));
        assert!(!lex_less(0b01, 0b10));
        assert!(!lex_less(0b11, 0b11));
    }
}
