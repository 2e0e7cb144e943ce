use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::GraphError;

/// A named graph family with its integer parameters.
///
/// Vertex labelling per family:
///
/// * `Cycle { n }`: `i` adjacent to `i + 1 mod n`.
/// * `Star { n }`: center is vertex `0`, leaves are `1..=n`, so the graph has
///   `n + 1` vertices and `n` edges (`S_n` counts leaves).
/// * `Complete { n }`: every pair.
/// * `CompleteBipartite { n, m }`: parts `0..n` and `n..n + m`.
/// * `Grid { rows, cols }`: vertex `r * cols + c`, 4-neighbour lattice.
/// * `Hypercube { d }`: vertex bit-strings, adjacent when differing in one bit.
/// * `Petersen`: outer cycle `0..5`, inner pentagram `5..10`, spokes `i - (i + 5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilySpec {
    Cycle { n: usize },
    Star { n: usize },
    Complete { n: usize },
    CompleteBipartite { n: usize, m: usize },
    Grid { rows: usize, cols: usize },
    Hypercube { d: usize },
    Petersen,
}

const MAX_HYPERCUBE_DIM: usize = 20;

impl FamilySpec {
    /// Parses a family name and its positional parameters, e.g.
    /// `("CompleteBipartite", [4, 4])`. Names are matched case-insensitively.
    pub fn from_parts(name: &str, params: &[usize]) -> Result<Self, GraphError> {
        let lower = name.to_ascii_lowercase();
        let family: &'static str = match lower.as_str() {
            "cycle" => "Cycle",
            "star" => "Star",
            "complete" => "Complete",
            "completebipartite" | "complete_bipartite" | "bipartite" => "CompleteBipartite",
            "grid" => "Grid",
            "hypercube" => "Hypercube",
            "petersen" => "Petersen",
            _ => {
                return Err(GraphError::InvalidFamily {
                    family: "unknown",
                    reason: format!("no family named `{name}`"),
                })
            }
        };
        let arity = match family {
            "Petersen" => 0,
            "CompleteBipartite" | "Grid" => 2,
            _ => 1,
        };
        if params.len() != arity {
            return Err(GraphError::InvalidFamily {
                family,
                reason: format!("expected {arity} parameter(s), got {}", params.len()),
            });
        }
        let spec = match family {
            "Cycle" => FamilySpec::Cycle { n: params[0] },
            "Star" => FamilySpec::Star { n: params[0] },
            "Complete" => FamilySpec::Complete { n: params[0] },
            "CompleteBipartite" => FamilySpec::CompleteBipartite {
                n: params[0],
                m: params[1],
            },
            "Grid" => FamilySpec::Grid {
                rows: params[0],
                cols: params[1],
            },
            "Hypercube" => FamilySpec::Hypercube { d: params[0] },
            _ => FamilySpec::Petersen,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Cycle { .. } => "Cycle",
            FamilySpec::Star { .. } => "Star",
            FamilySpec::Complete { .. } => "Complete",
            FamilySpec::CompleteBipartite { .. } => "CompleteBipartite",
            FamilySpec::Grid { .. } => "Grid",
            FamilySpec::Hypercube { .. } => "Hypercube",
            FamilySpec::Petersen => "Petersen",
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |reason: &str| {
            Err(GraphError::InvalidFamily {
                family: self.family_name(),
                reason: reason.to_string(),
            })
        };
        match *self {
            FamilySpec::Cycle { n } if n < 3 => bad("a cycle needs n >= 3"),
            FamilySpec::Star { n } if n < 1 => bad("a star needs at least one leaf"),
            FamilySpec::Complete { n } if n < 1 => bad("a complete graph needs n >= 1"),
            FamilySpec::CompleteBipartite { n, m } if n < 1 || m < 1 => {
                bad("both parts need at least one vertex")
            }
            FamilySpec::Grid { rows, cols } if rows < 1 || cols < 1 => {
                bad("grid dimensions must be >= 1")
            }
            FamilySpec::Hypercube { d } if !(1..=MAX_HYPERCUBE_DIM).contains(&d) => {
                bad("hypercube dimension must be in 1..=20")
            }
            _ => Ok(()),
        }
    }

    /// Every built-in instance with at most `max_order` vertices, in a fixed
    /// order. Symmetric families (complete bipartite, grid) are listed once
    /// per shape with the smaller side first.
    pub fn catalogue(max_order: usize) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        out.extend((3..=max_order).map(|n| FamilySpec::Cycle { n }));
        out.extend((1..max_order).map(|n| FamilySpec::Star { n }));
        out.extend((1..=max_order).map(|n| FamilySpec::Complete { n }));
        for n in 1..=max_order / 2 {
            out.extend((n..=max_order - n).map(|m| FamilySpec::CompleteBipartite { n, m }));
        }
        for rows in 1..=max_order {
            out.extend((rows..=max_order / rows).map(|cols| FamilySpec::Grid { rows, cols }));
        }
        out.extend((1..=MAX_HYPERCUBE_DIM).map(|d| FamilySpec::Hypercube { d }).filter(|s| s.order() <= max_order));
        if max_order >= 10 {
            out.push(FamilySpec::Petersen);
        }
        out
    }

    /// Number of vertices of the generated graph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Cycle { n } | FamilySpec::Complete { n } => n,
            FamilySpec::Star { n } => n + 1,
            FamilySpec::CompleteBipartite { n, m } => n + m,
            FamilySpec::Grid { rows, cols } => rows * cols,
            FamilySpec::Hypercube { d } => 1 << d,
            FamilySpec::Petersen => 10,
        }
    }
}

impl fmt::Display for FamilySpec {
    /// Compact label used in report file names, e.g. `C20`, `K4_4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cycle { n } => write!(f, "C{n}"),
            FamilySpec::Star { n } => write!(f, "S{n}"),
            FamilySpec::Complete { n } => write!(f, "K{n}"),
            FamilySpec::CompleteBipartite { n, m } => write!(f, "K{n}_{m}"),
            FamilySpec::Grid { rows, cols } => write!(f, "Grid{rows}x{cols}"),
            FamilySpec::Hypercube { d } => write!(f, "Q{d}"),
            FamilySpec::Petersen => write!(f, "Petersen"),
        }
    }
}

pub fn generate_family(spec: FamilySpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let n = spec.order();
    let mut edges = Vec::new();
    match spec {
        FamilySpec::Cycle { n } => {
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        }
        FamilySpec::Star { n } => {
            edges.extend((1..=n).map(|leaf| (0, leaf)));
        }
        FamilySpec::Complete { n } => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        FamilySpec::CompleteBipartite { n, m } => {
            for u in 0..n {
                edges.extend((n..n + m).map(|v| (u, v)));
            }
        }
        FamilySpec::Grid { rows, cols } => {
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
        }
        FamilySpec::Hypercube { d } => {
            for v in 0..n {
                for bit in 0..d {
                    let w = v ^ (1 << bit);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
        }
        FamilySpec::Petersen => {
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
                edges.push((i, i + 5));
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_sizes() {
        let all = FamilySpec::catalogue(16);
        assert_eq!(all.len(), 14 + 15 + 16 + 64 + 27 + 4 + 1);
        assert!(all.iter().all(|s| s.order() <= 16 && generate_family(*s).is_ok()));
        assert!(FamilySpec::catalogue(2).iter().all(|s| s.order() <= 2));
    }

    #[test]
    fn cycle_four() {
        let g = generate_family(FamilySpec::Cycle { n: 4 }).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn complete_five_has_ten_edges() {
        let g = generate_family(FamilySpec::Complete { n: 5 }).unwrap();
        assert_eq!(g.num_edges(), 10);
    }

    #[test]
    fn complete_bipartite_four_four() {
        let g = generate_family(FamilySpec::CompleteBipartite { n: 4, m: 4 }).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.num_edges(), 16);
        let colour = g.bipartition().expect("K4,4 is bipartite");
        assert!(g.edges().iter().all(|&(u, v)| colour[u] != colour[v]));
    }

    #[test]
    fn star_counts_leaves() {
        let g = generate_family(FamilySpec::Star { n: 20 }).unwrap();
        assert_eq!(g.n(), 21);
        assert_eq!(g.num_edges(), 20);
        assert_eq!(g.degree(0), 20);
    }

    #[test]
    fn petersen_is_cubic() {
        let g = generate_family(FamilySpec::Petersen).unwrap();
        assert_eq!(g.num_edges(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.bipartition().is_none());
    }

    #[test]
    fn grid_and_hypercube_counts() {
        let g = generate_family(FamilySpec::Grid { rows: 3, cols: 4 }).unwrap();
        assert_eq!(g.num_edges(), 3 * 3 + 2 * 4);
        let q = generate_family(FamilySpec::Hypercube { d: 4 }).unwrap();
        assert_eq!(q.n(), 16);
        assert_eq!(q.num_edges(), 4 * 16 / 2);
    }

    #[test]
    fn invalid_parameters_rejected() {
        let err = generate_family(FamilySpec::Cycle { n: 2 }).unwrap_err();
        assert!(err.to_string().contains("n >= 3"), "{err}");
        assert!(FamilySpec::from_parts("Cycle", &[2]).is_err());
        assert!(FamilySpec::from_parts("Cycle", &[]).is_err());
        assert!(FamilySpec::from_parts("Dodecahedron", &[]).is_err());
        assert!(FamilySpec::from_parts("Hypercube", &[0]).is_err());
        assert_eq!(
            FamilySpec::from_parts("completebipartite", &[4, 4]).unwrap(),
            FamilySpec::CompleteBipartite { n: 4, m: 4 }
        );
    }

    #[test]
    fn closed_form_edge_counts() {
        for n in 3..30 {
            assert_eq!(generate_family(FamilySpec::Cycle { n }).unwrap().num_edges(), n);
            assert_eq!(generate_family(FamilySpec::Star { n }).unwrap().num_edges(), n);
            assert_eq!(
                generate_family(FamilySpec::Complete { n }).unwrap().num_edges(),
                n * (n - 1) / 2
            );
            for m in 1..6 {
                assert_eq!(
                    generate_family(FamilySpec::CompleteBipartite { n, m })
                        .unwrap()
                        .num_edges(),
                    n * m
                );
            }
        }
    }
}
