//! JSON instance format.
//!
//! ```json
//! {
//!   "n": 5,
//!   "edges": [[0, 2], [1, 2], [2, 3], [3, 4]],
//!   "weights": [2.0, 3.0, 8.0, 3.0, 1.0],
//!   "weight_assignments": [[...], [...]]
//! }
//! ```
//!
//! `weight_assignments` is optional and carries the `m` weight vectors of a
//! dynamically weighted instance. Every vector must have `n` positive entries.

use serde::{Deserialize, Serialize};

use super::{validate_weights, Graph, WeightedGraph};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_assignments: Option<Vec<Vec<f64>>>,
}

pub type WeightAssignments = Vec<Vec<f64>>;

/// Parses an instance and returns the graph with its `weights` field.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    parse_instance(text).map(|(g, _)| g)
}

/// Parses an instance, returning the weighted graph and any extra weight
/// assignments, each validated against the graph order.
pub fn parse_instance(text: &str) -> Result<(WeightedGraph, Option<WeightAssignments>), ParseError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let graph = Graph::new(file.n, file.edges.iter().map(|e| (e[0], e[1]))).map_err(|source| {
        let field = match source {
            crate::error::GraphError::Empty => "n".to_string(),
            _ => locate_edge_error(&file.edges, file.n),
        };
        ParseError::Invalid { field, source }
    })?;
    let weighted = WeightedGraph::new(graph, file.weights).map_err(|source| ParseError::Invalid {
        field: weight_field("weights", &source),
        source,
    })?;
    if let Some(assignments) = &file.weight_assignments {
        if assignments.is_empty() {
            return Err(ParseError::Field {
                field: "weight_assignments".into(),
                message: "must contain at least one weight vector".into(),
            });
        }
        for (i, w) in assignments.iter().enumerate() {
            validate_weights(file.n, w).map_err(|source| ParseError::Invalid {
                field: weight_field(&format!("weight_assignments[{i}]"), &source),
                source,
            })?;
        }
    }
    Ok((weighted, file.weight_assignments))
}

pub fn to_instance_json(g: &WeightedGraph, assignments: Option<&[Vec<f64>]>) -> String {
    let file = InstanceFile {
        n: g.n(),
        edges: g.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
        weights: g.weights().to_vec(),
        weight_assignments: assignments.map(<[_]>::to_vec),
    };
    serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
}

fn weight_field(prefix: &str, err: &crate::error::GraphError) -> String {
    match err {
        crate::error::GraphError::NonPositiveWeight { vertex, .. } => format!("{prefix}[{vertex}]"),
        _ => prefix.to_string(),
    }
}

fn locate_edge_error(edges: &[[usize; 2]], n: usize) -> String {
    let mut seen = std::collections::HashSet::new();
    for (i, &[u, v]) in edges.iter().enumerate() {
        if u >= n || v >= n || u == v || !seen.insert((u.min(v), u.max(v))) {
            return format!("edges[{i}]");
        }
    }
    "edges".to_string()
}
