use super::Graph;

/// Position of a qubit in a `k x k` Chimera grid.
///
/// Each block is a `K_{4,4}` with two sides of four qubits. Side `0` qubits
/// couple to the same unit in the vertically adjacent blocks, side `1`
/// qubits to the horizontally adjacent ones. The linear index is
/// `8 * (k * row + col) + 4 * side + unit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChimeraCoord {
    pub row: usize,
    pub col: usize,
    pub side: usize,
    pub unit: usize,
}

impl ChimeraCoord {
    pub fn index(&self, k: usize) -> usize {
        8 * (k * self.row + self.col) + 4 * self.side + self.unit
    }

    pub fn from_index(index: usize, k: usize) -> Self {
        let block = index / 8;
        ChimeraCoord {
            row: block / k,
            col: block % k,
            side: (index % 8) / 4,
            unit: index % 4,
        }
    }
}

/// The Chimera graph with a `k x k` grid of `K_{4,4}` blocks (`8k^2` qubits).
///
/// # Panics
/// If `k == 0`.
pub fn chimera(k: usize) -> Graph {
    assert!(k >= 1, "chimera grid size must be at least 1");
    let at = |row, col, side, unit| ChimeraCoord { row, col, side, unit }.index(k);
    let mut edges = Vec::with_capacity(16 * k * k + 8 * k * (k - 1));
    for row in 0..k {
        for col in 0..k {
            for a in 0..4 {
                for b in 0..4 {
                    edges.push((at(row, col, 0, a), at(row, col, 1, b)));
                }
            }
            for u in 0..4 {
                if row + 1 < k {
                    edges.push((at(row, col, 0, u), at(row + 1, col, 0, u)));
                }
                if col + 1 < k {
                    edges.push((at(row, col, 1, u), at(row, col + 1, 1, u)));
                }
            }
        }
    }
    Graph::new(8 * k * k, edges).expect("chimera construction yields a simple graph")
}
