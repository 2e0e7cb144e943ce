use super::Embedding;
use crate::graph::ChimeraCoord;

/// Native embedding of `K_{4k}` into the `k x k` Chimera graph.
///
/// Logical vertex `4i + u` takes the side-1 qubits of unit `u` along block
/// row `i` in columns `0..=i`, then turns at the diagonal block and takes the
/// side-0 qubits of unit `u` down block column `i` in rows `i..k`. Every chain
/// has `k + 1` qubits, `4k(k + 1)` in total.
///
/// # Panics
/// If `k == 0`.
pub fn clique_embedding(k: usize) -> Embedding {
    assert!(k >= 1, "chimera grid size must be at least 1");
    let mut chains = Vec::with_capacity(4 * k);
    for i in 0..k {
        for unit in 0..4 {
            let horizontal = (0..=i).map(|col| ChimeraCoord { row: i, col, side: 1, unit });
            let vertical = (i..k).map(|row| ChimeraCoord { row, col: i, side: 0, unit });
            chains.push(horizontal.chain(vertical).map(|c| c.index(k)).collect());
        }
    }
    Embedding::new(chains, 8 * k * k)
}
