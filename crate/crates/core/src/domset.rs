//! Greedy dominating-set construction. The greedy max-coverage rule meets
//! the classical n(1+ln(δ+1))/(δ+1) size bound that the dominating-set
//! solving strategy budgets against.

use thiserror::Error;

use crate::graph::{connected_components, Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DomsetError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// True iff every vertex outside `s` has a neighbor in `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    g.vertices().all(|v| {
        s.contains(v) || g.neighbors(v).iter().any(|&w| s.contains(w))
    })
}

/// Greedy dominating set: repeatedly pick the vertex whose closed
/// neighborhood covers the most still-undominated vertices, ties broken by
/// lowest id. Size is at most ⌈n(1+ln(δ+1))/(δ+1)⌉.
pub fn greedy_dominating_set(g: &Graph) -> Result<VertexSet, DomsetError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(DomsetError::Empty);
    }
    if connected_components(g).len() != 1 {
        return Err(DomsetError::Disconnected);
    }
    let mut dominated = vec![false; n];
    let mut remaining = n;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best = 0u32;
        let mut best_gain = 0usize;
        for v in g.vertices() {
            let mut gain = usize::from(!dominated[v as usize]);
            gain += g
                .neighbors(v)
                .iter()
                .filter(|&&w| !dominated[w as usize])
                .count();
            if gain > best_gain {
                best_gain = gain;
                best = v;
            }
        }
        debug_assert!(best_gain > 0);
        chosen.push(best);
        if !dominated[best as usize] {
            dominated[best as usize] = true;
            remaining -= 1;
        }
        for &w in g.neighbors(best) {
            if !dominated[w as usize] {
                dominated[w as usize] = true;
                remaining -= 1;
            }
        }
    }
    Ok(VertexSet::new(g, chosen).expect("chosen vertices are in range"))
}

/// The greedy size bound for a graph with `n` vertices and minimum degree
/// `min_degree`.
pub fn greedy_size_bound(n: usize, min_degree: usize) -> usize {
    let d = (min_degree + 1) as f64;
    (n as f64 * (1.0 + d.ln()) / d).ceil() as usize
}
