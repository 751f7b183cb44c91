//! Synthesis of the 8-vertex, 10-edge clause gadget by exhaustive search.
//!
//! The gadget is pinned down by its behavior rather than a fixed edge list:
//! triangle-free, connected, contains an induced 5-cycle (so it has no
//! proper 2-coloring), and on its three attachment vertices g1,g2,g3 a
//! color assignment extends to a proper 3-coloring of the whole gadget
//! exactly when the three are not monochromatic. The search scans all
//! 10-edge graphs on 8 labeled vertices in lexicographic edge-set order and
//! returns the first one passing every check, so the result is canonical.

use std::sync::OnceLock;

/// Canonical clause gadget: vertices 0..8 with attachment vertices 0,1,2
/// (the roles g1,g2,g3) and exactly 10 edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseGadget {
    pub edges: Vec<(u8, u8)>,
}

fn all_pairs() -> Vec<(u8, u8)> {
    let mut pairs = Vec::with_capacity(28);
    for a in 0..8u8 {
        for b in a + 1..8 {
            pairs.push((a, b));
        }
    }
    pairs
}

fn is_triangle_free(adj: &[u8; 8], edges: &[(u8, u8)]) -> bool {
    edges
        .iter()
        .all(|&(a, b)| adj[a as usize] & adj[b as usize] == 0)
}

fn is_connected(adj: &[u8; 8]) -> bool {
    let mut seen = 1u8;
    loop {
        let mut next = seen;
        for v in 0..8 {
            if seen & (1 << v) != 0 {
                next |= adj[v];
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen == 0xff
}

fn is_bipartite(adj: &[u8; 8]) -> bool {
    let mut side = [u8::MAX; 8];
    for start in 0..8 {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 0..8 {
                if adj[v] & (1 << w) == 0 {
                    continue;
                }
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn has_induced_c5(adj: &[u8; 8]) -> bool {
    // A 5-subset induces C5 iff it has 5 induced edges, every vertex has
    // induced degree 2, and it is connected.
    for subset in 0u16..256 {
        let subset = subset as u8;
        if subset.count_ones() != 5 {
            continue;
        }
        let mut edge_count = 0;
        let mut degrees_ok = true;
        for v in 0..8 {
            if subset & (1 << v) == 0 {
                continue;
            }
            let d = (adj[v] & subset).count_ones();
            if d != 2 {
                degrees_ok = false;
                break;
            }
            edge_count += d;
        }
        if !degrees_ok || edge_count != 10 {
            continue;
        }
        // Degree-2 everywhere with 5 edges is either C5 or C3+C2; the
        // latter is impossible (no 2-vertex cycle), so connectivity of the
        // subset seals it -- and a disjoint C3+anything fails triangle
        // freeness earlier anyway. Check connectivity to be thorough.
        let mut seen = 1u8 << subset.trailing_zeros();
        loop {
            let mut next = seen;
            for v in 0..8 {
                if seen & (1 << v) != 0 {
                    next |= adj[v] & subset;
                }
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        if seen == subset {
            return true;
        }
    }
    false
}

/// Can colors of vertices 0,1,2 be extended to a proper 3-coloring of the
/// gadget? Brute force over the 3^5 colorings of vertices 3..8.
fn extends(adj: &[u8; 8], c1: u8, c2: u8, c3: u8) -> bool {
    let mut colors = [0u8; 8];
    colors[0] = c1;
    colors[1] = c2;
    colors[2] = c3;
    'outer: for code in 0..3u32.pow(5) {
        let mut rest = code;
        for v in 3..8 {
            colors[v] = (rest % 3) as u8 + 1;
            rest /= 3;
        }
        for v in 0..8 {
            for w in v + 1..8 {
                if adj[v] & (1 << w) != 0 && colors[v] == colors[w] {
                    continue 'outer;
                }
            }
        }
        return true;
    }
    false
}

fn satisfies_attachment_contract(adj: &[u8; 8]) -> bool {
    for c1 in 1..=3u8 {
        for c2 in 1..=3u8 {
            for c3 in 1..=3u8 {
                let mono = c1 == c2 && c2 == c3;
                if extends(adj, c1, c2, c3) == mono {
                    return false;
                }
            }
        }
    }
    true
}

fn check_candidate(edges: &[(u8, u8)]) -> bool {
    let mut adj = [0u8; 8];
    let mut degree = [0u8; 8];
    for &(a, b) in edges {
        adj[a as usize] |= 1 << b;
        adj[b as usize] |= 1 << a;
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    degree.iter().all(|&d| d >= 1)
        && is_triangle_free(&adj, edges)
        && is_connected(&adj)
        && !is_bipartite(&adj)
        && has_induced_c5(&adj)
        && satisfies_attachment_contract(&adj)
}

fn search() -> Option<ClauseGadget> {
    let pairs = all_pairs();
    // Any edge among the attachment vertices would make some two-colored
    // attachment assignment improper, failing the contract; skip those
    // pairs up front.
    let allowed: Vec<(u8, u8)> = pairs
        .iter()
        .copied()
        .filter(|&(a, b)| !(a < 3 && b < 3))
        .collect();
    let k = 10;
    let n = allowed.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let edges: Vec<(u8, u8)> = idx.iter().map(|&i| allowed[i]).collect();
        if check_candidate(&edges) {
            return Some(ClauseGadget { edges });
        }
        // Next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

static GADGET: OnceLock<Option<ClauseGadget>> = OnceLock::new();

/// The canonical clause gadget; the exhaustive search runs once per
/// process and is cached. `None` would mean no 8-vertex 10-edge graph has
/// the required behavior, which the verification suite treats as a hard
/// failure.
pub fn find_clause_gadget() -> Option<&'static ClauseGadget> {
    GADGET.get_or_init(search).as_ref()
}
