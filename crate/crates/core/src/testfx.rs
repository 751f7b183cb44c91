//! Small named graphs shared by the unit tests.

use crate::graph::Graph;

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
        edges.push((i, 5 + i)); // spokes
    }
    Graph::build(10, &edges).unwrap()
}

/// Merging the first diamond's non-adjacent pair (ids 0 and 3) creates a
/// K4 on {0,4,5,6}.
pub fn merge_creates_k4_example() -> Graph {
    crate::generators::merge_cascade_example()
}

/// The 9-vertex diameter-2 irreducible instance with an articulation
/// neighborhood at vertex 0: hub neighbors 1..4 (independent), components
/// {5,6} and {7,8}, hub attachments covering all four side patterns.
pub fn hub_nine_vertex() -> Graph {
    let edges = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (5, 6),
        (7, 8),
        (1, 5),
        (1, 7),
        (2, 5),
        (2, 8),
        (3, 6),
        (3, 7),
        (4, 6),
        (4, 8),
    ];
    Graph::build(9, &edges).unwrap()
}
