//! Diamond elimination (Rule 1) and siblings elimination (Rule 2), iterated
//! to a fixpoint, plus the trace machinery that lifts a coloring of the
//! reduced graph back to the original one.
//!
//! Rule 1: if {u1,u2,u3,u4} induces a diamond with u1u2 missing, u1 and u2
//! must share a color, so they are merged (union neighborhood). Rule 2: if
//! N(u) is contained in N(v) for non-adjacent u, v, then u can take v's
//! color, so u is removed. Both preserve 3-colorability exactly; a K4 found
//! along the way settles the instance as not 3-colorable.

use thiserror::Error;

use crate::graph::{find_diamond, find_k4, Graph};
use crate::solver::Coloring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("vertex id {0} out of range")]
    OutOfRange(u32),
    #[error("vertices {0} and {1} are adjacent")]
    PairAdjacent(u32, u32),
    #[error("pair ({0}, {1}) does not complete an induced diamond")]
    NotADiamondPair(u32, u32),
    #[error("N({removed}) is not contained in N({keeper})")]
    NotSiblings { removed: u32, keeper: u32 },
    #[error("identical vertices given")]
    SameVertex,
    #[error("coloring does not cover every reduced-graph vertex")]
    PartialColoring,
}

/// One reduction step, recorded with original-graph representative ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionEvent {
    /// `absorbed` was merged into `kept` (the lower original id survives);
    /// the pair was non-adjacent at event time.
    Merge { kept: u32, absorbed: u32 },
    /// `removed` was deleted; N(removed) was contained in N(keeper).
    Remove { removed: u32, keeper: u32 },
}

/// Where an original vertex ended up after all events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexFate {
    Survives(u32),
    AbsorbedBy(u32),
}

/// Ordered event log plus the resolved original-id -> reduced-id map.
/// Replaying `events` forward on the original graph reproduces the reduced
/// graph exactly; every original vertex resolves through the absorption
/// chain to exactly one reduced-graph vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub events: Vec<ReductionEvent>,
    vertex_map: Vec<VertexFate>,
    original_vertex_count: usize,
    reduced_vertex_count: usize,
}

impl ReductionTrace {
    pub fn original_vertex_count(&self) -> usize {
        self.original_vertex_count
    }

    pub fn reduced_vertex_count(&self) -> usize {
        self.reduced_vertex_count
    }

    /// Reduced-graph id an original vertex resolves to.
    pub fn resolve(&self, original: u32) -> u32 {
        let mut v = original;
        loop {
            match self.vertex_map[v as usize] {
                VertexFate::Survives(r) => return r,
                VertexFate::AbsorbedBy(p) => v = p,
            }
        }
    }

    pub fn fate(&self, original: u32) -> VertexFate {
        self.vertex_map[original as usize]
    }
}

/// Result of iterating the rules: an irreducible graph, or a K4 witness
/// (in original-graph representative ids) with the partial trace.
#[derive(Debug, Clone)]
pub enum ReduceOutcome {
    Irreducible { graph: Graph, trace: ReductionTrace },
    K4Found { witness: [u32; 4], trace: ReductionTrace },
}

/// Working state while rules are applied: the current graph plus the map
/// from current ids back to original representative ids. Labels stay
/// sorted because merges keep the lower id and removals only delete.
pub(crate) struct Reducer {
    graph: Graph,
    labels: Vec<u32>,
    events: Vec<ReductionEvent>,
    original_n: usize,
}

impl Reducer {
    pub(crate) fn new(g: &Graph) -> Reducer {
        Reducer {
            graph: g.clone(),
            labels: (0..g.vertex_count() as u32).collect(),
            events: Vec::new(),
            original_n: g.vertex_count(),
        }
    }

    /// Current index of an original representative id, if it survives.
    pub(crate) fn index_of(&self, original: u32) -> Option<u32> {
        self.labels.binary_search(&original).ok().map(|i| i as u32)
    }

    /// Merges non-adjacent current vertices `a` and `b` into the one with
    /// the lower id; ids above the absorbed one shift down by one.
    pub(crate) fn merge(&mut self, a: u32, b: u32) {
        debug_assert!(a != b && !self.graph.has_edge(a, b));
        let (kept, absorbed) = if a < b { (a, b) } else { (b, a) };
        self.events.push(ReductionEvent::Merge {
            kept: self.labels[kept as usize],
            absorbed: self.labels[absorbed as usize],
        });
        let map = |i: u32| {
            if i == absorbed {
                kept
            } else if i > absorbed {
                i - 1
            } else {
                i
            }
        };
        let edges: Vec<(u32, u32)> = self
            .graph
            .edges()
            .map(|(x, y)| (map(x), map(y)))
            .collect();
        self.graph = Graph::build(self.graph.vertex_count() - 1, &edges)
            .expect("merge of a non-adjacent pair yields a simple graph");
        self.labels.remove(absorbed as usize);
    }

    /// Merges an independent set, given by original representative ids,
    /// into its minimum member. Indices are re-resolved per step since
    /// each merge shifts them.
    pub(crate) fn merge_label_set(&mut self, member_labels: &[u32]) {
        if member_labels.len() < 2 {
            return;
        }
        let mut labels = member_labels.to_vec();
        labels.sort_unstable();
        let target = labels[0];
        for &l in &labels[1..] {
            let a = self.index_of(target).expect("target survives");
            let b = self.index_of(l).expect("member not yet merged");
            self.merge(a, b);
        }
    }

    /// Removes current vertex `removed`, recording `keeper` as its sibling.
    pub(crate) fn remove(&mut self, removed: u32, keeper: u32) {
        self.events.push(ReductionEvent::Remove {
            removed: self.labels[removed as usize],
            keeper: self.labels[keeper as usize],
        });
        let map = |i: u32| if i > removed { i - 1 } else { i };
        let edges: Vec<(u32, u32)> = self
            .graph
            .edges()
            .filter(|&(x, y)| x != removed && y != removed)
            .map(|(x, y)| (map(x), map(y)))
            .collect();
        self.graph = Graph::build(self.graph.vertex_count() - 1, &edges)
            .expect("removal yields a simple graph");
        self.labels.remove(removed as usize);
    }

    /// Applies Rules 1 and 2 until neither fires or a K4 appears.
    /// Scheduling: K4 check first, then the lexicographically first diamond,
    /// then the lexicographically first sibling pair.
    pub(crate) fn run_rules(&mut self) -> Option<[u32; 4]> {
        loop {
            if let Some(k4) = find_k4(&self.graph) {
                return Some(k4.map(|v| self.labels[v as usize]));
            }
            if let Some(d) = find_diamond(&self.graph) {
                self.merge(d.non_edge.0, d.non_edge.1);
                continue;
            }
            if let Some((removed, keeper)) = first_sibling_pair(&self.graph) {
                self.remove(removed, keeper);
                continue;
            }
            return None;
        }
    }

    pub(crate) fn finish(self) -> (Graph, ReductionTrace) {
        let mut vertex_map = vec![VertexFate::Survives(0); self.original_n];
        for ev in &self.events {
            match *ev {
                ReductionEvent::Merge { kept, absorbed } => {
                    vertex_map[absorbed as usize] = VertexFate::AbsorbedBy(kept);
                }
                ReductionEvent::Remove { removed, keeper } => {
                    vertex_map[removed as usize] = VertexFate::AbsorbedBy(keeper);
                }
            }
        }
        for (reduced_id, &orig) in self.labels.iter().enumerate() {
            vertex_map[orig as usize] = VertexFate::Survives(reduced_id as u32);
        }
        let trace = ReductionTrace {
            events: self.events,
            vertex_map,
            original_vertex_count: self.original_n,
            reduced_vertex_count: self.labels.len(),
        };
        (self.graph, trace)
    }
}

/// Lexicographically first (u, v) with N(u) ⊆ N(v) or N(v) ⊆ N(u), returned
/// as (removed, keeper). The dominated vertex is removed; on twin ties the
/// higher id goes.
fn first_sibling_pair(g: &Graph) -> Option<(u32, u32)> {
    let n = g.vertex_count() as u32;
    for u in 0..n {
        for v in u + 1..n {
            let uv = subset_of(g.neighbors(u), g.neighbors(v));
            let vu = subset_of(g.neighbors(v), g.neighbors(u));
            if uv && vu {
                return Some((v, u)); // twins: remove the higher id
            }
            if uv {
                return Some((u, v));
            }
            if vu {
                return Some((v, u));
            }
        }
    }
    None
}

fn subset_of(a: &[u32], b: &[u32]) -> bool {
    // Both sorted.
    let mut it = b.iter();
    'outer: for &x in a {
        for &y in it.by_ref() {
            match y.cmp(&x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Reason the graph is not irreducible (a K4, diamond, or sibling pair
/// witness), or `None` when neither rule applies and no K4 exists.
pub fn irreducibility_violation(g: &Graph) -> Option<String> {
    if let Some(k4) = find_k4(g) {
        return Some(format!("contains K4 on {k4:?}"));
    }
    if let Some(d) = find_diamond(g) {
        return Some(format!(
            "diamond with non-edge {:?} and adjacent pair {:?}",
            d.non_edge, d.adjacent
        ));
    }
    if let Some((removed, keeper)) = first_sibling_pair(g) {
        return Some(format!("sibling pair: N({removed}) ⊆ N({keeper})"));
    }
    None
}

pub fn is_irreducible(g: &Graph) -> bool {
    irreducibility_violation(g).is_none()
}

/// Rule 1 on an explicit non-adjacent pair; errors if the pair is adjacent
/// or is not part of an induced diamond.
pub fn apply_rule1(g: &Graph, pair: (u32, u32)) -> Result<Graph, ReduceError> {
    let (u1, u2) = pair;
    let n = g.vertex_count() as u32;
    for v in [u1, u2] {
        if v >= n {
            return Err(ReduceError::OutOfRange(v));
        }
    }
    if u1 == u2 {
        return Err(ReduceError::SameVertex);
    }
    if g.has_edge(u1, u2) {
        return Err(ReduceError::PairAdjacent(u1, u2));
    }
    let common: Vec<u32> = g
        .neighbors(u1)
        .iter()
        .filter(|&&x| g.has_edge(u2, x))
        .copied()
        .collect();
    let completes = common
        .iter()
        .enumerate()
        .any(|(i, &a)| common[i + 1..].iter().any(|&b| g.has_edge(a, b)));
    if !completes {
        return Err(ReduceError::NotADiamondPair(u1, u2));
    }
    let mut r = Reducer::new(g);
    r.merge(u1, u2);
    Ok(r.finish().0)
}

/// Rule 2: removes `removed`, given N(removed) ⊆ N(keeper) and the pair is
/// non-adjacent.
pub fn apply_rule2(g: &Graph, removed: u32, keeper: u32) -> Result<Graph, ReduceError> {
    let n = g.vertex_count() as u32;
    for v in [removed, keeper] {
        if v >= n {
            return Err(ReduceError::OutOfRange(v));
        }
    }
    if removed == keeper {
        return Err(ReduceError::SameVertex);
    }
    if g.has_edge(removed, keeper) {
        return Err(ReduceError::PairAdjacent(removed, keeper));
    }
    if !subset_of(g.neighbors(removed), g.neighbors(keeper)) {
        return Err(ReduceError::NotSiblings { removed, keeper });
    }
    let mut r = Reducer::new(g);
    r.remove(removed, keeper);
    Ok(r.finish().0)
}

/// Iterates the rules to a fixpoint. Returns the irreducible graph with its
/// trace, or a K4 witness (original-graph representative ids) with the
/// partial trace accumulated so far.
pub fn reduce_to_irreducible(g: &Graph) -> ReduceOutcome {
    let mut r = Reducer::new(g);
    match r.run_rules() {
        Some(witness) => {
            let (_, trace) = r.finish();
            ReduceOutcome::K4Found { witness, trace }
        }
        None => {
            let (graph, trace) = r.finish();
            ReduceOutcome::Irreducible { graph, trace }
        }
    }
}

/// Lifts a total coloring of the reduced graph back to the original graph:
/// merged vertices take the merged vertex's color, removed vertices take
/// their sibling's color.
pub fn lift_coloring(
    trace: &ReductionTrace,
    reduced_coloring: &Coloring,
) -> Result<Coloring, ReduceError> {
    if reduced_coloring.len() != trace.reduced_vertex_count
        || !reduced_coloring.is_total()
    {
        return Err(ReduceError::PartialColoring);
    }
    let mut out = Coloring::unassigned(trace.original_vertex_count);
    for v in 0..trace.original_vertex_count as u32 {
        let r = trace.resolve(v);
        out.set(v, reduced_coloring.get(r).expect("total"));
    }
    Ok(out)
}

/// Replays trace events forward on the original graph; used to check that
/// the trace reproduces the reduced graph bit-exactly.
pub fn replay_events(original: &Graph, events: &[ReductionEvent]) -> Graph {
    let mut r = Reducer::new(original);
    for ev in events {
        match *ev {
            ReductionEvent::Merge { kept, absorbed } => {
                let a = r.index_of(kept).expect("kept vertex present");
                let b = r.index_of(absorbed).expect("absorbed vertex present");
                r.merge(a, b);
            }
            ReductionEvent::Remove { removed, keeper } => {
                let a = r.index_of(removed).expect("removed vertex present");
                let b = r.index_of(keeper).expect("keeper present");
                r.remove(a, b);
            }
        }
    }
    r.finish().0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{connected_components, is_triangle_free, metrics, neighborhood_max_degree};
    use crate::solver::{oracle_3color, verify_coloring};
    use crate::testfx;
    use rand::{Rng, SeedableRng};

    fn diamond() -> Graph {
        Graph::build(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn rule1_diamond_to_k3() {
        let g = apply_rule1(&diamond(), (0, 3)).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn rule1_merge_creates_k4() {
        let g = testfx::merge_creates_k4_example();
        let merged = apply_rule1(&g, (0, 3)).unwrap();
        // After compaction u5,u6,u7 are ids 3,4,5; the K4 sits on {0,3,4,5}.
        assert_eq!(crate::graph::find_k4(&merged), Some([0, 3, 4, 5]));
    }

    #[test]
    fn rule1_rejects_non_diamonds() {
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            apply_rule1(&c4, (0, 2)),
            Err(ReduceError::NotADiamondPair(0, 2))
        );
        assert_eq!(
            apply_rule1(&diamond(), (1, 2)),
            Err(ReduceError::PairAdjacent(1, 2))
        );
    }

    #[test]
    fn rule2_star_leaf() {
        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let g = apply_rule2(&star, 2, 3).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn rule2_path_endpoint() {
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let g = apply_rule2(&p4, 0, 2).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rule2_c5_has_no_siblings() {
        let c5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert!(apply_rule2(&c5, u, v).is_err());
                }
            }
        }
    }

    #[test]
    fn reduce_k4_immediately() {
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        match reduce_to_irreducible(&k4) {
            ReduceOutcome::K4Found { witness, trace } => {
                assert_eq!(witness, [0, 1, 2, 3]);
                assert!(trace.events.is_empty());
            }
            _ => panic!("expected K4"),
        }
    }

    #[test]
    fn reduce_petersen_is_noop() {
        let p = testfx::petersen();
        match reduce_to_irreducible(&p) {
            ReduceOutcome::Irreducible { graph, trace } => {
                assert_eq!(graph, p);
                assert!(trace.events.is_empty());
            }
            _ => panic!("Petersen has no K4"),
        }
    }

    #[test]
    fn reduce_merge_example_finds_k4_after_one_merge() {
        let g = testfx::merge_creates_k4_example();
        match reduce_to_irreducible(&g) {
            ReduceOutcome::K4Found { witness, trace } => {
                assert_eq!(trace.events.len(), 1);
                assert_eq!(
                    trace.events[0],
                    ReductionEvent::Merge { kept: 0, absorbed: 3 }
                );
                assert_eq!(witness, [0, 4, 5, 6]);
            }
            _ => panic!("expected K4 after the merge"),
        }
    }

    #[test]
    fn lift_diamond_coloring() {
        let d = diamond();
        let outcome = reduce_to_irreducible(&d);
        let (reduced, trace) = match outcome {
            ReduceOutcome::Irreducible { graph, trace } => (graph, trace),
            _ => panic!(),
        };
        assert_eq!(reduced.vertex_count(), 3);
        let mut c = Coloring::unassigned(3);
        c.set(0, 1);
        c.set(1, 2);
        c.set(2, 3);
        let lifted = lift_coloring(&trace, &c).unwrap();
        assert!(verify_coloring(&d, &lifted));
        assert_eq!(lifted.get(0), lifted.get(3));
    }

    #[test]
    fn lift_identity_trace() {
        let p = testfx::petersen();
        let trace = match reduce_to_irreducible(&p) {
            ReduceOutcome::Irreducible { trace, .. } => trace,
            _ => panic!(),
        };
        let c = oracle_3color(&p).unwrap().unwrap();
        assert_eq!(lift_coloring(&trace, &c).unwrap(), c);
    }

    #[test]
    fn lift_rejects_partial_coloring() {
        let d = diamond();
        let trace = match reduce_to_irreducible(&d) {
            ReduceOutcome::Irreducible { trace, .. } => trace,
            _ => panic!(),
        };
        let partial = Coloring::unassigned(3);
        assert_eq!(
            lift_coloring(&trace, &partial),
            Err(ReduceError::PartialColoring)
        );
    }

    fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen_range(0.1..0.8);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn colorability_preserved_and_lift_proper_on_random_suite() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let g = random_graph(&mut rng, 12);
            let original_answer = oracle_3color(&g).unwrap().is_some();
            match reduce_to_irreducible(&g) {
                ReduceOutcome::K4Found { .. } => assert!(!original_answer),
                ReduceOutcome::Irreducible { graph, trace } => {
                    assert_eq!(replay_events(&g, &trace.events), graph);
                    let reduced_answer = oracle_3color(&graph).unwrap();
                    assert_eq!(reduced_answer.is_some(), original_answer);
                    if let Some(c) = reduced_answer {
                        let lifted = lift_coloring(&trace, &c).unwrap();
                        assert!(verify_coloring(&g, &lifted));
                    }
                }
            }
        }
    }

    #[test]
    fn observation_invariants_on_irreducible_outputs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..500 {
            let g = random_graph(&mut rng, 12);
            if connected_components(&g).len() != 1 {
                continue;
            }
            let before = metrics(&g);
            if let ReduceOutcome::Irreducible { graph, .. } = reduce_to_irreducible(&g) {
                if graph.vertex_count() > 2 {
                    let after = metrics(&graph);
                    assert!(after.min_degree >= 2);
                    assert!(after.diameter.unwrap() <= before.diameter.unwrap());
                    assert!(after.radius.unwrap() <= before.radius.unwrap());
                    for v in graph.vertices() {
                        assert!(neighborhood_max_degree(&graph, v).unwrap() <= 1);
                    }
                    assert!(crate::graph::find_k4(&graph).is_none());
                    assert!(crate::graph::find_diamond(&graph).is_none());
                    checked += 1;
                }
            }
        }
        assert!(checked > 50, "suite degenerated: only {checked} instances");
    }

    #[test]
    fn irreducible_triangle_free_examples_stay_triangle_free() {
        // Reduction of a triangle-free graph can create triangles only via
        // merges; spot-check that the two named triangle-free instances
        // are fixpoints.
        let p = testfx::petersen();
        assert!(is_triangle_free(&p));
        match reduce_to_irreducible(&p) {
            ReduceOutcome::Irreducible { graph, .. } => assert!(is_triangle_free(&graph)),
            _ => panic!(),
        }
    }
}
