//! The solving strategies: dominating-set enumeration, the diameter-2
//! minimum-degree enumeration, the polynomial articulation-neighborhood
//! algorithm, the diameter-3 seed choice, a brute-force oracle, and the
//! automatic dispatcher that reduces first and then picks the cheapest
//! applicable strategy.

mod seed_enum;

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::domset::{greedy_dominating_set, is_dominating, DomsetError};
use crate::graph::{
    bfs_distances, connected_components, induced_subgraph, metrics, Graph, GraphError,
    VertexSet,
};
use crate::reduce::{
    irreducibility_violation, lift_coloring, reduce_to_irreducible, ReduceOutcome, Reducer,
};
use crate::sat::{twosat_solve, Literal, SatError, TwoSatInstance};

pub const ORACLE_VERTEX_LIMIT: usize = 64;

/// Per-vertex color in {1,2,3} or unassigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Option<u8>>,
}

impl Coloring {
    pub fn unassigned(n: usize) -> Coloring {
        Coloring {
            colors: vec![None; n],
        }
    }

    /// Panics if `color` is not in 1..=3.
    pub fn set(&mut self, v: u32, color: u8) {
        assert!((1..=3).contains(&color), "color {color} out of palette");
        self.colors[v as usize] = Some(color);
    }

    pub fn get(&self, v: u32) -> Option<u8> {
        self.colors[v as usize]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<u8>> + '_ {
        self.colors.iter().copied()
    }
}

/// True iff the coloring is total and no edge is monochromatic.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    if c.len() != g.vertex_count() || !c.is_total() {
        return false;
    }
    g.edges().all(|(u, v)| c.get(u) != c.get(v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Colorable(Coloring),
    NotColorable,
}

impl Answer {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Answer::Colorable(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Answer::Colorable(c) => Some(c),
            Answer::NotColorable => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Answer settled during reduction (K4 found or ≤ 3 vertices left).
    Trivial,
    Reduce,
    Diam2,
    Articulation,
    Diam3,
    SeedSet,
    /// Disconnected input solved per component.
    Mixed,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strategy::Trivial => "trivial",
            Strategy::Reduce => "reduce",
            Strategy::Diam2 => "diam2",
            Strategy::Articulation => "artic",
            Strategy::Diam3 => "diam3",
            Strategy::SeedSet => "seed",
            Strategy::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// Outcome of one solve: the answer (with a verified coloring when
/// colorable), the strategy used, the seed-set size it enumerated over, and
/// the number of complete seed colorings attempted.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub answer: Answer,
    pub strategy: Strategy,
    pub seed_size: usize,
    pub enumeration_count: u64,
    pub wall_time: Duration,
}

/// Execution options shared by the solving strategies.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOpts {
    /// Force sequential search order (byte-reproducible output).
    pub deterministic: bool,
    /// Worker count for seed enumeration; 0/1 = sequential.
    pub parallel: usize,
    pub deadline: Option<Instant>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("graph has {0} vertices; oracle guard is {1} (raise the limit explicitly)")]
    GuardExceeded(usize, usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("diameter {found:?} exceeds {limit} required by this strategy")]
    DiameterExceeds { found: Option<u32>, limit: u32 },
    #[error("graph is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("seed set is not dominating")]
    SeedNotDominating,
    #[error("vertex {0} is not an articulation neighborhood center: {1}")]
    BadArticulationVertex(u32, String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("deadline exceeded")]
    Timeout,
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Domset(#[from] DomsetError),
}

/// Smallest-last vertex order: repeatedly remove a minimum-degree vertex
/// (ties to the lowest id); coloring in reverse removal order keeps the
/// number of already-colored neighbors of each vertex at most the
/// degeneracy.
fn degeneracy_order(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .filter(|&v| !removed[v as usize])
            .min_by_key(|&v| (deg[v as usize], v))
            .unwrap();
        removed[v as usize] = true;
        removal.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
            }
        }
    }
    removal.reverse();
    removal
}

/// Ground-truth backtracking 3-coloring oracle, guarded at 64 vertices.
pub fn oracle_3color(g: &Graph) -> Result<Option<Coloring>, SolveError> {
    oracle_3color_with_limit(g, ORACLE_VERTEX_LIMIT)
}

/// Oracle with an explicit vertex guard for callers that accept the cost.
pub fn oracle_3color_with_limit(g: &Graph, limit: usize) -> Result<Option<Coloring>, SolveError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(SolveError::GuardExceeded(n, limit));
    }
    let order = degeneracy_order(g);
    let mut colors = vec![0u8; n];

    fn backtrack(g: &Graph, order: &[u32], colors: &mut [u8], depth: usize, max_used: u8) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for c in 1..=3u8.min(max_used + 1) {
            if g.neighbors(v).iter().all(|&w| colors[w as usize] != c) {
                colors[v as usize] = c;
                if backtrack(g, order, colors, depth + 1, max_used.max(c)) {
                    return true;
                }
                colors[v as usize] = 0;
            }
        }
        false
    }

    if backtrack(g, &order, &mut colors, 0, 0) {
        let mut c = Coloring::unassigned(n);
        for v in 0..n as u32 {
            c.set(v, colors[v as usize]);
        }
        debug_assert!(verify_coloring(g, &c));
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// Seed vertices in BFS discovery order, starting from the smallest seed
/// vertex and restarting from the next unvisited one if the graph is
/// disconnected.
fn seed_bfs_order(g: &Graph, seed: &VertexSet) -> Vec<u32> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(seed.len());
    while order.len() < seed.len() {
        let start = seed.iter().find(|&v| !seen[v as usize]).unwrap();
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        if seed.contains(start) {
            order.push(start);
        }
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    if seed.contains(w) {
                        order.push(w);
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn verified_report(
    g: &Graph,
    answer: Answer,
    strategy: Strategy,
    seed_size: usize,
    enumeration_count: u64,
    started: Instant,
) -> Result<SolveReport, SolveError> {
    if let Answer::Colorable(ref c) = answer {
        if !verify_coloring(g, c) {
            return Err(SolveError::InternalInvariant(
                "strategy produced an improper coloring".into(),
            ));
        }
    }
    Ok(SolveReport {
        answer,
        strategy,
        seed_size,
        enumeration_count,
        wall_time: started.elapsed(),
    })
}

/// Dominating-set strategy: enumerate proper 3-colorings of the seed
/// (first seed vertex pinned to color 1, new colors introduced in order)
/// and list-2-color the remaining vertices for each one.
pub fn solve_with_seed_set(
    g: &Graph,
    seed: &VertexSet,
    opts: &SolveOpts,
) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    check_deadline(opts)?;
    if !is_dominating(g, seed) {
        return Err(SolveError::SeedNotDominating);
    }
    let spec = seed_enum::EnumSpec {
        g,
        fixed: Vec::new(),
        order: seed_bfs_order(g, seed),
        allowed: crate::sat::ALL_COLORS,
        cap_symmetry: true,
    };
    let outcome = seed_enum::run(&spec, opts)?;
    let answer = match outcome.solution {
        Some(c) => Answer::Colorable(c),
        None => Answer::NotColorable,
    };
    verified_report(
        g,
        answer,
        Strategy::SeedSet,
        seed.len(),
        outcome.enumeration_count,
        started,
    )
}

fn require_irreducible(g: &Graph) -> Result<(), SolveError> {
    if let Some(reason) = irreducibility_violation(g) {
        return Err(SolveError::NotIrreducible(reason));
    }
    Ok(())
}

fn require_connected(g: &Graph) -> Result<(), SolveError> {
    if g.vertex_count() > 0 && connected_components(g).len() != 1 {
        return Err(SolveError::NotConnected);
    }
    Ok(())
}

fn check_deadline(opts: &SolveOpts) -> Result<(), SolveError> {
    match opts.deadline {
        Some(deadline) if Instant::now() >= deadline => Err(SolveError::Timeout),
        _ => Ok(()),
    }
}

fn min_degree_vertex(g: &Graph) -> u32 {
    g.vertices()
        .min_by_key(|&v| (g.degree(v), v))
        .expect("nonempty graph")
}

/// Diameter-2 strategy: fix a minimum-degree vertex to color 1, enumerate
/// the 2-colorings of its neighborhood with colors {2,3}, and list-2-color
/// the rest. Delegates to the dominating-set strategy when the greedy
/// dominating set promises a smaller search space.
pub fn solve_diam2(g: &Graph, opts: &SolveOpts) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    check_deadline(opts)?;
    if g.vertex_count() == 0 {
        return verified_report(
            g,
            Answer::Colorable(Coloring::unassigned(0)),
            Strategy::Diam2,
            0,
            0,
            started,
        );
    }
    require_connected(g)?;
    let m = metrics(g);
    if m.diameter.map_or(true, |d| d > 2) {
        return Err(SolveError::DiameterExceeds {
            found: m.diameter,
            limit: 2,
        });
    }
    require_irreducible(g)?;
    let delta = m.min_degree;
    let ds = greedy_dominating_set(g)?;
    if (ds.len() as f64) * 3f64.log2() < delta as f64 {
        return solve_with_seed_set(g, &ds, opts);
    }
    let u = min_degree_vertex(g);
    let spec = seed_enum::EnumSpec {
        g,
        fixed: vec![(u, 1)],
        order: g.neighbors(u).to_vec(),
        allowed: crate::sat::color_mask(2) | crate::sat::color_mask(3),
        cap_symmetry: false,
    };
    let outcome = seed_enum::run(&spec, opts)?;
    let answer = match outcome.solution {
        Some(c) => Answer::Colorable(c),
        None => Answer::NotColorable,
    };
    verified_report(
        g,
        answer,
        Strategy::Diam2,
        delta,
        outcome.enumeration_count,
        started,
    )
}

/// Lowest vertex v such that `g − N[v]` is nonempty and disconnected.
/// Assumes a connected input.
pub fn find_articulation_neighborhood(g: &Graph) -> Option<u32> {
    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    for v in g.vertices() {
        for b in blocked.iter_mut() {
            *b = false;
        }
        blocked[v as usize] = true;
        for &w in g.neighbors(v) {
            blocked[w as usize] = true;
        }
        let remaining: Vec<u32> = g.vertices().filter(|&x| !blocked[x as usize]).collect();
        if remaining.is_empty() {
            continue;
        }
        let mut seen = vec![false; n];
        seen[remaining[0] as usize] = true;
        let mut queue = VecDeque::from([remaining[0]]);
        let mut visited = 1usize;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !blocked[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    visited += 1;
                    queue.push_back(w);
                }
            }
        }
        if visited < remaining.len() {
            return Some(v);
        }
    }
    None
}

/// Two-coloring of one component of g − N[v0]; `None` if not bipartite.
fn bipartition(g: &Graph, members: &[u32], in_comp: &[bool]) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut side = vec![u8::MAX; g.vertex_count()];
    let start = members[0];
    side[start as usize] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !in_comp[w as usize] {
                continue;
            }
            if side[w as usize] == u8::MAX {
                side[w as usize] = 1 - side[u as usize];
                queue.push_back(w);
            } else if side[w as usize] == side[u as usize] {
                return None;
            }
        }
    }
    let a = members.iter().copied().filter(|&v| side[v as usize] == 0).collect();
    let b = members.iter().copied().filter(|&v| side[v as usize] == 1).collect();
    Some((a, b))
}

const RED: u8 = 1;
const BLUE: u8 = 2;
const GREEN: u8 = 3;

/// Polynomial algorithm for an irreducible diameter-2 graph with an
/// articulation neighborhood at `v0`; performs no seed enumeration.
///
/// Pipeline: 2-color each component of `g − N[v0]` and merge its color
/// classes into an adjacent pair, re-reduce, then either color directly or
/// decide the remaining freedom with one 2SAT instance whose variables pick
/// the orientation of each merged pair and of each matched edge inside
/// N(v0). Structural facts that the reduction guarantees (two-vertex
/// components, exactly one attachment per matched-edge side) are checked
/// and reported as internal invariant violations if they fail.
pub fn solve_articulation(g: &Graph, v0: u32, opts: &SolveOpts) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    check_deadline(opts)?;
    if v0 as usize >= g.vertex_count() {
        return Err(SolveError::Graph(GraphError::VertexOutOfRange {
            id: v0,
            n: g.vertex_count(),
        }));
    }
    require_connected(g)?;
    let m = metrics(g);
    if m.diameter != Some(2) {
        return Err(SolveError::DiameterExceeds {
            found: m.diameter,
            limit: 2,
        });
    }
    require_irreducible(g)?;

    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    blocked[v0 as usize] = true;
    for &w in g.neighbors(v0) {
        blocked[w as usize] = true;
    }
    let outside: Vec<u32> = g.vertices().filter(|&v| !blocked[v as usize]).collect();
    if outside.is_empty() {
        return Err(SolveError::BadArticulationVertex(
            v0,
            "g - N[v0] is empty".into(),
        ));
    }
    let (outside_graph, outside_ids) = induced_subgraph(g, &outside);
    let comps = connected_components(&outside_graph);
    if comps.len() < 2 {
        return Err(SolveError::BadArticulationVertex(
            v0,
            "g - N[v0] is connected".into(),
        ));
    }

    let mut reducer = Reducer::new(g);
    let mut in_comp = vec![false; n];
    for comp in &comps {
        let members: Vec<u32> = comp.iter().map(|&i| outside_ids[i as usize]).collect();
        if members.len() == 1 {
            return Err(SolveError::InternalInvariant(format!(
                "isolated vertex {} outside N[v0] should have been removed as a sibling of v0",
                members[0]
            )));
        }
        for &v in &members {
            in_comp[v as usize] = true;
        }
        let Some((class_a, class_b)) = bipartition(g, &members, &in_comp) else {
            // A non-bipartite component forces a third color outside N[v0].
            return verified_report(g, Answer::NotColorable, Strategy::Articulation, 0, 0, started);
        };
        for &v in &members {
            in_comp[v as usize] = false;
        }
        reducer.merge_label_set(&class_a);
        reducer.merge_label_set(&class_b);
    }
    if reducer.run_rules().is_some() {
        return verified_report(g, Answer::NotColorable, Strategy::Articulation, 0, 0, started);
    }
    let (reduced, trace) = reducer.finish();

    let center = trace.resolve(v0);
    let hub: Vec<u32> = reduced.neighbors(center).to_vec();
    let mut in_hub = vec![false; reduced.vertex_count()];
    for &z in &hub {
        in_hub[z as usize] = true;
    }
    let mut coloring = Coloring::unassigned(reduced.vertex_count());
    coloring.set(center, RED);

    // Split N(center) into isolated vertices and matched pairs; an
    // irreducible graph allows no internal degree above 1.
    let mut isolated = Vec::new();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &z in &hub {
        let internal: Vec<u32> = reduced
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&w| in_hub[w as usize])
            .collect();
        match internal.len() {
            0 => isolated.push(z),
            1 => {
                if z < internal[0] {
                    pairs.push((z, internal[0]));
                }
            }
            d => {
                return Err(SolveError::InternalInvariant(format!(
                    "hub vertex {z} has internal degree {d} in an irreducible graph"
                )))
            }
        }
    }

    let remaining: Vec<u32> = reduced
        .vertices()
        .filter(|&v| v != center && !in_hub[v as usize])
        .collect();

    if remaining.is_empty() {
        // Everything is adjacent to the center: 2-color its neighborhood.
        for &(a, b) in &pairs {
            coloring.set(a, BLUE);
            coloring.set(b, GREEN);
        }
        for &z in &isolated {
            coloring.set(z, GREEN);
        }
    } else {
        let (rem_graph, rem_ids) = induced_subgraph(&reduced, &remaining);
        let rem_comps = connected_components(&rem_graph);
        let mut comp_pairs: Vec<(u32, u32)> = Vec::new();
        for comp in &rem_comps {
            if comp.len() != 2 {
                return Err(SolveError::InternalInvariant(format!(
                    "component outside N[v0] has {} vertices after reduction; expected 2",
                    comp.len()
                )));
            }
            let u = rem_ids[comp[0] as usize];
            let v = rem_ids[comp[1] as usize];
            comp_pairs.push((u.min(v), u.max(v)));
        }
        if pairs.is_empty() {
            for &z in &hub {
                coloring.set(z, GREEN);
            }
            for &(u, v) in &comp_pairs {
                coloring.set(u, BLUE);
                coloring.set(v, RED);
            }
        } else {
            // One variable per merged component pair (true: u red / v blue)
            // and one per matched hub edge; clauses forbid blue-blue
            // attachments. Exactly one of each matched pair is adjacent to
            // each component vertex.
            let mut inst = TwoSatInstance::new(comp_pairs.len() + pairs.len());
            for (i, &(u, v)) in comp_pairs.iter().enumerate() {
                for (j, &(z1, z2)) in pairs.iter().enumerate() {
                    let x = i as u32;
                    let y = (comp_pairs.len() + j) as u32;
                    let u_z1 = reduced.has_edge(u, z1);
                    let u_z2 = reduced.has_edge(u, z2);
                    if u_z1 == u_z2 {
                        return Err(SolveError::InternalInvariant(format!(
                            "vertex {u} is adjacent to {} of the matched pair ({z1},{z2}); expected exactly one",
                            if u_z1 { "both" } else { "neither" }
                        )));
                    }
                    if u_z1 {
                        inst.add_clause(Literal::pos(x), Literal::neg(y));
                    } else {
                        inst.add_clause(Literal::pos(x), Literal::pos(y));
                    }
                    let v_z1 = reduced.has_edge(v, z1);
                    let v_z2 = reduced.has_edge(v, z2);
                    if v_z1 == v_z2 {
                        return Err(SolveError::InternalInvariant(format!(
                            "vertex {v} is adjacent to {} of the matched pair ({z1},{z2}); expected exactly one",
                            if v_z1 { "both" } else { "neither" }
                        )));
                    }
                    if v_z1 {
                        inst.add_clause(Literal::neg(x), Literal::neg(y));
                    } else {
                        inst.add_clause(Literal::neg(x), Literal::pos(y));
                    }
                }
            }
            let Some(model) = twosat_solve(&inst)? else {
                return verified_report(
                    g,
                    Answer::NotColorable,
                    Strategy::Articulation,
                    0,
                    0,
                    started,
                );
            };
            for (i, &(u, v)) in comp_pairs.iter().enumerate() {
                if model[i] {
                    coloring.set(u, RED);
                    coloring.set(v, BLUE);
                } else {
                    coloring.set(u, BLUE);
                    coloring.set(v, RED);
                }
            }
            // The clause table pairs with this decoding: the true branch
            // puts blue on the even-indexed endpoint.
            for (j, &(z1, z2)) in pairs.iter().enumerate() {
                if model[comp_pairs.len() + j] {
                    coloring.set(z1, BLUE);
                    coloring.set(z2, GREEN);
                } else {
                    coloring.set(z1, GREEN);
                    coloring.set(z2, BLUE);
                }
            }
            for &z in &isolated {
                coloring.set(z, GREEN);
            }
        }
    }

    let lifted = lift_coloring(&trace, &coloring)
        .map_err(|e| SolveError::InternalInvariant(format!("lift failed: {e}")))?;
    verified_report(
        g,
        Answer::Colorable(lifted),
        Strategy::Articulation,
        0,
        0,
        started,
    )
}

/// Diameter-3 strategy: seed with the smaller of (distance-2 shell of a
/// minimum-degree vertex plus the vertex itself) and the greedy dominating
/// set, then run the dominating-set enumeration.
pub fn solve_diam3(g: &Graph, opts: &SolveOpts) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    check_deadline(opts)?;
    if g.vertex_count() == 0 {
        return verified_report(
            g,
            Answer::Colorable(Coloring::unassigned(0)),
            Strategy::Diam3,
            0,
            0,
            started,
        );
    }
    require_connected(g)?;
    let m = metrics(g);
    if m.diameter.map_or(true, |d| d > 3) {
        return Err(SolveError::DiameterExceeds {
            found: m.diameter,
            limit: 3,
        });
    }
    let u = min_degree_vertex(g);
    let dist = bfs_distances(g, u)?;
    let mut shell: Vec<u32> = g
        .vertices()
        .filter(|&v| dist[v as usize] == Some(2))
        .collect();
    shell.push(u);
    let shell_seed = VertexSet::new(g, shell)?;
    let ds = greedy_dominating_set(g)?;
    let seed = if shell_seed.len() <= ds.len() {
        shell_seed
    } else {
        ds
    };
    let mut report = solve_with_seed_set(g, &seed, opts)?;
    report.strategy = Strategy::Diam3;
    report.wall_time = started.elapsed();
    Ok(report)
}

fn solve_connected(g: &Graph, opts: &SolveOpts) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    check_deadline(opts)?;
    let (reduced, trace) = match reduce_to_irreducible(g) {
        ReduceOutcome::K4Found { .. } => {
            return verified_report(g, Answer::NotColorable, Strategy::Reduce, 0, 0, started)
        }
        ReduceOutcome::Irreducible { graph, trace } => (graph, trace),
    };
    if reduced.vertex_count() <= 3 {
        let mut c = Coloring::unassigned(reduced.vertex_count());
        for (i, v) in reduced.vertices().enumerate() {
            c.set(v, i as u8 + 1);
        }
        let lifted = lift_coloring(&trace, &c)
            .map_err(|e| SolveError::InternalInvariant(format!("lift failed: {e}")))?;
        return verified_report(g, Answer::Colorable(lifted), Strategy::Trivial, 0, 0, started);
    }
    let m = metrics(&reduced);
    let inner = match m.diameter {
        Some(d) if d <= 2 => match find_articulation_neighborhood(&reduced) {
            Some(v0) => solve_articulation(&reduced, v0, opts)?,
            None => solve_diam2(&reduced, opts)?,
        },
        Some(3) => solve_diam3(&reduced, opts)?,
        _ => {
            let ds = greedy_dominating_set(&reduced)?;
            solve_with_seed_set(&reduced, &ds, opts)?
        }
    };
    let answer = match inner.answer {
        Answer::NotColorable => Answer::NotColorable,
        Answer::Colorable(c) => {
            let lifted = lift_coloring(&trace, &c)
                .map_err(|e| SolveError::InternalInvariant(format!("lift failed: {e}")))?;
            Answer::Colorable(lifted)
        }
    };
    verified_report(
        g,
        answer,
        inner.strategy,
        inner.seed_size,
        inner.enumeration_count,
        started,
    )
}

/// Reduce first, then dispatch to the cheapest applicable strategy.
/// Disconnected inputs are solved per component and the colorings
/// concatenated.
pub fn solve_auto(g: &Graph, opts: &SolveOpts) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    if g.vertex_count() == 0 {
        return verified_report(
            g,
            Answer::Colorable(Coloring::unassigned(0)),
            Strategy::Trivial,
            0,
            0,
            started,
        );
    }
    let comps = connected_components(g);
    if comps.len() == 1 {
        return solve_connected(g, opts);
    }
    let mut combined = Coloring::unassigned(g.vertex_count());
    let mut seed_size = 0;
    let mut enumeration_count = 0;
    for comp in &comps {
        let (sub, ids) = induced_subgraph(g, comp);
        let report = solve_connected(&sub, opts)?;
        seed_size += report.seed_size;
        enumeration_count += report.enumeration_count;
        match report.answer {
            Answer::NotColorable => {
                return verified_report(
                    g,
                    Answer::NotColorable,
                    Strategy::Mixed,
                    seed_size,
                    enumeration_count,
                    started,
                )
            }
            Answer::Colorable(c) => {
                for (i, &v) in ids.iter().enumerate() {
                    combined.set(v, c.get(i as u32).unwrap());
                }
            }
        }
    }
    verified_report(
        g,
        Answer::Colorable(combined),
        Strategy::Mixed,
        seed_size,
        enumeration_count,
        started,
    )
}

#[cfg(test)]
mod tests;
