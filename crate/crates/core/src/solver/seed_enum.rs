//! Shared seed-coloring enumerator: depth-first search over the colorings
//! of a seed vertex set with transitive unit propagation over the whole
//! graph, optional introduce-colors-in-order symmetry breaking, a
//! cooperative deadline, and prefix-partitioned parallel search.
//!
//! Each completed seed coloring ("leaf") is extended by list-2-coloring the
//! residual vertices; the leaf count is the enumeration count reported by
//! the solving strategies.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::graph::{induced_subgraph, Graph};
use crate::sat::{color_mask, list2_solve, mask_colors, mask_len, ColorLists, ALL_COLORS};
use crate::solver::{Coloring, SolveError, SolveOpts};

pub(crate) struct EnumSpec<'a> {
    pub g: &'a Graph,
    /// Vertices colored before the search starts.
    pub fixed: Vec<(u32, u8)>,
    /// Seed vertices in decision order.
    pub order: Vec<u32>,
    /// Palette mask decision vertices may draw from.
    pub allowed: u8,
    /// Fix the first decision to color 1 and cap each new color at
    /// (max used so far) + 1.
    pub cap_symmetry: bool,
}

pub(crate) struct EnumOutcome {
    pub solution: Option<Coloring>,
    pub enumeration_count: u64,
}

struct Residual {
    /// Residual vertex ids in the full graph, ascending.
    vertices: Vec<u32>,
    graph: Graph,
}

struct SearchCtx<'a> {
    spec: &'a EnumSpec<'a>,
    residual: &'a Residual,
    deadline: Option<Instant>,
    cancel: Option<&'a AtomicBool>,
    tick: u32,
}

struct State {
    masks: Vec<u8>,
    trail: Vec<(u32, u8)>,
}

impl State {
    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, old) = self.trail.pop().unwrap();
            self.masks[v as usize] = old;
        }
    }

    fn narrow(&mut self, v: u32, mask: u8) {
        self.trail.push((v, self.masks[v as usize]));
        self.masks[v as usize] = mask;
    }

    /// Assigns color `c` to `v` and propagates singleton lists
    /// transitively. Returns false on an emptied list.
    fn assign(&mut self, g: &Graph, v: u32, c: u8) -> bool {
        self.narrow(v, color_mask(c));
        let mut queue = vec![v];
        while let Some(x) = queue.pop() {
            let color = match self.masks[x as usize] {
                m if mask_len(m) == 1 => mask_colors(m).next().unwrap(),
                _ => continue,
            };
            for &w in g.neighbors(x) {
                let m = self.masks[w as usize];
                if m & color_mask(color) != 0 {
                    let new = m & !color_mask(color);
                    if new == 0 {
                        return false;
                    }
                    self.narrow(w, new);
                    if mask_len(new) == 1 {
                        queue.push(w);
                    }
                }
            }
        }
        true
    }
}

fn build_residual(spec: &EnumSpec) -> Residual {
    let n = spec.g.vertex_count();
    let mut in_seed = vec![false; n];
    for &(v, _) in &spec.fixed {
        in_seed[v as usize] = true;
    }
    for &v in &spec.order {
        in_seed[v as usize] = true;
    }
    let vertices: Vec<u32> = (0..n as u32).filter(|&v| !in_seed[v as usize]).collect();
    let (graph, _) = induced_subgraph(spec.g, &vertices);
    Residual { vertices, graph }
}

fn initial_state(spec: &EnumSpec) -> Option<State> {
    let n = spec.g.vertex_count();
    let mut state = State {
        masks: vec![ALL_COLORS; n],
        trail: Vec::new(),
    };
    for &v in &spec.order {
        state.masks[v as usize] &= spec.allowed;
        if state.masks[v as usize] == 0 {
            return None;
        }
    }
    for &(v, c) in &spec.fixed {
        if state.masks[v as usize] & color_mask(c) == 0 {
            return None;
        }
        if !state.assign(spec.g, v, c) {
            return None;
        }
    }
    Some(state)
}

/// Extends a complete seed coloring by list-2-coloring the residual
/// vertices under the propagated masks.
fn try_extend(ctx: &SearchCtx, state: &State) -> Result<Option<Coloring>, SolveError> {
    if let Some(deadline) = ctx.deadline {
        if Instant::now() >= deadline {
            return Err(SolveError::Timeout);
        }
    }
    let masks: Vec<u8> = ctx
        .residual
        .vertices
        .iter()
        .map(|&v| state.masks[v as usize])
        .collect();
    for (&v, &m) in ctx.residual.vertices.iter().zip(&masks) {
        if mask_len(m) == 3 {
            return Err(SolveError::InternalInvariant(format!(
                "residual vertex {v} is unconstrained; the seed set does not dominate it"
            )));
        }
    }
    let lists = ColorLists::from_masks(masks);
    let sub = list2_solve(&ctx.residual.graph, &lists)?;
    let Some(rc) = sub else {
        return Ok(None);
    };
    let mut full = Coloring::unassigned(ctx.spec.g.vertex_count());
    for &(v, c) in &ctx.spec.fixed {
        full.set(v, c);
    }
    for &v in &ctx.spec.order {
        full.set(v, mask_colors(state.masks[v as usize]).next().unwrap());
    }
    for (i, &v) in ctx.residual.vertices.iter().enumerate() {
        full.set(v, rc.get(i as u32).unwrap());
    }
    Ok(Some(full))
}

fn dfs(
    ctx: &mut SearchCtx,
    state: &mut State,
    depth: usize,
    max_used: u8,
    count: &mut u64,
) -> Result<Option<Coloring>, SolveError> {
    ctx.tick = ctx.tick.wrapping_add(1);
    if ctx.tick & 0xff == 0 {
        if let Some(deadline) = ctx.deadline {
            if Instant::now() >= deadline {
                return Err(SolveError::Timeout);
            }
        }
        if let Some(cancel) = ctx.cancel {
            if cancel.load(Ordering::Relaxed) {
                return Ok(None);
            }
        }
    }
    if depth == ctx.spec.order.len() {
        *count += 1;
        return try_extend(ctx, state);
    }
    let v = ctx.spec.order[depth];
    for c in mask_colors(state.masks[v as usize]) {
        if ctx.spec.cap_symmetry && c > max_used + 1 {
            break; // colors ascend, nothing further is admissible
        }
        let mark = state.mark();
        if state.assign(ctx.spec.g, v, c) {
            if let Some(sol) = dfs(ctx, state, depth + 1, max_used.max(c), count)? {
                return Ok(Some(sol));
            }
        }
        state.undo_to(mark);
    }
    Ok(None)
}

/// Collects surviving partial assignments of the first `depth` decision
/// vertices, used to partition the search for parallel workers.
fn collect_prefixes(spec: &EnumSpec, depth: usize) -> Vec<Vec<u8>> {
    let mut prefixes = Vec::new();
    let Some(mut state) = initial_state(spec) else {
        return prefixes;
    };
    let mut stack: Vec<u8> = Vec::new();
    fn rec(
        spec: &EnumSpec,
        state: &mut State,
        stack: &mut Vec<u8>,
        depth: usize,
        max_used: u8,
        out: &mut Vec<Vec<u8>>,
    ) {
        if stack.len() == depth {
            out.push(stack.clone());
            return;
        }
        let v = spec.order[stack.len()];
        for c in mask_colors(state.masks[v as usize]) {
            if spec.cap_symmetry && c > max_used + 1 {
                break;
            }
            let mark = state.mark();
            if state.assign(spec.g, v, c) {
                stack.push(c);
                rec(spec, state, stack, depth, max_used.max(c), out);
                stack.pop();
            }
            state.undo_to(mark);
        }
    }
    rec(spec, &mut state, &mut stack, depth, 0, &mut prefixes);
    prefixes
}

pub(crate) fn run(spec: &EnumSpec, opts: &SolveOpts) -> Result<EnumOutcome, SolveError> {
    let residual = build_residual(spec);
    let workers = if opts.deterministic { 1 } else { opts.parallel.max(1) };
    if workers == 1 {
        let Some(mut state) = initial_state(spec) else {
            return Ok(EnumOutcome {
                solution: None,
                enumeration_count: 0,
            });
        };
        let mut ctx = SearchCtx {
            spec,
            residual: &residual,
            deadline: opts.deadline,
            cancel: None,
            tick: 0,
        };
        let mut count = 0u64;
        let solution = dfs(&mut ctx, &mut state, 0, 0, &mut count)?;
        return Ok(EnumOutcome {
            solution,
            enumeration_count: count,
        });
    }

    // Parallel: partition by prefixes deep enough to feed every worker.
    let mut depth = 0usize;
    let mut width = 1usize;
    while depth < spec.order.len() && width < 4 * workers {
        width *= mask_len(spec.allowed).max(2);
        depth += 1;
    }
    let prefixes = collect_prefixes(spec, depth);
    if prefixes.is_empty() {
        return Ok(EnumOutcome {
            solution: None,
            enumeration_count: 0,
        });
    }
    let next = AtomicU64::new(0);
    let total = AtomicU64::new(0);
    let cancel = AtomicBool::new(false);
    let found: Mutex<Option<Coloring>> = Mutex::new(None);
    let failure: Mutex<Option<SolveError>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local = 0u64;
                loop {
                    if cancel.load(Ordering::Relaxed) {
                        break;
                    }
                    let idx = next.fetch_add(1, Ordering::Relaxed) as usize;
                    if idx >= prefixes.len() {
                        break;
                    }
                    let prefix = &prefixes[idx];
                    let Some(mut state) = initial_state(spec) else {
                        break;
                    };
                    let mut ok = true;
                    let mut max_used = 0u8;
                    for (i, &c) in prefix.iter().enumerate() {
                        if !state.assign(spec.g, spec.order[i], c) {
                            ok = false;
                            break;
                        }
                        max_used = max_used.max(c);
                    }
                    if !ok {
                        continue;
                    }
                    let mut ctx = SearchCtx {
                        spec,
                        residual: &residual,
                        deadline: opts.deadline,
                        cancel: Some(&cancel),
                        tick: 0,
                    };
                    match dfs(&mut ctx, &mut state, prefix.len(), max_used, &mut local) {
                        Ok(Some(sol)) => {
                            let mut slot = found.lock().unwrap();
                            if slot.is_none() {
                                *slot = Some(sol);
                            }
                            cancel.store(true, Ordering::Relaxed);
                            break;
                        }
                        Ok(None) => {}
                        Err(e) => {
                            let mut slot = failure.lock().unwrap();
                            if slot.is_none() {
                                *slot = Some(e);
                            }
                            cancel.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                }
                total.fetch_add(local, Ordering::Relaxed);
            });
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(EnumOutcome {
        solution: found.into_inner().unwrap(),
        enumeration_count: total.load(Ordering::Relaxed),
    })
}
