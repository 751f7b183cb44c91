//! 2SAT decision and model construction, list-2-coloring of graphs encoded
//! as 2SAT, and a small brute-force CNF oracle for cross-checks.

use thiserror::Error;

use crate::graph::Graph;
use crate::solver::Coloring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("variable index {index} out of range (variable count {count})")]
    VariableOutOfRange { index: u32, count: usize },
    #[error("vertex {vertex} has a color list of size {size}; expected 1 or 2")]
    BadListSize { vertex: u32, size: usize },
    #[error("brute-force guard exceeded: {0} variables (limit {1})")]
    GuardExceeded(usize, usize),
}

/// Boolean literal: a variable index and a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: u32) -> Literal {
        Literal { var, positive: false }
    }

    /// Parses DIMACS-style encoding: +k is variable k−1 positive, −k negative.
    pub fn from_dimacs(lit: i64) -> Literal {
        Literal {
            var: (lit.unsigned_abs() - 1) as u32,
            positive: lit > 0,
        }
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        assignment[self.var as usize] == self.positive
    }
}

/// 2-CNF instance: exactly two literals per clause.
#[derive(Debug, Clone, Default)]
pub struct TwoSatInstance {
    pub variable_count: usize,
    pub clauses: Vec<(Literal, Literal)>,
}

impl TwoSatInstance {
    pub fn new(variable_count: usize) -> TwoSatInstance {
        TwoSatInstance {
            variable_count,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, a: Literal, b: Literal) {
        self.clauses.push((a, b));
    }
}

/// 3-CNF formula: exactly three literals per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> CnfFormula {
        CnfFormula {
            variable_count,
            clauses,
        }
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }
}

/// Iterative Tarjan SCC over the implication graph (2 nodes per variable).
/// Returns the SCC index per node; indices are assigned in reverse
/// topological order of the condensation.
fn tarjan_scc(adj: &[Vec<u32>]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let n = adj.len();
    let mut scc = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut order = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut timer = 0u32;
    let mut scc_count = 0u32;

    for start in 0..n as u32 {
        if order[start as usize] != UNSET {
            continue;
        }
        call.push((start, 0));
        order[start as usize] = timer;
        low[start as usize] = timer;
        timer += 1;
        stack.push(start);
        on_stack[start as usize] = true;
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei < adj[v as usize].len() {
                let w = adj[v as usize][*ei];
                *ei += 1;
                if order[w as usize] == UNSET {
                    order[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(order[w as usize]);
                }
            } else {
                if low[v as usize] == order[v as usize] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        scc[w as usize] = scc_count;
                        if w == v {
                            break;
                        }
                    }
                    scc_count += 1;
                }
                call.pop();
                if let Some(&mut (p, _)) = call.last_mut() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                }
            }
        }
    }
    scc
}

/// Solves a 2SAT instance; returns a satisfying assignment or `None` iff
/// unsatisfiable. Deterministic for a fixed input.
pub fn twosat_solve(inst: &TwoSatInstance) -> Result<Option<Vec<bool>>, SatError> {
    let n = inst.variable_count;
    let node = |l: Literal| -> usize { (l.var as usize) * 2 + usize::from(!l.positive) };
    let negate = |l: Literal| Literal {
        var: l.var,
        positive: !l.positive,
    };
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); 2 * n];
    for &(a, b) in &inst.clauses {
        for l in [a, b] {
            if l.var as usize >= n {
                return Err(SatError::VariableOutOfRange {
                    index: l.var,
                    count: n,
                });
            }
        }
        // (a or b): ¬a -> b, ¬b -> a.
        adj[node(negate(a))].push(node(b) as u32);
        adj[node(negate(b))].push(node(a) as u32);
    }
    let scc = tarjan_scc(&adj);
    let mut assignment = vec![false; n];
    for v in 0..n {
        let pos = scc[2 * v];
        let neg = scc[2 * v + 1];
        if pos == neg {
            return Ok(None);
        }
        // Tarjan numbers sink components first; pick the literal whose
        // component comes earlier (later in topological order).
        assignment[v] = pos < neg;
    }
    Ok(Some(assignment))
}

/// Per-vertex allowed-color subsets of {1,2,3}, stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLists {
    masks: Vec<u8>,
}

pub const ALL_COLORS: u8 = 0b1110;

pub fn color_mask(color: u8) -> u8 {
    1 << color
}

pub fn mask_len(mask: u8) -> usize {
    mask.count_ones() as usize
}

/// Colors of a mask in ascending order.
pub fn mask_colors(mask: u8) -> impl Iterator<Item = u8> {
    (1..=3u8).filter(move |&c| mask & color_mask(c) != 0)
}

impl ColorLists {
    /// All vertices start with the full {1,2,3} list.
    pub fn full(n: usize) -> ColorLists {
        ColorLists {
            masks: vec![ALL_COLORS; n],
        }
    }

    pub fn from_masks(masks: Vec<u8>) -> ColorLists {
        ColorLists { masks }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, v: u32) -> u8 {
        self.masks[v as usize]
    }

    pub fn set_mask(&mut self, v: u32, mask: u8) {
        self.masks[v as usize] = mask;
    }

    pub fn remove_color(&mut self, v: u32, color: u8) {
        self.masks[v as usize] &= !color_mask(color);
    }

    pub fn list_size(&self, v: u32) -> usize {
        mask_len(self.masks[v as usize])
    }
}

/// Proper coloring of `g` respecting per-vertex lists of size 1 or 2, or
/// `None` iff no such coloring exists.
///
/// Encoding: singleton lists are unit-propagated first; each remaining
/// size-2 list gets one boolean (true = the smaller color of the list); for
/// every edge and every color both endpoints could still share, one clause
/// forbids the simultaneous choice.
pub fn list2_solve(g: &Graph, lists: &ColorLists) -> Result<Option<Coloring>, SatError> {
    let n = g.vertex_count();
    assert_eq!(lists.len(), n, "lists must cover every vertex");
    let mut masks: Vec<u8> = (0..n as u32).map(|v| lists.mask(v)).collect();
    for v in 0..n as u32 {
        let size = mask_len(masks[v as usize]);
        if size == 0 || size == 3 {
            return Err(SatError::BadListSize { vertex: v, size });
        }
    }

    // Unit propagation on singleton lists.
    let mut queue: Vec<u32> = (0..n as u32)
        .filter(|&v| mask_len(masks[v as usize]) == 1)
        .collect();
    while let Some(v) = queue.pop() {
        let color = mask_colors(masks[v as usize]).next().unwrap();
        for &w in g.neighbors(v) {
            let m = masks[w as usize];
            if m & color_mask(color) != 0 {
                let new = m & !color_mask(color);
                if new == 0 {
                    return Ok(None);
                }
                masks[w as usize] = new;
                if mask_len(new) == 1 {
                    queue.push(w);
                }
            }
        }
    }

    // Boolean variable per remaining 2-list vertex.
    let mut var_of = vec![u32::MAX; n];
    let mut vars = Vec::new();
    for v in 0..n as u32 {
        if mask_len(masks[v as usize]) == 2 {
            var_of[v as usize] = vars.len() as u32;
            vars.push(v);
        }
    }
    let mut inst = TwoSatInstance::new(vars.len());
    // Literal meaning "vertex v is NOT colored c".
    let not_color = |v: u32, c: u8, masks: &[u8], var_of: &[u32]| -> Literal {
        let first = mask_colors(masks[v as usize]).next().unwrap();
        if c == first {
            Literal::neg(var_of[v as usize])
        } else {
            Literal::pos(var_of[v as usize])
        }
    };
    for (u, w) in g.edges() {
        if var_of[u as usize] == u32::MAX || var_of[w as usize] == u32::MAX {
            continue; // propagation already separated singleton pairs
        }
        let shared = masks[u as usize] & masks[w as usize];
        for c in mask_colors(shared) {
            inst.add_clause(not_color(u, c, &masks, &var_of), not_color(w, c, &masks, &var_of));
        }
    }
    let model = match twosat_solve(&inst)? {
        Some(m) => m,
        None => return Ok(None),
    };
    let mut coloring = Coloring::unassigned(n);
    for v in 0..n as u32 {
        let m = masks[v as usize];
        let color = if mask_len(m) == 1 {
            mask_colors(m).next().unwrap()
        } else {
            let mut it = mask_colors(m);
            let first = it.next().unwrap();
            let second = it.next().unwrap();
            if model[var_of[v as usize] as usize] {
                first
            } else {
                second
            }
        };
        coloring.set(v, color);
    }
    Ok(Some(coloring))
}

pub const BRUTE_FORCE_VAR_LIMIT: usize = 25;

/// Lexicographically first satisfying assignment of a 3-CNF formula
/// (assignments ordered as (x1,...,xn) tuples with false < true), or `None`.
pub fn cnf_brute_force_sat(f: &CnfFormula) -> Result<Option<Vec<bool>>, SatError> {
    let n = f.variable_count;
    if n > BRUTE_FORCE_VAR_LIMIT {
        return Err(SatError::GuardExceeded(n, BRUTE_FORCE_VAR_LIMIT));
    }
    for clause in &f.clauses {
        for l in clause {
            if l.var as usize >= n {
                return Err(SatError::VariableOutOfRange {
                    index: l.var,
                    count: n,
                });
            }
        }
    }
    for bits in 0..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| (bits >> (n - 1 - i)) & 1 == 1).collect();
        if f.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
