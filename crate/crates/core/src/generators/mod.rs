//! Generators for the graph families the solvers are exercised against:
//! the extremal diameter-2 family, the 3SAT reduction families with their
//! clause gadgets and the constructive coloring embed / assignment extract,
//! the three amplification families, and a seeded random-instance sampler
//! for the test suites.

mod gadget;

pub use gadget::{find_clause_gadget, ClauseGadget};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{connected_components, metrics, Graph};
use crate::reduce::{is_irreducible, reduce_to_irreducible, ReduceOutcome};
use crate::sat::{CnfFormula, Literal};
use crate::solver::{find_articulation_neighborhood, Coloring};

const RED: u8 = 1;
const BLUE: u8 = 2;
const GREEN: u8 = 3;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("k = {0} is too small; the construction needs k >= 3")]
    KTooSmall(usize),
    #[error("epsilon {eps} outside [{lo}, {hi})")]
    EpsOutOfRange { eps: f64, lo: f64, hi: f64 },
    #[error("clause {clause} does not use three distinct variables")]
    RepeatedVariable { clause: usize },
    #[error("clause {clause} references a variable outside the declared count")]
    VariableOutOfRange { clause: usize },
    #[error("no 8-vertex 10-edge graph satisfies the clause-gadget contract")]
    GadgetNotFound,
    #[error("layout is not a {0} layout")]
    LayoutMismatch(&'static str),
    #[error("formula does not match the layout it was generated with")]
    FormulaMismatch,
    #[error("assignment does not satisfy the formula")]
    UnsatisfyingAssignment,
    #[error("coloring is not a proper total coloring of the generated graph")]
    ImproperColoring,
    #[error("row pair {row} has no fully red side; extraction contract violated")]
    RedLineDichotomy { row: usize },
    #[error("base graph must be connected")]
    BaseNotConnected,
    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),
}

/// Ceiling with a tolerance for floating-point representations of exact
/// integers (m^1, n^0 and friends must not round up).
fn ceil_tol(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// Derived amplification parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationParams {
    pub eps: f64,
    pub eps0: f64,
    pub k0: usize,
}

impl AmplificationParams {
    /// eps in [1/2, 1); eps0 = eps/(1-eps); k0 = ceil(m^eps0).
    pub fn for_h1(m: usize, eps: f64) -> Result<AmplificationParams, GenError> {
        if !(0.5..1.0).contains(&eps) {
            return Err(GenError::EpsOutOfRange { eps, lo: 0.5, hi: 1.0 });
        }
        let eps0 = eps / (1.0 - eps);
        let k0 = ceil_tol((m as f64).powf(eps0)).max(1);
        Ok(AmplificationParams { eps, eps0, k0 })
    }

    /// eps in [0, 1/2); eps0 = eps/(1-eps); k0 = ceil(n^eps0).
    pub fn for_g2(n: usize, eps: f64) -> Result<AmplificationParams, GenError> {
        if !(0.0..0.5).contains(&eps) {
            return Err(GenError::EpsOutOfRange { eps, lo: 0.0, hi: 0.5 });
        }
        let eps0 = eps / (1.0 - eps);
        let k0 = ceil_tol((n as f64).powf(eps0)).max(1);
        Ok(AmplificationParams { eps, eps0, k0 })
    }

    /// eps in [1/3, 1/2); eps0 = 1/eps - 2; k0 = ceil(m^(1+eps0)) before
    /// the column floor is applied.
    pub fn for_h2(m: usize, eps: f64) -> Result<AmplificationParams, GenError> {
        if !((1.0 / 3.0)..0.5).contains(&eps) {
            return Err(GenError::EpsOutOfRange { eps, lo: 1.0 / 3.0, hi: 0.5 });
        }
        let eps0 = 1.0 / eps - 2.0;
        let k0 = ceil_tol((m as f64).powf(1.0 + eps0)).max(1);
        Ok(AmplificationParams { eps, eps0, k0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatrixTag {
    Gnm,
    Hphi,
    H2,
}

#[derive(Debug, Clone)]
struct MatrixLayout {
    tag: MatrixTag,
    nvars: usize,
    m: usize,
    rows: usize,
    columns: usize,
    clauses: Vec<[Literal; 3]>,
    amp: Option<AmplificationParams>,
}

#[derive(Debug, Clone)]
struct H1Layout {
    nvars: usize,
    m: usize,
    rows: usize,
    clauses: Vec<[Literal; 3]>,
    amp: AmplificationParams,
}

#[derive(Debug, Clone)]
struct G2Layout {
    base_n: usize,
    amp: AmplificationParams,
}

#[derive(Debug, Clone)]
enum Family {
    Gn { k: usize },
    Matrix(MatrixLayout),
    H1(H1Layout),
    G2(G2Layout),
}

/// Canonical vertex numbering of a generated graph: resolves every named
/// role (apex, column vertices, matrix cells, gadget vertices, the
/// amplification blocks) to a vertex id, bijectively onto 0..vertex_count.
#[derive(Debug, Clone)]
pub struct GeneratorLayout {
    family: Family,
}

impl GeneratorLayout {
    pub fn family_tag(&self) -> &'static str {
        match &self.family {
            Family::Gn { .. } => "gn",
            Family::Matrix(m) => match m.tag {
                MatrixTag::Gnm => "gnm",
                MatrixTag::Hphi => "hphi",
                MatrixTag::H2 => "h2",
            },
            Family::H1(_) => "h1",
            Family::G2(_) => "g2",
        }
    }

    pub fn vertex_count(&self) -> usize {
        match &self.family {
            Family::Gn { k } => 4 * k * k + 1,
            Family::Matrix(m) => 2 * m.rows * m.columns + m.columns + 1,
            Family::H1(h) => 2 * h.rows * 8 * h.m + 8 * h.m * 2 * h.amp.k0 + 1,
            Family::G2(g) => g.base_n + 2 * g.base_n * g.amp.k0 + 1,
        }
    }

    /// The apex vertex.
    pub fn v0(&self) -> u32 {
        match &self.family {
            Family::G2(g) => (g.base_n + 2 * g.base_n * g.amp.k0) as u32,
            _ => 0,
        }
    }

    /// Matrix cell of the extremal family, 1-based row and column.
    pub fn gn_cell(&self, i: usize, j: usize) -> u32 {
        match &self.family {
            Family::Gn { k } => ((i - 1) * 2 * k + j) as u32,
            _ => panic!("gn_cell on a non-gn layout"),
        }
    }

    fn matrix(&self) -> Option<&MatrixLayout> {
        match &self.family {
            Family::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// Column vertex v_j, 1-based.
    pub fn vcol(&self, j: usize) -> u32 {
        let m = self.matrix().expect("column vertices exist on matrix layouts");
        debug_assert!((1..=m.columns).contains(&j));
        j as u32
    }

    /// Matrix cell u_{i,j}, 1-based.
    pub fn u(&self, i: usize, j: usize) -> u32 {
        match &self.family {
            Family::Matrix(m) => (m.columns + (i - 1) * m.columns + (j - 1) + 1) as u32,
            Family::H1(h) => {
                let c = 8 * h.m;
                (1 + c * 2 * h.amp.k0 + (i - 1) * c + (j - 1)) as u32
            }
            _ => panic!("u on a layout without matrix cells"),
        }
    }

    /// Matrix cell w_{i,j}, 1-based.
    pub fn w(&self, i: usize, j: usize) -> u32 {
        match &self.family {
            Family::Matrix(m) => {
                (m.columns + m.rows * m.columns + (i - 1) * m.columns + (j - 1) + 1) as u32
            }
            Family::H1(h) => {
                let c = 8 * h.m;
                (1 + c * 2 * h.amp.k0 + h.rows * c + (i - 1) * c + (j - 1)) as u32
            }
            _ => panic!("w on a layout without matrix cells"),
        }
    }

    fn clauses(&self) -> &[[Literal; 3]] {
        match &self.family {
            Family::Matrix(m) => &m.clauses,
            Family::H1(h) => &h.clauses,
            _ => &[],
        }
    }

    /// Gadget vertex g_{k,p} for clause k (1-based) and position p (1..=8).
    pub fn gadget_vertex(&self, k: usize, p: usize) -> u32 {
        let clauses = self.clauses();
        let nvars = match &self.family {
            Family::Matrix(m) => m.nvars,
            Family::H1(h) => h.nvars,
            _ => panic!("gadget roles exist only on formula layouts"),
        };
        let column = 8 * k + 1 - p;
        if p <= 3 {
            let lit = clauses[k - 1][p - 1];
            let row = lit.var as usize + 1;
            if lit.positive {
                self.u(row, column)
            } else {
                self.w(row, column)
            }
        } else {
            self.u(nvars + 5 * k + 4 - p, column)
        }
    }

    /// Amplification block vertex a_{j,p} (H1: per column; G2: per base
    /// vertex), 1-based indices.
    pub fn block_a(&self, j: usize, p: usize) -> u32 {
        match &self.family {
            Family::H1(h) => (1 + (j - 1) * 2 * h.amp.k0 + (p - 1)) as u32,
            Family::G2(g) => (g.base_n + (j - 1) * 2 * g.amp.k0 + (p - 1)) as u32,
            _ => panic!("block roles exist only on amplification layouts"),
        }
    }

    pub fn block_b(&self, j: usize, p: usize) -> u32 {
        match &self.family {
            Family::H1(h) => (1 + (j - 1) * 2 * h.amp.k0 + h.amp.k0 + (p - 1)) as u32,
            Family::G2(g) => (g.base_n + (j - 1) * 2 * g.amp.k0 + g.amp.k0 + (p - 1)) as u32,
            _ => panic!("block roles exist only on amplification layouts"),
        }
    }

    pub fn amplification(&self) -> Option<AmplificationParams> {
        match &self.family {
            Family::Matrix(m) => m.amp,
            Family::H1(h) => Some(h.amp),
            Family::G2(g) => Some(g.amp),
            Family::Gn { .. } => None,
        }
    }

    /// Key generation parameters as (name, value) pairs.
    pub fn params(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        match &self.family {
            Family::Gn { k } => out.push(("k".into(), k.to_string())),
            Family::Matrix(m) => {
                out.push(("n".into(), m.nvars.to_string()));
                out.push(("m".into(), m.m.to_string()));
                out.push(("columns".into(), m.columns.to_string()));
                if let Some(a) = m.amp {
                    out.push(("eps".into(), a.eps.to_string()));
                    out.push(("eps0".into(), a.eps0.to_string()));
                }
            }
            Family::H1(h) => {
                out.push(("n".into(), h.nvars.to_string()));
                out.push(("m".into(), h.m.to_string()));
                out.push(("eps".into(), h.amp.eps.to_string()));
                out.push(("eps0".into(), h.amp.eps0.to_string()));
                out.push(("k0".into(), h.amp.k0.to_string()));
            }
            Family::G2(g) => {
                out.push(("base_n".into(), g.base_n.to_string()));
                out.push(("eps".into(), g.amp.eps.to_string()));
                out.push(("eps0".into(), g.amp.eps0.to_string()));
                out.push(("k0".into(), g.amp.k0.to_string()));
            }
        }
        out
    }

    /// Gadget-role aliases g{k}_{p}: names for matrix cells that carry a
    /// clause gadget, resolved through the canonical numbering.
    pub fn gadget_roles(&self) -> Vec<(String, u32)> {
        let mut out = Vec::new();
        for k in 1..=self.clauses().len() {
            for p in 1..=8 {
                out.push((format!("g{k}_{p}"), self.gadget_vertex(k, p)));
            }
        }
        out
    }

    /// Every named role with its vertex id; a bijection onto the vertex
    /// range, in id order.
    pub fn roles(&self) -> Vec<(String, u32)> {
        let mut out = Vec::new();
        match &self.family {
            Family::Gn { k } => {
                out.push(("v0".into(), 0));
                for i in 1..=2 * k {
                    for j in 1..=2 * k {
                        out.push((format!("v{i}_{j}"), self.gn_cell(i, j)));
                    }
                }
            }
            Family::Matrix(m) => {
                out.push(("v0".into(), 0));
                for j in 1..=m.columns {
                    out.push((format!("v{j}"), self.vcol(j)));
                }
                for i in 1..=m.rows {
                    for j in 1..=m.columns {
                        out.push((format!("u{i}_{j}"), self.u(i, j)));
                    }
                }
                for i in 1..=m.rows {
                    for j in 1..=m.columns {
                        out.push((format!("w{i}_{j}"), self.w(i, j)));
                    }
                }
            }
            Family::H1(h) => {
                out.push(("v0".into(), 0));
                for j in 1..=8 * h.m {
                    for p in 1..=h.amp.k0 {
                        out.push((format!("a{j}_{p}"), self.block_a(j, p)));
                    }
                    for p in 1..=h.amp.k0 {
                        out.push((format!("b{j}_{p}"), self.block_b(j, p)));
                    }
                }
                for i in 1..=h.rows {
                    for j in 1..=8 * h.m {
                        out.push((format!("u{i}_{j}"), self.u(i, j)));
                    }
                }
                for i in 1..=h.rows {
                    for j in 1..=8 * h.m {
                        out.push((format!("w{i}_{j}"), self.w(i, j)));
                    }
                }
            }
            Family::G2(g) => {
                for i in 1..=g.base_n {
                    out.push((format!("v{i}"), (i - 1) as u32));
                }
                for i in 1..=g.base_n {
                    for p in 1..=g.amp.k0 {
                        out.push((format!("a{i}_{p}"), self.block_a(i, p)));
                    }
                    for p in 1..=g.amp.k0 {
                        out.push((format!("b{i}_{p}"), self.block_b(i, p)));
                    }
                }
                out.push(("v0".into(), self.v0()));
            }
        }
        out.sort_by_key(|&(_, id)| id);
        out
    }
}

/// Extremal diameter-2 family: 4k^2+1 vertices arranged as a 2k x 2k
/// matrix plus an apex adjacent to the right half. Irreducible,
/// triangle-free, 3-colorable, with minimum degree and minimum dominating
/// set both on the order of sqrt(n). Requires k >= 3.
pub fn gen_gn(k: usize) -> Result<(Graph, GeneratorLayout), GenError> {
    if k < 3 {
        return Err(GenError::KTooSmall(k));
    }
    let layout = GeneratorLayout {
        family: Family::Gn { k },
    };
    let n = 4 * k * k + 1;
    let cell = |i: usize, j: usize| layout.gn_cell(i, j);
    let mut edges = Vec::new();
    // Apex to every cell in the right half (columns k+1..=2k).
    for i in 1..=2 * k {
        for j in k + 1..=2 * k {
            edges.push((0, cell(i, j)));
        }
    }
    // Paired columns j and 2k+1-j: complete bipartite minus same-row pairs.
    for j in 1..=k {
        for i1 in 1..=2 * k {
            for i2 in 1..=2 * k {
                if i1 != i2 {
                    edges.push((cell(i1, j), cell(i2, 2 * k + 1 - j)));
                }
            }
        }
    }
    // Paired rows i and 2k+1-i: complete bipartite minus same-column pairs
    // in the left half and minus all pairs inside the right half.
    for i in 1..=k {
        for j in 1..=2 * k {
            for l in 1..=2 * k {
                if j == l && j <= k {
                    continue;
                }
                if j > k && l > k {
                    continue;
                }
                edges.push((cell(i, j), cell(2 * k + 1 - i, l)));
            }
        }
    }
    let g = Graph::build(n, &edges).expect("construction stays in range");
    Ok((g, layout))
}

/// The explicit proper 3-coloring of the extremal family: left-top block
/// blue, left-bottom block green, right half red, apex green.
pub fn gn_canonical_coloring(layout: &GeneratorLayout) -> Coloring {
    let k = match &layout.family {
        Family::Gn { k } => *k,
        _ => panic!("gn coloring needs a gn layout"),
    };
    let mut c = Coloring::unassigned(layout.vertex_count());
    c.set(0, GREEN);
    for i in 1..=2 * k {
        for j in 1..=2 * k {
            let color = if j > k {
                RED
            } else if i <= k {
                BLUE
            } else {
                GREEN
            };
            c.set(layout.gn_cell(i, j), color);
        }
    }
    c
}

fn validate_formula(f: &CnfFormula) -> Result<(), GenError> {
    for (idx, clause) in f.clauses.iter().enumerate() {
        let mut vars = [clause[0].var, clause[1].var, clause[2].var];
        for &v in &vars {
            if v as usize >= f.variable_count {
                return Err(GenError::VariableOutOfRange { clause: idx + 1 });
            }
        }
        vars.sort_unstable();
        if vars[0] == vars[1] || vars[1] == vars[2] {
            return Err(GenError::RepeatedVariable { clause: idx + 1 });
        }
    }
    Ok(())
}

/// Matrix-family edges: apex-to-columns, column vertices to their column
/// cells, row pairs as complete bipartite minus the perfect matching, and
/// one clause gadget per clause.
fn matrix_edges(layout: &GeneratorLayout) -> Result<Vec<(u32, u32)>, GenError> {
    let m = layout.matrix().expect("matrix layout");
    let mut edges = Vec::new();
    for j in 1..=m.columns {
        edges.push((layout.v0(), layout.vcol(j)));
        for i in 1..=m.rows {
            edges.push((layout.vcol(j), layout.u(i, j)));
            edges.push((layout.vcol(j), layout.w(i, j)));
        }
    }
    for i in 1..=m.rows {
        for j in 1..=m.columns {
            for l in 1..=m.columns {
                if j != l {
                    edges.push((layout.u(i, j), layout.w(i, l)));
                }
            }
        }
    }
    if !m.clauses.is_empty() {
        let gadget = find_clause_gadget().ok_or(GenError::GadgetNotFound)?;
        for k in 1..=m.clauses.len() {
            for &(a, b) in &gadget.edges {
                edges.push((
                    layout.gadget_vertex(k, a as usize + 1),
                    layout.gadget_vertex(k, b as usize + 1),
                ));
            }
        }
    }
    Ok(edges)
}

/// Formula-independent reduction skeleton on `nvars` variables and `m`
/// clauses: 2(n+5m)*8m + 8m + 1 vertices, diameter 3, radius 2,
/// irreducible, triangle-free, always 3-colorable.
pub fn gen_gnm(nvars: usize, m: usize) -> (Graph, GeneratorLayout) {
    assert!(nvars >= 1 && m >= 1, "gen_gnm needs n >= 1 and m >= 1");
    let layout = GeneratorLayout {
        family: Family::Matrix(MatrixLayout {
            tag: MatrixTag::Gnm,
            nvars,
            m,
            rows: nvars + 5 * m,
            columns: 8 * m,
            clauses: Vec::new(),
            amp: None,
        }),
    };
    let edges = matrix_edges(&layout).expect("no gadgets requested");
    let g = Graph::build(layout.vertex_count(), &edges).expect("construction stays in range");
    (g, layout)
}

/// Reduction graph of a 3-CNF formula: the skeleton plus one 10-edge clause
/// gadget per clause. The formula is satisfiable iff the output is
/// 3-colorable. Clauses must use three distinct variables.
pub fn gen_hphi(f: &CnfFormula) -> Result<(Graph, GeneratorLayout), GenError> {
    validate_formula(f)?;
    let m = f.clauses.len();
    assert!(f.variable_count >= 1 && m >= 1, "gen_hphi needs n >= 1 and m >= 1");
    let layout = GeneratorLayout {
        family: Family::Matrix(MatrixLayout {
            tag: MatrixTag::Hphi,
            nvars: f.variable_count,
            m,
            rows: f.variable_count + 5 * m,
            columns: 8 * m,
            clauses: f.clauses.clone(),
            amp: None,
        }),
    };
    let edges = matrix_edges(&layout)?;
    let g = Graph::build(layout.vertex_count(), &edges).expect("construction stays in range");
    let base_edges = 8 * m + 8 * m * 2 * (f.variable_count + 5 * m)
        + (f.variable_count + 5 * m) * (64 * m * m - 8 * m);
    if g.edge_count() != base_edges + 10 * m {
        return Err(GenError::ConstructionInvariant(format!(
            "expected {} edges ({} skeleton + {} gadget), found {}",
            base_edges + 10 * m,
            base_edges,
            10 * m,
            g.edge_count()
        )));
    }
    Ok((g, layout))
}

fn require_hphi(layout: &GeneratorLayout) -> Result<&MatrixLayout, GenError> {
    match &layout.family {
        Family::Matrix(m) if m.tag == MatrixTag::Hphi => Ok(m),
        _ => Err(GenError::LayoutMismatch("hphi")),
    }
}

fn complement(color: u8) -> u8 {
    match color {
        BLUE => GREEN,
        GREEN => BLUE,
        _ => panic!("complement is defined for blue/green only"),
    }
}

/// Builds a proper 3-coloring of the reduction graph from a satisfying
/// assignment: the apex is red, each variable picks which of its two rows
/// is the all-red line, gadgets are colored by brute-force extension of
/// their attachment triple, and white-line cells take the complement of
/// their column vertex. Free choices are pinned to blue.
pub fn hphi_embed_coloring(
    layout: &GeneratorLayout,
    f: &CnfFormula,
    assignment: &[bool],
) -> Result<Coloring, GenError> {
    let m = require_hphi(layout)?;
    if m.nvars != f.variable_count || m.clauses != f.clauses {
        return Err(GenError::FormulaMismatch);
    }
    if assignment.len() != f.variable_count || !f.is_satisfied_by(assignment) {
        return Err(GenError::UnsatisfyingAssignment);
    }
    let gadget = find_clause_gadget().ok_or(GenError::GadgetNotFound)?;
    let rows = m.rows;
    let columns = m.columns;
    let n_vertices = layout.vertex_count();

    // row_red[i] = Some(true) when row l_i is the red line of pair i.
    let mut row_red: Vec<Option<bool>> = vec![None; rows + 1];
    for (i, &value) in assignment.iter().enumerate() {
        row_red[i + 1] = Some(!value);
    }
    let mut colors = vec![0u8; n_vertices];
    colors[layout.v0() as usize] = RED;
    let mut vcol_color = vec![0u8; columns + 1];

    for k in 1..=m.m {
        let ids: Vec<u32> = (1..=8).map(|p| layout.gadget_vertex(k, p)).collect();
        let mut triple = [0u8; 3];
        let mut reds = 0;
        for p in 1..=3 {
            let lit = m.clauses[k - 1][p - 1];
            let line_red = row_red[lit.var as usize + 1].expect("variable rows are decided");
            let on_red_line = if lit.positive { line_red } else { !line_red };
            if on_red_line {
                triple[p - 1] = RED;
                reds += 1;
            }
        }
        if reds == 3 {
            return Err(GenError::ConstructionInvariant(format!(
                "clause {k} is unsatisfied but the assignment passed the check"
            )));
        }
        if reds > 0 {
            for t in triple.iter_mut() {
                if *t == 0 {
                    *t = GREEN;
                }
            }
        } else {
            triple = [GREEN, GREEN, BLUE];
        }
        // Extend to the five interior vertices; guaranteed since the
        // attachments carry two distinct colors.
        let mut interior = None;
        'search: for code in 0..3u32.pow(5) {
            let mut cand = [0u8; 8];
            cand[..3].copy_from_slice(&triple);
            let mut rest = code;
            for slot in cand.iter_mut().skip(3) {
                *slot = (rest % 3) as u8 + 1;
                rest /= 3;
            }
            for &(a, b) in &gadget.edges {
                if cand[a as usize] == cand[b as usize] {
                    continue 'search;
                }
            }
            interior = Some(cand);
            break;
        }
        let gadget_colors = interior.ok_or_else(|| {
            GenError::ConstructionInvariant(format!(
                "gadget of clause {k} has no proper extension"
            ))
        })?;
        for p in 1..=8 {
            let c = gadget_colors[p - 1];
            colors[ids[p - 1] as usize] = c;
            let j = 8 * k + 1 - p;
            vcol_color[j] = if c == RED { BLUE } else { complement(c) };
            if p >= 4 {
                let row = m.nvars + 5 * k + 4 - p;
                row_red[row] = Some(c == RED);
            }
        }
    }

    for j in 1..=columns {
        colors[layout.vcol(j) as usize] = vcol_color[j];
    }
    for i in 1..=rows {
        let red_line_is_l = row_red[i].ok_or_else(|| {
            GenError::ConstructionInvariant(format!("row pair {i} was never decided"))
        })?;
        for j in 1..=columns {
            let u = layout.u(i, j) as usize;
            if colors[u] == 0 {
                colors[u] = if red_line_is_l {
                    RED
                } else {
                    complement(vcol_color[j])
                };
            }
            let w = layout.w(i, j) as usize;
            if colors[w] == 0 {
                colors[w] = if red_line_is_l {
                    complement(vcol_color[j])
                } else {
                    RED
                };
            }
        }
    }

    let mut out = Coloring::unassigned(n_vertices);
    for (v, &c) in colors.iter().enumerate() {
        if c == 0 {
            return Err(GenError::ConstructionInvariant(format!(
                "vertex {v} was never colored"
            )));
        }
        out.set(v as u32, c);
    }
    Ok(out)
}

/// Reads a satisfying assignment back out of a proper 3-coloring of the
/// reduction graph: the palette is canonicalized so the apex is red, each
/// row pair must have exactly one all-red side, and a variable is false
/// exactly when its positive row is the red one.
pub fn hphi_extract_assignment(
    layout: &GeneratorLayout,
    coloring: &Coloring,
) -> Result<Vec<bool>, GenError> {
    let m = require_hphi(layout)?;
    if coloring.len() != layout.vertex_count() || !coloring.is_total() {
        return Err(GenError::ImproperColoring);
    }
    for (a, b) in matrix_edges(layout)? {
        if coloring.get(a) == coloring.get(b) {
            return Err(GenError::ImproperColoring);
        }
    }
    let red = coloring.get(layout.v0()).unwrap();
    let mut assignment = vec![false; m.nvars];
    for i in 1..=m.rows {
        let l_red = (1..=m.columns).all(|j| coloring.get(layout.u(i, j)) == Some(red));
        let lp_red = (1..=m.columns).all(|j| coloring.get(layout.w(i, j)) == Some(red));
        if l_red == lp_red {
            return Err(GenError::RedLineDichotomy { row: i });
        }
        if i <= m.nvars {
            assignment[i - 1] = !l_red;
        }
    }
    let f = CnfFormula::new(m.nvars, m.clauses.clone());
    if !f.is_satisfied_by(&assignment) {
        return Err(GenError::ConstructionInvariant(
            "extracted assignment does not satisfy the formula".into(),
        ));
    }
    Ok(assignment)
}

/// First amplification: every column vertex is replaced by two blocks of
/// k0 vertices joined as a complete bipartite graph minus a perfect
/// matching; the apex attaches to both blocks and the column attaches to
/// the A block. Raises the minimum degree to Theta(m^eps0).
pub fn gen_h1(f: &CnfFormula, eps: f64) -> Result<(Graph, GeneratorLayout), GenError> {
    validate_formula(f)?;
    let m = f.clauses.len();
    assert!(f.variable_count >= 1 && m >= 1, "gen_h1 needs n >= 1 and m >= 1");
    let amp = AmplificationParams::for_h1(m, eps)?;
    let layout = GeneratorLayout {
        family: Family::H1(H1Layout {
            nvars: f.variable_count,
            m,
            rows: f.variable_count + 5 * m,
            clauses: f.clauses.clone(),
            amp,
        }),
    };
    let rows = f.variable_count + 5 * m;
    let columns = 8 * m;
    let k0 = amp.k0;
    let mut edges = Vec::new();
    for j in 1..=columns {
        for p in 1..=k0 {
            edges.push((layout.v0(), layout.block_a(j, p)));
            edges.push((layout.v0(), layout.block_b(j, p)));
            for q in 1..=k0 {
                if p != q {
                    edges.push((layout.block_a(j, p), layout.block_b(j, q)));
                }
            }
            for i in 1..=rows {
                edges.push((layout.block_a(j, p), layout.u(i, j)));
                edges.push((layout.block_a(j, p), layout.w(i, j)));
            }
        }
    }
    for i in 1..=rows {
        for j in 1..=columns {
            for l in 1..=columns {
                if j != l {
                    edges.push((layout.u(i, j), layout.w(i, l)));
                }
            }
        }
    }
    let gadget = find_clause_gadget().ok_or(GenError::GadgetNotFound)?;
    for k in 1..=m {
        for &(a, b) in &gadget.edges {
            edges.push((
                layout.gadget_vertex(k, a as usize + 1),
                layout.gadget_vertex(k, b as usize + 1),
            ));
        }
    }
    let g = Graph::build(layout.vertex_count(), &edges).expect("construction stays in range");
    Ok((g, layout))
}

/// Second amplification: attaches a complete-bipartite-minus-matching
/// block pair of size k0 to every vertex of the base graph plus a fresh
/// apex, preserving 3-colorability while lowering the relative minimum
/// degree. The base graph keeps its vertex ids.
pub fn gen_g2(base: &Graph, eps: f64) -> Result<(Graph, GeneratorLayout), GenError> {
    let n = base.vertex_count();
    let amp = AmplificationParams::for_g2(n, eps)?;
    if n == 0 || connected_components(base).len() != 1 {
        return Err(GenError::BaseNotConnected);
    }
    let layout = GeneratorLayout {
        family: Family::G2(G2Layout { base_n: n, amp }),
    };
    let k0 = amp.k0;
    let mut edges: Vec<(u32, u32)> = base.edges().collect();
    for i in 1..=n {
        let vi = (i - 1) as u32;
        for p in 1..=k0 {
            edges.push((vi, layout.block_a(i, p)));
            edges.push((layout.v0(), layout.block_a(i, p)));
            edges.push((layout.v0(), layout.block_b(i, p)));
            for q in 1..=k0 {
                if p != q {
                    edges.push((layout.block_a(i, p), layout.block_b(i, q)));
                }
            }
        }
    }
    let g = Graph::build(layout.vertex_count(), &edges).expect("construction stays in range");
    Ok((g, layout))
}

/// Third amplification: widens the reduction-graph matrix to
/// max(8m, ceil(m^(1+eps0))) columns, each new column bringing its own
/// column vertex; row pairs stay complete bipartite minus the perfect
/// matching and no new gadgets are added. For small m the column floor
/// makes the output coincide with the plain reduction graph.
pub fn gen_h2(f: &CnfFormula, eps: f64) -> Result<(Graph, GeneratorLayout), GenError> {
    validate_formula(f)?;
    let m = f.clauses.len();
    assert!(f.variable_count >= 1 && m >= 1, "gen_h2 needs n >= 1 and m >= 1");
    let amp = AmplificationParams::for_h2(m, eps)?;
    let columns = (8 * m).max(amp.k0);
    let layout = GeneratorLayout {
        family: Family::Matrix(MatrixLayout {
            tag: MatrixTag::H2,
            nvars: f.variable_count,
            m,
            rows: f.variable_count + 5 * m,
            columns,
            clauses: f.clauses.clone(),
            amp: Some(amp),
        }),
    };
    let edges = matrix_edges(&layout)?;
    let g = Graph::build(layout.vertex_count(), &edges).expect("construction stays in range");
    Ok((g, layout))
}

/// 7-vertex, 11-edge graph with two overlapping diamonds in which merging
/// the first diamond's non-adjacent pair (vertices 0 and 3) creates a K4:
/// the reason the reduction loop re-checks for a K4 after every merge.
pub fn merge_cascade_example() -> Graph {
    let edges = [
        (0, 1),
        (0, 2),
        (1, 2),
        (1, 3),
        (2, 3),
        (4, 5),
        (4, 6),
        (5, 6),
        (3, 5),
        (3, 6),
        (0, 4),
    ];
    Graph::build(7, &edges).unwrap()
}

/// Random-instance profiles for test suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleProfile {
    /// Erdős–Rényi style graph with at most 20 vertices.
    Small,
    /// Irreducible connected graph with diameter at most 2.
    Diam2,
    /// Irreducible diameter-2 graph with an articulation neighborhood.
    Artic,
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
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

fn sample_small(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(4..=20);
    let p = rng.gen_range(0.15..0.6);
    gnp(rng, n, p)
}

fn sample_diam2(rng: &mut ChaCha8Rng) -> Graph {
    for _ in 0..500 {
        let n = rng.gen_range(6..=14);
        let p = rng.gen_range(0.35..0.8);
        let mut g = gnp(rng, n, p);
        // Densify toward diameter 2, then reduce; retry on a K4.
        for _ in 0..10 {
            let reduced = match reduce_to_irreducible(&g) {
                ReduceOutcome::Irreducible { graph, .. } => graph,
                ReduceOutcome::K4Found { .. } => break,
            };
            if reduced.vertex_count() < 4 || connected_components(&reduced).len() != 1 {
                break;
            }
            let met = metrics(&reduced);
            match met.diameter {
                Some(d) if d <= 2 => return reduced,
                _ => {
                    // Connect the first far pair and try again.
                    let mut far = None;
                    'outer: for v in reduced.vertices() {
                        let dist = crate::graph::bfs_distances(&reduced, v).unwrap();
                        for w in reduced.vertices() {
                            if dist[w as usize].map_or(true, |d| d > 2) && v != w {
                                far = Some((v, w));
                                break 'outer;
                            }
                        }
                    }
                    match far {
                        Some((v, w)) => {
                            let mut edges: Vec<(u32, u32)> = reduced.edges().collect();
                            edges.push((v.min(w), v.max(w)));
                            g = Graph::build(reduced.vertex_count(), &edges).unwrap();
                        }
                        None => break,
                    }
                }
            }
        }
    }
    // Deterministic fallback: C5 is irreducible with diameter 2.
    Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
}

/// Hub instance: an apex 0, attachment vertices picking one vertex from
/// every component, and the components themselves beyond the apex's
/// closed neighborhood.
fn build_hub_instance(
    comps: &[Vec<(u32, u32)>],
    comp_sizes: &[usize],
    picks: &[Vec<u32>],
    paired: &[(usize, usize)],
) -> Graph {
    let w_count = picks.len();
    let mut offsets = Vec::new();
    let mut next = 1 + w_count as u32;
    for &size in comp_sizes {
        offsets.push(next);
        next += size as u32;
    }
    let mut edges = Vec::new();
    for w in 0..w_count as u32 {
        edges.push((0, 1 + w));
    }
    for (ci, comp_edges) in comps.iter().enumerate() {
        for &(a, b) in comp_edges {
            edges.push((offsets[ci] + a, offsets[ci] + b));
        }
    }
    for (w, pick) in picks.iter().enumerate() {
        for (ci, &vertex) in pick.iter().enumerate() {
            edges.push((1 + w as u32, offsets[ci] + vertex));
        }
    }
    for &(a, b) in paired {
        edges.push((1 + a as u32, 1 + b as u32));
    }
    Graph::build(next as usize, &edges).unwrap()
}

fn sample_artic(rng: &mut ChaCha8Rng) -> Graph {
    // Component templates: (vertex count, edge list).
    let templates: &[(usize, &[(u32, u32)])] = &[
        (2, &[(0, 1)]),
        (3, &[(0, 1), (1, 2)]),
        (4, &[(0, 1), (1, 2), (2, 3)]),
        (4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
        (3, &[(0, 1), (1, 2), (2, 0)]),
    ];
    for _ in 0..400 {
        let c = rng.gen_range(2..=4usize);
        let edge_only = rng.gen_bool(0.6);
        let mut comps = Vec::new();
        let mut comp_sizes = Vec::new();
        for _ in 0..c {
            let t = if edge_only {
                0
            } else if rng.gen_bool(0.12) {
                4 // triangle: usually makes the instance not 3-colorable
            } else {
                rng.gen_range(0..4usize)
            };
            comps.push(templates[t].1.to_vec());
            comp_sizes.push(templates[t].0);
        }
        let total_comp: usize = comp_sizes.iter().sum();
        let w_count = rng.gen_range(4..=8usize);
        if 1 + w_count + total_comp > 20 {
            continue;
        }
        // Attachment vectors: one vertex per component each.
        let mut picks: Vec<Vec<u32>> = Vec::new();
        if edge_only && rng.gen_bool(0.5) {
            // Complement pairs joined by an edge inside the hub.
            for _ in 0..w_count / 2 {
                let v: Vec<u32> = (0..c).map(|_| rng.gen_range(0..2u32)).collect();
                let comp_v: Vec<u32> = v.iter().map(|&x| 1 - x).collect();
                picks.push(v);
                picks.push(comp_v);
            }
            let paired: Vec<(usize, usize)> = (0..picks.len() / 2).map(|i| (2 * i, 2 * i + 1)).collect();
            let g = build_hub_instance(&comps, &comp_sizes, &picks, &paired);
            if valid_artic(&g) {
                return g;
            }
        } else {
            for _ in 0..w_count {
                picks.push(
                    (0..c)
                        .map(|ci| rng.gen_range(0..comp_sizes[ci] as u32))
                        .collect(),
                );
            }
            picks.sort();
            picks.dedup();
            let g = build_hub_instance(&comps, &comp_sizes, &picks, &[]);
            if valid_artic(&g) {
                return g;
            }
        }
    }
    // Deterministic fallback: the canonical 9-vertex instance.
    build_hub_instance(
        &[vec![(0, 1)], vec![(0, 1)]],
        &[2, 2],
        &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        &[],
    )
}

fn valid_artic(g: &Graph) -> bool {
    connected_components(g).len() == 1
        && metrics(g).diameter == Some(2)
        && is_irreducible(g)
        && find_articulation_neighborhood(g).is_some()
}

/// Seeded pseudo-random instance source; identical output for identical
/// (seed, profile).
pub fn sample_random_instance(seed: u64, profile: SampleProfile) -> Graph {
    let tag = match profile {
        SampleProfile::Small => 0x536d616cu64,
        SampleProfile::Diam2 => 0x4469616du64,
        SampleProfile::Artic => 0x41727469u64,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15) ^ tag);
    match profile {
        SampleProfile::Small => sample_small(&mut rng),
        SampleProfile::Diam2 => sample_diam2(&mut rng),
        SampleProfile::Artic => sample_artic(&mut rng),
    }
}
