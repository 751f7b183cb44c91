//! Text formats: DIMACS graphs, DIMACS CNF, coloring files, reduction
//! traces, and generator layout dumps. External ids are 1-based; the
//! conversion to the crate's 0-based ids happens only here. Unknown line
//! types are errors.

use thiserror::Error;

use crate::generators::GeneratorLayout;
use crate::graph::Graph;
use crate::reduce::ReductionEvent;
use crate::sat::{CnfFormula, Literal};
use crate::solver::{Coloring, SolveReport};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Parses `p edge <n> <m>` graphs. Duplicate edge lines are deduplicated;
/// the count of duplicates is returned alongside the graph.
pub fn read_dimacs_graph(text: &str) -> Result<(Graph, usize), FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return err(line_no, "duplicate header");
                }
                if tokens.next() != Some("edge") {
                    return err(line_no, "expected 'p edge <n> <m>'");
                }
                let n = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(FormatError {
                        line: line_no,
                        message: "bad vertex count".into(),
                    })?;
                let m = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(FormatError {
                        line: line_no,
                        message: "bad edge count".into(),
                    })?;
                if tokens.next().is_some() {
                    return err(line_no, "trailing tokens after header");
                }
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return err(line_no, "edge line before header");
                };
                let u = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(FormatError {
                        line: line_no,
                        message: "bad endpoint".into(),
                    })?;
                let v = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(FormatError {
                        line: line_no,
                        message: "bad endpoint".into(),
                    })?;
                if tokens.next().is_some() {
                    return err(line_no, "trailing tokens after edge");
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return err(line_no, format!("endpoint out of range 1..={n}"));
                }
                if u == v {
                    return err(line_no, format!("self-loop on vertex {u}"));
                }
                edges.push((u as u32 - 1, v as u32 - 1));
            }
            Some(other) => return err(line_no, format!("unknown line type '{other}'")),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let Some((n, m)) = header else {
        return err(text.lines().count() + 1, "missing 'p edge' header");
    };
    if edges.len() != m {
        return err(
            text.lines().count() + 1,
            format!("header declares {m} edges, found {} edge lines", edges.len()),
        );
    }
    let graph = Graph::build(n, &edges).expect("range and loops verified above");
    let duplicates = edges.len() - graph.edge_count();
    Ok((graph, duplicates))
}

/// Canonical form: header, then edges with u < v in lexicographic order.
pub fn write_dimacs_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses `p cnf <n> <m>` with 0-terminated clauses; every clause must
/// have exactly three literals.
pub fn read_dimacs_cnf(text: &str) -> Result<CnfFormula, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return err(line_no, "duplicate header");
            }
            let mut tokens = rest.split_whitespace();
            if tokens.next() != Some("cnf") {
                return err(line_no, "expected 'p cnf <n> <m>'");
            }
            let n = tokens
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or(FormatError {
                    line: line_no,
                    message: "bad variable count".into(),
                })?;
            let m = tokens
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or(FormatError {
                    line: line_no,
                    message: "bad clause count".into(),
                })?;
            if tokens.next().is_some() {
                return err(line_no, "trailing tokens after header");
            }
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return err(line_no, "clause line before header");
        };
        for token in line.split_whitespace() {
            let lit: i64 = match token.parse() {
                Ok(v) => v,
                Err(_) => return err(line_no, format!("bad literal '{token}'")),
            };
            if lit == 0 {
                if current.len() != 3 {
                    return err(
                        line_no,
                        format!("clause has {} literals; exactly 3 required", current.len()),
                    );
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > n {
                    return err(line_no, format!("variable {} out of range 1..={n}", lit.abs()));
                }
                current.push(Literal::from_dimacs(lit));
            }
        }
    }
    let Some((n, m)) = header else {
        return err(text.lines().count() + 1, "missing 'p cnf' header");
    };
    if !current.is_empty() {
        return err(text.lines().count() + 1, "unterminated clause");
    }
    if clauses.len() != m {
        return err(
            text.lines().count() + 1,
            format!("header declares {m} clauses, found {}", clauses.len()),
        );
    }
    Ok(CnfFormula::new(n, clauses))
}

pub fn write_dimacs_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count, f.clauses.len());
    for clause in &f.clauses {
        for lit in clause {
            let signed = (lit.var as i64 + 1) * if lit.positive { 1 } else { -1 };
            out.push_str(&format!("{signed} "));
        }
        out.push_str("0\n");
    }
    out
}

/// `s COLORABLE 3` plus one `v <vertex> <color>` line per vertex, or
/// `s UNCOLORABLE` alone.
pub fn write_coloring(answer: Option<&Coloring>) -> String {
    match answer {
        None => "s UNCOLORABLE\n".to_string(),
        Some(c) => {
            let mut out = String::from("s COLORABLE 3\n");
            for v in 0..c.len() as u32 {
                let color = c.get(v).expect("coloring files require total colorings");
                out.push_str(&format!("v {} {}\n", v + 1, color));
            }
            out
        }
    }
}

/// Coloring file plus the stats footer (strategy, seed size, enumeration
/// count) as comment lines.
pub fn write_coloring_report(report: &SolveReport) -> String {
    let mut out = write_coloring(report.answer.coloring());
    out.push_str(&format!("c strategy {}\n", report.strategy));
    out.push_str(&format!("c seed_size {}\n", report.seed_size));
    out.push_str(&format!("c enumeration_count {}\n", report.enumeration_count));
    out
}

/// Reads a coloring file back; `None` for the UNCOLORABLE header. In the
/// colorable case every vertex 1..=max must appear exactly once.
pub fn read_coloring(text: &str) -> Result<Option<Coloring>, FormatError> {
    let mut verdict: Option<bool> = None;
    let mut assignments: Vec<(usize, u8)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("s") => {
                if verdict.is_some() {
                    return err(line_no, "duplicate status line");
                }
                match (tokens.next(), tokens.next()) {
                    (Some("COLORABLE"), Some("3")) => verdict = Some(true),
                    (Some("UNCOLORABLE"), None) => verdict = Some(false),
                    _ => return err(line_no, "expected 's COLORABLE 3' or 's UNCOLORABLE'"),
                }
            }
            Some("v") => {
                if verdict != Some(true) {
                    return err(line_no, "vertex line outside a COLORABLE block");
                }
                let vertex = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&v| v >= 1)
                    .ok_or(FormatError {
                        line: line_no,
                        message: "bad vertex id".into(),
                    })?;
                let color = tokens
                    .next()
                    .and_then(|t| t.parse::<u8>().ok())
                    .filter(|c| (1..=3).contains(c))
                    .ok_or(FormatError {
                        line: line_no,
                        message: "color must be 1, 2, or 3".into(),
                    })?;
                assignments.push((vertex, color));
            }
            Some(other) => return err(line_no, format!("unknown line type '{other}'")),
            None => unreachable!(),
        }
    }
    match verdict {
        None => err(text.lines().count() + 1, "missing status line"),
        Some(false) => Ok(None),
        Some(true) => {
            let n = assignments.iter().map(|&(v, _)| v).max().unwrap_or(0);
            let mut coloring = Coloring::unassigned(n);
            let mut seen = vec![false; n];
            for (v, color) in assignments {
                if seen[v - 1] {
                    return err(0, format!("vertex {v} assigned twice"));
                }
                seen[v - 1] = true;
                coloring.set(v as u32 - 1, color);
            }
            if let Some(missing) = seen.iter().position(|&s| !s) {
                return err(0, format!("vertex {} missing", missing + 1));
            }
            Ok(Some(coloring))
        }
    }
}

/// One event per line, `M <kept> <absorbed>` or `R <removed> <keeper>`,
/// 1-based original-graph ids, applied top to bottom.
pub fn write_trace(events: &[ReductionEvent]) -> String {
    let mut out = String::new();
    for ev in events {
        match *ev {
            ReductionEvent::Merge { kept, absorbed } => {
                out.push_str(&format!("M {} {}\n", kept + 1, absorbed + 1));
            }
            ReductionEvent::Remove { removed, keeper } => {
                out.push_str(&format!("R {} {}\n", removed + 1, keeper + 1));
            }
        }
    }
    out
}

/// `role <name> <vertex-id>` lines with 1-based ids matching the DIMACS
/// output of the same generator run.
pub fn write_layout(layout: &GeneratorLayout) -> String {
    let mut out = String::new();
    for (name, value) in layout.params() {
        out.push_str(&format!("c {name} {value}\n"));
    }
    for (name, id) in layout.roles() {
        out.push_str(&format!("role {name} {}\n", id + 1));
    }
    for (name, id) in layout.gadget_roles() {
        out.push_str(&format!("role {name} {}\n", id + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_gn;
    use crate::sat::cnf_brute_force_sat;

    #[test]
    fn read_k3() {
        let text = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let (g, dups) = read_dimacs_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(dups, 0);
    }

    #[test]
    fn read_isolated_vertices() {
        let (g, _) = read_dimacs_graph("p edge 2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn read_rejects_range_and_loops() {
        let e = read_dimacs_graph("p edge 3 1\ne 1 5\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = read_dimacs_graph("p edge 3 1\ne 2 2\n").unwrap_err();
        assert!(e.message.contains("self-loop"));
    }

    #[test]
    fn read_counts_duplicates() {
        let (g, dups) = read_dimacs_graph("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(dups, 1);
    }

    #[test]
    fn read_rejects_unknown_lines() {
        let e = read_dimacs_graph("p edge 1 0\nn 1 1\n").unwrap_err();
        assert!(e.message.contains("unknown line type"));
    }

    #[test]
    fn graph_roundtrip() {
        let texts = [
            "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n",
            "p edge 4 0\n",
        ];
        for text in texts {
            let (g, _) = read_dimacs_graph(text).unwrap();
            assert_eq!(write_dimacs_graph(&g), text);
        }
        let (g, _) = gen_gn(3).unwrap();
        let (back, dups) = read_dimacs_graph(&write_dimacs_graph(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(dups, 0);
    }

    #[test]
    fn cnf_single_clause() {
        let f = read_dimacs_cnf("p cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(f.variable_count, 3);
        assert_eq!(f.clauses.len(), 1);
        assert!(f.clauses[0].iter().all(|l| l.positive));
    }

    #[test]
    fn cnf_rejects_bad_arity() {
        let e = read_dimacs_cnf("p cnf 3 1\n1 2 0\n").unwrap_err();
        assert!(e.message.contains("exactly 3"));
    }

    #[test]
    fn cnf_negative_literals() {
        let f = read_dimacs_cnf("p cnf 4 1\n-1 2 -4 0\n").unwrap();
        let c = f.clauses[0];
        assert!(!c[0].positive && c[0].var == 0);
        assert!(c[1].positive && c[1].var == 1);
        assert!(!c[2].positive && c[2].var == 3);
    }

    #[test]
    fn cnf_roundtrip_through_writer() {
        let f = read_dimacs_cnf("p cnf 5 2\n1 -2 3 0\n-3 4 5 0\n").unwrap();
        let again = read_dimacs_cnf(&write_dimacs_cnf(&f)).unwrap();
        assert_eq!(f, again);
        assert_eq!(
            cnf_brute_force_sat(&f).unwrap(),
            cnf_brute_force_sat(&again).unwrap()
        );
    }

    #[test]
    fn coloring_roundtrip() {
        let mut c = Coloring::unassigned(3);
        c.set(0, 1);
        c.set(1, 2);
        c.set(2, 3);
        let text = write_coloring(Some(&c));
        assert_eq!(read_coloring(&text).unwrap(), Some(c));
        assert_eq!(read_coloring("s UNCOLORABLE\n").unwrap(), None);
        assert_eq!(write_coloring(None), "s UNCOLORABLE\n");
    }

    #[test]
    fn coloring_rejects_missing_vertex() {
        let e = read_coloring("s COLORABLE 3\nv 1 1\nv 3 2\n").unwrap_err();
        assert!(e.message.contains("missing"));
    }

    #[test]
    fn coloring_ignores_stats_footer() {
        let mut c = Coloring::unassigned(2);
        c.set(0, 1);
        c.set(1, 2);
        let text = format!("{}c strategy diam2\nc seed_size 2\n", write_coloring(Some(&c)));
        assert_eq!(read_coloring(&text).unwrap(), Some(c));
    }

    #[test]
    fn trace_format() {
        use crate::reduce::ReductionEvent::*;
        let events = vec![
            Merge { kept: 0, absorbed: 3 },
            Remove { removed: 2, keeper: 1 },
        ];
        assert_eq!(write_trace(&events), "M 1 4\nR 3 2\n");
    }

    #[test]
    fn layout_dump_lists_every_vertex() {
        let (g, layout) = gen_gn(3).unwrap();
        let dump = write_layout(&layout);
        let role_lines = dump.lines().filter(|l| l.starts_with("role ")).count();
        assert_eq!(role_lines, g.vertex_count());
        assert!(dump.contains("role v0 1"));
    }
}
