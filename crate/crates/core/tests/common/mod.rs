//! Shared helpers for the integration suites.

use rand::Rng;
use tricolor::graph::Graph;
use tricolor::sat::{CnfFormula, Literal};

/// Scalable articulation-neighborhood family: an apex 0, a hub of
/// attachment vertices, and `c` edge components {u_i, v_i} beyond the
/// apex's closed neighborhood. Each hub vertex picks one endpoint per
/// component; the picks are the bit columns of a binary code over the
/// components plus the two constant vectors, so every cross-component
/// side combination has a common hub neighbor (diameter 2) and all hub
/// vectors are distinct and incomparable (irreducible).
///
/// With `matched` the complement vector pairs are joined by hub edges,
/// which routes the solver through its 2SAT branch; those instances are
/// not 3-colorable once the code has two distinct bit columns. Unmatched
/// instances keep the hub independent and are 3-colorable.
pub fn hub_family(c: usize, matched: bool) -> Graph {
    assert!(c >= 2);
    let bits = usize::BITS as usize - (c - 1).leading_zeros() as usize;
    let bits = bits.max(1);
    // Vectors as closures over the component codes: true picks u_i.
    let mut vectors: Vec<Vec<bool>> = Vec::new();
    for level in 0..bits {
        let a: Vec<bool> = (0..c).map(|code| code >> level & 1 == 0).collect();
        let b: Vec<bool> = a.iter().map(|&x| !x).collect();
        vectors.push(a);
        vectors.push(b);
    }
    vectors.push(vec![true; c]);
    vectors.push(vec![false; c]);
    let w = vectors.len();
    let n = 1 + w + 2 * c;
    let hub = |idx: usize| (1 + idx) as u32;
    let u_of = |i: usize| (1 + w + 2 * i) as u32;
    let v_of = |i: usize| (1 + w + 2 * i + 1) as u32;
    let mut edges = Vec::new();
    for idx in 0..w {
        edges.push((0, hub(idx)));
        for (i, &picks_u) in vectors[idx].iter().enumerate() {
            edges.push((hub(idx), if picks_u { u_of(i) } else { v_of(i) }));
        }
    }
    for i in 0..c {
        edges.push((u_of(i), v_of(i)));
    }
    if matched {
        for pair in 0..w / 2 {
            edges.push((hub(2 * pair), hub(2 * pair + 1)));
        }
    }
    Graph::build(n, &edges).unwrap()
}

/// Random 3-CNF with three distinct variables per clause.
pub fn random_formula(rng: &mut impl Rng, nvars: usize, m: usize) -> CnfFormula {
    let mut clauses = Vec::new();
    for _ in 0..m {
        let mut vars: Vec<u32> = Vec::new();
        while vars.len() < 3 {
            let v = rng.gen_range(0..nvars as u32);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        clauses.push([0usize, 1, 2].map(|i| Literal {
            var: vars[i],
            positive: rng.gen_bool(0.5),
        }));
    }
    CnfFormula::new(nvars, clauses)
}

/// Random satisfiable 3-CNF (a hidden assignment witnesses every clause).
pub fn random_satisfiable_formula(
    rng: &mut impl Rng,
    nvars: usize,
    m: usize,
) -> (CnfFormula, Vec<bool>) {
    let tau: Vec<bool> = (0..nvars).map(|_| rng.gen_bool(0.5)).collect();
    let mut clauses = Vec::new();
    for _ in 0..m {
        let mut vars: Vec<u32> = Vec::new();
        while vars.len() < 3 {
            let v = rng.gen_range(0..nvars as u32);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let witness = rng.gen_range(0..3);
        clauses.push([0usize, 1, 2].map(|i| Literal {
            var: vars[i],
            positive: if i == witness {
                tau[vars[i] as usize]
            } else {
                rng.gen_bool(0.5)
            },
        }));
    }
    (CnfFormula::new(nvars, clauses), tau)
}
