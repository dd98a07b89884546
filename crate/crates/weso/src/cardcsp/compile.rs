use crate::error::{Error, Result};
use crate::logic::{extract_pattern, Formula, Mode};
use crate::saturation::{graph_relation, pair_structure, singleton_structure};
use crate::structures::{Graph, GraphKind};

use super::instance::{CountSet, CspInstance};

/// Counts `m` such that every membership assignment with `m` members
/// satisfies the matrix in both variable orders.
fn pair_counts(f: &Formula, relation: &str, edge: bool) -> Result<CountSet> {
    let s = pair_structure(relation, edge);
    let mut counts = Vec::new();
    for m in 0..=2 {
        let mut ok = true;
        for set in [[false, false], [true, false], [false, true], [true, true]] {
            if usize::from(set[0]) + usize::from(set[1]) != m {
                continue;
            }
            for order in [[0, 1], [1, 0]] {
                ok &= f.eval_matrix(&s, &order, &set)?;
            }
        }
        if ok {
            counts.push(m);
        }
    }
    Ok(CountSet::of(&counts))
}

/// Memberships for which the matrix holds at `x = y`.
fn unary_counts(f: &Formula, relation: &str) -> Result<CountSet> {
    let s = singleton_structure(relation);
    let mut counts = Vec::new();
    for m in [false, true] {
        if f.eval_matrix(&s, &[0, 0], &[m])? {
            counts.push(usize::from(m));
        }
    }
    Ok(CountSet::of(&counts))
}

/// Re-encodes an `exists<= X . forall x . forall y . ψ` formula over a basic
/// graph as a CSP whose solutions are exactly the satisfying sets. Non-edges
/// are the C-pairs.
pub fn compile_csp(f: &Formula, g: &Graph, k: usize) -> Result<CspInstance> {
    let pat = extract_pattern(f);
    if pat.mode != Mode::Le || pat.word != "aa" {
        return Err(Error::Unsupported(format!(
            "CSP compilation needs pattern (le, aa), found ({}, {})",
            pat.mode, pat.word
        )));
    }
    if g.kind() != GraphKind::Basic {
        return Err(Error::GraphKind {
            expected: "basic",
            found: g.kind().name(),
        });
    }
    let rel = graph_relation(f)?;
    let d_set = pair_counts(f, &rel, true)?;
    let c_set = pair_counts(f, &rel, false)?;
    let unary = unary_counts(f, &rel)?;
    let (h, _) = g.compact();
    let n = h.order();
    let c_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !h.has_edge(u, v))
        .collect();
    CspInstance::new(n, c_set, d_set, c_pairs, unary, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn aa(matrix: &str) -> Formula {
        parse_formula(&format!("exists<= X . forall x . forall y . {matrix}")).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges(GraphKind::Basic, 3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn compile_examples() {
        let vc = compile_csp(&aa("adj(x,y) -> (X(x) | X(y))"), &triangle(), 1).unwrap();
        assert_eq!(
            (vc.d_set, vc.c_set, vc.unary_allowed),
            (CountSet::of(&[1, 2]), CountSet::FULL, CountSet::BINARY)
        );
        assert!(vc.c_pairs.is_empty());

        let ind = compile_csp(&aa("!(X(x) & X(y))"), &triangle(), 1).unwrap();
        assert_eq!(
            (ind.d_set, ind.c_set, ind.unary_allowed),
            (CountSet::of(&[0, 1]), CountSet::of(&[0, 1]), CountSet::of(&[0]))
        );

        let clique = compile_csp(&aa("(X(x) & X(y)) -> adj(x,y)"), &triangle(), 1).unwrap();
        assert_eq!((clique.d_set, clique.c_set), (CountSet::FULL, CountSet::of(&[0, 1])));
        assert_eq!(clique.unary_allowed, CountSet::of(&[0]));
        let guarded = compile_csp(&aa("((X(x) & X(y)) & x != y) -> adj(x,y)"), &triangle(), 1).unwrap();
        assert_eq!(guarded.unary_allowed, CountSet::BINARY);
    }

    #[test]
    fn count_one_needs_both_orders() {
        let p3 = Graph::from_edges(GraphKind::Basic, 3, &[(0, 1), (1, 2)]);
        let inst = compile_csp(&aa("adj(x,y) -> (X(x) -> !X(y))"), &p3, 2).unwrap();
        assert_eq!(inst.d_set, CountSet::of(&[0, 1]));
        let asym = compile_csp(&aa("adj(x,y) -> (X(x) | !X(y))"), &p3, 2).unwrap();
        assert_eq!(asym.d_set, CountSet::of(&[0, 2]));
        assert_eq!(asym.c_pairs.iter().copied().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn rejects_wrong_inputs() {
        let ge = parse_formula("exists>= X . forall x . forall y . X(x)").unwrap();
        assert!(matches!(compile_csp(&ge, &triangle(), 1), Err(Error::Unsupported(_))));
        let und = Graph::from_edges(GraphKind::Undirected, 2, &[(0, 0)]);
        assert!(matches!(
            compile_csp(&aa("X(x)"), &und, 1),
            Err(Error::GraphKind { .. })
        ));
    }
}
