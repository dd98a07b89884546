use crate::error::{Error, Result};
use crate::logic::{extract_pattern, Formula, Mode};
use crate::structures::Structure;

use super::pattern::{Arc, Color, PatternGraph};

/// The single binary relation a graph formula may mention (`adj` if none).
pub(crate) fn graph_relation(f: &Formula) -> Result<String> {
    let rels = f.matrix.relations();
    let mut names: Vec<&str> = rels.iter().map(|(n, _)| n.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    match (names.as_slice(), rels.iter().all(|(_, a)| *a == 2)) {
        ([], _) => Ok("adj".to_string()),
        ([name], true) => Ok(name.to_string()),
        _ => Err(Error::Unsupported(
            "graph formulas may use a single binary relation".to_string(),
        )),
    }
}

/// Two elements `0, 1`, joined by a symmetric edge if `edge`.
pub(crate) fn pair_structure(relation: &str, edge: bool) -> Structure {
    let mut s = Structure::new(2);
    let tuples = if edge { vec![vec![0, 1], vec![1, 0]] } else { vec![] };
    s.add_relation(relation, 2, tuples).expect("fresh relation");
    s
}

pub(crate) fn singleton_structure(relation: &str) -> Structure {
    let mut s = Structure::new(1);
    s.add_relation(relation, 2, vec![]).expect("fresh relation");
    s
}

/// Arc table of a two-variable matrix, without the self-witness check.
pub fn pattern_table(f: &Formula) -> Result<PatternGraph> {
    if f.prefix.len() != 2 {
        return Err(Error::Unsupported(format!(
            "pattern table needs two first-order variables, found {}",
            f.prefix.len()
        )));
    }
    let rel = graph_relation(f)?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for edge in [true, false] {
        let s = pair_structure(&rel, edge);
        for arc in Arc::ALL {
            let set = [arc.0 == Color::Black, arc.1 == Color::Black];
            if f.eval_matrix(&s, &[0, 1], &set)? {
                if edge {
                    plus.push(arc);
                } else {
                    minus.push(arc);
                }
            }
        }
    }
    Ok(PatternGraph::new(&plus, &minus))
}

/// Pattern graph of an `exists>= X . forall x . exists y . ψ` formula over
/// basic graphs.
pub fn compile_pattern_graph(f: &Formula) -> Result<PatternGraph> {
    let pat = extract_pattern(f);
    if pat.mode != Mode::Ge || pat.word != "ae" {
        return Err(Error::Unsupported(format!(
            "saturation needs pattern (ge, ae), found ({}, {})",
            pat.mode, pat.word
        )));
    }
    let rel = graph_relation(f)?;
    let one = singleton_structure(&rel);
    for member in [false, true] {
        if f.eval_matrix(&one, &[0, 0], &[member])? {
            return Err(Error::SelfWitness);
        }
    }
    pattern_table(f)
}
