mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weso::cardcsp::{compile_csp, parse_csp, solve_csp_le, CspInstance};
use weso::classify::Route;
use weso::engine::solve_dispatch;
use weso::gadgets::{
    formula_library, gen_matched_reach, library_formula, parse_mreach, reduce_reach_aa, reduce_reach_aaa,
    reduce_reach_eaa, Target,
};
use weso::logic::{parse_formula, Formula};
use weso::oracles::{oracle_csp, oracle_models, oracle_saturation};
use weso::saturation::{compile_pattern_graph, mirror_instance, solve_saturation_ge, PatternGraph};
use weso::structures::{load_structure, Graph, GraphKind};
use weso::wsat::{parse_wcnf, Lit, WcnfInstance};
use weso::Error;

fn basic_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, prop::collection::vec(any::<bool>(), max_n * max_n)).prop_map(|(n, bits)| {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| bits[u * n + v])
            .collect();
        Graph::from_edges(GraphKind::Basic, n, &edges)
    })
}

/// Boolean combinations of the atoms over two first-order variables.
fn matrix() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        Just("X(x)".to_string()),
        Just("X(y)".to_string()),
        Just("adj(x,y)".to_string()),
        Just("x = y".to_string()),
        Just("true".to_string()),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("!{a}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} & {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} | {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} -> {b})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a} <-> {b})")),
        ]
    })
}

fn permuted(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.capacity()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.kind(), g.capacity(), &edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mirror_preserves_saturation(g in basic_graph(7), idx in any::<u8>(), k in 0usize..5) {
        let p = PatternGraph::from_index(idx);
        let (mp, mg) = mirror_instance(p, &g).unwrap();
        let want = oracle_saturation(p, &g, k).unwrap();
        prop_assert_eq!(oracle_saturation(mp, &mg, k).unwrap(), want);
        prop_assert_eq!(solve_saturation_ge(mp, &mg, k).unwrap(), want);
    }

    #[test]
    fn saturation_monotone_in_k(g in basic_graph(9), idx in any::<u8>(), k in 0usize..6) {
        let p = PatternGraph::from_index(idx);
        if solve_saturation_ge(p, &g, k + 1).unwrap() {
            prop_assert!(solve_saturation_ge(p, &g, k).unwrap());
        }
    }

    #[test]
    fn oracle_invariant_under_relabelling(g in basic_graph(6), seed in any::<u64>(), k in 0usize..4) {
        let h = permuted(&g, seed);
        for (name, f) in formula_library() {
            let a = oracle_models(&f, &g.to_structure(), k).unwrap();
            let b = oracle_models(&f, &h.to_structure(), k).unwrap();
            prop_assert_eq!(a, b, "{}", name);
        }
    }

    #[test]
    fn pattern_compilation_is_sound(body in matrix(), g in basic_graph(6), k in 0usize..5) {
        let f = parse_formula(&format!("exists>= X . forall x . exists y . {body}")).unwrap();
        match compile_pattern_graph(&f) {
            Ok(p) => {
                let s = g.to_structure();
                prop_assert_eq!(oracle_saturation(p, &g, k).unwrap(), oracle_models(&f, &s, k).unwrap());
                prop_assert_eq!(solve_dispatch(&f, &s, k, None).unwrap().answer, oracle_models(&f, &s, k).unwrap());
            }
            Err(Error::SelfWitness) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn csp_compilation_is_sound(body in matrix(), g in basic_graph(7), k in 0usize..4) {
        let f = parse_formula(&format!("exists<= X . forall x . forall y . {body}")).unwrap();
        let inst = compile_csp(&f, &g, k).unwrap();
        let want = oracle_models(&f, &g.to_structure(), k).unwrap();
        prop_assert_eq!(oracle_csp(&inst).unwrap(), want);
        prop_assert_eq!(solve_csp_le(&inst), want);
    }

    #[test]
    fn csp_monotone_in_k(body in matrix(), g in basic_graph(8), k in 0usize..4) {
        let f = parse_formula(&format!("exists<= X . forall x . forall y . {body}")).unwrap();
        let inst = compile_csp(&f, &g, k).unwrap();
        if solve_csp_le(&inst) {
            let looser = CspInstance { k: k + 1, ..inst };
            prop_assert!(solve_csp_le(&looser));
        }
    }

    #[test]
    fn formula_text_roundtrip(body in matrix()) {
        let f = parse_formula(&format!("exists= X . forall x . exists y . {body}")).unwrap();
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn structure_text_roundtrip(g in basic_graph(8)) {
        let s = g.to_structure();
        prop_assert_eq!(load_structure(&s.to_text()).unwrap(), s.clone());
        prop_assert_eq!(load_structure(&g.to_text()).unwrap(), s);
    }

    #[test]
    fn wcnf_text_roundtrip(
        clauses in prop::collection::vec(prop::collection::vec((0usize..6, any::<bool>()), 1..=3), 0..8),
        k in 0usize..5,
    ) {
        let clauses: Vec<Vec<Lit>> = clauses
            .into_iter()
            .map(|c| c.into_iter().map(|(v, pos)| if pos { Lit::pos(v) } else { Lit::neg(v) }).collect())
            .collect();
        let w = WcnfInstance::new(6, clauses, 3, k, weso::logic::Mode::Le).unwrap();
        prop_assert_eq!(parse_wcnf(&w.to_text()).unwrap(), w);
    }

    #[test]
    fn csp_text_roundtrip(body in matrix(), g in basic_graph(6), k in 0usize..4) {
        let f = parse_formula(&format!("exists<= X . forall x . forall y . {body}")).unwrap();
        let inst = compile_csp(&f, &g, k).unwrap();
        prop_assert_eq!(parse_csp(&inst.to_text()).unwrap(), inst);
    }
}

fn check_library(f: &Formula, g: &Graph, k: usize, want: bool) {
    let d = solve_dispatch(f, &g.to_structure(), k, None).unwrap();
    assert_ne!(d.route, Route::OracleOnly);
    assert_eq!(d.answer, want, "route {}", d.route);
}

#[test]
fn reductions_on_generated_instances() {
    let aa = library_formula("reach").unwrap();
    let aaa = library_formula("reach-aaa").unwrap();
    let eaa = library_formula("reach-eaa").unwrap();
    for seed in 0..12 {
        for target in [Target::Yes, Target::No] {
            let inst = gen_matched_reach(5, 4, seed, target).unwrap();
            assert_eq!(parse_mreach(&inst.to_text()).unwrap(), inst);
            let want = target == Target::Yes;
            let (g, k) = reduce_reach_aa(&inst).unwrap();
            check_library(&aa, &g, k, want);
            let (g, k) = reduce_reach_aaa(&inst).unwrap();
            check_library(&aaa, &g, k, want);
            let (g, k) = reduce_reach_eaa(&inst).unwrap();
            check_library(&eaa, &g, k, want);
        }
    }
}

#[test]
fn dispatch_matches_oracle_on_layered_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..150 {
        let n = rand::Rng::gen_range(&mut rng, 2..=9);
        let g = common::layered_basic(&mut rng, n);
        let s = g.to_structure();
        for (name, f) in formula_library() {
            for k in 0..=3 {
                let fast = solve_dispatch(&f, &s, k, None).unwrap().answer;
                assert_eq!(fast, oracle_models(&f, &s, k).unwrap(), "{name} k={k}\n{}", g.to_text());
            }
        }
    }
}
