//! Dispatch of a concrete instance to the solver its pattern allows.

use serde::Serialize;

use crate::cardcsp::{compile_csp, solve_csp_traced};
use crate::classify::{classify_pattern, route_admissible, route_for, ComplexityLabel, Route, StructureClass};
use crate::error::{Error, Result};
use crate::logic::{extract_pattern, Formula};
use crate::oracles::{oracle_models_with, OracleLimits};
use crate::saturation::{compile_pattern_graph, solve_saturation_traced};
use crate::structures::{graph_view, Graph, GraphKind, Structure};
use crate::wsat::{ground_formula, solve_1wsat, solve_wsat_le_searchtree};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Search-tree nodes or CSP kernel subsets examined.
    pub nodes: usize,
    pub disjuncts: usize,
    /// Case of the saturation or CSP case analysis that decided.
    pub case: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub answer: bool,
    pub route: Route,
    pub label: ComplexityLabel,
    pub class: StructureClass,
    pub stats: Stats,
}

/// Structure class read off the input: graphs by their shape, anything
/// else arbitrary.
pub fn detect_class(s: &Structure) -> StructureClass {
    match graph_view(s).map(|g| g.kind()) {
        Ok(GraphKind::Basic) => StructureClass::Basic,
        Ok(GraphKind::Undirected) => StructureClass::Undirected,
        _ => StructureClass::Arbitrary,
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DispatchOptions {
    pub route: Option<Route>,
    /// Asserted structure class; must contain the detected one.
    pub class: Option<StructureClass>,
    pub limits: OracleLimits,
}

pub fn solve_dispatch(f: &Formula, s: &Structure, k: usize, route_override: Option<Route>) -> Result<Decision> {
    solve_dispatch_with(
        f,
        s,
        k,
        DispatchOptions {
            route: route_override,
            ..DispatchOptions::default()
        },
    )
}

pub fn solve_dispatch_with(f: &Formula, s: &Structure, k: usize, opts: DispatchOptions) -> Result<Decision> {
    f.check_signature(s)?;
    let detected = detect_class(s);
    let class = match opts.class {
        Some(c) if !detected.within(c) => {
            return Err(Error::Unsupported(format!(
                "structure is {detected}, which is not within the asserted class {c}"
            )))
        }
        Some(c) => c,
        None => detected,
    };
    let pat = extract_pattern(f);
    let label = classify_pattern(pat.mode, &pat.word, class);
    let route = opts.route.unwrap_or_else(|| route_for(pat.mode, &pat.word, class));
    if !route_admissible(route, pat.mode, &pat.word, class) {
        return Err(Error::Unsupported(format!(
            "route {route} cannot decide pattern ({}, {}) on {class} structures",
            pat.mode, pat.word
        )));
    }
    let mut stats = Stats::default();
    let oracle = |stats: &mut Stats, why: &str| -> Result<bool> {
        if !why.is_empty() {
            stats.case = Some(why.to_string());
        }
        oracle_models_with(f, s, k, opts.limits)
    };
    let answer = match route {
        Route::OracleOnly => oracle(&mut stats, "")?,
        Route::OneWsat => {
            let grounded = ground_formula(f, s, k)?;
            stats.disjuncts = grounded.disjuncts.len();
            let mut any = false;
            for w in &grounded.disjuncts {
                if solve_1wsat(w)? {
                    any = true;
                    break;
                }
            }
            any
        }
        Route::SearchTree => {
            let grounded = ground_formula(f, s, k)?;
            stats.disjuncts = grounded.disjuncts.len();
            let mut any = false;
            for w in &grounded.disjuncts {
                let (ans, st) = solve_wsat_le_searchtree(w)?;
                stats.nodes += st.nodes;
                if ans {
                    any = true;
                    break;
                }
            }
            any
        }
        Route::SaturationBasic => {
            let g = graph_view(s)?;
            match compile_pattern_graph(f) {
                Err(Error::SelfWitness) => oracle(&mut stats, "self-witness")?,
                Err(e) => return Err(e),
                Ok(_) if g.order() < 2 => oracle(&mut stats, "too-few-vertices")?,
                Ok(p) => {
                    let (ans, trace) = solve_saturation_traced(p, &g, k)?;
                    stats.case = Some(trace.to_string());
                    ans
                }
            }
        }
        Route::CspBasic => {
            let g: Graph = graph_view(s)?;
            let inst = compile_csp(f, &g, k)?;
            let (ans, trace) = solve_csp_traced(&inst);
            stats.nodes = trace.subsets;
            stats.case = Some(trace.to_string());
            ans
        }
    };
    Ok(Decision {
        answer,
        route,
        label,
        class,
        stats,
    })
}
