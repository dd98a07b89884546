use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::structures::Structure;

use super::ast::{Expr, Formula};

impl Formula {
    /// Checks that every relation of the matrix exists in `s` with the
    /// same arity.
    pub fn check_signature(&self, s: &Structure) -> Result<()> {
        for (name, arity) in self.matrix.relations() {
            match s.relation(&name) {
                None => return Err(Error::UnknownRelation(name)),
                Some(r) if r.arity() != arity => {
                    return Err(Error::Signature(format!(
                        "relation `{name}` has arity {} in the structure but {arity} in the formula",
                        r.arity()
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Truth of the matrix with prefix variable `i` bound to
    /// `assignment[i]` and the set variable read from `set`.
    pub fn eval_matrix(&self, s: &Structure, assignment: &[usize], set: &[bool]) -> Result<bool> {
        self.check_signature(s)?;
        if assignment.len() < self.prefix.len() {
            return Err(Error::MissingAssignment(self.prefix[assignment.len()].1.clone()));
        }
        let n = s.universe_size();
        if let Some(&e) = assignment.iter().find(|&&e| e >= n) {
            return Err(Error::OutOfRange {
                line: 0,
                element: e,
                size: n,
            });
        }
        if set.len() < n {
            return Err(Error::Invalid(format!(
                "set has {} flags for a universe of {n}",
                set.len()
            )));
        }
        Ok(self.eval_unchecked(s, assignment, set))
    }

    /// Same as [`Formula::eval_matrix`] with variables given by name.
    pub fn eval_matrix_named(&self, s: &Structure, assignment: &HashMap<String, usize>, set: &[bool]) -> Result<bool> {
        let mut vals = Vec::with_capacity(self.prefix.len());
        for (_, v) in &self.prefix {
            match assignment.get(v) {
                Some(&e) => vals.push(e),
                None => return Err(Error::MissingAssignment(v.clone())),
            }
        }
        self.eval_matrix(s, &vals, set)
    }

    /// Evaluation without signature or range checks; callers validate once
    /// with [`Formula::check_signature`].
    pub(crate) fn eval_unchecked(&self, s: &Structure, a: &[usize], set: &[bool]) -> bool {
        eval(&self.matrix, s, a, set)
    }
}

fn eval(e: &Expr, s: &Structure, a: &[usize], set: &[bool]) -> bool {
    match e {
        Expr::True => true,
        Expr::False => false,
        Expr::Rel(name, args) => {
            let rel = s.relation(name).expect("signature checked");
            match args.len() {
                1 => rel.contains(&[a[args[0]]]),
                2 => rel.contains(&[a[args[0]], a[args[1]]]),
                _ => {
                    let t: Vec<usize> = args.iter().map(|&v| a[v]).collect();
                    rel.contains(&t)
                }
            }
        }
        Expr::Member(v) => set[a[*v]],
        Expr::Equal(x, y) => a[*x] == a[*y],
        Expr::Not(x) => !eval(x, s, a, set),
        Expr::And(x, y) => eval(x, s, a, set) && eval(y, s, a, set),
        Expr::Or(x, y) => eval(x, s, a, set) || eval(y, s, a, set),
        Expr::Implies(x, y) => !eval(x, s, a, set) || eval(y, s, a, set),
        Expr::Iff(x, y) => eval(x, s, a, set) == eval(y, s, a, set),
    }
}
