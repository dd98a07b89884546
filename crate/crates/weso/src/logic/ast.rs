use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Weight comparison of the second-order head: `|C| = k`, `≤ k` or `≥ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Eq,
    Le,
    Ge,
}

impl Mode {
    pub fn accepts(self, weight: usize, k: usize) -> bool {
        match self {
            Mode::Eq => weight == k,
            Mode::Le => weight <= k,
            Mode::Ge => weight >= k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Eq => "eq",
            Mode::Le => "le",
            Mode::Ge => "ge",
        }
    }

    fn head(self) -> &'static str {
        match self {
            Mode::Eq => "exists=",
            Mode::Le => "exists<=",
            Mode::Ge => "exists>=",
        }
    }

    pub const ALL: [Mode; 3] = [Mode::Eq, Mode::Le, Mode::Ge];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "eq" | "=" => Ok(Mode::Eq),
            "le" | "<=" => Ok(Mode::Le),
            "ge" | ">=" => Ok(Mode::Ge),
            _ => Err(Error::Parse {
                line: 1,
                msg: format!("unknown mode `{s}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quant {
    Forall,
    Exists,
}

/// Quantifier-free matrix. Variables are indices into the prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    True,
    False,
    Rel(String, Vec<usize>),
    Member(usize),
    Equal(usize, usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Expr, b: Expr) -> Expr {
        Expr::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Expr, b: Expr) -> Expr {
        Expr::Iff(Box::new(a), Box::new(b))
    }

    /// Relation names with arities, in order of first occurrence.
    pub fn relations(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Rel(name, args) = e {
                if !out.iter().any(|(n, _): &(String, usize)| n == name) {
                    out.push((name.clone(), args.len()));
                }
            }
        });
        out
    }

    /// Prefix variables occurring inside a membership atom.
    pub fn member_vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Member(v) = e {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
        });
        out.sort_unstable();
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Not(a) => a.visit(f),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Implies(a, b) | Expr::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }
}

/// Prenex weighted-ESO sentence `head X . (Q v .)* matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub mode: Mode,
    pub set_var: String,
    pub prefix: Vec<(Quant, String)>,
    pub matrix: Expr,
}

impl Formula {
    pub fn var_name(&self, v: usize) -> &str {
        &self.prefix[v].1
    }

    fn fmt_expr(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match e {
            Expr::True => f.write_str("true"),
            Expr::False => f.write_str("false"),
            Expr::Rel(name, args) => {
                let names: Vec<&str> = args.iter().map(|&a| self.var_name(a)).collect();
                write!(f, "{}({})", name, names.join(","))
            }
            Expr::Member(v) => write!(f, "{}({})", self.set_var, self.var_name(*v)),
            Expr::Equal(a, b) => write!(f, "{}={}", self.var_name(*a), self.var_name(*b)),
            Expr::Not(a) => {
                f.write_str("!")?;
                self.fmt_expr(a, f)
            }
            Expr::And(a, b) => self.fmt_bin(a, "&", b, f),
            Expr::Or(a, b) => self.fmt_bin(a, "|", b, f),
            Expr::Implies(a, b) => self.fmt_bin(a, "->", b, f),
            Expr::Iff(a, b) => self.fmt_bin(a, "<->", b, f),
        }
    }

    fn fmt_bin(&self, a: &Expr, op: &str, b: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.fmt_expr(a, f)?;
        write!(f, " {op} ")?;
        self.fmt_expr(b, f)?;
        f.write_str(")")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} .", self.mode.head(), self.set_var)?;
        for (q, v) in &self.prefix {
            let q = match q {
                Quant::Forall => "forall",
                Quant::Exists => "exists",
            };
            write!(f, " {q} {v} .")?;
        }
        f.write_str(" ")?;
        self.fmt_expr(&self.matrix, f)
    }
}
