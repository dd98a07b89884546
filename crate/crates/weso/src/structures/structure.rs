use std::collections::BTreeSet;

use crate::error::{parse_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    name: String,
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
    dense: Option<Vec<bool>>,
    universe: usize,
}

impl Relation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        match &self.dense {
            Some(bits) => {
                let mut idx = 0;
                for &e in tuple {
                    idx = idx * self.universe + e;
                }
                bits[idx]
            }
            None => self.tuples.contains(tuple),
        }
    }

    fn rebuild_index(&mut self) {
        let cells = (self.universe.max(1) as u128).pow(self.arity as u32);
        self.dense = if cells <= 1 << 22 {
            let mut bits = vec![false; cells as usize];
            for t in &self.tuples {
                let mut idx = 0;
                for &e in t {
                    idx = idx * self.universe + e;
                }
                bits[idx] = true;
            }
            Some(bits)
        } else {
            None
        };
    }
}

/// Finite relational structure over the universe `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    universe_size: usize,
    relations: Vec<Relation>,
}

impl Structure {
    pub fn new(universe_size: usize) -> Self {
        Structure {
            universe_size,
            relations: Vec::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn signature(&self) -> Vec<(String, usize)> {
        self.relations.iter().map(|r| (r.name.clone(), r.arity)).collect()
    }

    pub fn add_relation(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<()> {
        if self.relation(name).is_some() {
            return Err(Error::Signature(format!("relation `{name}` declared twice")));
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            check_tuple(name, arity, self.universe_size, &t, 0)?;
            set.insert(t);
        }
        let mut rel = Relation {
            name: name.to_string(),
            arity,
            tuples: set,
            dense: None,
            universe: self.universe_size,
        };
        rel.rebuild_index();
        self.relations.push(rel);
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("structure\nuniverse {}\n", self.universe_size);
        for r in &self.relations {
            out.push_str(&format!("relation {} {}\n", r.name, r.arity));
            for t in &r.tuples {
                let items: Vec<String> = t.iter().map(|e| e.to_string()).collect();
                out.push_str(&items.join(" "));
                out.push('\n');
            }
        }
        out.push_str("end\n");
        out
    }
}

fn check_tuple(name: &str, arity: usize, size: usize, t: &[usize], line: usize) -> Result<()> {
    if t.len() != arity {
        return Err(Error::ArityMismatch {
            line,
            relation: name.to_string(),
            expected: arity,
            found: t.len(),
        });
    }
    if let Some(&e) = t.iter().find(|&&e| e >= size) {
        return Err(Error::OutOfRange { line, element: e, size });
    }
    Ok(())
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found `{tok}`")))
}

/// Parses either the `graph <kind> <n>` / `edge u v` format or the
/// `structure` / `universe` / `relation` / `end` format. `#` starts a
/// comment. Graph files yield a single binary relation named `adj`.
pub fn load_structure(text: &str) -> Result<Structure> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect()))
        .filter(|(_, toks): &(usize, Vec<&str>)| !toks.is_empty())
        .collect();
    let Some((first_line, head)) = lines.first() else {
        return Err(parse_err(1, "empty input"));
    };
    match head[0] {
        "graph" => parse_graph(&lines, *first_line),
        "structure" => parse_relational(&lines),
        other => Err(parse_err(*first_line, format!("unknown header `{other}`"))),
    }
}

fn parse_graph(lines: &[(usize, Vec<&str>)], first: usize) -> Result<Structure> {
    let head = &lines[0].1;
    if head.len() != 3 {
        return Err(parse_err(first, "expected `graph <kind> <n>`"));
    }
    let symmetric = match head[1] {
        "basic" | "undirected" => true,
        "digraph" | "directed" => false,
        k => return Err(parse_err(first, format!("unknown graph kind `{k}`"))),
    };
    let basic = head[1] == "basic";
    let n = parse_usize(head[2], first)?;
    let mut tuples = BTreeSet::new();
    for (line, toks) in &lines[1..] {
        if toks[0] != "edge" {
            return Err(parse_err(*line, format!("expected `edge`, found `{}`", toks[0])));
        }
        let args: Vec<usize> = toks[1..].iter().map(|t| parse_usize(t, *line)).collect::<Result<_>>()?;
        check_tuple("adj", 2, n, &args, *line)?;
        if basic && args[0] == args[1] {
            return Err(parse_err(*line, "self-loop in a basic graph"));
        }
        tuples.insert(vec![args[0], args[1]]);
        if symmetric {
            tuples.insert(vec![args[1], args[0]]);
        }
    }
    let mut s = Structure::new(n);
    s.add_relation("adj", 2, tuples)?;
    Ok(s)
}

fn parse_relational(lines: &[(usize, Vec<&str>)]) -> Result<Structure> {
    let mut it = lines.iter().skip(1);
    let (uline, utoks) = it
        .next()
        .ok_or_else(|| parse_err(lines[0].0, "missing `universe <n>`"))?;
    if utoks.len() != 2 || utoks[0] != "universe" {
        return Err(parse_err(*uline, "expected `universe <n>`"));
    }
    let n = parse_usize(utoks[1], *uline)?;
    let mut s = Structure::new(n);
    let mut current: Option<(String, usize, usize, Vec<Vec<usize>>)> = None;
    let mut ended = false;
    for (line, toks) in it {
        if ended {
            return Err(parse_err(*line, "content after `end`"));
        }
        match toks[0] {
            "relation" => {
                if let Some((name, arity, l, tuples)) = current.take() {
                    finish(&mut s, &name, arity, l, tuples)?;
                }
                if toks.len() != 3 {
                    return Err(parse_err(*line, "expected `relation <name> <arity>`"));
                }
                let arity = parse_usize(toks[2], *line)?;
                current = Some((toks[1].to_string(), arity, *line, Vec::new()));
            }
            "end" => {
                if let Some((name, arity, l, tuples)) = current.take() {
                    finish(&mut s, &name, arity, l, tuples)?;
                }
                ended = true;
            }
            _ => {
                let Some((name, arity, _, tuples)) = current.as_mut() else {
                    return Err(parse_err(*line, "tuple outside a relation block"));
                };
                let t: Vec<usize> = toks.iter().map(|t| parse_usize(t, *line)).collect::<Result<_>>()?;
                check_tuple(name, *arity, n, &t, *line)?;
                tuples.push(t);
            }
        }
    }
    if !ended {
        return Err(parse_err(lines.last().map_or(1, |l| l.0), "missing `end`"));
    }
    Ok(s)
}

fn finish(s: &mut Structure, name: &str, arity: usize, line: usize, tuples: Vec<Vec<usize>>) -> Result<()> {
    s.add_relation(name, arity, tuples).map_err(|e| match e {
        Error::Signature(msg) => parse_err(line, msg),
        other => other,
    })
}
