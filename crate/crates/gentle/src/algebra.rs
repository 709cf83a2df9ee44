//! Quivers with quadratic monomial relations, the gentle axioms, and the
//! walk/path/thread combinatorics shared by everything else.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Quiver data as read from a file, before the gentle axioms are checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(usize, usize)>,
}

/// The clause of the gentle definition that a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Clause {
    OutDegree,
    InDegree,
    RelationAfter,
    RelationBefore,
    ComposableAfter,
    ComposableBefore,
    RelationNotComposable,
    UnboundedPaths,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::OutDegree => "out-degree <= 2",
            Clause::InDegree => "in-degree <= 2",
            Clause::RelationAfter => "at most one arrow b with ab in I",
            Clause::RelationBefore => "at most one arrow c with ca in I",
            Clause::ComposableAfter => "at most one arrow b with ab not in I",
            Clause::ComposableBefore => "at most one arrow c with ca not in I",
            Clause::RelationNotComposable => "relations are composable arrow pairs",
            Clause::UnboundedPaths => "finitely many paths avoid the relations",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Subject {
    Vertex(String),
    Arrow(String),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Vertex(v) => write!(f, "vertex {v}"),
            Subject::Arrow(a) => write!(f, "arrow {a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub subject: Subject,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.clause, self.subject)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: undeclared {kind} `{name}`")]
    Undeclared {
        line: usize,
        kind: &'static str,
        name: String,
    },
    #[error("line {line}: duplicate identifier `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("not gentle: {}", join_violations(.0))]
    NotGentle(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One of the two slots a vertex contributes to a thread.
///
/// For fan slots the pair composes to a nonzero path; for polygon (side)
/// slots the pair is a relation. Missing arrows are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Slot {
    pub inn: Option<usize>,
    pub out: Option<usize>,
}

/// A maximal chain of slots linked by arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thread {
    pub vertices: Vec<usize>,
    /// Slot index (0 or 1) used at each vertex.
    pub slots: Vec<usize>,
    /// `arrows[i]` joins `vertices[i]` to `vertices[i + 1]` (cyclically when `cyclic`).
    pub arrows: Vec<usize>,
    pub cyclic: bool,
}

impl Thread {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A validated gentle algebra. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GentleAlgebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(usize, usize)>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    ends: Vec<[Slot; 2]>,
    sides: Vec<[Slot; 2]>,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(i, t)| (line[..i].chars().count() + 1, t))
        .collect()
}

/// Reads the line-oriented algebra format without checking gentleness.
pub fn parse_raw(text: &str) -> Result<RawQuiver, AlgebraError> {
    let mut raw = RawQuiver::default();
    let mut vidx: HashMap<String, usize> = HashMap::new();
    let mut aidx: HashMap<String, usize> = HashMap::new();
    let mut seen_vertices = false;
    let mut rels = BTreeSet::new();
    for (ln, full) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match full.find('#') {
            Some(i) => &full[..i],
            None => full,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(AlgebraError::Syntax {
                line: line_no,
                column: col,
                message: "expected `keyword:`".into(),
            });
        };
        let keyword = line[..colon].trim();
        let rest = &line[colon + 1..];
        let offset = line[..colon + 1].chars().count();
        let toks: Vec<(usize, &str)> = tokens(rest)
            .into_iter()
            .map(|(c, t)| (c + offset, t))
            .collect();
        for &(col, t) in &toks {
            if !is_ident(t) {
                return Err(AlgebraError::Syntax {
                    line: line_no,
                    column: col,
                    message: format!("invalid identifier `{t}`"),
                });
            }
        }
        let arity_err = |want: usize| AlgebraError::Syntax {
            line: line_no,
            column: toks
                .get(want)
                .map(|t| t.0)
                .unwrap_or(line.chars().count() + 1),
            message: format!("`{keyword}` takes exactly {want} identifiers"),
        };
        match keyword {
            "vertices" => {
                if seen_vertices {
                    return Err(AlgebraError::Syntax {
                        line: line_no,
                        column: 1,
                        message: "second `vertices` line".into(),
                    });
                }
                seen_vertices = true;
                for &(_, t) in &toks {
                    if vidx.contains_key(t) {
                        return Err(AlgebraError::Duplicate {
                            line: line_no,
                            name: t.into(),
                        });
                    }
                    vidx.insert(t.into(), raw.vertices.len());
                    raw.vertices.push(t.into());
                }
            }
            "arrow" => {
                if toks.len() != 3 {
                    return Err(arity_err(3));
                }
                let name = toks[0].1;
                if aidx.contains_key(name) {
                    return Err(AlgebraError::Duplicate {
                        line: line_no,
                        name: name.into(),
                    });
                }
                let look = |t: &str| {
                    vidx.get(t).copied().ok_or(AlgebraError::Undeclared {
                        line: line_no,
                        kind: "vertex",
                        name: t.into(),
                    })
                };
                let source = look(toks[1].1)?;
                let target = look(toks[2].1)?;
                aidx.insert(name.into(), raw.arrows.len());
                raw.arrows.push(Arrow {
                    name: name.into(),
                    source,
                    target,
                });
            }
            "rel" => {
                if toks.len() != 2 {
                    return Err(arity_err(2));
                }
                let look = |t: &str| {
                    aidx.get(t).copied().ok_or(AlgebraError::Undeclared {
                        line: line_no,
                        kind: "arrow",
                        name: t.into(),
                    })
                };
                let a = look(toks[0].1)?;
                let b = look(toks[1].1)?;
                if rels.insert((a, b)) {
                    raw.relations.push((a, b));
                }
            }
            other => {
                return Err(AlgebraError::Syntax {
                    line: line_no,
                    column: 1 + line.len() - line.trim_start().len(),
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    if !seen_vertices || raw.vertices.is_empty() {
        return Err(AlgebraError::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "no vertices declared".into(),
        });
    }
    Ok(raw)
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<GentleAlgebra, AlgebraError> {
    GentleAlgebra::new(parse_raw(text)?)
}

/// Checks every gentle clause; an empty list means the data is gentle.
///
/// Besides the quadratic-monomial clauses this also rejects oriented cycles
/// on which no relation occurs, since those make the algebra infinite
/// dimensional.
pub fn validate_gentle(raw: &RawQuiver) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = raw.vertices.len();
    let vname = |v: usize| Subject::Vertex(raw.vertices[v].clone());
    let aname = |a: usize| Subject::Arrow(raw.arrows[a].name.clone());
    let mut outd = vec![0usize; n];
    let mut ind = vec![0usize; n];
    for a in &raw.arrows {
        outd[a.source] += 1;
        ind[a.target] += 1;
    }
    for v in 0..n {
        if outd[v] > 2 {
            out.push(Violation {
                clause: Clause::OutDegree,
                subject: vname(v),
            });
        }
        if ind[v] > 2 {
            out.push(Violation {
                clause: Clause::InDegree,
                subject: vname(v),
            });
        }
    }
    let rels: BTreeSet<(usize, usize)> = raw.relations.iter().copied().collect();
    for &(a, b) in &rels {
        if raw.arrows[a].target != raw.arrows[b].source {
            out.push(Violation {
                clause: Clause::RelationNotComposable,
                subject: aname(a),
            });
        }
    }
    let m = raw.arrows.len();
    for a in 0..m {
        let after: Vec<usize> = (0..m)
            .filter(|&b| raw.arrows[b].source == raw.arrows[a].target)
            .collect();
        let before: Vec<usize> = (0..m)
            .filter(|&c| raw.arrows[c].target == raw.arrows[a].source)
            .collect();
        let rel_after = after.iter().filter(|&&b| rels.contains(&(a, b))).count();
        let rel_before = before.iter().filter(|&&c| rels.contains(&(c, a))).count();
        let ok_after = after.len() - rel_after;
        let ok_before = before.len() - rel_before;
        for (count, clause) in [
            (rel_after, Clause::RelationAfter),
            (rel_before, Clause::RelationBefore),
            (ok_after, Clause::ComposableAfter),
            (ok_before, Clause::ComposableBefore),
        ] {
            if count > 1 {
                out.push(Violation {
                    clause,
                    subject: aname(a),
                });
            }
        }
    }
    if out.is_empty() {
        // Each arrow now has at most one nonzero continuation; a cycle of
        // those continuations is an unbounded family of nonzero paths.
        let next = |a: usize| {
            (0..m)
                .find(|&b| raw.arrows[b].source == raw.arrows[a].target && !rels.contains(&(a, b)))
        };
        let mut reported = vec![false; m];
        for a in 0..m {
            let mut cur = a;
            let mut steps = 0;
            while let Some(b) = next(cur) {
                cur = b;
                steps += 1;
                if cur == a {
                    if !reported[a] {
                        let mut c = a;
                        loop {
                            reported[c] = true;
                            c = next(c).expect("cycle");
                            if c == a {
                                break;
                            }
                        }
                        out.push(Violation {
                            clause: Clause::UnboundedPaths,
                            subject: aname(a),
                        });
                    }
                    break;
                }
                if steps > m {
                    break;
                }
            }
        }
    }
    out
}

impl GentleAlgebra {
    pub fn new(raw: RawQuiver) -> Result<Self, AlgebraError> {
        let violations = validate_gentle(&raw);
        if !violations.is_empty() {
            return Err(AlgebraError::NotGentle(violations));
        }
        let n = raw.vertices.len();
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for (i, a) in raw.arrows.iter().enumerate() {
            out_arrows[a.source].push(i);
            in_arrows[a.target].push(i);
        }
        let relations: BTreeSet<(usize, usize)> = raw.relations.iter().copied().collect();
        let vertex_index = raw
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let arrow_index = raw
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), i))
            .collect();
        let mut alg = GentleAlgebra {
            vertices: raw.vertices,
            arrows: raw.arrows,
            relations,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
            ends: Vec::new(),
            sides: Vec::new(),
        };
        alg.ends = (0..n).map(|v| alg.pair_slots(v, false)).collect();
        alg.sides = (0..n).map(|v| alg.pair_slots(v, true)).collect();
        Ok(alg)
    }

    /// Pairs the in- and out-arrows at `v`: relation pairs when `relation`,
    /// nonzero compositions otherwise, padding to exactly two slots.
    fn pair_slots(&self, v: usize, relation: bool) -> [Slot; 2] {
        let mut slots = Vec::new();
        let mut used_out = Vec::new();
        for &c in &self.in_arrows[v] {
            let partner = self.out_arrows[v]
                .iter()
                .copied()
                .find(|&b| self.is_relation(c, b) == relation && !used_out.contains(&b));
            if let Some(b) = partner {
                used_out.push(b);
            }
            slots.push(Slot {
                inn: Some(c),
                out: partner,
            });
        }
        for &b in &self.out_arrows[v] {
            if !used_out.contains(&b) {
                slots.push(Slot {
                    inn: None,
                    out: Some(b),
                });
            }
        }
        assert!(slots.len() <= 2, "gentle vertex with more than two slots");
        while slots.len() < 2 {
            slots.push(Slot::default());
        }
        [slots[0], slots[1]]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    /// Number of arrow ends at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.out_arrows[v].len() + self.in_arrows[v].len()
    }

    /// The fan (composable) slots of `v`.
    pub fn end_slots(&self, v: usize) -> [Slot; 2] {
        self.ends[v]
    }

    /// The polygon (relation) slots of `v`.
    pub fn side_slots(&self, v: usize) -> [Slot; 2] {
        self.sides[v]
    }

    /// The unique arrow `b` with `ab` nonzero, if any.
    pub fn continuation(&self, a: usize) -> Option<usize> {
        let t = self.arrows[a].target;
        self.out_arrows[t]
            .iter()
            .copied()
            .find(|&b| !self.is_relation(a, b))
    }

    /// The unique arrow `c` with `ca` nonzero, if any.
    pub fn precursor(&self, a: usize) -> Option<usize> {
        let s = self.arrows[a].source;
        self.in_arrows[s]
            .iter()
            .copied()
            .find(|&c| !self.is_relation(c, a))
    }

    /// Direct walks of exactly `len` arrows whose consecutive pairs are all
    /// relations, in lexicographic order of arrow indices.
    pub fn full_relation_walks(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut stack: Vec<Vec<usize>> = (0..self.arrows.len()).rev().map(|a| vec![a]).collect();
        while let Some(w) = stack.pop() {
            if w.len() == len {
                out.push(w);
                continue;
            }
            let last = *w.last().expect("nonempty");
            let t = self.arrows[last].target;
            let mut nexts: Vec<usize> = self.out_arrows[t]
                .iter()
                .copied()
                .filter(|&b| self.is_relation(last, b))
                .collect();
            nexts.sort_unstable();
            for b in nexts.into_iter().rev() {
                let mut w2 = w.clone();
                w2.push(b);
                stack.push(w2);
            }
        }
        out.sort();
        out
    }

    /// All nonzero paths starting at `v`, the trivial one first.
    pub fn paths_from(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &b in &self.out_arrows[v] {
            let mut p = vec![b];
            out.push(p.clone());
            while let Some(c) = self.continuation(*p.last().expect("nonempty")) {
                p.push(c);
                out.push(p.clone());
            }
        }
        out
    }

    /// All nonzero paths ending at `v`, the trivial one first.
    pub fn paths_to(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &c in &self.in_arrows[v] {
            let mut p = vec![c];
            out.push(p.clone());
            while let Some(d) = self.precursor(p[0]) {
                p.insert(0, d);
                out.push(p.clone());
            }
        }
        out
    }

    /// Target vertex of a path that starts at `v`.
    pub fn path_end(&self, v: usize, path: &[usize]) -> usize {
        path.last().map(|&a| self.arrows[a].target).unwrap_or(v)
    }

    /// Start vertex of a path that ends at `v`.
    pub fn path_start(&self, v: usize, path: &[usize]) -> usize {
        path.first().map(|&a| self.arrows[a].source).unwrap_or(v)
    }

    fn threads(&self, slots: &[[Slot; 2]]) -> Vec<Thread> {
        let n = self.vertices.len();
        let mut at_in: HashMap<usize, (usize, usize)> = HashMap::new();
        for v in 0..n {
            for k in 0..2 {
                if let Some(c) = slots[v][k].inn {
                    at_in.insert(c, (v, k));
                }
            }
        }
        let mut seen = vec![[false; 2]; n];
        let mut out = Vec::new();
        let walk = |start: (usize, usize), seen: &mut Vec<[bool; 2]>, cyclic: bool| {
            let mut th = Thread {
                vertices: Vec::new(),
                slots: Vec::new(),
                arrows: Vec::new(),
                cyclic,
            };
            let (mut v, mut k) = start;
            loop {
                seen[v][k] = true;
                th.vertices.push(v);
                th.slots.push(k);
                match slots[v][k].out {
                    Some(b) => {
                        th.arrows.push(b);
                        let nxt = at_in[&b];
                        if nxt == start {
                            break;
                        }
                        (v, k) = nxt;
                    }
                    None => break,
                }
            }
            th
        };
        for v in 0..n {
            for k in 0..2 {
                if slots[v][k].inn.is_none() && !seen[v][k] {
                    out.push(walk((v, k), &mut seen, false));
                }
            }
        }
        for v in 0..n {
            for k in 0..2 {
                if !seen[v][k] {
                    out.push(walk((v, k), &mut seen, true));
                }
            }
        }
        out.sort_by(|a, b| (&a.vertices, &a.slots).cmp(&(&b.vertices, &b.slots)));
        out
    }

    /// Maximal chains of relations, including trivial ones; cyclic chains
    /// close up into full-relation cycles.
    pub fn forbidden_threads(&self) -> Vec<Thread> {
        self.threads(&self.sides)
    }

    /// Maximal nonzero direct paths, including trivial ones.
    pub fn permitted_threads(&self) -> Vec<Thread> {
        self.threads(&self.ends)
    }

    /// Length (in arrows) of the longest forbidden thread, or `None` when a
    /// forbidden thread is cyclic.
    pub fn longest_forbidden_thread(&self) -> Option<usize> {
        let th = self.forbidden_threads();
        if th.iter().any(|t| t.cyclic) {
            return None;
        }
        Some(th.iter().map(|t| t.arrows.len()).max().unwrap_or(0))
    }

    /// Renders a direct path such as `a·c`.
    pub fn path_name(&self, path: &[usize]) -> String {
        path.iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: self.relations.iter().copied().collect(),
        }
    }

    /// Serializes back to the line format accepted by [`parse_algebra`].
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.vertices.join(" "));
        for a in &self.arrows {
            s += &format!(
                "arrow: {} {} {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            );
        }
        for &(a, b) in &self.relations {
            s += &format!("rel: {} {}\n", self.arrows[a].name, self.arrows[b].name);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";

    fn names(alg: &GentleAlgebra, th: &[Thread]) -> BTreeSet<Vec<String>> {
        th.iter()
            .map(|t| {
                t.vertices
                    .iter()
                    .map(|&v| alg.vertex_name(v).to_string())
                    .collect()
            })
            .collect()
    }

    fn set(items: &[&[&str]]) -> BTreeSet<Vec<String>> {
        items
            .iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    /// Independent pairing: glue arrows into relation (or composition)
    /// successors and count how often each vertex is covered.
    fn slot_cover(alg: &GentleAlgebra, relation: bool) -> Vec<usize> {
        let mut cover = vec![0; alg.vertex_count()];
        for th in if relation {
            alg.forbidden_threads()
        } else {
            alg.permitted_threads()
        } {
            for w in th.arrows.windows(2) {
                assert_eq!(alg.is_relation(w[0], w[1]), relation);
            }
            for v in th.vertices {
                cover[v] += 1;
            }
        }
        cover
    }

    #[test]
    fn parses_square() {
        let alg = parse_algebra(SQUARE).unwrap();
        assert_eq!(alg.vertex_count(), 4);
        assert_eq!(alg.arrow_count(), 4);
        assert_eq!(alg.relations().len(), 2);
    }

    #[test]
    fn smallest_hereditary() {
        let alg = parse_algebra("vertices: 1 2\narrow: a 1 2\n").unwrap();
        assert_eq!((alg.vertex_count(), alg.arrow_count()), (2, 1));
        assert_eq!(alg.full_relation_walks(1), vec![vec![0]]);
        assert!(alg.full_relation_walks(2).is_empty());
        assert_eq!(
            names(&alg, &alg.forbidden_threads()),
            set(&[&["1", "2"], &["1"], &["2"]])
        );
        assert_eq!(
            names(&alg, &alg.permitted_threads()),
            set(&[&["1", "2"], &["1"], &["2"]])
        );
    }

    #[test]
    fn three_out_arrows_names_vertex() {
        let text = "vertices: 1 2 3 4\narrow: a 1 2\narrow: b 1 3\narrow: c 1 4\n";
        match parse_algebra(text) {
            Err(AlgebraError::NotGentle(v)) => {
                assert!(v.contains(&Violation {
                    clause: Clause::OutDegree,
                    subject: Subject::Vertex("1".into())
                }));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn shared_first_arrow_relations() {
        let text =
            "vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 3\narrow: c 2 4\nrel: a b\nrel: a c\n";
        let raw = parse_raw(text).unwrap();
        let v = validate_gentle(&raw);
        assert!(v
            .iter()
            .any(|x| x.clause == Clause::RelationAfter && x.subject == Subject::Arrow("a".into())));
    }

    #[test]
    fn single_arrow_relation_is_syntax() {
        let err = parse_algebra("vertices: 1 2\narrow: a 1 2\nrel: a\n").unwrap_err();
        assert!(matches!(err, AlgebraError::Syntax { line: 3, .. }));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_algebra("vertices: 1 2\narrow: a 1 2 x\n").unwrap_err();
        assert_eq!(
            err,
            AlgebraError::Syntax {
                line: 2,
                column: 14,
                message: "`arrow` takes exactly 3 identifiers".into()
            }
        );
        assert!(matches!(
            parse_algebra("vertices: 1 2\narrow: a 1 9\n"),
            Err(AlgebraError::Undeclared {
                line: 2,
                kind: "vertex",
                ..
            })
        ));
        assert!(matches!(
            parse_algebra("vertices: 1 2 1\n"),
            Err(AlgebraError::Duplicate { line: 1, .. })
        ));
        assert!(matches!(
            parse_algebra("vertices: 1 2\nfoo: x\n"),
            Err(AlgebraError::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_algebra("vertices: 1 2\narrow: a-b 1 2\n"),
            Err(AlgebraError::Syntax {
                line: 2,
                column: 8,
                ..
            })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let alg = parse_algebra("# quiver\n\nvertices: x y # two\narrow: a x y\n").unwrap();
        assert_eq!(alg.vertex_names(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn unrelated_oriented_cycle_is_rejected() {
        let text = "vertices: 1 2\narrow: a 1 2\narrow: b 2 1\n";
        assert!(parse_algebra("vertices: 1 2\narrow: a 1 2\narrow: b 2 1\nrel: a b\n").is_ok());
        let err = parse_algebra(text).unwrap_err();
        match err {
            AlgebraError::NotGentle(v) => assert_eq!(v[0].clause, Clause::UnboundedPaths),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_walks_and_threads() {
        let alg = parse_algebra(SQUARE).unwrap();
        let walks: Vec<String> = alg
            .full_relation_walks(2)
            .iter()
            .map(|w| alg.path_name(w))
            .collect();
        assert_eq!(walks, vec!["a·c", "b·d"]);
        assert_eq!(
            names(&alg, &alg.forbidden_threads()),
            set(&[&["4", "3", "1"], &["4", "2", "1"], &["3"], &["2"]])
        );
        assert_eq!(
            names(&alg, &alg.permitted_threads()),
            set(&[&["4", "3"], &["4", "2"], &["3", "1"], &["2", "1"]])
        );
        assert_eq!(slot_cover(&alg, true), vec![2; 4]);
        assert_eq!(slot_cover(&alg, false), vec![2; 4]);
    }

    #[test]
    fn linear_threads() {
        let alg = parse_algebra("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrel: a b\n").unwrap();
        assert_eq!(alg.full_relation_walks(2), vec![vec![0, 1]]);
        assert_eq!(
            names(&alg, &alg.forbidden_threads()),
            set(&[&["1", "2", "3"], &["1"], &["2"], &["3"]])
        );
        assert_eq!(
            names(&alg, &alg.permitted_threads()),
            set(&[&["1", "2"], &["2", "3"], &["1"], &["3"]])
        );
    }

    #[test]
    fn two_cycle_is_cyclic_thread() {
        let alg = parse_algebra("vertices: x y\narrow: a x y\narrow: b y x\nrel: a b\nrel: b a\n")
            .unwrap();
        let th = alg.forbidden_threads();
        assert_eq!(th.iter().filter(|t| t.cyclic).count(), 1);
        assert_eq!(alg.longest_forbidden_thread(), None);
    }

    #[test]
    fn paths_of_square() {
        let alg = parse_algebra(SQUARE).unwrap();
        let v4 = alg.vertex("4").unwrap();
        let p: Vec<String> = alg
            .paths_from(v4)
            .iter()
            .map(|p| alg.path_name(p))
            .collect();
        assert_eq!(p, vec!["", "a", "b"]);
        let v1 = alg.vertex("1").unwrap();
        let q: Vec<String> = alg.paths_to(v1).iter().map(|p| alg.path_name(p)).collect();
        assert_eq!(q, vec!["", "c", "d"]);
    }

    #[test]
    fn text_round_trip() {
        let alg = parse_algebra(SQUARE).unwrap();
        assert_eq!(parse_algebra(&alg.to_text()).unwrap(), alg);
    }
}
