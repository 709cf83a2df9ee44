//! Letters, walks, strings and string modules.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::GentleAlgebra;
use crate::linalg::{Field, Matrix};

/// An arrow or its formal inverse. Ordered by arrow index, forward first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter {
            arrow,
            inverse: false,
        }
    }

    pub fn inv(arrow: usize) -> Self {
        Letter {
            arrow,
            inverse: true,
        }
    }

    pub fn flipped(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn from(self, alg: &GentleAlgebra) -> usize {
        let a = alg.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn to(self, alg: &GentleAlgebra) -> usize {
        let a = alg.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

/// A walk: a start vertex and a (possibly empty) sequence of letters.
///
/// With letters it is also used for strings; the canonical representative
/// of a string is the smaller of the word and its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Str {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl PartialOrd for Str {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Str {
    /// Shorter words first, then the word itself, then the anchor vertex.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.letters.len(), &self.letters, self.start).cmp(&(
            other.letters.len(),
            &other.letters,
            other.start,
        ))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("empty string notation")]
    Empty,
    #[error("letters do not form a walk at position {0}")]
    NotWalk(usize),
    #[error("walk runs through a relation at position {0}")]
    Relation(usize),
}

impl Str {
    pub fn trivial(v: usize) -> Self {
        Str {
            start: v,
            letters: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn vertices(&self, alg: &GentleAlgebra) -> Vec<usize> {
        let mut out = vec![self.start];
        for l in &self.letters {
            out.push(l.to(alg));
        }
        out
    }

    pub fn end(&self, alg: &GentleAlgebra) -> usize {
        self.letters.last().map(|l| l.to(alg)).unwrap_or(self.start)
    }

    pub fn inverse(&self, alg: &GentleAlgebra) -> Str {
        Str {
            start: self.end(alg),
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    pub fn canonical(&self, alg: &GentleAlgebra) -> Str {
        let inv = self.inverse(alg);
        if inv.letters < self.letters {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self, alg: &GentleAlgebra) -> bool {
        self.canonical(alg) == *self
    }

    /// Parses `a~ b` style notation or `e(v)`.
    pub fn parse(alg: &GentleAlgebra, text: &str) -> Result<Str, StringError> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let v = alg
                .vertex(inner.trim())
                .ok_or_else(|| StringError::UnknownVertex(inner.trim().into()))?;
            return Ok(Str::trivial(v));
        }
        let mut letters = Vec::new();
        for tok in t.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix('~') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let a = alg
                .arrow_id(name)
                .ok_or_else(|| StringError::UnknownArrow(name.into()))?;
            letters.push(Letter { arrow: a, inverse });
        }
        if letters.is_empty() {
            return Err(StringError::Empty);
        }
        let s = Str {
            start: letters[0].from(alg),
            letters,
        };
        s.check(alg)?;
        Ok(s)
    }

    /// Walk and relation-avoidance checks with the failing position.
    pub fn check(&self, alg: &GentleAlgebra) -> Result<(), StringError> {
        if let Some(f) = self.letters.first() {
            if f.from(alg) != self.start {
                return Err(StringError::NotWalk(0));
            }
        }
        for (i, w) in self.letters.windows(2).enumerate() {
            let (x, y) = (w[0], w[1]);
            if x.to(alg) != y.from(alg) || y == x.flipped() {
                return Err(StringError::NotWalk(i + 1));
            }
            if !x.inverse && !y.inverse && alg.is_relation(x.arrow, y.arrow) {
                return Err(StringError::Relation(i + 1));
            }
            if x.inverse && y.inverse && alg.is_relation(y.arrow, x.arrow) {
                return Err(StringError::Relation(i + 1));
            }
        }
        Ok(())
    }

    pub fn display(&self, alg: &GentleAlgebra) -> String {
        if self.letters.is_empty() {
            return format!("e({})", alg.vertex_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| {
                let n = &alg.arrow(l.arrow).name;
                if l.inverse {
                    format!("{n}~")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Dimension vector of the string module.
    pub fn dims(&self, alg: &GentleAlgebra) -> Vec<usize> {
        let mut d = vec![0; alg.vertex_count()];
        for v in self.vertices(alg) {
            d[v] += 1;
        }
        d
    }

    /// Concatenation; the caller guarantees `other` starts where `self` ends.
    pub fn concat(&self, other: &Str) -> Str {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Str {
            start: self.start,
            letters,
        }
    }
}

/// Whether a walk (no backtracking, endpoints matching) avoids relations.
pub fn is_string(alg: &GentleAlgebra, w: &Str) -> bool {
    w.check(alg).is_ok()
}

/// Whether `next` may follow `prev` in a string.
pub fn may_follow(alg: &GentleAlgebra, prev: Letter, next: Letter) -> bool {
    if prev.to(alg) != next.from(alg) || next == prev.flipped() {
        return false;
    }
    match (prev.inverse, next.inverse) {
        (false, false) => !alg.is_relation(prev.arrow, next.arrow),
        (true, true) => !alg.is_relation(next.arrow, prev.arrow),
        _ => true,
    }
}

/// Letters that can start at vertex `v`.
pub fn letters_at(alg: &GentleAlgebra, v: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = alg
        .out_arrows(v)
        .iter()
        .map(|&a| Letter::direct(a))
        .collect();
    out.extend(alg.in_arrows(v).iter().map(|&a| Letter::inv(a)));
    out.sort();
    out
}

/// Canonical strings of length at most `max_len` and whether a band word
/// of length at most `max_len` exists.
pub fn enumerate_strings(alg: &GentleAlgebra, max_len: usize) -> (Vec<Str>, bool) {
    let mut found = BTreeSet::new();
    let mut band = false;
    for v in 0..alg.vertex_count() {
        found.insert(Str::trivial(v));
        let mut stack: Vec<Str> = letters_at(alg, v)
            .into_iter()
            .map(|l| Str {
                start: v,
                letters: vec![l],
            })
            .collect();
        while let Some(s) = stack.pop() {
            if !band && is_band_word(alg, &s) {
                band = true;
            }
            found.insert(s.canonical(alg));
            if s.len() == max_len {
                continue;
            }
            let last = *s.letters.last().expect("nonempty");
            for l in letters_at(alg, last.to(alg)) {
                if may_follow(alg, last, l) {
                    let mut t = s.clone();
                    t.letters.push(l);
                    stack.push(t);
                }
            }
        }
    }
    (found.into_iter().collect(), band)
}

/// A closed word that can be repeated indefinitely and is not a proper power.
pub fn is_band_word(alg: &GentleAlgebra, s: &Str) -> bool {
    if s.is_empty() || s.end(alg) != s.start {
        return false;
    }
    let first = s.letters[0];
    let last = *s.letters.last().expect("nonempty");
    if !may_follow(alg, last, first) {
        return false;
    }
    if s.letters.iter().all(|l| l.inverse) || s.letters.iter().all(|l| !l.inverse) {
        return false;
    }
    let n = s.len();
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .all(|d| s.letters[..n - d] != s.letters[d..])
}

/// Canonical strings whose dimension vector is bounded by `bound`.
pub fn strings_within(alg: &GentleAlgebra, bound: &[usize]) -> Vec<Str> {
    let mut found = BTreeSet::new();
    for v in 0..alg.vertex_count() {
        if bound[v] == 0 {
            continue;
        }
        let mut used = vec![0usize; alg.vertex_count()];
        used[v] = 1;
        let mut stack = vec![(Str::trivial(v), used)];
        while let Some((s, used)) = stack.pop() {
            found.insert(s.canonical(alg));
            let end = s.end(alg);
            for l in letters_at(alg, end) {
                if let Some(&last) = s.letters.last() {
                    if !may_follow(alg, last, l) {
                        continue;
                    }
                }
                let w = l.to(alg);
                if used[w] < bound[w] {
                    let mut u = used.clone();
                    u[w] += 1;
                    let mut t = s.clone();
                    t.letters.push(l);
                    stack.push((t, u));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// A string module: one basis vector per position of the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringModule {
    pub string: Str,
    pub dims: Vec<usize>,
    /// For each arrow, the position pairs `(from, to)` it maps between.
    pub actions: Vec<Vec<(usize, usize)>>,
    /// Vertex of each position.
    pub positions: Vec<usize>,
}

pub fn string_module(alg: &GentleAlgebra, s: &Str) -> StringModule {
    let positions = s.vertices(alg);
    let mut actions = vec![Vec::new(); alg.arrow_count()];
    for (i, l) in s.letters.iter().enumerate() {
        if l.inverse {
            actions[l.arrow].push((i + 1, i));
        } else {
            actions[l.arrow].push((i, i + 1));
        }
    }
    StringModule {
        string: s.clone(),
        dims: s.dims(alg),
        actions,
        positions,
    }
}

/// A quiver representation: a space per vertex and a matrix per arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<F> {
    pub dims: Vec<usize>,
    /// `maps[a]` has `dims[target]` rows and `dims[source]` columns.
    pub maps: Vec<Matrix<F>>,
}

impl<F: Field> Rep<F> {
    pub fn zero(alg: &GentleAlgebra) -> Self {
        Rep {
            dims: vec![0; alg.vertex_count()],
            maps: alg.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn from_string(alg: &GentleAlgebra, s: &Str) -> Self {
        let m = string_module(alg, s);
        // Local coordinate of each position inside its vertex space.
        let mut local = Vec::with_capacity(m.positions.len());
        let mut count = vec![0usize; alg.vertex_count()];
        for &v in &m.positions {
            local.push(count[v]);
            count[v] += 1;
        }
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut mat = Matrix::zeros(m.dims[arr.target], m.dims[arr.source]);
                for &(i, j) in &m.actions[a] {
                    mat.set(local[j], local[i], F::one());
                }
                mat
            })
            .collect();
        Rep { dims: m.dims, maps }
    }

    /// Image of `vec` (at vertex `v`) under the path `p` starting at `v`.
    pub fn apply_path(&self, alg: &GentleAlgebra, p: &[usize], vec: &[F]) -> Vec<F> {
        let mut cur = vec.to_vec();
        for &a in p {
            cur = self.maps[a].apply(&cur);
        }
        let _ = alg;
        cur
    }

    /// Matrix of the path `p` from `v` to its end.
    pub fn path_matrix(&self, alg: &GentleAlgebra, v: usize, p: &[usize]) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[v]);
        for &a in p {
            m = self.maps[a].mul(&m);
        }
        let _ = alg;
        m
    }

    /// Checks that every relation acts as zero.
    pub fn satisfies_relations(&self, alg: &GentleAlgebra) -> bool {
        alg.relations()
            .iter()
            .all(|&(a, b)| self.maps[b].mul(&self.maps[a]).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::linalg::Q;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";

    fn sq() -> GentleAlgebra {
        parse_algebra(SQUARE).unwrap()
    }

    #[test]
    fn is_string_examples() {
        let alg = sq();
        assert!(is_string(&alg, &Str::parse(&alg, "a~ b").unwrap()));
        assert_eq!(Str::parse(&alg, "b d"), Err(StringError::Relation(1)));
        assert!(is_string(&alg, &Str::trivial(2)));
        assert_eq!(Str::parse(&alg, "a a~"), Err(StringError::NotWalk(1)));
    }

    #[test]
    fn square_enumeration() {
        let alg = sq();
        let (s, band) = enumerate_strings(&alg, 2);
        let shown: Vec<String> = s.iter().map(|x| x.display(&alg)).collect();
        assert_eq!(
            shown,
            vec!["e(1)", "e(2)", "e(3)", "e(4)", "a", "b", "c", "d", "a~ b", "c d~"]
        );
        assert!(!band);
        // Representation-finite: nothing longer appears.
        assert_eq!(enumerate_strings(&alg, 6).0.len(), 10);
    }

    #[test]
    fn a2_enumeration() {
        let alg = parse_algebra("vertices: 1 2\narrow: a 1 2\n").unwrap();
        let (s, band) = enumerate_strings(&alg, 5);
        assert_eq!(s.len(), 3);
        assert!(!band);
    }

    #[test]
    fn kronecker_band() {
        let alg = parse_algebra("vertices: 1 2\narrow: a 1 2\narrow: b 1 2\n").unwrap();
        let (_, band) = enumerate_strings(&alg, 2);
        assert!(band);
        let (_, short) = enumerate_strings(&alg, 1);
        assert!(!short);
    }

    #[test]
    fn module_dims() {
        let alg = sq();
        let c = Str::parse(&alg, "c").unwrap();
        assert_eq!(string_module(&alg, &c).dims, vec![1, 0, 1, 0]);
        let ab = Str::parse(&alg, "a~ b").unwrap();
        assert_eq!(ab.dims(&alg), vec![0, 1, 1, 1]);
        assert_eq!(Str::trivial(2).dims(&alg), vec![0, 0, 1, 0]);
        let r: Rep<Q> = Rep::from_string(&alg, &ab);
        assert!(r.satisfies_relations(&alg));
        assert_eq!(r.total_dim(), 3);
    }

    #[test]
    fn canonical_and_display() {
        let alg = sq();
        let s = Str::parse(&alg, "b~ a").unwrap();
        assert_eq!(s.canonical(&alg).display(&alg), "a~ b");
        assert_eq!(
            Str::parse(&alg, "d c~")
                .unwrap()
                .canonical(&alg)
                .display(&alg),
            "c d~"
        );
        assert_eq!(Str::parse(&alg, "e(3)").unwrap(), Str::trivial(2));
    }

    #[test]
    fn bounded_strings() {
        let alg = sq();
        let all = strings_within(&alg, &[1, 1, 1, 1]);
        assert_eq!(all.len(), 10);
        let some = strings_within(&alg, &[1, 0, 1, 0]);
        let shown: Vec<String> = some.iter().map(|x| x.display(&alg)).collect();
        assert_eq!(shown, vec!["e(1)", "e(3)", "c"]);
    }
}
