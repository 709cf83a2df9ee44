//! Higher syzygies and translates read off the surface, τₙ-closures of the
//! injectives, τₙ-sequences, n-completeness and the cone construction.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Arrow, GentleAlgebra};
use crate::arcs::{corner_arc, oriented_intersections, Arc, ArcError, Side};
use crate::oracle::{global_dimension, OracleError};
use crate::rigidity::{
    classify_partial_triangulation, face_decomposition, is_admissible, is_rigid_geometric,
    is_rigid_oracle, ArcSystem, RigidityError,
};
use crate::strings::{enumerate_strings, Str};
use crate::surface::{Kind, SurfaceError, SurfaceModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HigherError {
    #[error("global dimension is infinite")]
    InfiniteGldim,
    #[error("need n >= 2, got {0}")]
    SmallN(usize),
    #[error("not {n}-complete: walk {walk} has source {vertex} of degree {degree}")]
    NotComplete {
        n: usize,
        walk: String,
        vertex: String,
        degree: usize,
    },
    #[error("cone is not gentle: {0}")]
    Cone(AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
}

/// A gentle algebra of finite global dimension with its surface.
#[derive(Clone, Debug)]
pub struct HigherAr {
    s: SurfaceModel,
    gldim: usize,
}

impl HigherAr {
    pub fn new(alg: &GentleAlgebra, depth: usize) -> Result<Self, HigherError> {
        let gldim = global_dimension(alg, depth)?.ok_or(HigherError::InfiniteGldim)?;
        Ok(HigherAr {
            s: SurfaceModel::build(alg)?,
            gldim,
        })
    }

    pub fn gldim(&self) -> usize {
        self.gldim
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.s
    }

    pub fn algebra(&self) -> &GentleAlgebra {
        self.s.algebra()
    }

    fn is_projective(&self, w: &Str) -> bool {
        let alg = self.algebra();
        let c = w.canonical(alg);
        (0..alg.vertex_count()).any(|v| self.s.distinguished_string(v, Kind::Projective) == c)
    }

    fn corners(&self, w: &Str, m: usize, side: Side) -> Result<Vec<Str>, HigherError> {
        if m < 2 {
            return Err(HigherError::SmallN(m));
        }
        let arc = Arc::from_string(&self.s, w)?;
        let mut out = Vec::new();
        for e in [arc.start, arc.end] {
            if let Some(c) = corner_arc(&self.s, e.polygon, e.pos + 1 + m, side)? {
                out.push(c.word.canonical(self.algebra()));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Summands of the `m`-th syzygy from the two endpoint corner arcs,
    /// each flagged when projective.
    pub fn omega_m(&self, w: &Str, m: usize) -> Result<Vec<(Str, bool)>, HigherError> {
        Ok(self
            .corners(w, m, Side::Left)?
            .into_iter()
            .map(|x| {
                let p = self.is_projective(&x);
                (x, p)
            })
            .collect())
    }

    /// Non-projective summands of the `m`-th syzygy.
    pub fn omega_m_reduced(&self, w: &Str, m: usize) -> Result<Vec<Str>, HigherError> {
        Ok(self
            .omega_m(w, m)?
            .into_iter()
            .filter(|(_, p)| !p)
            .map(|(x, _)| x)
            .collect())
    }

    pub fn tau_m(&self, w: &Str, m: usize) -> Result<Vec<Str>, HigherError> {
        self.corners(w, m, Side::Right)
    }

    /// τₙ applied to every summand, with multiplicity.
    fn tau_all(&self, xs: &[Str], n: usize) -> Result<Vec<Str>, HigherError> {
        let mut out = Vec::new();
        for x in xs {
            out.extend(self.tau_m(x, n)?);
        }
        out.sort();
        Ok(out)
    }

    fn injectives(&self) -> Vec<Str> {
        let mut v = self.s.dissection_strings(Kind::Injective);
        v.sort();
        v
    }

    /// Iterated translates of the injectives: `layers[l]` is τₙ^l(DA).
    fn tau_layers(&self, n: usize, limit: usize) -> Result<(Vec<Vec<Str>>, bool), HigherError> {
        let mut layers = vec![self.injectives()];
        while !layers.last().expect("nonempty").is_empty() {
            if layers.len() > limit {
                return Ok((layers, false));
            }
            let next = self.tau_all(layers.last().expect("nonempty"), n)?;
            layers.push(next);
        }
        layers.pop();
        Ok((layers, true))
    }

    pub fn tau_dimension(&self, n: usize) -> Result<TauDimension, HigherError> {
        if n < 2 {
            return Err(HigherError::SmallN(n));
        }
        let seq = tau_sequences(self.algebra(), n, false);
        if seq.cycle.is_some() {
            return Ok(TauDimension {
                max_nonvanishing: None,
                vanishing: None,
            });
        }
        let limit = 4 * self.algebra().vertex_count() + 8;
        let (layers, done) = self.tau_layers(n, limit)?;
        if !done {
            return Ok(TauDimension {
                max_nonvanishing: None,
                vanishing: None,
            });
        }
        Ok(TauDimension {
            max_nonvanishing: Some(layers.len() - 1),
            vanishing: Some(layers.len()),
        })
    }

    pub fn is_tau_finite(&self, n: usize) -> Result<bool, HigherError> {
        let seq = tau_sequences(self.algebra(), n, false);
        let dim = self.tau_dimension(n)?;
        let finite = seq.cycle.is_none();
        assert_eq!(
            finite,
            dim.vanishing.is_some(),
            "cycle test and translate iteration disagree"
        );
        Ok(finite)
    }

    pub fn tau_closure(&self, n: usize, max_string_len: usize) -> Result<Closure, HigherError> {
        if n < 2 {
            return Err(HigherError::SmallN(n));
        }
        let seq = tau_sequences(self.algebra(), n, false);
        if let Some(w) = seq.cycle {
            return Ok(Closure {
                n,
                matches_gldim: n == self.gldim,
                modules: Vec::new(),
                system: None,
                partial: None,
                admissible: false,
                rigid: None,
                maximal: None,
                infinite: Some(w.render(self.algebra())),
            });
        }
        let limit = 4 * self.algebra().vertex_count() + 8;
        let (layers, _) = self.tau_layers(n, limit)?;
        let modules: Vec<Str> = layers
            .into_iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let system = ArcSystem::from_strings(&self.s, &modules)?;
        let fd = face_decomposition(&self.s, &system)?;
        let partial = classify_partial_triangulation(&fd).ok();
        let admissible = is_admissible(&self.s, &system);
        let (rigid, maximal) = if n == 2 {
            let g = is_rigid_geometric(&self.s, &modules)?;
            let o = is_rigid_oracle(&self.s, &modules)?;
            assert_eq!(g, o, "rigidity engines disagree on the closure");
            (Some(g), Some(is_maximal(&self.s, &system, max_string_len)))
        } else {
            (None, None)
        };
        Ok(Closure {
            n,
            matches_gldim: n == self.gldim,
            modules,
            system: Some(system),
            partial,
            admissible,
            rigid,
            maximal,
            infinite: None,
        })
    }

    /// The three arc sets attached to an n-complete algebra.
    pub fn subcategory_arc_sets(&self) -> Result<SubcategoryArcs, HigherError> {
        let n = self.gldim;
        let alg = self.algebra();
        let report = n_complete(alg, n);
        if let Some(bad) = report.walks.iter().find(|w| w.degree != 1) {
            return Err(bad.error(n));
        }
        let inj = self.injectives();
        let mut m = inj.clone();
        let mut perp = inj.clone();
        let mut removed = BTreeSet::new();
        let mut tops = Vec::new();
        for (pi, poly) in self.s.polygons.iter().enumerate() {
            if poly.puncture || poly.len() != n + 1 {
                continue;
            }
            let top = corner_arc(&self.s, pi, n + 1, Side::Right)?.expect("within the polygon");
            tops.push(top.word.canonical(alg));
            removed.insert(self.s.distinguished_string(poly.sides[0], Kind::Injective));
            for t in 1..=n + 1 {
                if let Some(a) = corner_arc(&self.s, pi, t, Side::Right)? {
                    perp.push(a.word.canonical(alg));
                }
            }
        }
        m.extend(tops.iter().cloned());
        let mut tilt: Vec<Str> = inj
            .iter()
            .filter(|x| !removed.contains(*x))
            .cloned()
            .collect();
        tilt.extend(tops);
        for v in [&mut m, &mut tilt, &mut perp] {
            v.sort();
            v.dedup();
        }
        let arcs: Vec<Arc> = tilt
            .iter()
            .map(|w| Arc::from_string(&self.s, w))
            .collect::<Result<_, _>>()?;
        let mut zero = true;
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if oriented_intersections(&self.s, a, b)
                    .iter()
                    .any(|x| x.weight != 0)
                {
                    zero = false;
                }
            }
        }
        Ok(SubcategoryArcs {
            closure: m,
            tilting_size_ok: tilt.len() == alg.vertex_count(),
            tilting: tilt,
            perp,
            weights_zero: zero,
        })
    }

    /// Whether the closure modules of projective dimension below n are
    /// exactly the projectives.
    pub fn is_absolutely_complete(&self) -> Result<AbsoluteReport, HigherError> {
        let n = self.gldim;
        let report = n_complete(self.algebra(), n);
        if let Some(bad) = report.walks.iter().find(|w| w.degree != 1) {
            return Err(bad.error(n));
        }
        let closure = self.tau_closure(n, 0)?;
        let alg = self.algebra();
        let o = crate::oracle::Oracle::rational(alg);
        let mut low = Vec::new();
        for x in &closure.modules {
            if o.projective_dimension(&o.string_rep(x))? < n {
                low.push(x.clone());
            }
        }
        let mut proj: Vec<Str> = (0..alg.vertex_count())
            .map(|v| self.s.distinguished_string(v, Kind::Projective))
            .collect();
        proj.sort();
        proj.dedup();
        Ok(AbsoluteReport {
            absolute: low == proj,
            low_pd: low,
            projectives: proj,
        })
    }
}

fn is_maximal(s: &SurfaceModel, sys: &ArcSystem, max_len: usize) -> bool {
    let (strs, _) = enumerate_strings(s.algebra(), max_len);
    for w in strs {
        let Ok(a) = Arc::from_string(s, &w) else {
            continue;
        };
        if sys.contains(s, &a) || !sys.compatible(s, &a) {
            continue;
        }
        let mut words = sys.strings();
        words.push(w.clone());
        if let Ok(true) = is_rigid_geometric(s, &words) {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauDimension {
    /// Largest l with τₙ^l(DA) nonzero.
    pub max_nonvanishing: Option<usize>,
    /// Smallest positive l with τₙ^l(DA) zero.
    pub vanishing: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub n: usize,
    pub matches_gldim: bool,
    pub modules: Vec<Str>,
    pub system: Option<ArcSystem>,
    /// Largest face size when the system is a partial triangulation.
    pub partial: Option<usize>,
    pub admissible: bool,
    pub rigid: Option<bool>,
    pub maximal: Option<bool>,
    /// Cycle witness when the closure is infinite.
    pub infinite: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SubcategoryArcs {
    pub closure: Vec<Str>,
    pub tilting: Vec<Str>,
    pub perp: Vec<Str>,
    pub weights_zero: bool,
    pub tilting_size_ok: bool,
}

#[derive(Clone, Debug)]
pub struct AbsoluteReport {
    pub absolute: bool,
    pub low_pd: Vec<Str>,
    pub projectives: Vec<Str>,
}

/// One block `r t̄` of a τₙ-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub r: Vec<usize>,
    /// A direct path ending where `r` ends, walked backwards; `t_start` is
    /// its start vertex.
    pub t: Vec<usize>,
    pub t_start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSequence {
    pub blocks: Vec<Block>,
}

impl TauSequence {
    pub fn render(&self, alg: &GentleAlgebra) -> String {
        let walk = |start: usize, p: &[usize]| {
            let mut names = vec![alg.vertex_name(start).to_string()];
            for &a in p {
                names.push(alg.vertex_name(alg.arrow(a).target).to_string());
            }
            names.join("→")
        };
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let rs = alg.arrow(b.r[0]).source;
                format!(
                    "r{}=({}), t{}={}",
                    i + 1,
                    walk(rs, &b.r),
                    i + 1,
                    walk(b.t_start, &b.t)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Clone, Debug)]
pub struct SequenceReport {
    /// Most blocks in a τₙ-sequence, `None` when unbounded.
    pub max_length: Option<usize>,
    pub cycle: Option<TauSequence>,
}

/// Nonzero direct paths ending at `x` whose last arrow is not `avoid`,
/// trivial path first.
fn paths_into(alg: &GentleAlgebra, x: usize, avoid: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = alg
        .paths_to(x)
        .into_iter()
        .filter(|p| p.last() != Some(&avoid))
        .collect();
    v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    v
}

type State = (usize, Option<usize>);

/// Blocks leaving a state: an `r` starting at the vertex whose first arrow is
/// not the forbidden one, then any admissible `t`.
fn moves(alg: &GentleAlgebra, walks: &[Vec<usize>], st: State) -> Vec<(Block, State)> {
    let mut out = Vec::new();
    for r in walks {
        if alg.arrow(r[0]).source != st.0 || Some(r[0]) == st.1 {
            continue;
        }
        let last = *r.last().expect("nonempty");
        let x = alg.arrow(last).target;
        for t in paths_into(alg, x, last) {
            let start = alg.path_start(x, &t);
            let next = (start, t.first().copied());
            out.push((
                Block {
                    r: r.clone(),
                    t: t.clone(),
                    t_start: start,
                },
                next,
            ));
        }
    }
    out
}

/// Longest τₙ-sequence and, if any, a shortest τₙ-cycle. With `strict` a
/// cycle must also close up as a walk at the wrap-around.
pub fn tau_sequences(alg: &GentleAlgebra, n: usize, strict: bool) -> SequenceReport {
    let mut walks = alg.full_relation_walks(n);
    walks.sort_by_key(|w| {
        let mut vs = vec![alg.arrow(w[0]).source];
        vs.extend(w.iter().map(|&a| alg.arrow(a).target));
        vs
    });
    let mut cycle = None;
    'search: for r1 in &walks {
        let home = alg.arrow(r1[0]).source;
        let mut seen: HashMap<State, (State, Block)> = HashMap::new();
        let mut queue = VecDeque::new();
        let root: State = (home, None);
        let first: Vec<_> = moves(alg, &walks, root)
            .into_iter()
            .filter(|(b, _)| &b.r == r1)
            .collect();
        for (b, st) in first {
            if let Entry::Vacant(e) = seen.entry(st) {
                e.insert((root, b));
                queue.push_back(st);
            }
        }
        while let Some(st) = queue.pop_front() {
            if st.0 == home && (!strict || st.1 != Some(r1[0])) {
                let mut blocks = Vec::new();
                let mut cur = st;
                loop {
                    let (prev, b) = seen[&cur].clone();
                    blocks.push(b);
                    if prev == root {
                        break;
                    }
                    cur = prev;
                }
                blocks.reverse();
                cycle = Some(TauSequence { blocks });
                break 'search;
            }
            for (b, nx) in moves(alg, &walks, st) {
                if let Entry::Vacant(e) = seen.entry(nx) {
                    e.insert((st, b));
                    queue.push_back(nx);
                }
            }
        }
    }
    // Longest path in the state graph; unbounded when it has a cycle.
    let mut memo: HashMap<State, Option<usize>> = HashMap::new();
    let mut on_stack: BTreeSet<State> = BTreeSet::new();
    fn longest(
        alg: &GentleAlgebra,
        walks: &[Vec<usize>],
        st: State,
        memo: &mut HashMap<State, Option<usize>>,
        on_stack: &mut BTreeSet<State>,
    ) -> Option<usize> {
        if let Some(v) = memo.get(&st) {
            return *v;
        }
        if !on_stack.insert(st) {
            return None;
        }
        let mut best = Some(0);
        for (_, nx) in moves(alg, walks, st) {
            match longest(alg, walks, nx, memo, on_stack) {
                Some(l) => best = best.map(|b: usize| b.max(l + 1)),
                None => best = None,
            }
            if best.is_none() {
                break;
            }
        }
        on_stack.remove(&st);
        memo.insert(st, best);
        best
    }
    let mut max_length = Some(0);
    for v in 0..alg.vertex_count() {
        match longest(alg, &walks, (v, None), &mut memo, &mut on_stack) {
            Some(l) => max_length = max_length.map(|m: usize| m.max(l)),
            None => max_length = None,
        }
    }
    if cycle.is_some() {
        max_length = None;
    }
    SequenceReport { max_length, cycle }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkWitness {
    pub walk: String,
    pub source: String,
    pub degree: usize,
    pub adjacent: Vec<String>,
}

impl WalkWitness {
    fn error(&self, n: usize) -> HigherError {
        HigherError::NotComplete {
            n,
            walk: self.walk.clone(),
            vertex: self.source.clone(),
            degree: self.degree,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub n: usize,
    pub complete: bool,
    pub walks: Vec<WalkWitness>,
}

/// The degree-one-source test on every full-relation walk of length `n`.
pub fn n_complete(alg: &GentleAlgebra, n: usize) -> CompletenessReport {
    let walks: Vec<WalkWitness> = alg
        .full_relation_walks(n)
        .into_iter()
        .map(|w| {
            let src = alg.arrow(w[0]).source;
            let mut adjacent: Vec<String> = alg
                .out_arrows(src)
                .iter()
                .chain(alg.in_arrows(src))
                .map(|&a| alg.arrow(a).name.clone())
                .collect();
            adjacent.sort();
            WalkWitness {
                walk: alg.path_name(&w),
                source: alg.vertex_name(src).to_string(),
                degree: alg.degree(src),
                adjacent,
            }
        })
        .collect();
    CompletenessReport {
        n,
        complete: walks.iter().all(|w| w.degree == 1),
        walks,
    }
}

fn fresh(taken: &BTreeSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded")
}

fn fresh_arrow(taken: &BTreeSet<String>) -> String {
    ('a'..='z')
        .map(|c| c.to_string())
        .find(|c| !taken.contains(c))
        .unwrap_or_else(|| fresh(taken, "arr"))
}

/// The cone: a new vertex and arrow after every full-relation walk of
/// length `n`, related to its last arrow.
pub fn cone(alg: &GentleAlgebra, n: usize) -> Result<GentleAlgebra, HigherError> {
    let report = n_complete(alg, n);
    if let Some(bad) = report.walks.iter().find(|w| w.degree != 1) {
        return Err(bad.error(n));
    }
    let mut raw = alg.to_raw();
    let mut names: BTreeSet<String> = raw.vertices.iter().cloned().collect();
    names.extend(raw.arrows.iter().map(|a| a.name.clone()));
    for w in alg.full_relation_walks(n) {
        let last = *w.last().expect("nonempty");
        let v = fresh(&names, "v");
        names.insert(v.clone());
        let name = fresh_arrow(&names);
        names.insert(name.clone());
        raw.vertices.push(v);
        raw.arrows.push(Arrow {
            name,
            source: alg.arrow(last).target,
            target: raw.vertices.len() - 1,
        });
        raw.relations.push((last, raw.arrows.len() - 1));
    }
    GentleAlgebra::new(raw).map_err(HigherError::Cone)
}

/// Everything the `classify` command reports.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub gldim: Option<usize>,
    pub tau_finite: Option<bool>,
    pub max_tau_length: Option<usize>,
    pub cycle: Option<String>,
    pub tau_dimension: Option<TauDimension>,
    pub n_complete: Option<bool>,
    pub complete_witness: Option<String>,
    pub absolute: Option<bool>,
    pub walks: BTreeMap<String, (String, usize)>,
}

impl Classification {
    pub fn summary(&self) -> String {
        let Some(n) = self.gldim else {
            return "gldim=inf".into();
        };
        let mut s = format!("gldim={n}");
        if let Some(f) = self.tau_finite {
            s.push_str(&format!("; tau{n}-finite={}", if f { "yes" } else { "no" }));
        }
        if let Some(c) = self.n_complete {
            s.push_str(&format!("; n-complete={}", if c { "yes" } else { "no" }));
            if let Some(w) = &self.complete_witness {
                s.push_str(&format!(" ({w})"));
            }
        }
        s
    }
}

pub fn classify(alg: &GentleAlgebra, depth: usize) -> Result<Classification, HigherError> {
    let gldim = global_dimension(alg, depth)?;
    let Some(n) = gldim else {
        return Ok(Classification {
            gldim: None,
            tau_finite: None,
            max_tau_length: None,
            cycle: None,
            tau_dimension: None,
            n_complete: None,
            complete_witness: None,
            absolute: None,
            walks: BTreeMap::new(),
        });
    };
    let comp = n_complete(alg, n);
    let walks = comp
        .walks
        .iter()
        .map(|w| (w.walk.clone(), (w.source.clone(), w.degree)))
        .collect();
    let witness = comp
        .walks
        .iter()
        .find(|w| w.degree != 1)
        .map(|w| format!("walk {} source {} degree {}", w.walk, w.source, w.degree));
    if n < 2 {
        return Ok(Classification {
            gldim,
            tau_finite: None,
            max_tau_length: None,
            cycle: None,
            tau_dimension: None,
            n_complete: Some(comp.complete),
            complete_witness: witness,
            absolute: None,
            walks,
        });
    }
    let h = HigherAr::new(alg, depth)?;
    let seq = tau_sequences(alg, n, false);
    let dim = h.tau_dimension(n)?;
    let absolute = if comp.complete {
        Some(h.is_absolutely_complete()?.absolute)
    } else {
        None
    };
    Ok(Classification {
        gldim,
        tau_finite: Some(seq.cycle.is_none()),
        max_tau_length: seq.max_length,
        cycle: seq.cycle.map(|c| c.render(alg)),
        tau_dimension: Some(dim),
        n_complete: Some(comp.complete),
        complete_witness: witness,
        absolute,
        walks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::oracle::Oracle;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";
    const LINEAR: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrel: a b\n";
    const FIG1: &str = "vertices: 1 2 3 4 5\narrow: a 5 4\narrow: b 4 3\narrow: c 4 2\narrow: d 2 1\narrow: e 3 1\nrel: a b\nrel: c d\n";

    fn h(t: &str) -> HigherAr {
        HigherAr::new(&parse_algebra(t).unwrap(), 64).unwrap()
    }

    fn names(alg: &GentleAlgebra, v: &[Str]) -> Vec<String> {
        v.iter().map(|x| x.display(alg)).collect()
    }

    #[test]
    fn square_translates() {
        let h = h(SQUARE);
        let alg = h.algebra().clone();
        let s4 = Str::parse(&alg, "e(4)").unwrap();
        let mut t = names(&alg, &h.tau_m(&s4, 2).unwrap());
        t.sort();
        assert_eq!(t, ["c", "d"]);
        assert!(h.omega_m_reduced(&s4, 2).unwrap().is_empty());
        let o = Oracle::rational(&alg);
        let full: Vec<Str> = h
            .omega_m(&s4, 2)
            .unwrap()
            .into_iter()
            .map(|x| x.0)
            .collect();
        assert_eq!(full, o.iterated_syzygy(&s4, 2).unwrap());
    }

    #[test]
    fn linear_translate_and_closure() {
        let h = h(LINEAR);
        let alg = h.algebra().clone();
        let s1 = Str::parse(&alg, "e(1)").unwrap();
        assert_eq!(names(&alg, &h.tau_m(&s1, 2).unwrap()), ["e(3)"]);
        let c = h.tau_closure(2, 6).unwrap();
        let mut got = names(&alg, &c.modules);
        got.sort();
        assert_eq!(got, ["a", "b", "e(1)", "e(3)"]);
        assert_eq!(c.partial, Some(4));
        assert!(c.admissible && c.rigid == Some(true) && c.maximal == Some(true));
    }

    #[test]
    fn square_closure_and_classification() {
        let h = h(SQUARE);
        let c = h.tau_closure(2, 6).unwrap();
        assert_eq!(c.modules.len(), 6);
        assert!(c.admissible && c.rigid == Some(true) && c.maximal == Some(true));
        let d = h.tau_dimension(2).unwrap();
        assert_eq!(d.max_nonvanishing, Some(1));
        let cl = classify(h.algebra(), 64).unwrap();
        assert_eq!(
            cl.summary(),
            "gldim=2; tau2-finite=yes; n-complete=no (walk a·c source 4 degree 2)"
        );
    }

    #[test]
    fn first_figure_quiver_cycles() {
        let alg = parse_algebra(FIG1).unwrap();
        let r = tau_sequences(&alg, 2, false);
        let c = r.cycle.expect("cycle");
        assert_eq!(c.render(&alg), "r1=(4→2→1), t1=4→3→1");
    }

    #[test]
    fn cone_chain() {
        let alg = parse_algebra(LINEAR).unwrap();
        assert!(n_complete(&alg, 2).complete);
        let h2 = h(LINEAR);
        assert!(h2.is_absolutely_complete().unwrap().absolute);
        let sub = h2.subcategory_arc_sets().unwrap();
        assert!(sub.tilting_size_ok && sub.weights_zero);
        let c1 = cone(&alg, 2).unwrap();
        assert_eq!(global_dimension(&c1, 64).unwrap(), Some(3));
        assert!(n_complete(&c1, 3).complete);
        let c2 = cone(&c1, 3).unwrap();
        assert!(n_complete(&c2, 4).complete);
        assert!(cone(&parse_algebra(SQUARE).unwrap(), 2).is_err());
    }
}
