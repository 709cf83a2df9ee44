//! Arc systems, their face decomposition, admissibility and rigidity,
//! flip reduction and completion to maximal admissible systems.
//!
//! Faces are computed by cutting every polygon of the dissection along the
//! chords the arcs leave inside it, then gluing the pieces across the dual
//! arcs. The cyclic boundary of each face is read off separately from the
//! ribbon structure at the marked points.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arcs::{
    compare_crossings, compare_from_end, events, flip, interior_crossing_count, is_simple,
    oriented_intersections, Arc, ArcError, Intersection, Site,
};
use crate::linalg::Q;
use crate::oracle::{Oracle, OracleError};
use crate::strings::{enumerate_strings, Str};
use crate::surface::{Kind, SurfaceModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RigidityError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("arc `{0}` is not simple")]
    NotSimple(String),
    #[error("arcs `{0}` and `{1}` cross")]
    Crossing(String, String),
    #[error("surface has punctures")]
    Punctured,
    #[error("system is not admissible: `{0}` and `{1}` meet with weight 1")]
    NotAdmissible(String, String),
    #[error("band modules have self-extension and are not rigid")]
    Band,
    #[error("completion stuck on a face with {0} edges")]
    Stuck(usize),
}

/// A set of pairwise non-crossing simple arcs, canonically oriented and
/// sorted by string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    arcs: Vec<Arc>,
}

fn label(s: &SurfaceModel, a: &Arc) -> String {
    a.word.display(s.algebra())
}

impl ArcSystem {
    pub fn new(s: &SurfaceModel, arcs: Vec<Arc>) -> Result<Self, RigidityError> {
        let sys = Self::unchecked(s, arcs);
        for a in &sys.arcs {
            if !is_simple(s, a) {
                return Err(RigidityError::NotSimple(label(s, a)));
            }
        }
        for (i, a) in sys.arcs.iter().enumerate() {
            for b in &sys.arcs[i + 1..] {
                if interior_crossing_count(s, a, b) > 0 {
                    return Err(RigidityError::Crossing(label(s, a), label(s, b)));
                }
            }
        }
        Ok(sys)
    }

    pub fn from_strings(s: &SurfaceModel, words: &[Str]) -> Result<Self, RigidityError> {
        let arcs = words
            .iter()
            .map(|w| Arc::from_string(s, w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(s, arcs)
    }

    fn unchecked(s: &SurfaceModel, arcs: Vec<Arc>) -> Self {
        let set: BTreeSet<Arc> = arcs.into_iter().map(|a| a.canonical(s)).collect();
        ArcSystem {
            arcs: set.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        ArcSystem { arcs: Vec::new() }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, s: &SurfaceModel, a: &Arc) -> bool {
        self.arcs.binary_search(&a.canonical(s)).is_ok()
    }

    pub fn strings(&self) -> Vec<Str> {
        self.arcs.iter().map(|a| a.word.clone()).collect()
    }

    /// Whether `a` can join the system without crossing anything.
    pub fn compatible(&self, s: &SurfaceModel, a: &Arc) -> bool {
        is_simple(s, a)
            && self
                .arcs
                .iter()
                .all(|b| interior_crossing_count(s, a, b) == 0)
    }

    fn with(&self, s: &SurfaceModel, a: Arc) -> Self {
        let mut v = self.arcs.clone();
        v.push(a);
        Self::unchecked(s, v)
    }
}

/// The dissection arcs of the projectives or injectives.
pub fn dissection(s: &SurfaceModel, kind: Kind) -> Result<ArcSystem, RigidityError> {
    ArcSystem::from_strings(s, &s.dissection_strings(kind))
}

/// First pair (possibly an arc with itself) meeting with weight 1.
pub fn admissibility_witness(s: &SurfaceModel, sys: &ArcSystem) -> Option<(usize, usize)> {
    let a = sys.arcs();
    for i in 0..a.len() {
        for j in i..a.len() {
            if oriented_intersections(s, &a[i], &a[j])
                .iter()
                .any(|x| x.weight == 1)
            {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_admissible(s: &SurfaceModel, sys: &ArcSystem) -> bool {
    admissibility_witness(s, sys).is_none()
}

/// Geometric rigidity: simple, pairwise non-crossing, admissible.
pub fn is_rigid_geometric(s: &SurfaceModel, words: &[Str]) -> Result<bool, RigidityError> {
    let arcs = words
        .iter()
        .map(|w| Arc::from_string(s, w))
        .collect::<Result<Vec<_>, _>>()?;
    match ArcSystem::new(s, arcs) {
        Ok(sys) => Ok(is_admissible(s, &sys)),
        Err(RigidityError::NotSimple(_)) | Err(RigidityError::Crossing(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Rigidity by the Ext oracle over all ordered pairs.
pub fn is_rigid_oracle(s: &SurfaceModel, words: &[Str]) -> Result<bool, RigidityError> {
    let o = Oracle::<Q>::new(s.algebra(), crate::oracle::DEFAULT_DEPTH);
    let reps: Vec<_> = words.iter().map(|w| o.string_rep(w)).collect();
    for x in &reps {
        for y in &reps {
            if o.ext_dim(x, y, 1)? > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FaceType {
    F1,
    F2,
    F3,
    F4,
    F5,
    Triangle,
    Big,
}

impl FaceType {
    pub fn tag(self) -> &'static str {
        match self {
            FaceType::F1 => "F1",
            FaceType::F2 => "F2",
            FaceType::F3 => "F3",
            FaceType::F4 => "F4",
            FaceType::F5 => "F5",
            FaceType::Triangle => "triangle",
            FaceType::Big => "big",
        }
    }
}

/// One side of an edge of the face complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSide {
    /// An arc of the system (by canonical string); `left` is the side on
    /// the left of its canonical direction.
    Arc { word: Str, left: bool },
    /// Boundary segment next to the ○ point of a polygon, before (`first`)
    /// or after its sides.
    Segment { polygon: usize, first: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Edges in cyclic order (only for disk faces with a single boundary).
    pub walk: Vec<String>,
    pub sides: Vec<EdgeSide>,
    pub edges: usize,
    pub bullets: usize,
    pub internal: bool,
    pub disk: bool,
    pub kind: FaceType,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct FaceCounts {
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
    pub f4: usize,
    pub f5: usize,
    pub triangles: usize,
    pub big: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDecomposition {
    pub faces: Vec<Face>,
    pub counts: FaceCounts,
    pub e1: usize,
    pub e2: usize,
    pub v: usize,
    pub euler: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum PointKey {
    /// End 0 (start) or 1 of an arc.
    End(usize, usize),
    /// Crossing `idx` of an arc, seen from side slot `k` of the dual arc.
    Cross(usize, usize, usize),
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Point(PointKey),
    SegFirst,
    Bullet,
    SegLast,
    Piece(usize, usize),
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Cyclic atom sequence of one polygon, and the region of each gap.
struct Circle {
    items: Vec<Item>,
    points: Vec<PointKey>,
    /// Gap after point `i` of each item (gap `n-1` wraps around).
    item_gap: Vec<usize>,
    region_of_gap: Vec<usize>,
    regions: usize,
}

pub fn face_decomposition(
    s: &SurfaceModel,
    sys: &ArcSystem,
) -> Result<FaceDecomposition, RigidityError> {
    if s.is_punctured() {
        return Err(RigidityError::Punctured);
    }
    let alg = s.algebra();
    let arcs = sys.arcs();
    let ev: Vec<_> = arcs.iter().map(|a| events(s, a)).collect();
    let rev: Vec<Str> = arcs.iter().map(|a| a.word.inverse(alg)).collect();

    // Reference left-to-right order of the crossings of every dual arc,
    // looking from side slot 0 into side slot 1.
    let mut along: Vec<Vec<(usize, usize)>> = vec![Vec::new(); alg.vertex_count()];
    for (a, e) in ev.iter().enumerate() {
        for (i, x) in e.iter().enumerate() {
            along[x.v].push((a, i));
        }
    }
    let oriented = |a: usize, i: usize| -> (&Str, usize) {
        if ev[a][i].from == 0 {
            (&arcs[a].word, i)
        } else {
            (&rev[a], ev[a].len() - 1 - i)
        }
    };
    for list in along.iter_mut() {
        list.sort_by(|&(a, i), &(b, j)| {
            let (x, xi) = oriented(a, i);
            let (y, yj) = oriented(b, j);
            compare_crossings(x, xi, y, yj).then((a, i).cmp(&(b, j)))
        });
    }

    // Arc ends at each ○ point, left to right.
    let mut at_point: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s.polygons.len()];
    for (a, arc) in arcs.iter().enumerate() {
        at_point[arc.start.polygon].push((a, 0));
        at_point[arc.end.polygon].push((a, 1));
    }
    let end_pos = |a: usize, e: usize| {
        if e == 0 {
            arcs[a].start.pos
        } else {
            arcs[a].end.pos
        }
    };
    let from_end = |a: usize, e: usize| if e == 0 { &arcs[a].word } else { &rev[a] };
    for list in at_point.iter_mut() {
        list.sort_by(|&(a, e), &(b, f)| {
            end_pos(a, e)
                .cmp(&end_pos(b, f))
                .then_with(|| compare_from_end(from_end(a, e), from_end(b, f)))
                .then((a, e).cmp(&(b, f)))
        });
    }

    // Partner of each point inside its polygon.
    let mut partner: HashMap<PointKey, PointKey> = HashMap::new();
    for (a, e) in ev.iter().enumerate() {
        let k = e.len() - 1;
        let mut chain = vec![PointKey::End(a, 0), PointKey::Cross(a, 0, e[0].from)];
        for i in 1..=k {
            chain.push(PointKey::Cross(a, i - 1, 1 - e[i - 1].from));
            chain.push(PointKey::Cross(a, i, e[i].from));
        }
        chain.push(PointKey::Cross(a, k, 1 - e[k].from));
        chain.push(PointKey::End(a, 1));
        for pair in chain.chunks(2) {
            partner.insert(pair[0], pair[1]);
            partner.insert(pair[1], pair[0]);
        }
    }

    let mut circles = Vec::with_capacity(s.polygons.len());
    for (pi, poly) in s.polygons.iter().enumerate() {
        let mut items = Vec::new();
        for &(a, e) in at_point[pi].iter().rev() {
            items.push(Item::Point(PointKey::End(a, e)));
        }
        items.push(Item::SegFirst);
        items.push(Item::Bullet);
        for (&v, &k) in poly.sides.iter().zip(&poly.slots) {
            let list = &along[v];
            let r = list.len();
            let order: Vec<(usize, usize)> = if k == 0 {
                list.clone()
            } else {
                list.iter().rev().copied().collect()
            };
            for (j, &(a, i)) in order.iter().enumerate() {
                items.push(Item::Piece(v, if k == 0 { j } else { r - j }));
                items.push(Item::Point(PointKey::Cross(a, i, k)));
            }
            items.push(Item::Piece(v, if k == 0 { r } else { 0 }));
        }
        items.push(Item::SegLast);

        let points: Vec<PointKey> = items
            .iter()
            .filter_map(|it| match it {
                Item::Point(p) => Some(*p),
                _ => None,
            })
            .collect();
        let n = points.len();
        let index: HashMap<PointKey, usize> =
            points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut item_gap = Vec::with_capacity(items.len());
        let mut cur = n.saturating_sub(1);
        let mut seen = 0;
        for it in &items {
            if let Item::Point(_) = it {
                cur = seen;
                seen += 1;
            }
            item_gap.push(cur);
        }
        // Chords must nest.
        let mut stack: Vec<usize> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let j = *index.get(&partner[p]).ok_or_else(|| {
                RigidityError::Crossing(format!("{p:?}"), "polygon boundary".into())
            })?;
            if j > i {
                stack.push(i);
            } else if stack.pop() != Some(j) {
                let arc_of = |k: &PointKey| match k {
                    PointKey::End(a, _) | PointKey::Cross(a, _, _) => *a,
                };
                let other = stack
                    .last()
                    .map(|&t| arc_of(&points[t]))
                    .unwrap_or(arc_of(p));
                return Err(RigidityError::Crossing(
                    label(s, &arcs[arc_of(p)]),
                    label(s, &arcs[other]),
                ));
            }
        }
        let mut region_of_gap = vec![usize::MAX; n.max(1)];
        let mut regions = 0;
        if n == 0 {
            region_of_gap[0] = 0;
            regions = 1;
        }
        for g in 0..n {
            if region_of_gap[g] != usize::MAX {
                continue;
            }
            let mut cur = g;
            loop {
                region_of_gap[cur] = regions;
                let next_point = (cur + 1) % n;
                cur = index[&partner[&points[next_point]]];
                if cur == g {
                    break;
                }
            }
            regions += 1;
        }
        circles.push(Circle {
            items,
            points,
            item_gap,
            region_of_gap,
            regions,
        });
    }

    // Global regions and gluing across the dual arcs.
    let mut offset = Vec::with_capacity(circles.len());
    let mut total = 0;
    for c in &circles {
        offset.push(total);
        total += c.regions;
    }
    let mut dsu = Dsu((0..total).collect());
    let mut pieces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (pi, c) in circles.iter().enumerate() {
        for (it, &g) in c.items.iter().zip(&c.item_gap) {
            if let Item::Piece(v, r) = it {
                pieces
                    .entry((*v, *r))
                    .or_default()
                    .push(offset[pi] + c.region_of_gap[g]);
            }
        }
    }
    let mut glued_at: Vec<usize> = Vec::new();
    for regs in pieces.values() {
        debug_assert_eq!(regs.len(), 2);
        dsu.union(regs[0], regs[1]);
        glued_at.push(regs[0]);
    }
    let mut face_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut face_of = vec![0; total];
    for (r, slot) in face_of.iter_mut().enumerate() {
        let root = dsu.find(r);
        let next = face_of_root.len();
        *slot = *face_of_root.entry(root).or_insert(next);
    }
    let nf = face_of_root.len();
    let mut chi = vec![0i64; nf];
    for r in 0..total {
        chi[face_of[r]] += 1;
    }
    for &r in &glued_at {
        chi[face_of[r]] -= 1;
    }
    let mut bullets = vec![0; nf];
    let mut sides: Vec<Vec<EdgeSide>> = vec![Vec::new(); nf];
    for (pi, c) in circles.iter().enumerate() {
        for (it, &g) in c.items.iter().zip(&c.item_gap) {
            let f = face_of[offset[pi] + c.region_of_gap[g]];
            match it {
                Item::Bullet => bullets[f] += 1,
                Item::SegFirst => sides[f].push(EdgeSide::Segment {
                    polygon: pi,
                    first: true,
                }),
                Item::SegLast => sides[f].push(EdgeSide::Segment {
                    polygon: pi,
                    first: false,
                }),
                _ => {}
            }
        }
    }
    let region_beside = |a: usize, left: bool| -> usize {
        let pi = arcs[a].start.polygon;
        let c = &circles[pi];
        let n = c.points.len();
        let i = c
            .points
            .iter()
            .position(|p| *p == PointKey::End(a, 0))
            .expect("arc end");
        let g = if left { i } else { (i + n - 1) % n };
        face_of[offset[pi] + c.region_of_gap[g]]
    };
    for (a, arc) in arcs.iter().enumerate() {
        for left in [true, false] {
            sides[region_beside(a, left)].push(EdgeSide::Arc {
                word: arc.word.clone(),
                left,
            });
        }
    }

    let walks = ribbon_walks(s, sys, &at_point);
    let mut walk_of_face: Vec<Vec<Vec<String>>> = vec![Vec::new(); nf];
    for w in walks {
        let f = match &w[0].0 {
            EdgeSide::Arc { word, left } => {
                let a = arcs.iter().position(|x| &x.word == word).expect("member");
                region_beside(a, *left)
            }
            EdgeSide::Segment { polygon, first } => {
                let c = &circles[*polygon];
                let want = |it: &Item| {
                    if *first {
                        matches!(it, Item::SegFirst)
                    } else {
                        matches!(it, Item::SegLast)
                    }
                };
                let k = c.items.iter().position(want).expect("segment");
                face_of[offset[*polygon] + c.region_of_gap[c.item_gap[k]]]
            }
        };
        walk_of_face[f].push(w.into_iter().map(|(_, l)| l).collect());
    }

    let mut faces = Vec::with_capacity(nf);
    let mut counts = FaceCounts::default();
    for f in 0..nf {
        let mut sd = std::mem::take(&mut sides[f]);
        sd.sort();
        let edges = sd.len();
        let disk = chi[f] == 1 && walk_of_face[f].len() == 1;
        let b = bullets[f];
        let kind = match (disk, b, edges) {
            (true, 1, 3) => FaceType::F1,
            (true, 1, 4) => FaceType::F2,
            (true, 1, 5) => FaceType::F3,
            (true, 0, 3) => FaceType::Triangle,
            (true, 0, 4) => FaceType::F4,
            (true, 0, 5) => FaceType::F5,
            _ => FaceType::Big,
        };
        match kind {
            FaceType::F1 => counts.f1 += 1,
            FaceType::F2 => counts.f2 += 1,
            FaceType::F3 => counts.f3 += 1,
            FaceType::F4 => counts.f4 += 1,
            FaceType::F5 => counts.f5 += 1,
            FaceType::Triangle => counts.triangles += 1,
            FaceType::Big => counts.big += 1,
        }
        let walk = if disk {
            walk_of_face[f][0].clone()
        } else {
            walk_of_face[f].concat()
        };
        faces.push(Face {
            walk,
            sides: sd,
            edges,
            bullets: b,
            internal: b == 0,
            disk,
            kind,
        });
    }
    let t = s.topology();
    let e1 = arcs.len();
    let e2 = 2 * t.m;
    let v = 2 * t.m + t.p;
    let euler = chi.iter().sum::<i64>() - (e1 + e2) as i64 + v as i64;
    let expected = 2 - 2 * t.g as i64 - t.b as i64;
    assert_eq!(euler, expected, "Euler count of the face complex");
    Ok(FaceDecomposition {
        faces,
        counts,
        e1,
        e2,
        v,
        euler,
    })
}

/// Boundary walks of the face complex, each edge tagged with the side the
/// face lies on.
fn ribbon_walks(
    s: &SurfaceModel,
    sys: &ArcSystem,
    at_point: &[Vec<(usize, usize)>],
) -> Vec<Vec<(EdgeSide, String)>> {
    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    enum E {
        Arc(usize),
        First(usize),
        Last(usize),
    }
    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    enum V {
        Open(usize),
        Closed(usize),
    }
    let arcs = sys.arcs();
    let alg = s.algebra();
    // Edge-end lists left to right at each marked point.
    let mut lists: HashMap<V, Vec<(E, usize)>> = HashMap::new();
    for (pi, poly) in s.polygons.iter().enumerate() {
        if poly.puncture {
            continue;
        }
        let mut l = vec![(E::First(pi), 0)];
        l.extend(at_point[pi].iter().map(|&(a, e)| (E::Arc(a), e)));
        l.push((E::Last(pi), 1));
        lists.insert(V::Open(pi), l);
    }
    for (pi, _) in s.polygons.iter().enumerate() {
        if let Some(x) = s.last_fan(pi) {
            lists
                .entry(V::Closed(x))
                .or_default()
                .insert(0, (E::Last(pi), 0));
        }
    }
    for (pi, _) in s.polygons.iter().enumerate() {
        if let Some(x) = s.first_fan(pi) {
            lists
                .entry(V::Closed(x))
                .or_default()
                .push((E::First(pi), 1));
        }
    }
    let other = |e: E, end: usize| -> V {
        match (e, end) {
            (E::Arc(a), 0) => V::Open(arcs[a].end.polygon),
            (E::Arc(a), _) => V::Open(arcs[a].start.polygon),
            (E::First(p), 0) => V::Closed(s.first_fan(p).expect("boundary")),
            (E::First(p), _) => V::Open(p),
            (E::Last(p), 0) => V::Open(p),
            (E::Last(p), _) => V::Closed(s.last_fan(p).expect("boundary")),
        }
    };
    let mut keys: Vec<V> = lists.keys().copied().collect();
    keys.sort_by_key(|v| match v {
        V::Open(p) => (0, *p),
        V::Closed(x) => (1, *x),
    });
    let mut used: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let key_id = |v: V| match v {
        V::Open(p) => (0, p),
        V::Closed(x) => (1, x),
    };
    let mut walks = Vec::new();
    for &u0 in &keys {
        for i0 in 0..lists[&u0].len() - 1 {
            let (t, id) = key_id(u0);
            if used.contains(&(t, id, i0)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut u, mut i) = (u0, i0);
            loop {
                let (t, id) = key_id(u);
                if !used.insert((t, id, i)) {
                    break;
                }
                let (r, end) = lists[&u][i + 1];
                let (side, name) = match r {
                    E::Arc(a) => (
                        EdgeSide::Arc {
                            word: arcs[a].word.clone(),
                            left: end == 0,
                        },
                        arcs[a].word.display(alg),
                    ),
                    E::First(p) => (
                        EdgeSide::Segment {
                            polygon: p,
                            first: true,
                        },
                        format!("b{p}+"),
                    ),
                    E::Last(p) => (
                        EdgeSide::Segment {
                            polygon: p,
                            first: false,
                        },
                        format!("b{p}-"),
                    ),
                };
                walk.push((side, name));
                let w = other(r, end);
                let j = lists[&w]
                    .iter()
                    .position(|&x| x == (r, 1 - end))
                    .expect("edge end");
                // The face lies right of the edge we arrived on.
                assert!(j + 1 < lists[&w].len(), "walk reached the boundary");
                (u, i) = (w, j);
            }
            walks.push(walk);
        }
    }
    walks
}

/// Largest face size if every face is a polygon with at most one ● point.
pub fn classify_partial_triangulation(fd: &FaceDecomposition) -> Result<usize, String> {
    for (i, f) in fd.faces.iter().enumerate() {
        if !f.disk {
            return Err(format!("face {i} is not a disk"));
        }
        if f.bullets > 1 {
            return Err(format!("face {i} contains {} bullet points", f.bullets));
        }
    }
    Ok(fd.faces.iter().map(|f| f.edges).max().unwrap_or(0))
}

/// Replaces weight-1 pairs by their flips until none remain; arcs in
/// `keep` are never removed.
pub fn flip_reduce(s: &SurfaceModel, sys: &ArcSystem, keep: &ArcSystem) -> ArcSystem {
    let mut cur = sys.clone();
    'outer: for _ in 0..10_000 {
        let arcs = cur.arcs().to_vec();
        for i in 0..arcs.len() {
            for j in i..arcs.len() {
                let hits: Vec<_> = oriented_intersections(s, &arcs[i], &arcs[j])
                    .into_iter()
                    .filter(|x| x.weight == 1)
                    .collect();
                let Some(hit) = hits.first() else { continue };
                let removable = |k: usize| !keep.contains(s, &arcs[k]);
                if i == j || !matches!(hit.site, Site::Endpoint { .. }) {
                    let k = if removable(j) { j } else { i };
                    let mut v = arcs.clone();
                    v.remove(k);
                    cur = ArcSystem::unchecked(s, v);
                    continue 'outer;
                }
                let Site::Endpoint { polygon } = hit.site else {
                    unreachable!()
                };
                let (a1, a2) = if hit.forward { (i, j) } else { (j, i) };
                let drop = if removable(a2) { a2 } else { a1 };
                let mut v = arcs.clone();
                if let Ok(new) = flip(s, &arcs[a1], &arcs[a2], polygon) {
                    v.push(new);
                }
                v.remove(drop);
                cur = ArcSystem::unchecked(s, v);
                continue 'outer;
            }
        }
        return cur;
    }
    cur
}

#[derive(Clone, Debug)]
pub struct CompletionOptions {
    pub max_string_len: usize,
    /// Longest strings ever tried when shorter candidates run out.
    pub cap: usize,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            max_string_len: 8,
            cap: 16,
        }
    }
}

fn is_bad(f: &Face) -> bool {
    !f.disk || f.bullets > 1 || f.edges > 5
}

/// Simple arcs up to a length bound, sorted by string.
fn candidates(s: &SurfaceModel, len: usize) -> Vec<Arc> {
    let (strs, _) = enumerate_strings(s.algebra(), len);
    let mut out: Vec<Arc> = strs
        .iter()
        .filter_map(|w| Arc::from_string(s, w).ok())
        .filter(|a| is_simple(s, a))
        .collect();
    out.sort();
    out
}

/// Whether `a` joins `sys` admissibly.
fn admissible_with(s: &SurfaceModel, sys: &ArcSystem, a: &Arc) -> bool {
    if sys.contains(s, a) || !sys.compatible(s, a) {
        return false;
    }
    if oriented_intersections(s, a, a)
        .iter()
        .any(|x| x.weight == 1)
    {
        return false;
    }
    sys.arcs().iter().all(|b| {
        oriented_intersections(s, a, b)
            .iter()
            .all(|x| x.weight != 1)
    })
}

/// Corner weights of an internal triangle, one per pair of its arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCorners {
    pub weights: [usize; 3],
    /// The three intersections run around the triangle in one direction.
    pub cyclic: bool,
}

/// Reads the corners of an internal triangle face. `None` when the face is
/// not one, or when two of its arcs do not meet in exactly one endpoint.
pub fn triangle_corners(s: &SurfaceModel, f: &Face) -> Option<TriangleCorners> {
    if f.kind != FaceType::Triangle {
        return None;
    }
    let words: BTreeSet<&Str> = f
        .sides
        .iter()
        .filter_map(|e| match e {
            EdgeSide::Arc { word, .. } => Some(word),
            EdgeSide::Segment { .. } => None,
        })
        .collect();
    if words.len() != 3 {
        return None;
    }
    let arcs: Vec<Arc> = words
        .into_iter()
        .map(|w| Arc::from_string(s, w))
        .collect::<Result<_, _>>()
        .ok()?;
    let mut weights = [0; 3];
    let mut out_deg = [0; 3];
    for (k, (i, j)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
        let hits: Vec<Intersection> = oriented_intersections(s, &arcs[i], &arcs[j])
            .into_iter()
            .filter(|x| matches!(x.site, Site::Endpoint { .. }))
            .collect();
        let [x] = hits[..] else { return None };
        weights[k] = x.weight;
        out_deg[if x.forward { i } else { j }] += 1;
    }
    Some(TriangleCorners {
        weights,
        cyclic: out_deg == [1, 1, 1],
    })
}

/// Extends an admissible system to a maximal admissible one whose faces
/// are all of types F1 to F5.
pub fn complete_to_max(
    s: &SurfaceModel,
    sys: &ArcSystem,
    opts: &CompletionOptions,
) -> Result<ArcSystem, RigidityError> {
    if let Some((i, j)) = admissibility_witness(s, sys) {
        return Err(RigidityError::NotAdmissible(
            label(s, &sys.arcs()[i]),
            label(s, &sys.arcs()[j]),
        ));
    }
    // Projective dissection arcs that avoid the input, flipped into shape.
    let mut arcs = sys.arcs().to_vec();
    for a in dissection(s, Kind::Projective)?.arcs() {
        if sys.compatible(s, a) {
            arcs.push(a.clone());
        }
    }
    let mut cur = flip_reduce(s, &ArcSystem::unchecked(s, arcs), sys);
    debug_assert!(sys.arcs().iter().all(|a| cur.contains(s, a)));

    let mut len = opts.max_string_len;
    let mut pool = candidates(s, len);
    loop {
        let fd = face_decomposition(s, &cur)?;
        let Some(bad) = fd.faces.iter().find(|f| is_bad(f)) else {
            break;
        };
        let mut target = bad.sides.clone();
        target.sort();
        let mut added = false;
        for a in &pool {
            if !admissible_with(s, &cur, a) {
                continue;
            }
            let next = cur.with(s, a.clone());
            let nfd = face_decomposition(s, &next)?;
            if splits(&nfd, a, &target) {
                cur = next;
                added = true;
                break;
            }
        }
        if !added {
            if len >= opts.cap {
                return Err(RigidityError::Stuck(bad.edges));
            }
            len += 2;
            pool = candidates(s, len);
        }
    }
    // Maximality pass.
    for a in candidates(s, opts.max_string_len) {
        if admissible_with(s, &cur, &a) {
            cur = cur.with(s, a);
        }
    }
    Ok(cur)
}

/// Whether the new arc `a` lies in the old face with edge sides `target`.
fn splits(fd: &FaceDecomposition, a: &Arc, target: &[EdgeSide]) -> bool {
    let mine = |f: &Face| {
        f.sides
            .iter()
            .any(|e| matches!(e, EdgeSide::Arc { word, .. } if *word == a.word))
    };
    let mut merged: Vec<EdgeSide> = fd
        .faces
        .iter()
        .filter(|f| mine(f))
        .flat_map(|f| f.sides.iter().cloned())
        .filter(|e| !matches!(e, EdgeSide::Arc { word, .. } if *word == a.word))
        .collect();
    merged.sort();
    merged == target
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub e1: usize,
    pub n: usize,
    pub f4: usize,
    pub f5: usize,
    pub formula: usize,
    pub agrees: bool,
}

pub fn max_rigid_rank_report(
    s: &SurfaceModel,
    sys: &ArcSystem,
) -> Result<RankReport, RigidityError> {
    let fd = face_decomposition(s, sys)?;
    let n = s.algebra().vertex_count();
    let formula = n + fd.counts.f4 + fd.counts.f5;
    Ok(RankReport {
        e1: fd.e1,
        n,
        f4: fd.counts.f4,
        f5: fd.counts.f5,
        formula,
        agrees: formula == fd.e1,
    })
}

/// Splits every external 5-gon admitting the arc around its ● point.
pub fn canonical_class_representative(
    s: &SurfaceModel,
    sys: &ArcSystem,
) -> Result<ArcSystem, RigidityError> {
    let mut cur = sys.clone();
    loop {
        let fd = face_decomposition(s, &cur)?;
        let mut changed = false;
        for f in fd.faces.iter().filter(|f| f.kind == FaceType::F3) {
            let Some(x) = face_fan(s, f) else { continue };
            let Ok(a) = Arc::from_string(s, &s.fan_string(x)) else {
                continue;
            };
            if !admissible_with(s, &cur, &a) {
                continue;
            }
            let next = cur.with(s, a);
            let nfd = face_decomposition(s, &next)?;
            debug_assert_eq!(nfd.counts.f3 + 1, fd.counts.f3);
            debug_assert_eq!(nfd.counts.f4, fd.counts.f4 + 1);
            debug_assert_eq!(nfd.counts.f1, fd.counts.f1 + 1);
            cur = next;
            changed = true;
            break;
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// The ● point of an external face, read from its first boundary segment.
fn face_fan(s: &SurfaceModel, f: &Face) -> Option<usize> {
    f.sides.iter().find_map(|e| match e {
        EdgeSide::Segment {
            polygon,
            first: true,
        } => s.first_fan(*polygon),
        EdgeSide::Segment {
            polygon,
            first: false,
        } => s.last_fan(*polygon),
        _ => None,
    })
}

/// A random admissible system grown greedily from shuffled short arcs.
pub fn random_admissible(s: &SurfaceModel, max_len: usize, seed: u64, size: usize) -> ArcSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = candidates(s, max_len);
    pool.shuffle(&mut rng);
    let mut cur = ArcSystem::empty();
    for a in pool {
        if cur.len() >= size {
            break;
        }
        if admissible_with(s, &cur, &a) {
            cur = cur.with(s, a);
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::arcs::{corner_arc, Side};

    const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";
    const A2: &str = "vertices: 1 2\narrow: a 1 2\n";
    const LINEAR: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrel: a b\n";

    fn setup(t: &str) -> SurfaceModel {
        SurfaceModel::build(&parse_algebra(t).unwrap()).unwrap()
    }

    fn strs(s: &SurfaceModel, ws: &[&str]) -> Vec<Str> {
        ws.iter()
            .map(|w| Str::parse(s.algebra(), w).unwrap())
            .collect()
    }

    #[test]
    fn empty_system_on_a2() {
        let s = setup(A2);
        let fd = face_decomposition(&s, &ArcSystem::empty()).unwrap();
        assert_eq!(fd.faces.len(), 1);
        assert_eq!(fd.e1, 0);
        assert_eq!(fd.faces[0].bullets, 3);
    }

    #[test]
    fn empty_system_on_annulus_is_not_partial() {
        let s = setup(SQUARE);
        let fd = face_decomposition(&s, &ArcSystem::empty()).unwrap();
        assert!(classify_partial_triangulation(&fd).is_err());
    }

    #[test]
    fn injective_dissection_faces() {
        let s = setup(SQUARE);
        let sys = dissection(&s, Kind::Injective).unwrap();
        let fd = face_decomposition(&s, &sys).unwrap();
        assert!(fd.faces.iter().all(|f| f.bullets <= 1));
        assert!(is_admissible(&s, &sys));
        for f in &fd.faces {
            if f.disk {
                assert_eq!(f.walk.len(), f.edges);
            }
        }
    }

    #[test]
    fn linear_closure_has_one_internal_square() {
        let s = setup(LINEAR);
        let mut arcs = dissection(&s, Kind::Injective).unwrap().arcs().to_vec();
        let big = (0..s.polygons.len())
            .find(|&p| s.polygons[p].len() == 3)
            .unwrap();
        arcs.push(corner_arc(&s, big, 3, Side::Right).unwrap().unwrap());
        let sys = ArcSystem::new(&s, arcs).unwrap();
        let fd = face_decomposition(&s, &sys).unwrap();
        assert_eq!(fd.counts.f4, 1);
        assert_eq!(classify_partial_triangulation(&fd), Ok(4));
        let r = max_rigid_rank_report(&s, &sys).unwrap();
        assert_eq!((r.e1, r.formula), (4, 4));
    }

    #[test]
    fn rigidity_examples() {
        let s = setup(SQUARE);
        let inj = s.dissection_strings(Kind::Injective);
        let mut set = inj.clone();
        set.push(s.distinguished_string(s.algebra().vertex("2").unwrap(), Kind::Projective));
        set.push(s.distinguished_string(s.algebra().vertex("3").unwrap(), Kind::Projective));
        assert!(is_rigid_geometric(&s, &set).unwrap());
        assert!(is_rigid_oracle(&s, &set).unwrap());
        let a2 = setup(A2);
        let simples = strs(&a2, &["e(1)", "e(2)"]);
        assert!(!is_rigid_geometric(&a2, &simples).unwrap());
        assert!(!is_rigid_oracle(&a2, &simples).unwrap());
        let proj = a2.dissection_strings(Kind::Projective);
        assert!(is_rigid_geometric(&a2, &proj).unwrap());
    }

    #[test]
    fn flip_reduce_simples() {
        let s = setup(A2);
        let sys = ArcSystem::from_strings(&s, &strs(&s, &["e(1)", "e(2)"])).unwrap();
        let out = flip_reduce(&s, &sys, &ArcSystem::empty());
        assert!(out
            .strings()
            .contains(&Str::parse(s.algebra(), "a").unwrap()));
        assert!(is_admissible(&s, &out));
        assert_eq!(flip_reduce(&s, &out, &ArcSystem::empty()), out);
    }

    #[test]
    fn completion_rank() {
        let s = setup(A2);
        let out = complete_to_max(&s, &ArcSystem::empty(), &CompletionOptions::default()).unwrap();
        assert_eq!(out.len(), 2);
        let s = setup(SQUARE);
        let out = complete_to_max(&s, &ArcSystem::empty(), &CompletionOptions::default()).unwrap();
        let r = max_rigid_rank_report(&s, &out).unwrap();
        assert!(r.agrees, "{r:?}");
        assert_eq!(r.e1, 6);
        assert!(is_rigid_oracle(&s, &out.strings()).unwrap());
    }
}
