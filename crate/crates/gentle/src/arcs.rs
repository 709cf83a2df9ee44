//! Zigzag arcs on the surface: conversion from strings, endpoint weights,
//! oriented intersections, interior crossings, flips and corner arcs.
//!
//! An arc is stored by its string together with the two polygon sides it
//! leaves from at its ○ endpoints. Interior crossings are found by matching
//! maximal parallel runs of two crossing sequences and comparing on which
//! side each arc turns off at either end of the run.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strings::{Letter, Str, StringError};
use crate::surface::SurfaceModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error(transparent)]
    String(#[from] StringError),
    #[error("arc ends at a puncture")]
    Puncture,
    #[error("no arc crosses {0:?} with the given endpoints")]
    NoSuchArc(Vec<String>),
    #[error("crossings {0:?} and the endpoints fit more than one arc")]
    Ambiguous(Vec<String>),
    #[error("arcs do not share the endpoint in polygon {0}")]
    NotShared(usize),
    #[error("flip needs an intersection of weight 1, found {0}")]
    WeightNotOne(usize),
    #[error("flip needs two distinct simple arcs")]
    NotSimple,
    #[error("corner arc requested on puncture polygon {0}")]
    PuncturePolygon(usize),
    #[error("polygon {0} does not exist")]
    NoPolygon(usize),
    #[error("smoothing does not give a string")]
    NotZigzag,
}

/// A ○ endpoint: the polygon and the (0-based) position of the side the arc
/// crosses first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub polygon: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub word: Str,
    pub start: Endpoint,
    pub end: Endpoint,
}

/// One crossing of a dual arc, entering the side slot `1 - from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Event {
    pub v: usize,
    pub from: usize,
}

pub(crate) fn turn(l: Option<&Letter>) -> i8 {
    match l {
        None => 0,
        Some(l) if l.inverse => -1,
        Some(_) => 1,
    }
}

/// Side slots entered at each crossing of `word`.
fn word_events(s: &SurfaceModel, word: &Str) -> Vec<Event> {
    let alg = s.algebra();
    let verts = word.vertices(alg);
    if word.letters.is_empty() {
        return vec![Event {
            v: verts[0],
            from: 0,
        }];
    }
    let mut out = Vec::with_capacity(verts.len());
    let mut from = None;
    for (i, l) in word.letters.iter().enumerate() {
        let v = verts[i];
        let to = if l.inverse {
            s.side_with_in(v, l.arrow)
        } else {
            s.side_with_out(v, l.arrow)
        }
        .expect("every arrow lies on a side");
        let f = from.unwrap_or(1 - to);
        debug_assert_eq!(f, 1 - to, "zigzag crossing");
        out.push(Event { v, from: f });
        let w = verts[i + 1];
        from = Some(
            if l.inverse {
                s.side_with_out(w, l.arrow)
            } else {
                s.side_with_in(w, l.arrow)
            }
            .expect("every arrow lies on a side"),
        );
    }
    out.push(Event {
        v: verts[verts.len() - 1],
        from: from.expect("nonempty word"),
    });
    out
}

/// Crossings of an oriented arc; a trivial arc is oriented by its start.
pub(crate) fn events(s: &SurfaceModel, arc: &Arc) -> Vec<Event> {
    if arc.word.is_trivial() {
        let v = arc.word.start;
        let from = usize::from(s.side_at(v, 0) != (arc.start.polygon, arc.start.pos));
        return vec![Event { v, from }];
    }
    word_events(s, &arc.word)
}

impl Arc {
    pub fn from_string(s: &SurfaceModel, word: &Str) -> Result<Arc, ArcError> {
        word.check(s.algebra())?;
        let ev = word_events(s, word);
        let first = ev[0];
        let last = ev[ev.len() - 1];
        let (sp, spos) = s.side_at(first.v, first.from);
        let (ep, epos) = s.side_at(last.v, 1 - last.from);
        if s.polygons[sp].puncture || s.polygons[ep].puncture {
            return Err(ArcError::Puncture);
        }
        Ok(Arc {
            word: word.clone(),
            start: Endpoint {
                polygon: sp,
                pos: spos,
            },
            end: Endpoint {
                polygon: ep,
                pos: epos,
            },
        })
    }

    /// Rebuilds an arc from its crossing sequence and endpoints.
    pub fn from_parts(
        s: &SurfaceModel,
        crossings: &[usize],
        start: Endpoint,
        end: Endpoint,
    ) -> Result<Arc, ArcError> {
        let alg = s.algebra();
        let names = || {
            crossings
                .iter()
                .map(|&v| alg.vertex_name(v).to_string())
                .collect()
        };
        if crossings.is_empty() || crossings.iter().any(|&v| v >= alg.vertex_count()) {
            return Err(ArcError::NoSuchArc(Vec::new()));
        }
        let v0 = crossings[0];
        let Some(from0) = (0..2).find(|&k| s.side_at(v0, k) == (start.polygon, start.pos)) else {
            return Err(ArcError::NoSuchArc(names()));
        };
        // Depth-first over the (rare) ambiguous letters between two vertices.
        let mut found: Vec<Arc> = Vec::new();
        let mut stack = vec![(Str::trivial(v0), from0)];
        while let Some((w, from)) = stack.pop() {
            let i = w.len();
            let v = crossings[i];
            let to = 1 - from;
            if i + 1 == crossings.len() {
                if s.side_at(v, to) == (end.polygon, end.pos) {
                    let arc = Arc::from_string(s, &w)?;
                    let arc = if arc.start == start {
                        arc
                    } else {
                        arc.reversed(s)
                    };
                    if !found.iter().any(|f| f.same_curve(&arc, s)) {
                        found.push(arc);
                    }
                }
                continue;
            }
            let next = crossings[i + 1];
            let slot = alg.side_slots(v)[to];
            let mut cands = Vec::new();
            if let Some(a) = slot.out {
                if alg.arrow(a).target == next {
                    cands.push((Letter::direct(a), s.side_with_in(next, a)));
                }
            }
            if let Some(a) = slot.inn {
                if alg.arrow(a).source == next {
                    cands.push((Letter::inv(a), s.side_with_out(next, a)));
                }
            }
            for (l, f) in cands {
                let mut w2 = w.clone();
                w2.letters.push(l);
                if crate::strings::is_string(alg, &w2) {
                    stack.push((w2, f.expect("arrow on a side")));
                }
            }
        }
        match found.len() {
            0 => Err(ArcError::NoSuchArc(names())),
            1 => Ok(found.pop().expect("one arc")),
            _ => Err(ArcError::Ambiguous(names())),
        }
    }

    pub fn crossings(&self, s: &SurfaceModel) -> Vec<usize> {
        self.word.vertices(s.algebra())
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_trivial()
    }

    /// The same arc traversed backwards.
    pub fn reversed(&self, s: &SurfaceModel) -> Arc {
        Arc {
            word: self.word.inverse(s.algebra()),
            start: self.end,
            end: self.start,
        }
    }

    /// The orientation whose string is canonical.
    pub fn canonical(&self, s: &SurfaceModel) -> Arc {
        if self.word.is_trivial() {
            return Arc::from_string(s, &self.word).expect("arc already valid");
        }
        if self.word.is_canonical(s.algebra()) {
            self.clone()
        } else {
            self.reversed(s)
        }
    }

    pub fn same_curve(&self, other: &Arc, s: &SurfaceModel) -> bool {
        self.word.canonical(s.algebra()) == other.word.canonical(s.algebra())
    }

    pub fn to_json(&self, s: &SurfaceModel) -> ArcJson {
        let alg = s.algebra();
        let ep = |e: Endpoint| EndpointJson {
            polygon: e.polygon,
            w: endpoint_weight(s, e),
        };
        ArcJson {
            crossings: self
                .crossings(s)
                .iter()
                .map(|&v| alg.vertex_name(v).to_string())
                .collect(),
            start: ep(self.start),
            end: ep(self.end),
            string: Some(self.word.display(alg)),
        }
    }

    pub fn from_json(s: &SurfaceModel, j: &ArcJson) -> Result<Arc, ArcError> {
        let alg = s.algebra();
        let crossings = j
            .crossings
            .iter()
            .map(|n| {
                alg.vertex(n)
                    .ok_or_else(|| ArcError::NoSuchArc(j.crossings.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ep = |e: &EndpointJson| -> Result<Endpoint, ArcError> {
            let p = s
                .polygons
                .get(e.polygon)
                .ok_or(ArcError::NoPolygon(e.polygon))?;
            if e.w >= p.len() {
                return Err(ArcError::NoSuchArc(j.crossings.clone()));
            }
            Ok(Endpoint {
                polygon: e.polygon,
                pos: p.len() - 1 - e.w,
            })
        };
        let (start, end) = (ep(&j.start)?, ep(&j.end)?);
        match (Arc::from_parts(s, &crossings, start, end), &j.string) {
            (Err(ArcError::Ambiguous(names)), Some(text)) => {
                let w = Str::parse(alg, text)?;
                let arc = Arc::from_string(s, &w)?;
                let arc = if arc.start == start {
                    arc
                } else {
                    arc.reversed(s)
                };
                if arc.start != start || arc.end != end || arc.crossings(s) != crossings {
                    return Err(ArcError::Ambiguous(names));
                }
                Ok(arc)
            }
            (r, _) => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointJson {
    pub polygon: usize,
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub crossings: Vec<String>,
    pub start: EndpointJson,
    pub end: EndpointJson,
    /// String notation, read only to choose between arcs that share their
    /// crossings and endpoints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub string: Option<String>,
}

/// Weight `s - t` of an endpoint leaving through side `t` (1-based) of an
/// `s`-sided polygon.
pub fn endpoint_weight(s: &SurfaceModel, e: Endpoint) -> usize {
    s.polygons[e.polygon].len() - (e.pos + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    /// Both arcs end at the ○ point of this polygon.
    Endpoint { polygon: usize },
    /// A crossing inside the strip of a common run; `first` and `second`
    /// index the first shared crossing in each arc.
    Interior {
        polygon: usize,
        first: usize,
        second: usize,
    },
}

/// An oriented intersection between the arcs `a` and `b` of a query;
/// `forward` means it points from `a` to `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Intersection {
    pub forward: bool,
    pub site: Site,
    pub weight: usize,
}

/// Compares two arcs leaving the same side of a polygon; `Less` means the
/// first lies further left, seen from the ○ point.
pub(crate) fn compare_from_end(x: &Str, y: &Str) -> Ordering {
    compare_crossings(x, 0, y, 0)
}

/// Left-to-right order of two parallel crossings of one dual arc: the
/// crossing before letter `i` of `x` against the one before letter `j` of
/// `y`, both travelling the same way. Decided where the arcs part, ahead
/// first and then behind.
pub(crate) fn compare_crossings(x: &Str, i: usize, y: &Str, j: usize) -> Ordering {
    let (lx, ly) = (&x.letters, &y.letters);
    let mut r = 0;
    while i + r < lx.len() && j + r < ly.len() && lx[i + r] == ly[j + r] {
        r += 1;
    }
    let ahead = turn(ly.get(j + r)).cmp(&turn(lx.get(i + r)));
    if ahead != Ordering::Equal {
        return ahead;
    }
    let mut r = 0;
    while r < i && r < j && lx[i - 1 - r] == ly[j - 1 - r] {
        r += 1;
    }
    let back = |l: &[Letter], k: usize| if r < k { -turn(l.get(k - 1 - r)) } else { 0 };
    back(lx, i).cmp(&back(ly, j))
}

/// Both ends of `arc`, each with the arc oriented to start there.
fn ends(s: &SurfaceModel, arc: &Arc) -> [(Endpoint, Arc); 2] {
    [(arc.start, arc.clone()), (arc.end, arc.reversed(s))]
}

fn endpoint_pair(
    (ea, xa): &(Endpoint, Arc),
    (eb, xb): &(Endpoint, Arc),
    forward: bool,
) -> Option<Intersection> {
    if ea.polygon != eb.polygon {
        return None;
    }
    let a_left = match ea.pos.cmp(&eb.pos) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => compare_from_end(&xa.word, &xb.word) != Ordering::Greater,
    };
    let (lo, hi) = (ea.pos.min(eb.pos), ea.pos.max(eb.pos));
    Some(Intersection {
        forward: forward == a_left,
        site: Site::Endpoint {
            polygon: ea.polygon,
        },
        weight: hi - lo,
    })
}

/// One interior crossing found between two runs.
#[derive(Clone, Copy, Debug)]
struct Crossing {
    first: usize,
    second: usize,
    polygon: usize,
    /// The first arc turns off to the right of the second at the far end.
    first_right: bool,
}

fn sign(x: i8) -> i8 {
    x.signum()
}

fn run_crossings(s: &SurfaceModel, x: &Arc, y: &Arc, skip_diagonal: bool) -> Vec<Crossing> {
    let ex = events(s, x);
    let ey = events(s, y);
    let (lx, ly) = (&x.word.letters, &y.word.letters);
    let mut out = Vec::new();
    for i in 0..ex.len() {
        for j in 0..ey.len() {
            if skip_diagonal && i == j {
                continue;
            }
            if ex[i] != ey[j] {
                continue;
            }
            if i > 0 && j > 0 && lx[i - 1] == ly[j - 1] {
                continue;
            }
            let mut r = 0;
            while i + r < lx.len() && j + r < ly.len() && lx[i + r] == ly[j + r] {
                r += 1;
            }
            let far_x = turn(lx.get(i + r));
            let far_y = turn(ly.get(j + r));
            let near_x = -turn(if i > 0 { lx.get(i - 1) } else { None });
            let near_y = -turn(if j > 0 { ly.get(j - 1) } else { None });
            let f = sign(far_x - far_y);
            if f != 0 && f == sign(near_x - near_y) {
                out.push(Crossing {
                    first: i,
                    second: j,
                    polygon: s.side_at(ex[i].v, ex[i].from).0,
                    first_right: far_x < far_y,
                });
            }
        }
    }
    out
}

/// Interior crossings of two distinct arcs, with both relative orientations.
fn pair_crossings(s: &SurfaceModel, a: &Arc, b: &Arc) -> Vec<Crossing> {
    let mut out = run_crossings(s, a, b, false);
    let rb = b.reversed(s);
    let n = b.word.len();
    for mut c in run_crossings(s, a, &rb, false) {
        c.second = n - c.second;
        out.push(c);
    }
    out
}

/// Number of interior self-crossings.
pub fn self_crossings(s: &SurfaceModel, a: &Arc) -> usize {
    let same = run_crossings(s, a, a, true).len();
    let rev = run_crossings(s, a, &a.reversed(s), false).len();
    debug_assert_eq!((same + rev) % 2, 0);
    (same + rev) / 2
}

pub fn is_simple(s: &SurfaceModel, a: &Arc) -> bool {
    self_crossings(s, a) == 0
}

/// Minimal number of interior crossings; an arc against itself counts its
/// self-crossings.
pub fn interior_crossing_count(s: &SurfaceModel, a: &Arc, b: &Arc) -> usize {
    if a.same_curve(b, s) {
        self_crossings(s, a)
    } else {
        pair_crossings(s, a, b).len()
    }
}

/// All oriented intersections between `a` and `b` (both directions). For
/// `a == b` the identity is not an intersection; self-crossings and a
/// shared ○ point of the two ends are.
pub fn oriented_intersections(s: &SurfaceModel, a: &Arc, b: &Arc) -> Vec<Intersection> {
    let mut out = Vec::new();
    if a.same_curve(b, s) {
        let [e0, e1] = ends(s, a);
        if let Some(mut i) = endpoint_pair(&e0, &e1, true) {
            i.forward = true;
            out.push(i);
        }
        let mut cr = run_crossings(s, a, a, true);
        cr.extend(run_crossings(s, a, &a.reversed(s), false));
        cr.sort_by_key(|c| (c.first.min(c.second), c.first.max(c.second)));
        for c in cr.iter().step_by(2) {
            for weight in [0, 1] {
                out.push(Intersection {
                    forward: true,
                    site: Site::Interior {
                        polygon: c.polygon,
                        first: c.first,
                        second: c.second,
                    },
                    weight,
                });
            }
        }
    } else {
        for ea in ends(s, a) {
            for eb in ends(s, b) {
                out.extend(endpoint_pair(&ea, &eb, true));
            }
        }
        for c in pair_crossings(s, a, b) {
            let site = Site::Interior {
                polygon: c.polygon,
                first: c.first,
                second: c.second,
            };
            out.push(Intersection {
                forward: c.first_right,
                site,
                weight: 1,
            });
            out.push(Intersection {
                forward: !c.first_right,
                site,
                weight: 0,
            });
        }
    }
    out.sort();
    out
}

/// Number of intersections from `a` to `b` of each weight, indexed by weight.
pub fn weight_profile(s: &SurfaceModel, a: &Arc, b: &Arc) -> Vec<usize> {
    let mut prof = Vec::new();
    for i in oriented_intersections(s, a, b) {
        if i.forward {
            if prof.len() <= i.weight {
                prof.resize(i.weight + 1, 0);
            }
            prof[i.weight] += 1;
        }
    }
    prof
}

/// The arc oriented to start at the given endpoint of polygon `p`, with
/// that endpoint's side position.
fn from_point(s: &SurfaceModel, a: &Arc, p: usize) -> Vec<(usize, Arc)> {
    ends(s, a)
        .into_iter()
        .filter(|(e, _)| e.polygon == p)
        .map(|(e, x)| (e.pos, x))
        .collect()
}

/// Smoothing of the weight-1 intersection from `a1` to `a2` at the ○ point
/// of polygon `p`.
pub fn flip(s: &SurfaceModel, a1: &Arc, a2: &Arc, p: usize) -> Result<Arc, ArcError> {
    if a1.same_curve(a2, s) || !is_simple(s, a1) || !is_simple(s, a2) {
        return Err(ArcError::NotSimple);
    }
    let e1 = from_point(s, a1, p);
    let e2 = from_point(s, a2, p);
    if e1.is_empty() || e2.is_empty() {
        return Err(ArcError::NotShared(p));
    }
    let mut best = None;
    for (t1, x1) in &e1 {
        for (t2, x2) in &e2 {
            if t2 == &(t1 + 1) {
                best = Some((*t1, x1, x2));
            }
        }
    }
    let Some((t1, x1, x2)) = best else {
        let w = e1
            .iter()
            .flat_map(|(t1, _)| e2.iter().map(move |(t2, _)| t2.abs_diff(*t1)))
            .min()
            .unwrap_or(0);
        return Err(ArcError::WeightNotOne(w));
    };
    let alg = s.algebra();
    let corner = s.polygons[p].corners[t1];
    let mut letters = x1.word.inverse(alg).letters;
    letters.push(Letter::direct(corner));
    letters.extend(x2.word.letters.iter().copied());
    let word = Str {
        start: x1.word.inverse(alg).start,
        letters,
    };
    if !crate::strings::is_string(alg, &word) {
        return Err(ArcError::NotZigzag);
    }
    Arc::from_string(s, &word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Continues along out-arrows.
    Left,
    /// Continues along in-arrows.
    Right,
}

/// Corner arc at the ○ point of polygon `p` through side `t` (1-based);
/// `None` is the trivial arc for `t` past the last side.
pub fn corner_arc(
    s: &SurfaceModel,
    p: usize,
    t: usize,
    side: Side,
) -> Result<Option<Arc>, ArcError> {
    let poly = s.polygons.get(p).ok_or(ArcError::NoPolygon(p))?;
    if poly.puncture {
        return Err(ArcError::PuncturePolygon(p));
    }
    if t == 0 || t > poly.len() {
        return Ok(None);
    }
    let (v, k) = (poly.sides[t - 1], poly.slots[t - 1]);
    let (x_end, y_end) = s.side_ends(v, k);
    let word = match side {
        Side::Left => Str {
            start: v,
            letters: s
                .path_out(v, x_end)
                .into_iter()
                .map(Letter::direct)
                .collect(),
        },
        Side::Right => Str {
            start: v,
            letters: s
                .path_in(v, y_end)
                .into_iter()
                .rev()
                .map(Letter::inv)
                .collect(),
        },
    };
    let mut arc = Arc::from_string(s, &word)?;
    let here = Endpoint {
        polygon: p,
        pos: t - 1,
    };
    if arc.start != here && arc.end == here {
        arc = arc.reversed(s);
    }
    debug_assert_eq!(arc.start, here);
    Ok(Some(arc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::oracle::Oracle;
    use crate::strings::enumerate_strings;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";
    const A3: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n";

    fn setup(text: &str) -> SurfaceModel {
        SurfaceModel::build(&parse_algebra(text).unwrap()).unwrap()
    }

    fn arc(s: &SurfaceModel, w: &str) -> Arc {
        Arc::from_string(s, &Str::parse(s.algebra(), w).unwrap()).unwrap()
    }

    fn poly_names(s: &SurfaceModel, p: usize) -> Vec<String> {
        s.summary().polygons[p].sides.clone()
    }

    #[test]
    fn square_crossings_and_endpoints() {
        let s = setup(SQUARE);
        let e4 = arc(&s, "e(4)");
        let mut ps = vec![
            poly_names(&s, e4.start.polygon),
            poly_names(&s, e4.end.polygon),
        ];
        ps.sort();
        assert_eq!(ps, vec![vec!["4", "2", "1"], vec!["4", "3", "1"]]);
        let p4 = arc(&s, "a~ b");
        let names: Vec<_> = p4
            .crossings(&s)
            .iter()
            .map(|&v| s.algebra().vertex_name(v).to_string())
            .collect();
        assert_eq!(names, ["3", "4", "2"]);
        assert_eq!(endpoint_weight(&s, e4.start), endpoint_weight(&s, e4.end),);
    }

    #[test]
    fn a3_interior_crossing_carries_ext() {
        let s = setup(A3);
        let ma = arc(&s, "a");
        let mb = arc(&s, "b");
        assert_eq!(interior_crossing_count(&s, &ma, &mb), 1);
        let prof = weight_profile(&s, &ma, &mb);
        assert_eq!(prof.get(1), Some(&1));
    }

    #[test]
    fn flip_of_simples_is_arrow() {
        let s = setup(A3);
        let s1 = arc(&s, "e(1)");
        let s2 = arc(&s, "e(2)");
        let shared: Vec<usize> = [s1.start.polygon, s1.end.polygon]
            .into_iter()
            .filter(|p| [s2.start.polygon, s2.end.polygon].contains(p))
            .collect();
        let mut got = None;
        for &p in &shared {
            for (x, y) in [(&s1, &s2), (&s2, &s1)] {
                if let Ok(a) = flip(&s, x, y, p) {
                    got = Some(a.word.canonical(s.algebra()).display(s.algebra()));
                }
            }
        }
        assert_eq!(got.as_deref(), Some("a"));
    }

    #[test]
    fn flip_rejects_weight_zero() {
        let s = setup(SQUARE);
        let e4 = arc(&s, "e(4)");
        let e3 = arc(&s, "e(3)");
        let p = e4.start.polygon;
        assert!(flip(&s, &e4, &e4, p).is_err());
        let _ = e3;
    }

    #[test]
    fn round_trip_through_parts_and_json() {
        for text in [SQUARE, A3] {
            let s = setup(text);
            let (strings, _) = enumerate_strings(s.algebra(), 6);
            for w in strings {
                let a = Arc::from_string(&s, &w).unwrap();
                let b = Arc::from_parts(&s, &a.crossings(&s), a.start, a.end).unwrap();
                assert_eq!(a, b);
                let j = a.to_json(&s);
                assert_eq!(Arc::from_json(&s, &j).unwrap(), a);
            }
        }
    }

    #[test]
    fn ext_profiles_match_oracle() {
        for text in [SQUARE, A3] {
            let s = setup(text);
            let alg = s.algebra();
            let o = Oracle::rational(alg);
            let (strings, _) = enumerate_strings(alg, 6);
            let arcs: Vec<Arc> = strings
                .iter()
                .map(|w| Arc::from_string(&s, w).unwrap())
                .collect();
            for (x, ax) in strings.iter().zip(&arcs) {
                for (y, ay) in strings.iter().zip(&arcs) {
                    let mx = o.string_rep(x);
                    let my = o.string_rep(y);
                    let prof = weight_profile(&s, ax, ay);
                    let got = |k: usize| prof.get(k).copied().unwrap_or(0);
                    let hom = o.hom_dim(&mx, &my) - usize::from(x == y);
                    assert_eq!(got(0), hom, "hom {} -> {}", x.display(alg), y.display(alg));
                    for k in 1..4 {
                        assert_eq!(
                            got(k),
                            o.ext_dim(&mx, &my, k).unwrap(),
                            "ext{k} {} -> {}",
                            x.display(alg),
                            y.display(alg)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn corner_arcs_and_trivial() {
        let s = setup(SQUARE);
        let alg = s.algebra();
        let p = (0..s.polygons.len())
            .find(|&p| poly_names(&s, p) == ["4", "3", "1"])
            .unwrap();
        assert_eq!(corner_arc(&s, p, 4, Side::Right).unwrap(), None);
        let all: Vec<String> = (1..=3)
            .flat_map(|t| [Side::Left, Side::Right].map(|sd| (t, sd)))
            .filter_map(|(t, sd)| corner_arc(&s, p, t, sd).unwrap())
            .map(|a| a.word.canonical(alg).display(alg))
            .collect();
        assert!(all.contains(&"d".to_string()), "{all:?}");
    }
}
