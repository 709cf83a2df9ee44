//! The marked surface of a gentle algebra, rebuilt combinatorially:
//! polygons from relation threads, ● fans from nonzero paths, boundary
//! components by traversal, and the genus.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{GentleAlgebra, Slot};
use crate::strings::{Letter, Str};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface construction inconsistent: {0}")]
    Inconsistent(String),
    #[error("surface report does not match the algebra: {0}")]
    Mismatch(String),
    #[error("malformed surface report: {0}")]
    Malformed(String),
}

/// A polygon of the coordinate dissection, sides read clockwise starting
/// right after its ○ marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub sides: Vec<usize>,
    /// Side slot (0 or 1) of each vertex in this polygon.
    pub slots: Vec<usize>,
    /// `corners[i]` is the arrow from `sides[i]` to `sides[i + 1]`.
    pub corners: Vec<usize>,
    pub puncture: bool,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }
}

/// The arcs around a ● point, anticlockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub vertices: Vec<usize>,
    pub slots: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    /// The ○ point of a polygon.
    Open(usize),
    /// The ● point of a fan.
    Closed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub g: usize,
    pub b: usize,
    pub m: usize,
    pub p: usize,
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    alg: GentleAlgebra,
    pub polygons: Vec<Polygon>,
    pub fans: Vec<Fan>,
    /// `(polygon, position)` of each side slot.
    side_at: Vec<[(usize, usize); 2]>,
    /// `(fan, position)` of each end slot.
    end_at: Vec<[(usize, usize); 2]>,
    /// For each side slot, the end slots at its first and last corner.
    side_ends: Vec<[(usize, usize); 2]>,
    x_first: Vec<Option<usize>>,
    x_last: Vec<Option<usize>>,
    pub boundary: Vec<Vec<Marker>>,
    topology: Topology,
    euler_genus: usize,
}

/// Matches the two side slots of a vertex with its two end slots.
fn assign_ends(ends: [Slot; 2], sides: [Slot; 2]) -> Option<[(usize, usize); 2]> {
    for choice in [[(0, 1), (1, 0)], [(1, 0), (0, 1)]] {
        let ok = (0..2).all(|k| {
            let (x, y) = choice[k];
            sides[k].inn.is_none_or(|c| ends[x].inn == Some(c))
                && sides[k].out.is_none_or(|b| ends[y].out == Some(b))
        });
        if ok {
            return Some(choice);
        }
    }
    None
}

impl SurfaceModel {
    pub fn build(alg: &GentleAlgebra) -> Result<Self, SurfaceError> {
        let n = alg.vertex_count();
        let bad = |m: String| SurfaceError::Inconsistent(m);
        let mut side_ends = Vec::with_capacity(n);
        for v in 0..n {
            side_ends.push(
                assign_ends(alg.end_slots(v), alg.side_slots(v)).ok_or_else(|| {
                    bad(format!(
                        "no end assignment at vertex {}",
                        alg.vertex_name(v)
                    ))
                })?,
            );
        }
        let polygons: Vec<Polygon> = alg
            .forbidden_threads()
            .into_iter()
            .map(|t| Polygon {
                sides: t.vertices,
                slots: t.slots,
                corners: t.arrows,
                puncture: t.cyclic,
            })
            .collect();
        let fans: Vec<Fan> = alg
            .permitted_threads()
            .into_iter()
            .map(|t| {
                if t.cyclic {
                    return Err(bad("cyclic fan".into()));
                }
                Ok(Fan {
                    vertices: t.vertices,
                    slots: t.slots,
                })
            })
            .collect::<Result<_, _>>()?;
        let mut side_at = vec![[(usize::MAX, 0); 2]; n];
        for (pi, p) in polygons.iter().enumerate() {
            for (pos, (&v, &k)) in p.sides.iter().zip(&p.slots).enumerate() {
                if side_at[v][k].0 != usize::MAX {
                    return Err(bad(format!(
                        "side slot of {} used twice",
                        alg.vertex_name(v)
                    )));
                }
                side_at[v][k] = (pi, pos);
            }
        }
        let mut end_at = vec![[(usize::MAX, 0); 2]; n];
        for (fi, f) in fans.iter().enumerate() {
            for (pos, (&v, &k)) in f.vertices.iter().zip(&f.slots).enumerate() {
                if end_at[v][k].0 != usize::MAX {
                    return Err(bad(format!(
                        "end slot of {} used twice",
                        alg.vertex_name(v)
                    )));
                }
                end_at[v][k] = (fi, pos);
            }
        }
        if side_at
            .iter()
            .flatten()
            .chain(end_at.iter().flatten())
            .any(|s| s.0 == usize::MAX)
        {
            return Err(bad("a slot is not covered".into()));
        }
        let mut x_first = Vec::with_capacity(polygons.len());
        let mut x_last = Vec::with_capacity(polygons.len());
        for p in &polygons {
            if p.puncture {
                x_first.push(None);
                x_last.push(None);
                continue;
            }
            let (v0, k0) = (p.sides[0], p.slots[0]);
            let (f0, pos0) = end_at[v0][side_ends[v0][k0].0];
            let (vl, kl) = (
                *p.sides.last().expect("nonempty"),
                *p.slots.last().expect("nonempty"),
            );
            let (fl, posl) = end_at[vl][side_ends[vl][kl].1];
            if pos0 != 0 || posl + 1 != fans[fl].vertices.len() {
                return Err(bad("polygon corner is not a fan end".into()));
            }
            x_first.push(Some(f0));
            x_last.push(Some(fl));
        }
        let m = polygons.iter().filter(|p| !p.puncture).count();
        let p = polygons.len() - m;
        if fans.len() != m {
            return Err(bad(format!(
                "{} fans but {} boundary polygons",
                fans.len(),
                m
            )));
        }
        // The polygon whose last corner is each fan.
        let mut closing = vec![usize::MAX; fans.len()];
        for (pi, xl) in x_last.iter().enumerate() {
            if let Some(f) = xl {
                closing[*f] = pi;
            }
        }
        let mut seen = vec![false; polygons.len()];
        let mut boundary = Vec::new();
        for start in 0..polygons.len() {
            if polygons[start].puncture || seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                let f = x_first[cur].expect("boundary polygon");
                comp.push(Marker::Open(cur));
                comp.push(Marker::Closed(f));
                cur = closing[f];
                if cur == start {
                    break;
                }
                if seen[cur] {
                    return Err(bad("boundary traversal is not a permutation".into()));
                }
            }
            boundary.push(comp);
        }
        let b = boundary.len();
        let twice_g = (n + 2) as i64 - (b + p + m) as i64;
        if twice_g < 0 || twice_g % 2 != 0 {
            return Err(bad(format!("rank identity gives 2g = {twice_g}")));
        }
        // Euler count of the dissection: faces, arcs plus boundary segments,
        // and marked boundary points.
        let chi = polygons.len() as i64 - (n + 2 * m) as i64 + (2 * m) as i64;
        let twice_g_euler = 2 - b as i64 - chi;
        if twice_g_euler != twice_g {
            return Err(bad("Euler count disagrees with the rank identity".into()));
        }
        Ok(SurfaceModel {
            alg: alg.clone(),
            polygons,
            fans,
            side_at,
            end_at,
            side_ends,
            x_first,
            x_last,
            boundary,
            topology: Topology {
                g: (twice_g / 2) as usize,
                b,
                m,
                p,
            },
            euler_genus: (twice_g_euler / 2) as usize,
        })
    }

    pub fn algebra(&self) -> &GentleAlgebra {
        &self.alg
    }

    pub fn topology(&self) -> Topology {
        let t = self.topology;
        assert_eq!(
            self.alg.vertex_count() + 2,
            2 * t.g + t.b + t.p + t.m,
            "rank identity"
        );
        t
    }

    /// Genus from the Euler count of the dissection.
    pub fn euler_genus(&self) -> usize {
        self.euler_genus
    }

    pub fn is_punctured(&self) -> bool {
        self.topology.p > 0
    }

    /// `(polygon, position)` of side slot `k` of `v`.
    pub fn side_at(&self, v: usize, k: usize) -> (usize, usize) {
        self.side_at[v][k]
    }

    /// `(fan, position)` of end slot `e` of `v`.
    pub fn end_at(&self, v: usize, e: usize) -> (usize, usize) {
        self.end_at[v][e]
    }

    /// End slots at the first and last (clockwise) corner of a side.
    pub fn side_ends(&self, v: usize, k: usize) -> (usize, usize) {
        let (x, y) = self.side_ends[v][k];
        (x, y)
    }

    /// The fan at the corner between the ○ marker and side 1.
    pub fn first_fan(&self, polygon: usize) -> Option<usize> {
        self.x_first[polygon]
    }

    /// The fan at the corner between the last side and the ○ marker.
    pub fn last_fan(&self, polygon: usize) -> Option<usize> {
        self.x_last[polygon]
    }

    /// Side slot of `v` whose relation pair has out-arrow `a`.
    pub fn side_with_out(&self, v: usize, a: usize) -> Option<usize> {
        (0..2).find(|&k| self.alg.side_slots(v)[k].out == Some(a))
    }

    /// Side slot of `v` whose relation pair has in-arrow `a`.
    pub fn side_with_in(&self, v: usize, a: usize) -> Option<usize> {
        (0..2).find(|&k| self.alg.side_slots(v)[k].inn == Some(a))
    }

    /// Maximal nonzero path leaving `v` through end slot `e`.
    pub fn path_out(&self, v: usize, e: usize) -> Vec<usize> {
        let mut p = Vec::new();
        let mut cur = self.alg.end_slots(v)[e].out;
        while let Some(a) = cur {
            p.push(a);
            cur = self.alg.continuation(a);
        }
        p
    }

    /// Maximal nonzero path entering `v` through end slot `e`, in path order.
    pub fn path_in(&self, v: usize, e: usize) -> Vec<usize> {
        let mut p = Vec::new();
        let mut cur = self.alg.end_slots(v)[e].inn;
        while let Some(a) = cur {
            p.push(a);
            cur = self.alg.precursor(a);
        }
        p.reverse();
        p
    }

    /// String of the simple, projective or injective module at `v`.
    pub fn distinguished_string(&self, v: usize, kind: Kind) -> Str {
        let alg = &self.alg;
        let s = match kind {
            Kind::Simple => Str::trivial(v),
            Kind::Projective => {
                let left = self.path_out(v, 0);
                let right = self.path_out(v, 1);
                let start = alg.path_end(v, &left);
                let mut letters: Vec<Letter> = left.iter().rev().map(|&a| Letter::inv(a)).collect();
                letters.extend(right.iter().map(|&a| Letter::direct(a)));
                Str { start, letters }
            }
            Kind::Injective => {
                let left = self.path_in(v, 0);
                let right = self.path_in(v, 1);
                let start = alg.path_start(v, &left);
                let mut letters: Vec<Letter> = left.iter().map(|&a| Letter::direct(a)).collect();
                letters.extend(right.iter().rev().map(|&a| Letter::inv(a)));
                Str { start, letters }
            }
        };
        s.canonical(alg)
    }

    /// Strings of the whole family `kind` over all vertices.
    pub fn dissection_strings(&self, kind: Kind) -> Vec<Str> {
        (0..self.alg.vertex_count())
            .map(|v| self.distinguished_string(v, kind))
            .collect()
    }

    /// The string cutting off the ● point of fan `f`: the full nonzero path
    /// along the fan.
    pub fn fan_string(&self, f: usize) -> Str {
        let fan = &self.fans[f];
        let start = fan.vertices[0];
        let mut letters = Vec::new();
        for i in 0..fan.vertices.len() - 1 {
            let (v, e) = (fan.vertices[i], fan.slots[i]);
            letters.push(Letter::direct(
                self.alg.end_slots(v)[e].out.expect("fan continues"),
            ));
        }
        Str { start, letters }
    }

    pub fn summary(&self) -> SurfaceSummary {
        let name = |v: &usize| self.alg.vertex_name(*v).to_string();
        let t = self.topology();
        SurfaceSummary {
            polygons: self
                .polygons
                .iter()
                .map(|p| PolygonSummary {
                    sides: p.sides.iter().map(name).collect(),
                    marker: if p.puncture { "puncture" } else { "boundary" }.into(),
                })
                .collect(),
            fans: self
                .fans
                .iter()
                .map(|f| f.vertices.iter().map(name).collect())
                .collect(),
            boundary: self
                .boundary
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|m| match m {
                            Marker::Open(i) => format!("o{i}"),
                            Marker::Closed(i) => format!("x{i}"),
                        })
                        .collect()
                })
                .collect(),
            g: t.g,
            b: t.b,
            m: t.m,
            p: t.p,
            convention: CONVENTION.into(),
        }
    }

    /// Reads a surface report and checks it against the surface of `alg`.
    pub fn from_json(alg: &GentleAlgebra, text: &str) -> Result<Self, SurfaceError> {
        let summary: SurfaceSummary =
            serde_json::from_str(text).map_err(|e| SurfaceError::Malformed(e.to_string()))?;
        let model = SurfaceModel::build(alg)?;
        let own = model.summary();
        if own != summary {
            let what = if own.polygons != summary.polygons {
                "polygons"
            } else if own.fans != summary.fans {
                "fans"
            } else if own.boundary != summary.boundary {
                "boundary"
            } else {
                "counts"
            };
            return Err(SurfaceError::Mismatch(what.into()));
        }
        Ok(model)
    }
}

/// Side-indexing convention written into every surface report.
pub const CONVENTION: &str =
    "sides clockwise from the o marker; side t of an s-sided polygon has endpoint weight s - t";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Simple,
    Projective,
    Injective,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "simple" => Ok(Kind::Simple),
            "projective" => Ok(Kind::Projective),
            "injective" => Ok(Kind::Injective),
            other => Err(format!("unknown kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSummary {
    pub sides: Vec<String>,
    pub marker: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub polygons: Vec<PolygonSummary>,
    pub fans: Vec<Vec<String>>,
    pub boundary: Vec<Vec<String>>,
    pub g: usize,
    pub b: usize,
    pub m: usize,
    pub p: usize,
    #[serde(default)]
    pub convention: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use std::collections::BTreeSet;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";

    fn polys(s: &SurfaceModel) -> BTreeSet<Vec<String>> {
        s.summary().polygons.into_iter().map(|p| p.sides).collect()
    }

    fn set(items: &[&[&str]]) -> BTreeSet<Vec<String>> {
        items
            .iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn a2_surface() {
        let alg = parse_algebra("vertices: 1 2\narrow: a 1 2\n").unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        assert_eq!(polys(&s), set(&[&["1", "2"], &["1"], &["2"]]));
        assert_eq!(
            s.topology(),
            Topology {
                g: 0,
                b: 1,
                m: 3,
                p: 0
            }
        );
    }

    #[test]
    fn square_is_annulus() {
        let alg = parse_algebra(SQUARE).unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        assert_eq!(
            polys(&s),
            set(&[&["4", "3", "1"], &["4", "2", "1"], &["3"], &["2"]])
        );
        let fans: BTreeSet<Vec<String>> = s.summary().fans.into_iter().collect();
        assert_eq!(
            fans,
            set(&[&["4", "3"], &["4", "2"], &["3", "1"], &["2", "1"]])
        );
        assert_eq!(
            s.topology(),
            Topology {
                g: 0,
                b: 2,
                m: 4,
                p: 0
            }
        );
        assert_eq!(s.euler_genus(), 0);
        for comp in &s.boundary {
            for w in comp.chunks(2) {
                assert!(matches!(w, [Marker::Open(_), Marker::Closed(_)]));
            }
        }
    }

    #[test]
    fn linear_is_disk() {
        let alg = parse_algebra("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrel: a b\n").unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        assert_eq!(polys(&s), set(&[&["1", "2", "3"], &["1"], &["2"], &["3"]]));
        assert_eq!(
            s.topology(),
            Topology {
                g: 0,
                b: 1,
                m: 4,
                p: 0
            }
        );
    }

    #[test]
    fn two_cycle_has_puncture() {
        let alg = parse_algebra("vertices: x y\narrow: a x y\narrow: b y x\nrel: a b\nrel: b a\n")
            .unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        assert_eq!(
            s.topology(),
            Topology {
                g: 0,
                b: 1,
                m: 2,
                p: 1
            }
        );
    }

    #[test]
    fn kronecker_is_annulus() {
        let alg = parse_algebra("vertices: 1 2\narrow: a 1 2\narrow: b 1 2\n").unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        assert_eq!(
            s.topology(),
            Topology {
                g: 0,
                b: 2,
                m: 2,
                p: 0
            }
        );
    }

    #[test]
    fn square_distinguished() {
        let alg = parse_algebra(SQUARE).unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        let v = |x: &str| alg.vertex(x).unwrap();
        assert_eq!(
            s.distinguished_string(v("3"), Kind::Simple).display(&alg),
            "e(3)"
        );
        assert_eq!(
            s.distinguished_string(v("1"), Kind::Injective)
                .display(&alg),
            "c d~"
        );
        assert_eq!(
            s.distinguished_string(v("4"), Kind::Projective)
                .display(&alg),
            "a~ b"
        );
    }

    #[test]
    fn json_round_trip() {
        let alg = parse_algebra(SQUARE).unwrap();
        let s = SurfaceModel::build(&alg).unwrap();
        let text = serde_json::to_string(&s.summary()).unwrap();
        let back = SurfaceModel::from_json(&alg, &text).unwrap();
        assert_eq!(back.summary(), s.summary());
        let other = parse_algebra("vertices: 1 2\narrow: a 1 2\n").unwrap();
        assert!(SurfaceModel::from_json(&other, &text).is_err());
    }
}
