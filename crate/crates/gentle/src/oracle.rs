//! Homological oracle by exact linear algebra: covers, syzygies, Hom, Ext,
//! D Tr and decomposition of modules into string summands.

use std::collections::HashMap;
use std::marker::PhantomData;

use thiserror::Error;

use crate::algebra::GentleAlgebra;
use crate::linalg::{complement_basis, Field, Matrix, Q};
use crate::strings::{strings_within, Rep, Str};

pub const DEFAULT_DEPTH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("resolution depth exceeded (bound {0})")]
    DepthExceeded(usize),
    #[error("module is not a sum of string modules")]
    NotStringSum,
}

/// A direct sum of indecomposable projectives with path bases.
#[derive(Clone, Debug)]
struct Free {
    gens: Vec<usize>,
    /// `coords[w]`: `(generator, path index)` pairs spanning the space at `w`.
    coords: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

/// One step of a minimal projective resolution.
#[derive(Clone, Debug)]
struct Step<F> {
    free: Free,
    /// For each generator, its image in the previous free module's
    /// coordinates at the generator's vertex (empty for step 0).
    images: Vec<Vec<F>>,
}

/// A minimal projective resolution, truncated where it becomes zero.
#[derive(Clone, Debug)]
pub struct Resolution<F> {
    steps: Vec<Step<F>>,
    complete: bool,
}

impl<F> Resolution<F> {
    /// Number of nonzero terms computed.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Whether the resolution reached zero.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Vertices of the generators of the `k`-th term.
    pub fn generators(&self, k: usize) -> Vec<usize> {
        self.steps
            .get(k)
            .map(|s| s.free.gens.clone())
            .unwrap_or_default()
    }
}

/// Free cover, syzygy, inclusion maps, and generator images of one step.
type SyzygyStep<F> = (Free, Rep<F>, Vec<Matrix<F>>, Vec<Vec<F>>);

pub struct Oracle<'a, F> {
    alg: &'a GentleAlgebra,
    from: Vec<Vec<Vec<usize>>>,
    from_index: Vec<HashMap<Vec<usize>, usize>>,
    to: Vec<Vec<Vec<usize>>>,
    to_index: Vec<HashMap<Vec<usize>, usize>>,
    pub depth: usize,
    _f: PhantomData<F>,
}

impl<'a> Oracle<'a, Q> {
    /// Oracle over the rationals with the default depth bound.
    pub fn rational(alg: &'a GentleAlgebra) -> Self {
        Oracle::new(alg, DEFAULT_DEPTH)
    }
}

impl<'a, F: Field> Oracle<'a, F> {
    pub fn new(alg: &'a GentleAlgebra, depth: usize) -> Self {
        let n = alg.vertex_count();
        let from: Vec<Vec<Vec<usize>>> = (0..n).map(|v| alg.paths_from(v)).collect();
        let to: Vec<Vec<Vec<usize>>> = (0..n).map(|v| alg.paths_to(v)).collect();
        let idx =
            |l: &Vec<Vec<usize>>| l.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Oracle {
            alg,
            from_index: from.iter().map(idx).collect(),
            to_index: to.iter().map(idx).collect(),
            from,
            to,
            depth,
            _f: PhantomData,
        }
    }

    pub fn algebra(&self) -> &GentleAlgebra {
        self.alg
    }

    pub fn string_rep(&self, s: &Str) -> Rep<F> {
        Rep::from_string(self.alg, s)
    }

    fn free(&self, gens: Vec<usize>) -> Free {
        let n = self.alg.vertex_count();
        let mut coords = vec![Vec::new(); n];
        let mut index = HashMap::new();
        for (g, &v) in gens.iter().enumerate() {
            for (pi, p) in self.from[v].iter().enumerate() {
                let w = self.alg.path_end(v, p);
                index.insert((g, pi), coords[w].len());
                coords[w].push((g, pi));
            }
        }
        Free {
            gens,
            coords,
            index,
        }
    }

    fn free_rep(&self, fr: &Free) -> Rep<F> {
        let dims: Vec<usize> = fr.coords.iter().map(|c| c.len()).collect();
        let maps = self
            .alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(dims[arr.target], dims[arr.source]);
                for (col, &(g, pi)) in fr.coords[arr.source].iter().enumerate() {
                    let v = fr.gens[g];
                    let p = &self.from[v][pi];
                    let nonzero = match p.last() {
                        None => true,
                        Some(&last) => !self.alg.is_relation(last, a),
                    };
                    if nonzero {
                        let mut q = p.clone();
                        q.push(a);
                        let qi = self.from_index[v][&q];
                        m.set(fr.index[&(g, qi)], col, F::one());
                    }
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    /// The indecomposable projective at `v`.
    pub fn projective(&self, v: usize) -> Rep<F> {
        self.free_rep(&self.free(vec![v]))
    }

    /// The indecomposable injective at `v`.
    pub fn injective(&self, v: usize) -> Rep<F> {
        let (_, rep) = self.cofree(&[v]);
        rep
    }

    /// Injective sum with dual path bases: coordinates `(generator, path
    /// index into paths ending at the generator)`.
    fn cofree(&self, gens: &[usize]) -> (Vec<Vec<(usize, usize)>>, Rep<F>) {
        let n = self.alg.vertex_count();
        let mut coords = vec![Vec::new(); n];
        let mut index = HashMap::new();
        for (g, &v) in gens.iter().enumerate() {
            for (xi, x) in self.to[v].iter().enumerate() {
                let u = self.alg.path_start(v, x);
                index.insert((g, xi), coords[u].len());
                coords[u].push((g, xi));
            }
        }
        let dims: Vec<usize> = coords
            .iter()
            .map(|c: &Vec<(usize, usize)>| c.len())
            .collect();
        let maps = self
            .alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(dims[arr.target], dims[arr.source]);
                for (col, &(g, xi)) in coords[arr.source].iter().enumerate() {
                    let v = gens[g];
                    let x = &self.to[v][xi];
                    if x.first() == Some(&a) {
                        let rest = x[1..].to_vec();
                        let ri = self.to_index[v][&rest];
                        m.set(index[&(g, ri)], col, F::one());
                    }
                }
                m
            })
            .collect();
        (coords, Rep { dims, maps })
    }

    /// Top generators of `m`: vertex and vector for each.
    fn top(&self, m: &Rep<F>) -> Vec<(usize, Vec<F>)> {
        let mut out = Vec::new();
        for w in 0..self.alg.vertex_count() {
            if m.dims[w] == 0 {
                continue;
            }
            let mut cols = Vec::new();
            for &a in self.alg.in_arrows(w) {
                let mat = &m.maps[a];
                for c in 0..mat.cols {
                    cols.push(mat.column(c));
                }
            }
            let rad = Matrix::from_columns(m.dims[w], &cols);
            for i in complement_basis(m.dims[w], &rad) {
                let mut e = vec![F::zero(); m.dims[w]];
                e[i] = F::one();
                out.push((w, e));
            }
        }
        out
    }

    /// Projective cover map, vertexwise, from the free module on `gens`.
    fn cover_map(&self, m: &Rep<F>, fr: &Free, vecs: &[Vec<F>]) -> Vec<Matrix<F>> {
        (0..self.alg.vertex_count())
            .map(|w| {
                let cols: Vec<Vec<F>> = fr.coords[w]
                    .iter()
                    .map(|&(g, pi)| m.apply_path(self.alg, &self.from[fr.gens[g]][pi], &vecs[g]))
                    .collect();
                Matrix::from_columns(m.dims[w], &cols)
            })
            .collect()
    }

    /// Kernel of a vertexwise map out of `src`, as a subrepresentation,
    /// together with the basis matrices of the kernel at each vertex.
    fn kernel(&self, src: &Rep<F>, map: &[Matrix<F>]) -> (Rep<F>, Vec<Matrix<F>>) {
        let n = self.alg.vertex_count();
        let bases: Vec<Matrix<F>> = (0..n)
            .map(|w| Matrix::from_columns(src.dims[w], &map[w].nullspace()))
            .collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
        let maps = self
            .alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let (s, t) = (arr.source, arr.target);
                let cols: Vec<Vec<F>> = (0..dims[s])
                    .map(|j| {
                        let img = src.maps[a].apply(&bases[s].column(j));
                        bases[t].solve(&img).expect("kernel is a subrepresentation")
                    })
                    .collect();
                Matrix::from_columns(dims[t], &cols)
            })
            .collect();
        (Rep { dims, maps }, bases)
    }

    /// First syzygy together with the data of the cover.
    fn syzygy_step(&self, m: &Rep<F>) -> SyzygyStep<F> {
        let top = self.top(m);
        let gens: Vec<usize> = top.iter().map(|t| t.0).collect();
        let vecs: Vec<Vec<F>> = top.into_iter().map(|t| t.1).collect();
        let fr = self.free(gens);
        let pi = self.cover_map(m, &fr, &vecs);
        let src = self.free_rep(&fr);
        let (k, bases) = self.kernel(&src, &pi);
        (fr, k, bases, vecs)
    }

    /// The kernel of the projective cover of `m`.
    pub fn syzygy(&self, m: &Rep<F>) -> Rep<F> {
        self.syzygy_step(m).1
    }

    pub fn is_projective(&self, m: &Rep<F>) -> bool {
        self.syzygy(m).total_dim() == 0
    }

    /// Minimal projective resolution with at least `upto + 1` terms when it
    /// does not stop earlier.
    pub fn resolution(&self, m: &Rep<F>, upto: usize) -> Result<Resolution<F>, OracleError> {
        let mut steps: Vec<Step<F>> = Vec::new();
        let mut cur = m.clone();
        let mut prev_bases: Option<Vec<Matrix<F>>> = None;
        loop {
            if cur.total_dim() == 0 {
                return Ok(Resolution {
                    steps,
                    complete: true,
                });
            }
            if steps.len() > upto {
                return Ok(Resolution {
                    steps,
                    complete: false,
                });
            }
            if steps.len() > self.depth {
                return Err(OracleError::DepthExceeded(self.depth));
            }
            let (fr, k, bases, vecs) = self.syzygy_step(&cur);
            let images = match &prev_bases {
                None => vec![Vec::new(); fr.gens.len()],
                Some(pb) => fr
                    .gens
                    .iter()
                    .zip(&vecs)
                    .map(|(&w, v)| pb[w].apply(v))
                    .collect(),
            };
            steps.push(Step { free: fr, images });
            prev_bases = Some(bases);
            cur = k;
        }
    }

    /// `Hom(P_k, N) -> Hom(P_{k+1}, N)` induced by the differential.
    fn coboundary(&self, res: &Resolution<F>, k: usize, n: &Rep<F>) -> Matrix<F> {
        let dim_of = |s: Option<&Step<F>>| -> (Vec<usize>, usize) {
            match s {
                None => (Vec::new(), 0),
                Some(s) => {
                    let mut offs = Vec::new();
                    let mut t = 0;
                    for &g in &s.free.gens {
                        offs.push(t);
                        t += n.dims[g];
                    }
                    (offs, t)
                }
            }
        };
        let (src_off, src_dim) = dim_of(res.steps.get(k));
        let (dst_off, dst_dim) = dim_of(res.steps.get(k + 1));
        let mut mat = Matrix::zeros(dst_dim, src_dim);
        let (Some(cur), Some(next)) = (res.steps.get(k), res.steps.get(k + 1)) else {
            return mat;
        };
        for (h, &w) in next.free.gens.iter().enumerate() {
            for (ci, coeff) in next.images[h].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (g, pi) = cur.free.coords[w][ci];
                let v = cur.free.gens[g];
                let np = n.path_matrix(self.alg, v, &self.from[v][pi]);
                for r in 0..np.rows {
                    for c in 0..np.cols {
                        let x = np.get(r, c);
                        if !x.is_zero() {
                            mat.add_at(dst_off[h] + r, src_off[g] + c, &coeff.mul(x));
                        }
                    }
                }
            }
        }
        mat
    }

    /// `dim Ext^k(M, N)` from a precomputed resolution of `M`.
    pub fn ext_with(&self, res: &Resolution<F>, n: &Rep<F>, k: usize) -> usize {
        let ck: usize = res
            .steps
            .get(k)
            .map(|s| s.free.gens.iter().map(|&g| n.dims[g]).sum())
            .unwrap_or(0);
        if ck == 0 {
            return 0;
        }
        let out_rank = self.coboundary(res, k, n).rank();
        let in_rank = if k == 0 {
            0
        } else {
            self.coboundary(res, k - 1, n).rank()
        };
        ck - out_rank - in_rank
    }

    /// `dim Ext^k(M, N)` (`k = 0` gives Hom) via the projective resolution.
    pub fn ext_dim(&self, m: &Rep<F>, n: &Rep<F>, k: usize) -> Result<usize, OracleError> {
        let res = self.resolution(m, k + 1)?;
        Ok(self.ext_with(&res, n, k))
    }

    /// A basis of `Hom(M, N)` by solving the commutativity equations.
    pub fn hom_basis(&self, m: &Rep<F>, n: &Rep<F>) -> Vec<Vec<Matrix<F>>> {
        let nv = self.alg.vertex_count();
        let mut off = Vec::with_capacity(nv);
        let mut total = 0;
        for w in 0..nv {
            off.push(total);
            total += m.dims[w] * n.dims[w];
        }
        if total == 0 {
            return Vec::new();
        }
        let var = |w: usize, i: usize, j: usize| off[w] + i * m.dims[w] + j;
        let mut rows: Vec<Vec<(usize, F)>> = Vec::new();
        for (a, arr) in self.alg.arrows().iter().enumerate() {
            let (s, t) = (arr.source, arr.target);
            for i in 0..n.dims[t] {
                for j in 0..m.dims[s] {
                    let mut row = Vec::new();
                    for k in 0..n.dims[s] {
                        let c = n.maps[a].get(i, k);
                        if !c.is_zero() {
                            row.push((var(s, k, j), c.clone()));
                        }
                    }
                    for k in 0..m.dims[t] {
                        let c = m.maps[a].get(k, j);
                        if !c.is_zero() {
                            row.push((var(t, i, k), c.neg()));
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let mut sys = Matrix::zeros(rows.len(), total);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row {
                sys.add_at(r, *c, x);
            }
        }
        sys.nullspace()
            .into_iter()
            .map(|x| {
                (0..nv)
                    .map(|w| {
                        let mut f = Matrix::zeros(n.dims[w], m.dims[w]);
                        for i in 0..n.dims[w] {
                            for j in 0..m.dims[w] {
                                f.set(i, j, x[var(w, i, j)].clone());
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &Rep<F>, n: &Rep<F>) -> usize {
        self.hom_basis(m, n).len()
    }

    /// Multiplicity of the indecomposable `x` as a summand of `m`.
    pub fn multiplicity(&self, x: &Rep<F>, m: &Rep<F>) -> usize {
        let f = self.hom_basis(x, m);
        if f.is_empty() {
            return 0;
        }
        let g = self.hom_basis(m, x);
        if g.is_empty() {
            return 0;
        }
        let mut pairing = Matrix::zeros(f.len(), g.len());
        for (i, fi) in f.iter().enumerate() {
            for (j, gj) in g.iter().enumerate() {
                let mut t = F::zero();
                for w in 0..self.alg.vertex_count() {
                    if x.dims[w] > 0 {
                        t = t.add(&gj[w].mul(&fi[w]).trace());
                    }
                }
                pairing.set(i, j, t);
            }
        }
        pairing.rank()
    }

    /// Decomposes `m` into canonical string summands (sorted, with
    /// repetition). Fails if string summands do not exhaust `m`.
    pub fn decompose(&self, m: &Rep<F>) -> Result<Vec<Str>, OracleError> {
        let mut out = Vec::new();
        if m.total_dim() == 0 {
            return Ok(out);
        }
        let mut covered = vec![0usize; m.dims.len()];
        for s in strings_within(self.alg, &m.dims) {
            let x = self.string_rep(&s);
            let k = self.multiplicity(&x, m);
            for _ in 0..k {
                for (c, d) in covered.iter_mut().zip(&x.dims) {
                    *c += d;
                }
                out.push(s.clone());
            }
        }
        if covered != m.dims {
            return Err(OracleError::NotStringSum);
        }
        out.sort();
        Ok(out)
    }

    /// Summands of the first syzygy, each flagged when projective.
    pub fn syzygy_summands(&self, s: &Str) -> Result<Vec<(Str, bool)>, OracleError> {
        let omega = self.syzygy(&self.string_rep(s));
        Ok(self
            .decompose(&omega)?
            .into_iter()
            .map(|x| {
                let p = self.is_projective(&self.string_rep(&x));
                (x, p)
            })
            .collect())
    }

    /// Summands of the `m`-fold syzygy, computed one summand at a time.
    pub fn iterated_syzygy(&self, s: &Str, m: usize) -> Result<Vec<Str>, OracleError> {
        let mut cur = vec![s.clone()];
        for _ in 0..m {
            let mut next = Vec::new();
            for x in &cur {
                next.extend(self.syzygy_summands(x)?.into_iter().map(|p| p.0));
            }
            cur = next;
        }
        cur.sort();
        Ok(cur)
    }

    /// `D Tr M` for a string module, as a representation.
    pub fn tau_rep(&self, m: &Rep<F>) -> Rep<F> {
        let (fr0, k0, bases0, _) = self.syzygy_step(m);
        if k0.total_dim() == 0 {
            return Rep::zero(self.alg);
        }
        let top1 = self.top(&k0);
        let gens1: Vec<usize> = top1.iter().map(|t| t.0).collect();
        // Image of each generator of P1 in P0 coordinates.
        let images: Vec<Vec<F>> = top1.iter().map(|(w, v)| bases0[*w].apply(v)).collect();
        let (coords1, inj1) = self.cofree(&gens1);
        let (coords0, inj0) = self.cofree(&fr0.gens);
        let index0: HashMap<(usize, usize), usize> = coords0
            .iter()
            .flat_map(|c| c.iter().enumerate().map(|(i, &k)| (k, i)))
            .collect();
        let maps: Vec<Matrix<F>> = (0..self.alg.vertex_count())
            .map(|u| {
                let mut mat = Matrix::zeros(inj0.dims[u], inj1.dims[u]);
                for (col, &(h, xi)) in coords1[u].iter().enumerate() {
                    let wh = gens1[h];
                    let x = &self.to[wh][xi];
                    for (ci, coeff) in images[h].iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let (g, pi) = fr0.coords[wh][ci];
                        let p = &self.from[fr0.gens[g]][pi];
                        if p.len() <= x.len() && x[x.len() - p.len()..] == p[..] {
                            let y = x[..x.len() - p.len()].to_vec();
                            let yi = self.to_index[fr0.gens[g]][&y];
                            mat.add_at(index0[&(g, yi)], col, coeff);
                        }
                    }
                }
                mat
            })
            .collect();
        self.kernel(&inj1, &maps).0
    }

    /// `D Tr` of a string module as a list of string summands.
    pub fn tau(&self, s: &Str) -> Result<Vec<Str>, OracleError> {
        self.decompose(&self.tau_rep(&self.string_rep(s)))
    }

    /// `tau(Omega^{m-1} M)`, summed over the summands of the syzygy.
    pub fn tau_m(&self, s: &Str, m: usize) -> Result<Vec<Str>, OracleError> {
        assert!(m >= 1);
        let mut out = Vec::new();
        for x in self.iterated_syzygy(s, m - 1)? {
            out.extend(self.tau(&x)?);
        }
        out.sort();
        Ok(out)
    }

    /// Projective dimension by iterating syzygies.
    pub fn projective_dimension(&self, m: &Rep<F>) -> Result<usize, OracleError> {
        let mut cur = m.clone();
        let mut k = 0;
        loop {
            let next = self.syzygy(&cur);
            if next.total_dim() == 0 {
                return Ok(k);
            }
            k += 1;
            if k > self.depth {
                return Err(OracleError::DepthExceeded(self.depth));
            }
            cur = next;
        }
    }

    /// `ext^1` by dimension shifting along `0 -> Omega M -> P -> M -> 0`,
    /// and `ext^k(M,N) = ext^{k-1}(Omega M, N)` above that.
    pub fn ext_by_shifting(&self, m: &Rep<F>, n: &Rep<F>, k: usize) -> usize {
        if k == 0 {
            return self.hom_dim(m, n);
        }
        let (fr, omega, _, _) = self.syzygy_step(m);
        if k == 1 {
            let p = self.free_rep(&fr);
            return self.hom_dim(&omega, n) + self.hom_dim(m, n) - self.hom_dim(&p, n);
        }
        self.ext_by_shifting(&omega, n, k - 1)
    }
}

/// Global dimension; `None` means infinite.
pub fn global_dimension(alg: &GentleAlgebra, depth: usize) -> Result<Option<usize>, OracleError> {
    if alg.forbidden_threads().iter().any(|t| t.cyclic) {
        return Ok(None);
    }
    let o: Oracle<Q> = Oracle::new(alg, depth);
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        best = best.max(o.projective_dimension(&o.string_rep(&Str::trivial(v)))?);
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::linalg::Gf32003;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow: a 4 3\narrow: b 4 2\narrow: c 3 1\narrow: d 2 1\nrel: a c\nrel: b d\n";

    fn s(alg: &GentleAlgebra, t: &str) -> Str {
        Str::parse(alg, t).unwrap().canonical(alg)
    }

    fn show(alg: &GentleAlgebra, v: &[Str]) -> Vec<String> {
        v.iter().map(|x| x.display(alg)).collect()
    }

    #[test]
    fn square_ext_examples() {
        let alg = parse_algebra(SQUARE).unwrap();
        let o = Oracle::rational(&alg);
        let s3 = o.string_rep(&s(&alg, "e(3)"));
        let s1 = o.string_rep(&s(&alg, "e(1)"));
        let s2 = o.string_rep(&s(&alg, "e(2)"));
        assert_eq!(o.ext_dim(&s3, &s1, 1).unwrap(), 1);
        assert_eq!(o.ext_dim(&s3, &s2, 1).unwrap(), 0);
        for v in 0..4 {
            let p = o.projective(v);
            for x in ["e(1)", "a~ b", "c d~", "d"] {
                assert_eq!(o.ext_dim(&p, &o.string_rep(&s(&alg, x)), 1).unwrap(), 0);
            }
        }
    }

    #[test]
    fn square_syzygies() {
        let alg = parse_algebra(SQUARE).unwrap();
        let o = Oracle::rational(&alg);
        let om4 = o.syzygy_summands(&s(&alg, "e(4)")).unwrap();
        assert_eq!(
            show(&alg, &om4.iter().map(|x| x.0.clone()).collect::<Vec<_>>()),
            vec!["e(2)", "e(3)"]
        );
        assert!(om4.iter().all(|x| !x.1));
        let om3 = o.syzygy_summands(&s(&alg, "e(3)")).unwrap();
        assert_eq!(om3.len(), 1);
        assert_eq!(om3[0].0.display(&alg), "e(1)");
        assert!(om3[0].1);
        assert!(o.syzygy_summands(&s(&alg, "a~ b")).unwrap().is_empty());
    }

    #[test]
    fn square_tau() {
        let alg = parse_algebra(SQUARE).unwrap();
        let o = Oracle::rational(&alg);
        assert_eq!(show(&alg, &o.tau(&s(&alg, "e(3)")).unwrap()), vec!["d"]);
        assert_eq!(show(&alg, &o.tau(&s(&alg, "e(2)")).unwrap()), vec!["c"]);
        assert!(o.tau(&s(&alg, "a~ b")).unwrap().is_empty());
        assert_eq!(
            show(&alg, &o.tau_m(&s(&alg, "e(4)"), 2).unwrap()),
            vec!["c", "d"]
        );
    }

    #[test]
    fn projectives_and_injectives_are_strings() {
        let alg = parse_algebra(SQUARE).unwrap();
        let o = Oracle::rational(&alg);
        let v4 = alg.vertex("4").unwrap();
        assert_eq!(
            show(&alg, &o.decompose(&o.projective(v4)).unwrap()),
            vec!["a~ b"]
        );
        let v1 = alg.vertex("1").unwrap();
        assert_eq!(
            show(&alg, &o.decompose(&o.injective(v1)).unwrap()),
            vec!["c d~"]
        );
        assert_eq!(o.injective(v1).dims, vec![1, 1, 1, 0]);
    }

    #[test]
    fn global_dimensions() {
        let sq = parse_algebra(SQUARE).unwrap();
        assert_eq!(global_dimension(&sq, 64).unwrap(), Some(2));
        let a2 = parse_algebra("vertices: 1 2\narrow: a 1 2\n").unwrap();
        assert_eq!(global_dimension(&a2, 64).unwrap(), Some(1));
        let cyc = parse_algebra("vertices: x y\narrow: a x y\narrow: b y x\nrel: a b\nrel: b a\n")
            .unwrap();
        assert_eq!(global_dimension(&cyc, 64).unwrap(), None);
        let o = Oracle::<Q>::new(&cyc, 10);
        let sx = o.string_rep(&Str::trivial(0));
        assert_eq!(
            o.projective_dimension(&sx),
            Err(OracleError::DepthExceeded(10))
        );
        assert_eq!(o.ext_dim(&sx, &sx, 20), Err(OracleError::DepthExceeded(10)));
    }

    #[test]
    fn decomposition_of_sums() {
        let alg = parse_algebra(SQUARE).unwrap();
        let o = Oracle::rational(&alg);
        let p4 = o.projective(alg.vertex("4").unwrap());
        let om = o.syzygy(&o.syzygy(&o.string_rep(&Str::trivial(3))));
        assert_eq!(show(&alg, &o.decompose(&om).unwrap()), vec!["e(1)", "e(1)"]);
        assert_eq!(o.multiplicity(&p4, &p4), 1);
    }

    #[test]
    fn kronecker_band_is_not_a_string_sum() {
        let alg = parse_algebra("vertices: 1 2\narrow: a 1 2\narrow: b 1 2\n").unwrap();
        let o = Oracle::rational(&alg);
        // The band module with parameter 1: both arrows act as the identity.
        let mut r: Rep<Q> = Rep::zero(&alg);
        r.dims = vec![1, 1];
        r.maps = vec![Matrix::identity(1), Matrix::identity(1)];
        assert_eq!(o.decompose(&r), Err(OracleError::NotStringSum));
    }

    #[test]
    fn prime_field_agrees() {
        let alg = parse_algebra(SQUARE).unwrap();
        let oq = Oracle::rational(&alg);
        let op: Oracle<Gf32003> = Oracle::new(&alg, 64);
        let (all, _) = crate::strings::enumerate_strings(&alg, 6);
        for x in &all {
            for y in &all {
                for k in 0..3 {
                    let a = oq.ext_dim(&oq.string_rep(x), &oq.string_rep(y), k).unwrap();
                    let b = op.ext_dim(&op.string_rep(x), &op.string_rep(y), k).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }
}
