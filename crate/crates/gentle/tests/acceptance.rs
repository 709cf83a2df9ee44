//! Acceptance suite: one line per criterion, `PASS` or `FAIL` with details.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gentle::algebra::GentleAlgebra;
use gentle::arcs::{interior_crossing_count, is_simple, weight_profile, Arc};
use gentle::higher::{cone, n_complete, tau_sequences, HigherAr};
use gentle::linalg::Q;
use gentle::oracle::{global_dimension, Oracle};
use gentle::rigidity::{
    complete_to_max, dissection, face_decomposition, is_admissible, is_rigid_geometric,
    is_rigid_oracle, max_rigid_rank_report, random_admissible, triangle_corners, ArcSystem,
    CompletionOptions, FaceDecomposition, FaceType,
};
use gentle::strings::{enumerate_strings, Str};
use gentle::surface::{Kind, SurfaceModel};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> Vec<(&'static str, GentleAlgebra)> {
    common::ALL.iter().map(|n| (*n, common::load(n))).collect()
}

fn finite(alg: &GentleAlgebra) -> Option<usize> {
    global_dimension(alg, 64).expect("depth suffices")
}

fn surface(alg: &GentleAlgebra) -> Option<SurfaceModel> {
    let s = SurfaceModel::build(alg).expect("surface builds");
    (!s.is_punctured()).then_some(s)
}

fn figure_classification() -> Outcome {
    let mut verdicts = Vec::new();
    for (i, infinite) in [true, true, false, false, false].into_iter().enumerate() {
        let name = format!("fig13_{}", i + 1);
        let alg = common::load(&name);
        let g = finite(&alg);
        ensure(g == Some(2), || format!("{name}: gldim {g:?}"))?;
        let r = tau_sequences(&alg, 2, false);
        ensure(r.cycle.is_some() == infinite, || {
            format!("{name}: cycle found = {}", r.cycle.is_some())
        })?;
        verdicts.push(if infinite { "cycle" } else { "none" });
    }
    Ok(format!(
        "gldim 2 on all five; cycles {}",
        verdicts.join("/")
    ))
}

fn calibration() -> Outcome {
    let mut checked = 0;
    for (name, alg) in fixtures() {
        let Ok(h) = HigherAr::new(&alg, 64) else {
            continue;
        };
        let o: Oracle<Q> = Oracle::new(&alg, 64);
        let (strs, _) = enumerate_strings(&alg, 6);
        for m in 2..=h.gldim() {
            for w in &strs {
                let got = h.omega_m_reduced(w, m).map_err(|e| e.to_string())?;
                let mut want: Vec<Str> = o
                    .iterated_syzygy(w, m)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .filter(|x| !o.is_projective(&o.string_rep(x)))
                    .collect();
                want.sort();
                ensure(got == want, || {
                    format!("{name}: omega_{m}({})", w.display(&alg))
                })?;
                let got = h.tau_m(w, m).map_err(|e| e.to_string())?;
                let mut want = o.tau_m(w, m).map_err(|e| e.to_string())?;
                want.sort();
                ensure(got == want, || {
                    format!("{name}: tau_{m}({})", w.display(&alg))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (string, m) cases"))
}

fn ext_weights() -> Outcome {
    let (mut pairs, mut nonzero) = (0, 0);
    for (name, alg) in fixtures() {
        let Some(g) = finite(&alg) else { continue };
        let Some(s) = surface(&alg) else { continue };
        let o: Oracle<Q> = Oracle::new(&alg, 64);
        let (strs, _) = enumerate_strings(&alg, 6);
        let arcs: Vec<(Str, Arc)> = strs
            .into_iter()
            .filter_map(|w| Arc::from_string(&s, &w).ok().map(|a| (w, a)))
            .filter(|(_, a)| is_simple(&s, a))
            .collect();
        for (wa, a) in &arcs {
            let ra = o.string_rep(wa);
            let res = o.resolution(&ra, g + 1).map_err(|e| e.to_string())?;
            for (wb, b) in &arcs {
                if wa == wb || interior_crossing_count(&s, a, b) != 0 {
                    continue;
                }
                let rb = o.string_rep(wb);
                let profile = weight_profile(&s, a, b);
                for k in 0..=g.max(profile.len().saturating_sub(1)) {
                    let ext = if k <= g { o.ext_with(&res, &rb, k) } else { 0 };
                    let w = profile.get(k).copied().unwrap_or(0);
                    ensure(ext == w, || {
                        format!(
                            "{name}: ({}, {}) degree {k}: ext {ext}, weight {w}",
                            wa.display(&alg),
                            wb.display(&alg)
                        )
                    })?;
                }
                pairs += 1;
                nonzero += usize::from(profile.iter().any(|&w| w > 0));
            }
        }
    }
    Ok(format!(
        "{pairs} ordered pairs, {nonzero} with some nonzero degree"
    ))
}

fn rigidity_agreement() -> Outcome {
    let mut total = 0;
    let mut rigid = 0;
    for (name, alg) in fixtures() {
        let Some(s) = surface(&alg) else { continue };
        let (strs, _) = enumerate_strings(&alg, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let k = rng.gen_range(1..=4.min(strs.len()));
            let words: Vec<Str> = strs.choose_multiple(&mut rng, k).cloned().collect();
            let g = is_rigid_geometric(&s, &words).map_err(|e| e.to_string())?;
            let o = is_rigid_oracle(&s, &words).map_err(|e| e.to_string())?;
            ensure(g == o, || {
                format!(
                    "{name}: {:?} geometric {g}, oracle {o}",
                    words.iter().map(|w| w.display(&alg)).collect::<Vec<_>>()
                )
            })?;
            total += 1;
            rigid += usize::from(g);
        }
    }
    Ok(format!("{total} subsets, {rigid} rigid"))
}

/// Admissible systems built by random growth and completion, collected for
/// the face checks of later criteria.
struct Generated {
    systems: Vec<(String, SurfaceModel, ArcSystem)>,
}

fn rank_formula(made: &mut Generated) -> Outcome {
    let opts = CompletionOptions::default();
    let mut runs = 0;
    for (name, alg) in fixtures() {
        let Some(s) = surface(&alg) else { continue };
        let hereditary = alg.relations().is_empty() && matches!(name, "a2" | "a3" | "kronecker");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..200u64 {
            let size = rng.gen_range(1..=3);
            let start = random_admissible(&s, 4, seed, size);
            let done = complete_to_max(&s, &start, &opts).map_err(|e| format!("{name}: {e}"))?;
            ensure(
                start.strings().iter().all(|w| done.strings().contains(w)),
                || format!("{name} seed {seed}: completion dropped an arc"),
            )?;
            let rank = max_rigid_rank_report(&s, &done).map_err(|e| e.to_string())?;
            ensure(rank.agrees, || {
                format!(
                    "{name} seed {seed}: e1 {} vs n+f4+f5 {}",
                    rank.e1, rank.formula
                )
            })?;
            if hereditary {
                ensure(rank.e1 == rank.n && rank.f4 == 0 && rank.f5 == 0, || {
                    format!("{name} seed {seed}: hereditary rank {rank:?}")
                })?;
            }
            made.systems
                .push((format!("{name}/seed"), s.clone(), start));
            made.systems.push((format!("{name}/max"), s.clone(), done));
            runs += 1;
        }
    }
    Ok(format!("{runs} completions"))
}

fn closures(made: &mut Generated) -> Outcome {
    let mut done = Vec::new();
    let mut infinite = Vec::new();
    for (name, alg) in fixtures() {
        if finite(&alg) != Some(2) {
            continue;
        }
        let h = HigherAr::new(&alg, 64).map_err(|e| e.to_string())?;
        let c = h.tau_closure(2, 8).map_err(|e| e.to_string())?;
        if c.infinite.is_some() {
            infinite.push(name);
            continue;
        }
        ensure(c.admissible, || format!("{name}: closure not admissible"))?;
        ensure(c.partial.is_some_and(|p| p <= 4), || {
            format!("{name}: partial bound {:?}", c.partial)
        })?;
        ensure(c.rigid == Some(true), || {
            format!("{name}: closure not rigid")
        })?;
        ensure(c.maximal == Some(true), || {
            format!("{name}: closure not maximal")
        })?;
        let sys = c.system.expect("finite closure has a system");
        if name == "linear_a3" {
            let rank = max_rigid_rank_report(h.surface(), &sys).map_err(|e| e.to_string())?;
            let nu: usize = h
                .surface()
                .polygons
                .iter()
                .map(|p| (p.len().saturating_sub(1)) / 2)
                .sum();
            ensure(rank.e1 == 4 && rank.e1 == 3 + nu && rank.agrees, || {
                format!("linear rank {rank:?}, nu sum {nu}")
            })?;
        }
        made.systems
            .push((format!("{name}/closure"), h.surface().clone(), sys));
        done.push(name);
    }
    Ok(format!(
        "checked {}; closures of {} are infinite and have no finite system",
        done.join(" "),
        infinite.join(" ")
    ))
}

fn no_internal_triangles(made: &Generated) -> Outcome {
    for (label, s, sys) in &made.systems {
        ensure(is_admissible(s, sys), || format!("{label}: not admissible"))?;
        let fd = face_decomposition(s, sys).map_err(|e| e.to_string())?;
        ensure(fd.counts.triangles == 0, || {
            format!("{label}: internal triangle")
        })?;
    }
    // Triangles do occur once admissibility is dropped; read their corners.
    let (mut seen, mut read, mut skipped) = (0, 0, 0);
    for (name, alg) in fixtures() {
        let Some(s) = surface(&alg) else { continue };
        let (strs, _) = enumerate_strings(&alg, 4);
        let pool: Vec<Arc> = strs
            .iter()
            .filter_map(|w| Arc::from_string(&s, w).ok())
            .filter(|a| is_simple(&s, a))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut p = pool.clone();
            p.shuffle(&mut rng);
            let mut cur: Vec<Arc> = Vec::new();
            for a in p {
                if cur.len() < 6
                    && cur
                        .iter()
                        .all(|b| !a.same_curve(b, &s) && interior_crossing_count(&s, &a, b) == 0)
                {
                    cur.push(a);
                }
            }
            let sys = ArcSystem::new(&s, cur).map_err(|e| e.to_string())?;
            let fd = face_decomposition(&s, &sys).map_err(|e| e.to_string())?;
            for f in fd.faces.iter().filter(|f| f.kind == FaceType::Triangle) {
                seen += 1;
                match triangle_corners(&s, f) {
                    Some(c) => {
                        let sum: usize = c.weights.iter().sum();
                        ensure(c.cyclic && sum == 1, || {
                            format!("{name}: triangle {:?} weights {:?}", f.walk, c.weights)
                        })?;
                        read += 1;
                    }
                    None => skipped += 1,
                }
            }
        }
    }
    Ok(format!(
        "{} admissible systems triangle-free; {read} of {seen} triangles read, all sum 1 ({skipped} with a doubly shared arc pair not read)",
        made.systems.len()
    ))
}

fn completeness_chain() -> Outcome {
    let lin = common::load("linear_a3");
    ensure(n_complete(&lin, 2).complete, || {
        "linear not 2-complete".into()
    })?;
    let h = HigherAr::new(&lin, 64).map_err(|e| e.to_string())?;
    let abs = h.is_absolutely_complete().map_err(|e| e.to_string())?;
    ensure(abs.absolute, || "linear not absolutely complete".into())?;
    let sub = h.subcategory_arc_sets().map_err(|e| e.to_string())?;
    ensure(sub.tilting_size_ok && sub.weights_zero, || {
        format!("tilting set {:?}", sub.tilting)
    })?;
    let c1 = cone(&lin, 2).map_err(|e| e.to_string())?;
    let a4 = common::load("linear_a4");
    ensure(
        c1.vertex_count() == 4 && c1.relations().len() == 2 && finite(&c1) == Some(3),
        || "first cone is not the A4 chain".into(),
    )?;
    ensure(finite(&a4) == Some(3), || "A4 chain gldim".into())?;
    ensure(n_complete(&c1, 3).complete, || "cone not 3-complete".into())?;
    let c2 = cone(&c1, 3).map_err(|e| e.to_string())?;
    ensure(
        finite(&c2) == Some(4) && n_complete(&c2, 4).complete,
        || "second cone not 4-complete".into(),
    )?;
    let sq = n_complete(&common::load("square"), 2);
    let bad = sq.walks.iter().find(|w| w.degree != 1);
    ensure(
        !sq.complete && bad.is_some_and(|w| w.source == "4" && w.degree == 2),
        || "square witness".into(),
    )?;
    Ok("A3 -> A4 -> A5 chain complete; square fails at source 4, degree 2".into())
}

fn topology() -> Outcome {
    let mut faces = 0;
    for (name, alg) in fixtures() {
        let s = SurfaceModel::build(&alg).map_err(|e| e.to_string())?;
        let t = s.topology();
        let lhs = alg.vertex_count() as i64;
        let rhs = 2 * t.g as i64 - 2 + (t.b + t.p + t.m) as i64;
        ensure(lhs == rhs, || format!("{name}: n={lhs}, 2g-2+b+p+m={rhs}"))?;
        ensure(s.euler_genus() == t.g, || format!("{name}: genus mismatch"))?;
        if s.is_punctured() {
            continue;
        }
        let mut systems = vec![
            dissection(&s, Kind::Projective).map_err(|e| e.to_string())?,
            dissection(&s, Kind::Injective).map_err(|e| e.to_string())?,
            ArcSystem::empty(),
        ];
        systems.extend((0..50).map(|seed| random_admissible(&s, 4, seed, 4)));
        for sys in systems {
            let fd: FaceDecomposition = face_decomposition(&s, &sys).map_err(|e| e.to_string())?;
            ensure(fd.euler == 2 - 2 * t.g as i64 - t.b as i64, || {
                format!("{name}: Euler {}", fd.euler)
            })?;
            faces += 1;
        }
    }
    Ok(format!(
        "{} surfaces, {faces} face decompositions",
        common::ALL.len()
    ))
}

fn bi_implication() -> Outcome {
    let mut report = Vec::new();
    for (name, alg) in fixtures() {
        let Some(n) = finite(&alg) else { continue };
        if n < 2 {
            continue;
        }
        let seq = tau_sequences(&alg, n, false);
        if seq.cycle.is_some() {
            continue;
        }
        let h = HigherAr::new(&alg, 64).map_err(|e| e.to_string())?;
        let dim = h.tau_dimension(n).map_err(|e| e.to_string())?;
        let (Some(top), Some(vanish), Some(len)) =
            (dim.max_nonvanishing, dim.vanishing, seq.max_length)
        else {
            return Err(format!("{name}: finite by cycles but not by iteration"));
        };
        for l in 1..=vanish {
            let nonzero = l <= top;
            let exists = l <= len;
            ensure(nonzero == exists, || {
                format!("{name}: l={l} translate nonzero {nonzero}, sequence exists {exists}")
            })?;
        }
        report.push(format!("{name}:{len}/{vanish}"));
    }
    Ok(format!("length/vanishing {}", report.join(" ")))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = t.elapsed().as_secs_f64();
    match out {
        Ok(d) => {
            println!("PASS {label}: {d} [{secs:.2}s]");
            true
        }
        Err(d) => {
            println!("FAIL {label}: {d} [{secs:.2}s]");
            false
        }
    }
}

fn main() {
    let mut made = Generated {
        systems: Vec::new(),
    };
    let results = [
        run("1 figure quivers classified", figure_classification),
        run("2 syzygy and translate calibration", calibration),
        run("3 ext equals intersection weights", ext_weights),
        run("4 rigidity engines agree", rigidity_agreement),
        run("5 rank formula on completions", || rank_formula(&mut made)),
        run("6 tau2-closures are maximal rigid", || closures(&mut made)),
        run("7 no internal triangles", || no_internal_triangles(&made)),
        run("8 completeness and cones", completeness_chain),
        run("9 topology invariants", topology),
        run("10 finiteness bi-implication", bi_implication),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
