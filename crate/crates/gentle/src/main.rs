use std::io::Write as _;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gentle::algebra::{AlgebraError, GentleAlgebra};
use gentle::arcs::{
    endpoint_weight, interior_crossing_count, is_simple, weight_profile, Arc, ArcError, ArcJson,
};
use gentle::higher::{classify, cone, n_complete, HigherAr, HigherError};
use gentle::io::{
    parse_arc_system, quiver_dot, quiver_json, read_algebra, read_input, write_arc_system, IoError,
    RunReport,
};
use gentle::linalg::Q;
use gentle::oracle::{global_dimension, Oracle, OracleError};
use gentle::rigidity::{
    classify_partial_triangulation, complete_to_max, face_decomposition, is_admissible,
    is_rigid_geometric, is_rigid_oracle, max_rigid_rank_report, random_admissible, ArcSystem,
    CompletionOptions, RigidityError,
};
use gentle::strings::{enumerate_strings, Str, StringError};
use gentle::surface::{SurfaceError, SurfaceModel};

/// Gentle algebras, their marked surfaces, and higher Auslander-Reiten theory.
#[derive(Parser, Debug)]
#[command(name = "gentle", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Longest string enumerated when searching.
    #[arg(long, global = true, default_value_t = 8)]
    max_string_len: usize,
    /// Bound on projective resolutions.
    #[arg(long, global = true, default_value_t = 64)]
    depth: usize,
    /// Seed for randomly generated arc systems.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that a file describes a gentle algebra.
    Validate { file: PathBuf },
    /// Build the marked surface.
    Surface { file: PathBuf },
    /// List strings up to `--max-string-len`.
    Strings { file: PathBuf },
    /// Describe one string module and its arc.
    Module {
        file: PathBuf,
        #[arg(required_unless_present = "arc")]
        string: Option<String>,
        /// Arc JSON, inline or as a file, in place of the string.
        #[arg(long, conflicts_with = "string")]
        arc: Option<String>,
    },
    /// Ext dimensions next to intersection weights.
    Ext {
        file: PathBuf,
        first: String,
        second: String,
    },
    /// Higher syzygy of a string module.
    Omega {
        file: PathBuf,
        #[arg(required_unless_present = "arc")]
        string: Option<String>,
        /// Arc JSON, inline or as a file, in place of the string.
        #[arg(long, conflicts_with = "string")]
        arc: Option<String>,
        #[arg(short, long, default_value_t = 2)]
        m: usize,
    },
    /// Higher translate of a string module.
    Tau {
        file: PathBuf,
        #[arg(required_unless_present = "arc")]
        string: Option<String>,
        /// Arc JSON, inline or as a file, in place of the string.
        #[arg(long, conflicts_with = "string")]
        arc: Option<String>,
        #[arg(short, long, default_value_t = 2)]
        m: usize,
    },
    /// Closure of the injectives under the higher translate.
    TauClosure {
        file: PathBuf,
        /// Defaults to the global dimension.
        #[arg(short)]
        n: Option<usize>,
        /// Write the closure as an arc-system file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rigidity of an arc system, by both engines.
    Rigid { file: PathBuf, system: PathBuf },
    /// Faces cut out by an arc system.
    Faces { file: PathBuf, system: PathBuf },
    /// Extend an admissible system to a maximal one.
    Complete {
        file: PathBuf,
        /// Start from this system instead of a random one.
        system: Option<PathBuf>,
        /// Size of the random starting system.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Count internal edges against the rank formula.
    Rank { file: PathBuf, system: PathBuf },
    /// Global dimension, higher translate finiteness and completeness.
    Classify { file: PathBuf },
    /// Write the cone of an n-complete algebra.
    Cone {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Export a quiver, surface or arc system.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Quiver)]
        what: What,
        #[arg(long, default_value = "dot")]
        format: String,
        /// Arc system to export with `--what system`.
        #[arg(long)]
        system: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Quiver,
    Surface,
    System,
}

/// Outcome of a command: the report plus raw text for commands that write
/// a document.
struct Output {
    report: RunReport,
    document: Option<String>,
}

fn load(file: &Path, cmd: &str) -> Result<(GentleAlgebra, RunReport)> {
    let (alg, digest) = read_algebra(file)?;
    Ok((alg, RunReport::new(cmd, file, digest)))
}

fn load_system(alg: &GentleAlgebra, path: &Path) -> Result<Vec<Str>> {
    let (text, _) = read_input(path)?;
    Ok(parse_arc_system(alg, &text)?)
}

/// A string in notation, or an arc as inline JSON.
fn parse_str(alg: &GentleAlgebra, text: &str) -> Result<Str> {
    if text.trim_start().starts_with('{') {
        let j: ArcJson = serde_json::from_str(text).context("reading arc JSON")?;
        let s = SurfaceModel::build(alg)?;
        return Ok(Arc::from_json(&s, &j)?.word.canonical(alg));
    }
    Ok(Str::parse(alg, text)?.canonical(alg))
}

/// The module named by a positional string or by `--arc` (inline JSON or a
/// file holding it).
fn module_arg(alg: &GentleAlgebra, string: &Option<String>, arc: &Option<String>) -> Result<Str> {
    match (string, arc) {
        (Some(t), _) => parse_str(alg, t),
        (None, Some(a)) if a.trim_start().starts_with('{') => parse_str(alg, a),
        (None, Some(path)) => {
            let (text, _) = read_input(Path::new(path))?;
            parse_str(alg, &text)
        }
        (None, None) => bail!("give a string or --arc"),
    }
}

fn names(alg: &GentleAlgebra, v: &[Str]) -> Vec<String> {
    v.iter().map(|x| x.display(alg)).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> Result<Output> {
    let depth = cli.depth;
    let mut document = None;
    let report = match &cli.cmd {
        Cmd::Validate { file } => {
            let (alg, mut r) = load(file, "validate")?;
            r.line(format!(
                "gentle: {} vertices, {} arrows, {} relations",
                alg.vertex_count(),
                alg.arrow_count(),
                alg.relations().len()
            ));
            r.set("vertices", alg.vertex_count());
            r.set("arrows", alg.arrow_count());
            r.set("relations", alg.relations().len());
            r
        }
        Cmd::Surface { file } => {
            let (alg, mut r) = load(file, "surface")?;
            let s = SurfaceModel::build(&alg)?;
            let sum = s.summary();
            r.line(format!("g={} b={} m={} p={}", sum.g, sum.b, sum.m, sum.p));
            for (i, p) in sum.polygons.iter().enumerate() {
                r.line(format!("polygon {i} [{}]: {}", p.marker, p.sides.join(" ")));
            }
            for (i, f) in sum.fans.iter().enumerate() {
                r.line(format!("fan {i}: {}", f.join(" ")));
            }
            for (i, c) in sum.boundary.iter().enumerate() {
                r.line(format!("boundary {i}: {}", c.join(" ")));
            }
            let euler = s.euler_genus();
            r.check("genus from Euler characteristic", euler == sum.g);
            r.set("surface", &sum);
            r
        }
        Cmd::Strings { file } => {
            let (alg, mut r) = load(file, "strings")?;
            let (strs, band) = enumerate_strings(&alg, cli.max_string_len);
            let list = names(&alg, &strs);
            for l in &list {
                r.line(l.clone());
            }
            r.line(format!(
                "{} strings of length <= {}; band words: {}",
                list.len(),
                cli.max_string_len,
                yes(band)
            ));
            r.set("strings", &list);
            r.set("count", list.len());
            r.set("max_len", cli.max_string_len);
            r.set("band_words", band);
            r
        }
        Cmd::Module { file, string, arc } => {
            let (alg, mut r) = load(file, "module")?;
            let w = module_arg(&alg, string, arc)?;
            let s = SurfaceModel::build(&alg)?;
            let dims = w.dims(&alg);
            r.line(format!("string {}", w.display(&alg)));
            r.line(format!(
                "dimension vector ({})",
                dims.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            r.set("string", w.display(&alg));
            r.set("dims", &dims);
            match Arc::from_string(&s, &w) {
                Ok(a) => {
                    let ws = [endpoint_weight(&s, a.start), endpoint_weight(&s, a.end)];
                    r.line(format!(
                        "arc from polygon {} (weight {}) to polygon {} (weight {}), simple: {}",
                        a.start.polygon,
                        ws[0],
                        a.end.polygon,
                        ws[1],
                        yes(is_simple(&s, &a))
                    ));
                    r.set("arc", a.to_json(&s));
                    r.set("weights", ws);
                    r.set("simple", is_simple(&s, &a));
                }
                Err(ArcError::Puncture) => {
                    r.line("arc ends at a puncture");
                    r.set("arc", serde_json::Value::Null);
                }
                Err(e) => return Err(e.into()),
            }
            let o: Oracle<Q> = Oracle::new(&alg, depth);
            match o.projective_dimension(&o.string_rep(&w)) {
                Ok(pd) => {
                    r.line(format!("projective dimension {pd}"));
                    r.set("pd", pd);
                }
                Err(OracleError::DepthExceeded(d)) => {
                    r.line(format!("projective dimension exceeds {d}"));
                    r.set("pd", serde_json::Value::Null);
                }
                Err(e) => return Err(e.into()),
            }
            r
        }
        Cmd::Ext {
            file,
            first,
            second,
        } => {
            let (alg, mut r) = load(file, "ext")?;
            let (m, n) = (parse_str(&alg, first)?, parse_str(&alg, second)?);
            let top = global_dimension(&alg, depth)?.unwrap_or(4).max(1);
            let o: Oracle<Q> = Oracle::new(&alg, depth);
            let (mr, nr) = (o.string_rep(&m), o.string_rep(&n));
            let mut ext = Vec::new();
            for k in 0..=top {
                ext.push(o.ext_dim(&mr, &nr, k)?);
            }
            let s = SurfaceModel::build(&alg)?;
            let arcs = (Arc::from_string(&s, &m), Arc::from_string(&s, &n));
            let mut weights = None;
            if let (Ok(a), Ok(b)) = &arcs {
                let mut p = weight_profile(&s, a, b);
                p.resize(top + 1, 0);
                let comparable = !s.is_punctured()
                    && m != n
                    && is_simple(&s, a)
                    && is_simple(&s, b)
                    && interior_crossing_count(&s, a, b) == 0;
                if comparable {
                    r.check("intersection weights match ext", p[..=top] == ext[..]);
                }
                weights = Some(p);
            }
            for k in 0..=top {
                match &weights {
                    Some(p) => r.line(format!(
                        "k={k}: ext={} weight-{k} intersections={}",
                        ext[k], p[k]
                    )),
                    None => r.line(format!("k={k}: ext={}", ext[k])),
                }
            }
            r.set("ext", &ext);
            r.set("weights", &weights);
            r
        }
        Cmd::Omega {
            file,
            string,
            arc,
            m,
        } => {
            let (alg, mut r) = load(file, "omega")?;
            let w = module_arg(&alg, string, arc)?;
            let h = HigherAr::new(&alg, depth)?;
            let got = h.omega_m(&w, *m)?;
            let o: Oracle<Q> = Oracle::new(&alg, depth);
            let want = o.iterated_syzygy(&w, *m)?;
            let mut reduced: Vec<Str> = got.iter().filter(|x| !x.1).map(|x| x.0.clone()).collect();
            reduced.sort();
            let mut want_reduced: Vec<Str> = want
                .iter()
                .filter(|x| !o.is_projective(&o.string_rep(x)))
                .cloned()
                .collect();
            want_reduced.sort();
            r.check(
                "oracle agreement modulo projectives",
                reduced == want_reduced,
            );
            for (x, p) in &got {
                r.line(format!(
                    "{}{}",
                    x.display(&alg),
                    if *p { " (projective)" } else { "" }
                ));
            }
            if got.is_empty() {
                r.line("0");
            }
            r.set("m", m);
            r.set(
                "summands",
                got.iter()
                    .map(|(x, p)| json!({"string": x.display(&alg), "projective": p}))
                    .collect::<Vec<_>>(),
            );
            r
        }
        Cmd::Tau {
            file,
            string,
            arc,
            m,
        } => {
            let (alg, mut r) = load(file, "tau")?;
            let w = module_arg(&alg, string, arc)?;
            let h = HigherAr::new(&alg, depth)?;
            if *m != h.gldim() {
                r.line(format!(
                    "note: m={m} differs from the global dimension {}",
                    h.gldim()
                ));
            }
            let got = h.tau_m(&w, *m)?;
            let o: Oracle<Q> = Oracle::new(&alg, depth);
            let mut want = o.tau_m(&w, *m)?;
            want.sort();
            r.check("oracle agreement", got == want);
            let list = names(&alg, &got);
            r.line(if list.is_empty() {
                "0".to_string()
            } else {
                list.join(" + ")
            });
            r.set("m", m);
            r.set("summands", &list);
            r
        }
        Cmd::TauClosure { file, n, out } => {
            let (alg, mut r) = load(file, "tau-closure")?;
            let h = HigherAr::new(&alg, depth)?;
            let n = n.unwrap_or(h.gldim());
            let c = h.tau_closure(n, cli.max_string_len)?;
            r.set("n", n);
            r.set("matches_gldim", c.matches_gldim);
            if !c.matches_gldim {
                r.line(format!(
                    "note: n={n} differs from the global dimension {}",
                    h.gldim()
                ));
            }
            if let Some(w) = &c.infinite {
                r.line(format!("infinite; cycle {w}"));
                r.set("infinite", true);
                r.set("cycle", w);
            } else {
                let list = names(&alg, &c.modules);
                for l in &list {
                    r.line(l.clone());
                }
                r.line(format!("{} modules", list.len()));
                r.line(format!(
                    "admissible: {}; partial triangulation bound: {}",
                    yes(c.admissible),
                    c.partial
                        .map(|p| p.to_string())
                        .unwrap_or_else(|| "none".into())
                ));
                r.check("admissible", c.admissible);
                r.check(
                    "partial triangulation",
                    c.partial.is_some_and(|p| p <= n + 2),
                );
                if let (Some(rg), Some(mx)) = (c.rigid, c.maximal) {
                    r.line(format!("rigid: {}; maximal: {}", yes(rg), yes(mx)));
                    r.check("rigid", rg);
                    r.check("maximal", mx);
                    r.set("rigid", rg);
                    r.set("maximal", mx);
                }
                r.set("infinite", false);
                r.set("modules", &list);
                r.set("count", list.len());
                r.set("admissible", c.admissible);
                r.set("partial", c.partial);
                if let Some(path) = out {
                    write_out(path, &write_arc_system(&alg, &c.modules))?;
                }
            }
            r
        }
        Cmd::Rigid { file, system } => {
            let (alg, mut r) = load(file, "rigid")?;
            let words = load_system(&alg, system)?;
            let s = SurfaceModel::build(&alg)?;
            let g = is_rigid_geometric(&s, &words)?;
            let o = is_rigid_oracle(&s, &words)?;
            r.check("engines agree", g == o);
            r.line(format!(
                "rigid: {} (geometric {}, oracle {})",
                yes(g && o),
                yes(g),
                yes(o)
            ));
            r.set("geometric", g);
            r.set("oracle", o);
            r
        }
        Cmd::Faces { file, system } => {
            let (alg, mut r) = load(file, "faces")?;
            let words = load_system(&alg, system)?;
            let s = SurfaceModel::build(&alg)?;
            let sys = ArcSystem::from_strings(&s, &words)?;
            let fd = face_decomposition(&s, &sys)?;
            let t = s.topology();
            let mut faces = Vec::new();
            for (i, f) in fd.faces.iter().enumerate() {
                r.line(format!(
                    "face {i}: {} edges={} bullets={} disk={} internal={}{}",
                    f.kind.tag(),
                    f.edges,
                    f.bullets,
                    yes(f.disk),
                    yes(f.internal),
                    if f.walk.is_empty() {
                        String::new()
                    } else {
                        format!(" walk: {}", f.walk.join(" "))
                    }
                ));
                faces.push(json!({
                    "kind": f.kind.tag(), "edges": f.edges, "bullets": f.bullets,
                    "disk": f.disk, "internal": f.internal, "walk": f.walk,
                }));
            }
            let c = &fd.counts;
            r.line(format!(
                "F1={} F2={} F3={} F4={} F5={} triangles={} big={}",
                c.f1, c.f2, c.f3, c.f4, c.f5, c.triangles, c.big
            ));
            r.line(format!(
                "e1={} e2={} v={} euler={}",
                fd.e1, fd.e2, fd.v, fd.euler
            ));
            let partial = classify_partial_triangulation(&fd);
            r.line(match &partial {
                Ok(k) => format!("partial triangulation with faces of at most {k} edges"),
                Err(e) => format!("not a partial triangulation: {e}"),
            });
            r.line(format!("admissible: {}", yes(is_admissible(&s, &sys))));
            r.check(
                "Euler characteristic",
                fd.euler == 2 - 2 * t.g as i64 - t.b as i64,
            );
            r.set("faces", faces);
            r.set("counts", c);
            r.set("e1", fd.e1);
            r.set("e2", fd.e2);
            r.set("v", fd.v);
            r.set("euler", fd.euler);
            r.set("partial", partial.ok());
            r.set("admissible", is_admissible(&s, &sys));
            r
        }
        Cmd::Complete {
            file,
            system,
            size,
            out,
        } => {
            let (alg, mut r) = load(file, "complete")?;
            let s = SurfaceModel::build(&alg)?;
            let start = match system {
                Some(p) => ArcSystem::from_strings(&s, &load_system(&alg, p)?)?,
                None => random_admissible(&s, cli.max_string_len.min(4), cli.seed, *size),
            };
            let opts = CompletionOptions {
                max_string_len: cli.max_string_len,
                ..CompletionOptions::default()
            };
            let done = complete_to_max(&s, &start, &opts)?;
            let rank = max_rigid_rank_report(&s, &done)?;
            let list = names(&alg, &done.strings());
            for l in &list {
                r.line(l.clone());
            }
            r.line(format!(
                "e1={} n={} f4={} f5={} n+f4+f5={}",
                rank.e1, rank.n, rank.f4, rank.f5, rank.formula
            ));
            r.check("rank formula", rank.agrees);
            r.set("start", names(&alg, &start.strings()));
            r.set("system", &list);
            r.set("rank", &rank);
            if let Some(path) = out {
                write_out(path, &write_arc_system(&alg, &done.strings()))?;
            }
            r
        }
        Cmd::Rank { file, system } => {
            let (alg, mut r) = load(file, "rank")?;
            let s = SurfaceModel::build(&alg)?;
            let sys = ArcSystem::from_strings(&s, &load_system(&alg, system)?)?;
            let rank = max_rigid_rank_report(&s, &sys)?;
            r.line(format!(
                "e1={} n={} f4={} f5={} n+f4+f5={} agrees: {}",
                rank.e1,
                rank.n,
                rank.f4,
                rank.f5,
                rank.formula,
                yes(rank.agrees)
            ));
            r.set("rank", &rank);
            r
        }
        Cmd::Classify { file } => {
            let (alg, mut r) = load(file, "classify")?;
            let c = classify(&alg, depth)?;
            let Some(n) = c.gldim else {
                return Err(HigherError::InfiniteGldim.into());
            };
            r.line(c.summary());
            if let Some(w) = &c.cycle {
                r.line(format!("tau{n}-cycle: {w}"));
            } else if let Some(l) = c.max_tau_length {
                r.line(format!("longest tau{n}-sequence: length {l}"));
            }
            if let Some(d) = &c.tau_dimension {
                if let (Some(a), Some(b)) = (d.max_nonvanishing, d.vanishing) {
                    r.line(format!(
                        "tau{n}-dimension: last nonzero power {a}, first zero power {b}"
                    ));
                }
            }
            for (walk, (src, deg)) in &c.walks {
                r.line(format!("walk {walk}: source {src} degree {deg}"));
            }
            if let Some(a) = c.absolute {
                r.line(format!("absolutely complete: {}", yes(a)));
            }
            r.set("classification", &c);
            r
        }
        Cmd::Cone { file, out } => {
            let (alg, mut r) = load(file, "cone")?;
            let n = global_dimension(&alg, depth)?.ok_or(HigherError::InfiniteGldim)?;
            let c = cone(&alg, n)?;
            let cn = global_dimension(&c, depth)?;
            r.check("cone has global dimension n+1", cn == Some(n + 1));
            r.check("cone is (n+1)-complete", n_complete(&c, n + 1).complete);
            let text = c.to_text();
            r.set("n", n);
            r.set("algebra", &text);
            match out {
                Some(path) => {
                    write_out(path, &text)?;
                    r.line(format!("wrote {}", path.display()));
                }
                None => document = Some(text),
            }
            r
        }
        Cmd::Export {
            file,
            what,
            format,
            system,
        } => {
            let (alg, mut r) = load(file, "export")?;
            let doc = match (what, format.as_str()) {
                (What::Quiver, "dot") => quiver_dot(&alg),
                (What::Quiver, "json") => serde_json::to_string_pretty(&quiver_json(&alg))? + "\n",
                (What::Surface, "json") => {
                    let s = SurfaceModel::build(&alg)?;
                    serde_json::to_string_pretty(&s.summary())? + "\n"
                }
                (What::System, f @ ("json" | "arcs")) => {
                    let Some(p) = system else {
                        bail!("--what system needs --system FILE");
                    };
                    let words = load_system(&alg, p)?;
                    if f == "arcs" {
                        write_arc_system(&alg, &words)
                    } else {
                        let s = SurfaceModel::build(&alg)?;
                        let arcs = words
                            .iter()
                            .map(|w| Ok(Arc::from_string(&s, w)?.to_json(&s)))
                            .collect::<Result<Vec<_>, ArcError>>()?;
                        serde_json::to_string_pretty(&arcs)? + "\n"
                    }
                }
                (_, f) => return Err(IoError::UnknownFormat(f.to_string()).into()),
            };
            r.set("document", &doc);
            document = Some(doc);
            r
        }
    };
    Ok(Output { report, document })
}

/// Exit status for an error: 1 for usage and parsing, 2 for algebras that
/// are not gentle, 3 for violated preconditions, 4 for internal failures.
fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<IoError>() {
        return match e {
            IoError::Algebra(AlgebraError::NotGentle(_)) => 2,
            IoError::Band(_) => 3,
            _ => 1,
        };
    }
    if let Some(e) = err.downcast_ref::<AlgebraError>() {
        return if matches!(e, AlgebraError::NotGentle(_)) {
            2
        } else {
            1
        };
    }
    if err.downcast_ref::<StringError>().is_some() {
        return 1;
    }
    if let Some(e) = err.downcast_ref::<SurfaceError>() {
        return if matches!(e, SurfaceError::Inconsistent(_)) {
            4
        } else {
            1
        };
    }
    if let Some(HigherError::Surface(SurfaceError::Inconsistent(_))) =
        err.downcast_ref::<HigherError>()
    {
        return 4;
    }
    if err.downcast_ref::<HigherError>().is_some()
        || err.downcast_ref::<RigidityError>().is_some()
        || err.downcast_ref::<ArcError>().is_some()
        || err.downcast_ref::<OracleError>().is_some()
    {
        return 3;
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok(out)) => {
            let mut stdout = std::io::stdout().lock();
            match (&out.document, cli.json) {
                (Some(doc), false) => {
                    let _ = stdout.write_all(doc.as_bytes());
                }
                _ => {
                    let _ = stdout.write_all(out.report.render(cli.json).as_bytes());
                }
            }
            if out.report.failed().is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
        Err(_) => {
            eprintln!("error: internal assertion failed");
            ExitCode::from(4)
        }
    }
}
