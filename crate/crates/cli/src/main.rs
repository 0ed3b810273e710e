//! Command-line front end: validates systems, searches lattices, evaluates
//! transforms, enumerates spectra, runs orthogonality/maximality sweeps,
//! renders attractors and verifies the operator relations. Emits
//! deterministic JSON reports (schema `sfl/1`), CSV point clouds and binary
//! PGM rasters.

use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sfl::catalog;
use sfl::cuntz;
use sfl::hadamard;
use sfl::io as sio;
use sfl::ratio;
use sfl::ratlat::{self, RatVector};
use sfl::spectrum;
use sfl::system::{self, AffineSystem};
use sfl::transform::{self, MuHatEvaluator};

const SCHEMA: &str = "sfl/1";

#[derive(Parser)]
#[command(
    name = "sfl",
    about = "exact and numerical analysis of affine systems (matrix, digits, frequencies, lattice)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SysArg {
    /// System source: `catalog:<id>` or a path to a system JSON file.
    system: String,
}

#[derive(Args, Clone)]
struct OutArg {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pgm,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a system and report its structural predicates.
    Check {
        #[command(flatten)]
        sys: SysArg,
        /// Bound for the lattice search when the frequency set does not span.
        #[arg(long, default_value_t = 12)]
        index_bound: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Emit the dual system in the system JSON format.
    Dual {
        #[command(flatten)]
        sys: SysArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate lattices making the system selfadjoint.
    Lattices {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, default_value_t = 12)]
        index_bound: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Classify the phase table (orders up to 4).
    Classify {
        #[command(flatten)]
        sys: SysArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Evaluate the transform at points or over a grid.
    Muhat {
        #[command(flatten)]
        sys: SysArg,
        /// Evaluation point: coordinates as separate arguments or
        /// comma-separated (rationals like 1/3 or decimals). Greedy: place
        /// other flags before it.
        #[arg(
            long,
            num_args = 1..,
            value_name = "COORD",
            allow_hyphen_values = true,
            value_delimiter = ','
        )]
        at: Option<Vec<String>>,
        /// Grid spec `start:end:steps`, one per dimension joined by `;`.
        #[arg(long, value_name = "SPEC", conflicts_with = "at")]
        grid: Option<String>,
        /// Orbit stopping threshold.
        #[arg(long, default_value_t = transform::DEFAULT_EPS_STOP)]
        tol: f64,
        /// Maximum orbit depth.
        #[arg(long, default_value_t = transform::DEFAULT_MAX_DEPTH)]
        depth: usize,
        /// Mask-root threshold for the zero-set explanation (rational
        /// points only).
        #[arg(long, default_value_t = transform::DEFAULT_ZERO_TOL)]
        zero_tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate candidate spectra.
    Spectrum {
        #[command(flatten)]
        sys: SysArg,
        /// Enumerate the lattice-shift family (needs --bound).
        #[arg(long, conflicts_with = "call")]
        lambda: bool,
        /// Enumerate iterated digit sums (needs --degree).
        #[arg(long)]
        call: bool,
        /// Max-norm bound for the shift family (rational).
        #[arg(long, value_name = "Q")]
        bound: Option<String>,
        /// Degree for the digit sums.
        #[arg(long, value_name = "M")]
        degree: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Orthogonality sweeps: the shift family and the digit-sum Gram matrix.
    Ortho {
        #[command(flatten)]
        sys: SysArg,
        /// Digit-sum degree for the Gram check.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Dual-lattice window bound (rational).
        #[arg(long, default_value = "10")]
        window: String,
        /// Pass threshold for residuals.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Witness search for the maximality condition on candidate frequencies.
    Maximality {
        #[command(flatten)]
        sys: SysArg,
        /// Integer grid spec `lo..hi`, one range per dimension joined by `;`.
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        candidates: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = spectrum::DEFAULT_WITNESS_TOL)]
        witness_tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Generate attractor point clouds, optionally rendered to PGM.
    Attractor {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Raster size `WIDTHxHEIGHT`; implies PGM output.
        #[arg(long, value_name = "WxH")]
        render: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutArg,
    },
    /// Verify the operator relations on a dual-lattice window.
    Cuntz {
        #[command(flatten)]
        sys: SysArg,
        /// Dual-lattice window bound (rational).
        #[arg(long, default_value = "10")]
        window: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Built-in example systems.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the available ids.
    List,
    /// Show an entry with its known facts.
    Show { id: String },
    /// Emit an entry in the system JSON format.
    Export {
        id: String,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn load_system(spec: &str) -> anyhow::Result<AffineSystem> {
    if let Some(id) = spec.strip_prefix("catalog:") {
        return Ok(catalog::get(id)?.system);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    Ok(sio::system_from_json(&text)?)
}

fn emit(out: &OutArg, content: &str) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {path:?}"))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let tail = if content.ends_with('\n') { "" } else { "\n" };
            if let Err(e) = write!(stdout, "{content}{tail}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn emit_bytes(out: &OutArg, content: &[u8]) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {path:?}"))?
        }
        None => {
            if let Err(e) = std::io::stdout().write_all(content) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn point_budget() -> usize {
    std::env::var("SFL_MAX_POINTS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(transform::DEFAULT_POINT_BUDGET)
}

fn parse_coord(s: &str) -> anyhow::Result<f64> {
    if let Ok(q) = ratio::parse_rational(s) {
        return Ok(ratio::to_f64(&q));
    }
    s.parse::<f64>()
        .map_err(|_| anyhow!("bad coordinate {s:?}: expected p/q or a decimal"))
}

fn parse_rationals(coords: &[String]) -> Option<RatVector> {
    let mut entries = Vec::new();
    for part in coords {
        entries.push(ratio::parse_rational(part).ok()?);
    }
    Some(RatVector::new(entries))
}

fn class_json(class: &hadamard::HadamardClass) -> serde_json::Value {
    let mut v = serde_json::to_value(class).expect("class serialization cannot fail");
    v["label"] = json!(class.label());
    v
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Check {
            sys,
            index_bound,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let expans = system::expansivity(s.matrix())?;
            let table = s.phase_table()?;
            let is_hadamard = hadamard::is_generalized_hadamard(&table);
            let class = if table.order() <= 4 && is_hadamard {
                Some(hadamard::classify_small(&table)?)
            } else {
                None
            };
            let (symmetric, selfadjoint, diagnosis, injective, totality) = match s.lattice() {
                Some(_) => {
                    let rep = s.selfadjointness()?;
                    (
                        Some(s.is_symmetric()?),
                        Some(rep.selfadjoint()),
                        Some(rep),
                        Some(s.coset_injective()?),
                        Some(spectrum::totality_diagnostics(&s)?),
                    )
                }
                None => (None, None, None, None, None),
            };
            let search =
                system::selfadjoint_lattices(s.matrix(), s.b_set(), s.l_set(), index_bound);
            let lattice_count = search.as_ref().map(|r| r.lattices.len()).ok();
            let report = json!({
                "schema": SCHEMA,
                "command": "check",
                "source": sys.system,
                "n": s.dim(),
                "order": s.b_set().len(),
                "expansive": expans.expansive,
                "expansivity_margin": expans.margin,
                "hadamard": is_hadamard,
                "class": class.as_ref().map(class_json),
                "has_lattice": s.lattice().is_some(),
                "symmetric": symmetric,
                "selfadjoint": selfadjoint,
                "selfadjoint_diagnosis": diagnosis,
                "coset_injective": injective,
                "irreducible": s.is_irreducible(),
                "totality_diagnostics": totality,
                "admissible_lattice_count": lattice_count,
            });
            emit(&out, &pretty(&report))?;
            let pass = expans.expansive
                && is_hadamard
                && selfadjoint.unwrap_or(true)
                && injective.unwrap_or(true);
            Ok(if pass { 0 } else { 1 })
        }

        Command::Dual { sys, out } => {
            let s = load_system(&sys.system)?;
            let dual = s.dual()?;
            emit(&out, &sio::system_to_json(&dual))?;
            Ok(0)
        }

        Command::Lattices {
            sys,
            index_bound,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let search =
                system::selfadjoint_lattices(s.matrix(), s.b_set(), s.l_set(), index_bound);
            let report = match search {
                Ok(found) => {
                    let note = if found.lattices.is_empty() {
                        "no lattice makes this system selfadjoint"
                    } else if found.complete {
                        "search is exhaustive"
                    } else {
                        "bounded search; frequencies do not span, so larger lattices may exist"
                    };
                    json!({
                        "schema": SCHEMA,
                        "command": "lattices",
                        "source": sys.system,
                        "complete": found.complete,
                        "count": found.lattices.len(),
                        "lattices": found.lattices,
                        "note": note,
                    })
                }
                Err(sfl::Error::RankDeficient) => json!({
                    "schema": SCHEMA,
                    "command": "lattices",
                    "source": sys.system,
                    "complete": false,
                    "count": 0,
                    "lattices": [],
                    "note": "digit iterates do not span, so no full-rank minimal lattice anchors the search",
                }),
                Err(e) => return Err(e.into()),
            };
            emit(&out, &pretty(&report))?;
            Ok(0)
        }

        Command::Classify { sys, out } => {
            let s = load_system(&sys.system)?;
            let table = s.phase_table()?;
            let class = hadamard::classify_small(&table)?;
            let report = json!({
                "schema": SCHEMA,
                "command": "classify",
                "source": sys.system,
                "order": table.order(),
                "class": class_json(&class),
            });
            emit(&out, &pretty(&report))?;
            Ok(0)
        }

        Command::Muhat {
            sys,
            at,
            grid,
            tol,
            depth,
            zero_tol,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let eval = MuHatEvaluator::new(s.matrix(), s.b_set())?.with_params(tol, depth);
            let mut records = Vec::new();
            match (at, grid) {
                (Some(coords), None) => {
                    if coords.len() != s.dim() {
                        bail!("expected {} coordinates, got {}", s.dim(), coords.len());
                    }
                    let t: Vec<f64> = coords
                        .iter()
                        .map(|c| parse_coord(c))
                        .collect::<anyhow::Result<_>>()?;
                    // exact orbit when every coordinate is rational
                    let mut record = match parse_rationals(&coords) {
                        Some(q) => {
                            let mut r = sio::muhat_record(&t, &eval.eval_rational(&q));
                            r["zero_depth"] = json!(eval.explain_zero(&q, zero_tol));
                            r
                        }
                        None => sio::muhat_record(&t, &eval.eval(&t)),
                    };
                    record["source_coords"] = json!(coords);
                    records.push(record);
                }
                (None, Some(spec)) => {
                    let axes: Vec<(f64, f64, usize)> = spec
                        .split(';')
                        .map(parse_grid_axis)
                        .collect::<anyhow::Result<_>>()?;
                    if axes.len() != s.dim() {
                        bail!("grid has {} axes, system needs {}", axes.len(), s.dim());
                    }
                    let mut idx = vec![0usize; axes.len()];
                    loop {
                        let t: Vec<f64> = idx
                            .iter()
                            .zip(&axes)
                            .map(|(&i, &(lo, hi, steps))| {
                                if steps <= 1 {
                                    lo
                                } else {
                                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                                }
                            })
                            .collect();
                        records.push(sio::muhat_record(&t, &eval.eval(&t)));
                        let mut p = 0;
                        loop {
                            if p == idx.len() {
                                break;
                            }
                            idx[p] += 1;
                            if idx[p] < axes[p].2 {
                                break;
                            }
                            idx[p] = 0;
                            p += 1;
                        }
                        if idx.iter().all(|&i| i == 0) {
                            break;
                        }
                    }
                }
                _ => bail!("provide either --at or --grid"),
            }
            let report = json!({
                "schema": SCHEMA,
                "command": "muhat",
                "source": sys.system,
                "eps_stop": tol,
                "max_depth": depth,
                "tail_constant": eval.tail_constant(),
                "evaluations": records,
            });
            emit(&out, &pretty(&report))?;
            Ok(0)
        }

        Command::Spectrum {
            sys,
            lambda,
            call,
            bound,
            degree,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let report = match (lambda, call) {
                (true, false) => {
                    let k = s.require_lattice()?;
                    let bound = bound.ok_or_else(|| anyhow!("--lambda needs --bound"))?;
                    let bound = ratio::parse_rational(&bound)?;
                    let set = spectrum::lambda_set(s.l_set(), s.matrix(), &k.dual(), &bound);
                    json!({
                        "schema": SCHEMA,
                        "command": "spectrum",
                        "source": sys.system,
                        "provenance": set.provenance,
                        "bound": ratio::format_rational(&bound),
                        "count": set.len(),
                        "points": set.points,
                    })
                }
                (false, true) => {
                    let degree = degree.ok_or_else(|| anyhow!("--call needs --degree"))?;
                    let c = spectrum::cal_l(s.l_set(), s.matrix(), degree);
                    json!({
                        "schema": SCHEMA,
                        "command": "spectrum",
                        "source": sys.system,
                        "provenance": c.set.provenance,
                        "degree": degree,
                        "count": c.set.len(),
                        "digit_map_injective": c.injective,
                        "points": c.set.points,
                    })
                }
                _ => bail!("provide exactly one of --lambda or --call"),
            };
            emit(&out, &pretty(&report))?;
            Ok(0)
        }

        Command::Ortho {
            sys,
            degree,
            window,
            tol,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let eval = MuHatEvaluator::new(s.matrix(), s.b_set())?;
            let window = ratio::parse_rational(&window)?;
            let lambda_rep = spectrum::check_lambda_orthogonality(&s, &eval, &window)?;
            let cal = spectrum::cal_l(s.l_set(), s.matrix(), degree);
            let gram = spectrum::check_mutual_orthogonality(&cal.set.points, &eval);
            let pass = lambda_rep.max_residual <= tol && gram.max_offdiag <= tol;
            let report = json!({
                "schema": SCHEMA,
                "command": "ortho",
                "source": sys.system,
                "tol": tol,
                "lambda_orthogonality": lambda_rep,
                "digit_sum_degree": degree,
                "digit_map_injective": cal.injective,
                "gram": gram,
                "pass": pass,
            });
            emit(&out, &pretty(&report))?;
            Ok(if pass { 0 } else { 1 })
        }

        Command::Maximality {
            sys,
            candidates,
            degree,
            witness_tol,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let eval = MuHatEvaluator::new(s.matrix(), s.b_set())?;
            let cal = spectrum::cal_l(s.l_set(), s.matrix(), degree);
            let grid = parse_candidate_grid(&candidates, s.dim())?;
            let rep = spectrum::check_maximality(&eval, &cal, &grid, witness_tol);
            let report = json!({
                "schema": SCHEMA,
                "command": "maximality",
                "source": sys.system,
                "degree": degree,
                "witness_tol": witness_tol,
                "candidates": grid.len(),
                "witnessed": rep.witnesses.len(),
                "witnesses": rep.witnesses,
                "inconclusive": rep.inconclusive,
                "skipped": rep.skipped,
            });
            emit(&out, &pretty(&report))?;
            Ok(0)
        }

        Command::Attractor {
            sys,
            depth,
            render,
            format,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let cloud = transform::attractor_points(s.matrix(), s.b_set(), depth, point_budget())?;
            match (render, format) {
                (Some(size), _) => {
                    let (w, h) = parse_raster_size(&size)?;
                    let bbox = bounding_box(&cloud.points);
                    let raster = transform::render(&cloud, w, h, &bbox)?;
                    emit_bytes(&out, &transform::write_pgm(&raster))?;
                }
                (None, Format::Pgm) => bail!("--format pgm needs --render WxH"),
                (None, Format::Csv) => emit(&out, &sio::cloud_to_csv(&cloud))?,
                (None, Format::Json) => {
                    let report = json!({
                        "schema": SCHEMA,
                        "command": "attractor",
                        "source": sys.system,
                        "depth": depth,
                        "count": cloud.points.len(),
                        "weight": cloud.weight,
                        "points": cloud.points,
                    });
                    emit(&out, &pretty(&report))?;
                }
            }
            Ok(0)
        }

        Command::Cuntz {
            sys,
            window,
            tol,
            out,
        } => {
            let s = load_system(&sys.system)?;
            let eval = MuHatEvaluator::new(s.matrix(), s.b_set())?;
            let window = ratio::parse_rational(&window)?;
            let k_dual = s.require_lattice()?.dual();
            let freqs = ratlat::points_in_box(&k_dual, &window);
            let st = cuntz::verify_st_identity(&s, &freqs)?;
            let t_rel = cuntz::verify_t_relations(&s, &eval, &window)?;
            let pairs = cuntz::deterministic_pairs(s.dim(), 100, 8.0, 0x5f3759df);
            let s_comp = cuntz::verify_s_completeness(&s, &eval, &pairs);
            let composition = cuntz::verify_composition(&s, 5)?;
            let pass = st.pass && t_rel.pass(tol) && s_comp.max_residual <= tol && composition;
            let report = json!({
                "schema": SCHEMA,
                "command": "cuntz",
                "source": sys.system,
                "tol": tol,
                "st_identity": st,
                "t_relations": t_rel,
                "s_completeness": s_comp,
                "composition_exact_to_length_5": composition,
                "pass": pass,
            });
            emit(&out, &pretty(&report))?;
            Ok(if pass { 0 } else { 1 })
        }

        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let report = json!({
                    "schema": SCHEMA,
                    "command": "catalog",
                    "ids": catalog::list(),
                });
                emit(&OutArg { out: None }, &pretty(&report))?;
                Ok(0)
            }
            CatalogAction::Show { id } => {
                let entry = catalog::get(&id)?;
                let report = json!({
                    "schema": SCHEMA,
                    "command": "catalog",
                    "id": entry.id,
                    "n": entry.system.dim(),
                    "order": entry.expected.order,
                    "hadamard": entry.expected.hadamard,
                    "selfadjoint": entry.expected.selfadjoint,
                    "irreducible": entry.expected.irreducible,
                    "dimension_log_ratio": entry.expected.dimension_log_ratio,
                    "notes": entry.expected.notes,
                    "system": serde_json::from_str::<serde_json::Value>(
                        &sio::system_to_json(&entry.system)
                    ).expect("round trip"),
                });
                emit(&OutArg { out: None }, &pretty(&report))?;
                Ok(0)
            }
            CatalogAction::Export { id, out } => {
                let entry = catalog::get(&id)?;
                emit(&out, &sio::system_to_json(&entry.system))?;
                Ok(0)
            }
        },
    }
}

fn parse_grid_axis(s: &str) -> anyhow::Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        bail!("grid axis {s:?} must look like start:end:steps");
    };
    let lo = parse_coord(lo)?;
    let hi = parse_coord(hi)?;
    let steps: usize = steps
        .parse()
        .map_err(|_| anyhow!("bad step count in {s:?}"))?;
    if steps == 0 {
        bail!("grid axis {s:?} needs at least one step");
    }
    Ok((lo, hi, steps))
}

fn parse_candidate_grid(spec: &str, dim: usize) -> anyhow::Result<Vec<RatVector>> {
    let ranges: Vec<(i64, i64)> = spec
        .split(';')
        .map(|axis| -> anyhow::Result<(i64, i64)> {
            let (lo, hi) = axis
                .split_once("..")
                .ok_or_else(|| anyhow!("candidate axis {axis:?} must look like lo..hi"))?;
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad bound in {axis:?}"))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad bound in {axis:?}"))?;
            if hi < lo {
                bail!("empty range {axis:?}");
            }
            Ok((lo, hi))
        })
        .collect::<anyhow::Result<_>>()?;
    if ranges.len() != dim {
        bail!(
            "candidate grid has {} axes, system needs {dim}",
            ranges.len()
        );
    }
    let mut out = Vec::new();
    let mut current = ranges.iter().map(|&(lo, _)| lo).collect::<Vec<i64>>();
    loop {
        out.push(RatVector::new(
            current.iter().map(|&x| ratio::int(x)).collect(),
        ));
        let mut p = 0;
        loop {
            if p == current.len() {
                return Ok(out);
            }
            current[p] += 1;
            if current[p] <= ranges[p].1 {
                break;
            }
            current[p] = ranges[p].0;
            p += 1;
        }
    }
}

fn parse_raster_size(s: &str) -> anyhow::Result<(usize, usize)> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| anyhow!("raster size {s:?} must look like WIDTHxHEIGHT"))?;
    Ok((
        w.parse().map_err(|_| anyhow!("bad width in {s:?}"))?,
        h.parse().map_err(|_| anyhow!("bad height in {s:?}"))?,
    ))
}

/// Padded data bounds, used when no viewport is given.
fn bounding_box(points: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let dim = points.first().map_or(1, Vec::len).min(2);
    (0..dim)
        .map(|d| {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in points {
                lo = lo.min(p[d]);
                hi = hi.max(p[d]);
            }
            if !lo.is_finite() || hi <= lo {
                (0.0, 1.0)
            } else {
                let pad = (hi - lo) * 0.05;
                (lo - pad, hi + pad)
            }
        })
        .collect()
}
