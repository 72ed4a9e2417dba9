use clap::{Args, Parser, Subcommand};
use defectlab_core::bounds::{
    comparison_table, error_coefficients, BoundParams, BoundReport, ErrorCoefficientTheorem,
};
use defectlab_core::geometry::{tau, Convention, FamilyReport};
use defectlab_core::heights::{
    check_theorem_1_5, sample_conic_like_points, sample_projective_points, IntegerForm, Place,
    RationalPoint, SchmidtMode,
};
use defectlab_core::nevanlinna::radial::AnalyzerSettings;
use defectlab_core::nevanlinna::smt::{verify_smt_general, verify_smt_hypersurfaces, SmtMode};
use defectlab_core::nevanlinna::{verify_fmt, CurveAnalyzer};
use defectlab_core::scene::{load_scene, parse_grid, parse_rational, LoadedScene};
use defectlab_core::surd::QuadExt;
use defectlab_core::weights::{
    chow_weight_estimate, embed_family, hilbert_weight, verify_chow_lower_bound,
    verify_ef_inequality, WeightVector,
};
use defectlab_core::{Integer, Rational};
use rand::SeedableRng;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Verification workbench: distributive constants, truncation levels,
/// Nevanlinna functions, and Schmidt-type height inequalities.
#[derive(Parser)]
#[command(name = "defectlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Directory for report files (JSON/CSV); stdout carries the summary.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorics of a scene: position level, Bézout properties,
    /// distributive constant, and both subfamily selections.
    Analyze {
        #[arg(long)]
        scene: PathBuf,
        /// Subgeneral-position level to analyse (default: detected level).
        #[arg(long, value_name = "N")]
        n: Option<u32>,
        /// skip-empty (default) or literal.
        #[arg(long)]
        convention: Option<String>,
        #[arg(long)]
        budget_degree: Option<u32>,
        /// Cap on the family size for exhaustive subset enumeration.
        #[arg(long)]
        budget_subsets: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Explicit constants: u, L, M0, defect bounds, error coefficients,
    /// and the cross-theorem comparison table.
    Bounds {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        v: u64,
        /// Exact rational tau (e.g. 2 or 3/2); mutually exclusive with --auto-tau.
        #[arg(long)]
        tau: Option<String>,
        /// Derive tau from N and k via the branched formula.
        #[arg(long)]
        auto_tau: bool,
        #[arg(long, value_name = "N")]
        n: Option<u32>,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        q: Option<u64>,
        /// Growth index of the disc curve.
        #[arg(long)]
        cf: Option<String>,
        /// Second epsilon of the disc variant.
        #[arg(long)]
        eps2: Option<String>,
        /// Kähler curvature comparison constant.
        #[arg(long)]
        rho: Option<String>,
        /// Restrict the printed defect/coefficient lines to one theorem:
        /// D | F | 1.1new | HL | 1.3new | 1.4new | G.
        #[arg(long)]
        theorem: Option<String>,
        /// Emit the comparison table over 1 <= k <= KMAX, k < N <= NMAX,
        /// as "KMAX:NMAX".
        #[arg(long)]
        table: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hilbert weights, Chow-weight estimates and margin reports on the
    /// image of the scene's variety under its family.
    Hilbert {
        #[arg(long)]
        scene: PathBuf,
        /// Degrees to sample, e.g. "3,4,5".
        #[arg(long)]
        u: String,
        /// Weight vector entries, e.g. "1,0,2".
        #[arg(long)]
        c: String,
        /// Optional coordinate tuple (1-based) for the lower-bound check.
        #[arg(long)]
        tuple: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Curve diagnostics: characteristic series, first-main-theorem
    /// residuals, and second-main-theorem slack reports.
    Curve {
        #[arg(long)]
        scene: PathBuf,
        /// fmt | smt-general | 1.1-annulus | 1.2-plane | 1.1new | 1.2new
        #[arg(long, default_value = "fmt")]
        mode: String,
        /// Radius grid "a:b:steps[,log]" (default from scene options).
        #[arg(long)]
        grid: Option<String>,
        /// Family member (1-based) for fmt mode; default 1.
        #[arg(long)]
        q_index: Option<usize>,
        #[arg(long, value_name = "N")]
        n: Option<u32>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pointwise Schmidt-type inequality over sampled or listed points.
    Points {
        #[arg(long)]
        scene: PathBuf,
        /// Places, e.g. "inf,2,3".
        #[arg(long, value_name = "PLACES")]
        s: String,
        #[arg(long)]
        eps: Option<String>,
        /// a (weak Bézout) or b (Bézout).
        #[arg(long, default_value = "a")]
        mode: String,
        #[arg(long)]
        height_bound: Option<i64>,
        #[arg(long)]
        sample: Option<usize>,
        /// File with one point per line, comma-separated integers.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Subgeneral-position level (default: detected).
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Uniform error wrapper carrying a machine-readable code.
struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        let text = e.to_string();
        let code = if text.contains("resource") || text.contains("budget") {
            "RESOURCE"
        } else if text.contains("schema") || text.contains("json") {
            "SCHEMA"
        } else if text.contains("degenera") {
            "DEGENERATE"
        } else if text.contains("quadrature") {
            "QUADRATURE"
        } else if text.contains("position") || text.contains("precondition") {
            "PRECONDITION"
        } else {
            "INPUT"
        };
        CliError::new(code, text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(flagged) => {
            if flagged {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error[{}] {}", e.code, e.message);
            ExitCode::from(1)
        }
    }
}

fn read_scene(path: &Path) -> Result<LoadedScene, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new("SCHEMA", format!("cannot read scene {path:?}: {e}")))?;
    load_scene(&text).map_err(|e| CliError::new("SCHEMA", format!("{e} (scene: {path:?})")))
}

fn write_report(
    dir: &Path,
    name: &str,
    json: &serde_json::Value,
    extra_files: &[(String, String)],
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::new("INPUT", format!("cannot create {dir:?}: {e}")))?;
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(json).unwrap())
        .map_err(|e| CliError::new("INPUT", format!("cannot write {path:?}: {e}")))?;
    for (file, content) in extra_files {
        let path = dir.join(file);
        std::fs::write(&path, content)
            .map_err(|e| CliError::new("INPUT", format!("cannot write {path:?}: {e}")))?;
    }
    // timestamps live in a separate metadata file so reports stay diffable
    let meta = serde_json::json!({
        "tool": "defectlab",
        "version": env!("CARGO_PKG_VERSION"),
        "written_unix_ms": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0),
    });
    let meta_path = dir.join(format!("{name}.meta.json"));
    std::fs::write(&meta_path, serde_json::to_string_pretty(&meta).unwrap())
        .map_err(|e| CliError::new("INPUT", format!("cannot write {meta_path:?}: {e}")))?;
    Ok(())
}

fn parse_rat_arg(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::new("INPUT", format!("bad {what} `{s}`")))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Analyze {
            scene,
            n,
            convention,
            budget_degree,
            budget_subsets,
            output,
        } => cmd_analyze(
            &scene,
            n,
            convention.as_deref(),
            budget_degree,
            budget_subsets,
            &output,
        ),
        Command::Bounds {
            d,
            k,
            v,
            tau,
            auto_tau,
            n,
            eps,
            q,
            cf,
            eps2,
            rho,
            theorem,
            table,
            output,
        } => cmd_bounds(
            d, k, v, tau, auto_tau, n, &eps, q, cf, eps2, rho, theorem, table, &output,
        ),
        Command::Hilbert {
            scene,
            u,
            c,
            tuple,
            output,
        } => cmd_hilbert(&scene, &u, &c, tuple.as_deref(), &output),
        Command::Curve {
            scene,
            mode,
            grid,
            q_index,
            n,
            eps,
            tolerance,
            output,
        } => cmd_curve(
            &scene,
            &mode,
            grid.as_deref(),
            q_index,
            n,
            eps.as_deref(),
            tolerance,
            &output,
        ),
        Command::Points {
            scene,
            s,
            eps,
            mode,
            height_bound,
            sample,
            points,
            ell,
            seed,
            output,
        } => cmd_points(
            &scene,
            &s,
            eps.as_deref(),
            &mode,
            height_bound,
            sample,
            points.as_deref(),
            ell,
            seed,
            &output,
        ),
    }
}

fn cmd_analyze(
    scene_path: &Path,
    n: Option<u32>,
    convention: Option<&str>,
    budget_degree: Option<u32>,
    budget_subsets: Option<usize>,
    output: &OutputArgs,
) -> Result<bool, CliError> {
    let mut scene = read_scene(scene_path)?;
    if let Some(d) = budget_degree {
        scene.budget.max_degree = d;
    }
    let convention = match convention {
        None => scene.convention,
        Some("skip-empty") => Convention::SkipEmpty,
        Some("literal") => Convention::Literal,
        Some(other) => return Err(CliError::new("INPUT", format!("bad convention `{other}`"))),
    };
    let mut ctx = scene.family_context()?;
    if let Some(q) = budget_subsets.or(scene.raw.options.budget_subsets) {
        ctx = ctx.with_subset_budget(q);
    }
    let n_eff = n.or(scene.raw.n_subgeneral);
    let report = FamilyReport::build(&ctx, n_eff, convention)?;
    print!("{}", report.to_text());
    let json = serde_json::to_value(&report).unwrap();
    write_report(&output.out_dir, "analyze", &json, &[])?;
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    d: u32,
    k: u32,
    v: u64,
    tau_arg: Option<String>,
    auto_tau: bool,
    n: Option<u32>,
    eps: &str,
    q: Option<u64>,
    cf: Option<String>,
    eps2: Option<String>,
    rho: Option<String>,
    theorem: Option<String>,
    table: Option<String>,
    output: &OutputArgs,
) -> Result<bool, CliError> {
    let eps = parse_rat_arg(eps, "eps")?;
    if let Some(t) = &theorem {
        const KNOWN: &[&str] = &["D", "F", "1.1new", "HL", "1.3new", "1.4new", "G"];
        if !KNOWN.contains(&t.as_str()) {
            return Err(CliError::new(
                "INPUT",
                format!("unknown theorem `{t}` (D|F|1.1new|HL|1.3new|1.4new|G)"),
            ));
        }
    }
    let tau_value: QuadExt = match (tau_arg, auto_tau) {
        (Some(_), true) => {
            return Err(CliError::new("INPUT", "--tau and --auto-tau are exclusive"))
        }
        (Some(t), false) => QuadExt::from_rational(parse_rat_arg(&t, "tau")?),
        (None, _) => {
            let n = n.ok_or_else(|| {
                CliError::new("INPUT", "give --tau explicitly or --auto-tau with --n")
            })?;
            tau(n, k)?
        }
    };
    let mut params = BoundParams::new(d, k, v, tau_value, eps.clone())?;
    params.n = n;
    params.q = q;
    params.cf = cf.map(|s| parse_rat_arg(&s, "cf")).transpose()?;
    params.eps2 = eps2.map(|s| parse_rat_arg(&s, "eps2")).transpose()?;
    params.rho = rho.map(|s| parse_rat_arg(&s, "rho")).transpose()?;

    let report = BoundReport::build(&params)?;
    println!(
        "bounds: d={d} k={k} v={v} tau={} eps={}",
        report.tau, report.eps
    );
    println!("  u = {}", report.u);
    println!("  L = {}", report.l);
    if let Some(m0) = &report.m0 {
        println!("  M0 = {m0}");
    }
    if let (Some(bd), Some(bf), Some(b11), Some(bhl)) = (
        report.defect_d,
        report.defect_f,
        report.defect_11new,
        report.defect_heier_levin,
    ) {
        match theorem.as_deref() {
            Some("D") => println!("  defect D = {bd}"),
            Some("F") => println!("  defect F = {bf}"),
            Some("1.1new") => println!("  defect 1.1new = {b11}"),
            Some("HL") => println!("  defect HL = {bhl}"),
            Some(_) => {}
            None => println!("  defects: D={bd} F={bf} 1.1new={b11} HL={bhl}"),
        }
    }
    if let Some(c) = &report.error_coefficient_disc {
        println!("  disc error coefficient = {c}");
    }
    if let Some(c) = &report.error_coefficient_kaehler {
        println!("  Kähler additive term = {c}");
    }
    let mut extra = Vec::new();
    if let Some(spec) = table {
        let (kmax, nmax) = spec
            .split_once(':')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| CliError::new("INPUT", format!("bad --table `{spec}` (KMAX:NMAX)")))?;
        let rows = comparison_table(kmax, nmax, d, v, &eps, q)?;
        let mut csv = String::from("k,N,bound_D,bound_F,bound_1.1,bound_HL,L,u,M0\n");
        for r in &rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{}",
                r.k,
                r.n,
                r.bound_d,
                r.bound_f,
                r.bound_11,
                r.bound_hl,
                r.l,
                r.u,
                r.m0.clone().unwrap_or_default()
            );
        }
        println!("  comparison table: {} rows -> comparison.csv", rows.len());
        extra.push(("comparison.csv".to_string(), csv));
    }
    // surface parameter problems in the optional blocks eagerly
    if params.cf.is_some() && params.eps2.is_some() {
        error_coefficients(ErrorCoefficientTheorem::Disc13, &params)?;
    }
    let json = serde_json::to_value(&report).unwrap();
    write_report(&output.out_dir, "bounds", &json, &extra)?;
    Ok(false)
}

fn parse_u32_list(s: &str, what: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::new("INPUT", format!("bad {what} entry `{p}`")))
        })
        .collect()
}

fn cmd_hilbert(
    scene_path: &Path,
    u_list: &str,
    c_list: &str,
    tuple: Option<&str>,
    output: &OutputArgs,
) -> Result<bool, CliError> {
    let scene = read_scene(scene_path)?;
    let family = scene
        .family
        .clone()
        .ok_or_else(|| CliError::new("SCHEMA", "hilbert needs a family block in the scene"))?;
    let budget = scene.budget.clone();
    let image = embed_family(&scene.variety, &family, &budget)?;
    let us = parse_u32_list(u_list, "u")?;
    let c_entries: Vec<Rational> = c_list
        .split(',')
        .map(|p| parse_rat_arg(p.trim(), "weight entry"))
        .collect::<Result<_, _>>()?;
    let c = WeightVector::new(c_entries).map_err(|e| CliError::new("INPUT", e.to_string()))?;
    if c.len() != family.len() {
        return Err(CliError::new(
            "INPUT",
            format!(
                "weight vector has {} entries, family has {}",
                c.len(),
                family.len()
            ),
        ));
    }

    println!(
        "embedded image: dim {} degree {} (bound {})",
        image.dim(),
        image.degree(),
        image.degree_bound()
    );
    let qb = defectlab_core::algebra::QuotientBasis::from_ideal(image.ideal(), &budget)?;
    let mut weights_out = Vec::new();
    for &u in &us {
        let s = hilbert_weight(image.ideal(), u, &c, &budget)?;
        let h = qb.hilbert(u, &budget)?;
        println!("  u = {u}: H = {h}, S(u, c) = {s}");
        weights_out.push(serde_json::json!({ "u": u, "h": h, "s": s.to_string() }));
    }
    let estimate = chow_weight_estimate(image.ideal(), &c, &us, &budget).ok();
    if let Some(est) = &estimate {
        println!("  chow estimate: {} (exact: {})", est.estimate, est.exact);
    }
    let mut margins = Vec::new();
    for &u in &us {
        match verify_ef_inequality(image.ideal(), u, &c, &budget) {
            Ok(m) => {
                println!(
                    "  margin(u={u}) = {} (e exact: {}, pass: {:?})",
                    m.margin, m.e_exact, m.pass
                );
                margins.push(serde_json::to_value(&m).unwrap());
            }
            Err(e) => println!("  margin(u={u}): skipped ({e})"),
        }
    }
    let lower = match tuple {
        None => None,
        Some(t) => {
            let idx: Vec<usize> = parse_u32_list(t, "tuple")?
                .into_iter()
                .map(|i| i as usize - 1)
                .collect();
            let rep = verify_chow_lower_bound(&image, &c, &idx, &budget)?;
            println!(
                "  chow lower bound margin = {} (exact: {}, pass: {:?})",
                rep.margin, rep.e_exact, rep.pass
            );
            Some(serde_json::to_value(&rep).unwrap())
        }
    };
    let json = serde_json::json!({
        "image": {
            "dim": image.dim(),
            "degree": image.degree().to_string(),
            "degree_bound": image.degree_bound().to_string(),
            "common_degree": image.common_degree(),
            "generators": image.ideal().generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        },
        "weights": weights_out,
        "chow_estimate": estimate.map(|e| serde_json::to_value(&e).unwrap()),
        "ef_margins": margins,
        "chow_lower_bound": lower,
    });
    write_report(&output.out_dir, "hilbert", &json, &[])?;
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn cmd_curve(
    scene_path: &Path,
    mode: &str,
    grid_arg: Option<&str>,
    q_index: Option<usize>,
    n: Option<u32>,
    eps: Option<&str>,
    tolerance: Option<f64>,
    output: &OutputArgs,
) -> Result<bool, CliError> {
    let scene = read_scene(scene_path)?;
    let curve = scene
        .curve
        .clone()
        .ok_or_else(|| CliError::new("SCHEMA", "curve command needs a curve block"))?;
    let mut settings = AnalyzerSettings::default();
    if let Some(t) = tolerance.or(scene.raw.options.tolerance) {
        settings.tolerance = t;
    }
    let analyzer = CurveAnalyzer::with_settings(curve, settings);
    let grid_spec = grid_arg
        .map(str::to_string)
        .or_else(|| scene.raw.options.grid.clone())
        .ok_or_else(|| CliError::new("INPUT", "no grid given (flag --grid or scene options)"))?;
    let grid = parse_grid(&grid_spec)?;
    let eps_val = match eps {
        Some(s) => parse_rat_arg(s, "eps")?,
        None => scene.eps.clone(),
    };

    match mode {
        "fmt" => {
            let family = scene
                .family
                .clone()
                .ok_or_else(|| CliError::new("SCHEMA", "fmt mode needs a family block"))?;
            let idx = q_index.unwrap_or(1);
            let form = family
                .forms()
                .get(idx - 1)
                .ok_or_else(|| CliError::new("INPUT", format!("q_index {idx} out of range")))?;
            let report = verify_fmt(&analyzer, form, &grid)?;
            let mut csv = String::from("r,T,m,N,residual,quad_tol\n");
            for row in &report.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    row.r, row.t, row.m, row.n, row.residual, row.quad_tol
                );
            }
            println!(
                "fmt: {} rows, residual range {:.3e}, max |residual| {:.3e}, pass {}",
                report.rows.len(),
                report.residual_range,
                report.max_abs_residual,
                report.pass
            );
            let json = serde_json::to_value(&report).unwrap();
            write_report(
                &output.out_dir,
                "curve_fmt",
                &json,
                &[("curve_fmt.csv".into(), csv)],
            )?;
            Ok(!report.pass)
        }
        "smt-general" => {
            let family = scene
                .family
                .clone()
                .ok_or_else(|| CliError::new("SCHEMA", "smt-general needs a family block"))?;
            let report = verify_smt_general(&analyzer, family.forms(), &grid)?;
            let mut csv = String::from("r,lhs,rhs_core,gap,flagged,achieved_tol\n");
            for row in &report.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    row.r, row.lhs, row.rhs_core, row.gap, row.flagged, row.achieved_tol
                );
            }
            println!(
                "smt-general: {} rows, flagged: {}",
                report.rows.len(),
                report.any_flagged
            );
            let json = serde_json::to_value(&report).unwrap();
            write_report(
                &output.out_dir,
                "curve_smt_general",
                &json,
                &[("curve_smt_general.csv".into(), csv)],
            )?;
            Ok(report.any_flagged)
        }
        other => {
            let smt_mode = SmtMode::parse(other).ok_or_else(|| {
                CliError::new(
                    "INPUT",
                    format!(
                        "unknown mode `{other}` \
                         (fmt|smt-general|1.1-annulus|1.2-plane|1.1new|1.2new)"
                    ),
                )
            })?;
            let ctx = scene.family_context()?;
            let report = verify_smt_hypersurfaces(
                &ctx,
                &analyzer,
                &eps_val,
                &grid,
                smt_mode,
                n.or(scene.raw.n_subgeneral),
            )?;
            let q = ctx.q();
            let mut csv = String::from("r,T");
            for i in 1..=q {
                let _ = write!(csv, ",N_trunc_{i}");
            }
            csv.push_str(",sum,slack,pass\n");
            for row in &report.rows {
                let _ = write!(csv, "{},{}", row.r, row.t);
                for v in &row.per_form {
                    let _ = write!(csv, ",{v}");
                }
                let _ = writeln!(csv, ",{},{},{}", row.truncated_counting_sum, row.slack, row.pass);
            }
            if report.vacuous {
                println!(
                    "smt {}: vacuous (coefficient {} <= 0), nothing to check",
                    report.mode, report.coefficient
                );
            } else {
                println!(
                    "smt {}: coefficient {:.6}, L = {}, tail pass: {}, max winding residual {:.3}",
                    report.mode,
                    report.coefficient,
                    report.l_level,
                    report.tail_pass,
                    report.max_winding_residual
                );
            }
            let json = serde_json::to_value(&report).unwrap();
            write_report(
                &output.out_dir,
                "curve_smt",
                &json,
                &[("curve_smt.csv".into(), csv)],
            )?;
            Ok(!report.vacuous && !report.tail_pass)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_points(
    scene_path: &Path,
    places_arg: &str,
    eps: Option<&str>,
    mode: &str,
    height_bound: Option<i64>,
    sample: Option<usize>,
    points_file: Option<&Path>,
    ell: Option<u32>,
    seed: Option<u64>,
    output: &OutputArgs,
) -> Result<bool, CliError> {
    let scene = read_scene(scene_path)?;
    let ctx = scene.family_context()?;
    let eps_val = match eps {
        Some(s) => parse_rat_arg(s, "eps")?,
        None => scene.eps.clone(),
    };
    let mode = SchmidtMode::parse(mode)
        .ok_or_else(|| CliError::new("INPUT", format!("bad mode `{mode}` (a|b)")))?;
    let places: Vec<Place> = places_arg
        .split(',')
        .map(|p| Place::parse(p.trim()))
        .collect::<Result<_, _>>()?;

    let block = scene.raw.points.clone();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
        seed.or(block.as_ref().and_then(|b| b.seed)).unwrap_or(1),
    );
    let bound = height_bound
        .or(block.as_ref().and_then(|b| b.height_bound))
        .unwrap_or(1000);
    let count = sample
        .or(block.as_ref().and_then(|b| b.sample))
        .unwrap_or(1000);

    let mut points: Vec<RationalPoint> = Vec::new();
    if let Some(path) = points_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new("INPUT", format!("cannot read {path:?}: {e}")))?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let coords: Result<Vec<Integer>, _> = line
                .split(',')
                .map(|c| c.trim().parse::<Integer>())
                .collect();
            let coords =
                coords.map_err(|e| CliError::new("INPUT", format!("bad point `{line}`: {e}")))?;
            points.push(RationalPoint::new(coords)?);
        }
    } else if let Some(list) = block.as_ref().and_then(|b| b.list.clone()) {
        for raw in list {
            points.push(RationalPoint::new(
                raw.into_iter().map(Integer::from).collect(),
            )?);
        }
    } else if let Some(param) = block.as_ref().and_then(|b| b.parametrization.clone()) {
        let polys = param
            .iter()
            .map(|s| defectlab_core::algebra::parse_poly(s, 2))
            .collect::<Result<Vec<_>, _>>()?;
        let param_bound = ((bound as f64).sqrt() as i64).max(2);
        points =
            sample_conic_like_points(&polys, param_bound, &Integer::from(bound), count, &mut rng)?;
    } else {
        points = sample_projective_points(scene.variety.nvars(), bound, count, &mut rng);
    }

    let forms: Vec<IntegerForm> = ctx
        .family()
        .forms()
        .iter()
        .map(IntegerForm::new)
        .collect::<Result<_, _>>()?;
    let report = check_theorem_1_5(
        &ctx,
        &forms,
        &places,
        &points,
        &eps_val,
        mode,
        ell.or(scene.raw.n_subgeneral),
        false,
    )?;

    println!(
        "points: checked {}, skipped {} off-variety/on-divisor, flagged {} (re-verified: {})",
        report.points_checked,
        report.points_skipped_off_variety,
        report.flagged_count,
        report.reverified
    );
    let mut csv = String::from("point,height,lhs,rhs,excess\n");
    for row in &report.flagged {
        let _ = writeln!(
            csv,
            "\"{}\",{},{},{},{}",
            row.point, row.height, row.lhs, row.rhs, row.excess
        );
    }
    let json = serde_json::to_value(&report).unwrap();
    write_report(
        &output.out_dir,
        "points",
        &json,
        &[("points_flagged.csv".into(), csv)],
    )?;
    Ok(report.flagged_count > 0)
}
