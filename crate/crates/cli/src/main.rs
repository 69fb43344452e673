//! Batch command-line surface for the engine: JSON in, JSON/DOT/plain
//! text out. Every subcommand is a single process run; a nonzero exit
//! status means a verification failed or an input was rejected.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_traits::Zero;

use gl2_core::binform::{discriminant, BinaryForm};
use gl2_core::csp3::{self, EtaBuilder, NamedPde};
use gl2_core::leafcheck;
use gl2_core::linalg::QMatrix;
use gl2_core::rat::{rat_from_str, rat_to_string, rint, rq};
use gl2_core::reduction;
use gl2_core::roottype::{self, RootType};
use gl2_core::sampling;
use gl2_core::structeq;

#[derive(Parser)]
#[command(
    name = "gl2",
    about = "Exact verification and classification engine for integrable GL(2)-structures and Hessian hydrodynamic PDEs",
    version
)]
struct Cli {
    /// Config file with key=value lines; recognized keys: eps, seed
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a binary octic: root type, dimension, symmetry count,
    /// planar type, rank of J
    Classify {
        /// Path to a form JSON file
        form: PathBuf,
        /// Use the float classifier instead of the exact one
        #[arg(long)]
        float: bool,
        /// Tolerance for the float classifier
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Print J(v) with rank, determinant, and discriminant as JSON
    Jmat {
        form: PathBuf,
    },
    /// Run one of the verification suites
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Enumerate the 55 root types and export the degeneration diagram
    Strata {
        /// Write the Hasse diagram in DOT format to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Representative PDE operations
    Pde {
        #[command(subcommand)]
        what: PdeCmd,
    },
    /// Veronese-cone section of a hyperbolic symbol matrix
    Cone {
        /// Path to a symbol JSON file ({"matrix": 3x3 rationals})
        symbol: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// All 18 d^2 = 0 residuals of the structure equations
    Closure,
    /// The eight absorption constants of the equivalence method
    Absorption,
    /// Rank and tangent-space equality per root type
    Tangency {
        /// Check a single type, e.g. "{4,[2,2]}"
        #[arg(long = "type")]
        root_type: Option<String>,
        /// Check all 54 nontrivial types (the default when no type is given)
        #[arg(long)]
        all: bool,
    },
    /// det J proportional to the discriminant on seeded random octics
    Detdisc {
        /// Number of distinct-root samples
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// The integrated cone-orbit coframe against its structure equations
    X8,
}

#[derive(Subcommand)]
enum PdeCmd {
    /// Recover the representative relation from the chart family
    Reconstruct {
        /// "{0}" (wave) or "{8}" (first dKP flow)
        #[arg(long = "type")]
        root_type: String,
    },
    /// Hyperbolicity of a named representative equation
    Check {
        /// One of wave, dkp1, 71, 62, 611
        #[arg(long)]
        name: String,
    },
}

#[derive(Clone, Copy)]
struct Settings {
    eps: f64,
    seed: u64,
}

fn load_settings(config: Option<&Path>) -> Result<Settings> {
    let mut settings = Settings {
        eps: 1e-8,
        seed: sampling::DEFAULT_SEED,
    };
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line without '=': `{line}`"))?;
            match key.trim() {
                "eps" => settings.eps = value.trim().parse().context("parsing eps")?,
                "seed" => settings.seed = value.trim().parse().context("parsing seed")?,
                other => bail!("unknown config key `{other}`"),
            }
        }
    }
    if let Ok(seed) = std::env::var("GL2_SEED") {
        settings.seed = seed.parse().context("parsing GL2_SEED")?;
    }
    Ok(settings)
}

fn read_form(path: &Path) -> Result<BinaryForm> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).context("parsing JSON")?;
    Ok(BinaryForm::from_json(&value)?)
}

fn read_symbol(path: &Path) -> Result<QMatrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).context("parsing JSON")?;
    let rows = value["matrix"]
        .as_array()
        .ok_or_else(|| anyhow!("symbol JSON needs a `matrix` array"))?;
    if rows.len() != 3 {
        bail!("symbol matrix must be 3x3");
    }
    let mut m = QMatrix::zeros(3, 3);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| anyhow!("bad matrix row"))?;
        if row.len() != 3 {
            bail!("symbol matrix must be 3x3");
        }
        for (j, cell) in row.iter().enumerate() {
            let s = cell.as_str().ok_or_else(|| anyhow!("matrix entries are rational strings"))?;
            m[(i, j)] = rat_from_str(s)?;
        }
    }
    if !m.is_symmetric() {
        bail!("symbol matrix must be symmetric");
    }
    Ok(m)
}

fn cmd_classify(form: &Path, float: bool, eps: f64) -> Result<bool> {
    let v = read_form(form)?;
    let rt = if float {
        roottype::classify_numeric_form(&v, eps)?
    } else {
        roottype::classify_exact(&v)?
    };
    let dim = rt.dimension();
    let sym = 9 - dim;
    let planar = csp3::classify_planar_type(&v)?;
    let rank = structeq::jmatrix(&v)?.rank();
    println!("{rt} dim={dim} sym={sym} planar={planar} rank={rank}");
    Ok(true)
}

fn cmd_jmat(form: &Path) -> Result<bool> {
    let v = read_form(form)?;
    let j = structeq::jmatrix(&v)?;
    let matrix: Vec<Vec<String>> = (0..9)
        .map(|i| (0..9).map(|c| rat_to_string(&j[(i, c)])).collect())
        .collect();
    let out = serde_json::json!({
        "matrix": matrix,
        "rank": j.rank(),
        "det": rat_to_string(&j.det()),
        "discriminant": rat_to_string(&discriminant(&v)?),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(true)
}

fn cmd_verify_closure() -> Result<bool> {
    let report = structeq::verify_closure();
    let mut ok = true;
    let map: serde_json::Map<String, serde_json::Value> = report
        .zero_map()
        .into_iter()
        .map(|(name, zero)| {
            ok &= zero;
            (
                name,
                serde_json::Value::String(if zero { "zero" } else { "nonzero" }.into()),
            )
        })
        .collect();
    println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(map))?);
    println!("closure: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_verify_absorption() -> Result<bool> {
    let c = structeq::absorption_constants()?;
    let names = ["a2", "b2", "a4", "b4", "a6", "b6", "c4", "d4"];
    for (name, value) in names.iter().zip(&c) {
        println!("{name} = {}", rat_to_string(value));
    }
    let expect = [
        rq(3, 10),
        rq(1, 5),
        rq(1, 2),
        rint(0),
        rq(-1, 5),
        rq(-1, 20),
        rq(-1, 40),
        rq(-1, 160),
    ];
    let ok = c == expect;
    println!("absorption: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_verify_tangency(root_type: Option<&str>, _all: bool) -> Result<bool> {
    let types: Vec<RootType> = match root_type {
        Some(s) => vec![RootType::parse(s)?],
        None => roottype::enumerate_types()
            .into_iter()
            .filter(|t| !t.is_trivial())
            .collect(),
    };
    println!("{:<24} {:>2} {:>6} {:>8} {:>7}  verdict", "type", "k", "rankJ", "tangent", "joint");
    let mut ok = true;
    for t in &types {
        if t.is_trivial() {
            bail!("the trivial type has no representative");
        }
        let f = roottype::sample_representative(t)?;
        let r = leafcheck::verify_leaf_tangency(&f)?;
        ok &= r.verdict;
        println!(
            "{:<24} {:>2} {:>6} {:>8} {:>7}  {}",
            t.to_string(),
            r.k,
            r.rank_j,
            r.rank_tangent,
            r.rank_joint,
            if r.verdict { "ok" } else { "MISMATCH" }
        );
    }
    println!("tangency: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_verify_detdisc(n: usize, seed: u64) -> Result<bool> {
    let mut rng = sampling::seeded_rng(seed);
    let distinct: Vec<BinaryForm> = (0..n.max(2))
        .map(|_| sampling::random_octic_distinct(&mut rng))
        .collect();
    let repeated: Vec<BinaryForm> = (0..n.max(2) / 2)
        .map(|_| sampling::random_octic_repeated(&mut rng))
        .collect();
    match leafcheck::verify_det_disc_ratio(&distinct, &repeated) {
        Ok(c) => {
            println!(
                "det J = c * disc with c = {} over {} samples ({} repeated-root zeros)",
                rat_to_string(&c),
                distinct.len(),
                repeated.len()
            );
            println!("detdisc: PASS");
            Ok(true)
        }
        Err(e) => {
            println!("detdisc: FAIL ({e})");
            Ok(false)
        }
    }
}

fn cmd_verify_x8() -> Result<bool> {
    let report = reduction::verify_x8_reduction();
    for (name, ok, diff) in &report.entries {
        if *ok {
            println!("{name}: ok");
        } else {
            println!("{name}: MISMATCH  {diff}");
        }
    }
    let consistent = reduction::verify_x8_against_structure_rules(&rint(1));
    println!(
        "reduced equations consistent with the full structure rules at unit scale: {}",
        if consistent { "yes" } else { "NO" }
    );
    let ok = report.all_hold() && consistent;
    println!("x8: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_strata(dot: Option<&Path>) -> Result<bool> {
    let all = roottype::enumerate_types();
    let nontrivial = all.iter().filter(|t| !t.is_trivial()).count();
    println!("{nontrivial} nontrivial types (+ the trivial type)");
    for d in (2..=9).rev() {
        let of_dim: Vec<String> = all
            .iter()
            .filter(|t| t.dimension() == d)
            .map(|t| t.to_string())
            .collect();
        println!("dim {d}: {}", of_dim.join(" "));
    }
    if let Some(path) = dot {
        let poset = roottype::degeneration_poset();
        std::fs::write(path, roottype::hasse_dot(&poset))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote Hasse diagram to {}", path.display());
    }
    Ok(true)
}

fn cmd_pde_reconstruct(root_type: &str, seed: u64) -> Result<bool> {
    let builder = match root_type.trim_matches(|c| c == '{' || c == '}') {
        "0" => EtaBuilder::Flat,
        "8" => EtaBuilder::Dkp1,
        other => bail!("reconstruction is available for {{0}} and {{8}}, not `{other}`"),
    };
    let max_degree = match builder {
        EtaBuilder::Flat => 1,
        EtaBuilder::Dkp1 => 2,
    };
    let rel = csp3::reconstruct_relation(builder, max_degree, seed)?;
    println!("{}", rel.render());
    let clean = csp3::vanishes_on_fresh_samples(&rel, builder, 1000, seed ^ 1)?;
    println!(
        "vanishes on 1000 out-of-sample points: {}",
        if clean { "yes" } else { "NO" }
    );
    println!("reconstruct: {}", if clean { "PASS" } else { "FAIL" });
    Ok(clean)
}

fn cmd_pde_check(name: &str) -> Result<bool> {
    let pde = NamedPde::from_key(name)?;
    println!("{} (root type {})", pde.display_equation(), pde.root_type_label());
    let mut ok = true;
    for idx in 0..10 {
        let u = pde.sample_point(idx)?;
        let on_locus = pde.value(&u)?.is_zero();
        let hyperbolic = csp3::is_hyperbolic(&pde.symbol_at(&u)?);
        ok &= on_locus && hyperbolic;
        println!(
            "point {idx}: on-locus={} hyperbolic={}",
            if on_locus { "yes" } else { "NO" },
            if hyperbolic { "yes" } else { "NO" }
        );
    }
    println!("check {}: {}", pde.key(), if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn cmd_cone(symbol: &Path) -> Result<bool> {
    let m = read_symbol(symbol)?;
    let cone = csp3::cone_from_symbol(&m)?;
    if !cone.isotropy_certificate(&m) {
        bail!("internal error: isotropy certificate failed");
    }
    println!("{}", serde_json::to_string_pretty(&cone.to_json())?);
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let settings = load_settings(cli.config.as_deref())?;
    match cli.cmd {
        Command::Classify { form, float, eps } => {
            cmd_classify(&form, float, eps.unwrap_or(settings.eps))
        }
        Command::Jmat { form } => cmd_jmat(&form),
        Command::Verify { what } => match what {
            VerifyCmd::Closure => cmd_verify_closure(),
            VerifyCmd::Absorption => cmd_verify_absorption(),
            VerifyCmd::Tangency { root_type, all } => {
                cmd_verify_tangency(root_type.as_deref(), all)
            }
            VerifyCmd::Detdisc { n } => cmd_verify_detdisc(n, settings.seed),
            VerifyCmd::X8 => cmd_verify_x8(),
        },
        Command::Strata { dot } => cmd_strata(dot.as_deref()),
        Command::Pde { what } => match what {
            PdeCmd::Reconstruct { root_type } => cmd_pde_reconstruct(&root_type, settings.seed),
            PdeCmd::Check { name } => cmd_pde_check(&name),
        },
        Command::Cone { symbol } => cmd_cone(&symbol),
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
