use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use dualqr::dual_qr::{decompose as run_decompose, factor_residuals, FactorResiduals};
use dualqr::io::{median, parse_sizes, read_dmx, run_bench, write_csv, write_dmx};
use dualqr::perturbation::{empirical_record, reference_direction, reference_standard};
use dualqr::waves::{identify_full, simulate as run_simulate, to_dual_series, Grid, IdentifyOptions, Preset, WaveParams};
use dualqr::{dmpgi as run_dmpgi, penrose_residuals, Error, PenroseReport, Result, SketchConfig, Variant};
use serde::Serialize;

use crate::{BenchArgs, DecomposeArgs, DmpgiArgs, IdentifyArgs, PerturbArgs, SimulateArgs};

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

#[derive(Serialize)]
struct Relative {
    reconstruction: f64,
    coupling: f64,
    orthogonality_standard: f64,
    orthogonality_infinitesimal: f64,
}

#[derive(Serialize)]
struct DecomposeReport {
    algorithm: &'static str,
    m: usize,
    n: usize,
    rank: usize,
    k: Option<usize>,
    oversampling: Option<usize>,
    seed: Option<u64>,
    /// 1-based
    permutation: Vec<usize>,
    residuals: FactorResiduals,
    /// reconstruction / ‖A_s‖, coupling / (1 + ‖A_i‖), orthogonality / max(m, n)
    relative: Relative,
}

pub fn decompose(args: &DecomposeArgs) -> Result<()> {
    let variant: Variant = args.algo.parse()?;
    let a = read_dmx(&args.input)?;
    let cfg = match (variant, args.k) {
        (Variant::RandomizedPivoted, Some(k)) => Some(SketchConfig::new(k, args.seed).with_oversampling(args.oversample)),
        (Variant::RandomizedPivoted, None) => {
            return Err(Error::InvalidArgument("rdqrcp needs --k".into()));
        }
        _ => None,
    };
    let f = run_decompose(&a, variant, cfg.as_ref())?;
    let res = factor_residuals(&a, &f)?;

    write_dmx(with_suffix(&args.out, ".Q.dmx"), &f.q)?;
    write_dmx(with_suffix(&args.out, ".R.dmx"), &f.r)?;
    let mut csv = String::from("position,column\n");
    for (i, c) in f.perm.one_based().iter().enumerate() {
        let _ = writeln!(csv, "{},{c}", i + 1);
    }
    fs::write(with_suffix(&args.out, ".perm.csv"), csv)?;

    let (m, n) = a.shape();
    let dim = m.max(n) as f64;
    let report = DecomposeReport {
        algorithm: variant.name(),
        m,
        n,
        rank: f.rank,
        k: cfg.map(|c| c.target_rank),
        oversampling: cfg.map(|c| c.oversampling),
        seed: cfg.map(|c| c.seed),
        permutation: f.perm.one_based(),
        residuals: res,
        relative: Relative {
            reconstruction: if res.norm_standard > 0.0 {
                res.reconstruction / res.norm_standard
            } else {
                res.reconstruction
            },
            coupling: res.coupling / (1.0 + res.norm_infinitesimal),
            orthogonality_standard: res.orthogonality.standard / dim,
            orthogonality_infinitesimal: res.orthogonality.infinitesimal / dim,
        },
    };
    write_json(&with_suffix(&args.out, ".report.json"), &report)
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let params: WaveParams = match (&args.preset, &args.params) {
        (Some(p), None) => p.parse::<Preset>()?.params(args.noise, args.seed),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --preset or --params".into())),
    };
    let field = run_simulate(&params)?;
    write_dmx(&args.out, &to_dual_series(&field)?)?;
    write_json(&with_suffix(&args.out, ".json"), &params)
}

fn parse_grid(s: &str) -> Result<Grid> {
    let bad = || Error::InvalidArgument(format!("grid `{s}` is not of the form HxW"));
    let (h, w) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok(Grid::new(h.parse().map_err(|_| bad())?, w.parse().map_err(|_| bad())?))
}

fn grid_csv(values: &[f64], grid: Grid) -> String {
    let mut out = String::new();
    for r in 0..grid.height {
        let row = &values[r * grid.width..(r + 1) * grid.width];
        let line: Vec<String> = row.iter().map(|v| format!("{v:.9e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn identify(args: &IdentifyArgs) -> Result<()> {
    let d = read_dmx(&args.input)?;
    let grid = match &args.grid {
        Some(g) => parse_grid(g)?,
        None => {
            let meta = with_suffix(&args.input, ".json");
            let text = fs::read_to_string(&meta)
                .map_err(|_| Error::InvalidArgument(format!("no --grid given and {} is unreadable", meta.display())))?;
            let params: WaveParams = serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            params.grid
        }
    };
    let mut opts = IdentifyOptions::new(args.k);
    opts.theta = args.theta;
    opts.eta = args.eta;
    opts.noise_floor = args.noise_floor;
    opts.backend = args.backend.parse()?;
    opts.seed = args.seed;
    let id = identify_full(&d, grid, &opts)?;

    fs::create_dir_all(&args.out)?;
    write_json(&args.out.join("report.json"), &id.report)?;
    for c in &id.report.components {
        let j = c.index;
        let qs: Vec<f64> = id.q.standard().column(j).iter().copied().collect();
        let qi: Vec<f64> = id.q.infinitesimal().column(j).iter().copied().collect();
        fs::write(args.out.join(format!("component_{j}_standard.csv")), grid_csv(&qs, grid))?;
        fs::write(args.out.join(format!("component_{j}_infinitesimal.csv")), grid_csv(&qi, grid))?;
    }
    Ok(())
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let algos: Vec<Variant> = args
        .algos
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    let sizes = parse_sizes(&args.sizes)?;
    if args.reps == 0 {
        return Err(Error::InvalidArgument("--reps must be positive".into()));
    }
    let records = run_bench(&algos, &sizes, args.reps, args.seed)?;
    let file = fs::File::create(&args.out)?;
    write_csv(std::io::BufWriter::new(file), &records)?;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "algorithm,m,n,median_seconds")?;
    for s in &sizes {
        for a in &algos {
            if let Some(med) = median(&records, a.name(), s.m, s.n) {
                writeln!(out, "{},{},{},{med:.6}", a.name(), s.m, s.n)?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PenroseJson {
    m: usize,
    n: usize,
    /// AGA = A, GAG = G, (AG)ᵀ = AG, (GA)ᵀ = GA
    conditions: [&'static str; 4],
    report: PenroseReport,
    max: f64,
}

pub fn dmpgi(args: &DmpgiArgs) -> Result<()> {
    let a = read_dmx(&args.input)?;
    let g = run_dmpgi(&a)?;
    let report = penrose_residuals(&a, &g)?;
    write_dmx(with_suffix(&args.out, ".dmx"), &g)?;
    let (m, n) = a.shape();
    write_json(
        &with_suffix(&args.out, ".penrose.json"),
        &PenroseJson {
            m,
            n,
            conditions: ["AGA=A", "GAG=G", "(AG)^T=AG", "(GA)^T=GA"],
            max: report.max(),
            report,
        },
    )
}

pub fn perturb(args: &PerturbArgs) -> Result<()> {
    let (a_s, dir) = match &args.input {
        Some(p) => read_dmx(p)?.into_parts(),
        None => (reference_standard(), reference_direction()),
    };
    let mut csv = String::from("tau,norm_ai,norm_dq_empirical,norm_qi,bound_sun,bound_stewart\n");
    for &tau in &args.tau {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidArgument(format!("tau {tau} must be a nonnegative number")));
        }
        let r = empirical_record(&a_s, &dir, tau)?;
        let _ = writeln!(
            csv,
            "{:e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e}",
            r.tau, r.norm_ai, r.norm_dq_empirical, r.norm_qi, r.bound_sun, r.bound_stewart
        );
    }
    match &args.out {
        Some(p) => fs::write(p, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
