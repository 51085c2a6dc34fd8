use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use pnc_tas::bounds::{
    build_difference_matrix_set, r_min_analytic, scan, tas1_ser_bound, tas2_ser_bound, EnumerationMode, SnrPoint,
    EXHAUSTIVE_LIMIT,
};
use pnc_tas::montecarlo::sweep;
use pnc_tas::selection::{combination_distances, tas1_select, tas2_select_with};
use pnc_tas::{ChannelRealization, Constellation, DifferencePairs, PncMap, Scheme, SimConfig};

use crate::args::{
    BoundArgs, Cli, Command, LambdaMode, Modulation, SelectArgs, SelectScheme, SimulateArgs, DEFAULT_LAMBDA_SAMPLES,
};
use crate::csv::{bound_csv, float, simulate_csv, RunLabel};
use crate::fixture::{parse_channels, parse_inline};
use crate::manifest::{BoundValue, RunManifest};
use crate::CliError;

/// Runs one parsed command. Results go to `out` (or to `--out`), warnings and
/// notes to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => simulate(&a, out, err),
        Command::Bound(a) => bound(&a, out, err),
        Command::Select(a) => {
            let report = select(&a)?;
            out.write_all(report.as_bytes())?;
            Ok(())
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn modulation_for(order: usize) -> Result<Modulation, CliError> {
    Modulation::from_order(order).ok_or_else(|| CliError::Usage(format!("unsupported modulation order {order}")))
}

fn simulate_config(a: &SimulateArgs) -> SimConfig {
    SimConfig {
        m_order: a.modulation.order(),
        n_a: a.na,
        n_b: a.nb,
        scheme: a.scheme.into(),
        snr_grid_db: a.snr_db.0.clone(),
        frames: a.frames,
        symbols_per_frame: a.spf,
        seed: a.seed,
        max_errors: (a.max_errors > 0).then_some(a.max_errors),
        workers: a.workers.unwrap_or_else(default_workers),
    }
}

pub fn simulate(a: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (mut cfg, with_bound) = match &a.from_manifest {
        Some(path) => {
            let m = RunManifest::read(path)?;
            (m.config, m.bounds.is_some())
        }
        None => (simulate_config(a), a.with_bound),
    };
    // The worker count never changes results, so it may be overridden on a re-run.
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    cfg.validate()?;
    let modulation = modulation_for(cfg.m_order)?;

    let results = sweep(&cfg)?;
    let label = RunLabel { scheme: cfg.scheme, modulation: modulation.name(), na: cfg.n_a, nb: cfg.n_b };
    emit(&simulate_csv(label, &results), a.out.as_deref(), out)?;

    if let Some(path) = &a.manifest {
        let bounds = if with_bound {
            let mode = match cfg.scheme {
                Scheme::Tas1 => LambdaMode::Exhaustive,
                Scheme::Tas2 => auto_lambda_mode(cfg.n_a, cfg.n_b, cfg.m_order)?,
            };
            Some(bound_values(cfg.scheme, cfg.m_order, cfg.n_a, cfg.n_b, &cfg.snr_grid_db, mode, cfg.seed, err)?)
        } else {
            None
        };
        RunManifest::new(cfg, results, bounds).write(path)?;
    }
    Ok(())
}

/// Exhaustive when the family is small enough, sampled otherwise.
fn auto_lambda_mode(n_a: usize, n_b: usize, order: usize) -> Result<LambdaMode, CliError> {
    let c = Constellation::psk(order)?;
    let m = PncMap::xor(order)?;
    let probe = build_difference_matrix_set(n_a, n_b, &c, &m, EnumerationMode::Sampled { count: 1, seed: 0 })?;
    Ok(if probe.family_size() <= EXHAUSTIVE_LIMIT {
        LambdaMode::Exhaustive
    } else {
        LambdaMode::Sampled(DEFAULT_LAMBDA_SAMPLES)
    })
}

#[allow(clippy::too_many_arguments)]
fn bound_values(
    scheme: Scheme,
    order: usize,
    n_a: usize,
    n_b: usize,
    grid: &[f64],
    lambda_mode: LambdaMode,
    seed: u64,
    err: &mut dyn Write,
) -> Result<Vec<BoundValue>, CliError> {
    if n_a == 0 || n_b == 0 {
        return Err(CliError::Usage(format!("antenna counts must be >= 1, got {n_a}x{n_b}")));
    }
    let c = Constellation::psk(order)?;
    let m = PncMap::xor(order)?;
    match scheme {
        Scheme::Tas1 => grid
            .iter()
            .map(|&db| {
                let b = tas1_ser_bound(SnrPoint::from_db(db), n_a, n_b, &c, &m)?;
                Ok(BoundValue { snr_db: db, bound: b.total(), lambda_star: None })
            })
            .collect(),
        Scheme::Tas2 => {
            let mode = match lambda_mode {
                LambdaMode::Exhaustive => EnumerationMode::Exhaustive,
                LambdaMode::Sampled(count) => EnumerationMode::Sampled { count, seed },
                LambdaMode::AnalyticRmin => EnumerationMode::Sampled { count: DEFAULT_LAMBDA_SAMPLES, seed },
            };
            let dset = build_difference_matrix_set(n_a, n_b, &c, &m, mode)?;
            let found = scan(&dset)?;
            let r_min = match lambda_mode {
                LambdaMode::AnalyticRmin => r_min_analytic(n_a, n_b),
                _ => found.r_min,
            };
            if r_min != n_a.min(n_b) {
                writeln!(err, "warning: r_min = {r_min} differs from min(na, nb) = {}", n_a.min(n_b))?;
            }
            if !found.exhaustive {
                writeln!(err, "note: lambda* estimated from {} sampled matrices (an upper estimate)", found.examined)?;
            }
            let lambda = found.lambda_star;
            let mut values = Vec::with_capacity(grid.len());
            for &db in grid {
                let b = tas2_ser_bound(SnrPoint::from_db(db), n_a, n_b, lambda, order);
                if b.low_snr_warning() {
                    writeln!(
                        err,
                        "warning: at {db} dB rho*lambda*/(4n) = {:.3} < 10; the bound is a high-SNR statement",
                        b.effective_snr
                    )?;
                }
                values.push(BoundValue { snr_db: db, bound: b.value, lambda_star: Some(lambda) });
            }
            Ok(values)
        }
    }
}

pub fn bound(a: &BoundArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let scheme: Scheme = a.bound.into();
    let values = bound_values(scheme, a.modulation.order(), a.na, a.nb, &a.snr_db.0, a.lambda_mode, a.seed, err)?;
    let rows: Vec<(f64, f64)> = values.iter().map(|v| (v.snr_db, v.bound)).collect();
    let lambda = values.first().and_then(|v| v.lambda_star);
    let label = RunLabel { scheme, modulation: a.modulation.name(), na: a.na, nb: a.nb };
    emit(&bound_csv(label, &rows, lambda), a.out.as_deref(), out)
}

fn select_channels(a: &SelectArgs) -> Result<ChannelRealization, CliError> {
    if let Some(path) = &a.channels {
        let (Some(n_a), Some(n_b)) = (a.na, a.nb) else {
            return Err(CliError::Usage("--channels needs --na and --nb".into()));
        };
        if n_a == 0 || n_b == 0 {
            return Err(CliError::Usage("--na and --nb must be >= 1".into()));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
        return parse_channels(&text, n_a, n_b)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())));
    }
    if a.h_a.is_empty() || a.h_b.is_empty() {
        return Err(CliError::Usage("give --channels FILE or at least one --h-a and one --h-b".into()));
    }
    let parse = |v: &[String]| v.iter().map(|s| parse_inline(s).map_err(CliError::Usage)).collect::<Result<Vec<_>, _>>();
    let ch = ChannelRealization::new(parse(&a.h_a)?, parse(&a.h_b)?);
    if a.na.is_some_and(|n| n != ch.n_a()) || a.nb.is_some_and(|n| n != ch.n_b()) {
        return Err(CliError::Usage("--na/--nb disagree with the number of inline coefficients".into()));
    }
    Ok(ch)
}

/// Text report: chosen indices (1-based), the per-combination minimum
/// cluster distances, and the noise-free relay points of each chosen pair.
pub fn select(a: &SelectArgs) -> Result<String, CliError> {
    let ch = select_channels(a)?;
    let order = a.modulation.order();
    let c = Constellation::psk(order)?;
    let m = PncMap::xor(order)?;
    let pairs = DifferencePairs::new(&c, &m)?;

    let mut chosen = Vec::new();
    if matches!(a.scheme, SelectScheme::Tas1 | SelectScheme::Both) {
        chosen.push(("TAS1", tas1_select(&ch)));
    }
    if matches!(a.scheme, SelectScheme::Tas2 | SelectScheme::Both) {
        chosen.push(("TAS2", tas2_select_with(&ch, &pairs)));
    }

    let mut r = String::new();
    let summary: Vec<String> =
        chosen.iter().map(|(name, s)| format!("{name}: ({},{})", s.idx_a + 1, s.idx_b + 1)).collect();
    r.push_str(&summary.join("; "));
    r.push_str("\n\nmin cluster distance (squared, Es = 1) per antenna pair:\n");
    r.push_str("  A  B  d2_min\n");
    for (i, row) in combination_distances(&ch, &pairs).iter().enumerate() {
        for (j, d) in row.iter().enumerate() {
            let _ = writeln!(r, "{:>3}{:>3}  {}", i + 1, j + 1, float(d.value()));
        }
    }
    for (name, s) in &chosen {
        let _ = writeln!(
            r,
            "\n{name} relay points for (A{}, B{}), h_A = {} {}, h_B = {} {}:",
            s.idx_a + 1,
            s.idx_b + 1,
            float(s.h_a.re),
            float(s.h_a.im),
            float(s.h_b.re),
            float(s.h_b.im)
        );
        r.push_str("  x_A x_B cluster  re  im\n");
        for x_a in 0..order {
            for x_b in 0..order {
                let p = s.h_a * c.point(x_a) + s.h_b * c.point(x_b);
                let _ = writeln!(r, "{x_a:>5}{x_b:>4}{:>8}  {}  {}", m.apply(x_a, x_b), float(p.re), float(p.im));
            }
        }
    }
    Ok(r)
}
