//! Frame-based Monte Carlo estimation of the MA-phase cluster SER.
//!
//! Each frame draws one channel realization, selects antennas once, then
//! sends `symbols_per_frame` uniformly random symbol pairs through it. A
//! symbol is in error when the ML pair detected at the relay maps to a
//! different cluster than the transmitted pair.
//!
//! Frames are grouped into fixed blocks of [`FRAMES_PER_BLOCK`]. Block `b` of
//! SNR point `p` always uses the random stream `(seed, p, b)`, and results
//! are accumulated over a prefix of blocks, so the output depends only on the
//! configuration, never on the number of workers. Early stopping ends the
//! prefix at the first block where the running error count reaches
//! `max_errors`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{complex_gaussian, draw_channel_into, stream_rng, ChannelRealization, NoisePower};
use crate::constellation::{Constellation, PncMap};
use crate::detector::CandidateTable;
use crate::selection::{select, DifferencePairs, Scheme};
use crate::{Error, Result};

/// Frames per random-stream block.
pub const FRAMES_PER_BLOCK: u64 = 64;

/// Blocks dispatched per parallel round.
const ROUND_BLOCKS: u64 = 256;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;
/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub m_order: usize,
    pub n_a: usize,
    pub n_b: usize,
    pub scheme: Scheme,
    pub snr_grid_db: Vec<f64>,
    /// Maximum number of frames per SNR point.
    pub frames: u64,
    pub symbols_per_frame: u32,
    pub seed: u64,
    /// Stop a point once this many cluster errors are seen; `None` runs every frame.
    pub max_errors: Option<u64>,
    pub workers: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            m_order: 4,
            n_a: 2,
            n_b: 2,
            scheme: Scheme::Tas1,
            snr_grid_db: (0..=8).map(|i| 5.0 * i as f64).collect(),
            frames: 10_000,
            symbols_per_frame: 100,
            seed: 0,
            max_errors: Some(2000),
            workers: 1,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.m_order < 2 || !self.m_order.is_power_of_two() {
            return Err(Error::InvalidOrder(self.m_order));
        }
        if self.n_a == 0 || self.n_b == 0 {
            return bad(format!("antenna counts must be >= 1, got {}x{}", self.n_a, self.n_b));
        }
        if self.frames == 0 || self.symbols_per_frame == 0 {
            return bad("frames and symbols per frame must be >= 1".into());
        }
        if self.workers == 0 {
            return bad("workers must be >= 1".into());
        }
        if self.snr_grid_db.is_empty() || self.snr_grid_db.iter().any(|v| !v.is_finite()) {
            return bad("SNR grid must be non-empty and finite".into());
        }
        if self.snr_grid_db.windows(2).any(|w| w[1] <= w[0]) {
            return bad("SNR grid must be strictly increasing".into());
        }
        Ok(())
    }
}

/// Monte Carlo result at one SNR point with a 95% Wilson interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerEstimate {
    pub snr_db: f64,
    /// Cluster errors.
    pub errors: u64,
    /// Symbols whose detected pair differs from the transmitted pair at all.
    pub pair_errors: u64,
    pub trials: u64,
    pub ser: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl SerEstimate {
    pub fn from_counts(snr_db: f64, errors: u64, pair_errors: u64, trials: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(errors, trials, Z95);
        let ser = if trials == 0 { 0.0 } else { errors as f64 / trials as f64 };
        Self { snr_db, errors, pair_errors, trials, ser, ci_low, ci_high }
    }

    /// Wilson interval at an arbitrary normal quantile.
    pub fn interval(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.errors, self.trials, z)
    }

    pub fn pair_error_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.pair_errors as f64 / self.trials as f64
        }
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    errors: u64,
    pair_errors: u64,
    trials: u64,
}

/// Everything a worker needs that does not change between frames.
struct PointContext<'a> {
    cfg: &'a SimConfig,
    point: usize,
    constellation: Constellation,
    map: PncMap,
    pairs: DifferencePairs,
    noise: NoisePower,
}

impl PointContext<'_> {
    fn run_block(&self, block: u64) -> Tally {
        let cfg = self.cfg;
        let m = self.constellation.order();
        let first = block * FRAMES_PER_BLOCK;
        let frames = FRAMES_PER_BLOCK.min(cfg.frames - first);
        let mut rng = stream_rng(cfg.seed, self.point, block);
        let mut ch = ChannelRealization::new(Vec::new(), Vec::new());
        let mut table = CandidateTable::new(
            crate::Complex::new(0.0, 0.0),
            crate::Complex::new(0.0, 0.0),
            self.noise,
            &self.constellation,
        );
        let n0 = self.noise.n0();
        let mut tally = Tally::default();
        for _ in 0..frames {
            draw_channel_into(&mut rng, &mut ch, cfg.n_a, cfg.n_b);
            let choice = select(cfg.scheme, &ch, &self.pairs);
            table.refresh(choice.h_a, choice.h_b, self.noise, &self.constellation);
            for _ in 0..cfg.symbols_per_frame {
                let s_a = rng.random_range(0..m);
                let s_b = rng.random_range(0..m);
                let noise = complex_gaussian(&mut rng, n0);
                let y = table.points()[s_a * m + s_b] + noise;
                let k = table.nearest(y);
                let (e_a, e_b) = (k / m, k % m);
                if (e_a, e_b) != (s_a, s_b) {
                    tally.pair_errors += 1;
                    if self.map.apply(e_a, e_b) != self.map.apply(s_a, s_b) {
                        tally.errors += 1;
                    }
                }
            }
            tally.trials += cfg.symbols_per_frame as u64;
        }
        tally
    }
}

fn build_pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool")
}

fn run_point_in(pool: &rayon::ThreadPool, cfg: &SimConfig, point: usize, snr_db: f64) -> Result<SerEstimate> {
    let constellation = Constellation::psk(cfg.m_order)?;
    let map = PncMap::xor(cfg.m_order)?;
    let pairs = DifferencePairs::new(&constellation, &map)?;
    let ctx = PointContext { cfg, point, constellation, map, pairs, noise: NoisePower::from_snr_db(snr_db) };

    let total_blocks = cfg.frames.div_ceil(FRAMES_PER_BLOCK);
    let mut acc = Tally::default();
    let mut next = 0;
    'rounds: while next < total_blocks {
        let end = (next + ROUND_BLOCKS).min(total_blocks);
        let tallies: Vec<Tally> = pool.install(|| (next..end).into_par_iter().map(|b| ctx.run_block(b)).collect());
        for t in tallies {
            acc.errors += t.errors;
            acc.pair_errors += t.pair_errors;
            acc.trials += t.trials;
            if cfg.max_errors.is_some_and(|cap| acc.errors >= cap) {
                break 'rounds;
            }
        }
        next = end;
    }
    Ok(SerEstimate::from_counts(snr_db, acc.errors, acc.pair_errors, acc.trials))
}

/// Estimates the SER at one SNR. `point` is the grid index and selects the
/// random streams.
pub fn run_point(cfg: &SimConfig, point: usize, snr_db: f64) -> Result<SerEstimate> {
    cfg.validate()?;
    run_point_in(&build_pool(cfg.workers), cfg, point, snr_db)
}

/// One [`run_point`] per grid entry, in grid order.
pub fn sweep(cfg: &SimConfig) -> Result<Vec<SerEstimate>> {
    cfg.validate()?;
    let pool = build_pool(cfg.workers);
    cfg.snr_grid_db
        .iter()
        .enumerate()
        .map(|(p, &db)| run_point_in(&pool, cfg, p, db))
        .collect()
}

/// Diversity estimate: the negated least-squares slope of `log10(ser)`
/// against `snr_db / 10`, over points with at least `min_errors` errors and
/// `0 < ser <= max_ser`.
pub fn fit_diversity_slope(points: &[SerEstimate], min_errors: u64, max_ser: f64) -> Result<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.errors >= min_errors && p.errors > 0 && p.ser <= max_ser)
        .map(|p| (p.snr_db / 10.0, p.ser.log10()))
        .collect();
    if xy.len() < 2 {
        return Err(Error::InsufficientPoints(xy.len()));
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xy.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Ok(-sxy / sxx)
}
