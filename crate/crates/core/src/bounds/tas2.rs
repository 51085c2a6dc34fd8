//! Rank and eigenvalue analysis behind the max-min distance (TAS2) bound.
//!
//! For an antenna pair `I = (i, j)` the transmit vector is `z_I(x_A, x_B)`,
//! a length `N_A + N_B` vector holding `x_A` at row `i` and `x_B` at row
//! `N_A + j`. `DC_I` is the set of differences `z_I(x1) - z_I(x2)` between
//! symbol pairs in different clusters. The matrix family `DD` takes one
//! column from each `DC_I`, giving `(N_A + N_B) x n` matrices, `n = N_A N_B`.
//!
//! * `r_min`: smallest rank over `DD`,
//! * `lambda*`: smallest non-zero eigenvalue of `X X^H` over `DD`,
//! * bound: `C(M,2) (rho lambda* / (4n))^(-min(N_A, N_B))`.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{binomial, SnrPoint};
use crate::constellation::{Constellation, PncMap, DEDUP_TOL};
use crate::{Complex, Error, Result};

/// Largest family size enumerated in exhaustive mode.
pub const EXHAUSTIVE_LIMIT: f64 = 1e7;

/// Relative threshold below which a singular value (or eigenvalue) counts as zero.
pub const RANK_TOL: f64 = 1e-9;

const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every matrix of the family.
    Exhaustive,
    /// `count` matrices with columns drawn uniformly and independently.
    Sampled { count: u64, seed: u64 },
}

/// Per-combination column alphabets of the difference-matrix family.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceMatrixSet {
    pub n_a: usize,
    pub n_b: usize,
    /// One alphabet per antenna pair, ordered `(i, j)` row-major. Each entry
    /// is `(dx_A, dx_B)`, placed at rows `i` and `N_A + j`.
    pub column_alphabets: Vec<Vec<(Complex, Complex)>>,
    pub mode: EnumerationMode,
}

impl DifferenceMatrixSet {
    /// Number of antenna combinations (columns per matrix).
    pub fn n(&self) -> usize {
        self.n_a * self.n_b
    }

    pub fn rows(&self) -> usize {
        self.n_a + self.n_b
    }

    /// Size of the full family, `prod_k |DC_k|`, as a float (it can overflow
    /// integers long before it matters).
    pub fn family_size(&self) -> f64 {
        self.column_alphabets.iter().map(|a| a.len() as f64).product()
    }

    /// Embeds the chosen alphabet entries as a dense matrix.
    pub fn matrix(&self, choice: &[usize]) -> DMatrix<Complex> {
        let mut x = DMatrix::from_element(self.rows(), self.n(), Complex::new(0.0, 0.0));
        for (col, &pick) in choice.iter().enumerate() {
            let (i, j) = (col / self.n_b, col % self.n_b);
            let (da, db) = self.column_alphabets[col][pick];
            x[(i, col)] = da;
            x[(self.n_a + j, col)] = db;
        }
        x
    }
}

/// Builds `DC_I` for every antenna pair.
pub fn build_difference_matrix_set(
    n_a: usize,
    n_b: usize,
    c: &Constellation,
    m: &PncMap,
    mode: EnumerationMode,
) -> Result<DifferenceMatrixSet> {
    if n_a == 0 || n_b == 0 {
        return Err(Error::InvalidConfig("antenna counts must be at least 1".into()));
    }
    if c.order() != m.order() {
        return Err(Error::InvalidConfig("constellation and map orders differ".into()));
    }
    if !m.verify_exclusive_law() {
        return Err(Error::ExclusiveLawViolated(m.order()));
    }
    let order = c.order();
    let mut alphabet: Vec<(Complex, Complex)> = Vec::new();
    for a in 0..order {
        for b in 0..order {
            for ap in 0..order {
                for bp in 0..order {
                    if m.apply(a, b) == m.apply(ap, bp) {
                        continue;
                    }
                    let d = (c.point(a) - c.point(ap), c.point(b) - c.point(bp));
                    let known = alphabet
                        .iter()
                        .any(|&(u, v)| (u - d.0).norm() <= DEDUP_TOL && (v - d.1).norm() <= DEDUP_TOL);
                    if !known {
                        alphabet.push(d);
                    }
                }
            }
        }
    }
    let dset = DifferenceMatrixSet { n_a, n_b, column_alphabets: vec![alphabet; n_a * n_b], mode };
    if dset.mode == EnumerationMode::Exhaustive && dset.family_size() > EXHAUSTIVE_LIMIT {
        return Err(Error::EnumerationTooLarge { count: dset.family_size(), limit: EXHAUSTIVE_LIMIT });
    }
    Ok(dset)
}

/// Result of scanning (part of) the matrix family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixScan {
    pub r_min: usize,
    pub lambda_star: f64,
    pub examined: u64,
    /// True when the whole family was enumerated. Sampled scans give an upper
    /// estimate of both `r_min` and `lambda*`.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy)]
struct Extremes {
    rank: usize,
    lambda: f64,
}

impl Extremes {
    const NONE: Extremes = Extremes { rank: usize::MAX, lambda: f64::INFINITY };

    fn merge(self, other: Extremes) -> Extremes {
        Extremes { rank: self.rank.min(other.rank), lambda: self.lambda.min(other.lambda) }
    }
}

/// Rank and smallest non-zero eigenvalue of `X X^H` from the singular values of `X`.
fn analyze(x: DMatrix<Complex>) -> Extremes {
    let sv = x.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Extremes { rank: 0, lambda: f64::INFINITY };
    }
    let rank = sv.iter().filter(|&&s| s > RANK_TOL * smax).count();
    let lmax = smax * smax;
    let lambda = sv
        .iter()
        .map(|s| s * s)
        .filter(|&l| l > RANK_TOL * lmax)
        .fold(f64::INFINITY, f64::min);
    Extremes { rank, lambda }
}

fn decode_index(mut idx: u64, radices: &[usize], out: &mut [usize]) {
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = (idx % r as u64) as usize;
        idx /= r as u64;
    }
}

/// Scans the family according to `dset.mode`.
///
/// Work is split into fixed index blocks processed in parallel; the min
/// reduction makes the result independent of scheduling.
pub fn scan(dset: &DifferenceMatrixSet) -> Result<MatrixScan> {
    let radices: Vec<usize> = dset.column_alphabets.iter().map(Vec::len).collect();
    match dset.mode {
        EnumerationMode::Exhaustive => {
            let size = dset.family_size();
            if size > EXHAUSTIVE_LIMIT {
                return Err(Error::EnumerationTooLarge { count: size, limit: EXHAUSTIVE_LIMIT });
            }
            let total = size as u64;
            let blocks = total.div_ceil(BLOCK);
            let ext = (0..blocks)
                .into_par_iter()
                .map(|blk| {
                    let mut choice = vec![0; radices.len()];
                    let mut acc = Extremes::NONE;
                    for idx in blk * BLOCK..((blk + 1) * BLOCK).min(total) {
                        decode_index(idx, &radices, &mut choice);
                        acc = acc.merge(analyze(dset.matrix(&choice)));
                    }
                    acc
                })
                .reduce(|| Extremes::NONE, Extremes::merge);
            Ok(MatrixScan { r_min: ext.rank, lambda_star: ext.lambda, examined: total, exhaustive: true })
        }
        EnumerationMode::Sampled { count, seed } => {
            let blocks = count.div_ceil(BLOCK);
            let ext = (0..blocks)
                .into_par_iter()
                .map(|blk| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(blk);
                    let mut choice = vec![0; radices.len()];
                    let mut acc = Extremes::NONE;
                    for _ in blk * BLOCK..((blk + 1) * BLOCK).min(count) {
                        for (slot, &r) in choice.iter_mut().zip(&radices) {
                            *slot = rng.random_range(0..r);
                        }
                        acc = acc.merge(analyze(dset.matrix(&choice)));
                    }
                    acc
                })
                .reduce(|| Extremes::NONE, Extremes::merge);
            Ok(MatrixScan { r_min: ext.rank, lambda_star: ext.lambda, examined: count, exhaustive: false })
        }
    }
}

/// Minimum rank over the family (exact in exhaustive mode).
pub fn r_min(dset: &DifferenceMatrixSet) -> Result<MatrixScan> {
    scan(dset)
}

/// `min(N_A, N_B)`, the minimum rank established analytically for this family.
pub fn r_min_analytic(n_a: usize, n_b: usize) -> usize {
    n_a.min(n_b)
}

/// Minimum over the family of the smallest non-zero eigenvalue of `X X^H`.
pub fn lambda_star(dset: &DifferenceMatrixSet) -> Result<MatrixScan> {
    scan(dset)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tas2Bound {
    pub value: f64,
    /// `rho lambda* / (4n)`; the bound is a high-SNR statement and is only
    /// meaningful when this is well above 1.
    pub effective_snr: f64,
}

impl Tas2Bound {
    /// Set when `rho lambda* / (4n) < 10`.
    pub fn low_snr_warning(&self) -> bool {
        self.effective_snr < 10.0
    }
}

/// `C(M,2) (rho lambda* / (4 n))^(-min(N_A, N_B))` with `n = N_A N_B`.
pub fn tas2_ser_bound(rho: SnrPoint, n_a: usize, n_b: usize, lambda_star: f64, m_order: usize) -> Tas2Bound {
    let n = (n_a * n_b) as f64;
    let effective_snr = rho.rho() * lambda_star / (4.0 * n);
    Tas2Bound {
        value: binomial(m_order, 2) * effective_snr.powi(-(n_a.min(n_b) as i32)),
        effective_snr,
    }
}
