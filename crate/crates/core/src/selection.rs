//! Transmit antenna selection.
//!
//! * TAS1 picks, for each user independently, the antenna with the largest
//!   channel gain `|h|^2`.
//! * TAS2 picks the antenna pair maximizing the minimum squared distance
//!   `|h_A dx_A + h_B dx_B|^2` between noise-free relay points that belong to
//!   different clusters.
//!
//! Ties go to the lowest index (lexicographically smallest pair for TAS2).
//! `Es` is a common positive factor and is left out of the TAS2 metric.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::ChannelRealization;
use crate::constellation::{Constellation, PncMap};
use crate::{Complex, Error, Result};

/// Antenna selection rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Strongest channel per user.
    Tas1,
    /// Max-min Euclidean distance between clusters.
    Tas2,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Tas1 => "tas1",
            Scheme::Tas2 => "tas2",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tas1" => Ok(Scheme::Tas1),
            "tas2" => Ok(Scheme::Tas2),
            other => Err(Error::InvalidConfig(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Selected antenna indices (0-based) and their coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaChoice {
    pub idx_a: usize,
    pub idx_b: usize,
    pub h_a: Complex,
    pub h_b: Complex,
}

impl AntennaChoice {
    fn from_indices(ch: &ChannelRealization, idx_a: usize, idx_b: usize) -> Self {
        Self { idx_a, idx_b, h_a: ch.coeffs_a[idx_a], h_b: ch.coeffs_b[idx_b] }
    }
}

/// Squared Euclidean distance at the relay, with `Es` factored out.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ClusterDistance(pub f64);

impl ClusterDistance {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Index of the largest `|h|^2`, first one on ties.
fn strongest(coeffs: &[Complex]) -> usize {
    let mut best = 0;
    let mut best_gain = f64::NEG_INFINITY;
    for (i, h) in coeffs.iter().enumerate() {
        let g = h.norm_sqr();
        if g > best_gain {
            best = i;
            best_gain = g;
        }
    }
    best
}

/// Max-SNR selection, independently per user.
pub fn tas1_select(ch: &ChannelRealization) -> AntennaChoice {
    AntennaChoice::from_indices(ch, strongest(&ch.coeffs_a), strongest(&ch.coeffs_b))
}

/// Cross-cluster difference pairs `(dx_A, dx_B)` of a constellation and map.
///
/// Every ordered pair of symbol pairs in different clusters contributes its
/// difference; the list is deduplicated up to a common sign, which leaves
/// `|h_A dx_A + h_B dx_B|` unchanged. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferencePairs {
    pairs: Vec<(Complex, Complex)>,
}

impl DifferencePairs {
    pub fn new(c: &Constellation, m: &PncMap) -> Result<Self> {
        if c.order() != m.order() {
            return Err(Error::InvalidConfig(format!(
                "constellation order {} does not match map order {}",
                c.order(),
                m.order()
            )));
        }
        if !m.verify_exclusive_law() {
            return Err(Error::ExclusiveLawViolated(m.order()));
        }
        let order = c.order();
        let mut pairs = Vec::new();
        for a in 0..order {
            for b in 0..order {
                for ap in 0..order {
                    for bp in 0..order {
                        if m.apply(a, b) == m.apply(ap, bp) {
                            continue;
                        }
                        let d = (c.point(a) - c.point(ap), c.point(b) - c.point(bp));
                        let known = pairs.iter().any(|&(u, v): &(Complex, Complex)| {
                            same(u, d.0) && same(v, d.1) || same(u, -d.0) && same(v, -d.1)
                        });
                        if !known {
                            pairs.push(d);
                        }
                    }
                }
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(Complex, Complex)] {
        &self.pairs
    }

    /// `min |h_A dx_A + h_B dx_B|^2` over all cross-cluster differences.
    #[inline]
    pub fn min_distance(&self, h_a: Complex, h_b: Complex) -> ClusterDistance {
        let mut best = f64::INFINITY;
        for &(da, db) in &self.pairs {
            let d = (h_a * da + h_b * db).norm_sqr();
            if d < best {
                best = d;
            }
        }
        ClusterDistance(best)
    }
}

fn same(u: Complex, v: Complex) -> bool {
    (u - v).norm() <= crate::constellation::DEDUP_TOL
}

/// Minimum squared distance between clusters seen at the relay for the
/// channel pair `(h_A, h_B)`.
pub fn min_cluster_distance(
    h_a: Complex,
    h_b: Complex,
    c: &Constellation,
    m: &PncMap,
) -> Result<ClusterDistance> {
    Ok(DifferencePairs::new(c, m)?.min_distance(h_a, h_b))
}

/// Max-min distance selection over all `N_A * N_B` antenna pairs.
pub fn tas2_select(ch: &ChannelRealization, c: &Constellation, m: &PncMap) -> Result<AntennaChoice> {
    Ok(tas2_select_with(ch, &DifferencePairs::new(c, m)?))
}

/// [`tas2_select`] with a prebuilt difference table.
pub fn tas2_select_with(ch: &ChannelRealization, table: &DifferencePairs) -> AntennaChoice {
    let (mut bi, mut bj) = (0, 0);
    let mut best = f64::NEG_INFINITY;
    for (i, &h_a) in ch.coeffs_a.iter().enumerate() {
        for (j, &h_b) in ch.coeffs_b.iter().enumerate() {
            let d = table.min_distance(h_a, h_b).0;
            if d > best {
                best = d;
                (bi, bj) = (i, j);
            }
        }
    }
    AntennaChoice::from_indices(ch, bi, bj)
}

/// Per-combination minimum distances, row-major over `(idx_a, idx_b)`.
pub fn combination_distances(ch: &ChannelRealization, table: &DifferencePairs) -> Vec<Vec<ClusterDistance>> {
    ch.coeffs_a
        .iter()
        .map(|&h_a| ch.coeffs_b.iter().map(|&h_b| table.min_distance(h_a, h_b)).collect())
        .collect()
}

/// Applies `scheme` to a realization.
pub fn select(scheme: Scheme, ch: &ChannelRealization, table: &DifferencePairs) -> AntennaChoice {
    match scheme {
        Scheme::Tas1 => tas1_select(ch),
        Scheme::Tas2 => tas2_select_with(ch, table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw_channel, stream_rng};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn example_channels() -> ChannelRealization {
        ChannelRealization::new(
            vec![c(1.0, 1.0) * FRAC_1_SQRT_2, c(1.0, -0.5) * FRAC_1_SQRT_2],
            vec![c(1.0, -0.8) * FRAC_1_SQRT_2, c(1.0, 0.7) * FRAC_1_SQRT_2],
        )
    }

    /// Independent scan over all ordered pairs of symbol pairs, XOR inlined.
    fn brute_force(h_a: Complex, h_b: Complex, k: &Constellation) -> f64 {
        let n = k.order();
        let mut best = f64::INFINITY;
        for a in 0..n {
            for b in 0..n {
                for ap in 0..n {
                    for bp in 0..n {
                        if (a ^ b) != (ap ^ bp) {
                            let p = h_a * k.point(a) + h_b * k.point(b);
                            let q = h_a * k.point(ap) + h_b * k.point(bp);
                            best = best.min((p - q).norm_sqr());
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn example_selections() {
        let ch = example_channels();
        let q = Constellation::qpsk();
        let m = PncMap::xor(4).unwrap();
        let t1 = tas1_select(&ch);
        assert_eq!((t1.idx_a, t1.idx_b), (0, 0));
        let t2 = tas2_select(&ch, &q, &m).unwrap();
        assert_eq!((t2.idx_a, t2.idx_b), (0, 1));
        let d1 = min_cluster_distance(t1.h_a, t1.h_b, &q, &m).unwrap();
        let d2 = min_cluster_distance(t2.h_a, t2.h_b, &q, &m).unwrap();
        assert!(d2 > d1, "{d2:?} vs {d1:?}");
    }

    #[test]
    fn trivial_cases() {
        let one = ChannelRealization::new(vec![c(0.3, 0.1)], vec![c(-1.0, 0.2)]);
        let q = Constellation::qpsk();
        let m = PncMap::xor(4).unwrap();
        assert_eq!(tas1_select(&one).idx_a, 0);
        let t2 = tas2_select(&one, &q, &m).unwrap();
        assert_eq!((t2.idx_a, t2.idx_b), (0, 0));

        let tie = ChannelRealization::new(vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.5, 0.0)]);
        assert_eq!(tas1_select(&tie).idx_a, 0);
    }

    #[test]
    fn single_link_distance() {
        let q = Constellation::qpsk();
        let m = PncMap::xor(4).unwrap();
        // With h_B = 0, pairs differing only in x_B land on the same relay
        // point while belonging to different clusters, so the minimum is 0.
        let d = min_cluster_distance(c(1.0, 0.0), c(0.0, 0.0), &q, &m).unwrap();
        assert_eq!(d.0, 0.0);
        assert_eq!(brute_force(c(1.0, 0.0), c(0.0, 0.0), &q), 0.0);
        // Restricted to pairs where x_A differs, the single-user minimum |dx_A|^2 = 2 remains.
        let table = DifferencePairs::new(&q, &m).unwrap();
        let user_a = table
            .pairs()
            .iter()
            .filter(|(da, _)| da.norm() > 0.0)
            .map(|(da, _)| da.norm_sqr())
            .fold(f64::INFINITY, f64::min);
        assert!((user_a - 2.0).abs() < 1e-12);
    }

    #[test]
    fn distance_matches_brute_force_and_scales() {
        let q = Constellation::qpsk();
        let m = PncMap::xor(4).unwrap();
        let table = DifferencePairs::new(&q, &m).unwrap();
        let mut rng = stream_rng(11, 0, 0);
        for _ in 0..200 {
            let ch = draw_channel(&mut rng, 1, 1);
            let (h_a, h_b) = (ch.coeffs_a[0], ch.coeffs_b[0]);
            let d = table.min_distance(h_a, h_b).0;
            assert!((d - brute_force(h_a, h_b, &q)).abs() < 1e-12);
            let alpha = c(0.7, -1.3);
            let ds = table.min_distance(alpha * h_a, alpha * h_b).0;
            assert!((ds - alpha.norm_sqr() * d).abs() < 1e-12 * (1.0 + ds));
        }
    }

    #[test]
    fn bpsk_distance_is_single_user() {
        let b = Constellation::bpsk();
        let m = PncMap::xor(2).unwrap();
        let table = DifferencePairs::new(&b, &m).unwrap();
        let mut rng = stream_rng(5, 0, 0);
        for _ in 0..500 {
            let ch = draw_channel(&mut rng, 1, 1);
            let (h_a, h_b) = (ch.coeffs_a[0], ch.coeffs_b[0]);
            let expected = (2.0 * h_a).norm_sqr().min((2.0 * h_b).norm_sqr());
            assert!((table.min_distance(h_a, h_b).0 - expected).abs() < 1e-12);
            assert!((brute_force(h_a, h_b, &b) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn tas2_dominates_tas1() {
        let q = Constellation::qpsk();
        let m = PncMap::xor(4).unwrap();
        let table = DifferencePairs::new(&q, &m).unwrap();
        let mut rng = stream_rng(3, 0, 0);
        for _ in 0..10_000 {
            let ch = draw_channel(&mut rng, 3, 2);
            let t1 = tas1_select(&ch);
            let t2 = tas2_select_with(&ch, &table);
            assert!(table.min_distance(t2.h_a, t2.h_b) >= table.min_distance(t1.h_a, t1.h_b));
        }
    }

    #[test]
    fn selection_invariances() {
        let q = Constellation::qpsk();
        let m = PncMap::xor(4).unwrap();
        let table = DifferencePairs::new(&q, &m).unwrap();
        let mut rng = stream_rng(9, 0, 0);
        let rot = Complex::from_polar(1.0, 0.83);
        let alpha = c(-2.1, 0.4);
        for _ in 0..2_000 {
            let ch = draw_channel(&mut rng, 2, 3);
            let t1 = tas1_select(&ch);
            let t2 = tas2_select_with(&ch, &table);
            let rotated = ChannelRealization::new(
                ch.coeffs_a.iter().map(|h| h * rot).collect(),
                ch.coeffs_b.iter().map(|h| h * rot).collect(),
            );
            let r1 = tas1_select(&rotated);
            assert_eq!((r1.idx_a, r1.idx_b), (t1.idx_a, t1.idx_b));
            let scaled = ChannelRealization::new(
                ch.coeffs_a.iter().map(|h| h * alpha).collect(),
                ch.coeffs_b.iter().map(|h| h * alpha).collect(),
            );
            let s2 = tas2_select_with(&scaled, &table);
            assert_eq!((s2.idx_a, s2.idx_b), (t2.idx_a, t2.idx_b));
        }
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("TAS2".parse::<Scheme>(), Ok(Scheme::Tas2));
        assert!("tas3".parse::<Scheme>().is_err());
        assert_eq!(Scheme::Tas1.to_string(), "tas1");
    }
}
