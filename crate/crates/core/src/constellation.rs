//! Modulation alphabets and the relay's network-coding map.
//!
//! Symbols are identified by their index `s` in `0..M`. PSK points are
//! labeled so that QPSK reproduces the usual relay mapping table exactly:
//! `s -> exp(i(2s+1)pi/4)`, i.e. `0 -> (1+i)/sqrt2`, `1 -> (-1+i)/sqrt2`,
//! `2 -> (-1-i)/sqrt2`, `3 -> (1-i)/sqrt2`.

use std::f64::consts::PI;

use crate::{Complex, Error, Result};

/// Absolute tolerance used when deduplicating complex values of order one.
pub const DEDUP_TOL: f64 = 1e-12;

/// A unit-average-energy M-ary alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    points: Vec<Complex>,
}

impl Constellation {
    /// M-PSK with `M` a power of two.
    ///
    /// BPSK is the antipodal pair `{+1, -1}`; higher orders are rotated by
    /// `pi/M` so the points sit at `exp(i(2s+1)pi/M)`.
    pub fn psk(order: usize) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::InvalidOrder(order));
        }
        let points = if order == 2 {
            vec![Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)]
        } else {
            (0..order)
                .map(|s| Complex::from_polar(1.0, (2 * s + 1) as f64 * PI / order as f64))
                .collect()
        };
        Ok(Self { points })
    }

    pub fn bpsk() -> Self {
        Self::psk(2).expect("2 is a valid order")
    }

    pub fn qpsk() -> Self {
        Self::psk(4).expect("4 is a valid order")
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// Bits carried per symbol.
    pub fn bits(&self) -> u32 {
        self.order().trailing_zeros()
    }

    pub fn point(&self, s: usize) -> Complex {
        self.points[s]
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    pub fn average_energy(&self) -> f64 {
        self.points.iter().map(|x| x.norm_sqr()).sum::<f64>() / self.order() as f64
    }

    /// Index of the point within [`DEDUP_TOL`] of `x`, if any.
    pub fn index_of(&self, x: Complex) -> Option<usize> {
        self.points.iter().position(|p| (p - x).norm() <= DEDUP_TOL)
    }

    /// Conventional name used on the command line (`bpsk`, `qpsk`, `8psk`, ...).
    pub fn name(&self) -> String {
        match self.order() {
            2 => "bpsk".to_owned(),
            4 => "qpsk".to_owned(),
            m => format!("{m}psk"),
        }
    }
}

/// The set `{x - x'}` of all pairwise differences of an alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceSet {
    values: Vec<Complex>,
}

impl DifferenceSet {
    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, z: Complex) -> bool {
        self.values.iter().any(|v| (v - z).norm() <= DEDUP_TOL)
    }
}

/// Enumerates all `M^2` ordered differences and removes duplicates.
pub fn difference_set(c: &Constellation) -> DifferenceSet {
    let mut values: Vec<Complex> = Vec::with_capacity(c.order() * c.order());
    for &x in c.points() {
        for &xp in c.points() {
            push_unique(&mut values, x - xp);
        }
    }
    DifferenceSet { values }
}

pub(crate) fn push_unique(values: &mut Vec<Complex>, z: Complex) -> bool {
    if values.iter().any(|v| (v - z).norm() <= DEDUP_TOL) {
        false
    } else {
        values.push(z);
        true
    }
}

/// A network-coding map `(s_A, s_B) -> s_R` on `Z_M`, stored as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PncMap {
    order: usize,
    table: Vec<usize>,
}

impl PncMap {
    /// Bitwise XOR of the two indices; requires a power-of-two order.
    pub fn xor(order: usize) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self::from_fn(order, |a, b| a ^ b))
    }

    /// `(s_A + s_B) mod M`. Also satisfies the exclusive law.
    pub fn modular_sum(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self::from_fn(order, |a, b| (a + b) % order))
    }

    /// Arbitrary map; outputs are reduced modulo `order`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b) % order);
            }
        }
        Self { order, table }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Network-coded index for the pair, with range checks.
    pub fn map(&self, s_a: usize, s_b: usize) -> Result<usize> {
        for s in [s_a, s_b] {
            if s >= self.order {
                return Err(Error::IndexOutOfRange { index: s, order: self.order });
            }
        }
        Ok(self.apply(s_a, s_b))
    }

    /// Unchecked lookup for hot loops. Panics on out-of-range indices.
    #[inline]
    pub fn apply(&self, s_a: usize, s_b: usize) -> usize {
        self.table[s_a * self.order + s_b]
    }

    /// True iff `b -> M(a, b)` and `a -> M(a, b)` are bijections for every
    /// fixed `a` and `b`.
    pub fn verify_exclusive_law(&self) -> bool {
        let m = self.order;
        let mut seen = vec![false; m];
        for fixed in 0..m {
            for by_row in [true, false] {
                seen.iter_mut().for_each(|v| *v = false);
                for other in 0..m {
                    let r = if by_row { self.apply(fixed, other) } else { self.apply(other, fixed) };
                    if std::mem::replace(&mut seen[r], true) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Symbol pairs grouped by their network-coded index; entry `r` holds the
    /// `M` pairs mapped to `r`, in lexicographic order.
    pub fn clusters(&self) -> Result<Vec<Vec<(usize, usize)>>> {
        if !self.verify_exclusive_law() {
            return Err(Error::ExclusiveLawViolated(self.order));
        }
        let mut out = vec![Vec::with_capacity(self.order); self.order];
        for a in 0..self.order {
            for b in 0..self.order {
                out[self.apply(a, b)].push((a, b));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn psk_rejects_bad_orders() {
        for m in [0, 1, 3, 6, 12] {
            assert_eq!(Constellation::psk(m), Err(Error::InvalidOrder(m)));
        }
    }

    #[test]
    fn qpsk_labels() {
        let q = Constellation::qpsk();
        let s = FRAC_1_SQRT_2;
        let expected = [c(s, s), c(-s, s), c(-s, -s), c(s, -s)];
        for (i, e) in expected.iter().enumerate() {
            assert!((q.point(i) - e).norm() < 1e-15, "s={i}");
        }
    }

    #[test]
    fn bpsk_is_antipodal() {
        let b = Constellation::bpsk();
        assert_eq!(b.points(), &[c(1.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn unit_energy_and_distinct() {
        for m in [2, 4, 8, 16, 32] {
            let k = Constellation::psk(m).unwrap();
            assert!((k.average_energy() - 1.0).abs() < 1e-12);
            for i in 0..m {
                for j in 0..i {
                    assert!((k.point(i) - k.point(j)).norm() > 1e-6);
                }
            }
        }
    }

    #[test]
    fn difference_sets() {
        let b = difference_set(&Constellation::bpsk());
        assert_eq!(b.len(), 3);
        for z in [c(0.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0)] {
            assert!(b.contains(z));
        }

        let q = difference_set(&Constellation::qpsk());
        assert_eq!(q.len(), 9);
        let r = std::f64::consts::SQRT_2;
        assert!(q.contains(c(r, r)));
        assert!(q.contains(c(-r, -r)));

        for m in [2, 4, 8, 16] {
            let d = difference_set(&Constellation::psk(m).unwrap());
            assert!(d.contains(Complex::new(0.0, 0.0)));
            assert!(d.values().iter().all(|&v| d.contains(-v)));
            assert!(d.len() <= m * m);
        }
    }

    #[test]
    fn map_examples() {
        let m4 = PncMap::xor(4).unwrap();
        assert_eq!(m4.map(1, 3), Ok(2));
        for b in 0..4 {
            assert_eq!(m4.map(0, b), Ok(b));
        }
        assert_eq!(PncMap::xor(8).unwrap().map(5, 5), Ok(0));
        assert_eq!(m4.map(4, 0), Err(Error::IndexOutOfRange { index: 4, order: 4 }));
        assert!(PncMap::xor(6).is_err());
    }

    #[test]
    fn exclusive_law() {
        for m in [2, 4, 8, 16] {
            assert!(PncMap::xor(m).unwrap().verify_exclusive_law());
        }
        for m in [4, 8] {
            assert!(PncMap::modular_sum(m).unwrap().verify_exclusive_law());
        }
        let constant = PncMap::from_fn(4, |_, _| 0);
        assert!(!constant.verify_exclusive_law());
        assert_eq!(constant.clusters(), Err(Error::ExclusiveLawViolated(4)));
        // injective in one argument only
        let row_only = PncMap::from_fn(4, |a, _| a);
        assert!(!row_only.verify_exclusive_law());
    }

    #[test]
    fn cluster_tables() {
        let c4 = PncMap::xor(4).unwrap().clusters().unwrap();
        assert_eq!(c4[0], vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(c4[1], vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert_eq!(c4[2], vec![(0, 2), (1, 3), (2, 0), (3, 1)]);
        assert_eq!(c4[3], vec![(0, 3), (1, 2), (2, 1), (3, 0)]);

        let c2 = PncMap::xor(2).unwrap().clusters().unwrap();
        assert_eq!(c2[1], vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn clusters_partition_pairs() {
        for m in [2usize, 4, 8, 16] {
            let cl = PncMap::xor(m).unwrap().clusters().unwrap();
            assert_eq!(cl.len(), m);
            let mut all: Vec<_> = cl.iter().flatten().copied().collect();
            assert!(cl.iter().all(|k| k.len() == m));
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), m * m);
            // within a cluster, one coordinate fixes the other
            for k in &cl {
                for p in k {
                    for q in k {
                        assert!(p == q || (p.0 != q.0 && p.1 != q.1));
                    }
                }
            }
        }
    }
}
