//! ML joint detection of the symbol pair at the relay.
//!
//! The relay sees `y = sqrt(Es)(h_A x_A + h_B x_B) + n` and picks the pair
//! whose noise-free point is closest to `y`. Since the channel is constant
//! over a frame, the `M^2` candidate points are tabulated once per frame in a
//! [`CandidateTable`].

use crate::channel::NoisePower;
use crate::constellation::{Constellation, PncMap};
use crate::Complex;

/// Detected pair and its distance `|y - sqrt(Es)(h_A x_A + h_B x_B)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionResult {
    pub est_a: usize,
    pub est_b: usize,
    pub metric: f64,
}

/// Noise-free relay points `sqrt(Es)(h_A x_a + h_B x_b)` indexed `a * M + b`.
#[derive(Debug, Clone)]
pub struct CandidateTable {
    order: usize,
    points: Vec<Complex>,
}

impl CandidateTable {
    pub fn new(h_a: Complex, h_b: Complex, np: NoisePower, c: &Constellation) -> Self {
        let mut table = Self { order: c.order(), points: Vec::with_capacity(c.order() * c.order()) };
        table.refresh(h_a, h_b, np, c);
        table
    }

    /// Rebuilds the table in place for a new frame.
    pub fn refresh(&mut self, h_a: Complex, h_b: Complex, np: NoisePower, c: &Constellation) {
        let g = np.es().sqrt();
        let (ga, gb) = (g * h_a, g * h_b);
        self.order = c.order();
        self.points.clear();
        for &xa in c.points() {
            for &xb in c.points() {
                self.points.push(ga * xa + gb * xb);
            }
        }
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    /// Index `a * M + b` of the nearest candidate; first on ties.
    #[inline]
    pub fn nearest(&self, y: Complex) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (k, p) in self.points.iter().enumerate() {
            let d = (y - p).norm_sqr();
            if d < best_d {
                best_d = d;
                best = k;
            }
        }
        best
    }

    pub fn detect(&self, y: Complex) -> DetectionResult {
        let k = self.nearest(y);
        DetectionResult {
            est_a: k / self.order,
            est_b: k % self.order,
            metric: (y - self.points[k]).norm(),
        }
    }
}

/// Exhaustive ML detection over all `M^2` pairs. Ties resolve to the
/// lexicographically smallest `(est_a, est_b)`.
pub fn ml_joint_detect(
    y: Complex,
    h_a: Complex,
    h_b: Complex,
    np: NoisePower,
    c: &Constellation,
) -> DetectionResult {
    CandidateTable::new(h_a, h_b, np, c).detect(y)
}

/// True iff the detected pair falls in a different cluster than the
/// transmitted one. Same-cluster confusions are not errors.
pub fn is_cluster_error(tx_a: usize, tx_b: usize, det: &DetectionResult, m: &PncMap) -> bool {
    m.apply(det.est_a, det.est_b) != m.apply(tx_a, tx_b)
}
