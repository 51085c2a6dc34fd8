//! Monte Carlo sweeps checked against physical expectations and the bound.

use pnc_tas::bounds::{tas1_ser_bound, SnrPoint};
use pnc_tas::montecarlo::{run_point, sweep, Z99};
use pnc_tas::{Constellation, PncMap, Scheme, SerEstimate, SimConfig};

fn cfg(scheme: Scheme, n_a: usize, n_b: usize, grid: Vec<f64>) -> SimConfig {
    SimConfig {
        scheme,
        n_a,
        n_b,
        snr_grid_db: grid,
        frames: 200_000,
        symbols_per_frame: 10,
        seed: 2024,
        max_errors: Some(4000),
        workers: 2,
        ..SimConfig::default()
    }
}

fn overlap(a: &SerEstimate, b: &SerEstimate) -> bool {
    a.ci_low <= b.ci_high && b.ci_low <= a.ci_high
}

#[test]
fn sweep_is_non_increasing_up_to_noise() {
    for scheme in [Scheme::Tas1, Scheme::Tas2] {
        let pts = sweep(&cfg(scheme, 2, 2, vec![0.0, 5.0, 10.0, 15.0, 20.0])).unwrap();
        for w in pts.windows(2) {
            assert!(w[1].ser < w[0].ser || overlap(&w[0], &w[1]), "{scheme}: {w:?}");
        }
    }
}

#[test]
fn swapping_users_preserves_ser() {
    let grid = vec![5.0, 15.0, 25.0];
    for scheme in [Scheme::Tas1, Scheme::Tas2] {
        let a = sweep(&cfg(scheme, 3, 2, grid.clone())).unwrap();
        let mut swapped = cfg(scheme, 2, 3, grid.clone());
        swapped.seed = 99;
        let b = sweep(&swapped).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(overlap(x, y), "{scheme}: {x:?} vs {y:?}");
        }
    }
}

#[test]
fn tas2_beats_tas1_at_25_db() {
    let grid = vec![25.0];
    let t1 = sweep(&cfg(Scheme::Tas1, 2, 2, grid.clone())).unwrap();
    let t2 = sweep(&cfg(Scheme::Tas2, 2, 2, grid)).unwrap();
    assert!(t2[0].ci_high < t1[0].ci_low, "{:?} vs {:?}", t2[0], t1[0]);
}

#[test]
fn tas1_stays_below_its_bound() {
    let q = Constellation::qpsk();
    let m = PncMap::xor(4).unwrap();
    let grid = vec![0.0, 10.0, 20.0, 30.0];
    let pts = sweep(&cfg(Scheme::Tas1, 2, 2, grid)).unwrap();
    for p in &pts {
        let bound = tas1_ser_bound(SnrPoint::from_db(p.snr_db), 2, 2, &q, &m).unwrap().total();
        let (lo, _) = p.interval(Z99);
        assert!(lo <= bound, "{} dB: {:?} vs bound {bound}", p.snr_db, p);
    }
}

#[test]
fn single_antenna_schemes_coincide() {
    let grid = vec![10.0, 20.0];
    let a = sweep(&cfg(Scheme::Tas1, 1, 1, grid.clone())).unwrap();
    let b = sweep(&cfg(Scheme::Tas2, 1, 1, grid)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn very_high_snr_is_error_free() {
    let mut c = cfg(Scheme::Tas2, 2, 2, vec![60.0]);
    c.frames = 1000;
    c.max_errors = None;
    let p = run_point(&c, 0, 60.0).unwrap();
    assert_eq!(p.trials, 10_000);
    assert_eq!(p.errors, 0);
}
