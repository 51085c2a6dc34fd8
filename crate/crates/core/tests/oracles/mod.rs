//! Independent numerical oracles shared by the integration tests: adaptive
//! Gauss-Kronrod quadrature and direct-definition reference functions.
#![allow(dead_code, clippy::excessive_precision)]

use pnc_tas::Complex;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One G7-K15 panel: (Kronrod estimate, |Kronrod - Gauss|).
fn gk15(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive G7-K15 quadrature over the panels delimited by
/// `breaks` (sorted). Refines the worst panel until the summed error
/// estimate is below `max(abs_tol, rel_tol |I|)`.
pub fn integrate(f: &mut dyn FnMut(f64) -> f64, breaks: &[f64], abs_tol: f64, rel_tol: f64) -> f64 {
    let mut panels: Vec<(f64, f64, f64, f64)> = breaks
        .windows(2)
        .map(|w| {
            let (v, e) = gk15(f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    for _ in 0..5000 {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (a, b, _, _) = panels.swap_remove(worst);
        let m = 0.5 * (a + b);
        let (v1, e1) = gk15(f, a, m);
        let (v2, e2) = gk15(f, m, b);
        panels.push((a, m, v1, e1));
        panels.push((m, b, v2, e2));
    }
    panels.iter().map(|p| p.2).sum()
}

/// Breakpoints on `[0, upper]` that resolve features near zero at every scale.
pub fn radial_breaks(upper: f64) -> Vec<f64> {
    let mut v = vec![0.0];
    let mut x = 1e-4;
    while x < upper {
        v.push(x);
        x *= 4.0;
    }
    v.push(upper);
    v
}

/// Density of the largest of `n` i.i.d. unit-power Rayleigh amplitudes,
/// written directly as `n F^(n-1) f`.
pub fn max_rayleigh_density(r: f64, n: usize) -> f64 {
    let e = (-r * r).exp();
    n as f64 * (1.0 - e).powi(n as i32 - 1) * 2.0 * r * e
}

pub fn max_rayleigh_cdf(r: f64, n: usize) -> f64 {
    (1.0 - (-r * r).exp()).powi(n as i32)
}

/// `E[exp(-rho/c |h_A dx_A + h_B dx_B|^2)]` over independent max-of-N
/// Rayleigh amplitudes and a uniform phase difference, by nested 3-D
/// quadrature over `(|h_A|, |h_B|, theta)`.
pub fn upsilon_by_quadrature(rho: f64, c: f64, n_a: usize, n_b: usize, dx_a: Complex, dx_b: Complex, rel_tol: f64) -> f64 {
    let (da, db) = (dx_a.norm(), dx_b.norm());
    let breaks = radial_breaks(7.0);
    let mut outer = |ra: f64| {
        let wa = max_rayleigh_density(ra, n_a);
        if wa == 0.0 {
            return 0.0;
        }
        let mut middle = |rb: f64| {
            let wb = max_rayleigh_density(rb, n_b);
            if wb == 0.0 {
                return 0.0;
            }
            let (u, v) = (ra * da, rb * db);
            // the integrand is even in theta, so integrate over [0, pi]
            let mut inner = |theta: f64| (-rho / c * (u * u + v * v + 2.0 * u * v * theta.cos())).exp();
            let avg = integrate(&mut inner, &[0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI], 0.0, rel_tol)
                / std::f64::consts::PI;
            wb * avg
        };
        wa * integrate(&mut middle, &breaks, 0.0, rel_tol)
    };
    integrate(&mut outer, &breaks, 0.0, rel_tol)
}

/// PSK point `e^{i(2s+1)pi/M}` written out independently of the library.
pub fn psk_point(s: usize, m: usize) -> Complex {
    Complex::from_polar(1.0, (2 * s + 1) as f64 * std::f64::consts::PI / m as f64)
}
