//! Adaptive Gauss-Kronrod quadrature for piecewise-smooth integrands.
//!
//! A 15-point Kronrod rule with the embedded 7-point Gauss rule is applied
//! per interval and bisected until the error estimate drops below the
//! requested absolute tolerance. Known kink locations are passed as
//! mandatory breakpoints so every sub-interval is smooth.

use crate::{Error, Result};

// Nodes of the 15-point Kronrod rule on [-1, 1] (non-negative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

// Kronrod weights matching XGK.
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

// Weights of the embedded 7-point Gauss rule (odd Kronrod nodes + center).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

const MAX_DEPTH: u32 = 48;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f_sum = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * f_sum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * f_sum;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half)
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, depth: u32) -> Result<f64> {
    let (value, err) = gk15(f, a, b);
    if err <= abs_tol {
        return Ok(value);
    }
    let mid = 0.5 * (a + b);
    if depth >= MAX_DEPTH || mid <= a || mid >= b {
        return Err(Error::Quadrature { lo: a, hi: b, estimate: err });
    }
    let half_tol = 0.5 * abs_tol;
    Ok(adapt(f, a, mid, half_tol, depth + 1)? + adapt(f, mid, b, half_tol, depth + 1)?)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || b < a {
        return Err(Error::InvalidInput(format!(
            "integration interval [{a}, {b}] must be finite and ordered"
        )));
    }
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidInput(format!("quadrature tolerance must be positive, got {abs_tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    adapt(f, a, b, abs_tol, 0)
}

/// Integrate `f` over `[a, b]`, forcing sub-interval boundaries at every
/// breakpoint strictly inside the interval. Each sub-interval is integrated
/// to `abs_tol`.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    abs_tol: f64,
) -> Result<f64> {
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut lo = a;
    for cut in cuts {
        total += integrate(f, lo, cut, abs_tol)?;
        lo = cut;
    }
    total += integrate(f, lo, b, abs_tol)?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_is_exact() {
        let f = |x: f64| 3.0 * x * x;
        assert_abs_diff_eq!(integrate(&f, 0.0, 2.0, 1e-12).unwrap(), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn oscillatory_integrand_converges() {
        let f = |x: f64| (10.0 * x).sin();
        let exact = (1.0 - (10.0f64).cos()) / 10.0;
        assert_abs_diff_eq!(integrate(&f, 0.0, 1.0, 1e-12).unwrap(), exact, epsilon = 1e-11);
    }

    #[test]
    fn kink_handled_via_breakpoint() {
        let f = |x: f64| (x - 0.3).abs();
        let exact = 0.5 * (0.3f64.powi(2) + 0.7f64.powi(2));
        let got = integrate_with_breakpoints(&f, 0.0, 1.0, &[0.3], 1e-13).unwrap();
        assert_abs_diff_eq!(got, exact, epsilon = 1e-12);
    }

    #[test]
    fn breakpoints_outside_interval_are_ignored() {
        let f = |x: f64| x;
        let got = integrate_with_breakpoints(&f, 0.0, 1.0, &[-1.0, 0.0, 1.0, 5.0], 1e-12).unwrap();
        assert_abs_diff_eq!(got, 0.5, epsilon = 1e-13);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate(&|x: f64| x, 2.0, 2.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn reversed_interval_is_rejected() {
        assert!(integrate(&|x: f64| x, 1.0, 0.0, 1e-10).is_err());
    }

    #[test]
    fn non_integrable_spike_reports_the_panel() {
        // 1/sqrt(|x - 0.5|) exhausts the subdivision depth near the spike.
        let f = |x: f64| 1.0 / (x - 0.5).abs().sqrt().max(1e-300);
        match integrate(&f, 0.0, 1.0, 1e-14) {
            Err(Error::Quadrature { lo, hi, estimate }) => {
                assert!(0.0 <= lo && lo < hi && hi <= 1.0);
                assert!(hi - lo < 1e-6, "offending panel should be deep: [{lo}, {hi}]");
                assert!(estimate > 0.0);
            }
            other => panic!("expected quadrature failure, got {other:?}"),
        }
    }
}
