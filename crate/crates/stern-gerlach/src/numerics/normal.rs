//! Standard-normal distribution functions built on a self-contained erf/erfc.
//!
//! erf uses the Maclaurin series for |x| <= 3 and the Stieltjes continued
//! fraction for the tail, so the lower CDF tail keeps relative accuracy.
//! The quantile starts from Acklam's rational approximation and is polished
//! with two Halley steps against `norm_cdf`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const SERIES_CUTOFF: f64 = 3.0;

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_infinite() {
        return x.signum();
    }
    let ax = x.abs();
    if ax < SERIES_CUTOFF {
        erf_series(x)
    } else {
        let tail = erfc_cf(ax);
        let mag = 1.0 - tail;
        if x > 0.0 {
            mag
        } else {
            -mag
        }
    }
}

/// Complementary error function, relatively accurate for large positive x.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_infinite() {
        return 1.0 - x.signum();
    }
    if x >= SERIES_CUTOFF {
        erfc_cf(x)
    } else if x > -SERIES_CUTOFF {
        1.0 - erf_series(x)
    } else {
        2.0 - erfc_cf(-x)
    }
}

/// erf via its alternating Maclaurin series; converges fast for |x| <= 3.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    loop {
        let nf = f64::from(n);
        // term_{n+1}/term_n for x^{2n+1}/(n!(2n+1))
        term *= -x2 * (2.0 * nf + 1.0) / ((nf + 1.0) * (2.0 * nf + 3.0));
        sum += term;
        n += 1;
        if term.abs() <= sum.abs() * 1e-17 || n > 200 {
            break;
        }
    }
    2.0 / SQRT_PI * sum
}

/// erfc for x >= 3 via the continued fraction
/// sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))))
/// evaluated with the modified Lentz algorithm.
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..200 {
        let a = f64::from(n) / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * f)
}

/// Standard normal probability density.
pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal cumulative distribution function.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal quantile function (inverse CDF).
///
/// Returns -inf at 0 and +inf at 1.
pub fn norm_ppf(q: f64) -> f64 {
    assert!((0.0..=1.0).contains(&q), "quantile argument {q} outside [0,1]");
    if q == 0.0 {
        return f64::NEG_INFINITY;
    }
    if q == 1.0 {
        return f64::INFINITY;
    }
    let mut x = acklam(q);
    // Halley refinement: e = Phi(x) - q, u = e / phi(x).
    for _ in 0..2 {
        let e = norm_cdf(x) - q;
        let u = e / norm_pdf(x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    x
}

/// Acklam's rational approximation to the normal quantile (~1e-9 relative).
fn acklam(q: f64) -> f64 {
    const A: [f64; 6] = [
        -39.696_830_286_653_8,
        220.946_098_424_521,
        -275.928_510_446_969,
        138.357_751_867_269,
        -30.664_798_066_147_2,
        2.506_628_277_459_24,
    ];
    const B: [f64; 5] = [
        -54.476_098_798_224_1,
        161.585_836_858_041,
        -155.698_979_859_887,
        66.801_311_887_719_7,
        -13.280_681_552_885_7,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_29e-3,
        -0.322_396_458_041_136,
        -2.400_758_277_161_84,
        -2.549_732_539_343_73,
        4.374_664_141_464_97,
        2.938_163_982_698_78,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_46e-3,
        0.322_467_129_070_04,
        2.445_134_137_143,
        3.754_408_661_907_42,
    ];
    const Q_LOW: f64 = 0.02425;

    if q < Q_LOW {
        let r = (-2.0 * q.ln()).sqrt();
        (((((C[0] * r + C[1]) * r + C[2]) * r + C[3]) * r + C[4]) * r + C[5])
            / ((((D[0] * r + D[1]) * r + D[2]) * r + D[3]) * r + 1.0)
    } else if q <= 1.0 - Q_LOW {
        let r = q - 0.5;
        let s = r * r;
        (((((A[0] * s + A[1]) * s + A[2]) * s + A[3]) * s + A[4]) * s + A[5]) * r
            / (((((B[0] * s + B[1]) * s + B[2]) * s + B[3]) * s + B[4]) * s + 1.0)
    } else {
        let r = (-2.0 * (1.0 - q).ln()).sqrt();
        -(((((C[0] * r + C[1]) * r + C[2]) * r + C[3]) * r + C[4]) * r + C[5])
            / ((((D[0] * r + D[1]) * r + D[2]) * r + D[3]) * r + 1.0)
    }
}
