//! Small quadrature toolkit: adaptive Simpson, Gauss-Legendre nodes,
//! and trapezoid integration over sampled profiles.

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // Stop at the requested tolerance, exhausted depth, or the rounding
    // floor of the panel sums (an absolute tol below it is unreachable).
    let noise_floor = 1e-15 * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= 15.0 * tol || delta.abs() <= noise_floor {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, via Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_with_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// Legendre polynomial P_n(x) and its derivative via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Trapezoid rule over sampled values (arbitrary monotone grid).
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_gaussian_mass() {
        let f = |x: f64| (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        let got = adaptive_simpson(&f, -9.0, 9.0, 1e-12);
        assert!((got - 1.0).abs() < 1e-10, "got {got}");
    }

    #[test]
    fn simpson_polynomial_exact() {
        let f = |x: f64| 3.0 * x * x;
        assert!((adaptive_simpson(&f, 0.0, 2.0, 1e-14) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_cos() {
        // GL-16 on [-1,1]: integral of cos = 2 sin(1).
        let (x, w) = gauss_legendre(16);
        let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.cos()).sum();
        assert!((got - 2.0 * 1.0f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for n in [2, 5, 31, 64] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-12, "n={n}: {s}");
        }
    }

    #[test]
    fn trapezoid_linear_exact() {
        let xs: Vec<f64> = (0..=10).map(|i| f64::from(i) * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        assert!((trapezoid(&xs, &ys) - 1.0).abs() < 1e-14);
    }
}
