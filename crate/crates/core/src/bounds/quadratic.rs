use serde::Serialize;

/// Minimiser of the quadratic-certificate bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadraticOptimum {
    pub t: f64,
    pub t_squared: f64,
    pub x: f64,
    /// `3(3 + x² + 6t² + 3/(2t²))/(x + 1 − t²)` at the optimum.
    pub bound: f64,
    /// `6x`, equal to `bound` at the stationary point.
    pub six_x: f64,
    /// `2(∛(98 + 18√17) + ∛(98 − 18√17) − 1)`.
    pub cardano: f64,
    /// `x³ + x² − 5x − 9` at the returned `x`.
    pub cubic_residual: f64,
    /// Independent nested golden-section minimum.
    pub golden_section_bound: f64,
}

const ROOT_TOL: f64 = 1e-12;

/// `F_r(t², x)`; infinite outside `x > t² − 1`, `t² > 0`.
pub fn quadratic_bound(t_squared: f64, x: f64) -> f64 {
    let den = x + 1.0 - t_squared;
    if t_squared <= 0.0 || den <= 0.0 {
        return f64::INFINITY;
    }
    3.0 * (3.0 + x * x + 6.0 * t_squared + 3.0 / (2.0 * t_squared)) / den
}

fn cubic(x: f64) -> f64 {
    ((x + 1.0) * x - 5.0) * x - 9.0
}

/// Newton's method safeguarded by bisection on `[2, 3]`, where the cubic
/// changes sign.
fn cubic_root() -> f64 {
    let (mut lo, mut hi) = (2.0_f64, 3.0_f64);
    let mut x = 2.5;
    for _ in 0..200 {
        let f = cubic(x);
        if f.abs() < ROOT_TOL * 1e-3 {
            break;
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = x - f / ((3.0 * x + 2.0) * x - 5.0);
        x = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        if hi - lo < 1e-15 {
            break;
        }
    }
    x
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let m = 0.5 * (a + b);
    (m, f(m))
}

/// Minimise the quadratic certificate's bound over `t` and `x`.
pub fn optimize_quadratic() -> QuadraticOptimum {
    let x = cubic_root();
    let t_squared = (15.0 + 9.0 * x) / (((2.0 * x + 10.0) * x + 6.0) * x - 6.0);
    let s17 = 17f64.sqrt();
    let cardano = 2.0 * ((98.0 + 18.0 * s17).cbrt() + (98.0 - 18.0 * s17).cbrt() - 1.0);
    let inner = |x: f64| golden(|s| quadratic_bound(s, x), 1e-6, (x + 1.0).min(10.0), 200).1;
    let (_, golden_section_bound) = golden(inner, 0.0, 6.0, 200);
    QuadraticOptimum {
        t: t_squared.sqrt(),
        t_squared,
        x,
        bound: quadratic_bound(t_squared, x),
        six_x: 6.0 * x,
        cardano,
        cubic_residual: cubic(x),
        golden_section_bound,
    }
}
