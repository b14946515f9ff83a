//! Small numerical kernels shared by the analytic evaluators: compensated
//! summation, bisection, fixed Gauss-Legendre rules, and an adaptive
//! Gauss-Kronrod integrator with caller-supplied break points.

use crate::error::{Error, Result};

/// Kahan-Babuska compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Bisection on `[lo, hi]`; requires a sign change. Returns the midpoint of
/// the final bracket once its width falls below `xtol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64, what: &str) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootFinding(format!(
            "{what}: no sign change on [{lo}, {hi}] (f(lo) = {flo:e}, f(hi) = {fhi:e})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= xtol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// Fixed 16-point Gauss-Legendre quadrature of `f` over `[a, b]`.
pub fn gauss_legendre_16<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = KahanSum::new();
    for i in 0..8 {
        let dx = h * GL16_X[i];
        acc.add(GL16_W[i] * (f(c - dx) + f(c + dx)));
    }
    h * acc.value()
}

// 15-point Kronrod extension of the 7-point Gauss rule (standard QUADPACK
// constants).
const GK_XK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const GK_WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = GK_WK[7] * fc;
    let mut gauss = GK_WG[3] * fc;
    for i in 0..7 {
        let dx = h * GK_XK[i];
        let fsum = f(c - dx) + f(c + dx);
        kron += GK_WK[i] * fsum;
        if i % 2 == 1 {
            gauss += GK_WG[i / 2] * fsum;
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` to absolute
/// tolerance `tol`. `breaks` lists interior points where the integrand has
/// kinks; the initial partition is forced to split there.
pub fn adaptive_gk<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64, what: &str) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let mut edges: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    edges.push(a);
    for &x in breaks {
        if x > a && x < b {
            edges.push(x);
        }
    }
    edges.push(b);
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup();

    // (neg_error, lo, hi, estimate, error) kept as a worst-first vector.
    let mut intervals: Vec<(f64, f64, f64, f64)> = Vec::new();
    for w in edges.windows(2) {
        let (est, err) = gk15(&f, w[0], w[1]);
        intervals.push((w[0], w[1], est, err));
    }

    const MAX_INTERVALS: usize = 20_000;
    loop {
        let total_err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if total_err <= tol {
            let mut acc = KahanSum::new();
            for iv in &intervals {
                acc.add(iv.2);
            }
            return Ok(acc.value());
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "{what}: {} intervals, residual error {total_err:e} > tol {tol:e}",
                intervals.len()
            )));
        }
        let (worst_idx, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (lo, hi, _, err) = intervals.swap_remove(worst_idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Quadrature(format!(
                "{what}: interval [{lo}, {hi}] cannot be split further (error {err:e}, tol {tol:e})"
            )));
        }
        let (e1, r1) = gk15(&f, lo, mid);
        let (e2, r2) = gk15(&f, mid, hi);
        intervals.push((lo, mid, e1, r1));
        intervals.push((mid, hi, e2, r2));
    }
}

/// log(k!) for arbitrary k via the log-gamma function.
pub fn ln_factorial(k: usize) -> f64 {
    statrs::function::gamma::ln_gamma(k as f64 + 1.0)
}

/// P(Poisson(m) >= k), evaluated in log space; used for Erlang tail bounds.
pub fn poisson_upper_tail(m: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if m <= 0.0 {
        return 0.0;
    }
    // Sum the dominant terms of sum_{i>=k} e^-m m^i / i!. The ratio m/(i+1)
    // < 1 once i > m, so start at k and stop when terms stop mattering.
    let ln_first = -m + (k as f64) * m.ln() - ln_factorial(k);
    let mut term = ln_first.exp();
    let mut total = 0.0;
    let mut i = k;
    loop {
        total += term;
        i += 1;
        term *= m / i as f64;
        if term < total * 1e-18 + 1e-300 || i > k + 10_000 {
            break;
        }
    }
    total.min(1.0)
}

/// P(Poisson(m) <= k) via the complement of the upper tail.
pub fn poisson_lower_tail(m: f64, k: usize) -> f64 {
    if m <= 0.0 {
        return 1.0;
    }
    let mut total = 0.0;
    let mut term = (-m).exp();
    if term == 0.0 {
        // Underflow: accumulate in log space from the mode downward instead.
        let mut lt = -m;
        for i in 0..=k {
            if i > 0 {
                lt += m.ln() - (i as f64).ln();
            }
            total += lt.exp();
        }
        return total.min(1.0);
    }
    for i in 0..=k {
        if i > 0 {
            term *= m / i as f64;
        }
        total += term;
    }
    total.min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14, "sqrt2").unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn bisect_reports_missing_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, "none").is_err());
    }

    #[test]
    fn gl16_integrates_polynomials_exactly() {
        // Degree up to 31 is exact for 16-point Gauss-Legendre.
        let val = gauss_legendre_16(|x| x.powi(10), 0.0, 1.0);
        assert!((val - 1.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_gk_handles_kinks() {
        // |x - 0.3| over [0, 1]: exact 0.3^2/2 + 0.7^2/2 = 0.29.
        let v = adaptive_gk(|x| (x - 0.3f64).abs(), 0.0, 1.0, &[0.3], 1e-12, "abs").unwrap();
        assert!((v - 0.29).abs() < 1e-12);
        // Without the break the adaptive refinement must still get there.
        let v2 = adaptive_gk(|x| (x - 0.3f64).abs(), 0.0, 1.0, &[], 1e-10, "abs2").unwrap();
        assert!((v2 - 0.29).abs() < 1e-9);
    }

    #[test]
    fn gk_gaussian_integral() {
        let v = adaptive_gk(|x| (-x * x / 2.0).exp(), -8.0, 8.0, &[], 1e-12, "gauss").unwrap();
        assert!((v - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn poisson_tails_complement() {
        for &(m, k) in &[(3.0, 5usize), (25.0, 20), (100.0, 130)] {
            let up = poisson_upper_tail(m, k + 1);
            let lo = poisson_lower_tail(m, k);
            assert!((up + lo - 1.0).abs() < 1e-12, "m={m} k={k}: {up} + {lo}");
        }
    }

    #[test]
    fn kahan_recovers_small_terms() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-18);
        }
        assert!((s.value() - (1.0 + 1e-15)).abs() < 1e-17);
    }
}
