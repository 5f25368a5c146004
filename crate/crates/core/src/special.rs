//! Tail probabilities used by the statistical tests.
//!
//! `erfc` is the FreeBSD msun rational approximation (via `libm`, error
//! below 1 ulp, so well under 1e-12 absolute). The regularized incomplete
//! gamma functions come from `statrs` (Cephes series and continued
//! fractions).

use statrs::function::gamma;

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// `P(|Z| >= |z|)` for a standard normal `Z`.
pub fn normal_two_sided(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    erfc(z.abs() / std::f64::consts::SQRT_2).min(1.0)
}

/// Upper tail `P(X >= x)` of a chi-square distribution with `df` degrees of
/// freedom.
pub fn chi_square_sf(x: f64, df: f64) -> f64 {
    assert!(df > 0.0, "degrees of freedom must be positive");
    if x <= 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    gamma::gamma_ur(df / 2.0, x / 2.0).clamp(0.0, 1.0)
}

/// `P(Y >= y)` for `Y ~ Poisson(lambda)`.
pub fn poisson_sf_inclusive(y: u64, lambda: f64) -> f64 {
    assert!(lambda > 0.0, "poisson mean must be positive");
    if y == 0 {
        return 1.0;
    }
    gamma::gamma_lr(y as f64, lambda).clamp(0.0, 1.0)
}

/// Asymptotic Kolmogorov survival function with Stephens' finite-sample
/// correction: `P(D_n >= d)` for the one-sample two-sided KS statistic.
pub fn kolmogorov_sf(n: usize, d: f64) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    let sqrt_n = (n as f64).sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=200 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-18 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
