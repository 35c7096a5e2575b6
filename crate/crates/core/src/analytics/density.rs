use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::{Error, Rational, Result};

/// Largest `n` served by [`exact_density`].
pub const EXACT_MAX_N: u64 = 512;

/// `d_n = 4^{-n} C(2n + 1, n)`: the probability that a fixed site is occupied
/// after `n` steps of model C started from the full configuration.
pub fn exact_density(n: u64) -> Result<Rational> {
    if n > EXACT_MAX_N {
        return Err(Error::OutsideExactRegime { n, max: EXACT_MAX_N });
    }
    let num = binomial(BigInt::from(2 * n + 1), BigInt::from(n));
    let den = BigInt::one() << (2 * n) as usize;
    Ok(Rational::new(num, den))
}

/// Below this the central binomial ratio is a direct product.
const PRODUCT_CUTOFF: u64 = 1024;

fn central_product(n: u64) -> f64 {
    (1..=n).map(|k| (2 * k - 1) as f64 / (2 * k) as f64).product()
}

/// `ln(C(2n, n) / 4^n) = ln Γ(n + 1/2) - ln Γ(n + 1) - ln √π`, for `n > PRODUCT_CUTOFF`.
fn ln_central_ratio(n: u64) -> f64 {
    // Difference of the two Stirling series; the odd Bernoulli terms cancel.
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (-1.0 / 8.0 + inv2 * (1.0 / 192.0 + inv2 * (-1.0 / 640.0 + inv2 * (17.0 / 14336.0))));
    -0.5 * (std::f64::consts::PI * x).ln() + series
}

/// `d_n` in floating point for any `n`.
pub fn density_log(n: u64) -> f64 {
    let x = n as f64;
    let central = if n <= PRODUCT_CUTOFF {
        central_product(n)
    } else {
        ln_central_ratio(n).exp()
    };
    central * (2.0 * x + 1.0) / (x + 1.0)
}

/// `d_n √(πn) / 2`, which tends to 1.
pub fn asymptotic_ratio(n: u64) -> f64 {
    density_log(n) * (std::f64::consts::PI * n as f64).sqrt() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn small_values() {
        let expect = [(1, 1), (3, 4), (5, 8), (35, 64), (63, 128), (231, 512)];
        for (n, &(a, b)) in expect.iter().enumerate() {
            assert_eq!(exact_density(n as u64).unwrap(), Rational::ratio(a, b), "n = {n}");
        }
    }

    #[test]
    fn exact_regime_boundary() {
        assert!(exact_density(512).is_ok());
        assert!(matches!(exact_density(513), Err(Error::OutsideExactRegime { .. })));
    }

    #[test]
    fn log_space_matches_exact() {
        for n in 0..=EXACT_MAX_N {
            let exact = exact_density(n).unwrap().to_f64();
            let approx = density_log(n);
            assert!(((approx - exact) / exact).abs() < 1e-12, "n = {n}: {approx} vs {exact}");
        }
        assert!((density_log(5) - 0.451171875).abs() < 1e-15);
        assert_eq!(density_log(1), 0.75);
        assert_eq!(density_log(0), 1.0);
    }

    #[test]
    fn series_and_product_agree_at_the_switch() {
        let n = PRODUCT_CUTOFF + 1;
        assert!((ln_central_ratio(n) - central_product(n).ln()).abs() < 1e-12);
    }

    #[test]
    fn asymptotics() {
        assert!((asymptotic_ratio(10_000) - 1.0).abs() < 1e-3);
        assert!((asymptotic_ratio(1_000_000) - 1.0).abs() < 1e-5);
        let mut prev = asymptotic_ratio(10);
        for n in 11..=10_000 {
            let r = asymptotic_ratio(n);
            assert!(r > prev && r < 1.0, "n = {n}");
            prev = r;
        }
    }
}
