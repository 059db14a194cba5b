//! Gindikin Gamma function of a symmetric cone and the scalar (log-)Gamma.

use crate::error::{ConeError, Result};
use num_complex::Complex64;

/// Lanczos coefficients (g = 7, n = 9).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Gamma(z) for complex z (principal branch), Lanczos approximation
/// with reflection for Re z < 1/2.
pub fn lgamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = std::f64::consts::PI;
        let s = (Complex64::new(pi, 0.0) * z).sin();
        Complex64::new(pi, 0.0).ln() - s.ln() - lgamma_complex(Complex64::new(1.0, 0.0) - z)
    } else {
        let zm1 = z - 1.0;
        let mut acc = Complex64::new(LANCZOS[0], 0.0);
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += Complex64::new(*c, 0.0) / (zm1 + i as f64);
        }
        let t = zm1 + LANCZOS_G + 0.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (zm1 + 0.5) * t.ln() - t + acc.ln()
    }
}

pub fn gamma_real(x: f64) -> f64 {
    gamma_complex(Complex64::new(x, 0.0)).re
}

pub fn gamma_complex(z: Complex64) -> Complex64 {
    lgamma_complex(z).exp()
}

/// Gindikin Gamma of a rank-k cone with Peirce multiplicity d:
///   Gamma_{k,d}(lambda) = (2 pi)^{k(k-1)d/4} prod_{i=1..k} Gamma(lambda - (i-1)d/2).
pub fn gindikin_gamma(k: usize, d: f64, lambda: Complex64) -> Result<Complex64> {
    let mut log = Complex64::new(
        (k * (k - 1)) as f64 * d / 4.0 * (2.0 * std::f64::consts::PI).ln(),
        0.0,
    );
    for i in 1..=k {
        let arg = lambda - (i - 1) as f64 * d / 2.0;
        // poles of Gamma at nonpositive integers
        if arg.im == 0.0 && arg.re <= 1e-12 && (arg.re - arg.re.round()).abs() < 1e-9 {
            return Err(ConeError::GammaPole(arg.re));
        }
        log += lgamma_complex(arg);
    }
    Ok(log.exp())
}

pub fn gindikin_gamma_real(k: usize, d: f64, lambda: f64) -> Result<f64> {
    Ok(gindikin_gamma(k, d, Complex64::new(lambda, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_matches_classical_values() {
        assert!((gamma_real(1.0) - 1.0).abs() < 1e-12);
        assert!((gamma_real(5.0) - 24.0).abs() < 1e-10);
        assert!((gamma_real(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        // reflection region
        assert!((gamma_real(-0.5) + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn gindikin_reduces_to_gamma_at_rank_one() {
        for lam in [0.7, 1.3, 2.5] {
            assert!(
                (gindikin_gamma_real(1, 2.0, lam).unwrap() - gamma_real(lam)).abs()
                    < 1e-12 * gamma_real(lam)
            );
        }
    }

    #[test]
    fn gindikin_rank_two_product() {
        // Gamma_{2,1}(lambda) = sqrt(2 pi) Gamma(lambda) Gamma(lambda - 1/2)
        let lam = 2.0;
        let expect = (2.0 * std::f64::consts::PI).sqrt() * gamma_real(lam) * gamma_real(lam - 0.5);
        let got = gindikin_gamma_real(2, 1.0, lam).unwrap();
        assert!((got - expect).abs() < 1e-10 * expect.abs());
        // Gamma_{2,1}(2) = sqrt(2 pi) * 1 * Gamma(3/2)
        let expect2 = (2.0 * std::f64::consts::PI).sqrt() * (std::f64::consts::PI.sqrt() / 2.0);
        assert!((got - expect2).abs() < 1e-10 * expect2);
    }

    #[test]
    fn gindikin_pole_detection() {
        assert!(gindikin_gamma_real(2, 1.0, 0.5).is_err()); // lambda - d/2 = 0
        assert!(gindikin_gamma_real(1, 1.0, -3.0).is_err());
        assert!(gindikin_gamma_real(1, 1.0, -2.5).is_ok());
    }

    #[test]
    fn lgamma_complex_conjugate_symmetry() {
        let z = Complex64::new(1.7, 0.9);
        let a = lgamma_complex(z);
        let b = lgamma_complex(z.conj()).conj();
        assert!((a - b).norm() < 1e-12);
    }
}
