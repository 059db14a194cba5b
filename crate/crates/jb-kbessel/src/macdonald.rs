//! Classical Macdonald function K_nu, used as the rank-one oracle.

/// K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt, z > 0, via the
/// double-exponential substitution t = sinh(u).
pub fn macdonald_k(nu: f64, z: f64) -> f64 {
    assert!(z > 0.0, "Macdonald K requires z > 0");
    let n = 201;
    let u_max = 3.8;
    let h = 2.0 * u_max / (n as f64 - 1.0);
    let mut acc = 0.0;
    for j in 0..n {
        let u = -u_max + h * j as f64;
        let t = u.sinh();
        let g = (-z * t.cosh()).exp() * (nu * t).cosh() * u.cosh();
        acc += g;
    }
    0.5 * acc * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_closed_forms() {
        // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
        for z in [0.5, 1.0, 2.0, 4.0] {
            let expect = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp();
            assert!(
                (macdonald_k(0.5, z) - expect).abs() < 1e-13 * expect,
                "K_1/2({z})"
            );
        }
        // K_{3/2}(z) = sqrt(pi/(2z)) e^{-z} (1 + 1/z)
        let z = 1.5;
        let expect = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() * (1.0 + 1.0 / z);
        assert!((macdonald_k(1.5, z) - expect).abs() < 1e-13 * expect);
    }

    #[test]
    fn symmetry_in_order() {
        // K_{-nu} = K_nu
        let (nu, z) = (0.3, 1.2);
        assert!((macdonald_k(nu, z) - macdonald_k(-nu, z)).abs() < 1e-14);
    }

    #[test]
    fn reference_value_k1_of_2() {
        assert!((macdonald_k(1.0, 2.0) - 0.13986588181652242) < 1e-14);
    }
}
