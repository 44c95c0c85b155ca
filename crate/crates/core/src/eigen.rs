//! Closed-form eigenspinors of rotations and the eigenvalue-relation
//! residual. No numeric eigensolver sits on this path; a brute-force 2x2
//! solver exists only as a test oracle.


use crate::error::{Error, Result};
use crate::pauli::{c, exp_i, rotation_matrix, TwoSpinor, UnitAxis};

/// Spin-up eigenspinor of every rotation about `n`:
///
/// ```text
/// u+ = ( cos(rho/2) e^{-i phi/2} )
///      ( sin(rho/2) e^{+i phi/2} )
/// ```
///
/// Satisfies `(n.sigma) u+ = u+`, hence `R(n, theta) u+ = e^{i theta/2} u+`
/// for every angle.
pub fn eigenspinor_plus(n: &UnitAxis) -> TwoSpinor {
    let (rho, phi) = n.polar();
    let (hr, hp) = (0.5 * rho, 0.5 * phi);
    TwoSpinor::new(exp_i(-hp) * c(hr.cos(), 0.0), exp_i(hp) * c(hr.sin(), 0.0))
}

/// Spin-down partner with `(n.sigma) u- = -u-`, phase fixed as
/// `(-sin(rho/2) e^{-i phi/2}, cos(rho/2) e^{+i phi/2})` so output is
/// deterministic. Orthogonal to [`eigenspinor_plus`] for the same axis.
pub fn eigenspinor_minus(n: &UnitAxis) -> TwoSpinor {
    let (rho, phi) = n.polar();
    let (hr, hp) = (0.5 * rho, 0.5 * phi);
    TwoSpinor::new(exp_i(-hp) * c(-hr.sin(), 0.0), exp_i(hp) * c(hr.cos(), 0.0))
}

/// Residual of the eigenvalue relation on the plus branch:
/// `|R(n, theta) v - e^{i theta/2} v| / |v|`.
pub fn rotation_eigen_residual(n: &UnitAxis, theta: f64, v: &TwoSpinor) -> Result<f64> {
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let r = rotation_matrix(n, theta) * v - v * exp_i(theta / 2.0);
    Ok(r.norm() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{axis_dot_sigma, pauli, SpinMatrix};
    use proptest::prelude::*;

    fn arb_axis() -> impl Strategy<Value = UnitAxis> {
        (-1.0f64..1.0, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(z, phi)| {
            let s = (1.0 - z * z).sqrt();
            UnitAxis::new(s * phi.cos(), s * phi.sin(), z).unwrap()
        })
    }

    /// Brute-force eigenvector of a Hermitian 2x2 matrix for the eigenvalue
    /// closer to `lambda_hint`, via the characteristic quadratic. Test oracle
    /// only.
    fn brute_eigenvector(m: &SpinMatrix, lambda_hint: f64) -> TwoSpinor {
        let tr = m.trace().re;
        let det = m.determinant().re;
        let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
        let (l1, l2) = (tr / 2.0 + disc, tr / 2.0 - disc);
        let lambda = if (l1 - lambda_hint).abs() <= (l2 - lambda_hint).abs() { l1 } else { l2 };
        // Rows of (m - lambda I) annihilate the eigenvector; take the larger
        // one for stability.
        let r0 = (m[(0, 0)] - c(lambda, 0.0), m[(0, 1)]);
        let r1 = (m[(1, 0)], m[(1, 1)] - c(lambda, 0.0));
        let v = if r0.0.norm() + r0.1.norm() >= r1.0.norm() + r1.1.norm() {
            TwoSpinor::new(-r0.1, r0.0)
        } else {
            TwoSpinor::new(-r1.1, r1.0)
        };
        v / c(v.norm(), 0.0)
    }

    #[test]
    fn plus_at_north_pole() {
        let u = eigenspinor_plus(&UnitAxis::z());
        assert!((u[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(u[1].norm() < 1e-15);
    }

    #[test]
    fn plus_on_x_axis() {
        let u = eigenspinor_plus(&UnitAxis::x());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((u[1] - c(s, 0.0)).norm() < 1e-15);
        let r = pauli(1).unwrap() * u - u;
        assert!(r.norm() < 1e-15);
    }

    #[test]
    fn minus_at_north_pole_is_lower_basis_vector() {
        let u = eigenspinor_minus(&UnitAxis::z());
        assert!(u[0].norm() < 1e-15);
        assert!((u[1] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_vector_rejected() {
        let v = TwoSpinor::zeros();
        assert!(matches!(
            rotation_eigen_residual(&UnitAxis::z(), 1.0, &v),
            Err(Error::ZeroSpinor)
        ));
    }

    #[test]
    fn identity_rotation_has_zero_residual_for_any_vector() {
        let v = TwoSpinor::new(c(0.3, -1.1), c(2.0, 0.7));
        let n = UnitAxis::new(0.5, -0.5, 0.7).unwrap();
        assert_eq!(rotation_eigen_residual(&n, 0.0, &v).unwrap(), 0.0);
    }

    #[test]
    fn wrong_branch_residual_is_two_sin_half_theta() {
        let n = UnitAxis::new(0.2, 0.3, -0.9).unwrap();
        let um = eigenspinor_minus(&n);
        for theta in [0.3, 1.0, 2.9, -1.7] {
            let r = rotation_eigen_residual(&n, theta, &um).unwrap();
            let expected = 2.0 * (theta / 2.0).sin().abs();
            assert!((r - expected).abs() < 1e-12, "theta {theta}: {r} vs {expected}");
        }
    }

    #[test]
    fn matches_brute_force_eigensolver() {
        let n = UnitAxis::new(-0.4, 0.8, 0.45).unwrap();
        let ns = axis_dot_sigma(&n);
        let up = eigenspinor_plus(&n);
        let oracle = brute_eigenvector(&ns, 1.0);
        // Same ray: overlap modulus equals the product of norms.
        let overlap = oracle.dotc(&up).norm();
        assert!((overlap - up.norm()).abs() < 1e-12);
        let um = eigenspinor_minus(&n);
        let oracle_m = brute_eigenvector(&ns, -1.0);
        let overlap_m = oracle_m.dotc(&um).norm();
        assert!((overlap_m - um.norm()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn axis_contraction_fixes_plus_spinor(n in arb_axis()) {
            let up = eigenspinor_plus(&n);
            prop_assert!((axis_dot_sigma(&n) * up - up).norm() <= 1e-12);
        }

        #[test]
        fn minus_spinor_flips_sign(n in arb_axis()) {
            let um = eigenspinor_minus(&n);
            prop_assert!((axis_dot_sigma(&n) * um + um).norm() <= 1e-12);
        }

        #[test]
        fn branches_are_orthonormal(n in arb_axis()) {
            let up = eigenspinor_plus(&n);
            let um = eigenspinor_minus(&n);
            prop_assert!(up.dotc(&um).norm() <= 1e-12);
            prop_assert!((up.norm() - 1.0).abs() <= 1e-12);
            prop_assert!((um.norm() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn eigen_relation_holds_for_all_angles(n in arb_axis(), theta in -7.0f64..7.0) {
            // The eigenspinor depends only on the axis; one construction
            // verifies against every angle.
            let up = eigenspinor_plus(&n);
            prop_assert!(rotation_eigen_residual(&n, theta, &up).unwrap() <= 1e-10);
            let um = eigenspinor_minus(&n);
            let r = rotation_matrix(&n, theta) * um - um * exp_i(-theta / 2.0);
            prop_assert!(r.norm() <= 1e-10);
        }

        #[test]
        fn branches_span_all_two_spinors(n in arb_axis(),
                                         a_re in -2.0f64..2.0, a_im in -2.0f64..2.0,
                                         b_re in -2.0f64..2.0, b_im in -2.0f64..2.0) {
            let v = TwoSpinor::new(c(a_re, a_im), c(b_re, b_im));
            let up = eigenspinor_plus(&n);
            let um = eigenspinor_minus(&n);
            let alpha = up.dotc(&v);
            let beta = um.dotc(&v);
            let rebuilt = up * alpha + um * beta;
            prop_assert!((rebuilt - v).norm() <= 1e-12);
        }
    }
}
