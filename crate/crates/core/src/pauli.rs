//! Dense complex 2x2/4x4 matrix algebra: the Pauli set `sigma^1..sigma^4`,
//! the gamma matrices in their chiral block form, and the closed-form
//! rotation exponential together with its series oracle.
//!
//! Index conventions follow the source material: spatial indices run over
//! `{1,2,3}` and `4` is the time-like index. There is no 0-based relabeling
//! at the API surface.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// 2x2 complex matrix housing the `sigma` constants and rotation factors.
pub type SpinMatrix = Matrix2<Complex64>;
/// 4x4 complex matrix housing the `gamma` constants and momentum operators.
pub type DiracMatrix = Matrix4<Complex64>;
/// Two-component complex spinor.
pub type TwoSpinor = Vector2<Complex64>;
/// Four-component complex column (stacked pair of two-spinors).
pub type FourSpinor = Vector4<Complex64>;

/// Default absolute comparison tolerance (entrywise max-norm).
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Smallest vector norm accepted by [`UnitAxis::new`]. Anything shorter is
/// rejected rather than silently normalized.
pub const MIN_AXIS_NORM: f64 = 1e-8;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{ix}` as a complex scalar.
#[inline]
pub fn exp_i(x: f64) -> Complex64 {
    Complex64::new(x.cos(), x.sin())
}

/// Unit direction in the abstract 3-space, stored as direction cosines.
///
/// Construction normalizes the input and rejects vectors shorter than
/// [`MIN_AXIS_NORM`], so a held value is always unit to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitAxis {
    n: [f64; 3],
}

impl UnitAxis {
    /// Normalizes `(n1, n2, n3)` into a unit axis.
    pub fn new(n1: f64, n2: f64, n3: f64) -> Result<Self> {
        if !(n1.is_finite() && n2.is_finite() && n3.is_finite()) {
            return Err(Error::NonFinite { what: "axis components" });
        }
        let norm = (n1 * n1 + n2 * n2 + n3 * n3).sqrt();
        if norm < MIN_AXIS_NORM {
            return Err(Error::DegenerateAxis { norm, min: MIN_AXIS_NORM });
        }
        Ok(Self { n: [n1 / norm, n2 / norm, n3 / norm] })
    }

    /// Builds the axis from polar angle `rho` and azimuth `phi`:
    /// `(sin rho cos phi, sin rho sin phi, cos rho)`.
    pub fn from_polar(rho: f64, phi: f64) -> Result<Self> {
        if !(rho.is_finite() && phi.is_finite()) {
            return Err(Error::NonFinite { what: "polar angles" });
        }
        let (sr, cr) = rho.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Ok(Self { n: [sr * cp, sr * sp, cr] })
    }

    pub fn x() -> Self {
        Self { n: [1.0, 0.0, 0.0] }
    }

    pub fn y() -> Self {
        Self { n: [0.0, 1.0, 0.0] }
    }

    pub fn z() -> Self {
        Self { n: [0.0, 0.0, 1.0] }
    }

    /// Direction cosines `(n1, n2, n3)`.
    pub fn components(&self) -> [f64; 3] {
        self.n
    }

    /// Polar decomposition `(rho, phi)` with `rho` in `[0, pi]` and `phi`
    /// in `(-pi, pi]`. At the poles the azimuth is fixed to 0.
    pub fn polar(&self) -> (f64, f64) {
        let [n1, n2, n3] = self.n;
        let s = n1.hypot(n2);
        let rho = s.atan2(n3);
        if s == 0.0 {
            return (rho, 0.0);
        }
        let mut phi = n2.atan2(n1);
        if phi <= -std::f64::consts::PI {
            phi += 2.0 * std::f64::consts::PI;
        }
        (rho, phi)
    }
}

/// The constant matrices `sigma^1..sigma^3` plus the unit matrix `sigma^4`.
pub fn pauli(k: usize) -> Result<SpinMatrix> {
    match k {
        1 => Ok(SpinMatrix::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))),
        2 => Ok(SpinMatrix::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))),
        3 => Ok(SpinMatrix::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))),
        4 => Ok(SpinMatrix::identity()),
        _ => Err(Error::IndexOutOfRange { index: k, min: 1, max: 4 }),
    }
}

/// Contraction `n^k sigma^k`, written out in closed form:
///
/// ```text
/// [      n3       n1 - i n2 ]
/// [ n1 + i n2        -n3    ]
/// ```
///
/// Hermitian, traceless, and squares to the identity for unit `n`.
pub fn axis_dot_sigma(n: &UnitAxis) -> SpinMatrix {
    let [n1, n2, n3] = n.components();
    SpinMatrix::new(c(n3, 0.0), c(n1, -n2), c(n1, n2), c(-n3, 0.0))
}

/// Rotation factor `e^{i (n.sigma) theta/2}` in closed form:
/// `sigma^4 cos(theta/2) + i (n.sigma) sin(theta/2)`.
///
/// Unitary with unit determinant. `theta` must be finite.
pub fn rotation_matrix(n: &UnitAxis, theta: f64) -> SpinMatrix {
    assert!(theta.is_finite(), "rotation angle must be finite");
    let half = 0.5 * theta;
    SpinMatrix::identity() * c(half.cos(), 0.0) + axis_dot_sigma(n) * c(0.0, half.sin())
}

/// Partial sum of the matrix exponential series, `sum_{k<terms} m^k / k!`.
///
/// Independent oracle for [`rotation_matrix`]; `terms == 0` yields the empty
/// sum (the zero matrix).
pub fn matrix_exp_series(m: &SpinMatrix, terms: usize) -> SpinMatrix {
    let mut sum = SpinMatrix::zeros();
    let mut term = SpinMatrix::identity();
    for k in 0..terms {
        if k > 0 {
            term = term * m * c(1.0 / k as f64, 0.0);
        }
        sum += term;
    }
    sum
}

/// Chiral-representation gamma matrices in 2x2 block form:
///
/// ```text
/// gamma^k = [ 0       -sigma^k ]      gamma^4 = [ 0        sigma^4 ]
///           [ sigma^k     0    ]                [ sigma^4     0    ]
/// ```
pub fn gamma(mu: usize) -> Result<DiracMatrix> {
    let s = pauli(mu)?;
    let upper_sign = if mu == 4 { 1.0 } else { -1.0 };
    let mut g = DiracMatrix::zeros();
    for r in 0..2 {
        for col in 0..2 {
            g[(r, col + 2)] = s[(r, col)] * c(upper_sign, 0.0);
            g[(r + 2, col)] = s[(r, col)];
        }
    }
    Ok(g)
}

/// Largest entry modulus of the difference of two 2x2 matrices.
pub fn max_abs_diff2(a: &SpinMatrix, b: &SpinMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry modulus of the difference of two 4x4 matrices.
pub fn max_abs_diff4(a: &DiracMatrix, b: &DiracMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
