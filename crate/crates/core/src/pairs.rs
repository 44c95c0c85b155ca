//! Simultaneous eigenvector pairs, the general matrix factor relating the
//! two members, its reduction to a unit energy-momentum, the boost special
//! case, and the current/spin parametrization constraints.


use crate::eigen::eigenspinor_plus;
use crate::error::{Error, Result};
use crate::pauli::{axis_dot_sigma, c, SpinMatrix, TwoSpinor, UnitAxis};

/// Sign label for the pair ordering (`+1` maps member 2 to member 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The two free coefficients of the general factor matrix. Any real values
/// are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FactorParams {
    pub a: f64,
    pub b: f64,
}

/// A pair of eigenvectors of the same rotation sharing one eigenvalue, with
/// `v1 = e^{u} v2` for real rapidity `u`.
#[derive(Debug, Clone)]
pub struct EigenPair {
    axis: UnitAxis,
    theta: f64,
    rapidity: f64,
    v1: TwoSpinor,
    v2: TwoSpinor,
    branch: Sign,
}

impl EigenPair {
    /// Builds the plus-branch pair `v2 = scale * u+(n)`, `v1 = e^{u} v2`.
    pub fn new(axis: UnitAxis, theta: f64, rapidity: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::NonPositiveScale { got: scale });
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "rotation angle" });
        }
        if !rapidity.is_finite() {
            return Err(Error::NonFinite { what: "rapidity" });
        }
        let v2 = eigenspinor_plus(&axis) * c(scale, 0.0);
        let v1 = v2 * c(rapidity.exp(), 0.0);
        Ok(Self { axis, theta, rapidity, v1, v2, branch: Sign::Plus })
    }

    pub fn axis(&self) -> &UnitAxis {
        &self.axis
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn v1(&self) -> &TwoSpinor {
        &self.v1
    }

    pub fn v2(&self) -> &TwoSpinor {
        &self.v2
    }

    pub fn branch(&self) -> Sign {
        self.branch
    }

    /// Residuals of the boost-form relation for this pair; see
    /// [`pair_factor_residuals`].
    pub fn boost_residuals(&self) -> PairFactorResiduals {
        pair_factor_residuals(self.rapidity, &self.axis, &self.v1, &self.v2)
    }
}

/// General matrix factor relating the pair members,
/// `sigma^4 p_{ab4} - eps sigma^k p_{ab} n^k`, with
///
/// ```text
/// p_{ab4} = A + eps (B + sinh u)      p_{ab} = B + eps (A - cosh u)
/// ```
///
/// Acting on the appropriate member it reproduces the partner for any
/// `(A, B)`: on the plus branch the two coefficients collapse to the scalar
/// `cosh u + eps sinh u = e^{eps u}`.
pub fn general_factor_matrix(params: FactorParams, u: f64, n: &UnitAxis, eps: Sign) -> SpinMatrix {
    let e = eps.value();
    let p4 = params.a + e * (params.b + u.sinh());
    let p = params.b + e * (params.a - u.cosh());
    SpinMatrix::identity() * c(p4, 0.0) - axis_dot_sigma(n) * c(e * p, 0.0)
}

/// Boost-form factor `sigma^4 cosh u + eps (n.sigma) sinh u`; Hermitian and
/// positive definite, with eigenvalues `e^{+-u}` on the axis eigenspinors.
///
/// Equals [`general_factor_matrix`] at `A = cosh u`, `B = -sinh u` — the
/// unique coefficient choice that is independent of the pair ordering.
pub fn boost_matrix(u: f64, n: &UnitAxis, eps: Sign) -> SpinMatrix {
    SpinMatrix::identity() * c(u.cosh(), 0.0) + axis_dot_sigma(n) * c(eps.value() * u.sinh(), 0.0)
}

/// Forward and reverse residuals of the boost-form relation,
/// `|L(+) v2 - v1| / |v1|` and `|L(-) v1 - v2| / |v2|`.
///
/// Residuals are relative so that large-rapidity pairs do not mask errors.
#[derive(Debug, Clone, Copy)]
pub struct PairFactorResiduals {
    pub forward: f64,
    pub reverse: f64,
}

impl PairFactorResiduals {
    pub fn max(&self) -> f64 {
        self.forward.max(self.reverse)
    }
}

/// Residuals of the boost-form relation for explicit members; lets callers
/// probe deliberately corrupted pairs.
pub fn pair_factor_residuals(u: f64, n: &UnitAxis, v1: &TwoSpinor, v2: &TwoSpinor) -> PairFactorResiduals {
    let forward = (boost_matrix(u, n, Sign::Plus) * v2 - v1).norm() / v1.norm();
    let reverse = (boost_matrix(u, n, Sign::Minus) * v1 - v2).norm() / v2.norm();
    PairFactorResiduals { forward, reverse }
}

/// Unit energy-momentum `(p^k, p^4) = (n^k sinh u, cosh u)`.
///
/// Index lowering follows the metric `diag(-1,-1,-1,+1)`: `p_k = -p^k`,
/// `p_4 = p^4`. Values are on the unit mass shell by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum {
    p4: f64,
    p: [f64; 3],
}

/// Relative shell tolerance accepted by [`FourMomentum::new`].
pub const ON_SHELL_TOLERANCE: f64 = 1e-8;

impl FourMomentum {
    /// Reduces the general factor to the pair-independent choice
    /// `A = cosh u`, `B = -sinh u` and returns the resulting momentum.
    /// The spatial part points along `n` with `p > 0` for `u > 0`.
    pub fn from_rapidity(u: f64, n: &UnitAxis) -> Self {
        assert!(u.is_finite(), "rapidity must be finite");
        let s = u.sinh();
        let [n1, n2, n3] = n.components();
        Self { p4: u.cosh(), p: [n1 * s, n2 * s, n3 * s] }
    }

    /// Admits explicit components, rejecting anything off the unit mass
    /// shell (relative residual above [`ON_SHELL_TOLERANCE`]) or with
    /// non-positive energy.
    pub fn new(p4: f64, p: [f64; 3]) -> Result<Self> {
        if !(p4.is_finite() && p.iter().all(|x| x.is_finite())) {
            return Err(Error::NonFinite { what: "momentum components" });
        }
        let candidate = Self { p4, p };
        let residual = candidate.mass_shell_residual();
        if !(p4 > 0.0) || residual > ON_SHELL_TOLERANCE {
            return Err(Error::OffShell { residual });
        }
        Ok(candidate)
    }

    pub fn p4(&self) -> f64 {
        self.p4
    }

    /// Upper-index spatial components `p^k`.
    pub fn spatial(&self) -> [f64; 3] {
        self.p
    }

    /// Upper-index four-vector `(p^1, p^2, p^3, p^4)`.
    pub fn upper(&self) -> [f64; 4] {
        [self.p[0], self.p[1], self.p[2], self.p4]
    }

    /// Lowered components `(p_1, p_2, p_3, p_4) = (-p^1, -p^2, -p^3, p^4)`.
    pub fn lower(&self) -> [f64; 4] {
        [-self.p[0], -self.p[1], -self.p[2], self.p4]
    }

    /// Relative mass-shell residual `|p4^2 - |p|^2 - 1| / p4^2`.
    ///
    /// The residual is normalized by `p4^2`: at large rapidity the absolute
    /// difference of squares sits at the f64 rounding floor (about
    /// `2 cosh^2(u) * eps`), so only the relative quantity is meaningful.
    pub fn mass_shell_residual(&self) -> f64 {
        let [p1, p2, p3] = self.p;
        let shell = self.p4 * self.p4 - (p1 * p1 + p2 * p2 + p3 * p3);
        (shell - 1.0).abs() / (self.p4 * self.p4)
    }
}

/// Derived relations among the current/spin parameters `(j, j4, a, a4)` and
/// the resulting four-vector orthogonality defect.
///
/// Matching the four-parameter form of the factor coefficients against the
/// pair relation for both orderings forces `j = a4` and `j4 = -a`. The sign
/// in the second relation makes the Minkowski contraction
/// `j4 a4 - j^k a^k = -2 a a4` instead of zero; the solution reports that
/// defect rather than assuming the vanishing-sign variant `j4 = +a`.
#[derive(Debug, Clone, Copy)]
pub struct CurrentSpinSolution {
    /// Representative solution with the free parameters fixed at
    /// `a = a4 = 1`.
    pub j: f64,
    pub j4: f64,
    pub a: f64,
    pub a4: f64,
    /// The scale entering the parametrization; any nonzero value yields the
    /// same relations.
    pub scale: f64,
    /// Largest violation of the derived linear relations on the solution.
    pub relation_residual: f64,
    /// Sign `s` in the derived relation `j4 = s * a`.
    pub derived_sign: f64,
    /// Sign that would make the orthogonality contraction vanish (`+1`);
    /// differs from `derived_sign`.
    pub vanishing_sign: f64,
    /// Contraction `j4 a4 - j a` evaluated on the representative solution.
    pub orthogonality: f64,
    /// Analytic prediction `-2 a a4` for the contraction under the derived
    /// relations.
    pub orthogonality_predicted: f64,
}

impl CurrentSpinSolution {
    /// Whether the derived sign matches the one that would zero the
    /// orthogonality contraction. False: the defect is real and reported.
    pub fn orthogonality_vanishes(&self) -> bool {
        self.derived_sign == self.vanishing_sign
    }
}

/// Solves the linear conditions obtained by matching the four-parameter
/// current/spin form of the factor coefficients against the pair relation
/// for both orderings.
///
/// With coefficients `p_{ab4} = cosh u + K j4 + eps K a4` and
/// `p_{ab} = -sinh u + K j - eps K a`, consistency requires
/// `K [(j4 + a) + eps (a4 - j)] = 0` for `eps = +-1`. Elimination over the
/// two branches yields `j = a4` and `j4 = -a`; the rapidity terms cancel
/// identically. `scale = 0` makes the system vacuous and is rejected.
pub fn solve_current_spin_constraints(u: f64, scale: f64) -> Result<CurrentSpinSolution> {
    if !u.is_finite() {
        return Err(Error::NonFinite { what: "rapidity" });
    }
    if !scale.is_finite() {
        return Err(Error::NonFinite { what: "constraint scale" });
    }
    if scale == 0.0 {
        return Err(Error::DegenerateScale);
    }

    // Rows act on x = (j, j4, a, a4). Both carry the factor `scale`; the
    // rapidity terms have already cancelled between the two sides.
    let rows = [
        [-scale, scale, scale, scale], // eps = +1
        [scale, scale, scale, -scale], // eps = -1
    ];

    // Gauss-Jordan elimination with the natural pivots (columns 0 and 1).
    let mut r0 = rows[0];
    let mut r1 = rows[1];
    let p0 = r0[0];
    for x in &mut r0 {
        *x /= p0;
    }
    let f = r1[0];
    for k in 0..4 {
        r1[k] -= f * r0[k];
    }
    let p1 = r1[1];
    for x in &mut r1 {
        *x /= p1;
    }
    let f = r0[1];
    for k in 0..4 {
        r0[k] -= f * r1[k];
    }
    // r0: j + r0[2] a + r0[3] a4 = 0, r1: j4 + r1[2] a + r1[3] a4 = 0.
    let (a, a4) = (1.0, 1.0);
    let j = -(r0[2] * a + r0[3] * a4);
    let j4 = -(r1[2] * a + r1[3] * a4);

    let relation_residual = (j - a4).abs().max((j4 + a).abs());
    let derived_sign = if j4 >= 0.0 { 1.0 } else { -1.0 };
    // j^k a^k = j a (n^k n^k) = j a for a unit axis.
    let orthogonality = j4 * a4 - j * a;
    let orthogonality_predicted = -2.0 * a * a4;

    Ok(CurrentSpinSolution {
        j,
        j4,
        a,
        a4,
        scale,
        relation_residual,
        derived_sign,
        vanishing_sign: 1.0,
        orthogonality,
        orthogonality_predicted,
    })
}
