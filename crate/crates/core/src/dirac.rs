//! Chiral bispinors assembled from eigenvector pairs and the momentum-space
//! Dirac relation `gamma^mu p_mu psi = psi`, including spin-down partners,
//! superpositions, and the solution-space rank check.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::eigen::eigenspinor_minus;
use crate::error::{Error, Result};
use crate::pairs::{EigenPair, FourMomentum, Sign};
use crate::pauli::{c, gamma, DiracMatrix, FourSpinor, TwoSpinor};

/// Relative singular-value threshold used by [`solution_space_rank`].
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Four-component column stacking the "RIGHT" member over the "LEFT" one.
#[derive(Debug, Clone, PartialEq)]
pub struct Bispinor {
    pub upper: TwoSpinor,
    pub lower: TwoSpinor,
}

impl Bispinor {
    /// `psi = col{v1, v2}`; satisfies the momentum-space Dirac relation with
    /// the momentum from the pair's rapidity and axis.
    pub fn from_pair(pair: &EigenPair) -> Self {
        Self { upper: *pair.v1(), lower: *pair.v2() }
    }

    pub fn from_vector(v: &FourSpinor) -> Self {
        Self {
            upper: TwoSpinor::new(v[0], v[1]),
            lower: TwoSpinor::new(v[2], v[3]),
        }
    }

    pub fn as_vector(&self) -> FourSpinor {
        FourSpinor::new(self.upper[0], self.upper[1], self.lower[0], self.lower[1])
    }

    pub fn norm(&self) -> f64 {
        self.as_vector().norm()
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self { upper: self.upper * z, lower: self.lower * z }
    }
}

/// `alpha x + beta y` componentwise.
pub fn superpose(alpha: Complex64, x: &Bispinor, beta: Complex64, y: &Bispinor) -> Bispinor {
    Bispinor {
        upper: x.upper * alpha + y.upper * beta,
        lower: x.lower * alpha + y.lower * beta,
    }
}

/// Spin-down bispinor carrying the same energy-momentum as the pair.
///
/// Built on the minus eigenspinor with `v1- = |v2| u-` and
/// `v2- = e^{+u} |v2| u-`. Because `(n.sigma) u- = -u-`, the Dirac relation
/// with the unchanged momentum forces the member ratio `v1-/v2- = e^{-u}`;
/// the overall normalization keeps the magnitude set `{|v2|, e^{u}|v2|}` of
/// the spin-up pair.
pub fn spin_down_partner(pair: &EigenPair) -> Result<Bispinor> {
    if pair.branch() != Sign::Plus {
        return Err(Error::WrongBranch);
    }
    let um = eigenspinor_minus(pair.axis());
    let magnitude = pair.v2().norm();
    let u = pair.rapidity();
    Ok(Bispinor {
        upper: um * c(magnitude, 0.0),
        lower: um * c(u.exp() * magnitude, 0.0),
    })
}

/// Contraction `gamma^mu p_mu` with lowered momentum components.
pub fn momentum_dirac_operator(p: &FourMomentum) -> DiracMatrix {
    let l = p.lower();
    let mut op = DiracMatrix::zeros();
    for mu in 1..=4 {
        op += gamma(mu).expect("index in range") * c(l[mu - 1], 0.0);
    }
    op
}

/// Relative residual `|gamma^mu p_mu psi - psi| / |psi|`.
///
/// Off-shell momenta cannot be constructed (see [`FourMomentum::new`]), so
/// the only failure mode here is a vanishing spinor.
pub fn dirac_residual_momentum(psi: &Bispinor, p: &FourMomentum) -> Result<f64> {
    let v = psi.as_vector();
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    Ok((momentum_dirac_operator(p) * v - v).norm() / norm)
}

/// Dimension of the solution space of `gamma^mu p_mu psi = psi`, computed by
/// counting singular values of `gamma^mu p_mu - I` below
/// [`RANK_THRESHOLD`] relative to the largest one. The rank of that matrix
/// is 4 minus the returned dimension.
pub fn solution_space_dimension(p: &FourMomentum) -> usize {
    let m = momentum_dirac_operator(p) - DiracMatrix::identity();
    4 - matrix_rank(&m, RANK_THRESHOLD)
}

/// Rank via singular values (square roots of the Hermitian eigenvalues of
/// `m^H m`), thresholded relative to the largest.
pub fn matrix_rank(m: &Matrix4<Complex64>, relative_threshold: f64) -> usize {
    let gram = m.adjoint() * m;
    let eigenvalues = gram.symmetric_eigenvalues();
    let singulars: Vec<f64> = eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    let top = singulars.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    singulars.iter().filter(|s| **s > relative_threshold * top).count()
}


#[cfg(test)]
mod rank_probe {
    use super::*;
    use crate::pauli::UnitAxis;

    #[test]
    fn probe_eigenvalues() {
        let p = FourMomentum::from_rapidity(0.0, &UnitAxis::z());
        let m = momentum_dirac_operator(&p) - DiracMatrix::identity();
        let gram = m.adjoint() * m;
        println!("gram = {gram}");
        println!("symmetric_eigenvalues = {:?}", gram.symmetric_eigenvalues());
        println!("rank = {}", matrix_rank(&m, 1e-8));
    }
}
