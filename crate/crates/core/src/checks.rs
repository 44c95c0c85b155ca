//! Seeded verification suites behind the `verify` command and the
//! acceptance tests. Each check returns its trial count and a max residual;
//! tolerances live in the constants below so both consumers pin the same
//! numbers.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dirac::{
    dirac_residual_momentum, solution_space_dimension, spin_down_partner, superpose, Bispinor,
};
use crate::eigen::{eigenspinor_minus, eigenspinor_plus, rotation_eigen_residual};
use crate::pairs::{
    boost_matrix, general_factor_matrix, pair_factor_residuals, solve_current_spin_constraints,
    EigenPair, FactorParams, FourMomentum, Sign,
};
use crate::pauli::{
    axis_dot_sigma, c, exp_i, gamma, matrix_exp_series, max_abs_diff2, max_abs_diff4,
    rotation_matrix, DiracMatrix, SpinMatrix, UnitAxis,
};
use crate::phase::{
    dirac_residual_coordinate, dirac_residual_coordinate_bispinor, gradient_theta,
    gradient_theta_implicit, path_phase, phase_derivative_residual, plane_wave_phase,
    CouplingMatrix, DerivativeMode, Event4, GaugeField, Path4,
};

pub const TOL_CLIFFORD: f64 = 1e-14;
pub const TOL_AXIS_SQUARE: f64 = 1e-14;
pub const TOL_ROTATION_SERIES: f64 = 1e-10;
pub const TOL_EIGEN_RELATION: f64 = 1e-10;
pub const TOL_FACTOR: f64 = 1e-10;
pub const TOL_MASS_SHELL: f64 = 1e-12;
pub const TOL_PAIR_BOOST: f64 = 1e-10;
pub const TOL_BOOST_SPECIAL: f64 = 1e-14;
pub const TOL_MOMENTUM_DIRAC: f64 = 1e-10;
pub const TOL_PHASE_FD: f64 = 1e-9;
pub const TOL_PHASE_ANALYTIC: f64 = 1e-14;
pub const TOL_FREE_PHASE: f64 = 1e-10;
pub const TOL_PLANE_FIT: f64 = 1e-10;
pub const TOL_SOLENOID_LOOP: f64 = 1e-5;
pub const TOL_PURE_GAUGE: f64 = 1e-8;
pub const QUADRATURE_ORDER_BAND: f64 = 0.5;
pub const TOL_COORD_DIRAC: f64 = 1e-7;
pub const COORD_DIRAC_ORDER_BAND: f64 = 0.8;
pub const TOL_GRADIENT_FD: f64 = 1e-8;
pub const TOL_IMPLICIT_ZERO: f64 = 1e-13;
pub const TOL_IMPLICIT_BACKSUB: f64 = 1e-12;
pub const TOL_CURRENT_SPIN: f64 = 0.0;
pub const TOL_CURRENT_SPIN_ORTHO: f64 = 1e-12;
pub const TOL_RANK: f64 = 0.5;

pub const PHASE_FD_STEP: f64 = 1e-5;
pub const COORD_DIRAC_STEP: f64 = 1e-4;
pub const SOLENOID_SEGMENTS: usize = 10_000;

/// Trial count and worst residual of one suite.
#[derive(Debug, Clone, Copy)]
pub struct Outcome {
    pub trials: usize,
    pub max_residual: f64,
}

fn outcome(trials: usize, max_residual: f64) -> Outcome {
    Outcome { trials, max_residual }
}

pub fn random_axis(rng: &mut ChaCha8Rng) -> UnitAxis {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let s = (1.0 - z * z).sqrt();
    UnitAxis::new(s * phi.cos(), s * phi.sin(), z).expect("unit by construction")
}

fn random_unit_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let r: f64 = rng.random_range(0.2..1.0);
    let phi: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    exp_i(phi) * c(r, 0.0)
}

/// Anticommutators of the four gamma matrices against twice the
/// `diag(-1,-1,-1,+1)` metric; 16 index pairs.
pub fn clifford_metric(_rng: &mut ChaCha8Rng, _trials: usize) -> Outcome {
    let metric = [-1.0, -1.0, -1.0, 1.0];
    let mut worst = 0.0f64;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let gm = gamma(mu).expect("in range");
            let gn = gamma(nu).expect("in range");
            let anti = gm * gn + gn * gm;
            let expected = if mu == nu {
                DiracMatrix::identity() * c(2.0 * metric[mu - 1], 0.0)
            } else {
                DiracMatrix::zeros()
            };
            worst = worst.max(max_abs_diff4(&anti, &expected));
        }
    }
    outcome(16, worst)
}

/// `(n.sigma)^2 = sigma^4` over random unit axes.
pub fn axis_sigma_square(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let id = SpinMatrix::identity();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let ns = axis_dot_sigma(&random_axis(rng));
        worst = worst.max(max_abs_diff2(&(ns * ns), &id));
    }
    outcome(trials, worst)
}

/// Closed-form rotation against the 30-term exponential series for angles
/// up to a full double turn.
pub fn rotation_vs_series(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let theta: f64 = rng.random_range(-2.0 * std::f64::consts::PI..=2.0 * std::f64::consts::PI);
        let closed = rotation_matrix(&n, theta);
        let m = axis_dot_sigma(&n) * c(0.0, theta / 2.0);
        worst = worst.max(max_abs_diff2(&closed, &matrix_exp_series(&m, 30)));
    }
    outcome(trials, worst)
}

/// Eigenvalue relation for both branches over random axes and angles.
pub fn eigen_relation(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let theta: f64 = rng.random_range(-6.0..6.0);
        let up = eigenspinor_plus(&n);
        worst = worst.max(rotation_eigen_residual(&n, theta, &up).expect("nonzero"));
        let um = eigenspinor_minus(&n);
        let r = rotation_matrix(&n, theta) * um - um * exp_i(-theta / 2.0);
        worst = worst.max(r.norm());
    }
    outcome(trials, worst)
}

/// The general factor maps each pair member to its partner for arbitrary
/// coefficients, both orderings.
pub fn factor_generalization(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let theta: f64 = rng.random_range(-3.0..3.0);
        let u: f64 = rng.random_range(-5.0..5.0);
        let params = FactorParams {
            a: rng.random_range(-10.0..10.0),
            b: rng.random_range(-10.0..10.0),
        };
        let pair = EigenPair::new(n, theta, u, 1.0).expect("valid");
        let fwd = general_factor_matrix(params, u, &n, Sign::Plus) * pair.v2() - pair.v1();
        worst = worst.max(fwd.norm() / pair.v1().norm());
        let rev = general_factor_matrix(params, u, &n, Sign::Minus) * pair.v1() - pair.v2();
        worst = worst.max(rev.norm() / pair.v2().norm());
    }
    outcome(trials, worst)
}

/// Relative mass-shell residual across the factor trials' rapidity range.
pub fn mass_shell(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-5.0..5.0);
        worst = worst.max(FourMomentum::from_rapidity(u, &n).mass_shell_residual());
    }
    outcome(trials, worst)
}

/// Boost-form relation residuals for constructed pairs, both directions.
pub fn pair_boost_relation(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-5.0..5.0);
        let scale: f64 = rng.random_range(0.1..4.0);
        let pair = EigenPair::new(n, 1.0, u, scale).expect("valid");
        let r = pair.boost_residuals();
        worst = worst.max(r.max());
    }
    outcome(trials, worst)
}

/// Boost display against the pair-independent factor coefficients, and the
/// inverse product, normalized by `cosh^2 u`.
pub fn boost_special_case(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-5.0..5.0);
        let params = FactorParams { a: u.cosh(), b: -u.sinh() };
        for eps in [Sign::Plus, Sign::Minus] {
            worst = worst.max(max_abs_diff2(
                &general_factor_matrix(params, u, &n, eps),
                &boost_matrix(u, &n, eps),
            ));
        }
        let prod = boost_matrix(u, &n, Sign::Plus) * boost_matrix(u, &n, Sign::Minus);
        worst = worst.max(max_abs_diff2(&prod, &SpinMatrix::identity()) / u.cosh().powi(2));
    }
    outcome(trials, worst)
}

/// Momentum-space Dirac relation for spin-up, spin-down, and random
/// superpositions sharing one momentum.
pub fn momentum_dirac(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let theta: f64 = rng.random_range(-3.0..3.0);
        let u: f64 = rng.random_range(-5.0..5.0);
        let scale: f64 = rng.random_range(0.2..3.0);
        let pair = EigenPair::new(n, theta, u, scale).expect("valid");
        let p = FourMomentum::from_rapidity(u, &n);
        let up = Bispinor::from_pair(&pair);
        let down = spin_down_partner(&pair).expect("plus branch");
        worst = worst.max(dirac_residual_momentum(&up, &p).expect("nonzero"));
        worst = worst.max(dirac_residual_momentum(&down, &p).expect("nonzero"));
        let alpha = random_unit_complex(rng);
        let beta = random_unit_complex(rng);
        let mixed = superpose(alpha, &up, beta, &down);
        worst = worst.max(dirac_residual_momentum(&mixed, &p).expect("nonzero"));
    }
    outcome(trials, worst)
}

/// Dimension of the Dirac solution space, reported as `|dim - 2|`.
pub fn dirac_solution_dimension(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-5.0..5.0);
        let dim = solution_space_dimension(&FourMomentum::from_rapidity(u, &n));
        worst = worst.max((dim as f64 - 2.0).abs());
    }
    outcome(trials, worst)
}

/// Central-difference form of the phase-derivative identity.
pub fn phase_derivative_fd(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let pair = random_pair(rng);
        let r = phase_derivative_residual(&pair, 8, DerivativeMode::Central { step: PHASE_FD_STEP })
            .expect("valid samples");
        worst = worst.max(r);
    }
    outcome(trials, worst)
}

/// Analytic form of the phase-derivative identity.
pub fn phase_derivative_analytic(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let pair = random_pair(rng);
        let r = phase_derivative_residual(&pair, 8, DerivativeMode::Analytic).expect("valid samples");
        worst = worst.max(r);
    }
    outcome(trials, worst)
}

fn random_pair(rng: &mut ChaCha8Rng) -> EigenPair {
    let n = random_axis(rng);
    let theta: f64 = rng.random_range(-3.0..3.0);
    let u: f64 = rng.random_range(-2.0..2.0);
    let scale: f64 = rng.random_range(0.2..3.0);
    EigenPair::new(n, theta, u, scale).expect("valid")
}

fn random_event(rng: &mut ChaCha8Rng, half_width: f64) -> Event4 {
    Event4::new(
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
    )
}

/// Free-field path phase over random polylines against the single-valued
/// plane-wave difference.
pub fn free_phase(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let field = GaugeField::zero(1.0);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-2.0..2.0);
        let p = FourMomentum::from_rapidity(u, &n);
        let count = rng.random_range(2..6);
        let mut vertices = vec![random_event(rng, 2.0)];
        for _ in 0..count {
            vertices.push(random_event(rng, 2.0));
        }
        let path = match Path4::open(vertices) {
            Ok(path) => path,
            Err(_) => continue, // vanishing chance of duplicate vertices
        };
        let theta = path_phase(&p, &field, &path, 4).expect("free path").re;
        let expected = plane_wave_phase(&p, &path.vertices()[0], path.vertices().last().unwrap());
        worst = worst.max((theta - expected).abs());
    }
    outcome(trials, worst)
}

/// Solenoid loop phase against `2 e flux * winding` for windings -2..=2,
/// including a non-enclosing loop for the zero case.
pub fn solenoid_loop(_rng: &mut ChaCha8Rng, _trials: usize) -> Outcome {
    let flux = std::f64::consts::PI;
    let charge = 1.0;
    let field = GaugeField::solenoid(flux, charge);
    let p = FourMomentum::from_rapidity(0.4, &UnitAxis::z());
    let mut worst = 0.0f64;
    let mut trials = 0;
    for winding in [-2i32, -1, 1, 2] {
        let path = Path4::circle_xy((0.0, 0.0), 1.0, winding, SOLENOID_SEGMENTS, 0.0, 0.0)
            .expect("valid loop");
        let theta = path_phase(&p, &field, &path, 1).expect("off-axis").re;
        worst = worst.max((theta - 2.0 * charge * flux * winding as f64).abs());
        trials += 1;
    }
    // Unit traversal of a loop that does not enclose the axis.
    let path = Path4::circle_xy((3.0, 0.0), 1.0, 1, SOLENOID_SEGMENTS, 0.0, 0.0).expect("valid loop");
    let theta = path_phase(&p, &field, &path, 1).expect("off-axis").re;
    worst = worst.max(theta.abs());
    trials += 1;
    outcome(trials, worst)
}

/// Phase difference of two open paths sharing endpoints under a pure-gauge
/// potential.
pub fn pure_gauge_two_path(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let mut quad = [[0.0; 4]; 4];
        for row in &mut quad {
            for item in row.iter_mut() {
                *item = rng.random_range(-1.0..1.0);
            }
        }
        let linear = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let field = GaugeField::pure_gauge(linear, quad, rng.random_range(-2.0..2.0));
        let n = random_axis(rng);
        let p = FourMomentum::from_rapidity(rng.random_range(-2.0..2.0), &n);
        let start = random_event(rng, 1.5);
        let end = random_event(rng, 1.5);
        if start == end {
            continue;
        }
        let direct = Path4::segment(start, end).expect("distinct");
        let detour = match Path4::open(vec![start, random_event(rng, 2.5), end]) {
            Ok(path) => path,
            Err(_) => continue,
        };
        let t1 = path_phase(&p, &field, &direct, 32).expect("valid").re;
        let t2 = path_phase(&p, &field, &detour, 32).expect("valid").re;
        worst = worst.max((t1 - t2).abs());
    }
    outcome(trials, worst)
}

/// Distance of the quadrature refinement ratio from the order-2 value 4.
pub fn quadrature_order(_rng: &mut ChaCha8Rng, _trials: usize) -> Outcome {
    let flux = std::f64::consts::PI;
    let field = GaugeField::solenoid(flux, 1.0);
    let p = FourMomentum::from_rapidity(0.0, &UnitAxis::z());
    let exact = 2.0 * flux;
    let coarse = Path4::circle_xy((0.0, 0.0), 1.0, 1, 200, 0.0, 0.0).expect("valid");
    let fine = Path4::circle_xy((0.0, 0.0), 1.0, 1, 400, 0.0, 0.0).expect("valid");
    let e1 = (path_phase(&p, &field, &coarse, 1).expect("off-axis").re - exact).abs();
    let e2 = (path_phase(&p, &field, &fine, 1).expect("off-axis").re - exact).abs();
    outcome(2, (e1 / e2 - 4.0).abs())
}

/// Coordinate-space Dirac residual at the spec step for the zero and
/// constant presets, including a superposed state.
pub fn coordinate_dirac(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-1.0..1.0);
        let pair = EigenPair::new(n, 0.6, u, 1.0).expect("valid");
        let field = if k % 2 == 0 {
            GaugeField::zero(rng.random_range(-1.0..1.0))
        } else {
            GaugeField::constant(
                [
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                ],
                rng.random_range(-1.0..1.0),
            )
        };
        let q = random_event(rng, 1.0);
        let r = dirac_residual_coordinate(&pair, &field, &q, COORD_DIRAC_STEP).expect("valid");
        worst = worst.max(r);
        if k % 5 == 0 {
            let p = FourMomentum::from_rapidity(u, &n);
            let up = Bispinor::from_pair(&pair);
            let down = spin_down_partner(&pair).expect("plus branch");
            let psi0 = superpose(random_unit_complex(rng), &up, random_unit_complex(rng), &down);
            let r = dirac_residual_coordinate_bispinor(&psi0, &p, &field, &q, COORD_DIRAC_STEP)
                .expect("valid");
            worst = worst.max(r);
        }
    }
    outcome(trials, worst)
}

/// Distance of the step-halving ratio of the coordinate residual from 4.
pub fn coordinate_dirac_order(rng: &mut ChaCha8Rng, _trials: usize) -> Outcome {
    let n = random_axis(rng);
    let pair = EigenPair::new(n, 0.4, 0.7, 1.0).expect("valid");
    let field = GaugeField::constant([0.1, 0.2, -0.2, 0.3], 0.8);
    let q = Event4::new(0.2, -0.5, 0.4, 0.9);
    let r1 = dirac_residual_coordinate(&pair, &field, &q, 2.0 * COORD_DIRAC_STEP).expect("valid");
    let r2 = dirac_residual_coordinate(&pair, &field, &q, COORD_DIRAC_STEP).expect("valid");
    outcome(2, (r1 / r2 - 4.0).abs())
}

/// Directional finite difference of the path phase against the analytic
/// gradient, on fields where the quadrature is exact.
pub fn gradient_of_path_phase(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..trials {
        let n = random_axis(rng);
        let p = FourMomentum::from_rapidity(rng.random_range(-1.5..1.5), &n);
        let field = if k % 2 == 0 {
            GaugeField::constant(
                [
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                    rng.random_range(-0.5..0.5),
                ],
                rng.random_range(-1.5..1.5),
            )
        } else {
            let mut quad = [[0.0; 4]; 4];
            for row in &mut quad {
                for item in row.iter_mut() {
                    *item = rng.random_range(-0.5..0.5);
                }
            }
            GaugeField::pure_gauge([0.1, -0.2, 0.3, 0.0], quad, rng.random_range(-1.5..1.5))
        };
        let q = random_event(rng, 1.0);
        let grad = gradient_theta(&p, &field, &q).expect("in domain");
        let h = 1e-3;
        let dir = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let mut fwd = q;
        let mut bwd = q;
        for mu in 0..4 {
            fwd.q[mu] += h * dir[mu];
            bwd.q[mu] -= h * dir[mu];
        }
        let origin = Event4::origin();
        let tf = path_phase(&p, &field, &Path4::segment(origin, fwd).expect("distinct"), 16)
            .expect("valid")
            .re;
        let tb = path_phase(&p, &field, &Path4::segment(origin, bwd).expect("distinct"), 16)
            .expect("valid")
            .re;
        let fd = (tf - tb) / (2.0 * h);
        let expected: f64 = (0..4).map(|mu| grad[mu].re * dir[mu]).sum();
        worst = worst.max((fd - expected).abs());
    }
    outcome(trials, worst)
}

/// Zero-coupling reduction of the implicit gradient solve.
pub fn implicit_gradient_zero(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let p = FourMomentum::from_rapidity(rng.random_range(-2.0..2.0), &n);
        let field = GaugeField::constant(
            [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ],
            rng.random_range(-1.0..1.0),
        );
        let q = random_event(rng, 1.0);
        let plain = gradient_theta(&p, &field, &q).expect("in domain");
        let solved = gradient_theta_implicit(&p, &field, &CouplingMatrix::zero(), &q).expect("ok");
        for mu in 0..4 {
            worst = worst.max((plain[mu] - solved[mu]).norm());
        }
    }
    outcome(trials, worst)
}

/// Back-substitution residual of the coupled solve for random
/// well-conditioned couplings.
pub fn implicit_gradient_backsub(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let p = FourMomentum::from_rapidity(rng.random_range(-2.0..2.0), &n);
        let field = GaugeField::constant(
            [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ],
            rng.random_range(-1.0..1.0),
        );
        let mut m = nalgebra::Matrix4::zeros();
        for r in 0..4 {
            for col in 0..4 {
                m[(r, col)] = rng.random_range(-0.2..0.2);
            }
        }
        let coupling = CouplingMatrix::new(m);
        let q = random_event(rng, 1.0);
        let rhs = gradient_theta(&p, &field, &q).expect("in domain");
        let solved = gradient_theta_implicit(&p, &field, &coupling, &q).expect("well conditioned");
        let total = nalgebra::Matrix4::identity() + coupling.matrix();
        for mu in 0..4 {
            let mut back = c(0.0, 0.0);
            for nu in 0..4 {
                back += c(total[(mu, nu)], 0.0) * solved[nu];
            }
            worst = worst.max((back - rhs[mu]).norm());
        }
    }
    outcome(trials, worst)
}

/// Plane fit of a free-field phase map over a random slice.
pub fn phase_map_plane_fit(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    use crate::maps::{fit_plane, phase_map, GridRange, PhaseMapSpec};
    let mut worst = 0.0f64;
    let runs = trials.clamp(1, 8);
    for _ in 0..runs {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-1.5..1.5);
        let planes = [(1usize, 2usize), (1, 4), (2, 3), (3, 4)];
        let plane = planes[rng.random_range(0..planes.len())];
        let spec = PhaseMapSpec {
            momentum: FourMomentum::from_rapidity(u, &n),
            field: GaugeField::zero(1.0),
            plane,
            fixed: [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ],
            range: GridRange { start: -2.0, stop: 2.0, count: 15 },
            segments: 4,
        };
        let rows = phase_map(&spec).expect("free field map");
        let fit = fit_plane(&rows).expect("enough rows");
        worst = worst.max(fit.max_residual);
    }
    outcome(runs, worst)
}

/// Exactness of the derived current/spin relations.
pub fn current_spin_relations(_rng: &mut ChaCha8Rng, _trials: usize) -> Outcome {
    let sol = solve_current_spin_constraints(0.9, 1.7).expect("nonzero scale");
    outcome(1, sol.relation_residual)
}

/// The orthogonality defect under the derived sign against its analytic
/// prediction `-2 a a4`.
pub fn current_spin_orthogonality(_rng: &mut ChaCha8Rng, _trials: usize) -> Outcome {
    let sol = solve_current_spin_constraints(0.9, 1.7).expect("nonzero scale");
    outcome(1, (sol.orthogonality - sol.orthogonality_predicted).abs())
}

/// Deviation of the corrupted-pair residual from its analytic value; guards
/// the residual normalization itself.
pub fn factor_residual_calibration(rng: &mut ChaCha8Rng, trials: usize) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = random_axis(rng);
        let u: f64 = rng.random_range(-2.0..2.0);
        let pair = EigenPair::new(n, 0.3, u, 1.0).expect("valid");
        let bump: f64 = rng.random_range(1.01..1.5);
        let bad_v1 = pair.v1() * c(bump, 0.0);
        let r = pair_factor_residuals(u, &n, &bad_v1, pair.v2());
        worst = worst.max((r.forward - (1.0 - 1.0 / bump)).abs());
        worst = worst.max((r.reverse - (bump - 1.0)).abs());
    }
    outcome(trials, worst)
}
