//! Phase geometry: the phase-derivative identity, plane-wave phase maps,
//! path-dependent phase line integrals under gauge potentials, the
//! coordinate-space Dirac residual, and the gradient-coupled extension.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::dirac::Bispinor;
use crate::error::{Error, Result};
use crate::pairs::{EigenPair, FourMomentum};
use crate::pauli::{c, exp_i, gamma, FourSpinor, TwoSpinor};

/// Paths and field evaluations must keep this distance from the solenoid
/// axis (the line `q1 = q2 = 0`).
pub const SOLENOID_EXCLUSION_RADIUS: f64 = 1e-6;

/// Default finite-difference step, in units where the mass is 1.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Condition-number ceiling for the coupled gradient solve.
pub const COUPLING_CONDITION_LIMIT: f64 = 1e8;

/// An event in the candidate 4-space; index 4 is the time-like coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event4 {
    pub q: [f64; 4],
}

impl Event4 {
    pub fn new(q1: f64, q2: f64, q3: f64, q4: f64) -> Self {
        Self { q: [q1, q2, q3, q4] }
    }

    pub fn origin() -> Self {
        Self { q: [0.0; 4] }
    }

    fn is_finite(&self) -> bool {
        self.q.iter().all(|x| x.is_finite())
    }
}

/// Ordered polyline of events for phase line integrals.
#[derive(Debug, Clone)]
pub struct Path4 {
    vertices: Vec<Event4>,
    closed: bool,
}

impl Path4 {
    /// Open polyline; needs at least two vertices, all finite, consecutive
    /// vertices distinct.
    pub fn open(vertices: Vec<Event4>) -> Result<Self> {
        Self::validate(&vertices)?;
        Ok(Self { vertices, closed: false })
    }

    /// Closed polyline. If the last vertex does not already repeat the
    /// first, the first is appended.
    pub fn closed(mut vertices: Vec<Event4>) -> Result<Self> {
        if vertices.len() >= 2 && vertices.last() != vertices.first() {
            let first = vertices[0];
            vertices.push(first);
        }
        Self::validate(&vertices)?;
        Ok(Self { vertices, closed: true })
    }

    /// Straight segment between two distinct events.
    pub fn segment(from: Event4, to: Event4) -> Result<Self> {
        Self::open(vec![from, to])
    }

    /// Circle of `radius` in the `q1`-`q2` plane around `center`, traversed
    /// `turns` times (sign sets the orientation), with `segments_per_turn`
    /// chords per revolution. The remaining coordinates are held fixed.
    pub fn circle_xy(
        center: (f64, f64),
        radius: f64,
        turns: i32,
        segments_per_turn: usize,
        q3: f64,
        q4: f64,
    ) -> Result<Self> {
        if turns == 0 {
            return Err(Error::ZeroWindings);
        }
        if !(radius > 0.0) {
            return Err(Error::NonPositiveScale { got: radius });
        }
        if segments_per_turn == 0 {
            return Err(Error::ZeroSegments);
        }
        let total = segments_per_turn * turns.unsigned_abs() as usize;
        let sign = if turns > 0 { 1.0 } else { -1.0 };
        let mut vertices = Vec::with_capacity(total + 1);
        for i in 0..total {
            let angle = sign * 2.0 * std::f64::consts::PI * i as f64 / segments_per_turn as f64;
            vertices.push(Event4::new(
                center.0 + radius * angle.cos(),
                center.1 + radius * angle.sin(),
                q3,
                q4,
            ));
        }
        vertices.push(vertices[0]);
        Self::validate(&vertices)?;
        Ok(Self { vertices, closed: true })
    }

    fn validate(vertices: &[Event4]) -> Result<()> {
        if vertices.len() < 2 {
            return Err(Error::EmptyPath);
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "path vertices" });
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegeneratePath);
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Event4] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Smallest distance from any edge to the `q1 = q2 = 0` axis, measured
    /// in the `q1`-`q2` plane.
    pub fn min_axis_distance(&self) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| segment_axis_distance(&w[0], &w[1]))
            .fold(f64::INFINITY, f64::min)
    }
}

fn segment_axis_distance(a: &Event4, b: &Event4) -> f64 {
    let (ax, ay) = (a.q[0], a.q[1]);
    let (dx, dy) = (b.q[0] - ax, b.q[1] - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (-(ax * dx + ay * dy) / len2).clamp(0.0, 1.0)
    };
    (ax + t * dx).hypot(ay + t * dy)
}

/// Gauge field presets. The stored components are the covariant (lower
/// index) `A_mu`, contracted directly against `dq^mu`.
#[derive(Debug, Clone, PartialEq)]
pub enum GaugeKind {
    Zero,
    Constant {
        potential: [f64; 4],
    },
    /// Exterior potential of a flux line along the `q3` axis, normalized so
    /// the circulation per positive winding is exactly `flux`. Defined only
    /// off the axis.
    Solenoid {
        flux: f64,
    },
    /// Gradient of the scalar `g(q) = linear.q + q.quadratic.q / 2`; gives a
    /// path-independent phase in any region.
    PureGauge {
        linear: [f64; 4],
        quadratic: [[f64; 4]; 4],
    },
}

/// A gauge potential together with the coupling charge.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField {
    kind: GaugeKind,
    charge: f64,
}

impl GaugeField {
    pub fn zero(charge: f64) -> Self {
        Self { kind: GaugeKind::Zero, charge }
    }

    pub fn constant(potential: [f64; 4], charge: f64) -> Self {
        Self { kind: GaugeKind::Constant { potential }, charge }
    }

    pub fn solenoid(flux: f64, charge: f64) -> Self {
        Self { kind: GaugeKind::Solenoid { flux }, charge }
    }

    /// Pure-gauge preset; the quadratic coefficient matrix is symmetrized.
    pub fn pure_gauge(linear: [f64; 4], quadratic: [[f64; 4]; 4], charge: f64) -> Self {
        let mut sym = [[0.0; 4]; 4];
        for (i, row) in sym.iter_mut().enumerate() {
            for (j, item) in row.iter_mut().enumerate() {
                *item = 0.5 * (quadratic[i][j] + quadratic[j][i]);
            }
        }
        Self { kind: GaugeKind::PureGauge { linear, quadratic: sym }, charge }
    }

    pub fn kind(&self) -> &GaugeKind {
        &self.kind
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    /// The phase of a closed loop vanishes for every kind except the
    /// solenoid.
    pub fn is_path_independent(&self) -> bool {
        !matches!(self.kind, GaugeKind::Solenoid { .. })
    }

    /// Covariant components `A_mu(q)`.
    pub fn potential(&self, q: &Event4) -> Result<[f64; 4]> {
        match &self.kind {
            GaugeKind::Zero => Ok([0.0; 4]),
            GaugeKind::Constant { potential } => Ok(*potential),
            GaugeKind::Solenoid { flux } => {
                let r2 = q.q[0] * q.q[0] + q.q[1] * q.q[1];
                if r2.sqrt() < SOLENOID_EXCLUSION_RADIUS {
                    return Err(Error::OutsideFieldDomain {
                        min_radius: SOLENOID_EXCLUSION_RADIUS,
                    });
                }
                let scale = flux / (2.0 * std::f64::consts::PI * r2);
                Ok([-q.q[1] * scale, q.q[0] * scale, 0.0, 0.0])
            }
            GaugeKind::PureGauge { linear, quadratic } => {
                let mut a = *linear;
                for mu in 0..4 {
                    for nu in 0..4 {
                        a[mu] += quadratic[mu][nu] * q.q[nu];
                    }
                }
                Ok(a)
            }
        }
    }

    /// The generating scalar of a pure-gauge field; `None` for other kinds.
    pub fn gauge_function(&self, q: &Event4) -> Option<f64> {
        match &self.kind {
            GaugeKind::PureGauge { linear, quadratic } => {
                let mut g = 0.0;
                for mu in 0..4 {
                    g += linear[mu] * q.q[mu];
                    for nu in 0..4 {
                        g += 0.5 * quadratic[mu][nu] * q.q[mu] * q.q[nu];
                    }
                }
                Some(g)
            }
            _ => None,
        }
    }
}

/// Finite-difference mode for [`phase_derivative_residual`].
#[derive(Debug, Clone, Copy)]
pub enum DerivativeMode {
    /// Central difference with the given step.
    Central { step: f64 },
    /// Exact derivative `(i/2) e^{i theta/2} v`.
    Analytic,
}

/// Residual of the identity `-2i d/d theta v'(theta) = v'(theta)` for
/// `v'(theta) = e^{i theta/2} v`, maximized over evenly spaced angles and
/// both pair members.
pub fn phase_derivative_residual(
    pair: &EigenPair,
    theta_samples: usize,
    mode: DerivativeMode,
) -> Result<f64> {
    if theta_samples < 2 {
        return Err(Error::TooFewSamples);
    }
    if let DerivativeMode::Central { step } = mode {
        if !(step > 0.0) {
            return Err(Error::NonPositiveStep { got: step });
        }
    }
    let mut worst = 0.0f64;
    for member in [pair.v1(), pair.v2()] {
        let norm = member.norm();
        for j in 0..theta_samples {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / theta_samples as f64;
            let derivative_factor = match mode {
                DerivativeMode::Central { step } => {
                    (exp_i((theta + step) / 2.0) - exp_i((theta - step) / 2.0)) / (2.0 * step)
                }
                DerivativeMode::Analytic => c(0.0, 0.5) * exp_i(theta / 2.0),
            };
            let lhs: TwoSpinor = member * (c(0.0, -2.0) * derivative_factor);
            let rhs: TwoSpinor = member * exp_i(theta / 2.0);
            worst = worst.max((lhs - rhs).norm() / norm);
        }
    }
    Ok(worst)
}

/// Single-valued free phase difference `2 p_mu (to - from)^mu`, using the
/// lowered momentum components.
pub fn plane_wave_phase(p: &FourMomentum, from: &Event4, to: &Event4) -> f64 {
    let l = p.lower();
    let mut theta = 0.0;
    for mu in 0..4 {
        theta += 2.0 * l[mu] * (to.q[mu] - from.q[mu]);
    }
    theta
}

/// Composite-midpoint line integral of `2 (p_mu + i F_mu) dq^mu` with a raw
/// complex-valued `F_mu` hook. Exposed for tests; library callers go
/// through [`path_phase`].
#[doc(hidden)]
pub fn path_phase_with<F>(
    p: &FourMomentum,
    f_mu: F,
    path: &Path4,
    segments_per_edge: usize,
) -> Result<Complex64>
where
    F: Fn(&Event4) -> Result<[Complex64; 4]>,
{
    if segments_per_edge == 0 {
        return Err(Error::ZeroSegments);
    }
    let l = p.lower();
    let mut theta = c(0.0, 0.0);
    for w in path.vertices().windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let dq = [
            b.q[0] - a.q[0],
            b.q[1] - a.q[1],
            b.q[2] - a.q[2],
            b.q[3] - a.q[3],
        ];
        let inv = 1.0 / segments_per_edge as f64;
        for s in 0..segments_per_edge {
            let t = (s as f64 + 0.5) * inv;
            let mid = Event4::new(
                a.q[0] + t * dq[0],
                a.q[1] + t * dq[1],
                a.q[2] + t * dq[2],
                a.q[3] + t * dq[3],
            );
            let f = f_mu(&mid)?;
            for mu in 0..4 {
                theta += (c(l[mu], 0.0) + c(0.0, 1.0) * f[mu]) * c(2.0 * dq[mu] * inv, 0.0);
            }
        }
    }
    Ok(theta)
}

/// Phase accumulated along `path`: the composite-midpoint integral of
/// `2 (p_mu + e A_mu) dq^mu`. Real-valued (zero imaginary part) for the
/// real potentials provided here; second-order accurate in the segment
/// length.
///
/// Solenoid paths must keep [`SOLENOID_EXCLUSION_RADIUS`] clear of the
/// axis; the whole chord is checked, not just the sample points.
pub fn path_phase(
    p: &FourMomentum,
    field: &GaugeField,
    path: &Path4,
    segments_per_edge: usize,
) -> Result<Complex64> {
    if matches!(field.kind(), GaugeKind::Solenoid { .. })
        && path.min_axis_distance() < SOLENOID_EXCLUSION_RADIUS
    {
        return Err(Error::PathTouchesAxis { min_radius: SOLENOID_EXCLUSION_RADIUS });
    }
    let e = field.charge();
    path_phase_with(
        p,
        |q| {
            // F_mu = -i e A_mu, so p_mu + i F_mu = p_mu + e A_mu stays real.
            let a = field.potential(q)?;
            Ok([
                c(0.0, -e * a[0]),
                c(0.0, -e * a[1]),
                c(0.0, -e * a[2]),
                c(0.0, -e * a[3]),
            ])
        },
        path,
        segments_per_edge,
    )
}

/// Gradient of the phase, `d theta / d q^mu = 2 (p_mu + e A_mu(q))`,
/// returned as complex values (imaginary parts vanish for real potentials).
pub fn gradient_theta(p: &FourMomentum, field: &GaugeField, q: &Event4) -> Result<[Complex64; 4]> {
    let a = field.potential(q)?;
    let l = p.lower();
    let mut grad = [c(0.0, 0.0); 4];
    for mu in 0..4 {
        grad[mu] = c(2.0 * (l[mu] + field.charge() * a[mu]), 0.0);
    }
    Ok(grad)
}

/// Coupling matrix feeding the phase gradient back into the potential term.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    m: Matrix4<f64>,
}

impl CouplingMatrix {
    pub fn new(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self { m: Matrix4::zeros() }
    }

    pub fn scaled_identity(value: f64) -> Self {
        Self { m: Matrix4::identity() * value }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    /// 2-norm condition number of `I + M`; infinite when singular.
    pub fn condition_number(&self) -> f64 {
        let total = Matrix4::identity() + self.m;
        let sv = total.singular_values();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for s in sv.iter() {
            lo = lo.min(*s);
            hi = hi.max(*s);
        }
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }
}

/// Phase gradient when the potential term is linear in the gradient itself:
/// solves `(I + M) grad = 2 (p + e A(q))` by a direct 4x4 solve.
///
/// With `M = 0` this reduces to [`gradient_theta`] exactly. Systems with
/// condition number above [`COUPLING_CONDITION_LIMIT`] are rejected.
pub fn gradient_theta_implicit(
    p: &FourMomentum,
    field: &GaugeField,
    coupling: &CouplingMatrix,
    q: &Event4,
) -> Result<[Complex64; 4]> {
    let cond = coupling.condition_number();
    if !cond.is_finite() || cond > COUPLING_CONDITION_LIMIT {
        return Err(Error::IllConditioned { cond });
    }
    let rhs = gradient_theta(p, field, q)?;
    let total = Matrix4::identity() + coupling.matrix();
    let lu = total.lu();
    let re = nalgebra::Vector4::new(rhs[0].re, rhs[1].re, rhs[2].re, rhs[3].re);
    let im = nalgebra::Vector4::new(rhs[0].im, rhs[1].im, rhs[2].im, rhs[3].im);
    let x_re = lu.solve(&re).ok_or(Error::IllConditioned { cond })?;
    let x_im = lu.solve(&im).ok_or(Error::IllConditioned { cond })?;
    Ok([
        c(x_re[0], x_im[0]),
        c(x_re[1], x_im[1]),
        c(x_re[2], x_im[2]),
        c(x_re[3], x_im[3]),
    ])
}

const ANCHOR_SEGMENTS: usize = 16;

/// Phase at `q` relative to the origin anchor, along the straight segment.
/// Single-valued fields only; any other anchor shifts a global phase.
fn theta_from_origin(p: &FourMomentum, field: &GaugeField, q: &Event4) -> Result<f64> {
    let origin = Event4::origin();
    if *q == origin {
        return Ok(0.0);
    }
    Ok(path_phase(p, field, &Path4::segment(origin, *q)?, ANCHOR_SEGMENTS)?.re)
}

/// Residual of the coordinate-space relation
/// `-i gamma^mu (d/dq^mu - i e A_mu) psi = psi` for the plane-wave state
/// `psi(q) = e^{i theta(q)/2} psi0`, with central-difference partials of
/// step `h`. Decays as `h^2`.
///
/// The phase must be single valued, so the solenoid is rejected.
pub fn dirac_residual_coordinate(
    pair: &EigenPair,
    field: &GaugeField,
    q: &Event4,
    h: f64,
) -> Result<f64> {
    let psi0 = Bispinor::from_pair(pair);
    let p = FourMomentum::from_rapidity(pair.rapidity(), pair.axis());
    dirac_residual_coordinate_bispinor(&psi0, &p, field, q, h)
}

/// Same as [`dirac_residual_coordinate`] for an explicit base bispinor
/// (e.g. a spin superposition sharing the momentum).
pub fn dirac_residual_coordinate_bispinor(
    psi0: &Bispinor,
    p: &FourMomentum,
    field: &GaugeField,
    q: &Event4,
    h: f64,
) -> Result<f64> {
    if !field.is_path_independent() {
        return Err(Error::PathDependentField);
    }
    if !(h > 0.0) {
        return Err(Error::NonPositiveStep { got: h });
    }
    let base = psi0.as_vector();
    let wave = |x: &Event4| -> Result<FourSpinor> {
        let theta = theta_from_origin(p, field, x)?;
        Ok(base * exp_i(theta / 2.0))
    };

    let center = wave(q)?;
    let norm = center.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let a_q = field.potential(q)?;
    let e = field.charge();

    let mut summed = FourSpinor::zeros();
    for mu in 1..=4 {
        let mut fwd = *q;
        let mut bwd = *q;
        fwd.q[mu - 1] += h;
        bwd.q[mu - 1] -= h;
        let derivative = (wave(&fwd)? - wave(&bwd)?) * c(1.0 / (2.0 * h), 0.0);
        let gauge_term = center * c(0.0, -e * a_q[mu - 1]);
        summed += gamma(mu).expect("index in range") * (derivative + gauge_term);
    }
    let lhs = summed * c(0.0, -1.0);
    Ok((lhs - center).norm() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{spin_down_partner, superpose};
    use crate::pauli::UnitAxis;

    fn sample_pair(u: f64) -> EigenPair {
        let n = UnitAxis::new(0.36, -0.48, 0.8).unwrap();
        EigenPair::new(n, 0.9, u, 1.0).unwrap()
    }

    fn momentum(u: f64) -> FourMomentum {
        FourMomentum::from_rapidity(u, &UnitAxis::new(0.36, -0.48, 0.8).unwrap())
    }

    #[test]
    fn path_validation() {
        assert!(matches!(Path4::open(vec![]), Err(Error::EmptyPath)));
        let p = Event4::new(0.0, 0.0, 0.0, 0.0);
        assert!(matches!(Path4::open(vec![p]), Err(Error::EmptyPath)));
        assert!(matches!(Path4::open(vec![p, p]), Err(Error::DegeneratePath)));
        let q = Event4::new(1.0, 0.0, 0.0, 0.0);
        let closed = Path4::closed(vec![p, q, Event4::new(0.5, 1.0, 0.0, 0.0)]).unwrap();
        assert!(closed.is_closed());
        assert_eq!(closed.vertices().first(), closed.vertices().last());
    }

    #[test]
    fn phase_derivative_modes() {
        let pair = sample_pair(0.7);
        let fd = phase_derivative_residual(&pair, 16, DerivativeMode::Central { step: 1e-5 }).unwrap();
        assert!(fd <= 1e-9, "central-difference residual {fd:.3e}");
        let exact = phase_derivative_residual(&pair, 16, DerivativeMode::Analytic).unwrap();
        assert!(exact <= 1e-14, "analytic residual {exact:.3e}");
    }

    #[test]
    fn phase_derivative_scale_invariance() {
        let a = sample_pair(0.4);
        let b = EigenPair::new(*a.axis(), a.theta(), a.rapidity(), 7.5).unwrap();
        let mode = DerivativeMode::Central { step: 1e-5 };
        let ra = phase_derivative_residual(&a, 8, mode).unwrap();
        let rb = phase_derivative_residual(&b, 8, mode).unwrap();
        assert!((ra - rb).abs() <= 1e-13);
    }

    #[test]
    fn phase_derivative_argument_checks() {
        let pair = sample_pair(0.0);
        assert!(matches!(
            phase_derivative_residual(&pair, 1, DerivativeMode::Analytic),
            Err(Error::TooFewSamples)
        ));
        assert!(matches!(
            phase_derivative_residual(&pair, 4, DerivativeMode::Central { step: 0.0 }),
            Err(Error::NonPositiveStep { .. })
        ));
    }

    #[test]
    fn plane_wave_phase_basics() {
        let p = momentum(0.0);
        let q = Event4::new(0.3, -0.4, 0.5, 0.6);
        assert_eq!(plane_wave_phase(&p, &q, &q), 0.0);
        // At rest only the time coordinate contributes: 2 tau.
        let tau = 1.7;
        let from = Event4::origin();
        let to = Event4::new(0.0, 0.0, 0.0, tau);
        assert!((plane_wave_phase(&p, &from, &to) - 2.0 * tau).abs() < 1e-15);
    }

    #[test]
    fn plane_wave_phase_additivity() {
        let p = momentum(1.2);
        let a = Event4::new(0.1, 0.2, 0.3, 0.4);
        let b = Event4::new(-0.5, 0.9, 0.0, 1.0);
        let mid = Event4::new(2.0, -1.0, 0.4, 0.2);
        let direct = plane_wave_phase(&p, &a, &b);
        let split = plane_wave_phase(&p, &a, &mid) + plane_wave_phase(&p, &mid, &b);
        assert!((direct - split).abs() <= 1e-14);
    }

    #[test]
    fn free_path_phase_equals_plane_wave() {
        let p = momentum(0.9);
        let field = GaugeField::zero(1.0);
        let path = Path4::open(vec![
            Event4::new(0.0, 0.0, 0.0, 0.0),
            Event4::new(0.4, -0.3, 0.2, 0.5),
            Event4::new(-0.2, 0.8, -0.6, 1.1),
        ])
        .unwrap();
        let theta = path_phase(&p, &field, &path, 5).unwrap();
        let expected = plane_wave_phase(&p, &path.vertices()[0], path.vertices().last().unwrap());
        assert!((theta.re - expected).abs() <= 1e-12);
        assert_eq!(theta.im, 0.0);
    }

    #[test]
    fn zero_segments_rejected() {
        let p = momentum(0.0);
        let field = GaugeField::zero(1.0);
        let path = Path4::segment(Event4::origin(), Event4::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!(matches!(path_phase(&p, &field, &path, 0), Err(Error::ZeroSegments)));
    }

    #[test]
    fn solenoid_loop_phase_is_circulation_times_charge() {
        let flux = std::f64::consts::PI;
        let charge = 1.0;
        let field = GaugeField::solenoid(flux, charge);
        let p = momentum(0.6);
        let path = Path4::circle_xy((0.0, 0.0), 1.3, 1, 10_000, 0.0, 0.0).unwrap();
        let theta = path_phase(&p, &field, &path, 1).unwrap();
        assert!((theta.re - 2.0 * charge * flux).abs() <= 1e-6, "{}", theta.re);
    }

    #[test]
    fn solenoid_axis_exclusion() {
        let field = GaugeField::solenoid(1.0, 1.0);
        let p = momentum(0.0);
        // The chord crosses the axis even though no vertex sits on it.
        let path = Path4::segment(
            Event4::new(-1.0, 0.0, 0.0, 0.0),
            Event4::new(1.0, 0.0, 0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            path_phase(&p, &field, &path, 100),
            Err(Error::PathTouchesAxis { .. })
        ));
        assert!(matches!(
            field.potential(&Event4::origin()),
            Err(Error::OutsideFieldDomain { .. })
        ));
    }

    #[test]
    fn bracketing_paths_differ_by_the_loop_phase() {
        let flux = 0.8;
        let charge = 1.0;
        let field = GaugeField::solenoid(flux, charge);
        let p = momentum(0.4);
        let start = Event4::new(-2.0, 0.0, 0.0, 0.0);
        let end = Event4::new(2.0, 0.0, 0.0, 0.0);
        let via_top = Path4::open(vec![start, Event4::new(0.0, 2.0, 0.0, 0.0), end]).unwrap();
        let via_bottom = Path4::open(vec![start, Event4::new(0.0, -2.0, 0.0, 0.0), end]).unwrap();
        let t_top = path_phase(&p, &field, &via_top, 2000).unwrap().re;
        let t_bottom = path_phase(&p, &field, &via_bottom, 2000).unwrap().re;
        assert!(((t_top - t_bottom).abs() - 2.0 * charge * flux).abs() <= 1e-6);
    }

    #[test]
    fn pure_gauge_phase_is_path_independent() {
        let field = GaugeField::pure_gauge(
            [0.3, -0.2, 0.5, 0.1],
            [
                [0.2, 0.1, 0.0, -0.3],
                [0.1, -0.4, 0.2, 0.0],
                [0.0, 0.2, 0.3, 0.1],
                [-0.3, 0.0, 0.1, 0.5],
            ],
            0.7,
        );
        let p = momentum(1.1);
        let start = Event4::new(0.2, -0.4, 0.1, 0.0);
        let end = Event4::new(-1.0, 0.8, 0.5, 1.2);
        let direct = Path4::segment(start, end).unwrap();
        let detour = Path4::open(vec![
            start,
            Event4::new(1.5, 2.0, -0.7, 0.4),
            Event4::new(-0.3, -1.1, 0.9, 0.9),
            end,
        ])
        .unwrap();
        let t1 = path_phase(&p, &field, &direct, 64).unwrap().re;
        let t2 = path_phase(&p, &field, &detour, 64).unwrap().re;
        assert!((t1 - t2).abs() <= 1e-8, "{t1} vs {t2}");
        // Against the analytic value from the generating scalar.
        let expected = plane_wave_phase(&p, &start, &end)
            + 2.0 * field.charge()
                * (field.gauge_function(&end).unwrap() - field.gauge_function(&start).unwrap());
        assert!((t1 - expected).abs() <= 1e-10);
    }

    #[test]
    fn gradient_matches_the_free_momentum() {
        let p = momentum(0.8);
        let field = GaugeField::zero(1.0);
        let grad = gradient_theta(&p, &field, &Event4::origin()).unwrap();
        let l = p.lower();
        for mu in 0..4 {
            assert_eq!(grad[mu], c(2.0 * l[mu], 0.0));
        }
    }

    #[test]
    fn constant_field_gradient_is_position_free() {
        let p = momentum(0.3);
        let field = GaugeField::constant([0.4, -0.1, 0.2, 0.9], -0.6);
        let g1 = gradient_theta(&p, &field, &Event4::origin()).unwrap();
        let g2 = gradient_theta(&p, &field, &Event4::new(3.0, -2.0, 0.5, 7.0)).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn gradient_is_the_derivative_of_path_phase() {
        let p = momentum(0.5);
        let field = GaugeField::pure_gauge(
            [0.1, 0.2, -0.3, 0.4],
            [
                [0.3, 0.0, 0.1, 0.0],
                [0.0, -0.2, 0.0, 0.2],
                [0.1, 0.0, 0.4, 0.0],
                [0.0, 0.2, 0.0, -0.1],
            ],
            1.3,
        );
        let q = Event4::new(0.3, -0.2, 0.6, 0.1);
        let grad = gradient_theta(&p, &field, &q).unwrap();
        let h = 1e-3;
        let dir = [0.5, -0.5, 0.3, 0.64];
        let mut fwd = q;
        let mut bwd = q;
        for mu in 0..4 {
            fwd.q[mu] += h * dir[mu];
            bwd.q[mu] -= h * dir[mu];
        }
        let tf = path_phase(&p, &field, &Path4::segment(Event4::origin(), fwd).unwrap(), 64)
            .unwrap()
            .re;
        let tb = path_phase(&p, &field, &Path4::segment(Event4::origin(), bwd).unwrap(), 64)
            .unwrap()
            .re;
        let fd = (tf - tb) / (2.0 * h);
        let expected: f64 = (0..4).map(|mu| grad[mu].re * dir[mu]).sum();
        assert!((fd - expected).abs() <= 1e-8, "{fd} vs {expected}");
    }

    #[test]
    fn coordinate_dirac_residual_zero_field() {
        let pair = sample_pair(0.8);
        let field = GaugeField::zero(1.0);
        let q = Event4::new(0.3, -0.2, 0.5, 0.7);
        let r = dirac_residual_coordinate(&pair, &field, &q, 1e-4).unwrap();
        assert!(r <= 1e-7, "residual {r:.3e}");
    }

    #[test]
    fn coordinate_dirac_residual_constant_field() {
        let pair = sample_pair(-0.6);
        let field = GaugeField::constant([0.3, -0.2, 0.1, 0.4], 0.9);
        let q = Event4::new(-0.4, 0.1, 0.8, 0.2);
        let r = dirac_residual_coordinate(&pair, &field, &q, 1e-4).unwrap();
        assert!(r <= 1e-7, "residual {r:.3e}");
    }

    #[test]
    fn coordinate_dirac_residual_superposition() {
        let pair = sample_pair(0.5);
        let p = FourMomentum::from_rapidity(0.5, pair.axis());
        let up = Bispinor::from_pair(&pair);
        let down = spin_down_partner(&pair).unwrap();
        let psi0 = superpose(c(0.8, 0.1), &up, c(-0.3, 0.6), &down);
        let field = GaugeField::constant([0.2, 0.0, -0.1, 0.3], 1.0);
        let q = Event4::new(0.1, 0.4, -0.3, 0.6);
        let r = dirac_residual_coordinate_bispinor(&psi0, &p, &field, &q, 1e-4).unwrap();
        assert!(r <= 1e-7, "residual {r:.3e}");
    }

    #[test]
    fn coordinate_dirac_residual_decays_quadratically() {
        let pair = sample_pair(0.7);
        let field = GaugeField::constant([0.1, 0.2, -0.2, 0.3], 0.8);
        let q = Event4::new(0.2, -0.5, 0.4, 0.9);
        let r1 = dirac_residual_coordinate(&pair, &field, &q, 2e-4).unwrap();
        let r2 = dirac_residual_coordinate(&pair, &field, &q, 1e-4).unwrap();
        let ratio = r1 / r2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn coordinate_dirac_rejects_path_dependent_fields() {
        let pair = sample_pair(0.2);
        let field = GaugeField::solenoid(1.0, 1.0);
        let q = Event4::new(1.0, 1.0, 0.0, 0.0);
        assert!(matches!(
            dirac_residual_coordinate(&pair, &field, &q, 1e-4),
            Err(Error::PathDependentField)
        ));
        assert!(matches!(
            dirac_residual_coordinate(&pair, &GaugeField::zero(1.0), &q, 0.0),
            Err(Error::NonPositiveStep { .. })
        ));
    }

    #[test]
    fn implicit_gradient_reduces_at_zero_coupling() {
        let p = momentum(1.0);
        let field = GaugeField::constant([0.3, 0.1, -0.4, 0.2], 0.5);
        let q = Event4::new(0.4, 0.2, -0.1, 0.3);
        let plain = gradient_theta(&p, &field, &q).unwrap();
        let solved = gradient_theta_implicit(&p, &field, &CouplingMatrix::zero(), &q).unwrap();
        for mu in 0..4 {
            assert!((plain[mu] - solved[mu]).norm() <= 1e-13);
        }
    }

    #[test]
    fn implicit_gradient_scales_under_identity_coupling() {
        let p = momentum(0.4);
        let field = GaugeField::zero(1.0);
        let q = Event4::origin();
        let cval = 0.7;
        let solved =
            gradient_theta_implicit(&p, &field, &CouplingMatrix::scaled_identity(cval), &q).unwrap();
        let plain = gradient_theta(&p, &field, &q).unwrap();
        for mu in 0..4 {
            assert!((solved[mu] - plain[mu] / c(1.0 + cval, 0.0)).norm() <= 1e-13);
        }
    }

    #[test]
    fn implicit_gradient_rejects_singular_coupling() {
        let p = momentum(0.0);
        let field = GaugeField::zero(1.0);
        assert!(matches!(
            gradient_theta_implicit(
                &p,
                &field,
                &CouplingMatrix::scaled_identity(-1.0),
                &Event4::origin()
            ),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn quadrature_error_drops_fourfold_under_refinement() {
        let flux = std::f64::consts::PI;
        let field = GaugeField::solenoid(flux, 1.0);
        let p = momentum(0.0);
        let exact = 2.0 * flux;
        let coarse = Path4::circle_xy((0.0, 0.0), 1.0, 1, 200, 0.0, 0.0).unwrap();
        let fine = Path4::circle_xy((0.0, 0.0), 1.0, 1, 400, 0.0, 0.0).unwrap();
        let e1 = (path_phase(&p, &field, &coarse, 1).unwrap().re - exact).abs();
        let e2 = (path_phase(&p, &field, &fine, 1).unwrap().re - exact).abs();
        let ratio = e1 / e2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }
}
