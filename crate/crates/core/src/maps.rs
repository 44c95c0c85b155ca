//! Numeric artifacts for the CLI: phase maps over coordinate slices, fitted
//! planes, and loop-phase reports.

use crate::error::{Error, Result};
use crate::pairs::FourMomentum;
use crate::phase::{path_phase, Event4, GaugeField, GaugeKind, Path4};

/// Evenly spaced 1-D grid, `count` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridRange {
    pub fn points(&self) -> Vec<f64> {
        if self.count <= 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

/// A 2-D slice of the phase over two coordinates, the others held fixed.
#[derive(Debug, Clone)]
pub struct PhaseMapSpec {
    pub momentum: FourMomentum,
    pub field: GaugeField,
    /// 1-based coordinate indices of the varied pair, e.g. `(1, 4)`.
    pub plane: (usize, usize),
    /// Values of all four coordinates; the two varied entries are ignored.
    pub fixed: [f64; 4],
    /// Applied to both varied axes.
    pub range: GridRange,
    /// Quadrature segments along each anchor-to-point segment.
    pub segments: usize,
}

/// One emitted grid sample. `flagged` marks points whose anchor path enters
/// the excluded solenoid region; their phase is NaN rather than dropped.
#[derive(Debug, Clone, Copy)]
pub struct PhaseMapRow {
    pub qa: f64,
    pub qb: f64,
    pub theta: f64,
    pub flagged: bool,
}

/// Phase at each grid point along the straight path from the origin anchor.
pub fn phase_map(spec: &PhaseMapSpec) -> Result<Vec<PhaseMapRow>> {
    let (ia, ib) = spec.plane;
    if ia < 1 || ia > 4 {
        return Err(Error::IndexOutOfRange { index: ia, min: 1, max: 4 });
    }
    if ib < 1 || ib > 4 || ib == ia {
        return Err(Error::IndexOutOfRange { index: ib, min: 1, max: 4 });
    }
    if spec.segments == 0 {
        return Err(Error::ZeroSegments);
    }
    let anchor = Event4::origin();
    let points = spec.range.points();
    let mut rows = Vec::with_capacity(points.len() * points.len());
    for qa in &points {
        for qb in &points {
            let mut coords = spec.fixed;
            coords[ia - 1] = *qa;
            coords[ib - 1] = *qb;
            let q = Event4::new(coords[0], coords[1], coords[2], coords[3]);
            let theta = if q == anchor {
                Ok(0.0)
            } else {
                path_phase(
                    &spec.momentum,
                    &spec.field,
                    &Path4::segment(anchor, q)?,
                    spec.segments,
                )
                .map(|t| t.re)
            };
            match theta {
                Ok(theta) => rows.push(PhaseMapRow { qa: *qa, qb: *qb, theta, flagged: false }),
                Err(Error::PathTouchesAxis { .. }) | Err(Error::OutsideFieldDomain { .. }) => {
                    rows.push(PhaseMapRow { qa: *qa, qb: *qb, theta: f64::NAN, flagged: true });
                }
                Err(other) => return Err(other),
            }
        }
    }
    Ok(rows)
}

/// Least-squares plane through the unflagged rows.
#[derive(Debug, Clone, Copy)]
pub struct PlaneFit {
    pub slope_a: f64,
    pub slope_b: f64,
    pub offset: f64,
    /// Largest absolute deviation of any fitted point.
    pub max_residual: f64,
}

/// Fits `theta ~ slope_a * qa + slope_b * qb + offset`; `None` with fewer
/// than three usable rows or a degenerate grid.
pub fn fit_plane(rows: &[PhaseMapRow]) -> Option<PlaneFit> {
    let usable: Vec<&PhaseMapRow> = rows.iter().filter(|r| !r.flagged).collect();
    if usable.len() < 3 {
        return None;
    }
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut atb = nalgebra::Vector3::<f64>::zeros();
    for row in &usable {
        let basis = [row.qa, row.qb, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                ata[(i, j)] += basis[i] * basis[j];
            }
            atb[i] += basis[i] * row.theta;
        }
    }
    let sol = ata.lu().solve(&atb)?;
    let max_residual = usable
        .iter()
        .map(|r| (r.theta - (sol[0] * r.qa + sol[1] * r.qb + sol[2])).abs())
        .fold(0.0, f64::max);
    Some(PlaneFit { slope_a: sol[0], slope_b: sol[1], offset: sol[2], max_residual })
}

/// CSV emission with the fixed `qa,qb,theta` header; flagged rows carry
/// `nan` in the phase column.
pub fn phase_map_csv(rows: &[PhaseMapRow]) -> String {
    let mut out = String::from("qa,qb,theta\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            format_float(row.qa),
            format_float(row.qb),
            format_float(row.theta)
        ));
    }
    out
}

/// 17 significant digits; round-trip exact for f64.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Circular loop specification for the loop-phase report.
#[derive(Debug, Clone)]
pub struct LoopSpec {
    pub field: GaugeField,
    pub radius: f64,
    /// Loop center in the `q1`-`q2` plane.
    pub center: (f64, f64),
    /// Signed traversal count; the sign sets the orientation.
    pub turns: i32,
    pub segments_per_turn: usize,
}

/// Measured loop phase against the expected circulation value.
#[derive(Debug, Clone, Copy)]
pub struct LoopPhaseReport {
    pub measured: f64,
    pub expected: f64,
    pub difference: f64,
    pub turns: i32,
    /// Traversals times whether the loop encloses the flux axis.
    pub winding_about_axis: i32,
    pub encloses_axis: bool,
}

/// Integrates a circular loop and compares against `2 e flux * winding`
/// (zero for every path-independent field). The momentum part of a closed
/// loop cancels identically, so the report is momentum-free.
pub fn loop_phase(spec: &LoopSpec) -> Result<LoopPhaseReport> {
    let path = Path4::circle_xy(
        spec.center,
        spec.radius,
        spec.turns,
        spec.segments_per_turn,
        0.0,
        0.0,
    )?;
    if !path.is_closed() {
        return Err(Error::PathNotClosed);
    }
    let rest = FourMomentum::from_rapidity(0.0, &crate::pauli::UnitAxis::z());
    let measured = path_phase(&rest, &spec.field, &path, 1)?.re;
    let encloses_axis = spec.center.0.hypot(spec.center.1) < spec.radius;
    let winding_about_axis = if encloses_axis { spec.turns } else { 0 };
    let expected = match spec.field.kind() {
        GaugeKind::Solenoid { flux } => {
            2.0 * spec.field.charge() * flux * winding_about_axis as f64
        }
        _ => 0.0,
    };
    Ok(LoopPhaseReport {
        measured,
        expected,
        difference: (measured - expected).abs(),
        turns: spec.turns,
        winding_about_axis,
        encloses_axis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::UnitAxis;

    fn rest_map_spec(field: GaugeField) -> PhaseMapSpec {
        PhaseMapSpec {
            momentum: FourMomentum::from_rapidity(0.0, &UnitAxis::z()),
            field,
            plane: (1, 4),
            fixed: [0.0; 4],
            range: GridRange { start: -2.0, stop: 2.0, count: 9 },
            segments: 8,
        }
    }

    #[test]
    fn rest_momentum_phase_varies_only_in_time() {
        let rows = phase_map(&rest_map_spec(GaugeField::zero(1.0))).unwrap();
        for row in &rows {
            assert!((row.theta - 2.0 * row.qb).abs() <= 1e-12);
            assert!(!row.flagged);
        }
    }

    #[test]
    fn free_field_map_is_a_plane() {
        let mut spec = rest_map_spec(GaugeField::zero(1.0));
        spec.momentum = FourMomentum::from_rapidity(0.9, &UnitAxis::new(0.2, 0.5, 0.84).unwrap());
        let rows = phase_map(&spec).unwrap();
        let fit = fit_plane(&rows).unwrap();
        assert!(fit.max_residual <= 1e-10, "plane residual {:.3e}", fit.max_residual);
    }

    #[test]
    fn solenoid_rows_crossing_the_axis_are_flagged() {
        let mut spec = rest_map_spec(GaugeField::solenoid(1.0, 1.0));
        spec.plane = (1, 2);
        let rows = phase_map(&spec).unwrap();
        let flagged = rows.iter().filter(|r| r.flagged).count();
        assert!(flagged > 0, "expected flagged rows over the axis");
        for row in rows.iter().filter(|r| r.flagged) {
            assert!(row.theta.is_nan());
        }
        // Off-axis rows keep finite values.
        assert!(rows.iter().any(|r| !r.flagged && r.theta.is_finite()));
    }

    #[test]
    fn plane_indices_validated() {
        let mut spec = rest_map_spec(GaugeField::zero(1.0));
        spec.plane = (1, 1);
        assert!(phase_map(&spec).is_err());
        spec.plane = (0, 2);
        assert!(phase_map(&spec).is_err());
        spec.plane = (2, 5);
        assert!(phase_map(&spec).is_err());
    }

    #[test]
    fn csv_shape_and_header() {
        let rows = phase_map(&rest_map_spec(GaugeField::zero(1.0))).unwrap();
        let csv = phase_map_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("qa,qb,theta"));
        assert_eq!(lines.count(), rows.len());
    }

    #[test]
    fn loop_phase_matches_circulation() {
        let report = loop_phase(&LoopSpec {
            field: GaugeField::solenoid(std::f64::consts::PI, 1.0),
            radius: 1.0,
            center: (0.0, 0.0),
            turns: 1,
            segments_per_turn: 10_000,
        })
        .unwrap();
        assert!(report.encloses_axis);
        assert_eq!(report.winding_about_axis, 1);
        assert!((report.measured - 2.0 * std::f64::consts::PI).abs() <= 1e-5);
        assert!(report.difference <= 1e-5);
    }

    #[test]
    fn non_enclosing_loop_reports_zero_expected() {
        let report = loop_phase(&LoopSpec {
            field: GaugeField::solenoid(std::f64::consts::PI, 1.0),
            radius: 1.0,
            center: (3.0, 0.0),
            turns: 1,
            segments_per_turn: 10_000,
        })
        .unwrap();
        assert!(!report.encloses_axis);
        assert_eq!(report.winding_about_axis, 0);
        assert_eq!(report.expected, 0.0);
        assert!(report.measured.abs() <= 1e-6);
    }

    #[test]
    fn zero_field_loop_is_quadrature_exact() {
        let report = loop_phase(&LoopSpec {
            field: GaugeField::zero(1.0),
            radius: 2.0,
            center: (0.0, 0.0),
            turns: 2,
            segments_per_turn: 64,
        })
        .unwrap();
        assert!(report.measured.abs() <= 1e-12);
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.0, 1.0, -2.75, 1.234567890123456e-12, 6.02e23] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(f64::NAN), "nan");
    }
}
