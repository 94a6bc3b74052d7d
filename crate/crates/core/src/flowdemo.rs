//! The disk flow `v = (y(1 − r²), −x(1 − r²))` on the closed unit disk.
//!
//! In polar form `dr/dt = 0` and `dθ/dt = −(1 − r²)`: every circle `S_r` is
//! invariant and rotated clockwise with period `2π/(1 − r²)`, while the origin
//! and the boundary circle are fixed. The orbit relation pairs points of the
//! same circle, so `((rₙ, 0), (−rₙ, 0))` lies in it for every `n`, but the limit
//! `((1, 0), (−1, 0))` does not. Everything here is floating point and labelled
//! as a numeric illustration.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

/// Slack allowed when checking that a point lies in the closed disk.
pub const DISK_TOLERANCE: f64 = 1e-12;

/// Integration time after which [`estimate_period`] gives up.
pub const PERIOD_CAP_TIME: f64 = 1e4;

pub const ILLUSTRATION_VERDICT: &str = "R not closed (numeric illustration)";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("point ({x}, {y}) lies outside the closed unit disk")]
    OutsideDisk { x: f64, y: f64 },
    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("no return to the start ray from radius {r} within time {cap}")]
    NonPeriodic { r: f64, cap: f64 },
}

pub type FlowResult<T> = Result<T, FlowError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> FlowResult<Self> {
        if x * x + y * y > 1.0 + DISK_TOLERANCE || !x.is_finite() || !y.is_finite() {
            return Err(FlowError::OutsideDisk { x, y });
        }
        Ok(PlanarPoint { x, y })
    }

    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &PlanarPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

pub fn eval_field(p: PlanarPoint) -> FlowResult<(f64, f64)> {
    PlanarPoint::new(p.x, p.y)?;
    Ok(field(p.x, p.y))
}

fn field(x: f64, y: f64) -> (f64, f64) {
    let s = 1.0 - (x * x + y * y);
    (y * s, -x * s)
}

fn rk4_step(x: f64, y: f64, h: f64) -> (f64, f64) {
    let (k1x, k1y) = field(x, y);
    let (k2x, k2y) = field(x + 0.5 * h * k1x, y + 0.5 * h * k1y);
    let (k3x, k3y) = field(x + 0.5 * h * k2x, y + 0.5 * h * k2y);
    let (k4x, k4y) = field(x + h * k3x, y + h * k3y);
    (
        x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<PlanarPoint>,
    pub dt: f64,
    pub integrator: &'static str,
    /// `max |r(t) − r(0)|` over the samples.
    pub max_radius_drift: f64,
}

impl Trajectory {
    pub fn last(&self) -> PlanarPoint {
        *self.points.last().expect("trajectories hold the start point")
    }

    /// CSV with header `t,x,y,r`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,r\n");
        for (t, p) in self.times.iter().zip(&self.points) {
            out.push_str(&format!("{t},{},{},{}\n", p.x, p.y, p.radius()));
        }
        out
    }
}

/// Fixed-step classical Runge–Kutta from `p0`, `steps` steps of size `dt`.
pub fn integrate(p0: PlanarPoint, dt: f64, steps: usize) -> FlowResult<Trajectory> {
    PlanarPoint::new(p0.x, p0.y)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(FlowError::InvalidStep(dt));
    }
    let r0 = p0.radius();
    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    let (mut x, mut y) = (p0.x, p0.y);
    let mut drift: f64 = 0.0;
    times.push(0.0);
    points.push(p0);
    for i in 1..=steps {
        (x, y) = rk4_step(x, y, dt);
        let p = PlanarPoint { x, y };
        drift = drift.max((p.radius() - r0).abs());
        times.push(i as f64 * dt);
        points.push(p);
    }
    Ok(Trajectory {
        times,
        points,
        dt,
        integrator: "rk4",
        max_radius_drift: drift,
    })
}

/// `2π/(1 − r²)`.
pub fn analytic_period(r: f64) -> f64 {
    2.0 * PI / (1.0 - r * r)
}

/// Time for the unwrapped polar angle of the orbit of `(r, 0)` to sweep a full turn.
fn first_return(r: f64, dt: f64) -> FlowResult<f64> {
    let (mut x, mut y) = (r, 0.0);
    let mut swept = 0.0;
    let mut angle = 0.0f64;
    let mut t = 0.0;
    while t < PERIOD_CAP_TIME {
        (x, y) = rk4_step(x, y, dt);
        let next = y.atan2(x);
        let mut d = next - angle;
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        angle = next;
        let before = swept;
        swept += d.abs();
        if swept >= 2.0 * PI {
            // linear interpolation inside the last step
            return Ok(t + dt * (2.0 * PI - before) / (swept - before));
        }
        t += dt;
    }
    Err(FlowError::NonPeriodic {
        r,
        cap: PERIOD_CAP_TIME,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodEstimate {
    pub r: f64,
    pub dt: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Richardson combination of the `dt` and `dt/2` first-return times.
    pub measured: f64,
    pub analytic: f64,
    pub relative_error: f64,
}

/// First-return time of the orbit through `(r, 0)`, refined from `dt` and `dt/2`.
pub fn estimate_period(r: f64, dt: f64) -> FlowResult<PeriodEstimate> {
    PlanarPoint::new(r, 0.0)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(FlowError::InvalidStep(dt));
    }
    let coarse = first_return(r, dt)?;
    let fine = first_return(r, dt / 2.0)?;
    // phase error of the integrator is fourth order
    let measured = (16.0 * fine - coarse) / 15.0;
    let analytic = analytic_period(r);
    Ok(PeriodEstimate {
        r,
        dt,
        coarse,
        fine,
        measured,
        analytic,
        relative_error: (measured - analytic).abs() / analytic,
    })
}

/// Radius drift after integrating the orbit of `(r, 0)` over one analytic period.
pub fn period_drift(r: f64, dt: f64) -> FlowResult<f64> {
    let steps = (analytic_period(r) / dt).round() as usize;
    let traj = integrate(PlanarPoint::new(r, 0.0)?, dt, steps)?;
    Ok((traj.last().radius() - r).abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderCheck {
    pub r: f64,
    pub dt: f64,
    pub drift: f64,
    pub drift_half_step: f64,
    /// `drift / drift_half_step`.
    pub factor: f64,
}

pub fn order_check(r: f64, dt: f64) -> FlowResult<OrderCheck> {
    let drift = period_drift(r, dt)?;
    let drift_half_step = period_drift(r, dt / 2.0)?;
    Ok(OrderCheck {
        r,
        dt,
        drift,
        drift_half_step,
        factor: drift / drift_half_step,
    })
}

/// `1 − 1/√(πn)`.
pub fn witness_radius(n: u32) -> f64 {
    1.0 - 1.0 / (PI * n as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub n: u32,
    pub r_n: f64,
    pub start: PlanarPoint,
    pub target: PlanarPoint,
    /// Where the orbit of `start` is after half a period.
    pub reached: PlanarPoint,
    pub error: f64,
    /// `error < epsilon`: the pair `(start, target)` lies in the orbit relation.
    pub in_relation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub epsilon: f64,
    pub dt: f64,
    pub entries: Vec<WitnessEntry>,
    /// `(1, 0)` and `(−1, 0)` do not move, so they share no orbit.
    pub boundary_fixed: bool,
    pub limit_pair: (PlanarPoint, PlanarPoint),
    pub argument: String,
    pub verdict: &'static str,
}

pub fn r_witness_report(n_max: u32, dt: f64, epsilon: f64) -> FlowResult<WitnessReport> {
    let mut entries = Vec::new();
    for n in 1..=n_max.max(1) {
        let r_n = witness_radius(n);
        let start = PlanarPoint::new(r_n, 0.0)?;
        let target = PlanarPoint::new(-r_n, 0.0)?;
        let half = analytic_period(r_n) / 2.0;
        let steps = (half / dt).ceil() as usize;
        let reached = integrate(start, half / steps as f64, steps)?.last();
        let error = reached.distance(&target);
        entries.push(WitnessEntry {
            n,
            r_n,
            start,
            target,
            reached,
            error,
            in_relation: error < epsilon,
        });
    }
    let east = PlanarPoint::new(1.0, 0.0)?;
    let west = PlanarPoint::new(-1.0, 0.0)?;
    let boundary_fixed = [east, west].iter().all(|p| {
        integrate(*p, dt, 1000)
            .map(|t| t.points.iter().all(|q| q == p))
            .unwrap_or(false)
    });
    let all_in = entries.iter().all(|e| e.in_relation);
    Ok(WitnessReport {
        epsilon,
        dt,
        argument: format!(
            "((r_n, 0), (-r_n, 0)) lies in R for n = 1..{n_max} ({}); r_n -> 1, so these pairs converge to \
             ((1, 0), (-1, 0)), which is not in R because both points are fixed ({boundary_fixed})",
            if all_in { "each confirmed" } else { "NOT all confirmed" }
        ),
        entries,
        boundary_fixed,
        limit_pair: (east, west),
        verdict: ILLUSTRATION_VERDICT,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    pub dt: f64,
    pub tolerance_period: f64,
    pub tolerance_drift: f64,
    pub n_max: u32,
    /// Step pair for the convergence-order check.
    pub order_dt: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            dt: 1e-3,
            tolerance_period: 5e-3,
            tolerance_drift: 1e-6,
            n_max: 5,
            order_dt: 0.2,
        }
    }
}

pub const PERIOD_RADII: [f64; 4] = [0.3, 0.5, 0.7, 0.9];
pub const DRIFT_RADII: [f64; 3] = [0.3, 0.5, 0.9];
pub const ORDER_WINDOW: (f64, f64) = (8.0, 32.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftEntry {
    pub r: f64,
    pub drift: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodEntry {
    #[serde(flatten)]
    pub estimate: PeriodEstimate,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowReport {
    pub config: FlowConfig,
    pub drift: Vec<DriftEntry>,
    pub periods: Vec<PeriodEntry>,
    pub order: OrderCheck,
    pub order_ok: bool,
    pub witness: WitnessReport,
    pub all_ok: bool,
}

pub fn flow_report(config: FlowConfig) -> FlowResult<FlowReport> {
    let drift = DRIFT_RADII
        .iter()
        .map(|&r| {
            let d = period_drift(r, config.dt)?;
            Ok(DriftEntry {
                r,
                drift: d,
                ok: d < config.tolerance_drift,
            })
        })
        .collect::<FlowResult<Vec<_>>>()?;
    let periods = PERIOD_RADII
        .iter()
        .map(|&r| {
            let e = estimate_period(r, config.dt)?;
            Ok(PeriodEntry {
                ok: e.relative_error < config.tolerance_period,
                estimate: e,
            })
        })
        .collect::<FlowResult<Vec<_>>>()?;
    let order = order_check(0.5, config.order_dt)?;
    let order_ok = (ORDER_WINDOW.0..=ORDER_WINDOW.1).contains(&order.factor);
    let witness = r_witness_report(config.n_max, config.dt, 1e-6)?;
    let all_ok = drift.iter().all(|d| d.ok)
        && periods.iter().all(|p| p.ok)
        && order_ok
        && witness.boundary_fixed
        && witness.entries.iter().all(|e| e.in_relation);
    Ok(FlowReport {
        config,
        drift,
        periods,
        order,
        order_ok,
        witness,
        all_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> PlanarPoint {
        PlanarPoint::new(x, y).unwrap()
    }

    #[test]
    fn field_values() {
        assert_eq!(eval_field(pt(0.0, 0.0)).unwrap(), (0.0, 0.0));
        assert_eq!(eval_field(pt(1.0, 0.0)).unwrap(), (0.0, 0.0));
        let (vx, vy) = eval_field(pt(0.5, 0.0)).unwrap();
        assert_eq!(vx, 0.0);
        assert!((vy + 0.375).abs() < 1e-15);
        assert!(matches!(
            PlanarPoint::new(1.0, 0.1),
            Err(FlowError::OutsideDisk { .. })
        ));
        assert!(PlanarPoint::new(1.0 + 1e-13, 0.0).is_ok());
    }

    #[test]
    fn fixed_points_stay_put() {
        for p in [pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, -1.0)] {
            let t = integrate(p, 0.37, 50).unwrap();
            assert!(t.points.iter().all(|q| *q == p));
            assert_eq!(t.max_radius_drift, 0.0);
        }
        assert!(matches!(integrate(pt(0.1, 0.0), 0.0, 3), Err(FlowError::InvalidStep(_))));
    }

    #[test]
    fn times_increase_and_csv_has_rows() {
        let t = integrate(pt(0.5, 0.0), 0.1, 10).unwrap();
        assert!(t.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(t.to_csv().lines().count(), 12);
    }

    #[test]
    fn small_radius_period_tends_to_two_pi() {
        let e = estimate_period(1e-3, 1e-3).unwrap();
        assert!((e.measured - 2.0 * PI).abs() < 1e-4);
    }

    #[test]
    fn fixed_start_never_returns() {
        assert!(matches!(first_return(1.0, 1.0), Err(FlowError::NonPeriodic { .. })));
    }

    #[test]
    fn witness_radii() {
        assert!((witness_radius(1) - 0.435_810_4).abs() < 1e-7);
        assert!(witness_radius(1_000_000) > 0.999);
        let report = r_witness_report(2, 1e-3, 1e-6).unwrap();
        assert!(report.boundary_fixed);
        assert!(report.entries.iter().all(|e| e.in_relation));
        assert_eq!(report.verdict, "R not closed (numeric illustration)");
    }
}
