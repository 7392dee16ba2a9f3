//! Maximization of the bounding surfaces over the region
//! `Omega = {(x, y) : 0 <= x <= 1, 0 <= y <= 1 - x^2}`.
//!
//! With `x = |c1|`, `y = |c2|` and the admissibility bound on `|c3|`, the
//! triangle inequality gives `48 |H| <= F(x, y)` on `S*_S` and
//! `2304 |H| <= G(x, y)` on `K_S`, where
//!
//! ```text
//! F = x^4 + 6x (1 - x^2 - y^2 / (1 + x)) + 6 x^2 y + 12 y^2
//! G = 11 x^4 + 36x (1 - x^2 - y^2 / (1 + x)) + 20 x^2 y + 64 y^2
//! ```

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{h21_from_schwarz, Family};
use crate::scalar::rat;
use crate::schwarz::{sample_schur, schur_coefficients, SchurParams};

/// Violations must exceed the bound by more than this.
pub const VIOLATION_TOL: f64 = 1e-12;

const REGION_TOL: f64 = 1e-12;
const BOUNDARY_SUBINTERVALS: usize = 10_000;
const BISECTION_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    x: f64,
    y: f64,
}

impl RegionPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let inside = (0.0..=1.0).contains(&x) && y >= 0.0 && y <= 1.0 - x * x + REGION_TOL;
        if !inside {
            return Err(Error::OutsideRegion { x, y });
        }
        Ok(Self { x, y })
    }

    /// Maps `(x, s)` in the unit square onto `(x, s (1 - x^2))`.
    pub fn from_unit_square(x: f64, s: f64) -> Self {
        let x = x.clamp(0.0, 1.0);
        let s = s.clamp(0.0, 1.0);
        Self { x, y: s * (1.0 - x * x) }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn is_interior(&self) -> bool {
        self.x > 0.0 && self.x < 1.0 && self.y > 0.0 && self.y < 1.0 - self.x * self.x
    }

    /// Lexicographic order on `(x, y)`, used to break ties.
    fn precedes(&self, other: &Self) -> bool {
        (self.x, self.y) < (other.x, other.y)
    }
}

/// `(x^4, x(1 - x^2 - y^2/(1+x)), x^2 y, y^2)` weights of the surface.
fn weights(family: Family) -> [f64; 4] {
    match family {
        Family::StarlikeSym => [1.0, 6.0, 6.0, 12.0],
        Family::ConvexSym => [11.0, 36.0, 20.0, 64.0],
    }
}

/// `F(p)` for `S*_S`, `G(p)` for `K_S`.
pub fn surface_value(family: Family, p: &RegionPoint) -> f64 {
    let [w4, w1, w2, w3] = weights(family);
    let (x, y) = (p.x, p.y);
    w4 * x.powi(4) + w1 * x * (1.0 - x * x - y * y / (1.0 + x)) + w2 * x * x * y + w3 * y * y
}

/// `(dF/dx, r_y)` where `r_y` is the y-derivative scaled by a positive
/// factor: `(1+x)/6 dF/dy = x^2 + x^3 + 4y + 2xy` and
/// `(1+x)/4 dG/dy = 5x^2 + 5x^3 + 32y + 14xy`.
pub fn critical_residuals(family: Family, p: &RegionPoint) -> Result<(f64, f64)> {
    if !p.is_interior() {
        return Err(Error::OnBoundary { x: p.x, y: p.y });
    }
    Ok(residuals_unchecked(family, p.x, p.y))
}

fn residuals_unchecked(family: Family, x: f64, y: f64) -> (f64, f64) {
    let q = y * y / ((1.0 + x) * (1.0 + x));
    match family {
        Family::StarlikeSym => (
            4.0 * x.powi(3) - 18.0 * x * x + 12.0 * x * y - 6.0 * q + 6.0,
            x * x + x.powi(3) + 4.0 * y + 2.0 * x * y,
        ),
        Family::ConvexSym => (
            44.0 * x.powi(3) - 108.0 * x * x + 40.0 * x * y - 36.0 * q + 36.0,
            5.0 * x * x + 5.0 * x.powi(3) + 32.0 * y + 14.0 * x * y,
        ),
    }
}

/// Smallest `r_y` over an `n x n` grid strictly inside the region,
/// skipping points with `y < y_floor`. `None` if no point qualifies.
pub fn interior_ry_minimum(family: Family, n: usize, y_floor: f64) -> Option<f64> {
    let step = 1.0 / (n + 1) as f64;
    let mut min: Option<f64> = None;
    for i in 1..=n {
        for j in 1..=n {
            let p = RegionPoint::from_unit_square(i as f64 * step, j as f64 * step);
            if p.y < y_floor || !p.is_interior() {
                continue;
            }
            let (_, ry) = residuals_unchecked(family, p.x, p.y);
            min = Some(min.map_or(ry, |m: f64| m.min(ry)));
        }
    }
    min
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Edge {
    /// `y = 0`, parametrized by `x`.
    #[serde(rename = "y=0")]
    XAxis,
    /// `x = 0`, parametrized by `y`.
    #[serde(rename = "x=0")]
    YAxis,
    /// `y = 1 - x^2`, parametrized by `x`.
    #[serde(rename = "y=1-x^2")]
    Curve,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::XAxis, Edge::YAxis, Edge::Curve];

    pub fn label(self) -> &'static str {
        match self {
            Edge::XAxis => "y=0",
            Edge::YAxis => "x=0",
            Edge::Curve => "y=1-x^2",
        }
    }

    fn point(self, t: f64) -> RegionPoint {
        match self {
            Edge::XAxis => RegionPoint { x: t, y: 0.0 },
            Edge::YAxis => RegionPoint { x: 0.0, y: t },
            Edge::Curve => RegionPoint { x: t, y: 1.0 - t * t },
        }
    }
}

/// Ascending coefficients of the surface restricted to an edge, as a
/// polynomial in the edge parameter on `[0, 1]`.
pub fn restriction_polynomial(family: Family, edge: Edge) -> [f64; 5] {
    match (family, edge) {
        (Family::StarlikeSym, Edge::XAxis) => [0.0, 6.0, 0.0, -6.0, 1.0],
        (Family::StarlikeSym, Edge::YAxis) => [0.0, 0.0, 12.0, 0.0, 0.0],
        (Family::StarlikeSym, Edge::Curve) => [12.0, 0.0, -12.0, 0.0, 1.0],
        (Family::ConvexSym, Edge::XAxis) => [0.0, 36.0, 0.0, -36.0, 11.0],
        (Family::ConvexSym, Edge::YAxis) => [0.0, 0.0, 64.0, 0.0, 0.0],
        (Family::ConvexSym, Edge::Curve) => [64.0, 0.0, -72.0, 0.0, 19.0],
    }
}

pub fn eval_poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Maximum of a polynomial on `[0, 1]`: derivative sign changes are
/// isolated on a uniform grid, bisected, and compared with the endpoints.
/// Ties go to the smallest argument.
pub fn maximize_on_unit_interval(coeffs: &[f64]) -> (f64, f64) {
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect();
    let d = |t: f64| eval_poly(&deriv, t);

    let mut candidates = vec![0.0, 1.0];
    let h = 1.0 / BOUNDARY_SUBINTERVALS as f64;
    for i in 0..BOUNDARY_SUBINTERVALS {
        let (mut lo, mut hi) = (i as f64 * h, (i + 1) as f64 * h);
        let (dlo, dhi) = (d(lo), d(hi));
        if dlo == 0.0 {
            candidates.push(lo);
            continue;
        }
        if dlo * dhi > 0.0 || dhi == 0.0 {
            continue;
        }
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            if d(mid) * dlo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        candidates.push(0.5 * (lo + hi));
    }

    candidates
        .into_iter()
        .map(|t| (t, eval_poly(coeffs, t)))
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
                cand
            } else {
                best
            }
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeMaximum {
    pub edge: Edge,
    pub value: f64,
    pub argmax: RegionPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryMaxima {
    pub x_axis: EdgeMaximum,
    pub y_axis: EdgeMaximum,
    pub curve: EdgeMaximum,
}

impl BoundaryMaxima {
    pub fn edges(&self) -> [EdgeMaximum; 3] {
        [self.x_axis, self.y_axis, self.curve]
    }
}

pub fn boundary_maxima(family: Family) -> BoundaryMaxima {
    let on = |edge: Edge| {
        let (t, value) = maximize_on_unit_interval(&restriction_polynomial(family, edge));
        EdgeMaximum {
            edge,
            value,
            argmax: edge.point(t),
        }
    };
    BoundaryMaxima {
        x_axis: on(Edge::XAxis),
        y_axis: on(Edge::YAxis),
        curve: on(Edge::Curve),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceReport {
    pub family: Family,
    pub max_value: f64,
    pub argmax: RegionPoint,
    pub grid_size: usize,
    pub refinement_steps: usize,
    pub boundary_maxima: BoundaryMaxima,
    /// Smallest scaled y-residual over the interior grid points.
    pub interior_min_ry: f64,
    /// `interior_min_ry > 0`: no critical point among the interior samples.
    pub interior_critical_free: bool,
}

/// Grid search over `(x, s) in [0,1]^2` mapped onto the region, then
/// coordinate refinement around the best cell until the gain drops below
/// `tol`. The boundary maxima are folded in as candidates.
pub fn maximize_surface(family: Family, grid: usize, tol: f64) -> Result<SurfaceReport> {
    if grid < 101 {
        return Err(Error::InvalidArgument(format!("grid {grid} is below 101")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let value_at = |x: f64, s: f64| surface_value(family, &RegionPoint::from_unit_square(x, s));
    let step = 1.0 / (grid - 1) as f64;

    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..grid {
        for j in 0..grid {
            let (x, s) = (i as f64 * step, j as f64 * step);
            let v = value_at(x, s);
            if v > best.2 {
                best = (x, s, v);
            }
        }
    }

    let mut refinement_steps = 0;
    let mut h = step;
    while h >= tol && refinement_steps < 100_000 {
        let (x, s, v) = best;
        let moves = [(x - h, s), (x + h, s), (x, s - h), (x, s + h)];
        let improved = moves
            .iter()
            .map(|&(mx, ms)| (mx.clamp(0.0, 1.0), ms.clamp(0.0, 1.0)))
            .map(|(mx, ms)| (mx, ms, value_at(mx, ms)))
            .filter(|cand| cand.2 - v >= tol)
            .max_by(|a, b| a.2.total_cmp(&b.2));
        match improved {
            Some(cand) => {
                best = cand;
                refinement_steps += 1;
            }
            None => h *= 0.5,
        }
    }

    let boundary = boundary_maxima(family);
    let mut argmax = RegionPoint::from_unit_square(best.0, best.1);
    let mut max_value = best.2;
    for edge in boundary.edges() {
        let better = edge.value > max_value;
        let tie = edge.value == max_value && edge.argmax.precedes(&argmax);
        if better || tie {
            max_value = edge.value;
            argmax = edge.argmax;
        }
    }

    let interior_min_ry = interior_ry_minimum(family, grid - 2, 0.0).unwrap_or(f64::INFINITY);
    Ok(SurfaceReport {
        family,
        max_value,
        argmax,
        grid_size: grid,
        refinement_steps,
        boundary_maxima: boundary,
        interior_min_ry,
        interior_critical_free: interior_min_ry > 0.0,
    })
}

/// Multiplier between `|H|` and the surface: 48 for `S*_S`, 2304 for `K_S`.
pub fn surface_scale(family: Family) -> i64 {
    match family {
        Family::StarlikeSym => 48,
        Family::ConvexSym => 2304,
    }
}

pub fn bound_from_surface(family: Family, report: &SurfaceReport) -> f64 {
    report.max_value / surface_scale(family) as f64
}

/// The same bound as an exact rational, reading the float maximum exactly.
pub fn bound_from_surface_exact(family: Family, report: &SurfaceReport) -> Option<BigRational> {
    BigRational::from_float(report.max_value).map(|m| m * rat(1, surface_scale(family)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub params: SchurParams<Complex64>,
    pub h_abs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StressReport {
    pub family: Family,
    pub count: usize,
    pub seed: u64,
    pub bound: f64,
    pub max_abs: f64,
    pub argmax_index: usize,
    pub argmax: SchurParams<Complex64>,
    pub violations: Vec<Violation>,
}

/// Evaluates `|H|` on `count` realizable samples and records the supremum
/// and every value above the sharp bound plus [`VIOLATION_TOL`].
pub fn stress_test(family: Family, count: usize, seed: u64) -> Result<StressReport> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let bound = family.sharp_bound_f64();
    let mut max_abs = f64::NEG_INFINITY;
    let mut argmax = None;
    let mut argmax_index = 0;
    let mut violations = Vec::new();
    for (index, t) in sample_schur(count, seed).enumerate() {
        let h_abs = h21_from_schwarz(family, &schur_coefficients(&t))?.norm();
        if h_abs > bound + VIOLATION_TOL {
            violations.push(Violation {
                index,
                params: t.clone(),
                h_abs,
            });
        }
        if h_abs > max_abs {
            max_abs = h_abs;
            argmax_index = index;
            argmax = Some(t);
        }
    }
    Ok(StressReport {
        family,
        count,
        seed,
        bound,
        max_abs,
        argmax_index,
        argmax: argmax.expect("count >= 1"),
        violations,
    })
}
