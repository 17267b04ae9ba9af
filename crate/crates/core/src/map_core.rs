//! Interval self-maps: descriptors, evaluation and iteration.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::conjugacy::Homeomorphism;
use crate::error::{Error, Result};
use crate::interval::{closed_grid, Interval};

/// Grid size used by [`fixed_points`] for sign-change scanning.
pub const FIXED_POINT_GRID: usize = 10_000;

/// Tolerance for the branch conditions `l(0) = 0` and `r(1) = 0` of a unimodal map.
pub const UNIMODAL_ENDPOINT_TOL: f64 = 1e-12;

const HYPERBOLA_DEGENERACY_TOL: f64 = 1e-9;

/// Linear interpolation through knots with strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::param("piecewise-linear map needs at least two knots"));
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::param("piecewise-linear knots must be finite"));
        }
        if !knots.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::param("piecewise-linear knot abscissae must be strictly increasing"));
        }
        Ok(PiecewiseLinear { knots })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn domain(&self) -> Interval {
        Interval::closed(self.knots[0].0, self.knots[self.knots.len() - 1].0)
    }

    /// Evaluates at a point already known to be inside the domain.
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        // index of the first knot strictly right of x, clamped to a valid segment
        let i = self.knots.partition_point(|k| k.0 <= x).clamp(1, self.knots.len() - 1);
        let (x0, y0) = self.knots[i - 1];
        let (x1, y1) = self.knots[i];
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    }

    pub(crate) fn knot_list(&self) -> String {
        self.knots
            .iter()
            .map(|(x, y)| format!("{x},{y}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// `x ↦ √((1 − e²)(a² − x²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperbola {
    e: f64,
    a: f64,
}

impl Hyperbola {
    pub fn new(e: f64, a: f64) -> Result<Self> {
        check_hyperbola_params(e, a)?;
        Ok(Hyperbola { e, a })
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

pub(crate) fn check_hyperbola_params(e: f64, a: f64) -> Result<()> {
    let e2 = e * e;
    if !(e.is_finite() && a.is_finite()) {
        return Err(Error::param("hyperbola parameters must be finite"));
    }
    if a <= 0.0 {
        return Err(Error::param(format!("hyperbola scale a = {a} must be positive")));
    }
    if (e2 - 1.0).abs() <= HYPERBOLA_DEGENERACY_TOL || (e2 - 2.0).abs() <= HYPERBOLA_DEGENERACY_TOL {
        return Err(Error::param(format!("hyperbola needs e² ∉ {{1, 2}}, got e² = {e2}")));
    }
    Ok(())
}

/// A map on `[0,1]` that follows an increasing branch on `[0, v]` and a
/// decreasing branch on `(v, 1]`, with `l(0) = r(1) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Unimodal {
    turning: f64,
    left: MapDescriptor,
    right: MapDescriptor,
}

impl Unimodal {
    pub fn new(turning: f64, left: MapDescriptor, right: MapDescriptor) -> Result<Self> {
        if !(turning > 0.0 && turning < 1.0) {
            return Err(Error::param(format!("turning point {turning} must lie in (0, 1)")));
        }
        if left.eval(0.0)?.abs() > UNIMODAL_ENDPOINT_TOL {
            return Err(Error::param("left branch must vanish at 0"));
        }
        if right.eval(1.0)?.abs() > UNIMODAL_ENDPOINT_TOL {
            return Err(Error::param("right branch must vanish at 1"));
        }
        let left_vals = closed_grid(0.0, turning, 1000)
            .into_iter()
            .map(|x| left.eval(x))
            .collect::<Result<Vec<_>>>()?;
        if !left_vals.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::param("left branch must be non-decreasing"));
        }
        let right_vals = closed_grid(turning, 1.0, 1001)
            .into_iter()
            .skip(1)
            .map(|x| right.eval(x))
            .collect::<Result<Vec<_>>>()?;
        if !right_vals.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::param("right branch must be non-increasing"));
        }
        Ok(Unimodal {
            turning,
            left,
            right,
        })
    }

    pub fn turning(&self) -> f64 {
        self.turning
    }

    pub fn left(&self) -> &MapDescriptor {
        &self.left
    }

    pub fn right(&self) -> &MapDescriptor {
        &self.right
    }
}

/// An evaluatable self-map of a real interval.
#[derive(Debug, Clone, PartialEq)]
pub enum MapDescriptor {
    /// `4x(1 − x)` on `[0,1]`
    Logistic,
    /// `2x` on `[0,½]`, `2 − 2x` on `(½,1]`
    Tent,
    /// `2x` on `[0,¼]`, `1 − 2x` on `(¼,½]`
    HalfTent,
    /// `2x² − 1` on the real line
    Quadratic,
    /// `2x mod 1` on `[0,1)`
    Doubling,
    Cosine,
    Hyperbola(Hyperbola),
    /// `p ↦ p(m − n·p)` on the real line
    Verhulst { m: f64, n: f64 },
    PiecewiseLinear(PiecewiseLinear),
    Unimodal(Arc<Unimodal>),
    Composed {
        outer: Arc<MapDescriptor>,
        inner: Arc<MapDescriptor>,
    },
    /// `h ∘ base ∘ h⁻¹`
    Conjugated {
        base: Arc<MapDescriptor>,
        change: Arc<Homeomorphism>,
    },
    /// `slope·x + offset` on the real line; slope zero is allowed.
    Linear { slope: f64, offset: f64 },
    /// `sin²(πx)` on the real line
    SineSquared,
    /// A coordinate change used as a self-map of its domain.
    Homeo(Arc<Homeomorphism>),
}

impl MapDescriptor {
    pub fn hyperbola(e: f64, a: f64) -> Result<Self> {
        Hyperbola::new(e, a).map(MapDescriptor::Hyperbola)
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        PiecewiseLinear::new(knots).map(MapDescriptor::PiecewiseLinear)
    }

    pub fn unimodal(turning: f64, left: MapDescriptor, right: MapDescriptor) -> Result<Self> {
        Unimodal::new(turning, left, right).map(|u| MapDescriptor::Unimodal(Arc::new(u)))
    }

    pub fn compose(outer: MapDescriptor, inner: MapDescriptor) -> Self {
        MapDescriptor::Composed {
            outer: Arc::new(outer),
            inner: Arc::new(inner),
        }
    }

    pub fn conjugated(base: MapDescriptor, change: Homeomorphism) -> Self {
        MapDescriptor::Conjugated {
            base: Arc::new(base),
            change: Arc::new(change),
        }
    }

    pub fn linear(slope: f64, offset: f64) -> Self {
        MapDescriptor::Linear { slope, offset }
    }

    pub fn homeo(h: Homeomorphism) -> Self {
        MapDescriptor::Homeo(Arc::new(h))
    }

    /// The identity of `[lo, hi]`.
    pub fn identity_on(lo: f64, hi: f64) -> Result<Self> {
        Self::piecewise_linear(vec![(lo, lo), (hi, hi)])
    }

    pub fn domain(&self) -> Interval {
        match self {
            MapDescriptor::Logistic | MapDescriptor::Tent => Interval::UNIT,
            MapDescriptor::HalfTent => Interval::closed(0.0, 0.5),
            MapDescriptor::Doubling => Interval::right_open(0.0, 1.0),
            MapDescriptor::Quadratic
            | MapDescriptor::Cosine
            | MapDescriptor::Hyperbola(_)
            | MapDescriptor::Verhulst { .. }
            | MapDescriptor::Linear { .. }
            | MapDescriptor::SineSquared => Interval::real_line(),
            MapDescriptor::PiecewiseLinear(p) => p.domain(),
            MapDescriptor::Unimodal(_) => Interval::UNIT,
            MapDescriptor::Composed { inner, .. } => inner.domain(),
            MapDescriptor::Conjugated { base, change } => {
                match base.domain().intersect(&change.domain()) {
                    Some(iv) => change.image(iv),
                    // nothing can be evaluated; an empty closed interval at NaN rejects all points
                    None => Interval::closed(f64::NAN, f64::NAN),
                }
            }
            MapDescriptor::Homeo(h) => h.domain(),
        }
    }

    /// Applies the map once. Points within 1e−12 of a closed domain endpoint
    /// are snapped onto it first.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let x = self.domain().admit(x)?;
        let y = match self {
            MapDescriptor::Logistic => 4.0 * x * (1.0 - x),
            MapDescriptor::Tent => {
                if x <= 0.5 {
                    2.0 * x
                } else {
                    2.0 - 2.0 * x
                }
            }
            MapDescriptor::HalfTent => {
                if x <= 0.25 {
                    2.0 * x
                } else {
                    1.0 - 2.0 * x
                }
            }
            MapDescriptor::Quadratic => 2.0 * x * x - 1.0,
            MapDescriptor::Doubling => {
                let y = 2.0 * x;
                if y >= 1.0 {
                    y - 1.0
                } else {
                    y
                }
            }
            MapDescriptor::Cosine => x.cos(),
            MapDescriptor::Hyperbola(h) => {
                check_hyperbola_params(h.e, h.a)?;
                let radicand = (1.0 - h.e * h.e) * (h.a * h.a - x * x);
                if radicand < 0.0 {
                    return Err(Error::domain(
                        x,
                        format!("hyperbola e={}, a={} (negative radicand {radicand})", h.e, h.a),
                    ));
                }
                radicand.sqrt()
            }
            MapDescriptor::Verhulst { m, n } => x * (m - n * x),
            MapDescriptor::PiecewiseLinear(p) => p.eval_unchecked(x),
            MapDescriptor::Unimodal(u) => {
                if x <= u.turning {
                    u.left.eval(x)?
                } else {
                    u.right.eval(x)?
                }
            }
            MapDescriptor::Composed { outer, inner } => outer.eval(inner.eval(x)?)?,
            MapDescriptor::Conjugated { base, change } => {
                change.apply(base.eval(change.invert(x)?)?)?
            }
            MapDescriptor::Linear { slope, offset } => slope * x + offset,
            MapDescriptor::SineSquared => (PI * x).sin().powi(2),
            MapDescriptor::Homeo(h) => h.apply(x)?,
        };
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Overflow { x })
        }
    }

    fn is_atomic(&self) -> bool {
        !matches!(
            self,
            MapDescriptor::Composed { .. } | MapDescriptor::Conjugated { .. } | MapDescriptor::Unimodal(_)
        )
    }
}

struct Grouped<'a>(&'a MapDescriptor);

impl fmt::Display for Grouped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atomic() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDescriptor::Logistic => f.write_str("logistic"),
            MapDescriptor::Tent => f.write_str("tent"),
            MapDescriptor::HalfTent => f.write_str("halftent"),
            MapDescriptor::Quadratic => f.write_str("quadratic"),
            MapDescriptor::Doubling => f.write_str("doubling"),
            MapDescriptor::Cosine => f.write_str("cosine"),
            MapDescriptor::Hyperbola(h) => write!(f, "hyperbola:e={},a={}", h.e, h.a),
            MapDescriptor::Verhulst { m, n } => write!(f, "verhulst:m={m},n={n}"),
            MapDescriptor::PiecewiseLinear(p) => write!(f, "pwl:{}", p.knot_list()),
            MapDescriptor::Unimodal(u) => write!(
                f,
                "unimodal:v={},l={},r={}",
                u.turning,
                Grouped(&u.left),
                Grouped(&u.right)
            ),
            MapDescriptor::Composed { outer, inner } => {
                write!(f, "comp:{}|{}", Grouped(outer), Grouped(inner))
            }
            MapDescriptor::Conjugated { base, change } => {
                write!(f, "conj:{}|{}", Grouped(base), change)
            }
            MapDescriptor::Linear { slope, offset } => write!(f, "linear:p={slope},q={offset}"),
            MapDescriptor::SineSquared => f.write_str("sin2"),
            MapDescriptor::Homeo(h) => write!(f, "homeo:{h}"),
        }
    }
}

/// A finite orbit `values[k] = fᵏ(seed)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub seed: f64,
    pub values: Vec<f64>,
    /// Canonical text form of the generating map.
    pub map_id: String,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

// Applies the map once as step `step` of an iteration, reporting the
// offending iterate index when the orbit leaves the domain.
fn step_from(map: &MapDescriptor, x: f64, step: usize) -> Result<f64> {
    map.eval(x).map_err(|e| match e {
        Error::Domain { .. } if step > 0 => Error::Escaped { step, x },
        Error::Overflow { .. } => Error::Escaped {
            step: step + 1,
            x: f64::INFINITY,
        },
        other => other,
    })
}

fn check_landed(map: &MapDescriptor, y: f64, step: usize) -> Result<()> {
    map.domain()
        .admit(y)
        .map(|_| ())
        .map_err(|_| Error::Escaped { step, x: y })
}

/// `fⁿ(x)` by `n` successive applications.
pub fn iterate(map: &MapDescriptor, x: f64, n: usize) -> Result<f64> {
    let mut current = map.domain().admit(x).map(|_| x)?;
    for k in 0..n {
        current = step_from(map, current, k)?;
    }
    if n > 0 {
        check_landed(map, current, n)?;
    }
    Ok(current)
}

/// The orbit `x0, f(x0), …, fⁿ(x0)`.
pub fn orbit(map: &MapDescriptor, x0: f64, n: usize) -> Result<Orbit> {
    map.domain().admit(x0)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(x0);
    let mut current = x0;
    for k in 0..n {
        current = step_from(map, current, k)?;
        values.push(current);
    }
    if n > 0 {
        check_landed(map, current, n)?;
    }
    Ok(Orbit {
        seed: x0,
        values,
        map_id: map.to_string(),
    })
}

/// Roots of `f(x) − x` on `[lo, hi]`, sorted ascending.
///
/// Sign changes are located on a 10⁴-cell grid and refined by bisection to
/// `tol`. Fixed points where `f(x) − x` touches zero without changing sign
/// are only reported if a grid point hits them exactly.
pub fn fixed_points(map: &MapDescriptor, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    if !(tol > 0.0) {
        return Err(Error::param(format!("tolerance {tol} must be positive")));
    }
    if !(lo < hi) {
        return Err(Error::domain(lo, format!("[{lo}, {hi}] (empty interval)")));
    }
    let domain = map.domain();
    let lo = domain.admit(lo)?;
    let hi = domain.admit(hi)?;
    let gap = |x: f64| map.eval(x).map(|y| y - x);

    let xs = closed_grid(lo, hi, FIXED_POINT_GRID + 1);
    let gs = xs.iter().map(|&x| gap(x)).collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    for i in 0..xs.len() {
        if gs[i] == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if i + 1 < xs.len() && gs[i + 1] != 0.0 && (gs[i] < 0.0) != (gs[i + 1] < 0.0) {
            roots.push(bisect_root(&gap, xs[i], xs[i + 1], gs[i] < 0.0, tol)?);
        }
    }
    Ok(roots)
}

fn bisect_root<F>(g: &F, mut a: f64, mut b: f64, negative_at_a: bool, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = g(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v < 0.0) == negative_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// `|fᵏ(x0) − fᵏ(x0 + delta)|` for `k = 0..=n`.
pub fn sensitivity_report(map: &MapDescriptor, x0: f64, delta: f64, n: usize) -> Result<Vec<f64>> {
    let a = orbit(map, x0, n)?;
    let b = orbit(map, x0 + delta, n)?;
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(p, q)| (p - q).abs())
        .collect())
}
