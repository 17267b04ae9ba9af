//! Cobweb (Lamerey) paths, idempotent-map structure and zero-preimage sets of
//! unimodal maps.

use crate::error::{Error, Result};
use crate::interval::{bounded_domain, closed_grid, monotone_solve};
use crate::map_core::{orbit, MapDescriptor};

/// Successive orbit values closer than this count as converged.
pub const CONVERGENCE_TOL: f64 = 1e-12;
pub const MAX_COBWEB_STEPS: usize = 1_000_000;
pub const MAX_PREIMAGE_DEPTH: usize = 20;
/// Preimages closer than this are merged.
pub const PREIMAGE_DEDUP_TOL: f64 = 1e-12;

const UNIMODAL_CHECK_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct CobwebPath {
    /// `(x0, x0), (x0, f(x0)), (f(x0), f(x0)), …`
    pub points: Vec<(f64, f64)>,
    pub seed: f64,
    pub converged: bool,
    pub limit: Option<f64>,
}

impl CobwebPath {
    /// The orbit read off the diagonal points.
    pub fn orbit_values(&self) -> Vec<f64> {
        self.points.iter().step_by(2).map(|p| p.1).collect()
    }
}

/// Cobweb path of `steps` iterations: `2·steps + 1` points alternating
/// between the diagonal and the graph.
///
/// The path counts as converged when the last two orbit values differ by
/// less than 1e−12; `limit` is then the last orbit value.
pub fn cobweb_path(map: &MapDescriptor, x0: f64, steps: usize) -> Result<CobwebPath> {
    if steps > MAX_COBWEB_STEPS {
        return Err(Error::Range(format!("{steps} steps exceeds {MAX_COBWEB_STEPS}")));
    }
    let values = orbit(map, x0, steps)?.values;
    let mut points = Vec::with_capacity(2 * steps + 1);
    points.push((x0, x0));
    for w in values.windows(2) {
        points.push((w[0], w[1]));
        points.push((w[1], w[1]));
    }
    let converged = steps > 0 && (values[steps] - values[steps - 1]).abs() < CONVERGENCE_TOL;
    Ok(CobwebPath {
        points,
        seed: x0,
        converged,
        limit: converged.then(|| values[steps]),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdempotentReport {
    pub is_idempotent: bool,
    pub image_lo: f64,
    pub image_hi: f64,
    pub identity_on_image: bool,
}

/// Samples `φ∘φ = φ` and `φ(y) = y` on the sampled image, over a closed grid of the domain.
pub fn check_idempotent_structure(map: &MapDescriptor, samples: usize, tol: f64) -> Result<IdempotentReport> {
    if samples < 2 {
        return Err(Error::param("need at least 2 samples"));
    }
    let d = bounded_domain(map.domain())?;
    let image = closed_grid(d.lo, d.hi, samples)
        .into_iter()
        .map(|x| map.eval(x))
        .collect::<Result<Vec<_>>>()?;
    // on sampled points, φ(φ(x)) − φ(x) and φ(y) − y for y in the image are the same numbers
    let gap = image
        .iter()
        .map(|&y| map.eval(y).map(|z| (z - y).abs()))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))?;
    Ok(IdempotentReport {
        is_idempotent: gap < tol,
        image_lo: image.iter().copied().fold(f64::INFINITY, f64::min),
        image_hi: image.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        identity_on_image: gap < tol,
    })
}

/// Turning point of a unimodal map of `[0,1]`, when its structure says so.
pub fn turning_point(map: &MapDescriptor) -> Result<f64> {
    match map {
        MapDescriptor::Tent | MapDescriptor::Logistic => Ok(0.5),
        MapDescriptor::Unimodal(u) => Ok(u.turning()),
        MapDescriptor::PiecewiseLinear(p) => {
            let knots = p.knots();
            let (i, _) = knots
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, k)| if k.1 > best.1 { (i, k.1) } else { best });
            if i == 0 || i + 1 == knots.len() {
                return Err(Error::param(format!("{map} has no interior maximum")));
            }
            Ok(knots[i].0)
        }
        MapDescriptor::Conjugated { base, change } => {
            if !change.is_increasing() || change.domain() != crate::interval::Interval::UNIT {
                return Err(Error::param(format!(
                    "{change} is not an increasing self-homeomorphism of [0, 1]"
                )));
            }
            change.apply(turning_point(base)?)
        }
        _ => Err(Error::param(format!("{map} is not a recognised unimodal map"))),
    }
}

/// Validates the unimodal shape: `g(0) = g(1) = 0`, non-decreasing left of
/// the turning point and non-increasing right of it (on 10³-point grids).
fn unimodal_shape(g: &MapDescriptor) -> Result<(f64, f64)> {
    let v = turning_point(g)?;
    let d = g.domain();
    if !(d.contains(0.0) && d.contains(1.0)) {
        return Err(Error::param(format!("{g} is not defined on [0, 1]")));
    }
    if g.eval(0.0)?.abs() > 1e-12 || g.eval(1.0)?.abs() > 1e-12 {
        return Err(Error::param(format!("{g} must vanish at 0 and 1")));
    }
    let left = closed_grid(0.0, v, UNIMODAL_CHECK_SAMPLES)
        .into_iter()
        .map(|x| g.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let right = closed_grid(v, 1.0, UNIMODAL_CHECK_SAMPLES)
        .into_iter()
        .map(|x| g.eval(x))
        .collect::<Result<Vec<_>>>()?;
    if !left.windows(2).all(|w| w[0] <= w[1]) || !right.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::param(format!("{g} is not unimodal about {v}")));
    }
    Ok((v, g.eval(v)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreimageSet {
    pub depth: usize,
    /// Strictly ascending.
    pub points: Vec<f64>,
    /// Largest gap, counting the stretches from 0 to the first point and from the last point to 1.
    pub largest_gap: f64,
}

impl PreimageSet {
    fn new(depth: usize, points: Vec<f64>) -> Self {
        let mut gap = points.first().map_or(1.0, |&p| p);
        for w in points.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        gap = gap.max(1.0 - points.last().copied().unwrap_or(0.0));
        PreimageSet {
            depth,
            points,
            largest_gap: gap,
        }
    }
}

fn has_near(sorted: &[f64], x: f64) -> bool {
    let i = sorted.partition_point(|&p| p < x);
    (i < sorted.len() && sorted[i] - x <= PREIMAGE_DEDUP_TOL)
        || (i > 0 && x - sorted[i - 1] <= PREIMAGE_DEDUP_TOL)
}

/// `⋃_{k ≤ depth} g⁻ᵏ({0})` for a unimodal `g`, by pulling targets back
/// through each monotone branch with bisection.
pub fn zero_preimage_set(g: &MapDescriptor, depth: usize) -> Result<PreimageSet> {
    if depth > MAX_PREIMAGE_DEPTH {
        return Err(Error::Range(format!("depth {depth} exceeds {MAX_PREIMAGE_DEPTH}")));
    }
    let (v, top) = unimodal_shape(g)?;
    let eval = |x: f64| g.eval(x);

    let mut all = vec![0.0];
    let mut frontier = vec![0.0];
    for _ in 0..depth {
        let mut fresh = Vec::new();
        for &t in &frontier {
            if t > top + PREIMAGE_DEDUP_TOL {
                continue;
            }
            let t = t.min(top);
            fresh.push(monotone_solve(eval, t, 0.0, v, true)?);
            fresh.push(monotone_solve(eval, t, v, 1.0, false)?);
        }
        fresh.sort_by(f64::total_cmp);
        fresh.dedup_by(|b, a| *b - *a <= PREIMAGE_DEDUP_TOL);
        fresh.retain(|&x| !has_near(&all, x));
        if fresh.is_empty() {
            break;
        }
        all.extend_from_slice(&fresh);
        all.sort_by(f64::total_cmp);
        frontier = fresh;
    }
    Ok(PreimageSet::new(depth, all))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReport {
    pub largest_gap: f64,
    pub count: usize,
    /// `largest_gap < threshold`: a finite-depth estimate, not a proof of density.
    pub dense_estimate: bool,
}

pub fn density_report(set: &PreimageSet, threshold: f64) -> DensityReport {
    DensityReport {
        largest_gap: set.largest_gap,
        count: set.points.len(),
        dense_estimate: set.largest_gap < threshold,
    }
}
