//! Coordinate changes and numerical (semi-)conjugacy checks.
//!
//! A map `g` is conjugate to `f` through `h` when `h ∘ f = g ∘ h`. The
//! checks here sample that identity on grids and report the worst residual;
//! they never claim a conjugacy exists in the exact sense.

mod homeo;

pub use homeo::{Homeomorphism, Mobius, MOBIUS_DEGENERACY_TOL};

use crate::error::{Error, Result};
use crate::interval::{bounded_domain, closed_grid, interior_grid};
use crate::map_core::{iterate, orbit, MapDescriptor};

/// Ratio between the separation that counts as a conflict and the
/// tolerance under which two points count as coincident.
pub const CONFLICT_RATIO: f64 = 10.0;

pub fn apply_homeo(h: &Homeomorphism, x: f64) -> Result<f64> {
    h.apply(x)
}

pub fn invert_homeo(h: &Homeomorphism, y: f64) -> Result<f64> {
    h.invert(y)
}

/// `h ∘ f ∘ h⁻¹`
pub fn conjugate_map(f: &MapDescriptor, h: &Homeomorphism) -> MapDescriptor {
    MapDescriptor::conjugated(f.clone(), h.clone())
}

/// Pointwise residuals of a sampled (semi-)conjugacy identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub argmax: f64,
}

impl ConjugacyReport {
    fn from_residuals(grid: Vec<f64>, residuals: Vec<f64>) -> Result<Self> {
        if let Some(i) = residuals.iter().position(|r| !r.is_finite()) {
            return Err(Error::domain(grid[i], "a non-finite residual"));
        }
        let (argmax, max_residual) = grid
            .iter()
            .zip(&residuals)
            .fold((grid[0], residuals[0]), |best, (&x, &r)| {
                if r > best.1 {
                    (x, r)
                } else {
                    best
                }
            });
        Ok(ConjugacyReport {
            grid,
            residuals,
            max_residual,
            argmax,
        })
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        Err(Error::param(format!("need at least 2 samples, got {samples}")))
    } else {
        Ok(())
    }
}

/// Samples `|h(f(x)) − g(h(x))|` on `samples` cell midpoints of `f`'s domain.
pub fn verify_conjugacy(
    f: &MapDescriptor,
    g: &MapDescriptor,
    h: &Homeomorphism,
    samples: usize,
) -> Result<ConjugacyReport> {
    check_samples(samples)?;
    let d = bounded_domain(f.domain())?;
    let grid = interior_grid(d.lo, d.hi, samples);
    let residuals = grid
        .iter()
        .map(|&x| Ok((h.apply(f.eval(x)?)? - g.eval(h.apply(x)?)?).abs()))
        .collect::<Result<Vec<_>>>()?;
    ConjugacyReport::from_residuals(grid, residuals)
}

/// Samples `|f(h(x)) − h(g(x))|` on cell midpoints of `[lo, hi]`; `h` need not be invertible.
pub fn verify_semiconjugacy(
    f: &MapDescriptor,
    g: &MapDescriptor,
    h: &MapDescriptor,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<ConjugacyReport> {
    check_samples(samples)?;
    if !(lo < hi) {
        return Err(Error::domain(lo, format!("[{lo}, {hi}] (empty interval)")));
    }
    let grid = interior_grid(lo, hi, samples);
    let residuals = grid
        .iter()
        .map(|&x| Ok((f.eval(h.eval(x)?)? - h.eval(g.eval(x)?)?).abs()))
        .collect::<Result<Vec<_>>>()?;
    ConjugacyReport::from_residuals(grid, residuals)
}

/// Smallest `p ≤ p_max` with `sup |fᵖ(x) − x| < tol` over an interior grid, if any.
pub fn periodicity_order(
    map: &MapDescriptor,
    p_max: usize,
    samples: usize,
    tol: f64,
) -> Result<Option<usize>> {
    check_samples(samples)?;
    if p_max == 0 {
        return Err(Error::param("p_max must be at least 1"));
    }
    let d = bounded_domain(map.domain())?;
    let mut current = interior_grid(d.lo, d.hi, samples);
    let start = current.clone();
    for p in 1..=p_max {
        current = current
            .iter()
            .map(|&x| map.eval(x).map_err(|_| Error::Escaped { step: p, x }))
            .collect::<Result<Vec<_>>>()?;
        let worst = current
            .iter()
            .zip(&start)
            .map(|(y, x)| (y - x).abs())
            .fold(0.0, f64::max);
        if worst < tol {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// `x ↦ −(a + x)/(1 + b·x)` on `[lo, hi]`, which must avoid the pole `−1/b`.
pub fn mobius_involution(a: f64, b: f64, lo: f64, hi: f64) -> Result<Homeomorphism> {
    Mobius::new(a, b, lo, hi).map(Homeomorphism::Mobius)
}

/// `max |x + φ(x) + f(x·φ(x))|` over a closed grid of `[lo, hi]`.
pub fn herschel_relation_residual(
    f_outer: &MapDescriptor,
    phi: &Homeomorphism,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<f64> {
    check_samples(samples)?;
    closed_grid(lo, hi, samples)
        .into_iter()
        .map(|x| {
            let y = phi.apply(x)?;
            Ok((x + y + f_outer.eval(x * y)?).abs())
        })
        .try_fold(0.0, |acc: f64, r: Result<f64>| r.map(|r| acc.max(r)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Consistency {
    Consistent,
    /// After `step` iterations the `f`-orbits of `a` and `a_prime` coincide
    /// while the `g`-orbits of their partners do not.
    Conflict {
        step: usize,
        a: f64,
        a_prime: f64,
        b: f64,
        b_prime: f64,
    },
}

/// Checks whether the pairs `(a, b)` can lie on the graph of a single
/// function `φ` with `φ ∘ f = g ∘ φ`: orbits that merge under `f` must merge
/// under `g` too.
pub fn orbit_consistency(
    f: &MapDescriptor,
    g: &MapDescriptor,
    pairs: &[(f64, f64)],
    n: usize,
    tol: f64,
) -> Result<Consistency> {
    let orbits = pairs
        .iter()
        .map(|&(a, b)| Ok((orbit(f, a, n)?.values, orbit(g, b, n)?.values)))
        .collect::<Result<Vec<_>>>()?;
    for k in 0..=n {
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let (fi, gi) = &orbits[i];
                let (fj, gj) = &orbits[j];
                if (fi[k] - fj[k]).abs() < tol && (gi[k] - gj[k]).abs() >= CONFLICT_RATIO * tol {
                    return Ok(Consistency::Conflict {
                        step: k,
                        a: pairs[i].0,
                        a_prime: pairs[j].0,
                        b: pairs[i].1,
                        b_prime: pairs[j].1,
                    });
                }
            }
        }
    }
    Ok(Consistency::Consistent)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Propagation {
    /// Entries `(fᵏ(x), gᵏ(h(x)))` sorted by the first coordinate.
    Table(Vec<(f64, f64)>),
    Conflict { first: (f64, f64), second: (f64, f64) },
}

/// Transports a seed correspondence `x ↦ h_seed(x)` on `[seed_lo, seed_hi]`
/// forward along the orbits of `f` and `g` for `depth` steps and looks for
/// two entries whose first coordinates agree within `tol` but whose second
/// coordinates differ by more than `10·tol`.
#[allow(clippy::too_many_arguments)]
pub fn propagate_partial_conjugacy(
    f: &MapDescriptor,
    g: &MapDescriptor,
    seed_lo: f64,
    seed_hi: f64,
    h_seed: &Homeomorphism,
    depth: usize,
    grid: usize,
    tol: f64,
) -> Result<Propagation> {
    check_samples(grid)?;
    if !(seed_lo < seed_hi) {
        return Err(Error::domain(seed_lo, format!("[{seed_lo}, {seed_hi}] (empty seed interval)")));
    }
    let mut table = Vec::with_capacity(grid * (depth + 1));
    for x in closed_grid(seed_lo, seed_hi, grid) {
        let mut a = x;
        let mut b = h_seed.apply(x)?;
        for k in 0..=depth {
            table.push((a, b));
            if k < depth {
                a = iterate(f, a, 1)?;
                b = iterate(g, b, 1)?;
            }
        }
    }
    table.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    for i in 0..table.len() {
        for j in i + 1..table.len() {
            if table[j].0 - table[i].0 >= tol {
                break;
            }
            if (table[j].1 - table[i].1).abs() > CONFLICT_RATIO * tol {
                return Ok(Propagation::Conflict {
                    first: table[i],
                    second: table[j],
                });
            }
        }
    }
    Ok(Propagation::Table(table))
}
