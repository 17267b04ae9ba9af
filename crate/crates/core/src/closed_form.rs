//! Closed-form n-th iterates and fractional iterates, with a harness that
//! compares them against brute-force iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interval::closed_grid;
use crate::map_core::{check_hyperbola_params, MapDescriptor};

/// Largest iteration count accepted by the closed forms; keeps `2ⁿ` exact.
pub const MAX_CLOSED_FORM_N: usize = 30;

/// Imaginary parts below `IMAGINARY_RESIDUE_TOL · max(1, |re|)` are discarded.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    /// `|im| < 1e−9·max(1, |re|)`
    pub fn is_effectively_real(&self) -> bool {
        self.im.abs() < 1e-9 * self.re.abs().max(1.0)
    }
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        ComplexValue { re: c.re, im: c.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(c: ComplexValue) -> Self {
        Complex64::new(c.re, c.im)
    }
}

/// `C = x + √(x² − 1)` with the principal square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HerschelConstant {
    pub value: ComplexValue,
}

impl HerschelConstant {
    /// The companion root `x − √(x² − 1)`, which equals `1/C`.
    pub fn companion(&self) -> ComplexValue {
        Complex64::from(self.value).inv().into()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_CLOSED_FORM_N {
        Err(Error::Range(format!("n = {n} exceeds {MAX_CLOSED_FORM_N}")))
    } else {
        Ok(())
    }
}

pub fn herschel_constant(x: f64) -> Result<HerschelConstant> {
    if !x.is_finite() {
        return Err(Error::param(format!("x = {x} is not finite")));
    }
    let c = if x.abs() < 1.0 {
        Complex64::new(x, ((1.0 - x) * (1.0 + x)).sqrt())
    } else {
        let s = ((x - 1.0) * (x + 1.0)).sqrt();
        if x >= 1.0 {
            Complex64::new(x + s, 0.0)
        } else {
            // x + s cancels for x ≤ −1; use the product of the two roots being 1
            Complex64::new(1.0 / (x - s), 0.0)
        }
    };
    Ok(HerschelConstant { value: c.into() })
}

fn square_times(mut z: Complex64, n: usize) -> Complex64 {
    for _ in 0..n {
        z = z * z;
    }
    z
}

/// `½(C^{2ⁿ} + C^{−2ⁿ})`, the n-th iterate of `2x² − 1`, evaluated in
/// complex arithmetic by repeated squaring.
pub fn herschel_iterate(x: f64, n: usize) -> Result<f64> {
    check_n(n)?;
    let c = herschel_constant(x)?;
    let up = square_times(c.value.into(), n);
    let down = square_times(c.companion().into(), n);
    let sum = 0.5 * (up + down);
    if !sum.re.is_finite() {
        return Err(Error::Overflow { x });
    }
    if sum.im.abs() > IMAGINARY_RESIDUE_TOL * sum.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue { re: sum.re, im: sum.im });
    }
    Ok(sum.re)
}

/// `cos(2ⁿ · acos t)` for `t ∈ [−1, 1]`.
pub fn boole_iterate(t: f64, n: usize) -> Result<f64> {
    check_n(n)?;
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::domain(t, "[-1, 1]"));
    }
    Ok(((1u64 << n) as f64 * t.acos()).cos())
}

/// Principal root of `(e²−1)ⁿx² − ((e²−1)/(e²−2))((e²−1)ⁿ − 1)a²`.
pub fn hyperbola_iterate(e: f64, a: f64, x: f64, n: usize) -> Result<f64> {
    check_hyperbola_params(e, a)?;
    check_n(n)?;
    let c = e * e - 1.0;
    let cn = c.powi(n as i32);
    hyperbola_root(c, cn, e, a, x)
}

fn hyperbola_root(c: f64, scale: f64, e: f64, a: f64, x: f64) -> Result<f64> {
    let radicand = scale * x * x - c / (e * e - 2.0) * (scale - 1.0) * a * a;
    if radicand < 0.0 {
        return Err(Error::domain(x, format!("hyperbola iterate (negative radicand {radicand})")));
    }
    if !radicand.is_finite() {
        return Err(Error::Overflow { x });
    }
    Ok(radicand.sqrt())
}

/// Real branch of the `1/n` iterate of `2x² − 1`:
/// `½((x+√(x²−1))^{2^{1/n}} + (x−√(x²−1))^{2^{1/n}})` for `x ≥ 1`.
pub fn fractional_iterate_quadratic(x: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("fractional order n must be positive"));
    }
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain(x, "[1, ∞)"));
    }
    let big = x + ((x - 1.0) * (x + 1.0)).sqrt();
    let small = big.recip();
    let exponent = 2f64.powf((n as f64).recip());
    Ok(0.5 * (big.powf(exponent) + small.powf(exponent)))
}

/// The hyperbola iterate formula with exponent `1/n`; needs `e² > 1`.
pub fn fractional_iterate_hyperbola(e: f64, a: f64, x: f64, n: usize) -> Result<f64> {
    check_hyperbola_params(e, a)?;
    if n == 0 {
        return Err(Error::param("fractional order n must be positive"));
    }
    let c = e * e - 1.0;
    if c <= 0.0 {
        return Err(Error::param(format!("(e² − 1)^(1/n) is not real for e² = {}", e * e)));
    }
    hyperbola_root(c, c.powf((n as f64).recip()), e, a, x)
}

/// Worst disagreement between brute-force iteration and a closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    /// `max |fⁿ(x) − formula(x, n)|`
    pub max_abs_deviation: f64,
    /// `max |fⁿ(x) − formula(x, n)| / max(1, |fⁿ(x)|)`
    pub max_rel_deviation: f64,
    pub argmax_x: f64,
    pub argmax_n: usize,
    pub compared: usize,
    /// Grid points × iteration counts skipped because a value overflowed.
    pub skipped_overflow: usize,
}

/// Compares `formula(x, n)` with `n` successive applications of `map` for
/// `n = 0..=n_max` on `samples` equispaced points of `[lo, hi]`.
///
/// Once either side overflows binary64 for some `x`, the remaining
/// counts for that `x` are skipped and tallied in `skipped_overflow`. The
/// arg-max refers to the scaled deviation.
pub fn crosscheck_closed_form<F>(
    map: &MapDescriptor,
    formula: F,
    lo: f64,
    hi: f64,
    n_max: usize,
    samples: usize,
) -> Result<CrosscheckReport>
where
    F: Fn(f64, usize) -> Result<f64>,
{
    if samples < 2 {
        return Err(Error::param("crosscheck needs at least 2 samples"));
    }
    check_n(n_max)?;
    let mut report = CrosscheckReport {
        max_abs_deviation: 0.0,
        max_rel_deviation: 0.0,
        argmax_x: lo,
        argmax_n: 0,
        compared: 0,
        skipped_overflow: 0,
    };
    for x in closed_grid(lo, hi, samples) {
        let mut brute = map.domain().admit(x).map(|_| x)?;
        for n in 0..=n_max {
            if n > 0 {
                brute = match map.eval(brute) {
                    Ok(v) => v,
                    Err(Error::Overflow { .. }) => {
                        report.skipped_overflow += n_max + 1 - n;
                        break;
                    }
                    Err(Error::Domain { .. }) => return Err(Error::Escaped { step: n - 1, x: brute }),
                    Err(e) => return Err(e),
                };
            }
            let closed = match formula(x, n) {
                Ok(v) => v,
                Err(Error::Overflow { .. }) => {
                    report.skipped_overflow += n_max + 1 - n;
                    break;
                }
                Err(e) => return Err(e),
            };
            let abs = (brute - closed).abs();
            let rel = abs / brute.abs().max(1.0);
            if !rel.is_finite() {
                return Err(Error::Overflow { x });
            }
            report.compared += 1;
            report.max_abs_deviation = report.max_abs_deviation.max(abs);
            if rel > report.max_rel_deviation {
                report.max_rel_deviation = rel;
                report.argmax_x = x;
                report.argmax_n = n;
            }
        }
    }
    Ok(report)
}
