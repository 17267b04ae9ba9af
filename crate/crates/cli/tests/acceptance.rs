//! Acceptance suite: one PASS/FAIL line per check, nonzero exit on any failure.
//!
//! Run with `cargo test -p conjugate --test acceptance`. Reference values are
//! computed here from first principles rather than through the library.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;
use std::time::Instant;

use conjugate_core::analysis::{cobweb_path, zero_preimage_set};
use conjugate_core::chaos_rng::{
    exhaustive_collapse, ks_distance, logistic_sequence, transform_to, uniformize, DistributionSpec, DEFAULT_SEED,
};
use conjugate_core::closed_form::{
    boole_iterate, crosscheck_closed_form, fractional_iterate_hyperbola, fractional_iterate_quadratic,
    herschel_iterate, hyperbola_iterate,
};
use conjugate_core::conjugacy::{
    conjugate_map, herschel_relation_residual, mobius_involution, orbit_consistency, periodicity_order,
    propagate_partial_conjugacy, verify_conjugacy, verify_semiconjugacy, Consistency, Propagation,
};
use conjugate_core::interval::{closed_grid, interior_grid};
use conjugate_core::map_core::{iterate, sensitivity_report};
use conjugate_core::{Homeomorphism, MapDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type NamedCheck = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ulam(x: f64) -> f64 {
    2.0 / PI * x.sqrt().asin()
}

fn logistic(x: f64) -> f64 {
    4.0 * x * (1.0 - x)
}

fn tent(x: f64) -> f64 {
    if x <= 0.5 {
        2.0 * x
    } else {
        2.0 - 2.0 * x
    }
}

fn central_conjugacy() -> Check {
    let start = Instant::now();
    let r = verify_conjugacy(&MapDescriptor::Logistic, &MapDescriptor::Tent, &Homeomorphism::UlamArcsin, 10_000)
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let oracle = (0..10_000)
        .map(|i| (i as f64 + 0.5) / 10_000.0)
        .map(|x| (ulam(logistic(x)) - tent(ulam(x))).abs())
        .fold(0.0, f64::max);
    ensure(
        r.max_residual < 1e-12 && oracle < 1e-12 && secs < 0.1,
        format!("max residual {:.3e} (direct {oracle:.3e}), {secs:.4} s", r.max_residual),
    )
}

fn alpha_chain() -> Check {
    let g = conjugate_map(&MapDescriptor::Logistic, &Homeomorphism::AlphaArcsin);
    let half_tent = |y: f64| if y <= 0.25 { 2.0 * y } else { 1.0 - 2.0 * y };
    let mut worst_map = 0.0f64;
    for y in interior_grid(0.0, 0.5, 10_000) {
        let lib = g.eval(y).map_err(|e| e.to_string())?;
        let hand = MapDescriptor::HalfTent.eval(y).map_err(|e| e.to_string())?;
        worst_map = worst_map.max((lib - hand).abs()).max((lib - half_tent(y)).abs());
    }
    let doubled = Homeomorphism::compose(Homeomorphism::affine(2.0, 0.0).unwrap(), Homeomorphism::AlphaArcsin);
    let mut worst_h = 0.0f64;
    for x in interior_grid(0.0, 1.0, 10_000) {
        let d = doubled.apply(x).map_err(|e| e.to_string())? - Homeomorphism::UlamArcsin.apply(x).unwrap();
        worst_h = worst_h.max(d.abs()).max((doubled.apply(x).unwrap() - ulam(x)).abs());
    }
    ensure(
        worst_map < 1e-12 && worst_h < 1e-15,
        format!("conjugated map vs half tent {worst_map:.3e}, 2·alpha vs ulam {worst_h:.3e}"),
    )
}

fn iterated_commutation() -> Check {
    let mut worst = 0.0f64;
    for x in interior_grid(0.0, 1.0, 1000) {
        for n in 0..=10 {
            let lhs = ulam(iterate(&MapDescriptor::Logistic, x, n).map_err(|e| e.to_string())?);
            let rhs = iterate(&MapDescriptor::Tent, ulam(x), n).map_err(|e| e.to_string())?;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    ensure(worst < 1e-10, format!("max |h(fⁿx) − gⁿ(hx)| = {worst:.3e} for n ≤ 10"))
}

fn closed_forms() -> Check {
    let e = 3f64.sqrt();
    let q = MapDescriptor::Quadratic;
    let boole = crosscheck_closed_form(&q, boole_iterate, -1.0, 1.0, 10, 1000).map_err(|e| e.to_string())?;
    let hers = crosscheck_closed_form(&q, herschel_iterate, -1.0, 3.0, 10, 1000).map_err(|e| e.to_string())?;
    let mut hb = 0.0f64;
    for t in closed_grid(-1.0, 1.0, 1000) {
        for n in 0..=10 {
            // cos(2ⁿ acos t) written out independently of the library
            let reference = ((1u32 << n) as f64 * t.acos()).cos();
            let h = herschel_iterate(t, n).map_err(|e| e.to_string())?;
            hb = hb.max((h - reference).abs()).max((h - boole_iterate(t, n).unwrap()).abs());
        }
    }
    let hyp_map = MapDescriptor::hyperbola(e, 1.0).unwrap();
    let hyp = crosscheck_closed_form(&hyp_map, |x, n| hyperbola_iterate(e, 1.0, x, n), 2.0, 5.0, 4, 1000)
        .map_err(|e| e.to_string())?;
    // hand check: one step of √(2(x² − 1)) at x = 3 is 4
    let hand = (hyperbola_iterate(e, 1.0, 3.0, 1).unwrap() - 4.0).abs();
    ensure(
        boole.max_abs_deviation < 1e-9
            && hers.max_rel_deviation < 1e-6
            && hb < 1e-9
            && hyp.max_abs_deviation < 1e-9
            && hand < 1e-12,
        format!(
            "boole {:.2e}; herschel scaled {:.2e} ({} compared, {} past binary64); herschel vs boole {hb:.2e}; hyperbola {:.2e}",
            boole.max_abs_deviation, hers.max_rel_deviation, hers.compared, hers.skipped_overflow, hyp.max_abs_deviation
        ),
    )
}

fn fractional_iterates() -> Check {
    let e = 3f64.sqrt();
    let quad = |x: f64| 2.0 * x * x - 1.0;
    let hyp = |x: f64| (2.0 * (x * x - 1.0)).sqrt();
    let (mut wq, mut wh) = (0.0f64, 0.0f64);
    for n in 2..=4 {
        for x in closed_grid(1.01, 3.0, 1000) {
            let mut y = x;
            for _ in 0..n {
                y = fractional_iterate_quadratic(y, n).map_err(|e| e.to_string())?;
            }
            wq = wq.max((y - quad(x)).abs());
        }
        // √2 is the fixed point; at and above it every fractional iterate stays real
        for x in closed_grid(2f64.sqrt(), 5.0, 1000) {
            let mut y = x;
            for _ in 0..n {
                y = fractional_iterate_hyperbola(e, 1.0, y, n).map_err(|e| e.to_string())?;
            }
            wh = wh.max((y - hyp(x)).abs());
        }
    }
    ensure(
        wq < 1e-8 && wh < 1e-8,
        format!("n-fold 1/n iterate vs one step: quadratic {wq:.2e}, hyperbola {wh:.2e}"),
    )
}

fn semiconjugacies() -> Check {
    let boole = verify_semiconjugacy(
        &MapDescriptor::Quadratic,
        &MapDescriptor::linear(2.0, 0.0),
        &MapDescriptor::Cosine,
        0.0,
        10.0,
        10_000,
    )
    .map_err(|e| e.to_string())?;
    let direct = interior_grid(0.0, 10.0, 10_000)
        .into_iter()
        .map(|x| (2.0 * x.cos().powi(2) - 1.0 - (2.0 * x).cos()).abs())
        .fold(0.0, f64::max);
    let sine = verify_semiconjugacy(
        &MapDescriptor::Logistic,
        &MapDescriptor::Doubling,
        &MapDescriptor::SineSquared,
        0.0,
        1.0,
        10_000,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        boole.max_residual < 1e-12 && direct < 1e-12 && sine.max_residual < 1e-12,
        format!(
            "2cos²x − 1 vs cos 2x: {:.2e} (direct {direct:.2e}); sin² doubling→logistic: {:.2e}",
            boole.max_residual, sine.max_residual
        ),
    )
}

/// Twenty `(a, b)` with `|ab − 1| > 0.1`, each with an interval on which `|1 + bx| ≥ ½`.
fn mobius_cases() -> Vec<(f64, f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut cases = Vec::new();
    while cases.len() < 20 {
        let a: f64 = rng.gen_range(-2.0..2.0);
        let b: f64 = rng.gen_range(-2.0..2.0);
        if (a * b - 1.0).abs() <= 0.1 {
            continue;
        }
        let (lo, hi) = if b.abs() < 0.25 {
            (-1.0, 1.0)
        } else if b > 0.0 {
            (-0.5 / b, -0.5 / b + 1.0)
        } else {
            (-0.5 / b - 1.0, -0.5 / b)
        };
        cases.push((a, b, lo, hi));
    }
    cases
}

fn mobius_family() -> Check {
    let (mut inv, mut direct, mut rel) = (0.0f64, 0.0f64, 0.0f64);
    for (a, b, lo, hi) in mobius_cases() {
        let phi = mobius_involution(a, b, lo, hi).map_err(|e| e.to_string())?;
        // the same formula restricted to the image of [lo, hi]
        let (p, q) = (phi.apply(lo).map_err(|e| e.to_string())?, phi.apply(hi).map_err(|e| e.to_string())?);
        let back = mobius_involution(a, b, p.min(q), p.max(q)).map_err(|e| e.to_string())?;
        for x in closed_grid(lo, hi, 1000) {
            let once = phi.apply(x).map_err(|e| e.to_string())?;
            let twice = back.apply(once).map_err(|e| e.to_string())?;
            inv = inv.max((twice - x).abs());
            let raw = |t: f64| -(a + t) / (1.0 + b * t);
            direct = direct.max((raw(raw(x)) - x).abs());
        }
        let r = herschel_relation_residual(&MapDescriptor::linear(b, a), &phi, lo, hi, 1000)
            .map_err(|e| e.to_string())?;
        rel = rel.max(r);
    }
    ensure(
        inv < 1e-12 && direct < 1e-12 && rel < 1e-12,
        format!("20 pairs: max |φ(φ(x)) − x| = {inv:.2e} (raw formula {direct:.2e}), x + φ + a + bxφ residual {rel:.2e}"),
    )
}

fn periodicity() -> Check {
    let reflect = MapDescriptor::homeo(Homeomorphism::Reflect);
    let order = |m: &MapDescriptor, p: usize| periodicity_order(m, p, 1000, 1e-10).map_err(|e| e.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut conjugates = Vec::new();
    for i in 0..10 {
        let h = if i % 2 == 0 {
            Homeomorphism::power(rng.gen_range(0.3..3.0)).unwrap()
        } else {
            let x = rng.gen_range(0.1..0.9);
            let y = rng.gen_range(0.1..0.9);
            Homeomorphism::piecewise_linear(vec![(0.0, 0.0), (x, y), (1.0, 1.0)]).unwrap()
        };
        conjugates.push(order(&conjugate_map(&reflect, &h), 6)?);
    }
    let base = order(&reflect, 6)?;
    let id = order(&MapDescriptor::identity_on(0.0, 1.0).unwrap(), 6)?;
    let logistic = order(&MapDescriptor::Logistic, 6)?;
    let tent = order(&MapDescriptor::Tent, 6)?;
    ensure(
        base == Some(2) && conjugates.iter().all(|&p| p == Some(2)) && id == Some(1) && logistic.is_none() && tent.is_none(),
        format!("reflect {base:?}, conjugates {conjugates:?}, identity {id:?}, logistic {logistic:?}, tent {tent:?}"),
    )
}

fn ritt_obstruction() -> Check {
    // 4·0.3·0.7 = 0.84 from either point, while tent(0.3) = 0.6 and tent(0.6) = 0.8
    assert!((logistic(0.3) - logistic(0.7)).abs() < 1e-15);
    let c = orbit_consistency(&MapDescriptor::Logistic, &MapDescriptor::Tent, &[(0.3, 0.3), (0.7, 0.6)], 3, 1e-9)
        .map_err(|e| e.to_string())?;
    let detected = matches!(c, Consistency::Conflict { step: 1, .. });
    let p = propagate_partial_conjugacy(
        &MapDescriptor::Logistic,
        &MapDescriptor::Tent,
        0.1,
        0.11,
        &Homeomorphism::UlamArcsin,
        6,
        1000,
        1e-4,
    )
    .map_err(|e| e.to_string())?;
    let drift = match &p {
        Propagation::Table(t) => t.iter().map(|&(x, y)| (y - ulam(x)).abs()).fold(0.0, f64::max),
        Propagation::Conflict { .. } => f64::INFINITY,
    };
    ensure(
        detected && drift < 1e-9,
        format!("fold conflict {c:?}; ulam-seeded table drift {drift:.2e} to depth 6"),
    )
}

fn cobweb_limit() -> Check {
    let p = cobweb_path(&MapDescriptor::Cosine, 1.0, 200).map_err(|e| e.to_string())?;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid.cos() - mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let limit = p.limit.unwrap_or(f64::NAN);
    ensure(
        p.converged && (limit - root).abs() < 1e-9 && p.points.len() == 401,
        format!("limit {limit} vs bisection root {root}, {} path points", p.points.len()),
    )
}

/// Zero preimages of the tent map on numerators over 2^depth.
fn tent_preimages_exact(depth: usize) -> Vec<f64> {
    let scale = 1u64 << depth;
    let mut all = std::collections::BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in frontier {
            // 2x = t and 2 − 2x = t
            for p in [t / 2, scale - t / 2] {
                if t % 2 == 0 && all.insert(p) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().map(|p| p as f64 / scale as f64).collect()
}

fn density_criterion() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in 1..=10 {
        let s = zero_preimage_set(&MapDescriptor::Tent, k).map_err(|e| e.to_string())?;
        let exact = tent_preimages_exact(k);
        let good = s.points == exact && s.points.len() == (1 << (k - 1)) + 1 && s.largest_gap == 2f64.powi(1 - k as i32);
        ok &= good;
        if !good {
            notes.push(format!("depth {k}: {} points, gap {}", s.points.len(), s.largest_gap));
        }
    }
    let truncated =
        MapDescriptor::unimodal(0.5, MapDescriptor::linear(1.6, 0.0), MapDescriptor::linear(-1.6, 1.6)).unwrap();
    for depth in 0..=6 {
        let s = zero_preimage_set(&truncated, depth).map_err(|e| e.to_string())?;
        ok &= s.largest_gap == 1.0;
        if s.largest_gap != 1.0 {
            notes.push(format!("truncated depth {depth}: gap {}", s.largest_gap));
        }
    }
    ensure(
        ok,
        if notes.is_empty() {
            "tent depths 1..=10 match 2^(k−1)+1 points and gap 2^(1−k); truncated tent gap 1 at depths 0..=6".into()
        } else {
            notes.join("; ")
        },
    )
}

fn distributions() -> Check {
    let start = Instant::now();
    let orbit = logistic_sequence(DEFAULT_SEED, 1_000_000).map_err(|e| e.to_string())?;
    let raw = &orbit.values[1..];
    let arcsine = ks_distance(raw, ulam).map_err(|e| e.to_string())?;
    let u = uniformize(&orbit).map_err(|e| e.to_string())?;
    let uniform = ks_distance(&u[1..], |x| x).map_err(|e| e.to_string())?;
    let squared = transform_to(&u[1..], &DistributionSpec::Power { exponent: 2.0 }).map_err(|e| e.to_string())?;
    let power = ks_distance(&squared, |x| x * x).map_err(|e| e.to_string())?;
    ensure(
        arcsine < 0.01 && uniform < 0.01 && power < 0.01,
        format!(
            "KS arcsine {arcsine:.2e}, uniform {uniform:.2e}, x² {power:.2e} over 10⁶ values ({:.2} s)",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn collapse() -> Check {
    let start = Instant::now();
    let r = exhaustive_collapse(16).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(
        r.words_tested == 65_536 && r.failures == 0 && r.max_steps <= 16 && secs < 1.0,
        format!(
            "{} words, {} failures, longest {} steps, mean {}, {secs:.3} s",
            r.words_tested, r.failures, r.max_steps, r.mean_steps
        ),
    )
}

fn sensitivity() -> Check {
    let s = sensitivity_report(&MapDescriptor::Logistic, 0.123456789, 1e-9, 40).map_err(|e| e.to_string())?;
    let first = s.iter().position(|&d| d > 0.1);
    ensure(
        first.is_some(),
        format!("separation first exceeds 0.1 at step {first:?}; step 40 separation {:.3}", s[40]),
    )
}

fn bin(args: &[&str], seed: Option<&str>) -> (i32, String, String) {
    let mut cmd = Process::new(env!("CARGO_BIN_EXE_conjugate"));
    cmd.args(args);
    match seed {
        Some(s) => cmd.env("CONJUGATE_SEED", s),
        None => cmd.env_remove("CONJUGATE_SEED"),
    };
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_contract() -> Check {
    let runs: &[&[&str]] = &[
        &["iterate", "--map", "logistic", "--x0", "0.2", "--n", "1"],
        &["orbit", "--map", "tent", "--x0", "0.1", "--n", "20"],
        &["fixed-points", "--map", "logistic"],
        &["closed-form", "check", "--form", "boole", "--samples", "200"],
        &["closed-form", "check", "--form", "herschel", "--samples", "200", "--relative", "--tol", "1e-6"],
        &["closed-form", "check", "--form", "fractional-hyperbola", "--order", "3", "--tol", "1e-8"],
        &["conjugacy", "verify", "--f", "logistic", "--g", "tent", "--h", "ulam", "--samples", "1000"],
        &["conjugacy", "semiverify", "--f", "logistic", "--g", "doubling", "--h", "sin2", "--lo", "0", "--hi", "1"],
        &["conjugacy", "order", "--map", "homeo:reflect"],
        &["conjugacy", "propagate", "--f", "logistic", "--g", "tent", "--h", "ulam", "--seed-lo", "0.1", "--seed-hi", "0.11", "--grid", "100"],
        &["cobweb", "--map", "cosine", "--x0", "1.0", "--steps", "200"],
        &["density", "--map", "tent", "--depth", "10"],
        &["rng", "generate", "--n", "500", "--dist", "power:g=2"],
        &["rng", "ks", "--n", "100000", "--dist", "arcsine", "--tol", "0.02"],
        &["rng", "collapse", "--bits", "12", "--exhaustive"],
        &["rng", "collapse", "--bits", "8", "--value", "37"],
        &["sensitivity", "--map", "logistic", "--x0", "0.123456789", "--delta", "1e-9", "--n", "40"],
    ];
    let mut problems = Vec::new();
    for args in runs {
        for format in ["json", "csv"] {
            let mut full = args.to_vec();
            full.extend(["--format", format]);
            let first = bin(&full, None);
            let second = bin(&full, None);
            if first != second {
                problems.push(format!("{} --format {format} differs between runs", args.join(" ")));
            }
            if first.0 != 0 {
                problems.push(format!("{} --format {format} exited {}: {}", args.join(" "), first.0, first.2.trim()));
            }
            if format == "json" && serde_json::from_str::<serde_json::Value>(&first.1).is_err() {
                problems.push(format!("{} produced invalid JSON", args.join(" ")));
            }
        }
    }

    let (code, out, _) = bin(&["iterate", "--map", "logistic", "--x0", "0.2", "--n", "1"], None);
    if code != 0 || out.trim() != "0.64" {
        problems.push(format!("iterate printed {out:?} with exit {code}"));
    }
    let (code, out, _) = bin(&["rng", "collapse", "--bits", "16", "--exhaustive", "--format", "json"], None);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    if code != 0 || j["result"]["max_steps"] != 16 || j["result"]["words_tested"] != 65536 {
        problems.push(format!("collapse json {}", j["result"]));
    }
    let (_, out, _) = bin(&["density", "--map", "tent", "--depth", "10", "--format", "json"], None);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    if j["result"]["largest_gap"].as_f64() != Some(0.001953125) {
        problems.push(format!("density gap {}", j["result"]["largest_gap"]));
    }
    let (_, out, _) = bin(&["cobweb", "--map", "cosine", "--x0", "1.0", "--steps", "200", "--format", "svg"], None);
    let cobweb_points = out
        .split("class=\"cobweb\" fill=\"none\" points=\"")
        .nth(1)
        .and_then(|s| s.split('"').next())
        .map_or(0, |p| p.split(' ').count());
    if cobweb_points != 401 || !out.contains("viewBox=\"0 0 1000 1000\"") {
        problems.push(format!("svg cobweb has {cobweb_points} points"));
    }
    let (code, out, _) = bin(&["conjugacy", "verify", "--f", "logistic", "--g", "tent", "--h", "ulam", "--format", "json"], None);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    if code != 0 || j["result"]["max_residual"].as_f64().is_none_or(|r| r >= 1e-12) {
        problems.push(format!("verify json exit {code}: {}", j["result"]));
    }

    let (code, _, _) = bin(&["conjugacy", "verify", "--f", "logistic", "--g", "tent", "--h", "reflect"], None);
    if code != 1 {
        problems.push(format!("tolerance failure exited {code}, expected 1"));
    }
    let (code, _, err) = bin(&["iterate", "--map", "nosuchmap", "--x0", "0.2", "--n", "1"], None);
    if code != 2 || !err.contains("nosuchmap") || err.trim().lines().count() != 1 {
        problems.push(format!("unknown map exited {code} with {err:?}"));
    }
    let (code, _, _) = bin(&["iterate", "--map", "logistic", "--x0", "0.2"], None);
    if code != 2 {
        problems.push(format!("missing flag exited {code}, expected 2"));
    }
    let (code, _, err) = bin(&["iterate", "--map", "logistic", "--x0", "1.5", "--n", "3"], None);
    if code != 3 || err.trim().lines().count() != 1 {
        problems.push(format!("domain error exited {code} with {err:?}"));
    }
    let (code, _, _) = bin(&["iterate", "--map", "hyperbola:e=1,a=1", "--x0", "2", "--n", "1"], None);
    if code != 3 {
        problems.push(format!("parameter error exited {code}, expected 3"));
    }

    let with_env = bin(&["rng", "generate", "--n", "5", "--format", "csv"], Some("0.3"));
    let with_flag = bin(&["rng", "generate", "--n", "5", "--seed", "0.3", "--format", "csv"], None);
    let default = bin(&["rng", "generate", "--n", "5", "--format", "csv"], None);
    if with_env.1 != with_flag.1 || with_env.1 == default.1 {
        problems.push("CONJUGATE_SEED does not override the default seed".into());
    }

    ensure(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} subcommand runs byte-identical in JSON and CSV; exit codes 0/1/2/3 as documented", runs.len())
        } else {
            problems.join("; ")
        },
    )
}

fn main() {
    let checks: &[NamedCheck] = &[
        ("logistic-tent conjugacy on 10⁴ points", central_conjugacy),
        ("alpha conjugacy to the half tent, 2·alpha = ulam", alpha_chain),
        ("iterated commutation for n ≤ 10", iterated_commutation),
        ("closed forms against brute force", closed_forms),
        ("fractional iterates compose to one step", fractional_iterates),
        ("cosine and sine-squared semiconjugacies", semiconjugacies),
        ("Möbius involutions and their functional equation", mobius_family),
        ("periodicity order of reflections and conjugates", periodicity),
        ("fold conflict and consistent propagation", ritt_obstruction),
        ("cosine cobweb converges to the fixed point", cobweb_limit),
        ("zero-preimage density of tent maps", density_criterion),
        ("KS distances of the logistic generator", distributions),
        ("finite-precision collapse of 16-bit words", collapse),
        ("sensitive dependence within 40 steps", sensitivity),
        ("CLI determinism and exit codes", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
