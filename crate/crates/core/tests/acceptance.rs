//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All comparisons are exact; the only
//! tolerances are the runtime budgets and the growth constant below.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use infgroup::extremality::finite::finite_group_extreme;
use infgroup::extremality::{is_extreme, psi};
use infgroup::library::{gmi, max_gap, orbit_sample, verify_slope_system};
use infgroup::minimality::check_minimality;
use infgroup::{PwlPeriodic, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const GMI_BUDGET: Duration = Duration::from_secs(1);
const RATIONAL_VARIANT_BUDGET: Duration = Duration::from_secs(60);
/// Incidences per squared grid size allowed by the growth check.
const GROWTH_CONSTANT: usize = 20;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gmi_end_to_end() -> Outcome {
    let start = Instant::now();
    let pi = gmi(&s("1/5")).map_err(|e| e.to_string())?;
    for (x, want) in [("4/5", "1/4"), ("2/5", "3/4"), ("1/5", "1")] {
        ensure(pi.eval(&s(x)) == s(want), format!("gmi(1/5)({x}) != {want}"))?;
    }
    ensure(check_minimality(&pi).is_minimal(), "gmi(1/5) not minimal")?;
    let v = is_extreme(&pi).map_err(|e| e.to_string())?;
    ensure(v.is_extreme() && v.kernel_dimension == 0, "gmi(1/5) not extreme")?;
    let took = start.elapsed();
    ensure(took < GMI_BUDGET, format!("took {took:?}"))?;
    Ok(format!("extreme, kernel dimension 0, {took:.2?}"))
}

fn rational_variant_not_extreme() -> Outcome {
    let start = Instant::now();
    let (pi, p) = rational_variant();
    ensure(pi.grid_denominator().unwrap() == 600, "grid denominator is not 600")?;
    ensure(check_minimality(&pi).is_minimal(), "not minimal")?;
    let v = is_extreme(&pi).map_err(|e| e.to_string())?;
    ensure(!v.is_extreme(), "reported extreme")?;
    let w = v.witness.as_ref().ok_or("no witness")?;
    ensure(w.averages_to(&pi), "witness does not average to pi or is trivial")?;
    for side in [&w.plus, &w.minus] {
        ensure(check_minimality(side).is_minimal(), "witness member not minimal")?;
    }
    // Intervals of (1/600)Z inside the two flat pieces.
    let q = 600;
    let index = |x: &Scalar| (x.as_rat().unwrap() * &infgroup::Rat::from_int(q)).as_small().unwrap().0 as usize;
    let f = &p.input.f;
    let mut flats = BTreeSet::new();
    flats.extend(index(&p.flat_start)..index(&p.flat_end));
    flats.extend(index(&(f - &p.flat_end))..index(&(f - &p.flat_start)));
    let uncovered: BTreeSet<usize> = v.coverage.uncovered_components.iter().flatten().copied().collect();
    ensure(!v.coverage.fully_covered, "coverage reports fully covered")?;
    ensure(uncovered == flats, "uncovered intervals differ from the flat intervals")?;
    let took = start.elapsed();
    ensure(took < RATIONAL_VARIANT_BUDGET, format!("took {took:?}"))?;
    Ok(format!(
        "not extreme, kernel dimension {}, {} uncovered intervals, {took:.2?}",
        v.kernel_dimension,
        uncovered.len()
    ))
}

fn irrational_variant_minimal() -> Outcome {
    let (pi, p) = irrational_variant();
    ensure(check_minimality(&pi).is_minimal(), "not minimal")?;
    let c = verify_slope_system(&p).ok_or("slope system singular")?;
    ensure(c == [s("5/2"), s("0"), s("-5")], format!("slopes {c:?}"))?;
    for x in [&p.flat_start, &p.flat_mid, &p.flat_end] {
        ensure(pi.eval(x) == s("3/8"), "flat value is not 3/8")?;
        ensure(pi.eval(&(&p.input.f - x)) == s("5/8"), "mirrored flat value is not 5/8")?;
    }
    Ok("minimal, slopes (5/2, 0, -5), flat values 3/8 and 5/8".into())
}

fn psi_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for q in [1i64, 2, 5, 12] {
        let p = psi(q as u64).map_err(|e| e.to_string())?;
        for k in 0..2 * q {
            ensure(p.eval(&Scalar::ratio(k, 2 * q)).is_zero(), format!("q={q}: nonzero at {k}/{}", 2 * q))?;
        }
        let grid = 4 * q;
        ensure(
            p.breakpoints().iter().all(|b| (b.as_rat().unwrap() * &infgroup::Rat::from_int(grid)).is_integer()),
            format!("q={q}: breakpoint off (1/{grid})Z"),
        )?;
        for _ in 0..100 {
            let x = random_point(&mut rng);
            for g in 0..q {
                let g = Scalar::ratio(g, q);
                ensure(p.eval(&(&g + &x)) == p.eval(&x), format!("q={q}: not periodic at {x}"))?;
                ensure(p.eval(&(&g - &x)) == -p.eval(&x), format!("q={q}: not odd at {x}"))?;
            }
        }
    }
    Ok("q in {1, 2, 5, 12}, 100 points each".into())
}

/// The continuous functions of the oracle corpus.
fn continuous_corpus() -> Vec<(String, PwlPeriodic)> {
    let mut out: Vec<(String, PwlPeriodic)> =
        random_fractions(10, 30, 11).into_iter().map(|f| (format!("gmi({f})"), gmi(&f).unwrap())).collect();
    out.push(("three-slope, rational shifts".into(), rational_variant().0));
    for (k, pi) in random_minimal_interpolations(20, 5).into_iter().enumerate() {
        out.push((format!("interpolation #{k}"), pi));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    let mut all = continuous_corpus();
    all.push(("three-slope, sqrt(2) shift".into(), irrational_variant().0));
    let mut rejected = 0;
    for (n, f) in [(4, 2), (5, 3), (6, 4), (7, 2), (8, 5)] {
        for g in symmetric_finite_functions(n, f, 4, false).into_iter().take(5) {
            all.push((format!("non-subadditive on 1/{n}"), g.interpolate()));
            rejected += 1;
        }
    }
    for (name, pi) in &all {
        // The sqrt(2) variant is sampled on the grid of its rational sibling.
        let q = pi.grid_denominator().unwrap_or(600);
        let fast = check_minimality(pi).is_minimal();
        let slow = grid_oracle_minimal(pi, 12 * q);
        ensure(fast == slow, format!("{name}: vertex test {fast}, grid oracle {slow}"))?;
        checked += 1;
    }
    Ok(format!("{checked} functions agree, {rejected} of them non-minimal controls"))
}

fn finite_group_consistency() -> Outcome {
    let mut extreme = 0;
    let corpus = continuous_corpus();
    for (name, pi) in &corpus {
        let q = pi.grid_denominator().unwrap();
        let full = is_extreme(pi).map_err(|e| format!("{name}: {e}"))?.is_extreme();
        let finite = finite_group_extreme(&pi.restrict(4 * q).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        ensure(full == finite, format!("{name}: continuous {full}, finite {finite}"))?;
        extreme += full as usize;
    }
    Ok(format!("{} functions agree ({extreme} extreme)", corpus.len()))
}

fn quadratic_growth() -> Outcome {
    let half = gmi(&s("1/2")).unwrap();
    let mut counts = Vec::new();
    for q in [2usize, 4, 8, 16, 32] {
        let pi = half.refine_to_grid(q as u64).unwrap();
        let count = check_minimality(&pi).checked_vertex_count;
        ensure(count <= GROWTH_CONSTANT * q * q, format!("q={q}: {count} > {GROWTH_CONSTANT}*q^2"))?;
        counts.push(count);
    }
    Ok(format!("counts {counts:?} <= {GROWTH_CONSTANT} q^2"))
}

fn orbit_density() -> Outcome {
    let (x0, lo, hi) = (s("13/40"), s("3/10"), s("7/20"));
    let t1 = s("1/200");
    let t2 = s("1/200*sqrt(2)");
    let gaps: Vec<Scalar> =
        [5, 10, 20, 40].iter().map(|&l| max_gap(&orbit_sample(&x0, &t1, &t2, l, (&lo, &hi))).unwrap()).collect();
    ensure(gaps.windows(2).all(|w| w[1] < w[0]), format!("gaps not strictly decreasing: {gaps:?}"))?;
    for l in [5, 10, 20, 40] {
        let g = max_gap(&orbit_sample(&x0, &t1, &t1, l, (&lo, &hi))).unwrap();
        ensure(g == t1, format!("rational control gap {g} at L={l}"))?;
    }
    Ok(format!("irrational gaps {:?}; rational control stalls at 1/200", gaps.iter().map(|g| g.to_f64()).collect::<Vec<_>>()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 gmi end to end", gmi_end_to_end),
        ("2 three-slope with rational shifts is not extreme", rational_variant_not_extreme),
        ("3 three-slope with a sqrt(2) shift is minimal", irrational_variant_minimal),
        ("4 equivariant zigzag properties", psi_properties),
        ("5 vertex test matches grid oracle", oracle_equivalence),
        ("6 continuous and finite extremality agree", finite_group_consistency),
        ("7 incidence count grows quadratically", quadratic_growth),
        ("8 orbit density", orbit_density),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
