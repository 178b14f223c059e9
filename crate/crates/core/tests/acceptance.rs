//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Runs without the libtest harness so that the criteria execute in order and
//! their timings can be compared against the limits.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dyckx::genfun::{count_code_words, constant_genfun, constant_residual, ConstantParams};
use dyckx::identities::{
    check_family_instance, closed_form_eval, diag_conditions, solve_coupled_g, sweep_cubic, validate_family_form,
    verify_diagonal, ClosedFormBranch, CubicData, FamilyForm, Triplet,
};
use dyckx::kernel::{is_locally_admissible, locally_admissible_words, relabel_word, RelabelMap};
use dyckx::presentations::{
    build_presentation, enumerate_T, export_classification, swap_indices, time_reverse, Format, LabelRule,
};
use dyckx::zeta::{periodic_census, zeta_oracle, zeta_parts};
use dyckx::{solve_genfun, IntMatrix, SubsetFamily, SubshiftSpec};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan(n: u64) -> BigInt {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = BigInt::from(1);
    for k in 0..n {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    c
}

fn criterion_1() -> Outcome {
    let spec = SubshiftSpec::dyck(2);
    let sol = solve_genfun(&spec, 12).map_err(|e| e.to_string())?;
    let expected = [1i64, 2, 8, 40, 224, 1344];
    for (i, &want) in expected.iter().enumerate() {
        let half = i as u64 + 1;
        let deg = 2 * half as usize;
        let by_formula = catalan(half - 1) * (BigInt::from(1) << (half - 1));
        ensure(by_formula == BigInt::from(want), || format!("Catalan oracle gives {by_formula} at z^{deg}"))?;
        for class in 0..2 {
            let got = sol.g[class].coeff(deg);
            ensure(*got == dyckx::series::rat(want), || format!("g_{class} z^{deg} = {got}, want {want}"))?;
            let counted = count_code_words(&spec, class, deg);
            ensure(counted == want as u128, || format!("enumeration z^{deg} class {class}: {counted}"))?;
        }
    }
    Ok("z^2..z^12 = 1, 2, 8, 40, 224, 1344 in both classes".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            for k_minus in 1..=m {
                for k in 1..=m {
                    for k_plus in 1..=m {
                        let p = ConstantParams { m, k_minus, k, k_plus, n };
                        let spec = p.to_spec().map_err(|e| e.to_string())?;
                        let sol = solve_genfun(&spec, 24).map_err(|e| e.to_string())?;
                        for g in &sol.g {
                            ensure(constant_residual(&p, g).is_zero(), || format!("residual nonzero for {p:?}"))?;
                        }
                        let closed = constant_genfun(&p, 24).map_err(|e| e.to_string())?;
                        ensure(closed == sol.g[0], || format!("closed form differs for {p:?}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} parameter tuples, residual zero through z^24"))
}

fn random_spec(rng: &mut ChaCha8Rng) -> SubshiftSpec {
    SubshiftSpec::random(rng, 2, 2)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut specs = vec![SubshiftSpec::dyck(2)];
    specs.extend((0..50).map(|_| random_spec(&mut rng)));
    let c = periodic_census(&specs[0], 2).map_err(|e| e.to_string())?;
    ensure(c.total == [4, 12] && c.non_positive[1] == 8 && c.non_negative[1] == 8 && c.neutral[1] == 4, || {
        format!("D2 anchors: {c:?}")
    })?;
    for (i, spec) in specs.iter().enumerate() {
        let derived = zeta_parts(spec, 10).map_err(|e| e.to_string())?;
        let oracle = zeta_oracle(spec, 10).map_err(|e| e.to_string())?;
        ensure(derived.total == oracle.total, || format!("spec #{i} total: {} vs {}", derived.total, oracle.total))?;
        ensure(derived.neutral == oracle.neutral, || format!("spec #{i} neutral"))?;
        ensure(derived.non_positive == oracle.non_positive, || format!("spec #{i} non-positive"))?;
        ensure(derived.non_negative == oracle.non_negative, || format!("spec #{i} non-negative"))?;
    }
    Ok(format!("{} specs, all four factors exact through z^10", specs.len()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut accepted = 0;
    let mut drawn = 0;
    while accepted < 1000 {
        let t = Triplet::random(&mut rng, 3);
        drawn += 1;
        if diag_conditions(&t) != (true, true) {
            continue;
        }
        accepted += 1;
        let r = verify_diagonal(&t, 12);
        ensure(r.holds(), || format!("{t} fails at {:?}", r.first_failure))?;
    }
    let loose = Triplet::m2([[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [1, 0]]);
    ensure(FamilyForm::LooseStar.contains(&loose), || "instance is not of the loose form".into())?;
    let cx = check_family_instance(&loose, 12).ok_or("loose instance passes")?;
    ensure((cx.k, cx.left, cx.right) == (1, 1, 0), || format!("unexpected counterexample {cx:?}"))?;
    let report = validate_family_form(FamilyForm::LooseStar, 500, 12, 4);
    ensure(!report.holds(), || "validator found no counterexample to the loose form".into())?;
    for form in FamilyForm::VALIDATED {
        let r = validate_family_form(form, 500, 12, 4);
        ensure(r.holds(), || format!("{form:?} failed: {:?}", r.counterexample))?;
    }
    Ok(format!(
        "1000 balanced triplets ({drawn} drawn), 0 failures; loose Star form fails {} of 500 draws, k=1: 1 vs 0",
        report.failures
    ))
}

fn criterion_5() -> Outcome {
    let sweep = sweep_cubic(24).map_err(|e| e.to_string())?;
    ensure(sweep.checked == 4096, || format!("checked {}", sweep.checked))?;
    ensure(sweep.failures.is_empty(), || format!("{} failures, first {}", sweep.failures.len(), sweep.failures[0]))?;
    Ok(format!("4096 triplets, {} balanced, equivalence and cubic residual hold", sweep.balanced))
}

fn criterion_6() -> Outcome {
    let ones = IntMatrix::constant(2, 1);
    let t = Triplet::new(ones.clone(), ones, IntMatrix::identity(2));
    let (g, _) = solve_coupled_g(&t, 1, 24).map_err(|e| e.to_string())?;
    let c = CubicData::new(&t, 1, 24);
    let v = closed_form_eval(&c, 0.1).map_err(|e| e.to_string())?;
    let diff0 = (v.value - g.eval_f64(0.1)).abs();
    ensure(v.branch == ClosedFormBranch::Quadratic && diff0 < 1e-10, || format!("det A = 0 case: diff {diff0:e}"))?;

    let (mut cardano, mut trig, mut worst) = (0, 0, 0.0f64);
    for t in Triplet::all_binary() {
        if t.a.det2() == 0 || diag_conditions(&t) != (true, true) {
            continue;
        }
        let (g, _) = solve_coupled_g(&t, 1, 24).map_err(|e| e.to_string())?;
        let c = CubicData::new(&t, 1, 24);
        let v = closed_form_eval(&c, 0.01).map_err(|e| format!("{t}: {e}"))?;
        let diff = (v.value - g.eval_f64(0.01)).abs();
        worst = worst.max(diff);
        ensure(diff < 1e-8, || format!("{t}: {:?} differs by {diff:e}", v.branch))?;
        match v.branch {
            ClosedFormBranch::Cardano => cardano += 1,
            ClosedFormBranch::Trigonometric { .. } => trig += 1,
            ClosedFormBranch::Quadratic => unreachable!(),
        }
    }
    ensure(cardano + trig > 0, || "no det A != 0 case in the sweep".into())?;
    Ok(format!(
        "det A = 0 diff {diff0:.1e}; {cardano} Cardano + {trig} trigonometric cases, worst diff {worst:.1e}"
    ))
}

fn criterion_7() -> Outcome {
    let first = enumerate_T().map_err(|e| e.to_string())?;
    let second = enumerate_T().map_err(|e| e.to_string())?;
    let a = export_classification(&first, Format::Json).map_err(|e| e.to_string())?;
    let b = export_classification(&second, Format::Json).map_err(|e| e.to_string())?;
    ensure(a == b, || "classification differs between runs".into())?;
    ensure(first.slow_path_mismatches.is_empty(), || format!("slow path disagrees: {:?}", first.slow_path_mismatches))?;
    let failures = first.listed_failures();
    ensure(failures.is_empty(), || format!("listed pairings not in T: {failures:?}"))?;
    let pairs: BTreeSet<_> = first
        .listed_pairings
        .iter()
        .filter(|p| p.listed_with && p.member)
        .map(|p| (p.triplet.a_minus.clone(), p.triplet.a_plus.clone()))
        .collect();
    ensure(pairs.len() == 5, || format!("{} listed pairs verified", pairs.len()))?;
    let key = Triplet::m2([[1, 1], [1, 0]], [[1, 1], [1, 0]], [[0, 1], [1, 0]]);
    ensure(first.listed_pairings.iter().any(|p| p.triplet == key && p.member), || "first listed triple".into())?;
    let outside = first.outside_families().count();
    Ok(format!(
        "|T| = {}, {} orbits, {} outside the families; 5 listed pairs members; stable",
        first.members,
        first.classes.len(),
        outside
    ))
}

fn random_binary(rng: &mut ChaCha8Rng) -> Triplet {
    Triplet::from_bits(rng.gen_range(0..4096))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let t = random_binary(&mut rng);
        let r = time_reverse(&t);
        let s = swap_indices(&t);
        ensure(time_reverse(&r) == t && swap_indices(&s) == t, || format!("{t}: not an involution"))?;
        let spec = |x: &Triplet| x.to_spec(1).expect("0-1 triplet");
        let base = periodic_census(&spec(&t), 8).map_err(|e| e.to_string())?;
        let rev = periodic_census(&spec(&r), 8).map_err(|e| e.to_string())?;
        let swp = periodic_census(&spec(&s), 8).map_err(|e| e.to_string())?;
        ensure(rev == base.with_sides_swapped(), || format!("{t}: reversal census"))?;
        ensure(rev.total == base.total && rev.neutral == base.neutral, || format!("{t}: reversal totals"))?;
        ensure(swp == base, || format!("{t}: swap census"))?;
        let zt = zeta_parts(&spec(&t), 12).map_err(|e| e.to_string())?;
        let zr = zeta_parts(&spec(&r), 12).map_err(|e| e.to_string())?;
        ensure(zr.non_positive == zt.non_negative && zr.non_negative == zt.non_positive, || {
            format!("{t}: reversal does not swap the one-sided factors")
        })?;
        ensure(zr.total == zt.total, || format!("{t}: reversal changes the total zeta"))?;
    }
    Ok("20 triplets: involutions, census preserved (one-sided counts exchanged by reversal)".into())
}

fn random_subsets(rng: &mut ChaCha8Rng, spec: &SubshiftSpec) -> SubsetFamily {
    let copies = spec.copies();
    let mut draw = |m: &IntMatrix| -> Vec<Vec<BTreeSet<usize>>> {
        (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        let mut pool: Vec<usize> = (1..=copies[j]).collect();
                        pool.shuffle(rng);
                        pool.into_iter().take(m.get(i, j) as usize).collect()
                    })
                    .collect()
            })
            .collect()
    };
    SubsetFamily { minus: draw(spec.a_minus()), mid: draw(spec.a()), plus: draw(spec.a_plus()) }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut nontrivial = 0;
    for i in 0..20 {
        let base = random_spec(&mut rng);
        let with = |f: SubsetFamily| {
            SubshiftSpec::with_checked_subsets(
                base.copies().to_vec(),
                base.a_minus().clone(),
                base.a().clone(),
                base.a_plus().clone(),
                f,
            )
            .expect("subsets match cardinalities")
        };
        let x = with(random_subsets(&mut rng, &base));
        let y = with(random_subsets(&mut rng, &base));
        if x.subsets() != y.subsets() {
            nontrivial += 1;
        }
        let cx = periodic_census(&x, 8).map_err(|e| e.to_string())?;
        let cy = periodic_census(&y, 8).map_err(|e| e.to_string())?;
        ensure(cx == cy, || format!("pair #{i}: censuses differ"))?;
        let map = RelabelMap::between(&x, &y).map_err(|e| e.to_string())?;
        for len in 1..=6 {
            let words = locally_admissible_words(&x, len);
            let mut images = BTreeSet::new();
            for w in &words {
                let img = relabel_word(w, &map).map_err(|e| e.to_string())?;
                ensure(is_locally_admissible(&y, &img), || format!("pair #{i}: image not admissible"))?;
                images.insert(img);
            }
            let target = locally_admissible_words(&y, len).len();
            ensure(images.len() == words.len() && target == words.len(), || {
                format!("pair #{i}, length {len}: {} words, {} images, {target} targets", words.len(), images.len())
            })?;
        }
    }
    Ok(format!("20 pairs ({nontrivial} with differing subsets): censuses equal to n=8, relabelling bijective to length 6"))
}

fn criterion_10() -> Outcome {
    let g = build_presentation(&Triplet::ones(), LabelRule::Middle).map_err(|e| e.to_string())?;
    ensure(g.vertices.len() == 14 && g.edges.len() == 48, || format!("{} vertices, {} edges", g.vertices.len(), g.edges.len()))?;
    g.check_label_property(4).map_err(|p| format!("label property fails on path {p:?}"))?;
    let paths: usize = (1..=4).map(|n| g.paths(n).len()).sum();
    Ok(format!("14 vertices, 48 edges, label property on {paths} paths"))
}

fn main() {
    type Criterion = (&'static str, Option<u64>, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("D2 generating function", Some(60), criterion_1),
        ("constant-case quadratic", None, criterion_2),
        ("zeta factors vs periodic-point census", Some(600), criterion_3),
        ("balanced-diagonal identity and family forms", None, criterion_4),
        ("two-class sweep and cubic", Some(300), criterion_5),
        ("radical closed forms", None, criterion_6),
        ("triplet enumeration and listed pairs", None, criterion_7),
        ("time reversal and index swap", None, criterion_8),
        ("subset relabelling invariance", None, criterion_9),
        ("full D2 presentation graph", None, criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(*secs) => Err(format!("exceeded {secs} s limit")),
            (o, _) => o,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} [{:>7.2} s] {title}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
