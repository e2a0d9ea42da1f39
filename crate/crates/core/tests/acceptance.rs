//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command as Process, ExitCode};
use std::time::Instant;

use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use signed_bernoulli::algebraic::FieldSpec;
use signed_bernoulli::asymptotics::{
    estimate_constant, generating_function_coeffs, recurrence, solve_all_roots, solve_real_root,
};
use signed_bernoulli::cli::{self, Cli};
use signed_bernoulli::measure::{expand, SignedMeasure};
use signed_bernoulli::tree::{self, PrunedTree, SignSequence};
use signed_bernoulli::{oddm, sineprod};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(m: usize) -> Result<FieldSpec, String> {
    FieldSpec::new(m).map_err(|e| e.to_string())
}

fn brute_force_agrees(m: usize, n_max: usize) -> Check {
    let s = spec(m)?;
    let table = recurrence(m, n_max).map_err(|e| e.to_string())?;
    for n in 0..=n_max {
        let brute = expand(&s, n, true).map_err(|e| e.to_string())?;
        let a = brute.abs_numerator_sum();
        ensure(a == table.values()[n], || {
            format!(
                "m={m} n={n}: brute force {a} vs recurrence {}",
                table.values()[n]
            )
        })?;
        let tv = brute.total_variation() * BigRational::from_integer(BigInt::from(1u64 << n));
        ensure(tv == BigRational::from_integer(a.clone()), || {
            format!("m={m} n={n}: 2^n‖ν‖ ≠ {a}")
        })?;
    }
    Ok(format!("m={m}, n ≤ {n_max}"))
}

fn criterion_1() -> Check {
    let expected: Vec<BigInt> = [1, 2, 4, 6, 8, 12, 20, 32, 48, 72, 112]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    let table = recurrence(2, 10).map_err(|e| e.to_string())?;
    ensure(table.values() == expected.as_slice(), || {
        format!("table {:?}", table.values())
    })?;
    brute_force_agrees(2, 14)
}

fn criterion_2() -> Check {
    let table = recurrence(4, 4).map_err(|e| e.to_string())?;
    for n in 0..=4 {
        ensure(table.values()[n] == BigInt::from(1u64 << n), || {
            format!("a_{n} ≠ 2^{n}")
        })?;
    }
    brute_force_agrees(4, 12)
}

fn criterion_3() -> Check {
    let lambda = solve_real_root(2, 12).map_err(|e| e.to_string())?;
    let tol = BigRational::new(BigInt::from(1), BigInt::from(100_000_000));
    ensure(lambda.width() < tol, || "enclosure wider than 1e-8".into())?;
    let half = lambda.scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    let lo = half.decimal(6);
    let hi = signed_bernoulli::asymptotics::truncated_decimal(&half.hi, 6);
    ensure(lo == "0.771844" && hi == "0.771844", || {
        format!("λ/2 ∈ [{lo}, {hi}]")
    })?;
    Ok(format!("λ/2 = {}", half.decimal(12)))
}

fn criterion_4() -> Check {
    let mut worst = 0.0f64;
    for m in [2, 4, 6, 8] {
        let r = solve_all_roots(m).map_err(|e| e.to_string())?;
        let lambda = r.lambda.to_f64();
        for z in &r.complex_roots {
            ensure(z.modulus < 1.5 && z.modulus < lambda, || {
                format!("m={m}: root {}+{}i has modulus {}", z.re, z.im, z.modulus)
            })?;
        }
        ensure(r.max_residual < 1e-10, || {
            format!("m={m}: residual {}", r.max_residual)
        })?;
        ensure(r.roots_counted == m + 1, || {
            format!("m={m}: {} roots", r.roots_counted)
        })?;
        worst = worst.max(r.max_complex_modulus);
    }
    Ok(format!("largest subdominant modulus {worst:.6}"))
}

fn criterion_5() -> Check {
    for m in [2, 4] {
        let t = PrunedTree::build(&spec(m)?, m + 1).map_err(|e| e.to_string())?;
        for n in 0..=m {
            ensure(t.level(n).len() == 1 << n, || {
                format!("m={m}: |D_{n}*| = {}", t.level(n).len())
            })?;
        }
        let missing: BTreeSet<SignSequence> =
            tree::pruned_words(t.level(m + 1)).into_iter().collect();
        let expected: BTreeSet<SignSequence> = [
            SignSequence::minus_then_plus(m + 1),
            SignSequence::plus_then_minus(m + 1),
        ]
        .into();
        ensure(missing == expected, || format!("m={m}: pruned {missing:?}"))?;
        ensure(tree::check_first_pruning(&t).passed, || {
            format!("m={m}: first pruning report")
        })?;
    }
    Ok("m ∈ {2, 4}".into())
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for (m, depth) in [(2, 14), (4, 12)] {
        let s = spec(m)?;
        let t = PrunedTree::build(&s, depth).map_err(|e| e.to_string())?;
        let table = recurrence(m, depth).map_err(|e| e.to_string())?;
        for n in 0..=depth {
            let r = tree::check_isomorphism(&s, t.level(n), t.measure(n));
            ensure(r.passed, || {
                format!("m={m} n={n}: isomorphism {:?}", r.first_violation)
            })?;
        }
        for n in 0..depth {
            let r = tree::check_leafless(t.level(n), t.level(n + 1));
            ensure(r.passed, || {
                format!("m={m} n={n}: leafless {:?}", r.first_violation)
            })?;
        }
        for n in 1..depth {
            let r = tree::check_diamond(&t, n).map_err(|e| e.to_string())?;
            ensure(r.passed, || {
                format!("m={m} n={n}: diamond {:?}", r.first_violation)
            })?;
            let expected = if n >= m {
                &table.values()[n - m + 1] - &table.values()[n - m]
            } else {
                BigInt::from(0)
            };
            ensure(BigInt::from(r.b_n) == expected, || {
                format!("m={m} n={n}: b_n = {} vs {expected}", r.b_n)
            })?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))?;
    Ok(format!("m=2 to 14, m=4 to 12 in {secs:.2} s"))
}

fn criterion_7() -> Check {
    for m in [2, 4, 6] {
        let gf = generating_function_coeffs(m, 200).map_err(|e| e.to_string())?;
        let t = recurrence(m, 200).map_err(|e| e.to_string())?;
        ensure(gf == t.values(), || {
            format!("m={m}: series and recurrence differ")
        })?;
    }
    Ok("N = 200, m ∈ {2, 4, 6}".into())
}

fn criterion_8() -> Check {
    let lambda = solve_real_root(2, 40).map_err(|e| e.to_string())?;
    let r40 = estimate_constant(&recurrence(2, 40).map_err(|e| e.to_string())?, &lambda)
        .map_err(|e| e.to_string())?;
    let r80 = estimate_constant(&recurrence(2, 80).map_err(|e| e.to_string())?, &lambda)
        .map_err(|e| e.to_string())?;
    ensure(r80.bracket_width < 1e-6, || {
        format!("width {} at n=80", r80.bracket_width)
    })?;
    ensure(r40.contains(r80.c_estimate), || {
        format!("{} outside {:?}", r80.c_estimate, r40.bracket)
    })?;
    Ok(format!(
        "C ≈ {:.10}, width {:.1e}",
        r80.c_estimate, r80.bracket_width
    ))
}

fn criterion_9() -> Check {
    for m in [3, 5] {
        let s = spec(m)?;
        let r = oddm::verify_no_decay(&s, 10).map_err(|e| e.to_string())?;
        ensure(r.passed, || {
            format!("m={m}: first failure at {:?}", r.first_failure)
        })?;
        for n in 1..=10 {
            let nu = SignedMeasure::signed(&s, n).map_err(|e| e.to_string())?;
            let mu = SignedMeasure::unsigned(&s, n).map_err(|e| e.to_string())?;
            ensure(
                nu.total_variation() == BigRational::from_integer(BigInt::from(1)),
                || format!("m={m} n={n}: ‖ν‖ = {}", nu.total_variation()),
            )?;
            ensure(nu.variation_measure() == mu, || {
                format!("m={m} n={n}: |ν| ≠ μ")
            })?;
        }
    }
    let w = oddm::search_witness(&spec(3)?, 14).map_err(|e| e.to_string())?;
    ensure(w.is_none(), || format!("unexpected witness {w:?}"))?;
    Ok("m ∈ {3, 5} to n=10; no witness for m=3 to 14".into())
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let s = spec(2)?;
    let mut maxima = Vec::new();
    for n in [6, 10, 14] {
        let xi_max = sineprod::default_xi_max(&s, n);
        let scan = sineprod::scan(&s, n, xi_max, 200_000).map_err(|e| e.to_string())?;
        let bound = SignedMeasure::signed(&s, n)
            .map_err(|e| e.to_string())?
            .total_variation();
        let exact = BigRational::from_float(scan.max_abs).ok_or("non-finite maximum")?;
        ensure(exact <= bound, || {
            format!("n={n}: {} > {bound}", scan.max_abs)
        })?;
        if n == 10 {
            ensure(scan.max_abs <= 0.109375, || {
                format!("n=10: {}", scan.max_abs)
            })?;
            let narrow = sineprod::scan(&s, 10, 200.0, 200_000).map_err(|e| e.to_string())?;
            ensure(narrow.max_abs <= 0.109375, || {
                format!("n=10 on [0, 200]: {}", narrow.max_abs)
            })?;
        }
        maxima.push(format!("{:.6}", scan.max_abs));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "max |F_n| = {} for n = 6, 10, 14",
        maxima.join(", ")
    ))
}

fn verify_via_library(jobs: &str) -> Result<String, String> {
    let cli = Cli::try_parse_from([
        "signed-bernoulli",
        "--jobs",
        jobs,
        "--seed",
        "17",
        "verify",
        "--m",
        "2",
    ])
    .map_err(|e| e.to_string())?;
    let out = cli::run(&cli).map_err(|e| e.to_string())?;
    ensure(out.passed, || "verify reported a failure".into())?;
    Ok(out.output)
}

fn verify_via_binary(jobs: &str) -> Result<Vec<u8>, String> {
    let out = Process::new(env!("CARGO_BIN_EXE_signed-bernoulli"))
        .args(["--jobs", jobs, "--seed", "17", "verify", "--m", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit status {}", out.status)
    })?;
    Ok(out.stdout)
}

fn criterion_11() -> Check {
    let a = verify_via_library("1")?;
    let b = verify_via_library("4")?;
    ensure(a == b, || {
        "library reports differ between --jobs 1 and 4".into()
    })?;
    let c = verify_via_binary("1")?;
    let d = verify_via_binary("3")?;
    ensure(c == d, || {
        "binary reports differ between --jobs 1 and 3".into()
    })?;
    ensure(c == a.as_bytes(), || {
        "binary and library reports differ".into()
    })?;
    Ok(format!("{} identical bytes", c.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("recurrence matches brute force, m=2", criterion_1),
        ("recurrence matches brute force, m=4", criterion_2),
        ("decay rate λ/2 = 0.771844", criterion_3),
        ("dominant root", criterion_4),
        ("first pruning", criterion_5),
        ("tree structure", criterion_6),
        ("generating function", criterion_7),
        ("constant bracket", criterion_8),
        ("odd m has no decay", criterion_9),
        ("Fourier bound", criterion_10),
        ("deterministic verify", criterion_11),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
