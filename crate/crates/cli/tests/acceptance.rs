//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.
//! Runs without the libtest harness so the lines reach the terminal under `cargo test`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use berline::fixtures;
use berline::random::{self, IsotropyBlock, MapKind, WeakRepOptions};
use berline::{
    berezinian, characteristic_function, coboundary, induced_ber_rep, is_cocycle_1,
    modular_class_ruth, null_homotopy, regular_factorization_check, tensor, verify_chain_map,
    verify_line_rep, verify_ruth, BerTrivialization, Cochain, FiniteGroupoid, Rational,
    Trivialization,
};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn one() -> BerTrivialization<Q> {
    BerTrivialization::standard()
}

fn named_fixtures() -> [(&'static str, FiniteGroupoid); 4] {
    [
        ("Z2", fixtures::z2()),
        ("Z3", fixtures::z3()),
        ("PAIR2", fixtures::pair2()),
        ("S3-action", fixtures::s3_action()),
    ]
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let (mut cases, mut retries) = (0, 0);
    while cases < 200 {
        let a = random::complex::<Q, _>(&mut rng, 0, 3, 4);
        let b = random::presented(&mut rng, a.shape.clone());
        let f = random::chain_map(&mut rng, &a, &b, MapKind::Isomorphism);
        let omega = random::homotopy(&mut rng, &a.fiber, &b.fiber);
        let g = f
            .try_add(&omega.boundary(&a.fiber, &b.fiber).unwrap())
            .unwrap();
        if !g.is_invertible() {
            retries += 1;
            continue;
        }
        let (bf, bg) = (
            berezinian(&f, &one(), &one()).unwrap(),
            berezinian(&g, &one(), &one()).unwrap(),
        );
        ensure!(
            bf == bg,
            "case {cases}: Ber(f) = {bf} but Ber(f + ∂Φ + Φ∂) = {bg}"
        );
        cases += 1;
    }
    Ok(format!(
        "{cases} cases ({retries} non-invertible perturbations redrawn)"
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut singular_inputs = 0;
    for case in 0..200 {
        let a = random::complex::<Q, _>(&mut rng, 0, 3, 4);
        let b = random::presented(&mut rng, a.shape.clone());
        let f = random::chain_map(&mut rng, &a, &b, MapKind::Equivalence);
        if !f.is_invertible() {
            singular_inputs += 1;
        }
        let r = berline::invertible_replacement(&f).map_err(|e| format!("case {case}: {e}"))?;
        for i in r.map.degrees() {
            let m = r.map.component(i);
            ensure!(
                !m.det().unwrap().is_zero(),
                "case {case}: replacement singular in degree {i}"
            );
        }
        ensure!(
            verify_chain_map(&r.map).is_valid(),
            "case {case}: not a chain map"
        );
        let diff = r.map.try_sub(&f).unwrap();
        let omega = null_homotopy(&diff)
            .unwrap()
            .ok_or(format!("case {case}: no homotopy to the input"))?;
        ensure!(
            omega.boundary(&a.fiber, &b.fiber).unwrap() == diff,
            "case {case}: certificate does not verify"
        );
    }
    Ok(format!(
        "200 equivalences ({singular_inputs} with a singular degree)"
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let (mut total, mut degenerate) = (0, 0);
    for (name, g) in named_fixtures() {
        for case in 0..16 {
            let r = random::weak_rep::<Q, _>(&mut rng, &g, &WeakRepOptions::default());
            let check = verify_ruth(&r);
            ensure!(
                check.is_valid(),
                "{name} case {case}: generator produced {}",
                check.report
            );
            if g.arrows().any(|a| !r.action(a).is_invertible()) {
                degenerate += 1;
            }
            let sigma = random::trivialization(&mut rng, &g);
            let line =
                induced_ber_rep(&r, &sigma).map_err(|e| format!("{name} case {case}: {e}"))?;
            ensure!(
                verify_line_rep(&line).is_valid(),
                "{name} case {case}: not strict"
            );
            for t in g.composable_tuples(2) {
                let (a, b) = (t.0[0], t.0[1]);
                ensure!(
                    line.action(a) * line.action(b) == *line.action(g.mul(a, b)),
                    "{name} case {case}: fails on ({}, {})",
                    g.arrow_name(a),
                    g.arrow_name(b)
                );
            }
            total += 1;
        }
    }
    let r = fixtures::z2_acyclic_zero::<Q>();
    let line = induced_ber_rep(&r, &Trivialization::standard(1)).map_err(|e| e.to_string())?;
    ensure!(
        verify_line_rep(&line).is_valid(),
        "zero map on the acyclic fiber"
    );
    ensure!(degenerate > 0, "no non-invertible actions were generated");
    Ok(format!("{total} representations on Z2, Z3, PAIR2, S3-action ({degenerate} with non-invertible Δ_g)"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    for case in 0..100 {
        let g = random::groupoid(&mut rng, 20);
        let r = random::line_rep::<Q, _>(&mut rng, &g);
        let sigma = random::trivialization(&mut rng, &g);
        let phi = characteristic_function(&r, &sigma).unwrap();
        ensure!(is_cocycle_1(&g, &phi), "case {case}: φ_σ is not a cocycle");
        let f = random::cochain::<Q, _>(&mut rng, &g, 0);
        let phi_f = characteristic_function(&r, &sigma.rescaled(&f).unwrap()).unwrap();
        for a in g.arrows() {
            let (s, t) = (g.source(a), g.target(a));
            let expected = phi.at_arrow(a) * f.at_object(s) / f.at_object(t);
            ensure!(
                *phi_f.at_arrow(a) == expected,
                "case {case}: pointwise failure at arrow {}",
                g.arrow_name(a)
            );
        }
    }
    Ok("100 line representations with random rescalings".into())
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut largest = 0;
    for case in 0..100 {
        let g = random::groupoid(&mut rng, 20);
        ensure!(g.arrow_count() <= 20, "case {case}: too many arrows");
        largest = largest.max(g.arrow_count());
        for degree in 0..=1 {
            let f: Cochain<Q> = random::cochain(&mut rng, &g, degree);
            let dd = coboundary(&g, &coboundary(&g, &f).unwrap()).unwrap();
            ensure!(dd.is_one(), "case {case}: δδ ≠ 1 in degree {degree}");
        }
    }
    Ok(format!(
        "100 groupoids (up to {largest} arrows), degrees 0 and 1"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    for case in 0..100 {
        let g = random::groupoid(&mut rng, 20);
        let (a, b) = (
            random::line_rep::<Q, _>(&mut rng, &g),
            random::line_rep::<Q, _>(&mut rng, &g),
        );
        let (sa, sb) = (
            random::trivialization::<Q, _>(&mut rng, &g),
            random::trivialization(&mut rng, &g),
        );
        let sab = Trivialization::new(
            sa.scales()
                .iter()
                .zip(sb.scales())
                .map(|(x, y)| x * y)
                .collect(),
        )
        .unwrap();
        let lhs = characteristic_function(&tensor(&a, &b).unwrap(), &sab).unwrap();
        let (pa, pb) = (
            characteristic_function(&a, &sa).unwrap(),
            characteristic_function(&b, &sb).unwrap(),
        );
        for x in g.arrows() {
            ensure!(
                *lhs.at_arrow(x) == pa.at_arrow(x) * pb.at_arrow(x),
                "case {case}: arrow {}",
                g.arrow_name(x)
            );
        }
    }
    Ok("100 random pairs".into())
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    let mut nontrivial = 0;
    for case in 0..52 {
        let (_, g) = &named_fixtures()[case % 4];
        let r = random::weak_rep::<Q, _>(&mut rng, g, &WeakRepOptions::default());
        let sigma = random::trivialization(&mut rng, g);
        ensure!(
            regular_factorization_check(&r, &sigma).map_err(|e| e.to_string())?,
            "case {case}: total class differs from the cohomology product"
        );
        if !modular_class_ruth(&r, &sigma).unwrap().is_coboundary {
            nontrivial += 1;
        }
    }
    Ok(format!(
        "52 representations ({nontrivial} with nontrivial class)"
    ))
}

fn criterion_8() -> Outcome {
    let odd = fixtures::z2_sign_odd::<Q>();
    let report = modular_class_ruth(&odd, &Trivialization::standard(1)).unwrap();
    ensure!(
        !report.is_coboundary,
        "Z2 odd sign line: class should be nontrivial"
    );

    let mut rng = rng(8);
    let pair = fixtures::pair2();
    for case in 0..30 {
        let r = random::weak_rep::<Q, _>(&mut rng, &pair, &WeakRepOptions::default());
        let sigma = random::trivialization(&mut rng, &pair);
        let report = modular_class_ruth(&r, &sigma).unwrap();
        let w = report
            .witness
            .clone()
            .ok_or(format!("PAIR2 case {case}: no witness"))?;
        ensure!(
            coboundary(&pair, &w).unwrap() == report.cocycle,
            "PAIR2 case {case}: witness does not verify"
        );
        let line = random::line_rep::<Q, _>(&mut rng, &pair);
        let phi = characteristic_function(&line, &sigma).unwrap();
        ensure!(
            berline::coboundary_solve_1(&pair, &phi)
                .unwrap()
                .is_coboundary,
            "PAIR2 line case {case}: nontrivial"
        );
    }

    let acyclic = fixtures::z2_acyclic_zero::<Q>();
    let ber = induced_ber_rep(&acyclic, &Trivialization::standard(1)).unwrap();
    ensure!(
        ber.actions().iter().all(One::is_one),
        "acyclic fixture: Berezinian not ≡ 1"
    );
    let options = WeakRepOptions {
        acyclic: true,
        ..WeakRepOptions::default()
    };
    for (name, g) in named_fixtures() {
        for case in 0..5 {
            let r = random::weak_rep::<Q, _>(&mut rng, &g, &options);
            let ber = induced_ber_rep(&r, &Trivialization::standard(g.object_count())).unwrap();
            ensure!(
                ber.actions().iter().all(One::is_one),
                "acyclic {name} case {case}: Berezinian not ≡ 1"
            );
        }
    }
    Ok(
        "Z2 odd line nontrivial; 30 PAIR2 reps trivial with witness; acyclic fibers give Ber ≡ 1"
            .into(),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = rng(9);
    let options = WeakRepOptions {
        blocks: vec![IsotropyBlock::Trivial],
        ..WeakRepOptions::default()
    };
    for case in 0..52 {
        let (name, g) = &named_fixtures()[case % 4];
        let base = random::weak_rep::<Q, _>(&mut rng, g, &options);
        let (r, _) = random::twist(&mut rng, &base);
        let sigma = random::trivialization(&mut rng, g);
        let report = modular_class_ruth(&r, &sigma).unwrap();
        ensure!(report.is_coboundary, "{name} case {case}: class nontrivial");
        let rescaled = sigma
            .rescaled(&report.invariant_rescaling().unwrap())
            .unwrap();
        let line = induced_ber_rep(&r, &rescaled).unwrap();
        let phi =
            characteristic_function(&line, &Trivialization::standard(g.object_count())).unwrap();
        ensure!(phi.is_one(), "{name} case {case}: rescaled φ is not ≡ 1");
    }
    Ok("52 coboundary twists of unimodular representations".into())
}

fn berline_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_berline"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for file in [
        "z2_sign_odd.json",
        "pair2_rep.json",
        "s3_action.json",
        "acyclic_two_term.json",
    ] {
        let (c1, first) = berline_cli(&["modular-class", file, "--format", "json"]);
        let (c2, second) = berline_cli(&["modular-class", file, "--format", "json"]);
        ensure!(c1 == 0 && c2 == 0, "{file}: exit {c1}/{c2}");
        ensure!(first == second, "{file}: reports differ between runs");
        let expected = std::fs::read(golden.join(file.replace(".json", ".modular-class.json")))
            .map_err(|e| format!("{file}: {e}"))?;
        ensure!(
            first == expected,
            "{file}: report differs from the golden file"
        );
    }
    let codes = [
        berline_cli(&["validate", "pair2_rep.json"]).0,
        berline_cli(&["validate", "broken_assoc.json"]).0,
        berline_cli(&["validate", "zero_denominator.json"]).0,
    ];
    ensure!(
        codes == [0, 1, 2],
        "exit codes {codes:?}, expected [0, 1, 2]"
    );
    Ok("4 golden reports byte-identical; exit codes 0/1/2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Berezinian homotopy invariance", criterion_1),
        ("invertible replacement", criterion_2),
        ("induced representation strictness", criterion_3),
        ("characteristic cocycle and rescaling", criterion_4),
        ("δ∘δ ≡ 1", criterion_5),
        ("tensor multiplicativity", criterion_6),
        ("regular factorization", criterion_7),
        ("known classes", criterion_8),
        ("unimodularity witness", criterion_9),
        ("CLI golden files and exit codes", criterion_10),
    ];
    let timed = |check: fn() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        (outcome, start.elapsed().as_secs_f64())
    };
    let results: Vec<(Outcome, f64)> = criteria.iter().map(|&(_, check)| timed(check)).collect();
    let mut failed = 0;
    for (k, ((name, _), (outcome, secs))) in criteria.iter().zip(results).enumerate() {
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
