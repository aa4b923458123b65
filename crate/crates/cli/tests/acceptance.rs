//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use movnorm::verify::{run_groups, Source, SourceGroup};
use movnorm::{horizon, run_all, EnsembleKind, Matrix, TheoremReport, VerifyConfig};

const SEED: u64 = 20_240_601;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn random_groups(dims: &[usize], kinds: &[EnsembleKind]) -> Vec<SourceGroup> {
    dims.iter()
        .flat_map(|&dim| {
            kinds.iter().map(move |&kind| SourceGroup {
                dim,
                source: Source::Random {
                    kind,
                    norm_cap: 1.0,
                },
            })
        })
        .collect()
}

fn report<'a>(reports: &'a [TheoremReport], id: &str) -> &'a TheoremReport {
    reports
        .iter()
        .find(|r| r.check_id == id)
        .unwrap_or_else(|| panic!("no report for {id}"))
}

fn summary(r: &TheoremReport) -> String {
    format!(
        "{} trials={} skipped={} failures={} worst={}",
        r.check_id,
        r.trials,
        r.skipped,
        r.failures,
        r.worst_violation.map_or("-".into(), |v| format!("{v:.3e}"))
    )
}

/// All named reports passed with at least `min_trials` trials.
fn all_clean(reports: &[TheoremReport], ids: &[&str], min_trials: usize) -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for id in ids {
        let r = report(reports, id);
        ok &= r.passed() && r.trials >= min_trials;
        lines.push(summary(r));
    }
    outcome(ok, lines.join("; "))
}

fn analytic_fixtures() -> Outcome {
    let start = Instant::now();
    let i2 = Matrix::identity(2);
    let fixtures = [
        ("I", i2.clone(), 1.0),
        ("0", Matrix::zeros(2), 0.5),
        ("-I", i2.scale_real(-1.0), 0.0),
        ("diag(1,0)", Matrix::diag(&[1.0, 0.0]).unwrap(), 0.5),
        ("diag(0.5,-0.5)", Matrix::diag(&[0.5, -0.5]).unwrap(), 0.25),
        ("0.5I", i2.scale_real(0.5), 0.75),
        (
            "[[0,1],[0,0]]",
            Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap(),
            0.0,
        ),
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for (name, x, expected) in &fixtures {
        let err = (horizon(x).unwrap().value - expected).abs();
        if err > 1e-8 {
            ok = false;
            eprintln!("  fixture {name}: error {err:e}");
        }
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    outcome(
        ok && elapsed < Duration::from_secs(1),
        format!(
            "{} fixtures, worst error {worst:.3e}, {elapsed:.2?}",
            fixtures.len()
        ),
    )
}

fn hermitian_closed_form() -> Outcome {
    let groups = random_groups(&[2, 4, 8], &[EnsembleKind::Hermitian]);
    let reports = run_groups(&groups, 500, SEED).unwrap();
    all_clean(
        &reports,
        &["thm_hermitian_horizon", "thm_hermitian_closed_form"],
        1500,
    )
}

fn inequality_suite(full: &[TheoremReport], elapsed: Duration) -> Outcome {
    let ids = [
        "eq4_scaling_m",
        "eq5_sum_m",
        "eq6_infimum_m",
        "eq8_scaling_am",
        "eq9_sum_am",
        "eq10_infimum_am",
        "eq12_product",
        "thm_hor_sum",
        "thm_hor_product",
        "eq19_cstar",
        "eq20_cstar_horizon",
    ];
    let clean = all_clean(full, &ids, 2000);
    let others_failed: Vec<&str> = full
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.check_id.as_str())
        .collect();
    outcome(
        clean.ok && others_failed.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "full run {elapsed:.2?}, failing checks {others_failed:?}; {}",
            clean.detail
        ),
    )
}

fn unitary_theorem() -> Outcome {
    let groups = random_groups(&[2, 3, 4, 8], &[EnsembleKind::Unitary]);
    let reports = run_groups(&groups, 500, SEED).unwrap();
    all_clean(&reports, &["thm_unitary"], 2000)
}

fn fne_equivalence() -> Outcome {
    // Trials alternate between the two ensembles: 500 of each per dimension.
    let groups = random_groups(&[2, 3, 4, 8], &[EnsembleKind::Ginibre, EnsembleKind::Fne]);
    let reports = run_groups(&groups, 1000, SEED).unwrap();
    let r = report(&reports, "thm_fne_equiv");
    outcome(
        r.passed() && r.trials == 4000 && r.skipped < r.trials,
        format!(
            "{} ({} agreed, {} in boundary bands)",
            summary(r),
            r.trials - r.skipped - r.failures,
            r.skipped
        ),
    )
}

fn adjoint_and_scaling(full: &[TheoremReport]) -> Outcome {
    all_clean(
        full,
        &["adjoint_horizon", "eq4_scaling_m", "eq8_scaling_am"],
        2000,
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_movnorm"))
            .args(["verify", "--trials", "100", "--seed", "7", "--out"])
            .arg(&path)
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        (status.success(), std::fs::read(&path).unwrap_or_default())
    };
    let (ok_a, a) = run("a.json");
    let (ok_b, b) = run("b.json");
    outcome(
        ok_a && ok_b && !a.is_empty() && a == b,
        format!("two runs, {} bytes each, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let full = run_all(&VerifyConfig {
        seed: SEED,
        ..VerifyConfig::default()
    })
    .unwrap();
    let full_elapsed = start.elapsed();

    let criteria: [Criterion; 7] = [
        ("1 analytic horizon fixtures", Box::new(analytic_fixtures)),
        ("2 hermitian closed form", Box::new(hermitian_closed_form)),
        (
            "3 inequality suite",
            Box::new(|| inequality_suite(&full, full_elapsed)),
        ),
        ("4 unitary theorem", Box::new(unitary_theorem)),
        ("5 fne triple equivalence", Box::new(fne_equivalence)),
        (
            "6 adjoint symmetry and scaling",
            Box::new(|| adjoint_and_scaling(&full)),
        ),
        ("7 verify determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (name, criterion) in &criteria {
        let o = criterion();
        println!(
            "[{}] {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
