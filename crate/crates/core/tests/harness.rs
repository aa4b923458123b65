use movnorm::ensemble::{generate, EnsembleKind, EnsembleSpec};
use movnorm::verify::{checks, replay, run_groups, Outcome, Source, SourceGroup};
use movnorm::{horizon, run_all, Matrix, VerifyConfig};

fn fixed(label: &str, matrices: Vec<Matrix>) -> SourceGroup {
    SourceGroup {
        dim: matrices[0].dim(),
        source: Source::Fixed {
            label: label.into(),
            matrices,
        },
    }
}

#[test]
fn identity_only_run_is_clean() {
    let groups = [2, 3].map(|d| fixed("identity", vec![Matrix::identity(d)]));
    let reports = run_groups(&groups, 20, 5).unwrap();
    assert_eq!(reports.len(), checks().len());
    for r in &reports {
        assert!(r.passed(), "{r:?}");
        if let Some(w) = r.worst_violation {
            assert!(w <= 1e-12, "{r:?}");
        }
    }
}

#[test]
fn scalar_fixtures_have_known_horizons() {
    let i = Matrix::identity(3);
    let cases = [
        (Matrix::zeros(3), 0.5),
        (i.clone(), 1.0),
        (i.scale_real(-1.0), 0.0),
    ];
    for (x, expected) in &cases {
        assert!((horizon(x).unwrap().value - expected).abs() <= 1e-8);
    }
    let group = fixed("scalars", cases.into_iter().map(|(x, _)| x).collect());
    for r in run_groups(&[group], 30, 9).unwrap() {
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn reports_are_deterministic_and_replayable() {
    let config = VerifyConfig {
        dims: vec![2, 3],
        trials: 12,
        seed: 42,
        ..VerifyConfig::default()
    };
    let a = run_all(&config).unwrap();
    let b = run_all(&config).unwrap();
    assert_eq!(a, b);
    let other = run_all(&VerifyConfig {
        seed: 43,
        ..config.clone()
    })
    .unwrap();
    assert_ne!(a, other);

    for r in &a {
        let (Some(seed), Some(dim), Some(label)) = (r.worst_seed, r.worst_dim, &r.worst_source)
        else {
            continue;
        };
        let kind: EnsembleKind = label.parse().unwrap();
        let source = Source::Random {
            kind,
            norm_cap: config.norm_cap,
        };
        match replay(&r.check_id, &source, dim, seed).unwrap() {
            Outcome::Checked { violation, .. } => {
                assert_eq!(Some(violation), r.worst_violation, "{}", r.check_id)
            }
            other => panic!("{}: replay gave {other:?}", r.check_id),
        }
    }
}

#[test]
fn ensembles_respect_their_contracts() {
    for kind in EnsembleKind::ALL {
        let spec = EnsembleSpec {
            kind,
            dim: 4,
            count: 25,
            seed: 3,
            norm_cap: 0.9,
        };
        let samples = generate(&spec).unwrap();
        assert_eq!(samples, generate(&spec).unwrap());
        for m in &samples {
            let n = m.operator_norm();
            match kind {
                EnsembleKind::Unitary => assert!(m.is_unitary()),
                EnsembleKind::Projection => {
                    assert!(m.is_hermitian());
                    assert!(m.mul(m).unwrap().sub(m).unwrap().frobenius_norm() < 1e-10);
                }
                EnsembleKind::Fne => assert!(movnorm::classes::is_fne(m)),
                EnsembleKind::Hermitian => assert!(m.is_hermitian() && n <= 0.9 + 1e-12),
                EnsembleKind::Ginibre | EnsembleKind::NilpotentLike => {
                    assert!(n <= 0.9 + 1e-12)
                }
            }
        }
    }
}

#[test]
fn unknown_check_cannot_be_replayed() {
    let source = Source::Random {
        kind: EnsembleKind::Ginibre,
        norm_cap: 1.0,
    };
    assert!(replay("no_such_check", &source, 2, 0).is_err());
}
