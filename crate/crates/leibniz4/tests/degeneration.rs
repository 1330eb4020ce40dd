//! Oracle tests for degeneration certificates: the shipped bundle verifies
//! exactly, known transports and exceptional loci match hand-computed
//! values, and malformed or corrupted certificates are rejected with
//! diagnostics.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use leibniz4::algebra::AlgebraStructure;
use leibniz4::catalog::builtin;
use leibniz4::degeneration::{
    closure_chain, family_coverage, specialize_family, transport, verify_degeneration,
    CertificateError, DegenerationCertificate, DegenerationReport, Verdict,
};
use leibniz4::exactmath::parse::parse_scalar;
use leibniz4::exactmath::{GaussianRational, Scalar};

fn bundle_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("bundle/certificates/degenerations")
}

fn shipped_certificates() -> Vec<(String, DegenerationCertificate)> {
    let mut files: Vec<PathBuf> = fs::read_dir(bundle_dir())
        .expect("bundle directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let text = fs::read_to_string(&p).expect("readable certificate");
            let cert = DegenerationCertificate::parse(&text)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, cert)
        })
        .collect()
}

fn scalar(text: &str) -> Scalar {
    parse_scalar(text, None).expect("literal scalar")
}

fn verify_shipped(cert: &DegenerationCertificate) -> DegenerationReport {
    let source = &builtin(&cert.source).expect("known source").structure;
    let target = &builtin(&cert.target).expect("known target").structure;
    verify_degeneration(cert, source, target).expect("well-formed certificate")
}

#[test]
fn every_shipped_certificate_verifies() {
    let certs = shipped_certificates();
    assert_eq!(certs.len(), 31);
    for (name, cert) in &certs {
        let report = verify_shipped(cert);
        assert_eq!(
            report.verdict,
            Verdict::Verified,
            "{name}: {:?}",
            report.failure
        );
        assert!(report.failure.is_none(), "{name}");
    }
}

#[test]
fn serialisation_round_trips_every_shipped_certificate() {
    for (name, cert) in shipped_certificates() {
        let text = cert.to_text();
        let back = DegenerationCertificate::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, cert, "{name}");
    }
}

#[test]
fn the_nilpotent_chain_witness_transports_as_computed_by_hand() {
    // Source e1e1=e2, e2e1=e3, e4e1=e4 under E1 = t(e1+e4), E2 = t^2(e2+e4),
    // E3 = t^3(e3+e4), E4 = -t^4 e3 gives E1E1 = E2, E2E1 = E3 and
    // E3E1 = t E3 + E4; the limit is the nilpotent algebra with
    // e1e1=e2, e2e1=e3, e3e1=e4.
    let (_, cert) = shipped_certificates()
        .into_iter()
        .find(|(name, _)| name.starts_with("28"))
        .expect("certificate 28");
    assert_eq!(cert.source, "L_40");
    assert_eq!(cert.target, "L_2^n");
    let source = &builtin("L_40").unwrap().structure;
    let constants = transport(&cert, source).unwrap();
    let n = 4;
    let slot = |i: usize, j: usize, k: usize| &constants[((i - 1) * n + (j - 1)) * n + (k - 1)];
    assert_eq!(*slot(1, 1, 2), scalar("1"));
    assert_eq!(*slot(2, 1, 3), scalar("1"));
    assert_eq!(*slot(3, 1, 3), scalar("t"));
    assert_eq!(*slot(3, 1, 4), scalar("1"));
    for i in 1..=4 {
        for j in 1..=4 {
            for k in 1..=4 {
                if [(1, 1, 2), (2, 1, 3), (3, 1, 3), (3, 1, 4)].contains(&(i, j, k)) {
                    continue;
                }
                assert!(slot(i, j, k).is_zero(), "unexpected term in E_{i} E_{j}");
            }
        }
    }
}

#[test]
fn the_identity_certificate_reproduces_the_source() {
    let entry = builtin("L_21").unwrap();
    let cert = DegenerationCertificate::identity(&entry.structure);
    let constants = transport(&cert, &entry.structure).unwrap();
    assert_eq!(constants, entry.structure.constants);
    let report = verify_degeneration(&cert, &entry.structure, &entry.structure).unwrap();
    assert_eq!(report.verdict, Verdict::Verified);
}

#[test]
fn the_scaling_certificate_sends_every_builtin_to_the_zero_product() {
    let zero = &builtin("zero").unwrap().structure;
    for label in leibniz4::catalog::builtin_labels() {
        let a = &builtin(label).unwrap().structure;
        let cert = DegenerationCertificate::zero_target(a);
        let report = verify_degeneration(&cert, a, zero).unwrap();
        assert_eq!(report.verdict, Verdict::Verified, "{label}");
    }
}

#[test]
fn a_corrupted_basis_fails_with_a_product_diagnostic() {
    let (_, mut cert) = shipped_certificates()
        .into_iter()
        .find(|(name, _)| name.starts_with("01"))
        .expect("certificate 01");
    // Drop the e4 component of E1, so E1E1 no longer produces the target's
    // e1e1 = e4.
    let mut rows: Vec<Vec<Scalar>> = (0..4).map(|i| cert.basis.row(i)).collect();
    rows[0][3] = Scalar::zero();
    cert.basis = leibniz4::exactmath::ScalarMatrix::from_rows(rows);
    let report = verify_shipped(&cert);
    assert_eq!(report.verdict, Verdict::Failed);
    let message = report.failure.expect("diagnostic");
    assert!(message.contains("E_1 E_1"), "got: {message}");
}

#[test]
fn a_pole_at_the_limit_fails_with_a_regularity_diagnostic() {
    let cert = DegenerationCertificate::parse(
        "source: L_4\ntarget: L_5\nbasis:\n1, 0, 0, 1\n0, 1, 0, 0\n0, 0, 1/t, 0\n0, 0, 0, t\nindex:\na = t - 1\n",
    )
    .unwrap();
    let report = verify_shipped(&cert);
    assert_eq!(report.verdict, Verdict::Failed);
    let message = report.failure.expect("diagnostic");
    assert!(message.contains("no limit"), "got: {message}");
}

#[test]
fn exceptional_factors_split_into_curve_values_and_family_values() {
    // Source has two parameters bound through 1/a and (t+1)/a; the basis
    // determinant contributes a and t.
    let (_, cert) = shipped_certificates()
        .into_iter()
        .find(|(name, _)| name.starts_with("20"))
        .expect("certificate 20");
    let report = verify_shipped(&cert);
    assert_eq!(report.verdict, Verdict::Verified);
    let t_set: Vec<String> = report.exceptional_t.iter().map(|p| p.to_string()).collect();
    let params: Vec<String> = report
        .exceptional_params
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(t_set, ["t", "t + 1"]);
    assert_eq!(params, ["a"]);
    // The factor a is exactly the target family's own restriction, so the
    // symbolic certificate covers the whole family.
    let target = &builtin("L_34").unwrap().structure;
    let coverage = family_coverage(&report, target);
    assert!(coverage.full);
    assert_eq!(coverage.excluded_by_restriction.len(), 1);
    assert!(coverage.exceptional_points.is_empty());
    assert!(coverage.unresolved.is_empty());
}

#[test]
fn an_excepted_member_is_recovered_by_the_curve_argument() {
    // The basis entries have denominators a - 1, so a = 1 is excluded from
    // the symbolic verification; the polynomial-curve argument returns it as
    // a covered exceptional point.
    let (_, cert) = shipped_certificates()
        .into_iter()
        .find(|(name, _)| name.starts_with("21"))
        .expect("certificate 21");
    let report = verify_shipped(&cert);
    assert_eq!(report.verdict, Verdict::Verified);
    let params: Vec<String> = report
        .exceptional_params
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(params, ["a - 1"]);
    let target = &builtin("L_35").unwrap().structure;
    let coverage = family_coverage(&report, target);
    assert!(coverage.full);
    assert!(coverage.excluded_by_restriction.is_empty());
    assert_eq!(
        coverage.exceptional_points,
        [("a".to_string(), GaussianRational::from_int(1))]
    );
}

#[test]
fn an_unconstrained_family_certificate_has_no_exceptional_members() {
    let (_, cert) = shipped_certificates()
        .into_iter()
        .find(|(name, _)| name.starts_with("18"))
        .expect("certificate 18");
    let report = verify_shipped(&cert);
    assert_eq!(report.verdict, Verdict::Verified);
    assert!(report.exceptional_params.is_empty());
    let target = &builtin("L_32").unwrap().structure;
    let coverage = family_coverage(&report, target);
    assert!(coverage.full);
    assert!(coverage.exceptional_points.is_empty());
}

#[test]
fn specialization_keeps_track_of_family_restrictions() {
    let family = &builtin("L_8").unwrap().structure;
    let good: BTreeMap<String, Scalar> = [("a".to_string(), scalar("2"))].into();
    let member = specialize_family(family, &good).unwrap();
    assert!(member.params.is_empty());
    assert_eq!(*member.c(2, 0, 2), scalar("2"));
    let bad: BTreeMap<String, Scalar> = [("a".to_string(), scalar("-1"))].into();
    assert!(specialize_family(family, &bad).is_err());
}

#[test]
fn an_index_leaving_the_family_is_rejected() {
    let cert = DegenerationCertificate::parse(
        "source: L_8\ntarget: zero\nbasis:\nt, 0, 0, 0\n0, t, 0, 0\n0, 0, t, 0\n0, 0, 0, t\nindex:\na = -1\n",
    )
    .unwrap();
    let source = &builtin("L_8").unwrap().structure;
    let target = &builtin("zero").unwrap().structure;
    match verify_degeneration(&cert, source, target) {
        Err(CertificateError::RestrictionViolated(r)) => assert_eq!(r, "a + 1"),
        other => panic!("expected a restriction violation, got {other:?}"),
    }
}

#[test]
fn missing_and_stray_symbols_are_rejected() {
    let source = &builtin("L_4").unwrap().structure;
    let target = &builtin("L_5").unwrap().structure;
    let unbound = DegenerationCertificate::parse(
        "source: L_4\ntarget: L_5\nbasis:\n1, 0, 0, 1\n0, 1, 0, 0\n0, 0, t, 0\n0, 0, 0, t\n",
    )
    .unwrap();
    assert!(matches!(
        verify_degeneration(&unbound, source, target),
        Err(CertificateError::Shape(_))
    ));
    let stray = DegenerationCertificate::parse(
        "source: L_4\ntarget: L_5\nbasis:\nx, 0, 0, 1\n0, 1, 0, 0\n0, 0, t, 0\n0, 0, 0, t\nindex:\na = t - 1\n",
    )
    .unwrap();
    assert!(matches!(
        verify_degeneration(&stray, source, target),
        Err(CertificateError::Shape(_))
    ));
}

#[test]
fn a_singular_basis_is_rejected() {
    let cert = DegenerationCertificate::parse(
        "source: L_4\ntarget: L_5\nbasis:\n1, 0, 0, 1\n1, 0, 0, 1\n0, 0, t, 0\n0, 0, 0, t\nindex:\na = t - 1\n",
    )
    .unwrap();
    let source = &builtin("L_4").unwrap().structure;
    let target = &builtin("L_5").unwrap().structure;
    assert!(matches!(
        verify_degeneration(&cert, source, target),
        Err(CertificateError::SingularBasis)
    ));
}

#[test]
fn malformed_certificate_text_reports_the_line() {
    let err = DegenerationCertificate::parse("source: A\ntarget: B\nbasis:\n1, (\n").unwrap_err();
    match err {
        CertificateError::Parse { line, .. } => assert_eq!(line, 4),
        other => panic!("expected a parse error, got {other:?}"),
    }
    let err = DegenerationCertificate::parse("target: B\nbasis:\n1\n").unwrap_err();
    assert!(matches!(err, CertificateError::Parse { .. }));
}

#[test]
fn dimension_mismatches_are_rejected() {
    let mut small = AlgebraStructure::zero("tiny", 2);
    small.set(0, 0, 1, Scalar::one());
    let target = &builtin("zero").unwrap().structure;
    let cert = DegenerationCertificate::zero_target(&small);
    assert!(matches!(
        verify_degeneration(&cert, &small, target),
        Err(CertificateError::Shape(_))
    ));
}

#[test]
fn chains_compose_transitively_with_witness_paths() {
    let edges: Vec<(String, String)> = [
        ("L_23", "L_26"),
        ("L_26", "L_33"),
        ("L_15", "L_16"),
        ("L_16", "L_14"),
    ]
    .into_iter()
    .map(|(s, t)| (s.to_string(), t.to_string()))
    .collect();
    let closure = closure_chain(&edges);
    let path = |s: &str, t: &str| closure.get(&(s.to_string(), t.to_string()));
    assert_eq!(
        path("L_23", "L_33").expect("derived edge"),
        &["L_23", "L_26", "L_33"]
    );
    assert_eq!(
        path("L_15", "L_14").expect("derived edge"),
        &["L_15", "L_16", "L_14"]
    );
    assert_eq!(path("L_26", "L_26").expect("reflexive edge"), &["L_26"]);
    assert!(path("L_33", "L_23").is_none());
    assert!(closure_chain(&[]).is_empty());
}
