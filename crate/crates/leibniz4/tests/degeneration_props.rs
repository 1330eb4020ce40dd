//! Property tests for degeneration verification: the basis-rewrite transport
//! must agree with the group action at random parameter values, classical
//! semicontinuous invariants must move the right way across every shipped
//! certificate, and chain closure must be a genuine reflexive-transitive
//! closure.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use proptest::prelude::*;

use leibniz4::algebra::{annihilators, derivation_dim, plus_square, square, AlgebraStructure};
use leibniz4::catalog::builtin;
use leibniz4::degeneration::{
    closure_chain, verify_degeneration, DegenerationCertificate, DegenerationReport, Verdict,
    DEGENERATION_PARAM,
};
use leibniz4::exactmath::{Scalar, ScalarMatrix};

struct Shipped {
    cert: DegenerationCertificate,
    report: DegenerationReport,
    specialized: AlgebraStructure,
}

static SHIPPED: Lazy<Vec<Shipped>> = Lazy::new(|| {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("bundle/certificates/degenerations");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .expect("bundle directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).expect("readable certificate");
            let cert = DegenerationCertificate::parse(&text).expect("parseable certificate");
            let source = &builtin(&cert.source).expect("known source").structure;
            let target = &builtin(&cert.target).expect("known target").structure;
            let report = verify_degeneration(&cert, source, target).expect("well-formed");
            assert_eq!(report.verdict, Verdict::Verified);
            let bindings: BTreeMap<String, Scalar> = cert.index.iter().cloned().collect();
            let specialized = source.substitute(&bindings).expect("specializable");
            Shipped {
                cert,
                report,
                specialized,
            }
        })
        .collect()
});

fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Rewriting the product in the basis E_1(t),...,E_n(t) is the same as
    /// acting with the inverse of the matrix whose columns are the E_i: at
    /// any admissible rational point the transported constants equal the
    /// constants of the transformed structure.
    #[test]
    fn transport_agrees_with_the_group_action(
        which in 0usize..31,
        t_val in -7i64..=7,
        p_val in -5i64..=5,
    ) {
        prop_assume!(t_val != 0);
        let shipped = &SHIPPED[which];
        let source = &builtin(&shipped.cert.source).unwrap().structure;
        let target = &builtin(&shipped.cert.target).unwrap().structure;
        let mut bindings: BTreeMap<String, Scalar> = BTreeMap::new();
        bindings.insert(DEGENERATION_PARAM.to_string(), int(t_val));
        for p in &target.params {
            bindings.insert(p.clone(), int(p_val));
        }
        for p in &source.params {
            bindings.entry(p.clone()).or_insert_with(|| int(p_val));
        }
        for factor in shipped
            .report
            .exceptional_t
            .iter()
            .chain(&shipped.report.exceptional_params)
        {
            let value = Scalar::from_poly(factor.clone()).substitute(&bindings).unwrap();
            prop_assume!(!value.is_zero());
        }
        let mut rows = Vec::new();
        for i in 0..4 {
            let mut row = Vec::new();
            for entry in shipped.cert.basis.row(i) {
                match entry.substitute(&bindings) {
                    Ok(v) => row.push(v),
                    Err(_) => {
                        prop_assume!(false);
                        unreachable!()
                    }
                }
            }
            rows.push(row);
        }
        let p = ScalarMatrix::from_rows(rows).transpose();
        let p_inverse = match p.inverse() {
            Ok(m) => m,
            Err(_) => {
                prop_assume!(false);
                unreachable!()
            }
        };
        let mut concrete_index: BTreeMap<String, Scalar> = BTreeMap::new();
        for (name, value) in &shipped.cert.index {
            match value.substitute(&bindings) {
                Ok(v) => {
                    concrete_index.insert(name.clone(), v);
                }
                Err(_) => {
                    prop_assume!(false);
                }
            }
        }
        let member = source.substitute(&concrete_index).unwrap();
        prop_assume!(member.restrictions_hold());
        let acted = member.act(&p_inverse).unwrap();
        for idx in 0..64 {
            let expected = shipped.report.transported[idx].substitute(&bindings).unwrap();
            prop_assert_eq!(&expected, &acted.constants[idx]);
        }
    }

    /// Chain closure returns genuine paths: endpoints match the key, every
    /// step is an input edge, and reachability is transitive.
    #[test]
    fn closure_chains_are_valid_paths(
        raw in prop::collection::vec((0usize..5, 0usize..5), 0..12),
    ) {
        let label = |k: usize| format!("A_{k}");
        let edges: Vec<(String, String)> =
            raw.iter().map(|&(s, t)| (label(s), label(t))).collect();
        let closure = closure_chain(&edges);
        for ((s, t), path) in &closure {
            prop_assert_eq!(path.first().unwrap(), s);
            prop_assert_eq!(path.last().unwrap(), t);
            for w in path.windows(2) {
                prop_assert!(edges.contains(&(w[0].clone(), w[1].clone())));
            }
        }
        let keys: Vec<&(String, String)> = closure.keys().collect();
        for (a, b) in &keys {
            for (b2, c) in &keys {
                if b == b2 {
                    prop_assert!(closure.contains_key(&(a.clone(), c.clone())));
                }
            }
        }
    }
}

/// Along every shipped certificate the classical semicontinuous invariants
/// move the right way: the derivation algebra and the annihilators can only
/// grow in the limit, the squares can only shrink.
#[test]
fn semicontinuous_invariants_move_the_right_way() {
    for shipped in SHIPPED.iter() {
        let name = format!("{} -> {}", shipped.cert.source, shipped.cert.target);
        let target = &builtin(&shipped.cert.target).unwrap().structure;
        let along = &shipped.specialized;

        let der_source = derivation_dim(along).generic_dim;
        let der_target = derivation_dim(target).generic_dim;
        assert!(der_target >= der_source, "{name}: derivations {der_target} < {der_source}");

        let (sq_source, _) = square(along);
        let (sq_target, _) = square(target);
        assert!(sq_target.dim() <= sq_source.dim(), "{name}: squares grew");

        let (psq_source, _) = plus_square(along);
        let (psq_target, _) = plus_square(target);
        assert!(psq_target.dim() <= psq_source.dim(), "{name}: symmetrised squares grew");

        let (left_s, _, two_s, _) = annihilators(along);
        let (left_t, _, two_t, _) = annihilators(target);
        assert!(left_t.dim() >= left_s.dim(), "{name}: left annihilator shrank");
        assert!(two_t.dim() >= two_s.dim(), "{name}: annihilator shrank");
    }
}
