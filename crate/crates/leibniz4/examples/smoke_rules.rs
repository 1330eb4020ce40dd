use leibniz4::algebra::derivation_dim;
use leibniz4::catalog::builtin;
use leibniz4::separation::*;
use leibniz4::exactmath::GroebnerBudget;

fn b(l: &str) -> leibniz4::algebra::AlgebraStructure { builtin(l).unwrap().structure.clone() }

fn main() {
    let budget = GroebnerBudget::default();
    let run = |rule: RuleTag, s: &str, t: &str, dim: Option<usize>, ib: Option<usize>| {
        let mut c = SeparationCertificate::new(rule, s, t);
        c.subalgebra_dim = dim;
        c.image_bound = ib;
        let r = invariant_separation(&c, &b(s), &b(t), &budget);
        println!("{rule} {s} -> {t}: {} ({})", r.verified, r.detail);
    };
    run(RuleTag::AnnLeftGt, "R_1", "L_5^n", None, None);
    run(RuleTag::PlusSquareLt, "R_3", "R_1", None, None);
    run(RuleTag::DerDim, "L_4", "L_44", None, None);
    run(RuleTag::DerDim, "L_4", "R_1", None, None);
    run(RuleTag::NilradicalDim, "L_5", "R_1", None, None);
    run(RuleTag::TrivialSubalg, "L_21", "L_2", Some(3), None);
    run(RuleTag::TrivialSubalg, "L_23", "L_44", Some(3), None);
    run(RuleTag::TrivialSubalg, "L_22", "L_4", Some(3), None);
    run(RuleTag::AnticommSubalg, "R_3", "L_5", Some(3), Some(1));
    run(RuleTag::SixTuple, "L_4", "L_2", None, None);

    for t in ["R_2", "g_5", "g_4"] {
        let report = lie_ann_separation(&[b("L_21")], &b(t));
        println!("lie_ann L_21 -> {t}: {} exceptional {:?} {:?}",
            report.verified,
            report.exceptional.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            report.failure);
    }
    for l in ["L_4", "L_8", "L_9", "L_10", "L_15", "L_18", "L_21", "L_22", "L_23", "L_2", "L_44", "R_1", "R_3"] {
        let d = derivation_dim(&b(l));
        println!("der {l}: generic {} exceptional {:?}", d.generic_dim,
            d.exceptional.iter().map(|e| (e.constraint.to_string(), e.points.iter().map(|p| (p.value.to_string(), p.dim)).collect::<Vec<_>>(), e.resolved)).collect::<Vec<_>>());
    }
}
