use leibniz4::catalog::builtin;
use leibniz4::separation::*;
use leibniz4::exactmath::GroebnerBudget;
use std::time::Instant;

const R1: &str = "\
contain: 1 3 5
contain: 4 2 5
contain: 3 2 4
contain: 4 1 4
contain: 2 2 3
contain: 3 1 3
contain: 2 1 2
contain: 1 2 2
eq: c_1_2_2 + c_2_1_2
eq: c_3_1_3 - 2*c_2_1_2
eq: c_1_2_3 - c_2_1_3
";

const R2: &str = "\
contain: 1 1 2
contain: 2 2 4
contain: 3 1 3
contain: 1 3 3
contain: 4 1 4
contain: 1 4 5
contain: 4 2 5
eq: c_1_3_3 + c_3_1_3
eq: c_4_1_4 - 2*c_3_1_3
eq: c_1_3_4 - c_3_1_4
eq: c_2_3_4 - c_3_2_4
";

fn main() {
    let budget = GroebnerBudget::default();
    let r1 = ClosedSetSpec::parse(R1).unwrap();
    let r2 = ClosedSetSpec::parse(R2).unwrap();

    let l44 = &builtin("L_44").unwrap().structure;
    println!("L_44 in R1: {}", closed_set_membership(l44, &r1));
    let l9 = &builtin("L_9").unwrap().structure;
    let l9p = permute_basis(l9, &[0, 2, 1, 3]);
    println!("L_9 permuted in R2: {}", closed_set_membership(&l9p, &r2));
    let l10 = &builtin("L_10").unwrap().structure;
    let l10p = permute_basis(l10, &[0, 2, 1, 3]);
    println!("L_10 permuted in R2: {}", closed_set_membership(&l10p, &r2));

    let t = Instant::now();
    println!("R1 stability: {:?}  ({:?})", borel_stability(&r1, &budget), t.elapsed());
    let t = Instant::now();
    println!("R2 stability: {:?}  ({:?})", borel_stability(&r2, &budget), t.elapsed());

    let l5n = &builtin("L_5^n").unwrap().structure;
    let t = Instant::now();
    println!("orbit L_5^n vs R1: {:?}  ({:?})", orbit_refute(l5n, &r1, &budget), t.elapsed());
    let l15 = &builtin("L_15").unwrap().structure;
    let t = Instant::now();
    println!("orbit L_15 vs R2: {:?}  ({:?})", orbit_refute(l15, &r2, &budget), t.elapsed());
    let l18 = &builtin("L_18").unwrap().structure;
    let t = Instant::now();
    println!("orbit L_18 vs R2: {:?}  ({:?})", orbit_refute(l18, &r2, &budget), t.elapsed());
    let t = Instant::now();
    println!("orbit L_44 vs R1: {:?}  ({:?})", orbit_refute(l44, &r1, &budget), t.elapsed());
}
