use leibniz4::algebra::*;
use leibniz4::catalog::builtin;
use leibniz4::exactmath::{GroebnerBudget, Scalar};
use leibniz4::subspaces::*;
use std::collections::BTreeMap;

fn main() {
    let budget = GroebnerBudget::default();
    let cands = ["R_1", "R_3", "L_2", "L_4", "L_8", "L_9", "L_10", "L_15", "L_18", "L_21", "L_22", "L_23", "L_44"];
    for label in cands {
        let a = &builtin(label).unwrap().structure;
        let (l, _r, two, exc) = annihilators(a);
        let (sq, _) = square(a);
        let (ps, _) = plus_square(a);
        let triv = match exists_subspace(a, 3, &SubspaceProperty::Trivial, &budget) {
            SubspaceAnswer::Yes(_) => "yes", SubspaceAnswer::No => "no", SubspaceAnswer::Inconclusive => "inc" };
        let anti = match exists_subspace(a, 3, &SubspaceProperty::AnticommutativeImageBound(1), &budget) {
            SubspaceAnswer::Yes(_) => "yes", SubspaceAnswer::No => "no", SubspaceAnswer::Inconclusive => "inc" };
        let nil = match nilradical_dim(a, &budget) { Ok((d, _)) => d.to_string(), Err(e) => format!("{e:?}") };
        println!("{label}: annL {} ann {} sq {} ps {} triv3 {triv} anti31 {anti} nilrad {nil} exc {:?}",
            l.dim(), two.dim(), sq.dim(), ps.dim(),
            exc.iter().map(|f| f.to_string()).collect::<Vec<_>>());
    }
    // special values of one-parameter targets
    for (label, v) in [("L_15", 0i64), ("L_18", 0), ("L_4", 0), ("L_10", 0), ("L_10", 2), ("L_8", 1), ("L_9", 0), ("L_9", 1), ("L_4", -1), ("L_8", -1)] {
        let f = &builtin(label).unwrap().structure;
        let mut b = BTreeMap::new();
        b.insert("a".to_string(), Scalar::from_int(v));
        let Ok(m) = f.substitute(&b) else { println!("{label}[a={v}]: pole"); continue };
        if !m.restrictions_hold() { println!("{label}[a={v}]: restricted"); continue }
        let (l, _r, two, _) = annihilators(&m);
        let (sq, _) = square(&m);
        let triv = match exists_subspace(&m, 3, &SubspaceProperty::Trivial, &budget) {
            SubspaceAnswer::Yes(_) => "yes", SubspaceAnswer::No => "no", SubspaceAnswer::Inconclusive => "inc" };
        let anti = match exists_subspace(&m, 3, &SubspaceProperty::AnticommutativeImageBound(1), &budget) {
            SubspaceAnswer::Yes(_) => "yes", SubspaceAnswer::No => "no", SubspaceAnswer::Inconclusive => "inc" };
        println!("{label}[a={v}]: annL {} ann {} sq {} triv3 {triv} anti31 {anti} der {}",
            l.dim(), two.dim(), sq.dim(), derivation_dim(&m).generic_dim);
    }
}
