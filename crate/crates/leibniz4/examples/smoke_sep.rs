use leibniz4::catalog::builtin;
use leibniz4::separation::*;
use leibniz4::exactmath::GroebnerBudget;

fn main() {
    for label in ["L_2", "L_4", "L_8", "L_9", "L_10", "L_15", "L_18", "L_21", "L_22", "L_23", "L_44", "L_5", "R_1", "R_2", "sl_2"] {
        let a = &builtin(label).unwrap().structure;
        match six_tuple(a) {
            Some(t) => println!("{label}: {t}"),
            None => println!("{label}: not standard"),
        }
    }
    let l4 = six_tuple(&builtin("L_4").unwrap().structure).unwrap();
    let forms = vanishing_forms(std::slice::from_ref(&l4));
    println!("L_4 forms ({}):", forms.len());
    for f in &forms { println!("  {f}"); }
    let l2 = six_tuple(&builtin("L_2").unwrap().structure).unwrap();
    println!("obstruction L_4 -> L_2: {:?}", six_tuple_obstruction(&forms, &l2));
    println!("obstruction L_4 -> L_4: {:?}", six_tuple_obstruction(&forms, &l4));

    let l23 = six_tuple(&builtin("L_23").unwrap().structure).unwrap();
    let f23 = vanishing_forms(std::slice::from_ref(&l23));
    println!("L_23 forms ({}):", f23.len());
    for f in &f23 { println!("  {f}"); }

    let l44 = six_tuple(&builtin("L_44").unwrap().structure).unwrap();
    let f44 = vanishing_forms(std::slice::from_ref(&l44));
    println!("L_44 forms: {}", f44.len());
}
