//! Root extraction for constraint polynomials over Q(i).
//!
//! Constraints describing exceptional parameter values are univariate or
//! split into variable-disjoint factors first. Roots are reported together
//! with a completeness flag: `all_roots_found = false` means the polynomial
//! has further roots outside Q(i) (or beyond this solver), so callers must
//! treat the analysis as a lower bound on the exceptional set.

use super::gaussian::GaussianRational;
use super::gcd::squarefree_part;
use super::poly::MultiPoly;
use super::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct RootAnalysis {
    pub var: String,
    pub roots: Vec<GaussianRational>,
    pub all_roots_found: bool,
}

/// Candidate values tried for factoring higher-degree constraints.
fn small_candidates() -> Vec<GaussianRational> {
    let mut v: Vec<GaussianRational> = (-6..=6).map(GaussianRational::from_int).collect();
    for (p, q) in [(1, 2), (-1, 2), (3, 2), (-3, 2)] {
        v.push(GaussianRational::from_ratio(p, q));
    }
    let i = GaussianRational::i();
    for re in [-1i64, 0, 1] {
        for im in [-2i64, -1, 1, 2] {
            let c = &GaussianRational::from_int(re) + &(&GaussianRational::from_int(im) * &i);
            if !v.contains(&c) {
                v.push(c);
            }
        }
    }
    v
}

/// Q(i)-roots of a univariate polynomial. `None` for constants or
/// polynomials in more than one variable.
pub fn univariate_roots(p: &MultiPoly) -> Option<RootAnalysis> {
    if p.vars().len() != 1 || p.is_zero() {
        return None;
    }
    let var = p.vars()[0].clone();
    let mut roots: Vec<GaussianRational> = Vec::new();
    let mut q = squarefree_part(p);
    // Strip the monomial factor: a root at 0.
    let coeffs = q.coeffs_in(&var);
    if coeffs[0].is_zero() {
        roots.push(GaussianRational::zero());
        let low = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        q = MultiPoly::from_coeffs_in(&var, &coeffs[low..]);
    }
    // Peel off small linear factors.
    let candidates = small_candidates();
    let mut progress = true;
    while q.degree_in(&var) > 2 && progress {
        progress = false;
        for c in &candidates {
            if roots.contains(c) {
                continue;
            }
            let mut point = BTreeMap::new();
            point.insert(var.clone(), c.clone());
            if q.eval(&point).is_zero() {
                roots.push(c.clone());
                let lin = MultiPoly::var(&var).sub(&MultiPoly::constant(c.clone()));
                q = q.div_exact(&lin).expect("root gives a linear factor");
                progress = true;
                break;
            }
        }
    }
    let deg = q.degree_in(&var);
    let all_roots_found = match deg {
        0 => true,
        1 => {
            let cs = q.coeffs_in(&var);
            let a = cs[1].as_constant().unwrap();
            let b = cs[0].as_constant().unwrap();
            push_root(&mut roots, &(-&b) / &a);
            true
        }
        2 => {
            let cs = q.coeffs_in(&var);
            let a = cs[2].as_constant().unwrap();
            let b = cs[1].as_constant().unwrap();
            let c = cs[0].as_constant().unwrap();
            let four_ac = &(&GaussianRational::from_int(4) * &a) * &c;
            let disc = &(&b * &b) - &four_ac;
            match disc.sqrt() {
                Some(s) => {
                    let two_a = &GaussianRational::from_int(2) * &a;
                    push_root(&mut roots, &(&(-&b) + &s) / &two_a);
                    push_root(&mut roots, &(&(-&b) - &s) / &two_a);
                    true
                }
                // The two conjugate roots lie outside Q(i).
                None => false,
            }
        }
        _ => false,
    };
    Some(RootAnalysis {
        var,
        roots,
        all_roots_found,
    })
}

fn push_root(roots: &mut Vec<GaussianRational>, r: GaussianRational) {
    if !roots.contains(&r) {
        roots.push(r);
    }
}

/// If `p` has degree 1 in some variable `v`, solves `p = 0` for `v` as a
/// rational function of the remaining variables, returning the binding and
/// the leading-coefficient side condition (the solution is valid where the
/// coefficient of `v` does not vanish).
pub fn solve_linear_in_one(p: &MultiPoly) -> Option<(String, Scalar, MultiPoly)> {
    for v in p.vars().to_vec() {
        if p.degree_in(&v) == 1 {
            let cs = p.coeffs_in(&v);
            let a = cs[1].clone();
            let b = cs[0].clone();
            let sol = Scalar::from_poly(b.neg())
                .div(&Scalar::from_poly(a.clone()))
                .expect("nonzero leading coefficient polynomial");
            return Some((v, sol, a));
        }
    }
    None
}
