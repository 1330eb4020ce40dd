//! Multivariate polynomial gcd over Q(i) via primitive pseudo-remainder
//! sequences, recursing on the number of variables.
//!
//! The gcd is normalized to be monic under the polynomial's own monomial
//! order, so it is unique and usable for canonical fraction reduction.

use super::gaussian::GaussianRational;
use super::poly::MultiPoly;

/// Monic gcd of two polynomials; gcd(0, 0) = 0.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // Single-term operands: the gcd is a monomial, read off exponent-wise.
    if a.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b, a);
    }
    // Univariate pairs: field-coefficient Euclid with monic normalization,
    // which keeps the rational coefficients from exploding.
    if a.vars().len() == 1 && a.vars() == b.vars() {
        let (mut r0, mut r1) = (a.monic(), b.monic());
        while !r1.is_zero() {
            let r = r0.div_rem(&r1).1;
            r0 = r1;
            r1 = if r.is_zero() { r } else { r.monic() };
        }
        return r0.monic();
    }
    let (a, b) = (a.clone(), b.clone());
    // Main variable: pick the one of smallest positive degree in either
    // polynomial, which keeps the remainder sequence short.
    let y = {
        let mut best: Option<(u32, String)> = None;
        for v in a.vars().iter().chain(b.vars().iter()) {
            let d = a.degree_in(v).max(b.degree_in(v));
            if d > 0 && best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                best = Some((d, v.clone()));
            }
        }
        best.expect("nonconstant polynomial must have a variable").1
    };
    let da = a.degree_in(&y);
    let db = b.degree_in(&y);
    if da == 0 {
        // a is free of y, so any common divisor divides b's y-content.
        return gcd(&a, &content_in(&b, &y));
    }
    if db == 0 {
        return gcd(&content_in(&a, &y), &b);
    }
    let cont_a = content_in(&a, &y);
    let cont_b = content_in(&b, &y);
    let g_cont = gcd(&cont_a, &cont_b);
    let pp_a = a.div_exact(&cont_a).expect("content divides");
    let pp_b = b.div_exact(&cont_b).expect("content divides");
    // Subresultant remainder sequence: each pseudo-remainder is divided by
    // the predicted factor g*h^d, keeping coefficient growth polynomial.
    let (mut r0, mut r1) = if da >= db { (pp_a, pp_b) } else { (pp_b, pp_a) };
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        if r1.degree_in(&y) == 0 {
            // A y-free remainder shows the primitive parts are coprime.
            return g_cont.monic();
        }
        let delta = r0.degree_in(&y) - r1.degree_in(&y);
        let rem = prem(&r0, &r1, &y, delta);
        if rem.is_zero() {
            break;
        }
        let divisor = g.mul(&h.pow(delta));
        let rem = rem
            .div_exact(&divisor)
            .expect("subresultant divisor divides");
        r0 = r1;
        r1 = rem;
        g = r0.coeffs_in(&y).last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant scale divides"),
        };
    }
    let pp_g = {
        let c = content_in(&r1, &y);
        r1.div_exact(&c).expect("content divides")
    };
    g_cont.mul(&pp_g).monic()
}

/// Content of `p` viewed as univariate in `y`: the gcd of its coefficients.
pub fn content_in(p: &MultiPoly, y: &str) -> MultiPoly {
    let coeffs = p.coeffs_in(y);
    let mut g = MultiPoly::zero();
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact pseudo-remainder `lc_y(b)^(delta+1) * a mod b` in the variable `y`,
/// where `delta = deg_y(a) - deg_y(b) >= 0`. Each elimination step scales by
/// one factor of the leading coefficient; the tail factors are applied at
/// the end so the classical scaling is hit exactly.
fn prem(a: &MultiPoly, b: &MultiPoly, y: &str, delta: u32) -> MultiPoly {
    let db = b.degree_in(y);
    debug_assert!(db > 0);
    let b_coeffs = b.coeffs_in(y);
    let lb = b_coeffs.last().unwrap().clone();
    let yv = MultiPoly::var(y);
    let mut r = a.clone();
    let mut steps = 0u32;
    loop {
        if r.is_zero() {
            break;
        }
        let dr = r.degree_in(y);
        if dr < db {
            break;
        }
        let la = r.coeffs_in(y).last().unwrap().clone();
        let shift = yv.pow(dr - db);
        r = r.mul(&lb).sub(&b.mul(&la).mul(&shift));
        steps += 1;
    }
    if steps < delta + 1 {
        r = r.mul(&lb.pow(delta + 1 - steps));
    }
    r
}

/// Gcd of a single-term polynomial `m` with an arbitrary polynomial `p`.
fn monomial_gcd(m: &MultiPoly, p: &MultiPoly) -> MultiPoly {
    debug_assert_eq!(m.num_terms(), 1);
    let mut out = MultiPoly::one();
    for v in m.vars() {
        let d = m.degree_in(v).min(p.min_degree_in(v));
        if d > 0 {
            out = out.mul(&MultiPoly::var(v).pow(d));
        }
    }
    out
}

/// Formal partial derivative with respect to `name`.
pub fn derivative(p: &MultiPoly, name: &str) -> MultiPoly {
    let coeffs = p.coeffs_in(name);
    let mut out = Vec::new();
    for (d, c) in coeffs.iter().enumerate().skip(1) {
        out.push(c.mul_coeff(&GaussianRational::from_int(d as i64)));
    }
    MultiPoly::from_coeffs_in(name, &out)
}

/// Square-free part: p / gcd(p, ∂p/∂y) over all variables in turn.
pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    let mut q = p.clone();
    for v in p.vars().to_vec() {
        if q.degree_in(&v) == 0 {
            continue;
        }
        let d = derivative(&q, &v);
        let g = gcd(&q, &d);
        if !g.is_constant() {
            q = q.div_exact(&g).expect("gcd divides");
        }
    }
    q.monic()
}

/// Splits a nonzero polynomial into pairwise variable-separated factors:
/// monomial factors (single variables) and, recursively, per-variable
/// contents. This is not a full factorization, but it cleanly separates
/// products like a·b or a²·(b−1) into their variable-disjoint parts.
pub fn split_constraint(p: &MultiPoly) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    if p.is_zero() || p.is_constant() {
        return out;
    }
    let mut rest = p.clone();
    // Strip monomial factors variable by variable.
    for v in p.vars().to_vec() {
        let coeffs = rest.coeffs_in(&v);
        let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            push_unique(&mut out, MultiPoly::var(&v));
            let shifted: Vec<MultiPoly> = coeffs[low..].to_vec();
            rest = MultiPoly::from_coeffs_in(&v, &shifted);
        }
    }
    if rest.is_constant() {
        return out;
    }
    // Pull out per-variable contents (factors free of that variable).
    for v in rest.vars().to_vec() {
        if rest.degree_in(&v) == 0 {
            continue;
        }
        let c = content_in(&rest, &v);
        if !c.is_constant() {
            for f in split_constraint(&c) {
                push_unique(&mut out, f);
            }
            rest = rest.div_exact(&c).expect("content divides");
        }
    }
    if !rest.is_constant() {
        push_unique(&mut out, rest.monic());
    }
    out
}

fn push_unique(out: &mut Vec<MultiPoly>, f: MultiPoly) {
    if !out.contains(&f) {
        out.push(f);
    }
}
