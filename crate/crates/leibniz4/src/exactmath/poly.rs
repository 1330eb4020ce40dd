//! Exact multivariate polynomials over the Gaussian rationals.
//!
//! Canonical form invariant: the variable list is strictly sorted by name, no
//! term has a zero coefficient, terms are strictly sorted in descending
//! monomial order, and the zero polynomial has an empty term list. Every
//! constructor and operation restores this form, so equality is syntactic.

use super::gaussian::GaussianRational;
use num::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Monomial order on exponent tuples of equal length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: higher total degree first; on ties the
    /// last position where the exponents differ decides, smaller entry first.
    #[default]
    GrevLex,
    /// Pure lexicographic with the first variable most significant.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {
                        for i in (0..a.len()).rev() {
                            match a[i].cmp(&b[i]) {
                                Ordering::Equal => {}
                                Ordering::Less => return Ordering::Greater,
                                Ordering::Greater => return Ordering::Less,
                            }
                        }
                        Ordering::Equal
                    }
                    other => other,
                }
            }
            MonomialOrder::Lex => {
                for i in 0..a.len() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A multivariate polynomial with `GaussianRational` coefficients.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    order: MonomialOrder,
    /// Terms as (exponent tuple, coefficient), descending under `order`.
    terms: Vec<(Vec<u32>, GaussianRational)>,
}

impl MultiPoly {
    // ---- Constructors ----

    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            order: MonomialOrder::default(),
            terms: Vec::new(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.push((Vec::new(), c));
        }
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(GaussianRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(GaussianRational::from_int(n))
    }

    /// The single variable `name`.
    pub fn var(name: &str) -> Self {
        MultiPoly {
            vars: vec![name.to_string()],
            order: MonomialOrder::default(),
            terms: vec![(vec![1], GaussianRational::one())],
        }
    }

    /// Builds from raw parts, sorting variables and terms and dropping zeros.
    pub fn from_terms(
        vars: Vec<String>,
        order: MonomialOrder,
        terms: Vec<(Vec<u32>, GaussianRational)>,
    ) -> Self {
        let mut idx: Vec<usize> = (0..vars.len()).collect();
        idx.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let sorted_vars: Vec<String> = idx.iter().map(|&i| vars[i].clone()).collect();
        debug_assert!(sorted_vars.windows(2).all(|w| w[0] < w[1]), "duplicate variable");
        let mut merged: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        for (expo, c) in terms {
            debug_assert_eq!(expo.len(), vars.len());
            let remapped: Vec<u32> = idx.iter().map(|&i| expo[i]).collect();
            let entry = merged.entry(remapped).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &c;
        }
        let mut out: Vec<(Vec<u32>, GaussianRational)> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|x, y| order.cmp(&y.0, &x.0));
        let mut p = MultiPoly {
            vars: sorted_vars,
            order,
            terms: out,
        };
        p.trim_vars();
        p
    }

    // ---- Accessors ----

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Vec<u32>, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0) && self.terms[0].1.is_one()
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            Some(GaussianRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&[u32], &GaussianRational)> {
        self.terms.first().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Degree in one variable; 0 if the variable does not occur.
    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            None => 0,
            Some(k) => self.terms.iter().map(|(e, _)| e[k]).max().unwrap_or(0),
        }
    }

    /// Smallest exponent of `name` across all terms; 0 if absent or zero.
    pub fn min_degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            None => 0,
            Some(k) => self.terms.iter().map(|(e, _)| e[k]).min().unwrap_or(0),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    // ---- Canonical-form maintenance ----

    /// Drops variables that no longer occur in any term.
    fn trim_vars(&mut self) {
        let n = self.vars.len();
        if n == 0 {
            return;
        }
        let mut used = vec![false; n];
        for (e, _) in &self.terms {
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[k] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&k| used[k]).collect();
        self.vars = keep.iter().map(|&k| self.vars[k].clone()).collect();
        for (e, _) in &mut self.terms {
            *e = keep.iter().map(|&k| e[k]).collect();
        }
        // Descending term order is preserved by deleting all-zero columns
        // under both supported orders only if re-sorted; re-sort to be safe.
        let order = self.order;
        self.terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
    }

    /// Returns copies of `a` and `b` over the union of their variables.
    pub fn align(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut union: Vec<String> = a.vars.clone();
        for v in &b.vars {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        union.sort();
        (a.embed(&union), b.embed(&union))
    }

    /// Re-expresses the polynomial over a superset of its variables
    /// (sorted); panics if a current variable is missing from `target`.
    /// The result keeps every `target` column, including unused ones, so
    /// several polynomials embedded over the same target share exponent
    /// layout; arithmetic on the results restores the trimmed form.
    pub fn embed(&self, target: &[String]) -> MultiPoly {
        if self.vars.as_slice() == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .expect("embed target must contain all variables")
            })
            .collect();
        let mut terms: Vec<(Vec<u32>, GaussianRational)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; target.len()];
                for (k, &x) in e.iter().enumerate() {
                    ne[map[k]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        let order = self.order;
        terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
        MultiPoly {
            vars: target.to_vec(),
            order,
            terms,
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> MultiPoly {
        let mut p = self.clone();
        p.order = order;
        p.terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
        p
    }

    // ---- Arithmetic ----

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::align(self, rhs);
        let mut terms = a.terms;
        terms.extend(b.terms);
        MultiPoly::from_terms(a.vars, a.order, terms)
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (a, b) = MultiPoly::align(self, rhs);
        let mut acc: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                let entry = acc.entry(e).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &c;
            }
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly::from_terms(a.vars, a.order, terms)
    }

    pub fn mul_coeff(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading-coefficient, making the polynomial monic.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => MultiPoly::zero(),
            Some(lc) => self.mul_coeff(&lc.inv()),
        }
    }

    /// Single-divisor division: returns (quotient, remainder) with
    /// `self = q * d + r` and no term of `r` divisible by the leading
    /// monomial of `d`. Panics if `d` is zero.
    pub fn div_rem(&self, d: &MultiPoly) -> (MultiPoly, MultiPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (mut r, d) = MultiPoly::align(self, d);
        let vars = r.vars.clone();
        let order = r.order;
        let (de, dc) = {
            let (e, c) = d.leading_term().unwrap();
            (e.to_vec(), c.clone())
        };
        let mut q_terms: Vec<(Vec<u32>, GaussianRational)> = Vec::new();
        loop {
            let mut hit: Option<(Vec<u32>, GaussianRational)> = None;
            for (e, c) in &r.terms {
                if e.iter().zip(&de).all(|(x, y)| x >= y) {
                    let me: Vec<u32> = e.iter().zip(&de).map(|(x, y)| x - y).collect();
                    hit = Some((me, c / &dc));
                    break;
                }
            }
            match hit {
                None => break,
                Some((me, mc)) => {
                    let mono = MultiPoly {
                        vars: vars.clone(),
                        order,
                        terms: vec![(me.clone(), mc.clone())],
                    };
                    // Arithmetic trims unused columns; restore the shared
                    // layout so exponent comparisons stay aligned.
                    r = r.sub(&mono.mul(&d)).embed(&vars);
                    q_terms.push((me, mc));
                }
            }
        }
        let q = MultiPoly::from_terms(vars, order, q_terms);
        let r = MultiPoly::from_terms(r.vars, r.order, r.terms);
        (q, r)
    }

    /// Exact division: `Some(q)` iff `self = q * d`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    // ---- Evaluation and substitution ----

    /// Full evaluation at a Gaussian-rational point. Variables missing from
    /// `point` are evaluated at 0.
    pub fn eval(&self, point: &BTreeMap<String, GaussianRational>) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    let v = point
                        .get(&self.vars[k])
                        .cloned()
                        .unwrap_or_else(GaussianRational::zero);
                    for _ in 0..x {
                        term = &term * &v;
                    }
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes polynomials for variables; unbound variables stay symbolic.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        if self.vars.iter().all(|v| !bindings.contains_key(v)) {
            return self.clone();
        }
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let base = match bindings.get(&self.vars[k]) {
                    Some(p) => p.clone(),
                    None => MultiPoly::var(&self.vars[k]),
                };
                term = term.mul(&base.pow(x));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Views the polynomial as univariate in `name`, returning coefficients
    /// indexed by degree (polynomials in the remaining variables).
    pub fn coeffs_in(&self, name: &str) -> Vec<MultiPoly> {
        let k = match self.vars.iter().position(|v| v == name) {
            None => return vec![self.clone()],
            Some(k) => k,
        };
        let deg = self.terms.iter().map(|(e, _)| e[k]).max().unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Vec<u32>, GaussianRational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let d = e[k] as usize;
            let mut ne = e.clone();
            ne[k] = 0;
            buckets[d].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| MultiPoly::from_terms(self.vars.clone(), self.order, b))
            .collect()
    }

    /// Reassembles Σ coeffs[d] · name^d.
    pub fn from_coeffs_in(name: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::var(name);
        let mut acc = MultiPoly::zero();
        for (d, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(d as u32)));
        }
        acc
    }
}

/// Equality is mathematical: the declared monomial order does not take
/// part, so the same polynomial under different orders compares equal.
impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        sorted_terms(&self.terms) == sorted_terms(&other.terms)
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
        for t in sorted_terms(&self.terms) {
            t.hash(state);
        }
    }
}

fn sorted_terms(terms: &[(Vec<u32>, GaussianRational)]) -> Vec<&(Vec<u32>, GaussianRational)> {
    let mut out: Vec<_> = terms.iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

impl fmt::Display for MultiPoly {
    /// Renders in the scalar literal grammar, e.g. `2*a^2*t - 1/2*i*b + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| {
                    if x == 1 {
                        self.vars[k].clone()
                    } else {
                        format!("{}^{}", self.vars[k], x)
                    }
                })
                .collect();
            let coeff_txt = if c.is_real() || c.re.is_zero() {
                // purely real or purely imaginary: sign can be extracted
                let negative = if c.is_real() {
                    num::traits::Signed::is_negative(&c.re)
                } else {
                    num::traits::Signed::is_negative(&c.im)
                };
                let abs = if negative { -c } else { c.clone() };
                let body = if mono.is_empty() {
                    abs.to_string()
                } else if abs.is_one() {
                    String::new()
                } else {
                    format!("{}*", abs)
                };
                (negative, body)
            } else if mono.is_empty() {
                (false, format!("({})", c))
            } else {
                (false, format!("({})*", c))
            };
            let (negative, body) = coeff_txt;
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                if body.is_empty() {
                    write!(f, "1")?;
                } else {
                    write!(f, "{}", body)?;
                }
            } else {
                write!(f, "{}{}", body, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
