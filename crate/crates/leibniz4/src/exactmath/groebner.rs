//! Buchberger's algorithm with the product and chain criteria, degree-first
//! pair selection, and a reduction budget.
//!
//! A complete run returns the reduced Groebner basis of the input ideal.
//! Exhausting the budget returns a partial basis with `BudgetExceeded`
//! status; such a basis is still sound for membership-positive answers
//! (a normal form of zero, or a constant in the basis, certifies itself),
//! but negative answers are downgraded to inconclusive.

use super::gaussian::GaussianRational;
use super::poly::{MonomialOrder, MultiPoly};
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

/// An ideal presented by generators under one monomial order.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    pub gens: Vec<MultiPoly>,
    pub order: MonomialOrder,
}

#[derive(Clone, Copy, Debug)]
pub struct GroebnerBudget {
    /// Maximum number of single reduction steps across the whole run.
    pub max_reductions: usize,
    /// Maximum total degree allowed for a new basis element.
    pub max_degree: u32,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_reductions: 200_000,
            max_degree: 24,
        }
    }
}

impl GroebnerBudget {
    pub fn scaled(&self, factor: usize) -> GroebnerBudget {
        GroebnerBudget {
            max_reductions: self.max_reductions.saturating_mul(factor),
            max_degree: self.max_degree,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroebnerStatus {
    Complete,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct GroebnerResult {
    /// Basis elements over the union variable set, monic, sorted.
    pub basis: Vec<MultiPoly>,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub status: GroebnerStatus,
    pub reductions: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryAnswer {
    pub value: bool,
    pub definitive: bool,
}

impl PolyIdeal {
    pub fn new(gens: Vec<MultiPoly>, order: MonomialOrder) -> Self {
        PolyIdeal { gens, order }
    }

    /// Union of all generator variables, sorted.
    pub fn vars(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for g in &self.gens {
            for v in g.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        vars.sort();
        vars
    }
}

type Mono = Vec<u32>;

/// Internal polynomial over a fixed variable context: terms descending.
#[derive(Clone)]
struct GPoly {
    terms: Vec<(Mono, GaussianRational)>,
}

impl GPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> (&Mono, &GaussianRational) {
        let (e, c) = &self.terms[0];
        (e, c)
    }

    fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn monic(&self) -> GPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.terms[0].1.inv();
        GPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * &inv))
                .collect(),
        }
    }

    /// self − c · x^shift · g, by sorted merge.
    fn sub_mul(&self, c: &GaussianRational, shift: &[u32], g: &GPoly, order: MonomialOrder) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < g.terms.len() {
            if j >= g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let shifted: Mono = g.terms[j]
                .0
                .iter()
                .zip(shift)
                .map(|(a, b)| a + b)
                .collect();
            if i >= self.terms.len() {
                let coeff = -&(c * &g.terms[j].1);
                if !coeff.is_zero() {
                    out.push((shifted, coeff));
                }
                j += 1;
                continue;
            }
            match order.cmp(&self.terms[i].0, &shifted) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let coeff = -&(c * &g.terms[j].1);
                    if !coeff.is_zero() {
                        out.push((shifted, coeff));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let coeff = &self.terms[i].1 - &(c * &g.terms[j].1);
                    if !coeff.is_zero() {
                        out.push((self.terms[i].0.clone(), coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GPoly { terms: out }
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_sub(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_deg(a: &Mono) -> u32 {
    a.iter().sum()
}

/// Full normal form of `f` against `basis`; returns the remainder and the
/// number of reduction steps spent.
fn normal_form(f: &GPoly, basis: &[GPoly], order: MonomialOrder) -> (GPoly, usize) {
    let mut work = f.clone();
    let mut out: Vec<(Mono, GaussianRational)> = Vec::new();
    let mut steps = 0usize;
    'outer: while !work.is_zero() {
        let (e, c) = {
            let (e, c) = work.leading();
            (e.clone(), c.clone())
        };
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (ge, gc) = g.leading();
            if divides(ge, &e) {
                let factor = &c / gc;
                let shift = mono_sub(&e, ge);
                work = work.sub_mul(&factor, &shift, g, order);
                steps += 1;
                continue 'outer;
            }
        }
        out.push((e.clone(), c.clone()));
        work.terms.remove(0);
    }
    (GPoly { terms: out }, steps)
}

fn to_gpoly(p: &MultiPoly, vars: &[String], order: MonomialOrder) -> GPoly {
    let embedded = p.embed(vars).with_order(order);
    GPoly {
        terms: embedded
            .terms()
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect(),
    }
}

fn from_gpoly(p: &GPoly, vars: &[String], order: MonomialOrder) -> MultiPoly {
    MultiPoly::from_terms(vars.to_vec(), order, p.terms.clone())
}

/// Runs Buchberger's algorithm on the ideal under its declared order.
pub fn groebner(ideal: &PolyIdeal, budget: &GroebnerBudget) -> GroebnerResult {
    let vars = ideal.vars();
    let order = ideal.order;
    let mut basis: Vec<GPoly> = ideal
        .gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_gpoly(g, &vars, order).monic())
        .collect();
    let mut reductions = 0usize;
    let mut status = GroebnerStatus::Complete;

    // Pair queue keyed by (lcm degree, i, j) for deterministic selection.
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pairs = |queue: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
                          pending: &mut BTreeSet<(usize, usize)>,
                          basis: &[GPoly],
                          j: usize| {
        for i in 0..j {
            let l = lcm(&basis[i].leading().0, &basis[j].leading().0);
            queue.push(Reverse((mono_deg(&l), i, j)));
            pending.insert((i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &mut pending, &basis, j);
    }

    'main: while let Some(Reverse((_, i, j))) = queue.pop() {
        if !pending.remove(&(i, j)) {
            continue;
        }
        let (ei, _) = basis[i].leading();
        let (ej, _) = basis[j].leading();
        let l = lcm(ei, ej);
        // Product criterion: coprime leading monomials reduce to zero.
        if mono_deg(&l) == mono_deg(ei) + mono_deg(ej) {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose pairs with
        // i and j are both already handled makes this pair redundant.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].leading().0, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        // S-polynomial.
        let (ei, ci) = {
            let (e, c) = basis[i].leading();
            (e.clone(), c.clone())
        };
        let (ej, cj) = {
            let (e, c) = basis[j].leading();
            (e.clone(), c.clone())
        };
        let s = {
            let zero = GPoly { terms: vec![] };
            let a = zero.sub_mul(
                &-&(&GaussianRational::one() / &ci),
                &mono_sub(&l, &ei),
                &basis[i],
                order,
            );
            a.sub_mul(&(&GaussianRational::one() / &cj), &mono_sub(&l, &ej), &basis[j], order)
        };
        let (nf, steps) = normal_form(&s, &basis, order);
        reductions += steps;
        if reductions > budget.max_reductions {
            status = GroebnerStatus::BudgetExceeded;
            if !nf.is_zero() {
                basis.push(nf.monic());
            }
            break 'main;
        }
        if nf.is_zero() {
            continue;
        }
        if nf.total_degree() > budget.max_degree {
            status = GroebnerStatus::BudgetExceeded;
            basis.push(nf.monic());
            break 'main;
        }
        basis.push(nf.monic());
        let j_new = basis.len() - 1;
        push_pairs(&mut queue, &mut pending, &basis, j_new);
        // A constant in the basis settles the whole ideal.
        if basis[j_new].terms[0].0.iter().all(|&e| e == 0) {
            break 'main;
        }
    }

    let mut reduced = interreduce(basis, order);
    reduced.sort_by(|a, b| order.cmp(b.leading().0, a.leading().0));
    let out: Vec<MultiPoly> = reduced
        .iter()
        .map(|g| from_gpoly(g, &vars, order))
        .collect();
    GroebnerResult {
        basis: out,
        vars,
        order,
        status,
        reductions,
    }
}

/// Interreduction: every element is fully reduced against the others and
/// monic; zero elements are dropped.
fn interreduce(mut basis: Vec<GPoly>, order: MonomialOrder) -> Vec<GPoly> {
    loop {
        let mut changed = false;
        // Reduce in place so duplicates cancel once, not each other.
        for idx in 0..basis.len() {
            let others: Vec<GPoly> = basis
                .iter()
                .enumerate()
                .filter(|(k, g)| *k != idx && !g.is_zero())
                .map(|(_, g)| g.clone())
                .collect();
            let (nf, _) = normal_form(&basis[idx], &others, order);
            let nf = nf.monic();
            if nf.terms != basis[idx].terms {
                changed = true;
                basis[idx] = nf;
            }
        }
        basis.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    basis
}

/// Membership test against a (possibly partial) Groebner run.
pub fn ideal_contains(result: &GroebnerResult, f: &MultiPoly) -> QueryAnswer {
    let mut vars = result.vars.clone();
    for v in f.vars() {
        if !vars.contains(v) {
            vars.push(v.clone());
        }
    }
    vars.sort();
    let basis: Vec<GPoly> = result
        .basis
        .iter()
        .map(|g| to_gpoly(g, &vars, result.order))
        .collect();
    let fg = to_gpoly(f, &vars, result.order);
    let (nf, _) = normal_form(&fg, &basis, result.order);
    if nf.is_zero() {
        QueryAnswer {
            value: true,
            definitive: true,
        }
    } else {
        QueryAnswer {
            value: false,
            definitive: result.status == GroebnerStatus::Complete,
        }
    }
}

/// Unit-ideal test: does the ideal contain 1?
pub fn ideal_is_unit(result: &GroebnerResult) -> QueryAnswer {
    let has_constant = result
        .basis
        .iter()
        .any(|g| !g.is_zero() && g.is_constant());
    if has_constant {
        QueryAnswer {
            value: true,
            definitive: true,
        }
    } else {
        QueryAnswer {
            value: false,
            definitive: result.status == GroebnerStatus::Complete,
        }
    }
}
