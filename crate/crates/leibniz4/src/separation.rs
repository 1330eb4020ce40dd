//! Non-degeneration arguments: invariant comparisons, the standard-structure
//! six-tuple obstruction, Borel-stable closed sets, and the annihilator
//! criterion for Lie targets.
//!
//! A degeneration moves every semicontinuous invariant in a known direction:
//! annihilators and derivation algebras can only grow in the limit, squares
//! and symmetrised squares can only shrink, and closed properties (having a
//! trivial subalgebra of a given dimension, membership in a stable closed
//! set) pass from a structure to everything in its orbit closure.  Each rule
//! here turns one such fact into a machine-checked refutation `A ↛ B`,
//! quantified over family parameters: generic values are handled
//! symbolically and the finitely many exceptional values are re-checked by
//! substitution.  A `verified` outcome is a proof of non-degeneration; a
//! `failed` outcome only means the particular rule does not settle the pair.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{
    annihilators, derivation_dim, is_nilpotent, is_solvable, plus_square, square,
    AlgebraStructure, Subspace,
};
use crate::exactmath::gcd::{derivative, split_constraint, squarefree_part};
use crate::exactmath::groebner::{groebner, ideal_contains, ideal_is_unit};
use crate::exactmath::roots::{solve_linear_in_one, univariate_roots};
use crate::exactmath::{
    GaussianRational, GroebnerBudget, GroebnerStatus, MultiPoly, PolyIdeal, Scalar,
};
use crate::exactmath::MonomialOrder;
use crate::subspaces::{exists_subspace, nilradical_dim, SubspaceAnswer, SubspaceProperty};

// ---- Standard structures ----

/// True when the structure is in standard form: every product lands in the
/// radical `⟨e_2,…,e_n⟩`, products of radical elements fall strictly below
/// both factors, multiplication by `e_1` is lower triangular on the radical,
/// the radical is a nilpotent ideal, and the whole structure is solvable but
/// not nilpotent.
pub fn check_standard(a: &AlgebraStructure) -> bool {
    let n = a.dim;
    if n < 2 {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if !a.c(i, j, 0).is_zero() {
                return false;
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            for k in 0..=i.max(j) {
                if !a.c(i, j, k).is_zero() {
                    return false;
                }
            }
        }
    }
    for i in 1..n {
        for j in 1..i {
            if !a.c(0, i, j).is_zero() || !a.c(i, 0, j).is_zero() {
                return false;
            }
        }
    }
    let radical = Subspace::coordinates(n, &(1..n).collect::<Vec<_>>());
    if !crate::subspaces::verify_witness(a, &radical, &SubspaceProperty::NilpotentIdeal) {
        return false;
    }
    let (solvable, _) = is_solvable(a);
    let (nilpotent, _) = is_nilpotent(a);
    solvable && !nilpotent
}

// ---- Six-tuples ----

/// The six distinguished constants of a standard structure, grouped as three
/// pairs `p_k = (c_{k+1,1}^{k+1}, c_{1,k+1}^{k+1})`: the diagonal entries of
/// right and left multiplication by `e_1` on the radical.
#[derive(Clone, Debug, PartialEq)]
pub struct SixTuple {
    pub pairs: [(Scalar, Scalar); 3],
}

impl SixTuple {
    /// The components in grouped order: the three right-multiplication
    /// diagonals first, then the three left ones.  This is the order used
    /// for the `x_1,…,x_6` coordinates of vanishing forms.
    pub fn grouped(&self) -> [Scalar; 6] {
        [
            self.pairs[0].0.clone(),
            self.pairs[1].0.clone(),
            self.pairs[2].0.clone(),
            self.pairs[0].1.clone(),
            self.pairs[1].1.clone(),
            self.pairs[2].1.clone(),
        ]
    }

    /// Multiplies every component by `c`.
    pub fn scale(&self, c: &Scalar) -> SixTuple {
        SixTuple {
            pairs: [
                (self.pairs[0].0.mul(c), self.pairs[0].1.mul(c)),
                (self.pairs[1].0.mul(c), self.pairs[1].1.mul(c)),
                (self.pairs[2].0.mul(c), self.pairs[2].1.mul(c)),
            ],
        }
    }

    /// Reorders the pairs by `sigma`, which maps new position to old.
    pub fn permute(&self, sigma: &[usize; 3]) -> SixTuple {
        SixTuple {
            pairs: [
                self.pairs[sigma[0]].clone(),
                self.pairs[sigma[1]].clone(),
                self.pairs[sigma[2]].clone(),
            ],
        }
    }

    /// All parameters appearing in the components.
    pub fn params(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.pairs {
            out.extend(a.params());
            out.extend(b.params());
        }
        out.into_iter().collect()
    }

    /// Substitutes parameter values into every component.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Scalar>,
    ) -> Result<SixTuple, crate::exactmath::ExactError> {
        let s = |x: &Scalar| x.substitute(bindings);
        Ok(SixTuple {
            pairs: [
                (s(&self.pairs[0].0)?, s(&self.pairs[0].1)?),
                (s(&self.pairs[1].0)?, s(&self.pairs[1].1)?),
                (s(&self.pairs[2].0)?, s(&self.pairs[2].1)?),
            ],
        })
    }
}

impl fmt::Display for SixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.grouped();
        write!(
            f,
            "({}, {}, {}, {}, {}, {})",
            g[0], g[1], g[2], g[3], g[4], g[5]
        )
    }
}

/// Extracts the six-tuple of a standard structure; `None` when the structure
/// is not in standard form.
pub fn six_tuple(a: &AlgebraStructure) -> Option<SixTuple> {
    if a.dim != 4 || !check_standard(a) {
        return None;
    }
    let pair = |k: usize| (a.c(k, 0, k).clone(), a.c(0, k, k).clone());
    Some(SixTuple {
        pairs: [pair(1), pair(2), pair(3)],
    })
}

// ---- Vanishing forms ----

/// An affine-linear form `Σ coeffs[i]·x_{i+1} + constant` on six-tuples in
/// grouped coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm {
    pub coeffs: [GaussianRational; 6],
    pub constant: GaussianRational,
}

impl AffineForm {
    /// Evaluates the form on a tuple after scaling it by `c`.  Since the
    /// form is affine, the result is linear in `c`: this returns the pair
    /// (linear part, constant part) of `form(c·tuple)`.
    fn on_scaled(&self, tuple: &SixTuple) -> (Scalar, Scalar) {
        let x = tuple.grouped();
        let mut linear = Scalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if !self.coeffs[i].is_zero() {
                linear = linear.add(&xi.mul(&Scalar::from_gaussian(self.coeffs[i].clone())));
            }
        }
        (linear, Scalar::from_gaussian(self.constant.clone()))
    }

    /// Evaluates the form on a tuple directly.
    pub fn evaluate(&self, tuple: &SixTuple) -> Scalar {
        let (linear, constant) = self.on_scaled(tuple);
        linear.add(&constant)
    }

    /// The form as a coefficient row `(coeffs, constant)` of length 7.
    pub fn row(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self
            .coeffs
            .iter()
            .map(|c| Scalar::from_gaussian(c.clone()))
            .collect();
        out.push(Scalar::from_gaussian(self.constant.clone()));
        out
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut poly = MultiPoly::constant(self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let var = MultiPoly::var(&format!("x_{}", i + 1));
                poly = poly.add(&var.mul_coeff(c));
            }
        }
        write!(f, "{poly}")
    }
}

/// A basis of all affine-linear forms vanishing identically (in the family
/// parameters) on every six-tuple of the list.
///
/// Each component of each tuple is expanded over its parameter monomials;
/// every monomial contributes one linear condition on the seven form
/// coefficients, and the kernel of the resulting system is returned.
/// Components must be polynomial in the parameters up to a constant
/// denominator.
pub fn vanishing_forms(family: &[SixTuple]) -> Vec<AffineForm> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for tuple in family {
        // Conditions indexed by parameter monomial: map monomial key ->
        // row of 7 coefficients.
        let mut conditions: BTreeMap<String, Vec<GaussianRational>> = BTreeMap::new();
        let grouped = tuple.grouped();
        for (slot, component) in grouped.iter().enumerate() {
            let denom = component.denom();
            assert!(
                denom.is_constant(),
                "six-tuple component {component} is not polynomial in the parameters"
            );
            let scale = denom.as_constant().expect("constant denominator").inv();
            let numer = component.numer();
            let vars = numer.vars().to_vec();
            for (exponents, coefficient) in numer.terms() {
                let monomial: Vec<(String, u32)> = vars
                    .iter()
                    .zip(exponents)
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (v.clone(), e))
                    .collect();
                let key = format!("{monomial:?}");
                let row = conditions.entry(key).or_insert_with(|| {
                    let mut r = vec![GaussianRational::zero(); 7];
                    if monomial.is_empty() {
                        r[6] = GaussianRational::one();
                    }
                    r
                });
                row[slot] = &row[slot] + &(coefficient * &scale);
            }
        }
        for (_, row) in conditions {
            rows.push(row.into_iter().map(Scalar::from_gaussian).collect());
        }
    }
    if rows.is_empty() {
        rows.push(vec![Scalar::zero(); 7]);
    }
    let matrix = crate::exactmath::ScalarMatrix::from_rows(rows);
    let elimination = matrix.eliminate();
    elimination
        .kernel
        .into_iter()
        .map(|k| {
            let value = |s: &Scalar| {
                s.as_gaussian()
                    .expect("kernel of a rational system is rational")
            };
            AffineForm {
                coeffs: [
                    value(&k[0]),
                    value(&k[1]),
                    value(&k[2]),
                    value(&k[3]),
                    value(&k[4]),
                    value(&k[5]),
                ],
                constant: value(&k[6]),
            }
        })
        .collect()
}

// ---- Six-tuple obstruction ----

/// Outcome of the six-tuple obstruction test.
#[derive(Clone, Debug, PartialEq)]
pub enum Obstruction {
    /// No pair permutation admits a nonzero scale making every form vanish;
    /// `exceptional` lists target-parameter factors at which the generic
    /// analysis could change and a substituted re-check is required.
    Refuted { exceptional: Vec<MultiPoly> },
    /// A witness: permuting the pairs by `sigma` and scaling by `scale`
    /// satisfies every form.
    NotRefuted { sigma: [usize; 3], scale: Scalar },
}

const PAIR_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn collect_factors(sink: &mut Vec<MultiPoly>, p: &MultiPoly) {
    for f in split_constraint(p) {
        let f = squarefree_part(&f).monic();
        if !sink.contains(&f) {
            sink.push(f);
        }
    }
}

/// Tests whether a target tuple can lie in the scaled, pair-permuted closure
/// of the family cut out by `forms`.
///
/// For each of the six pair permutations the forms become affine-linear
/// constraints in the single unknown scale `c`; the permutation succeeds
/// when they admit a common solution `c ≠ 0`.  `Refuted` means every
/// permutation fails; for a symbolic target this is the generic verdict and
/// the listed exceptional factors must be re-checked by substitution.
pub fn six_tuple_obstruction(forms: &[AffineForm], target: &SixTuple) -> Obstruction {
    let mut exceptional: Vec<MultiPoly> = Vec::new();
    for sigma in &PAIR_PERMUTATIONS {
        let permuted = target.permute(sigma);
        let constraints: Vec<(Scalar, Scalar)> =
            forms.iter().map(|f| f.on_scaled(&permuted)).collect();
        // A constraint with zero linear part must have zero constant part.
        let mut impossible = false;
        for (linear, constant) in &constraints {
            if linear.is_zero() && !constant.is_zero() {
                collect_factors(&mut exceptional, constant.numer());
                impossible = true;
                break;
            }
        }
        if impossible {
            continue;
        }
        let Some((l0, b0)) = constraints.iter().find(|(l, _)| !l.is_zero()) else {
            // Every form is satisfied for every scale.
            return Obstruction::NotRefuted {
                sigma: *sigma,
                scale: Scalar::one(),
            };
        };
        let candidate = b0.neg().div(l0).expect("nonzero linear part");
        if candidate.is_zero() {
            // The only consistent scale is zero, which is not allowed; at
            // parameter values where the linear part collapses the analysis
            // restarts, so record them.
            collect_factors(&mut exceptional, l0.numer());
            continue;
        }
        let mut consistent = true;
        for (l, b) in &constraints {
            let residual = l.mul(&candidate).add(b);
            if !residual.is_zero() {
                collect_factors(&mut exceptional, residual.numer());
                consistent = false;
                break;
            }
        }
        if consistent {
            return Obstruction::NotRefuted {
                sigma: *sigma,
                scale: candidate,
            };
        }
    }
    exceptional.retain(|f| !f.is_constant());
    exceptional.sort_by_key(|p| p.to_string());
    Obstruction::Refuted { exceptional }
}

// ---- Closed sets ----

/// A closed subset of the structure-constant space cut out by flag
/// containments and polynomial equations.
///
/// `containments` entries `(i, j, k)` assert `S_i S_j ⊆ S_k` for the flag
/// subspaces `S_m = ⟨e_m, …, e_n⟩`; `k = n + 1` denotes the zero subspace.
/// Since the flags are coordinate subspaces this is the vanishing of the
/// constants `c_{p,q}^m` for `p ≥ i`, `q ≥ j`, `m < k` — the same condition
/// `subspace_product` computes, stated exactly and uniformly in parameters.
/// `equations` are polynomials in the variables `c_p_q_m` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSetSpec {
    pub containments: Vec<(usize, usize, usize)>,
    pub equations: Vec<MultiPoly>,
}

/// Problems reading a separation certificate or closed-set description.
#[derive(Debug, Error)]
pub enum SeparationError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed certificate: {0}")]
    Shape(String),
}

fn parse_fail(line: usize, message: impl Into<String>) -> SeparationError {
    SeparationError::Parse {
        line,
        message: message.into(),
    }
}

impl ClosedSetSpec {
    /// Parses `contain: i j k` and `eq: <polynomial in c_i_j_k>` lines.
    pub fn parse(text: &str) -> Result<Self, SeparationError> {
        let mut spec = ClosedSetSpec {
            containments: Vec::new(),
            equations: Vec::new(),
        };
        for (num, raw) in text.lines().enumerate() {
            let line = num + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if let Some(rest) = body.strip_prefix("contain:") {
                let parts: Vec<usize> = rest
                    .split_whitespace()
                    .map(|p| p.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| parse_fail(line, "contain wants three indices"))?;
                let [i, j, k] = parts[..] else {
                    return Err(parse_fail(line, "contain wants three indices"));
                };
                if i < 1 || i > 4 || j < 1 || j > 4 || k < 1 || k > 5 {
                    return Err(parse_fail(line, "containment indices out of range"));
                }
                spec.containments.push((i, j, k));
                continue;
            }
            if let Some(rest) = body.strip_prefix("eq:") {
                let scalar = crate::exactmath::parse::parse_scalar(rest, None)
                    .map_err(|e| parse_fail(line, format!("bad equation: {e}")))?;
                if !scalar.denom().is_constant() {
                    return Err(parse_fail(line, "equation must be polynomial"));
                }
                let poly = scalar.numer().clone();
                // Scaling arguments below require conditions invariant
                // under rescaling the constants, i.e. homogeneous ones.
                let degree = poly.total_degree();
                if poly
                    .terms()
                    .iter()
                    .any(|(e, _)| e.iter().sum::<u32>() != degree)
                {
                    return Err(parse_fail(line, "equation must be homogeneous"));
                }
                spec.equations.push(poly);
                continue;
            }
            return Err(parse_fail(line, "expected `contain:` or `eq:`"));
        }
        Ok(spec)
    }

    /// Serialises in the format `parse` reads.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, j, k) in &self.containments {
            out.push_str(&format!("contain: {i} {j} {k}\n"));
        }
        for eq in &self.equations {
            out.push_str(&format!("eq: {eq}\n"));
        }
        out
    }

    /// The defining conditions as polynomials in the 64 variables `c_p_q_m`.
    fn condition_polys(&self, n: usize) -> Vec<MultiPoly> {
        let mut vanished = BTreeSet::new();
        for &(i, j, k) in &self.containments {
            for p in i..=n {
                for q in j..=n {
                    for m in 1..k.min(n + 1) {
                        vanished.insert(constant_var(p, q, m));
                    }
                }
            }
        }
        let mut out: Vec<MultiPoly> = vanished.iter().map(|v| MultiPoly::var(v)).collect();
        out.extend(self.equations.iter().cloned());
        out
    }

    /// True when every defining condition is linear.
    fn is_linear(&self) -> bool {
        self.equations.iter().all(|e| e.total_degree() <= 1)
    }
}

fn constant_var(p: usize, q: usize, m: usize) -> String {
    format!("c_{p}_{q}_{m}")
}

/// Bindings sending each `c_p_q_m` variable to the corresponding structure
/// constant of `a`.
fn constant_bindings(a: &AlgebraStructure) -> BTreeMap<String, Scalar> {
    let n = a.dim;
    let mut out = BTreeMap::new();
    for p in 1..=n {
        for q in 1..=n {
            for m in 1..=n {
                out.insert(constant_var(p, q, m), a.c(p - 1, q - 1, m - 1).clone());
            }
        }
    }
    out
}

/// Adjugate of a square matrix, by cofactor expansion.  For a matrix of
/// polynomial entries the result is polynomial: `m · adj(m) = det(m)·1`
/// without any division.
fn adjugate(m: &crate::exactmath::ScalarMatrix) -> crate::exactmath::ScalarMatrix {
    let n = m.rows();
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut data = Vec::with_capacity((n - 1) * (n - 1));
            for r in 0..n {
                if r == j {
                    continue;
                }
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    data.push(m.at(r, c).clone());
                }
            }
            let minor = crate::exactmath::ScalarMatrix::new(n - 1, n - 1, data).det();
            rows[i][j] = if (i + j) % 2 == 0 { minor } else { minor.neg() };
        }
    }
    crate::exactmath::ScalarMatrix::from_rows(rows)
}

/// Denominator-free transport of structure constants: entry `(p,q,m)` of
/// the result is the `e_m`-coordinate of `apply·μ(basis·e_p, basis·e_q)`.
/// With `basis = adj(g)`, `apply = g` this is `det(g)²` times the constants
/// of the transformed structure, so homogeneous conditions vanish on it
/// exactly when they vanish on the transform.
fn transported_numerators(
    b: &AlgebraStructure,
    apply: &crate::exactmath::ScalarMatrix,
    basis: &crate::exactmath::ScalarMatrix,
) -> Vec<Scalar> {
    let n = b.dim;
    // w[r][s][m] = coordinate m of apply·μ(e_r, e_s).
    let mut w = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for r in 0..n {
        for s in 0..n {
            for m in 0..n {
                let mut acc = Scalar::zero();
                for l in 0..n {
                    let c = b.c(r, s, l);
                    if !c.is_zero() {
                        acc = acc.add(&c.mul(apply.at(m, l)));
                    }
                }
                w[r][s][m] = acc;
            }
        }
    }
    let mut out = vec![Scalar::zero(); n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let brp = basis.at(r, p);
                if brp.is_zero() {
                    continue;
                }
                for s in 0..n {
                    let bsq = basis.at(s, q);
                    if bsq.is_zero() {
                        continue;
                    }
                    let factor = brp.mul(bsq);
                    for m in 0..n {
                        if !w[r][s][m].is_zero() {
                            let slot = (p * n + q) * n + m;
                            out[slot] = out[slot].add(&factor.mul(&w[r][s][m]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Bindings sending each `c_p_q_m` variable to the transported numerator.
fn transported_bindings(nu: &[Scalar], n: usize) -> BTreeMap<String, Scalar> {
    let mut out = BTreeMap::new();
    for p in 1..=n {
        for q in 1..=n {
            for m in 1..=n {
                out.insert(
                    constant_var(p, q, m),
                    nu[((p - 1) * n + (q - 1)) * n + (m - 1)].clone(),
                );
            }
        }
    }
    out
}

/// True when the structure satisfies every condition of the spec,
/// identically in its parameters.
pub fn closed_set_membership(a: &AlgebraStructure, spec: &ClosedSetSpec) -> bool {
    let bindings = constant_bindings(a);
    spec.condition_polys(a.dim).iter().all(|cond| {
        Scalar::from_poly(cond.clone())
            .substitute(&bindings)
            .map(|v| v.is_zero())
            .unwrap_or(false)
    })
}

/// Outcome of the Borel-stability check.
#[derive(Clone, Debug, PartialEq)]
pub enum Stability {
    Stable,
    NotStable { witness: String },
    Inconclusive,
}

/// Decides whether the closed set is stable under the group of invertible
/// lower-triangular matrices.
///
/// A generic lower-triangular `g` (ten symbolic entries) transforms a
/// generic structure `μ` (sixty-four symbolic constants); each defining
/// condition, evaluated on the denominator-free transport (`det(g)²` times
/// the transformed constants — harmless since conditions are homogeneous),
/// must lie in the ideal generated by the defining conditions together with
/// the saturation relation `z·g_11·g_22·g_33·g_44 = 1`.  Membership proves
/// stability outright; for linear conditions the ideal is prime, so a
/// definitive non-membership also disproves it.
pub fn borel_stability(spec: &ClosedSetSpec, budget: &GroebnerBudget) -> Stability {
    let n = 4;
    let mut generic = AlgebraStructure::zero("generic", n);
    for p in 1..=n {
        for q in 1..=n {
            for m in 1..=n {
                generic.set(p - 1, q - 1, m - 1, Scalar::param(&constant_var(p, q, m)));
                let name = constant_var(p, q, m);
                if !generic.params.contains(&name) {
                    generic.params.push(name);
                }
            }
        }
    }
    let mut rows = Vec::new();
    for r in 1..=n {
        let mut row = Vec::new();
        for c in 1..=n {
            row.push(if r >= c {
                Scalar::param(&format!("g_{r}_{c}"))
            } else {
                Scalar::zero()
            });
        }
        rows.push(row);
    }
    let g = crate::exactmath::ScalarMatrix::from_rows(rows);
    let nu = transported_numerators(&generic, &g, &adjugate(&g));
    let acted_bindings = transported_bindings(&nu, n);

    let conditions = spec.condition_polys(n);
    let mut diagonal = MultiPoly::var("z_sat");
    for r in 1..=n {
        diagonal = diagonal.mul(&MultiPoly::var(&format!("g_{r}_{r}")));
    }
    let mut gens = conditions.clone();
    gens.push(diagonal.sub(&MultiPoly::one()));
    let result = groebner(&PolyIdeal::new(gens, MonomialOrder::GrevLex), budget);

    for cond in &conditions {
        let value = match Scalar::from_poly(cond.clone()).substitute(&acted_bindings) {
            Ok(v) => v,
            Err(_) => return Stability::Inconclusive,
        };
        let answer = ideal_contains(&result, value.numer());
        if answer.value {
            continue;
        }
        if answer.definitive && spec.is_linear() {
            return Stability::NotStable {
                witness: cond.to_string(),
            };
        }
        return Stability::Inconclusive;
    }
    Stability::Stable
}

/// Outcome of the orbit-avoidance test.
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitAnswer {
    /// The orbit of the structure does not meet the closed set, for every
    /// admissible parameter value (exceptional values re-checked
    /// internally).
    Refuted,
    /// A basis change into the set exists.
    NotRefuted { witness: String },
    Inconclusive { reason: String },
}

/// All 24 permutations of four letters.
fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&x| x) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The structure re-expressed in the basis `E_i = e_{perm[i]}` (0-based).
pub fn permute_basis(a: &AlgebraStructure, perm: &[usize; 4]) -> AlgebraStructure {
    let mut out = a.clone();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out.set(i, j, k, a.c(perm[i], perm[j], perm[k]).clone());
            }
        }
    }
    out
}

/// Decides whether the orbit of `b` meets the closed set.
///
/// Cheap witnesses (basis permutations) are tried first.  Otherwise the
/// polynomial system "the transported constants of `b` satisfy every
/// condition; `det(h)·y = 1`" in the sixteen entries of a matrix `h` plus
/// `y` must generate the unit ideal, certified by a complete Gröbner basis;
/// the group element is `adj(h)`, which ranges over every invertible matrix
/// as `h` does while keeping the system polynomial.  For a parametric `b` a
/// complete non-unit basis may instead contain polynomials in the
/// parameters alone; their roots are re-checked by substitution, so
/// `Refuted` always covers every admissible parameter value.
pub fn orbit_refute(
    b: &AlgebraStructure,
    spec: &ClosedSetSpec,
    budget: &GroebnerBudget,
) -> OrbitAnswer {
    for perm in permutations4() {
        let permuted = permute_basis(b, &perm);
        if closed_set_membership(&permuted, spec) {
            return OrbitAnswer::NotRefuted {
                witness: format!(
                    "basis e_{}, e_{}, e_{}, e_{} lies in the set",
                    perm[0] + 1,
                    perm[1] + 1,
                    perm[2] + 1,
                    perm[3] + 1
                ),
            };
        }
    }

    // Parametrise the group by adjugates: `h ↦ adj(h)` covers every
    // invertible matrix, and the transport of `b` under `adj(h)` has
    // polynomial numerators of degree five in the entries of `h`.
    let mut rows = Vec::new();
    for r in 1..=4 {
        let mut row = Vec::new();
        for c in 1..=4 {
            row.push(Scalar::param(&format!("h_{r}_{c}")));
        }
        rows.push(row);
    }
    let h = crate::exactmath::ScalarMatrix::from_rows(rows);
    let det = h.det();
    let nu = transported_numerators(b, &adjugate(&h), &h);
    let acted_bindings = transported_bindings(&nu, 4);
    let mut gens = Vec::new();
    for cond in spec.condition_polys(4) {
        match Scalar::from_poly(cond).substitute(&acted_bindings) {
            Ok(v) => gens.push(v.numer().clone()),
            Err(_) => {
                return OrbitAnswer::Inconclusive {
                    reason: "condition evaluation failed".to_string(),
                }
            }
        }
    }
    gens.push(
        det.numer()
            .mul(&MultiPoly::var("y_det"))
            .sub(&MultiPoly::one()),
    );
    let result = groebner(&PolyIdeal::new(gens, MonomialOrder::GrevLex), budget);
    let unit = ideal_is_unit(&result);
    if unit.value {
        return OrbitAnswer::Refuted;
    }
    if result.status != GroebnerStatus::Complete {
        return OrbitAnswer::Inconclusive {
            reason: "basis computation exhausted its budget".to_string(),
        };
    }
    // Complete, not the unit ideal: look for consequences in the parameters
    // alone; the system is then unsolvable wherever they do not vanish.
    let params: BTreeSet<String> = b.params.iter().cloned().collect();
    let mut param_factors: Vec<MultiPoly> = Vec::new();
    let mut found = false;
    for element in &result.basis {
        let active: Vec<String> = element
            .vars()
            .iter()
            .filter(|v| element.degree_in(v) > 0)
            .cloned()
            .collect();
        if !active.is_empty() && active.iter().all(|v| params.contains(v)) {
            found = true;
            collect_factors(&mut param_factors, element);
        }
    }
    if !found {
        return OrbitAnswer::NotRefuted {
            witness: "the polynomial system is solvable".to_string(),
        };
    }
    // Re-check each excepted parameter value.
    for factor in &param_factors {
        let Some(slices) = zero_slices(factor) else {
            return OrbitAnswer::Inconclusive {
                reason: format!("cannot enumerate the zeros of {factor}"),
            };
        };
        for bindings in slices {
            let Ok(member) = b.substitute(&bindings) else {
                continue;
            };
            if !member.restrictions_hold() {
                continue;
            }
            match orbit_refute(&member, spec, budget) {
                OrbitAnswer::Refuted => {}
                other => return other,
            }
        }
    }
    OrbitAnswer::Refuted
}

// ---- Exceptional-value slicing ----

/// Enumerates the zero set of a factor as substitutions: the roots of a
/// univariate factor, or the rational parametrisation of a two-variable
/// factor linear in one of them.  `None` when the zeros cannot be
/// enumerated this way.
///
/// In the two-variable case `f = A(u)·v + B(u)` the slice `v = −B/A`
/// covers the whole zero set: a common root of `A` and `B` would be a
/// non-constant content in `v`, which the factor splitting already removed.
fn zero_slices(f: &MultiPoly) -> Option<Vec<BTreeMap<String, Scalar>>> {
    let active: Vec<String> = f
        .vars()
        .iter()
        .filter(|v| f.degree_in(v) > 0)
        .cloned()
        .collect();
    match active.len() {
        0 => Some(Vec::new()),
        1 => {
            let analysis = univariate_roots(f)?;
            if !analysis.all_roots_found {
                return None;
            }
            Some(
                analysis
                    .roots
                    .into_iter()
                    .map(|r| {
                        let mut b = BTreeMap::new();
                        b.insert(active[0].clone(), Scalar::from_gaussian(r));
                        b
                    })
                    .collect(),
            )
        }
        2 => {
            let (var, value, leading) = solve_linear_in_one(f)?;
            let trailing = f.sub(&derivative(f, &var).mul(&MultiPoly::var(&var)));
            if !crate::exactmath::gcd::gcd(&leading, &trailing).is_constant() {
                return None;
            }
            let mut bindings = BTreeMap::new();
            bindings.insert(var, value);
            Some(vec![bindings])
        }
        _ => None,
    }
}

/// The dimension of an invariant over a whole family: evaluates `measure` on
/// the generic member, then on every slice of every exceptional factor it
/// reports, folding with `fold` (min or max).  `None` when some exceptional
/// locus cannot be enumerated.
fn fold_over_family(
    a: &AlgebraStructure,
    measure: &dyn Fn(&AlgebraStructure) -> (usize, Vec<MultiPoly>),
    fold: &dyn Fn(usize, usize) -> usize,
    depth: usize,
) -> Option<usize> {
    let (generic, exceptional) = measure(a);
    let mut out = generic;
    if depth == 0 {
        return if exceptional.iter().any(|f| !f.is_constant()) {
            None
        } else {
            Some(out)
        };
    }
    let mut factors = Vec::new();
    for f in &exceptional {
        collect_factors(&mut factors, f);
    }
    for factor in factors {
        let slices = zero_slices(&factor)?;
        for bindings in slices {
            let Ok(member) = a.substitute(&bindings) else {
                continue;
            };
            if !member.restrictions_hold() {
                continue;
            }
            let inner = fold_over_family(&member, measure, fold, depth - 1)?;
            out = fold(out, inner);
        }
    }
    Some(out)
}

fn max_over_family(
    a: &AlgebraStructure,
    measure: &dyn Fn(&AlgebraStructure) -> (usize, Vec<MultiPoly>),
) -> Option<usize> {
    fold_over_family(a, measure, &|x, y| x.max(y), a.params.len() + 1)
}

fn min_over_family(
    a: &AlgebraStructure,
    measure: &dyn Fn(&AlgebraStructure) -> (usize, Vec<MultiPoly>),
) -> Option<usize> {
    fold_over_family(a, measure, &|x, y| x.min(y), a.params.len() + 1)
}

// ---- Separation certificates ----

/// Which non-degeneration argument a certificate invokes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RuleTag {
    AnnLeftGt,
    SquareLt,
    PlusSquareLt,
    DerDim,
    TrivialSubalg,
    AnticommSubalg,
    SixTuple,
    ClosedSet,
    LieAnn,
    NilradicalDim,
}

impl RuleTag {
    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::AnnLeftGt => "ann_left_gt",
            RuleTag::SquareLt => "square_lt",
            RuleTag::PlusSquareLt => "plus_square_lt",
            RuleTag::DerDim => "der_dim",
            RuleTag::TrivialSubalg => "trivial_subalg",
            RuleTag::AnticommSubalg => "anticomm_subalg",
            RuleTag::SixTuple => "six_tuple",
            RuleTag::ClosedSet => "closed_set",
            RuleTag::LieAnn => "lie_ann",
            RuleTag::NilradicalDim => "nilradical_dim",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleTag> {
        Some(match name {
            "ann_left_gt" => RuleTag::AnnLeftGt,
            "square_lt" => RuleTag::SquareLt,
            "plus_square_lt" => RuleTag::PlusSquareLt,
            "der_dim" => RuleTag::DerDim,
            "trivial_subalg" => RuleTag::TrivialSubalg,
            "anticomm_subalg" => RuleTag::AnticommSubalg,
            "six_tuple" => RuleTag::SixTuple,
            "closed_set" => RuleTag::ClosedSet,
            "lie_ann" => RuleTag::LieAnn,
            "nilradical_dim" => RuleTag::NilradicalDim,
            _ => return None,
        })
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A claimed non-degeneration `source ↛ target` together with the rule that
/// proves it and the rule's payload.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationCertificate {
    pub rule: RuleTag,
    pub source: String,
    pub target: String,
    /// Subalgebra dimension for the subalgebra rules.
    pub subalgebra_dim: Option<usize>,
    /// Image-dimension bound for the anticommutative-subalgebra rule.
    pub image_bound: Option<usize>,
    /// Closed set for the `closed_set` rule.
    pub closed_set: Option<ClosedSetSpec>,
    /// Basis permutation (1-based) under which the source lies in the set.
    pub witness_basis: Option<[usize; 4]>,
}

impl SeparationCertificate {
    pub fn new(rule: RuleTag, source: &str, target: &str) -> Self {
        SeparationCertificate {
            rule,
            source: source.to_string(),
            target: target.to_string(),
            subalgebra_dim: None,
            image_bound: None,
            closed_set: None,
            witness_basis: None,
        }
    }

    /// Parses the on-disk format: `rule:`, `source:`, `target:` headers,
    /// optional `dim:`, `image_bound:`, `witness:` lines, and an optional
    /// trailing `closed_set:` block of `contain:`/`eq:` lines.
    pub fn parse(text: &str) -> Result<Self, SeparationError> {
        let mut rule = None;
        let mut source = None;
        let mut target = None;
        let mut subalgebra_dim = None;
        let mut image_bound = None;
        let mut witness_basis = None;
        let mut closed_set_lines: Vec<&str> = Vec::new();
        let mut in_spec = false;
        for (num, raw) in text.lines().enumerate() {
            let line = num + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if in_spec {
                closed_set_lines.push(raw);
                continue;
            }
            if let Some(rest) = body.strip_prefix("rule:") {
                let name = rest.trim();
                rule = Some(
                    RuleTag::from_name(name)
                        .ok_or_else(|| parse_fail(line, format!("unknown rule `{name}`")))?,
                );
            } else if let Some(rest) = body.strip_prefix("source:") {
                source = Some(rest.trim().to_string());
            } else if let Some(rest) = body.strip_prefix("target:") {
                target = Some(rest.trim().to_string());
            } else if let Some(rest) = body.strip_prefix("dim:") {
                subalgebra_dim = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_fail(line, "bad dimension"))?,
                );
            } else if let Some(rest) = body.strip_prefix("image_bound:") {
                image_bound = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_fail(line, "bad bound"))?,
                );
            } else if let Some(rest) = body.strip_prefix("witness:") {
                let parts: Vec<usize> = rest
                    .split_whitespace()
                    .map(|p| p.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| parse_fail(line, "witness wants four indices"))?;
                let [a, b, c, d] = parts[..] else {
                    return Err(parse_fail(line, "witness wants four indices"));
                };
                for x in [a, b, c, d] {
                    if x < 1 || x > 4 {
                        return Err(parse_fail(line, "witness indices out of range"));
                    }
                }
                witness_basis = Some([a, b, c, d]);
            } else if body == "closed_set:" {
                in_spec = true;
            } else {
                return Err(parse_fail(line, "unexpected line"));
            }
        }
        let rule = rule.ok_or_else(|| parse_fail(0, "missing `rule:` header"))?;
        let certificate = SeparationCertificate {
            rule,
            source: source.ok_or_else(|| parse_fail(0, "missing `source:` header"))?,
            target: target.ok_or_else(|| parse_fail(0, "missing `target:` header"))?,
            subalgebra_dim,
            image_bound,
            closed_set: if in_spec {
                Some(ClosedSetSpec::parse(&closed_set_lines.join("\n"))?)
            } else {
                None
            },
            witness_basis,
        };
        certificate.check_payload()?;
        Ok(certificate)
    }

    /// Serialises in the same format `parse` reads.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("rule: {}\n", self.rule));
        out.push_str(&format!("source: {}\n", self.source));
        out.push_str(&format!("target: {}\n", self.target));
        if let Some(d) = self.subalgebra_dim {
            out.push_str(&format!("dim: {d}\n"));
        }
        if let Some(b) = self.image_bound {
            out.push_str(&format!("image_bound: {b}\n"));
        }
        if let Some(w) = self.witness_basis {
            out.push_str(&format!("witness: {} {} {} {}\n", w[0], w[1], w[2], w[3]));
        }
        if let Some(spec) = &self.closed_set {
            out.push_str("closed_set:\n");
            out.push_str(&spec.to_text());
        }
        out
    }

    /// Payload shape must match the rule.
    fn check_payload(&self) -> Result<(), SeparationError> {
        let want = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(SeparationError::Shape(format!(
                    "rule {} {what}",
                    self.rule
                )))
            }
        };
        match self.rule {
            RuleTag::TrivialSubalg => want(self.subalgebra_dim.is_some(), "needs `dim:`"),
            RuleTag::AnticommSubalg => want(
                self.subalgebra_dim.is_some() && self.image_bound.is_some(),
                "needs `dim:` and `image_bound:`",
            ),
            RuleTag::ClosedSet => want(self.closed_set.is_some(), "needs a `closed_set:` block"),
            _ => Ok(()),
        }
    }
}

/// Outcome of checking one separation certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationReport {
    pub verified: bool,
    pub detail: String,
}

fn verified(detail: impl Into<String>) -> SeparationReport {
    SeparationReport {
        verified: true,
        detail: detail.into(),
    }
}

fn failed(detail: impl Into<String>) -> SeparationReport {
    SeparationReport {
        verified: false,
        detail: detail.into(),
    }
}

/// Checks a separation certificate against the named structures.
///
/// `verified` is a proof that no member of the source family degenerates to
/// any admissible member of the target family; the detail string records the
/// compared quantities.  Family parameters are handled generically with
/// every exceptional value re-checked; when that is impossible the
/// certificate fails rather than guessing.
pub fn invariant_separation(
    cert: &SeparationCertificate,
    source: &AlgebraStructure,
    target: &AlgebraStructure,
    budget: &GroebnerBudget,
) -> SeparationReport {
    match cert.rule {
        RuleTag::AnnLeftGt => {
            let measure = |a: &AlgebraStructure| {
                let (left, _, _, exc) = annihilators(a);
                (left.dim(), exc)
            };
            let Some(src) = min_over_family(source, &measure) else {
                return failed("source annihilator locus not enumerable");
            };
            let Some(tgt) = max_over_family(target, &measure) else {
                return failed("target annihilator locus not enumerable");
            };
            if src > tgt {
                verified(format!("left annihilator {src} > {tgt}"))
            } else {
                failed(format!("left annihilator {src} <= {tgt}"))
            }
        }
        RuleTag::SquareLt => compare_shrinking(source, target, "square", &|a| {
            let (s, exc) = square(a);
            (s.dim(), exc)
        }),
        RuleTag::PlusSquareLt => compare_shrinking(source, target, "symmetrised square", &|a| {
            let (s, exc) = plus_square(a);
            (s.dim(), exc)
        }),
        RuleTag::DerDim => {
            let measure = |a: &AlgebraStructure| {
                let report = derivation_dim(a);
                let exc = report
                    .exceptional
                    .iter()
                    .map(|e| e.constraint.clone())
                    .collect();
                (report.generic_dim, exc)
            };
            let d_min = derivation_dim(source).generic_dim;
            let Some(tgt) = max_over_family(target, &measure) else {
                return failed("target derivation locus not enumerable");
            };
            let k = source.params.len();
            // A proper degeneration strictly increases the derivation
            // dimension; a k-parameter source widens the reachable boundary
            // by at most k.  Requiring the target below both the generic
            // source dimension and the boundary bound leaves no admissible
            // member unaccounted for (special source members only have more
            // derivations).
            let boundary = tgt + k < d_min + 1;
            let outside_orbits = tgt < d_min
                || (k == 0 && is_nilpotent(source).0 != is_nilpotent(target).0);
            if boundary && outside_orbits {
                verified(format!(
                    "derivations: target {tgt} < source {d_min} (parameters {k})"
                ))
            } else {
                failed(format!(
                    "derivations: target {tgt} vs source {d_min} (parameters {k})"
                ))
            }
        }
        RuleTag::NilradicalDim => {
            let src = match nilradical_dim(source, budget) {
                Ok((d, _)) => d,
                Err(e) => return failed(format!("source nilradical: {e:?}")),
            };
            let tgt = match nilradical_dim(target, budget) {
                Ok((d, _)) => d,
                Err(e) => return failed(format!("target nilradical: {e:?}")),
            };
            if tgt < src {
                verified(format!("nilradical {tgt} < {src}"))
            } else {
                failed(format!("nilradical {tgt} >= {src}"))
            }
        }
        RuleTag::TrivialSubalg => {
            let dim = cert.subalgebra_dim.expect("payload checked");
            subalgebra_rule(source, target, dim, &SubspaceProperty::Trivial, budget)
        }
        RuleTag::AnticommSubalg => {
            let dim = cert.subalgebra_dim.expect("payload checked");
            let bound = cert.image_bound.expect("payload checked");
            subalgebra_rule(
                source,
                target,
                dim,
                &SubspaceProperty::AnticommutativeImageBound(bound),
                budget,
            )
        }
        RuleTag::SixTuple => six_tuple_rule(source, target),
        RuleTag::ClosedSet => {
            let spec = cert.closed_set.as_ref().expect("payload checked");
            let member = match cert.witness_basis {
                Some(w) => permute_basis(source, &[w[0] - 1, w[1] - 1, w[2] - 1, w[3] - 1]),
                None => source.clone(),
            };
            if !closed_set_membership(&member, spec) {
                return failed("source does not lie in the closed set");
            }
            match borel_stability(spec, budget) {
                Stability::Stable => {}
                Stability::NotStable { witness } => {
                    return failed(format!("set is not stable: {witness} moves"))
                }
                Stability::Inconclusive => return failed("stability check inconclusive"),
            }
            match orbit_refute(target, spec, budget) {
                OrbitAnswer::Refuted => {
                    verified("source in stable closed set avoided by the target orbit")
                }
                OrbitAnswer::NotRefuted { witness } => {
                    failed(format!("target orbit meets the set: {witness}"))
                }
                OrbitAnswer::Inconclusive { reason } => failed(reason),
            }
        }
        RuleTag::LieAnn => {
            let report = lie_ann_separation(std::slice::from_ref(source), target);
            SeparationReport {
                verified: report.verified,
                detail: report
                    .failure
                    .unwrap_or_else(|| "nonzero annihilator forced on any limit".to_string()),
            }
        }
    }
}

/// Shared logic for rules where the invariant can only shrink along a
/// degeneration (squares): refuted when the source maximum is strictly
/// below the target minimum.
fn compare_shrinking(
    source: &AlgebraStructure,
    target: &AlgebraStructure,
    what: &str,
    measure: &dyn Fn(&AlgebraStructure) -> (usize, Vec<MultiPoly>),
) -> SeparationReport {
    let Some(src) = max_over_family(source, measure) else {
        return failed(format!("source {what} locus not enumerable"));
    };
    let Some(tgt) = min_over_family(target, measure) else {
        return failed(format!("target {what} locus not enumerable"));
    };
    if src < tgt {
        verified(format!("{what}: {src} < {tgt}"))
    } else {
        failed(format!("{what}: {src} >= {tgt}"))
    }
}

/// Shared logic for the closed subalgebra properties: the source has one at
/// every parameter value, the target has none at any.
fn subalgebra_rule(
    source: &AlgebraStructure,
    target: &AlgebraStructure,
    dim: usize,
    prop: &SubspaceProperty,
    budget: &GroebnerBudget,
) -> SeparationReport {
    match exists_subspace(source, dim, prop, budget) {
        SubspaceAnswer::Yes(_) => {}
        SubspaceAnswer::No => return failed("source lacks the claimed subalgebra"),
        SubspaceAnswer::Inconclusive => return failed("source subalgebra query inconclusive"),
    }
    match exists_subspace(target, dim, prop, budget) {
        SubspaceAnswer::No => verified(format!(
            "source carries a dimension-{dim} subalgebra the target cannot have"
        )),
        SubspaceAnswer::Yes(_) => failed("target has the subalgebra too"),
        SubspaceAnswer::Inconclusive => failed("target subalgebra query inconclusive"),
    }
}

fn six_tuple_rule(source: &AlgebraStructure, target: &AlgebraStructure) -> SeparationReport {
    let Some(src_tuple) = six_tuple(source) else {
        return failed("source is not standard");
    };
    let Some(tgt_tuple) = six_tuple(target) else {
        return failed("target is not standard");
    };
    let forms = vanishing_forms(std::slice::from_ref(&src_tuple));
    match six_tuple_obstruction(&forms, &tgt_tuple) {
        Obstruction::NotRefuted { sigma, scale } => failed(format!(
            "tuple matches under permutation {sigma:?} with scale {scale}"
        )),
        Obstruction::Refuted { exceptional } => {
            // Re-check each excepted target member with a concrete tuple.
            for factor in &exceptional {
                let Some(slices) = zero_slices(factor) else {
                    return failed(format!("cannot enumerate the zeros of {factor}"));
                };
                for bindings in slices {
                    let Ok(member) = target.substitute(&bindings) else {
                        continue;
                    };
                    if !member.restrictions_hold() {
                        continue;
                    }
                    let Some(member_tuple) = six_tuple(&member) else {
                        return failed("excepted member is not standard");
                    };
                    match six_tuple_obstruction(&forms, &member_tuple) {
                        Obstruction::Refuted { exceptional } if exceptional.is_empty() => {}
                        Obstruction::Refuted { .. } => {
                            return failed("excepted member leaves symbolic residue")
                        }
                        Obstruction::NotRefuted { .. } => {
                            return failed("tuple obstruction fails at an excepted member")
                        }
                    }
                }
            }
            verified("no permutation and nonzero scale satisfies the vanishing forms")
        }
    }
}

// ---- The annihilator criterion for Lie targets ----

/// Result of the annihilator criterion.
#[derive(Clone, Debug)]
pub struct LieAnnReport {
    pub verified: bool,
    /// Factors in the target's parameters where its annihilator becomes
    /// nonzero; the criterion applies to every member off this locus.
    pub exceptional: Vec<MultiPoly>,
    pub failure: Option<String>,
}

/// The exact locus in the parameters where the two-sided annihilator is
/// nonzero, as squarefree factors.
///
/// Candidate factors come from the rank computation; each is certified
/// genuine by recomputing the annihilator on a slice of its zero set and
/// discarded if the annihilator stays zero there (the dimension can only
/// jump up on closed subsets, so a generic slice decides).  `None` when a
/// candidate's zeros cannot be enumerated.
pub fn annihilator_locus(b: &AlgebraStructure) -> Option<Vec<MultiPoly>> {
    let (_, _, two_sided, exceptional) = annihilators(b);
    if two_sided.dim() > 0 {
        // Nonzero everywhere: represent as the zero polynomial.
        return Some(vec![MultiPoly::zero()]);
    }
    let mut candidates = Vec::new();
    for f in &exceptional {
        collect_factors(&mut candidates, f);
    }
    let mut genuine = Vec::new();
    for factor in candidates {
        let slices = zero_slices(&factor)?;
        let mut positive = false;
        for bindings in slices {
            let Ok(member) = b.substitute(&bindings) else {
                continue;
            };
            if !member.restrictions_hold() {
                continue;
            }
            let (_, _, two, _) = annihilators(&member);
            if two.dim() > 0 {
                positive = true;
                break;
            }
        }
        if positive && !genuine.contains(&factor) {
            genuine.push(factor);
        }
    }
    genuine.sort_by_key(|p| p.to_string());
    Some(genuine)
}

/// Verifies the annihilator criterion: every family member is non-Lie at
/// every admissible parameter value, and the target has zero annihilator —
/// off the reported exceptional locus when the target has parameters.  A
/// non-Lie structure has a nonzero symmetrised square inside its left
/// annihilator, annihilators only grow in the limit, so no family member
/// degenerates to any target member off the locus.
pub fn lie_ann_separation(family: &[AlgebraStructure], b: &AlgebraStructure) -> LieAnnReport {
    let fail = |msg: String| LieAnnReport {
        verified: false,
        exceptional: Vec::new(),
        failure: Some(msg),
    };
    for member in family {
        match plus_square_positive_everywhere(member, member.params.len() + 1) {
            Some(true) => {}
            Some(false) => {
                return fail(format!(
                    "{} has a Lie member: symmetrised square vanishes somewhere",
                    member.label
                ))
            }
            None => {
                return fail(format!(
                    "{}: symmetrised-square locus not enumerable",
                    member.label
                ))
            }
        }
    }
    let Some(locus) = annihilator_locus(b) else {
        return fail(format!("{}: annihilator locus not enumerable", b.label));
    };
    if locus.iter().any(|f| f.is_zero()) {
        return fail(format!("{} has nonzero annihilator", b.label));
    }
    LieAnnReport {
        verified: true,
        exceptional: locus,
        failure: None,
    }
}

/// True when the symmetrised square is nonzero at every admissible
/// parameter value: generically and on every exceptional slice.
fn plus_square_positive_everywhere(a: &AlgebraStructure, depth: usize) -> Option<bool> {
    let (space, exceptional) = plus_square(a);
    if space.dim() == 0 {
        return Some(false);
    }
    if depth == 0 {
        return if exceptional.iter().any(|f| !f.is_constant()) {
            None
        } else {
            Some(true)
        };
    }
    let mut factors = Vec::new();
    for f in &exceptional {
        collect_factors(&mut factors, f);
    }
    for factor in factors {
        let slices = zero_slices(&factor)?;
        for bindings in slices {
            let Ok(member) = a.substitute(&bindings) else {
                continue;
            };
            if !member.restrictions_hold() {
                continue;
            }
            match plus_square_positive_everywhere(&member, depth - 1) {
                Some(true) => {}
                other => return other,
            }
        }
    }
    Some(true)
}
