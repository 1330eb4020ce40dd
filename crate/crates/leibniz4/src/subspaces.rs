//! Existence of subspaces with prescribed multiplication properties.
//!
//! The space of k-dimensional subspaces is covered by echelon cells, one per
//! pivot set; inside a cell a subspace is described by its free entries.  A
//! property (trivial multiplication, anticommutativity with a bounded image,
//! nilpotent ideal) compiles into polynomial equations in those entries, and
//! existence is decided per cell: a small-coordinate search produces
//! witnesses, and a unit Groebner ideal certifies emptiness.  For parametric
//! algebras a witness is accepted only when it works identically in the
//! parameters, and emptiness is certified for every parameter value
//! satisfying the family restrictions.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraStructure, Subspace};
use crate::exactmath::groebner::{groebner, ideal_is_unit};
use crate::exactmath::{
    GaussianRational, GroebnerBudget, GroebnerStatus, MonomialOrder, MultiPoly, PolyIdeal,
    Scalar,
};

/// One echelon cell of the space of `dim`-dimensional subspaces: the set of
/// subspaces whose reduced-echelon basis has the given pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonCell {
    pub ambient: usize,
    pub dim: usize,
    pub pivots: Vec<usize>,
}

impl EchelonCell {
    /// All cells for k-dimensional subspaces of n-space, one per pivot set.
    pub fn enumerate(n: usize, k: usize) -> Vec<EchelonCell> {
        crate::exactmath::matrix::combinations(n, k)
            .into_iter()
            .map(|pivots| EchelonCell {
                ambient: n,
                dim: k,
                pivots,
            })
            .collect()
    }

    /// The cell owning a given subspace (decided by its pivot columns).
    pub fn owning(space: &Subspace) -> EchelonCell {
        EchelonCell {
            ambient: space.ambient(),
            dim: space.dim(),
            pivots: space.pivots(),
        }
    }

    /// Free coordinates of the cell: `(row, column, name)` for every entry
    /// right of its pivot that is not itself a pivot column.
    pub fn unknowns(&self) -> Vec<(usize, usize, String)> {
        let mut out = Vec::new();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in (p + 1)..self.ambient {
                if !self.pivots.contains(&c) {
                    out.push((r, c, format!("u{r}_{c}")));
                }
            }
        }
        out
    }

    /// The parametrized basis rows of the cell, with symbolic free entries.
    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(); self.ambient]; self.dim];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = Scalar::one();
        }
        for (r, c, name) in self.unknowns() {
            rows[r][c] = Scalar::param(&name);
        }
        rows
    }

    /// Substitutes values for the free entries, producing a concrete
    /// subspace of this cell.
    pub fn at_point(&self, values: &BTreeMap<String, GaussianRational>) -> Subspace {
        let rows: Vec<Vec<Scalar>> = self
            .basis_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        if e.is_constant() {
                            e.clone()
                        } else {
                            let name = &e.params()[0];
                            Scalar::from_gaussian(
                                values.get(name).expect("assigned unknown").clone(),
                            )
                        }
                    })
                    .collect()
            })
            .collect();
        let (space, _) = Subspace::span(self.ambient, &rows);
        space
    }
}

/// The subspace property to test for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceProperty {
    /// All products of elements of the subspace vanish.
    Trivial,
    /// The subspace is an anticommutative subalgebra and the product of the
    /// whole algebra with it has dimension at most the bound.
    AnticommutativeImageBound(usize),
    /// The subspace is a two-sided ideal whose own structure is nilpotent.
    NilpotentIdeal,
}

/// Outcome of an existence query.
#[derive(Clone, Debug, PartialEq)]
pub enum SubspaceAnswer {
    /// A witness valid at every parameter value of the family.
    Yes(Subspace),
    /// No such subspace at any parameter value satisfying the restrictions.
    No,
    /// Budget exhausted, or solvable only at special parameter values.
    Inconclusive,
}

/// Reduces a vector against the symbolic cell basis; the non-pivot
/// coordinates of the result are the membership conditions.
fn reduce_by_cell(cell: &EchelonCell, rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let mut rem: Vec<Scalar> = v.to_vec();
    for (r, &p) in cell.pivots.iter().enumerate() {
        if rem[p].is_zero() {
            continue;
        }
        let f = rem[p].clone();
        for c in 0..cell.ambient {
            rem[c] = rem[c].sub(&f.mul(&rows[r][c]));
        }
    }
    rem
}

/// Numerators of a list of scalars, without zeros or duplicates.
fn push_eqs(eqs: &mut Vec<MultiPoly>, coords: &[Scalar]) {
    for s in coords {
        let p = s.numer().clone();
        if p.is_zero() || eqs.contains(&p) {
            continue;
        }
        eqs.push(p);
    }
}

/// Compiles the property into polynomial equations in the cell unknowns
/// (and any algebra parameters).
fn compile(a: &AlgebraStructure, cell: &EchelonCell, prop: &SubspaceProperty) -> Vec<MultiPoly> {
    let rows = cell.basis_rows();
    let n = a.dim;
    let mut eqs = Vec::new();
    match prop {
        SubspaceProperty::Trivial => {
            for x in &rows {
                for y in &rows {
                    push_eqs(&mut eqs, &a.mul(x, y));
                }
            }
        }
        SubspaceProperty::AnticommutativeImageBound(m) => {
            // Antisymmetry of products inside the subspace.
            for (ri, x) in rows.iter().enumerate() {
                for y in &rows[ri..] {
                    let xy = a.mul(x, y);
                    let yx = a.mul(y, x);
                    let sym: Vec<Scalar> =
                        (0..n).map(|k| xy[k].add(&yx[k])).collect();
                    push_eqs(&mut eqs, &sym);
                }
            }
            // Closure: products of subspace elements stay inside.
            for x in &rows {
                for y in &rows {
                    let rem = reduce_by_cell(cell, &rows, &a.mul(x, y));
                    push_eqs(&mut eqs, &rem);
                }
            }
            // Image bound: all (m+1)-minors of the stacked products of the
            // whole algebra with the subspace vanish.
            let mut image = Vec::new();
            for i in 0..n {
                let mut e = vec![Scalar::zero(); n];
                e[i] = Scalar::one();
                for y in &rows {
                    image.push(a.mul(&e, y));
                }
            }
            let stacked = crate::exactmath::ScalarMatrix::from_rows(image);
            for (_, _, minor) in stacked.minors(m + 1) {
                push_eqs(&mut eqs, &[minor]);
            }
        }
        SubspaceProperty::NilpotentIdeal => {
            // Two-sided ideal: products with the whole algebra stay inside.
            for i in 0..n {
                let mut e = vec![Scalar::zero(); n];
                e[i] = Scalar::one();
                for y in &rows {
                    push_eqs(&mut eqs, &reduce_by_cell(cell, &rows, &a.mul(&e, y)));
                    push_eqs(&mut eqs, &reduce_by_cell(cell, &rows, &a.mul(y, &e)));
                }
            }
            // Nilpotency: every iterated product of k+1 subspace elements
            // vanishes (a k-dimensional nilpotent algebra has lower central
            // series of length at most k+1).
            let mut layer: Vec<Vec<Scalar>> = rows.clone();
            for _ in 0..cell.dim.max(1) {
                let mut next = Vec::new();
                for g in &layer {
                    for y in &rows {
                        let gy = a.mul(g, y);
                        let yg = a.mul(y, g);
                        if gy.iter().any(|s| !s.is_zero()) {
                            next.push(gy);
                        }
                        if yg.iter().any(|s| !s.is_zero()) {
                            next.push(yg);
                        }
                    }
                }
                layer = next;
                if layer.is_empty() {
                    break;
                }
            }
            for v in &layer {
                push_eqs(&mut eqs, v);
            }
        }
    }
    eqs
}

/// Small Gaussian-rational candidates for witness coordinates.
fn candidates() -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(), GaussianRational::one()];
    out.push(GaussianRational::from_int(-1));
    out.push(GaussianRational::from_int(2));
    out.push(GaussianRational::from_int(-2));
    out.push(GaussianRational::i());
    out.push(&GaussianRational::zero() - &GaussianRational::i());
    out.push(GaussianRational::from_ratio(1, 2));
    out.push(GaussianRational::from_ratio(-1, 2));
    out.push(GaussianRational::from_int(3));
    out.push(GaussianRational::from_int(-3));
    out
}

/// Backtracking search for an assignment of the unknowns under which every
/// equation vanishes identically (in particular, identically in any algebra
/// parameters).  Returns the first witness in candidate order.
fn find_point(
    eqs: &[MultiPoly],
    unknowns: &[String],
    assignment: &mut BTreeMap<String, GaussianRational>,
) -> bool {
    // Dead or solved branches are detected on the fully-substituted system.
    let mut alive = true;
    for eq in eqs {
        let remaining = eq
            .vars()
            .iter()
            .any(|v| unknowns.contains(v) && !assignment.contains_key(v));
        if remaining {
            continue;
        }
        let bindings: BTreeMap<String, MultiPoly> = assignment
            .iter()
            .map(|(k, v)| (k.clone(), MultiPoly::constant(v.clone())))
            .collect();
        if !eq.substitute(&bindings).is_zero() {
            alive = false;
            break;
        }
    }
    if !alive {
        return false;
    }
    let next = unknowns.iter().find(|u| !assignment.contains_key(*u));
    let Some(var) = next else {
        // Full assignment: re-check everything.
        let bindings: BTreeMap<String, MultiPoly> = assignment
            .iter()
            .map(|(k, v)| (k.clone(), MultiPoly::constant(v.clone())))
            .collect();
        return eqs.iter().all(|eq| eq.substitute(&bindings).is_zero());
    };
    for c in candidates() {
        assignment.insert(var.clone(), c);
        if find_point(eqs, unknowns, assignment) {
            return true;
        }
        assignment.remove(var);
    }
    false
}

/// Appends the family's restriction saturation to an equation system: a
/// fresh variable `zres` with `(product of restrictions)·zres = 1` confines
/// the solution set to parameter values inside the family.
fn with_restrictions(a: &AlgebraStructure, mut eqs: Vec<MultiPoly>) -> Vec<MultiPoly> {
    if a.restrictions.is_empty() {
        return eqs;
    }
    let mut product = MultiPoly::one();
    for r in &a.restrictions {
        product = product.mul(r);
    }
    if product.is_constant() {
        return eqs;
    }
    let z = MultiPoly::var("zres");
    eqs.push(product.mul(&z).sub(&MultiPoly::one()));
    eqs
}

/// Decides whether the algebra has a k-dimensional subspace with the given
/// property.  See the module documentation for the quantifier convention on
/// parametric algebras.
pub fn exists_subspace(
    a: &AlgebraStructure,
    k: usize,
    prop: &SubspaceProperty,
    budget: &GroebnerBudget,
) -> SubspaceAnswer {
    assert!(k <= a.dim);
    let mut all_no = true;
    for cell in EchelonCell::enumerate(a.dim, k) {
        let eqs = compile(a, &cell, prop);
        if eqs.iter().any(|e| e.is_constant() && !e.is_zero()) {
            continue;
        }
        let unknowns: Vec<String> = cell.unknowns().into_iter().map(|(_, _, n)| n).collect();
        let mut assignment = BTreeMap::new();
        if find_point(&eqs, &unknowns, &mut assignment) {
            let witness = cell.at_point(&assignment);
            debug_assert!(verify_witness(a, &witness, prop));
            return SubspaceAnswer::Yes(witness);
        }
        if eqs.is_empty() {
            // No constraints at all, yet the zero assignment failed: cannot
            // happen, but keep the logic explicit.
            unreachable!("empty system always admits the zero point");
        }
        let system = with_restrictions(a, eqs);
        let result = groebner(&PolyIdeal::new(system, MonomialOrder::GrevLex), budget);
        let unit = ideal_is_unit(&result);
        if unit.value && unit.definitive {
            continue;
        }
        all_no = false;
        if result.status == GroebnerStatus::Complete {
            // Solvable over the complex numbers, but no uniform witness was
            // found: the answer depends on the parameter values.
            continue;
        }
    }
    if all_no {
        SubspaceAnswer::No
    } else {
        SubspaceAnswer::Inconclusive
    }
}

/// Re-checks a concrete witness against the property using the structure
/// calculus directly (identically in any parameters).
pub fn verify_witness(a: &AlgebraStructure, space: &Subspace, prop: &SubspaceProperty) -> bool {
    match prop {
        SubspaceProperty::Trivial => space
            .basis()
            .iter()
            .flat_map(|x| space.basis().iter().map(move |y| a.mul(x, y)))
            .all(|v| v.iter().all(|s| s.is_zero())),
        SubspaceProperty::AnticommutativeImageBound(m) => {
            for x in space.basis() {
                for y in space.basis() {
                    let xy = a.mul(x, y);
                    let yx = a.mul(y, x);
                    if (0..a.dim).any(|c| !xy[c].add(&yx[c]).is_zero()) {
                        return false;
                    }
                    if !space.contains_vector(&xy) {
                        return false;
                    }
                }
            }
            let mut image = Vec::new();
            for i in 0..a.dim {
                let mut e = vec![Scalar::zero(); a.dim];
                e[i] = Scalar::one();
                for y in space.basis() {
                    image.push(a.mul(&e, y));
                }
            }
            let stacked = crate::exactmath::ScalarMatrix::from_rows(image);
            stacked
                .minors(m + 1)
                .iter()
                .all(|(_, _, minor)| minor.is_zero())
        }
        SubspaceProperty::NilpotentIdeal => {
            for i in 0..a.dim {
                let mut e = vec![Scalar::zero(); a.dim];
                e[i] = Scalar::one();
                for y in space.basis() {
                    if !space.contains_vector(&a.mul(&e, y))
                        || !space.contains_vector(&a.mul(y, &e))
                    {
                        return false;
                    }
                }
            }
            let mut layer: Vec<Vec<Scalar>> = space.basis().to_vec();
            for _ in 0..space.dim().max(1) {
                let mut next = Vec::new();
                for g in &layer {
                    for y in space.basis() {
                        for v in [a.mul(g, y), a.mul(y, g)] {
                            if v.iter().any(|s| !s.is_zero()) {
                                next.push(v);
                            }
                        }
                    }
                }
                layer = next;
                if layer.is_empty() {
                    break;
                }
            }
            layer.is_empty()
        }
    }
}

/// The largest k admitting the property, scanned from the ambient dimension
/// downwards, with a witness.  `None` when some query was inconclusive
/// before the first positive answer.
pub fn max_dim_subspace(
    a: &AlgebraStructure,
    prop: &SubspaceProperty,
    budget: &GroebnerBudget,
) -> Option<(usize, Subspace)> {
    for k in (0..=a.dim).rev() {
        match exists_subspace(a, k, prop, budget) {
            SubspaceAnswer::Yes(w) => return Some((k, w)),
            SubspaceAnswer::No => continue,
            SubspaceAnswer::Inconclusive => return None,
        }
    }
    Some((0, Subspace::zero(a.dim)))
}

/// Failure modes of the nilpotent-radical dimension query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilradicalError {
    /// The structure is not solvable, so the query does not apply.
    NotSolvable,
    /// A subspace query exhausted its budget.
    Inconclusive,
}

/// Dimension of the largest nilpotent ideal of a solvable structure.
pub fn nilradical_dim(
    a: &AlgebraStructure,
    budget: &GroebnerBudget,
) -> Result<(usize, Subspace), NilradicalError> {
    let (solvable, _) = crate::algebra::is_solvable(a);
    if !solvable {
        return Err(NilradicalError::NotSolvable);
    }
    max_dim_subspace(a, &SubspaceProperty::NilpotentIdeal, budget)
        .ok_or(NilradicalError::Inconclusive)
}

/// Convenience: the trivial-subalgebra analogue of `nilradical_dim`.
pub fn max_trivial_dim(
    a: &AlgebraStructure,
    budget: &GroebnerBudget,
) -> Option<(usize, Subspace)> {
    max_dim_subspace(a, &SubspaceProperty::Trivial, budget)
}
