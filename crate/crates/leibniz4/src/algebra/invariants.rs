use std::collections::BTreeMap;
use std::fmt;

use crate::exactmath::roots::univariate_roots;
use crate::exactmath::{GaussianRational, MultiPoly, Scalar, ScalarMatrix};

use super::structure::AlgebraStructure;
use super::subspace::Subspace;

/// The product subspace `U·W`: the span of all products of basis pairs.
pub fn subspace_product(
    a: &AlgebraStructure,
    u: &Subspace,
    w: &Subspace,
) -> (Subspace, Vec<MultiPoly>) {
    let mut vectors = Vec::new();
    for x in u.basis() {
        for y in w.basis() {
            vectors.push(a.mul(x, y));
        }
    }
    Subspace::span(a.dim, &vectors)
}

/// The square `A² = A·A`.
pub fn square(a: &AlgebraStructure) -> (Subspace, Vec<MultiPoly>) {
    let whole = Subspace::whole(a.dim);
    subspace_product(a, &whole, &whole)
}

/// The span of all symmetrized products `xy + yx`; zero exactly for
/// anticommutative structures.
pub fn plus_square(a: &AlgebraStructure) -> (Subspace, Vec<MultiPoly>) {
    let n = a.dim;
    let mut vectors = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v: Vec<Scalar> = (0..n)
                .map(|k| a.c(i, j, k).add(a.c(j, i, k)))
                .collect();
            vectors.push(v);
        }
    }
    Subspace::span(n, &vectors)
}

/// Left, right, and two-sided annihilators, each as the kernel of the
/// corresponding multiplication map, with the elimination constraints.
pub fn annihilators(
    a: &AlgebraStructure,
) -> (Subspace, Subspace, Subspace, Vec<MultiPoly>) {
    let n = a.dim;
    let mut left_data = Vec::with_capacity(n * n * n);
    let mut right_data = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                left_data.push(a.c(i, j, k).clone());
                right_data.push(a.c(j, i, k).clone());
            }
        }
    }
    let left = ScalarMatrix::new(n * n, n, left_data).eliminate();
    let right = ScalarMatrix::new(n * n, n, right_data).eliminate();
    let mut exceptional = left.exceptional;
    exceptional.extend(right.exceptional);
    let (ann_l, e1) = Subspace::span(n, &left.kernel);
    let (ann_r, e2) = Subspace::span(n, &right.kernel);
    let (ann, e3) = ann_l.intersect(&ann_r);
    exceptional.extend(e1);
    exceptional.extend(e2);
    exceptional.extend(e3);
    (ann_l, ann_r, ann, dedupe(exceptional))
}

/// Which descending chain of subspaces to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `A ⊇ A² ⊇ A·A² + A²·A ⊇ …`; termination at zero means nilpotent.
    LowerCentral,
    /// `A ⊇ A² ⊇ (A²)² ⊇ …`; termination at zero means solvable.
    Derived,
}

/// The descending series of the requested kind, starting from the whole
/// space and continuing until the chain stabilizes or reaches zero.
pub fn series(a: &AlgebraStructure, kind: SeriesKind) -> (Vec<Subspace>, Vec<MultiPoly>) {
    let whole = Subspace::whole(a.dim);
    let mut chain = vec![whole.clone()];
    let mut exceptional = Vec::new();
    loop {
        let last = chain.last().expect("chain is nonempty");
        let (next, exc) = match kind {
            SeriesKind::LowerCentral => {
                let (lw, e1) = subspace_product(a, &whole, last);
                let (wl, e2) = subspace_product(a, last, &whole);
                let (s, e3) = lw.sum(&wl);
                let mut exc = e1;
                exc.extend(e2);
                exc.extend(e3);
                (s, exc)
            }
            SeriesKind::Derived => subspace_product(a, last, last),
        };
        exceptional.extend(exc);
        if next.dim() == last.dim() || next.is_zero() {
            let stable = next.dim() == last.dim();
            chain.push(next);
            if stable {
                chain.pop();
            }
            break;
        }
        chain.push(next);
    }
    (chain, dedupe(exceptional))
}

/// Whether the lower central series reaches zero (generic answer plus the
/// constraints under which it was computed).
pub fn is_nilpotent(a: &AlgebraStructure) -> (bool, Vec<MultiPoly>) {
    let (chain, exc) = series(a, SeriesKind::LowerCentral);
    (chain.last().expect("nonempty chain").is_zero(), exc)
}

/// Whether the derived series reaches zero.
pub fn is_solvable(a: &AlgebraStructure) -> (bool, Vec<MultiPoly>) {
    let (chain, exc) = series(a, SeriesKind::Derived);
    (chain.last().expect("nonempty chain").is_zero(), exc)
}

/// Dimension of the derivation algebra at one exceptional parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalPoint {
    pub param: String,
    pub value: GaussianRational,
    pub dim: usize,
}

/// One constraint polynomial from the derivation elimination, with the
/// per-root dimensions where the roots could be enumerated.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalDim {
    pub constraint: MultiPoly,
    pub points: Vec<ExceptionalPoint>,
    /// False when the constraint involves several parameters or has roots
    /// beyond the solver's reach, so the points listed are not exhaustive.
    pub resolved: bool,
}

/// Derivation dimension of a structure: the generic value together with the
/// exceptional parameter locus and the dimension at each enumerated point.
///
/// Specializing parameters can only lower the rank of the derivation system,
/// so the dimension at any special point is at least the generic value.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationReport {
    pub generic_dim: usize,
    pub exceptional: Vec<ExceptionalDim>,
}

impl DerivationReport {
    /// The largest dimension that occurs at an enumerated exceptional point,
    /// or the generic dimension if there are none.
    pub fn max_known_dim(&self) -> usize {
        self.exceptional
            .iter()
            .flat_map(|e| e.points.iter().map(|p| p.dim))
            .chain(std::iter::once(self.generic_dim))
            .max()
            .expect("at least the generic dimension")
    }

    /// True when every exceptional constraint was resolved into points.
    pub fn fully_resolved(&self) -> bool {
        self.exceptional.iter().all(|e| e.resolved)
    }
}

impl fmt::Display for DerivationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generic dim {}", self.generic_dim)?;
        for e in &self.exceptional {
            write!(f, "; at {} = 0:", e.constraint)?;
            if e.points.is_empty() {
                write!(f, " (not enumerated)")?;
            }
            for p in &e.points {
                write!(f, " {}={} -> {}", p.param, p.value, p.dim)?;
            }
        }
        Ok(())
    }
}

/// Assembles the linear system `d(e_i e_j) = d(e_i) e_j + e_i d(e_j)` in the
/// n² unknown matrix entries of `d` and returns its elimination.
fn derivation_system(a: &AlgebraStructure) -> crate::exactmath::Elimination {
    let n = a.dim;
    let cols = n * n;
    let col = |r: usize, s: usize| r * n + s;
    let mut data = vec![Scalar::zero(); n * n * n * cols];
    let mut row = 0usize;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let base = row * cols;
                    let c1 = a.c(i, j, m);
                    if !c1.is_zero() {
                        let at = base + col(k, m);
                        data[at] = data[at].add(c1);
                    }
                    let c2 = a.c(m, j, k);
                    if !c2.is_zero() {
                        let at = base + col(m, i);
                        data[at] = data[at].sub(c2);
                    }
                    let c3 = a.c(i, m, k);
                    if !c3.is_zero() {
                        let at = base + col(m, j);
                        data[at] = data[at].sub(c3);
                    }
                }
                row += 1;
            }
        }
    }
    ScalarMatrix::new(n * n * n, cols, data).eliminate()
}

/// Derivation dimension with exceptional-point enumeration.
///
/// Each single-parameter constraint from the elimination is solved for its
/// roots; the structure is specialized at each root that still satisfies the
/// family's restrictions and the (generic) dimension there is recorded.
pub fn derivation_dim(a: &AlgebraStructure) -> DerivationReport {
    let n = a.dim;
    let e = derivation_system(a);
    let generic_dim = n * n - e.rank;
    let mut exceptional = Vec::new();
    for constraint in dedupe(e.exceptional) {
        let vars = constraint.vars().to_vec();
        if vars.len() != 1 {
            exceptional.push(ExceptionalDim {
                constraint,
                points: Vec::new(),
                resolved: false,
            });
            continue;
        }
        let param = vars[0].clone();
        let Some(analysis) = univariate_roots(&constraint) else {
            exceptional.push(ExceptionalDim {
                constraint,
                points: Vec::new(),
                resolved: false,
            });
            continue;
        };
        let mut points = Vec::new();
        for root in &analysis.roots {
            let mut bindings = BTreeMap::new();
            bindings.insert(param.clone(), Scalar::from_gaussian(root.clone()));
            // A root at a pole of the constants, or one excluded by a
            // restriction, lies outside the family: nothing to re-check.
            let Ok(special) = a.substitute(&bindings) else {
                continue;
            };
            if !special.restrictions_hold() {
                continue;
            }
            let dim = n * n - derivation_system(&special).rank;
            points.push(ExceptionalPoint {
                param: param.clone(),
                value: root.clone(),
                dim,
            });
        }
        exceptional.push(ExceptionalDim {
            constraint,
            points,
            resolved: analysis.all_roots_found,
        });
    }
    DerivationReport {
        generic_dim,
        exceptional,
    }
}

/// Removes duplicate constraint polynomials, preserving first occurrence.
pub fn dedupe(polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}
