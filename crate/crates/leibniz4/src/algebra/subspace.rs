use std::fmt;

use crate::exactmath::{MultiPoly, Scalar, ScalarMatrix};

/// A linear subspace of coordinate space, stored as a reduced row-echelon
/// basis (pivot entries 1, pivots strictly increasing, pivot columns cleared
/// elsewhere).  Two subspaces are equal exactly when their canonical bases
/// agree.
///
/// Constructions from spanning sets return the subspace together with the
/// parameter constraints recorded during elimination; away from the zero
/// sets of those polynomials the generic basis specializes exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    /// The whole coordinate space.
    pub fn whole(ambient: usize) -> Subspace {
        Subspace::coordinates(ambient, &(0..ambient).collect::<Vec<_>>())
    }

    /// The span of the listed coordinate axes (zero-based).
    pub fn coordinates(ambient: usize, axes: &[usize]) -> Subspace {
        let mut axes: Vec<usize> = axes.to_vec();
        axes.sort_unstable();
        axes.dedup();
        let rows = axes
            .iter()
            .map(|&a| {
                let mut row = vec![Scalar::zero(); ambient];
                row[a] = Scalar::one();
                row
            })
            .collect();
        Subspace { ambient, rows }
    }

    /// The span of the given vectors, with the elimination constraints.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> (Subspace, Vec<MultiPoly>) {
        for v in vectors {
            assert_eq!(v.len(), ambient, "span vector has wrong length");
        }
        if vectors.is_empty() {
            return (Subspace::zero(ambient), Vec::new());
        }
        let e = ScalarMatrix::from_rows(vectors.to_vec()).eliminate();
        let rows = (0..e.rank).map(|r| e.rref.row(r)).collect();
        (Subspace { ambient, rows }, e.exceptional)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The canonical echelon basis rows.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|row| row.iter().position(|e| !e.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// Reduces a vector against the basis; the remainder is zero exactly
    /// when the vector lies in the subspace (generically in any parameters).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut rem: Vec<Scalar> = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots().iter()) {
            if rem[p].is_zero() {
                continue;
            }
            let f = rem[p].clone();
            for c in 0..self.ambient {
                rem[c] = rem[c].sub(&f.mul(&row[c]));
            }
        }
        rem
    }

    /// Membership of a single vector.
    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Containment of another subspace.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }

    /// The sum of two subspaces, with elimination constraints.
    pub fn sum(&self, other: &Subspace) -> (Subspace, Vec<MultiPoly>) {
        assert_eq!(self.ambient, other.ambient);
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, &vectors)
    }

    /// The intersection of two subspaces, with elimination constraints.
    ///
    /// A vector lies in both spaces exactly when it is `a·R` for some
    /// coefficient row `a` with `a·R − b·S = 0`; such pairs `(a, b)` form
    /// the kernel of the matrix whose columns are the transposed bases.
    pub fn intersect(&self, other: &Subspace) -> (Subspace, Vec<MultiPoly>) {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return (Subspace::zero(self.ambient), Vec::new());
        }
        let r = self.dim();
        let s = other.dim();
        let mut data = Vec::with_capacity(self.ambient * (r + s));
        for c in 0..self.ambient {
            for row in &self.rows {
                data.push(row[c].clone());
            }
            for row in &other.rows {
                data.push(row[c].neg());
            }
        }
        let e = ScalarMatrix::new(self.ambient, r + s, data).eliminate();
        let mut exceptional = e.exceptional;
        let mut vectors = Vec::new();
        for kvec in &e.kernel {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (ai, row) in self.rows.iter().enumerate() {
                if kvec[ai].is_zero() {
                    continue;
                }
                for c in 0..self.ambient {
                    v[c] = v[c].add(&kvec[ai].mul(&row[c]));
                }
            }
            vectors.push(v);
        }
        let (space, more) = Subspace::span(self.ambient, &vectors);
        exceptional.extend(more);
        (space, exceptional)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let coords: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                format!("({})", coords.join(", "))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}
