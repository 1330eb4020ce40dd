//! Fraction-field Gaussian elimination over `Scalar` entries.
//!
//! Elimination tracks the exceptional parameter locus: the generic rank,
//! kernel, and inverse are valid at every parameter value where no recorded
//! constraint polynomial vanishes. Constraints are the nonconstant factors of
//! the numerators of used pivots and of the denominators of the input
//! entries; constant pivots are preferred so the locus stays small.

use super::gcd::split_constraint;
use super::poly::MultiPoly;
use super::scalar::Scalar;
use super::ExactError;

#[derive(Clone, PartialEq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of reduced-row-echelon elimination.
pub struct Elimination {
    pub rank: usize,
    pub rref: ScalarMatrix,
    /// Pivot column of each of the first `rank` rows of `rref`.
    pub pivots: Vec<usize>,
    /// Basis of the right kernel, one vector per free column.
    pub kernel: Vec<Vec<Scalar>>,
    /// Nonconstant constraint polynomials; off their zero sets the generic
    /// pivot pattern (hence rank and kernel) specializes exactly.
    pub exceptional: Vec<MultiPoly>,
}

impl ScalarMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        ScalarMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScalarMatrix::zero(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut m = ScalarMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = ScalarMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(rhs.at(k, c)));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with rank, kernel, and exceptional locus.
    pub fn eliminate(&self) -> Elimination {
        let mut m = self.clone();
        let mut exceptional: Vec<MultiPoly> = Vec::new();
        for e in &self.data {
            record_constraints(&mut exceptional, e.denom());
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            // Prefer a parameter-free pivot so no constraint is introduced.
            let mut choice: Option<usize> = None;
            for r in rank..m.rows {
                let e = m.at(r, col);
                if e.is_zero() {
                    continue;
                }
                if e.is_constant() {
                    choice = Some(r);
                    break;
                }
                if choice.is_none() {
                    choice = Some(r);
                }
            }
            let Some(pr) = choice else { continue };
            let pivot = m.at(pr, col).clone();
            record_constraints(&mut exceptional, pivot.numer());
            m.swap_rows(rank, pr);
            let inv = pivot.inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.at(rank, c).mul(&inv);
                *m.at_mut(rank, c) = v;
            }
            for r in 0..m.rows {
                if r == rank || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).sub(&f.mul(m.at(rank, c)));
                    *m.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let kernel = kernel_from_rref(&m, &pivots);
        Elimination {
            rank,
            rref: m,
            pivots,
            kernel,
            exceptional,
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.eliminate().kernel
    }

    /// Exact inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<ScalarMatrix, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = ScalarMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Scalar::one();
        }
        let e = aug.eliminate();
        // Singular iff some pivot falls outside the left block.
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(ExactError::SingularMatrix);
        }
        let mut out = ScalarMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *out.at_mut(r, c) = e.rref.at(r, n + c).clone();
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix, by forward elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let mut pr = None;
            for r in col..n {
                if !m.at(r, col).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { return Scalar::zero() };
            if pr != col {
                m.swap_rows(col, pr);
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).mul(&inv);
                for c in col..n {
                    let v = m.at(r, c).sub(&f.mul(m.at(col, c)));
                    *m.at_mut(r, c) = v;
                }
            }
        }
        det
    }

    /// Solves `self * x = b`; `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = ScalarMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let e = aug.eliminate();
        if e.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.rref.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// All r-by-r minors, as (row set, column set, determinant).
    pub fn minors(&self, r: usize) -> Vec<(Vec<usize>, Vec<usize>, Scalar)> {
        let row_sets = combinations(self.rows, r);
        let col_sets = combinations(self.cols, r);
        let mut out = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let mut sub = ScalarMatrix::zero(r, r);
                for (i, &ri) in rs.iter().enumerate() {
                    for (j, &cj) in cs.iter().enumerate() {
                        *sub.at_mut(i, j) = self.at(ri, cj).clone();
                    }
                }
                out.push((rs.clone(), cs.clone(), sub.det()));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

fn kernel_from_rref(rref: &ScalarMatrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let mut kernel = Vec::new();
    for j in 0..rref.cols {
        if pivots.contains(&j) {
            continue;
        }
        let mut v = vec![Scalar::zero(); rref.cols];
        v[j] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = rref.at(row, j).neg();
        }
        kernel.push(v);
    }
    kernel
}

/// Records the nonconstant variable-separated factors of `p`.
fn record_constraints(out: &mut Vec<MultiPoly>, p: &MultiPoly) {
    if p.is_constant() {
        return;
    }
    for f in split_constraint(p) {
        if !out.contains(&f) {
            out.push(f);
        }
    }
}

/// All size-`k` subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl std::fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ScalarMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
