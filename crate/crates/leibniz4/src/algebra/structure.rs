use std::collections::BTreeMap;
use std::fmt;

use crate::exactmath::{ExactError, MultiPoly, Scalar, ScalarMatrix};

/// An algebra presented by structure constants, possibly parametric.
///
/// `constants[(i*dim + j)*dim + k]` is the coefficient of `e_k` in the
/// product `e_i e_j` (all indices zero-based).  `params` lists the parameter
/// names in order; every parameter used by a constant must be declared.
/// `restrictions` holds polynomials in the parameters that must remain
/// nonzero for a parameter choice to belong to the family.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraStructure {
    pub label: String,
    pub dim: usize,
    pub params: Vec<String>,
    pub constants: Vec<Scalar>,
    pub restrictions: Vec<MultiPoly>,
}

impl AlgebraStructure {
    /// The zero algebra of the given dimension.
    pub fn zero(label: &str, dim: usize) -> AlgebraStructure {
        AlgebraStructure {
            label: label.to_string(),
            dim,
            params: Vec::new(),
            constants: vec![Scalar::zero(); dim * dim * dim],
            restrictions: Vec::new(),
        }
    }

    /// Index of the constant `c_{i,j}^k`.
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dim && j < self.dim && k < self.dim);
        (i * self.dim + j) * self.dim + k
    }

    /// The structure constant `c_{i,j}^k` (zero-based indices).
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[self.idx(i, j, k)]
    }

    /// Sets the constant `c_{i,j}^k`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let at = self.idx(i, j, k);
        self.constants[at] = value;
    }

    /// The coordinate vector of the basis product `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    /// The product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let f = x[i].mul(&y[j]);
                for k in 0..self.dim {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&f.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Checks structural invariants: the constant table has the right size
    /// and every parameter in use is declared.
    pub fn validate(&self) -> Result<(), ExactError> {
        if self.constants.len() != self.dim * self.dim * self.dim {
            return Err(ExactError::DimensionMismatch(format!(
                "{}: expected {} constants, found {}",
                self.label,
                self.dim * self.dim * self.dim,
                self.constants.len()
            )));
        }
        for used in self.params_in_use() {
            if !self.params.contains(&used) {
                return Err(ExactError::UnboundParameter { name: used });
            }
        }
        Ok(())
    }

    /// Parameter names appearing in the constants or restrictions.
    pub fn params_in_use(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for s in &self.constants {
            for p in s.params() {
                if !names.contains(&p) {
                    names.push(p);
                }
            }
        }
        for r in &self.restrictions {
            for p in r.vars() {
                if !names.contains(p) {
                    names.push(p.clone());
                }
            }
        }
        names.sort();
        names
    }

    /// Nonzero coordinates of the defining identity's defect
    /// `(e_i e_j) e_l − (e_i e_l) e_j − e_i (e_j e_l)`, indexed by
    /// `(i, j, l, k)`.  An empty list means the identity holds for every
    /// parameter value.
    pub fn leibniz_defect(&self) -> Vec<(usize, usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut d = Scalar::zero();
                        for m in 0..n {
                            d = d
                                .add(&self.c(i, j, m).mul(self.c(m, l, k)))
                                .sub(&self.c(i, l, m).mul(self.c(m, j, k)))
                                .sub(&self.c(j, l, m).mul(self.c(i, m, k)));
                        }
                        if !d.is_zero() {
                            out.push((i, j, l, k, d));
                        }
                    }
                }
            }
        }
        out
    }

    /// True when the defining identity holds identically in the parameters.
    pub fn is_leibniz(&self) -> bool {
        self.leibniz_defect().is_empty()
    }

    /// True when `e_i e_j + e_j e_i = 0` identically for all basis pairs.
    pub fn is_anticommutative(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if !self.c(i, j, k).add(self.c(j, i, k)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True for anticommutative structures satisfying the defining identity;
    /// together these make the product a Lie bracket.
    pub fn is_lie(&self) -> bool {
        self.is_anticommutative() && self.is_leibniz()
    }

    /// The basis-change action: the structure whose product is
    /// `(x, y) ↦ g·μ(g⁻¹x, g⁻¹y)`.  Fails on singular `g`.
    pub fn act(&self, g: &ScalarMatrix) -> Result<AlgebraStructure, ExactError> {
        let n = self.dim;
        if g.rows() != n || g.cols() != n {
            return Err(ExactError::DimensionMismatch(format!(
                "action of {}x{} matrix on dimension {}",
                g.rows(),
                g.cols(),
                n
            )));
        }
        let ginv = g.inverse()?;
        let mut out = self.clone();
        for i in 0..n {
            let gi: Vec<Scalar> = (0..n).map(|r| ginv.at(r, i).clone()).collect();
            for j in 0..n {
                let gj: Vec<Scalar> = (0..n).map(|r| ginv.at(r, j).clone()).collect();
                let prod = self.mul(&gi, &gj);
                let image = g.mul_vec(&prod);
                for k in 0..n {
                    let at = self.idx(i, j, k);
                    out.constants[at] = image[k].clone();
                }
            }
        }
        for p in out.params_in_use() {
            if !out.params.contains(&p) {
                out.params.push(p);
            }
        }
        Ok(out)
    }

    /// Substitutes values for parameters in every constant and restriction.
    /// Substituted restrictions keep their nonvanishing meaning: each becomes
    /// the numerator of the substituted value, and `restrictions_hold`
    /// reports whether none collapsed to zero.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Scalar>,
    ) -> Result<AlgebraStructure, ExactError> {
        let mut out = self.clone();
        for c in &mut out.constants {
            *c = c.substitute(bindings)?;
        }
        let mut restrictions = Vec::new();
        for r in &self.restrictions {
            let s = Scalar::from_poly(r.clone()).substitute(bindings)?;
            restrictions.push(s.numer().clone());
        }
        out.restrictions = restrictions;
        out.params = self
            .params
            .iter()
            .filter(|p| !bindings.contains_key(*p))
            .cloned()
            .collect();
        for (_, v) in bindings {
            for p in v.params() {
                if !out.params.contains(&p) {
                    out.params.push(p);
                }
            }
        }
        Ok(out)
    }

    /// True when no restriction is identically zero, i.e. the parameter
    /// choice (after substitution) still lies in the family.
    pub fn restrictions_hold(&self) -> bool {
        self.restrictions.iter().all(|r| !r.is_zero())
    }

    /// Renames every parameter through the given map; unmentioned names are
    /// kept.  Used to avoid collisions when two structures meet in one
    /// computation.
    pub fn rename_params(&self, renames: &BTreeMap<String, String>) -> AlgebraStructure {
        let bindings: BTreeMap<String, Scalar> = renames
            .iter()
            .map(|(from, to)| (from.clone(), Scalar::param(to)))
            .collect();
        let mut out = self
            .substitute(&bindings)
            .expect("renaming parameters cannot fail");
        out.params = self
            .params
            .iter()
            .map(|p| renames.get(p).cloned().unwrap_or_else(|| p.clone()))
            .collect();
        out
    }
}

impl fmt::Display for AlgebraStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (dim {})", self.label, self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let terms: Vec<String> = (0..self.dim)
                    .filter(|&k| !self.c(i, j, k).is_zero())
                    .map(|k| {
                        let c = self.c(i, j, k);
                        if c.is_one() {
                            format!("e{}", k + 1)
                        } else {
                            format!("({})*e{}", c, k + 1)
                        }
                    })
                    .collect();
                if !terms.is_empty() {
                    writeln!(f, "  e{} e{} = {}", i + 1, j + 1, terms.join(" + "))?;
                }
            }
        }
        Ok(())
    }
}
