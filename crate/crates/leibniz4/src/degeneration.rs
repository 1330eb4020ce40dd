//! Degeneration certificates and their exact verification.
//!
//! A degeneration from a structure `A` to a structure `B` is witnessed by a
//! parametrised change of basis `E_1(t), ..., E_n(t)`: rewriting the product
//! of `A` in that basis yields structure constants that are rational
//! functions of `t`, and the certificate verifies when every one of them has
//! a limit at `t = 0` that equals the corresponding constant of `B` exactly.
//! All arithmetic is exact, so a `Verified` verdict is a proof that `B` lies
//! in the orbit closure of `A` — there is no numerical tolerance anywhere.
//!
//! When the source is a family, the certificate's `index` block pins each
//! source parameter to a rational function of `t` and of the *target*
//! parameters, selecting which member of the family degenerates for each
//! member of the target family.  A verified symbolic certificate then proves
//! the assertion for every target parameter value outside the finitely many
//! collected in [`DegenerationReport::exceptional_params`].
//! [`family_coverage`] closes that gap: the target family is a polynomial
//! curve of structures, the orbit closure of the source is Zariski closed,
//! and a closed subset of an irreducible curve that misses only finitely
//! many points is the whole curve — so the excepted members are in the
//! closure too, and are listed individually for independent re-checking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraStructure;
use crate::exactmath::gcd::{split_constraint, squarefree_part};
use crate::exactmath::roots::univariate_roots;
use crate::exactmath::{ExactError, GaussianRational, MultiPoly, Scalar, ScalarMatrix};

/// Name of the degeneration parameter.  Reserved: it may not be used as a
/// family parameter by any structure in a verification.
pub const DEGENERATION_PARAM: &str = "t";

// ---- Certificates ----

/// A witness for a degeneration, as stored on disk and in the bundle.
///
/// Row `i` of `basis` holds the coordinates of `E_i(t)` in the source basis;
/// entries are rational in `t` and in the target's parameters.  `index` binds
/// each source parameter to the member of the source family used along the
/// curve, again rational in `t` and the target parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationCertificate {
    pub source: String,
    pub target: String,
    pub basis: ScalarMatrix,
    pub index: Vec<(String, Scalar)>,
}

/// Problems with a certificate itself, as opposed to a failed verification.
#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed certificate: {0}")]
    Shape(String),
    #[error("change of basis is singular for every t")]
    SingularBasis,
    #[error("index leaves the source family: restriction `{0}` vanishes identically")]
    RestrictionViolated(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl DegenerationCertificate {
    /// The trivial certificate: identity basis, parameters bound to
    /// themselves.  Verifies a structure against itself unchanged.
    pub fn identity(of: &AlgebraStructure) -> Self {
        DegenerationCertificate {
            source: of.label.clone(),
            target: of.label.clone(),
            basis: ScalarMatrix::identity(of.dim),
            index: of
                .params
                .iter()
                .map(|p| (p.clone(), Scalar::param(p)))
                .collect(),
        }
    }

    /// The canonical certificate `E_i = t e_i` sending any structure to the
    /// zero product: every transported constant is `t` times the original,
    /// so the limit vanishes identically.
    pub fn zero_target(of: &AlgebraStructure) -> Self {
        let t = Scalar::param(DEGENERATION_PARAM);
        let rows = (0..of.dim)
            .map(|i| {
                (0..of.dim)
                    .map(|j| if i == j { t.clone() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        DegenerationCertificate {
            source: of.label.clone(),
            target: "zero".to_string(),
            basis: ScalarMatrix::from_rows(rows),
            index: of
                .params
                .iter()
                .map(|p| (p.clone(), Scalar::param(p)))
                .collect(),
        }
    }

    /// Parses the on-disk format: `source:` and `target:` headers, a
    /// `basis:` block of `n` comma-separated rows, and an optional `index:`
    /// block of `name = expression` lines.  Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut source = None;
        let mut target = None;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut index: Vec<(String, Scalar)> = Vec::new();
        #[derive(PartialEq)]
        enum Block {
            Header,
            Basis,
            Index,
        }
        let mut block = Block::Header;
        let fail = |line: usize, message: &str| CertificateError::Parse {
            line,
            message: message.to_string(),
        };
        for (num, raw) in text.lines().enumerate() {
            let line = num + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if let Some(rest) = body.strip_prefix("source:") {
                source = Some(rest.trim().to_string());
                block = Block::Header;
                continue;
            }
            if let Some(rest) = body.strip_prefix("target:") {
                target = Some(rest.trim().to_string());
                block = Block::Header;
                continue;
            }
            if body == "basis:" {
                block = Block::Basis;
                continue;
            }
            if body == "index:" {
                block = Block::Index;
                continue;
            }
            match block {
                Block::Header => {
                    return Err(fail(line, "expected `source:`, `target:`, `basis:` or `index:`"));
                }
                Block::Basis => {
                    let mut row = Vec::new();
                    for piece in body.split(',') {
                        let s = crate::exactmath::parse::parse_scalar(piece, None)
                            .map_err(|e| fail(line, &format!("bad basis entry: {e}")))?;
                        row.push(s);
                    }
                    rows.push(row);
                }
                Block::Index => {
                    let (name, expr) = body
                        .split_once('=')
                        .ok_or_else(|| fail(line, "index line must read `name = expression`"))?;
                    let name = name.trim().to_string();
                    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                    {
                        return Err(fail(line, "index name must be alphanumeric"));
                    }
                    if index.iter().any(|(n, _)| *n == name) {
                        return Err(fail(line, "index binds the same parameter twice"));
                    }
                    let value = crate::exactmath::parse::parse_scalar(expr, None)
                        .map_err(|e| fail(line, &format!("bad index value: {e}")))?;
                    index.push((name, value));
                }
            }
        }
        let source = source.ok_or_else(|| fail(0, "missing `source:` header"))?;
        let target = target.ok_or_else(|| fail(0, "missing `target:` header"))?;
        if rows.is_empty() {
            return Err(fail(0, "missing `basis:` block"));
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CertificateError::Shape(format!(
                "basis must be square, found {} rows of widths {:?}",
                n,
                rows.iter().map(|r| r.len()).collect::<Vec<_>>()
            )));
        }
        Ok(DegenerationCertificate {
            source,
            target,
            basis: ScalarMatrix::from_rows(rows),
            index,
        })
    }

    /// Serialises in the same format `parse` reads; `parse(to_text(c)) == c`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("source: {}\n", self.source));
        out.push_str(&format!("target: {}\n", self.target));
        out.push_str("basis:\n");
        for i in 0..self.basis.rows() {
            let row: Vec<String> = self.basis.row(i).iter().map(|s| s.to_string()).collect();
            out.push_str(&row.join(", "));
            out.push('\n');
        }
        if !self.index.is_empty() {
            out.push_str("index:\n");
            for (name, value) in &self.index {
                out.push_str(&format!("{name} = {value}\n"));
            }
        }
        out
    }
}

// ---- Verification ----

/// Outcome of checking one certificate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => write!(f, "verified"),
            Verdict::Failed => write!(f, "failed"),
        }
    }
}

/// Full account of a verification run.
///
/// `transported` holds the structure constants of the source rewritten in the
/// certificate basis, indexed like [`AlgebraStructure::constants`]; `limit`
/// holds their values at `t = 0` (empty on early failure).  `exceptional_t`
/// lists the monic factors whose vanishing makes some `t != 0` inadmissible
/// (singular basis, violated source restriction); `exceptional_params` lists
/// the factors in target parameters at which the symbolic verification does
/// not apply and the family member needs separate treatment.
#[derive(Clone, Debug)]
pub struct DegenerationReport {
    pub verdict: Verdict,
    pub transported: Vec<Scalar>,
    pub limit: Vec<Scalar>,
    pub exceptional_t: Vec<MultiPoly>,
    pub exceptional_params: Vec<MultiPoly>,
    pub failure: Option<String>,
}

/// Collects zero loci and routes each squarefree factor either to the
/// exceptional `t` set or to the target-parameter locus.
#[derive(Default)]
struct FactorSink {
    t_set: Vec<MultiPoly>,
    params: Vec<MultiPoly>,
}

impl FactorSink {
    fn add(&mut self, p: &MultiPoly) {
        for f in split_constraint(p) {
            let f = squarefree_part(&f).monic();
            let dest = if f.degree_in(DEGENERATION_PARAM) > 0 {
                &mut self.t_set
            } else {
                &mut self.params
            };
            if !dest.contains(&f) {
                dest.push(f);
            }
        }
    }

    fn finish(mut self) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
        self.t_set.sort_by_key(|p| p.to_string());
        self.params.sort_by_key(|p| p.to_string());
        (self.t_set, self.params)
    }
}

/// Substitutes exact values for family parameters, keeping the structure
/// inside its family: errors if a restriction vanishes identically under the
/// substitution.
pub fn specialize_family(
    a: &AlgebraStructure,
    bindings: &BTreeMap<String, Scalar>,
) -> Result<AlgebraStructure, ExactError> {
    let out = a.substitute(bindings)?;
    for (old, new) in a.restrictions.iter().zip(&out.restrictions) {
        if new.is_zero() {
            return Err(ExactError::ExceptionalValue {
                denominator: old.to_string(),
            });
        }
    }
    Ok(out)
}

fn check_shape(
    cert: &DegenerationCertificate,
    source: &AlgebraStructure,
    target_params: &[String],
) -> Result<(), CertificateError> {
    let n = source.dim;
    if cert.basis.rows() != n || cert.basis.cols() != n {
        return Err(CertificateError::Shape(format!(
            "basis is {}x{} but the source has dimension {}",
            cert.basis.rows(),
            cert.basis.cols(),
            n
        )));
    }
    let bound: BTreeSet<&String> = cert.index.iter().map(|(name, _)| name).collect();
    let declared: BTreeSet<&String> = source.params.iter().collect();
    if bound != declared {
        return Err(CertificateError::Shape(format!(
            "index binds {:?} but the source declares parameters {:?}",
            bound.iter().collect::<Vec<_>>(),
            declared.iter().collect::<Vec<_>>()
        )));
    }
    let mut allowed: BTreeSet<String> = target_params.iter().cloned().collect();
    allowed.insert(DEGENERATION_PARAM.to_string());
    // A source parameter bound to itself stays a free symbol: the
    // verification is then uniform in that family member.
    for (name, value) in &cert.index {
        if *value == Scalar::param(name) {
            allowed.insert(name.clone());
        }
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for i in 0..n {
        for s in cert.basis.row(i) {
            seen.extend(s.params());
        }
    }
    for (_, v) in &cert.index {
        seen.extend(v.params());
    }
    if let Some(stray) = seen.difference(&allowed).next() {
        return Err(CertificateError::Shape(format!(
            "symbol `{stray}` is neither `{DEGENERATION_PARAM}` nor a target parameter"
        )));
    }
    Ok(())
}

/// Rewrites the source product in the certificate basis.  Returns the
/// transported structure constants, rational in `t` and the target
/// parameters, indexed like [`AlgebraStructure::constants`].
pub fn transport(
    cert: &DegenerationCertificate,
    source: &AlgebraStructure,
) -> Result<Vec<Scalar>, CertificateError> {
    let (constants, _, _) = transport_full(cert, source, None)?;
    Ok(constants)
}

/// Transport plus the bookkeeping `verify_degeneration` needs: the
/// specialized source member and the collected exceptional factors.
fn transport_full(
    cert: &DegenerationCertificate,
    source: &AlgebraStructure,
    target_params: Option<&[String]>,
) -> Result<(Vec<Scalar>, AlgebraStructure, FactorSink), CertificateError> {
    // With unknown target parameters (`transport` entry point) accept every
    // symbol the certificate itself uses.
    let inferred: Vec<String>;
    let allowed = match target_params {
        Some(params) => params,
        None => {
            let mut all: BTreeSet<String> = BTreeSet::new();
            for i in 0..cert.basis.rows() {
                for s in cert.basis.row(i) {
                    all.extend(s.params());
                }
            }
            for (_, v) in &cert.index {
                all.extend(v.params());
            }
            all.remove(DEGENERATION_PARAM);
            inferred = all.into_iter().collect();
            &inferred
        }
    };
    check_shape(cert, source, allowed)?;
    let n = source.dim;
    let bindings: BTreeMap<String, Scalar> = cert.index.iter().cloned().collect();
    let specialized = source.substitute(&bindings)?;
    let mut changed_restrictions = Vec::new();
    for (old, new) in source.restrictions.iter().zip(&specialized.restrictions) {
        if new.is_zero() {
            return Err(CertificateError::RestrictionViolated(old.to_string()));
        }
        // A restriction the index leaves untouched excludes the same members
        // it always excluded; only transformed ones cut the curve.
        if squarefree_part(new).monic() != squarefree_part(old).monic() {
            changed_restrictions.push(new.clone());
        }
    }
    let det = cert.basis.det();
    if det.is_zero() {
        return Err(CertificateError::SingularBasis);
    }
    let mut sink = FactorSink::default();
    sink.add(det.numer());
    for i in 0..n {
        for s in cert.basis.row(i) {
            sink.add(s.denom());
        }
    }
    for (_, v) in &cert.index {
        sink.add(v.denom());
    }
    for r in &changed_restrictions {
        sink.add(r);
    }
    let transposed = cert.basis.transpose();
    let inverse = transposed.inverse()?;
    let mut constants = vec![Scalar::zero(); n * n * n];
    for i in 0..n {
        let ei = cert.basis.row(i);
        for j in 0..n {
            let product = specialized.mul(&ei, &cert.basis.row(j));
            let coords = inverse.mul_vec(&product);
            for (k, c) in coords.into_iter().enumerate() {
                sink.add(c.denom());
                constants[(i * n + j) * n + k] = c;
            }
        }
    }
    Ok((constants, specialized, sink))
}

/// Checks a certificate exactly: the transported constants must be regular
/// at `t = 0` and their limit must equal the target's constants identically
/// in the target parameters.  Failures name the first offending product.
pub fn verify_degeneration(
    cert: &DegenerationCertificate,
    source: &AlgebraStructure,
    target: &AlgebraStructure,
) -> Result<DegenerationReport, CertificateError> {
    if source.dim != target.dim {
        return Err(CertificateError::Shape(format!(
            "source has dimension {} but target has dimension {}",
            source.dim, target.dim
        )));
    }
    let (transported, _specialized, mut sink) = transport_full(cert, source, Some(&target.params))?;
    let n = source.dim;
    let at_zero: BTreeMap<String, Scalar> =
        [(DEGENERATION_PARAM.to_string(), Scalar::zero())].into();
    let mut limit = vec![Scalar::zero(); n * n * n];
    let mut failure = None;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let idx = (i * n + j) * n + k;
                match transported[idx].substitute(&at_zero) {
                    Ok(value) => {
                        sink.add(value.denom());
                        limit[idx] = value;
                    }
                    Err(_) => {
                        failure = Some(format!(
                            "coordinate {} of E_{} E_{} has no limit at t = 0: {}",
                            k + 1,
                            i + 1,
                            j + 1,
                            transported[idx]
                        ));
                        break 'outer;
                    }
                }
                let diff = limit[idx].sub(target.c(i, j, k));
                if !diff.is_zero() {
                    failure = Some(format!(
                        "coordinate {} of E_{} E_{} tends to {} but the target wants {}",
                        k + 1,
                        i + 1,
                        j + 1,
                        limit[idx],
                        target.c(i, j, k)
                    ));
                    break 'outer;
                }
            }
        }
    }
    let (exceptional_t, exceptional_params) = sink.finish();
    Ok(DegenerationReport {
        verdict: if failure.is_none() {
            Verdict::Verified
        } else {
            Verdict::Failed
        },
        transported,
        limit,
        exceptional_t,
        exceptional_params,
        failure,
    })
}

// ---- Family coverage ----

/// How a verified symbolic certificate covers the target family.
///
/// `excluded_by_restriction` lists exceptional factors that coincide with a
/// restriction of the target family — those members do not belong to the
/// family, so nothing is claimed about them.  `exceptional_points` lists the
/// concrete parameter values excluded by the remaining factors; each is
/// nevertheless in the source's orbit closure by the curve argument in the
/// module documentation, provided the target constants are polynomial in
/// that parameter.  `unresolved` collects factors the curve argument does
/// not reach (several parameters at once, or irrational zeros); coverage is
/// `full` only when it is empty.
#[derive(Clone, Debug)]
pub struct FamilyCoverage {
    pub full: bool,
    pub excluded_by_restriction: Vec<MultiPoly>,
    pub exceptional_points: Vec<(String, GaussianRational)>,
    pub unresolved: Vec<MultiPoly>,
}

/// Classifies the exceptional target-parameter locus of a verified report.
pub fn family_coverage(
    report: &DegenerationReport,
    target: &AlgebraStructure,
) -> FamilyCoverage {
    let mut excluded = Vec::new();
    let mut points = Vec::new();
    let mut unresolved = Vec::new();
    for f in &report.exceptional_params {
        if target
            .restrictions
            .iter()
            .any(|r| squarefree_part(r).monic() == *f)
        {
            excluded.push(f.clone());
            continue;
        }
        let active: Vec<String> = f
            .vars()
            .iter()
            .filter(|v| f.degree_in(v) > 0)
            .cloned()
            .collect();
        // The curve argument needs a polynomial one-parameter family: the
        // factor must involve a single target parameter and the target's
        // constants must have denominators free of it.
        let curve_ok = active.len() == 1 && target.params.contains(&active[0]) && {
            let v = &active[0];
            target
                .constants
                .iter()
                .all(|c| c.denom().degree_in(v) == 0)
        };
        if !curve_ok {
            unresolved.push(f.clone());
            continue;
        }
        match univariate_roots(f) {
            Some(analysis) if analysis.all_roots_found => {
                for root in analysis.roots {
                    points.push((active[0].clone(), root));
                }
            }
            _ => unresolved.push(f.clone()),
        }
    }
    points.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.to_string().cmp(&b.1.to_string())));
    points.dedup();
    FamilyCoverage {
        full: unresolved.is_empty(),
        excluded_by_restriction: excluded,
        exceptional_points: points,
        unresolved,
    }
}

// ---- Chains ----

/// Reflexive-transitive closure of a set of verified degenerations.
///
/// Returns, for every reachable ordered pair, one witnessing chain of labels
/// from source to target (shortest, ties broken lexicographically); the
/// chain for `(x, x)` is `[x]`.  Degeneration is transitive because orbit
/// closures nest, so each chain certifies its derived edge.
pub fn closure_chain(edges: &[(String, String)]) -> BTreeMap<(String, String), Vec<String>> {
    let mut nodes: BTreeSet<String> = BTreeSet::new();
    let mut adjacency: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (s, t) in edges {
        nodes.insert(s.clone());
        nodes.insert(t.clone());
        adjacency.entry(s.clone()).or_default().insert(t.clone());
    }
    let mut out: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for start in &nodes {
        let mut queue = std::collections::VecDeque::new();
        out.insert((start.clone(), start.clone()), vec![start.clone()]);
        queue.push_back(start.clone());
        while let Some(u) = queue.pop_front() {
            let path = out[&(start.clone(), u.clone())].clone();
            if let Some(nexts) = adjacency.get(&u) {
                for v in nexts {
                    let key = (start.clone(), v.clone());
                    if !out.contains_key(&key) {
                        let mut extended = path.clone();
                        extended.push(v.clone());
                        out.insert(key, extended);
                        queue.push_back(v.clone());
                    }
                }
            }
        }
    }
    out
}
