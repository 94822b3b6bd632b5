//! Substitution matrices over the diagonal basis: construction schemes for
//! odd and even n, exact eigen-relation checks, primitivity, minimal
//! inflation multipliers and the exhaustive minimality scan, and conjugation
//! by an integer transformation matrix.

use crate::cyclo::{totient, CycloInt};
use crate::diag::DiagElem;
use crate::error::CastError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Non-negative integer matrix acting on the reduced diagonal eigenvector
/// `x_A = (mu_{n,floor(n/2)}, ..., mu_{n,1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct SubstMatrix {
    n: usize,
    dim: usize,
    entries: Vec<BigInt>, // row-major
}

impl fmt::Debug for SubstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubstMatrix(n={}, dim={})\n{}", self.n, self.dim, self.to_grid_string())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl Serialize for SubstMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| i64::try_from(self.get(i, j)).map_err(|_| serde::ser::Error::custom("entry exceeds i64")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        MatrixRepr { n: self.n, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubstMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let dim = r.entries.len();
        if r.entries.iter().any(|row| row.len() != dim) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        let entries = r.entries.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Ok(SubstMatrix { n: r.n, dim, entries })
    }
}

impl SubstMatrix {
    pub fn from_rows(n: usize, rows: &[Vec<i64>]) -> Result<Self, CastError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(CastError::Domain("matrix must be square and non-empty".into()));
        }
        let entries = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Ok(SubstMatrix { n, dim, entries })
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        SubstMatrix { n, dim, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self, CastError> {
        if self.dim != other.dim {
            return Err(CastError::Domain("dimension mismatch".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(SubstMatrix { n: self.n, dim: self.dim, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CastError> {
        if self.dim != other.dim {
            return Err(CastError::Domain("dimension mismatch".into()));
        }
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let t = a * other.get(k, j);
                    entries[i * d + j] += t;
                }
            }
        }
        Ok(SubstMatrix { n: self.n, dim: d, entries })
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.get(i, j).clone();
            }
        }
        SubstMatrix { n: self.n, dim: d, entries }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SubstMatrix::identity(self.n, self.dim);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dim");
        }
        acc
    }

    /// Right-aligned integer grid.
    pub fn to_grid_string(&self) -> String {
        let width = self.entries.iter().map(|e| e.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.dim {
            out.push_str("[ ");
            for j in 0..self.dim {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{:>width$}", self.get(i, j).to_string(), width = width));
            }
            out.push_str(" ]\n");
        }
        out
    }
}

/// Reduced eigenvector x_A: entries mu_{n,m}, mu_{n,m-1}, ..., mu_{n,1}.
pub fn area_eigenvector(n: usize) -> Vec<DiagElem> {
    let m = n / 2;
    (0..m).map(|r| DiagElem::mu(n, m - r).expect("valid index")).collect()
}

/// Reduced frequency eigenvector x_f: equal to x_A for odd n; for even n,
/// every entry except the top is doubled.
pub fn frequency_eigenvector(n: usize) -> Vec<DiagElem> {
    let mut v = area_eigenvector(n);
    if n % 2 == 0 {
        for entry in v.iter_mut().skip(1) {
            *entry = entry.scale(&BigInt::from(2));
        }
    }
    v
}

/// Basis matrix M_{n,k}: the reduced floor(n/2)-dimensional matrix with exact
/// eigen-relation M_{n,k} x_A = mu_{n,k} x_A. Row r of the matrix expands
/// mu_{n,k} * x_A[r] over the entries of x_A.
pub fn basis_matrix(n: usize, k: usize) -> Result<SubstMatrix, CastError> {
    let m = n / 2;
    if k < 1 || k > m {
        return Err(CastError::Domain(format!("basis index {} outside [1, {}]", k, m)));
    }
    let mu_k = DiagElem::mu(n, k)?;
    let mut mat = SubstMatrix { n, dim: m, entries: vec![BigInt::zero(); m * m] };
    for r in 0..m {
        let d_r = m - r;
        let prod = mu_k.dpf_mul(&DiagElem::mu(n, d_r)?)?;
        for c in 0..m {
            let d_c = m - c;
            mat.set(r, c, prod.coeffs()[d_c - 1].clone());
        }
    }
    Ok(mat)
}

/// M_n = sum c_k M_{n,k}; `c` is listed c_1 first.
pub fn compose(n: usize, c: &[BigInt]) -> Result<SubstMatrix, CastError> {
    let m = n / 2;
    if c.len() != m {
        return Err(CastError::Domain(format!("coefficient length {} != floor(n/2) = {}", c.len(), m)));
    }
    if c.iter().any(|v| v.is_negative()) {
        return Err(CastError::Domain("coefficients must be non-negative".into()));
    }
    if c.iter().all(|v| v.is_zero()) {
        return Err(CastError::Domain("coefficients must not be all zero".into()));
    }
    let mut acc = SubstMatrix { n, dim: m, entries: vec![BigInt::zero(); m * m] };
    for (i, ck) in c.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let base = basis_matrix(n, i + 1)?;
        for t in 0..m * m {
            let v = &base.entries[t] * ck;
            acc.entries[t] += v;
        }
    }
    Ok(acc)
}

pub fn compose_i64(n: usize, c: &[i64]) -> Result<SubstMatrix, CastError> {
    compose(n, &c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
}

/// Coefficients read from the reversed bottom row; re-composition must
/// reproduce the matrix exactly.
pub fn coeffs_from_matrix(mat: &SubstMatrix) -> Result<Vec<BigInt>, CastError> {
    let m = mat.dim;
    let c: Vec<BigInt> = (0..m).map(|j| mat.get(m - 1, m - 1 - j).clone()).collect();
    let recomposed = compose(mat.n, &c)?;
    if recomposed != *mat {
        for i in 0..m {
            for j in 0..m {
                if recomposed.get(i, j) != mat.get(i, j) {
                    return Err(CastError::Verification(format!(
                        "matrix is not in the span of the basis matrices: first mismatch at ({}, {}): {} vs {}",
                        i, j, mat.get(i, j), recomposed.get(i, j)
                    )));
                }
            }
        }
    }
    Ok(c)
}

/// Exact verification of both eigen-relations `M x_A = lambda x_A` and
/// `M^T x_f = lambda x_f` in diagonal arithmetic. Returns the first failing
/// row on mismatch.
pub fn eigen_check(mat: &SubstMatrix, lambda: &DiagElem) -> Result<(), (usize, &'static str)> {
    let n = mat.n;
    let xa = area_eigenvector(n);
    let xf = frequency_eigenvector(n);
    for (vec, label, m) in [
        (&xa, "right (areas)", mat.clone()),
        (&xf, "left (frequencies)", mat.transpose()),
    ] {
        for i in 0..m.dim {
            let mut acc = DiagElem::zero(n);
            for j in 0..m.dim {
                let e = m.get(i, j);
                if !e.is_zero() {
                    acc = acc.add(&vec[j].scale(e)).expect("same order");
                }
            }
            let want = lambda.dpf_mul(&vec[i]).expect("same order");
            if !acc.value_equals(&want).expect("same order") {
                return Err((i, label));
            }
        }
    }
    Ok(())
}

/// Primitivity by boolean matrix powers up to the Wielandt bound
/// (dim-1)^2 + 1.
pub fn is_primitive(mat: &SubstMatrix) -> bool {
    let d = mat.dim;
    if d == 0 {
        return false;
    }
    let adj: Vec<bool> = mat.entries.iter().map(|e| e.is_positive()).collect();
    let bound = (d - 1) * (d - 1) + 1;
    let mut acc = adj.clone();
    if acc.iter().all(|&b| b) {
        return true;
    }
    for _ in 1..bound {
        let mut next = vec![false; d * d];
        for i in 0..d {
            for k in 0..d {
                if acc[i * d + k] {
                    for j in 0..d {
                        if adj[k * d + j] {
                            next[i * d + j] = true;
                        }
                    }
                }
            }
        }
        acc = next;
        if acc.iter().all(|&b| b) {
            return true;
        }
    }
    false
}

/// Smallest admissible area eigenvalue: mu_{n,3} + 1 for odd n,
/// mu_{n,2} + 2 for even n.
pub fn min_lambda(n: usize) -> Result<DiagElem, CastError> {
    if n < 4 {
        return Err(CastError::Domain("minimal multipliers are defined for n >= 4".into()));
    }
    if n % 2 == 1 {
        DiagElem::mu(n, 3)?.add(&DiagElem::from_int(n, 1))
    } else {
        DiagElem::mu(n, 2)?.add(&DiagElem::from_int(n, 2))
    }
}

/// One enumerated eigenvalue candidate in the minimality scan.
#[derive(Clone, Debug)]
pub struct CandidateVerdict {
    pub c: Vec<i64>,
    pub value: f64,
    pub equals_min: bool,
    /// Conditions the candidate violates (empty only for the minimum itself).
    pub violations: Vec<String>,
}

#[derive(Debug)]
pub struct MinimalityReport {
    pub n: usize,
    pub lambda_min: DiagElem,
    pub candidates: Vec<CandidateVerdict>,
    /// True when every candidate strictly below the minimum violates at
    /// least one admissibility condition.
    pub all_rejected: bool,
}

impl fmt::Display for MinimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "minimality scan n={}: lambda_min = {} = {:.8}",
            self.n,
            self.lambda_min,
            self.lambda_min.value_f64()
        )?;
        for cand in &self.candidates {
            if cand.equals_min {
                writeln!(f, "  c={:?} value={:.8}  == lambda_min", cand.c, cand.value)?;
            } else {
                writeln!(f, "  c={:?} value={:.8}  rejected: {}", cand.c, cand.value, cand.violations.join("; "))?;
            }
        }
        writeln!(f, "  verdict: {}", if self.all_rejected { "no smaller admissible eigenvalue" } else { "FOUND SMALLER CANDIDATE" })
    }
}

/// Exhaustively enumerate all non-negative coefficient vectors whose value
/// does not exceed lambda_min and confirm each strictly smaller candidate
/// violates an admissibility condition: b_0 >= 2, the even-n parity
/// condition, or lambda not being a rational integer.
pub fn verify_min(n: usize) -> Result<MinimalityReport, CastError> {
    let lambda_min = min_lambda(n)?;
    let min_value = lambda_min.value_f64();
    let m = n / 2;
    let mu_values: Vec<f64> = (1..=m).map(|k| DiagElem::mu(n, k).unwrap().value_f64()).collect();
    let mut candidates = Vec::new();
    let mut stack = vec![0i64; m];
    enumerate(&mut stack, 0, 0.0, min_value + 1e-9, &mu_values, &mut |c| {
        if c.iter().all(|&v| v == 0) {
            return;
        }
        candidates.push(c.to_vec());
    });
    let min_cyclo = lambda_min.to_cyclo();
    let mut out = Vec::new();
    let mut all_rejected = true;
    for c in candidates {
        let elem = DiagElem::from_coeffs_i64(n, &c)?;
        let value = elem.value_f64();
        let equals_min = elem.to_cyclo().equals(&min_cyclo)?;
        let mut violations = Vec::new();
        if !equals_min {
            // b_0 = sum of odd-index coefficients (rational part of the
            // root-of-unity expansion) must be at least 2
            let b0: i64 = c.iter().enumerate().filter(|(i, _)| (i + 1) % 2 == 1).map(|(_, v)| *v).sum();
            if b0 < 2 {
                violations.push(format!("b0 = {} < 2", b0));
            }
            if n % 2 == 0 {
                let has_odd = c.iter().enumerate().any(|(i, &v)| (i + 1) % 2 == 1 && v > 0);
                let has_even = c.iter().enumerate().any(|(i, &v)| (i + 1) % 2 == 0 && v > 0);
                if !(has_odd && has_even) {
                    violations.push("parity condition for even n fails".into());
                }
            }
            if elem.to_cyclo().as_integer().is_some() {
                violations.push("lambda is a rational integer".into());
            }
            if violations.is_empty() {
                all_rejected = false;
            }
        }
        out.push(CandidateVerdict { c, value, equals_min, violations });
    }
    Ok(MinimalityReport { n, lambda_min, candidates: out, all_rejected })
}

fn enumerate(
    c: &mut Vec<i64>,
    idx: usize,
    acc: f64,
    bound: f64,
    mu_values: &[f64],
    f: &mut impl FnMut(&[i64]),
) {
    if idx == c.len() {
        f(c);
        return;
    }
    let mut v = 0i64;
    loop {
        let used = acc + v as f64 * mu_values[idx];
        if used > bound {
            break;
        }
        c[idx] = v;
        enumerate(c, idx + 1, used, bound, mu_values, f);
        v += 1;
    }
    c[idx] = 0;
}

/// For odd n: the square of the longest-diagonal basis matrix, asserted
/// equal to the sum of all basis matrices.
pub fn longest_diag_matrix(n: usize) -> Result<SubstMatrix, CastError> {
    if n % 2 == 0 || n < 5 {
        return Err(CastError::Domain("longest-diagonal matrix requires odd n >= 5".into()));
    }
    let m = n / 2;
    let top = basis_matrix(n, m)?;
    let square = top.mul(&top)?;
    let mut sum = basis_matrix(n, 1)?;
    for k in 2..=m {
        sum = sum.add(&basis_matrix(n, k)?)?;
    }
    if square != sum {
        return Err(CastError::Verification(
            "square of the longest-diagonal matrix differs from the basis sum".into(),
        ));
    }
    // bottom row must read all-ones coefficients
    let c = coeffs_from_matrix(&square)?;
    if !c.iter().all(|v| v.is_one()) {
        return Err(CastError::Verification("longest-diagonal matrix bottom row is not all ones".into()));
    }
    Ok(square)
}

/// Check M* = T M T^{-1} indirectly: with x* = T x_A, find lambda from the
/// rows of M* by exact division and verify M* x* = lambda x* exactly.
/// Returns the eigenvalue on success.
pub fn conjugate_check(
    m_star: &[Vec<i64>],
    t: &[Vec<i64>],
    n: usize,
) -> Result<Option<DiagElem>, CastError> {
    let l = m_star.len();
    let m = n / 2;
    if l == 0 || m_star.iter().any(|r| r.len() != l) {
        return Err(CastError::Domain("M* must be square".into()));
    }
    if t.len() != l || t.iter().any(|r| r.len() != m) {
        return Err(CastError::Domain(format!("T must be {} x {}", l, m)));
    }
    let xa = area_eigenvector(n);
    // x* = T x_A in the cyclotomic ring
    let x_star: Vec<CycloInt> = (0..l)
        .map(|i| {
            let mut acc = CycloInt::zero(n);
            for (j, xaj) in xa.iter().enumerate() {
                if t[i][j] != 0 {
                    acc = acc.add(&xaj.to_cyclo().scale(&BigInt::from(t[i][j]))).expect("same order");
                }
            }
            acc
        })
        .collect();
    let mut lambda: Option<CycloInt> = None;
    for i in 0..l {
        let mut rhs = CycloInt::zero(n);
        for j in 0..l {
            if m_star[i][j] != 0 {
                rhs = rhs.add(&x_star[j].scale(&BigInt::from(m_star[i][j])))?;
            }
        }
        if x_star[i].is_zero() {
            if !rhs.is_zero() {
                return Ok(None);
            }
            continue;
        }
        let q = match rhs.exact_div(&x_star[i])? {
            Some(q) => q,
            None => return Ok(None),
        };
        match &lambda {
            None => lambda = Some(q),
            Some(prev) => {
                if !prev.equals(&q)? {
                    return Ok(None);
                }
            }
        }
    }
    let lambda = match lambda {
        Some(l) => l,
        None => return Ok(None),
    };
    if !lambda.is_real() {
        return Ok(None);
    }
    match DiagElem::from_real_cyclo(&lambda)? {
        Some(d) => Ok(Some(d)),
        None => Ok(None),
    }
}

/// Minimal number of prototiles: phi(n)/2 for odd n, phi(n) for even n.
pub fn l_min(n: usize) -> usize {
    if n % 2 == 1 {
        totient(n) / 2
    } else {
        totient(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_matrices_match_printed_schemes() {
        assert_eq!(basis_matrix(5, 2).unwrap(), SubstMatrix::from_rows(5, &[vec![1, 1], vec![1, 0]]).unwrap());
        assert_eq!(basis_matrix(4, 2).unwrap(), SubstMatrix::from_rows(4, &[vec![0, 2], vec![1, 0]]).unwrap());
        for n in 4..=12 {
            assert_eq!(basis_matrix(n, 1).unwrap(), SubstMatrix::identity(n, n / 2));
        }
        // n=7 scheme
        assert_eq!(
            basis_matrix(7, 3).unwrap(),
            SubstMatrix::from_rows(7, &[vec![1, 1, 1], vec![1, 1, 0], vec![1, 0, 0]]).unwrap()
        );
        assert_eq!(
            basis_matrix(7, 2).unwrap(),
            SubstMatrix::from_rows(7, &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap()
        );
        // n=8 scheme, k=4 and k=3
        assert_eq!(
            basis_matrix(8, 4).unwrap(),
            SubstMatrix::from_rows(8, &[vec![0, 2, 0, 2], vec![1, 0, 2, 0], vec![0, 2, 0, 0], vec![1, 0, 0, 0]])
                .unwrap()
        );
        assert_eq!(
            basis_matrix(8, 3).unwrap(),
            SubstMatrix::from_rows(8, &[vec![1, 0, 2, 0], vec![0, 2, 0, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 0]])
                .unwrap()
        );
        // n=6, k=3: middle row is (0,2,0) because mu_{6,3} mu_{6,2} = 2 mu_{6,2};
        // the eigen-relation forces the doubled entry (cf. the n=10 scheme).
        assert_eq!(
            basis_matrix(6, 3).unwrap(),
            SubstMatrix::from_rows(6, &[vec![1, 0, 2], vec![0, 2, 0], vec![1, 0, 0]]).unwrap()
        );
        // n=10, k=5 as printed
        assert_eq!(
            basis_matrix(10, 5).unwrap(),
            SubstMatrix::from_rows(
                10,
                &[
                    vec![1, 0, 2, 0, 2],
                    vec![0, 2, 0, 2, 0],
                    vec![1, 0, 2, 0, 0],
                    vec![0, 2, 0, 0, 0],
                    vec![1, 0, 0, 0, 0],
                ],
            )
            .unwrap()
        );
    }

    #[test]
    fn composed_minimal_matrices() {
        assert_eq!(compose_i64(5, &[1, 1]).unwrap(), SubstMatrix::from_rows(5, &[vec![2, 1], vec![1, 1]]).unwrap());
        assert_eq!(compose_i64(4, &[2, 1]).unwrap(), SubstMatrix::from_rows(4, &[vec![2, 2], vec![1, 2]]).unwrap());
        assert_eq!(compose_i64(7, &[1, 0, 0]).unwrap(), SubstMatrix::identity(7, 3));
    }

    #[test]
    fn coeffs_round_trip_and_failure() {
        let m = compose_i64(5, &[1, 1]).unwrap();
        let c = coeffs_from_matrix(&m).unwrap();
        assert_eq!(c, vec![BigInt::one(), BigInt::one()]);
        let id9 = SubstMatrix::identity(9, 4);
        assert_eq!(
            coeffs_from_matrix(&id9).unwrap(),
            vec![BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()]
        );
        let bad = SubstMatrix::from_rows(5, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(coeffs_from_matrix(&bad).is_err());
    }

    #[test]
    fn eigen_checks() {
        let lam = DiagElem::from_coeffs_i64(5, &[1, 1]).unwrap();
        assert!(eigen_check(&compose_i64(5, &[1, 1]).unwrap(), &lam).is_ok());
        let lam = DiagElem::from_coeffs_i64(4, &[2, 1]).unwrap();
        assert!(eigen_check(&compose_i64(4, &[2, 1]).unwrap(), &lam).is_ok());
        let id = SubstMatrix::identity(7, 3);
        let mu2 = DiagElem::mu(7, 2).unwrap();
        assert!(eigen_check(&id, &mu2).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&compose_i64(7, &[1, 1, 1]).unwrap()));
        assert!(!is_primitive(&compose_i64(8, &[0, 2, 0, 1]).unwrap()));
        assert!(!is_primitive(&SubstMatrix::identity(7, 3)));
    }

    #[test]
    fn minimal_lambdas() {
        let l7 = min_lambda(7).unwrap();
        assert_eq!(l7, DiagElem::from_coeffs_i64(7, &[1, 0, 1]).unwrap());
        assert!((l7.value_f64() - 3.24697960).abs() < 1e-8);
        let l4 = min_lambda(4).unwrap();
        assert_eq!(l4, DiagElem::from_coeffs_i64(4, &[2, 1]).unwrap());
        assert!((l4.value_f64() - (2f64 + 2f64.sqrt())).abs() < 1e-8);
        // n=5 reduces mu_3 to mu_2
        let l5 = min_lambda(5).unwrap();
        assert_eq!(l5, DiagElem::from_coeffs_i64(5, &[1, 1]).unwrap());
        assert!(min_lambda(3).is_err());
    }

    #[test]
    fn verify_min_small_orders() {
        for n in 4..=12 {
            let rep = verify_min(n).unwrap();
            assert!(rep.all_rejected, "n={}:\n{}", n, rep);
        }
        // n=11 must list mu_{11,4} among the rejected candidates
        let rep = verify_min(11).unwrap();
        assert!(rep
            .candidates
            .iter()
            .any(|c| c.c == vec![0, 0, 0, 1, 0] && !c.violations.is_empty()));
    }

    #[test]
    fn longest_diagonal() {
        let m5 = longest_diag_matrix(5).unwrap();
        assert_eq!(m5, SubstMatrix::from_rows(5, &[vec![2, 1], vec![1, 1]]).unwrap());
        let m7 = longest_diag_matrix(7).unwrap();
        assert_eq!(m7, SubstMatrix::from_rows(7, &[vec![3, 2, 1], vec![2, 2, 1], vec![1, 1, 1]]).unwrap());
        // eigenvalue is mu_{9,4}^2 for n=9
        let m9 = longest_diag_matrix(9).unwrap();
        let lam = DiagElem::mu(9, 4).unwrap().dpf_mul(&DiagElem::mu(9, 4).unwrap()).unwrap();
        assert!(eigen_check(&m9, &lam).is_ok());
        assert!(longest_diag_matrix(8).is_err());
    }

    #[test]
    fn conjugation_example_n7() {
        let m_star = vec![
            vec![1, 1, 1, 0],
            vec![1, 2, 0, 0],
            vec![3, 1, 0, 2],
            vec![0, 0, 1, 0],
        ];
        let t = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 0, 1]];
        let lam = conjugate_check(&m_star, &t, 7).unwrap().expect("conjugation holds");
        assert!(lam.value_equals(&min_lambda(7).unwrap()).unwrap());
        // identity T with a composed matrix
        let m = compose_i64(7, &[1, 1, 0]).unwrap();
        let rows: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| i64::try_from(m.get(i, j)).unwrap()).collect())
            .collect();
        let t_id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(conjugate_check(&rows, &t_id, 7).unwrap().is_some());
        // perturbed entry fails
        let mut bad = m_star.clone();
        bad[0][0] = 2;
        assert!(conjugate_check(&bad, &t, 7).unwrap().is_none());
    }

    #[test]
    fn l_min_values() {
        assert_eq!(l_min(5), 2);
        assert_eq!(l_min(12), 4);
        assert_eq!(l_min(7), 3);
    }
}
