//! Exact arithmetic in the ring of diagonals Z[mu_n] of a regular n-gon.
//!
//! Basis elements are the diagonals `mu_{n,k}`, 1 <= k <= floor(n/2), with
//! `mu_{n,1} = 1` and `mu_{n,n-k} = mu_{n,k}`. Products reduce through the
//! diagonal product formula; conversion to and from the cyclotomic ring is
//! exact in both directions (the inverse direction solves an integer linear
//! system, since for non-prime n the basis may be linearly dependent).

use crate::cyclo::CycloInt;
use crate::error::CastError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Element of Z[mu_n]: `sum c[k-1] * mu_{n,k}`, k = 1..=floor(n/2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiagElem {
    n: usize,
    c: Vec<BigInt>,
}

impl fmt::Debug for DiagElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diag(n={}; {})", self.n, self)
    }
}

impl fmt::Display for DiagElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, coeff) in self.c.iter().enumerate().rev() {
            if coeff.is_zero() {
                continue;
            }
            let k = i + 1;
            if !first {
                write!(f, " {} ", if coeff.is_negative() { "-" } else { "+" })?;
            } else if coeff.is_negative() {
                write!(f, "-")?;
            }
            let mag = coeff.abs();
            if k == 1 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "mu({},{})", self.n, k)?;
            } else {
                write!(f, "{}*mu({},{})", mag, self.n, k)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DiagRepr {
    n: usize,
    c: Vec<i64>,
}

impl Serialize for DiagElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self
            .c
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| serde::ser::Error::custom("coefficient exceeds i64 range")))
            .collect::<Result<Vec<_>, _>>()?;
        DiagRepr { n: self.n, c }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = DiagRepr::deserialize(d)?;
        if r.n < 2 || r.c.len() != r.n / 2 {
            return Err(serde::de::Error::custom("bad diagonal element"));
        }
        Ok(DiagElem { n: r.n, c: r.c.into_iter().map(BigInt::from).collect() })
    }
}

/// Eigenvalue parity classification (sets S_even / S_odd / S_mixed, with
/// S_full flagged inside the mixed class).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParitySetTag {
    Even,
    Odd,
    Mixed { full: bool },
}

impl fmt::Display for ParitySetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParitySetTag::Even => write!(f, "EVEN"),
            ParitySetTag::Odd => write!(f, "ODD"),
            ParitySetTag::Mixed { full: true } => write!(f, "FULL"),
            ParitySetTag::Mixed { full: false } => write!(f, "MIXED"),
        }
    }
}

/// Reduce a diagonal index into [1, floor(n/2)] using mu_{n,n-k} = mu_{n,k}.
pub fn reduce_index(n: usize, k: usize) -> Result<usize, CastError> {
    if k < 1 || k > n - 1 {
        return Err(CastError::Domain(format!("diagonal index {} outside [1, {}]", k, n - 1)));
    }
    Ok(if k > n / 2 { n - k } else { k })
}

impl DiagElem {
    pub fn new(n: usize, c: Vec<BigInt>) -> Result<Self, CastError> {
        if n < 2 {
            return Err(CastError::Domain("order must be >= 2".into()));
        }
        if c.len() != n / 2 {
            return Err(CastError::Domain(format!(
                "coefficient vector length {} does not match floor({}/2)",
                c.len(),
                n
            )));
        }
        Ok(DiagElem { n, c })
    }

    pub fn zero(n: usize) -> Self {
        DiagElem { n, c: vec![BigInt::zero(); n / 2] }
    }

    pub fn from_int(n: usize, v: i64) -> Self {
        let mut c = vec![BigInt::zero(); n / 2];
        c[0] = BigInt::from(v);
        DiagElem { n, c }
    }

    /// Basis diagonal mu_{n,k}, index reduced into range.
    pub fn mu(n: usize, k: usize) -> Result<Self, CastError> {
        let k = reduce_index(n, k)?;
        let mut c = vec![BigInt::zero(); n / 2];
        c[k - 1] = BigInt::one();
        Ok(DiagElem { n, c })
    }

    pub fn from_coeffs_i64(n: usize, coeffs: &[i64]) -> Result<Self, CastError> {
        Self::new(n, coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero_coeffs(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    fn check_same_order(&self, other: &Self) -> Result<(), CastError> {
        if self.n != other.n {
            Err(CastError::OrderMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CastError> {
        self.check_same_order(other)?;
        Ok(DiagElem {
            n: self.n,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CastError> {
        self.check_same_order(other)?;
        Ok(DiagElem {
            n: self.n,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        DiagElem { n: self.n, c: self.c.iter().map(|a| a * k).collect() }
    }

    /// Product through the diagonal product formula
    /// `mu_h mu_k = sum_{i=1..h} mu_{k-h-1+2i}` (h <= k), extended bilinearly,
    /// indices reduced by mu_{n,n-k} = mu_{n,k}.
    pub fn dpf_mul(&self, other: &Self) -> Result<Self, CastError> {
        self.check_same_order(other)?;
        let n = self.n;
        let m = n / 2;
        let mut out = vec![BigInt::zero(); m];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (h, k) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
                let prod = a * b;
                for t in 1..=h as i64 {
                    // in [k-h+1, k+h-1], all within [1, n-1]
                    let idx = (k as i64 - h as i64 - 1 + 2 * t) as usize;
                    let r = if idx > n / 2 { n - idx } else { idx };
                    out[r - 1] += &prod;
                }
            }
        }
        Ok(DiagElem { n, c: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = DiagElem::from_int(self.n, 1);
        for _ in 0..e {
            acc = acc.dpf_mul(self).expect("same order");
        }
        acc
    }

    /// Image in Z[zeta_2n] via `mu_{n,k} = sum_{i=0..k-1} zeta_2n^{2i-k+1}`.
    pub fn to_cyclo(&self) -> CycloInt {
        let n = self.n;
        let mut acc = CycloInt::zero(n);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = (i + 1) as i64;
            for t in 0..k {
                let e = 2 * t - k + 1;
                let r = CycloInt::root(n, e).expect("valid order");
                acc = acc.add(&r.scale(a)).expect("same order");
            }
        }
        acc
    }

    /// Exact value equality (representation-independent: basis diagonals can
    /// be linearly dependent for non-prime n).
    pub fn value_equals(&self, other: &Self) -> Result<bool, CastError> {
        self.check_same_order(other)?;
        self.to_cyclo().equals(&other.to_cyclo())
    }

    /// Numeric value (the diagonals are real).
    pub fn value_f64(&self) -> f64 {
        self.to_cyclo().embed_f64().0
    }

    /// Parity classification. Requires a representation with all
    /// coefficients >= 0 and not all zero.
    pub fn classify(&self) -> Result<ParitySetTag, CastError> {
        if self.c.iter().any(|v| v.is_negative()) {
            return Err(CastError::Domain("classification requires non-negative coefficients".into()));
        }
        if self.is_zero_coeffs() {
            return Err(CastError::Domain("classification requires a nonzero element".into()));
        }
        let mut has_odd = false;
        let mut has_even = false;
        let mut all_pos = true;
        for (i, v) in self.c.iter().enumerate() {
            let k = i + 1;
            if v.is_positive() {
                if k % 2 == 0 {
                    has_even = true;
                } else {
                    has_odd = true;
                }
            } else {
                all_pos = false;
            }
        }
        Ok(match (has_odd, has_even) {
            (true, false) => ParitySetTag::Odd,
            (false, true) => ParitySetTag::Even,
            _ => ParitySetTag::Mixed { full: all_pos },
        })
    }

    /// First power p <= max_power with all coefficients of self^p positive.
    pub fn eventually_full(&self, max_power: u32) -> Option<u32> {
        let mut acc = self.clone();
        for p in 1..=max_power {
            if acc.c.iter().all(|v| v.is_positive()) {
                return Some(p);
            }
            acc = acc.dpf_mul(self).expect("same order");
        }
        None
    }

    /// Default power bound used by the primitivity cross-check.
    pub fn default_power_bound(n: usize) -> u32 {
        let m = (n / 2) as u32;
        2 * m * m
    }

    /// Exact conversion of a real cyclotomic integer into the diagonal basis;
    /// `Ok(None)` when no integer combination exists.
    pub fn from_real_cyclo(x: &CycloInt) -> Result<Option<Self>, CastError> {
        if !x.is_real() {
            return Err(CastError::Domain("from_real_cyclo requires a real element".into()));
        }
        let n = x.order();
        let m = n / 2;
        // columns: canonical coefficients of to_cyclo(mu_k)
        let mut cols = Vec::with_capacity(m);
        let mut rows = 0usize;
        for k in 1..=m {
            let img = DiagElem::mu(n, k)?.to_cyclo().canonical();
            rows = rows.max(img.len());
            cols.push(img);
        }
        let target = x.canonical();
        rows = rows.max(target.len());
        let mut a = vec![vec![BigInt::zero(); m]; rows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                a[i][j] = v.clone();
            }
        }
        let mut v = vec![BigInt::zero(); rows];
        for (i, t) in target.iter().enumerate() {
            v[i] = t.clone();
        }
        Ok(solve_integer(&a, &v).map(|c| DiagElem { n, c }))
    }

    /// Search for an all-non-negative representation of the same value by
    /// adding integer kernel vectors within a bounded box.
    pub fn nonneg_representative(&self) -> Option<Self> {
        if self.c.iter().all(|v| !v.is_negative()) {
            return Some(self.clone());
        }
        let n = self.n;
        let m = n / 2;
        let mut cols = Vec::with_capacity(m);
        let mut rows = 0usize;
        for k in 1..=m {
            let img = DiagElem::mu(n, k).ok()?.to_cyclo().canonical();
            rows = rows.max(img.len());
            cols.push(img);
        }
        let mut a = vec![vec![BigInt::zero(); m]; rows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                a[i][j] = v.clone();
            }
        }
        let kernel = integer_kernel(&a);
        if kernel.is_empty() {
            return None;
        }
        let bound: BigInt = self.c.iter().map(|v| v.abs()).max().unwrap_or_else(BigInt::zero) + 1;
        let b = i64::try_from(&bound).unwrap_or(8).min(8);
        let dim = kernel.len();
        let mut coeffs = vec![0i64; dim];
        fn rec(
            kdim: usize,
            b: i64,
            coeffs: &mut Vec<i64>,
            base: &DiagElem,
            kernel: &[Vec<BigInt>],
            best: &mut Option<DiagElem>,
        ) {
            if kdim == coeffs.len() {
                let mut cand = base.c.clone();
                for (t, kv) in coeffs.iter().zip(kernel) {
                    for (ci, kc) in cand.iter_mut().zip(kv) {
                        *ci += kc * BigInt::from(*t);
                    }
                }
                if cand.iter().all(|v| !v.is_negative()) {
                    let d = DiagElem { n: base.n, c: cand };
                    match best {
                        None => *best = Some(d),
                        Some(cur) => {
                            if d.c < cur.c {
                                *best = Some(d);
                            }
                        }
                    }
                }
                return;
            }
            for t in -b..=b {
                coeffs[kdim] = t;
                rec(kdim + 1, b, coeffs, base, kernel, best);
            }
            coeffs[kdim] = 0;
        }
        let mut best = None;
        rec(0, b, &mut coeffs, self, &kernel, &mut best);
        best
    }
}

/// Solve A c = v over the integers (one solution) via column Hermite
/// reduction with a transformation matrix; None when no integer solution.
pub fn solve_integer(a: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let (h, u, pivots) = hermite_columns(a);
    let rows = a.len();
    let m = if rows > 0 { a[0].len() } else { 0 };
    let mut y = vec![BigInt::zero(); m];
    let mut rem = v.to_vec();
    for &(r, c) in &pivots {
        let piv = &h[r][c];
        let (q, rr) = rem[r].div_rem(piv);
        if !rr.is_zero() {
            return None;
        }
        y[c] = q.clone();
        for i in 0..rows {
            let t = &h[i][c] * &q;
            rem[i] -= t;
        }
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // c = U y
    let mut out = vec![BigInt::zero(); m];
    for i in 0..m {
        for j in 0..m {
            if !y[j].is_zero() {
                let t = &u[i][j] * &y[j];
                out[i] += t;
            }
        }
    }
    Some(out)
}

/// Integer kernel basis of A (columns of U over zero columns of H).
pub fn integer_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, u, _) = hermite_columns(a);
    let rows = a.len();
    let m = if rows > 0 { a[0].len() } else { 0 };
    let mut out = Vec::new();
    for j in 0..m {
        if (0..rows).all(|i| h[i][j].is_zero()) {
            out.push((0..m).map(|i| u[i][j].clone()).collect());
        }
    }
    out
}

/// Column echelon form by unimodular column operations: returns (H, U, pivots)
/// with A U = H, pivots listing (row, col) of each pivot.
fn hermite_columns(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let rows = a.len();
    let m = if rows > 0 { a[0].len() } else { 0 };
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut col = 0usize;
    for row in 0..rows {
        if col >= m {
            break;
        }
        // gcd-eliminate all entries in this row to the right of `col`
        loop {
            let mut jmin: Option<usize> = None;
            for j in col..m {
                if !h[row][j].is_zero() {
                    jmin = match jmin {
                        None => Some(j),
                        Some(b) if h[row][j].abs() < h[row][b].abs() => Some(j),
                        other => other,
                    };
                }
            }
            let Some(jp) = jmin else { break };
            // move smallest to `col`
            if jp != col {
                for r in 0..rows {
                    h[r].swap(col, jp);
                }
                for r in 0..m {
                    u[r].swap(col, jp);
                }
            }
            let mut done = true;
            for j in col + 1..m {
                if h[row][j].is_zero() {
                    continue;
                }
                let q = div_round(&h[row][j], &h[row][col]);
                if !q.is_zero() {
                    for r in 0..rows {
                        let t = &h[r][col] * &q;
                        h[r][j] -= t;
                    }
                    for r in 0..m {
                        let t = &u[r][col] * &q;
                        u[r][j] -= t;
                    }
                }
                if !h[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[row][col].is_zero() {
            if h[row][col].is_negative() {
                for r in 0..rows {
                    h[r][col] = -h[r][col].clone();
                }
                for r in 0..m {
                    u[r][col] = -u[r][col].clone();
                }
            }
            pivots.push((row, col));
            col += 1;
        }
    }
    (h, u, pivots)
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer quotient, ties toward zero
    let (q, r) = a.div_rem(b);
    let twice = &r * 2i32;
    if twice.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(n: usize, k: usize) -> DiagElem {
        DiagElem::mu(n, k).unwrap()
    }

    #[test]
    fn index_reduction() {
        assert!(mu(5, 3).coeffs() == mu(5, 2).coeffs());
        assert_eq!(mu(9, 1), DiagElem::from_int(9, 1));
        assert!(mu(7, 4).coeffs() == mu(7, 3).coeffs());
        assert!(DiagElem::mu(7, 0).is_err());
        assert!(DiagElem::mu(7, 7).is_err());
    }

    #[test]
    fn dpf_products() {
        // mu_{7,3}^2 = mu_1 + mu_3 + mu_5 -> mu_1 + mu_2 + mu_3
        let p = mu(7, 3).dpf_mul(&mu(7, 3)).unwrap();
        assert_eq!(p, DiagElem::from_coeffs_i64(7, &[1, 1, 1]).unwrap());
        // unit
        let x = DiagElem::from_coeffs_i64(11, &[3, 0, -2, 5, 1]).unwrap();
        assert_eq!(mu(11, 1).dpf_mul(&x).unwrap(), x);
        // mu_{11,2} mu_{11,4} = mu_3 + mu_5
        let p = mu(11, 2).dpf_mul(&mu(11, 4)).unwrap();
        assert_eq!(p, DiagElem::from_coeffs_i64(11, &[0, 0, 1, 0, 1]).unwrap());
    }

    #[test]
    fn dpf_square_is_golden_for_n5() {
        // mu_{5,2}^2 = mu_{5,1} + mu_{5,3} = 1 + mu_{5,2}
        let p = mu(5, 2).dpf_mul(&mu(5, 2)).unwrap();
        assert_eq!(p, DiagElem::from_coeffs_i64(5, &[1, 1]).unwrap());
        // and the same in the cyclotomic ring
        let lhs = mu(5, 2).to_cyclo().mul(&mu(5, 2).to_cyclo()).unwrap();
        assert!(lhs.equals(&p.to_cyclo()).unwrap());
    }

    #[test]
    fn to_cyclo_values() {
        // mu_{7,2} = zeta_14 + conj(zeta_14)
        let img = mu(7, 2).to_cyclo();
        let want = CycloInt::root(7, 1)
            .unwrap()
            .add(&CycloInt::root(7, -1).unwrap())
            .unwrap();
        assert!(img.equals(&want).unwrap());
        assert!(mu(9, 1).to_cyclo().equals(&CycloInt::one(9)).unwrap());
        // numeric: mu_{9,4} = sin(4pi/9)/sin(pi/9)
        let v = mu(9, 4).value_f64();
        let want = (4.0 * std::f64::consts::PI / 9.0).sin() / (std::f64::consts::PI / 9.0).sin();
        assert!((v - want).abs() < 1e-12);
        // mu_{11,5}
        let v = mu(11, 5).value_f64();
        let want = (5.0 * std::f64::consts::PI / 11.0).sin() / (std::f64::consts::PI / 11.0).sin();
        assert!((v - want).abs() < 1e-12);
    }

    #[test]
    fn from_real_cyclo_round_trip() {
        let x = DiagElem::from_coeffs_i64(7, &[2, 0, 3]).unwrap();
        let back = DiagElem::from_real_cyclo(&x.to_cyclo()).unwrap().unwrap();
        assert!(back.value_equals(&x).unwrap());
        // norm_sq(1 + zeta_8) = mu_{4,2} + 2
        let z = CycloInt::from_int(4, 1).add(&CycloInt::root(4, 1).unwrap()).unwrap();
        let d = DiagElem::from_real_cyclo(&z.norm_sq()).unwrap().unwrap();
        assert_eq!(d, DiagElem::from_coeffs_i64(4, &[2, 1]).unwrap());
        // norm_sq(to_cyclo(mu_{7,2})) = mu_{7,3} + 1
        let d = DiagElem::from_real_cyclo(&mu(7, 2).to_cyclo().norm_sq()).unwrap().unwrap();
        assert_eq!(d, DiagElem::from_coeffs_i64(7, &[1, 0, 1]).unwrap());
        // non-real input is a domain error
        assert!(DiagElem::from_real_cyclo(&CycloInt::root(7, 1).unwrap()).is_err());
    }

    #[test]
    fn degenerate_basis_n9() {
        // mu_{9,4} = mu_{9,2} + mu_{9,1}
        let lhs = mu(9, 4);
        let rhs = mu(9, 2).add(&mu(9, 1)).unwrap();
        assert!(lhs.value_equals(&rhs).unwrap());
        assert!(lhs.to_cyclo().equals(&rhs.to_cyclo()).unwrap());
        // a representation with a negative entry has a non-negative
        // representative: mu_4 - mu_1 = mu_2
        let x = DiagElem::from_coeffs_i64(9, &[-1, 0, 0, 1]).unwrap();
        let rep = x.nonneg_representative().unwrap();
        assert!(rep.coeffs().iter().all(|v| !v.is_negative()));
        assert!(rep.value_equals(&mu(9, 2)).unwrap());
    }

    #[test]
    fn classification() {
        assert_eq!(
            DiagElem::from_coeffs_i64(8, &[0, 1, 0, 2]).unwrap().classify().unwrap(),
            ParitySetTag::Even
        );
        // n=7, c = (1, 0, 1): indices 1 and 3 are odd
        assert_eq!(
            DiagElem::from_coeffs_i64(7, &[1, 0, 1]).unwrap().classify().unwrap(),
            ParitySetTag::Odd
        );
        assert_eq!(
            DiagElem::from_coeffs_i64(8, &[1, 1, 1, 1]).unwrap().classify().unwrap(),
            ParitySetTag::Mixed { full: true }
        );
        assert!(DiagElem::from_coeffs_i64(8, &[1, -1, 0, 0]).unwrap().classify().is_err());
        assert!(DiagElem::zero(8).classify().is_err());
    }

    #[test]
    fn eventual_fullness() {
        assert!(mu(7, 2).eventually_full(8).is_some());
        // even n, odd index: powers stay odd
        assert_eq!(mu(8, 3).eventually_full(8), None);
        // rational integers never fill
        assert_eq!(DiagElem::from_int(8, 2).eventually_full(8), None);
    }

    #[test]
    fn parity_closure_even_n() {
        for n in [6usize, 8, 10, 12, 14] {
            for a in (1..=n / 2).step_by(2) {
                for b in (1..=n / 2).step_by(2) {
                    // odd*odd supported on odd indices
                    let p = mu(n, a).dpf_mul(&mu(n, b)).unwrap();
                    for (i, v) in p.coeffs().iter().enumerate() {
                        if (i + 1) % 2 == 0 {
                            assert!(v.is_zero(), "odd*odd leak n={n} a={a} b={b}");
                        }
                    }
                }
                for b in (2..=n / 2).step_by(2) {
                    // even*odd supported on even indices
                    let p = mu(n, a).dpf_mul(&mu(n, b)).unwrap();
                    for (i, v) in p.coeffs().iter().enumerate() {
                        if (i + 1) % 2 == 1 {
                            assert!(v.is_zero(), "even*odd leak n={n} a={a} b={b}");
                        }
                    }
                }
            }
        }
    }
}
