//! Exact arithmetic in Z[zeta_2n], the ring of integers of the 2n-th
//! cyclotomic field.
//!
//! Elements are stored as integer polynomials in `zeta_2n` of degree < n,
//! i.e. in Z[x]/(x^n + 1); multiplication is negacyclic convolution. Two
//! representations denote the same algebraic number iff their difference
//! vanishes modulo the 2n-th cyclotomic polynomial, which `equals` checks
//! exactly. Coefficients are arbitrary-precision.

use crate::bigfloat::{eval_cyclo, Iv};
use crate::error::CastError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// An element of Z[zeta_2n]: `sum coeffs[k] * zeta_2n^k`, k in 0..n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloInt {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(n={}; {})", self.n, self)
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = a.abs();
            if !first {
                write!(f, " {} ", if sign == "-" { "-" } else { "+" })?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "z^{}", k)?;
            } else {
                write!(f, "{}*z^{}", mag, k)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized form: `{"n": ..., "coeffs": [...]}` with plain integer
/// coefficients (rule and patch files).
#[derive(Serialize, Deserialize)]
struct CycloRepr {
    n: usize,
    coeffs: Vec<i64>,
}

impl Serialize for CycloInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| i64::try_from(c).map_err(|_| serde::ser::Error::custom("coefficient exceeds i64 range")))
            .collect::<Result<Vec<_>, _>>()?;
        CycloRepr { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        if r.n < 2 {
            return Err(serde::de::Error::custom("order must be >= 2"));
        }
        if r.coeffs.len() != r.n {
            return Err(serde::de::Error::custom("coeffs length must equal n"));
        }
        Ok(CycloInt {
            n: r.n,
            coeffs: r.coeffs.into_iter().map(BigInt::from).collect(),
        })
    }
}

impl CycloInt {
    pub fn new(n: usize, coeffs: Vec<BigInt>) -> Result<Self, CastError> {
        if n < 2 {
            return Err(CastError::Domain(format!("order n={} must be >= 2", n)));
        }
        if coeffs.len() != n {
            return Err(CastError::Domain(format!(
                "coefficient vector length {} does not match n={}",
                coeffs.len(),
                n
            )));
        }
        Ok(CycloInt { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        CycloInt { n, coeffs: vec![BigInt::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: usize, v: i64) -> Self {
        let mut c = vec![BigInt::zero(); n];
        c[0] = BigInt::from(v);
        CycloInt { n, coeffs: c }
    }

    pub fn from_bigint(n: usize, v: BigInt) -> Self {
        let mut c = vec![BigInt::zero(); n];
        c[0] = v;
        CycloInt { n, coeffs: c }
    }

    /// zeta_2n^k for any integer k (reduced modulo 2n; zeta_2n^n = -1).
    pub fn root(n: usize, k: i64) -> Result<Self, CastError> {
        if n < 2 {
            return Err(CastError::Domain(format!("order n={} must be >= 2", n)));
        }
        let m = 2 * n as i64;
        let r = k.rem_euclid(m) as usize;
        let mut c = vec![BigInt::zero(); n];
        if r < n {
            c[r] = BigInt::one();
        } else {
            c[r - n] = -BigInt::one();
        }
        Ok(CycloInt { n, coeffs: c })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
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
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloInt { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CastError> {
        self.check_same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloInt { n: self.n, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycloInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Negacyclic convolution: x^n = -1.
    pub fn mul(&self, other: &Self) -> Result<Self, CastError> {
        self.check_same_order(other)?;
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let k = i + j;
                if k < n {
                    out[k] += prod;
                } else {
                    out[k - n] -= prod;
                }
            }
        }
        Ok(CycloInt { n, coeffs: out })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycloInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Complex conjugation: zeta^k -> zeta^{-k}.
    pub fn conj(&self) -> Self {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        out[0] = self.coeffs[0].clone();
        for k in 1..n {
            // zeta^{-k} = zeta^{2n-k} = -zeta^{n-k}
            out[n - k] -= &self.coeffs[k];
        }
        CycloInt { n, coeffs: out }
    }

    /// Canonical coefficients modulo the 2n-th cyclotomic polynomial
    /// (length = phi(2n)). Equal elements have identical canonical forms.
    pub fn canonical(&self) -> Vec<BigInt> {
        let phi = cyclotomic_poly(2 * self.n);
        poly_rem_monic(&self.coeffs, &phi)
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.canonical().iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, other: &Self) -> Result<bool, CastError> {
        Ok(self.sub(other)?.is_zero())
    }

    /// x * conj(x); always real.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj()).expect("same order")
    }

    pub fn is_real(&self) -> bool {
        self.sub(&self.conj()).expect("same order").is_zero()
    }

    /// True when the canonical form is a rational integer; returns it.
    pub fn as_integer(&self) -> Option<BigInt> {
        let can = self.canonical();
        if can.iter().skip(1).all(|c| c.is_zero()) {
            Some(can.first().cloned().unwrap_or_else(BigInt::zero))
        } else {
            None
        }
    }

    /// Certified interval evaluation of (re, im) at `bits` of precision:
    /// the returned interval widths are below 2^-bits.
    pub fn embed_interval(&self, bits: u32) -> (Iv, Iv) {
        let mut p = bits + 16;
        loop {
            let (re, im) = eval_cyclo(self.n, &self.coeffs, p);
            let bound = BigInt::one() << (p - bits);
            if re.width() < bound && im.width() < bound {
                return (re, im);
            }
            p *= 2;
            assert!(p < 1 << 22, "embedding precision runaway");
        }
    }

    /// Floating approximation (re, im); error well below 1e-15 relative to
    /// the certified interval midpoint.
    pub fn embed_f64(&self) -> (f64, f64) {
        let (re, im) = self.embed_interval(default_embed_bits());
        (re.mid_f64(), im.mid_f64())
    }

    /// Uncertified f64 evaluation (relative error ~1e-15 per term): the fast
    /// path for predicates, which fall back to exact tests near zero.
    pub fn embed_fast(&self) -> (f64, f64) {
        let tab = crate::bigfloat::fast_table(self.n);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = big_to_f64(a);
            let (c, s) = tab[k];
            re += v * c;
            im += v * s;
        }
        (re, im)
    }

    /// Sum of coefficient magnitudes (for rigorous f64 error bounds).
    pub fn coeff_abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| big_to_f64(&c.abs())).sum()
    }

    /// f64 evaluation plus a rigorous rounding bound for the fast sign path.
    fn fast_eval_with_bound(&self) -> (f64, f64, f64) {
        let (re, im) = self.embed_fast();
        let sum: f64 = self.coeffs.iter().map(|c| big_to_f64(&c.abs())).sum();
        let bound = (sum + 1.0) * (self.n as f64) * 1e-13;
        (re, im, bound)
    }

    /// Exact sign of the imaginary part (-1, 0, 1). Fast floating path with a
    /// certified error bound; exact reduction and interval escalation only
    /// near zero.
    pub fn im_sign(&self) -> i8 {
        let (_, im, bound) = self.fast_eval_with_bound();
        if im > bound {
            return 1;
        }
        if im < -bound {
            return -1;
        }
        if self.is_real() {
            return 0;
        }
        let mut bits = 64u32;
        loop {
            let (_, im) = eval_cyclo(self.n, &self.coeffs, bits);
            if let Some(s) = im.sign() {
                if s != 0 {
                    return s;
                }
            }
            bits *= 2;
            assert!(bits < 1 << 22, "sign precision runaway (nonzero element)");
        }
    }

    /// Exact sign of the real part (-1, 0, 1).
    pub fn re_sign(&self) -> i8 {
        let (re, _, bound) = self.fast_eval_with_bound();
        if re > bound {
            return 1;
        }
        if re < -bound {
            return -1;
        }
        if self.add(&self.conj()).expect("same order").is_zero() {
            return 0;
        }
        let mut bits = 64u32;
        loop {
            let (re, _) = eval_cyclo(self.n, &self.coeffs, bits);
            if let Some(s) = re.sign() {
                if s != 0 {
                    return s;
                }
            }
            bits *= 2;
            assert!(bits < 1 << 22, "sign precision runaway (nonzero element)");
        }
    }

    /// Exact division in the fraction field; `Ok(None)` when the quotient is
    /// not an algebraic integer (non-integral canonical coefficients).
    pub fn exact_div(&self, other: &Self) -> Result<Option<Self>, CastError> {
        self.check_same_order(other)?;
        if other.is_zero() {
            return Err(CastError::Domain("division by zero cyclotomic element".into()));
        }
        let phi = cyclotomic_poly(2 * self.n);
        let phi_q: Vec<BigRational> = phi.iter().map(|c| BigRational::from(c.clone())).collect();
        let y = other.canonical();
        let y_q: Vec<BigRational> = y.iter().map(|c| BigRational::from(c.clone())).collect();
        let inv = match poly_inverse_mod(&y_q, &phi_q) {
            Some(v) => v,
            None => return Err(CastError::Domain("divisor is zero modulo the cyclotomic polynomial".into())),
        };
        let x = self.canonical();
        let x_q: Vec<BigRational> = x.iter().map(|c| BigRational::from(c.clone())).collect();
        let prod = poly_mul_q(&x_q, &inv);
        let rem = poly_rem_q(&prod, &phi_q);
        let mut coeffs = vec![BigInt::zero(); self.n];
        for (k, c) in rem.iter().enumerate() {
            if !c.denom().is_one() {
                return Ok(None);
            }
            coeffs[k] = c.numer().clone();
        }
        Ok(Some(CycloInt { n: self.n, coeffs }))
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    i64::try_from(v).map(|x| x as f64).unwrap_or_else(|_| v.to_string().parse().unwrap_or(f64::MAX))
}

static EMBED_BITS: std::sync::atomic::AtomicU32 = std::sync::atomic::AtomicU32::new(64);

/// Certified bits for `embed_f64` (the CAST_PRECISION_BITS environment
/// variable overrides this in the CLI).
pub fn default_embed_bits() -> u32 {
    EMBED_BITS.load(std::sync::atomic::Ordering::Relaxed)
}

pub fn set_default_embed_bits(bits: u32) {
    EMBED_BITS.store(bits.clamp(16, 4096), std::sync::atomic::Ordering::Relaxed);
}

/// The m-th cyclotomic polynomial, monic over Z, cached. Index = degree.
pub fn cyclotomic_poly(m: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&m) {
        return v.clone();
    }
    let result = if m == 1 {
        vec![-BigInt::one(), BigInt::one()] // x - 1
    } else {
        // (x^m - 1) / prod_{d | m, d < m} Phi_d
        let mut num = vec![BigInt::zero(); m + 1];
        num[0] = -BigInt::one();
        num[m] = BigInt::one();
        let mut quot = num;
        for d in 1..m {
            if m % d == 0 {
                let phi_d = cyclotomic_poly(d);
                quot = poly_div_exact(&quot, &phi_d);
            }
        }
        quot
    };
    let arc = Arc::new(result);
    cache.write().unwrap().insert(m, arc.clone());
    arc
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// ---- integer polynomial helpers (dense, index = degree) ----

fn poly_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Exact division of integer polynomials (remainder must be zero; divisor monic).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = num.to_vec();
    poly_trim(&mut r);
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if r.len() <= dd {
        assert!(r.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let qd = r.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = r[i + dd].clone();
        if !c.is_zero() {
            q[i] = c.clone();
            for j in 0..=dd {
                let t = &den[j] * &c;
                r[i + j] -= t;
            }
        }
    }
    assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    q
}

/// Remainder of an integer polynomial modulo a monic integer polynomial.
fn poly_rem_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut r: Vec<BigInt> = num.to_vec();
    poly_trim(&mut r);
    while r.len() > dd {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - dd;
        if !lead.is_zero() {
            for j in 0..=dd {
                let t = &den[j] * &lead;
                r[shift + j] -= t;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    let mut out = vec![BigInt::zero(); dd.max(1)];
    for (i, c) in r.into_iter().enumerate() {
        out[i] = c;
    }
    out
}

// ---- rational polynomial helpers ----

fn qtrim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let t = x * y;
            out[i + j] += t;
        }
    }
    qtrim(&mut out);
    out
}

fn poly_rem_q(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut r = num.to_vec();
    qtrim(&mut r);
    let mut d = den.to_vec();
    qtrim(&mut d);
    let dd = d.len() - 1;
    let lead = d[dd].clone();
    while r.len() > dd && !(r.len() == 1 && r[0].is_zero()) {
        let c = r.last().unwrap() / &lead;
        let shift = r.len() - 1 - dd;
        for j in 0..=dd {
            let t = &d[j] * &c;
            r[shift + j] -= t;
        }
        r.pop();
        qtrim(&mut r);
    }
    r
}

/// Inverse of `a` modulo `m` over Q via extended Euclid; None if gcd is not
/// a unit (i.e. a = 0 mod m since the cyclotomic polynomial is irreducible).
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let zero = vec![BigRational::zero()];
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    qtrim(&mut r1);
    if r1 == zero {
        return None;
    }
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod_q(&r0, &r1);
        let s = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 = gcd (nonzero constant since m irreducible and a != 0)
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let inv_g = BigRational::one() / r0[0].clone();
    let out = s0.iter().map(|c| c * &inv_g).collect::<Vec<_>>();
    Some(poly_rem_q(&out, m))
}

fn poly_divmod_q(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = num.to_vec();
    qtrim(&mut r);
    let mut d = den.to_vec();
    qtrim(&mut d);
    let dd = d.len() - 1;
    let lead = d[dd].clone();
    if r.len() <= dd {
        return (vec![BigRational::zero()], r);
    }
    let qd = r.len() - 1 - dd;
    let mut q = vec![BigRational::zero(); qd + 1];
    for i in (0..=qd).rev() {
        if r.len() < i + dd + 1 {
            continue;
        }
        let c = &r[i + dd] / &lead;
        if !c.is_zero() {
            q[i] = c.clone();
            for j in 0..=dd {
                let t = &d[j] * &c;
                r[i + j] -= t;
            }
        }
    }
    qtrim(&mut r);
    qtrim(&mut q);
    (q, r)
}

fn poly_sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qtrim(&mut out);
    out
}
