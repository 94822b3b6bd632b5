//! Fixed-point interval arithmetic with certified error bounds.
//!
//! Values are binary fixed-point numbers `m * 2^-p` with a `BigInt` mantissa.
//! Intervals are used to evaluate trigonometric embeddings of cyclotomic
//! integers so that signs and tolerances can be certified: the true value is
//! always contained in `[lo, hi]`. Precision escalation is the caller's job;
//! all routines here are exact up to outward rounding at the requested
//! precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Interval `[lo, hi] * 2^-p`. Invariant: `lo <= hi`.
#[derive(Clone, Debug)]
pub struct Iv {
    pub lo: BigInt,
    pub hi: BigInt,
    pub p: u32,
}

impl Iv {
    pub fn exact(m: BigInt, p: u32) -> Self {
        Iv { lo: m.clone(), hi: m, p }
    }

    pub fn zero(p: u32) -> Self {
        Iv::exact(BigInt::zero(), p)
    }

    pub fn from_int(k: &BigInt, p: u32) -> Self {
        Iv::exact(k << p, p)
    }

    pub fn add(&self, other: &Iv) -> Self {
        debug_assert_eq!(self.p, other.p);
        Iv { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, p: self.p }
    }

    pub fn sub(&self, other: &Iv) -> Self {
        debug_assert_eq!(self.p, other.p);
        Iv { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, p: self.p }
    }

    pub fn neg(&self) -> Self {
        Iv { lo: -self.hi.clone(), hi: -self.lo.clone(), p: self.p }
    }

    pub fn mul(&self, other: &Iv) -> Self {
        debug_assert_eq!(self.p, other.p);
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Iv { lo: shr_floor(&lo, self.p), hi: shr_ceil(&hi, self.p), p: self.p }
    }

    /// Multiply by an exact integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Iv { lo: a, hi: b, p: self.p }
        } else {
            Iv { lo: b, hi: a, p: self.p }
        }
    }

    /// Divide by a positive integer, rounding outward.
    pub fn div_uint(&self, k: &BigInt) -> Self {
        debug_assert!(k.is_positive());
        Iv {
            lo: self.lo.div_floor(k),
            hi: self.hi.div_ceil(k),
            p: self.p,
        }
    }

    /// Sign of the interval: `Some(-1|0|1)` when certain, `None` when the
    /// interval straddles zero with nonzero width.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Width in units of 2^-p.
    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Midpoint as f64 (best effort; fine for display and tolerances >= 1e-14).
    pub fn mid_f64(&self) -> f64 {
        let two = &self.lo + &self.hi;
        big_to_f64_shifted(&two, self.p + 1)
    }

    /// True if `|self| < 2^-bits` is certain.
    pub fn abs_lt_pow2(&self, bits: u32) -> bool {
        debug_assert!(self.p >= bits);
        let bound = BigInt::one() << (self.p - bits);
        self.hi < bound && self.lo > -bound
    }
}

fn shr_floor(m: &BigInt, p: u32) -> BigInt {
    m.div_floor(&(BigInt::one() << p))
}

fn shr_ceil(m: &BigInt, p: u32) -> BigInt {
    m.div_ceil(&(BigInt::one() << p))
}

fn big_to_f64_shifted(m: &BigInt, p: u32) -> f64 {
    // Keep 64 significant bits, track the shift, then scale.
    let bits = m.bits() as i64;
    let extra = (bits - 63).max(0) as u32;
    let reduced = m >> extra;
    let v = reduced.to_string().parse::<f64>().unwrap_or(0.0);
    v * 2f64.powi(extra as i32 - p as i32)
}

/// atan(1/q) as an interval at precision p (Gregory series, alternating).
fn atan_inv(q: u64, p: u32) -> Iv {
    let guard = 16u32;
    let pp = p + guard;
    let one = BigInt::one() << pp;
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut denom_pow = q.clone();
    let mut j = 0u64;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    loop {
        let d = &denom_pow * BigInt::from(2 * j + 1);
        let t = one.div_floor(&d); // true term in [t, t+1] ulps
        if t.is_zero() {
            // tail below one ulp; widen by one ulp on the positive side
            hi += 1;
            break;
        }
        if j % 2 == 0 {
            lo += &t;
            hi += &t + 1;
        } else {
            lo -= &t + 1;
            hi -= &t;
        }
        denom_pow *= &q2;
        j += 1;
    }
    Iv { lo: shr_floor(&lo, guard), hi: shr_ceil(&hi, guard), p }
}

/// pi as an interval at precision p (Machin's formula), cached.
pub fn pi(p: u32) -> Iv {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Iv>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&p) {
        return (**v).clone();
    }
    let a = atan_inv(5, p + 8).scale(&BigInt::from(16));
    let b = atan_inv(239, p + 8).scale(&BigInt::from(4));
    let r = a.sub(&b);
    let r = Iv { lo: shr_floor(&r.lo, 8), hi: shr_ceil(&r.hi, 8), p };
    cache.write().unwrap().insert(p, Arc::new(r.clone()));
    r
}

/// sin and cos of an interval argument (|x| <= 2*pi assumed for the term
/// count), via Taylor series with an explicit remainder bound.
fn sincos(x: &Iv, p: u32) -> (Iv, Iv) {
    let x2 = x.mul(x);
    // sin
    let mut term = x.clone();
    let mut sin = term.clone();
    let mut j = 1u64;
    loop {
        term = term.mul(&x2).div_uint(&BigInt::from((2 * j) * (2 * j + 1)));
        term = term.neg();
        sin = sin.add(&term);
        let mag = term.lo.abs().max(term.hi.abs());
        j += 1;
        if j > 8 && mag < BigInt::from(2) && BigInt::from(2 * j * (2 * j + 1)) > x2.hi.abs() {
            break;
        }
        if j > 200 {
            break;
        }
    }
    // remainder: bounded by magnitude of the next term once terms decrease
    let rem = {
        let nt = term.mul(&x2).div_uint(&BigInt::from((2 * j) * (2 * j + 1)));
        nt.lo.abs().max(nt.hi.abs()) + 2
    };
    sin = Iv { lo: &sin.lo - &rem, hi: &sin.hi + &rem, p };
    // cos
    let mut term = Iv::from_int(&BigInt::one(), p);
    let mut cos = term.clone();
    let mut j = 1u64;
    loop {
        term = term.mul(&x2).div_uint(&BigInt::from((2 * j - 1) * (2 * j)));
        term = term.neg();
        cos = cos.add(&term);
        let mag = term.lo.abs().max(term.hi.abs());
        j += 1;
        if j > 8 && mag < BigInt::from(2) && BigInt::from((2 * j - 1) * 2 * j) > x2.hi.abs() {
            break;
        }
        if j > 200 {
            break;
        }
    }
    let rem = {
        let nt = term.mul(&x2).div_uint(&BigInt::from((2 * j - 1) * (2 * j)));
        nt.lo.abs().max(nt.hi.abs()) + 2
    };
    cos = Iv { lo: &cos.lo - &rem, hi: &cos.hi + &rem, p };
    (sin, cos)
}

/// Table of (cos, sin)(k*pi/n) for k in 0..2n at precision p, cached per (n, p).
pub fn root_table(n: usize, p: u32) -> Arc<Vec<(Iv, Iv)>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, u32), Arc<Vec<(Iv, Iv)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&(n, p)) {
        return v.clone();
    }
    let pi_iv = pi(p + 8);
    let mut tab = Vec::with_capacity(2 * n);
    for k in 0..2 * n {
        let theta = pi_iv.scale(&BigInt::from(k)).div_uint(&BigInt::from(n as u64));
        let (s, c) = sincos(&theta, p + 8);
        let cut = |iv: &Iv| Iv { lo: shr_floor(&iv.lo, 8), hi: shr_ceil(&iv.hi, 8), p };
        tab.push((cut(&c), cut(&s)));
    }
    let arc = Arc::new(tab);
    cache.write().unwrap().insert((n, p), arc.clone());
    arc
}

/// Evaluate `sum a_k * zeta_{2n}^k` (k in 0..n) as certified (re, im) intervals.
pub fn eval_cyclo(n: usize, coeffs: &[BigInt], p: u32) -> (Iv, Iv) {
    let tab = root_table(n, p);
    let mut re = Iv::zero(p);
    let mut im = Iv::zero(p);
    for (k, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let (c, s) = &tab[k];
        re = re.add(&c.scale(a));
        im = im.add(&s.scale(a));
    }
    (re, im)
}

/// Plain f64 table of (cos, sin)(k*pi/n), cached: the fast path for
/// predicates that fall back to certified arithmetic only near zero.
pub fn fast_table(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&n) {
        return v.clone();
    }
    let tab: Vec<(f64, f64)> = (0..2 * n)
        .map(|k| {
            let th = k as f64 * std::f64::consts::PI / n as f64;
            (th.cos(), th.sin())
        })
        .collect();
    let arc = Arc::new(tab);
    cache.write().unwrap().insert(n, arc.clone());
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_certified() {
        let v = pi(128);
        assert!(v.width() <= BigInt::from(64));
        let m = v.mid_f64();
        assert!((m - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn sincos_table_matches_f64() {
        for n in [4usize, 5, 7, 12] {
            let tab = root_table(n, 96);
            for k in 0..2 * n {
                let theta = k as f64 * std::f64::consts::PI / n as f64;
                let (c, s) = &tab[k];
                assert!((c.mid_f64() - theta.cos()).abs() < 1e-13, "cos n={n} k={k}");
                assert!((s.mid_f64() - theta.sin()).abs() < 1e-13, "sin n={n} k={k}");
            }
        }
    }
}
