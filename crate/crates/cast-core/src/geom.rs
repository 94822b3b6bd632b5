//! Exact geometric predicates over points with cyclotomic coordinates.
//!
//! Zero tests reduce to canonical cyclotomic form; strict sign tests use
//! certified interval evaluation with precision escalation (terminating
//! because nonzero algebraic numbers are bounded away from zero).

use crate::cyclo::CycloInt;
use num_bigint::BigInt;

pub type Point = CycloInt;

/// Certified f64 prefilter for cross/dot products of two vectors: returns
/// (cross, dot, error bound).
fn fast_products(u: &Point, v: &Point) -> (f64, f64, f64) {
    let (ux, uy) = u.embed_fast();
    let (vx, vy) = v.embed_fast();
    let n = u.order() as f64;
    let bound = (u.coeff_abs_sum() + 1.0) * (v.coeff_abs_sum() + 1.0) * n * 1e-12;
    (ux * vy - uy * vx, ux * vx + uy * vy, bound)
}

/// Sign of the cross product Im(conj(b-a) * (c-a)): orientation of c
/// relative to the directed line a -> b. 1 = left, -1 = right, 0 = collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let u = b.sub(a).expect("same order");
    let v = c.sub(a).expect("same order");
    let (cross, _, bound) = fast_products(&u, &v);
    if cross > bound {
        return 1;
    }
    if cross < -bound {
        return -1;
    }
    u.conj().mul(&v).expect("same order").im_sign()
}

/// Sign of the dot product Re(conj(u) * v).
pub fn dot_sign(u: &Point, v: &Point) -> i8 {
    let (_, dot, bound) = fast_products(u, v);
    if dot > bound {
        return 1;
    }
    if dot < -bound {
        return -1;
    }
    u.conj().mul(v).expect("same order").re_sign()
}

/// True when p lies on the closed segment [a, b].
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let ab = b.sub(a).expect("same order");
    let ap = p.sub(a).expect("same order");
    if dot_sign(&ab, &ap) < 0 {
        return false;
    }
    let pb = p.sub(b).expect("same order");
    dot_sign(&ab, &pb) <= 0
}

/// True when p lies strictly inside the open segment (a, b).
pub fn strictly_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let ab = b.sub(a).expect("same order");
    let ap = p.sub(a).expect("same order");
    if dot_sign(&ab, &ap) <= 0 {
        return false;
    }
    let pb = p.sub(b).expect("same order");
    dot_sign(&ab, &pb) < 0
}

/// Proper or improper intersection of closed segments, excluding the case of
/// merely sharing endpoints.
pub fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true; // proper crossing
    }
    // collinear/touching cases: any endpoint strictly inside the other segment
    strictly_on_segment(c, a, b)
        || strictly_on_segment(d, a, b)
        || strictly_on_segment(a, c, d)
        || strictly_on_segment(b, c, d)
}

/// Winding-number point location: 1 inside, 0 on the boundary, -1 outside.
pub fn point_in_polygon(p: &Point, poly: &[Point]) -> i8 {
    let m = poly.len();
    for i in 0..m {
        if on_segment(p, &poly[i], &poly[(i + 1) % m]) {
            return 0;
        }
    }
    let mut wn = 0i32;
    for i in 0..m {
        let a = &poly[i];
        let b = &poly[(i + 1) % m];
        let ya = a.sub(p).expect("same order").im_sign();
        let yb = b.sub(p).expect("same order").im_sign();
        if ya <= 0 && yb > 0 {
            if orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if ya > 0 && yb <= 0 && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        1
    } else {
        -1
    }
}

/// `sum (conj(z_i) z_{i+1} - z_i conj(z_{i+1}))`, purely imaginary and equal
/// to 4i times the signed area.
pub fn twice_area_quad(poly: &[Point]) -> CycloInt {
    let n = poly[0].order();
    let mut acc = CycloInt::zero(n);
    let m = poly.len();
    for i in 0..m {
        let z = &poly[i];
        let w = &poly[(i + 1) % m];
        let t = z.conj().mul(w).expect("same order");
        let s = z.mul(&w.conj()).expect("same order");
        acc = acc.add(&t.sub(&s).expect("same order")).expect("same order");
    }
    acc
}

/// Sign of the polygon's signed area (1 = counter-clockwise).
pub fn area_sign(poly: &[Point]) -> i8 {
    twice_area_quad(poly).im_sign()
}

/// True if the closed polygon is simple: vertices distinct, no edge
/// degenerate, and non-adjacent edges disjoint.
pub fn is_simple_polygon(poly: &[Point]) -> bool {
    let m = poly.len();
    if m < 3 {
        return false;
    }
    for i in 0..m {
        if poly[i].sub(&poly[(i + 1) % m]).expect("same order").is_zero() {
            return false;
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            let (a, b) = (&poly[i], &poly[(i + 1) % m]);
            let (c, d) = (&poly[j], &poly[(j + 1) % m]);
            if adjacent {
                // adjacent edges may only share the single common endpoint
                if strictly_on_segment(c, a, b)
                    || strictly_on_segment(b, c, d)
                    || (j == i + 1 && on_segment(d, a, b) && !d.equals(a).unwrap_or(false))
                {
                    return false;
                }
            } else if segments_cross(a, b, c, d)
                || c.equals(a).unwrap_or(false)
                || c.equals(b).unwrap_or(false)
                || d.equals(a).unwrap_or(false)
            {
                return false;
            }
        }
    }
    true
}

/// Direction class of a nonzero vector: the j in [0, 4n) with
/// `v = |v| * e^{i j pi / 2n}`, when the direction is such a multiple.
pub fn direction_class(v: &Point) -> Option<usize> {
    let n = v.order();
    if v.is_zero() {
        return None;
    }
    let v2 = v.mul(v).expect("same order");
    let nsq = v.norm_sq();
    for j2 in 0..2 * n {
        let cand = CycloInt::root(n, j2 as i64).expect("order ok").mul(&nsq).expect("same order");
        if v2.equals(&cand).unwrap_or(false) {
            // direction is (j2/2) * pi/n or that plus pi; disambiguate by signs
            let (im, re) = (v.im_sign(), v.re_sign());
            for &j in &[j2, j2 + 2 * n] {
                let (eim, ere) = expected_signs(j, n);
                if im == eim && re == ere {
                    return Some(j);
                }
            }
            return None;
        }
    }
    None
}

/// Signs of (sin, cos)(j*pi/2n) for j in [0, 4n).
fn expected_signs(j: usize, n: usize) -> (i8, i8) {
    let j = j % (4 * n);
    let im: i8 = if j == 0 || j == 2 * n {
        0
    } else if j < 2 * n {
        1
    } else {
        -1
    };
    let re: i8 = if j == n || j == 3 * n {
        0
    } else if j < n || j > 3 * n {
        1
    } else {
        -1
    };
    (im, re)
}

/// Interior angle at vertex b of the path a -> b -> c, in units of pi/2n
/// (counter-clockwise polygons), when it is such a multiple.
pub fn interior_angle_class(a: &Point, b: &Point, c: &Point) -> Option<usize> {
    let n = a.order();
    let incoming = b.sub(a).expect("same order");
    let outgoing = c.sub(b).expect("same order");
    let d_in = direction_class(&incoming)?;
    let d_out = direction_class(&outgoing)?;
    // interior angle = pi - turn; in pi/2n units: 2n - (d_out - d_in)
    let turn = ((d_out + 8 * n) - d_in) % (4 * n);
    let angle = (2 * n + 4 * n - turn) % (4 * n);
    if angle == 0 {
        None
    } else {
        Some(angle)
    }
}

/// Split key ordering: exact comparison of two points along a segment
/// direction (used to sort T-junction split points).
pub fn compare_along(dir: &Point, a: &Point, b: &Point) -> std::cmp::Ordering {
    let d = b.sub(a).expect("same order");
    let s = dot_sign(dir, &d);
    match s {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

/// Canonical hashable key for a point (canonical cyclotomic coefficients of
/// re+im as one element).
pub fn point_key(p: &Point) -> Vec<BigInt> {
    p.canonical()
}
