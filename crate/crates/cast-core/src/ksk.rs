//! The Kannan-Soroker-Kenyon tileability criterion for polygons to be
//! covered by parallelograms.
//!
//! The boundary is a closed polygon of segments whose directions are
//! multiples of pi/2n; segments that are worm endpoints (line segments R_0
//! and inner sides of boundary-bisected rhombs) carry endpoint ids, and a
//! pairing matches endpoints of the same worm. The criterion: paired
//! segments are antiparallel, and every two interleaved pairs cross with a
//! signed angle strictly inside (0, pi).

use crate::cyclo::CycloInt;
use crate::error::CastError;
use crate::geom;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KskStep {
    /// Direction class: the segment direction is e^(i pi dir / 2n).
    pub dir: usize,
    /// Worm endpoint id carried by this segment, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worm: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KskBoundary {
    pub n: usize,
    pub steps: Vec<KskStep>,
    /// Pairs of worm endpoint ids.
    pub pairing: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct KskViolation {
    pub pair_a: (usize, usize),
    pub pair_b: (usize, usize),
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct KskReport {
    pub ok: bool,
    pub violation: Option<KskViolation>,
}

/// Evaluate the criterion; the first violating pair of crossing worms is
/// reported. Rotating the boundary or reversing its orientation does not
/// change the verdict.
pub fn ksk_check(b: &KskBoundary) -> Result<KskReport, CastError> {
    let n = b.n;
    if n < 2 {
        return Err(CastError::Domain("KSK requires n >= 2".into()));
    }
    let m4 = 4 * n;
    // exact closure check in Z[zeta_4n] (CycloInt of order 2n)
    let mut pos = CycloInt::zero(2 * n);
    for s in &b.steps {
        if s.dir >= m4 {
            return Err(CastError::Domain(format!("direction class {} outside [0, {})", s.dir, m4)));
        }
        pos = pos.add(&CycloInt::root(2 * n, s.dir as i64)?)?;
    }
    if !pos.is_zero() {
        return Err(CastError::Domain("boundary does not close".into()));
    }
    // normalize to counter-clockwise traversal
    let mut verts = Vec::with_capacity(b.steps.len());
    let mut acc = CycloInt::zero(2 * n);
    for s in &b.steps {
        verts.push(acc.clone());
        acc = acc.add(&CycloInt::root(2 * n, s.dir as i64)?)?;
    }
    let mut steps: Vec<KskStep> = b.steps.clone();
    if geom::area_sign(&verts) < 0 {
        steps.reverse();
        for s in &mut steps {
            s.dir = (s.dir + 2 * n) % m4;
        }
    }
    // locate worm endpoints in boundary order
    let mut endpoints: Vec<(usize, usize, usize)> = Vec::new(); // (id, step index, dir)
    for (i, s) in steps.iter().enumerate() {
        if let Some(id) = s.worm {
            endpoints.push((id, i, s.dir));
        }
    }
    let find = |id: usize| -> Result<(usize, usize), CastError> {
        endpoints
            .iter()
            .find(|(eid, _, _)| *eid == id)
            .map(|&(_, idx, dir)| (idx, dir))
            .ok_or_else(|| CastError::Domain(format!("worm endpoint {} not present on the boundary", id)))
    };
    // validate the pairing: every endpoint exactly once, antiparallel mates
    let mut used = std::collections::HashSet::new();
    for &(x, y) in &b.pairing {
        for id in [x, y] {
            if !used.insert(id) {
                return Err(CastError::Domain(format!("worm endpoint {} paired twice", id)));
            }
        }
        let (_, dx) = find(x)?;
        let (_, dy) = find(y)?;
        if (dx + 2 * n) % m4 != dy {
            return Err(CastError::Domain(format!(
                "paired endpoints {} and {} are not antiparallel",
                x, y
            )));
        }
    }
    for &(id, _, _) in &endpoints {
        if !used.contains(&id) {
            return Err(CastError::Domain(format!("worm endpoint {} is unpaired", id)));
        }
    }
    // signed crossing test for interleaved pairs
    let total = steps.len();
    for (ai, &(a1, a2)) in b.pairing.iter().enumerate() {
        let (pa1, da1) = find(a1)?;
        let (pa2, _) = find(a2)?;
        for &(b1, b2) in b.pairing.iter().skip(ai + 1) {
            let (pb1, db1) = find(b1)?;
            let (pb2, _) = find(b2)?;
            // cyclic order with origin at pa1
            let rel = |p: usize| (p + total - pa1) % total;
            let (ra2, rb1, rb2) = (rel(pa2), rel(pb1), rel(pb2));
            let b1_inside = rb1 > 0 && rb1 < ra2;
            let b2_inside = rb2 > 0 && rb2 < ra2;
            if b1_inside == b2_inside {
                continue; // not interleaved
            }
            // orient chord b so its first endpoint is the one inside (pa1 .. pa2)
            let db = if b1_inside { db1 } else { (db1 + 2 * n) % m4 };
            let diff = (db + m4 - da1) % m4;
            if diff == 0 || diff >= 2 * n {
                return Ok(KskReport {
                    ok: false,
                    violation: Some(KskViolation {
                        pair_a: (a1, a2),
                        pair_b: (b1, b2),
                        reason: if diff == 0 || diff == 2 * n {
                            "crossing worms are parallel (angle 0 or pi)".into()
                        } else {
                            "crossing angle falls outside (0, pi)".into()
                        },
                    }),
                });
            }
        }
    }
    Ok(KskReport { ok: true, violation: None })
}

/// The inner polygon of a supertile rhomb R_j whose four edges each carry
/// the given even-index sequence of boundary-bisected rhombs and R_0
/// segments, with worms paired across opposite edges. A test harness for
/// the edge configurations.
pub fn rhomb_edge_instance(n: usize, j: usize, edge: &[usize]) -> Result<KskBoundary, CastError> {
    if j == 0 || j >= n {
        return Err(CastError::Domain("rhomb index out of range".into()));
    }
    // CCW rhomb with interior angle j*pi/n at the first corner: successive
    // edge directions 0, 2j, 2n, 2n + 2j (classes of pi/2n).
    let dirs = [0usize, 2 * j, 2 * n, (2 * n + 2 * j) % (4 * n)];
    let mut steps = Vec::new();
    let mut worm_id = 0usize;
    // per edge: one entry per sequence node, holding its endpoint (id, class)
    let mut per_edge: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for (ei, &e) in dirs.iter().enumerate() {
        // opposite edges are translates, so traversal reads them reversed
        let seq: Vec<usize> = if ei < 2 {
            edge.to_vec()
        } else {
            edge.iter().rev().copied().collect()
        };
        let mut nodes = Vec::new();
        for &k in &seq {
            let mut node = Vec::new();
            if k == 0 {
                let dir = e % (4 * n);
                steps.push(KskStep { dir, worm: Some(worm_id) });
                node.push((worm_id, dir));
                worm_id += 1;
            } else {
                // bisected rhomb R_k contributes its two inner sides, at
                // classes e + k and e - k: two worm endpoints
                for dir in [(e + k) % (4 * n), (e + 4 * n - k) % (4 * n)] {
                    steps.push(KskStep { dir, worm: Some(worm_id) });
                    node.push((worm_id, dir));
                    worm_id += 1;
                }
            }
            nodes.push(node);
        }
        per_edge.push(nodes);
    }
    // pair endpoints across opposite edges: nodes in reversed order, sides
    // matched by antiparallel class
    let mut pairing = Vec::new();
    for (ea, eb) in [(0usize, 2usize), (1, 3)] {
        let a = &per_edge[ea];
        let b = &per_edge[eb];
        if a.len() != b.len() {
            return Err(CastError::Domain("opposite edges carry different sequences".into()));
        }
        for (i, node_a) in a.iter().enumerate() {
            let node_b = &b[b.len() - 1 - i];
            for &(ida, da) in node_a {
                let want = (da + 2 * n) % (4 * n);
                let Some(&(idb, _)) = node_b.iter().find(|&&(_, db)| db == want) else {
                    return Err(CastError::Domain("opposite nodes are not antiparallel".into()));
                };
                pairing.push((ida, idb));
            }
        }
    }
    Ok(KskBoundary { n, steps, pairing })
}
