//! Prototiles, substitution rules and patches with exact cyclotomic
//! vertices.
//!
//! Placements act as `v -> zeta_2n^rot * (conj?)(v) + t`. A rule dissects the
//! eta-inflated parent into placed children; children whose symmetric
//! diagonal lies on the parent boundary may be flagged as bisected, in which
//! case only the half on the parent side belongs to the rule (the convention
//! used by rhombic tilings whose supertile edges bisect edge rhombs).

use crate::cyclo::CycloInt;
use crate::diag::DiagElem;
use crate::error::CastError;
use crate::geom;
use crate::matrix::{is_primitive, SubstMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Rigid placement: rotation by an integer power of zeta_2n, optional
/// reflection (conjugation applied before the rotation), then translation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub rot: usize,
    pub reflect: bool,
    pub t: CycloInt,
}

impl Placement {
    pub fn identity(n: usize) -> Self {
        Placement { rot: 0, reflect: false, t: CycloInt::zero(n) }
    }

    pub fn apply(&self, v: &CycloInt) -> CycloInt {
        let n = v.order();
        let w = if self.reflect { v.conj() } else { v.clone() };
        let rotated = CycloInt::root(n, self.rot as i64).expect("order ok").mul(&w).expect("same order");
        rotated.add(&self.t).expect("same order")
    }

    /// Composition: (self o other)(v) = self(other(v)).
    pub fn compose(&self, other: &Placement) -> Placement {
        let n = self.t.order();
        let m = 2 * n;
        let rot = if self.reflect {
            (self.rot + m - other.rot % m) % m
        } else {
            (self.rot + other.rot) % m
        };
        Placement {
            rot,
            reflect: self.reflect ^ other.reflect,
            t: self.apply(&other.t),
        }
    }
}

/// Prototile: a simple counter-clockwise polygon whose interior angles are
/// integer multiples of pi/2n; the optional tip marks chirality for
/// rendering.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Prototile {
    pub id: String,
    pub n: usize,
    pub vertices: Vec<CycloInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tip: Option<usize>,
}

impl Prototile {
    pub fn new(id: &str, n: usize, vertices: Vec<CycloInt>) -> Self {
        Prototile { id: id.to_string(), n, vertices, tip: None }
    }

    /// Validate the prototile invariants.
    pub fn validate(&self) -> Result<(), CastError> {
        if self.vertices.len() < 3 {
            return Err(CastError::Verification(format!("prototile {}: fewer than 3 vertices", self.id)));
        }
        if !geom::is_simple_polygon(&self.vertices) {
            return Err(CastError::Verification(format!("prototile {}: polygon is not simple", self.id)));
        }
        if geom::area_sign(&self.vertices) <= 0 {
            return Err(CastError::Verification(format!("prototile {}: vertices are not counter-clockwise", self.id)));
        }
        let m = self.vertices.len();
        for i in 0..m {
            let a = &self.vertices[(i + m - 1) % m];
            let b = &self.vertices[i];
            let c = &self.vertices[(i + 1) % m];
            if geom::interior_angle_class(a, b, c).is_none() {
                return Err(CastError::Verification(format!(
                    "prototile {}: interior angle at vertex {} is not a multiple of pi/2n",
                    self.id, i
                )));
            }
        }
        Ok(())
    }
}

/// A placed child of a substitution rule. `bisected = Some((i, j))` keeps the
/// cyclic vertex slice i..=j of the prototile, closed by the diagonal
/// [v_j, v_i]; the diagonal must land on the parent boundary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChildPlacement {
    pub id: String,
    #[serde(flatten)]
    pub placement: Placement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bisected: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubstRule {
    pub parent: String,
    pub children: Vec<ChildPlacement>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleSet {
    pub n: usize,
    pub name: String,
    pub multiplier: CycloInt,
    pub prototiles: Vec<Prototile>,
    pub rules: Vec<SubstRule>,
}

/// One tile of a patch.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlacedTile {
    pub id: String,
    #[serde(flatten)]
    pub placement: Placement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bisected: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Patch {
    pub n: usize,
    pub generation: u32,
    pub tiles: Vec<PlacedTile>,
}

impl RuleSet {
    pub fn prototile(&self, id: &str) -> Result<&Prototile, CastError> {
        self.prototiles
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| CastError::Domain(format!("unknown prototile id {:?}", id)))
    }

    pub fn rule(&self, parent: &str) -> Result<&SubstRule, CastError> {
        self.rules
            .iter()
            .find(|r| r.parent == parent)
            .ok_or_else(|| CastError::Domain(format!("no substitution rule for prototile {:?}", parent)))
    }

    pub fn prototile_index(&self, id: &str) -> Option<usize> {
        self.prototiles.iter().position(|p| p.id == id)
    }

    /// Structural validation: ids defined, prototiles valid, every rule's
    /// parent defined, one rule per prototile.
    pub fn validate(&self) -> Result<(), CastError> {
        for p in &self.prototiles {
            if p.n != self.n {
                return Err(CastError::Verification(format!("prototile {} has order {} != {}", p.id, p.n, self.n)));
            }
            p.validate()?;
        }
        for r in &self.rules {
            self.prototile(&r.parent)?;
            for c in &r.children {
                self.prototile(&c.id)?;
            }
        }
        Ok(())
    }

    /// The placed polygon of a child or tile (the kept slice when bisected),
    /// re-oriented counter-clockwise for reflected placements.
    pub fn placed_polygon(&self, id: &str, placement: &Placement, bisected: Option<(usize, usize)>) -> Result<Vec<CycloInt>, CastError> {
        let proto = self.prototile(id)?;
        let verts: Vec<CycloInt> = proto.vertices.iter().map(|v| placement.apply(v)).collect();
        let mut poly = match bisected {
            None => verts,
            Some((i, j)) => slice_polygon(&verts, i, j),
        };
        if placement.reflect {
            poly.reverse();
        }
        Ok(poly)
    }
}

/// Cyclic slice i..=j of a polygon, closed by the diagonal [v_j, v_i].
pub fn slice_polygon(verts: &[CycloInt], i: usize, j: usize) -> Vec<CycloInt> {
    let m = verts.len();
    let mut out = Vec::new();
    let mut k = i;
    loop {
        out.push(verts[k].clone());
        if k == j {
            break;
        }
        k = (k + 1) % m;
    }
    out
}

/// Exact area divided by A_{n,1} = sin(pi/n)/2, as a diagonal element.
/// Works for any simple CCW polygon with cyclotomic vertices whose area is an
/// integer multiple of A_{n,1}.
pub fn polygon_area_ratio(n: usize, poly: &[CycloInt]) -> Result<DiagElem, CastError> {
    let t = geom::twice_area_quad(poly); // 4i * area
    if t.is_zero() {
        return Err(CastError::Verification("degenerate polygon: zero area".into()));
    }
    // divide by zeta - conj(zeta) = 2i sin(pi/n): quotient = area / A_{n,1}
    let div = CycloInt::root(n, 1)?.sub(&CycloInt::root(n, -1)?)?;
    let q = t
        .exact_div(&div)?
        .ok_or_else(|| CastError::Verification("vertices not cyclotomic-consistent: area is not a multiple of A(n,1)".into()))?;
    if !q.is_real() {
        return Err(CastError::Verification("area quotient is not real".into()));
    }
    let d = DiagElem::from_real_cyclo(&q)?
        .ok_or_else(|| CastError::Verification("area ratio is not integral over the diagonal basis".into()))?;
    let d = match d.nonneg_representative() {
        Some(rep) => rep,
        None => d,
    };
    if d.coeffs().iter().any(|c| c.is_negative()) && d.value_f64() < 0.0 {
        return Err(CastError::Verification("negative polygon area (clockwise vertices?)".into()));
    }
    Ok(d)
}

/// Exact area ratio of a prototile.
pub fn area_ratio(p: &Prototile) -> Result<DiagElem, CastError> {
    polygon_area_ratio(p.n, &p.vertices)
}

// ---- directed edge multiset with T-junction splitting ----

type PtKey = Vec<BigInt>;

fn seg_points_key(a: &CycloInt, b: &CycloInt) -> (PtKey, PtKey) {
    (geom::point_key(a), geom::point_key(b))
}

/// Multiset of directed segments with exact cancellation. Segments are split
/// at every registered vertex lying strictly inside them before counting.
pub struct EdgeCancellation {
    /// undirected key -> (representative endpoints, signed count)
    counts: HashMap<(PtKey, PtKey), (CycloInt, CycloInt, i64)>,
    points: Vec<CycloInt>,
    point_keys: HashMap<PtKey, usize>,
}

impl EdgeCancellation {
    pub fn new() -> Self {
        EdgeCancellation { counts: HashMap::new(), points: Vec::new(), point_keys: HashMap::new() }
    }

    pub fn register_point(&mut self, p: &CycloInt) {
        let k = geom::point_key(p);
        if !self.point_keys.contains_key(&k) {
            self.point_keys.insert(k, self.points.len());
            self.points.push(p.clone());
        }
    }

    pub fn register_polygon_points(&mut self, poly: &[CycloInt]) {
        for p in poly {
            self.register_point(p);
        }
    }

    fn add_split_segment(&mut self, a: &CycloInt, b: &CycloInt, sign: i64) {
        // collect registered points strictly inside [a, b], sort along the
        // direction, then emit unit pieces
        let mut inner: Vec<CycloInt> = self
            .points
            .iter()
            .filter(|p| geom::strictly_on_segment(p, a, b))
            .cloned()
            .collect();
        let dir = b.sub(a).expect("same order");
        inner.sort_by(|p, q| geom::compare_along(&dir, p, q));
        let mut prev = a.clone();
        for p in inner.into_iter().chain(std::iter::once(b.clone())) {
            self.add_piece(&prev, &p, sign);
            prev = p;
        }
    }

    fn add_piece(&mut self, a: &CycloInt, b: &CycloInt, sign: i64) {
        let (ka, kb) = seg_points_key(a, b);
        let (key, s) = if ka <= kb {
            (((ka, kb)), sign)
        } else {
            (((kb, ka)), -sign)
        };
        let entry = self
            .counts
            .entry(key)
            .or_insert_with(|| {
                // store the representative with the canonically smaller end first
                let (kaa, _) = seg_points_key(a, b);
                if kaa <= seg_points_key(b, a).0 {
                    (a.clone(), b.clone(), 0)
                } else {
                    (b.clone(), a.clone(), 0)
                }
            });
        entry.2 += s;
    }

    /// Add all directed edges of a polygon with the given sign.
    pub fn add_polygon(&mut self, poly: &[CycloInt], sign: i64) {
        let m = poly.len();
        for i in 0..m {
            self.add_split_segment(&poly[i], &poly[(i + 1) % m], sign);
        }
    }

    /// Residue after cancellation: directed segments (a -> b) with
    /// multiplicity, empty when everything cancels.
    pub fn residue(&self) -> Vec<(CycloInt, CycloInt, i64)> {
        let mut out: Vec<(CycloInt, CycloInt, i64)> = self
            .counts
            .values()
            .filter(|(_, _, c)| *c != 0)
            .map(|(a, b, c)| (a.clone(), b.clone(), *c))
            .collect();
        out.sort_by(|x, y| seg_points_key(&x.0, &x.1).cmp(&seg_points_key(&y.0, &y.1)));
        out
    }

    /// Chain the residue into closed directed cycles; None when a chain does
    /// not close or degrees are inconsistent.
    pub fn residue_cycles(&self) -> Option<Vec<Vec<CycloInt>>> {
        let mut edges: Vec<(CycloInt, CycloInt)> = Vec::new();
        for (a, b, c) in self.residue() {
            let (from, to, times) = if c > 0 { (a, b, c) } else { (b, a, -c) };
            for _ in 0..times {
                edges.push((from.clone(), to.clone()));
            }
        }
        let mut used = vec![false; edges.len()];
        let mut cycles = Vec::new();
        loop {
            let Some(start) = used.iter().position(|&u| !u) else { break };
            used[start] = true;
            let mut cycle = vec![edges[start].0.clone()];
            let mut cur = edges[start].1.clone();
            let origin = geom::point_key(&edges[start].0);
            let mut guard = 0;
            while geom::point_key(&cur) != origin {
                cycle.push(cur.clone());
                let ck = geom::point_key(&cur);
                let next = edges
                    .iter()
                    .enumerate()
                    .find(|(i, (a, _))| !used[*i] && geom::point_key(a) == ck);
                match next {
                    Some((i, (_, b))) => {
                        used[i] = true;
                        cur = b.clone();
                    }
                    None => return None,
                }
                guard += 1;
                if guard > edges.len() + 1 {
                    return None;
                }
            }
            cycles.push(cycle);
        }
        Some(cycles)
    }
}

impl Default for EdgeCancellation {
    fn default() -> Self {
        Self::new()
    }
}

// ---- rule verification ----

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryClass {
    /// Children tile the inflated parent exactly.
    Exact,
    /// Children close up into cycles with zero net area, but the union is a
    /// fringed region instead of the inflated parent (supertile boundaries
    /// interlock with the neighbours').
    Fringed { residue_segments: usize },
    /// Cancellation left an inconsistent residue.
    Broken(String),
}

#[derive(Clone, Debug)]
pub struct RuleReport {
    pub parent: String,
    pub area_ok: bool,
    pub boundary: BoundaryClass,
    pub containment_ok: bool,
    pub messages: Vec<String>,
}

impl RuleReport {
    pub fn exact_pass(&self) -> bool {
        self.area_ok && self.boundary == BoundaryClass::Exact && self.containment_ok
    }

    /// Passes either exactly or as a consistent fringed rule.
    pub fn consistent(&self) -> bool {
        self.area_ok
            && match self.boundary {
                BoundaryClass::Exact => self.containment_ok,
                BoundaryClass::Fringed { .. } => true,
                BoundaryClass::Broken(_) => false,
            }
    }
}

/// The area eigenvalue lambda = |eta|^2 as a diagonal element.
pub fn lambda_of(rs: &RuleSet) -> Result<DiagElem, CastError> {
    let nsq = rs.multiplier.norm_sq();
    DiagElem::from_real_cyclo(&nsq)?
        .ok_or_else(|| CastError::Verification("multiplier norm is not in the diagonal ring".into()))
        .map(|d| d.nonneg_representative().unwrap_or(d))
}

/// Verify one substitution rule: exact area balance, boundary cancellation
/// against the inflated parent, and containment of the children.
pub fn verify_rule(rs: &RuleSet, rule: &SubstRule) -> Result<RuleReport, CastError> {
    let mut messages = Vec::new();
    let parent = rs.prototile(&rule.parent)?;
    let lambda = lambda_of(rs)?;

    // (a) AREA: sum of child areas equals lambda times the parent area
    let parent_ratio = area_ratio(parent)?;
    let want = lambda.dpf_mul(&parent_ratio)?;
    let mut got = DiagElem::zero(rs.n);
    let mut child_polys = Vec::new();
    for c in &rule.children {
        let poly = rs.placed_polygon(&c.id, &c.placement, c.bisected)?;
        let r = polygon_area_ratio(rs.n, &poly)?;
        got = got.add(&r)?;
        child_polys.push(poly);
    }
    let area_ok = got.value_equals(&want)?;
    if !area_ok {
        messages.push(format!(
            "area: children sum to {} but lambda * parent = {}",
            got, want
        ));
    }

    // inflated parent polygon
    let inflated: Vec<CycloInt> = parent
        .vertices
        .iter()
        .map(|v| rs.multiplier.mul(v).map_err(CastError::from))
        .collect::<Result<Vec<_>, _>>()?;

    // (b) BOUNDARY: child edges cancel to exactly the inflated boundary
    let mut canc = EdgeCancellation::new();
    for poly in &child_polys {
        canc.register_polygon_points(poly);
    }
    canc.register_polygon_points(&inflated);
    for poly in &child_polys {
        canc.add_polygon(poly, 1);
    }
    canc.add_polygon(&inflated, -1);
    let residue = canc.residue();
    let boundary = if residue.is_empty() {
        BoundaryClass::Exact
    } else {
        match canc.residue_cycles() {
            Some(cycles) => {
                // net signed area of the residue must vanish (pokes balance bites)
                let mut net = CycloInt::zero(rs.n);
                for cyc in &cycles {
                    net = net.add(&geom::twice_area_quad(cyc))?;
                }
                if net.is_zero() {
                    BoundaryClass::Fringed { residue_segments: residue.len() }
                } else {
                    messages.push("boundary: residue cycles enclose nonzero net area".into());
                    BoundaryClass::Broken("unbalanced residue area".into())
                }
            }
            None => {
                messages.push(format!("boundary: residue does not close ({} segments)", residue.len()));
                BoundaryClass::Broken("open residue chain".into())
            }
        }
    };

    // (c) CONTAINMENT: child vertices inside or on the inflated parent
    let mut containment_ok = true;
    'outer: for (ci, poly) in child_polys.iter().enumerate() {
        for v in poly {
            if geom::point_in_polygon(v, &inflated) < 0 {
                containment_ok = false;
                messages.push(format!(
                    "containment: child {} ({}) has a vertex outside the inflated parent",
                    ci, rule.children[ci].id
                ));
                break 'outer;
            }
        }
    }

    Ok(RuleReport { parent: rule.parent.clone(), area_ok, boundary, containment_ok, messages })
}

/// Verify every rule of the set.
pub fn verify_ruleset(rs: &RuleSet) -> Result<Vec<RuleReport>, CastError> {
    rs.validate()?;
    rs.rules.iter().map(|r| verify_rule(rs, r)).collect()
}

// ---- substitution ----

/// Substitute every tile of the patch once.
pub fn substitute(rs: &RuleSet, patch: &Patch) -> Result<Patch, CastError> {
    let eta = &rs.multiplier;
    let eta_real = eta.is_real();
    let mut tiles = Vec::new();
    for tile in &patch.tiles {
        let rule = rs.rule(&tile.id)?;
        let g = &tile.placement;
        if g.reflect && !eta_real {
            return Err(CastError::Verification(
                "cannot substitute a reflected tile under a complex multiplier".into(),
            ));
        }
        // global inflation: eta * g(P) is covered by (rot, reflect, eta*t) o child
        let outer = Placement { rot: g.rot, reflect: g.reflect, t: eta.mul(&g.t)? };
        match tile.bisected {
            None => {
                for c in &rule.children {
                    tiles.push(PlacedTile {
                        id: c.id.clone(),
                        placement: outer.compose(&c.placement),
                        bisected: c.bisected,
                    });
                }
            }
            Some((ci, cj)) => {
                // inflated cut line through the placed, inflated parent copy
                let proto = rs.prototile(&tile.id)?;
                let la = eta.mul(&g.apply(&proto.vertices[ci]))?;
                let lb = eta.mul(&g.apply(&proto.vertices[cj]))?;
                // a kept-side probe: image of the slice interior
                let kept_probe = {
                    let m = proto.vertices.len();
                    let mid = proto.vertices[(ci + 1) % m].clone();
                    eta.mul(&g.apply(&mid))?
                };
                let keep_sign = geom::orient(&la, &lb, &kept_probe);
                for c in &rule.children {
                    let poly = rs.placed_polygon(&c.id, &c.placement, c.bisected)?;
                    let placed: Vec<CycloInt> = poly.iter().map(|v| outer.apply(v)).collect();
                    let mut sides = Vec::new();
                    for v in &placed {
                        sides.push(geom::orient(&la, &lb, v));
                    }
                    if sides.iter().all(|&s| s == 0 || s == keep_sign) {
                        if sides.iter().any(|&s| s == keep_sign) {
                            tiles.push(PlacedTile {
                                id: c.id.clone(),
                                placement: outer.compose(&c.placement),
                                bisected: c.bisected,
                            });
                        }
                        // else: degenerate sliver entirely on the line; drop
                    } else if sides.iter().all(|&s| s == 0 || s == -keep_sign) {
                        // entirely on the discarded side
                    } else {
                        // crossing: the child must itself be axis-symmetric with
                        // a diagonal on the cut line
                        if c.bisected.is_some() {
                            return Err(CastError::Verification(
                                "bisected child crosses a parent cut line".into(),
                            ));
                        }
                        let child_proto = rs.prototile(&c.id)?;
                        let full_placement = outer.compose(&c.placement);
                        let full: Vec<CycloInt> =
                            child_proto.vertices.iter().map(|v| full_placement.apply(v)).collect();
                        let mv = full.len();
                        let on_line: Vec<usize> = (0..mv)
                            .filter(|&i| geom::orient(&la, &lb, &full[i]) == 0)
                            .collect();
                        if on_line.len() != 2 {
                            return Err(CastError::Verification(format!(
                                "child {} crosses the cut line without a diagonal on it",
                                c.id
                            )));
                        }
                        let (i, j) = (on_line[0], on_line[1]);
                        // keep the slice on the kept side
                        let probe = &full[(i + 1) % mv];
                        let (ki, kj) = if geom::orient(&la, &lb, probe) == keep_sign {
                            (i, j)
                        } else {
                            (j, i)
                        };
                        tiles.push(PlacedTile {
                            id: c.id.clone(),
                            placement: full_placement,
                            bisected: Some((ki, kj)),
                        });
                    }
                }
            }
        }
    }
    Ok(Patch { n: patch.n, generation: patch.generation + 1, tiles })
}

/// Iterate the substitution from a single seed tile.
pub fn iterate(rs: &RuleSet, seed: &str, steps: u32) -> Result<Patch, CastError> {
    rs.prototile(seed)?;
    let mut patch = Patch {
        n: rs.n,
        generation: 0,
        tiles: vec![PlacedTile { id: seed.to_string(), placement: Placement::identity(rs.n), bisected: None }],
    };
    for _ in 0..steps {
        patch = substitute(rs, &patch)?;
    }
    Ok(patch)
}

/// Per-prototile tile counts, in prototile order. Bisected tiles count 1/2;
/// the doubled counts are returned to stay integral.
pub fn doubled_counts(rs: &RuleSet, patch: &Patch) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); rs.prototiles.len()];
    for t in &patch.tiles {
        if let Some(i) = rs.prototile_index(&t.id) {
            counts[i] += if t.bisected.is_some() { 1 } else { 2 };
        }
    }
    counts
}

/// Substitution matrix of the rule set: entry (i, j) counts copies of
/// prototile j in the rule for prototile i (bisected children count 1/2;
/// the halves must pair up so the matrix is integral). The exact area
/// eigen-relation with lambda = |eta|^2 is asserted.
pub fn extract_matrix(rs: &RuleSet) -> Result<SubstMatrix, CastError> {
    let l = rs.prototiles.len();
    let mut doubled = vec![vec![0i64; l]; l];
    for r in &rs.rules {
        let pi = rs
            .prototile_index(&r.parent)
            .ok_or_else(|| CastError::Domain(format!("unknown parent {:?}", r.parent)))?;
        for c in &r.children {
            let cj = rs
                .prototile_index(&c.id)
                .ok_or_else(|| CastError::Domain(format!("unknown child {:?}", c.id)))?;
            doubled[pi][cj] += if c.bisected.is_some() { 1 } else { 2 };
        }
    }
    let mut rows = Vec::with_capacity(l);
    for row in &doubled {
        let mut out = Vec::with_capacity(l);
        for &v in row {
            if v % 2 != 0 {
                return Err(CastError::Verification("bisected children do not pair up in the count matrix".into()));
            }
            out.push(v / 2);
        }
        rows.push(out);
    }
    let mat = SubstMatrix::from_rows(rs.n, &rows)?;
    // exact area eigen-relation
    let lambda = lambda_of(rs)?;
    let ratios: Vec<DiagElem> = rs
        .prototiles
        .iter()
        .map(area_ratio)
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..l {
        let mut acc = DiagElem::zero(rs.n);
        for j in 0..l {
            let e = mat.get(i, j);
            if !e.is_zero() {
                acc = acc.add(&ratios[j].scale(e))?;
            }
        }
        let want = lambda.dpf_mul(&ratios[i])?;
        if !acc.value_equals(&want)? {
            return Err(CastError::Verification(format!(
                "substitution matrix row {} fails the exact area eigen-relation",
                i
            )));
        }
    }
    Ok(mat)
}

/// Merge equal-area prototiles and return the merged count matrix (used to
/// compare against the reduced composed matrices).
pub fn extract_matrix_merged(rs: &RuleSet) -> Result<SubstMatrix, CastError> {
    let full = extract_matrix(rs)?;
    let ratios: Vec<DiagElem> = rs.prototiles.iter().map(area_ratio).collect::<Result<Vec<_>, _>>()?;
    // group prototiles by exact area value
    let mut groups: Vec<(DiagElem, Vec<usize>)> = Vec::new();
    'next: for (i, r) in ratios.iter().enumerate() {
        for (g, idxs) in groups.iter_mut() {
            if g.value_equals(r)? {
                idxs.push(i);
                continue 'next;
            }
        }
        groups.push((r.clone(), vec![i]));
    }
    let gl = groups.len();
    let mut rows = vec![vec![0i64; gl]; gl];
    for (gi, (_, idxs)) in groups.iter().enumerate() {
        let rep = idxs[0];
        for (gj, (_, jdxs)) in groups.iter().enumerate() {
            let mut sum = BigInt::zero();
            for &j in jdxs {
                sum += full.get(rep, j);
            }
            rows[gi][gj] = i64::try_from(&sum).map_err(|_| CastError::Verification("count overflow".into()))?;
        }
    }
    SubstMatrix::from_rows(rs.n, &rows)
}

// ---- aperiodicity and frequencies ----

#[derive(Debug, Clone)]
pub struct AperiodicityVerdict {
    pub verdict: Option<bool>,
    pub primitive: bool,
    /// (rule parent, child index a, child index b, rotation difference)
    pub witness: Option<(String, usize, usize, usize)>,
}

/// Theorem-based aperiodicity check: a primitive rule set with a rule that
/// contains two copies of one prototile differing by a nonzero rotation.
/// For n < 4 the verdict is undecided.
pub fn aperiodicity_check(rs: &RuleSet) -> Result<AperiodicityVerdict, CastError> {
    let mat = extract_matrix(rs)?;
    let primitive = is_primitive(&mat);
    let mut witness = None;
    'scan: for r in &rs.rules {
        for a in 0..r.children.len() {
            for b in a + 1..r.children.len() {
                let (ca, cb) = (&r.children[a], &r.children[b]);
                if ca.id == cb.id && ca.placement.reflect == cb.placement.reflect {
                    let diff = (cb.placement.rot + 2 * rs.n - ca.placement.rot) % (2 * rs.n);
                    if diff != 0 {
                        witness = Some((r.parent.clone(), a, b, diff));
                        break 'scan;
                    }
                }
            }
        }
    }
    let verdict = if rs.n < 4 {
        None
    } else {
        Some(primitive && witness.is_some())
    };
    Ok(AperiodicityVerdict { verdict, primitive, witness })
}

#[derive(Debug, Clone)]
pub struct FrequencyRatio {
    pub n: usize,
    pub value: f64,
    pub expression: String,
    /// No rational p/q with q <= 10^6 matches within 1e-12.
    pub irrational_within_bound: bool,
}

/// Frequency ratio f(P_2)/f(P_1) from the left eigenvector: sin(2pi/n)/2 for
/// n = 4, sin(2pi/n) for n >= 5.
pub fn frequency_ratio(n: usize) -> Result<FrequencyRatio, CastError> {
    if n < 4 {
        return Err(CastError::Domain("frequency ratio requires n >= 4".into()));
    }
    let s = (2.0 * std::f64::consts::PI / n as f64).sin();
    let (value, expression) = if n == 4 {
        (s / 2.0, "sin(2pi/4)/2".to_string())
    } else {
        (s, format!("sin(2pi/{})", n))
    };
    // sin of a rational angle is rational only for 0, 1/2, 1 (Niven), so the
    // membership test is exact; the continued-fraction probe cross-checks it
    let niven_rational = [0.0, 0.5, 1.0].iter().any(|v| (value.abs() - v).abs() < 1e-9);
    let cf_rational = is_rational_within(value, 1_000_000, 1e-13);
    Ok(FrequencyRatio {
        n,
        value,
        expression,
        irrational_within_bound: !(niven_rational && cf_rational),
    })
}

/// Continued-fraction rationality probe with bounded denominators.
pub fn is_rational_within(x: f64, max_den: u64, tol: f64) -> bool {
    let mut a = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, a.floor() as i64, 1i64);
    for _ in 0..64 {
        if (x.abs() - p1 as f64 / q1 as f64).abs() < tol {
            return (q1 as u64) <= max_den;
        }
        let frac = a - a.floor();
        if frac < 1e-15 {
            break;
        }
        a = 1.0 / frac;
        let ai = a.floor() as i64;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if q1 as u64 > max_den {
            return false;
        }
    }
    (x.abs() - p1 as f64 / q1.max(1) as f64).abs() < tol && (q1 as u64) <= max_den
}

// ---- girih prototile validation ----

#[derive(Debug, Clone)]
pub struct GirihReport {
    pub equilateral: bool,
    pub angles_ok: bool,
    pub violations: Vec<String>,
}

/// Validate the extended-girih conditions: equilateral with all inner angles
/// k*pi/n, k >= 2 (angle pi/n is excluded).
pub fn girih_validate(p: &Prototile) -> Result<GirihReport, CastError> {
    p.validate()?;
    let m = p.vertices.len();
    let n = p.n;
    let mut violations = Vec::new();
    let first_len = p.vertices[1].sub(&p.vertices[0])?.norm_sq();
    let mut equilateral = true;
    for i in 1..m {
        let e = p.vertices[(i + 1) % m].sub(&p.vertices[i])?;
        if !e.norm_sq().equals(&first_len)? {
            equilateral = false;
            violations.push(format!("edge {} has a different length", i));
        }
    }
    let mut angles_ok = true;
    for i in 0..m {
        let a = &p.vertices[(i + m - 1) % m];
        let b = &p.vertices[i];
        let c = &p.vertices[(i + 1) % m];
        match geom::interior_angle_class(a, b, c) {
            Some(cls) if cls % 2 == 0 => {
                let k = cls / 2; // angle = k * pi/n
                if k < 2 {
                    angles_ok = false;
                    violations.push(format!("vertex {}: inner angle pi/{} * {} is forbidden", i, n, k));
                }
            }
            _ => {
                angles_ok = false;
                violations.push(format!("vertex {}: inner angle is not a multiple of pi/{}", i, n));
            }
        }
    }
    Ok(GirihReport { equilateral, angles_ok, violations })
}
