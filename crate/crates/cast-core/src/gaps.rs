//! The gaps-to-prototiles search: construct substitution rules from an edge
//! specification, detect leftover gaps as new prototiles, and iterate to
//! closure or resource limits.

use crate::cyclo::CycloInt;
use crate::diag::DiagElem;
use crate::edge::{multiplier_even_config, EdgeSequence};
use crate::error::CastError;
use crate::geom;
use crate::tiling::{slice_polygon, ChildPlacement, EdgeCancellation, Placement, Prototile, RuleSet, SubstRule};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

impl Placement {
    /// The inverse rigid motion.
    pub fn inverse(&self) -> Placement {
        let n = self.t.order();
        let m = 2 * n;
        if !self.reflect {
            let rot = (m - self.rot % m) % m;
            let t = CycloInt::root(n, rot as i64)
                .expect("order ok")
                .mul(&self.t)
                .expect("same order")
                .neg();
            Placement { rot, reflect: false, t }
        } else {
            // inverse of v -> zeta^r conj(v) + t is w -> zeta^r conj(w) - zeta^r conj(t)
            let zr = CycloInt::root(n, self.rot as i64).expect("order ok");
            let t = zr.mul(&self.t.conj()).expect("same order").neg();
            Placement { rot: self.rot, reflect: true, t }
        }
    }
}

/// Canonical form of a polygon up to the 4n plane symmetries and
/// translation: the lexicographically least vertex coefficient sequence.
/// Returns the canonical vertices, the placement mapping the canonical form
/// onto the input, and whether that placement reflects.
pub fn canonicalize(poly: &[CycloInt]) -> (Vec<CycloInt>, Placement, bool) {
    let n = poly[0].order();
    let m = poly.len();
    let mut best: Option<(Vec<Vec<BigInt>>, Vec<CycloInt>, Placement, bool)> = None;
    for reflect in [false, true] {
        for rot in 0..2 * n {
            let op = Placement { rot, reflect, t: CycloInt::zero(n) };
            let mut mapped: Vec<CycloInt> = poly.iter().map(|v| op.apply(v)).collect();
            if reflect {
                mapped.reverse(); // restore counter-clockwise order
            }
            for start in 0..m {
                let anchor = mapped[start].clone();
                let shifted: Vec<CycloInt> = (0..m)
                    .map(|i| mapped[(start + i) % m].sub(&anchor).expect("same order"))
                    .collect();
                let key: Vec<Vec<BigInt>> = shifted.iter().map(geom::point_key).collect();
                let better = match &best {
                    None => true,
                    Some((bk, _, _, _)) => key < *bk,
                };
                if better {
                    // transform canonical -> input: inverse of (translate by
                    // -anchor after op), i.e. input = op^{-1}(w + anchor)
                    let shift = Placement { rot: 0, reflect: false, t: anchor };
                    let full = op.inverse().compose(&shift);
                    best = Some((key, shifted, full, reflect));
                }
            }
        }
    }
    let (_, canon, tf, refl) = best.expect("non-empty polygon");
    (canon, tf, refl)
}

/// True if the two polygons are congruent (directly or mirrored).
pub fn congruent(a: &[CycloInt], b: &[CycloInt]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ca, _, _) = canonicalize(a);
    let (cb, _, _) = canonicalize(b);
    ca.len() == cb.len()
        && ca
            .iter()
            .zip(&cb)
            .all(|(x, y)| x.equals(y).unwrap_or(false))
}

/// Chain the uncovered boundary of a partial placement into closed gap
/// polygons (counter-clockwise cycles).
pub fn extract_gaps(
    region: &[CycloInt],
    placed: &[Vec<CycloInt>],
) -> Result<Vec<Vec<CycloInt>>, CastError> {
    let mut canc = EdgeCancellation::new();
    canc.register_polygon_points(region);
    for p in placed {
        canc.register_polygon_points(p);
    }
    canc.add_polygon(region, 1);
    for p in placed {
        canc.add_polygon(p, -1);
    }
    if canc.residue().is_empty() {
        return Ok(Vec::new());
    }
    let cycles = canc
        .residue_cycles()
        .ok_or_else(|| CastError::Verification("gap boundary does not close".into()))?;
    let mut out = Vec::new();
    for cyc in cycles {
        if geom::area_sign(&cyc) < 0 {
            return Err(CastError::Verification(
                "placement extends outside the region (negative gap)".into(),
            ));
        }
        out.push(cyc);
    }
    out.sort_by_key(|c| c.iter().map(geom::point_key).collect::<Vec<_>>());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleSymmetry {
    D1,
    D2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapLimits {
    pub max_rounds: u32,
    pub max_prototiles: usize,
    /// Backtracking budget for each rule's interior fill.
    pub max_fill_nodes: u64,
}

impl Default for GapLimits {
    fn default() -> Self {
        GapLimits { max_rounds: 12, max_prototiles: 64, max_fill_nodes: 10_000 }
    }
}

/// Edge specification for the search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum EdgeSpec {
    /// Even configuration: a sequence of R_0 segments and even-index rhombs
    /// bisected along the boundary.
    Even(Vec<usize>),
    /// Odd configuration with a single bisected rhomb R_k spanning each edge
    /// (the binary-tiling style; multiplier 1 + zeta^k).
    OddUnit(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchState {
    pub n: usize,
    pub ruleset: RuleSet,
    pub pending: Vec<String>,
    pub round: u32,
    pub notes: Vec<String>,
    pub edge: EdgeSpec,
    pub sym: RuleSymmetry,
    pub gap_counter: usize,
}

#[derive(Debug)]
pub enum GapsOutcome {
    Closed(RuleSet),
    Failed { reason: String, state: SearchState },
    LimitReached(SearchState),
}

struct Search {
    n: usize,
    sym: RuleSymmetry,
    eta: CycloInt,
    edge: EdgeSpec,
    protos: Vec<Prototile>,
    rules: Vec<SubstRule>,
    pending: Vec<String>,
    notes: Vec<String>,
    gap_counter: usize,
}

/// Continue a dumped search state.
pub fn resume(state: SearchState, limits: &GapLimits) -> Result<GapsOutcome, CastError> {
    let search = Search {
        n: state.n,
        sym: state.sym,
        eta: state.ruleset.multiplier.clone(),
        edge: state.edge.clone(),
        protos: state.ruleset.prototiles.clone(),
        rules: state.ruleset.rules.clone(),
        pending: state.pending.clone(),
        notes: state.notes.clone(),
        gap_counter: state.gap_counter,
    };
    drive(search, state.round, limits)
}

/// Run the gaps-to-prototiles algorithm.
pub fn run(n: usize, edge: EdgeSpec, sym: RuleSymmetry, limits: &GapLimits) -> Result<GapsOutcome, CastError> {
    let eta = match &edge {
        EdgeSpec::Even(seq) => {
            let es = EdgeSequence::new(
                n,
                if n % 2 == 0 { crate::edge::CaseTag::C3a } else { crate::edge::CaseTag::C3b },
                seq.clone(),
            )?;
            multiplier_even_config(&es)?.to_cyclo()
        }
        EdgeSpec::OddUnit(k) => {
            if k % 2 == 0 || *k >= n {
                return Err(CastError::Domain("odd-unit edge needs an odd rhomb index below n".into()));
            }
            CycloInt::one(n).add(&CycloInt::root(n, *k as i64)?)?
        }
    };
    let mut search = Search {
        n,
        sym,
        eta,
        edge,
        protos: Vec::new(),
        rules: Vec::new(),
        pending: Vec::new(),
        notes: Vec::new(),
        gap_counter: 0,
    };
    // seed prototiles: the rhombs appearing on the edge
    let seed_ks: Vec<usize> = match &search.edge {
        EdgeSpec::Even(seq) => {
            let mut ks: Vec<usize> = seq.iter().copied().filter(|&k| k > 0).collect();
            ks.sort();
            ks.dedup();
            ks
        }
        EdgeSpec::OddUnit(k) => vec![*k],
    };
    for k in seed_ks {
        let id = format!("R{}", k);
        search.add_prototile(Prototile::new(&id, n, rhomb_vertices(n, k)));
    }
    drive(search, 0, limits)
}

fn drive(mut search: Search, start_round: u32, limits: &GapLimits) -> Result<GapsOutcome, CastError> {
    let mut round = start_round;
    loop {
        if search.pending.is_empty() {
            let rs = search.into_ruleset();
            return Ok(GapsOutcome::Closed(rs));
        }
        if round >= limits.max_rounds || search.protos.len() > limits.max_prototiles {
            return Ok(GapsOutcome::LimitReached(search.state(round)));
        }
        round += 1;
        let id = search.pending.remove(0);
        match search.build_rule(&id, limits) {
            Ok(()) => {}
            Err(e) => {
                let reason = format!("rule for {} failed: {}", id, e);
                return Ok(GapsOutcome::Failed { reason, state: search.state(round) });
            }
        }
    }
}

fn rhomb_vertices(n: usize, k: usize) -> Vec<CycloInt> {
    let one = CycloInt::one(n);
    let zk = CycloInt::root(n, k as i64).unwrap();
    vec![CycloInt::zero(n), one.clone(), one.add(&zk).unwrap(), zk]
}

impl Search {
    fn add_prototile(&mut self, p: Prototile) {
        if self.protos.iter().any(|q| q.id == p.id) {
            return;
        }
        self.pending.push(p.id.clone());
        self.protos.push(p);
    }

    fn state(&self, round: u32) -> SearchState {
        SearchState {
            n: self.n,
            ruleset: RuleSet {
                n: self.n,
                name: "gaps_search_partial".into(),
                multiplier: self.eta.clone(),
                prototiles: self.protos.clone(),
                rules: self.rules.clone(),
            },
            pending: self.pending.clone(),
            round,
            notes: self.notes.clone(),
            edge: self.edge.clone(),
            sym: self.sym,
            gap_counter: self.gap_counter,
        }
    }

    fn into_ruleset(self) -> RuleSet {
        RuleSet {
            n: self.n,
            name: "gaps_search".into(),
            multiplier: self.eta,
            prototiles: self.protos,
            rules: self.rules,
        }
    }

    fn proto(&self, id: &str) -> &Prototile {
        self.protos.iter().find(|p| p.id == id).expect("prototile present")
    }

    fn build_rule(&mut self, id: &str, limits: &GapLimits) -> Result<(), CastError> {
        let proto = self.proto(id).clone();
        let inflated: Vec<CycloInt> = proto
            .vertices
            .iter()
            .map(|v| self.eta.mul(v).map_err(CastError::from))
            .collect::<Result<_, _>>()?;
        // step 2: place the edge tiles along each unit boundary edge
        let mut children: Vec<ChildPlacement> = Vec::new();
        let m = proto.vertices.len();
        let unit_sq = CycloInt::one(self.n);
        for i in 0..m {
            let a0 = &proto.vertices[i];
            let b0 = &proto.vertices[(i + 1) % m];
            let e = b0.sub(a0)?;
            if !e.norm_sq().equals(&unit_sq)? {
                self.notes.push(format!(
                    "prototile {}: edge {} is not unit length; its supertile boundary lies outside the edge language",
                    id, i
                ));
                return Err(CastError::Verification(format!(
                    "prototile {} has a non-unit edge; cannot place the edge configuration",
                    id
                )));
            }
            let a = self.eta.mul(a0)?;
            let b = self.eta.mul(b0)?;
            children.extend(self.edge_tiles(&inflated, &a, &b)?);
        }
        // step 3: the edge tiles must not overlap
        let polys: Vec<Vec<CycloInt>> = children
            .iter()
            .map(|c| self.child_polygon(c))
            .collect::<Result<_, _>>()?;
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if polygons_overlap(&polys[i], &polys[j]) {
                    return Err(CastError::Verification(format!(
                        "edge prototiles overlap in the rule for {} (the algorithm has failed)",
                        id
                    )));
                }
            }
        }
        // step 4: fill with known prototiles, then convert gaps to new ones
        let mut budget = limits.max_fill_nodes;
        let mut fill = self.fill_region(&inflated, &children, &mut budget)?;
        children.append(&mut fill);
        let placed: Vec<Vec<CycloInt>> = children
            .iter()
            .map(|c| self.child_polygon(c))
            .collect::<Result<_, _>>()?;
        let gaps = extract_gaps(&inflated, &placed)?;
        let mut extra = Vec::new();
        for gap in gaps {
            let (canon, tf, reflected) = canonicalize(&gap);
            // a gap congruent to a known prototile becomes a placement
            let known = self
                .protos
                .iter()
                .find(|p| {
                    p.vertices.len() == canon.len()
                        && p.vertices.iter().zip(&canon).all(|(x, y)| x.equals(y).unwrap_or(false))
                })
                .map(|p| p.id.clone());
            match known {
                Some(kid) => {
                    if reflected && !self.eta.is_real() {
                        // reflected placements cannot iterate under a complex
                        // multiplier; keep as a distinct chiral prototile
                        let gid = self.fresh_gap_id();
                        let sym_note = self.symmetry_note(&gap, &inflated, &proto);
                        self.notes.push(format!("gap in rule {} kept chiral: {}", id, sym_note));
                        self.add_prototile(Prototile::new(&gid, self.n, canon));
                        let (_, tf2, _) = canonicalize(&gap);
                        extra.push(ChildPlacement { id: gid, placement: tf2, bisected: None });
                    } else {
                        extra.push(ChildPlacement { id: kid, placement: tf, bisected: None });
                    }
                }
                None => {
                    let gid = self.fresh_gap_id();
                    let note = self.symmetry_note(&gap, &inflated, &proto);
                    if !note.is_empty() {
                        self.notes.push(format!("new prototile {} from rule {}: {}", gid, id, note));
                    }
                    self.add_prototile(Prototile::new(&gid, self.n, canon));
                    extra.push(ChildPlacement { id: gid, placement: tf, bisected: None });
                }
            }
        }
        children.extend(extra);
        self.rules.push(SubstRule { parent: id.to_string(), children });
        Ok(())
    }

    fn fresh_gap_id(&mut self) -> String {
        self.gap_counter += 1;
        format!("G{}", self.gap_counter)
    }

    /// Note whether a gap touches the symmetry lines of the rule, which
    /// constrains the dihedral symmetry its own rule must have.
    fn symmetry_note(&self, gap: &[CycloInt], inflated: &[CycloInt], _proto: &Prototile) -> String {
        let _ = inflated;
        let on_axis = gap.iter().any(|v| v.is_real());
        match (self.sym, on_axis) {
            (RuleSymmetry::D2, true) => "gap touches a symmetry line; its rule must be D1/D2 symmetric".into(),
            _ => String::new(),
        }
    }

    fn child_polygon(&self, c: &ChildPlacement) -> Result<Vec<CycloInt>, CastError> {
        let proto = self.proto(&c.id);
        let verts: Vec<CycloInt> = proto.vertices.iter().map(|v| c.placement.apply(v)).collect();
        Ok(match c.bisected {
            None => verts,
            Some((i, j)) => slice_polygon(&verts, i, j),
        })
    }

    /// Edge tiles of one inflated boundary edge [a, b].
    fn edge_tiles(
        &self,
        inflated: &[CycloInt],
        a: &CycloInt,
        b: &CycloInt,
    ) -> Result<Vec<ChildPlacement>, CastError> {
        let n = self.n;
        let dir = b.sub(a)?;
        let cls = geom::direction_class(&dir)
            .ok_or_else(|| CastError::Verification("edge direction is not a lattice direction".into()))?;
        match &self.edge {
            EdgeSpec::OddUnit(k) => {
                // one rhomb R_k bisected along its d_k diagonal = the edge
                let kid = format!("R{}", k);
                let proto = self.proto(&kid);
                // diagonal of the canonical rhomb from v0 to v2
                let placement = place_by_segment(proto, 0, 2, a, b)?;
                let cut = inward_cut(inflated, proto, &placement)?;
                Ok(vec![ChildPlacement { id: kid, placement, bisected: Some(cut) }])
            }
            EdgeSpec::Even(seq) => {
                let mut out = Vec::new();
                let mut pos = a.clone();
                // unit direction along the edge
                if cls % 2 != 0 {
                    return Err(CastError::Verification("even edge on a half-integer direction".into()));
                }
                let unit = CycloInt::root(n, (cls / 2) as i64)?;
                for &k in seq {
                    if k == 0 {
                        pos = pos.add(&unit)?;
                        continue;
                    }
                    // rhomb R_k bisected along d_k: diagonal [pos, pos + d_k * unit]
                    let i = k / 2;
                    let dk = DiagElem::mu(n, i + 1)?
                        .to_cyclo()
                        .sub(&if i >= 1 && i - 1 >= 1 {
                            DiagElem::mu(n, i - 1)?.to_cyclo()
                        } else if i == 1 {
                            CycloInt::zero(n)
                        } else {
                            CycloInt::zero(n)
                        })?;
                    // d_{2i} = mu_{i+1} - mu_{i-1} with mu_0 = 0, mu_1 = 1
                    let dk = if i == 1 {
                        DiagElem::mu(n, 2)?.to_cyclo()
                    } else {
                        dk
                    };
                    let next = pos.add(&dk.mul(&unit)?)?;
                    let kid = format!("R{}", k);
                    let proto = self.proto(&kid);
                    let placement = place_by_segment(proto, 0, 2, &pos, &next)?;
                    let cut = inward_cut(inflated, proto, &placement)?;
                    out.push(ChildPlacement { id: kid, placement, bisected: Some(cut) });
                    pos = next;
                }
                if !pos.equals(b)? {
                    return Err(CastError::Verification(
                        "edge sequence does not span the inflated edge exactly".into(),
                    ));
                }
                Ok(out)
            }
        }
    }

    /// Greedy fill of the remaining region: known prototiles by descending
    /// area, anchoring at the least uncovered boundary segment, with
    /// depth-limited backtracking. Returns the (possibly partial) placement.
    fn fill_region(
        &self,
        inflated: &[CycloInt],
        seeded: &[ChildPlacement],
        budget: &mut u64,
    ) -> Result<Vec<ChildPlacement>, CastError> {
        // candidate prototiles, largest first, ties by id
        let mut order: Vec<(f64, String)> = self
            .protos
            .iter()
            .filter_map(|p| {
                crate::tiling::area_ratio(p)
                    .ok()
                    .map(|r| (-r.value_f64(), p.id.clone()))
            })
            .collect();
        order.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ids: Vec<String> = order.into_iter().map(|(_, id)| id).collect();
        let mut acc: Vec<ChildPlacement> = Vec::new();
        self.fill_rec(inflated, seeded, &ids, &mut acc, budget)?;
        Ok(acc)
    }

    fn fill_rec(
        &self,
        inflated: &[CycloInt],
        seeded: &[ChildPlacement],
        ids: &[String],
        acc: &mut Vec<ChildPlacement>,
        budget: &mut u64,
    ) -> Result<bool, CastError> {
        if *budget == 0 {
            return Ok(false);
        }
        *budget -= 1;
        // current residue
        let mut canc = EdgeCancellation::new();
        canc.register_polygon_points(inflated);
        let mut all_polys: Vec<Vec<CycloInt>> = Vec::new();
        for c in seeded.iter().chain(acc.iter()) {
            let p = self.child_polygon(c)?;
            canc.register_polygon_points(&p);
            all_polys.push(p);
        }
        canc.add_polygon(inflated, 1);
        for p in &all_polys {
            canc.add_polygon(p, -1);
        }
        let residue = canc.residue();
        if residue.is_empty() {
            return Ok(true);
        }
        let (a, b) = {
            let seg = &residue[0];
            if seg.2 > 0 {
                (seg.0.clone(), seg.1.clone())
            } else {
                (seg.1.clone(), seg.0.clone())
            }
        };
        let dir = b.sub(&a)?;
        let Some(cd) = geom::direction_class(&dir) else {
            return Ok(false);
        };
        let n = self.n;
        for id in ids {
            let proto = self.proto(id);
            let mv = proto.vertices.len();
            for e in 0..mv {
                let (pa, pb) = (&proto.vertices[e], &proto.vertices[(e + 1) % mv]);
                let edge = pb.sub(pa)?;
                let Some(ce) = geom::direction_class(&edge) else { continue };
                let diff = (cd + 8 * n - ce) % (4 * n);
                if diff % 2 != 0 {
                    continue;
                }
                let rot = diff / 2;
                let rotated = CycloInt::root(n, rot as i64)?.mul(pa)?;
                let t = a.sub(&rotated)?;
                let q = CycloInt::root(n, rot as i64)?.mul(pb)?.add(&t)?;
                if !geom::on_segment(&q, &a, &b) {
                    continue;
                }
                let pl = Placement { rot, reflect: false, t };
                let cand = ChildPlacement { id: id.clone(), placement: pl, bisected: None };
                let poly = self.child_polygon(&cand)?;
                if poly.iter().any(|v| geom::point_in_polygon(v, inflated) < 0) {
                    continue;
                }
                // no overlap with placed tiles
                if all_polys.iter().any(|p| polygons_overlap(p, &poly)) {
                    continue;
                }
                acc.push(cand);
                if self.fill_rec(inflated, seeded, ids, acc, budget)? {
                    return Ok(true);
                }
                if *budget == 0 {
                    // keep the greedy prefix on budget exhaustion
                    return Ok(false);
                }
                acc.pop();
            }
        }
        Ok(false)
    }
}

/// Placement mapping prototile vertices v_i -> from, v_j -> to by rotation
/// and translation.
fn place_by_segment(
    proto: &Prototile,
    i: usize,
    j: usize,
    from: &CycloInt,
    to: &CycloInt,
) -> Result<Placement, CastError> {
    let n = proto.n;
    let src = proto.vertices[j].sub(&proto.vertices[i])?;
    let dst = to.sub(from)?;
    let cs = geom::direction_class(&src)
        .ok_or_else(|| CastError::Domain("source direction not a lattice direction".into()))?;
    let cd = geom::direction_class(&dst)
        .ok_or_else(|| CastError::Domain("target direction not a lattice direction".into()))?;
    let diff = (cd + 8 * n - cs) % (4 * n);
    if diff % 2 != 0 {
        return Err(CastError::Domain("placement needs a half-step rotation".into()));
    }
    let rot = diff / 2;
    let rotated = CycloInt::root(n, rot as i64)?.mul(&proto.vertices[i])?;
    let t = from.sub(&rotated)?;
    let placement = Placement { rot, reflect: false, t };
    if !placement.apply(&proto.vertices[j]).equals(to)? {
        return Err(CastError::Verification("segment placement mismatch".into()));
    }
    Ok(placement)
}

/// The inward slice of a rhomb bisected along [v_i, v_j] for the two
/// diagonals of a quadrilateral.
fn inward_cut(
    parent: &[CycloInt],
    proto: &Prototile,
    placement: &Placement,
) -> Result<(usize, usize), CastError> {
    let placed: Vec<CycloInt> = proto.vertices.iter().map(|v| placement.apply(v)).collect();
    for (i, j) in [(0usize, 2usize), (2, 0), (1, 3), (3, 1)] {
        let keep = slice_polygon(&placed, i, j);
        let inner_ok = keep
            .iter()
            .all(|v| geom::point_in_polygon(v, parent) >= 0);
        let drop = slice_polygon(&placed, j, i);
        let drop_ok = drop
            .iter()
            .enumerate()
            .all(|(k, v)| k == 0 || k == drop.len() - 1 || geom::point_in_polygon(v, parent) <= 0);
        if inner_ok && drop_ok {
            return Ok((i, j));
        }
    }
    Err(CastError::Verification("no inward bisection for edge rhomb".into()))
}

/// Interior overlap test for two simple polygons.
pub fn polygons_overlap(a: &[CycloInt], b: &[CycloInt]) -> bool {
    let ma = a.len();
    let mb = b.len();
    for i in 0..ma {
        for j in 0..mb {
            if geom::segments_cross(&a[i], &a[(i + 1) % ma], &b[j], &b[(j + 1) % mb]) {
                return true;
            }
        }
    }
    // containment without edge crossings
    let inside_b = a.iter().all(|v| geom::point_in_polygon(v, b) >= 0)
        && a.iter().any(|v| geom::point_in_polygon(v, b) > 0);
    let inside_a = b.iter().all(|v| geom::point_in_polygon(v, a) >= 0)
        && b.iter().any(|v| geom::point_in_polygon(v, a) > 0);
    inside_b || inside_a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;

    #[test]
    fn canonical_form_is_congruence_invariant() {
        let rs = builtin("penrose_robinson").unwrap();
        let proto = rs.prototile("gnomon").unwrap();
        let (canon, _, _) = canonicalize(&proto.vertices);
        for rot in 0..10 {
            let pl = Placement { rot, reflect: false, t: CycloInt::root(5, rot as i64).unwrap() };
            let moved: Vec<CycloInt> = proto.vertices.iter().map(|v| pl.apply(v)).collect();
            let (c2, _, _) = canonicalize(&moved);
            assert!(canon.iter().zip(&c2).all(|(x, y)| x.equals(y).unwrap()));
        }
        // mirrored copy of a chiral triangle: same canonical form, and the
        // transform records the reflection
        let two = CycloInt::from_int(5, 2);
        let chiral = vec![CycloInt::zero(5), two.clone(), two.add(&CycloInt::root(5, 1).unwrap()).unwrap()];
        let (c_orig, _, refl_orig) = canonicalize(&chiral);
        let mirrored: Vec<CycloInt> = chiral.iter().rev().map(|v| v.conj()).collect();
        let (c3, _, refl_mirror) = canonicalize(&mirrored);
        assert!(c_orig.iter().zip(&c3).all(|(x, y)| x.equals(y).unwrap()));
        // exactly one of the two chiralities needs the reflection
        assert_ne!(refl_orig, refl_mirror);
        // incongruent rhombs have distinct forms
        let r1 = rhomb_vertices(7, 1);
        let r2 = rhomb_vertices(7, 2);
        assert!(!congruent(&r1, &r2));
    }

    #[test]
    fn gap_recovery_on_builtins() {
        // removing any single child from a built-in rule leaves exactly one
        // gap congruent to the removed child's polygon
        for name in ["penrose_robinson", "ammann_beenker"] {
            let rs = builtin(name).unwrap();
            for rule in &rs.rules {
                let inflated: Vec<CycloInt> = rs
                    .prototile(&rule.parent)
                    .unwrap()
                    .vertices
                    .iter()
                    .map(|v| rs.multiplier.mul(v).unwrap())
                    .collect();
                for drop in 0..rule.children.len() {
                    let polys: Vec<Vec<CycloInt>> = rule
                        .children
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, c)| rs.placed_polygon(&c.id, &c.placement, c.bisected).unwrap())
                        .collect();
                    let gaps = extract_gaps(&inflated, &polys).unwrap();
                    assert_eq!(gaps.len(), 1, "{} rule {} child {}", name, rule.parent, drop);
                    let dropped = rs
                        .placed_polygon(&rule.children[drop].id, &rule.children[drop].placement, rule.children[drop].bisected)
                        .unwrap();
                    assert!(congruent(&gaps[0], &dropped), "{} rule {} child {}", name, rule.parent, drop);
                }
            }
        }
    }

    #[test]
    fn full_cover_has_no_gaps() {
        let rs = builtin("penrose_robinson").unwrap();
        for rule in &rs.rules {
            let inflated: Vec<CycloInt> = rs
                .prototile(&rule.parent)
                .unwrap()
                .vertices
                .iter()
                .map(|v| rs.multiplier.mul(v).unwrap())
                .collect();
            let polys: Vec<Vec<CycloInt>> = rule
                .children
                .iter()
                .map(|c| rs.placed_polygon(&c.id, &c.placement, c.bisected).unwrap())
                .collect();
            assert!(extract_gaps(&inflated, &polys).unwrap().is_empty());
        }
    }

    #[test]
    fn lb4_first_round_discovers_the_square() {
        // odd-unit edge at n = 4 (the binary-tiling derivation): the thin
        // rhomb's rule closes with the interior square as a new prototile
        let out = run(4, EdgeSpec::OddUnit(1), RuleSymmetry::D2, &GapLimits::default()).unwrap();
        let state = match out {
            GapsOutcome::Closed(rs) => rs,
            GapsOutcome::LimitReached(st) => st.ruleset,
            GapsOutcome::Failed { reason, .. } => panic!("failed: {}", reason),
        };
        // multiplier |1 + zeta_8|^2 = mu_2 + 2
        let lam = crate::tiling::lambda_of(&state).unwrap();
        let want = DiagElem::mu(4, 2).unwrap().add(&DiagElem::from_int(4, 2)).unwrap();
        assert!(lam.value_equals(&want).unwrap());
        // the square (2u-rhomb) appears among the discovered prototiles
        let square = rhomb_vertices(4, 2);
        assert!(
            state.prototiles.iter().any(|p| congruent(&p.vertices, &square)),
            "prototiles: {:?}",
            state.prototiles.iter().map(|p| p.id.clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn overlapping_edge_fails() {
        // an edge ending with a bisected R_4 and starting with a bisected R_2
        // overflows the 60-degree corner of the R_2 supertile at n = 6
        let out = run(6, EdgeSpec::Even(vec![2, 4]), RuleSymmetry::D2, &GapLimits::default()).unwrap();
        match out {
            GapsOutcome::Failed { reason, .. } => {
                assert!(reason.contains("overlap") || reason.contains("span"), "{}", reason)
            }
            other => panic!("expected failure, got {:?}", outcome_name(&other)),
        }
    }

    fn outcome_name(o: &GapsOutcome) -> &'static str {
        match o {
            GapsOutcome::Closed(_) => "Closed",
            GapsOutcome::Failed { .. } => "Failed",
            GapsOutcome::LimitReached(_) => "LimitReached",
        }
    }
}
