//! Built-in rule sets: the Penrose tiling over Robinson triangles (n = 5),
//! the Ammann-Beenker tiling in its half-square form (n = 4), and the
//! generalized Lancon-Billard family (4 <= n <= 8).

use crate::cyclo::CycloInt;
use crate::error::CastError;
use crate::geom;
use crate::tiling::{ChildPlacement, Placement, Prototile, RuleSet, SubstRule};

pub fn builtin_names() -> Vec<String> {
    let mut v = vec!["penrose_robinson".to_string(), "ammann_beenker".to_string()];
    for n in 4..=8 {
        v.push(format!("lancon_billard_{}", n));
    }
    v
}

/// Look up a built-in rule set by name (`lancon_billard_N` for 4 <= N <= 8).
/// Constructed sets are cached (the Lancon-Billard assembly runs an exact
/// cover search).
pub fn builtin(name: &str) -> Result<RuleSet, CastError> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<String, RuleSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rs) = cache.lock().unwrap().get(name) {
        return Ok(rs.clone());
    }
    let built = match name {
        "penrose_robinson" => penrose_robinson(),
        "ammann_beenker" => ammann_beenker(),
        _ => {
            let parsed = name
                .strip_prefix("lancon_billard_")
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|n| (4..=8).contains(n));
            match parsed {
                Some(n) => lancon_billard(n),
                None => Err(CastError::UnknownBuiltin(name.to_string())),
            }
        }
    }?;
    cache.lock().unwrap().insert(name.to_string(), built.clone());
    Ok(built)
}

fn z(n: usize, k: i64) -> CycloInt {
    CycloInt::root(n, k).expect("valid order")
}

fn zero(n: usize) -> CycloInt {
    CycloInt::zero(n)
}

fn one(n: usize) -> CycloInt {
    CycloInt::one(n)
}

/// Placement mapping prototile vertices v_i -> from and v_j -> to by a pure
/// rotation + translation (no reflection); exact, or an error when no such
/// placement exists.
pub fn place_segment(
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
        .ok_or_else(|| CastError::Domain("source direction is not a lattice direction".into()))?;
    let cd = geom::direction_class(&dst)
        .ok_or_else(|| CastError::Domain("target direction is not a lattice direction".into()))?;
    let diff = (cd + 8 * n - cs) % (4 * n);
    if diff % 2 != 0 {
        return Err(CastError::Domain("segment placement needs a half-step rotation".into()));
    }
    let rot = diff / 2; // in zeta_2n steps
    let rotated = z(n, rot as i64).mul(&proto.vertices[i])?;
    let t = from.sub(&rotated)?;
    let placement = Placement { rot, reflect: false, t };
    // verify the second anchor exactly
    if !placement.apply(&proto.vertices[j]).equals(to)? {
        return Err(CastError::Verification("segment placement does not map the second anchor".into()));
    }
    Ok(placement)
}

fn child_rt(_n: usize, id: &str, rot: usize, t: CycloInt) -> ChildPlacement {
    ChildPlacement { id: id.to_string(), placement: Placement { rot, reflect: false, t }, bisected: None }
}

fn child_refl(_n: usize, id: &str, rot: usize, t: CycloInt) -> ChildPlacement {
    ChildPlacement { id: id.to_string(), placement: Placement { rot, reflect: true, t }, bisected: None }
}

/// Penrose tiling via Robinson triangles: acute golden triangle
/// (apex pi/5, legs 1) and gnomon (apex 3pi/5, legs 1), inflation
/// eta = mu_{5,2} = 2 cos(pi/5).
pub fn penrose_robinson() -> Result<RuleSet, CastError> {
    let n = 5;
    // eta = zeta - zeta^4 (= golden ratio, real)
    let eta = z(n, 1).sub(&z(n, 4))?;
    let mut gnomon = Prototile::new("gnomon", n, vec![zero(n), one(n), z(n, 3)]);
    gnomon.tip = Some(0);
    let mut acute = Prototile::new("acute", n, vec![zero(n), one(n), z(n, 1)]);
    acute.tip = Some(0);

    // phi * acute = gnomon (reflected, at the apex) + acute
    let rule_acute = SubstRule {
        parent: "acute".into(),
        children: vec![
            child_refl(n, "gnomon", 9, z(n, 1)),
            child_rt(n, "acute", 3, eta.clone()),
        ],
    };
    // phi * gnomon = two reflected gnomons + one acute
    let rule_gnomon = SubstRule {
        parent: "gnomon".into(),
        children: vec![
            child_refl(n, "gnomon", 9, z(n, 1)),
            child_refl(n, "gnomon", 7, z(n, 2)),
            child_rt(n, "acute", 1, zero(n)),
        ],
    };
    Ok(RuleSet {
        n,
        name: "penrose_robinson".into(),
        multiplier: eta,
        prototiles: vec![gnomon, acute],
        rules: vec![rule_gnomon, rule_acute],
    })
}

/// Ammann-Beenker tiling in half-square form: 45-degree rhomb and
/// right isosceles triangle, inflation eta = 1 + sqrt(2).
pub fn ammann_beenker() -> Result<RuleSet, CastError> {
    let n = 4;
    // eta = 1 + zeta - zeta^3 = 1 + sqrt(2), real
    let eta = one(n).add(&z(n, 1))?.sub(&z(n, 3))?;
    let rhomb = Prototile::new(
        "rhomb",
        n,
        vec![zero(n), one(n), one(n).add(&z(n, 1))?, z(n, 1)],
    );
    let mut tri = Prototile::new("tri", n, vec![zero(n), one(n), one(n).add(&z(n, 2))?]);
    tri.tip = Some(1);

    let d = &eta; // 1 + sqrt(2)
    let d_zeta = d.mul(&z(n, 1))?; // eta * zeta
    let d_1pz = d.mul(&one(n).add(&z(n, 1))?)?; // eta * (1 + zeta)

    // eta * rhomb: three rhombs + four half-squares
    let rule_rhomb = SubstRule {
        parent: "rhomb".into(),
        children: vec![
            child_rt(n, "rhomb", 0, zero(n)),
            child_rt(n, "rhomb", 4, d_1pz.clone()),
            child_rt(n, "rhomb", 2, d.clone()),
            child_rt(n, "tri", 3, d.clone()),
            child_rt(n, "tri", 0, z(n, 1)),
            child_rt(n, "tri", 4, d.add(&one(n))?.add(&z(n, 2))?),
            child_rt(n, "tri", 7, d_zeta.clone()),
        ],
    };
    // eta * tri: two rhombs + three half-squares
    let rule_tri = SubstRule {
        parent: "tri".into(),
        children: vec![
            child_rt(n, "rhomb", 0, zero(n)),
            child_rt(n, "rhomb", 5, one(n).add(&z(n, 1))?.add(&z(n, 1))?.add(&z(n, 2))?),
            child_rt(n, "tri", 3, d.clone()),
            child_rt(n, "tri", 5, one(n).add(&z(n, 1))?.add(&z(n, 1))?),
            child_rt(n, "tri", 0, z(n, 1)),
        ],
    };
    Ok(RuleSet {
        n,
        name: "ammann_beenker".into(),
        multiplier: eta.clone(),
        prototiles: vec![rhomb, tri],
        rules: vec![rule_rhomb, rule_tri],
    })
}

/// Generalized Lancon-Billard rule set for 4 <= n <= 8 with multiplier
/// eta = 1 + zeta_2n.
///
/// Even n carries the full printed scheme (corner kite C, corner dart R and
/// rhombs P_{n-1}..P_1); odd n uses the odd-index rhomb sub-scheme. The
/// rules for P_1, P_{n-1}, R and C are exact dissections (with
/// boundary-bisected children counted 1/2); the mid-index rhomb rules are
/// the fringed whole-tile layouts of the original construction, where
/// supertile boundaries interlock with the neighbours'.
pub fn lancon_billard(n: usize) -> Result<RuleSet, CastError> {
    if !(4..=8).contains(&n) {
        return Err(CastError::Domain("lancon_billard is built in for 4 <= n <= 8".into()));
    }
    let eta = one(n).add(&z(n, 1))?;
    crate::lb::build(n, eta)
}
