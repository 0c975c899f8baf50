//! The split sequence `0 → Pic_R(R) → Pic(R) → Aut(R) → 0` for a finite
//! commutative ring, and its restriction to automorphisms fixing a unit set.

use std::sync::Arc;

use serde::Serialize;

use super::diag::twist_label;
use super::group::FiniteGroup;
use super::morita::is_invertible;
use super::sharp::{t_sharp, u_sharp};
use crate::abelian::solve_hom_space;
use crate::error::{Error, Result};
use crate::filter::ore_filter;
use crate::ideal::Side;
use crate::iso::is_isomorphic;
use crate::limits;
use crate::module::{Action, Bimodule, FinBimodule};
use crate::ring::{automorphism_group, Ring, RingMap};
use crate::tensor::{tensor, Over};

pub const SATURATION_NOTE: &str =
    "a saturated multiplicative set in a finite ring contains every unit, and its elements must be regular, so S is the unit group";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BassReport {
    pub s_equals_units: bool,
    pub pic_rr: Vec<String>,
    pub pic_rr_structure: String,
    pub aut: Vec<String>,
    pub aut_structure: String,
    pub aut_s: Vec<String>,
    pub pic: Vec<String>,
    pub pic_structure: String,
    /// `|Pic(R, D^S)|`, the classes whose filter transports fix the Ore filter of `S`.
    pub pic_ds_order: usize,
    pub split: bool,
    pub sequence: String,
    pub note: String,
}

/// Class index of `m` among `reps`, by bimodule isomorphism.
fn class_of(reps: &[Bimodule], m: &Bimodule) -> Result<Option<usize>> {
    for (i, r) in reps.iter().enumerate() {
        if is_isomorphic(r, m)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn tensor_table(reps: &[Bimodule], what: &str) -> Result<Vec<usize>> {
    let k = reps.len();
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            let tp: Bimodule = Arc::new(tensor(&reps[a], &reps[b], Over::Ring)?.module);
            mul[a * k + b] =
                class_of(reps, &tp)?.ok_or_else(|| Error::failure(what, format!("product of classes {a} and {b}")))?;
        }
    }
    Ok(mul)
}

/// Invertible symmetric structures `r·m = m·r` on the additive group of `R`.
fn symmetric_structures(r: &Ring) -> Result<Vec<Bimodule>> {
    let a = r.additive();
    let n = r.order();
    let ends = solve_hom_space(a, a, &[])?;
    let basis = a.basis();
    let total = (ends.len() as u128).saturating_pow(basis.len() as u32);
    limits::check_frontier("module structures on (R,+)", total.min(usize::MAX as u128) as usize)?;
    let mut reps: Vec<Bimodule> = Vec::new();
    let mut choice = vec![0usize; basis.len()];
    'outer: loop {
        let mut table = vec![0; n * n];
        for x in 0..n {
            let c = a.coords(x);
            for m in 0..n {
                let mut acc = a.zero();
                for (i, &ci) in c.iter().enumerate() {
                    for _ in 0..ci {
                        acc = a.add(acc, ends[choice[i]][m]);
                    }
                }
                table[x * n + m] = acc;
            }
        }
        let unital = (0..n).all(|m| table[r.one() * n + m] == m);
        if unital {
            let act = Action::new(r.clone(), table);
            if let Ok(m) = FinBimodule::new(a.clone(), Some(act.clone()), Some(act), None) {
                let m: Bimodule = Arc::new(m);
                if is_invertible(&m)? && class_of(&reps, &m)?.is_none() {
                    reps.push(m);
                }
            }
        }
        for c in choice.iter_mut() {
            *c += 1;
            if *c < ends.len() {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    // the regular module first
    let reg: Bimodule = Arc::new(FinBimodule::regular(r));
    let i = class_of(&reps, &reg)?.ok_or_else(|| Error::failure("R is invertible", "regular module"))?;
    reps.swap(0, i);
    Ok(reps)
}

/// The automorphism `π(M)` with `r·m = m·π(r)`.
fn central_twist(r: &Ring, m: &Bimodule, auts: &[RingMap]) -> Result<usize> {
    let table: Vec<usize> = (0..r.order())
        .map(|x| {
            let mut hits = (0..r.order()).filter(|&s| (0..m.order()).all(|y| m.lact(x, y) == m.ract(y, s)));
            match (hits.next(), hits.next()) {
                (Some(s), None) => Ok(s),
                _ => Err(Error::failure(
                    "left action is a unique right twist",
                    r.label(x).to_string(),
                )),
            }
        })
        .collect::<Result<_>>()?;
    auts.iter()
        .position(|p| p.table == table)
        .ok_or_else(|| Error::failure("π(M) is an automorphism", "no matching automorphism"))
}

pub fn bass_check(r: &Ring, s: &[usize]) -> Result<BassReport> {
    if !r.is_commutative() {
        return Err(Error::mismatch("the Bass sequence needs a commutative ring"));
    }
    let n = r.order();
    if let Some(&x) = s.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidSpec(format!("element {x} outside the ring")));
    }
    for &a in s {
        for &b in s {
            if !s.contains(&r.mul(a, b)) {
                return Err(Error::NotMultiplicative(a, b));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if s.contains(&r.mul(x, y)) && !s.contains(&x) {
                return Err(Error::NotSaturated(x));
            }
        }
    }
    let units = r.units();
    let s_equals_units = s.len() == units.count() && s.iter().all(|&x| units.contains(x));
    let ds_right = ore_filter(r, s, Side::Right)?;
    let ds_left = ore_filter(r, s, Side::Left)?;

    let pic_rr = symmetric_structures(r)?;
    let pic_rr_group = FiniteGroup::new(pic_rr.len(), tensor_table(&pic_rr, "Pic_R(R) is closed")?, 0)?;

    let auts = automorphism_group(r)?;
    let id = RingMap::identity(r);
    let ka = auts.len();
    let aut_pos = |p: &RingMap| auts.iter().position(|q| q == p).expect("automorphisms are closed");
    let aut_mul: Vec<usize> = (0..ka * ka)
        .map(|i| aut_pos(&auts[i / ka].then(&auts[i % ka])))
        .collect();
    let aut_group = FiniteGroup::new(ka, aut_mul, aut_pos(&id))?;
    let fixes_s = |p: &RingMap| {
        let mut img: Vec<usize> = s.iter().map(|&x| p.apply(x)).collect();
        let mut orig = s.to_vec();
        img.sort_unstable();
        orig.sort_unstable();
        img == orig
    };

    // Pic(R) from the twists _φP_1
    let mut pic: Vec<Bimodule> = Vec::new();
    let mut pic_labels = Vec::new();
    let mut iota = Vec::new();
    let mut sigma = vec![0; ka];
    for (pi, p) in pic_rr.iter().enumerate() {
        for (ai, phi) in auts.iter().enumerate() {
            let tw: Bimodule = Arc::new(p.restrict_scalars(Some(phi), None)?);
            let c = match class_of(&pic, &tw)? {
                Some(c) => c,
                None => {
                    pic.push(tw);
                    let base = if pi == 0 { String::new() } else { format!("P{pi}") };
                    pic_labels.push(match (base.is_empty(), phi == &id) {
                        (true, _) => twist_label(r, phi),
                        (false, true) => base,
                        (false, false) => format!("{base}·{}", twist_label(r, phi)),
                    });
                    pic.len() - 1
                }
            };
            if phi == &id {
                iota.push(c);
            }
            if pi == 0 {
                sigma[ai] = c;
            }
        }
    }
    let identity = class_of(&pic, &pic_rr[0])?.expect("R is its own twist");
    let pic_group = FiniteGroup::new(pic.len(), tensor_table(&pic, "Pic(R) is closed")?, identity)?;
    let pi: Vec<usize> = pic.iter().map(|m| central_twist(r, m, &auts)).collect::<Result<_>>()?;

    let fail = |what: &str, witness: String| Err(Error::failure(what, witness));
    if !pic_rr_group.is_hom(&pic_group, &iota)
        || iota.iter().collect::<std::collections::BTreeSet<_>>().len() != iota.len()
    {
        return fail("Pic_R(R) → Pic(R) is an injective homomorphism", format!("{iota:?}"));
    }
    if !pic_group.is_hom(&aut_group, &pi) {
        return fail("Pic(R) → Aut(R) is a homomorphism", format!("{pi:?}"));
    }
    let mut ker: Vec<usize> = pic_group.kernel(&aut_group, &pi);
    let mut im = iota.clone();
    ker.sort_unstable();
    im.sort_unstable();
    if ker != im {
        return fail(
            "the kernel of Pic(R) → Aut(R) is Pic_R(R)",
            format!("{ker:?} vs {im:?}"),
        );
    }
    if let Some(a) = (0..ka).find(|&a| pi[sigma[a]] != a) {
        return fail("σ is a section", twist_label(r, &auts[a]));
    }
    if !aut_group.is_hom(&pic_group, &sigma) {
        return fail("σ is a homomorphism", format!("{sigma:?}"));
    }
    if pic.len() != pic_rr.len() * ka {
        return fail(
            "|Pic(R)| = |Pic_R(R)|·|Aut(R)|",
            format!("{} vs {}·{}", pic.len(), pic_rr.len(), ka),
        );
    }

    let aut_s: Vec<usize> = (0..ka).filter(|&a| fixes_s(&auts[a])).collect();
    let mut pic_ds_order = 0;
    for (c, m) in pic.iter().enumerate() {
        let keeps = t_sharp(m, &ds_right)? == ds_right && u_sharp(m, &ds_left)? == ds_left;
        if keeps != aut_s.contains(&pi[c]) {
            return fail("[M] ∈ Pic(R, D^S) exactly when π(M) fixes S", pic_labels[c].clone());
        }
        pic_ds_order += usize::from(keeps);
    }
    if pic_ds_order != pic_rr.len() * aut_s.len() {
        return fail("|Pic(R, D^S)| = |Pic_R(R)|·|Aut^S(R)|", pic_ds_order.to_string());
    }

    let (rr_s, pic_s, aut_st) = (pic_rr_group.structure(), pic_group.structure(), aut_group.structure());
    Ok(BassReport {
        s_equals_units,
        pic_rr: (0..pic_rr.len())
            .map(|i| if i == 0 { "R".to_string() } else { format!("P{i}") })
            .collect(),
        sequence: format!("0 → {rr_s} → {pic_s} → {aut_st} → 0"),
        pic_rr_structure: rr_s,
        aut: auts.iter().map(|p| twist_label(r, p)).collect(),
        aut_structure: aut_st,
        aut_s: aut_s.iter().map(|&a| twist_label(r, &auts[a])).collect(),
        pic: pic_labels,
        pic_structure: pic_s,
        pic_ds_order,
        split: true,
        note: SATURATION_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    fn units(r: &Ring) -> Vec<usize> {
        r.units().iter().collect()
    }

    #[test]
    fn f4_frobenius_splits() {
        let r = make_ring(&RingSpec::PolyQuotient { p: 2, tail: vec![1, 1] }).unwrap();
        let rep = bass_check(&r, &units(&r)).unwrap();
        assert_eq!(rep.sequence, "0 → 0 → Z/2 → Z/2 → 0");
        assert_eq!(rep.pic_ds_order, 2);
        assert!(rep.s_equals_units);
    }

    #[test]
    fn cyclic_ring_is_trivial() {
        let r = make_ring(&RingSpec::Zmod { n: 8 }).unwrap();
        let rep = bass_check(&r, &units(&r)).unwrap();
        assert_eq!(rep.sequence, "0 → 0 → 0 → 0 → 0");
    }

    #[test]
    fn dual_numbers_are_trivial() {
        let r = make_ring(&RingSpec::PolyQuotient { p: 2, tail: vec![0, 0] }).unwrap();
        let rep = bass_check(&r, &units(&r)).unwrap();
        assert_eq!(rep.pic_rr.len(), 1);
        assert_eq!(rep.aut.len(), 1);
    }

    #[test]
    fn unsaturated_set_is_refused() {
        let r = make_ring(&RingSpec::Zmod { n: 5 }).unwrap();
        let one = r.one();
        assert!(matches!(bass_check(&r, &[one]), Err(Error::NotSaturated(_))));
    }
}
