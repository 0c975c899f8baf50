//! Classes of twisted regular bimodules `_φR_1` whose filter transports fix
//! the triple's filters.

use std::sync::Arc;

use super::group::{FiniteGroup, PicardElement, PicardGroup, Provenance};
use super::sharp::{t_sharp, u_sharp};
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::localization::FilterTriple;
use crate::module::{Bimodule, FinBimodule};
use crate::ring::{automorphism_group, FiniteRing, RingMap};
use crate::tensor::{tensor, Over};

/// `id`, or the non-fixed points of `φ`.
pub fn twist_label(ring: &FiniteRing, phi: &RingMap) -> String {
    let moved: Vec<String> = (0..ring.order())
        .filter(|&a| phi.apply(a) != a)
        .map(|a| format!("{}↦{}", ring.label(a), ring.label(phi.apply(a))))
        .collect();
    if moved.is_empty() {
        "id".to_string()
    } else {
        format!("twist({})", moved.join(", "))
    }
}

/// A twist class with the automorphisms it collects.
#[derive(Debug, Clone)]
pub struct TwistClass {
    pub automorphisms: Vec<RingMap>,
}

#[derive(Debug, Clone)]
pub struct DiagonalPicard {
    pub group: PicardGroup,
    pub classes: Vec<TwistClass>,
    /// Automorphisms rejected by the filter transports.
    pub rejected: Vec<RingMap>,
}

/// `_φR_1 ⊗ _ψR_1 ≅ _{ψ∘φ}R_1`, so the class product follows `φ.then(ψ)`.
pub fn pic_diag(t: &FilterTriple) -> Result<DiagonalPicard> {
    let r = &t.ring;
    let id = RingMap::identity(r);
    let mut reps: Vec<(RingMap, Bimodule)> = Vec::new();
    let mut classes: Vec<TwistClass> = Vec::new();
    let mut rejected = Vec::new();
    let mut class_of: Vec<(RingMap, usize)> = Vec::new();
    for phi in automorphism_group(r)? {
        let tw: Bimodule = Arc::new(FinBimodule::twisted(r, &phi, &id)?);
        if t_sharp(&tw, &t.right)? != t.right || u_sharp(&tw, &t.left)? != t.left {
            rejected.push(phi);
            continue;
        }
        let mut found = None;
        for (i, (_, m)) in reps.iter().enumerate() {
            if is_isomorphic(&tw, m)? {
                found = Some(i);
                break;
            }
        }
        let c = match found {
            Some(i) => i,
            None => {
                reps.push((phi.clone(), tw));
                classes.push(TwistClass { automorphisms: vec![] });
                reps.len() - 1
            }
        };
        classes[c].automorphisms.push(phi.clone());
        class_of.push((phi, c));
    }
    let k = reps.len();
    let find = |phi: &RingMap| class_of.iter().find(|(p, _)| p == phi).map(|&(_, c)| c);
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            let prod = reps[a].0.then(&reps[b].0);
            let c = find(&prod)
                .ok_or_else(|| Error::failure("stable twists are closed under composition", twist_label(r, &prod)))?;
            let tp = tensor(&reps[a].1, &reps[b].1, Over::Ring)?;
            if !is_isomorphic(&Arc::new(tp.module), &reps[c].1)? {
                return Err(Error::failure("_φR ⊗ _ψR ≅ _{ψφ}R", twist_label(r, &prod)));
            }
            mul[a * k + b] = c;
        }
    }
    let identity = find(&id).ok_or_else(|| Error::failure("the identity twist is stable", "id"))?;
    let group = FiniteGroup::new(k, mul, identity)?;
    let elements = reps
        .iter()
        .map(|(phi, m)| PicardElement {
            label: twist_label(r, phi),
            provenance: Provenance::TwistedRegular,
            module: m.clone(),
        })
        .collect();
    Ok(DiagonalPicard {
        group: PicardGroup { elements, group },
        classes,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::filter_closure;
    use crate::ideal::Side;
    use crate::ring::{make_ring, RingSpec};
    use crate::subset::ElemSet;

    #[test]
    fn cyclic_rings_have_no_twists() {
        let r = make_ring(&RingSpec::Zmod { n: 8 }).unwrap();
        assert_eq!(pic_diag(&FilterTriple::trivial(&r)).unwrap().group.order(), 1);
    }

    #[test]
    fn frobenius_twist_of_f4() {
        let r = make_ring(&RingSpec::PolyQuotient { p: 2, tail: vec![1, 1] }).unwrap();
        let p = pic_diag(&FilterTriple::trivial(&r)).unwrap();
        assert_eq!(p.group.order(), 2);
        assert_eq!(p.group.structure(), "Z/2");
    }

    #[test]
    fn factor_filter_excludes_the_swap() {
        let r = make_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap();
        let e = ElemSet::from_iter(4, [0, 2]);
        let t = FilterTriple::new(
            &r,
            filter_closure(&r, Side::Left, std::slice::from_ref(&e)).unwrap(),
            filter_closure(&r, Side::Right, &[e]).unwrap(),
        )
        .unwrap();
        let p = pic_diag(&t).unwrap();
        assert_eq!(p.group.order(), 1);
        assert_eq!(p.rejected.len(), 1);
        // without filters the swap is a nontrivial class
        assert_eq!(pic_diag(&FilterTriple::trivial(&r)).unwrap().group.order(), 2);
    }
}
