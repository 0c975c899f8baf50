//! Junction-by-junction check of
//! `0 → U(Z(R)) → U(Z(Q)) → Pic(R|Q) → Pic(R, Dl, Dr) → Pic(Q, D'l, D'r)`.

use std::sync::Arc;

use serde::Serialize;

use super::diag::pic_diag;
use super::group::{PicardElement, Provenance};
use super::relative::pic_relative;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::localization::{q_actions, q_ring, two_sided_localization, FilterTriple};
use crate::module::{Bimodule, FinBimodule};
use crate::subset::ElemSet;

pub const SCOPE_NOTE: &str =
    "exactness at Pic(R, Dl, Dr) is checked on the computable classes: twisted regular bimodules and invertible subbimodules of Q";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Junction {
    pub at: String,
    pub kernel: Vec<String>,
    pub image: Vec<String>,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub label: String,
    pub provenance: Provenance,
    /// `Q ⊗ M ≅ Q` as Q-Q-bimodules.
    pub localizes_trivially: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub q_order: usize,
    pub units_center_r: Vec<String>,
    pub units_center_q: Vec<String>,
    pub pic_relative: Vec<String>,
    pub classes: Vec<ClassInfo>,
    pub junctions: Vec<Junction>,
    pub scope: String,
}

fn junction(at: &str, kernel: Vec<String>, image: Vec<String>) -> Result<Junction> {
    let (mut k, mut i) = (kernel.clone(), image.clone());
    k.sort();
    i.sort();
    if k != i {
        let witness = k
            .iter()
            .find(|x| !i.contains(x))
            .or_else(|| i.iter().find(|x| !k.contains(x)))
            .cloned()
            .unwrap_or_default();
        return Err(Error::ExactnessFailure {
            junction: at.to_string(),
            witness,
        });
    }
    Ok(Junction {
        at: at.to_string(),
        kernel,
        image,
        exact: true,
    })
}

pub fn verify_exact_sequence(t: &FilterTriple) -> Result<ExactSequenceReport> {
    let r = &t.ring;
    let q = q_ring(t)?;
    let qr = &q.ring;
    let uz = |ring: &crate::ring::FiniteRing| ring.units().intersection(&ring.center());
    let (uzr, uzq) = (uz(r), uz(qr));
    let qlabel = |x: usize| qr.label(x).to_string();

    // U(Z(R)) -> U(Z(Q)) by the embedding
    let included: Vec<usize> = uzr.iter().map(|x| q.embed.apply(x)).collect();
    if let Some(&x) = included.iter().find(|&&x| !uzq.contains(x)) {
        return Err(Error::ExactnessFailure {
            junction: "U(Z(R)) ⊆ U(Z(Q))".into(),
            witness: qlabel(x),
        });
    }
    let mut junctions = vec![junction(
        "U(Z(R))",
        uzr.iter()
            .filter(|&x| q.embed.apply(x) == qr.one())
            .map(|x| r.label(x).to_string())
            .collect(),
        vec![r.label(r.one()).to_string()],
    )?];

    let rel = pic_relative(t, &q)?;
    let rset = ElemSet::from_iter(qr.order(), q.embed.table.iter().copied());
    let phi1: Vec<(usize, usize)> = uzq
        .iter()
        .map(|x| {
            let xr = qr.product_span(&ElemSet::from_iter(qr.order(), [x]), &rset);
            rel.index_of(&xr)
                .map(|i| (x, i))
                .ok_or_else(|| Error::failure("xR lies in Pic(R|Q)", qlabel(x)))
        })
        .collect::<Result<_>>()?;
    for &(x, i) in &phi1 {
        for &(y, j) in &phi1 {
            let xy = phi1.iter().find(|&&(z, _)| z == qr.mul(x, y)).map(|&(_, k)| k);
            if xy != Some(rel.group.group.mul(i, j)) {
                return Err(Error::failure(
                    "x ↦ xR is a homomorphism",
                    format!("{}, {}", qlabel(x), qlabel(y)),
                ));
            }
        }
    }
    let rel_id = rel.group.group.identity();
    junctions.push(junction(
        "U(Z(Q))",
        phi1.iter()
            .filter(|&&(_, i)| i == rel_id)
            .map(|&(x, _)| qlabel(x))
            .collect(),
        included.iter().map(|&x| qlabel(x)).collect(),
    )?);

    // computable classes: twists first, then subbimodules of Q not yet seen
    let diag = pic_diag(t)?;
    let mut classes: Vec<PicardElement> = Vec::new();
    let mut class_of_rel = Vec::new();
    for e in diag.group.elements.iter().chain(rel.group.elements.iter()) {
        let mut found = None;
        for (c, existing) in classes.iter().enumerate() {
            if is_isomorphic(&e.module, &existing.module)? {
                found = Some(c);
                break;
            }
        }
        let c = match found {
            Some(c) => c,
            None => {
                classes.push(e.clone());
                classes.len() - 1
            }
        };
        if e.provenance == Provenance::Subbimodule {
            class_of_rel.push(c);
        }
    }
    let reg: Bimodule = Arc::new(FinBimodule::regular(r));
    let identity_class = classes
        .iter()
        .position(|c| is_isomorphic(&c.module, &reg).unwrap_or(false))
        .ok_or_else(|| Error::failure("R is a computable class", "missing"))?;
    junctions.push(junction(
        "Pic(R|Q)",
        rel.members
            .iter()
            .zip(&class_of_rel)
            .filter(|&(_, &c)| c == identity_class)
            .map(|(m, _)| m.label.clone())
            .collect(),
        phi1.iter()
            .map(|&(_, i)| rel.members[i].label.clone())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect(),
    )?);

    // φ3: [M] ↦ [Q(M)]
    let qreg: Bimodule = Arc::new(FinBimodule::regular(qr));
    let mut infos = Vec::new();
    for c in &classes {
        let qm = two_sided_localization(&c.module, &t.left, &t.right)?;
        let acts: Bimodule = Arc::new(q_actions(&q, &q, &qm)?);
        infos.push(ClassInfo {
            label: c.label.clone(),
            provenance: c.provenance,
            localizes_trivially: is_isomorphic(&acts, &qreg)?,
        });
    }
    let image2: std::collections::BTreeSet<usize> = class_of_rel.iter().copied().collect();
    junctions.push(junction(
        "Pic(R, Dl, Dr)",
        infos
            .iter()
            .filter(|i| i.localizes_trivially)
            .map(|i| i.label.clone())
            .collect(),
        image2.iter().map(|&c| classes[c].label.clone()).collect(),
    )?);

    Ok(ExactSequenceReport {
        q_order: q.order(),
        units_center_r: uzr.iter().map(|x| r.label(x).to_string()).collect(),
        units_center_q: uzq.iter().map(qlabel).collect(),
        pic_relative: rel.members.iter().map(|m| m.label.clone()).collect(),
        classes: infos,
        junctions,
        scope: SCOPE_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::dense_filter;
    use crate::ideal::Side;
    use crate::ring::{make_ring, MatrixShape, RingSpec};

    #[test]
    fn trivial_filters() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let rep = verify_exact_sequence(&FilterTriple::trivial(&r)).unwrap();
        assert_eq!(rep.junctions.len(), 4);
        assert_eq!(rep.pic_relative, vec!["<1>"]);
    }

    #[test]
    fn f4_trivial_filters() {
        let r = make_ring(&RingSpec::PolyQuotient { p: 2, tail: vec![1, 1] }).unwrap();
        let rep = verify_exact_sequence(&FilterTriple::trivial(&r)).unwrap();
        assert_eq!(rep.units_center_q.len(), 3);
        assert_eq!(rep.classes.len(), 2);
    }

    #[test]
    fn upper_triangular_dense() {
        let r = make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap();
        let t = FilterTriple::new(
            &r,
            dense_filter(&r, Side::Left).unwrap(),
            dense_filter(&r, Side::Right).unwrap(),
        )
        .unwrap();
        let rep = verify_exact_sequence(&t).unwrap();
        assert_eq!(rep.units_center_r.len(), 1);
        eprintln!("{rep:#?}");
    }
}
