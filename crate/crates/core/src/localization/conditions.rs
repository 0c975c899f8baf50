//! Morphism conditions between 0-cells and the extension isomorphisms
//! `M ⊗_S Q(S) ≅ Q(M) ≅ Q(R) ⊗_R M` for invertible bimodules.

use std::sync::Arc;

use serde::Serialize;

use super::qring::{q_actions, q_ring, FilterTriple};
use super::two_sided_localization;
use crate::error::{Error, Result};
use crate::module::{is_linear, Bimodule, FinBimodule, Linearity};
use crate::picard::morita_context;
use crate::ring::same_ring;
use crate::subset::ElemSet;
use crate::tensor::{tensor, Over};

/// One condition with the first element of `M` that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub witness: Option<String>,
}

impl ConditionCheck {
    fn from_witness(m: &FinBimodule, w: Option<usize>) -> Self {
        ConditionCheck {
            holds: w.is_none(),
            witness: w.map(|x| m.label(x).to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub q1: ConditionCheck,
    pub q2: ConditionCheck,
    pub q3: ConditionCheck,
    pub q4: ConditionCheck,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.q1.holds && self.q2.holds && self.q3.holds && self.q4.holds
    }
}

fn check_rings(m: &FinBimodule, source: &FilterTriple, target: &FilterTriple) -> Result<()> {
    match (m.left_ring(), m.right_ring()) {
        (Some(r), Some(s)) if same_ring(r, &source.ring) && same_ring(s, &target.ring) => Ok(()),
        _ => Err(Error::mismatch("bimodule rings differ from the triples'")),
    }
}

/// Minimal members suffice throughout: a smaller member only enlarges the
/// annihilator test and shrinks `D·M`, `M·H`.
pub fn check_q1_q4(m: &Bimodule, source: &FilterTriple, target: &FilterTriple) -> Result<ConditionReport> {
    check_rings(m, source, target)?;
    let n = m.order();
    let z = m.zero();
    let hr = target.right.min();
    let dl = source.left.min();
    let q1 = (0..n).find(|&x| x != z && hr.iter().all(|h| m.ract(x, h) == z));
    let q2 = (0..n).find(|&x| x != z && dl.iter().all(|d| m.lact(d, x) == z));
    let all = ElemSet::full(n);
    // D·M for D the minimal member of the source's right filter
    let dm = m.ideal_times(crate::ideal::Side::Left, source.right.min(), &all);
    let q3 = (0..n).find(|&x| hr.iter().any(|h| !dm.contains(m.ract(x, h))));
    let mh = m.ideal_times(crate::ideal::Side::Right, target.left.min(), &all);
    let q4 = (0..n).find(|&x| dl.iter().any(|d| !mh.contains(m.lact(d, x))));
    Ok(ConditionReport {
        q1: ConditionCheck::from_witness(m, q1),
        q2: ConditionCheck::from_witness(m, q2),
        q3: ConditionCheck::from_witness(m, q3),
        q4: ConditionCheck::from_witness(m, q4),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub q_module_order: usize,
    /// `|M ⊗_S Q(S)|`.
    pub right_tensor_order: usize,
    /// `|Q(R) ⊗_R M|`.
    pub left_tensor_order: usize,
    pub varphi_iso: bool,
    pub phi_iso: bool,
    /// `α(m ⊗ n) m̄ = m β̄(n ⊗ m̄)` for all `m, n, m̄`.
    pub beta_extension: bool,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.varphi_iso && self.phi_iso && self.beta_extension
    }
}

fn bijective(table: &[usize], n: usize) -> bool {
    table.len() == n && ElemSet::from_iter(n, table.iter().copied()).count() == n
}

/// Builds `φ: Σ m_i ⊗ q_i ↦ Σ m_i q_i` and `ϕ: Σ p_j ⊗ m_j ↦ Σ p_j m_j` and
/// checks both are bijective R-S-bimodule maps, then checks the extension
/// `β̄` of `β` exists. Any failure is a `PropositionFailure`.
pub fn extension_iso_check(m: &Bimodule, source: &FilterTriple, target: &FilterTriple) -> Result<ExtensionReport> {
    check_rings(m, source, target)?;
    let Some(ctx) = morita_context(m)? else {
        return Err(Error::mismatch("bimodule is not invertible"));
    };
    let qr = q_ring(source)?;
    let qs = q_ring(target)?;
    let qm = two_sided_localization(m, &source.left, &target.right)?;
    let acts = q_actions(&qr, &qs, &qm)?;
    let canon = &qm.canonical;

    let qs_bi: Bimodule = Arc::new(FinBimodule::regular(&qs.ring).restrict_scalars(Some(&qs.embed), Some(&qs.embed))?);
    let right_t = tensor(m, &qs_bi, Over::Ring)?;
    let varphi = right_t.induced_map(qm.module.group(), &|x, q| acts.ract(canon[x], q))?;
    if !bijective(&varphi, qm.order()) {
        return Err(Error::failure(
            "M ⊗ Q(S) -> Q(M) is bijective",
            format!("{} elements vs {}", right_t.module.order(), qm.order()),
        ));
    }
    if !is_linear(&right_t.module, &qm.module, &varphi, Linearity::Bi) {
        return Err(Error::failure("M ⊗ Q(S) -> Q(M) is bilinear", "action mismatch"));
    }

    let qr_bi: Bimodule = Arc::new(FinBimodule::regular(&qr.ring).restrict_scalars(Some(&qr.embed), Some(&qr.embed))?);
    let left_t = tensor(&qr_bi, m, Over::Ring)?;
    let phi = left_t.induced_map(qm.module.group(), &|p, x| acts.lact(p, canon[x]))?;
    if !bijective(&phi, qm.order()) {
        return Err(Error::failure(
            "Q(R) ⊗ M -> Q(M) is bijective",
            format!("{} elements vs {}", left_t.module.order(), qm.order()),
        ));
    }
    if !is_linear(&left_t.module, &qm.module, &phi, Linearity::Bi) {
        return Err(Error::failure("Q(R) ⊗ M -> Q(M) is bilinear", "action mismatch"));
    }

    // β̄(n ⊗ m̄) is the class in Q(S) whose right component is h ↦ β(n ⊗ g(h));
    // torsion-freeness makes it unique when it exists
    let qsl = &qs.localization;
    let mbar = &qm.mbar;
    let lift: Vec<usize> = (0..mbar.order()).map(|x| qm.torsion.representatives[x]).collect();
    for n in 0..ctx.dual.module.order() {
        for q in 0..qm.order() {
            let g: Vec<usize> = qm.h_min().iter().map(|&h| ctx.beta(n, lift[qm.g_at(q, h)])).collect();
            let mut hits = (0..qs.order()).filter(|&p| qsl.h_min().iter().zip(&g).all(|(&h, &v)| qsl.g_at(p, h) == v));
            let b = match (hits.next(), hits.next()) {
                (Some(b), None) => b,
                _ => {
                    return Err(Error::failure(
                        "β extends to M* ⊗ Q(M)",
                        format!("{} ⊗ {}", ctx.dual.module.label(n), qm.module.label(q)),
                    ))
                }
            };
            for (x, &cx) in canon.iter().enumerate() {
                let lhs = acts.lact(qr.embed.apply(ctx.alpha(x, n)), q);
                let rhs = acts.ract(cx, b);
                if lhs != rhs {
                    return Err(Error::failure(
                        "α(m ⊗ n) m̄ = m β̄(n ⊗ m̄)",
                        format!(
                            "m = {}, n = {}, m̄ = {}",
                            m.label(x),
                            ctx.dual.module.label(n),
                            qm.module.label(q)
                        ),
                    ));
                }
            }
        }
    }
    Ok(ExtensionReport {
        q_module_order: qm.order(),
        right_tensor_order: right_t.module.order(),
        left_tensor_order: left_t.module.order(),
        varphi_iso: true,
        phi_iso: true,
        beta_extension: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::dense_filter;
    use crate::ideal::Side;
    use crate::ring::{automorphism_group, make_ring, MatrixShape, Ring, RingMap, RingSpec};

    fn t2f2() -> Ring {
        make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap()
    }

    fn dense(r: &Ring) -> FilterTriple {
        FilterTriple::new(
            r,
            dense_filter(r, Side::Left).unwrap(),
            dense_filter(r, Side::Right).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn regular_bimodule_satisfies_conditions() {
        let r = t2f2();
        let t = dense(&r);
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        assert!(check_q1_q4(&reg, &t, &t).unwrap().all_hold());
    }

    #[test]
    fn torsion_module_fails_q1() {
        let r = make_ring(&RingSpec::Zmod { n: 4 }).unwrap();
        // the closure of (2) in Z/4 already contains 0, so every element is torsion
        let two = ElemSet::from_iter(4, [0, 2]);
        let left = crate::filter::filter_closure(&r, Side::Left, std::slice::from_ref(&two)).unwrap();
        let right = crate::filter::filter_closure(&r, Side::Right, &[two]).unwrap();
        let t = FilterTriple {
            ring: r.clone(),
            left,
            right,
        };
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        let rep = check_q1_q4(&reg, &t, &t).unwrap();
        assert!(!rep.q1.holds);
        assert_eq!(rep.q1.witness.as_deref(), Some("1"));
    }

    #[test]
    fn localized_module_satisfies_conditions() {
        let r = t2f2();
        let t = dense(&r);
        let q = q_ring(&t).unwrap();
        let qt = super::super::qring::induced_triple(&q).unwrap();
        let loc = two_sided_localization(&Arc::new(FinBimodule::regular(&r)), &t.left, &t.right).unwrap();
        let qm: Bimodule = Arc::new(q_actions(&q, &q, &loc).unwrap());
        assert!(check_q1_q4(&qm, &qt, &qt).unwrap().all_hold());
    }

    #[test]
    fn extension_isos_on_twists() {
        let r = make_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap();
        let t = FilterTriple::trivial(&r);
        let id = RingMap::identity(&r);
        for phi in automorphism_group(&r).unwrap() {
            let tw: Bimodule = Arc::new(FinBimodule::twisted(&r, &phi, &id).unwrap());
            let rep = extension_iso_check(&tw, &t, &t).unwrap();
            assert!(rep.passed());
            assert_eq!(rep.q_module_order, 4);
        }
    }

    #[test]
    fn extension_isos_dense_upper_triangular() {
        let r = t2f2();
        let t = dense(&r);
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        assert!(extension_iso_check(&reg, &t, &t).unwrap().passed());
    }
}
