//! The ring structure on `Q_{Dl,Dr}(R)` and the induced actions on `Q(M)`.

use std::sync::Arc;

use super::{two_sided_localization, CompatiblePair, QuotientModule};
use crate::error::{Error, Result};
use crate::filter::{filter_closure, GabrielFilter};
use crate::ideal::Side;
use crate::module::{Action, Bimodule, FinBimodule};
use crate::ring::{same_ring, FiniteRing, Ring, RingMap};
use crate::subset::ElemSet;

/// A ring with a left and a right Gabriel filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterTriple {
    pub ring: Ring,
    pub left: GabrielFilter,
    pub right: GabrielFilter,
}

impl FilterTriple {
    pub fn new(ring: &Ring, left: GabrielFilter, right: GabrielFilter) -> Result<Self> {
        if left.side() != Side::Left || right.side() != Side::Right {
            return Err(Error::mismatch("triple needs a left and a right filter"));
        }
        if !same_ring(left.ring(), ring) || !same_ring(right.ring(), ring) {
            return Err(Error::mismatch("filters live on a different ring"));
        }
        Ok(FilterTriple {
            ring: ring.clone(),
            left,
            right,
        })
    }

    pub fn trivial(ring: &Ring) -> Self {
        FilterTriple {
            ring: ring.clone(),
            left: GabrielFilter::trivial(ring, Side::Left),
            right: GabrielFilter::trivial(ring, Side::Right),
        }
    }

    /// `R_R` is `Dr`-torsion-free and `_R R` is `Dl`-torsion-free.
    pub fn check_zero_cell(&self) -> Result<()> {
        let r = &self.ring;
        for (f, side) in [(&self.right, Side::Right), (&self.left, Side::Left)] {
            let witness = (0..r.order()).find(|&x| {
                x != r.zero()
                    && f.min().iter().all(|d| {
                        let p = if side == Side::Right { r.mul(x, d) } else { r.mul(d, x) };
                        p == r.zero()
                    })
            });
            if let Some(element) = witness {
                return Err(Error::TorsionWitness { side, element });
            }
        }
        Ok(())
    }

    pub fn is_zero_cell(&self) -> bool {
        self.check_zero_cell().is_ok()
    }
}

/// `Q_{Dl,Dr}(R)` with its multiplication and the canonical embedding.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub triple: FilterTriple,
    pub localization: QuotientModule,
    pub ring: Ring,
    pub embed: RingMap,
}

impl QuotientRing {
    pub fn order(&self) -> usize {
        self.ring.order()
    }
}

/// Extension of `Σ y_i m_i ↦ Σ φ(y_i) m_i` from products `J × M` to their
/// additive span, as a partial table on `M`. Fails on a conflict.
fn extend_over_products(
    mbar: &FinBimodule,
    ideal: &[usize],
    phi: &dyn Fn(usize) -> usize,
    act: &dyn Fn(usize, usize) -> usize,
) -> Result<Vec<usize>> {
    let n = mbar.order();
    let mut table = vec![usize::MAX; n];
    table[mbar.zero()] = mbar.zero();
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for &y in ideal {
        for m in 0..n {
            let key = act(y, m);
            let val = act(phi(y), m);
            match table[key] {
                usize::MAX => {
                    table[key] = val;
                    gens.push((key, val));
                }
                v if v != val => return Err(Error::NotWellDefined("extension over J·M conflicts".into())),
                _ => {}
            }
        }
    }
    let mut frontier: Vec<usize> = (0..n).filter(|&x| table[x] != usize::MAX).collect();
    while let Some(e) = frontier.pop() {
        let v = table[e];
        for &(w, u) in &gens {
            let (key, val) = (mbar.add(e, w), mbar.add(v, u));
            match table[key] {
                usize::MAX => {
                    table[key] = val;
                    frontier.push(key);
                }
                old if old != val => return Err(Error::NotWellDefined("extension over J·M conflicts".into())),
                _ => {}
            }
        }
    }
    Ok(table)
}

/// Left action of `Q(R)` on `Q(M)`: `q·m = (f ∘ f_1, g̃_1 ∘ g)`.
fn left_action_table(r: &Ring, j: &ElemSet, lr: &QuotientModule, qm: &QuotientModule) -> Result<Vec<usize>> {
    let mbar = &qm.mbar;
    let j = j.to_vec();
    let k = qm.order();
    let mut table = vec![0; lr.order() * k];
    for q in 0..lr.order() {
        let g1_tilde = extend_over_products(mbar, &j, &|y| lr.g_at(q, y), &|a, m| mbar.lact(a, m))?;
        for mi in 0..k {
            let f: Vec<usize> = qm
                .d_min()
                .iter()
                .map(|&x| {
                    let y = lr.f_at(q, x);
                    if qm.d.contains(y) {
                        Ok(qm.f_at(mi, y))
                    } else {
                        Err(Error::NotWellDefined(format!("f_1 sends {} outside D_min", r.label(x))))
                    }
                })
                .collect::<Result<_>>()?;
            let g: Vec<usize> = qm
                .h_min()
                .iter()
                .map(|&y| match g1_tilde[qm.g_at(mi, y)] {
                    usize::MAX => Err(Error::NotWellDefined("g(H_min) is not inside J·M̄".into())),
                    v => Ok(v),
                })
                .collect::<Result<_>>()?;
            table[q * k + mi] = qm.lookup(CompatiblePair { f, g }, "left Q(R)-action")?;
        }
    }
    Ok(table)
}

/// Right action of `Q(S)` on `Q(M)`: `m·p = (f̃_2 ∘ f, g ∘ g_2)`.
fn right_action_table(s: &Ring, kmin: &ElemSet, ls: &QuotientModule, qm: &QuotientModule) -> Result<Vec<usize>> {
    let mbar = &qm.mbar;
    let kmin = kmin.to_vec();
    let k = qm.order();
    let mut table = vec![0; ls.order() * k];
    for p in 0..ls.order() {
        let f2_tilde = extend_over_products(mbar, &kmin, &|y| ls.f_at(p, y), &|a, m| mbar.ract(m, a))?;
        for mi in 0..k {
            let g: Vec<usize> = qm
                .h_min()
                .iter()
                .map(|&y| {
                    let z = ls.g_at(p, y);
                    if qm.h.contains(z) {
                        Ok(qm.g_at(mi, z))
                    } else {
                        Err(Error::NotWellDefined(format!("g_2 sends {} outside H_min", s.label(y))))
                    }
                })
                .collect::<Result<_>>()?;
            let f: Vec<usize> = qm
                .d_min()
                .iter()
                .map(|&x| match f2_tilde[qm.f_at(mi, x)] {
                    usize::MAX => Err(Error::NotWellDefined("f(D_min) is not inside M̄·K".into())),
                    v => Ok(v),
                })
                .collect::<Result<_>>()?;
            table[p * k + mi] = qm.lookup(CompatiblePair { f, g }, "right Q(S)-action")?;
        }
    }
    Ok(table)
}

/// `Q_{Dl,Dr}(R)`; the ring axioms are verified on the finished table.
pub fn q_ring(triple: &FilterTriple) -> Result<QuotientRing> {
    triple.check_zero_cell()?;
    let r = &triple.ring;
    let reg: Bimodule = Arc::new(FinBimodule::regular(r));
    let loc = two_sided_localization(&reg, &triple.left, &triple.right)?;
    let one = loc.canonical[r.one()];
    // q·m is stored at [q * k + m], which is the ring's table layout
    let mul = left_action_table(r, triple.right.min(), &loc, &loc)?;
    let ring = FiniteRing::from_parts(loc.module.group().clone(), mul, one, loc.module.labels().to_vec())
        .map_err(|e| Error::failure("quotient ring axioms", e.to_string()))?;
    let ring = Arc::new(ring);
    let embed = RingMap::new(r.clone(), ring.clone(), loc.canonical.clone())
        .map_err(|e| Error::failure("canonical embedding", e.to_string()))?;
    Ok(QuotientRing {
        triple: triple.clone(),
        localization: loc,
        ring,
        embed,
    })
}

/// The `Q(R)`-`Q(S)`-bimodule structure on `Q(M)`.
pub fn q_actions(qr: &QuotientRing, qs: &QuotientRing, qm: &QuotientModule) -> Result<FinBimodule> {
    if qr.triple.left != qm.filters.left || qs.triple.right != qm.filters.right {
        return Err(Error::mismatch("localization filters differ from the triples'"));
    }
    let left = left_action_table(&qr.triple.ring, qr.triple.right.min(), &qr.localization, qm)?;
    let right = right_action_table(&qs.triple.ring, qs.triple.left.min(), &qs.localization, qm)?;
    FinBimodule::new(
        qm.module.group().clone(),
        Some(Action::new(qr.ring.clone(), left)),
        Some(Action::new(qs.ring.clone(), right)),
        Some(qm.module.labels().to_vec()),
    )
    .map_err(|e| Error::failure("localized bimodule axioms", e.to_string()))
}

/// Ideals of `Q` containing `D·Q` (right) or `Q·D` (left) for a member `D`.
pub fn induced_filter(f: &GabrielFilter, q: &QuotientRing) -> Result<GabrielFilter> {
    let qr = &q.ring;
    let d: Vec<usize> = f.min().iter().map(|x| q.embed.apply(x)).collect();
    let n = qr.order();
    let prods: Vec<usize> = d
        .iter()
        .flat_map(|&x| {
            (0..n).map(move |y| match f.side() {
                Side::Left => (y, x),
                _ => (x, y),
            })
        })
        .map(|(a, b)| qr.mul(a, b))
        .collect();
    let seed = qr.additive().span(prods);
    filter_closure(qr, f.side(), &[seed])
}

/// The triple `(Q, D'_l, D'_r)`.
pub fn induced_triple(q: &QuotientRing) -> Result<FilterTriple> {
    let left = induced_filter(&q.triple.left, q)?;
    let right = induced_filter(&q.triple.right, q)?;
    FilterTriple::new(&q.ring, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{dense_filter, filter_closure};
    use crate::ring::{make_ring, ring_isomorphism, MatrixShape, RingSpec};

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
    fn trivial_filters_give_back_the_ring() {
        for spec in [RingSpec::Zmod { n: 6 }, RingSpec::Zmod { n: 8 }] {
            let r = make_ring(&spec).unwrap();
            let q = q_ring(&FilterTriple::trivial(&r)).unwrap();
            assert!(q.embed.is_injective());
            assert_eq!(q.order(), r.order());
            assert!(ring_isomorphism(&r, &q.ring).unwrap().is_some());
        }
    }

    #[test]
    fn upper_triangular_dense_both_sides() {
        let r = t2f2();
        let q = q_ring(&dense(&r)).unwrap();
        assert!(q.embed.is_injective());
        q.ring.check_axioms().unwrap();
    }

    #[test]
    fn regular_actions_are_the_multiplication() {
        let r = t2f2();
        let q = q_ring(&dense(&r)).unwrap();
        let acts = q_actions(&q, &q, &q.localization).unwrap();
        for a in 0..q.order() {
            for b in 0..q.order() {
                assert_eq!(acts.lact(a, b), q.ring.mul(a, b));
                assert_eq!(acts.ract(a, b), q.ring.mul(a, b));
            }
        }
    }

    #[test]
    fn localizing_twice_changes_nothing() {
        let r = t2f2();
        let q = q_ring(&dense(&r)).unwrap();
        let again = q_ring(&induced_triple(&q).unwrap()).unwrap();
        assert!(ring_isomorphism(&q.ring, &again.ring).unwrap().is_some());
    }

    #[test]
    fn torsion_ring_is_refused() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let even = crate::subset::ElemSet::from_iter(6, [0, 2, 4]);
        let t = FilterTriple::new(
            &r,
            filter_closure(&r, Side::Left, std::slice::from_ref(&even)).unwrap(),
            filter_closure(&r, Side::Right, &[even]).unwrap(),
        )
        .unwrap();
        assert!(matches!(q_ring(&t), Err(Error::TorsionWitness { element: 3, .. })));
    }
}
