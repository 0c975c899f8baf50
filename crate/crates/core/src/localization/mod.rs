//! Two-sided localization of bimodules at a left and a right Gabriel filter.
//!
//! Elements of `Q_{Dl,Hr}(M)` are compatible pairs `(f, g)` with
//! `f: D -> M̄` left linear, `g: H -> M̄` right linear and `x g(y) = f(x) y`.
//! Over a finite ring every filter has a minimal member, so each class has a
//! unique representative on `(D_min, H_min)`.

mod conditions;
mod functor;
mod omega;
mod oneside;
mod qring;

pub use conditions::{check_q1_q4, extension_iso_check, ConditionReport, ExtensionReport};
pub use functor::{functoriality_check, localized_bimodule, FunctorialityReport};
pub use omega::{oracle_omega_localization, OmegaReport};
pub use oneside::{colimit_oracle_count, one_sided_quotients, one_sided_ring, OneSided};
pub use qring::{induced_filter, induced_triple, q_actions, q_ring, FilterTriple, QuotientRing};

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filter::{GabrielFilter, OmegaFilter};
use crate::ideal::Side;
use crate::limits;
use crate::module::{enumerate_hom_tables, two_sided_torsion, Action, Bimodule, FinBimodule, Linearity, Torsion};
use crate::ring::{same_ring, Ring};
use crate::subset::ElemSet;

/// A compatible pair restricted to the minimal members; `f[i]` is the image of
/// the `i`-th element of `D_min`, `g[j]` that of the `j`-th element of `H_min`,
/// both in `M̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompatiblePair {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

/// Sorted elements of a filter's minimal member with a reverse lookup.
#[derive(Debug, Clone)]
pub(crate) struct Domain {
    pub elems: Vec<usize>,
    pub pos: Vec<usize>,
    /// Elements whose images determine an additive map on the domain.
    pub basis: Vec<usize>,
    pub module: FinBimodule,
}

impl Domain {
    fn new(ring: &Ring, set: &ElemSet, side: Side) -> Result<Self> {
        let reg = FinBimodule::regular(ring);
        let linearity = if side == Side::Left {
            Linearity::Left
        } else {
            Linearity::Right
        };
        let keep = reg.forget(side == Side::Left, side != Side::Left);
        let (module, elems) = keep.restrict(set, linearity)?;
        let mut pos = vec![usize::MAX; ring.order()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let basis = module.group().basis().iter().map(|&b| elems[b]).collect();
        Ok(Domain {
            elems,
            pos,
            basis,
            module,
        })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.pos[x] != usize::MAX
    }
}

/// `Q_{Dl,Hr}(M)` as an R-S-bimodule of compatible pairs.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub base: Bimodule,
    pub filters: OmegaFilter,
    pub torsion: Torsion,
    pub mbar: Bimodule,
    pub(crate) d: Domain,
    pub(crate) h: Domain,
    pub pairs: Vec<CompatiblePair>,
    index: HashMap<CompatiblePair, usize>,
    pub module: Bimodule,
    /// `M -> Q(M)`, `m ↦ (x ↦ x m̄, y ↦ m̄ y)`.
    pub canonical: Vec<usize>,
}

impl QuotientModule {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, pair: &CompatiblePair) -> Option<usize> {
        self.index.get(pair).copied()
    }

    /// `f(x)` for `x` in `D_min`.
    pub fn f_at(&self, q: usize, x: usize) -> usize {
        self.pairs[q].f[self.d.pos[x]]
    }

    /// `g(y)` for `y` in `H_min`.
    pub fn g_at(&self, q: usize, y: usize) -> usize {
        self.pairs[q].g[self.h.pos[y]]
    }

    pub fn d_min(&self) -> &[usize] {
        &self.d.elems
    }

    pub fn h_min(&self) -> &[usize] {
        &self.h.elems
    }

    pub fn left_ring(&self) -> &Ring {
        self.filters.left.ring()
    }

    pub fn right_ring(&self) -> &Ring {
        self.filters.right.ring()
    }

    /// Pair index for explicit tables, failing if the tables are not a pair.
    pub(crate) fn lookup(&self, pair: CompatiblePair, what: &str) -> Result<usize> {
        self.index_of(&pair)
            .ok_or_else(|| Error::NotWellDefined(format!("{what} produced a pair outside the localization")))
    }

    /// Image of `m̄ ∈ M̄` under the canonical map.
    pub fn canonical_of_mbar(&self, m: usize) -> CompatiblePair {
        CompatiblePair {
            f: self.d.elems.iter().map(|&x| self.mbar.lact(x, m)).collect(),
            g: self.h.elems.iter().map(|&y| self.mbar.ract(m, y)).collect(),
        }
    }
}

fn check_rings(m: &FinBimodule, dl: &GabrielFilter, hr: &GabrielFilter) -> Result<()> {
    if dl.side() != Side::Left || hr.side() != Side::Right {
        return Err(Error::mismatch("need a left filter on R and a right filter on S"));
    }
    match (m.left_ring(), m.right_ring()) {
        (Some(r), Some(s)) if same_ring(r, dl.ring()) && same_ring(s, hr.ring()) => Ok(()),
        _ => Err(Error::mismatch("module is not a bimodule over the filters' rings")),
    }
}

/// Compatible-pair enumeration on the minimal members.
pub fn two_sided_localization(m: &Bimodule, dl: &GabrielFilter, hr: &GabrielFilter) -> Result<QuotientModule> {
    check_rings(m, dl, hr)?;
    let (r, s) = (dl.ring().clone(), hr.ring().clone());
    let torsion = two_sided_torsion(m, dl, hr)?;
    let mbar: Bimodule = Arc::new(torsion.quotient.clone());
    let d = Domain::new(&r, dl.min(), Side::Left)?;
    let h = Domain::new(&s, hr.min(), Side::Right)?;
    let fs = enumerate_hom_tables(&d.module, &mbar.forget(true, false), Linearity::Left)?;
    let gs = enumerate_hom_tables(&h.module, &mbar.forget(false, true), Linearity::Right)?;
    limits::check_frontier("compatible pair candidates", fs.len().saturating_mul(gs.len()))?;
    let mut pairs = Vec::new();
    for f in &fs {
        for g in &gs {
            let ok = d.basis.iter().all(|&x| {
                h.basis
                    .iter()
                    .all(|&y| mbar.lact(x, g[h.pos[y]]) == mbar.ract(f[d.pos[x]], y))
            });
            if ok {
                pairs.push(CompatiblePair {
                    f: f.clone(),
                    g: g.clone(),
                });
            }
        }
    }
    limits::check_order("localization order", pairs.len())?;
    let index: HashMap<CompatiblePair, usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let k = pairs.len();
    let find = |p: CompatiblePair| -> usize { index[&p] };
    let sum = |a: &CompatiblePair, b: &CompatiblePair| CompatiblePair {
        f: a.f.iter().zip(&b.f).map(|(&x, &y)| mbar.add(x, y)).collect(),
        g: a.g.iter().zip(&b.g).map(|(&x, &y)| mbar.add(x, y)).collect(),
    };
    let mut add = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            add[a * k + b] = find(sum(&pairs[a], &pairs[b]));
        }
    }
    let zero = find(CompatiblePair {
        f: vec![mbar.zero(); d.elems.len()],
        g: vec![mbar.zero(); h.elems.len()],
    });
    let group = crate::abelian::AbGroup::from_table_unchecked(k, add, zero);
    // r·(f, g) = (x ↦ f(x r), y ↦ r g(y))
    let mut left = vec![0; r.order() * k];
    for ri in 0..r.order() {
        for (q, p) in pairs.iter().enumerate() {
            let f = d.elems.iter().map(|&x| p.f[d.pos[r.mul(x, ri)]]).collect();
            let g = p.g.iter().map(|&v| mbar.lact(ri, v)).collect();
            left[ri * k + q] = find(CompatiblePair { f, g });
        }
    }
    // (f, g)·s = (x ↦ f(x) s, y ↦ g(s y))
    let mut right = vec![0; s.order() * k];
    for si in 0..s.order() {
        for (q, p) in pairs.iter().enumerate() {
            let f = p.f.iter().map(|&v| mbar.ract(v, si)).collect();
            let g = h.elems.iter().map(|&y| p.g[h.pos[s.mul(si, y)]]).collect();
            right[si * k + q] = find(CompatiblePair { f, g });
        }
    }
    let mut qm = QuotientModule {
        base: m.clone(),
        filters: OmegaFilter::new(dl.clone(), hr.clone())?,
        torsion,
        mbar: mbar.clone(),
        d,
        h,
        pairs,
        index,
        module: Arc::new(FinBimodule::new_unchecked(group, None, None, vec![])),
        canonical: vec![],
    };
    let canonical: Vec<usize> = (0..m.order())
        .map(|x| {
            qm.index_of(&qm.canonical_of_mbar(qm.torsion.projection[x]))
                .expect("canonical image is a pair")
        })
        .collect();
    let labels = pair_labels(&qm, &canonical);
    qm.module = Arc::new(FinBimodule::new(
        qm.module.group().clone(),
        Some(Action::new(r, left)),
        Some(Action::new(s, right)),
        Some(labels),
    )?);
    qm.canonical = canonical;
    Ok(qm)
}

fn pair_labels(qm: &QuotientModule, canonical: &[usize]) -> Vec<String> {
    let mut labels: Vec<Option<String>> = vec![None; qm.order()];
    for (mi, &q) in canonical.iter().enumerate() {
        if labels[q].is_none() {
            labels[q] = Some(qm.base.label(mi).to_string());
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(q, l)| {
            l.unwrap_or_else(|| {
                let p = &qm.pairs[q];
                let fs: Vec<String> =
                    qm.d.basis
                        .iter()
                        .map(|&x| qm.mbar.label(p.f[qm.d.pos[x]]).to_string())
                        .collect();
                let gs: Vec<String> =
                    qm.h.basis
                        .iter()
                        .map(|&y| qm.mbar.label(p.g[qm.h.pos[y]]).to_string())
                        .collect();
                format!("({}|{})", fs.join(","), gs.join(","))
            })
        })
        .collect()
}

/// Definitional oracle: compatible pairs over every pair of filter members,
/// identified when they agree on some common lower pair of members. Returns
/// the number of classes.
pub fn pair_colimit_oracle(m: &Bimodule, dl: &GabrielFilter, hr: &GabrielFilter) -> Result<usize> {
    check_rings(m, dl, hr)?;
    let (r, s) = (dl.ring().clone(), hr.ring().clone());
    let mbar: Bimodule = Arc::new(two_sided_torsion(m, dl, hr)?.quotient);
    let dmembers = dl.members()?;
    let hmembers = hr.members()?;
    // each representative: (D index, H index, f on D as full table, g on H as full table)
    let mut reps: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let ds: Vec<Domain> = dmembers
        .iter()
        .map(|x| Domain::new(&r, x, Side::Left))
        .collect::<Result<_>>()?;
    let hs: Vec<Domain> = hmembers
        .iter()
        .map(|x| Domain::new(&s, x, Side::Right))
        .collect::<Result<_>>()?;
    for (di, d) in ds.iter().enumerate() {
        let fs = enumerate_hom_tables(&d.module, &mbar.forget(true, false), Linearity::Left)?;
        for (hi, h) in hs.iter().enumerate() {
            let gs = enumerate_hom_tables(&h.module, &mbar.forget(false, true), Linearity::Right)?;
            for f in &fs {
                for g in &gs {
                    let ok = d.elems.iter().all(|&x| {
                        h.elems
                            .iter()
                            .all(|&y| mbar.lact(x, g[h.pos[y]]) == mbar.ract(f[d.pos[x]], y))
                    });
                    if ok {
                        let full_f = (0..r.order())
                            .map(|x| if d.contains(x) { f[d.pos[x]] } else { usize::MAX })
                            .collect();
                        let full_g = (0..s.order())
                            .map(|y| if h.contains(y) { g[h.pos[y]] } else { usize::MAX })
                            .collect();
                        reps.push((di, hi, full_f, full_g));
                        limits::check_frontier("pair colimit oracle", reps.len())?;
                    }
                }
            }
        }
    }
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let (da, ha, fa, ga) = &reps[a];
            let (db, hb, fb, gb) = &reps[b];
            let dcap = dmembers[*da].intersection(&dmembers[*db]);
            let hcap = hmembers[*ha].intersection(&hmembers[*hb]);
            let agree_d = dmembers
                .iter()
                .any(|dp| dp.is_subset(&dcap) && dp.iter().all(|x| fa[x] == fb[x]));
            let agree_h = hmembers
                .iter()
                .any(|hp| hp.is_subset(&hcap) && hp.iter().all(|y| ga[y] == gb[y]));
            if agree_d && agree_h {
                let (x, y) = (root(&mut parent, a), root(&mut parent, b));
                parent[x] = y;
            }
        }
    }
    Ok((0..reps.len()).filter(|&a| root(&mut parent, a) == a).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{dense_filter, filter_closure};
    use crate::iso::is_isomorphic;
    use crate::ring::{make_ring, MatrixShape, RingSpec};

    fn zmod(n: usize) -> Ring {
        make_ring(&RingSpec::Zmod { n }).unwrap()
    }

    #[test]
    fn trivial_filters_give_back_m() {
        let r = zmod(6);
        let reg = Arc::new(FinBimodule::regular(&r));
        let q = two_sided_localization(
            &reg,
            &GabrielFilter::trivial(&r, Side::Left),
            &GabrielFilter::trivial(&r, Side::Right),
        )
        .unwrap();
        assert_eq!(q.order(), 6);
        assert!(is_isomorphic(&q.module, &reg).unwrap());
    }

    #[test]
    fn z6_at_even_ideal() {
        let r = zmod(6);
        let even = ElemSet::from_iter(6, [0, 2, 4]);
        let dl = filter_closure(&r, Side::Left, std::slice::from_ref(&even)).unwrap();
        let hr = filter_closure(&r, Side::Right, &[even]).unwrap();
        let reg = Arc::new(FinBimodule::regular(&r));
        let q = two_sided_localization(&reg, &dl, &hr).unwrap();
        assert_eq!(q.mbar.order(), 3);
        assert_eq!(q.order(), 3);
        assert_eq!(pair_colimit_oracle(&reg, &dl, &hr).unwrap(), 3);
        // the canonical map kills exactly the torsion {0, 3}
        let kernel: Vec<usize> = (0..6).filter(|&x| q.canonical[x] == q.module.zero()).collect();
        assert_eq!(kernel, vec![0, 3]);
    }

    #[test]
    fn upper_triangular_dense_both_sides() {
        let r = make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap();
        let dl = dense_filter(&r, Side::Left).unwrap();
        let dr = dense_filter(&r, Side::Right).unwrap();
        let reg = Arc::new(FinBimodule::regular(&r));
        let q = two_sided_localization(&reg, &dl, &dr).unwrap();
        assert_eq!(q.torsion.submodule.count(), 1);
        assert_eq!(pair_colimit_oracle(&reg, &dl, &dr).unwrap(), q.order());
        q.module.validate().unwrap();
    }
}
