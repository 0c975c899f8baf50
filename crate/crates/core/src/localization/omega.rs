//! Independent route through `T = S ⊗_Z R^op`: `M̄` is a right T-module via
//! `m·(s ⊗ r) = r m s`, and the localization is `Hom_T(K, M̄)` for the right
//! ideal `K = H ⊗ R + S ⊗ D` of `T`.

use std::sync::Arc;

use serde::Serialize;

use super::{two_sided_localization, CompatiblePair};
use crate::abelian::{solve_hom_space, HomConstraint};
use crate::error::{Error, Result};
use crate::filter::GabrielFilter;
use crate::limits;
use crate::module::{Bimodule, FinBimodule};
use crate::subset::ElemSet;
use crate::tensor::{tensor_with_limit, Over, TensorProduct};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub t_order: usize,
    pub k_order: usize,
    pub torsion_order: usize,
    /// `|Hom_T(K, M̄)|`.
    pub oracle_order: usize,
    pub localization_order: usize,
    /// `h ↦ (x ↦ h(1⊗x), y ↦ h(y⊗1))` lands in the compatible pairs and is bijective.
    pub bijection: bool,
    /// `{m | m·K = 0}` equals the two-sided torsion.
    pub torsion_agrees: bool,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.bijection && self.torsion_agrees && self.oracle_order == self.localization_order
    }
}

fn add_mod(acc: &mut [i64], v: &[i64], c: i64, orders: &[u64]) {
    for ((a, &x), &g) in acc.iter_mut().zip(v).zip(orders) {
        *a = (*a + c * x).rem_euclid(g as i64);
    }
}

/// `q·(s ⊗ r)` for `q ∈ T`.
fn times_pure(t: &TensorProduct, q: usize, s: usize, r: usize) -> usize {
    let (sm, rm) = t.factors();
    let (sr, rr) = (sm.right_ring().expect("regular S"), rm.right_ring().expect("regular R"));
    let orders = t.symbol_orders();
    let mut acc = vec![0i64; orders.len()];
    for ((bi, cj), c) in t.symbols().into_iter().zip(t.coefficients(q)) {
        if c != 0 {
            add_mod(&mut acc, &t.pure_coefficients(sr.mul(bi, s), rr.mul(r, cj)), c, orders);
        }
    }
    t.project(&acc)
}

pub fn oracle_omega_localization(m: &Bimodule, dl: &GabrielFilter, hr: &GabrielFilter) -> Result<OmegaReport> {
    let qm = two_sided_localization(m, dl, hr)?;
    let (r, s) = (dl.ring().clone(), hr.ring().clone());
    let sreg: Bimodule = Arc::new(FinBimodule::regular(&s));
    let rreg: Bimodule = Arc::new(FinBimodule::regular(&r));
    let t = tensor_with_limit(&sreg, &rreg, Over::Integers, limits::max_oracle_order())?;
    let tn = t.module.order();
    let mut gens: Vec<usize> = Vec::new();
    for h in hr.min().iter() {
        for x in 0..r.order() {
            gens.push(t.pure(h, x));
        }
    }
    for y in 0..s.order() {
        for d in dl.min().iter() {
            gens.push(t.pure(y, d));
        }
    }
    let kset = t.module.group().span(gens);
    let (kgroup, incl) = t.module.group().subgroup(&kset);
    let mut kpos = vec![usize::MAX; tn];
    for (i, &x) in incl.iter().enumerate() {
        kpos[x] = i;
    }

    let mbar = &qm.mbar;
    let act = |mb: usize, s_el: usize, r_el: usize| mbar.ract(mbar.lact(r_el, mb), s_el);
    // m·K = 0, computed on the original module
    let killed: Vec<usize> = (0..m.order())
        .filter(|&x| {
            hr.min()
                .iter()
                .all(|h| (0..r.order()).all(|y| m.ract(m.lact(y, x), h) == m.zero()))
                && dl
                    .min()
                    .iter()
                    .all(|d| (0..s.order()).all(|y| m.ract(m.lact(d, x), y) == m.zero()))
        })
        .collect();
    let killed = ElemSet::from_iter(m.order(), killed);
    let torsion_agrees = killed == qm.torsion.submodule;

    let mut constraints = Vec::new();
    for (bs, cr) in t.symbols() {
        let source: Vec<usize> = incl
            .iter()
            .map(|&q| {
                let p = kpos[times_pure(&t, q, bs, cr)];
                if p == usize::MAX {
                    Err(Error::failure("K is a right ideal of T", t.module.label(q).to_string()))
                } else {
                    Ok(p)
                }
            })
            .collect::<Result<_>>()?;
        let target: Vec<usize> = (0..mbar.order()).map(|mb| act(mb, bs, cr)).collect();
        constraints.push(HomConstraint::Commutes { source, target });
    }
    let homs = solve_hom_space(&kgroup, mbar.group(), &constraints)?;
    limits::check_frontier("omega oracle homs", homs.len())?;

    let (one_s, one_r) = (s.one(), r.one());
    let mut hit = vec![false; qm.order()];
    let mut bijection = homs.len() == qm.order();
    for h in &homs {
        let at = |q: usize| h[kpos[q]];
        let pair = CompatiblePair {
            f: qm.d_min().iter().map(|&x| at(t.pure(one_s, x))).collect(),
            g: qm.h_min().iter().map(|&y| at(t.pure(y, one_r))).collect(),
        };
        match qm.index_of(&pair) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => bijection = false,
        }
    }
    Ok(OmegaReport {
        t_order: tn,
        k_order: kgroup.order(),
        torsion_order: qm.torsion.submodule.count(),
        oracle_order: homs.len(),
        localization_order: qm.order(),
        bijection: bijection && hit.iter().all(|&b| b),
        torsion_agrees,
    })
}
