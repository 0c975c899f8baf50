//! Bimodule isomorphism search.

use crate::error::{Error, Result};
use crate::module::{Bimodule, FinBimodule, Linearity, ModuleHom};
use crate::ring::same_ring;
use crate::search::{MapSearch, Signature};

fn signature(m: &FinBimodule) -> Signature<'_> {
    let mut unary = Vec::new();
    for act in [m.left(), m.right()].into_iter().flatten() {
        for r in 0..act.ring().order() {
            unary.push(act.row(r));
        }
    }
    Signature {
        size: m.order(),
        binary: vec![m.group().add_table()],
        unary,
    }
}

fn same_actions(m: &FinBimodule, n: &FinBimodule) -> Result<()> {
    let ok = |a: Option<&crate::ring::Ring>, b: Option<&crate::ring::Ring>| match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => same_ring(x, y),
        _ => false,
    };
    if ok(m.left_ring(), n.left_ring()) && ok(m.right_ring(), n.right_ring()) {
        Ok(())
    } else {
        Err(Error::mismatch("bimodules are over different rings"))
    }
}

/// The first isomorphism `m -> n` found by generator-image backtracking, if any.
pub fn bimodule_iso(m: &Bimodule, n: &Bimodule) -> Result<Option<ModuleHom>> {
    same_actions(m, n)?;
    if m.order() != n.order() || m.group().invariant_factors() != n.group().invariant_factors() {
        return Ok(None);
    }
    let (ms, ns) = (signature(m), signature(n));
    let generators = ms.greedy_generators(&[m.zero()]);
    let search = MapSearch {
        source: &ms,
        target: &ns,
        fixed: vec![(m.zero(), n.zero())],
        generators,
        injective: true,
    };
    let candidates = |g: usize| -> Vec<usize> {
        let ord = m.group().element_order(g);
        (0..n.order()).filter(|&x| n.group().element_order(x) == ord).collect()
    };
    let mut found = None;
    search.run(&candidates, &mut |table| {
        found = Some(table);
        false
    })?;
    let linearity = match (m.left().is_some(), m.right().is_some()) {
        (true, true) => Linearity::Bi,
        (true, false) => Linearity::Left,
        (false, true) => Linearity::Right,
        (false, false) => Linearity::Additive,
    };
    Ok(found.map(|table| ModuleHom {
        source: m.clone(),
        target: n.clone(),
        table,
        linearity,
    }))
}

pub fn is_isomorphic(m: &Bimodule, n: &Bimodule) -> Result<bool> {
    Ok(bimodule_iso(m, n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbGroup;
    use crate::ring::{automorphism_group, make_ring, RingMap, RingSpec};
    use std::sync::Arc;

    #[test]
    fn identity_is_found() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let m = Arc::new(FinBimodule::regular(&r));
        let h = bimodule_iso(&m, &m).unwrap().unwrap();
        assert!(h.is_valid() && h.is_bijective());
    }

    #[test]
    fn order_mismatch() {
        let g = |n: usize| {
            let t = (0..n * n).map(|i| (i / n + i % n) % n).collect();
            Arc::new(FinBimodule::new(AbGroup::from_table(n, t, 0).unwrap(), None, None, None).unwrap())
        };
        assert!(bimodule_iso(&g(2), &g(3)).unwrap().is_none());
    }

    #[test]
    fn swap_twist_is_not_regular() {
        let r = make_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap();
        let reg = Arc::new(FinBimodule::regular(&r));
        let id = RingMap::identity(&r);
        for phi in automorphism_group(&r).unwrap() {
            let tw = Arc::new(FinBimodule::twisted(&r, &phi, &id).unwrap());
            let expected = phi == id;
            assert_eq!(is_isomorphic(&tw, &reg).unwrap(), expected);
            // all 4! bijections, filtered by bilinearity
            let oracle = permutations(4)
                .into_iter()
                .any(|p| crate::module::is_linear(&tw, &reg, &p, Linearity::Bi));
            assert_eq!(oracle, expected);
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
}
