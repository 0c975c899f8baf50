//! The dual `M* = Hom_R(M, R)` of an R-S-bimodule, as an S-R-bimodule with
//! `(s·f)(m) = f(m s)` and `(f·r)(m) = f(m) r`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::AbGroup;
use crate::error::{Error, Result};
use crate::limits;
use crate::module::{enumerate_hom_tables, Action, Bimodule, FinBimodule, Linearity};

/// A dual module together with the hom table behind each element.
#[derive(Debug, Clone)]
pub struct Dual {
    pub module: Bimodule,
    pub tables: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Dual {
    /// `f(m)` for the dual element `f`.
    pub fn eval(&self, f: usize, m: usize) -> usize {
        self.tables[f][m]
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }
}

pub fn dual_module(m: &Bimodule) -> Result<Dual> {
    let Some(left) = m.left() else {
        return Err(Error::mismatch("dual needs a left module"));
    };
    let r = left.ring().clone();
    let reg = FinBimodule::regular(&r).forget(true, false);
    let tables = enumerate_hom_tables(&m.forget(true, false), &reg, Linearity::Left)?;
    let k = tables.len();
    limits::check_order("dual module order", k)?;
    let index: HashMap<Vec<usize>, usize> = tables.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let lookup = |t: Vec<usize>| -> usize { index[&t] };
    let n = m.order();
    let mut add = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            add[a * k + b] = lookup((0..n).map(|x| r.add(tables[a][x], tables[b][x])).collect());
        }
    }
    let zero = lookup(vec![r.zero(); n]);
    let group = AbGroup::from_table_unchecked(k, add, zero);
    let left_action = m.right().map(|sa| {
        let s = sa.ring().clone();
        let table = (0..s.order())
            .flat_map(|si| (0..k).map(move |f| (si, f)))
            .map(|(si, f)| lookup((0..n).map(|x| tables[f][m.ract(x, si)]).collect()))
            .collect();
        Action::new(s, table)
    });
    let right_table = (0..r.order())
        .flat_map(|ri| (0..k).map(move |f| (ri, f)))
        .map(|(ri, f)| lookup((0..n).map(|x| r.mul(tables[f][x], ri)).collect()))
        .collect();
    let labels = tables
        .iter()
        .map(|t| {
            let gens: Vec<String> = m
                .group()
                .basis()
                .iter()
                .map(|&b| format!("{}↦{}", m.label(b), r.label(t[b])))
                .collect();
            format!("<{}>", gens.join(","))
        })
        .collect();
    let module = FinBimodule::new(group, left_action, Some(Action::new(r, right_table)), Some(labels))?;
    Ok(Dual {
        module: Arc::new(module),
        tables,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::ring::{automorphism_group, make_ring, Ring, RingMap, RingSpec};

    #[test]
    fn dual_of_regular_is_regular() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let reg = Arc::new(FinBimodule::regular(&r));
        let d = dual_module(&reg).unwrap();
        assert!(is_isomorphic(&d.module, &reg).unwrap());
    }

    #[test]
    fn dual_of_z2_over_z4() {
        let r = make_ring(&RingSpec::Zmod { n: 4 }).unwrap();
        let reg = FinBimodule::regular(&r);
        let (z2, _, _) = reg.quotient(&crate::subset::ElemSet::from_iter(4, [0, 2])).unwrap();
        let d = dual_module(&Arc::new(z2)).unwrap();
        // Hom(Z/2, Z/4) sends 1 to 0 or 2
        assert_eq!(d.module.order(), 2);
    }

    #[test]
    fn dual_inverts_twists() {
        let r: Ring = make_ring(&RingSpec::Product {
            factors: vec![
                RingSpec::Zmod { n: 2 },
                RingSpec::Zmod { n: 2 },
                RingSpec::Zmod { n: 2 },
            ],
        })
        .unwrap();
        let id = RingMap::identity(&r);
        for phi in automorphism_group(&r).unwrap() {
            let tw = Arc::new(FinBimodule::twisted(&r, &phi, &id).unwrap());
            let d = dual_module(&tw).unwrap();
            let inv = phi.inverse().unwrap();
            let expected = Arc::new(FinBimodule::twisted(&r, &inv, &id).unwrap());
            assert!(is_isomorphic(&d.module, &expected).unwrap());
            if phi.then(&phi) != id {
                // a 3-cycle is distinguishable from its inverse
                assert!(!is_isomorphic(&d.module, &tw).unwrap());
            }
        }
    }
}
