//! One-sided modules of quotients `Q_D(M) = Hom(D_min, M̄)` for a right filter.

use std::collections::HashMap;
use std::sync::Arc;

use super::Domain;
use crate::abelian::AbGroup;
use crate::error::{Error, Result};
use crate::filter::GabrielFilter;
use crate::ideal::Side;
use crate::limits;
use crate::module::{enumerate_hom_tables, torsion_submodule, Action, Bimodule, FinBimodule, Linearity};
use crate::ring::{same_ring, FiniteRing, Ring, RingMap};

/// `Q_D(M)` as a right R-module, elements being right homs `D_min -> M̄`.
#[derive(Debug, Clone)]
pub struct OneSided {
    pub module: Bimodule,
    pub tables: Vec<Vec<usize>>,
    pub mbar: Bimodule,
    pub(crate) d: Domain,
    index: HashMap<Vec<usize>, usize>,
    /// `m ↦ (x ↦ m̄ x)`.
    pub canonical: Vec<usize>,
}

impl OneSided {
    pub fn order(&self) -> usize {
        self.tables.len()
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// `f(x)` for `x ∈ D_min`.
    pub fn eval(&self, f: usize, x: usize) -> usize {
        self.tables[f][self.d.pos[x]]
    }

    pub fn d_min(&self) -> &[usize] {
        &self.d.elems
    }
}

fn check(m: &FinBimodule, f: &GabrielFilter) -> Result<Ring> {
    if f.side() != Side::Right {
        return Err(Error::mismatch("one-sided quotients are taken at a right filter"));
    }
    match m.right_ring() {
        Some(r) if same_ring(r, f.ring()) => Ok(r.clone()),
        _ => Err(Error::mismatch("module is not a right module over the filter's ring")),
    }
}

pub fn one_sided_quotients(m: &Bimodule, f: &GabrielFilter) -> Result<OneSided> {
    let r = check(m, f)?;
    let right_only = Arc::new(m.forget(false, true));
    let torsion = torsion_submodule(&right_only, f)?;
    let mbar: Bimodule = Arc::new(torsion.quotient);
    let d = Domain::new(&r, f.min(), Side::Right)?;
    let tables = enumerate_hom_tables(&d.module, &mbar, Linearity::Right)?;
    let k = tables.len();
    limits::check_order("module of quotients order", k)?;
    let index: HashMap<Vec<usize>, usize> = tables.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let find = |t: Vec<usize>| -> usize { index[&t] };
    let mut add = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            add[a * k + b] = find(
                tables[a]
                    .iter()
                    .zip(&tables[b])
                    .map(|(&x, &y)| mbar.add(x, y))
                    .collect(),
            );
        }
    }
    let zero = find(vec![mbar.zero(); d.elems.len()]);
    // (f·r)(x) = f(r x)
    let mut act = vec![0; r.order() * k];
    for ri in 0..r.order() {
        for (q, t) in tables.iter().enumerate() {
            act[ri * k + q] = find(d.elems.iter().map(|&x| t[d.pos[r.mul(ri, x)]]).collect());
        }
    }
    let canonical: Vec<usize> = (0..m.order())
        .map(|x| {
            let mb = torsion.projection[x];
            find(d.elems.iter().map(|&y| mbar.ract(mb, y)).collect())
        })
        .collect();
    let group = AbGroup::from_table_unchecked(k, add, zero);
    let module = FinBimodule::new(group, None, Some(Action::new(r, act)), None)?;
    Ok(OneSided {
        module: Arc::new(module),
        tables,
        mbar,
        d,
        index,
        canonical,
    })
}

/// `Q_D(R) = Hom_R(D_min, R)` with composition `(f g)(x) = f(g(x))`.
pub fn one_sided_ring(ring: &Ring, f: &GabrielFilter) -> Result<(Ring, RingMap)> {
    let reg: Bimodule = Arc::new(FinBimodule::regular(ring));
    let q = one_sided_quotients(&reg, f)?;
    if q.mbar.order() != ring.order() {
        let t = torsion_submodule(&reg, f)?;
        let element = t.submodule.iter().find(|&x| x != ring.zero()).unwrap_or(ring.zero());
        return Err(Error::TorsionWitness {
            side: Side::Right,
            element,
        });
    }
    let k = q.order();
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            let comp: Vec<usize> = q
                .d_min()
                .iter()
                .map(|&x| {
                    let y = q.eval(b, x);
                    if q.d.contains(y) {
                        Ok(q.eval(a, y))
                    } else {
                        Err(Error::NotWellDefined("endomorphism leaves the minimal member".into()))
                    }
                })
                .collect::<Result<_>>()?;
            mul[a * k + b] = q.index_of(&comp).expect("composition of homs is a hom");
        }
    }
    let one = q.canonical[ring.one()];
    let labels: Vec<String> = (0..k)
        .map(|a| match q.canonical.iter().position(|&c| c == a) {
            Some(r) => ring.label(r).to_string(),
            None => format!(
                "<{}>",
                q.d.basis
                    .iter()
                    .map(|&x| ring.label(q.eval(a, x)).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        })
        .collect();
    let qr = Arc::new(
        FiniteRing::from_parts(q.module.group().clone(), mul, one, labels)
            .map_err(|e| Error::failure("one-sided quotient ring axioms", e.to_string()))?,
    );
    // r ↦ (x ↦ r x): mirrors the canonical map of the regular module
    let embed = RingMap::new(ring.clone(), qr.clone(), q.canonical.clone())
        .map_err(|e| Error::failure("one-sided embedding", e.to_string()))?;
    Ok((qr, embed))
}

/// Definitional oracle: classes of `∪_{I ∈ D} Hom(I, M̄)` under agreement on
/// some smaller member.
pub fn colimit_oracle_count(m: &Bimodule, f: &GabrielFilter) -> Result<usize> {
    let r = check(m, f)?;
    let right_only = Arc::new(m.forget(false, true));
    let mbar = torsion_submodule(&right_only, f)?.quotient;
    let members = f.members()?;
    let mut reps: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, member) in members.iter().enumerate() {
        let d = Domain::new(&r, member, Side::Right)?;
        for t in enumerate_hom_tables(&d.module, &mbar, Linearity::Right)? {
            let full = (0..r.order())
                .map(|x| if d.contains(x) { t[d.pos[x]] } else { usize::MAX })
                .collect();
            reps.push((i, full));
            limits::check_frontier("colimit oracle", reps.len())?;
        }
    }
    let mut class = vec![usize::MAX; reps.len()];
    let mut count = 0;
    for a in 0..reps.len() {
        if class[a] != usize::MAX {
            continue;
        }
        class[a] = count;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for y in 0..reps.len() {
                if class[y] != usize::MAX {
                    continue;
                }
                let cap = members[reps[x].0].intersection(&members[reps[y].0]);
                let agree = members
                    .iter()
                    .any(|lower| lower.is_subset(&cap) && lower.iter().all(|z| reps[x].1[z] == reps[y].1[z]));
                if agree {
                    class[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{dense_filter, filter_closure};
    use crate::ring::{make_ring, ring_isomorphism, MatrixShape, RingSpec};
    use crate::subset::ElemSet;

    #[test]
    fn trivial_filter_recovers_module() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        let q = one_sided_quotients(&reg, &GabrielFilter::trivial(&r, Side::Right)).unwrap();
        assert_eq!(q.order(), 6);
    }

    #[test]
    fn z6_at_even_ideal_has_order_three() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let f = filter_closure(&r, Side::Right, &[ElemSet::from_iter(6, [0, 2, 4])]).unwrap();
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        assert_eq!(one_sided_quotients(&reg, &f).unwrap().order(), 3);
        assert_eq!(colimit_oracle_count(&reg, &f).unwrap(), 3);
    }

    #[test]
    fn maximal_right_quotients_of_upper_triangular() {
        let r = make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap();
        let f = dense_filter(&r, Side::Right).unwrap();
        let (q, embed) = one_sided_ring(&r, &f).unwrap();
        assert_eq!(q.order(), 16);
        assert!(embed.is_injective());
        let m2 = make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::Full,
        })
        .unwrap();
        assert!(ring_isomorphism(&q, &m2).unwrap().is_some());
        let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
        assert_eq!(colimit_oracle_count(&reg, &f).unwrap(), 16);
    }
}
