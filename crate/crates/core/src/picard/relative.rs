//! `Pic(R | Q)`: R-R-subbimodules `M` of `Q` with `M M⁻¹ = M⁻¹ M = R` whose
//! filter transports fix both filters, under the set product.

use std::collections::HashSet;
use std::sync::Arc;

use super::group::{FiniteGroup, PicardElement, PicardGroup, Provenance};
use super::sharp::{t_sharp, u_sharp};
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::limits;
use crate::localization::{FilterTriple, QuotientRing};
use crate::module::{Bimodule, FinBimodule, Linearity};
use crate::subset::ElemSet;
use crate::tensor::{tensor, Over};

/// An R-R-subbimodule of `Q` and its inverse `{n | nM, Mn ⊆ R}`.
#[derive(Debug, Clone)]
pub struct SubbimoduleOfQ {
    pub elements: ElemSet,
    pub inverse: ElemSet,
    pub module: Bimodule,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct RelativePicard {
    pub group: PicardGroup,
    pub members: Vec<SubbimoduleOfQ>,
}

impl RelativePicard {
    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.members.iter().position(|m| &m.elements == set)
    }
}

/// `Q` as an R-R-bimodule through the embedding.
pub fn q_as_bimodule(q: &QuotientRing) -> Result<FinBimodule> {
    FinBimodule::regular(&q.ring).restrict_scalars(Some(&q.embed), Some(&q.embed))
}

/// Every R-R-subbimodule of `Q`, smallest first.
pub fn subbimodules(q: &QuotientRing) -> Result<Vec<ElemSet>> {
    let qb = q_as_bimodule(q)?;
    let zero = qb.span([qb.zero()], Linearity::Bi);
    let mut seen: HashSet<ElemSet> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        for x in 0..qb.order() {
            if s.contains(x) {
                continue;
            }
            let t = qb.span(s.iter().chain([x]), Linearity::Bi);
            if seen.insert(t.clone()) {
                limits::check_frontier("subbimodule lattice", seen.len())?;
                queue.push(t);
            }
        }
        out.push(s);
    }
    out.sort();
    Ok(out)
}

/// `⟨g_1, g_2, ...⟩` over a greedy generating set in element order.
pub(crate) fn generator_label(qb: &FinBimodule, set: &ElemSet, prefer: usize) -> String {
    // a single generator when there is one, 1 first
    let singles = std::iter::once(prefer).chain(set.iter());
    for x in singles {
        if set.contains(x) && &qb.span([x], Linearity::Bi) == set {
            return format!("<{}>", qb.label(x));
        }
    }
    let mut gens = Vec::new();
    let mut span = qb.span([qb.zero()], Linearity::Bi);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = qb.span(gens.iter().copied(), Linearity::Bi);
        }
    }
    let names: Vec<&str> = gens.iter().map(|&g| qb.label(g)).collect();
    format!("<{}>", names.join(", "))
}

pub fn inverse_in_q(q: &QuotientRing, set: &ElemSet) -> ElemSet {
    let r = embedded_ring(q);
    let qr = &q.ring;
    ElemSet::from_iter(
        qr.order(),
        (0..qr.order()).filter(|&n| set.iter().all(|m| r.contains(qr.mul(n, m)) && r.contains(qr.mul(m, n)))),
    )
}

fn embedded_ring(q: &QuotientRing) -> ElemSet {
    ElemSet::from_iter(q.order(), q.embed.table.iter().copied())
}

pub fn pic_relative(t: &FilterTriple, q: &QuotientRing) -> Result<RelativePicard> {
    if &q.triple != t {
        return Err(Error::mismatch("quotient ring was built from another triple"));
    }
    let qb = q_as_bimodule(q)?;
    let r = embedded_ring(q);
    let mut members = Vec::new();
    for set in subbimodules(q)? {
        let inv = inverse_in_q(q, &set);
        if q.ring.product_span(&set, &inv) != r || q.ring.product_span(&inv, &set) != r {
            continue;
        }
        let (sub, _) = qb.restrict(&set, Linearity::Bi)?;
        let module: Bimodule = Arc::new(sub);
        if t_sharp(&module, &t.right)? != t.right || u_sharp(&module, &t.left)? != t.left {
            continue;
        }
        members.push(SubbimoduleOfQ {
            label: generator_label(&qb, &set, q.ring.one()),
            elements: set,
            inverse: inv,
            module,
        });
    }
    let k = members.len();
    let identity = members
        .iter()
        .position(|m| m.elements == r)
        .ok_or_else(|| Error::failure("R belongs to Pic(R|Q)", "R is missing"))?;
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            let prod = q.ring.product_span(&members[a].elements, &members[b].elements);
            let c = members.iter().position(|m| m.elements == prod).ok_or_else(|| {
                Error::failure(
                    "Pic(R|Q) is closed under products",
                    format!("{} · {}", members[a].label, members[b].label),
                )
            })?;
            let tp = tensor(&members[a].module, &members[b].module, Over::Ring)?;
            if !is_isomorphic(&Arc::new(tp.module), &members[c].module)? {
                return Err(Error::failure(
                    "M ⊗ N ≅ MN",
                    format!("{} ⊗ {}", members[a].label, members[b].label),
                ));
            }
            mul[a * k + b] = c;
        }
    }
    let group = FiniteGroup::new(k, mul, identity)?;
    let elements = members
        .iter()
        .map(|m| PicardElement {
            label: m.label.clone(),
            provenance: Provenance::Subbimodule,
            module: m.module.clone(),
        })
        .collect();
    Ok(RelativePicard {
        group: PicardGroup { elements, group },
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::q_ring;
    use crate::ring::{make_ring, RingSpec};

    #[test]
    fn trivial_filters_give_the_trivial_group() {
        let r = make_ring(&RingSpec::Zmod { n: 6 }).unwrap();
        let t = FilterTriple::trivial(&r);
        let q = q_ring(&t).unwrap();
        let p = pic_relative(&t, &q).unwrap();
        assert_eq!(p.group.order(), 1);
        assert_eq!(p.group.identity_label(), "<1>");
        // ideals of Z/6 are the four subgroups
        assert_eq!(subbimodules(&q).unwrap().len(), 4);
    }
}
