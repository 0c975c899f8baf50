//! Filter transport along an invertible bimodule. For `M` an invertible
//! R-S-bimodule with dual `N = M*`, `T♯_M` sends a right filter `D` on `R` to
//! `{J | (S/J) ⊗_S N is D-torsion}` and `U♯_M` sends a left filter `H` on `S`
//! to `{I | N ⊗_R (R/I) is H-torsion}`. We use `(S/J) ⊗_S N ≅ N/JN` and
//! `N ⊗_R (R/I) ≅ N/NI`.

use super::morita::morita_context;
use crate::error::{Error, Result};
use crate::filter::GabrielFilter;
use crate::ideal::{enumerate_ideal_sets, Side};
use crate::module::{Bimodule, FinBimodule};
use crate::ring::{same_ring, Ring};
use crate::subset::ElemSet;

fn dual_of(m: &Bimodule) -> Result<Bimodule> {
    match morita_context(m)? {
        Some(ctx) => Ok(ctx.dual.module),
        None => Err(Error::mismatch("filter transport needs an invertible bimodule")),
    }
}

/// Gabriel filter whose members are exactly `members`, or a failure.
fn as_filter(ring: &Ring, side: Side, members: Vec<ElemSet>, what: &str) -> Result<GabrielFilter> {
    let Some(first) = members.first() else {
        return Err(Error::failure(what, "no member"));
    };
    let min = members.iter().skip(1).fold(first.clone(), |acc, x| acc.intersection(x));
    let filter = GabrielFilter::from_min(ring, side, min).map_err(|e| Error::failure(what, e.to_string()))?;
    let mut expected = filter.members()?;
    let mut got = members;
    expected.sort();
    got.sort();
    if expected != got {
        return Err(Error::failure(
            what,
            "transported family is not upward closed from its intersection",
        ));
    }
    Ok(filter)
}

/// `N/XN` (side `Left`) or `N/NX` (side `Right`) is killed by `kill` acting on
/// the other side.
fn quotient_killed(n: &FinBimodule, side: Side, x: &ElemSet, kill: &ElemSet) -> bool {
    let all = ElemSet::full(n.order());
    let sub = n.ideal_times(side, x, &all);
    (0..n.order()).all(|e| {
        kill.iter().all(|k| {
            let p = if side == Side::Left { n.ract(e, k) } else { n.lact(k, e) };
            sub.contains(p)
        })
    })
}

pub fn t_sharp(m: &Bimodule, dr: &GabrielFilter) -> Result<GabrielFilter> {
    let (Some(r), Some(s)) = (m.left_ring(), m.right_ring()) else {
        return Err(Error::mismatch("filter transport needs a bimodule"));
    };
    if dr.side() != Side::Right || !same_ring(dr.ring(), r) {
        return Err(Error::mismatch("T♯ takes a right filter on the left ring"));
    }
    let n = dual_of(m)?;
    let members: Vec<ElemSet> = enumerate_ideal_sets(s, Side::Right)?
        .into_iter()
        .filter(|j| quotient_killed(&n, Side::Left, j, dr.min()))
        .collect();
    let h = as_filter(s, Side::Right, members, "T♯ yields a Gabriel filter")?;
    // forward criterion: M/IM is H-torsion for I = D_min, hence for all I in D
    if !quotient_killed(m, Side::Left, dr.min(), h.min()) {
        return Err(Error::failure("(R/I) ⊗ M is torsion for I in D", "minimal member"));
    }
    Ok(h)
}

pub fn u_sharp(m: &Bimodule, hl: &GabrielFilter) -> Result<GabrielFilter> {
    let (Some(r), Some(s)) = (m.left_ring(), m.right_ring()) else {
        return Err(Error::mismatch("filter transport needs a bimodule"));
    };
    if hl.side() != Side::Left || !same_ring(hl.ring(), s) {
        return Err(Error::mismatch("U♯ takes a left filter on the right ring"));
    }
    let n = dual_of(m)?;
    let members: Vec<ElemSet> = enumerate_ideal_sets(r, Side::Left)?
        .into_iter()
        .filter(|i| quotient_killed(&n, Side::Right, i, hl.min()))
        .collect();
    let d = as_filter(r, Side::Left, members, "U♯ yields a Gabriel filter")?;
    // forward criterion: M/MH is D-torsion for H = H_min
    if !quotient_killed(m, Side::Right, hl.min(), d.min()) {
        return Err(Error::failure(
            "M ⊗ (S/H) is torsion for H in the filter",
            "minimal member",
        ));
    }
    Ok(d)
}

/// Condition (Q) between the triples `(R, Dl, Dr)` and `(S, Hl, Hr)`:
/// `T♯(Dr) = Hr` and `U♯(Hl) = Dl`.
pub fn satisfies_q(
    m: &Bimodule,
    dl: &GabrielFilter,
    dr: &GabrielFilter,
    hl: &GabrielFilter,
    hr: &GabrielFilter,
) -> Result<bool> {
    Ok(&t_sharp(m, dr)? == hr && &u_sharp(m, hl)? == dl)
}
