//! Gabriel filters of one-sided ideals.
//!
//! Over a finite ring a Gabriel filter is closed under finite intersections,
//! so it is the upward closure of a single minimal member. Filters are stored
//! by that member; the axioms are checked on the materialized family.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideal_sets, generate, is_ideal, translate, Ideal, Side};
use crate::ring::{FiniteRing, Ring};
use crate::subset::ElemSet;

/// Why a family of ideals is not a Gabriel filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterViolation {
    MissingWholeRing,
    NotAnIdeal(ElemSet),
    NotUpwardClosed {
        member: ElemSet,
        superset: ElemSet,
    },
    Translate {
        member: ElemSet,
        element: usize,
        translate: ElemSet,
    },
    Intersection {
        a: ElemSet,
        b: ElemSet,
    },
    GabrielAxiom {
        i: ElemSet,
        j: ElemSet,
    },
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterViolation::MissingWholeRing => write!(f, "the ring itself is not a member"),
            FilterViolation::NotAnIdeal(s) => write!(f, "{s:?} is not an ideal"),
            FilterViolation::NotUpwardClosed { member, superset } => {
                write!(f, "{member:?} is a member but {superset:?} is not")
            }
            FilterViolation::Translate {
                member,
                element,
                translate,
            } => write!(f, "translate of {member:?} by {element} is {translate:?}, not a member"),
            FilterViolation::Intersection { a, b } => {
                write!(f, "{a:?} and {b:?} are members, their intersection is not")
            }
            FilterViolation::GabrielAxiom { i, j } => {
                write!(
                    f,
                    "every translate of {j:?} by elements of {i:?} is a member, but {j:?} is not"
                )
            }
        }
    }
}

/// A Gabriel filter of left or right ideals, given by its minimal member.
#[derive(Clone, PartialEq, Eq)]
pub struct GabrielFilter {
    ring: Ring,
    side: Side,
    min: ElemSet,
}

impl fmt::Debug for GabrielFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} filter above {:?}", self.side, self.min)
    }
}

fn check_side(side: Side) -> Result<()> {
    if side == Side::TwoSided {
        return Err(Error::mismatch("Gabriel filters are one-sided"));
    }
    Ok(())
}

impl GabrielFilter {
    /// The filter of all ideals containing `min`, after checking the axioms.
    pub fn from_min(ring: &Ring, side: Side, min: ElemSet) -> Result<Self> {
        check_side(side)?;
        let ideals = enumerate_ideal_sets(ring, side)?;
        let family: Vec<ElemSet> = ideals.iter().filter(|i| min.is_subset(i)).cloned().collect();
        if !is_ideal(ring, side, &min) {
            return Err(Error::NotGabriel(FilterViolation::NotAnIdeal(min)));
        }
        check_family(ring, side, &ideals, &family).map_err(Error::NotGabriel)?;
        Ok(GabrielFilter {
            ring: ring.clone(),
            side,
            min,
        })
    }

    pub(crate) fn from_min_unchecked(ring: &Ring, side: Side, min: ElemSet) -> Self {
        GabrielFilter {
            ring: ring.clone(),
            side,
            min,
        }
    }

    /// `{R}`.
    pub fn trivial(ring: &Ring, side: Side) -> Self {
        Self::from_min_unchecked(ring, side, ElemSet::full(ring.order()))
    }

    /// Every ideal of the side.
    pub fn all(ring: &Ring, side: Side) -> Self {
        Self::from_min_unchecked(ring, side, ElemSet::from_iter(ring.order(), [ring.zero()]))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn min(&self) -> &ElemSet {
        &self.min
    }

    pub fn min_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.side, self.min.clone()).expect("minimal member is an ideal")
    }

    pub fn contains(&self, ideal: &ElemSet) -> bool {
        self.min.is_subset(ideal)
    }

    pub fn is_trivial(&self) -> bool {
        self.min.count() == self.ring.order()
    }

    pub fn is_all(&self) -> bool {
        self.min.count() == 1
    }

    /// Every member, in canonical order.
    pub fn members(&self) -> Result<Vec<ElemSet>> {
        Ok(enumerate_ideal_sets(&self.ring, self.side)?
            .into_iter()
            .filter(|i| self.contains(i))
            .collect())
    }

    /// Re-run the axiom check on the materialized family.
    pub fn validate(&self) -> std::result::Result<(), FilterViolation> {
        let ideals = enumerate_ideal_sets(&self.ring, self.side).map_err(|_| FilterViolation::MissingWholeRing)?;
        let family: Vec<ElemSet> = ideals.iter().filter(|i| self.contains(i)).cloned().collect();
        check_family(&self.ring, self.side, &ideals, &family)
    }

    /// Filter-wise comparison: `self ⊆ other` as families.
    pub fn is_subfilter_of(&self, other: &GabrielFilter) -> bool {
        other.min.is_subset(&self.min)
    }
}

/// The two filters defining a two-sided localization: left ideals of the
/// left ring and right ideals of the right ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaFilter {
    pub left: GabrielFilter,
    pub right: GabrielFilter,
}

impl OmegaFilter {
    pub fn new(left: GabrielFilter, right: GabrielFilter) -> Result<Self> {
        if left.side() != Side::Left || right.side() != Side::Right {
            return Err(Error::mismatch("omega filter needs a left and a right filter"));
        }
        Ok(OmegaFilter { left, right })
    }
}

fn check_family(
    ring: &FiniteRing,
    side: Side,
    ideals: &[ElemSet],
    family: &[ElemSet],
) -> std::result::Result<(), FilterViolation> {
    let n = ring.order();
    let whole = ElemSet::full(n);
    let member: BTreeMap<&ElemSet, bool> = ideals.iter().map(|i| (i, family.contains(i))).collect();
    let is_member = |s: &ElemSet| member.get(s).copied().unwrap_or(false);
    if let Some(bad) = family.iter().find(|s| !member.contains_key(s)) {
        return Err(FilterViolation::NotAnIdeal(bad.clone()));
    }
    if !is_member(&whole) {
        return Err(FilterViolation::MissingWholeRing);
    }
    for i in family {
        for j in ideals {
            if i.is_subset(j) && !is_member(j) {
                return Err(FilterViolation::NotUpwardClosed {
                    member: i.clone(),
                    superset: j.clone(),
                });
            }
        }
    }
    for i in family {
        for y in 0..n {
            let t = translate(ring, side, i, y);
            if !is_member(&t) {
                return Err(FilterViolation::Translate {
                    member: i.clone(),
                    element: y,
                    translate: t,
                });
            }
        }
    }
    for a in family {
        for b in family {
            if !is_member(&a.intersection(b)) {
                return Err(FilterViolation::Intersection {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
    }
    for i in family {
        for j in ideals.iter().filter(|j| !is_member(j)) {
            if i.iter().all(|x| is_member(&translate(ring, side, j, x))) {
                return Err(FilterViolation::GabrielAxiom {
                    i: i.clone(),
                    j: j.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Check the filter axioms on an explicit family of ideals.
pub fn is_gabriel_filter(
    ring: &Ring,
    side: Side,
    family: &[ElemSet],
) -> Result<std::result::Result<(), FilterViolation>> {
    check_side(side)?;
    let ideals = enumerate_ideal_sets(ring, side)?;
    Ok(check_family(ring, side, &ideals, family))
}

/// Smallest Gabriel filter containing the ideals generated by `seeds`.
pub fn filter_closure(ring: &Ring, side: Side, seeds: &[ElemSet]) -> Result<GabrielFilter> {
    check_side(side)?;
    let n = ring.order();
    let ideals = enumerate_ideal_sets(ring, side)?;
    let index: BTreeMap<&ElemSet, usize> = ideals.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let mut inf = vec![false; ideals.len()];
    inf[index[&ElemSet::full(n)]] = true;
    for s in seeds {
        let closed = generate(ring, side, s.iter());
        inf[index[&closed]] = true;
    }
    let translates: Vec<Vec<usize>> = ideals
        .iter()
        .map(|i| (0..n).map(|y| index[&translate(ring, side, i, y)]).collect())
        .collect();
    loop {
        let before = inf.clone();
        for a in 0..ideals.len() {
            if !inf[a] {
                continue;
            }
            for b in 0..ideals.len() {
                if ideals[a].is_subset(&ideals[b]) {
                    inf[b] = true;
                }
            }
            for &t in &translates[a] {
                inf[t] = true;
            }
        }
        for a in 0..ideals.len() {
            for b in 0..ideals.len() {
                if inf[a] && inf[b] {
                    inf[index[&ideals[a].intersection(&ideals[b])]] = true;
                }
            }
        }
        for j in 0..ideals.len() {
            if inf[j] {
                continue;
            }
            let forced = (0..ideals.len()).any(|i| inf[i] && ideals[i].iter().all(|x| inf[translates[j][x]]));
            if forced {
                inf[j] = true;
            }
        }
        if inf == before {
            break;
        }
    }
    let members: Vec<ElemSet> = (0..ideals.len())
        .filter(|&k| inf[k])
        .map(|k| ideals[k].clone())
        .collect();
    let min = members.iter().fold(ElemSet::full(n), |acc, m| acc.intersection(m));
    check_family(ring, side, &ideals, &members).map_err(|v| Error::failure("filter closure", v.to_string()))?;
    Ok(GabrielFilter::from_min_unchecked(ring, side, min))
}

/// `x · (y⁻¹I) ≠ 0` for every `y` and every nonzero `x` (mirrored on the left).
pub fn is_dense(ring: &FiniteRing, side: Side, ideal: &ElemSet) -> bool {
    let n = ring.order();
    (0..n).all(|y| {
        let t = translate(ring, side, ideal, y);
        (0..n).filter(|&x| x != ring.zero()).all(|x| {
            t.iter().any(|r| {
                let p = match side {
                    Side::Left => ring.mul(r, x),
                    _ => ring.mul(x, r),
                };
                p != ring.zero()
            })
        })
    })
}

/// The filter of dense ideals.
pub fn dense_filter(ring: &Ring, side: Side) -> Result<GabrielFilter> {
    check_side(side)?;
    let ideals = enumerate_ideal_sets(ring, side)?;
    let family: Vec<ElemSet> = ideals.iter().filter(|i| is_dense(ring, side, i)).cloned().collect();
    check_family(ring, side, &ideals, &family).map_err(|v| Error::failure("dense filter", v.to_string()))?;
    let min = family
        .iter()
        .fold(ElemSet::full(ring.order()), |acc, m| acc.intersection(m));
    Ok(GabrielFilter::from_min_unchecked(ring, side, min))
}

/// `{I | sR ⊆ I for some s in S}` for a multiplicative set of regular elements.
pub fn ore_filter(ring: &Ring, set: &[usize], side: Side) -> Result<GabrielFilter> {
    check_side(side)?;
    let n = ring.order();
    for &s in set {
        if s >= n {
            return Err(Error::InvalidSpec(format!("element {s} outside the ring")));
        }
        if let Some(w) =
            (0..n).find(|&w| w != ring.zero() && (ring.mul(s, w) == ring.zero() || ring.mul(w, s) == ring.zero()))
        {
            return Err(Error::NotRegular { element: s, witness: w });
        }
    }
    if !set.contains(&ring.one()) {
        return Err(Error::InvalidSpec("Ore set must contain 1".into()));
    }
    for &s in set {
        for &t in set {
            if !set.contains(&ring.mul(s, t)) {
                return Err(Error::NotMultiplicative(s, t));
            }
        }
    }
    let seeds: Vec<ElemSet> = set.iter().map(|&s| generate(ring, side, [s])).collect();
    filter_closure(ring, side, &seeds)
}

/// Every Gabriel filter on the given side, ordered by minimal member.
pub fn all_gabriel_filters(ring: &Ring, side: Side) -> Result<Vec<GabrielFilter>> {
    check_side(side)?;
    let ideals = enumerate_ideal_sets(ring, side)?;
    let mut out = Vec::new();
    for min in &ideals {
        let family: Vec<ElemSet> = ideals.iter().filter(|i| min.is_subset(i)).cloned().collect();
        if check_family(ring, side, &ideals, &family).is_ok() {
            out.push(GabrielFilter::from_min_unchecked(ring, side, min.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, MatrixShape, RingSpec};

    fn zmod(n: usize) -> Ring {
        make_ring(&RingSpec::Zmod { n }).unwrap()
    }

    fn t2f2() -> Ring {
        make_ring(&RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 2 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        })
        .unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> ElemSet {
        ElemSet::from_iter(n, xs.iter().copied())
    }

    #[test]
    fn trivial_and_total_families_are_filters() {
        for r in [zmod(4), zmod(6), t2f2()] {
            for side in [Side::Left, Side::Right] {
                let n = r.order();
                assert_eq!(is_gabriel_filter(&r, side, &[ElemSet::full(n)]).unwrap(), Ok(()));
                let all = enumerate_ideal_sets(&r, side).unwrap();
                assert_eq!(is_gabriel_filter(&r, side, &all).unwrap(), Ok(()));
            }
        }
    }

    #[test]
    fn z4_half_ideal_violates_gluing_axiom() {
        let r = zmod(4);
        let family = [set(4, &[0, 2]), ElemSet::full(4)];
        let v = is_gabriel_filter(&r, Side::Right, &family).unwrap().unwrap_err();
        assert_eq!(
            v,
            FilterViolation::GabrielAxiom {
                i: set(4, &[0, 2]),
                j: set(4, &[0])
            }
        );
    }

    #[test]
    fn closure_of_z4_half_ideal_is_everything() {
        let f = filter_closure(&zmod(4), Side::Right, &[set(4, &[0, 2])]).unwrap();
        assert!(f.is_all());
    }

    #[test]
    fn closure_in_z6() {
        let r = zmod(6);
        let f = filter_closure(&r, Side::Right, &[set(6, &[0, 2, 4])]).unwrap();
        // {0,2,4} is idempotent (2·2 = 4 generates it), so nothing more is forced
        assert_eq!(f.min().to_vec(), vec![0, 2, 4]);
        assert_eq!(f.validate(), Ok(()));
        assert_eq!(f.members().unwrap().len(), 2);
    }

    #[test]
    fn closure_of_whole_ring_is_trivial() {
        let f = filter_closure(&t2f2(), Side::Right, &[ElemSet::full(8)]).unwrap();
        assert!(f.is_trivial());
    }

    #[test]
    fn idempotent_ideal_of_f2xf2() {
        let r = make_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap();
        // (1,0) has index 2
        let e = set(4, &[0, 2]);
        let f = filter_closure(&r, Side::Right, std::slice::from_ref(&e)).unwrap();
        assert_eq!(f.min(), &e);
        assert_eq!(f.members().unwrap(), vec![e.clone(), ElemSet::full(4)]);
        assert_eq!(
            is_gabriel_filter(&r, Side::Right, &[e, ElemSet::full(4)]).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn dense_filters() {
        assert!(dense_filter(&zmod(5), Side::Right).unwrap().is_trivial());
        assert!(dense_filter(&zmod(4), Side::Right).unwrap().is_trivial());
        let r = t2f2();
        let right = dense_filter(&r, Side::Right).unwrap();
        assert!(!right.is_trivial());
        assert_eq!(right.validate(), Ok(()));
        let left = dense_filter(&r, Side::Left).unwrap();
        assert!(!left.is_trivial());
    }

    #[test]
    fn ore_filters_degenerate() {
        let r = zmod(4);
        assert!(ore_filter(&r, &[1], Side::Right).unwrap().is_trivial());
        assert!(ore_filter(&r, &[1, 3], Side::Right).unwrap().is_trivial());
        assert!(matches!(
            ore_filter(&r, &[1, 2], Side::Right),
            Err(Error::NotRegular { element: 2, .. })
        ));
    }

    #[test]
    fn filters_of_z4() {
        let all = all_gabriel_filters(&zmod(4), Side::Right).unwrap();
        // {R} and all ideals; the middle candidate fails the gluing axiom
        assert_eq!(all.len(), 2);
    }
}
