//! One-sided and two-sided ideals of a finite ring.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;
use crate::ring::{FiniteRing, Ring};
use crate::subset::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

impl Side {
    pub fn mirror(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::TwoSided => Side::TwoSided,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    side: Side,
    elements: ElemSet,
    generators: Option<Vec<usize>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ideal {:?}", self.side, self.elements)
    }
}

impl Ideal {
    /// Validates that `elements` is an ideal on the given side.
    pub fn new(ring: &Ring, side: Side, elements: ElemSet) -> Result<Self> {
        if elements.universe() != ring.order() {
            return Err(Error::mismatch("ideal carrier differs from ring order"));
        }
        if !is_ideal(ring, side, &elements) {
            return Err(Error::InvalidSpec(format!("{elements:?} is not a {side} ideal")));
        }
        Ok(Ideal {
            ring: ring.clone(),
            side,
            elements,
            generators: None,
        })
    }

    /// The smallest ideal on `side` containing `gens`.
    pub fn generated(ring: &Ring, side: Side, gens: &[usize]) -> Self {
        Ideal {
            ring: ring.clone(),
            side,
            elements: generate(ring, side, gens.iter().copied()),
            generators: Some(gens.to_vec()),
        }
    }

    pub fn zero(ring: &Ring, side: Side) -> Self {
        Self::generated(ring, side, &[])
    }

    pub fn whole(ring: &Ring, side: Side) -> Self {
        Ideal {
            ring: ring.clone(),
            side,
            elements: ElemSet::full(ring.order()),
            generators: Some(vec![ring.one()]),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elements.count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_whole(&self) -> bool {
        self.elements.count() == self.ring.order()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.count() == 1
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements.to_vec()
    }
}

/// True if `set` is an additive subgroup closed under multiplication by the
/// ring on the given side(s).
pub fn is_ideal(ring: &FiniteRing, side: Side, set: &ElemSet) -> bool {
    if !ring.additive().is_subgroup(set) {
        return false;
    }
    let n = ring.order();
    set.iter().all(|x| {
        (0..n).all(|r| {
            let right = set.contains(ring.mul(x, r));
            let left = set.contains(ring.mul(r, x));
            match side {
                Side::Right => right,
                Side::Left => left,
                Side::TwoSided => left && right,
            }
        })
    })
}

/// Ideal generated on `side` by `gens`.
pub fn generate(ring: &FiniteRing, side: Side, gens: impl IntoIterator<Item = usize>) -> ElemSet {
    let n = ring.order();
    let mut products = Vec::new();
    for g in gens {
        match side {
            Side::Right => products.extend((0..n).map(|r| ring.mul(g, r))),
            Side::Left => products.extend((0..n).map(|r| ring.mul(r, g))),
            Side::TwoSided => {
                for r in 0..n {
                    let rg = ring.mul(r, g);
                    products.extend((0..n).map(|s| ring.mul(rg, s)));
                }
            }
        }
    }
    ring.additive().span(products)
}

/// `a + b` for additive subgroups.
pub fn sum(ring: &FiniteRing, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(ring.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(ring.add(x, y));
        }
    }
    out
}

/// `{r | y r in set}`.
pub fn right_translate(ring: &FiniteRing, y: usize, set: &ElemSet) -> ElemSet {
    ElemSet::from_iter(
        ring.order(),
        (0..ring.order()).filter(|&r| set.contains(ring.mul(y, r))),
    )
}

/// `{r | r x in set}`.
pub fn left_translate(ring: &FiniteRing, set: &ElemSet, x: usize) -> ElemSet {
    ElemSet::from_iter(
        ring.order(),
        (0..ring.order()).filter(|&r| set.contains(ring.mul(r, x))),
    )
}

/// Translate appropriate to a one-sided filter: `y⁻¹I` on the right,
/// `(I : y)` on the left.
pub fn translate(ring: &FiniteRing, side: Side, set: &ElemSet, y: usize) -> ElemSet {
    match side {
        Side::Left => left_translate(ring, set, y),
        _ => right_translate(ring, y, set),
    }
}

/// Every ideal on `side`, as sums of principal ideals, in canonical order.
pub fn enumerate_ideal_sets(ring: &FiniteRing, side: Side) -> Result<Vec<ElemSet>> {
    let n = ring.order();
    let mut principal: Vec<ElemSet> = (0..n).map(|x| generate(ring, side, [x])).collect();
    principal.sort();
    principal.dedup();
    let zero = ElemSet::from_iter(n, [ring.zero()]);
    let mut found: BTreeSet<ElemSet> = BTreeSet::new();
    found.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(ideal) = queue.pop() {
        for p in &principal {
            if p.is_subset(&ideal) {
                continue;
            }
            let s = sum(ring, &ideal, p);
            if found.insert(s.clone()) {
                limits::check_frontier("ideal lattice", found.len())?;
                queue.push(s);
            }
        }
    }
    Ok(found.into_iter().collect())
}

pub fn enumerate_ideals(ring: &Ring, side: Side) -> Result<Vec<Ideal>> {
    Ok(enumerate_ideal_sets(ring, side)?
        .into_iter()
        .map(|elements| Ideal {
            ring: ring.clone(),
            side,
            elements,
            generators: None,
        })
        .collect())
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

    /// Every subset that passes the ideal test.
    fn brute_force_ideals(ring: &FiniteRing, side: Side) -> Vec<ElemSet> {
        let n = ring.order();
        let mut out: Vec<ElemSet> = (0u64..1 << n)
            .map(|mask| ElemSet::from_iter(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .filter(|s| is_ideal(ring, side, s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn divisor_lattice_of_z4() {
        let ideals = enumerate_ideal_sets(&zmod(4), Side::Right).unwrap();
        let sets: Vec<Vec<usize>> = ideals.iter().map(|s| s.to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn field_has_two_ideals() {
        assert_eq!(enumerate_ideal_sets(&zmod(5), Side::Right).unwrap().len(), 2);
    }

    #[test]
    fn upper_triangular_lattices_match_subset_oracle() {
        let r = t2f2();
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            assert_eq!(
                enumerate_ideal_sets(&r, side).unwrap(),
                brute_force_ideals(&r, side),
                "{side}"
            );
        }
        // frozen from the subset oracle
        assert_eq!(enumerate_ideal_sets(&r, Side::Right).unwrap().len(), 7);
        assert_eq!(enumerate_ideal_sets(&r, Side::Left).unwrap().len(), 7);
        assert_eq!(enumerate_ideal_sets(&r, Side::TwoSided).unwrap().len(), 5);
    }

    #[test]
    fn translates_are_ideals() {
        let r = t2f2();
        for i in enumerate_ideal_sets(&r, Side::Right).unwrap() {
            for y in 0..r.order() {
                assert!(is_ideal(&r, Side::Right, &right_translate(&r, y, &i)));
            }
        }
        for i in enumerate_ideal_sets(&r, Side::Left).unwrap() {
            for y in 0..r.order() {
                assert!(is_ideal(&r, Side::Left, &left_translate(&r, &i, y)));
            }
        }
    }

    #[test]
    fn generated_ideal_records_generators() {
        let r = zmod(6);
        let i = Ideal::generated(&r, Side::Right, &[2]);
        assert_eq!(i.to_vec(), vec![0, 2, 4]);
        assert_eq!(i.generators(), Some(&[2][..]));
        assert!(Ideal::new(&r, Side::Right, ElemSet::from_iter(6, [0, 2])).is_err());
    }
}
