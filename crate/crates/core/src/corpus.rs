//! The named rings and instances used by the regression suite.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filter::{dense_filter, filter_closure, GabrielFilter};
use crate::ideal::Side;
use crate::localization::FilterTriple;
use crate::module::{Bimodule, FinBimodule};
use crate::ring::{automorphism_group, make_ring, MatrixShape, Ring, RingMap, RingSpec};
use crate::subset::ElemSet;

pub const RING_NAMES: &[&str] = &[
    "zmod4", "zmod6", "zmod8", "f4", "f2-dual", "f2xf2", "f2-cubed", "f2x3", "t2f2", "t2f3", "m2f2",
];

pub fn ring_spec(name: &str) -> Result<RingSpec> {
    let f2 = || RingSpec::Zmod { n: 2 };
    Ok(match name {
        "zmod4" => RingSpec::Zmod { n: 4 },
        "zmod6" => RingSpec::Zmod { n: 6 },
        "zmod8" => RingSpec::Zmod { n: 8 },
        "f4" => RingSpec::PolyQuotient { p: 2, tail: vec![1, 1] },
        "f2-dual" => RingSpec::PolyQuotient { p: 2, tail: vec![0, 0] },
        "f2xf2" => RingSpec::Product {
            factors: vec![f2(), f2()],
        },
        "f2-cubed" => RingSpec::PolyQuotient {
            p: 2,
            tail: vec![0, 0, 0],
        },
        "f2x3" => RingSpec::Product {
            factors: vec![f2(), f2(), f2()],
        },
        "t2f3" => RingSpec::Matrix {
            base: Box::new(RingSpec::Zmod { n: 3 }),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        },
        "t2f2" => RingSpec::Matrix {
            base: Box::new(f2()),
            size: 2,
            shape: MatrixShape::UpperTriangular,
        },
        "m2f2" => RingSpec::Matrix {
            base: Box::new(f2()),
            size: 2,
            shape: MatrixShape::Full,
        },
        _ => return Err(Error::InvalidSpec(format!("unknown corpus ring {name}"))),
    })
}

pub fn ring(name: &str) -> Result<Ring> {
    make_ring(&ring_spec(name)?)
}

pub fn rings() -> Result<Vec<(&'static str, Ring)>> {
    RING_NAMES.iter().map(|&n| Ok((n, ring(n)?))).collect()
}

/// Left and right closures of the ideal generated by `gens`.
pub fn generated_triple(r: &Ring, gens: &[usize]) -> Result<FilterTriple> {
    let side_filter = |side| -> Result<GabrielFilter> {
        let seed = crate::ideal::generate(r, side, gens.iter().copied());
        filter_closure(r, side, &[seed])
    };
    FilterTriple::new(r, side_filter(Side::Left)?, side_filter(Side::Right)?)
}

pub fn dense_triple(r: &Ring) -> Result<FilterTriple> {
    FilterTriple::new(r, dense_filter(r, Side::Left)?, dense_filter(r, Side::Right)?)
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub triple: FilterTriple,
}

/// Trivial and dense filters on every corpus ring, skipping repeats.
pub fn zero_cells() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, r) in rings()? {
        let trivial = FilterTriple::trivial(&r);
        let dense = dense_triple(&r)?;
        let distinct = dense != trivial;
        out.push(Instance {
            name: format!("{name}/trivial"),
            triple: trivial,
        });
        if distinct {
            out.push(Instance {
                name: format!("{name}/dense"),
                triple: dense,
            });
        }
    }
    Ok(out)
}

/// The automorphism of `F2×F2` exchanging the factors.
pub fn swap(r: &Ring) -> Result<RingMap> {
    automorphism_group(r)?
        .into_iter()
        .find(|p| p.table.iter().enumerate().any(|(a, &b)| a != b))
        .ok_or_else(|| Error::InvalidSpec("ring has no nontrivial automorphism".into()))
}

/// The ideal `F2×0` of `F2×F2`.
pub fn first_factor(r: &Ring) -> Result<ElemSet> {
    let e = r
        .element("(1,0)")
        .ok_or_else(|| Error::InvalidSpec("no element (1,0)".into()))?;
    Ok(ElemSet::from_iter(r.order(), [r.zero(), e]))
}

#[derive(Debug, Clone)]
pub struct LocalizationCase {
    pub name: String,
    pub module: Bimodule,
    pub left: GabrielFilter,
    pub right: GabrielFilter,
}

/// Bimodules with a left filter on the left ring and a right filter on the right ring.
pub fn localization_cases() -> Result<Vec<LocalizationCase>> {
    let regular = |r: &Ring| -> Bimodule { Arc::new(FinBimodule::regular(r)) };
    let case = |name: &str, module: Bimodule, t: &FilterTriple| LocalizationCase {
        name: name.to_string(),
        module,
        left: t.left.clone(),
        right: t.right.clone(),
    };
    let z6 = ring("zmod6")?;
    let z6_even = generated_triple(&z6, &[2])?;
    let f2xf2 = ring("f2xf2")?;
    let factor = first_factor(&f2xf2)?;
    let factor_triple = FilterTriple::new(
        &f2xf2,
        filter_closure(&f2xf2, Side::Left, std::slice::from_ref(&factor))?,
        filter_closure(&f2xf2, Side::Right, &[factor])?,
    )?;
    let t2 = ring("t2f2")?;
    let z8 = ring("zmod8")?;
    let dual = ring("f2-dual")?;
    let twisted: Bimodule = Arc::new(FinBimodule::twisted(
        &f2xf2,
        &swap(&f2xf2)?,
        &RingMap::identity(&f2xf2),
    )?);
    Ok(vec![
        case("zmod6 at (2)", regular(&z6), &z6_even),
        case("f2xf2 at F2x0", regular(&f2xf2), &factor_triple),
        case("t2f2 dense", regular(&t2), &dense_triple(&t2)?),
        case("zmod8 at (2)", regular(&z8), &generated_triple(&z8, &[2])?),
        case(
            "f2-dual at (x)",
            regular(&dual),
            &generated_triple(&dual, &[dual.element("x").unwrap_or(2)])?,
        ),
        case("f2xf2 swap twist trivial", twisted, &FilterTriple::trivial(&f2xf2)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for (name, r) in rings().unwrap() {
            r.check_axioms().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(ring("nope").is_err());
    }

    #[test]
    fn zero_cells_are_torsion_free() {
        for inst in zero_cells().unwrap() {
            assert!(inst.triple.is_zero_cell(), "{}", inst.name);
        }
    }

    #[test]
    fn factor_ideal_found() {
        let r = ring("f2xf2").unwrap();
        assert_eq!(first_factor(&r).unwrap().count(), 2);
    }
}
