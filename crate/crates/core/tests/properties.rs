use std::sync::Arc;

use proptest::prelude::*;

use twoloc_core::corpus;
use twoloc_core::filter::{filter_closure, GabrielFilter};
use twoloc_core::ideal::{generate, Side};
use twoloc_core::iso::is_isomorphic;
use twoloc_core::localization::{
    check_q1_q4, induced_triple, oracle_omega_localization, q_actions, q_ring, two_sided_localization, FilterTriple,
};
use twoloc_core::module::{torsion_submodule, Bimodule, FinBimodule};
use twoloc_core::picard::{morita_context, t_sharp, verify_exact_sequence};
use twoloc_core::ring::{automorphism_group, make_ring, ring_isomorphism, MatrixShape, Ring, RingMap, RingSpec};
use twoloc_core::tensor::{tensor, Over};
use twoloc_core::ElemSet;

const SMALL: &[&str] = &[
    "zmod4", "zmod6", "zmod8", "f4", "f2-dual", "f2xf2", "f2-cubed", "f2x3", "t2f2",
];
const TWISTABLE: &[&str] = &["f4", "f2xf2", "f2x3", "t2f2"];

fn small_spec() -> impl Strategy<Value = RingSpec> {
    let zmod = (2usize..=12).prop_map(|n| RingSpec::Zmod { n });
    let product = (2usize..=4, 2usize..=3).prop_map(|(a, b)| RingSpec::Product {
        factors: vec![RingSpec::Zmod { n: a }, RingSpec::Zmod { n: b }],
    });
    let poly = (
        prop_oneof![Just(2usize), Just(3usize)],
        prop::collection::vec(0usize..3, 1..=2),
    )
        .prop_map(|(p, tail)| RingSpec::PolyQuotient {
            p,
            tail: tail.into_iter().map(|c| c % p).collect(),
        });
    let triangular = (2usize..=3).prop_map(|n| RingSpec::Matrix {
        base: Box::new(RingSpec::Zmod { n }),
        size: 2,
        shape: MatrixShape::UpperTriangular,
    });
    prop_oneof![zmod, product, poly, triangular]
}

fn pick(names: &'static [&'static str]) -> impl Strategy<Value = Ring> {
    (0..names.len()).prop_map(move |i| corpus::ring(names[i]).unwrap())
}

fn gens(r: &Ring, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|&x| x % r.order()).collect()
}

fn closure(r: &Ring, side: Side, raw: &[usize]) -> GabrielFilter {
    let seed = generate(r, side, gens(r, raw));
    filter_closure(r, side, &[seed]).unwrap()
}

fn regular(r: &Ring) -> Bimodule {
    Arc::new(FinBimodule::regular(r))
}

fn twist(r: &Ring, k: usize) -> Bimodule {
    let auts = automorphism_group(r).unwrap();
    let phi = &auts[k % auts.len()];
    Arc::new(FinBimodule::twisted(r, phi, &RingMap::identity(r)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_rings_satisfy_axioms(spec in small_spec()) {
        let r = make_ring(&spec).unwrap();
        r.check_axioms().unwrap();
        let op = r.opposite();
        let back = op.opposite();
        prop_assert_eq!(back.mul_table(), r.mul_table());
        prop_assert_eq!(op.center(), r.center());
    }

    #[test]
    fn closure_is_idempotent_with_unique_minimum(r in pick(SMALL), raw in prop::collection::vec(any::<usize>(), 0..3), right in any::<bool>()) {
        let side = if right { Side::Right } else { Side::Left };
        let f = closure(&r, side, &raw);
        let members = f.members().unwrap();
        prop_assert_eq!(filter_closure(&r, side, &members).unwrap(), f.clone());
        let meet = members.iter().fold(ElemSet::full(r.order()), |acc, m| acc.intersection(m));
        prop_assert_eq!(&meet, f.min());
        prop_assert!(members.iter().any(|m| m == &meet));
    }

    #[test]
    fn closure_is_monotone(r in pick(SMALL), a in prop::collection::vec(any::<usize>(), 1..3), b in prop::collection::vec(any::<usize>(), 1..3)) {
        let side = Side::Right;
        let small = filter_closure(&r, side, &[generate(&r, side, gens(&r, &a))]).unwrap();
        let both = filter_closure(&r, side, &[generate(&r, side, gens(&r, &a)), generate(&r, side, gens(&r, &b))]).unwrap();
        prop_assert!(small.is_subfilter_of(&both));
    }

    #[test]
    fn torsion_via_minimum_matches_union(r in pick(SMALL), raw in prop::collection::vec(any::<usize>(), 1..3)) {
        let f = closure(&r, Side::Right, &raw);
        let m = FinBimodule::regular(&r).forget(false, true);
        let t = torsion_submodule(&m, &f).unwrap();
        let members = f.members().unwrap();
        let union = ElemSet::from_iter(r.order(), (0..r.order()).filter(|&x| {
            members.iter().any(|i| i.iter().all(|d| r.mul(x, d) == r.zero()))
        }));
        prop_assert_eq!(&t.submodule, &union);
        let again = torsion_submodule(&t.quotient, &f).unwrap();
        prop_assert_eq!(again.submodule.count(), 1);
    }

    #[test]
    fn omega_route_agrees(r in pick(SMALL), raw in prop::collection::vec(any::<usize>(), 0..3)) {
        let dl = closure(&r, Side::Left, &raw);
        let hr = closure(&r, Side::Right, &raw);
        let rep = oracle_omega_localization(&regular(&r), &dl, &hr).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn quotient_rings_are_rings_and_complete(r in pick(SMALL), raw in prop::collection::vec(any::<usize>(), 0..3), dense in any::<bool>()) {
        let t = if dense {
            corpus::dense_triple(&r).unwrap()
        } else {
            FilterTriple::new(&r, closure(&r, Side::Left, &raw), closure(&r, Side::Right, &raw)).unwrap()
        };
        prop_assume!(t.is_zero_cell());
        let q = q_ring(&t).unwrap();
        q.ring.check_axioms().unwrap();
        prop_assert!(q.embed.is_injective());
        let qt = induced_triple(&q).unwrap();
        let qq = q_ring(&qt).unwrap();
        prop_assert!(ring_isomorphism(&q.ring, &qq.ring).unwrap().is_some());
        let loc = two_sided_localization(&regular(&r), &t.left, &t.right).unwrap();
        let qm: Bimodule = Arc::new(q_actions(&q, &q, &loc).unwrap());
        prop_assert!(check_q1_q4(&regular(&r), &t, &t).unwrap().all_hold());
        prop_assert!(check_q1_q4(&qm, &qt, &qt).unwrap().all_hold());
    }

    #[test]
    fn exact_sequence_on_generated_zero_cells(r in pick(SMALL), raw in prop::collection::vec(any::<usize>(), 0..3)) {
        let t = FilterTriple::new(&r, closure(&r, Side::Left, &raw), closure(&r, Side::Right, &raw)).unwrap();
        prop_assume!(t.is_zero_cell());
        let rep = verify_exact_sequence(&t).unwrap();
        prop_assert!(rep.junctions.iter().all(|j| j.exact));
    }

    #[test]
    fn tensor_is_associative_and_unital(r in pick(TWISTABLE), a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let (x, y, z) = (twist(&r, a), twist(&r, b), twist(&r, c));
        let xy: Bimodule = Arc::new(tensor(&x, &y, Over::Ring).unwrap().module);
        let yz: Bimodule = Arc::new(tensor(&y, &z, Over::Ring).unwrap().module);
        let left: Bimodule = Arc::new(tensor(&xy, &z, Over::Ring).unwrap().module);
        let right: Bimodule = Arc::new(tensor(&x, &yz, Over::Ring).unwrap().module);
        prop_assert!(is_isomorphic(&left, &right).unwrap());
        let unit: Bimodule = Arc::new(tensor(&regular(&r), &x, Over::Ring).unwrap().module);
        prop_assert!(is_isomorphic(&unit, &x).unwrap());
    }

    #[test]
    fn morita_unit_and_transport_back(r in pick(TWISTABLE), k in 0usize..6, raw in prop::collection::vec(any::<usize>(), 0..3)) {
        let m = twist(&r, k);
        let ctx = morita_context(&m).unwrap().unwrap();
        let sum = ctx.unit.iter().fold(r.zero(), |acc, &(x, n)| r.add(acc, ctx.alpha(x, n)));
        prop_assert_eq!(sum, r.one());
        let f = closure(&r, Side::Right, &raw);
        prop_assert_eq!(t_sharp(&ctx.dual.module, &t_sharp(&m, &f).unwrap()).unwrap(), f);
    }
}
