use std::sync::Arc;

use twoloc_core::corpus::{localization_cases, ring, zero_cells};
use twoloc_core::iso::is_isomorphic;
use twoloc_core::localization::{extension_iso_check, oracle_omega_localization, q_ring, two_sided_localization};
use twoloc_core::module::{Bimodule, FinBimodule};
use twoloc_core::picard::verify_exact_sequence;

#[test]
fn omega_oracle_matches_every_case() {
    for c in localization_cases().unwrap() {
        let t = std::time::Instant::now();
        let rep = oracle_omega_localization(&c.module, &c.left, &c.right).unwrap();
        assert!(rep.passed(), "{}: {rep:?}", c.name);
        eprintln!("{}: order {} in {:?}", c.name, rep.localization_order, t.elapsed());
    }
}

#[test]
fn quotient_rings_satisfy_ring_axioms() {
    for inst in zero_cells().unwrap() {
        let t = std::time::Instant::now();
        let q = q_ring(&inst.triple).unwrap();
        q.ring.check_axioms().unwrap();
        assert!(q.embed.is_injective(), "{}", inst.name);
        if inst.name.ends_with("/trivial") {
            let qb: Bimodule = Arc::new(
                FinBimodule::regular(&q.ring)
                    .restrict_scalars(Some(&q.embed), Some(&q.embed))
                    .unwrap(),
            );
            let rb: Bimodule = Arc::new(FinBimodule::regular(&inst.triple.ring));
            assert!(is_isomorphic(&qb, &rb).unwrap(), "{}", inst.name);
        }
        eprintln!("{}: |Q| = {} in {:?}", inst.name, q.order(), t.elapsed());
    }
}

#[test]
fn extension_isomorphisms_on_regular_bimodules() {
    for inst in zero_cells().unwrap() {
        let t = std::time::Instant::now();
        let reg: Bimodule = Arc::new(FinBimodule::regular(&inst.triple.ring));
        assert!(
            extension_iso_check(&reg, &inst.triple, &inst.triple).unwrap().passed(),
            "{}",
            inst.name
        );
        eprintln!("{}: extension in {:?}", inst.name, t.elapsed());
    }
}

#[test]
fn exact_sequence_on_every_zero_cell() {
    for inst in zero_cells().unwrap() {
        let t = std::time::Instant::now();
        let rep = verify_exact_sequence(&inst.triple).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
        assert!(rep.junctions.iter().all(|j| j.exact));
        eprintln!("{}: exact in {:?}", inst.name, t.elapsed());
    }
}

#[test]
fn localizing_the_regular_module_gives_the_quotient_ring() {
    let r = ring("t2f2").unwrap();
    let t = twoloc_core::corpus::dense_triple(&r).unwrap();
    let q = q_ring(&t).unwrap();
    let reg: Bimodule = Arc::new(FinBimodule::regular(&r));
    assert_eq!(
        two_sided_localization(&reg, &t.left, &t.right).unwrap().order(),
        q.order()
    );
}

#[test]
fn dense_filter_is_the_largest_torsion_free_filter() {
    use twoloc_core::filter::{all_gabriel_filters, dense_filter};
    use twoloc_core::ideal::Side;
    use twoloc_core::module::is_torsion_free;
    for (name, r) in twoloc_core::corpus::rings().unwrap() {
        if r.order() > 16 {
            continue;
        }
        let t = std::time::Instant::now();
        for side in [Side::Left, Side::Right] {
            let reg = if side == Side::Right {
                FinBimodule::regular(&r).forget(false, true)
            } else {
                FinBimodule::regular(&r).forget(true, false)
            };
            let dense = dense_filter(&r, side).unwrap();
            assert!(is_torsion_free(&reg, &dense).unwrap(), "{name}");
            for f in all_gabriel_filters(&r, side).unwrap() {
                if is_torsion_free(&reg, &f).unwrap() {
                    assert!(f.is_subfilter_of(&dense), "{name}: {:?}", f.min());
                }
            }
        }
        eprintln!("{name}: lattice sweep in {:?}", t.elapsed());
    }
}

#[test]
fn dense_twists_match_unfiltered_twists() {
    use twoloc_core::picard::pic_diag;
    for (name, r) in twoloc_core::corpus::rings().unwrap() {
        let dense = pic_diag(&twoloc_core::corpus::dense_triple(&r).unwrap()).unwrap();
        let plain = pic_diag(&twoloc_core::localization::FilterTriple::trivial(&r)).unwrap();
        assert_eq!(dense.group.order(), plain.group.order(), "{name}");
        assert!(dense.rejected.is_empty(), "{name}");
    }
}
