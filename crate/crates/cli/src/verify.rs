//! The regression suite behind `verify-all`.

use std::sync::Arc;

use anyhow::{ensure, Result};
use serde::Serialize;
use serde_json::{json, Value};

use twoloc_core::corpus::{self, dense_triple, first_factor, localization_cases, swap, zero_cells};
use twoloc_core::filter::{all_gabriel_filters, dense_filter, filter_closure, GabrielFilter};
use twoloc_core::ideal::Side;
use twoloc_core::iso::is_isomorphic;
use twoloc_core::localization::{
    colimit_oracle_count, extension_iso_check, functoriality_check, oracle_omega_localization, q_ring, FilterTriple,
};
use twoloc_core::module::{is_torsion_free, Bimodule, FinBimodule};
use twoloc_core::picard::{bass_check, pic_diag, t_sharp, u_sharp, verify_exact_sequence};
use twoloc_core::ring::{automorphism_group, ring_isomorphism, Ring, RingMap};
use twoloc_core::ElemSet;

use crate::report::Report;

pub const CRITERIA: &[(u8, &str)] = &[
    (1, "two-sided localization matches the tensor-ring oracle"),
    (2, "quotient rings satisfy the ring axioms"),
    (3, "maximal right quotients of T2(F2) form M2(F2)"),
    (4, "extension isomorphisms for invertible bimodules"),
    (5, "localization is functorial on tensor products"),
    (6, "unit/Picard sequence is exact"),
    (7, "Bass sequence splits"),
    (8, "dense filters, closures and minimal members"),
    (9, "filter transport separates twists"),
    (10, "verify-all is deterministic"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

fn regular(r: &Ring) -> Bimodule {
    Arc::new(FinBimodule::regular(r))
}

fn twisted(r: &Ring, phi: &RingMap) -> Result<Bimodule> {
    Ok(Arc::new(FinBimodule::twisted(r, phi, &RingMap::identity(r))?))
}

fn factor_triple() -> Result<(Ring, FilterTriple)> {
    let r = corpus::ring("f2xf2")?;
    let e = first_factor(&r)?;
    let t = FilterTriple::new(
        &r,
        filter_closure(&r, Side::Left, std::slice::from_ref(&e))?,
        filter_closure(&r, Side::Right, &[e])?,
    )?;
    Ok((r, t))
}

fn omega_bijection() -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for c in localization_cases()? {
        let rep = oracle_omega_localization(&c.module, &c.left, &c.right)?;
        ok &= rep.passed();
        rows.push(json!({ "instance": c.name, "report": rep }));
    }
    ok &= rows.len() >= 5;
    Ok((ok, json!(rows)))
}

fn quotient_ring_axioms() -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for inst in zero_cells()? {
        let q = q_ring(&inst.triple)?;
        let axioms = q.ring.check_axioms().is_ok();
        let trivial = inst.triple.left.is_trivial() && inst.triple.right.is_trivial();
        let iso = if trivial {
            let qb: Bimodule =
                Arc::new(FinBimodule::regular(&q.ring).restrict_scalars(Some(&q.embed), Some(&q.embed))?);
            Some(is_isomorphic(&qb, &regular(&inst.triple.ring))?)
        } else {
            None
        };
        ok &= axioms && q.embed.is_injective() && iso != Some(false);
        rows.push(json!({ "instance": inst.name, "order": q.order(), "axioms": axioms, "isomorphic_to_ring": iso }));
    }
    Ok((ok, json!(rows)))
}

fn maximal_quotients() -> Result<(bool, Value)> {
    let r = corpus::ring("t2f2")?;
    let f = dense_filter(&r, Side::Right)?;
    let (q, embed) = twoloc_core::localization::one_sided_ring(&r, &f)?;
    let m2 = corpus::ring("m2f2")?;
    let iso = ring_isomorphism(&q, &m2)?.is_some();
    let oracle = colimit_oracle_count(&regular(&r), &f)?;
    let ok = q.order() == 16 && iso && oracle == 16 && embed.is_injective();
    Ok((
        ok,
        json!({ "order": q.order(), "isomorphic_to_m2f2": iso, "oracle_order": oracle }),
    ))
}

fn extension_isos() -> Result<(bool, Value)> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut record = |name: String, m: &Bimodule, t: &FilterTriple| -> Result<()> {
        let rep = extension_iso_check(m, t, t)?;
        ok &= rep.passed();
        rows.push(json!({ "instance": name, "report": rep }));
        Ok(())
    };
    for inst in zero_cells()? {
        record(inst.name.clone(), &regular(&inst.triple.ring), &inst.triple)?;
    }
    let r = corpus::ring("f2xf2")?;
    record(
        "f2xf2/trivial swap twist".into(),
        &twisted(&r, &swap(&r)?)?,
        &FilterTriple::trivial(&r),
    )?;
    Ok((ok, json!(rows)))
}

fn functoriality() -> Result<(bool, Value)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for name in ["f4", "f2xf2"] {
        let r = corpus::ring(name)?;
        let q = q_ring(&FilterTriple::trivial(&r))?;
        let auts = automorphism_group(&r)?;
        for a in &auts {
            for b in &auts {
                let rep = functoriality_check(&twisted(&r, a)?, &twisted(&r, b)?, &q, &q, &q)?;
                ok &= rep.isomorphic;
                rows.push(json!({ "ring": name, "report": rep }));
            }
        }
    }
    let t2 = corpus::ring("t2f2")?;
    let q = q_ring(&dense_triple(&t2)?)?;
    let rep = functoriality_check(&regular(&t2), &regular(&t2), &q, &q, &q)?;
    ok &= rep.isomorphic;
    rows.push(json!({ "ring": "t2f2/dense", "report": rep }));
    ok &= rows.len() >= 2;
    Ok((ok, json!(rows)))
}

fn exact_sequences() -> Result<(bool, Value)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for inst in zero_cells()? {
        match verify_exact_sequence(&inst.triple) {
            Ok(rep) => {
                ok &= rep.junctions.iter().all(|j| j.exact);
                rows.push(json!({ "instance": inst.name, "report": rep }));
            }
            Err(e) => {
                ok = false;
                rows.push(json!({ "instance": inst.name, "error": e.to_string() }));
            }
        }
    }
    let named = |n: &str| rows.iter().any(|r| r["instance"] == n);
    ok &= named("f4/trivial") && named("t2f2/dense");
    Ok((ok, json!(rows)))
}

fn bass_sequences() -> Result<(bool, Value)> {
    let expected = [
        ("f4", "0 → 0 → Z/2 → Z/2 → 0"),
        ("zmod8", "0 → 0 → 0 → 0 → 0"),
        ("f2-dual", "0 → 0 → 0 → 0 → 0"),
    ];
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, seq) in expected {
        let r = corpus::ring(name)?;
        let units: Vec<usize> = r.units().iter().collect();
        let rep = bass_check(&r, &units)?;
        ok &= rep.sequence == seq && rep.split;
        rows.push(json!({ "ring": name, "report": rep }));
    }
    Ok((ok, json!(rows)))
}

/// The intersection of all members is itself a member and is the stored minimum.
fn unique_min(f: &GabrielFilter) -> Result<bool> {
    let members = f.members()?;
    let meet = members
        .iter()
        .fold(ElemSet::full(f.ring().order()), |acc, m| acc.intersection(m));
    Ok(&meet == f.min() && members.contains(&meet))
}

fn filter_machinery() -> Result<(bool, Value)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, r) in corpus::rings()? {
        if r.order() > 8 {
            continue;
        }
        let mut lattice = 0;
        for side in [Side::Left, Side::Right] {
            let reg = if side == Side::Right {
                FinBimodule::regular(&r).forget(false, true)
            } else {
                FinBimodule::regular(&r).forget(true, false)
            };
            let dense = dense_filter(&r, side)?;
            ok &= is_torsion_free(&reg, &dense)? && unique_min(&dense)?;
            for f in all_gabriel_filters(&r, side)? {
                lattice += 1;
                if is_torsion_free(&reg, &f)? {
                    ok &= f.is_subfilter_of(&dense);
                }
                ok &= filter_closure(&r, side, &f.members()?)? == f;
                ok &= unique_min(&f)?;
            }
        }
        rows.push(json!({ "ring": name, "filters_checked": lattice }));
    }
    Ok((ok, json!(rows)))
}

fn condition_q() -> Result<(bool, Value)> {
    let (r, t) = factor_triple()?;
    let id = RingMap::identity(&r);
    let keeps =
        |m: &Bimodule| -> Result<bool> { Ok(t_sharp(m, &t.right)? == t.right && u_sharp(m, &t.left)? == t.left) };
    let identity_accepted = keeps(&twisted(&r, &id)?)?;
    let swapped = twisted(&r, &swap(&r)?)?;
    let swap_rejected = t_sharp(&swapped, &t.right)? != t.right;
    let diag = pic_diag(&t)?;
    let ok = identity_accepted && swap_rejected && diag.group.order() == 1;
    Ok((
        ok,
        json!({
            "identity_accepted": identity_accepted,
            "swap_rejected_by_t_sharp": swap_rejected,
            "pic_diag_order": diag.group.order(),
        }),
    ))
}

fn run(id: u8) -> Result<(bool, Value)> {
    match id {
        1 => omega_bijection(),
        2 => quotient_ring_axioms(),
        3 => maximal_quotients(),
        4 => extension_isos(),
        5 => functoriality(),
        6 => exact_sequences(),
        7 => bass_sequences(),
        8 => filter_machinery(),
        9 => condition_q(),
        10 => determinism(),
        _ => anyhow::bail!("no criterion {id}"),
    }
}

pub fn criterion(id: u8) -> Criterion {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let (passed, detail) = match run(id) {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": format!("{e:#}") })),
    };
    Criterion {
        id,
        name,
        passed,
        detail,
    }
}

fn first_nine() -> Vec<Criterion> {
    (1..=9).map(criterion).collect()
}

/// Runs the other criteria twice and compares the serialized reports.
fn determinism() -> Result<(bool, Value)> {
    let a = serde_json::to_string(&first_nine())?;
    let b = serde_json::to_string(&first_nine())?;
    ensure!(!a.is_empty(), "empty report");
    Ok((a == b, json!({ "bytes": a.len(), "identical": a == b })))
}

pub fn verify_all() -> Vec<Criterion> {
    let mut out = first_nine();
    out.push(criterion(10));
    out
}

pub fn verify_all_report() -> Result<Report> {
    let results = verify_all();
    let passed = results.iter().all(|c| c.passed);
    let mut rep = Report::new("verify-all", &results)?.passed(passed);
    for c in &results {
        rep = rep.line(format!(
            "AC{} {}: {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        ));
    }
    Ok(rep)
}
