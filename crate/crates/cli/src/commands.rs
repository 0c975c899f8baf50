//! Argument parsing and dispatch.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twoloc_core::abelian::invariant_label;
use twoloc_core::filter::{dense_filter, GabrielFilter};
use twoloc_core::ideal::{enumerate_ideal_sets, Side};
use twoloc_core::limits;
use twoloc_core::localization::{
    check_q1_q4, colimit_oracle_count, induced_triple, one_sided_quotients, one_sided_ring, oracle_omega_localization,
    q_ring, two_sided_localization, FilterTriple,
};
use twoloc_core::module::{torsion_submodule, two_sided_torsion, Bimodule, FinBimodule};
use twoloc_core::picard::{
    bass_check, pic_diag, pic_relative, satisfies_q, t_sharp, twist_label, u_sharp, verify_exact_sequence,
};
use twoloc_core::ring::{automorphism_group, ring_isomorphism, Ring, RingMap};

use crate::filters::{labels, FilterSpec};
use crate::job::load_ring;
use crate::report::Report;
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "twoloc",
    version,
    about = "Two-sided localization and Picard groups of finite rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Order, center, units and automorphisms
    RingInfo,
    /// Left, right and two-sided ideals
    Ideals,
    /// Check that the filter specs describe Gabriel filters
    FilterCheck,
    /// Close the filter specs and list every member
    FilterClosure,
    /// Filters of dense ideals on both sides
    Dense,
    /// Torsion of the regular module under the filters
    Torsion,
    /// One-sided module of quotients at the right filter
    Localize,
    /// Two-sided localization of the regular bimodule
    Localize2,
    /// The quotient ring with its multiplication and embedding
    Qring,
    /// Conditions Q1-Q4 for every twisted regular bimodule
    CheckQ14,
    /// Filter transport along every twisted regular bimodule
    Tsharp,
    /// Invertible filter-stable subbimodules of the quotient ring
    PicRelative,
    /// Classes of twisted regular bimodules fixing the filters
    PicDiag,
    /// Exactness of the unit/Picard sequence, junction by junction
    Exactseq,
    /// The split sequence Pic_R(R) -> Pic(R) -> Aut(R) of a commutative ring
    Bass,
    /// Every regression criterion over the built-in corpus
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::RingInfo => "ring-info",
            Command::Ideals => "ideals",
            Command::FilterCheck => "filter-check",
            Command::FilterClosure => "filter-closure",
            Command::Dense => "dense",
            Command::Torsion => "torsion",
            Command::Localize => "localize",
            Command::Localize2 => "localize2",
            Command::Qring => "qring",
            Command::CheckQ14 => "check-q14",
            Command::Tsharp => "tsharp",
            Command::PicRelative => "pic-relative",
            Command::PicDiag => "pic-diag",
            Command::Exactseq => "exactseq",
            Command::Bass => "bass",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Summary,
    #[default]
    Structured,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Ring spec file (TOML), or corpus:<name>
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Second ring, target of the transport in `tsharp`
    #[arg(long, global = true)]
    pub ring2: Option<String>,
    #[arg(long, global = true, default_value = "trivial")]
    pub left_filter: FilterSpec,
    #[arg(long, global = true, default_value = "trivial")]
    pub right_filter: FilterSpec,
    /// Cross-check against the definitional oracle
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Largest carrier accepted
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    pub format: Format,
}

struct Job {
    ring: Ring,
    opts: Options,
}

impl Job {
    fn filter(&self, side: Side) -> Result<GabrielFilter> {
        let spec = if side == Side::Left {
            &self.opts.left_filter
        } else {
            &self.opts.right_filter
        };
        spec.build(&self.ring, side)
            .with_context(|| format!("building the {side} filter"))
    }

    fn triple(&self) -> Result<FilterTriple> {
        Ok(FilterTriple::new(
            &self.ring,
            self.filter(Side::Left)?,
            self.filter(Side::Right)?,
        )?)
    }

    fn zero_cell(&self) -> Result<FilterTriple> {
        let t = self.triple()?;
        t.check_zero_cell().context("the filters do not make a 0-cell")?;
        Ok(t)
    }

    fn regular(&self) -> Bimodule {
        Arc::new(FinBimodule::regular(&self.ring))
    }

    fn twists(&self) -> Result<Vec<(RingMap, Bimodule)>> {
        let id = RingMap::identity(&self.ring);
        automorphism_group(&self.ring)?
            .into_iter()
            .map(|phi| {
                let m: Bimodule = Arc::new(FinBimodule::twisted(&self.ring, &phi, &id)?);
                Ok((phi, m))
            })
            .collect()
    }

    fn set(&self, s: &twoloc_core::ElemSet) -> Vec<String> {
        labels(&self.ring, s)
    }

    fn filter_json(&self, f: &GabrielFilter, members: bool) -> Result<Value> {
        let all = f.members()?;
        let mut v = json!({
            "side": f.side(),
            "min": self.set(f.min()),
            "member_count": all.len(),
        });
        if members {
            v["members"] = json!(all.iter().map(|m| self.set(m)).collect::<Vec<_>>());
        }
        Ok(v)
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    if let Some(n) = cli.options.max_order {
        limits::set_max_order(n);
    }
    if cli.command == Command::VerifyAll {
        return verify::verify_all_report();
    }
    let Some(source) = &cli.options.ring else {
        bail!("{} needs --ring", cli.command.name());
    };
    let job = Job {
        ring: load_ring(source)?,
        opts: cli.options.clone(),
    };
    let name = cli.command.name();
    match cli.command {
        Command::RingInfo => ring_info(&job, name),
        Command::Ideals => ideals(&job, name),
        Command::FilterCheck => filter_check(&job, name),
        Command::FilterClosure => filter_closure_cmd(&job, name),
        Command::Dense => dense(&job, name),
        Command::Torsion => torsion(&job, name),
        Command::Localize => localize(&job, name),
        Command::Localize2 => localize2(&job, name),
        Command::Qring => qring(&job, name),
        Command::CheckQ14 => check_q14(&job, name),
        Command::Tsharp => tsharp(&job, name),
        Command::PicRelative => pic_relative_cmd(&job, name),
        Command::PicDiag => pic_diag_cmd(&job, name),
        Command::Exactseq => exactseq(&job, name),
        Command::Bass => bass(&job, name),
        Command::VerifyAll => unreachable!(),
    }
}

fn ring_info(job: &Job, name: &str) -> Result<Report> {
    let r = &job.ring;
    let auts = automorphism_group(r)?;
    let additive = invariant_label(r.additive().invariant_factors());
    Report::new(
        name,
        json!({
            "order": r.order(),
            "commutative": r.is_commutative(),
            "additive_group": additive,
            "elements": r.labels(),
            "center": job.set(&r.center()),
            "units": job.set(&r.units()),
            "automorphisms": auts.iter().map(|p| twist_label(r, p)).collect::<Vec<_>>(),
        }),
    )
    .map(|rep| {
        rep.line(format!(
            "order {} ({additive}), commutative: {}",
            r.order(),
            r.is_commutative()
        ))
        .line(format!(
            "{} units, {} central elements, {} automorphisms",
            r.units().count(),
            r.center().count(),
            auts.len()
        ))
    })
}

fn ideals(job: &Job, name: &str) -> Result<Report> {
    let mut data = serde_json::Map::new();
    let mut rep_lines = Vec::new();
    for side in [Side::Left, Side::Right, Side::TwoSided] {
        let sets = enumerate_ideal_sets(&job.ring, side)?;
        rep_lines.push(format!("{} {side} ideals", sets.len()));
        data.insert(
            side.to_string(),
            json!(sets.iter().map(|s| job.set(s)).collect::<Vec<_>>()),
        );
    }
    let mut rep = Report::new(name, Value::Object(data))?;
    rep.summary = rep_lines;
    Ok(rep)
}

fn filter_check(job: &Job, name: &str) -> Result<Report> {
    let mut data = serde_json::Map::new();
    let mut ok = true;
    let mut lines = Vec::new();
    for (side, spec) in [
        (Side::Left, &job.opts.left_filter),
        (Side::Right, &job.opts.right_filter),
    ] {
        let verdict = spec.check_family(&job.ring, side)?;
        let listed_ok = verdict.as_ref().is_none_or(|v| v.is_ok());
        let f = job.filter(side)?;
        let torsion_free = (0..job.ring.order()).find(|&x| {
            x != job.ring.zero()
                && f.min().iter().all(|d| {
                    let p = if side == Side::Right {
                        job.ring.mul(x, d)
                    } else {
                        job.ring.mul(d, x)
                    };
                    p == job.ring.zero()
                })
        });
        ok &= listed_ok;
        lines.push(format!(
            "{side}: {}, minimal member of size {}",
            if listed_ok {
                "Gabriel filter"
            } else {
                "not a Gabriel filter"
            },
            f.min().count()
        ));
        let mut v = job.filter_json(&f, false)?;
        v["listed_family_is_filter"] = json!(listed_ok);
        v["violation"] = json!(verdict.and_then(|v| v.err()));
        v["ring_torsion_witness"] = json!(torsion_free.map(|x| job.ring.label(x).to_string()));
        data.insert(side.to_string(), v);
    }
    let zero_cell = job.triple()?.is_zero_cell();
    data.insert("zero_cell".into(), json!(zero_cell));
    let mut rep = Report::new(name, Value::Object(data))?.passed(ok);
    rep.summary = lines;
    Ok(rep.line(format!("0-cell: {zero_cell}")))
}

fn filter_closure_cmd(job: &Job, name: &str) -> Result<Report> {
    let (l, r) = (job.filter(Side::Left)?, job.filter(Side::Right)?);
    Ok(Report::new(
        name,
        json!({ "left": job.filter_json(&l, true)?, "right": job.filter_json(&r, true)? }),
    )?
    .line(format!("left: {} members", l.members()?.len()))
    .line(format!("right: {} members", r.members()?.len())))
}

fn dense(job: &Job, name: &str) -> Result<Report> {
    let r = &job.ring;
    let (l, rt) = (dense_filter(r, Side::Left)?, dense_filter(r, Side::Right)?);
    let t = FilterTriple::new(r, l.clone(), rt.clone())?;
    Ok(Report::new(
        name,
        json!({ "left": job.filter_json(&l, true)?, "right": job.filter_json(&rt, true)?, "zero_cell": t.is_zero_cell() }),
    )?
    .line(format!("left dense minimum {:?}", job.set(l.min())))
    .line(format!("right dense minimum {:?}", job.set(rt.min()))))
}

fn torsion(job: &Job, name: &str) -> Result<Report> {
    let r = &job.ring;
    let (l, rt) = (job.filter(Side::Left)?, job.filter(Side::Right)?);
    let reg = FinBimodule::regular(r);
    let right = torsion_submodule(&reg.forget(false, true), &rt)?;
    let left = torsion_submodule(&reg.forget(true, false), &l)?;
    let both = two_sided_torsion(&reg, &l, &rt)?;
    Ok(Report::new(
        name,
        json!({
            "left": job.set(&left.submodule),
            "right": job.set(&right.submodule),
            "two_sided": job.set(&both.submodule),
        }),
    )?
    .line(format!(
        "torsion orders: left {}, right {}, two-sided {}",
        left.submodule.count(),
        right.submodule.count(),
        both.submodule.count()
    )))
}

fn localize(job: &Job, name: &str) -> Result<Report> {
    let f = job.filter(Side::Right)?;
    let q = one_sided_quotients(&job.regular(), &f)?;
    let mut data = json!({ "order": q.order(), "torsion_free_quotient_order": q.mbar.order() });
    let mut rep_lines = vec![format!("|Q_D(R)| = {}", q.order())];
    let mut ok = true;
    if q.mbar.order() == job.ring.order() {
        let (qr, embed) = one_sided_ring(&job.ring, &f)?;
        qr.check_axioms()?;
        data["ring"] = json!({
            "elements": qr.labels(),
            "commutative": qr.is_commutative(),
            "embedding_injective": embed.is_injective(),
        });
    }
    if job.opts.oracle {
        let count = colimit_oracle_count(&job.regular(), &f)?;
        ok = count == q.order();
        data["oracle_order"] = json!(count);
        rep_lines.push(format!("colimit oracle: {count}"));
    }
    let mut rep = Report::new(name, data)?.passed(ok);
    rep.summary = rep_lines;
    Ok(rep)
}

fn localize2(job: &Job, name: &str) -> Result<Report> {
    let (l, r) = (job.filter(Side::Left)?, job.filter(Side::Right)?);
    let qm = two_sided_localization(&job.regular(), &l, &r)?;
    let mut data = json!({ "order": qm.order(), "torsion": job.set(&qm.torsion.submodule) });
    let mut rep = Report::new(name, Value::Null)?.line(format!("|Q(R)| = {}", qm.order()));
    if job.opts.oracle {
        let o = oracle_omega_localization(&job.regular(), &l, &r)?;
        rep = rep
            .line(format!(
                "oracle order {}, bijection verified: {}",
                o.oracle_order, o.bijection
            ))
            .passed(o.passed());
        data["oracle"] = serde_json::to_value(&o)?;
    }
    rep.data = data;
    Ok(rep)
}

fn qring(job: &Job, name: &str) -> Result<Report> {
    let t = job.zero_cell()?;
    let q = q_ring(&t)?;
    q.ring.check_axioms()?;
    let bijective = q.order() == job.ring.order() && q.embed.is_injective();
    let iso = ring_isomorphism(&q.ring, &job.ring)?.is_some();
    let qt = induced_triple(&q)?;
    Ok(Report::new(
        name,
        json!({
            "order": q.order(),
            "elements": q.ring.labels(),
            "commutative": q.ring.is_commutative(),
            "axioms_hold": true,
            "embedding_injective": q.embed.is_injective(),
            "embedding_bijective": bijective,
            "isomorphic_to_ring": iso,
            "induced_left_min": labels(&q.ring, qt.left.min()),
            "induced_right_min": labels(&q.ring, qt.right.min()),
        }),
    )?
    .line(format!("|Q| = {}, ring axioms hold", q.order()))
    .line(format!("embedding bijective: {bijective}, Q ≅ R: {iso}")))
}

fn check_q14(job: &Job, name: &str) -> Result<Report> {
    let t = job.triple()?;
    let mut rows = Vec::new();
    let mut rep = Report::new(name, Value::Null)?;
    for (phi, m) in job.twists()? {
        let c = check_q1_q4(&m, &t, &t)?;
        let label = twist_label(&job.ring, &phi);
        rep = rep.line(format!(
            "{label}: {}",
            if c.all_hold() { "Q1-Q4 hold" } else { "fails" }
        ));
        rows.push(json!({ "twist": label, "conditions": c, "all_hold": c.all_hold() }));
    }
    rep.data = json!(rows);
    Ok(rep)
}

fn tsharp(job: &Job, name: &str) -> Result<Report> {
    let (l, r) = (job.filter(Side::Left)?, job.filter(Side::Right)?);
    let mut rep = Report::new(name, Value::Null)?;
    let mut data = serde_json::Map::new();
    let mut rows = Vec::new();
    for (phi, m) in job.twists()? {
        let (h, d) = (t_sharp(&m, &r)?, u_sharp(&m, &l)?);
        let fixes = satisfies_q(&m, &l, &r, &l, &r)?;
        let label = twist_label(&job.ring, &phi);
        rep = rep.line(format!(
            "{label}: {}",
            if fixes {
                "fixes the filters"
            } else {
                "moves the filters"
            }
        ));
        rows.push(json!({
            "twist": label,
            "t_sharp_min": job.set(h.min()),
            "u_sharp_min": job.set(d.min()),
            "fixes_filters": fixes,
        }));
    }
    data.insert("twists".into(), json!(rows));
    if let Some(source) = &job.opts.ring2 {
        let s = load_ring(source)?;
        let Some(psi) = ring_isomorphism(&job.ring, &s)? else {
            bail!("--ring2 is not isomorphic to --ring, so no transport bimodule is available");
        };
        // R acting on the left of S through ψ
        let m: Bimodule = Arc::new(FinBimodule::regular(&s).restrict_scalars(Some(&psi), None)?);
        let h = t_sharp(&m, &r)?;
        data.insert("ring2_right_filter_min".into(), json!(labels(&s, h.min())));
        rep = rep.line(format!(
            "transported right filter on ring2 has minimum {:?}",
            labels(&s, h.min())
        ));
    }
    rep.data = Value::Object(data);
    Ok(rep)
}

fn pic_relative_cmd(job: &Job, name: &str) -> Result<Report> {
    let t = job.zero_cell()?;
    let q = q_ring(&t)?;
    let p = pic_relative(&t, &q)?;
    let members: Vec<Value> = p
        .members
        .iter()
        .map(|m| json!({ "label": m.label, "order": m.elements.count(), "inverse": labels(&q.ring, &m.inverse) }))
        .collect();
    Ok(Report::new(
        name,
        json!({
            "q_order": q.order(),
            "order": p.group.order(),
            "structure": p.group.structure(),
            "members": members,
            "multiplication": p.group.group.mul_table(),
        }),
    )?
    .line(format!(
        "Pic(R|Q) ≅ {} (order {})",
        p.group.structure(),
        p.group.order()
    )))
}

fn pic_diag_cmd(job: &Job, name: &str) -> Result<Report> {
    let t = job.triple()?;
    let p = pic_diag(&t)?;
    let r = &job.ring;
    let classes: Vec<Value> = p
        .group
        .elements
        .iter()
        .zip(&p.classes)
        .map(|(e, c)| json!({ "label": e.label, "automorphisms": c.automorphisms.iter().map(|a| twist_label(r, a)).collect::<Vec<_>>() }))
        .collect();
    Ok(Report::new(
        name,
        json!({
            "order": p.group.order(),
            "structure": p.group.structure(),
            "classes": classes,
            "rejected": p.rejected.iter().map(|a| twist_label(r, a)).collect::<Vec<_>>(),
            "multiplication": p.group.group.mul_table(),
        }),
    )?
    .line(format!(
        "diagonal classes: {} (order {})",
        p.group.structure(),
        p.group.order()
    ))
    .line(format!(
        "{} automorphisms rejected by the filter transport",
        p.rejected.len()
    )))
}

fn exactseq(job: &Job, name: &str) -> Result<Report> {
    let t = job.zero_cell()?;
    let rep = verify_exact_sequence(&t)?;
    let mut out = Report::new(name, &rep)?;
    for j in &rep.junctions {
        out = out.line(format!("at {}: ker = im = {{{}}}", j.at, j.kernel.join(", ")));
    }
    Ok(out.line(rep.scope.clone()))
}

fn bass(job: &Job, name: &str) -> Result<Report> {
    let r = &job.ring;
    let s = match job.opts.right_filter.ore_set(r)? {
        Some(s) => s,
        None => r.units().iter().collect(),
    };
    let rep = bass_check(r, &s)?;
    Ok(Report::new(name, &rep)?
        .line(rep.sequence.clone())
        .line(format!("split: {}, |Pic(R, D^S)| = {}", rep.split, rep.pic_ds_order)))
}
