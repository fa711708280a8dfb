use anyhow::{anyhow, Context};
use ehrhart_core::bounds::{self, BoundError};
use ehrhart_core::ehrhart::{self, EhrhartData};
use ehrhart_core::exact::{factorial, fmt_rat, rat_int, serde_rat, serde_rat_vec};
use ehrhart_core::report::{BoundEntry, BoundReport, Verdict};
use ehrhart_core::surface::{self, FacetArea, IsoReport, SqrtSum, SurfaceMinReport};
use ehrhart_core::{analyze, hstar_from_counts, HStar, Rat, VPolytope};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{float, rat_cols, Output, Table, PLACES};
use crate::source::{Member, Source};
use crate::{Failure, Suite};

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
#[serde(untagged)]
enum Shape<'a, T> {
    One(&'a T),
    Many(&'a [T]),
}

fn shape<T>(docs: &[T], many: bool) -> Shape<'_, T> {
    match (many, docs) {
        (false, [one]) => Shape::One(one),
        _ => Shape::Many(docs),
    }
}

/// Runs `f` on every member in parallel, keeping input order.
fn map_members<T: Send>(
    members: &[Member],
    f: impl Fn(&Member) -> anyhow::Result<T> + Sync,
) -> Result<Vec<T>, Failure> {
    let results: Vec<anyhow::Result<T>> = members.par_iter().map(|m| f(m).with_context(|| m.id.clone())).collect();
    results.into_iter().collect::<anyhow::Result<Vec<T>>>().map_err(Failure::Input)
}

fn joined(v: impl IntoIterator<Item = impl ToString>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct HStarDoc {
    id: String,
    dim: usize,
    #[serde(with = "serde_rat_vec")]
    g: Vec<Rat>,
    a: Vec<i64>,
    deg: usize,
    #[serde(with = "serde_rat")]
    vol: Rat,
    lattice_points: u64,
    interior_points: u64,
}

fn hstar_checks(p: &VPolytope, data: &EhrhartData) -> Vec<String> {
    let d = p.dim();
    let h = &data.hstar;
    let mut failures = Vec::new();
    if h.a(0) != 1 {
        failures.push(format!("a_0 = {} != 1", h.a(0)));
    }
    if h.a(1) as i128 != data.lattice_points() as i128 - (d as i128 + 1) {
        failures.push(format!("a_1 = {} != G(P) - (d+1) = {} - {}", h.a(1), data.lattice_points(), d + 1));
    }
    if h.a(d as isize) as i128 != data.interior_points() as i128 {
        failures.push(format!("a_d = {} != G(int P) = {}", h.a(d as isize), data.interior_points()));
    }
    let scaled = rat_int(factorial(d as u32)) * p.volume();
    if rat_int(h.sum()) != scaled {
        failures.push(format!("sum a_i = {} != d! vol = {}", h.sum(), fmt_rat(&scaled)));
    }
    if data.poly.volume() != &p.volume() {
        failures.push(format!("g_d = {} != vol = {}", fmt_rat(data.poly.volume()), fmt_rat(&p.volume())));
    }
    failures
}

pub fn hstar(source: &Source, output: &Output) -> Outcome {
    let (members, many) = source.members(false)?;
    let results = map_members(&members, |m| {
        let data = analyze(&m.polytope)?;
        let failures = hstar_checks(&m.polytope, &data);
        let doc = HStarDoc {
            id: m.id.clone(),
            dim: m.polytope.dim(),
            g: data.poly.coeffs.clone(),
            a: data.hstar.coeffs.clone(),
            deg: data.hstar.degree(),
            vol: data.poly.volume().clone(),
            lattice_points: data.lattice_points(),
            interior_points: data.interior_points(),
        };
        Ok((doc, failures))
    })?;
    let failures: Vec<String> =
        results.iter().flat_map(|(doc, f)| f.iter().map(move |msg| format!("{}: {msg}", doc.id))).collect();
    if !failures.is_empty() {
        return Err(Failure::Invariant(failures.join("; ")));
    }
    let docs: Vec<HStarDoc> = results.into_iter().map(|(doc, _)| doc).collect();
    output.emit(&shape(&docs, many), || {
        let mut t = Table::new(&["id", "index", "a_i", "g_i", "g_i_exact"]);
        for doc in &docs {
            for (i, g) in doc.g.iter().enumerate() {
                let [dec, exact] = rat_cols(g);
                t.push(vec![doc.id.clone(), i.to_string(), doc.a[i].to_string(), dec, exact]);
            }
        }
        t
    })?;
    Ok(())
}

#[derive(Serialize)]
struct CountDoc {
    id: String,
    dim: usize,
    k: u64,
    lattice_points: u64,
    interior_points: u64,
}

pub fn count(source: &Source, k: u64, output: &Output) -> Outcome {
    let (members, many) = source.members(false)?;
    let docs = map_members(&members, |m| {
        Ok(CountDoc {
            id: m.id.clone(),
            dim: m.polytope.dim(),
            k,
            lattice_points: ehrhart::count(&m.polytope, k, false)?,
            interior_points: ehrhart::count(&m.polytope, k, true)?,
        })
    })?;
    output.emit(&shape(&docs, many), || {
        let mut t = Table::new(&["id", "k", "lattice_points", "interior_points"]);
        for d in &docs {
            t.push(vec![d.id.clone(), d.k.to_string(), d.lattice_points.to_string(), d.interior_points.to_string()]);
        }
        t
    })?;
    Ok(())
}

#[derive(Serialize)]
#[serde(untagged)]
enum VerifyDoc {
    Bound(BoundReport),
    Iso {
        bound: &'static str,
        polytope: String,
        #[serde(flatten)]
        report: IsoReport,
    },
    SurfaceMin {
        bound: &'static str,
        polytope: String,
        #[serde(flatten)]
        report: SurfaceMinReport,
    },
}

impl VerifyDoc {
    fn verdict(&self) -> Verdict {
        match self {
            VerifyDoc::Bound(r) => r.verdict,
            VerifyDoc::Iso { report, .. } => report.verdict,
            VerifyDoc::SurfaceMin { report, .. } => report.verdict,
        }
    }

    fn label(&self) -> String {
        match self {
            VerifyDoc::Bound(r) => format!("{} on {}", r.bound, r.polytope),
            VerifyDoc::Iso { bound, polytope, .. } | VerifyDoc::SurfaceMin { bound, polytope, .. } => {
                format!("{bound} on {polytope}")
            }
        }
    }
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|x| x.as_str().map(str::to_string)).unwrap_or_default()
}

fn bound_err(e: BoundError) -> anyhow::Error {
    anyhow!(e)
}

fn treutlein_report(id: &str, h: &HStar) -> BoundReport {
    let note = format!("h*: {h}");
    if h.degree() != 2 {
        return BoundReport::new("treutlein", id, h.dim, Vec::new()).with_note(note).with_note("degree != 2: not applicable");
    }
    let (a1, a2) = (h.a(1), h.a(2));
    let bound = if a2 == 1 { 7 } else { 3 * a2 + 3 };
    BoundReport::new("treutlein", id, h.dim, vec![BoundEntry::upper(1, rat_int(bound), rat_int(a1))]).with_note(note)
}

fn suite_docs(suite: Suite, m: &Member) -> anyhow::Result<Vec<VerifyDoc>> {
    let id = m.id.as_str();
    let p = &m.polytope;
    let docs = match suite {
        Suite::Thm11 => {
            let data = analyze(p)?;
            vec![
                bounds::thm11_report(id, &data.poly).map_err(bound_err)?,
                bounds::thm11_improved_report(id, &data.poly, data.lattice_points()).map_err(bound_err)?,
            ]
        }
        Suite::Corollary12 => vec![bounds::corollary12_report(id, &ehrhart::ehrhart_poly(p)?).map_err(bound_err)?],
        Suite::BmUpper => vec![bounds::bm_upper_report(id, &ehrhart::ehrhart_poly(p)?).map_err(bound_err)?],
        Suite::Eq15 => vec![bounds::eq15_report(id, &ehrhart::ehrhart_poly(p)?)],
        Suite::Hibi => {
            let h = hstar_from_counts(p)?;
            let mut r = bounds::hibi_check(&h).with_note(format!("h*: {h}"));
            r.polytope = id.to_string();
            vec![r]
        }
        Suite::Treutlein => vec![treutlein_report(id, &hstar_from_counts(p)?)],
        Suite::StanleySym => {
            let h = hstar_from_counts(p)?;
            let mut probe = bounds::conjecture_probe_bhw(&h);
            probe.polytope = id.to_string();
            vec![bounds::stanley_symmetric_check(id, p).map_err(bound_err)?, probe]
        }
        Suite::Prop110 => {
            return Ok(vec![VerifyDoc::SurfaceMin {
                bound: "prop110",
                polytope: id.to_string(),
                report: surface::prop110_check(p)?,
            }])
        }
        Suite::IsoCross => unreachable!("iso-cross works on generator sets"),
    };
    Ok(docs.into_iter().map(VerifyDoc::Bound).collect())
}

pub fn verify(suite: Suite, source: &Source, output: &Output) -> Outcome {
    let docs: Vec<VerifyDoc> = if suite == Suite::IsoCross {
        let sets = source.cross_generators()?;
        let results: Vec<anyhow::Result<VerifyDoc>> = sets
            .par_iter()
            .map(|(id, gens)| {
                let report = surface::iso_ratio_check(gens).with_context(|| id.clone())?;
                Ok(VerifyDoc::Iso { bound: "iso-cross", polytope: id.clone(), report })
            })
            .collect();
        results.into_iter().collect::<anyhow::Result<_>>()?
    } else {
        let (members, _) = source.members(suite == Suite::StanleySym)?;
        map_members(&members, |m| suite_docs(suite, m))?.into_iter().flatten().collect()
    };
    output.emit(&docs, || verify_table(&docs))?;
    let violated: Vec<String> = docs.iter().filter(|d| d.verdict() == Verdict::Violated).map(|d| d.label()).collect();
    if violated.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(violated.join("; ")))
    }
}

fn verify_table(docs: &[VerifyDoc]) -> Table {
    let mut t = Table::new(&[
        "id",
        "bound",
        "index",
        "side",
        "bound_value",
        "bound_exact",
        "actual",
        "actual_exact",
        "slack",
        "slack_exact",
        "verdict",
    ]);
    let side_name = |s| serde_json::to_value(s).ok().and_then(|x| x.as_str().map(str::to_string)).unwrap_or_default();
    for doc in docs {
        match doc {
            VerifyDoc::Bound(r) if r.entries.is_empty() => {
                let mut row = vec![r.polytope.clone(), r.bound.clone()];
                row.extend(std::iter::repeat_n(String::new(), 8));
                row.push(verdict_name(r.verdict));
                t.push(row);
            }
            VerifyDoc::Bound(r) => {
                for e in &r.entries {
                    let [bd, bx] = rat_cols(&e.bound);
                    let [ad, ax] = rat_cols(&e.actual);
                    let [sd, sx] = rat_cols(&e.slack);
                    t.push(vec![
                        r.polytope.clone(),
                        r.bound.clone(),
                        e.index.to_string(),
                        side_name(e.side),
                        bd,
                        bx,
                        ad,
                        ax,
                        sd,
                        sx,
                        verdict_name(e.verdict),
                    ]);
                }
            }
            VerifyDoc::Iso { bound, polytope, report } => t.push(vec![
                polytope.clone(),
                bound.to_string(),
                String::new(),
                "lower".into(),
                float(report.bound),
                String::new(),
                float(report.ratio),
                String::new(),
                float(report.relative_slack),
                String::new(),
                verdict_name(report.verdict),
            ]),
            VerifyDoc::SurfaceMin { bound, polytope, report } => t.push(vec![
                polytope.clone(),
                bound.to_string(),
                String::new(),
                "lower".into(),
                float(report.bound_value),
                report.bound.to_string(),
                float(report.surface_value),
                report.surface.to_string(),
                float(report.relative_slack),
                String::new(),
                verdict_name(report.verdict),
            ]),
        }
    }
    t
}

#[derive(Serialize)]
struct WitnessDoc<'a> {
    a1: u64,
    a2: u64,
    construction: &'static str,
    polytope: &'a VPolytope,
    hstar: HStar,
}

pub fn witness(a1: u64, a2: u64, output: &Output) -> Outcome {
    let p = match bounds::degree2_witness(a1, a2) {
        Ok(p) => p,
        Err(BoundError::Inadmissible(msg)) => return Err(Failure::Inadmissible(msg)),
        Err(e) => return Err(Failure::Input(anyhow!(e))),
    };
    let construction = match (a1, a2) {
        (7, 1) => "triangle",
        _ if a2 < a1 => "pentagon",
        _ => "tetrahedron",
    };
    let h = hstar_from_counts(&p).map_err(|e| Failure::Input(anyhow!(e)))?;
    let (c1, c2) = (
        i64::try_from(a1).map_err(|_| anyhow!("a1 out of range"))?,
        i64::try_from(a2).map_err(|_| anyhow!("a2 out of range"))?,
    );
    let expected = HStar::new(p.dim(), &[1, c1, c2]).map_err(|e| Failure::Input(anyhow!(e)))?;
    if h != expected {
        return Err(Failure::Invariant(format!("witness has h* = {h}, expected {expected}")));
    }
    let doc = WitnessDoc { a1, a2, construction, polytope: &p, hstar: h };
    output.emit(&doc, || {
        let mut t = Table::new(&["kind", "index", "value"]);
        for (i, g) in p.generators().iter().enumerate() {
            t.push(vec!["generator".into(), i.to_string(), joined(g.iter())]);
        }
        for (i, a) in doc.hstar.coeffs.iter().enumerate() {
            t.push(vec!["hstar".into(), i.to_string(), a.to_string()]);
        }
        t
    })?;
    Ok(())
}

#[derive(Serialize)]
struct SurfaceDoc {
    id: String,
    dim: usize,
    surface: SqrtSum,
    surface_value: String,
    #[serde(with = "serde_rat")]
    lattice_surface: Rat,
    facets: Vec<FacetArea>,
}

pub fn surface(source: &Source, output: &Output) -> Outcome {
    let (members, many) = source.members(false)?;
    let results = map_members(&members, |m| {
        let p = &m.polytope;
        let d = p.dim();
        let facets = surface::facet_areas(p)?;
        let lattice = surface::lattice_surface_of(&facets);
        let mut failures = Vec::new();
        let g_top = ehrhart::ehrhart_poly(p)?.coeff(d - 1).clone();
        if g_top != lattice {
            failures.push(format!("lattice surface {} != g_(d-1) = {}", fmt_rat(&lattice), fmt_rat(&g_top)));
        }
        if !surface::minkowski_sum(&facets).is_zero() {
            failures.push("sum of k_i a_i is not zero".to_string());
        }
        let total: SqrtSum = facets.iter().map(|f| f.euclid_area.clone()).sum();
        let doc = SurfaceDoc {
            id: m.id.clone(),
            dim: d,
            surface_value: format!("{:.prec$}", total.to_f64(), prec = PLACES as usize),
            surface: total,
            lattice_surface: lattice,
            facets,
        };
        Ok((doc, failures))
    })?;
    let failures: Vec<String> =
        results.iter().flat_map(|(doc, f)| f.iter().map(move |msg| format!("{}: {msg}", doc.id))).collect();
    if !failures.is_empty() {
        return Err(Failure::Invariant(failures.join("; ")));
    }
    let docs: Vec<SurfaceDoc> = results.into_iter().map(|(doc, _)| doc).collect();
    output.emit(&shape(&docs, many), || {
        let mut t = Table::new(&[
            "id",
            "facet",
            "normal",
            "offset",
            "k",
            "lattice_area",
            "lattice_area_exact",
            "euclid_area",
            "euclid_area_exact",
        ]);
        for doc in &docs {
            for (i, f) in doc.facets.iter().enumerate() {
                let [ld, lx] = rat_cols(&f.lattice_area);
                t.push(vec![
                    doc.id.clone(),
                    i.to_string(),
                    joined(f.facet.normal.iter()),
                    f.facet.offset.to_string(),
                    f.k.to_string(),
                    ld,
                    lx,
                    float(f.euclid_area.to_f64()),
                    f.euclid_area.to_string(),
                ]);
            }
        }
        t
    })?;
    Ok(())
}

pub fn construct(source: &Source, output: &Output) -> Outcome {
    let (members, many) = source.members(false)?;
    let polytopes: Vec<VPolytope> = members.iter().map(|m| m.polytope.clone()).collect();
    output.emit(&shape(&polytopes, many), || {
        let width = polytopes.iter().map(VPolytope::dim).max().unwrap_or(0);
        let mut header = vec!["id".to_string(), "generator".to_string()];
        header.extend((1..=width).map(|i| format!("x{i}")));
        let refs: Vec<&str> = header.iter().map(String::as_str).collect();
        let mut t = Table::new(&refs);
        for m in &members {
            for (i, g) in m.polytope.generators().iter().enumerate() {
                let mut row = vec![m.id.clone(), i.to_string()];
                row.extend(g.iter().map(|x| x.to_string()));
                row.resize(width + 2, String::new());
                t.push(row);
            }
        }
        t
    })?;
    Ok(())
}
