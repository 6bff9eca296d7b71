//! Report structures shared by the text and JSON output paths. Field order
//! is the JSON order; everything is deterministic for golden diffing.

use serde::Serialize;

use ellsurf::family::{DegenerationReport, TheoremVerdict, Verdict};
use ellsurf::places::Place;
use ellsurf::tate::{FiberConfiguration, KodairaFiber, SplitClass};
use ellsurf::{
    euler_number, render_rational, shioda_tate_rank, CoefficientField, LatticeJson,
    ZariskiReport,
};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct FiberRow {
    pub place: String,
    pub point: String,
    #[serde(rename = "type")]
    pub fiber_type: String,
    pub components: u32,
    pub euler: u32,
    pub split: String,
    pub delta_valuation: i64,
}

pub fn split_str(s: SplitClass) -> String {
    match s {
        SplitClass::Yes => "yes",
        SplitClass::No => "no",
        SplitClass::Unknown => "unknown",
        SplitClass::NotApplicable => "-",
    }
    .to_string()
}

/// "t = 1"-style column for linear places, "pi(t) = 0" otherwise.
pub fn place_point<F: CoefficientField>(place: &Place<F>, vars: &[&str]) -> String {
    let t = vars.last().copied().unwrap_or("t");
    match place {
        Place::Infinite => format!("{t} = infinity"),
        Place::Finite(fp) => match fp.linear_root() {
            Some(root) => {
                let coeff_vars = &vars[..vars.len() - 1];
                format!("{t} = {}", root.render(coeff_vars))
            }
            None => format!("{} = 0", fp.polynomial().render(vars)),
        },
    }
}

pub fn fiber_row<F: CoefficientField>(fiber: &KodairaFiber<F>, vars: &[&str]) -> FiberRow {
    FiberRow {
        place: fiber.place.render(vars),
        point: place_point(&fiber.place, vars),
        fiber_type: fiber.fiber_type.label(),
        components: fiber.components,
        euler: fiber.euler,
        split: split_str(fiber.split),
        delta_valuation: fiber.delta_valuation,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnresolvedRow {
    pub factor: String,
    pub delta_valuation: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigurationReport {
    pub base_field: String,
    pub fibers: Vec<FiberRow>,
    pub unresolved: Vec<UnresolvedRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_number: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_divisible_by_12: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shioda_tate_rank: Option<i64>,
}

pub fn configuration_report<F: CoefficientField>(
    cfg: &FiberConfiguration<F>,
    base_field: &str,
    vars: &[&str],
) -> ConfigurationReport {
    let fibers = cfg.fibers.iter().map(|f| fiber_row(f, vars)).collect();
    let unresolved = cfg
        .unresolved
        .iter()
        .map(|u| UnresolvedRow {
            factor: u.factor.render(vars),
            delta_valuation: u.delta_valuation,
        })
        .collect();
    let (euler, div12, rank) = if cfg.unresolved.is_empty() {
        let e = euler_number(cfg).expect("no unresolved places");
        let r = shioda_tate_rank(cfg, true).expect("no unresolved places");
        (Some(e), Some(e % 12 == 0), Some(r))
    } else {
        (None, None, None)
    };
    ConfigurationReport {
        base_field: base_field.to_string(),
        fibers,
        unresolved,
        euler_number: euler,
        euler_divisible_by_12: div12,
        shioda_tate_rank: rank,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub schema: String,
    pub command: String,
    pub configuration: ConfigurationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchRow {
    pub special_place: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_type: Option<String>,
    pub generic_places: Vec<String>,
    pub generic_types: Vec<String>,
    pub strict_degeneration: bool,
    pub delta_valuation_conserved: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecializationReport {
    pub a0: String,
    pub configuration: ConfigurationReport,
    pub matches: Vec<MatchRow>,
    pub strict_degenerations: Vec<String>,
}

pub fn match_rows(report: &DegenerationReport, param: &str) -> Vec<MatchRow> {
    report
        .matches
        .iter()
        .map(|m| MatchRow {
            special_place: m.entry.special_place.render(&["t"]),
            special_type: m
                .entry
                .special_fiber
                .as_ref()
                .map(|s| s.fiber_type.label()),
            generic_places: m
                .entry
                .generic
                .iter()
                .map(|g| g.place.render(&[param, "t"]))
                .collect(),
            generic_types: m
                .entry
                .generic
                .iter()
                .map(|g| g.fiber_type.label())
                .collect(),
            strict_degeneration: m.strict,
            delta_valuation_conserved: m.delta_valuation_conserved,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub schema: String,
    pub command: String,
    pub parameter: String,
    pub excluded: Vec<String>,
    pub generic: ConfigurationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub specialization: Option<SpecializationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub pass: bool,
    #[serde(rename = "type")]
    pub fiber_type: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicative_order: Option<u32>,
    pub split: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub schema: String,
    pub command: String,
    pub place: String,
    pub a0: String,
    pub condition1: ConditionReport,
    pub condition2: ConditionReport,
    pub nf_rank: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub external_ns_rank: Option<i64>,
    pub ns_caveat: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    pub verdict: Verdict,
}

pub fn theorem_report(
    verdict: &TheoremVerdict,
    place: String,
    a0: &ellsurf::Rational,
) -> TheoremReport {
    TheoremReport {
        schema: SCHEMA.to_string(),
        command: "theorem".to_string(),
        place,
        a0: render_rational(a0),
        condition1: ConditionReport {
            pass: verdict.condition1.pass,
            fiber_type: verdict.generic_type.label(),
            multiplicative_order: verdict.condition1.order,
            split: split_str(verdict.condition1.split),
        },
        condition2: ConditionReport {
            pass: verdict.condition2.pass,
            fiber_type: verdict.special_type.label(),
            multiplicative_order: verdict.condition2.order,
            split: split_str(verdict.condition2.split),
        },
        nf_rank: verdict.nf_rank,
        external_ns_rank: verdict.external_ns_rank,
        ns_caveat: verdict.ns_caveat.clone(),
        obstruction: verdict.obstruction.clone(),
        verdict: verdict.verdict,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionReport {
    pub touched: usize,
    pub normalized: usize,
    pub a: Vec<String>,
    pub det_a: String,
    pub det_a11: String,
    pub certificate: bool,
    pub symbolic_boundary: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub schema: String,
    pub command: String,
    pub lattice: LatticeJson,
    pub zariski: ZariskiReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<SolutionReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub schema: String,
    pub command: String,
    pub c: String,
    pub vanishing_order: usize,
    pub winding: i64,
    pub cycle: ellsurf::PolygonCycleJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub schema: String,
    pub command: String,
    pub family: FamilyReport,
    pub nf_rank_generic: i64,
    pub nf_rank_special: i64,
    pub theorem: TheoremReport,
}

// ---------------------------------------------------------------- text ---

fn table(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return String::new();
    }
    let cols = rows[0].len();
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for (idx, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{:width$}", cell, width = widths[i]))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
        if idx == 0 {
            let sep: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&sep.join("-+-"));
            out.push('\n');
        }
    }
    out
}

pub fn configuration_text(cfg: &ConfigurationReport) -> String {
    let mut rows = vec![vec![
        "place".to_string(),
        "type".to_string(),
        "m_v".to_string(),
        "e_v".to_string(),
        "split".to_string(),
        "v(delta)".to_string(),
    ]];
    for f in &cfg.fibers {
        rows.push(vec![
            f.point.clone(),
            f.fiber_type.clone(),
            f.components.to_string(),
            f.euler.to_string(),
            f.split.clone(),
            f.delta_valuation.to_string(),
        ]);
    }
    let mut out = format!("base field: {}\n", cfg.base_field);
    out.push_str(&table(&rows));
    for u in &cfg.unresolved {
        out.push_str(&format!(
            "unresolved place: {} = 0 (v(delta) = {}); assert irreducibility to classify\n",
            u.factor, u.delta_valuation
        ));
    }
    if let Some(e) = cfg.euler_number {
        out.push_str(&format!(
            "euler number: {e} (divisible by 12: {})\n",
            if cfg.euler_divisible_by_12 == Some(true) {
                "yes"
            } else {
                "NO"
            }
        ));
    }
    if let Some(r) = cfg.shioda_tate_rank {
        out.push_str(&format!("shioda-tate fibral rank: {r}\n"));
    }
    out
}

pub fn theorem_text(r: &TheoremReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("place: {}   a0 = {}\n", r.place, r.a0));
    out.push_str(&format!(
        "condition (1): {} - generic fiber {} split {}{}\n",
        if r.condition1.pass { "PASS" } else { "FAIL" },
        r.condition1.fiber_type,
        r.condition1.split,
        r.condition1
            .multiplicative_order
            .map(|n| format!(" (n = {n})"))
            .unwrap_or_default(),
    ));
    out.push_str(&format!(
        "condition (2): {} - special fiber {}{}\n",
        if r.condition2.pass { "PASS" } else { "FAIL" },
        r.condition2.fiber_type,
        r.condition2
            .multiplicative_order
            .map(|m| format!(" (m = {m})"))
            .unwrap_or_default(),
    ));
    out.push_str(&format!("fibral rank NF: {}\n", r.nf_rank));
    match r.external_ns_rank {
        Some(ns) => out.push_str(&format!("external NS rank: {ns}\n")),
        None => out.push_str("external NS rank: not supplied\n"),
    }
    out.push_str(&format!("note: {}\n", r.ns_caveat));
    if let Some(obs) = &r.obstruction {
        out.push_str(&format!("obstruction: {obs}\n"));
    }
    out.push_str(&format!("verdict: {:?}\n", r.verdict));
    out
}

pub fn matches_text(rows: &[MatchRow]) -> String {
    let mut out = String::new();
    for m in rows {
        let generic: Vec<String> = m
            .generic_places
            .iter()
            .zip(&m.generic_types)
            .map(|(p, t)| format!("{p} [{t}]"))
            .collect();
        out.push_str(&format!(
            "  {} <- {}  special type {}{}{}\n",
            m.special_place,
            if generic.is_empty() {
                "(no generic place)".to_string()
            } else {
                generic.join(", ")
            },
            m.special_type.clone().unwrap_or_else(|| "I0".to_string()),
            if m.strict_degeneration {
                "  STRICT DEGENERATION"
            } else {
                ""
            },
            if m.delta_valuation_conserved {
                ""
            } else {
                "  (v(delta) not conserved)"
            },
        ));
    }
    out
}

pub fn lattice_text(r: &LatticeReport) -> String {
    let mut out = String::new();
    out.push_str("gram matrix:\n");
    for (row, (label, mult)) in r.lattice.gram.iter().zip(
        r.lattice
            .labels
            .as_ref()
            .expect("labels always set on export")
            .iter()
            .zip(&r.lattice.r),
    ) {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:3}")).collect();
        out.push_str(&format!("  {label:<4} r={mult}  [{}]\n", cells.join(", ")));
    }
    let z = &r.zariski;
    out.push_str(&format!(
        "zariski: negative semidefinite: {}; fiber class in radical: {}; radical rank one: {}; one-deleted submatrices negative definite: {}\n",
        z.negative_semidefinite,
        z.fiber_class_in_radical,
        z.radical_rank_one,
        z.deleted_submatrices_negative_definite
    ));
    out.push_str(&format!(
        "deleted-determinant signs: {:?}\n",
        z.deleted_det_signs
    ));
    if let Some(sol) = &r.solution {
        out.push_str(&format!(
            "boundary system: touched C{} , normalized C{}\n",
            sol.touched, sol.normalized
        ));
        out.push_str(&format!("  a = ({})\n", sol.a.join(", ")));
        out.push_str(&format!(
            "  det A = {} , det A11 = {}\n",
            sol.det_a, sol.det_a11
        ));
        out.push_str(&format!(
            "  certificate a_touched != a_normalized: {}\n",
            sol.certificate
        ));
        for term in &sol.symbolic_boundary {
            out.push_str(&format!("  + symbolic: {term}\n"));
        }
    }
    out
}

pub fn cycle_text(r: &CycleReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("c(s) = {}\n", r.c));
    out.push_str(&format!("ord_s(c) = {}\n", r.vanishing_order));
    out.push_str(&format!("winding number: {}\n", r.winding));
    for (i, comp) in r.cycle.components.iter().enumerate() {
        out.push_str(&format!(
            "component {}: f = {}  marked points u = {} , u = {}\n",
            i + 1,
            comp.function,
            comp.marked_minus,
            comp.marked_plus
        ));
    }
    out
}
