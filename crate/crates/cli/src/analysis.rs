//! Full per-structure report: axioms, ideals, radicals, congruences,
//! spectrum, decompositions and the theorem suite.

use std::fmt::Write as _;

use serde::Serialize;
use tgs_core::checks::{Check, CheckKind};
use tgs_core::ideals::{ideal_lattice, IdealLattice, TripleWitness};
use tgs_core::quotient::{enumerate_congruences, zero_divisor};
use tgs_core::radicals::{is_semisimple, jacobson_radical, radical_report, RadicalReport};
use tgs_core::spectrum::{
    connected_components, crt_check, decompose_by_idempotent, find_idempotents, is_simple, spec, ComponentReport,
    CrtReport, Decomposition, SpectrumView,
};
use tgs_core::theorems::{comaximal_families, correspondence_census, theorem_suite, Census};
use tgs_core::{canonical_form, verify_axioms, AnalysisConfig, AxiomReport, Caps, ElementSet, GammaStructure, Result};

/// Bumped whenever a field of a serialized report changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    /// SHA-256 of the canonical form.
    pub digest: String,
    pub order: usize,
    pub gamma: usize,
    pub additive_group: bool,
    pub config: AnalysisConfig,
    pub axioms: AxiomReport,
    /// Everything below is absent when the axioms fail.
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub body: Option<AnalysisBody>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisBody {
    pub ideals: IdealLattice,
    pub radicals: Vec<RadicalReport>,
    pub jacobson_radical: ElementSet,
    pub semisimple: bool,
    pub simple: bool,
    pub congruences: Census,
    pub spectrum: SpectrumView,
    pub components: ComponentReport,
    pub idempotents: ElementSet,
    pub decompositions: Vec<Decomposition>,
    pub crt: Vec<CrtReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_divisor: Option<TripleWitness>,
    pub theorems: Vec<Check>,
    /// Names of reported checks that fail here.
    pub discrepancies: Vec<String>,
}

impl AnalysisReport {
    pub fn axioms_pass(&self) -> bool {
        self.axioms.passes()
    }

    /// Asserted checks with at least one failure.
    pub fn violations(&self) -> Vec<&Check> {
        self.body
            .iter()
            .flat_map(|b| b.theorems.iter())
            .filter(|c| c.is_violation())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "structure {} (order {}, |G| = {})", &self.digest[..16], self.order, self.gamma);
        let _ = writeln!(out, "additive group: {}", yes_no(self.additive_group));
        let _ = writeln!(out, "axioms: {}", self.axioms.summary());
        let Some(b) = &self.body else {
            return out;
        };
        out.push('\n');
        let rows: Vec<Vec<String>> = b
            .ideals
            .ideals
            .iter()
            .zip(&b.ideals.tags)
            .map(|(i, t)| {
                let rad = b.radicals.iter().find(|r| r.ideal == *i).expect("radical per ideal");
                vec![
                    i.to_string(),
                    t.badges().join(" "),
                    rad.by_primes.to_string(),
                    rad.by_elements.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["ideal", "tags", "radical (primes)", "radical (elements)"], &rows));
        out.push('\n');
        let _ = writeln!(out, "Jacobson radical: {}", b.jacobson_radical);
        let _ = writeln!(out, "semisimple: {}  simple: {}", yes_no(b.semisimple), yes_no(b.simple));
        let _ = writeln!(
            out,
            "congruences: {}  ideals: {}  round-trip failures: {}  shared zero classes: {}",
            b.congruences.congruences,
            b.congruences.ideals,
            b.congruences.round_trip_failures,
            b.congruences.collisions.len()
        );
        let points: Vec<String> = b.spectrum.points.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "Spec: [{}]", points.join(", "));
        let _ = writeln!(
            out,
            "components: {}  idempotents: {}",
            b.components.component_count, b.idempotents
        );
        for d in &b.decompositions {
            let comp = d.complement.map_or("none".to_string(), |c| c.to_string());
            let _ = writeln!(out, "  idempotent {}: generates {}, complement {}", d.idempotent, d.generated, comp);
        }
        for r in &b.crt {
            let fam: Vec<String> = r.ideals.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(
                out,
                "CRT {}: injective {}, surjective {}",
                fam.join(" x "),
                yes_no(r.injective),
                yes_no(r.surjective)
            );
        }
        match &b.zero_divisor {
            Some(w) => {
                let _ = writeln!(out, "zero divisors: {:?} with params {:?}", w.args, w.params);
            }
            None => {
                let _ = writeln!(out, "zero divisors: none");
            }
        }
        out.push('\n');
        out.push_str(&checks_table(&b.theorems));
        out
    }
}

pub fn checks_table(checks: &[Check]) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            let kind = match c.kind {
                CheckKind::Asserted => "asserted",
                CheckKind::Reported => "reported",
            };
            vec![kind.to_string(), c.name.clone(), c.status_line()]
        })
        .collect();
    table(&["kind", "check", "outcome"], &rows)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Plain ASCII table with left-aligned columns.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let rule: String = widths.iter().map(|w| format!("+{}", "-".repeat(w + 2))).collect::<String>() + "+\n";
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let mut s = String::new();
        for (cell, w) in cells.zip(&widths) {
            let pad = w - cell.chars().count();
            let _ = write!(s, "| {cell}{} ", " ".repeat(pad));
        }
        s + "|\n"
    };
    let mut out = rule.clone();
    out += &line(&mut header.iter().copied());
    out += &rule;
    for r in rows {
        out += &line(&mut r.iter().map(String::as_str));
    }
    out += &rule;
    out
}

pub fn analyze(s: &GammaStructure, config: &AnalysisConfig, caps: &Caps) -> Result<AnalysisReport> {
    caps.check_scan(s.order(), "analysis")?;
    let axioms = verify_axioms(s, true);
    let body = if axioms.passes() { Some(body(s, config, caps)?) } else { None };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        digest: canonical_form(s).digest(),
        order: s.order(),
        gamma: s.gamma(),
        additive_group: s.is_additive_group(),
        config: *config,
        axioms,
        body,
    })
}

fn body(s: &GammaStructure, config: &AnalysisConfig, caps: &Caps) -> Result<AnalysisBody> {
    let ideals = ideal_lattice(s, caps, config.primary_params)?;
    let radicals = ideals
        .ideals
        .iter()
        .map(|&i| radical_report(s, i, config.radical_iterate))
        .collect();
    let congruences = enumerate_congruences(s, caps)?;
    let idempotents = find_idempotents(s);
    let decompositions = idempotents
        .iter()
        .map(|e| decompose_by_idempotent(s, e))
        .collect::<Result<Vec<_>>>()?;
    let maximals: Vec<ElementSet> = ideals.maximals().collect();
    let crt = comaximal_families(s, &maximals)
        .iter()
        .map(|f| crt_check(s, f))
        .collect::<Result<Vec<_>>>()?;
    let theorems = theorem_suite(s, config, caps)?;
    let discrepancies = theorems
        .iter()
        .filter(|c| c.kind == CheckKind::Reported && !c.holds())
        .map(|c| c.name.clone())
        .collect();
    Ok(AnalysisBody {
        jacobson_radical: jacobson_radical(s),
        semisimple: is_semisimple(s),
        simple: is_simple(s),
        congruences: correspondence_census(s, &congruences),
        spectrum: spec(s, caps)?,
        components: connected_components(s, caps)?,
        zero_divisor: zero_divisor(s),
        ideals,
        radicals,
        idempotents,
        decompositions,
        crt,
        theorems,
        discrepancies,
    })
}
