//! Enumerate, deduplicate and summarize every structure of a given size.

use rayon::prelude::*;
use serde::Serialize;
use tgs_core::enumerate::{deduplicate, enumerate_structures, SearchOptions};
use tgs_core::quotient::enumerate_congruences;
use tgs_core::radicals::{is_semisimple, jacobson_radical};
use tgs_core::spectrum::{connected_components, find_idempotents, is_simple};
use tgs_core::theorems::correspondence_census;
use tgs_core::{Caps, Error, GammaStructure, PrimaryParams, Result};

use crate::analysis::{table, SCHEMA_VERSION};

/// Published counts for one parameter, by order.
struct PublishedRow {
    order: usize,
    structures: usize,
    simple: usize,
    semisimple: usize,
    spec_label: &'static str,
    spec_points: usize,
}

const PUBLISHED: [PublishedRow; 3] = [
    PublishedRow { order: 2, structures: 1, simple: 1, semisimple: 1, spec_label: "1-point", spec_points: 1 },
    PublishedRow { order: 3, structures: 3, simple: 1, semisimple: 2, spec_label: "2-point", spec_points: 2 },
    PublishedRow { order: 4, structures: 6, simple: 2, semisimple: 4, spec_label: "up to 3-points", spec_points: 3 },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    pub index: usize,
    pub file: String,
    pub digest: String,
    pub additive_group: bool,
    pub ideals: usize,
    pub primes: usize,
    pub semiprimes: usize,
    pub maximals: usize,
    pub jacobson_radical_size: usize,
    pub idempotents: usize,
    pub simple: bool,
    pub semisimple: bool,
    pub spec_points: usize,
    pub spec_components: usize,
    pub congruences: usize,
    pub round_trip_failures: usize,
    pub shared_zero_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub quantity: String,
    pub published: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub order: usize,
    pub gamma: usize,
    pub gamma_relabeling: bool,
    /// Set when a cap stopped the run; counts below are then incomplete.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<String>,
    pub additive_monoids: usize,
    pub before_deduplication: usize,
    pub non_isomorphic: usize,
    pub simple: usize,
    pub semisimple: usize,
    pub max_spec_points: usize,
    pub with_shared_zero_classes: usize,
    pub structures: Vec<StructureSummary>,
    pub comparison: Vec<ComparisonRow>,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub caps: Caps,
    pub jobs: usize,
    pub node_limit: Option<u64>,
    pub gamma_relabeling: bool,
}

/// Report plus the representatives it describes, in report order.
#[derive(Clone, Debug)]
pub struct Classification {
    pub report: ClassificationReport,
    pub representatives: Vec<GammaStructure>,
}

pub fn classify(order: usize, gamma: usize, opts: &ClassifyOptions) -> Result<Classification> {
    let search = SearchOptions {
        caps: opts.caps,
        jobs: opts.jobs,
        node_limit: opts.node_limit,
    };
    let mut report = ClassificationReport {
        schema_version: SCHEMA_VERSION,
        order,
        gamma,
        gamma_relabeling: opts.gamma_relabeling,
        partial: None,
        additive_monoids: 0,
        before_deduplication: 0,
        non_isomorphic: 0,
        simple: 0,
        semisimple: 0,
        max_spec_points: 0,
        with_shared_zero_classes: 0,
        structures: Vec::new(),
        comparison: Vec::new(),
    };
    let found = match enumerate_structures(order, gamma, &search) {
        Ok(found) => found,
        Err(e @ Error::Resource { .. }) => {
            report.partial = Some(e.to_string());
            return Ok(Classification { report, representatives: Vec::new() });
        }
        Err(e) => return Err(e),
    };
    let reps: Vec<GammaStructure> = deduplicate(&found.structures, opts.gamma_relabeling)
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    let summaries = in_pool(opts.jobs, || {
        reps.par_iter()
            .enumerate()
            .map(|(i, s)| summarize(i, s, &opts.caps))
            .collect::<Result<Vec<_>>>()
    })??;

    report.additive_monoids = found.monoids.len();
    report.before_deduplication = found.structures.len();
    report.non_isomorphic = reps.len();
    report.simple = summaries.iter().filter(|s| s.simple).count();
    report.semisimple = summaries.iter().filter(|s| s.semisimple).count();
    report.max_spec_points = summaries.iter().map(|s| s.spec_points).max().unwrap_or(0);
    report.with_shared_zero_classes = summaries.iter().filter(|s| s.shared_zero_classes > 0).count();
    report.structures = summaries;
    report.comparison = comparison(&report);
    Ok(Classification { report, representatives: reps })
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Input(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

pub fn summarize(index: usize, s: &GammaStructure, caps: &Caps) -> Result<StructureSummary> {
    let lattice = tgs_core::ideals::ideal_lattice(s, caps, PrimaryParams::default())?;
    let congruences = enumerate_congruences(s, caps)?;
    let census = correspondence_census(s, &congruences);
    let comps = connected_components(s, caps)?;
    Ok(StructureSummary {
        index,
        file: representative_file(index),
        digest: tgs_core::canonical_form(s).digest(),
        additive_group: s.is_additive_group(),
        ideals: lattice.ideals.len(),
        primes: lattice.primes().count(),
        semiprimes: lattice.semiprimes().count(),
        maximals: lattice.maximals().count(),
        jacobson_radical_size: jacobson_radical(s).len(),
        idempotents: find_idempotents(s).len(),
        simple: is_simple(s),
        semisimple: is_semisimple(s),
        spec_points: lattice.primes().count(),
        spec_components: comps.component_count,
        congruences: census.congruences,
        round_trip_failures: census.round_trip_failures,
        shared_zero_classes: census.collisions.len(),
    })
}

pub fn representative_file(index: usize) -> String {
    format!("s{index:04}.json")
}

fn comparison(r: &ClassificationReport) -> Vec<ComparisonRow> {
    let Some(p) = PUBLISHED.iter().find(|p| p.order == r.order && r.gamma == 1) else {
        return Vec::new();
    };
    let row = |quantity: &str, published: String, computed: usize, matches: bool| ComparisonRow {
        quantity: quantity.to_string(),
        published,
        computed: computed.to_string(),
        matches,
    };
    vec![
        row("structures", p.structures.to_string(), r.non_isomorphic, p.structures == r.non_isomorphic),
        row("simple", p.simple.to_string(), r.simple, p.simple == r.simple),
        row("semisimple", p.semisimple.to_string(), r.semisimple, p.semisimple == r.semisimple),
        row("largest Spec", p.spec_label.to_string(), r.max_spec_points, p.spec_points == r.max_spec_points),
    ]
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("classification: order {}, |G| = {}\n", self.order, self.gamma);
        if let Some(p) = &self.partial {
            out += &format!("PARTIAL: {p}\n");
        }
        out += &format!(
            "additive monoids: {}\nstructures before deduplication: {}\nnon-isomorphic structures: {}\n",
            self.additive_monoids, self.before_deduplication, self.non_isomorphic
        );
        out += &format!(
            "simple: {}  semisimple: {}  largest Spec: {} points  shared zero classes in {} structures\n",
            self.simple, self.semisimple, self.max_spec_points, self.with_shared_zero_classes
        );
        if !self.comparison.is_empty() {
            let rows: Vec<Vec<String>> = self
                .comparison
                .iter()
                .map(|c| {
                    let flag = if c.matches { "match" } else { "MISMATCH" };
                    vec![c.quantity.clone(), c.published.clone(), c.computed.clone(), flag.to_string()]
                })
                .collect();
            out.push('\n');
            out += &table(&["quantity", "published", "computed", "flag"], &rows);
        }
        if !self.structures.is_empty() {
            let rows: Vec<Vec<String>> = self
                .structures
                .iter()
                .map(|s| {
                    let flag = |b: bool| if b { "y" } else { "n" }.to_string();
                    vec![
                        s.file.clone(),
                        s.ideals.to_string(),
                        s.primes.to_string(),
                        s.semiprimes.to_string(),
                        s.maximals.to_string(),
                        s.jacobson_radical_size.to_string(),
                        s.idempotents.to_string(),
                        flag(s.simple),
                        flag(s.semisimple),
                        s.spec_components.to_string(),
                        s.congruences.to_string(),
                        s.shared_zero_classes.to_string(),
                    ]
                })
                .collect();
            out.push('\n');
            out += &table(
                &["file", "ideals", "primes", "semiprimes", "maximals", "|J|", "idem", "simple", "ss", "comp", "cong", "shared"],
                &rows,
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(jobs: usize) -> ClassifyOptions {
        ClassifyOptions {
            caps: Caps::default(),
            jobs,
            node_limit: None,
            gamma_relabeling: false,
        }
    }

    #[test]
    fn order_one_is_trivial() {
        let c = classify(1, 1, &opts(0)).unwrap();
        assert_eq!(c.report.non_isomorphic, 1);
        assert!(!c.report.structures[0].simple);
        assert!(c.report.comparison.is_empty());
    }

    #[test]
    fn order_two_against_published() {
        let r = classify(2, 1, &opts(0)).unwrap().report;
        assert_eq!(r.additive_monoids, 2);
        assert_eq!(r.non_isomorphic, 4);
        let row = &r.comparison[0];
        assert_eq!((row.published.as_str(), row.computed.as_str(), row.matches), ("1", "4", false));
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let a = classify(3, 1, &opts(1)).unwrap().report.to_json();
        let b = classify(3, 1, &opts(3)).unwrap().report.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn node_limit_marks_partial() {
        let mut o = opts(1);
        o.node_limit = Some(10);
        let r = classify(4, 1, &o).unwrap().report;
        assert!(r.partial.is_some());
        assert!(r.to_text().contains("PARTIAL"));
    }
}
