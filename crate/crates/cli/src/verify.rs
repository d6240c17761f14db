//! Axiom and theorem checks over one file or a directory of files.

use std::collections::BTreeSet;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use tgs_core::checks::{merge_checks, Check};
use tgs_core::quotient::enumerate_congruences;
use tgs_core::theorems::{corpus_morphism_checks, correspondence_census, theorem_suite, Census};
use tgs_core::{canonical_form, verify_axioms, AnalysisConfig, AxiomReport, Caps, Error, GammaStructure, Result};

use crate::analysis::{checks_table, table, SCHEMA_VERSION};
use crate::claims::{evaluate_dir, ClaimOutcome, CLAIMS_FILE};
use crate::{exit, Suite};

/// Files in a directory that are never structures.
const SKIPPED: [&str; 2] = [CLAIMS_FILE, "report.json"];

/// Pairwise homomorphism checks only run on structures up to this order.
pub const MORPHISM_MAX_ORDER: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct FileVerdict {
    pub file: String,
    pub order: usize,
    pub gamma: usize,
    pub digest: String,
    pub axioms: AxiomReport,
    /// Named in a claims file, so failing axioms are a finding, not an error.
    pub exempt: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<Census>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub config: AnalysisConfig,
    pub files: Vec<FileVerdict>,
    /// Checks over pairs of structures.
    pub corpus: Vec<Check>,
    pub claims: Vec<ClaimOutcome>,
}

impl VerifyReport {
    pub fn axiom_failures(&self) -> impl Iterator<Item = &FileVerdict> {
        self.files.iter().filter(|f| !f.exempt && !f.axioms.passes())
    }

    pub fn violations(&self) -> Vec<(&str, &Check)> {
        let per_file = self
            .files
            .iter()
            .flat_map(|f| f.checks.iter().map(move |c| (f.file.as_str(), c)));
        let corpus = self.corpus.iter().map(|c| ("corpus", c));
        per_file.chain(corpus).filter(|(_, c)| c.is_violation()).collect()
    }

    pub fn conflicts(&self) -> impl Iterator<Item = &ClaimOutcome> {
        self.claims.iter().filter(|c| !c.agrees)
    }

    /// Axiom failures take precedence over failed assertions.
    pub fn exit_code(&self) -> u8 {
        if self.axiom_failures().next().is_some() {
            exit::AXIOMS
        } else if !self.violations().is_empty() {
            exit::ASSERTION
        } else {
            exit::OK
        }
    }

    pub fn failure_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .axiom_failures()
            .map(|f| format!("{}: axioms: {}", f.file, f.axioms.summary()))
            .collect();
        for (file, c) in self.violations() {
            out.push(format!("{file}: {}: {}", c.name, c.status_line()));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.files {
            out += &format!("== {} (order {}, |G| = {})\n", f.file, f.order, f.gamma);
            out += &format!("axioms: {}\n", f.axioms.summary());
            if f.exempt && !f.axioms.passes() {
                out += "named in the claims file: axiom failures are reported as conflicts\n";
            }
            if let Some(c) = &f.correspondence {
                out += &format!(
                    "congruences: {}  ideals: {}  shared zero classes: {}  round-trip failures: {}\n",
                    c.congruences,
                    c.ideals,
                    c.collisions.len(),
                    c.round_trip_failures
                );
            }
            if !f.checks.is_empty() {
                out += &checks_table(&f.checks);
            }
            out.push('\n');
        }
        if !self.corpus.is_empty() {
            out += "== structure pairs\n";
            out += &checks_table(&self.corpus);
            out.push('\n');
        }
        if !self.claims.is_empty() {
            out += "== published claims\n";
            let rows: Vec<Vec<String>> = self
                .claims
                .iter()
                .map(|c| {
                    let verdict = if c.agrees { "agrees" } else { "CONFLICT" };
                    vec![c.id.clone(), c.published.to_string(), short(&c.literal), verdict.to_string()]
                })
                .collect();
            out += &table(&["claim", "published", "literal", "verdict"], &rows);
            for c in self.conflicts() {
                let replay = match c.replayed {
                    Some(true) => "replays",
                    _ => "DOES NOT REPLAY",
                };
                let w = serde_json::to_string(&c.witness).expect("witness serializes");
                out += &format!("{}: {} [{replay}]\n  witness: {w}\n", c.id, c.statement);
            }
        }
        let conflicts = self.conflicts().count();
        out += &format!(
            "\nfiles: {}  axiom failures: {}  assertion failures: {}  claim conflicts: {}\n",
            self.files.len(),
            self.files.iter().filter(|f| !f.axioms.passes()).count(),
            self.violations().len(),
            conflicts
        );
        out
    }
}

fn short(v: &serde_json::Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 40 {
        s.chars().take(37).collect::<String>() + "..."
    } else {
        s
    }
}

pub fn verify_path(path: &Path, suite: Suite, config: &AnalysisConfig, caps: &Caps) -> Result<VerifyReport> {
    let (files, claims) = if path.is_dir() {
        let mut names: Vec<String> = Vec::new();
        for entry in std::fs::read_dir(path)? {
            let name = entry?.file_name().to_string_lossy().into_owned();
            if name.ends_with(".json") && !SKIPPED.contains(&name.as_str()) {
                names.push(name);
            }
        }
        names.sort();
        let claims = if path.join(CLAIMS_FILE).exists() {
            evaluate_dir(path, caps)?
        } else {
            Vec::new()
        };
        let files = names.into_iter().map(|n| (path.join(&n), n)).collect::<Vec<_>>();
        (files, claims)
    } else {
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        (vec![(path.to_path_buf(), name)], Vec::new())
    };
    let exempt: BTreeSet<&str> = claims.iter().map(|c| c.file.as_str()).collect();
    let loaded = files
        .iter()
        .map(|(p, n)| GammaStructure::read_file(p).map(|s| (n.clone(), s)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::Parse { line, column, message } => Error::Parse {
                line,
                column,
                message: format!("{}: {message}", path.display()),
            },
            e => e,
        })?;
    let verdicts = loaded
        .par_iter()
        .map(|(name, s)| verify_one(name, s, suite, config, caps, exempt.contains(name.as_str())))
        .collect::<Result<Vec<_>>>()?;
    let corpus = if suite == Suite::All {
        let valid: Vec<GammaStructure> = loaded
            .iter()
            .zip(&verdicts)
            .filter(|(_, v)| v.axioms.passes())
            .map(|((_, s), _)| s.clone())
            .collect();
        merge_checks(corpus_morphism_checks(&valid, MORPHISM_MAX_ORDER, caps)?.iter())
    } else {
        Vec::new()
    };
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        suite,
        config: *config,
        files: verdicts,
        corpus,
        claims,
    })
}

fn verify_one(
    name: &str,
    s: &GammaStructure,
    suite: Suite,
    config: &AnalysisConfig,
    caps: &Caps,
    exempt: bool,
) -> Result<FileVerdict> {
    let axioms = verify_axioms(s, true);
    let run_theorems = suite != Suite::Axioms && axioms.passes();
    let (checks, correspondence) = if run_theorems {
        let checks = theorem_suite(s, config, caps)?;
        let congruences = enumerate_congruences(s, caps)?;
        (checks, Some(correspondence_census(s, &congruences)))
    } else {
        (Vec::new(), None)
    };
    Ok(FileVerdict {
        file: name.to_string(),
        order: s.order(),
        gamma: s.gamma(),
        digest: canonical_form(s).digest(),
        axioms,
        exempt,
        checks,
        correspondence,
    })
}
