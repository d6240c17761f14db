//! Outcome records for exhaustively checked statements.

use serde::Serialize;
use serde_json::Value;

/// Whether a failure is a bug (`Asserted`) or a finding (`Reported`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Asserted,
    Reported,
}

/// One statement checked over many cases. A failing check keeps the first
/// counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, kind: CheckKind) -> Self {
        Check {
            name: name.into(),
            kind,
            cases: 0,
            failures: 0,
            witness: None,
        }
    }

    pub fn asserted(name: impl Into<String>) -> Self {
        Self::new(name, CheckKind::Asserted)
    }

    pub fn reported(name: impl Into<String>) -> Self {
        Self::new(name, CheckKind::Reported)
    }

    /// Records one case. The witness closure runs only on the first failure.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> &mut Self {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
        self
    }

    pub fn holds(&self) -> bool {
        self.failures == 0
    }

    /// An asserted check that failed.
    pub fn is_violation(&self) -> bool {
        self.kind == CheckKind::Asserted && !self.holds()
    }

    /// Folds another run of the same statement into this one.
    pub fn absorb(&mut self, other: &Check) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness.clone_from(&other.witness);
        }
    }

    /// `"holds (12 cases)"` or `"FAILS 3/12: <witness>"`.
    pub fn status_line(&self) -> String {
        if self.holds() {
            format!("holds ({} cases)", self.cases)
        } else {
            let w = self.witness.as_ref().map(Value::to_string).unwrap_or_default();
            format!("FAILS {}/{}: {w}", self.failures, self.cases)
        }
    }
}

/// Merges checks by name, keeping first-seen order.
pub fn merge_checks<'a>(runs: impl IntoIterator<Item = &'a Check>) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    for c in runs {
        match out.iter_mut().find(|o| o.name == c.name) {
            Some(o) => o.absorb(c),
            None => out.push(c.clone()),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn first_witness_kept() {
        let mut c = Check::asserted("x");
        c.case(true, || json!(0)).case(false, || json!(1)).case(false, || json!(2));
        assert_eq!((c.cases, c.failures), (3, 2));
        assert_eq!(c.witness, Some(json!(1)));
        assert!(c.is_violation());
        assert_eq!(c.status_line(), "FAILS 2/3: 1");
    }

    #[test]
    fn merging() {
        let mut a = Check::reported("r");
        a.case(true, || json!(null));
        let mut b = Check::reported("r");
        b.case(false, || json!("w"));
        let merged = merge_checks([&a, &b]);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].cases, 2);
        assert!(!merged[0].is_violation());
        assert_eq!(merged[0].witness, Some(json!("w")));
    }
}
