use serde::Serialize;

/// A yes/no answer that carries a counterexample when the answer is no.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub(crate) fn from_counterexample(w: Option<W>) -> Self {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}
