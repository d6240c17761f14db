//! Switches for the places where a definition admits more than one reading.

use serde::Serialize;

/// Parameter quantification in the primary-ideal test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimaryParams {
    /// The cubes `b_α b_β b`, `c_α c_β c` reuse the product's parameters.
    #[default]
    Shared,
    /// Any parameter pair may be used for the cubes.
    Independent,
}

/// How the element-wise radical iterates the cube map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalIterate {
    /// `{a : a_α a_β a ∈ I for some α, β}`.
    #[default]
    Once,
    /// Repeat until no new element whose cube lands in the set appears.
    Fixpoint,
}

/// Which associativity law a module action is held to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleAssoc {
    /// `a_α (b_γ m_δ c)_β d = b_γ (a_α m_β d)_δ c`
    #[default]
    Surrogate,
    /// `a_α (b_γ m_δ c)_β d = (a_α b_γ c)_δ m_β d`
    Printed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    pub primary_params: PrimaryParams,
    pub radical_iterate: RadicalIterate,
    pub module_assoc: ModuleAssoc,
    /// Identify structures that differ by a relabeling of Γ.
    pub gamma_relabeling: bool,
}
