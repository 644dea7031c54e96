//! Decision procedures on a stratification: exactness of the gluing
//! functors, Ext comparison along the recollements, ε-stratified status,
//! vanishing of `Ext(Δ_ε, ∇_ε)` and highest weight detection.

mod exactness;
mod highest_weight;
mod homological;
mod stratified;

#[cfg(test)]
mod tests;

use serde::Serialize;

use crate::error::Result;
use crate::exactla::Field;
use crate::modcat::Verdict;
use crate::strat::{SearchMode, Sign, Stratification};

pub use exactness::{Exactness, ExactnessCertificate, Side};
pub use highest_weight::{highest_weight_survey, is_highest_weight, AxiomCheck, HighestWeight, SurveyEntry, MAX_SURVEY_POSET};
pub use homological::{
    compare_ext, AuxiliaryEntry, ComparisonEntry, ExtComparison, HomologicalReport, Instance, SplitCheck, SplitOutcome,
    DEFAULT_N_MAX,
};
pub use stratified::{
    sign_patterns, EpsilonReport, ExtEntry, Route, RouteOutcome, TheoremInputs, VanishingTable, VertexFiltration,
    MAX_SIGN_ENUMERATION,
};

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// `None` enumerates every sign pattern.
    pub signs: Option<Vec<Sign>>,
    pub n_max: usize,
    pub search: SearchMode,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { signs: None, n_max: DEFAULT_N_MAX, search: SearchMode::Heuristic }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n_max: usize,
    pub exactness: Vec<Exactness>,
    /// Ext comparisons through degree `n_max`, with the auxiliary check.
    pub homological: HomologicalReport,
    pub homological_through_n_max: bool,
    pub epsilon: Vec<EpsilonReport>,
    /// One table per sign pattern whose verdict is YES.
    pub vanishing: Vec<VanishingTable>,
    pub highest_weight: HighestWeight,
    /// Route disagreements and failed consistency checks.
    pub falsifications: Vec<String>,
}

impl AnalysisReport {
    pub fn is_consistent(&self) -> bool {
        self.falsifications.is_empty()
    }
}

impl<F: Field> Stratification<F> {
    /// Run every analysis and cross-check the results against each other.
    pub fn analyze(&self, opts: &AnalysisOptions) -> Result<AnalysisReport> {
        let patterns = match &opts.signs {
            Some(s) => vec![s.clone()],
            None => sign_patterns(self.poset().len())?,
        };
        let homological = self.is_k_homological(opts.n_max.max(2), Some(opts.n_max))?;
        let mut exactness = Vec::new();
        for lam in 0..self.poset().len() {
            for side in [Side::Shriek, Side::Lower] {
                exactness.push(self.exactness_check(lam, side)?);
            }
        }
        let inputs = TheoremInputs { exactness: exactness.clone(), homological: homological.clone() };
        let mut falsifications = Vec::new();
        let mut epsilon = Vec::new();
        let mut vanishing = Vec::new();
        for signs in &patterns {
            let report = self.epsilon_report(signs, &inputs, opts.search)?;
            falsifications.extend(report.falsification.clone());
            if report.verdict() == Verdict::Yes {
                let table = self.bs_vanishing_check(signs, opts.n_max)?;
                if !table.vanishes() {
                    falsifications.push(format!(
                        "signs {signs:?} are stratified but Ext(Δ_ε, ∇_ε) has nonzero entries {:?}",
                        table.nonzero_higher()
                    ));
                }
                vanishing.push(table);
            }
            epsilon.push(report);
        }
        let highest_weight = self.highest_weight(Some(&homological), opts.search)?;
        falsifications.extend(highest_weight.falsification.clone());
        let all_yes = |sign: Sign| {
            epsilon.iter().any(|e| e.signs.iter().all(|s| *s == sign) && e.verdict() == Verdict::Yes)
        };
        let thin = self.strata().iter().all(|s| self.stratum_category(s.label).algebra().dim() == 1);
        if all_yes(Sign::Plus) && all_yes(Sign::Minus) && thin && homological.holds_through(2) && highest_weight.verdict() != Verdict::Yes {
            falsifications.push("stratified for both constant signs with one-dimensional strata, yet not highest weight".into());
        }
        Ok(AnalysisReport {
            n_max: opts.n_max,
            homological_through_n_max: homological.holds_through(opts.n_max),
            exactness,
            homological,
            epsilon,
            vanishing,
            highest_weight,
            falsifications,
        })
    }
}
