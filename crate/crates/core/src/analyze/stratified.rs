//! ε-stratified status by three independent routes, and the vanishing of
//! `Ext^n(Δ_ε, ∇_ε)`.

use serde::{Deserialize, Serialize};

use super::exactness::{Exactness, Side};
use super::homological::HomologicalReport;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::{RightModule, Verdict};
use crate::strat::{filtration_search, LayerMode, SearchMode, Sign, StandardFamily, Stratification};

/// Largest poset for which every sign pattern is enumerated.
pub const MAX_SIGN_ENUMERATION: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Exactness of the relevant `j_!`/`j_*` plus 2-homological recollements.
    Theorem,
    /// Filtrations of the projectives by `Δ_ε`.
    DirectDelta,
    /// Filtrations of the injectives by `∇_ε`, through the opposite algebra.
    DirectNabla,
}

/// A searched filtration of one indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexFiltration {
    pub vertex: String,
    pub found: bool,
    /// `Some(false)` only when an exhaustive search found nothing.
    pub decided: Option<bool>,
    pub layers: Vec<String>,
    /// Bases of `M_1 ⊂ M_2 ⊂ ...`, bottom first.
    pub chain: Vec<Vec<Vec<String>>>,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteOutcome {
    pub route: Route,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub filtrations: Vec<VertexFiltration>,
}

/// The parts of the theorem route that do not depend on the signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremInputs {
    /// Both sides for every stratum.
    pub exactness: Vec<Exactness>,
    pub homological: HomologicalReport,
}

impl TheoremInputs {
    fn exactness(&self, label: &str, side: Side) -> &Exactness {
        self.exactness.iter().find(|e| e.label == label && e.side == side).expect("both sides are computed")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonReport {
    pub signs: Vec<Sign>,
    pub theorem: RouteOutcome,
    pub direct_delta: RouteOutcome,
    pub direct_nabla: RouteOutcome,
    pub routes_agree: bool,
    /// Set when two decided routes disagree; never resolved automatically.
    pub falsification: Option<String>,
}

impl EpsilonReport {
    /// The common verdict, or `Undecided` if some route could not decide.
    pub fn verdict(&self) -> Verdict {
        let all = [self.theorem.verdict, self.direct_delta.verdict, self.direct_nabla.verdict];
        if !self.routes_agree {
            return Verdict::Undecided;
        }
        all.into_iter().find(|v| *v != Verdict::Undecided).unwrap_or(Verdict::Undecided)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub degree: usize,
    /// Vertex of the standard side.
    pub b: usize,
    /// Vertex of the costandard side.
    pub b2: usize,
    pub left: String,
    pub right: String,
    pub dim: usize,
}

/// `dim Ext^n(Δ_ε(b), ∇_ε(b'))` for every pair and `n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingTable {
    pub signs: Vec<Sign>,
    pub n_max: usize,
    pub entries: Vec<ExtEntry>,
    pub vertices: Vec<String>,
}

impl VanishingTable {
    pub fn dim(&self, degree: usize, b: usize, b2: usize) -> usize {
        self.entries.iter().find(|e| e.degree == degree && e.b == b && e.b2 == b2).map_or(0, |e| e.dim)
    }

    /// Nonzero entries in positive degree.
    pub fn nonzero_higher(&self) -> Vec<&ExtEntry> {
        self.entries.iter().filter(|e| e.degree > 0 && e.dim != 0).collect()
    }

    /// `Hom` is one-dimensional on the diagonal and zero elsewhere, and
    /// every higher `Ext` vanishes.
    pub fn vanishes(&self) -> bool {
        let n = self.vertices.len();
        self.nonzero_higher().is_empty()
            && (0..n).all(|b| (0..n).all(|c| self.dim(0, b, c) == usize::from(b == c)))
    }
}

/// All `2^n` sign patterns on `n` poset elements, `+` first.
pub fn sign_patterns(n: usize) -> Result<Vec<Vec<Sign>>> {
    if n > MAX_SIGN_ENUMERATION {
        return Err(Error::InvalidPoset(format!(
            "{n} elements: sign patterns are only enumerated up to {MAX_SIGN_ENUMERATION}"
        )));
    }
    Ok((0..1usize << n)
        .map(|bits| (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 0 { Sign::Plus } else { Sign::Minus }).collect())
        .collect())
}

fn sign_word(signs: &[Sign]) -> String {
    signs.iter().map(|s| if *s == Sign::Plus { '+' } else { '-' }).collect()
}

impl<F: Field> Stratification<F> {
    pub fn theorem_inputs(&self) -> Result<TheoremInputs> {
        let mut exactness = Vec::new();
        for lam in 0..self.poset().len() {
            for side in [Side::Shriek, Side::Lower] {
                exactness.push(self.exactness_check(lam, side)?);
            }
        }
        Ok(TheoremInputs { exactness, homological: self.is_k_homological(2, None)? })
    }

    /// One route for one sign pattern.
    pub fn is_epsilon_stratified(&self, signs: &[Sign], route: Route, search: SearchMode) -> Result<RouteOutcome> {
        match route {
            Route::Theorem => Ok(self.theorem_route(&self.theorem_inputs()?, signs)),
            Route::DirectDelta => self.with_signs(signs.to_vec())?.direct_delta(search, false),
            Route::DirectNabla => self.with_signs(signs.to_vec())?.opposite()?.direct_delta(search, true),
        }
    }

    /// All three routes with an agreement check.
    pub fn epsilon_report(&self, signs: &[Sign], inputs: &TheoremInputs, search: SearchMode) -> Result<EpsilonReport> {
        let theorem = self.theorem_route(inputs, signs);
        let direct_delta = self.is_epsilon_stratified(signs, Route::DirectDelta, search)?;
        let direct_nabla = self.is_epsilon_stratified(signs, Route::DirectNabla, search)?;
        let decided: Vec<&RouteOutcome> =
            [&theorem, &direct_delta, &direct_nabla].into_iter().filter(|r| r.verdict != Verdict::Undecided).collect();
        let clash = decided.windows(2).find(|w| w[0].verdict != w[1].verdict);
        let falsification = clash.map(|w| {
            format!(
                "signs {}: {:?} says {:?} but {:?} says {:?}",
                sign_word(signs),
                w[0].route,
                w[0].verdict,
                w[1].route,
                w[1].verdict
            )
        });
        Ok(EpsilonReport {
            signs: signs.to_vec(),
            routes_agree: falsification.is_none(),
            falsification,
            theorem,
            direct_delta,
            direct_nabla,
        })
    }

    fn theorem_route(&self, inputs: &TheoremInputs, signs: &[Sign]) -> RouteOutcome {
        let mut witness = None;
        for (lam, sign) in signs.iter().enumerate() {
            let side = Side::for_sign(*sign);
            let e = inputs.exactness(self.poset().label(lam), side);
            if !e.exact {
                witness = Some(format!("{} at '{}' is not exact: {:?}", side.functor(), e.label, e.certificate));
                break;
            }
        }
        if witness.is_none() {
            if let Some(w) = inputs.homological.witness_through(2) {
                witness = Some(format!(
                    "not 2-homological at {:?} with maximal '{}': Ext^{}({}, {}) has dims {} -> {} and rank {}",
                    w.instance.lower_set,
                    w.instance.maximal,
                    w.comparison.degree,
                    w.x,
                    w.y,
                    w.comparison.source_dim,
                    w.comparison.target_dim,
                    w.comparison.rank
                ));
            }
        }
        RouteOutcome {
            route: Route::Theorem,
            verdict: if witness.is_some() { Verdict::No } else { Verdict::Yes },
            witness,
            filtrations: Vec::new(),
        }
    }

    /// Search a `Δ_ε`-filtration of every `P(b)` with layers `Δ_ε(b')`, `ρ(b') >= ρ(b)`.
    /// `dual` only changes how witnesses are worded.
    fn direct_delta(&self, search: SearchMode, dual: bool) -> Result<RouteOutcome> {
        let family = self.standard_objects()?;
        let cat = self.category();
        let names = self.algebra().vertex_names();
        let mut filtrations = Vec::new();
        let mut verdict = Verdict::Yes;
        let mut witness = None;
        for b in 0..names.len() {
            let allowed = self.allowed_standards(&family, b, dual);
            let outcome = filtration_search(cat, &cat.projective(b), &allowed, LayerMode::Exact, search)?;
            let chain = outcome.certificate.as_ref().map_or_else(Vec::new, |c| {
                c.layers
                    .iter()
                    .map(|l| l.upper.basis().row_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
                    .collect()
            });
            filtrations.push(VertexFiltration {
                vertex: names[b].clone(),
                found: outcome.found(),
                decided: outcome.decided(),
                layers: outcome.layer_names(),
                chain,
                nodes: outcome.nodes,
            });
            if outcome.found() {
                continue;
            }
            let what = if dual {
                format!("I({}) has no ∇_ε-filtration (searched as P({}) over the opposite algebra)", names[b], names[b])
            } else {
                format!("P({}) has no Δ_ε-filtration", names[b])
            };
            if outcome.decided() == Some(false) {
                if verdict != Verdict::No {
                    witness = Some(format!("{what}; exhaustive search over {} states", outcome.nodes));
                }
                verdict = Verdict::No;
            } else if verdict == Verdict::Yes {
                verdict = Verdict::Undecided;
                witness = Some(format!("{what} found by the heuristic search"));
            }
        }
        let route = if dual { Route::DirectNabla } else { Route::DirectDelta };
        Ok(RouteOutcome { route, verdict, witness, filtrations })
    }

    fn allowed_standards(&self, family: &StandardFamily<F>, b: usize, dual: bool) -> Vec<(String, RightModule<F>)> {
        let names = self.algebra().vertex_names();
        let lam = self.label_of(b);
        family
            .members
            .iter()
            .filter(|s| self.poset().leq(lam, s.stratum))
            .map(|s| {
                let bar = s.sign == Sign::Minus;
                // over the opposite algebra Δ_{-ε} is the dual of ∇_ε
                let name = match (dual, bar) {
                    (false, false) => "Δ",
                    (false, true) => "Δ̄",
                    (true, false) => "D∇",
                    (true, true) => "D∇̄",
                };
                (format!("{name}({})", names[s.vertex]), s.delta_eps().clone())
            })
            .collect()
    }

    /// `dim Ext^n(Δ_ε(b), ∇_ε(b'))` for `0 <= n <= n_max`.
    pub fn bs_vanishing_check(&self, signs: &[Sign], n_max: usize) -> Result<VanishingTable> {
        let s = self.with_signs(signs.to_vec())?;
        let family = s.standard_objects()?;
        let cat = s.category();
        let names = s.algebra().vertex_names();
        let mut entries = Vec::new();
        for d in &family.members {
            for c in &family.members {
                for degree in 0..=n_max {
                    entries.push(ExtEntry {
                        degree,
                        b: d.vertex,
                        b2: c.vertex,
                        left: format!("Δ_ε({})", names[d.vertex]),
                        right: format!("∇_ε({})", names[c.vertex]),
                        dim: cat.ext_dim(d.delta_eps(), c.nabla_eps(), degree),
                    });
                }
            }
        }
        Ok(VanishingTable { signs: signs.to_vec(), n_max, entries, vertices: names.to_vec() })
    }
}
