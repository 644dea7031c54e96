//! Projective covers built stratum by stratum, and the sequence
//! `0 -> Q(b) -> P(b) -> Δ(b) -> 0`.

use std::sync::Arc;

use serde::Serialize;

use super::filtration::{filtration_search, FiltrationOutcome, LayerMode, SearchMode};
use super::standard::StandardFamily;
use super::Stratification;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::{Iso, ModCat, ModuleMap, RightModule, Verdict};
use crate::recol::{IdempotentRecollement, Recollement};

pub const DEFAULT_ITERATION_BOUND: usize = 64;

/// One universal extension (or the starting object) in a synthesis run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SynthesisStep {
    /// The stratum added at this layer.
    pub layer: String,
    pub iteration: usize,
    pub dim_before: usize,
    pub dim_after: usize,
    /// `(simple, dim Ext^1(current, simple))` for the simples extended by.
    pub extended_by: Vec<(String, usize)>,
    /// The extension used simples outside the new stratum because every
    /// `Ext^1` into the new stratum's simples had already vanished.
    pub closed_part: bool,
}

#[derive(Clone, Debug)]
pub struct CoverSynthesis<F: Field> {
    pub vertex: usize,
    pub module: RightModule<F>,
    pub steps: Vec<SynthesisStep>,
    /// Comparison with the directly computed projective `P(t)`.
    pub matches_direct: Verdict,
}

#[derive(Clone, Debug)]
pub struct Porism<F: Field> {
    pub vertex: usize,
    /// `P(b) -> Δ(b)`.
    pub to_delta: ModuleMap<F>,
    /// `Q(b) -> P(b)`.
    pub kernel: ModuleMap<F>,
    pub allowed: Vec<String>,
    pub filtration: FiltrationOutcome<F>,
}

impl<F: Field> Stratification<F> {
    /// Build `P(t)` over a linear extension of the poset: start from `j_!` of
    /// the stratum cover, then at each later stratum extend universally by
    /// simples until `Ext^1` into every simple of that layer vanishes.
    pub fn synthesize_projective_cover(&self, t: usize, bound: usize) -> Result<CoverSynthesis<F>> {
        let names = self.algebra().vertex_names().to_vec();
        let order = self.poset().linear_extension();
        let lam_t = self.label_of(t);
        let k0 = order.iter().position(|&l| l == lam_t).expect("label lies in the poset");
        let mut mask = order[..=k0].iter().fold(0, |m, &l| m | (1 << l));
        let base = self.lower_algebra(mask)?;
        let local = |q: &crate::algebra::IdempotentQuotient<F>, vs: &[usize]| -> Vec<usize> {
            vs.iter().map(|v| q.vertices.iter().position(|w| w == v).expect("vertex survives")).collect()
        };
        let rec = IdempotentRecollement::new(Arc::new(base.algebra.clone()), &local(&base, &self.stratum(lam_t).vertices))?;
        let u_simple = rec.right().simple(self.stratum_index(t));
        let cover = rec.right().projective_cover(&u_simple).map.source;
        let start = rec.j_shriek(&cover);
        let mut current = self.category().inflate(&start, &base.projection);
        let mut steps = vec![SynthesisStep {
            layer: self.poset().label(lam_t).to_string(),
            iteration: 0,
            dim_before: 0,
            dim_after: current.dim(),
            extended_by: Vec::new(),
            closed_part: false,
        }];

        for &lam in &order[k0 + 1..] {
            mask |= 1 << lam;
            let q = self.lower_algebra(mask)?;
            let layer = ModCat::new(Arc::new(q.algebra.clone()));
            let open: Vec<usize> = local(&q, &self.stratum(lam).vertices);
            let mut m = current.restrict_along(Arc::clone(layer.algebra()), &q.section);
            let simples = layer.cells().simples.clone();
            let label = self.poset().label(lam).to_string();
            for iteration in 1.. {
                if iteration > bound {
                    return Err(Error::IterationBound(
                        bound,
                        format!("synthesis of P({}) did not stabilise at layer '{label}'", names[t]),
                    ));
                }
                let dims: Vec<usize> = simples.iter().map(|s| layer.ext_dim(&m, s, 1)).collect();
                let open_hit = open.iter().any(|&v| dims[v] > 0);
                let chosen: Vec<usize> =
                    (0..simples.len()).filter(|&v| dims[v] > 0 && (!open_hit || open.contains(&v))).collect();
                if chosen.is_empty() {
                    break;
                }
                let targets: Vec<RightModule<F>> = chosen.iter().map(|&v| simples[v].clone()).collect();
                let ue = layer.universal_extension(&m, &targets)?;
                let next = ue.ses.middle().clone();
                let vnames = layer.algebra().vertex_names();
                steps.push(SynthesisStep {
                    layer: label.clone(),
                    iteration,
                    dim_before: m.dim(),
                    dim_after: next.dim(),
                    extended_by: chosen.iter().map(|&v| (format!("S({})", vnames[v]), dims[v])).collect(),
                    closed_part: !open_hit,
                });
                m = next;
            }
            current = self.category().inflate(&m, &q.projection);
        }

        let cat = self.category();
        let mut unit = vec![0; names.len()];
        unit[t] = 1;
        if cat.top_vector(&current) != unit {
            return Err(Error::Invariant(format!(
                "synthesised object for {} has top {:?}",
                names[t],
                cat.top_vector(&current)
            )));
        }
        for (v, s) in cat.cells().simples.iter().enumerate() {
            let d = cat.ext_dim(&current, s, 1);
            if d != 0 {
                return Err(Error::Invariant(format!(
                    "synthesised object for {} has Ext^1 into S({}) of dimension {d}",
                    names[t], names[v]
                )));
            }
        }
        let matches_direct = match cat.is_isomorphic(&current, &cat.projective(t)) {
            Iso::No(why) => {
                return Err(Error::Invariant(format!("synthesised object for {} is not P({}): {why}", names[t], names[t])))
            }
            other => other.verdict(),
        };
        Ok(CoverSynthesis { vertex: t, module: current, steps, matches_direct })
    }

    /// `P(b) -> Δ(b)` through the largest quotient of `P(b)` in `A_{<=ρ(b)}`,
    /// and a filtration of its kernel by quotients of `Δ(b')` with `ρ(b') > ρ(b)`.
    pub fn porism_check(&self, b: usize, family: &StandardFamily<F>, search: SearchMode) -> Result<Porism<F>> {
        let cat = self.category();
        let names = self.algebra().vertex_names();
        let lam = self.label_of(b);
        let p = cat.projective(b);
        let sub = p.times_subspace(&self.stratum(lam).lower.ideal);
        let (top_part, pi) = p.quotient(&sub);
        let delta = &family.get(b).delta;
        let phi = match cat.is_isomorphic(&top_part, delta) {
            Iso::Yes(phi) => phi,
            other => {
                return Err(Error::Invariant(format!(
                    "largest quotient of P({}) in its lower set is not Δ({}): {}",
                    names[b],
                    names[b],
                    other.reason()
                )))
            }
        };
        let to_delta = pi.then(&phi);
        let (_, kernel) = cat.kernel_of(&to_delta);
        let mut allowed = Vec::new();
        for other in &family.members {
            if self.poset().lt(lam, other.stratum) {
                allowed.push((format!("Δ({})", names[other.vertex]), other.delta.clone()));
            }
        }
        let filtration = filtration_search(cat, &kernel.source, &allowed, LayerMode::Quotient, search)?;
        if !filtration.found() {
            return Err(Error::Invariant(format!(
                "Q({}) has no filtration by quotients of higher standard objects ({:?} search)",
                names[b], search
            )));
        }
        Ok(Porism { vertex: b, to_delta, kernel, allowed: allowed.into_iter().map(|(n, _)| n).collect(), filtration })
    }
}
