//! Highest weight detection, once from the shape of the stratification and
//! once from the axioms on standard objects.

use std::sync::Arc;

use serde::Serialize;

use super::homological::HomologicalReport;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::{Iso, Verdict};
use crate::strat::{filtration_search, LayerMode, Poset, SearchMode, Stratification};

/// Largest poset size used when enumerating labellings.
pub const MAX_SURVEY_POSET: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub holds: Verdict,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestWeight {
    /// `(vertex, label)` pairs.
    pub labelling: Vec<(String, String)>,
    /// Every stratum algebra one-dimensional and the stratification 2-homological.
    pub structure: Verdict,
    pub structure_witness: Option<String>,
    pub axioms: Vec<AxiomCheck>,
    pub axiom_verdict: Verdict,
    pub routes_agree: bool,
    pub falsification: Option<String>,
}

impl HighestWeight {
    pub fn verdict(&self) -> Verdict {
        if !self.routes_agree {
            return Verdict::Undecided;
        }
        [self.structure, self.axiom_verdict].into_iter().find(|v| *v != Verdict::Undecided).unwrap_or(Verdict::Undecided)
    }
}

/// Build the stratification and run both routes.
pub fn is_highest_weight<F: Field>(
    a: Arc<Algebra<F>>,
    poset: Poset,
    labels: Vec<usize>,
    search: SearchMode,
) -> Result<HighestWeight> {
    Stratification::new(a, poset, labels, None)?.highest_weight(None, search)
}

/// A labelling that was tried, and why it was skipped if it was.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    pub relations: Vec<(String, String)>,
    pub labelling: Vec<(String, String)>,
    pub result: Option<HighestWeight>,
    pub skipped: Option<String>,
}

/// Every labelled poset on at most `min(vertices, MAX_SURVEY_POSET)`
/// elements with every surjective labelling. Labellings that do not give a
/// stratification are recorded as skipped.
pub fn highest_weight_survey<F: Field>(a: Arc<Algebra<F>>, search: SearchMode) -> Result<Vec<SurveyEntry>> {
    let n = a.vertex_count();
    let names = a.vertex_names().to_vec();
    let mut out = Vec::new();
    for k in 1..=n.min(MAX_SURVEY_POSET) {
        let elements: Vec<String> = (0..k).map(|i| format!("l{i}")).collect();
        for relations in strict_orders(k) {
            let pairs: Vec<(String, String)> =
                relations.iter().map(|&(x, y)| (elements[x].clone(), elements[y].clone())).collect();
            let poset = Poset::new(&elements, &pairs)?;
            for labels in surjections(n, k) {
                let labelling: Vec<(String, String)> =
                    (0..n).map(|v| (names[v].clone(), elements[labels[v]].clone())).collect();
                let (result, skipped) = match Stratification::new(Arc::clone(&a), poset.clone(), labels, None) {
                    Ok(s) => (Some(s.highest_weight(None, search)?), None),
                    Err(e @ Error::Invariant(_)) => (None, Some(e.to_string())),
                    Err(e) => return Err(e),
                };
                out.push(SurveyEntry { relations: pairs.clone(), labelling, result, skipped });
            }
        }
    }
    Ok(out)
}

/// Strict partial orders on `0..k` as lists of pairs `x < y`.
fn strict_orders(k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (0..k).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let rel: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| bits >> i & 1 == 1).map(|i| pairs[i]).collect();
        let has = |x: usize, y: usize| rel.contains(&(x, y));
        let antisymmetric = rel.iter().all(|&(x, y)| !has(y, x));
        let transitive = rel.iter().all(|&(x, y)| (0..k).all(|z| !has(y, z) || has(x, z)));
        if antisymmetric && transitive {
            out.push(rel);
        }
    }
    out
}

/// Maps `0..n -> 0..k` hitting every value.
fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = k.pow(n as u32);
    for mut code in 0..total {
        let mut f = Vec::with_capacity(n);
        for _ in 0..n {
            f.push(code % k);
            code /= k;
        }
        if (0..k).all(|l| f.contains(&l)) {
            out.push(f);
        }
    }
    out
}

impl<F: Field> Stratification<F> {
    /// Both highest weight routes. A precomputed 2-homological report may be passed in.
    pub fn highest_weight(&self, homological: Option<&HomologicalReport>, search: SearchMode) -> Result<HighestWeight> {
        let names = self.algebra().vertex_names();
        let labelling = (0..names.len()).map(|v| (names[v].clone(), self.poset().label(self.label_of(v)).to_string())).collect();

        let owned;
        let homological = match homological {
            Some(h) => h,
            None => {
                owned = self.is_k_homological(2, None)?;
                &owned
            }
        };
        let mut structure_witness = None;
        for st in self.strata() {
            let d = self.stratum_category(st.label).algebra().dim();
            if d != 1 {
                structure_witness = Some(format!("stratum '{}' has dimension {d}", self.poset().label(st.label)));
                break;
            }
        }
        if structure_witness.is_none() {
            if let Some(w) = homological.witness_through(2) {
                structure_witness = Some(format!(
                    "not 2-homological: Ext^{}({}, {}) at {:?} has dims {} -> {}",
                    w.comparison.degree,
                    w.x,
                    w.y,
                    w.instance.lower_set,
                    w.comparison.source_dim,
                    w.comparison.target_dim
                ));
            }
        }
        let structure = if structure_witness.is_some() { Verdict::No } else { Verdict::Yes };

        let axioms = self.highest_weight_axioms(search)?;
        let axiom_verdict = if axioms.iter().any(|a| a.holds == Verdict::No) {
            Verdict::No
        } else if axioms.iter().any(|a| a.holds == Verdict::Undecided) {
            Verdict::Undecided
        } else {
            Verdict::Yes
        };
        let clash = structure != axiom_verdict && axiom_verdict != Verdict::Undecided;
        let falsification = clash.then(|| format!("structure route says {structure:?}, axioms say {axiom_verdict:?}"));
        Ok(HighestWeight {
            labelling,
            structure,
            structure_witness,
            axioms,
            axiom_verdict,
            routes_agree: !clash,
            falsification,
        })
    }

    fn highest_weight_axioms(&self, search: SearchMode) -> Result<Vec<AxiomCheck>> {
        let check = |axiom: &str, witness: Option<String>| AxiomCheck {
            axiom: axiom.into(),
            holds: if witness.is_some() { Verdict::No } else { Verdict::Yes },
            witness,
        };
        for st in self.strata() {
            if st.vertices.len() != 1 {
                return Ok(vec![check(
                    "one simple per label",
                    Some(format!("label '{}' has {} vertices", self.poset().label(st.label), st.vertices.len())),
                )]);
            }
        }
        let cat = self.category();
        let names = self.algebra().vertex_names();
        let family = self.standard_objects()?;
        let delta = |b: usize| &family.get(b).delta;
        let n = names.len();
        let mut out = vec![check("one simple per label", None)];

        let hw1 = (0..n).find_map(|b| {
            let d = cat.hom_dim(delta(b), delta(b));
            (d != 1).then(|| format!("End(Δ({})) has dimension {d}", names[b]))
        });
        out.push(check("HW1 End(Δ) is a division ring", hw1));

        let mut hw2 = None;
        'outer: for b in 0..n {
            for c in 0..n {
                if self.poset().lt(self.label_of(c), self.label_of(b)) && cat.hom_dim(delta(b), delta(c)) != 0 {
                    hw2 = Some(format!("Hom(Δ({}), Δ({})) is nonzero", names[b], names[c]));
                    break 'outer;
                }
            }
        }
        out.push(check("HW2 no maps from higher to lower standards", hw2));

        let mut hw3 = AxiomCheck { axiom: "HW3 kernel of P -> Δ filtered by higher standards".into(), holds: Verdict::Yes, witness: None };
        for b in 0..n {
            let lam = self.label_of(b);
            let p = cat.projective(b);
            let sub = p.times_subspace(&self.stratum(lam).lower.ideal);
            let (top_part, pi) = p.quotient(&sub);
            if !matches!(cat.is_isomorphic(&top_part, delta(b)), Iso::Yes(_)) {
                hw3.holds = Verdict::No;
                hw3.witness = Some(format!("largest quotient of P({}) in its lower set is not Δ({})", names[b], names[b]));
                break;
            }
            let (kernel, _) = cat.kernel_of(&pi);
            let allowed: Vec<_> = (0..n)
                .filter(|&c| self.poset().lt(lam, self.label_of(c)))
                .map(|c| (format!("Δ({})", names[c]), delta(c).clone()))
                .collect();
            let outcome = filtration_search(cat, &kernel, &allowed, LayerMode::Exact, search)?;
            if outcome.found() {
                continue;
            }
            if outcome.decided() == Some(false) {
                hw3.holds = Verdict::No;
                hw3.witness = Some(format!("kernel of P({}) -> Δ({}) has no filtration by higher Δ", names[b], names[b]));
                break;
            }
            hw3.holds = Verdict::Undecided;
            hw3.witness = Some(format!("heuristic search found no filtration of the kernel at {}", names[b]));
        }
        out.push(hw3);

        let mut covered = vec![0; n];
        for b in 0..n {
            for (v, m) in cat.top_vector(&cat.projective(b)).into_iter().enumerate() {
                covered[v] += m;
            }
        }
        let hw4 = covered.iter().position(|&c| c == 0).map(|v| format!("S({}) is not a quotient of the sum of projectives", names[v]));
        out.push(check("HW4 the projectives generate", hw4));
        Ok(out)
    }
}
