//! Stratifications of `mod-A` by a finite poset, given by labelling the
//! vertices of `A`. Every Serre subcategory is an idempotent quotient and
//! every stratum is a corner of one.

mod filtration;
mod poset;
mod standard;
mod synthesis;

#[cfg(test)]
mod tests;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, IdempotentQuotient};
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::{Iso, ModCat, ModuleMap, RightModule};
use crate::recol::{intermediate_extension, verify_recollement, IdempotentRecollement, Recollement, RecollementReport};

pub use filtration::{
    filtration_search, FiltrationCertificate, FiltrationLayer, FiltrationOutcome, LayerMode, SearchMode,
    ORACLE_MAP_LIMIT,
};
pub use poset::{Mask, Poset, MAX_POSET};
pub use standard::{Standard, StandardFamily};
pub use synthesis::{CoverSynthesis, Porism, SynthesisStep, DEFAULT_ITERATION_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The data attached to one poset element `λ`.
pub struct Stratum<F: Field> {
    pub label: usize,
    /// Vertices of `A` labelled `λ`, ascending.
    pub vertices: Vec<usize>,
    /// `A -> A_{<=λ}`.
    pub lower: IdempotentQuotient<F>,
    /// `mod A_{<λ} -> mod A_{<=λ} -> mod A_λ`.
    pub recollement: IdempotentRecollement<F>,
    pub report: RecollementReport,
}

/// A stratum simple and the simple of `A` it glues to.
#[derive(Clone, Debug)]
pub struct SimpleClass<F: Field> {
    pub vertex: usize,
    pub stratum: usize,
    pub stratum_simple: RightModule<F>,
    /// `j_!* L_λ(b)` as an `A`-module.
    pub glued: RightModule<F>,
}

/// Composition length of a module against the sum of its per-stratum lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    pub total: usize,
    /// `(label, length of M e_λ over e_λ A e_λ)`.
    pub per_stratum: Vec<(String, usize)>,
}

impl LengthProfile {
    pub fn balanced(&self) -> bool {
        self.total == self.per_stratum.iter().map(|(_, l)| l).sum::<usize>()
    }
}

pub struct Stratification<F: Field> {
    algebra: Arc<Algebra<F>>,
    cat: ModCat<F>,
    poset: Poset,
    labels: Vec<usize>,
    signs: Option<Vec<Sign>>,
    strata: Vec<Stratum<F>>,
    audit: Vec<String>,
}

impl<F: Field> Stratification<F> {
    /// `labels[v]` is the poset element of vertex `v`. Builds every lower
    /// quotient and stratum and checks the stratification axioms.
    pub fn new(algebra: Arc<Algebra<F>>, poset: Poset, labels: Vec<usize>, signs: Option<Vec<Sign>>) -> Result<Self> {
        if labels.len() != algebra.vertex_count() {
            return Err(Error::InvalidPoset(format!(
                "{} labels for {} vertices",
                labels.len(),
                algebra.vertex_count()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= poset.len()) {
            return Err(Error::InvalidPoset(format!("label index {bad} out of range")));
        }
        if let Some(s) = &signs {
            if s.len() != poset.len() {
                return Err(Error::InvalidPoset(format!("{} signs for {} poset elements", s.len(), poset.len())));
            }
        }
        let cat = ModCat::new(Arc::clone(&algebra));
        let mut s = Stratification { algebra, cat, poset, labels, signs, strata: Vec::new(), audit: Vec::new() };
        for lam in 0..s.poset.len() {
            let stratum = s.build_stratum(lam)?;
            s.strata.push(stratum);
        }
        s.check_axioms()?;
        Ok(s)
    }

    /// Labels given by name: `assignment` pairs vertex names with poset labels.
    pub fn from_names(
        algebra: Arc<Algebra<F>>,
        poset: Poset,
        assignment: &[(&str, &str)],
        signs: Option<Vec<Sign>>,
    ) -> Result<Self> {
        let mut labels = vec![None; algebra.vertex_count()];
        for (v, l) in assignment {
            let vi = algebra.vertex_index(v).ok_or_else(|| Error::InvalidPoset(format!("unknown vertex '{v}'")))?;
            let li = poset.index(l).ok_or_else(|| Error::InvalidPoset(format!("unknown label '{l}'")))?;
            labels[vi] = Some(li);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| Error::InvalidPoset(format!("vertex '{}' is unlabelled", algebra.vertex_names()[v]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, poset, labels, signs)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn category(&self) -> &ModCat<F> {
        &self.cat
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_of(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn signs(&self) -> Option<&[Sign]> {
        self.signs.as_deref()
    }

    /// `+` when no signs were given.
    pub fn sign(&self, lam: usize) -> Sign {
        self.signs.as_ref().map_or(Sign::Plus, |s| s[lam])
    }

    pub fn with_signs(&self, signs: Vec<Sign>) -> Result<Self> {
        Self::new(Arc::clone(&self.algebra), self.poset.clone(), self.labels.clone(), Some(signs))
    }

    pub fn strata(&self) -> &[Stratum<F>] {
        &self.strata
    }

    pub fn stratum(&self, lam: usize) -> &Stratum<F> {
        &self.strata[lam]
    }

    /// `mod A_λ`.
    pub fn stratum_category(&self, lam: usize) -> &ModCat<F> {
        self.strata[lam].recollement.right()
    }

    /// Index of vertex `b` inside its stratum algebra.
    pub fn stratum_index(&self, b: usize) -> usize {
        let st = &self.strata[self.labels[b]];
        st.vertices.iter().position(|&v| v == b).expect("vertex lies in its own stratum")
    }

    /// Descriptions of the axiom checks that were run.
    pub fn audit(&self) -> &[String] {
        &self.audit
    }

    /// Vertices whose labels lie outside `mask`.
    fn outside(&self, mask: Mask) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| mask & (1 << self.labels[v]) == 0).collect()
    }

    /// `A_{Λ'} = A / A e A` with `e` the idempotent of the vertices outside `Λ'`.
    pub fn lower_algebra(&self, mask: Mask) -> Result<IdempotentQuotient<F>> {
        self.algebra.quotient_by_idempotent_ideal(&self.outside(mask))
    }

    fn build_stratum(&self, lam: usize) -> Result<Stratum<F>> {
        let lower = self.lower_algebra(self.poset.down_set(lam))?;
        let vertices: Vec<usize> = (0..self.labels.len()).filter(|&v| self.labels[v] == lam).collect();
        let local: Vec<usize> = vertices
            .iter()
            .map(|v| lower.vertices.iter().position(|w| w == v).expect("labelled vertex survives"))
            .collect();
        let recollement = IdempotentRecollement::new(Arc::new(lower.algebra.clone()), &local)?;
        let report = verify_recollement(&recollement, &recollement.standard_samples());
        if !report.passed() {
            return Err(Error::Invariant(format!(
                "recollement at '{}' fails {:?}",
                self.poset.label(lam),
                report.violated_axioms()
            )));
        }
        Ok(Stratum { label: lam, vertices, lower, recollement, report })
    }

    fn check_axioms(&mut self) -> Result<()> {
        let empty = self.lower_algebra(0)?;
        if empty.algebra.dim() != 0 {
            return Err(Error::Invariant(format!("A_∅ has dimension {}", empty.algebra.dim())));
        }
        let whole = self.lower_algebra(self.poset.full())?;
        if whole.algebra.dim() != self.algebra.dim() {
            return Err(Error::Invariant("A_Λ is a proper quotient of A".into()));
        }
        self.audit.push("S1: A_∅ = 0 and A_Λ = A".into());

        let lowers = self.poset.lower_sets();
        for &mask in &lowers {
            let big = self.lower_algebra(mask)?;
            for lam in self.poset.maximal_in(mask) {
                let smaller = self.lower_algebra(mask & !(1 << lam))?;
                let local: Vec<usize> = self.strata[lam]
                    .vertices
                    .iter()
                    .map(|v| big.vertices.iter().position(|w| w == v).expect("labelled vertex survives"))
                    .collect();
                let rec = IdempotentRecollement::new(Arc::new(big.algebra.clone()), &local)?;
                let z = &rec.quotient().algebra;
                if z.dim() != smaller.algebra.dim() {
                    return Err(Error::Invariant(format!(
                        "closed part at '{}' of {:?} has dimension {} but the smaller lower set gives {}",
                        self.poset.label(lam),
                        self.mask_labels(mask),
                        z.dim(),
                        smaller.algebra.dim()
                    )));
                }
                let report = verify_recollement(&rec, &rec.standard_samples());
                if !report.passed() {
                    return Err(Error::Invariant(format!(
                        "recollement at '{}' of {:?} fails {:?}",
                        self.poset.label(lam),
                        self.mask_labels(mask),
                        report.violated_axioms()
                    )));
                }
                self.audit.push(format!(
                    "S2: {:?} with maximal '{}' is a recollement ({} checks)",
                    self.mask_labels(mask),
                    self.poset.label(lam),
                    report.checks_run
                ));
                self.check_stratum_independence(lam, mask, &rec)?;
            }
        }
        Ok(())
    }

    /// The stratum seen from `mask` agrees with the one seen from `<= λ`,
    /// tested on the corner algebra and on the simples of `A_{<=λ}`.
    fn check_stratum_independence(&mut self, lam: usize, mask: Mask, rec: &IdempotentRecollement<F>) -> Result<()> {
        let base = &self.strata[lam];
        let here = &rec.corner().algebra;
        let there = &base.recollement.corner().algebra;
        let fail = |what: String| {
            Err(Error::Invariant(format!(
                "stratum '{}' depends on the ambient lower set {:?}: {what}",
                self.poset.label(lam),
                self.mask_labels(mask)
            )))
        };
        if here.dim() != there.dim() {
            return fail(format!("corner dimensions {} and {}", here.dim(), there.dim()));
        }
        let small = base.recollement.center();
        let big_alg = rec.center().algebra();
        let big_lower = self.lower_algebra(mask)?;
        for (b, simple) in small.cells().simples.iter().enumerate() {
            let over_a = self.cat.inflate(simple, &self.strata[lam].lower.projection);
            let over_big = over_a.restrict_along(Arc::clone(big_alg), &big_lower.section);
            let d_here = rec.j_upper(&over_big).dim();
            let d_there = base.recollement.j_upper(simple).dim();
            if d_here != d_there {
                return fail(format!("j^* of simple {b} has dimensions {d_here} and {d_there}"));
            }
        }
        self.audit.push(format!(
            "S3: stratum '{}' agrees between {:?} and its down-set",
            self.poset.label(lam),
            self.mask_labels(mask)
        ));
        Ok(())
    }

    fn mask_labels(&self, mask: Mask) -> Vec<String> {
        self.poset.members(mask).into_iter().map(|i| self.poset.label(i).to_string()).collect()
    }

    /// An `A_{<=λ}`-module viewed as an `A`-module.
    pub fn inflate(&self, lam: usize, m: &RightModule<F>) -> RightModule<F> {
        self.cat.inflate(m, &self.strata[lam].lower.projection)
    }

    pub fn inflate_map(&self, lam: usize, f: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap::new(self.inflate(lam, &f.source), self.inflate(lam, &f.target), f.matrix.clone())
    }

    /// An `A`-module killed by the vertices outside `<= λ`, as an `A_{<=λ}`-module.
    pub fn restrict_to_lower(&self, lam: usize, m: &RightModule<F>) -> Result<RightModule<F>> {
        let st = &self.strata[lam];
        if !m.times_subspace(&st.lower.ideal).is_zero() {
            return Err(Error::Invariant(format!("module does not lie in A_<={}", self.poset.label(lam))));
        }
        Ok(m.restrict_along(Arc::clone(st.recollement.center().algebra()), &st.lower.section))
    }

    /// `j^λ_! Y` as an `A`-module.
    pub fn j_shriek_at(&self, lam: usize, y: &RightModule<F>) -> RightModule<F> {
        self.inflate(lam, &self.strata[lam].recollement.j_shriek(y))
    }

    /// `j^λ_* Y` as an `A`-module.
    pub fn j_lower_at(&self, lam: usize, y: &RightModule<F>) -> RightModule<F> {
        self.inflate(lam, &self.strata[lam].recollement.j_lower(y))
    }

    /// `j^λ_!* Y` as an `A`-module.
    pub fn j_intermediate_at(&self, lam: usize, y: &RightModule<F>) -> Result<RightModule<F>> {
        let ext = intermediate_extension(&self.strata[lam].recollement, y)?;
        Ok(self.inflate(lam, &ext.object))
    }

    /// Glue each stratum simple and match it with a simple of `A`; the result
    /// must be complete and irredundant.
    pub fn classify_simples(&self) -> Result<Vec<SimpleClass<F>>> {
        let mut out: Vec<SimpleClass<F>> = Vec::new();
        for b in 0..self.labels.len() {
            let lam = self.labels[b];
            let stratum_simple = self.stratum_category(lam).simple(self.stratum_index(b));
            let glued = self.j_intermediate_at(lam, &stratum_simple)?;
            let target = self.cat.simple(b);
            if !self.cat.is_isomorphic(&glued, &target).is_yes() {
                return Err(Error::Invariant(format!(
                    "j_!* of the stratum simple at '{}' is {:?}, not S({})",
                    self.algebra.vertex_names()[b],
                    glued.dim_vector(),
                    self.algebra.vertex_names()[b]
                )));
            }
            for other in &out {
                if !matches!(self.cat.is_isomorphic(&glued, &other.glued), Iso::No(_)) {
                    return Err(Error::Invariant(format!(
                        "glued simples at '{}' and '{}' are not distinguished",
                        self.algebra.vertex_names()[other.vertex],
                        self.algebra.vertex_names()[b]
                    )));
                }
            }
            out.push(SimpleClass { vertex: b, stratum: lam, stratum_simple, glued });
        }
        if out.len() != self.cat.cells().simples.len() {
            return Err(Error::Invariant("classification is incomplete".into()));
        }
        Ok(out)
    }

    /// Composition length of `m` against the lengths of the corner modules
    /// `M e_λ` over `e_λ A e_λ`.
    pub fn length_profile(&self, m: &RightModule<F>) -> Result<LengthProfile> {
        let total = self.cat.composition_length(m);
        let mut per_stratum = Vec::new();
        for lam in 0..self.poset.len() {
            let rec = IdempotentRecollement::new(Arc::clone(&self.algebra), &self.strata[lam].vertices)?;
            let piece = rec.j_upper(m);
            per_stratum.push((self.poset.label(lam).to_string(), rec.right().composition_length(&piece)));
        }
        Ok(LengthProfile { total, per_stratum })
    }

    /// The same labelling on `A^op`, with every sign flipped so that duality
    /// exchanges `Δ_ε` and `∇_ε`.
    pub fn opposite(&self) -> Result<Self> {
        let op = Arc::clone(self.cat.opposite().algebra());
        let signs = Some((0..self.poset.len()).map(|l| self.sign(l).flip()).collect());
        Self::new(op, self.poset.clone(), self.labels.clone(), signs)
    }
}
