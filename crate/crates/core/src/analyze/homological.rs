//! Comparing `Ext` over a quotient `B = A / AeA` with `Ext` over `A`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::IdempotentQuotient;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::modcat::{ModCat, ModuleMap, RightModule};
use crate::recol::{is_short_exact, IdempotentRecollement, Recollement};
use crate::strat::{Mask, Stratification};

pub const DEFAULT_N_MAX: usize = 4;

const DEVISSAGE: &str = "isomorphisms on all pairs of simples extend to every finite-length pair by induction \
     on length through the long exact Ext sequences; this step is not re-run per object";

/// `Ext^n_B(X, Y) -> Ext^n_A(X, Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtComparison {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl ExtComparison {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.rank && self.target_dim == self.rank
    }
}

/// The comparison map in one degree, built by lifting the identity of `X`
/// to a chain map from the `A`-resolution to the inflated `B`-resolution.
/// `projection` is `dim A x dim B`. In degrees 0 and 1 the map must be an
/// isomorphism since `mod B` is a Serre subcategory.
pub fn compare_ext<F: Field>(
    big: &ModCat<F>,
    small: &ModCat<F>,
    projection: &Matrix<F>,
    x: &RightModule<F>,
    y: &RightModule<F>,
    n: usize,
) -> Result<ExtComparison> {
    let inflate = |m: &RightModule<F>| big.inflate(m, projection);
    let inflate_map = |f: &ModuleMap<F>| ModuleMap::new(inflate(&f.source), inflate(&f.target), f.matrix.clone());
    let iy = inflate(y);
    let over_b = small.ext(x, y, n);
    let over_a = big.ext(&inflate(x), &iy, n);
    let (rb, ra) = (&over_b.resolution, &over_a.resolution);
    let no_lift = |i: usize| Error::Invariant(format!("chain map does not lift in degree {i}"));
    let mut phi = big.lift_map(&ra.augmentation, &inflate_map(&rb.augmentation)).ok_or_else(|| no_lift(0))?;
    for i in 0..n {
        let f = ra.differential(i).then(&phi);
        phi = big.lift_map(&f, &inflate_map(&rb.differential(i))).ok_or_else(|| no_lift(i + 1))?;
    }
    let mut rows = Vec::new();
    for c in &over_b.basis {
        rows.push(over_a.class_of(&ModuleMap::new(ra.term(n), iy.clone(), &phi.matrix * &c.matrix))?);
    }
    let rank = if rows.is_empty() || over_a.dim() == 0 { 0 } else { Matrix::from_rows(over_a.dim(), &rows).rank() };
    let out = ExtComparison { degree: n, source_dim: over_b.dim(), target_dim: over_a.dim(), rank };
    if n <= 1 && !out.is_iso() {
        return Err(Error::Invariant(format!("Ext comparison in degree {n} is not an isomorphism: {out:?}")));
    }
    Ok(out)
}

/// One recollement `A_{Γ \ λ} -> A_Γ -> A_λ` of the stratification data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub lower_set: Vec<String>,
    pub maximal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonEntry {
    pub instance: Instance,
    pub x: String,
    pub y: String,
    pub comparison: ExtComparison,
}

/// A nonzero `Ext^n_{A_Γ}(i_* P, i_* I)` for a projective `P` and injective `I` of the closed part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryEntry {
    pub instance: Instance,
    pub projective: String,
    pub injective: String,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologicalReport {
    pub k: usize,
    pub holds: bool,
    pub entries: Vec<ComparisonEntry>,
    pub witness: Option<ComparisonEntry>,
    pub justification: String,
    pub auxiliary_bound: Option<usize>,
    pub auxiliary_nonzero: Vec<AuxiliaryEntry>,
}

impl HomologicalReport {
    /// First non-isomorphism in degree at most `k`.
    pub fn witness_through(&self, k: usize) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|e| e.comparison.degree <= k && !e.comparison.is_iso())
    }

    pub fn holds_through(&self, k: usize) -> bool {
        k <= self.k && self.witness_through(k).is_none()
    }
}

/// Lower-set algebras and their module categories, built on demand.
struct LowerCache<'a, F: Field> {
    s: &'a Stratification<F>,
    built: HashMap<Mask, (IdempotentQuotient<F>, Arc<ModCat<F>>)>,
}

impl<'a, F: Field> LowerCache<'a, F> {
    fn get(&mut self, mask: Mask) -> Result<(IdempotentQuotient<F>, Arc<ModCat<F>>)> {
        if let Some(hit) = self.built.get(&mask) {
            return Ok(hit.clone());
        }
        let q = self.s.lower_algebra(mask)?;
        let cat = Arc::new(ModCat::new(Arc::new(q.algebra.clone())));
        self.built.insert(mask, (q.clone(), Arc::clone(&cat)));
        Ok((q, cat))
    }
}

impl<F: Field> Stratification<F> {
    /// Compare `Ext^n` over `A_{Λ'}` with `Ext^n` over `A` for modules `x`, `y` over `A_{Λ'}`.
    pub fn ext_comparison(
        &self,
        mask: Mask,
        x: &RightModule<F>,
        y: &RightModule<F>,
        n: usize,
    ) -> Result<ExtComparison> {
        let q = self.lower_algebra(mask)?;
        let small = ModCat::new(Arc::new(q.algebra.clone()));
        compare_ext(self.category(), &small, &q.projection, x, y, n)
    }

    /// Check every recollement `A_{Γ \ λ} -> A_Γ -> A_λ` (for every lower set
    /// `Γ` and maximal `λ` in it) on all pairs of closed-part simples in
    /// degrees `0..=k`. With `n_max`, also record every nonzero
    /// `Ext^n(i_* P, i_* I)` for `1 <= n <= n_max`.
    pub fn is_k_homological(&self, k: usize, n_max: Option<usize>) -> Result<HomologicalReport> {
        let mut cache = LowerCache { s: self, built: HashMap::new() };
        let mut entries = Vec::new();
        let mut auxiliary_nonzero = Vec::new();
        for mask in self.poset().lower_sets() {
            for lam in self.poset().maximal_in(mask) {
                let (big, big_cat) = cache.get(mask)?;
                let (small, small_cat) = cache.get(mask & !(1 << lam))?;
                if small.algebra.dim() == 0 {
                    continue;
                }
                let instance = Instance {
                    lower_set: self.poset().members(mask).into_iter().map(|i| self.poset().label(i).to_string()).collect(),
                    maximal: self.poset().label(lam).to_string(),
                };
                let projection = &big.section * &small.projection;
                let names = small.algebra.vertex_names();
                let cells = small_cat.cells();
                for (a, x) in cells.simples.iter().enumerate() {
                    for (b, y) in cells.simples.iter().enumerate() {
                        for n in 0..=k {
                            let comparison = compare_ext(&big_cat, &small_cat, &projection, x, y, n)?;
                            entries.push(ComparisonEntry {
                                instance: instance.clone(),
                                x: format!("S({})", names[a]),
                                y: format!("S({})", names[b]),
                                comparison,
                            });
                        }
                    }
                }
                let Some(bound) = n_max else { continue };
                for (a, p) in cells.projectives.iter().enumerate() {
                    let ip = big_cat.inflate(p, &projection);
                    for (b, i) in cells.injectives.iter().enumerate() {
                        let ii = big_cat.inflate(i, &projection);
                        for degree in 1..=bound {
                            let dim = big_cat.ext_dim(&ip, &ii, degree);
                            if dim != 0 {
                                auxiliary_nonzero.push(AuxiliaryEntry {
                                    instance: instance.clone(),
                                    projective: format!("P({})", names[a]),
                                    injective: format!("I({})", names[b]),
                                    degree,
                                    dim,
                                });
                            }
                        }
                    }
                }
            }
        }
        let witness = entries.iter().find(|e| !e.comparison.is_iso()).cloned();
        Ok(HomologicalReport {
            k,
            holds: witness.is_none(),
            entries,
            witness,
            justification: DEVISSAGE.into(),
            auxiliary_bound: n_max,
            auxiliary_nonzero,
        })
    }

    /// For `λ` maximal and `P` projective, test `0 -> j_! j^* P -> P -> i_* i^* P -> 0`.
    /// The sequence must be exact when the recollement is 2-homological.
    pub fn lemma_split_check(&self, lam: usize, p: &RightModule<F>) -> Result<SplitCheck> {
        if !self.poset().maximal_in(self.poset().full()).contains(&lam) {
            return Err(Error::InvalidPoset(format!("'{}' is not maximal", self.poset().label(lam))));
        }
        if !self.category().is_projective(p) {
            return Err(Error::Invariant("module is not projective".into()));
        }
        let rec = IdempotentRecollement::new(Arc::clone(self.algebra()), &self.stratum(lam).vertices)?;
        let counit = rec.j_shriek_counit(p);
        let unit = rec.i_pull_unit(p);
        let exact = is_short_exact(rec.center(), &counit, &unit);
        let z = rec.left();
        let mut two_homological = true;
        'pairs: for x in &z.cells().simples {
            for y in &z.cells().simples {
                for n in 0..=2 {
                    if !compare_ext(rec.center(), z, &rec.quotient().projection, x, y, n)?.is_iso() {
                        two_homological = false;
                        break 'pairs;
                    }
                }
            }
        }
        if two_homological && !exact {
            return Err(Error::Invariant(format!(
                "recollement at '{}' is 2-homological but the sequence for a projective is not exact",
                self.poset().label(lam)
            )));
        }
        let outcome = if exact {
            SplitOutcome::Exact { dims: [counit.source.dim(), p.dim(), unit.target.dim()] }
        } else {
            SplitOutcome::Obstruction { shriek_dim: counit.source.dim(), kernel_dim: p.dim() - unit.rank() }
        };
        Ok(SplitCheck { label: self.poset().label(lam).to_string(), two_homological, outcome })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SplitOutcome {
    Exact { dims: [usize; 3] },
    /// `dim j_! j^* P` against the dimension of the kernel of `P -> i_* i^* P`.
    Obstruction { shriek_dim: usize, kernel_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub label: String,
    pub two_homological: bool,
    pub outcome: SplitOutcome,
}
