//! Searching for filtrations whose layers are (quotients of) given objects.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::coordinate_map;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::modcat::{ModCat, ModuleMap, RightModule};

/// Largest `Hom` space (in elements) enumerated per step in oracle mode.
pub const ORACLE_MAP_LIMIT: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayerMode {
    /// Every layer is isomorphic to an allowed object.
    Exact,
    /// Every layer is a quotient of an allowed object.
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Candidate maps from a basis of Hom and its pairwise sums; a negative
    /// answer is not a proof.
    Heuristic,
    /// Every map over a finite field; a negative answer is a proof.
    Oracle,
}

/// `M_i / M_{i-1}` with its comparison to an allowed object.
#[derive(Clone, Debug)]
pub struct FiltrationLayer<F: Field> {
    pub allowed: usize,
    pub name: String,
    /// `M_i` inside the ambient module.
    pub upper: Subspace<F>,
    /// Exact mode: an isomorphism from the layer to the allowed object.
    /// Quotient mode: a surjection from the allowed object onto the layer.
    pub map: ModuleMap<F>,
}

/// `0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_n = M`, layers listed from the bottom.
#[derive(Clone, Debug)]
pub struct FiltrationCertificate<F: Field> {
    pub module: RightModule<F>,
    pub mode: LayerMode,
    pub layers: Vec<FiltrationLayer<F>>,
}

#[derive(Clone, Debug)]
pub struct FiltrationOutcome<F: Field> {
    pub certificate: Option<FiltrationCertificate<F>>,
    /// Search states visited.
    pub nodes: usize,
    pub search: SearchMode,
}

impl<F: Field> FiltrationOutcome<F> {
    pub fn found(&self) -> bool {
        self.certificate.is_some()
    }

    /// `Some(false)` only when the absence of a filtration is proved.
    pub fn decided(&self) -> Option<bool> {
        match (&self.certificate, self.search) {
            (Some(_), _) => Some(true),
            (None, SearchMode::Oracle) => Some(false),
            (None, SearchMode::Heuristic) => None,
        }
    }

    pub fn layer_names(&self) -> Vec<String> {
        self.certificate.as_ref().map_or_else(Vec::new, |c| c.layers.iter().map(|l| l.name.clone()).collect())
    }
}

/// `upper / lower` for submodules `lower ⊂ upper` of `m`, with the matrix
/// taking `upper`'s vectors (in `m` coordinates) to layer coordinates.
fn subquotient<F: Field>(m: &RightModule<F>, lower: &Subspace<F>, upper: &Subspace<F>) -> (RightModule<F>, Matrix<F>) {
    let (um, _) = m.submodule(upper);
    let coords = coordinate_map(upper.basis());
    let inner = Subspace::row_space(&(lower.basis() * &coords));
    let (layer, proj) = um.quotient(&inner);
    (layer, &coords * &proj.matrix)
}

impl<F: Field> FiltrationCertificate<F> {
    /// Re-check the chain and every layer map from scratch.
    pub fn verify(&self, allowed: &[(String, RightModule<F>)]) -> Result<()> {
        let m = &self.module;
        let mut lower = Subspace::zero(m.dim());
        for (i, layer) in self.layers.iter().enumerate() {
            let up = &layer.upper;
            if !up.contains_subspace(&lower) || up.dim() == lower.dim() {
                return Err(Error::Invariant(format!("layer {i} does not strictly enlarge the chain")));
            }
            if m.generated_submodule(up.basis()) != *up {
                return Err(Error::Invariant(format!("M_{} is not a submodule", i + 1)));
            }
            let (sq, _) = subquotient(m, &lower, up);
            let obj = &allowed
                .get(layer.allowed)
                .ok_or_else(|| Error::Invariant(format!("layer {i} names a missing allowed object")))?
                .1;
            let ok = match self.mode {
                LayerMode::Exact => {
                    layer.map.source == sq && layer.map.target == *obj && layer.map.is_homomorphism() && layer.map.is_iso()
                }
                LayerMode::Quotient => {
                    layer.map.target == sq
                        && layer.map.source == *obj
                        && layer.map.is_homomorphism()
                        && layer.map.is_surjective()
                }
            };
            if !ok {
                return Err(Error::Invariant(format!("layer {i} ({}) is not certified", layer.name)));
            }
            lower = up.clone();
        }
        if !lower.is_whole() {
            return Err(Error::Invariant("the chain does not reach the whole module".into()));
        }
        Ok(())
    }
}

/// Candidate maps: a basis plus pairwise sums, or (oracle) every nonzero
/// combination normalised to lead with 1.
fn candidates<F: Field>(basis: &[ModuleMap<F>], search: SearchMode) -> Result<Vec<ModuleMap<F>>> {
    match search {
        SearchMode::Heuristic => {
            let mut out: Vec<ModuleMap<F>> = basis.to_vec();
            for i in 0..basis.len() {
                for j in 0..i {
                    out.push(basis[i].add(&basis[j]));
                }
            }
            Ok(out)
        }
        SearchMode::Oracle => {
            let elems = F::elements().ok_or(Error::OracleOverRationals)?;
            let q = elems.len();
            let d = basis.len();
            let total = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
            if total > ORACLE_MAP_LIMIT as u128 {
                return Err(Error::IterationBound(
                    ORACLE_MAP_LIMIT,
                    format!("Hom space of dimension {d} over a field of size {q} is too large to enumerate"),
                ));
            }
            let mut out = Vec::new();
            for lead in 0..d {
                let mut digits = vec![0usize; d - lead - 1];
                loop {
                    let mut f = basis[lead].clone();
                    for (k, &c) in digits.iter().enumerate() {
                        if !elems[c].is_zero() {
                            f = f.add(&basis[lead + 1 + k].scale(&elems[c]));
                        }
                    }
                    out.push(f);
                    if !bump(&mut digits, q) {
                        break;
                    }
                }
            }
            Ok(out)
        }
    }
}

fn bump(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn fits(big: &[usize], small: &[usize]) -> bool {
    big.iter().zip(small).all(|(b, s)| s <= b)
}

struct Search<'a, F: Field> {
    cat: &'a ModCat<F>,
    module: &'a RightModule<F>,
    allowed: &'a [(String, RightModule<F>)],
    tops: Vec<(RightModule<F>, ModuleMap<F>)>,
    search: SearchMode,
    failed: HashSet<Subspace<F>>,
    nodes: usize,
}

impl<F: Field> Search<'_, F> {
    /// Exact layers, peeled from the top: `state` is the current `M_i`.
    fn peel(&mut self, state: &Subspace<F>, out: &mut Vec<FiltrationLayer<F>>) -> Result<bool> {
        if state.is_zero() {
            return Ok(true);
        }
        if self.failed.contains(state) {
            return Ok(false);
        }
        self.nodes += 1;
        let (um, _) = self.module.submodule(state);
        let dv = um.dim_vector();
        for (idx, (name, obj)) in self.allowed.iter().enumerate() {
            if !fits(&dv, &obj.dim_vector()) {
                continue;
            }
            let basis = self.cat.hom(&um, obj);
            let to_top = self.tops[idx].1.clone();
            let useful: Vec<ModuleMap<F>> = basis.iter().filter(|h| !h.then(&to_top).is_zero()).cloned().collect();
            if useful.is_empty() {
                continue;
            }
            let pool = match self.search {
                SearchMode::Heuristic => candidates(&useful, self.search)?,
                SearchMode::Oracle => candidates(&basis, self.search)?,
            };
            let mut seen = HashSet::new();
            for h in pool {
                // surjective exactly when the composite onto the simple top is nonzero
                if h.then(&to_top).is_zero() {
                    continue;
                }
                let ker = h.kernel_subspace();
                let kernel_in_m = Subspace::row_space(&(ker.basis() * state.basis()));
                if !seen.insert(kernel_in_m.clone()) {
                    continue;
                }
                out.push(FiltrationLayer {
                    allowed: idx,
                    name: name.clone(),
                    upper: state.clone(),
                    map: self.layer_map_exact(&kernel_in_m, state, &h),
                });
                if self.peel(&kernel_in_m, out)? {
                    return Ok(true);
                }
                out.pop();
            }
        }
        self.failed.insert(state.clone());
        Ok(false)
    }

    fn layer_map_exact(&self, lower: &Subspace<F>, upper: &Subspace<F>, h: &ModuleMap<F>) -> ModuleMap<F> {
        let (layer, _) = subquotient(self.module, lower, upper);
        let inner = Subspace::row_space(&(lower.basis() * &coordinate_map(upper.basis())));
        let q = inner.quotient();
        ModuleMap::new(layer, h.target.clone(), &q.section * &h.matrix)
    }

    /// Quotient layers, built from the bottom: `state` is the current `M_i`.
    fn grow(&mut self, state: &Subspace<F>, out: &mut Vec<FiltrationLayer<F>>) -> Result<bool> {
        if state.is_whole() {
            return Ok(true);
        }
        if self.failed.contains(state) {
            return Ok(false);
        }
        self.nodes += 1;
        let (qm, proj) = self.module.quotient(state);
        let section = state.quotient().section;
        for (idx, (name, obj)) in self.allowed.iter().enumerate() {
            let basis = self.cat.hom(obj, &qm);
            if basis.is_empty() {
                continue;
            }
            let pool = candidates(&basis, self.search)?;
            let mut seen = HashSet::new();
            for g in pool {
                if g.is_zero() {
                    continue;
                }
                let image = g.image_subspace();
                let lifted = Subspace::row_space(&(image.basis() * &section));
                let next = state.sum(&lifted)?;
                debug_assert_eq!(Subspace::row_space(&(next.basis() * &proj.matrix)), image);
                if !seen.insert(next.clone()) {
                    continue;
                }
                let (layer, to_layer) = subquotient(self.module, state, &next);
                let map = ModuleMap::new(obj.clone(), layer, &(&g.matrix * &section) * &to_layer);
                out.push(FiltrationLayer { allowed: idx, name: name.clone(), upper: next.clone(), map });
                if self.grow(&next, out)? {
                    return Ok(true);
                }
                out.pop();
            }
        }
        self.failed.insert(state.clone());
        Ok(false)
    }
}

/// Look for a filtration of `m` whose layers are isomorphic to (exact mode)
/// or quotients of (quotient mode) the allowed objects. Every allowed object
/// must be nonzero with a simple top.
pub fn filtration_search<F: Field>(
    cat: &ModCat<F>,
    m: &RightModule<F>,
    allowed: &[(String, RightModule<F>)],
    mode: LayerMode,
    search: SearchMode,
) -> Result<FiltrationOutcome<F>> {
    if search == SearchMode::Oracle && F::elements().is_none() {
        return Err(Error::OracleOverRationals);
    }
    let mut tops = Vec::new();
    for (name, obj) in allowed {
        if !cat.has_simple_top(obj) {
            return Err(Error::Invariant(format!("allowed object {name} does not have a simple top")));
        }
        tops.push(cat.top(obj));
    }
    let mut s = Search { cat, module: m, allowed, tops, search, failed: HashSet::new(), nodes: 0 };
    let mut layers = Vec::new();
    let found = match mode {
        LayerMode::Exact => s.peel(&Subspace::whole(m.dim()), &mut layers)?,
        LayerMode::Quotient => s.grow(&Subspace::zero(m.dim()), &mut layers)?,
    };
    let certificate = found.then(|| {
        if mode == LayerMode::Exact {
            layers.reverse();
        }
        FiltrationCertificate { module: m.clone(), mode, layers }
    });
    if let Some(c) = &certificate {
        c.verify(allowed)?;
    }
    Ok(FiltrationOutcome { certificate, nodes: s.nodes, search })
}
