//! The recollement `mod R -> A(ε) -> mod S` of a gluing.

use std::sync::Arc;

use serde::Serialize;

use super::{through_epi, through_mono, MvCategory, MvData, MvMorphism, MvObject};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::modcat::{AbelianCategory, ModCat, ModuleMap, RightModule};
use crate::recol::{intermediate_extension, Recollement, Samples};

/// `i_* Z = (0, Z, 0, 0)`, `i^* X = cok α`, `i^! X = ker β`, `j^* X = X_U`,
/// `j_! Y = (Y, F Y, 1, ε)` and `j_* Y = (Y, G Y, ε, 1)`.
pub struct MvRecollement<F: Field> {
    cat: MvCategory<F>,
}

pub fn mv_recollement<F: Field>(data: Arc<MvData<F>>) -> MvRecollement<F> {
    MvRecollement { cat: MvCategory::new(data) }
}

impl<F: Field> MvRecollement<F> {
    pub fn category(&self) -> &MvCategory<F> {
        &self.cat
    }

    /// `j_!* Y = (Y, im ε_Y, ε_Y, inclusion)`.
    pub fn intermediate_extension_formula(&self, y: &RightModule<F>) -> MvObject<F> {
        let eps = self.cat.epsilon_at(y);
        let (epi, mono) = self.cat.closed().image_of(&eps);
        self.cat.assemble(y.clone(), epi.target.clone(), epi.matrix, mono.matrix)
    }

    /// An isomorphism from the formula for `j_!* Y` to the image of
    /// `j_! Y -> j_* Y`, both embedded in `j_* Y`.
    pub fn compare_intermediate_extension(&self, y: &RightModule<F>) -> Result<MvMorphism<F>> {
        let c = &self.cat;
        let generic = intermediate_extension(self, y)?;
        let formula = self.intermediate_extension_formula(y);
        let jy = self.j_lower(y);
        let mono = c.pair(&formula, &jy, Matrix::identity(y.dim()), formula.beta.matrix.clone());
        let mismatch = || Error::Invariant("the two intermediate extensions have different images in j_* Y".into());
        let there = c.factor_through_mono(&mono, &generic.mono).ok_or_else(mismatch)?;
        let back = c.factor_through_mono(&generic.mono, &mono).ok_or_else(mismatch)?;
        let round = c.compose(&there, &back);
        let round_back = c.compose(&back, &there);
        if !c.morphisms_equal(&round, &c.identity(&formula)) || !c.morphisms_equal(&round_back, &c.identity(&generic.object)) {
            return Err(mismatch());
        }
        Ok(there)
    }

    /// Indecomposable projectives, injectives and simples of both sides,
    /// pushed into the glued category along `i_*`, `j_!`, `j_*` and `j_!*`.
    pub fn standard_samples(&self) -> Samples<MvObject<F>, RightModule<F>, RightModule<F>> {
        let named = |tag: &str, cat: &ModCat<F>| {
            let cells = cat.cells();
            let names = cat.algebra().vertex_names().to_vec();
            let mut out = Vec::new();
            for (kind, list) in [("P", &cells.projectives), ("I", &cells.injectives), ("S", &cells.simples)] {
                for (v, m) in list.iter().enumerate() {
                    out.push((format!("{tag}{kind}({})", names[v]), m.clone()));
                }
            }
            out
        };
        let left = named("", self.cat.closed());
        let right = named("", self.cat.open());
        let mut center = Vec::new();
        for (n, z) in &left {
            center.push((format!("i_*{n}"), self.i_lower(z)));
        }
        for (n, y) in &right {
            center.push((format!("j_!{n}"), self.j_shriek(y)));
            center.push((format!("j_*{n}"), self.j_lower(y)));
            center.push((format!("j_!*{n}"), self.intermediate_extension_formula(y)));
        }
        Samples { center, left, right }
    }

    fn zero_u(&self) -> RightModule<F> {
        self.cat.open().zero()
    }
}

impl<F: Field> Recollement for MvRecollement<F> {
    type Scalar = F;
    type Center = MvCategory<F>;
    type Left = ModCat<F>;
    type Right = ModCat<F>;

    fn center(&self) -> &MvCategory<F> {
        &self.cat
    }

    fn left(&self) -> &ModCat<F> {
        self.cat.closed()
    }

    fn right(&self) -> &ModCat<F> {
        self.cat.open()
    }

    fn i_lower(&self, z: &RightModule<F>) -> MvObject<F> {
        let u = self.zero_u();
        let (dt, dh) = (self.cat.functor_f(&u).module.dim(), self.cat.functor_g(&u).module.dim());
        self.cat.assemble(u, z.clone(), Matrix::zeros(dt, z.dim()), Matrix::zeros(z.dim(), dh))
    }

    fn i_lower_map(&self, f: &ModuleMap<F>) -> MvMorphism<F> {
        let (s, t) = (self.i_lower(&f.source), self.i_lower(&f.target));
        self.cat.pair(&s, &t, Matrix::zeros(0, 0), f.matrix.clone())
    }

    fn i_upper(&self, x: &MvObject<F>) -> RightModule<F> {
        self.cat.closed().cokernel_of(&x.alpha).0
    }

    fn i_upper_map(&self, f: &MvMorphism<F>) -> ModuleMap<F> {
        let (cs, ps) = self.cat.closed().cokernel_of(&f.source.alpha);
        let (ct, pt) = self.cat.closed().cokernel_of(&f.target.alpha);
        ModuleMap::new(cs, ct, through_epi(&ps.matrix, &f.fz.then(&pt).matrix))
    }

    fn i_shriek(&self, x: &MvObject<F>) -> RightModule<F> {
        self.cat.closed().kernel_of(&x.beta).0
    }

    fn i_shriek_map(&self, f: &MvMorphism<F>) -> ModuleMap<F> {
        let (ks, is) = self.cat.closed().kernel_of(&f.source.beta);
        let (kt, it) = self.cat.closed().kernel_of(&f.target.beta);
        ModuleMap::new(ks, kt, through_mono(&is.then(&f.fz).matrix, &it.matrix))
    }

    fn j_upper(&self, x: &MvObject<F>) -> RightModule<F> {
        x.xu.clone()
    }

    fn j_upper_map(&self, f: &MvMorphism<F>) -> ModuleMap<F> {
        f.fu.clone()
    }

    fn j_shriek(&self, y: &RightModule<F>) -> MvObject<F> {
        let eps = self.cat.epsilon_at(y);
        let d = eps.source.dim();
        self.cat.assemble(y.clone(), eps.source.clone(), Matrix::identity(d), eps.matrix)
    }

    fn j_shriek_map(&self, f: &ModuleMap<F>) -> MvMorphism<F> {
        let (s, t) = (self.j_shriek(&f.source), self.j_shriek(&f.target));
        let ff = self.cat.f_map(f, &s, &t);
        self.cat.pair(&s, &t, f.matrix.clone(), ff.matrix)
    }

    fn j_lower(&self, y: &RightModule<F>) -> MvObject<F> {
        let eps = self.cat.epsilon_at(y);
        let d = eps.target.dim();
        self.cat.assemble(y.clone(), eps.target.clone(), eps.matrix, Matrix::identity(d))
    }

    fn j_lower_map(&self, f: &ModuleMap<F>) -> MvMorphism<F> {
        let (s, t) = (self.j_lower(&f.source), self.j_lower(&f.target));
        let gf = self.cat.g_map(f, &s, &t);
        self.cat.pair(&s, &t, f.matrix.clone(), gf.matrix)
    }

    fn i_pull_unit(&self, x: &MvObject<F>) -> MvMorphism<F> {
        let (c, p) = self.cat.closed().cokernel_of(&x.alpha);
        let t = self.i_lower(&c);
        self.cat.pair(x, &t, Matrix::zeros(x.xu.dim(), 0), p.matrix)
    }

    fn i_pull_counit(&self, z: &RightModule<F>) -> ModuleMap<F> {
        let (c, p) = self.cat.closed().cokernel_of(&self.i_lower(z).alpha);
        ModuleMap::new(c, z.clone(), through_epi(&p.matrix, &Matrix::identity(z.dim())))
    }

    fn i_shriek_unit(&self, z: &RightModule<F>) -> ModuleMap<F> {
        let (k, i) = self.cat.closed().kernel_of(&self.i_lower(z).beta);
        ModuleMap::new(z.clone(), k, through_mono(&Matrix::identity(z.dim()), &i.matrix))
    }

    fn i_shriek_counit(&self, x: &MvObject<F>) -> MvMorphism<F> {
        let (k, i) = self.cat.closed().kernel_of(&x.beta);
        let s = self.i_lower(&k);
        self.cat.pair(&s, x, Matrix::zeros(0, x.xu.dim()), i.matrix)
    }

    fn j_shriek_unit(&self, y: &RightModule<F>) -> ModuleMap<F> {
        ModuleMap::identity(y)
    }

    fn j_shriek_counit(&self, x: &MvObject<F>) -> MvMorphism<F> {
        let s = self.j_shriek(&x.xu);
        self.cat.pair(&s, x, Matrix::identity(x.xu.dim()), x.alpha.matrix.clone())
    }

    fn j_star_unit(&self, x: &MvObject<F>) -> MvMorphism<F> {
        let t = self.j_lower(&x.xu);
        self.cat.pair(x, &t, Matrix::identity(x.xu.dim()), x.beta.matrix.clone())
    }

    fn j_star_counit(&self, y: &RightModule<F>) -> ModuleMap<F> {
        ModuleMap::identity(y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MvSimpleKind {
    /// `i_* L` for a simple `R`-module.
    Closed,
    /// `j_!* L` for a simple `S`-module.
    Open,
}

#[derive(Clone, Debug)]
pub struct MvSimple<F: Field> {
    pub kind: MvSimpleKind,
    pub vertex: String,
    pub object: MvObject<F>,
}

/// `i_*` of the simple `R`-modules and `j_!*` of the simple `S`-modules,
/// each checked simple and pairwise without nonzero maps.
pub fn mv_simples<F: Field>(r: &MvRecollement<F>) -> Result<Vec<MvSimple<F>>> {
    let c = r.category();
    let mut out = Vec::new();
    for (v, l) in c.closed().cells().simples.iter().enumerate() {
        let vertex = c.closed().algebra().vertex_names()[v].clone();
        out.push(MvSimple { kind: MvSimpleKind::Closed, vertex, object: r.i_lower(l) });
    }
    for (v, l) in c.open().cells().simples.iter().enumerate() {
        let vertex = c.open().algebra().vertex_names()[v].clone();
        out.push(MvSimple { kind: MvSimpleKind::Open, vertex, object: r.intermediate_extension_formula(l) });
    }
    for s in &out {
        if !c.is_simple(&s.object) {
            return Err(Error::Invariant(format!("{:?} simple at {} has a proper nonzero subobject", s.kind, s.vertex)));
        }
    }
    for (i, a) in out.iter().enumerate() {
        for b in &out[..i] {
            if !c.hom_basis(&b.object, &a.object).is_empty() {
                return Err(Error::Invariant(format!(
                    "{:?} simple at {} maps to {:?} simple at {}",
                    b.kind, b.vertex, a.kind, a.vertex
                )));
            }
        }
    }
    Ok(out)
}
