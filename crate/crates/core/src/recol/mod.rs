//! Recollements of abelian categories: the six-functor interface, sampled
//! axiom verification, and intermediate extensions.
//!
//! Functor names: `i_lower` is `i_*`, `i_upper` is `i^*`, `i_shriek` is `i^!`,
//! `j_upper` is `j^*`, `j_shriek` is `j_!` and `j_lower` is `j_*`.

mod idempotent;
mod probes;
mod verify;

#[cfg(test)]
mod tests;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::AbelianCategory;

pub use idempotent::{CoverTransport, IdempotentRecollement, SwappedPushforward};
pub use probes::{intermediate_extension_probes, ExtensionProbeReport};
pub use verify::{verify_recollement, AxiomViolation, RecollementReport, Samples};

pub type Obj<C> = <C as AbelianCategory>::Object;
pub type Mor<C> = <C as AbelianCategory>::Morphism;

/// `A_Z --i_*--> A --j^*--> A_U` with both adjoint triples.
pub trait Recollement {
    type Scalar: Field;
    type Center: AbelianCategory<Scalar = Self::Scalar>;
    type Left: AbelianCategory<Scalar = Self::Scalar>;
    type Right: AbelianCategory<Scalar = Self::Scalar>;

    fn center(&self) -> &Self::Center;
    fn left(&self) -> &Self::Left;
    fn right(&self) -> &Self::Right;

    fn i_lower(&self, z: &Obj<Self::Left>) -> Obj<Self::Center>;
    fn i_lower_map(&self, f: &Mor<Self::Left>) -> Mor<Self::Center>;
    fn i_upper(&self, x: &Obj<Self::Center>) -> Obj<Self::Left>;
    fn i_upper_map(&self, f: &Mor<Self::Center>) -> Mor<Self::Left>;
    fn i_shriek(&self, x: &Obj<Self::Center>) -> Obj<Self::Left>;
    fn i_shriek_map(&self, f: &Mor<Self::Center>) -> Mor<Self::Left>;
    fn j_upper(&self, x: &Obj<Self::Center>) -> Obj<Self::Right>;
    fn j_upper_map(&self, f: &Mor<Self::Center>) -> Mor<Self::Right>;
    fn j_shriek(&self, y: &Obj<Self::Right>) -> Obj<Self::Center>;
    fn j_shriek_map(&self, f: &Mor<Self::Right>) -> Mor<Self::Center>;
    fn j_lower(&self, y: &Obj<Self::Right>) -> Obj<Self::Center>;
    fn j_lower_map(&self, f: &Mor<Self::Right>) -> Mor<Self::Center>;

    /// `X -> i_* i^* X`.
    fn i_pull_unit(&self, x: &Obj<Self::Center>) -> Mor<Self::Center>;
    /// `i^* i_* Z -> Z`.
    fn i_pull_counit(&self, z: &Obj<Self::Left>) -> Mor<Self::Left>;
    /// `Z -> i^! i_* Z`.
    fn i_shriek_unit(&self, z: &Obj<Self::Left>) -> Mor<Self::Left>;
    /// `i_* i^! X -> X`.
    fn i_shriek_counit(&self, x: &Obj<Self::Center>) -> Mor<Self::Center>;
    /// `Y -> j^* j_! Y`.
    fn j_shriek_unit(&self, y: &Obj<Self::Right>) -> Mor<Self::Right>;
    /// `j_! j^* X -> X`.
    fn j_shriek_counit(&self, x: &Obj<Self::Center>) -> Mor<Self::Center>;
    /// `X -> j_* j^* X`.
    fn j_star_unit(&self, x: &Obj<Self::Center>) -> Mor<Self::Center>;
    /// `j^* j_* Y -> Y`.
    fn j_star_counit(&self, y: &Obj<Self::Right>) -> Mor<Self::Right>;
}

/// `j_!* Y` as the image of the canonical map `j_! Y -> j_* Y`.
pub struct IntermediateExtension<C: AbelianCategory> {
    pub object: C::Object,
    /// `j_! Y -> j_* Y`.
    pub canonical: C::Morphism,
    /// `j_! Y -> j_!* Y`.
    pub epi: C::Morphism,
    /// `j_!* Y -> j_* Y`.
    pub mono: C::Morphism,
}

/// The map `j_! Y -> j_* Y` adjoint to the identity of `Y`.
pub fn canonical_map<R: Recollement>(r: &R, y: &Obj<R::Right>) -> Result<Mor<R::Center>> {
    let eps = r.j_star_counit(y);
    let inv = r
        .right()
        .inverse(&eps)
        .ok_or_else(|| Error::Invariant("j^* j_* Y -> Y is not invertible".into()))?;
    let jy = r.j_lower(y);
    Ok(r.center().compose(&r.j_shriek_map(&inv), &r.j_shriek_counit(&jy)))
}

/// Compute `j_!* Y` and check that it has no nonzero quotient or subobject
/// in the image of `i_*` and restricts back to `Y`.
pub fn intermediate_extension<R: Recollement>(r: &R, y: &Obj<R::Right>) -> Result<IntermediateExtension<R::Center>> {
    let a = r.center();
    let canonical = canonical_map(r, y)?;
    let (epi, mono) = a.image(&canonical);
    let object = a.target(&epi);
    if !r.left().is_zero_object(&r.i_upper(&object)) {
        return Err(Error::Invariant("i^* of the intermediate extension is nonzero".into()));
    }
    if !r.left().is_zero_object(&r.i_shriek(&object)) {
        return Err(Error::Invariant("i^! of the intermediate extension is nonzero".into()));
    }
    let back = r.right().compose(&r.j_upper_map(&mono), &r.j_star_counit(y));
    if !r.right().is_iso(&back) {
        return Err(Error::Invariant("j^* of the intermediate extension is not isomorphic to Y".into()));
    }
    Ok(IntermediateExtension { object, canonical, epi, mono })
}

/// `j_!* g` for `g : Y -> Y'`, given both intermediate extensions.
pub fn intermediate_extension_map<R: Recollement>(
    r: &R,
    g: &Mor<R::Right>,
    source: &IntermediateExtension<R::Center>,
    target: &IntermediateExtension<R::Center>,
) -> Option<Mor<R::Center>> {
    let a = r.center();
    let along = a.compose(&source.mono, &r.j_lower_map(g));
    a.factor_through_mono(&along, &target.mono)
}

/// Which flank of the canonical sequence is allowed to be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalSide {
    /// `i^* M = 0`: `0 -> i_* i^! M -> M -> j_!* j^* M -> 0`.
    NoQuotientsFromZ,
    /// `i^! M = 0`: `0 -> j_!* j^* M -> M -> i_* i^* M -> 0`.
    NoSubobjectsFromZ,
}

pub struct CanonicalSes<C: AbelianCategory> {
    pub sub: C::Morphism,
    pub quo: C::Morphism,
}

impl<C: AbelianCategory> Clone for IntermediateExtension<C> {
    fn clone(&self) -> Self {
        IntermediateExtension {
            object: self.object.clone(),
            canonical: self.canonical.clone(),
            epi: self.epi.clone(),
            mono: self.mono.clone(),
        }
    }
}

impl<C: AbelianCategory> fmt::Debug for IntermediateExtension<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntermediateExtension").field("object", &self.object).field("canonical", &self.canonical).finish()
    }
}

impl<C: AbelianCategory> Clone for CanonicalSes<C> {
    fn clone(&self) -> Self {
        CanonicalSes { sub: self.sub.clone(), quo: self.quo.clone() }
    }
}

impl<C: AbelianCategory> fmt::Debug for CanonicalSes<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CanonicalSes").field("sub", &self.sub).field("quo", &self.quo).finish()
    }
}

/// The canonical short exact sequence of `M` relative to the recollement.
pub fn canonical_ses<R: Recollement>(r: &R, m: &Obj<R::Center>, side: CanonicalSide) -> Result<CanonicalSes<R::Center>> {
    let a = r.center();
    let z = r.left();
    let ses = match side {
        CanonicalSide::NoQuotientsFromZ => {
            let q = r.i_upper(m);
            if !z.is_zero_object(&q) {
                return Err(Error::Invariant(format!("i^*(M) is nonzero: {q:?}")));
            }
            let (epi, _) = a.image(&r.j_star_unit(m));
            CanonicalSes { sub: r.i_shriek_counit(m), quo: epi }
        }
        CanonicalSide::NoSubobjectsFromZ => {
            let s = r.i_shriek(m);
            if !z.is_zero_object(&s) {
                return Err(Error::Invariant(format!("i^!(M) is nonzero: {s:?}")));
            }
            let (_, mono) = a.image(&r.j_shriek_counit(m));
            CanonicalSes { sub: mono, quo: r.i_pull_unit(m) }
        }
    };
    if !is_short_exact(a, &ses.sub, &ses.quo) {
        return Err(Error::Invariant("canonical sequence is not exact".into()));
    }
    let glued = match side {
        CanonicalSide::NoQuotientsFromZ => a.target(&ses.quo),
        CanonicalSide::NoSubobjectsFromZ => a.source(&ses.sub),
    };
    let ext = intermediate_extension(r, &r.j_upper(m))?;
    match a.isomorphism(&glued, &ext.object) {
        crate::modcat::Iso::No(why) => {
            Err(Error::Invariant(format!("glued term differs from j_!* j^* M: {why}")))
        }
        _ => Ok(ses),
    }
}

/// `0 -> X -f-> Y -g-> W -> 0` is exact.
pub fn is_short_exact<C: AbelianCategory + ?Sized>(c: &C, f: &C::Morphism, g: &C::Morphism) -> bool {
    c.is_mono(f) && c.is_epi(g) && is_exact_at(c, f, g)
}

/// `X -f-> Y -g-> W` is exact at `Y`.
pub fn is_exact_at<C: AbelianCategory + ?Sized>(c: &C, f: &C::Morphism, g: &C::Morphism) -> bool {
    if !c.is_zero_morphism(&c.compose(f, g)) {
        return false;
    }
    let (_, im) = c.image(f);
    c.object_dim(&c.source(&im)) == c.object_dim(&c.source(&c.kernel(g)))
}
