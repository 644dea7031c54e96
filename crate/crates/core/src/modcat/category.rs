//! A computable abelian category over an exact field.
//!
//! Composition is written in diagrammatic order: `compose(f, g)` is "`f`, then `g`".

use std::fmt::Debug;

use num_traits::Zero;
use serde::Serialize;

use crate::exactla::{Field, Matrix};

pub trait AbelianCategory {
    type Scalar: Field;
    type Object: Clone + Debug;
    type Morphism: Clone + Debug;

    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    fn zero_morphism(&self, x: &Self::Object, y: &Self::Object) -> Self::Morphism;
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    fn add(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    fn scale(&self, c: &Self::Scalar, f: &Self::Morphism) -> Self::Morphism;

    /// A basis of `Hom(x, y)`.
    fn hom_basis(&self, x: &Self::Object, y: &Self::Object) -> Vec<Self::Morphism>;

    /// The kernel, as a monomorphism into the source.
    fn kernel(&self, f: &Self::Morphism) -> Self::Morphism;
    /// The cokernel, as an epimorphism out of the target.
    fn cokernel(&self, f: &Self::Morphism) -> Self::Morphism;

    fn direct_sum(&self, parts: &[Self::Object]) -> (Self::Object, Vec<Self::Morphism>, Vec<Self::Morphism>);
    fn zero_object(&self) -> Self::Object;
    fn is_zero_object(&self, x: &Self::Object) -> bool;

    /// Linear coordinates of a morphism, injective for fixed source and target.
    fn morphism_coords(&self, f: &Self::Morphism) -> Vec<Self::Scalar>;

    /// Total dimension of the underlying vector spaces.
    fn object_dim(&self, x: &Self::Object) -> usize;

    fn is_zero_morphism(&self, f: &Self::Morphism) -> bool {
        self.morphism_coords(f).iter().all(|c| c.is_zero())
    }

    fn morphisms_equal(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        self.morphism_coords(f) == self.morphism_coords(g)
    }

    fn is_mono(&self, f: &Self::Morphism) -> bool {
        self.is_zero_object(&self.source(&self.kernel(f)))
    }

    fn is_epi(&self, f: &Self::Morphism) -> bool {
        self.is_zero_object(&self.target(&self.cokernel(f)))
    }

    fn is_iso(&self, f: &Self::Morphism) -> bool {
        self.is_mono(f) && self.is_epi(f)
    }

    /// The image of `f` as a monomorphism into the target, with the induced
    /// epimorphism from the source.
    fn image(&self, f: &Self::Morphism) -> (Self::Morphism, Self::Morphism) {
        let mono = self.kernel(&self.cokernel(f));
        let epi = self.factor_through_mono(f, &mono).expect("f factors through its image");
        (epi, mono)
    }

    /// Some `g` with `compose(g, m) = f`, if one exists.
    fn factor_through_mono(&self, f: &Self::Morphism, m: &Self::Morphism) -> Option<Self::Morphism> {
        self.lift(f, m)
    }

    /// Some `g` with `compose(g, p) = f`, if one exists (`p` need not be mono).
    fn lift(&self, f: &Self::Morphism, m: &Self::Morphism) -> Option<Self::Morphism> {
        let x = self.source(f);
        let basis = self.hom_basis(&x, &self.source(m));
        let images: Vec<Self::Morphism> = basis.iter().map(|h| self.compose(h, m)).collect();
        let c = solve_combination(self, &images, f)?;
        Some(self.combination(&x, &self.source(m), &basis, &c))
    }

    /// Some `g` with `compose(e, g) = f`, if one exists.
    fn factor_through_epi(&self, f: &Self::Morphism, e: &Self::Morphism) -> Option<Self::Morphism> {
        let y = self.target(f);
        let basis = self.hom_basis(&self.target(e), &y);
        let images: Vec<Self::Morphism> = basis.iter().map(|h| self.compose(e, h)).collect();
        let c = solve_combination(self, &images, f)?;
        Some(self.combination(&self.target(e), &y, &basis, &c))
    }

    fn combination(
        &self,
        x: &Self::Object,
        y: &Self::Object,
        basis: &[Self::Morphism],
        coeffs: &[Self::Scalar],
    ) -> Self::Morphism {
        basis
            .iter()
            .zip(coeffs)
            .fold(self.zero_morphism(x, y), |acc, (b, c)| self.add(&acc, &self.scale(c, b)))
    }

    /// Decide whether two objects are isomorphic. The default scans the basis
    /// of `Hom(x, y)` and its pairwise sums, so it never answers NO beyond
    /// dimension counts.
    fn isomorphism(&self, x: &Self::Object, y: &Self::Object) -> Iso<Self::Morphism> {
        let (dx, dy) = (self.object_dim(x), self.object_dim(y));
        if dx != dy {
            return Iso::No(format!("dimensions {dx} and {dy}"));
        }
        if dx == 0 {
            return Iso::Yes(self.zero_morphism(x, y));
        }
        let basis = self.hom_basis(x, y);
        for (i, h) in basis.iter().enumerate() {
            if self.is_iso(h) {
                return Iso::Yes(h.clone());
            }
            for g in &basis[..i] {
                let s = self.add(h, g);
                if self.is_iso(&s) {
                    return Iso::Yes(s);
                }
            }
        }
        Iso::Undecided("no invertible map among basis elements and pairwise sums".into())
    }

    /// Inverse of an isomorphism.
    fn inverse(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        let id = self.identity(&self.source(f));
        let g = self.factor_through_epi(&id, f)?;
        self.morphisms_equal(&self.compose(&g, f), &self.identity(&self.target(f))).then_some(g)
    }
}

/// Coefficients `c` with `sum c_i targets_i = goal`, compared through
/// `morphism_coords`.
pub fn solve_combination<C: AbelianCategory + ?Sized>(
    cat: &C,
    targets: &[C::Morphism],
    goal: &C::Morphism,
) -> Option<Vec<C::Scalar>> {
    let g = cat.morphism_coords(goal);
    if targets.is_empty() {
        return g.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let rows: Vec<Vec<C::Scalar>> = targets.iter().map(|t| cat.morphism_coords(t)).collect();
    let m = Matrix::from_rows(g.len(), &rows);
    let goal = Matrix::from_rows(g.len(), &[g]);
    Matrix::solve_left(&m, &goal).map(|x| x.row_vec(0))
}

/// Outcome of an isomorphism test. YES carries an explicit isomorphism.
#[derive(Clone, Debug)]
pub enum Iso<M> {
    Yes(M),
    No(String),
    Undecided(String),
}

impl<M: Debug> Iso<M> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Iso::Yes(_))
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            Iso::Yes(_) => Verdict::Yes,
            Iso::No(_) => Verdict::No,
            Iso::Undecided(_) => Verdict::Undecided,
        }
    }

    pub fn reason(&self) -> String {
        match self {
            Iso::Yes(m) => format!("isomorphism {m:?}"),
            Iso::No(r) | Iso::Undecided(r) => r.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}
