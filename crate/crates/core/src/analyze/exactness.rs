//! Exactness of `j_!` and `j_*` at each stratum, decided twice: by
//! projectivity of the corner bimodule and by pushing short exact sequences.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::{ModCat, ModuleMap, RightModule};
use crate::recol::{is_exact_at, IdempotentRecollement, Recollement};
use crate::strat::{Sign, Stratification};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `j_!`
    Shriek,
    /// `j_*`
    Lower,
}

impl Side {
    /// The functor that has to be exact for the given sign.
    pub fn for_sign(sign: Sign) -> Side {
        match sign {
            Sign::Plus => Side::Lower,
            Sign::Minus => Side::Shriek,
        }
    }

    pub fn functor(self) -> &'static str {
        match self {
            Side::Shriek => "j_!",
            Side::Lower => "j_*",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExactnessCertificate {
    /// The corner bimodule is its own projective cover.
    ProjectiveCover { bimodule: String, dim: usize, summands: Vec<String> },
    /// A short exact sequence of the stratum whose image is not exact.
    LostExactness { sequence: String, dims: [usize; 3], image_dims: [usize; 3], failure: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub label: String,
    pub side: Side,
    pub exact: bool,
    pub certificate: ExactnessCertificate,
}

impl<F: Field> Stratification<F> {
    /// Whether `j^λ_!` (resp. `j^λ_*`) is exact, i.e. whether `fB` is
    /// projective over `fBf` on the left (resp. `Bf` on the right), where
    /// `B = A_{<=λ}`. Both the bimodule and the functor are examined and
    /// must agree.
    pub fn exactness_check(&self, lam: usize, side: Side) -> Result<Exactness> {
        let label = self.poset().label(lam).to_string();
        let rec = &self.stratum(lam).recollement;
        let u = rec.right();
        let (module, cat, what) = match side {
            Side::Shriek => {
                let bim = rec.e_times_a();
                let corner = u.algebra();
                let action = (0..corner.dim()).map(|i| bim.left_action(&corner.basis_vector(i))).collect();
                let op = u.opposite();
                (RightModule::from_action(Arc::clone(op.algebra()), bim.dim(), action), op, "fB over fBf (left)")
            }
            Side::Lower => (rec.a_times_e().as_right_module(), u, "Bf over fBf (right)"),
        };
        let cover = cat.projective_cover(&module);
        let projective = cover.map.is_iso();
        let witness = lost_exactness(rec, side);
        let names = cat.algebra().vertex_names();
        let certificate = match (projective, witness) {
            (true, None) => ExactnessCertificate::ProjectiveCover {
                bimodule: what.into(),
                dim: module.dim(),
                summands: cover.summands.iter().map(|&v| format!("P({})", names[v])).collect(),
            },
            (false, Some(w)) => w,
            (true, Some(w)) => {
                return Err(Error::Invariant(format!(
                    "{what} at '{label}' is projective but {} loses exactness: {w:?}",
                    side.functor()
                )))
            }
            (false, None) => {
                return Err(Error::Invariant(format!(
                    "{what} at '{label}' is not projective but {} keeps every test sequence exact",
                    side.functor()
                )))
            }
        };
        Ok(Exactness { label, side, exact: projective, certificate })
    }
}

/// Push `0 -> rad P -> P -> L -> 0` and `0 -> L -> I -> I/L -> 0` for every
/// stratum simple `L` through the functor; the first non-exact image.
fn lost_exactness<F: Field>(rec: &IdempotentRecollement<F>, side: Side) -> Option<ExactnessCertificate> {
    let u = rec.right();
    let names = u.algebra().vertex_names();
    let apply = |f: &ModuleMap<F>| match side {
        Side::Shriek => rec.j_shriek_map(f),
        Side::Lower => rec.j_lower_map(f),
    };
    for v in 0..u.algebra().vertex_count() {
        let top = u.cells().tops[v].clone();
        let (_, rad) = u.kernel_of(&top);
        let env = u.injective_envelope(&u.simple(v)).map;
        let (_, quo) = u.cokernel_of(&env);
        let n = &names[v];
        let sequences = [
            (format!("0 -> rad P({n}) -> P({n}) -> S({n}) -> 0"), rad, top),
            (format!("0 -> S({n}) -> I({n}) -> I({n})/S({n}) -> 0"), env, quo),
        ];
        for (sequence, f, g) in sequences {
            let (jf, jg) = (apply(&f), apply(&g));
            if let Some(failure) = failure(rec.center(), &jf, &jg) {
                return Some(ExactnessCertificate::LostExactness {
                    sequence,
                    dims: [f.source.dim(), f.target.dim(), g.target.dim()],
                    image_dims: [jf.source.dim(), jf.target.dim(), jg.target.dim()],
                    failure,
                });
            }
        }
    }
    None
}

fn failure<F: Field>(cat: &ModCat<F>, f: &ModuleMap<F>, g: &ModuleMap<F>) -> Option<String> {
    if !f.is_injective() {
        Some(format!("left map has kernel of dimension {}", f.source.dim() - f.rank()))
    } else if !g.is_surjective() {
        Some(format!("right map has cokernel of dimension {}", g.target.dim() - g.rank()))
    } else if !is_exact_at(cat, f, g) {
        Some("not exact in the middle".into())
    } else {
        None
    }
}
