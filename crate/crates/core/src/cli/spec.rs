//! The JSON input format and its translation into algebras, stratifications
//! and gluing data.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use crate::algebra::{build_bound_quiver_algebra, Algebra, Presentation, Quiver, DEFAULT_MAX_PATH_LENGTH};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, Matrix};
use crate::modcat::Bimodule;
use crate::mvglue::MvData;
use crate::strat::{Poset, Sign, Stratification};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub field: FieldBlock,
    pub quiver: QuiverBlock,
    #[serde(default)]
    pub relations: Vec<RelationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratification: Option<StratificationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mv: Option<MvBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind")]
pub enum FieldBlock {
    #[serde(rename = "GF")]
    Gf { p: u64 },
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverBlock {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowBlock {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationBlock {
    pub terms: Vec<TermBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermBlock {
    /// An exact field element such as `"1"`, `"-2"` or `"3/4"`.
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratificationBlock {
    pub poset: PosetBlock,
    /// Vertex name to poset element.
    pub rho: BTreeMap<String, String>,
    /// Poset element to sign; every sign pattern is enumerated when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<BTreeMap<String, Sign>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetBlock {
    pub elements: Vec<String>,
    /// Pairs `[a, b]` meaning `a <= b`.
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

/// A quiver with relations over the field of the enclosing file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub quiver: QuiverBlock,
    #[serde(default)]
    pub relations: Vec<RelationBlock>,
}

/// Action matrices on row vectors, one per vertex idempotent (`"e<vertex>"`)
/// and per arrow of each algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleBlock {
    pub dim: usize,
    pub left: BTreeMap<String, Vec<Vec<String>>>,
    pub right: BTreeMap<String, Vec<Vec<String>>>,
}

/// `R` is the closed side, `S` the open side, `M` an `S`-`R` bimodule,
/// `N` an `R`-`S` bimodule and row `i * dim N + j` of `theta` is
/// `θ(m_i (x) n_j)` in the basis of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MvBlock {
    pub r: AlgebraBlock,
    pub s: AlgebraBlock,
    pub m: BimoduleBlock,
    pub n: BimoduleBlock,
    pub theta: Vec<Vec<String>>,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        serde_json::from_str(text).map_err(|e| match e.classify() {
            Category::Data => Error::Schema(e.to_string()),
            _ => Error::Parse(e.to_string()),
        })
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        match self.field {
            FieldBlock::Gf { p } => Ok(FieldSpec::Prime(p)),
            FieldBlock::Q => Ok(FieldSpec::Rationals),
        }
    }

    pub fn algebra<F: Field>(&self) -> Result<Algebra<F>> {
        build_algebra(&self.quiver, &self.relations)
    }
}

fn build_algebra<F: Field>(quiver: &QuiverBlock, relations: &[RelationBlock]) -> Result<Algebra<F>> {
    let vertices: Vec<&str> = quiver.vertices.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> =
        quiver.arrows.iter().map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str())).collect();
    let q = Quiver::new(&vertices, &arrows)?;
    let rels = relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|t| Ok((F::parse_coeff(&t.coeff)?, t.path.iter().map(String::as_str).collect())))
                .collect::<Result<Vec<(F, Vec<&str>)>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Presentation::new(q, &rels)?;
    build_bound_quiver_algebra(&p, DEFAULT_MAX_PATH_LENGTH)
}

impl StratificationBlock {
    pub fn poset(&self) -> Result<Poset> {
        Poset::new(&self.poset.elements, &self.poset.leq)
    }

    pub fn signs(&self, poset: &Poset) -> Result<Option<Vec<Sign>>> {
        let Some(eps) = &self.epsilon else { return Ok(None) };
        for k in eps.keys() {
            if poset.index(k).is_none() {
                return Err(Error::Schema(format!("epsilon names unknown element {k:?}")));
            }
        }
        poset
            .labels()
            .iter()
            .map(|l| eps.get(l).copied().ok_or_else(|| Error::Schema(format!("epsilon has no sign for {l:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn build<F: Field>(&self, algebra: Arc<Algebra<F>>) -> Result<Stratification<F>> {
        let poset = self.poset()?;
        let signs = self.signs(&poset)?;
        for v in self.rho.keys() {
            if algebra.vertex_index(v).is_none() {
                return Err(Error::Schema(format!("rho names unknown vertex {v:?}")));
            }
        }
        let assignment: Vec<(&str, &str)> = self.rho.iter().map(|(v, l)| (v.as_str(), l.as_str())).collect();
        Stratification::from_names(algebra, poset, &assignment, signs)
    }
}

fn parse_matrix<F: Field>(rows: &[Vec<String>], nrows: usize, ncols: usize, what: &str) -> Result<Matrix<F>> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch(format!("{what} must be {nrows} x {ncols}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| F::parse_coeff(c)).collect::<Result<Vec<F>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(ncols, &parsed))
}

/// The action of every basis element of `a`, from the action of its
/// vertices and arrows. `left` composes paths in reverse.
fn basis_actions<F: Field>(
    a: &Algebra<F>,
    table: &BTreeMap<String, Vec<Vec<String>>>,
    dim: usize,
    left: bool,
    what: &str,
) -> Result<Vec<Matrix<F>>> {
    if dim == 0 {
        return Ok(vec![Matrix::zeros(0, 0); a.dim()]);
    }
    let mut gens = BTreeMap::new();
    for (k, rows) in table {
        gens.insert(k.as_str(), parse_matrix::<F>(rows, dim, dim, &format!("{what} action of {k}"))?);
    }
    let lookup = |k: &str| gens.get(k).cloned().ok_or_else(|| Error::Schema(format!("{what} has no action for {k:?}")));
    (0..a.dim())
        .map(|i| {
            let label = &a.labels()[i];
            if let Some(v) = (0..a.vertex_count()).find(|&v| a.idempotent(v) == a.basis_vector(i).as_slice()) {
                return lookup(&format!("e{}", a.vertex_names()[v]));
            }
            let mut acc = Matrix::identity(dim);
            for arrow in label.split('*') {
                let m = lookup(arrow)?;
                acc = if left { &m * &acc } else { &acc * &m };
            }
            Ok(acc)
        })
        .collect()
}

fn build_bimodule<F: Field>(
    b: &BimoduleBlock,
    left: &Arc<Algebra<F>>,
    right: &Arc<Algebra<F>>,
    what: &str,
) -> Result<Bimodule<F>> {
    let l = basis_actions(left, &b.left, b.dim, true, &format!("{what} left"))?;
    let r = basis_actions(right, &b.right, b.dim, false, &format!("{what} right"))?;
    Ok(Bimodule::new(Arc::clone(left), Arc::clone(right), b.dim, l, r))
}

impl MvBlock {
    pub fn build<F: Field>(&self) -> Result<MvData<F>> {
        let r = Arc::new(build_algebra::<F>(&self.r.quiver, &self.r.relations)?);
        let s = Arc::new(build_algebra::<F>(&self.s.quiver, &self.s.relations)?);
        let m = build_bimodule(&self.m, &s, &r, "M")?;
        let n = build_bimodule(&self.n, &r, &s, "N")?;
        let theta = parse_matrix(&self.theta, m.dim() * n.dim(), s.dim(), "theta")?;
        MvData::new(r, s, m, n, theta)
    }
}
