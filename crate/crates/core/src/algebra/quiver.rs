//! Bound quiver presentations and their path algebras.

use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};

pub const DEFAULT_MAX_PATH_LENGTH: usize = 32;

/// Stop enumerating paths past this many; such presentations are reported as
/// possibly infinite.
const MAX_PATHS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A linear combination of paths; each path is a list of arrow indices
/// composed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    pub terms: Vec<(F, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<F> {
    pub quiver: Quiver,
    pub relations: Vec<Relation<F>>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Schema(format!("unknown vertex {v:?}")))
        };
        let arrows = arrows
            .iter()
            .map(|(name, from, to)| Ok(Arrow { name: name.to_string(), from: index(from)?, to: index(to)? }))
            .collect::<Result<Vec<_>>>()?;
        let q = Quiver { vertices, arrows };
        q.check()?;
        Ok(q)
    }

    pub fn check(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::Schema(format!("duplicate vertex {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) || self.vertices.contains(&a.name) {
                return Err(Error::Schema(format!("duplicate name {:?}", a.name)));
            }
            if a.from >= self.vertices.len() || a.to >= self.vertices.len() {
                return Err(Error::Schema(format!("arrow {:?} has a missing endpoint", a.name)));
            }
        }
        Ok(())
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Endpoints of a nonempty composable path.
    fn endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.to;
        for &a in &path[1..] {
            let arrow = self.arrows.get(a)?;
            if arrow.from != at {
                return None;
            }
            at = arrow.to;
        }
        Some((first.from, at))
    }
}

impl<F: Field> Presentation<F> {
    /// Parse relations written as `(coefficient, [arrow names])` lists.
    pub fn new(quiver: Quiver, relations: &[Vec<(F, Vec<&str>)>]) -> Result<Self> {
        let relations = relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|(c, path)| {
                        let idx = path
                            .iter()
                            .map(|n| {
                                quiver.arrow_index(n).ok_or_else(|| Error::Schema(format!("unknown arrow {n:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok((c.clone(), idx))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Relation { terms })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation { quiver, relations })
    }
}

/// A path in the quiver: a vertex (trivial path) or a nonempty arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Path {
    Vertex(usize),
    Arrows(Vec<usize>),
}

impl Path {
    fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }
}

struct PathSpace {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ends: Vec<(usize, usize)>,
}

impl PathSpace {
    /// All paths of length at most `max_len`, ordered longest first and then
    /// lexicographically, so that row reduction pivots on long paths.
    fn new(q: &Quiver, max_len: usize) -> Option<Self> {
        let mut layers: Vec<Vec<(Path, (usize, usize))>> =
            vec![(0..q.vertices.len()).map(|v| (Path::Vertex(v), (v, v))).collect()];
        let mut total = q.vertices.len();
        for len in 1..=max_len {
            let mut next = Vec::new();
            if len == 1 {
                for (i, a) in q.arrows.iter().enumerate() {
                    next.push((Path::Arrows(vec![i]), (a.from, a.to)));
                }
            } else {
                for (p, (s, t)) in &layers[len - 1] {
                    let Path::Arrows(arrows) = p else { unreachable!() };
                    for (i, a) in q.arrows.iter().enumerate() {
                        if a.from == *t {
                            let mut ext = arrows.clone();
                            ext.push(i);
                            next.push((Path::Arrows(ext), (*s, a.to)));
                        }
                    }
                }
            }
            total += next.len();
            if total > MAX_PATHS {
                return None;
            }
            layers.push(next);
        }
        let mut all: Vec<(Path, (usize, usize))> = layers.into_iter().flatten().collect();
        all.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        let index = all.iter().enumerate().map(|(i, (p, _))| (p.clone(), i)).collect();
        let (paths, ends) = all.into_iter().unzip();
        Some(PathSpace { paths, index, ends })
    }

    fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Concatenation `p * q`, or `None` if not composable or too long.
    fn concat(&self, p: usize, q: usize) -> Option<usize> {
        if self.ends[p].1 != self.ends[q].0 {
            return None;
        }
        match (&self.paths[p], &self.paths[q]) {
            (Path::Vertex(_), _) => Some(q),
            (_, Path::Vertex(_)) => Some(p),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut c = a.clone();
                c.extend(b);
                self.index.get(&Path::Arrows(c)).copied()
            }
        }
    }
}

/// Build `kQ/I` for the ideal `I` generated by the relations.
///
/// Paths are truncated at a growing length `L`; the construction stops once
/// every path of length `L` lies in the ideal (or no such path exists), which
/// for an admissible ideal yields the exact quotient.
pub fn build_bound_quiver_algebra<F: Field>(p: &Presentation<F>, max_len: usize) -> Result<Algebra<F>> {
    let q = &p.quiver;
    q.check()?;
    let mut min_rel_len = usize::MAX;
    for (ri, r) in p.relations.iter().enumerate() {
        let mut ends = None;
        for (_, path) in &r.terms {
            if path.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "relation {ri} has a term of length {}",
                    path.len()
                )));
            }
            let e = q
                .endpoints(path)
                .ok_or_else(|| Error::Schema(format!("relation {ri} contains a non-composable path")))?;
            if *ends.get_or_insert(e) != e {
                return Err(Error::Schema(format!("relation {ri} mixes paths with different endpoints")));
            }
            min_rel_len = min_rel_len.min(path.len());
        }
    }

    for len in 2..=max_len {
        let space = PathSpace::new(q, len).ok_or(Error::PossiblyInfinite(len))?;
        let n = space.dim();
        let rels: Vec<Vec<F>> = p
            .relations
            .iter()
            .map(|r| {
                let mut v = vec![F::zero(); n];
                for (c, path) in &r.terms {
                    if let Some(&i) = space.index.get(&Path::Arrows(path.clone())) {
                        v[i] += c.clone();
                    }
                }
                v
            })
            .collect();
        let ideal = ideal_in_truncation(&space, &rels, min_rel_len, len);
        let longest: Vec<usize> = (0..n).filter(|&i| space.paths[i].len() == len).collect();
        let done = longest.iter().all(|&i| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            ideal.contains(&v)
        });
        if done {
            return Ok(quotient_algebra(q, &space, &ideal));
        }
    }
    Err(Error::PossiblyInfinite(max_len))
}

fn ideal_in_truncation<F: Field>(space: &PathSpace, rels: &[Vec<F>], min_rel_len: usize, len: usize) -> Subspace<F> {
    let n = space.dim();
    let mut rows = Vec::new();
    if rels.is_empty() {
        return Subspace::zero(n);
    }
    let short: Vec<usize> = (0..n).filter(|&i| space.paths[i].len() + min_rel_len <= len).collect();
    for r in rels {
        for &a in &short {
            let ar = left_mult_path(space, a, r);
            if ar.iter().all(|x| x.is_zero()) {
                continue;
            }
            for &b in &short {
                let arb = right_mult_path(space, &ar, b);
                if arb.iter().any(|x| !x.is_zero()) {
                    rows.push(arb);
                }
            }
        }
    }
    Subspace::span(n, &rows)
}

fn left_mult_path<F: Field>(space: &PathSpace, a: usize, v: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); v.len()];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            if let Some(j) = space.concat(a, i) {
                out[j] += c.clone();
            }
        }
    }
    out
}

fn right_mult_path<F: Field>(space: &PathSpace, v: &[F], b: usize) -> Vec<F> {
    let mut out = vec![F::zero(); v.len()];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            if let Some(j) = space.concat(i, b) {
                out[j] += c.clone();
            }
        }
    }
    out
}

fn quotient_algebra<F: Field>(q: &Quiver, space: &PathSpace, ideal: &Subspace<F>) -> Algebra<F> {
    let quot = ideal.quotient();
    let n = space.dim();
    // surviving paths: shortest first, vertices leading
    let mut kept: Vec<(usize, usize)> = (0..quot.section.rows())
        .map(|i| {
            let col = (0..n).find(|&c| quot.section[(i, c)].is_one()).expect("standard vector");
            (col, i)
        })
        .collect();
    kept.sort_by(|a, b| space.paths[a.0].len().cmp(&space.paths[b.0].len()).then_with(|| space.paths[a.0].cmp(&space.paths[b.0])));
    let k = kept.len();
    // reorder the quotient coordinates to match `kept`
    let mut perm = Matrix::zeros(quot.section.rows(), k);
    for (new, &(_, old)) in kept.iter().enumerate() {
        perm[(old, new)] = F::one();
    }
    let proj = &quot.projection * &perm;

    let labels: Vec<String> = kept
        .iter()
        .map(|&(c, _)| match &space.paths[c] {
            Path::Vertex(v) => format!("e{}", q.vertices[*v]),
            Path::Arrows(a) => a.iter().map(|&i| q.arrows[i].name.as_str()).collect::<Vec<_>>().join("*"),
        })
        .collect();
    let mut table = vec![vec![vec![F::zero(); k]; k]; k];
    for (i, &(pi, _)) in kept.iter().enumerate() {
        for (j, &(pj, _)) in kept.iter().enumerate() {
            if let Some(c) = space.concat(pi, pj) {
                table[i][j] = proj.row_vec(c);
            }
        }
    }
    let unit_idx = |v: usize| kept.iter().position(|&(c, _)| space.paths[c] == Path::Vertex(v)).expect("vertex survives");
    let idempotents: Vec<Vec<F>> = (0..q.vertices.len())
        .map(|v| {
            let mut e = vec![F::zero(); k];
            e[unit_idx(v)] = F::one();
            e
        })
        .collect();
    let unit = idempotents.iter().fold(vec![F::zero(); k], |mut acc, e| {
        for (a, b) in acc.iter_mut().zip(e) {
            *a += b.clone();
        }
        acc
    });
    let radical: Vec<Vec<F>> = (0..k)
        .filter(|&i| space.paths[kept[i].0].len() > 0)
        .map(|i| {
            let mut e = vec![F::zero(); k];
            e[i] = F::one();
            e
        })
        .collect();
    Algebra::from_structure_constants(labels, q.vertices.clone(), &table, unit, idempotents, &radical)
        .expect("consistent dimensions")
}
