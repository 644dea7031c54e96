//! Small bound-quiver algebras used by the test suites and the bundled corpus.

use std::sync::Arc;

use crate::algebra::{build_bound_quiver_algebra, Algebra, Presentation, Quiver, DEFAULT_MAX_PATH_LENGTH};
use crate::exactla::{Field, Matrix};
use crate::modcat::Bimodule;
use crate::mvglue::MvData;

fn build<F: Field>(vertices: &[&str], arrows: &[(&str, &str, &str)], zero_relations: &[&[&str]]) -> Algebra<F> {
    let q = Quiver::new(vertices, arrows).expect("fixture quiver");
    let rels: Vec<Vec<(F, Vec<&str>)>> = zero_relations.iter().map(|p| vec![(F::one(), p.to_vec())]).collect();
    let p = Presentation::new(q, &rels).expect("fixture relations");
    build_bound_quiver_algebra(&p, DEFAULT_MAX_PATH_LENGTH).expect("fixture algebra")
}

/// `1 -a-> 2`.
pub fn a2<F: Field>() -> Algebra<F> {
    build(&["1", "2"], &[("a", "1", "2")], &[])
}

/// `1 -a-> 2 -b-> 3`, no relations.
pub fn a3<F: Field>() -> Algebra<F> {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[])
}

/// `1 <-> 2` with arrows `a: 1 -> 2`, `b: 2 -> 1` and radical square zero.
pub fn nakayama<F: Field>() -> Algebra<F> {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[&["a", "b"], &["b", "a"]])
}

/// `k[x]/(x^2)`.
pub fn dual_numbers<F: Field>() -> Algebra<F> {
    build(&["1"], &[("x", "1", "1")], &[&["x", "x"]])
}

/// Two arrows `a, b: 1 -> 2`, one arrow `c: 2 -> 1`, relations `bc = ca = cb = 0`.
pub fn kronecker_loop<F: Field>() -> Algebra<F> {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "1")], &[&["b", "c"], &["c", "a"], &["c", "b"]])
}

/// `k x k`.
pub fn semisimple2<F: Field>() -> Algebra<F> {
    build(&["1", "2"], &[], &[])
}

/// `a: 1 -> 2`, `b: 2 -> 1` with the single relation `ab = 0`, so `ba` survives.
pub fn half_nakayama<F: Field>() -> Algebra<F> {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[&["a", "b"]])
}

/// The ground field as a one-vertex algebra.
pub fn field<F: Field>() -> Algebra<F> {
    build(&["1"], &[], &[])
}

/// `R = S = k` with `M = N = k` and `θ` multiplication by `c`.
fn scalar_gluing<F: Field>(c: i64) -> MvData<F> {
    let k = Arc::new(field::<F>());
    let one = || vec![Matrix::identity(1)];
    let m = Bimodule::new(Arc::clone(&k), Arc::clone(&k), 1, one(), one());
    let n = Bimodule::new(Arc::clone(&k), Arc::clone(&k), 1, one(), one());
    MvData::new(Arc::clone(&k), k, m, n, Matrix::from_i64(1, 1, &[c])).expect("scalar gluing")
}

/// Gluing data for the glued-category suites, by name.
pub fn mv_corpus<F: Field>() -> Vec<(&'static str, MvData<F>)> {
    let k = || Arc::new(field::<F>());
    vec![
        ("mv-split", MvData::split(k(), k())),
        ("mv-identity", scalar_gluing(1)),
        ("mv-zero-pairing", scalar_gluing(0)),
        ("mv-a2-corner", MvData::from_idempotent(Arc::new(a2::<F>()), &[0]).expect("corner gluing")),
    ]
}
