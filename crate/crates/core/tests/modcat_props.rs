use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;
use stratakit::algebra::Algebra;
use stratakit::exactla::Field;
use stratakit::fixtures;
use stratakit::modcat::{AbelianCategory, ModCat, ModuleMap, RightModule};
use stratakit::{Gf2, Gf3, Matrix, Subspace};

fn algebra<F: Field>(which: usize) -> Algebra<F> {
    match which % 5 {
        0 => fixtures::a2(),
        1 => fixtures::a3(),
        2 => fixtures::nakayama(),
        3 => fixtures::kronecker_loop(),
        _ => fixtures::dual_numbers(),
    }
}

/// A quotient of a sum of indecomposable projectives by a randomly generated submodule.
fn random_module<F: Field>(cat: &ModCat<F>, vertices: &[usize], noise: &[i64]) -> RightModule<F> {
    let n = cat.algebra().vertex_count();
    let parts: Vec<RightModule<F>> = vertices.iter().map(|v| cat.projective(v % n)).collect();
    let sum = RightModule::direct_sum(Arc::clone(cat.algebra()), &parts).sum;
    let d = sum.dim();
    if d == 0 {
        return sum;
    }
    let rows: Vec<Vec<F>> = noise.chunks(d).filter(|c| c.len() == d).map(|c| c.iter().map(|&x| F::from_i64(x)).collect()).collect();
    // keep only vectors inside the radical so the module stays interesting
    let rad = cat.radical_subspace(&sum);
    let rows: Vec<Vec<F>> = rows.into_iter().filter(|r| rad.contains(r)).collect();
    let sub = if rows.is_empty() { Subspace::zero(d) } else { sum.generated_submodule(&Matrix::from_rows(d, &rows)) };
    sum.quotient(&sub).0
}

fn random_map<F: Field>(cat: &ModCat<F>, m: &RightModule<F>, n: &RightModule<F>, coeffs: &[i64]) -> ModuleMap<F> {
    let basis = cat.hom(m, n);
    let c: Vec<F> = basis.iter().enumerate().map(|(i, _)| F::from_i64(coeffs.get(i).copied().unwrap_or(1))).collect();
    cat.combination(m, n, &basis, &c)
}

fn module_args() -> impl Strategy<Value = (usize, Vec<usize>, Vec<i64>)> {
    (0usize..5, prop::collection::vec(0usize..3, 1..3), prop::collection::vec(-1i64..2, 0..24))
}

fn yoneda<F: Field>(which: usize, verts: &[usize], noise: &[i64]) {
    let cat = ModCat::new(Arc::new(algebra::<F>(which)));
    let m = random_module(&cat, verts, noise);
    m.check().unwrap();
    let dv = m.dim_vector();
    for v in 0..cat.algebra().vertex_count() {
        assert_eq!(cat.hom_dim(&cat.projective(v), &m), dv[v]);
    }
}

fn kernel_cokernel_universal<F: Field>(which: usize, verts: &[usize], noise: &[i64], coeffs: &[i64]) {
    let cat = ModCat::new(Arc::new(algebra::<F>(which)));
    let m = random_module(&cat, verts, noise);
    let n = random_module(&cat, &[verts[0] + 1], &noise[noise.len() / 2..]);
    let f = random_map(&cat, &m, &n, coeffs);
    let k = cat.kernel(&f);
    let c = cat.cokernel(&f);
    assert!(cat.is_zero_morphism(&cat.compose(&k, &f)));
    assert!(cat.is_zero_morphism(&cat.compose(&f, &c)));
    assert!(cat.is_mono(&k) && cat.is_epi(&c));
    // every competitor killed by f factors through the kernel, and every
    // competitor killing f factors through the cokernel
    for x in [cat.projective(0), m.clone(), cat.simple(0)] {
        for g in cat.hom(&x, &m) {
            if cat.is_zero_morphism(&cat.compose(&g, &f)) {
                let h = cat.lift(&g, &k).expect("factors through kernel");
                assert!(cat.morphisms_equal(&cat.compose(&h, &k), &g));
            }
        }
    }
    for y in [cat.injective(0), n.clone(), cat.simple(0)] {
        for g in cat.hom(&n, &y) {
            if cat.is_zero_morphism(&cat.compose(&f, &g)) {
                let h = cat.factor_through_epi(&g, &c).expect("factors through cokernel");
                assert!(cat.morphisms_equal(&cat.compose(&c, &h), &g));
            }
        }
    }
    // image = kernel of cokernel = cokernel of kernel
    let (epi, mono) = cat.image(&f);
    assert!(cat.morphisms_equal(&cat.compose(&epi, &mono), &f));
    let coim = cat.target(&cat.cokernel(&k));
    assert!(cat.is_isomorphic(&coim, &cat.source(&mono)).is_yes());
}

fn ext_round_trip<F: Field>(which: usize, verts: &[usize], noise: &[i64], coeffs: &[i64]) {
    let cat = ModCat::new(Arc::new(algebra::<F>(which)));
    let m = random_module(&cat, verts, noise);
    let n = random_module(&cat, &[verts[0] + 1], &noise[noise.len() / 3..]);
    let space = cat.ext(&m, &n, 1);
    let c: Vec<F> = (0..space.dim()).map(|i| F::from_i64(coeffs.get(i).copied().unwrap_or(1))).collect();
    let ses = cat.realize_ext1(&space, &c);
    assert!(ses.is_exact());
    ses.middle().check().unwrap();
    assert_eq!(ses.middle().dim(), m.dim() + n.dim());
    assert_eq!(cat.extension_class(&space, &ses).unwrap(), c);
}

fn minimal_resolution<F: Field>(which: usize, verts: &[usize], noise: &[i64]) {
    let cat = ModCat::new(Arc::new(algebra::<F>(which)));
    let m = random_module(&cat, verts, noise);
    let r = cat.resolution(&m, 3);
    for (i, d) in r.differentials.iter().enumerate() {
        assert!(d.is_homomorphism());
        let rad = cat.radical_subspace(&r.term(i));
        assert!(rad.contains_subspace(&d.image_subspace()));
        if i > 0 {
            assert!(d.then(&r.differentials[i - 1]).is_zero());
        }
    }
    if let Some(d0) = r.differentials.first() {
        assert!(d0.then(&r.augmentation).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn yoneda_gf2((w, v, noise) in module_args()) {
        yoneda::<Gf2>(w, &v, &noise);
    }

    #[test]
    fn yoneda_gf3((w, v, noise) in module_args()) {
        yoneda::<Gf3>(w, &v, &noise);
    }

    #[test]
    fn kernel_cokernel_properties((w, v, noise) in module_args(), coeffs in prop::collection::vec(-1i64..2, 0..8)) {
        kernel_cokernel_universal::<Gf2>(w, &v, &noise, &coeffs);
        kernel_cokernel_universal::<Gf3>(w, &v, &noise, &coeffs);
    }

    #[test]
    fn realized_extensions_round_trip((w, v, noise) in module_args(), coeffs in prop::collection::vec(-1i64..2, 0..8)) {
        ext_round_trip::<Gf2>(w, &v, &noise, &coeffs);
        ext_round_trip::<Gf3>(w, &v, &noise, &coeffs);
    }

    #[test]
    fn resolutions_are_minimal((w, v, noise) in module_args()) {
        minimal_resolution::<Gf2>(w, &v, &noise);
        minimal_resolution::<Gf3>(w, &v, &noise);
    }
}

#[test]
fn projectives_have_simple_tops_in_every_fixture() {
    for w in 0..5 {
        let cat = ModCat::new(Arc::new(algebra::<Gf3>(w)));
        let n = cat.algebra().vertex_count();
        for v in 0..n {
            for u in 0..n {
                assert_eq!(cat.hom_dim(&cat.projective(v), &cat.simple(u)), usize::from(u == v));
            }
        }
    }
}

// Independent count of Ext^1 over GF(2): an extension of M by N on the space
// N + M has action matrices [[A^N_a, 0], [C_a, A^M_a]]. The tuples C form the
// cocycles; changing the splitting by H gives C_a + H A^N_a - A^M_a H. The
// number of classes is |cocycles| / |coboundaries|, both found by enumeration.

fn gf2_matrices(rows: usize, cols: usize) -> Vec<Matrix<Gf2>> {
    let n = rows * cols;
    (0u32..(1 << n))
        .map(|bits| Matrix::from_vec(rows, cols, (0..n).map(|i| Gf2::new(((bits >> i) & 1) as u64)).collect()))
        .collect()
}

fn brute_force_ext1(a: &Algebra<Gf2>, m: &RightModule<Gf2>, n: &RightModule<Gf2>) -> usize {
    let (dm, dn, da) = (m.dim(), n.dim(), a.dim());
    let products: Vec<Vec<Vec<Gf2>>> =
        (0..da).map(|i| (0..da).map(|j| a.mul(&a.basis_vector(i), &a.basis_vector(j))).collect()).collect();
    let candidates = gf2_matrices(dm, dn);
    let combo = |c: &[Matrix<Gf2>], coeffs: &[Gf2]| {
        let mut acc = Matrix::zeros(dm, dn);
        for (x, k) in c.iter().zip(coeffs) {
            if *k == Gf2::new(1) {
                acc = &acc + x;
            }
        }
        acc
    };
    // backtracking over basis elements; each product is checked as soon as
    // its factors and its support have been assigned
    let mut count = 0usize;
    let mut stack: Vec<Matrix<Gf2>> = Vec::new();
    fn rec(
        k: usize,
        stack: &mut Vec<Matrix<Gf2>>,
        count: &mut usize,
        ctx: &(usize, &[Matrix<Gf2>], &Vec<Vec<Vec<Gf2>>>, &RightModule<Gf2>, &RightModule<Gf2>, &Algebra<Gf2>),
        combo: &dyn Fn(&[Matrix<Gf2>], &[Gf2]) -> Matrix<Gf2>,
    ) {
        let (da, candidates, products, m, n, a) = *ctx;
        if k == da {
            let unit = combo(stack, a.unit());
            if unit.is_zero() {
                *count += 1;
            }
            return;
        }
        for c in candidates {
            stack.push(c.clone());
            let ok = (0..=k).all(|i| {
                (0..=k).all(|j| {
                    let p = &products[i][j];
                    let ready = p.iter().enumerate().filter(|(_, x)| **x != Gf2::new(0)).map(|(t, _)| t).fold(i.max(j), usize::max);
                    if ready != k {
                        return true;
                    }
                    // C_{ij} = C_i A^N_j + A^M_i C_j
                    let lhs = combo(stack, p);
                    let rhs = &(&stack[i] * n.action_basis(j)) + &(m.action_basis(i) * &stack[j]);
                    lhs == rhs
                })
            });
            if ok {
                rec(k + 1, stack, count, ctx, combo);
            }
            stack.pop();
        }
    }
    rec(0, &mut stack, &mut count, &(da, &candidates, &products, m, n, a), &combo);
    let coboundaries: HashSet<Vec<Matrix<Gf2>>> = candidates
        .iter()
        .map(|h| (0..da).map(|i| &(h * n.action_basis(i)) - &(m.action_basis(i) * h)).collect())
        .collect();
    let ratio = count / coboundaries.len();
    assert_eq!(ratio * coboundaries.len(), count);
    assert!(ratio.is_power_of_two());
    ratio.trailing_zeros() as usize
}

#[test]
fn ext1_matches_brute_force_over_gf2() {
    let mut checked = 0;
    for w in 0..5 {
        let alg = algebra::<Gf2>(w);
        let cat = ModCat::new(Arc::new(alg.clone()));
        let nv = alg.vertex_count();
        let mut mods: Vec<RightModule<Gf2>> = Vec::new();
        for v in 0..nv {
            mods.push(cat.simple(v));
            mods.push(cat.projective(v));
            mods.push(cat.injective(v));
        }
        for v in 0..nv {
            for u in 0..nv {
                let s = RightModule::direct_sum(Arc::clone(cat.algebra()), &[cat.simple(v), cat.simple(u)]).sum;
                mods.push(s);
            }
        }
        mods.retain(|m| m.dim() <= 3);
        for m in &mods {
            for n in &mods {
                if m.dim() * n.dim() * alg.dim() > 24 {
                    continue;
                }
                assert_eq!(cat.ext_dim(m, n, 1), brute_force_ext1(&alg, m, n), "{m:?} {n:?} over fixture {w}");
                checked += 1;
            }
        }
    }
    assert!(checked > 40, "only {checked} pairs checked");
}
