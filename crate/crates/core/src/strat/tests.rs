use std::sync::Arc;

use super::*;
use crate::algebra::Algebra;
use crate::exactla::{Gf2, Gf3, Rational};
use crate::fixtures;
use crate::modcat::{AbelianCategory, Verdict};

fn strat<F: Field>(a: Algebra<F>, poset: Poset, labels: &[usize]) -> Stratification<F> {
    Stratification::new(Arc::new(a), poset, labels.to_vec(), None).unwrap()
}

fn xy<F: Field>(a: Algebra<F>) -> Stratification<F> {
    strat(a, Poset::chain(&["x", "y"]), &[0, 1])
}

/// Every fixture with every chain labelling that is a bijection onto a chain.
fn corpus() -> Vec<(String, Stratification<Gf2>)> {
    let mut out = Vec::new();
    let algs: Vec<(&str, fn() -> Algebra<Gf2>)> = vec![
        ("a2", fixtures::a2),
        ("a3", fixtures::a3),
        ("nakayama", fixtures::nakayama),
        ("kronecker", fixtures::kronecker_loop),
        ("semisimple", fixtures::semisimple2),
    ];
    for (name, make) in algs {
        let n = make().vertex_count();
        let labels: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let chain = Poset::chain(&refs);
        for perm in permutations(n) {
            let s = Stratification::new(Arc::new(make()), chain.clone(), perm.clone(), None).unwrap();
            out.push((format!("{name}{perm:?}"), s));
        }
        let one = Poset::chain(&["all"]);
        out.push((format!("{name}-single"), strat(make(), one, &vec![0; n])));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn poset_basics() {
    let c = Poset::chain(&["x", "y", "z"]);
    assert!(c.lt(0, 2));
    assert_eq!(c.lower_sets(), vec![0b000, 0b001, 0b011, 0b111]);
    assert_eq!(c.linear_extension(), vec![0, 1, 2]);
    assert_eq!(c.maximal_in(0b011), vec![1]);

    let d = Poset::discrete(&["x", "y"]);
    assert_eq!(d.lower_sets().len(), 4);
    assert_eq!(d.linear_extension(), vec![0, 1]);

    let v = Poset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
    assert_eq!(v.maximal_in(v.full()), vec![2]);
    assert_eq!(v.down_set(2), 0b111);
    assert!(!v.is_lower(0b100));

    assert!(matches!(Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(Error::InvalidPoset(_))));
    assert!(matches!(Poset::new::<&str>(&[], &[]), Err(Error::InvalidPoset(_))));
    assert!(matches!(Poset::new(&["a"], &[("a", "q")]), Err(Error::InvalidPoset(_))));
    assert_eq!(v.opposite().maximal_in(v.full()), vec![0, 1]);
}

#[test]
fn strata_of_two_vertex_chains_are_the_field() {
    for s in [xy(fixtures::a2::<Gf2>()), xy(fixtures::nakayama::<Gf2>())] {
        for lam in 0..2 {
            assert_eq!(s.stratum(lam).recollement.corner().algebra.dim(), 1);
        }
        assert!(s.audit().iter().any(|l| l.starts_with("S3")));
    }
}

#[test]
fn single_element_poset_keeps_the_algebra() {
    let a = fixtures::nakayama::<Gf2>();
    let dim = a.dim();
    let s = strat(a, Poset::chain(&["all"]), &[0, 0]);
    let st = s.stratum(0);
    assert_eq!(st.recollement.corner().algebra.dim(), dim);
    assert_eq!(st.recollement.degenerate(), Some("e = 1: the closed part is zero"));
    let cat = s.category();
    for b in 0..2 {
        let y = s.stratum_category(0).projective(s.stratum_index(b));
        assert!(cat.is_isomorphic(&s.j_shriek_at(0, &y), &cat.projective(b)).is_yes());
    }
    let classes = s.classify_simples().unwrap();
    assert_eq!(classes.len(), 2);
}

#[test]
fn bad_inputs_are_rejected() {
    let a = Arc::new(fixtures::a2::<Gf2>());
    let p = Poset::chain(&["x", "y"]);
    assert!(Stratification::new(Arc::clone(&a), p.clone(), vec![0], None).is_err());
    assert!(Stratification::new(Arc::clone(&a), p.clone(), vec![0, 5], None).is_err());
    assert!(Stratification::new(Arc::clone(&a), p.clone(), vec![0, 1], Some(vec![Sign::Plus])).is_err());
    assert!(Stratification::from_names(Arc::clone(&a), p.clone(), &[("1", "x")], None).is_err());
    let s = Stratification::from_names(a, p, &[("1", "x"), ("2", "y")], None).unwrap();
    assert_eq!(s.labels(), &[0, 1]);
}

#[test]
fn stratum_depending_on_the_ambient_lower_set_is_reported() {
    // ba survives in e_2 A e_2 but is killed once vertex 1 is quotiented out
    let a = fixtures::half_nakayama::<Gf2>();
    let r = Stratification::new(Arc::new(a), Poset::discrete(&["x", "y"]), vec![0, 1], None);
    match r {
        Err(Error::Invariant(msg)) => assert!(msg.contains("depends on the ambient lower set"), "{msg}"),
        Err(e) => panic!("unexpected error {e}"),
        Ok(_) => panic!("stratification accepted"),
    }
    // a chain never has this problem
    let ok = Stratification::new(Arc::new(fixtures::half_nakayama::<Gf2>()), Poset::chain(&["x", "y"]), vec![0, 1], None);
    assert!(ok.is_ok());
}

#[test]
fn classification_of_simples() {
    let s = xy(fixtures::a2::<Gf2>());
    let classes = s.classify_simples().unwrap();
    assert_eq!(classes[1].stratum, 1);
    assert!(s.category().is_isomorphic(&classes[1].glued, &s.category().simple(1)).is_yes());
    assert_eq!(classes[0].glued.dim(), 1);
    assert!(xy(fixtures::nakayama::<Gf2>()).classify_simples().is_ok());
    for (name, s) in corpus() {
        let c = s.classify_simples().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(c.len(), s.algebra().vertex_count(), "{name}");
    }
}

#[test]
fn standard_objects_of_a2() {
    let s = xy(fixtures::a2::<Gf2>());
    let fam = s.standard_objects().unwrap();
    let cat = s.category();
    let (d1, d2) = (fam.get(0), fam.get(1));
    assert!(cat.is_isomorphic(&d1.delta, &cat.simple(0)).is_yes());
    assert!(cat.is_isomorphic(&d1.delta_bar, &cat.simple(0)).is_yes());
    assert!(cat.is_isomorphic(&d2.delta, &cat.simple(1)).is_yes());
    assert!(cat.is_isomorphic(&d2.delta, &cat.projective(1)).is_yes());
    assert_eq!(d2.nabla_bar.dim(), 2);
    assert!(cat.is_isomorphic(&d2.nabla, &d2.nabla_bar).is_yes());
    assert!(cat.is_isomorphic(&d2.nabla, &cat.injective(1)).is_yes());
}

#[test]
fn standard_objects_of_nakayama() {
    let s = xy(fixtures::nakayama::<Gf2>());
    let fam = s.standard_objects().unwrap();
    let cat = s.category();
    let d2 = fam.get(1);
    assert_eq!(d2.delta.dim(), 2);
    assert_eq!(d2.delta_bar.dim(), 2);
    assert!(cat.is_isomorphic(&d2.delta, &cat.projective(1)).is_yes());
    assert_eq!(fam.get(0).delta.dim(), 1);
}

#[test]
fn field_strata_make_proper_and_ordinary_objects_agree() {
    for (name, s) in corpus() {
        let fam = s.standard_objects().unwrap_or_else(|e| panic!("{name}: {e}"));
        let cat = s.category();
        let all_fields = (0..s.poset().len()).all(|l| {
            let st = &s.stratum(l).recollement.corner().algebra;
            st.dim() == st.vertex_count()
        });
        if all_fields {
            for m in &fam.members {
                assert!(cat.is_isomorphic(&m.delta, &m.delta_bar).is_yes(), "{name}");
                assert!(cat.is_isomorphic(&m.nabla, &m.nabla_bar).is_yes(), "{name}");
            }
        }
    }
}

#[test]
fn single_layer_certificate() {
    let s = xy(fixtures::nakayama::<Gf2>());
    let fam = s.standard_objects().unwrap();
    let d = fam.get(1).delta.clone();
    let allowed = vec![("Δ(2)".to_string(), d.clone())];
    let out = filtration_search(s.category(), &d, &allowed, LayerMode::Exact, SearchMode::Oracle).unwrap();
    assert_eq!(out.layer_names(), vec!["Δ(2)"]);
}

#[test]
fn delta_filtration_of_a2_projective() {
    let s = xy(fixtures::a2::<Gf2>());
    let fam = s.standard_objects().unwrap();
    let allowed: Vec<(String, RightModule<Gf2>)> =
        fam.members.iter().map(|m| (format!("Δ({})", m.vertex + 1), m.delta.clone())).collect();
    for search in [SearchMode::Heuristic, SearchMode::Oracle] {
        let out = filtration_search(s.category(), &s.category().projective(0), &allowed, LayerMode::Exact, search).unwrap();
        assert_eq!(out.layer_names(), vec!["Δ(2)", "Δ(1)"]);
        out.certificate.unwrap().verify(&allowed).unwrap();
    }
}

#[test]
fn nakayama_projective_has_no_delta_filtration() {
    for signs in [[Sign::Plus, Sign::Plus], [Sign::Plus, Sign::Minus], [Sign::Minus, Sign::Plus], [Sign::Minus, Sign::Minus]] {
        let s = Stratification::new(
            Arc::new(fixtures::nakayama::<Gf2>()),
            Poset::chain(&["x", "y"]),
            vec![0, 1],
            Some(signs.to_vec()),
        )
        .unwrap();
        let fam = s.standard_objects().unwrap();
        let allowed: Vec<(String, RightModule<Gf2>)> =
            fam.members.iter().map(|m| (format!("Δε({})", m.vertex + 1), m.delta_eps().clone())).collect();
        let p1 = s.category().projective(0);
        let out = filtration_search(s.category(), &p1, &allowed, LayerMode::Exact, SearchMode::Oracle).unwrap();
        assert_eq!(out.decided(), Some(false));
        // the same objects do filter it as quotients
        let q = filtration_search(s.category(), &p1, &allowed, LayerMode::Quotient, SearchMode::Oracle).unwrap();
        assert!(q.found());
    }
}

#[test]
fn filtration_search_preconditions() {
    let s = xy(fixtures::a2::<Rational>());
    let cat = s.category();
    let p = cat.projective(0);
    let allowed = vec![("P".to_string(), p.clone())];
    assert_eq!(
        filtration_search(cat, &p, &allowed, LayerMode::Exact, SearchMode::Oracle).unwrap_err(),
        Error::OracleOverRationals
    );
    let two = AbelianCategory::direct_sum(cat, &[cat.simple(0), cat.simple(1)]).0;
    let bad = vec![("S1+S2".to_string(), two)];
    assert!(filtration_search(cat, &p, &bad, LayerMode::Exact, SearchMode::Heuristic).is_err());
    let ok = filtration_search(cat, &p, &allowed, LayerMode::Exact, SearchMode::Heuristic).unwrap();
    assert!(ok.found());
}

#[test]
fn tampered_certificate_is_rejected() {
    let s = xy(fixtures::a2::<Gf2>());
    let fam = s.standard_objects().unwrap();
    let allowed: Vec<(String, RightModule<Gf2>)> =
        fam.members.iter().map(|m| (format!("Δ({})", m.vertex + 1), m.delta.clone())).collect();
    let out = filtration_search(s.category(), &s.category().projective(0), &allowed, LayerMode::Exact, SearchMode::Oracle)
        .unwrap();
    let mut cert = out.certificate.unwrap();
    cert.layers.swap(0, 1);
    assert!(cert.verify(&allowed).is_err());
}

#[test]
fn synthesis_on_two_vertex_chains() {
    let s = xy(fixtures::a2::<Gf2>());
    let syn = s.synthesize_projective_cover(0, DEFAULT_ITERATION_BOUND).unwrap();
    assert_eq!(syn.matches_direct, Verdict::Yes);
    assert_eq!(syn.module.dim(), 2);
    assert_eq!(syn.steps.len(), 2);
    assert_eq!(syn.steps[1].extended_by, vec![("S(2)".to_string(), 1)]);
    assert!(!syn.steps[1].closed_part);

    let top = s.synthesize_projective_cover(1, DEFAULT_ITERATION_BOUND).unwrap();
    assert_eq!(top.steps.len(), 1);
    assert_eq!(top.matches_direct, Verdict::Yes);

    let n = xy(fixtures::nakayama::<Gf2>());
    let syn = n.synthesize_projective_cover(0, DEFAULT_ITERATION_BOUND).unwrap();
    assert_eq!(syn.module.dim(), 2);
    assert_eq!(syn.matches_direct, Verdict::Yes);
}

#[test]
fn synthesis_matches_direct_covers_everywhere() {
    for (name, s) in corpus() {
        for t in 0..s.algebra().vertex_count() {
            let syn = s.synthesize_projective_cover(t, DEFAULT_ITERATION_BOUND).unwrap_or_else(|e| panic!("{name} {t}: {e}"));
            assert_eq!(syn.matches_direct, Verdict::Yes, "{name} {t}");
        }
    }
    let g3 = strat(fixtures::a3::<Gf3>(), Poset::chain(&["x", "y", "z"]), &[2, 0, 1]);
    for t in 0..3 {
        assert_eq!(g3.synthesize_projective_cover(t, DEFAULT_ITERATION_BOUND).unwrap().matches_direct, Verdict::Yes);
    }
}

#[test]
fn synthesis_iteration_bound_is_reported() {
    let s = strat(fixtures::a3::<Gf2>(), Poset::chain(&["x", "y", "z"]), &[0, 1, 2]);
    let e = s.synthesize_projective_cover(0, 0).unwrap_err();
    assert!(matches!(e, Error::IterationBound(0, _)));
}

#[test]
fn porism_examples() {
    let s = xy(fixtures::a2::<Gf2>());
    let fam = s.standard_objects().unwrap();
    let cat = s.category();
    let p = s.porism_check(0, &fam, SearchMode::Oracle).unwrap();
    assert!(cat.is_isomorphic(&p.kernel.source, &cat.simple(1)).is_yes());
    assert_eq!(p.allowed, vec!["Δ(2)"]);
    assert!(s.porism_check(1, &fam, SearchMode::Oracle).unwrap().kernel.source.is_zero());

    let n = xy(fixtures::nakayama::<Gf2>());
    let fam = n.standard_objects().unwrap();
    let p = n.porism_check(0, &fam, SearchMode::Oracle).unwrap();
    let q = &p.kernel.source;
    assert!(n.category().is_isomorphic(q, &n.category().simple(1)).is_yes());
    assert!(q.dim() < fam.get(1).delta.dim());
    assert_eq!(p.filtration.layer_names(), vec!["Δ(2)"]);
}

#[test]
fn porism_holds_on_the_chain_corpus() {
    for (name, s) in corpus() {
        let fam = s.standard_objects().unwrap();
        for b in 0..s.algebra().vertex_count() {
            s.porism_check(b, &fam, SearchMode::Oracle).unwrap_or_else(|e| panic!("{name} {b}: {e}"));
        }
    }
}

#[test]
fn porism_needs_comparable_strata() {
    // with x and y incomparable, P(1) still has S(2) below its standard quotient
    let s = strat(fixtures::a2::<Gf2>(), Poset::discrete(&["x", "y"]), &[0, 1]);
    let fam = s.standard_objects().unwrap();
    assert!(s.porism_check(0, &fam, SearchMode::Oracle).is_err());
    assert!(s.porism_check(1, &fam, SearchMode::Oracle).is_ok());
}

#[test]
fn lengths_split_over_strata() {
    for (name, s) in corpus() {
        let cat = s.category();
        let cells = cat.cells();
        for m in cells.projectives.iter().chain(&cells.injectives).chain(&cells.simples) {
            let prof = s.length_profile(m).unwrap();
            assert!(prof.balanced(), "{name}: {prof:?}");
        }
    }
    let s = xy(fixtures::nakayama::<Gf2>());
    let prof = s.length_profile(&s.category().regular()).unwrap();
    assert_eq!(prof.total, 4);
    assert_eq!(prof.per_stratum, vec![("x".to_string(), 2), ("y".to_string(), 2)]);
}

#[test]
fn duality_exchanges_standard_and_costandard() {
    for (name, s) in corpus() {
        let fam = s.standard_objects().unwrap();
        let op = s.opposite().unwrap();
        let op_fam = op.standard_objects().unwrap();
        let cat = s.category();
        let op_cat = op.category();
        for b in 0..s.algebra().vertex_count() {
            let dual = cat.dual(fam.get(b).nabla_eps());
            assert!(op_cat.is_isomorphic(&dual, op_fam.get(b).delta_eps()).is_yes(), "{name} {b}");
            let dual = cat.dual(fam.get(b).delta_eps());
            assert!(op_cat.is_isomorphic(&dual, op_fam.get(b).nabla_eps()).is_yes(), "{name} {b}");
        }
    }
}

#[test]
fn dual_certificates_correspond() {
    let s = xy(fixtures::a2::<Gf2>());
    let op = s.opposite().unwrap();
    let fam = s.standard_objects().unwrap();
    let op_fam = op.standard_objects().unwrap();
    let cat = s.category();
    // I(b) filtered by ∇_ε exactly when D I(b) = P^op(b) is filtered by Δ^op_{-ε}
    for b in 0..2 {
        let allowed: Vec<(String, RightModule<Gf2>)> =
            op_fam.members.iter().map(|m| (format!("{}", m.vertex), m.delta_eps().clone())).collect();
        let di = cat.dual(&cat.injective(b));
        let out = filtration_search(op.category(), &di, &allowed, LayerMode::Exact, SearchMode::Oracle).unwrap();
        let direct: Vec<(String, RightModule<Gf2>)> =
            fam.members.iter().map(|m| (format!("{}", m.vertex), cat.dual(m.nabla_eps()))).collect();
        let again = filtration_search(op.category(), &di, &direct, LayerMode::Exact, SearchMode::Oracle).unwrap();
        assert_eq!(out.found(), again.found());
        assert!(out.found());
    }
}
