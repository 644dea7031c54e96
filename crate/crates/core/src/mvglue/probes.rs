//! Randomized checks of the universal properties of kernels and cokernels
//! in the glued category, and of exactness of the retraction `X |-> X_Z`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{MvCategory, MvMorphism, MvObject, MvRecollement};
use crate::exactla::Field;
use crate::modcat::AbelianCategory;
use crate::recol::is_exact_at;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub probes: usize,
    /// Test maps that killed the probed morphism and factored.
    pub factored: usize,
    /// Test maps that did not kill it and were rejected.
    pub rejected: usize,
    pub failures: Vec<String>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_map<F: Field>(c: &MvCategory<F>, x: &MvObject<F>, y: &MvObject<F>, rng: &mut ChaCha8Rng) -> MvMorphism<F> {
    let basis = c.hom_basis(x, y);
    let coeffs: Vec<F> = basis.iter().map(|_| F::from_i64(rng.gen_range(-1..=1))).collect();
    c.combination(x, y, &basis, &coeffs)
}

impl<F: Field> MvRecollement<F> {
    /// `count` random morphisms between the standard samples. For each, a
    /// random map into the source must factor through the kernel exactly
    /// when it kills the morphism, dually for the cokernel, and the
    /// retraction must send the kernel and cokernel sequence to an exact one.
    pub fn universal_probes(&self, count: usize, seed: u64) -> ProbeReport {
        let c = self.category();
        let objects: Vec<MvObject<F>> = self.standard_samples().center.into_iter().map(|(_, x)| x).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rep = ProbeReport { seed, ..Default::default() };
        let fail = |rep: &mut ProbeReport, i: usize, what: &str| rep.failures.push(format!("probe {i}: {what}"));
        for i in 0..count {
            let pick = |rng: &mut ChaCha8Rng| &objects[rng.gen_range(0..objects.len())];
            let (x, y, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let f = random_map(c, x, y, &mut rng);
            let k = c.kernel(&f);
            let q = c.cokernel(&f);
            rep.probes += 1;
            if !c.commutes(&k) || !c.commutes(&q) {
                fail(&mut rep, i, "kernel or cokernel is not a morphism of tuples");
                continue;
            }
            if !c.is_zero_morphism(&c.compose(&k, &f)) || !c.is_zero_morphism(&c.compose(&f, &q)) {
                fail(&mut rep, i, "kernel or cokernel does not compose to zero");
            }
            if !c.is_mono(&k) || !c.is_epi(&q) {
                fail(&mut rep, i, "kernel is not mono or cokernel is not epi");
            }

            let g = random_map(c, w, x, &mut rng);
            let kills = c.is_zero_morphism(&c.compose(&g, &f));
            match c.factor_through_mono(&g, &k) {
                Some(h) if kills && c.morphisms_equal(&c.compose(&h, &k), &g) => rep.factored += 1,
                None if !kills => rep.rejected += 1,
                _ => fail(&mut rep, i, "a map into the source factors through the kernel iff it kills f fails"),
            }
            let g = random_map(c, y, w, &mut rng);
            let kills = c.is_zero_morphism(&c.compose(&f, &g));
            match c.factor_through_epi(&g, &q) {
                Some(h) if kills && c.morphisms_equal(&c.compose(&q, &h), &g) => rep.factored += 1,
                None if !kills => rep.rejected += 1,
                _ => fail(&mut rep, i, "a map out of the target factors through the cokernel iff it kills f fails"),
            }

            let z = c.closed();
            let (rk, rf, rq) = (c.retraction_map(&k), c.retraction_map(&f), c.retraction_map(&q));
            if !rk.is_injective() || !rq.is_surjective() || !is_exact_at(z, &rk, &rf) || !is_exact_at(z, &rf, &rq) {
                fail(&mut rep, i, "the retraction to the closed part is not exact on this kernel and cokernel");
            }
        }
        rep
    }
}
