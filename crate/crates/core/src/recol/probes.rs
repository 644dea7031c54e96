//! Randomized checks that `j_!*` sends monomorphisms to monomorphisms and
//! epimorphisms to epimorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{intermediate_extension, intermediate_extension_map, Obj, Recollement};
use crate::error::Result;
use crate::exactla::Field;
use crate::modcat::AbelianCategory;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtensionProbeReport {
    pub seed: u64,
    pub probes: usize,
    /// Probed maps that were monomorphisms.
    pub monos: usize,
    /// Probed maps that were epimorphisms.
    pub epis: usize,
    pub failures: Vec<String>,
}

impl ExtensionProbeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` random maps between the given objects of the open side, each a
/// combination of a Hom basis with coefficients in `{-1, 0, 1}`.
pub fn intermediate_extension_probes<R: Recollement>(
    r: &R,
    objects: &[(String, Obj<R::Right>)],
    count: usize,
    seed: u64,
) -> Result<ExtensionProbeReport> {
    let u = r.right();
    let exts = objects.iter().map(|(_, y)| intermediate_extension(r, y)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ExtensionProbeReport { seed, ..Default::default() };
    if objects.is_empty() {
        return Ok(rep);
    }
    for i in 0..count {
        let (a, b) = (rng.gen_range(0..objects.len()), rng.gen_range(0..objects.len()));
        let (x, y) = (&objects[a].1, &objects[b].1);
        let basis = u.hom_basis(x, y);
        let coeffs: Vec<R::Scalar> = basis.iter().map(|_| R::Scalar::from_i64(rng.gen_range(-1..=1))).collect();
        let g = u.combination(x, y, &basis, &coeffs);
        rep.probes += 1;
        let what = format!("probe {i}: {} -> {}", objects[a].0, objects[b].0);
        let Some(h) = intermediate_extension_map(r, &g, &exts[a], &exts[b]) else {
            rep.failures.push(format!("{what}: j_! g does not descend to the intermediate extensions"));
            continue;
        };
        if u.is_mono(&g) {
            rep.monos += 1;
            if !r.center().is_mono(&h) {
                rep.failures.push(format!("{what}: a monomorphism is sent to a non-monomorphism"));
            }
        }
        if u.is_epi(&g) {
            rep.epis += 1;
            if !r.center().is_epi(&h) {
                rep.failures.push(format!("{what}: an epimorphism is sent to a non-epimorphism"));
            }
        }
    }
    Ok(rep)
}
