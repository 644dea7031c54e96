//! Sampled verification of the recollement axioms.

use serde::Serialize;

use super::{is_exact_at, Obj, Recollement};
use crate::modcat::AbelianCategory;

/// Named test objects for each of the three categories.
#[derive(Clone, Debug)]
pub struct Samples<A, Z, U> {
    pub center: Vec<(String, A)>,
    pub left: Vec<(String, Z)>,
    pub right: Vec<(String, U)>,
}

impl<A, Z, U> Samples<A, Z, U> {
    pub fn names(&self) -> Vec<String> {
        let c = self.center.iter().map(|(n, _)| n.clone());
        let l = self.left.iter().map(|(n, _)| format!("Z:{n}"));
        let r = self.right.iter().map(|(n, _)| format!("U:{n}"));
        c.chain(l).chain(r).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RecollementReport {
    pub samples: Vec<String>,
    pub checks_run: usize,
    pub violations: Vec<AxiomViolation>,
}

impl RecollementReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Axioms with at least one violation, without repetition.
    pub fn violated_axioms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom) {
                out.push(v.axiom.clone());
            }
        }
        out
    }

    fn check(&mut self, ok: bool, axiom: &str, sample: &str, what: &str) {
        self.checks_run += 1;
        if !ok {
            self.violations.push(AxiomViolation { axiom: axiom.into(), witness: format!("{sample}: {what}") });
        }
    }
}

/// Check (R1) triangle identities, (R2), (R3), (R4) and (R4') on the samples,
/// including that the extended kernel and cokernel of the (R4) sequences lie
/// in the image of `i_*`.
pub fn verify_recollement<R: Recollement>(
    r: &R,
    samples: &Samples<Obj<R::Center>, Obj<R::Left>, Obj<R::Right>>,
) -> RecollementReport {
    let mut rep = RecollementReport { samples: samples.names(), ..Default::default() };
    for (name, x) in &samples.center {
        check_center(r, &mut rep, name, x);
    }
    for (name, z) in &samples.left {
        check_left(r, &mut rep, &format!("Z:{name}"), z);
    }
    for (name, y) in &samples.right {
        check_right(r, &mut rep, &format!("U:{name}"), y);
    }
    rep
}

fn check_center<R: Recollement>(r: &R, rep: &mut RecollementReport, name: &str, x: &Obj<R::Center>) {
    let (a, z, u) = (r.center(), r.left(), r.right());

    let ix = r.i_upper(x);
    let t = z.compose(&r.i_upper_map(&r.i_pull_unit(x)), &r.i_pull_counit(&ix));
    rep.check(z.morphisms_equal(&t, &z.identity(&ix)), "R1", name, "i^*(unit) then counit is not the identity of i^*X");

    let sx = r.i_shriek(x);
    let t = z.compose(&r.i_shriek_unit(&sx), &r.i_shriek_map(&r.i_shriek_counit(x)));
    rep.check(z.morphisms_equal(&t, &z.identity(&sx)), "R1", name, "unit then i^!(counit) is not the identity of i^!X");

    let jx = r.j_upper(x);
    let t = u.compose(&r.j_shriek_unit(&jx), &r.j_upper_map(&r.j_shriek_counit(x)));
    rep.check(u.morphisms_equal(&t, &u.identity(&jx)), "R1", name, "unit then j^*(counit) is not the identity of j^*X");
    let t = u.compose(&r.j_upper_map(&r.j_star_unit(x)), &r.j_star_counit(&jx));
    rep.check(u.morphisms_equal(&t, &u.identity(&jx)), "R1", name, "j^*(unit) then counit is not the identity of j^*X");

    let mu = r.j_shriek_counit(x);
    let eta = r.i_pull_unit(x);
    rep.check(a.is_epi(&eta) && is_exact_at(a, &mu, &eta), "R4", name, "j_!j^*X -> X -> i_*i^*X -> 0 is not exact");
    let eps = r.i_shriek_counit(x);
    let nu = r.j_star_unit(x);
    rep.check(a.is_mono(&eps) && is_exact_at(a, &eps, &nu), "R4", name, "0 -> i_*i^!X -> X -> j_*j^*X is not exact");

    let k = a.source(&a.kernel(&mu));
    rep.check(in_z_image(r, &k), "R4", name, "kernel of j_!j^*X -> X is not in the image of i_*");
    let k2 = a.target(&a.cokernel(&nu));
    rep.check(in_z_image(r, &k2), "R4", name, "cokernel of X -> j_*j^*X is not in the image of i_*");

    if u.is_zero_object(&jx) {
        rep.check(in_z_image(r, x), "R4'", name, "j^*X = 0 but X is not in the image of i_*");
    }
}

fn check_left<R: Recollement>(r: &R, rep: &mut RecollementReport, name: &str, zo: &Obj<R::Left>) {
    let (a, z, u) = (r.center(), r.left(), r.right());
    let iz = r.i_lower(zo);

    let t = a.compose(&r.i_pull_unit(&iz), &r.i_lower_map(&r.i_pull_counit(zo)));
    rep.check(a.morphisms_equal(&t, &a.identity(&iz)), "R1", name, "unit then i_*(counit) is not the identity of i_*Z");
    let t = a.compose(&r.i_lower_map(&r.i_shriek_unit(zo)), &r.i_shriek_counit(&iz));
    rep.check(a.morphisms_equal(&t, &a.identity(&iz)), "R1", name, "i_*(unit) then counit is not the identity of i_*Z");

    rep.check(z.is_iso(&r.i_pull_counit(zo)), "R2", name, "i^*i_*Z -> Z is not an isomorphism");
    rep.check(z.is_iso(&r.i_shriek_unit(zo)), "R2", name, "Z -> i^!i_*Z is not an isomorphism");
    rep.check(u.is_zero_object(&r.j_upper(&iz)), "R3", name, "j^*i_*Z is nonzero");
}

fn check_right<R: Recollement>(r: &R, rep: &mut RecollementReport, name: &str, y: &Obj<R::Right>) {
    let (a, z, u) = (r.center(), r.left(), r.right());
    let sy = r.j_shriek(y);
    let t = a.compose(&r.j_shriek_map(&r.j_shriek_unit(y)), &r.j_shriek_counit(&sy));
    rep.check(a.morphisms_equal(&t, &a.identity(&sy)), "R1", name, "j_!(unit) then counit is not the identity of j_!Y");
    let ly = r.j_lower(y);
    let t = a.compose(&r.j_star_unit(&ly), &r.j_lower_map(&r.j_star_counit(y)));
    rep.check(a.morphisms_equal(&t, &a.identity(&ly)), "R1", name, "unit then j_*(counit) is not the identity of j_*Y");

    rep.check(u.is_iso(&r.j_star_counit(y)), "R2", name, "j^*j_*Y -> Y is not an isomorphism");
    rep.check(u.is_iso(&r.j_shriek_unit(y)), "R2", name, "Y -> j^*j_!Y is not an isomorphism");
    rep.check(z.is_zero_object(&r.i_upper(&sy)), "R3", name, "i^*j_!Y is nonzero");
    rep.check(z.is_zero_object(&r.i_shriek(&ly)), "R3", name, "i^!j_*Y is nonzero");
}

/// `j^* X = 0` and both adjunction maps with `i_*` are isomorphisms.
fn in_z_image<R: Recollement>(r: &R, x: &Obj<R::Center>) -> bool {
    let a = r.center();
    r.right().is_zero_object(&r.j_upper(x)) && a.is_iso(&r.i_pull_unit(x)) && a.is_iso(&r.i_shriek_counit(x))
}
