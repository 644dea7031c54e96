//! Standard, costandard and proper (co)standard objects.

use super::{Sign, Stratification};
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::modcat::{ModuleMap, RightModule};
use crate::recol::{intermediate_extension, Recollement};

/// The eight objects attached to one vertex `b`, all as `A`-modules.
#[derive(Clone, Debug)]
pub struct Standard<F: Field> {
    pub vertex: usize,
    pub stratum: usize,
    pub sign: Sign,
    /// `j_! P_λ(b)`.
    pub delta: RightModule<F>,
    /// `j_* I_λ(b)`.
    pub nabla: RightModule<F>,
    /// `j_! L_λ(b)`.
    pub delta_bar: RightModule<F>,
    /// `j_* L_λ(b)`.
    pub nabla_bar: RightModule<F>,
    /// `j_!* L_λ(b)`, isomorphic to `S(b)`.
    pub simple: RightModule<F>,
    pub delta_to_bar: ModuleMap<F>,
    pub bar_to_simple: ModuleMap<F>,
    pub simple_to_bar: ModuleMap<F>,
    pub bar_to_nabla: ModuleMap<F>,
}

impl<F: Field> Standard<F> {
    /// `Δ(b)` for `+`, `Δ̄(b)` for `-`.
    pub fn delta_eps(&self) -> &RightModule<F> {
        match self.sign {
            Sign::Plus => &self.delta,
            Sign::Minus => &self.delta_bar,
        }
    }

    /// `∇̄(b)` for `+`, `∇(b)` for `-`.
    pub fn nabla_eps(&self) -> &RightModule<F> {
        match self.sign {
            Sign::Plus => &self.nabla_bar,
            Sign::Minus => &self.nabla,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StandardFamily<F: Field> {
    /// Indexed by vertex.
    pub members: Vec<Standard<F>>,
}

impl<F: Field> StandardFamily<F> {
    pub fn get(&self, b: usize) -> &Standard<F> {
        &self.members[b]
    }

    pub fn delta_eps(&self) -> Vec<RightModule<F>> {
        self.members.iter().map(|s| s.delta_eps().clone()).collect()
    }

    pub fn nabla_eps(&self) -> Vec<RightModule<F>> {
        self.members.iter().map(|s| s.nabla_eps().clone()).collect()
    }
}

impl<F: Field> Stratification<F> {
    /// Build every standard-type object with its canonical maps and check
    /// tops, socles and the vanishing of Hom from higher to lower strata.
    pub fn standard_objects(&self) -> Result<StandardFamily<F>> {
        let mut members = Vec::new();
        for b in 0..self.labels().len() {
            members.push(self.standard_at(b)?);
        }
        let fam = StandardFamily { members };
        self.check_family(&fam)?;
        Ok(fam)
    }

    fn standard_at(&self, b: usize) -> Result<Standard<F>> {
        let lam = self.label_of(b);
        let rec = &self.stratum(lam).recollement;
        let u = rec.right();
        let l = u.simple(self.stratum_index(b));
        let cover = u.projective_cover(&l).map;
        let env = u.injective_envelope(&l).map;
        let ext = intermediate_extension(rec, &l)?;
        let lift = |f: &ModuleMap<F>| self.inflate_map(lam, f);
        let delta_to_bar = lift(&rec.j_shriek_map(&cover));
        let bar_to_nabla = lift(&rec.j_lower_map(&env));
        let bar_to_simple = lift(&ext.epi);
        let simple_to_bar = lift(&ext.mono);
        Ok(Standard {
            vertex: b,
            stratum: lam,
            sign: self.sign(lam),
            delta: delta_to_bar.source.clone(),
            nabla: bar_to_nabla.target.clone(),
            delta_bar: delta_to_bar.target.clone(),
            nabla_bar: bar_to_nabla.source.clone(),
            simple: bar_to_simple.target.clone(),
            delta_to_bar,
            bar_to_simple,
            simple_to_bar,
            bar_to_nabla,
        })
    }

    fn check_family(&self, fam: &StandardFamily<F>) -> Result<()> {
        let cat = self.category();
        let names = self.algebra().vertex_names();
        let unit = |b: usize| {
            let mut v = vec![0; names.len()];
            v[b] = 1;
            v
        };
        for s in &fam.members {
            let b = s.vertex;
            let maps_ok = s.delta_to_bar.is_surjective()
                && s.bar_to_simple.is_surjective()
                && s.simple_to_bar.is_injective()
                && s.bar_to_nabla.is_injective();
            if !maps_ok {
                return Err(Error::Invariant(format!("canonical maps at '{}' are not epi/mono as expected", names[b])));
            }
            for (what, m) in [("Δ", &s.delta), ("Δ̄", &s.delta_bar)] {
                if cat.top_vector(m) != unit(b) {
                    return Err(Error::Invariant(format!("{what}({}) does not have simple top S({})", names[b], names[b])));
                }
            }
            for (what, m) in [("∇", &s.nabla), ("∇̄", &s.nabla_bar)] {
                if cat.socle_vector(m) != unit(b) {
                    return Err(Error::Invariant(format!("{what}({}) does not have simple socle S({})", names[b], names[b])));
                }
            }
        }
        let poset = self.poset();
        for s in &fam.members {
            for t in &fam.members {
                if !poset.lt(t.stratum, s.stratum) {
                    continue;
                }
                if cat.hom_dim(s.delta_eps(), t.delta_eps()) != 0 {
                    return Err(Error::Invariant(format!(
                        "Hom(Δ_ε({}), Δ_ε({})) is nonzero although the first stratum is higher",
                        names[s.vertex], names[t.vertex]
                    )));
                }
                if cat.hom_dim(t.nabla_eps(), s.nabla_eps()) != 0 {
                    return Err(Error::Invariant(format!(
                        "Hom(∇_ε({}), ∇_ε({})) is nonzero although the second stratum is higher",
                        names[t.vertex], names[s.vertex]
                    )));
                }
            }
        }
        Ok(())
    }
}
