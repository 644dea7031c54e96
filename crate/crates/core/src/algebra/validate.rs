//! Axiom checks for algebras given by structure constants.

use serde::Serialize;

use crate::algebra::Algebra;
use crate::exactla::{Field, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks_run: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn run(&mut self, check: &str, witness: Option<String>) {
        self.checks_run.push(check.to_string());
        if let Some(w) = witness {
            self.violations.push(Violation { check: check.to_string(), witness: w });
        }
    }
}

pub fn validate_algebra<F: Field>(a: &Algebra<F>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = a.dim();
    let labels = a.labels();
    let basis: Vec<Vec<F>> = (0..n).map(|i| a.basis_vector(i)).collect();
    let is_zero = |v: &[F]| v.iter().all(|x| x.is_zero());

    let assoc = (|| {
        for i in 0..n {
            for j in 0..n {
                let ij = a.mul(&basis[i], &basis[j]);
                for k in 0..n {
                    let jk = a.mul(&basis[j], &basis[k]);
                    if a.mul(&ij, &basis[k]) != a.mul(&basis[i], &jk) {
                        return Some(format!("({}, {}, {})", labels[i], labels[j], labels[k]));
                    }
                }
            }
        }
        None
    })();
    report.run("associativity", assoc);

    let unit = (0..n).find_map(|i| {
        (a.mul(a.unit(), &basis[i]) != basis[i] || a.mul(&basis[i], a.unit()) != basis[i])
            .then(|| labels[i].clone())
    });
    report.run("unit", unit);

    let names = a.vertex_names();
    let idem = (|| {
        let es = a.idempotents();
        for (v, e) in es.iter().enumerate() {
            if is_zero(e) || a.mul(e, e) != *e {
                return Some(format!("e{} is not a nonzero idempotent", names[v]));
            }
            for (w, f) in es.iter().enumerate() {
                if v != w && !is_zero(&a.mul(e, f)) {
                    return Some(format!("e{} e{} != 0", names[v], names[w]));
                }
            }
        }
        let sum = a.idempotent_sum(&(0..es.len()).collect::<Vec<_>>());
        (sum != a.unit()).then(|| "idempotents do not sum to the unit".to_string())
    })();
    report.run("idempotents", idem);

    let rad = a.radical();
    let ideal = (|| {
        for r in rad.basis().row_iter() {
            for (i, b) in basis.iter().enumerate() {
                if !rad.contains(&a.mul(r, b)) || !rad.contains(&a.mul(b, r)) {
                    return Some(format!("radical vector {:?} times {}", r, labels[i]));
                }
            }
        }
        None
    })();
    report.run("radical is a two-sided ideal", ideal);

    let nil = a.loewy_length().is_none().then(|| "rad^k != 0 for all k <= dim".to_string());
    report.run("radical is nilpotent", nil);

    let split = (|| {
        if rad.dim() + a.vertex_count() != n {
            return Some(format!(
                "dim A/rad = {} but there are {} vertices",
                n - rad.dim(),
                a.vertex_count()
            ));
        }
        let es = a.idempotents();
        for (v, e) in es.iter().enumerate() {
            for (w, f) in es.iter().enumerate() {
                let piece = a.sandwich(e, f);
                let mod_rad = piece.sum(rad).expect("same ambient").dim() - rad.dim();
                let expected = usize::from(v == w);
                if mod_rad != expected {
                    return Some(format!(
                        "e{} (A/rad) e{} has dimension {mod_rad}, expected {expected}",
                        names[v], names[w]
                    ));
                }
            }
        }
        None
    })();
    report.run("split semisimple top", split);

    let pieces = {
        let es = a.idempotents();
        let total: usize = es
            .iter()
            .flat_map(|e| es.iter().map(move |f| (e, f)))
            .map(|(e, f)| a.sandwich(e, f).dim())
            .sum();
        (total != n).then(|| format!("sum of dim e_v A e_w is {total}, dim A is {n}"))
    };
    report.run("Peirce decomposition", pieces);

    report
}

impl<F: Field> Algebra<F> {
    /// Dimension of `e_v A e_w`.
    pub fn piece_dim(&self, v: usize, w: usize) -> usize {
        self.sandwich(self.idempotent(v), self.idempotent(w)).dim()
    }

    /// `rad^k` as a subspace.
    pub fn radical_power(&self, k: usize) -> Subspace<F> {
        let mut power = Matrix::from_rows(self.dim(), &[self.unit().to_vec()]);
        for _ in 0..k {
            power = self.product_space(&power, self.radical().basis());
        }
        Subspace::row_space(&power)
    }
}
