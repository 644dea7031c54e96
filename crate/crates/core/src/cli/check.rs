//! The `validate` and `check` commands.

use std::sync::Arc;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{exit_code, input_hash, matrix_strings, CheckRecord, Report};
use super::spec::SpecFile;
use crate::algebra::{validate_algebra, Algebra};
use crate::analyze::{highest_weight_survey, sign_patterns, SplitOutcome};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, Fp, Rational};
use crate::modcat::Verdict;
use crate::mvglue::{mv_recollement, mv_simples, MvData, NATURALITY_FAMILY};
use crate::recol::{intermediate_extension, intermediate_extension_probes, verify_recollement, IdempotentRecollement};
use crate::strat::{filtration_search, FiltrationOutcome, LayerMode, SearchMode, Sign, Stratification, DEFAULT_ITERATION_BOUND};

/// Random morphisms per vertex idempotent for the `j_!*` probes.
pub const EXTENSION_PROBES: usize = 50;
/// Random morphisms per gluing for the kernel and cokernel probes.
pub const GLUED_PROBES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Recollement,
    Simples,
    Porism,
    Eps,
    Hw,
    Homological,
    /// Every mode the file has data for.
    All,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Recollement => "recollement",
            Mode::Simples => "simples",
            Mode::Porism => "porism",
            Mode::Eps => "eps",
            Mode::Hw => "hw",
            Mode::Homological => "homological",
            Mode::All => "all",
        }
    }

    fn needs_stratification(self) -> bool {
        matches!(self, Mode::Porism | Mode::Eps | Mode::Homological)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: Mode,
    pub n: usize,
    pub oracle: bool,
    pub seed: u64,
}

mod citation {
    pub const ALGEBRA: &str = "finite-dimensional basic algebra: associativity, unit, orthogonal vertex idempotents, nilpotent radical";
    pub const STRATIFICATION: &str = "stratification by lower sets of a poset with corner-algebra strata";
    pub const GLUING: &str = "gluing data: bimodules with a balanced pairing natural in the open side";
    pub const RECOLLEMENT: &str = "recollement along a vertex idempotent: adjoint triples, fully faithful embeddings, exact gluing sequences";
    pub const INTERMEDIATE: &str =
        "intermediate extension as the image of j_! -> j_*: no closed subobjects or quotients, restricts to the identity, preserves monomorphisms and epimorphisms";
    pub const SIMPLES: &str = "every simple object is the intermediate extension of a stratum simple, exactly once";
    pub const PORISM: &str = "the kernel of a projective onto its standard object is filtered by quotients of higher standard objects";
    pub const COVER: &str = "projective covers built stratum by stratum from universal extensions by simples";
    pub const EPSILON: &str =
        "ε-stratified exactly when the stratification is 2-homological and the sign-selected j_! or j_* is exact, against direct filtration searches";
    pub const VANISHING: &str = "higher Ext vanishes between ε-standard and ε-costandard objects of an ε-stratified category";
    pub const HIGHEST_WEIGHT: &str =
        "highest weight exactly when every stratum is a copy of the field and the stratification is 2-homological, against the axioms";
    pub const HOMOLOGICAL: &str = "Ext over a lower set agrees with Ext in the whole category through degree k";
    pub const SPLIT: &str = "sequences of projectives along a maximal stratum";
    pub const GLUED_RECOLLEMENT: &str = "recollement of the category of glued tuples (X_U, X_Z, α, β)";
    pub const GLUED_INTERMEDIATE: &str = "intermediate extension in the glued category as the image of ε";
    pub const GLUED_LIMITS: &str = "kernels and cokernels of glued tuples computed componentwise";
    pub const GLUED_SIMPLES: &str = "simple glued tuples come from simples of the closed and open sides";
}

/// Parse a spec file, rejecting invalid UTF-8.
pub fn read_spec(bytes: &[u8]) -> Result<SpecFile> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    SpecFile::parse(text)
}

macro_rules! with_field {
    ($spec:expr, $f:ident($($arg:expr),*)) => {
        match $spec {
            FieldSpec::Prime(2) => $f::<Fp<2>>($($arg),*),
            FieldSpec::Prime(3) => $f::<Fp<3>>($($arg),*),
            FieldSpec::Prime(5) => $f::<Fp<5>>($($arg),*),
            FieldSpec::Prime(7) => $f::<Fp<7>>($($arg),*),
            FieldSpec::Prime(11) => $f::<Fp<11>>($($arg),*),
            FieldSpec::Prime(13) => $f::<Fp<13>>($($arg),*),
            FieldSpec::Rationals => $f::<Rational>($($arg),*),
            FieldSpec::Prime(p) => {
                Err(Error::UnsupportedField(format!("GF({p}); supported fields are GF(2), GF(3), GF(5), GF(7), GF(11), GF(13) and Q")))
            }
        }
    };
}

fn start(command: &str, bytes: &[u8], seed: u64) -> (Report, Result<SpecFile>) {
    let mut report = Report::new(command, seed);
    report.input_hash = Some(input_hash(bytes));
    let spec = read_spec(bytes);
    if let Ok(s) = &spec {
        report.field = s.field_spec().ok().map(|f| f.to_string());
    }
    (report, spec)
}

pub fn cmd_validate(bytes: &[u8], seed: u64) -> Report {
    let (mut report, spec) = start("validate", bytes, seed);
    let run = spec.and_then(|s| {
        let f = s.field_spec()?;
        with_field!(f, validate(&s))
    });
    match run {
        Ok(checks) => {
            report.checks = checks;
            report.finish()
        }
        Err(e) => report.fail_with(&e),
    }
}

pub fn cmd_check(bytes: &[u8], opts: &CheckOptions) -> Report {
    let (mut report, spec) = start("check", bytes, opts.seed);
    report.mode = Some(opts.mode.name().into());
    report.oracle = opts.oracle;
    report.n = Some(opts.n);
    let run = spec.and_then(|s| {
        let f = s.field_spec()?;
        with_field!(f, check(&s, opts))
    });
    match run {
        Ok(checks) => {
            report.checks = checks;
            report.finish()
        }
        Err(e) => report.fail_with(&e),
    }
}

/// Run `f` as one check. Errors that mean the input is unusable abort the
/// command; any other error becomes a failed check carrying the error.
fn attempt<T>(
    out: &mut Vec<CheckRecord>,
    name: String,
    citation: &str,
    run: impl FnOnce() -> Result<T>,
    record: impl FnOnce(T, String) -> CheckRecord,
) -> Result<()> {
    if let Some(t) = recorded(out, &name, citation, run())? {
        out.push(record(t, name));
    }
    Ok(())
}

/// The value, or a failed check when the error is a failed computation.
fn recorded<T>(out: &mut Vec<CheckRecord>, name: &str, citation: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(t) => Ok(Some(t)),
        Err(e) if exit_code(&e) != 2 => Err(e),
        Err(e) => {
            out.push(CheckRecord::failed(name, citation, &e));
            Ok(None)
        }
    }
}

fn validate<F: Field>(spec: &SpecFile) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let a = Arc::new(spec.algebra::<F>()?);
    let v = validate_algebra(&a);
    let witness = v.violations.first().map(|x| format!("{}: {}", x.check, x.witness));
    out.push(
        CheckRecord::new("algebra axioms", citation::ALGEBRA, v.is_ok())
            .witness(witness)
            .certificate(json!({ "dim": a.dim(), "vertices": a.vertex_names(), "report": v })),
    );
    if let Some(block) = &spec.stratification {
        attempt(
            &mut out,
            "stratification".into(),
            citation::STRATIFICATION,
            || block.build(Arc::clone(&a)),
            |s, name| {
                let failing: Vec<String> = s
                    .strata()
                    .iter()
                    .filter(|st| !st.report.passed())
                    .map(|st| s.poset().label(st.label).to_string())
                    .collect();
                CheckRecord::new(name, citation::STRATIFICATION, failing.is_empty())
                    .witness(failing.first().map(|l| format!("the recollement of stratum {l} fails its axioms")))
                    .certificate(stratification_summary(&s))
            },
        )?;
    }
    if let Some(block) = &spec.mv {
        attempt(&mut out, "gluing data".into(), citation::GLUING, || block.build::<F>(), |d, name| {
            CheckRecord::new(name, citation::GLUING, true).certificate(gluing_summary(&d))
        })?;
    }
    Ok(out)
}

fn stratification_summary<F: Field>(s: &Stratification<F>) -> serde_json::Value {
    let names = s.algebra().vertex_names();
    json!({
        "poset": s.poset().labels(),
        "strict_order": s.poset().strict_pairs(),
        "rho": (0..names.len()).map(|v| (names[v].clone(), s.poset().label(s.label_of(v)).to_string())).collect::<Vec<_>>(),
        "epsilon": s.signs(),
        "audit": s.audit(),
    })
}

fn gluing_summary<F: Field>(d: &MvData<F>) -> serde_json::Value {
    json!({
        "dim_r": d.r().dim(),
        "dim_s": d.s().dim(),
        "dim_m": d.m().dim(),
        "dim_n": d.n().dim(),
        "naturality_family": NATURALITY_FAMILY,
    })
}

fn check<F: Field>(spec: &SpecFile, opts: &CheckOptions) -> Result<Vec<CheckRecord>> {
    if opts.oracle && F::elements().is_none() {
        return Err(Error::OracleOverRationals);
    }
    let a = Arc::new(spec.algebra::<F>()?);
    let strat = spec.stratification.as_ref().map(|b| b.build(Arc::clone(&a))).transpose()?;
    let mv = spec.mv.as_ref().map(|b| b.build::<F>()).transpose()?;
    if opts.mode.needs_stratification() && strat.is_none() {
        return Err(Error::Schema(format!("--mode {} needs a stratification block", opts.mode.name())));
    }
    let search = if opts.oracle { SearchMode::Oracle } else { SearchMode::Heuristic };
    let modes = match opts.mode {
        Mode::All => vec![Mode::Recollement, Mode::Simples, Mode::Porism, Mode::Eps, Mode::Hw, Mode::Homological],
        m => vec![m],
    };
    let mut out = Vec::new();
    for mode in modes {
        match (mode, &strat) {
            (Mode::Recollement, _) => recollement_checks(&a, mv.as_ref(), opts.seed, &mut out)?,
            (Mode::Simples, _) => simples_checks(strat.as_ref(), mv.as_ref(), &mut out)?,
            (Mode::Porism, Some(s)) => porism_checks(s, search, &mut out)?,
            (Mode::Eps, Some(s)) => epsilon_checks(s, opts.n, search, &mut out)?,
            (Mode::Hw, _) => highest_weight_checks(&a, strat.as_ref(), search, &mut out)?,
            (Mode::Homological, Some(s)) => homological_checks(s, opts.n, &mut out)?,
            _ => {}
        }
    }
    Ok(out)
}

fn recollement_checks<F: Field>(
    a: &Arc<Algebra<F>>,
    mv: Option<&MvData<F>>,
    seed: u64,
    out: &mut Vec<CheckRecord>,
) -> Result<()> {
    for v in 0..a.vertex_count() {
        let vertex = a.vertex_names()[v].clone();
        let built = IdempotentRecollement::new(Arc::clone(a), &[v]);
        let Some(r) = recorded(out, &format!("recollement axioms at e{vertex}"), citation::RECOLLEMENT, built)? else {
            continue;
        };
        let samples = r.standard_samples();
        let rep = verify_recollement(&r, &samples);
        let witness = rep.violations.first().map(|x| format!("{}: {}", x.axiom, x.witness));
        out.push(
            CheckRecord::new(format!("recollement axioms at e{vertex}"), citation::RECOLLEMENT, rep.passed())
                .witness(witness)
                .certificate(json!({ "degenerate": r.degenerate(), "report": rep })),
        );
        attempt(
            out,
            format!("intermediate extensions at e{vertex}"),
            citation::INTERMEDIATE,
            || {
                let dims = samples
                    .right
                    .iter()
                    .map(|(n, y)| Ok(json!({ "object": n, "dim": intermediate_extension(&r, y)?.object.dim() })))
                    .collect::<Result<Vec<_>>>()?;
                let probes = intermediate_extension_probes(&r, &samples.right, EXTENSION_PROBES, seed ^ v as u64)?;
                Ok((dims, probes))
            },
            |(dims, probes), name| {
                CheckRecord::new(name, citation::INTERMEDIATE, probes.passed())
                    .witness(probes.failures.first().cloned())
                    .certificate(json!({ "objects": dims, "probes": probes }))
            },
        )?;
    }
    let Some(d) = mv else { return Ok(()) };
    let r = mv_recollement(Arc::new(d.clone()));
    let samples = r.standard_samples();
    let rep = verify_recollement(&r, &samples);
    out.push(
        CheckRecord::new("glued recollement axioms", citation::GLUED_RECOLLEMENT, rep.passed())
            .witness(rep.violations.first().map(|x| format!("{}: {}", x.axiom, x.witness)))
            .certificate(json!({ "gluing": gluing_summary(d), "report": rep })),
    );
    let mut compared = Vec::new();
    let mut witness = None;
    for (n, y) in &samples.right {
        match r.compare_intermediate_extension(y) {
            Ok(iso) => compared.push(json!({ "object": n, "iso_open": matrix_strings(&iso.fu.matrix), "iso_closed": matrix_strings(&iso.fz.matrix) })),
            Err(e) if witness.is_none() => witness = Some(format!("{n}: {e}")),
            Err(_) => {}
        }
    }
    out.push(
        CheckRecord::new("glued intermediate extension formula", citation::GLUED_INTERMEDIATE, witness.is_none())
            .witness(witness)
            .certificate(compared),
    );
    let probes = r.universal_probes(GLUED_PROBES, seed);
    out.push(
        CheckRecord::new("glued kernels and cokernels", citation::GLUED_LIMITS, probes.passed())
            .witness(probes.failures.first().cloned())
            .certificate(probes),
    );
    Ok(())
}

fn simples_checks<F: Field>(
    strat: Option<&Stratification<F>>,
    mv: Option<&MvData<F>>,
    out: &mut Vec<CheckRecord>,
) -> Result<()> {
    if let Some(s) = strat {
        let names = s.algebra().vertex_names().to_vec();
        attempt(out, "simple objects from strata".into(), citation::SIMPLES, || s.classify_simples(), |classes, name| {
            let mut seen: Vec<usize> = classes.iter().map(|c| c.vertex).collect();
            seen.sort_unstable();
            seen.dedup();
            let ok = classes.len() == names.len() && seen.len() == names.len();
            let cert: Vec<_> = classes
                .iter()
                .map(|c| {
                    json!({
                        "vertex": names[c.vertex],
                        "stratum": s.poset().label(c.stratum),
                        "stratum_simple_dim": c.stratum_simple.dim(),
                        "dim_vector": c.glued.dim_vector(),
                    })
                })
                .collect();
            CheckRecord::new(name, citation::SIMPLES, ok)
                .witness((!ok).then(|| format!("{} classes for {} vertices", classes.len(), names.len())))
                .certificate(cert)
        })?;
    }
    if let Some(d) = mv {
        let r = mv_recollement(Arc::new(d.clone()));
        let expected = d.r().vertex_count() + d.s().vertex_count();
        attempt(out, "glued simple objects".into(), citation::GLUED_SIMPLES, || mv_simples(&r), |simples, name| {
            let cert: Vec<_> = simples
                .iter()
                .map(|x| json!({ "kind": x.kind, "vertex": x.vertex, "dim_open": x.object.xu.dim(), "dim_closed": x.object.xz.dim() }))
                .collect();
            CheckRecord::new(name, citation::GLUED_SIMPLES, simples.len() == expected)
                .witness((simples.len() != expected).then(|| format!("{} simples, expected {expected}", simples.len())))
                .certificate(cert)
        })?;
    }
    Ok(())
}

/// The chain of a filtration as nested basis matrices, bottom first.
fn chain_certificate<F: Field>(f: &FiltrationOutcome<F>) -> serde_json::Value {
    let layers = f.certificate.as_ref().map(|c| {
        c.layers
            .iter()
            .map(|l| json!({ "layer": l.name, "submodule": matrix_strings(l.upper.basis()) }))
            .collect::<Vec<_>>()
    });
    json!({ "found": f.found(), "decided": f.decided(), "search": f.search, "nodes": f.nodes, "chain": layers })
}

fn porism_checks<F: Field>(s: &Stratification<F>, search: SearchMode, out: &mut Vec<CheckRecord>) -> Result<()> {
    let names = s.algebra().vertex_names().to_vec();
    let Some(family) = recorded(out, "standard objects", citation::PORISM, s.standard_objects())? else {
        return Ok(());
    };
    let deltas: Vec<(String, _)> =
        family.members.iter().map(|m| (format!("Δ({})", names[m.vertex]), m.delta.clone())).collect();
    let cat = s.category();
    for b in 0..names.len() {
        attempt(
            out,
            format!("filtration of the kernel onto Δ({})", names[b]),
            citation::PORISM,
            || {
                let p = s.porism_check(b, &family, search)?;
                let exact = filtration_search(cat, &cat.projective(b), &deltas, LayerMode::Exact, search)?;
                Ok((p, exact))
            },
            |(p, exact), name| {
                CheckRecord::new(name, citation::PORISM, p.filtration.found()).certificate(json!({
                    "kernel_dim": p.kernel.source.dim(),
                    "allowed": p.allowed,
                    "quotient_layers": chain_certificate(&p.filtration),
                    "exact_standard_filtration_of_projective": chain_certificate(&exact),
                }))
            },
        )?;
        attempt(
            out,
            format!("projective cover synthesis at {}", names[b]),
            citation::COVER,
            || s.synthesize_projective_cover(b, DEFAULT_ITERATION_BOUND),
            |c, name| {
                let ok = c.matches_direct == Verdict::Yes;
                CheckRecord::new(name, citation::COVER, ok)
                    .verdict(c.matches_direct)
                    .witness((!ok).then(|| format!("the synthesized module of dimension {} is not P({})", c.module.dim(), names[b])))
                    .certificate(json!({ "dim": c.module.dim(), "steps": c.steps }))
            },
        )?;
    }
    Ok(())
}

pub fn sign_string(s: &Stratification<impl Field>, signs: &[Sign]) -> String {
    let parts: Vec<String> = signs
        .iter()
        .enumerate()
        .map(|(i, g)| format!("{}{}", s.poset().label(i), if *g == Sign::Plus { "+" } else { "-" }))
        .collect();
    parts.join(" ")
}

fn epsilon_checks<F: Field>(s: &Stratification<F>, n: usize, search: SearchMode, out: &mut Vec<CheckRecord>) -> Result<()> {
    let Some(inputs) = recorded(out, "theorem route inputs", citation::EPSILON, s.theorem_inputs())? else {
        return Ok(());
    };
    let patterns = match s.signs() {
        Some(g) => vec![g.to_vec()],
        None => sign_patterns(s.poset().len())?,
    };
    for signs in patterns {
        let label = sign_string(s, &signs);
        let mut yes = false;
        attempt(
            out,
            format!("ε-stratified for {label}"),
            citation::EPSILON,
            || s.epsilon_report(&signs, &inputs, search),
            |r, name| {
                let verdict = r.verdict();
                yes = verdict == Verdict::Yes;
                let witness = r.falsification.clone().or_else(|| match verdict {
                    Verdict::Yes => None,
                    _ => [&r.theorem, &r.direct_delta, &r.direct_nabla].iter().find_map(|x| x.witness.clone()),
                });
                CheckRecord::new(name, citation::EPSILON, r.routes_agree).verdict(verdict).witness(witness).certificate(&r)
            },
        )?;
        if yes {
            attempt(
                out,
                format!("Ext vanishing for {label}"),
                citation::VANISHING,
                || s.bs_vanishing_check(&signs, n),
                |t, name| {
                    let witness = t.nonzero_higher().first().map(|e| serde_json::to_string(e).unwrap_or_default());
                    CheckRecord::new(name, citation::VANISHING, t.vanishes()).witness(witness).certificate(&t)
                },
            )?;
        }
    }
    Ok(())
}

fn highest_weight_checks<F: Field>(
    a: &Arc<Algebra<F>>,
    strat: Option<&Stratification<F>>,
    search: SearchMode,
    out: &mut Vec<CheckRecord>,
) -> Result<()> {
    if let Some(s) = strat {
        attempt(out, "highest weight".into(), citation::HIGHEST_WEIGHT, || s.highest_weight(None, search), |h, name| {
            let verdict = h.verdict();
            let witness = h.falsification.clone().or_else(|| match verdict {
                Verdict::Yes => None,
                _ => h
                    .structure_witness
                    .clone()
                    .or_else(|| h.axioms.iter().find(|x| x.holds != Verdict::Yes).and_then(|x| x.witness.clone())),
            });
            CheckRecord::new(name, citation::HIGHEST_WEIGHT, h.routes_agree).verdict(verdict).witness(witness).certificate(&h)
        })?;
        return Ok(());
    }
    attempt(
        out,
        "highest weight over every labelling".into(),
        citation::HIGHEST_WEIGHT,
        || highest_weight_survey(Arc::clone(a), search),
        |entries, name| {
            let results: Vec<_> = entries.iter().filter_map(|e| e.result.as_ref()).collect();
            let verdicts: Vec<Verdict> = results.iter().map(|h| h.verdict()).collect();
            let verdict = if verdicts.contains(&Verdict::Yes) {
                Verdict::Yes
            } else if verdicts.contains(&Verdict::Undecided) {
                Verdict::Undecided
            } else {
                Verdict::No
            };
            let disagreement = results.iter().find(|h| !h.routes_agree);
            CheckRecord::new(name, citation::HIGHEST_WEIGHT, disagreement.is_none())
                .verdict(verdict)
                .witness(disagreement.and_then(|h| h.falsification.clone()))
                .certificate(&entries)
        },
    )?;
    Ok(())
}

fn homological_checks<F: Field>(s: &Stratification<F>, n: usize, out: &mut Vec<CheckRecord>) -> Result<()> {
    attempt(
        out,
        format!("{n}-homological"),
        citation::HOMOLOGICAL,
        || s.is_k_homological(n, Some(n)),
        |h, name| {
            let witness = h.witness.as_ref().map(|w| {
                format!(
                    "Ext^{}({}, {}) over the lower set {:?} below {}",
                    w.comparison.degree, w.x, w.y, w.instance.lower_set, w.instance.maximal
                )
            });
            let verdict = if h.holds { Verdict::Yes } else { Verdict::No };
            CheckRecord::new(name, citation::HOMOLOGICAL, true).verdict(verdict).witness(witness).certificate(&h)
        },
    )?;
    let names = s.algebra().vertex_names().to_vec();
    let full = s.poset().full();
    for lam in s.poset().maximal_in(full) {
        let label = s.poset().label(lam).to_string();
        attempt(
            out,
            format!("projective sequences along {label}"),
            citation::SPLIT,
            || (0..names.len()).map(|b| s.lemma_split_check(lam, &s.category().projective(b))).collect::<Result<Vec<_>>>(),
            |checks, name| {
                let obstruction = checks.iter().zip(&names).find(|(c, _)| matches!(c.outcome, SplitOutcome::Obstruction { .. }));
                CheckRecord::new(name, citation::SPLIT, true)
                    .verdict(if obstruction.is_none() { Verdict::Yes } else { Verdict::No })
                    .witness(obstruction.map(|(c, v)| format!("P({v}): {:?}", c.outcome)))
                    .certificate(&checks)
            },
        )?;
    }
    Ok(())
}
