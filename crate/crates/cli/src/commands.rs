//! The `check`, `cohomology`, `eval` and `corpus` jobs, each producing a
//! document and an exit code: 0 pass, 1 fail, 2 input or usage error.

use gcrf_core::biggeom::GenEndomorphism;
use gcrf_core::cohomology::{
    check_grading, check_quotient_well_defined, check_triple_grading, grading_samples, poisson_cohomology, spectral_terms,
    SpectralOptions,
};
use gcrf_core::structures::{
    check_almost_contact, check_classical_crf, check_classical_crf_frame, check_contact_poisson, check_cr_type,
    check_f_structure, check_hamiltonian_variants, check_integrability, check_integrability_alt, check_involutive,
    check_local_form, check_nonholonomic_poisson_submanifold, check_normal_classical, check_normality,
    check_quasi_classical, check_transverse_concomitant, CheckReport, StructureError, StructureInstance,
};
use gcrf_core::tensor::Endomorphism;
use serde::Serialize;

use crate::instance_file::{load_source, parse_instance, LoadedInstance};
use crate::library::BUILTINS;
use crate::report::{ReportDocument, Tables, TOOL};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    F,
    Cr,
    Crf,
    Quasi,
    Integrable,
    Contact,
    Normality,
    ContactPoisson,
    Submanifold,
}

impl Level {
    pub const ALL: [Level; 9] = [
        Level::F,
        Level::Cr,
        Level::Crf,
        Level::Quasi,
        Level::Integrable,
        Level::Contact,
        Level::Normality,
        Level::ContactPoisson,
        Level::Submanifold,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::F => "f",
            Level::Cr => "cr",
            Level::Crf => "crf",
            Level::Quasi => "quasi",
            Level::Integrable => "integrable",
            Level::Contact => "contact",
            Level::Normality => "normality",
            Level::ContactPoisson => "contact_poisson",
            Level::Submanifold => "submanifold",
        }
    }

    pub fn parse(s: &str) -> Option<Level> {
        Level::ALL.into_iter().find(|l| l.as_str() == s)
    }

    /// Whether the instance carries the data this level reads.
    pub fn applicable(self, m: &StructureInstance) -> bool {
        match self {
            Level::F | Level::Cr | Level::Crf | Level::Quasi | Level::Integrable => m.a.is_some(),
            Level::Contact | Level::Normality | Level::ContactPoisson => m.a.is_some() && !m.contact.is_empty(),
            Level::Submanifold => m.a.is_some() || m.projector_p.is_some(),
        }
    }
}

/// Rendered output of a job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    pub fn usage_error(msg: impl Into<String>) -> Self {
        Self { stdout: String::new(), stderr: msg.into() + "\n", code: 2 }
    }

    fn document(doc: &ReportDocument, json: bool) -> Self {
        let stdout = if json { doc.to_json() + "\n" } else { doc.to_text() };
        // the text rendering already carries the error line
        let stderr = match (&doc.error, json) {
            (Some(e), true) => format!("error: {e}\n"),
            _ => String::new(),
        };
        Self { stdout, stderr, code: doc.exit_code() }
    }
}

/// Loads `source`, applying a `--base-point` override when given.
pub fn load(source: &str, base_point: Option<&str>) -> Result<LoadedInstance, String> {
    let mut m = load_source(source).map_err(|e| e.to_string())?;
    if let Some(bp) = base_point {
        let patch = m.instance.patch.clone();
        let vals = bp
            .split(',')
            .map(|s| crate::instance_file::parse_constant(s.trim(), &patch))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("--base-point: {e}"))?;
        if vals.len() != patch.dim() {
            return Err(format!("--base-point: expected {} coordinates, found {}", patch.dim(), vals.len()));
        }
        m.instance.base_point = Some(vals);
    }
    Ok(m)
}

fn only_new(info: CheckReport, gate: &CheckReport) -> CheckReport {
    let mut out = CheckReport::new();
    for c in info.conditions {
        if gate.get(&c.id).is_none() && out.get(&c.id).is_none() {
            out.push(c);
        }
    }
    out.notes = info.notes;
    out
}

/// Projector onto the distribution read by `submanifold`: the file's `P`,
/// else `pr_P = −A²`.
fn distribution(m: &StructureInstance) -> Result<Endomorphism, StructureError> {
    match (&m.projector_p, &m.a) {
        (Some(p), _) => Ok(p.clone()),
        (None, Some(_)) => Ok(m.projectors()?.p),
        (None, None) => Err(StructureError::Missing("distribution projector P or endomorphism A")),
    }
}

/// Deciding conditions and cross-checks of a level.
pub fn level_reports(m: &StructureInstance, level: Level) -> Result<(CheckReport, CheckReport), StructureError> {
    let pi = &m.pi;
    let mut info = CheckReport::new();
    let gate = match level {
        Level::F => check_f_structure(m.a()?),
        Level::Cr => check_cr_type(m.a()?)?,
        Level::Crf => {
            let a = m.a()?;
            let r = check_classical_crf(a)?;
            if let Some(fr) = &m.frames {
                let v = fr.validate(a, &m.base_point(), &m.patch);
                let valid = v.passed();
                info.extend(v);
                if valid {
                    info.extend(check_classical_crf_frame(a, fr)?);
                }
            }
            r
        }
        Level::Quasi => {
            let a = m.a()?;
            let r = check_quasi_classical(a, pi);
            if let Ok(l) = check_local_form(a, pi) {
                info.extend(l);
            }
            r
        }
        Level::Integrable => {
            let a = m.a()?;
            let mut r = check_integrability(a, pi)?;
            r.extend(check_transverse_concomitant(a, pi)?);
            info.extend(check_integrability_alt(a, pi)?);
            info.extend(check_hamiltonian_variants(a, pi)?);
            info.extend(GenEndomorphism::quasi_classical(a.clone(), pi.clone()).s_phi_report());
            r
        }
        Level::Contact => check_almost_contact(m)?,
        Level::Normality => {
            let mut r = check_almost_contact(m)?;
            r.extend(check_normality(m)?);
            info.extend(check_normal_classical(m)?);
            r
        }
        Level::ContactPoisson => check_contact_poisson(m)?,
        Level::Submanifold => {
            let pr = distribution(m)?;
            let r = check_nonholonomic_poisson_submanifold(pi, &pr)?;
            info.extend(check_involutive(&pr)?);
            if let Ok(q) = check_quotient_well_defined(pi, &pr) {
                info.extend(q);
            }
            r
        }
    };
    let info = only_new(info, &gate);
    Ok((gate, info))
}

pub fn check(m: &LoadedInstance, level: Level) -> ReportDocument {
    let patch = &m.instance.patch;
    let mut doc = ReportDocument::new(format!("check {}", level.as_str()), &m.name, m.digest());
    match level_reports(&m.instance, level) {
        Ok((gate, info)) => {
            doc.add(&gate, patch);
            doc.add_informational(&info, patch);
        }
        Err(e) => match e.report() {
            Some(r) => {
                doc.add(r, patch);
                doc.notes.push(e.to_string());
            }
            None => doc.set_error(e.to_string()),
        },
    }
    doc
}

#[derive(Clone, Debug, Default)]
pub struct CohomologyRequest {
    pub max_degree: u32,
    pub k_max: Option<usize>,
    pub bigrading: bool,
    pub spectral: bool,
    pub triple: bool,
}

pub fn cohomology(m: &LoadedInstance, req: &CohomologyRequest) -> ReportDocument {
    let inst = &m.instance;
    let patch = &inst.patch;
    let n = inst.dim();
    let k_max = req.k_max.unwrap_or(n);
    let mut doc = ReportDocument::new(format!("cohomology D={} k_max={}", req.max_degree, k_max), &m.name, m.digest());
    let mut tables = Tables::default();
    match poisson_cohomology(&inst.pi, req.max_degree, k_max) {
        Ok(t) => tables.cohomology = Some((&t).into()),
        Err(e) => {
            doc.set_error(e.to_string());
            return doc;
        }
    }
    let needs_a = req.bigrading || req.spectral || req.triple;
    let a = match (&inst.a, needs_a) {
        (Some(a), _) => Some(a.clone()),
        (None, true) => {
            doc.tables = Some(tables);
            doc.set_error("--bigrading, --spectral and --triple need an endomorphism A");
            return doc;
        }
        (None, false) => None,
    };
    let samples = grading_samples(n);
    if let (true, Some(a)) = (req.bigrading, &a) {
        match check_grading(&inst.pi, a, &samples) {
            Ok(r) => doc.add(&r, patch),
            Err(e) => doc.set_error(e.to_string()),
        }
    }
    if let (true, Some(a)) = (req.triple, &a) {
        match &inst.frames {
            None => doc.set_error("--triple needs adapted frames"),
            Some(fr) => match check_triple_grading(&inst.pi, a, fr, &inst.base_point(), patch, &samples) {
                Ok(r) => doc.add(&r, patch),
                Err(e) => doc.set_error(e.to_string()),
            },
        }
    }
    if let (true, Some(a)) = (req.spectral, &a) {
        match spectral_terms(&inst.pi, a, req.max_degree, SpectralOptions::default()) {
            Ok(t) => {
                doc.add(&t.report, patch);
                tables.spectral = Some((&t).into());
            }
            Err(e) => doc.set_error(e.to_string()),
        }
    }
    doc.tables = Some(tables);
    doc
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct EvalDocument {
    pub tool: String,
    pub instance: String,
    pub digest: String,
    pub expression: String,
    pub value: String,
}

pub fn eval(m: &LoadedInstance, expression: &str, json: bool) -> Output {
    match crate::eval::evaluate(m, expression) {
        Ok(v) => {
            let value = crate::eval::render(m, v);
            let stdout = if json {
                let doc = EvalDocument {
                    tool: TOOL.into(),
                    instance: m.name.clone(),
                    digest: m.digest(),
                    expression: expression.into(),
                    value,
                };
                serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
            } else {
                value + "\n"
            };
            Output { stdout, stderr: String::new(), code: 0 }
        }
        Err(e) => Output::usage_error(format!("{expression}\n{}^\nerror: {e}", " ".repeat(e.pos))),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub instance: String,
    pub digest: String,
    pub reports: Vec<ReportDocument>,
    /// Levels whose verdict differs from the file's `expect` table.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CorpusDocument {
    pub tool: String,
    pub instances: Vec<CorpusEntry>,
    pub mismatches: usize,
}

/// Coefficient degree used for the corpus cohomology tables.
fn corpus_degree(n: usize) -> u32 {
    if n <= 3 {
        2
    } else {
        1
    }
}

pub fn corpus_entry(m: &LoadedInstance) -> CorpusEntry {
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    for level in Level::ALL {
        if !level.applicable(&m.instance) {
            continue;
        }
        let doc = check(m, level);
        if let Some(want) = m.expect.get(level.as_str()) {
            if doc.verdict != want.as_str() {
                mismatches.push(format!("{}: expected {}, got {}", level.as_str(), want.as_str(), doc.verdict));
            }
        }
        reports.push(doc);
    }
    for level in m.expect.keys() {
        let applicable = Level::parse(level).is_some_and(|l| l.applicable(&m.instance));
        if !applicable {
            mismatches.push(format!("{level}: expectation recorded but the level does not apply"));
        }
    }
    let req = CohomologyRequest { max_degree: corpus_degree(m.instance.dim()), ..Default::default() };
    reports.push(cohomology(m, &req));
    CorpusEntry { instance: m.name.clone(), digest: m.digest(), reports, mismatches }
}

pub fn corpus() -> CorpusDocument {
    let instances: Vec<CorpusEntry> = BUILTINS
        .iter()
        .map(|(name, text)| {
            let m = parse_instance(text, &format!("builtin:{name}")).expect("built-in instances parse");
            corpus_entry(&m)
        })
        .collect();
    let mismatches = instances.iter().map(|e| e.mismatches.len()).sum();
    CorpusDocument { tool: TOOL.into(), instances, mismatches }
}

pub fn corpus_text(doc: &CorpusDocument) -> String {
    let mut s = format!("{}: {} built-in instances\n", doc.tool, doc.instances.len());
    for e in &doc.instances {
        let verdicts: Vec<String> = e
            .reports
            .iter()
            .map(|r| format!("{}={}", r.command.trim_start_matches("check "), r.verdict))
            .collect();
        s += &format!("{:<28} {}\n", e.instance, verdicts.join(" "));
        for mm in &e.mismatches {
            s += &format!("  mismatch: {mm}\n");
        }
    }
    s += &format!("expectation mismatches: {}\n", doc.mismatches);
    s
}

pub fn load_or_usage(source: &str, base_point: Option<&str>) -> Result<LoadedInstance, Output> {
    load(source, base_point).map_err(Output::usage_error)
}

pub fn check_output(source: &str, level: Level, base_point: Option<&str>, json: bool) -> Output {
    match load_or_usage(source, base_point) {
        Ok(m) => Output::document(&check(&m, level), json),
        Err(o) => o,
    }
}

pub fn cohomology_output(source: &str, req: &CohomologyRequest, base_point: Option<&str>, json: bool) -> Output {
    match load_or_usage(source, base_point) {
        Ok(m) => Output::document(&cohomology(&m, req), json),
        Err(o) => o,
    }
}

pub fn corpus_output(json: bool) -> Output {
    let doc = corpus();
    let stdout = if json { serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n" } else { corpus_text(&doc) };
    Output { stdout, stderr: String::new(), code: if doc.mismatches == 0 { 0 } else { 1 } }
}
