//! JSON instance documents. Every tensor is given by expression strings in
//! the coordinate names; loading parses them into a [`StructureInstance`]
//! and rejects malformed input with the JSON path of the offending field.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use gcrf_core::scalar::{GaussRational, Patch, Poly};
use gcrf_core::structures::{AdaptedFrame, ContactPair, StructureInstance, Verdict};
use gcrf_core::tensor::{DiffForm, Endomorphism, Multivector};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::library;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InputError {
    #[error("{source_name}: line {line}, column {column}: {msg}")]
    Json { source_name: String, line: usize, column: usize, msg: String },
    #[error("{source_name}: {field}: {msg}")]
    Field { source_name: String, field: String, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("no built-in instance `{0}`; `gcrf corpus --list` shows the library")]
    UnknownBuiltin(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ContactEntry {
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    pub xi: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct FrameEntry {
    pub h: Vec<Vec<String>>,
    #[serde(default)]
    pub q: Vec<Vec<String>>,
    pub kappa: Vec<Vec<String>>,
}

/// On-disk form of an instance. `pi` lists `(i, j, expression)` for the
/// component of `∂_i ∧ ∂_j`; `P` is a projector onto a distribution;
/// `vectors` and `forms` name extra tensors for `eval`; `expect` records
/// the verdict per check level that `corpus` compares against.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub coordinates: Vec<String>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub pi: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contact: Vec<ContactEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frames: Option<FrameEntry>,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, String>,
}

/// A parsed instance together with the named tensors of its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedInstance {
    pub name: String,
    pub description: Option<String>,
    pub instance: StructureInstance,
    pub vectors: BTreeMap<String, Multivector>,
    pub forms: BTreeMap<String, DiffForm>,
    pub expect: BTreeMap<String, Verdict>,
}

/// Reads `builtin:NAME` from the library, anything else from disk.
pub fn load_source(source: &str) -> Result<LoadedInstance, InputError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let text = library::builtin_text(name).ok_or_else(|| InputError::UnknownBuiltin(name.to_string()))?;
        return parse_instance(text, source);
    }
    let text = fs::read_to_string(Path::new(source)).map_err(|e| InputError::Io { path: source.to_string(), msg: e.to_string() })?;
    parse_instance(&text, source)
}

pub fn parse_instance(text: &str, source_name: &str) -> Result<LoadedInstance, InputError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| InputError::Json {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        msg: strip_position(&e.to_string()),
    })?;
    file.load(source_name)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}

struct Ctx<'a> {
    source: &'a str,
    patch: Patch,
}

impl Ctx<'_> {
    fn err(&self, field: impl Into<String>, msg: impl Into<String>) -> InputError {
        InputError::Field { source_name: self.source.to_string(), field: field.into(), msg: msg.into() }
    }

    fn poly(&self, field: &str, text: &str) -> Result<Poly, InputError> {
        Poly::parse(text, &self.patch).map_err(|e| self.err(field, format!("`{text}`: {e}")))
    }

    fn list(&self, field: &str, comps: &[String]) -> Result<Vec<Poly>, InputError> {
        let n = self.patch.dim();
        if comps.len() != n {
            return Err(self.err(field, format!("expected {n} components, found {}", comps.len())));
        }
        comps.iter().enumerate().map(|(k, s)| self.poly(&format!("{field}[{k}]"), s)).collect()
    }

    fn vector(&self, field: &str, comps: &[String]) -> Result<Multivector, InputError> {
        Ok(Multivector::from_coeffs(self.list(field, comps)?))
    }

    fn form(&self, field: &str, comps: &[String]) -> Result<DiffForm, InputError> {
        Ok(DiffForm::from_coeffs(self.list(field, comps)?))
    }

    fn matrix(&self, field: &str, rows: &[Vec<String>]) -> Result<Endomorphism, InputError> {
        let n = self.patch.dim();
        if rows.len() != n {
            return Err(self.err(field, format!("expected {n} rows, found {}", rows.len())));
        }
        let rows = rows.iter().enumerate().map(|(i, r)| self.list(&format!("{field}[{i}]"), r)).collect::<Result<_, _>>()?;
        Ok(Endomorphism::from_rows(rows))
    }
}

/// Parses a constant such as `1/2` or `-3`.
pub fn parse_constant(text: &str, patch: &Patch) -> Result<GaussRational, String> {
    let p = Poly::parse(text, patch).map_err(|e| format!("`{text}`: {e}"))?;
    p.as_constant().ok_or_else(|| format!("`{text}` is not a constant"))
}

impl InstanceFile {
    pub fn load(&self, source_name: &str) -> Result<LoadedInstance, InputError> {
        let patch = Patch::new(self.coordinates.iter().cloned()).map_err(|e| InputError::Field {
            source_name: source_name.to_string(),
            field: "coordinates".into(),
            msg: e.to_string(),
        })?;
        let cx = Ctx { source: source_name, patch };
        let n = cx.patch.dim();
        let a = self.a.as_ref().map(|rows| cx.matrix("A", rows)).transpose()?;
        let mut pi = Multivector::zero(n, 2);
        for (k, (i, j, text)) in self.pi.iter().enumerate() {
            let field = format!("pi[{k}]");
            if *i >= n || *j >= n {
                return Err(cx.err(field, format!("index out of range for {n} coordinates")));
            }
            if i == j {
                return Err(cx.err(field, "a bivector component needs two distinct indices"));
            }
            let c = cx.poly(&field, text)?;
            pi = &pi + &Multivector::from_components(n, 2, [(vec![*i, *j], c)]);
        }
        let contact = self
            .contact
            .iter()
            .enumerate()
            .map(|(k, c)| {
                Ok(ContactPair { z: cx.vector(&format!("contact[{k}].Z"), &c.z)?, xi: cx.form(&format!("contact[{k}].xi"), &c.xi)? })
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        let frames = match &self.frames {
            None => None,
            Some(f) => {
                let vs = |label: &str, list: &[Vec<String>]| -> Result<Vec<Multivector>, InputError> {
                    list.iter().enumerate().map(|(k, v)| cx.vector(&format!("frames.{label}[{k}]"), v)).collect()
                };
                let kappa = f
                    .kappa
                    .iter()
                    .enumerate()
                    .map(|(k, v)| cx.form(&format!("frames.kappa[{k}]"), v))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(AdaptedFrame { h: vs("h", &f.h)?, q: vs("q", &f.q)?, kappa })
            }
        };
        let projector_p = self.p.as_ref().map(|rows| cx.matrix("P", rows)).transpose()?;
        let base_point = match &self.base_point {
            None => None,
            Some(pt) => {
                if pt.len() != n {
                    return Err(cx.err("base_point", format!("expected {n} coordinates, found {}", pt.len())));
                }
                let vals = pt
                    .iter()
                    .enumerate()
                    .map(|(k, s)| parse_constant(s, &cx.patch).map_err(|m| cx.err(format!("base_point[{k}]"), m)))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(vals)
            }
        };
        let mut vectors = BTreeMap::new();
        for (name, comps) in &self.vectors {
            vectors.insert(name.clone(), cx.vector(&format!("vectors.{name}"), comps)?);
        }
        let mut forms = BTreeMap::new();
        for (name, comps) in &self.forms {
            forms.insert(name.clone(), cx.form(&format!("forms.{name}"), comps)?);
        }
        let mut expect = BTreeMap::new();
        for (level, v) in &self.expect {
            if crate::commands::Level::parse(level).is_none() {
                return Err(cx.err(format!("expect.{level}"), "unknown check level"));
            }
            let verdict = match v.as_str() {
                "pass" => Verdict::Pass,
                "fail" => Verdict::Fail,
                _ => return Err(cx.err(format!("expect.{level}"), "expected `pass` or `fail`")),
            };
            expect.insert(level.clone(), verdict);
        }
        let instance = StructureInstance { patch: cx.patch.clone(), a, pi, contact, frames, projector_p, base_point };
        instance.validate().map_err(|e| cx.err("instance", e.to_string()))?;
        Ok(LoadedInstance {
            name: self.name.clone().unwrap_or_else(|| source_name.to_string()),
            description: self.description.clone(),
            instance,
            vectors,
            forms,
            expect,
        })
    }
}

fn show(p: &Poly, patch: &Patch) -> String {
    p.display(patch).to_string()
}

fn show_list(ps: &[Poly], patch: &Patch) -> Vec<String> {
    ps.iter().map(|p| show(p, patch)).collect()
}

fn show_matrix(a: &Endomorphism, patch: &Patch) -> Vec<Vec<String>> {
    a.rows().iter().map(|r| show_list(r, patch)).collect()
}

impl LoadedInstance {
    /// Canonical document: expressions in printed normal form, `pi` as
    /// increasing index pairs with nonzero coefficients.
    pub fn to_file(&self) -> InstanceFile {
        let m = &self.instance;
        let p = &m.patch;
        InstanceFile {
            name: Some(self.name.clone()),
            description: self.description.clone(),
            coordinates: p.names().to_vec(),
            a: m.a.as_ref().map(|a| show_matrix(a, p)),
            pi: m.pi.comps().map(|(idx, c)| (idx[0], idx[1], show(c, p))).collect(),
            contact: m
                .contact
                .iter()
                .map(|c| ContactEntry { z: show_list(&c.z.coeffs(), p), xi: show_list(&c.xi.coeffs(), p) })
                .collect(),
            frames: m.frames.as_ref().map(|f| FrameEntry {
                h: f.h.iter().map(|v| show_list(&v.coeffs(), p)).collect(),
                q: f.q.iter().map(|v| show_list(&v.coeffs(), p)).collect(),
                kappa: f.kappa.iter().map(|v| show_list(&v.coeffs(), p)).collect(),
            }),
            p: m.projector_p.as_ref().map(|a| show_matrix(a, p)),
            vectors: self.vectors.iter().map(|(k, v)| (k.clone(), show_list(&v.coeffs(), p))).collect(),
            forms: self.forms.iter().map(|(k, v)| (k.clone(), show_list(&v.coeffs(), p))).collect(),
            base_point: m.base_point.as_ref().map(|b| b.iter().map(|c| c.to_string()).collect()),
            expect: self.expect.iter().map(|(k, v)| (k.clone(), v.as_str().to_string())).collect(),
        }
    }

    /// `sha256:` digest of the canonical tensor data, ignoring the name,
    /// description and expectations.
    pub fn digest(&self) -> String {
        let mut f = self.to_file();
        f.name = None;
        f.description = None;
        f.expect.clear();
        let bytes = serde_json::to_vec(&f).expect("instance documents serialize");
        format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
    }
}

/// Canonical pretty-printed JSON for a parsed instance.
pub fn format_instance(m: &LoadedInstance) -> String {
    let mut s = serde_json::to_string_pretty(&m.to_file()).expect("instance documents serialize");
    s.push('\n');
    s
}
