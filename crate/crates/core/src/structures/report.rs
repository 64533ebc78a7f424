use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::biggeom::GenSection;
use crate::scalar::{Patch, Poly};
use crate::tensor::{DiffForm, Endomorphism, Multivector};

/// Witnesses kept per condition.
pub const MAX_WITNESSES: usize = 8;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// One argument of a witness, printable with patch names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    /// `∂/∂x^i`
    Vector(usize),
    /// `dx^i`
    Form(usize),
    /// The `k`-th coordinate section of `TM ⊕ T*M`: `(∂_k, 0)` for `k < dim`,
    /// `(0, dx^{k−dim})` otherwise.
    Section(usize),
    /// A projected or otherwise derived argument, e.g. `pr_P d/dx1`.
    Projected(&'static str, alloc::boxed::Box<Arg>),
    /// Index into a frame or contact list.
    Index(&'static str, usize),
}

impl Arg {
    pub fn projected(proj: &'static str, inner: Arg) -> Arg {
        Arg::Projected(proj, alloc::boxed::Box::new(inner))
    }

    pub fn display<'a>(&'a self, patch: &'a Patch) -> ArgDisplay<'a> {
        ArgDisplay { arg: self, patch }
    }
}

pub struct ArgDisplay<'a> {
    arg: &'a Arg,
    patch: &'a Patch,
}

impl fmt::Display for ArgDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.patch.dim();
        match self.arg {
            Arg::Vector(i) => write!(f, "d/d{}", self.patch.name(*i)),
            Arg::Form(i) => write!(f, "d{}", self.patch.name(*i)),
            Arg::Section(k) if *k < n => write!(f, "(d/d{}, 0)", self.patch.name(*k)),
            Arg::Section(k) => write!(f, "(0, d{})", self.patch.name(*k - n)),
            Arg::Projected(p, inner) => write!(f, "{p} {}", inner.display(self.patch)),
            Arg::Index(label, k) => write!(f, "{label}[{k}]"),
        }
    }
}

/// Value carried by a witness; always nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorValue {
    Scalar(Poly),
    Multivector(Multivector),
    Form(DiffForm),
    Section(GenSection),
    Matrix(Endomorphism),
}

impl TensorValue {
    pub fn is_zero(&self) -> bool {
        match self {
            TensorValue::Scalar(p) => p.is_zero(),
            TensorValue::Multivector(m) => m.is_zero(),
            TensorValue::Form(w) => w.is_zero(),
            TensorValue::Section(s) => s.is_zero(),
            TensorValue::Matrix(a) => a.is_zero(),
        }
    }

    pub fn display<'a>(&'a self, patch: &'a Patch) -> ValueDisplay<'a> {
        ValueDisplay { value: self, patch }
    }
}

impl From<Poly> for TensorValue {
    fn from(p: Poly) -> Self {
        TensorValue::Scalar(p)
    }
}

impl From<Multivector> for TensorValue {
    fn from(m: Multivector) -> Self {
        TensorValue::Multivector(m)
    }
}

impl From<DiffForm> for TensorValue {
    fn from(w: DiffForm) -> Self {
        TensorValue::Form(w)
    }
}

impl From<GenSection> for TensorValue {
    fn from(s: GenSection) -> Self {
        TensorValue::Section(s)
    }
}

impl From<Endomorphism> for TensorValue {
    fn from(a: Endomorphism) -> Self {
        TensorValue::Matrix(a)
    }
}

pub struct ValueDisplay<'a> {
    value: &'a TensorValue,
    patch: &'a Patch,
}

impl fmt::Display for ValueDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            TensorValue::Scalar(p) => write!(f, "{}", p.display(self.patch)),
            TensorValue::Multivector(m) => write!(f, "{}", m.display(self.patch)),
            TensorValue::Form(w) => write!(f, "{}", w.display(self.patch)),
            TensorValue::Section(s) => write!(f, "{}", s.display(self.patch)),
            TensorValue::Matrix(a) => {
                f.write_str("[")?;
                for (i, r) in a.rows().iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    for (j, p) in r.iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", p.display(self.patch))?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub args: Vec<Arg>,
    pub value: TensorValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    /// Stable identifier from the public vocabulary.
    pub id: String,
    pub description: String,
    pub verdict: Verdict,
    /// Up to [`MAX_WITNESSES`] failing argument tuples.
    pub witnesses: Vec<Witness>,
    /// Number of failing tuples found, including ones beyond the cap.
    pub failures: usize,
}

impl Condition {
    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }
}

/// Accumulates the failing evaluations of one condition.
pub struct ConditionBuilder {
    id: String,
    description: String,
    witnesses: Vec<Witness>,
    failures: usize,
}

impl ConditionBuilder {
    pub fn new(id: &str, description: &str) -> Self {
        Self { id: id.to_string(), description: description.to_string(), witnesses: Vec::new(), failures: 0 }
    }

    /// Records `value` as a failure when it is nonzero.
    pub fn check(&mut self, args: Vec<Arg>, value: impl Into<TensorValue>) {
        let value = value.into();
        if value.is_zero() {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { args, value });
        }
    }

    /// Records a failure whose value is not available as a tensor.
    pub fn fail(&mut self, args: Vec<Arg>, value: impl Into<TensorValue>) {
        let value = value.into();
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { args, value });
        }
    }

    pub fn finish(self) -> Condition {
        let verdict = if self.failures == 0 { Verdict::Pass } else { Verdict::Fail };
        Condition { id: self.id, description: self.description, verdict, witnesses: self.witnesses, failures: self.failures }
    }
}

/// Ordered list of decided conditions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub conditions: Vec<Condition>,
    /// Free-form annotations, e.g. the point at which a frame was validated.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Condition) {
        self.conditions.push(c);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.conditions.extend(other.conditions);
        self.notes.extend(other.notes);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn verdict(&self) -> Verdict {
        if self.conditions.iter().all(|c| c.verdict.is_pass()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict().is_pass()
    }

    pub fn get(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Verdict of condition `id`; panics if it is absent.
    pub fn verdict_of(&self, id: &str) -> Verdict {
        self.get(id).unwrap_or_else(|| panic!("no condition `{id}` in report")).verdict
    }

    pub fn failing(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.verdict.is_pass())
    }
}
