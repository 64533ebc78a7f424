use alloc::string::String;
use alloc::vec::Vec;

use super::ScalarError;

/// A single coordinate chart: an ordered list of distinct coordinate names.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Patch {
    names: Vec<String>,
}

impl Patch {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, ScalarError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ScalarError::InvalidPatch("a patch needs at least one coordinate".into()));
        }
        for (k, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(ScalarError::InvalidPatch(alloc::format!("`{n}` is not an identifier")));
            }
            if n == "i" {
                return Err(ScalarError::InvalidPatch("`i` is reserved for the imaginary unit".into()));
            }
            if names[..k].contains(n) {
                return Err(ScalarError::InvalidPatch(alloc::format!("duplicate coordinate `{n}`")));
            }
        }
        Ok(Self { names })
    }

    /// Coordinates `x1 .. xn`.
    pub fn numbered(prefix: &str, dim: usize) -> Self {
        Self::new((1..=dim).map(|k| alloc::format!("{prefix}{k}"))).expect("generated names are valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Disjoint union of two charts, coordinates of `self` first.
    pub fn concat(&self, other: &Patch) -> Result<Patch, ScalarError> {
        for n in &other.names {
            if self.names.contains(n) {
                return Err(ScalarError::InvalidPatch(alloc::format!("coordinate `{n}` appears in both factors")));
            }
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        Ok(Self { names })
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
