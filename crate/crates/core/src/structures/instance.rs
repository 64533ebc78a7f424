use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Arg, CheckReport, ConditionBuilder};
use crate::cohomology::rank_of_rows;
use crate::scalar::{GaussRational, Patch, Poly};
use crate::tensor::{DiffForm, Endomorphism, Multivector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureError {
    /// A required piece of data is absent from the instance.
    Missing(&'static str),
    /// `A³ + A ≠ 0`; the report carries the witness.
    NotF(CheckReport),
    /// A precondition of the requested check failed.
    Precondition(CheckReport),
    /// A projector argument is not idempotent.
    NotIdempotent(CheckReport),
    /// The adapted frame does not validate.
    InvalidFrame(CheckReport),
    CoordinateCollision(String),
    /// Tensors of an instance live on patches of different dimension.
    PatchMismatch { expected: usize, found: usize },
}

impl StructureError {
    /// Report attached to the error, if any.
    pub fn report(&self) -> Option<&CheckReport> {
        match self {
            StructureError::NotF(r)
            | StructureError::Precondition(r)
            | StructureError::NotIdempotent(r)
            | StructureError::InvalidFrame(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::Missing(what) => write!(f, "instance has no {what}"),
            StructureError::NotF(_) => f.write_str("A is not an F structure (A³ + A ≠ 0)"),
            StructureError::Precondition(r) => {
                f.write_str("precondition failed:")?;
                for c in r.failing() {
                    write!(f, " {}", c.id)?;
                }
                Ok(())
            }
            StructureError::NotIdempotent(_) => f.write_str("projector is not idempotent"),
            StructureError::InvalidFrame(_) => f.write_str("adapted frame does not validate"),
            StructureError::CoordinateCollision(n) => write!(f, "coordinate `{n}` occurs in both factors"),
            StructureError::PatchMismatch { expected, found } => {
                write!(f, "tensor on a patch of dimension {found}, expected {expected}")
            }
        }
    }
}

impl core::error::Error for StructureError {}

/// `(Z_a, ξ^a)` of an almost contact structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactPair {
    pub z: Multivector,
    pub xi: DiffForm,
}

/// Claimed local bases of `H`, `Q` and of `H*` inside `ann Q`.
/// Conjugates supply `H̄` and `H̄*`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdaptedFrame {
    pub h: Vec<Multivector>,
    pub q: Vec<Multivector>,
    pub kappa: Vec<DiffForm>,
}

/// Patch plus tensor data; the unit of ingestion for every checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureInstance {
    pub patch: Patch,
    pub a: Option<Endomorphism>,
    pub pi: Multivector,
    pub contact: Vec<ContactPair>,
    pub frames: Option<AdaptedFrame>,
    /// Projector onto a distribution `P`, for the submanifold checks when
    /// `P` is not given as `im A`.
    pub projector_p: Option<Endomorphism>,
    /// Rational point at which frames are validated; the origin when absent.
    pub base_point: Option<Vec<GaussRational>>,
}

impl StructureInstance {
    /// Instance with `A` and `π` only.
    pub fn new(patch: Patch, a: Endomorphism, pi: Multivector) -> Result<Self, StructureError> {
        let inst = Self {
            patch,
            a: Some(a),
            pi,
            contact: Vec::new(),
            frames: None,
            projector_p: None,
            base_point: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Checks that every tensor lives on the patch and `π` is a bivector.
    pub fn validate(&self) -> Result<(), StructureError> {
        let n = self.patch.dim();
        let same = |d: usize| if d == n { Ok(()) } else { Err(StructureError::PatchMismatch { expected: n, found: d }) };
        if let Some(a) = &self.a {
            same(a.dim())?;
        }
        same(self.pi.dim())?;
        if self.pi.degree() != 2 {
            return Err(StructureError::Missing("bivector π of degree 2"));
        }
        for c in &self.contact {
            same(c.z.dim())?;
            same(c.xi.dim())?;
        }
        if let Some(p) = &self.projector_p {
            same(p.dim())?;
        }
        if let Some(f) = &self.frames {
            for v in f.h.iter().chain(&f.q) {
                same(v.dim())?;
            }
            for k in &f.kappa {
                same(k.dim())?;
            }
        }
        if let Some(b) = &self.base_point {
            same(b.len())?;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.patch.dim()
    }

    pub fn a(&self) -> Result<&Endomorphism, StructureError> {
        self.a.as_ref().ok_or(StructureError::Missing("endomorphism A"))
    }

    pub fn contact(&self) -> Result<&[ContactPair], StructureError> {
        if self.contact.is_empty() {
            Err(StructureError::Missing("contact data (Z, ξ)"))
        } else {
            Ok(&self.contact)
        }
    }

    pub fn base_point(&self) -> Vec<GaussRational> {
        self.base_point.clone().unwrap_or_else(|| (0..self.dim()).map(|_| GaussRational::from_int(0)).collect())
    }

    /// Projectors of `A`, refusing unless `A` is an F structure.
    pub fn projectors(&self) -> Result<Projectors, StructureError> {
        Projectors::new(self.a()?)
    }
}

/// `pr_H = −½(A² + iA)`, `pr_H̄ = −½(A² − iA)`, `pr_Q = A² + Id`, `pr_P = −A²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectors {
    pub h: Endomorphism,
    pub hbar: Endomorphism,
    pub q: Endomorphism,
    pub p: Endomorphism,
}

impl Projectors {
    pub fn new(a: &Endomorphism) -> Result<Self, StructureError> {
        let r = super::check_f_structure(a);
        if !r.passed() {
            return Err(StructureError::NotF(r));
        }
        Ok(Self::new_unchecked(a))
    }

    /// Same formulas without verifying `A³ + A = 0`.
    pub fn new_unchecked(a: &Endomorphism) -> Self {
        let n = a.dim();
        let a2 = a.square();
        let ia = a.scale_const(&GaussRational::i());
        let minus_half = GaussRational::from_ratio(-1, 2);
        Self {
            h: (&a2 + &ia).scale_const(&minus_half),
            hbar: (&a2 - &ia).scale_const(&minus_half),
            q: &a2 + &Endomorphism::identity(n),
            p: -&a2,
        }
    }
}

impl AdaptedFrame {
    /// Validates eigen-relations symbolically and full rank of
    /// `(h, h̄, q)` at `point`.
    pub fn validate(&self, a: &Endomorphism, point: &[GaussRational], patch: &Patch) -> CheckReport {
        let i = GaussRational::i();
        let mut eig_h = ConditionBuilder::new("frame:h-eigen", "A h = i h");
        for (k, h) in self.h.iter().enumerate() {
            eig_h.check(alloc::vec![Arg::Index("h", k)], &a.apply(h) - &h.scale_const(&i));
        }
        let mut eig_q = ConditionBuilder::new("frame:q-kernel", "A q = 0");
        for (k, q) in self.q.iter().enumerate() {
            eig_q.check(alloc::vec![Arg::Index("q", k)], a.apply(q));
        }
        let mut eig_k = ConditionBuilder::new("frame:kappa-eigen", "κ∘A = iκ");
        for (k, kap) in self.kappa.iter().enumerate() {
            eig_k.check(alloc::vec![Arg::Index("kappa", k)], &a.apply_dual(kap) - &kap.scale_const(&i));
        }
        let mut rank = ConditionBuilder::new("frame:rank", "(h, h̄, q) has full rank at the base point");
        let n = a.dim();
        let vectors: Vec<Multivector> =
            self.h.iter().cloned().chain(self.h.iter().map(Multivector::conj)).chain(self.q.iter().cloned()).collect();
        let rows: Vec<Vec<GaussRational>> =
            vectors.iter().map(|v| v.coeffs().iter().map(|p| p.eval(point)).collect()).collect();
        let r = rank_of_rows(&rows, n);
        if vectors.len() != n || r != n {
            rank.fail(alloc::vec![], Poly::int(n, (n as i64) - (r as i64)));
        }
        let mut dual = ConditionBuilder::new("frame:kappa-dual", "κ^i(h_j) = δ at the base point");
        for (k, kap) in self.kappa.iter().enumerate() {
            for (l, h) in self.h.iter().enumerate() {
                let v = crate::tensor::pairing(kap, h).eval(point);
                let want = GaussRational::from_int(if k == l { 1 } else { 0 });
                if v != want {
                    dual.fail(alloc::vec![Arg::Index("kappa", k), Arg::Index("h", l)], Poly::constant(n, &v - &want));
                }
            }
        }
        let mut out = CheckReport::new();
        out.push(eig_h.finish());
        out.push(eig_q.finish());
        out.push(eig_k.finish());
        out.push(rank.finish());
        out.push(dual.finish());
        let coords: Vec<String> = point.iter().map(|c| alloc::format!("{c}")).collect();
        let names: Vec<&str> = patch.names().iter().map(String::as_str).collect();
        out.note(alloc::format!("frame validated at point ({}) = ({})", names.join(", "), coords.join(", ")));
        out
    }
}
