//! Seeded generators of quasi-classical pairs `(A, π)` and of non-Poisson
//! bivectors. All coefficients have degree `≤ 2`, patches dimension `≤ 6`.
//!
//! Pairs start from `A₀ = J ⊕ 0` on `(x1, y1, .., xm, ym, t1, ..)` and
//! `π = ½(t + t̄)` with `t` a combination of `h_a ∧ h_b`, `h_a = ∂x_a − i∂y_a`;
//! such `π` is real, compatible with `A₀` and has no `Q` leg. Families
//! differ in the coefficients of `t`, and some pairs are moved by a linear
//! change of coordinates or by a pointwise frame rotation.

use gcrf_core::cohomology::{d_pi, TruncatedSpace};
use gcrf_core::scalar::{GaussRational, Patch, Poly};
use gcrf_core::structures::StructureInstance;
use gcrf_core::tensor::{schouten, Endomorphism, Multivector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Coefficients holomorphic in the `z_a`.
    Holomorphic,
    /// Holomorphic in the `z_a` with coefficients depending on the `t_k`.
    Leafwise,
    /// Coefficients involving some `z̄_a`.
    Antiholomorphic,
    /// Arbitrary complex polynomial coefficients.
    Generic,
    /// Constant `π₀` moved by a pointwise unipotent frame rotation `S(x)`:
    /// `A = S A₀ S⁻¹`, `π = S π₀ Sᵀ`; `A` is not constant.
    Rotated,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Holomorphic, Family::Leafwise, Family::Antiholomorphic, Family::Generic, Family::Rotated];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Holomorphic => "holomorphic",
            Family::Leafwise => "leafwise",
            Family::Antiholomorphic => "antiholomorphic",
            Family::Generic => "generic",
            Family::Rotated => "rotated",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FuzzCase {
    pub name: String,
    pub family: Family,
    pub instance: StructureInstance,
}

struct Shape {
    pairs: usize,
    transverse: usize,
}

impl Shape {
    fn dim(&self) -> usize {
        2 * self.pairs + self.transverse
    }

    fn patch(&self) -> Patch {
        let mut names = Vec::new();
        for a in 1..=self.pairs {
            names.push(format!("x{a}"));
            names.push(format!("y{a}"));
        }
        for k in 1..=self.transverse {
            names.push(format!("t{k}"));
        }
        Patch::new(names).expect("generated names are valid")
    }

    fn a0(&self) -> Endomorphism {
        let n = self.dim();
        let mut a = Endomorphism::zero(n);
        for k in 0..self.pairs {
            a.set_entry(2 * k, 2 * k + 1, Poly::int(n, -1));
            a.set_entry(2 * k + 1, 2 * k, Poly::int(n, 1));
        }
        a
    }

    fn h(&self, a: usize) -> Multivector {
        let n = self.dim();
        let mut c = vec![Poly::zero(n); n];
        c[2 * a] = Poly::one(n);
        c[2 * a + 1] = Poly::constant(n, -&GaussRational::i());
        Multivector::from_coeffs(c)
    }

    fn z(&self, a: usize, conj: bool) -> Poly {
        let n = self.dim();
        let i = if conj { -&GaussRational::i() } else { GaussRational::i() };
        &Poly::var(n, 2 * a) + &Poly::var(n, 2 * a + 1).scale(&i)
    }

    fn t(&self, k: usize) -> Poly {
        Poly::var(self.dim(), 2 * self.pairs + k)
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> GaussRational {
    loop {
        let (re, im) = (rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2));
        if re != 0 || im != 0 {
            return &GaussRational::from_int(re) + &(&GaussRational::i() * &GaussRational::from_int(im));
        }
    }
}

/// Random polynomial of degree `≤ 2` in linear generators, plus one term
/// divisible by an element of `forced` when that list is nonempty.
fn poly_in(rng: &mut ChaCha8Rng, n: usize, gens: &[Poly], forced: &[Poly]) -> Poly {
    let mut out = Poly::zero(n);
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let c = Poly::constant(n, gauss(rng));
        let deg = rng.gen_range(0..=2usize);
        let mut m = Poly::one(n);
        for _ in 0..deg {
            if let Some(g) = gens.choose(rng) {
                m = &m * g;
            }
        }
        out = &out + &(&c * &m);
    }
    if let Some(f) = forced.choose(rng) {
        let c = Poly::constant(n, gauss(rng));
        let extra = if rng.gen_bool(0.5) { gens.choose(rng).cloned().unwrap_or_else(|| Poly::one(n)) } else { Poly::one(n) };
        out = &out + &(&(&c * f) * &extra);
    }
    out
}

fn realify(t: &Multivector) -> Multivector {
    (t + &t.conj()).scale_const(&GaussRational::half())
}

/// Unipotent `S = Id + N` with `N² = 0`, `N` strictly upper triangular
/// with at most two entries, each a constant or a constant times a coordinate.
fn unipotent(rng: &mut ChaCha8Rng, n: usize, linear: bool) -> (Endomorphism, Endomorphism) {
    let mut entries: Vec<(usize, usize)> = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let chains = entries.iter().any(|&(a, b)| b == i || a == j || (a, b) == (i, j));
        if !chains {
            entries.push((i, j));
        }
    }
    let mut nmat = Endomorphism::zero(n);
    for (i, j) in entries {
        let c = Poly::int(n, *[-2i64, -1, 1, 2].choose(rng).expect("nonempty"));
        let e = if linear { &c * &Poly::var(n, rng.gen_range(0..n)) } else { c };
        nmat.set_entry(i, j, e);
    }
    let id = Endomorphism::identity(n);
    (&id + &nmat, &id - &nmat)
}

fn push_forward_bivector(s: &Endomorphism, pi: &Multivector) -> Multivector {
    let n = pi.dim();
    let mut out = Multivector::zero(n, 2);
    for (idx, c) in pi.comps() {
        let u = s.column(idx[0]);
        let v = s.column(idx[1]);
        out = &out + &u.wedge(&v).scale(c);
    }
    out
}

/// One pair of the given family.
pub fn quasi_classical_pair(rng: &mut ChaCha8Rng, family: Family) -> StructureInstance {
    let shapes: &[(usize, usize)] = match family {
        Family::Leafwise => &[(2, 1), (2, 2)],
        Family::Rotated => &[(2, 0), (2, 1)],
        _ => &[(2, 0), (2, 1), (2, 2), (3, 0)],
    };
    let &(pairs, transverse) = shapes.choose(rng).expect("nonempty");
    let sh = Shape { pairs, transverse };
    let n = sh.dim();
    let patch = sh.patch();
    let zs: Vec<Poly> = (0..pairs).map(|a| sh.z(a, false)).collect();
    let zbars: Vec<Poly> = (0..pairs).map(|a| sh.z(a, true)).collect();
    let ts: Vec<Poly> = (0..transverse).map(|k| sh.t(k)).collect();
    let coords: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
    let mut index_pairs = Vec::new();
    for a in 0..pairs {
        for b in a + 1..pairs {
            index_pairs.push((a, b));
        }
    }
    let used = if pairs == 3 && rng.gen_bool(0.5) { 2 } else { 1 };
    index_pairs.shuffle(rng);
    let mut t = Multivector::zero(n, 2);
    for &(a, b) in index_pairs.iter().take(used) {
        let f = match family {
            Family::Holomorphic => poly_in(rng, n, &zs, &[]),
            Family::Leafwise => {
                let gens: Vec<Poly> = zs.iter().chain(&ts).cloned().collect();
                poly_in(rng, n, &gens, &ts)
            }
            Family::Antiholomorphic => {
                let gens: Vec<Poly> = zs.iter().chain(&zbars).cloned().collect();
                poly_in(rng, n, &gens, &zbars)
            }
            Family::Generic => poly_in(rng, n, &coords, &[]),
            Family::Rotated => Poly::constant(n, gauss(rng)),
        };
        t = &t + &sh.h(a).wedge(&sh.h(b)).scale(&f);
    }
    let mut a = sh.a0();
    let mut pi = realify(&t);
    match family {
        Family::Rotated => {
            let (s, s_inv) = unipotent(rng, n, true);
            a = s.compose(&a).compose(&s_inv);
            pi = push_forward_bivector(&s, &pi);
        }
        _ if rng.gen_bool(0.5) => {
            // linear change of coordinates y = S x: A ↦ S A S⁻¹, π ↦ S π(S⁻¹ y) Sᵀ
            let (s, s_inv) = unipotent(rng, n, false);
            let images: Vec<Poly> = (0..n)
                .map(|i| (0..n).fold(Poly::zero(n), |acc, j| &acc + &(s_inv.entry(i, j) * &Poly::var(n, j))))
                .collect();
            let moved = pi.map(|c| c.substitute(&images));
            a = s.compose(&a).compose(&s_inv);
            pi = push_forward_bivector(&s, &moved);
        }
        _ => {}
    }
    StructureInstance { patch, a: Some(a), pi, contact: Vec::new(), frames: None, projector_p: None, base_point: None }
}

/// `count` pairs cycling through the families, reproducible from `seed`.
pub fn quasi_classical_corpus(seed: u64, count: usize) -> Vec<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let family = Family::ALL[k % Family::ALL.len()];
            let instance = quasi_classical_pair(&mut rng, family);
            FuzzCase { name: format!("fuzz-{}-{k:03}", family.as_str()), family, instance }
        })
        .collect()
}

/// A bivector with linear coefficients on `ℝ³` whose `[π, π]` is nonzero,
/// and a multivector `w` of coefficient degree `≤ 1` with `d_π² w ≠ 0`.
#[derive(Clone, Debug)]
pub struct NonPoisson {
    pub patch: Patch,
    pub pi: Multivector,
    pub w: Multivector,
    pub d_squared: Multivector,
    /// Bivectors drawn before this one was found.
    pub attempts: usize,
}

pub fn find_non_poisson(seed: u64) -> NonPoisson {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 3;
    let patch = Patch::new(["x", "y", "z"]).expect("valid names");
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut pi = Multivector::zero(n, 2);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let mut c = Poly::int(n, rng.gen_range(-1..=1));
            if rng.gen_bool(0.5) {
                c = &c + &Poly::var(n, rng.gen_range(0..n)).scale(&GaussRational::from_int(rng.gen_range(-2..=2)));
            }
            pi = &pi + &Multivector::from_components(n, 2, [(vec![i, j], c)]);
        }
        if schouten(&pi, &pi).is_zero() {
            continue;
        }
        for k in 0..=1 {
            let space = TruncatedSpace::new(n, k, 1);
            for w in space.basis() {
                let dd = d_pi(&pi, &d_pi(&pi, &w));
                if !dd.is_zero() {
                    return NonPoisson { patch, pi, w, d_squared: dd, attempts };
                }
            }
        }
    }
}
