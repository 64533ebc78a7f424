//! Hand-built instances shared by the integration tests.

use gcrf_core::scalar::{Patch, Poly};
use gcrf_core::structures::{product_instance, AdaptedFrame, ContactPair, StructureInstance};
use gcrf_core::tensor::{DiffForm, Endomorphism, Multivector};

pub fn poly(p: &Patch, s: &str) -> Poly {
    Poly::parse(s, p).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn endo(p: &Patch, rows: &[&[&str]]) -> Endomorphism {
    Endomorphism::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(p, s)).collect()).collect())
}

pub fn bivector(p: &Patch, entries: &[(usize, usize, &str)]) -> Multivector {
    Multivector::from_components(p.dim(), 2, entries.iter().map(|(i, j, s)| (vec![*i, *j], poly(p, s))))
}

pub fn vector(p: &Patch, comps: &[&str]) -> Multivector {
    Multivector::from_coeffs(comps.iter().map(|s| poly(p, s)).collect())
}

pub fn form(p: &Patch, comps: &[&str]) -> DiffForm {
    DiffForm::from_coeffs(comps.iter().map(|s| poly(p, s)).collect())
}

pub fn instance(names: &[&str], a: Option<&[&[&str]]>, pi: &[(usize, usize, &str)]) -> StructureInstance {
    let p = Patch::new(names.iter().copied()).unwrap();
    StructureInstance {
        a: a.map(|rows| endo(&p, rows)),
        pi: bivector(&p, pi),
        contact: Vec::new(),
        frames: None,
        projector_p: None,
        base_point: None,
        patch: p,
    }
}

/// The same data on renamed coordinates.
pub fn renamed(inst: &StructureInstance, suffix: &str) -> StructureInstance {
    let names: Vec<String> = inst.patch.names().iter().map(|n| format!("{n}{suffix}")).collect();
    StructureInstance { patch: Patch::new(names).unwrap(), ..inst.clone() }
}

const J4: [&[&str]; 4] = [&["0", "-1", "0", "0"], &["1", "0", "0", "0"], &["0", "0", "0", "-1"], &["0", "0", "1", "0"]];

/// Frame of `H` for the standard complex structure on `(x1, y1, x2, y2, ..)`.
fn complex_frame(p: &Patch, pairs: usize, q: &[usize]) -> AdaptedFrame {
    let n = p.dim();
    let mut h = Vec::new();
    let mut kappa = Vec::new();
    for k in 0..pairs {
        let mut v = vec!["0"; n];
        v[2 * k] = "1";
        v[2 * k + 1] = "-i";
        h.push(vector(p, &v));
        let mut f = vec!["0"; n];
        f[2 * k] = "1";
        f[2 * k + 1] = "i";
        kappa.push(form(p, &f).scale_const(&gcrf_core::scalar::GaussRational::half()));
    }
    let q = q
        .iter()
        .map(|&i| {
            let mut v = vec!["0"; n];
            v[i] = "1";
            vector(p, &v)
        })
        .collect();
    AdaptedFrame { h, q, kappa }
}

/// `ℂ²` with `π = Re(2 z1 ∂z1∧∂z2)`, holomorphic Poisson.
pub fn holomorphic_r4() -> StructureInstance {
    let mut m = instance(&["x1", "y1", "x2", "y2"], Some(&J4), &[(0, 2, "x1"), (1, 3, "-x1"), (0, 3, "y1"), (1, 2, "y1")]);
    m.frames = Some(complex_frame(&m.patch, 2, &[]));
    m
}

/// `ℂ² × ℝ` with `Z = ∂t`, `ξ = dt`: cosymplectic-style, normal contact-Poisson.
pub fn cosymplectic_r5() -> StructureInstance {
    let mut m = instance(
        &["x1", "y1", "x2", "y2", "t"],
        Some(&[&["0", "-1", "0", "0", "0"], &["1", "0", "0", "0", "0"], &["0", "0", "0", "-1", "0"], &["0", "0", "1", "0", "0"], &["0", "0", "0", "0", "0"]]),
        &[(0, 2, "x1"), (1, 3, "-x1"), (0, 3, "y1"), (1, 2, "y1")],
    );
    let p = m.patch.clone();
    m.contact.push(ContactPair { z: vector(&p, &["0", "0", "0", "0", "1"]), xi: form(&p, &["0", "0", "0", "0", "1"]) });
    m.frames = Some(complex_frame(&p, 2, &[4]));
    m
}

const J4_T: [&[&str]; 5] =
    [&["0", "-1", "0", "0", "0"], &["1", "0", "0", "0", "0"], &["0", "0", "0", "-1", "0"], &["0", "0", "1", "0", "0"], &["0", "0", "0", "0", "0"]];

/// Product of `ℂ²` carrying `π = Re(2(z1 + 1)∂z1∧∂z2)` with the line `t`;
/// coefficients depend on the leaf coordinates only.
pub fn locally_product_r5() -> StructureInstance {
    let mut m = instance(
        &["x1", "y1", "x2", "y2", "t"],
        Some(&J4_T),
        &[(0, 2, "x1 + 1"), (1, 3, "-x1 - 1"), (0, 3, "y1"), (1, 2, "y1")],
    );
    m.frames = Some(complex_frame(&m.patch.clone(), 2, &[4]));
    m
}

/// Leaves `t = const` of `P = im A` carry `π = Re(2(z1 + t)∂z1∧∂z2)`:
/// holomorphic Poisson on every leaf, but varying along `Q = ⟨∂t⟩`.
pub fn leafwise_holomorphic_r5() -> StructureInstance {
    let mut m = instance(&["x1", "y1", "x2", "y2", "t"], Some(&J4_T), &[(0, 2, "x1 + t"), (1, 3, "-x1 - t"), (0, 3, "y1"), (1, 2, "y1")]);
    m.frames = Some(complex_frame(&m.patch.clone(), 2, &[4]));
    m
}

/// `ℂ³` with `π = Re(2 z̄3 ∂z1∧∂z2)`: Poisson, compatible, but not holomorphic.
pub fn perturbed_r6() -> StructureInstance {
    let j6: [&[&str]; 6] = [
        &["0", "-1", "0", "0", "0", "0"],
        &["1", "0", "0", "0", "0", "0"],
        &["0", "0", "0", "-1", "0", "0"],
        &["0", "0", "1", "0", "0", "0"],
        &["0", "0", "0", "0", "0", "-1"],
        &["0", "0", "0", "0", "1", "0"],
    ];
    let mut m = instance(&["x1", "y1", "x2", "y2", "x3", "y3"], Some(&j6), &[(0, 2, "x3"), (1, 3, "-x3"), (0, 3, "-y3"), (1, 2, "-y3")]);
    m.frames = Some(complex_frame(&m.patch.clone(), 3, &[]));
    m
}

/// Normal almost contact structure on `ℝ³` with `ξ = dz − y dx`, `Z = ∂z`
/// and non-involutive `im A`; `π = 0`.
pub fn heisenberg_contact_r3() -> StructureInstance {
    let mut m = instance(&["x", "y", "z"], Some(&[&["0", "-1", "0"], &["1", "0", "0"], &["0", "-y", "0"]]), &[]);
    let p = m.patch.clone();
    m.contact.push(ContactPair { z: vector(&p, &["0", "0", "1"]), xi: form(&p, &["-y", "0", "1"]) });
    m
}

/// Complex manifold with holomorphic Poisson `π` times a normal almost
/// contact manifold; `π` from the complex factor.
pub fn complex_times_contact_r7() -> StructureInstance {
    let mut n = holomorphic_r4();
    n.frames = None;
    product_instance(&n, &heisenberg_contact_r3()).unwrap()
}

/// `ℝ⁵(y1, y2, x1, x2, x3)`, `π = (1 + x3 y1) ∂y1∧∂y2` and `P = ker θ`,
/// `θ = dx3 − x2 dx1 + x1 dx2`, given by `pr_P = Id − ∂x3 ⊗ θ`.
pub fn heisenberg_distribution_r5() -> StructureInstance {
    let mut m = instance(&["y1", "y2", "x1", "x2", "x3"], None, &[(0, 1, "1 + x3*y1")]);
    let p = m.patch.clone();
    m.projector_p = Some(endo(
        &p,
        &[
            &["1", "0", "0", "0", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "0", "1", "0"],
            &["0", "0", "x2", "-x1", "0"],
        ],
    ));
    m
}

/// `ℝ⁵(x1, y1, x2, y2, t)` with `H = ⟨∂x1 − i(∂y1 + x2∂t), ∂x2 − i∂y2⟩`,
/// `Q = ⟨∂t⟩`: an F structure whose `H` is not involutive.
pub fn non_crf_r5() -> StructureInstance {
    let mut m = instance(
        &["x1", "y1", "x2", "y2", "t"],
        Some(&[&["0", "-1", "0", "0", "0"], &["1", "0", "0", "0", "0"], &["0", "0", "0", "-1", "0"], &["0", "0", "1", "0", "0"], &["x2", "0", "0", "0", "0"]]),
        &[],
    );
    let p = m.patch.clone();
    let half = gcrf_core::scalar::GaussRational::half();
    m.frames = Some(AdaptedFrame {
        h: vec![vector(&p, &["1", "-i", "0", "0", "-i*x2"]), vector(&p, &["0", "0", "1", "-i", "0"])],
        q: vec![vector(&p, &["0", "0", "0", "0", "1"])],
        kappa: vec![form(&p, &["1", "i", "0", "0", "0"]).scale_const(&half), form(&p, &["0", "0", "1", "i", "0"]).scale_const(&half)],
    });
    m
}

/// Almost contact structure on `ℝ³(x, y, t)` with `Z = ∂t`, `ξ = dt` and
/// `A` rotating the frame `∂x, ∂y + t∂x`; not normal since `A` varies along `Z`.
pub fn sheared_contact_r3() -> StructureInstance {
    let mut m = instance(&["x", "y", "t"], Some(&[&["t", "-1 - t^2", "0"], &["1", "-t", "0"], &["0", "0", "0"]]), &[]);
    let p = m.patch.clone();
    m.contact.push(ContactPair { z: vector(&p, &["0", "0", "1"]), xi: form(&p, &["0", "0", "1"]) });
    m
}

/// Every hand-built instance carrying an `A`, with a short name.
pub fn all_with_a() -> Vec<(&'static str, StructureInstance)> {
    vec![
        ("holomorphic-r4", holomorphic_r4()),
        ("cosymplectic-r5", cosymplectic_r5()),
        ("locally-product-r5", locally_product_r5()),
        ("leafwise-holomorphic-r5", leafwise_holomorphic_r5()),
        ("perturbed-holomorphic-r6", perturbed_r6()),
        ("heisenberg-contact-r3", heisenberg_contact_r3()),
        ("complex-times-contact-r7", complex_times_contact_r7()),
        ("non-crf-r5", non_crf_r5()),
        ("sheared-contact-r3", sheared_contact_r3()),
    ]
}
