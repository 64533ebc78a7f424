//! Built-in instances, committed as JSON under `instances/` and addressed
//! on the command line as `builtin:NAME`.

/// Library entries in corpus order.
pub const BUILTINS: &[(&str, &str)] = &[
    ("trivial-r2", include_str!("../instances/trivial-r2.json")),
    ("complex-r2", include_str!("../instances/complex-r2.json")),
    ("holomorphic-r4", include_str!("../instances/holomorphic-r4.json")),
    ("locally-product-r5", include_str!("../instances/locally-product-r5.json")),
    ("product-r6", include_str!("../instances/product-r6.json")),
    ("cosymplectic-r5", include_str!("../instances/cosymplectic-r5.json")),
    ("leafwise-holomorphic-r5", include_str!("../instances/leafwise-holomorphic-r5.json")),
    ("perturbed-holomorphic-r6", include_str!("../instances/perturbed-holomorphic-r6.json")),
    ("non-crf-r5", include_str!("../instances/non-crf-r5.json")),
    ("heisenberg-contact-r3", include_str!("../instances/heisenberg-contact-r3.json")),
    ("sheared-contact-r3", include_str!("../instances/sheared-contact-r3.json")),
    ("complex-times-contact-r7", include_str!("../instances/complex-times-contact-r7.json")),
    ("heisenberg-distribution-r5", include_str!("../instances/heisenberg-distribution-r5.json")),
    ("symplectic-r2", include_str!("../instances/symplectic-r2.json")),
    ("so3-r3", include_str!("../instances/so3-r3.json")),
    ("zero-r3", include_str!("../instances/zero-r3.json")),
    ("quadratic-r2", include_str!("../instances/quadratic-r2.json")),
    ("non-poisson-r3", include_str!("../instances/non-poisson-r3.json")),
];

pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}
