//! Built-in example structures.

use crate::confcore::{identity_map, ConfModule, ModValue, Module, SesqMap};
use crate::corering::{rat, Poly, VarCtx};
use crate::leibcoh::{coboundary, current_algebra, semidirect, Cochain, ConfRep, LeibnizConfAlg, StructureConstants};
use crate::linfty::HomotopyOps;
use crate::twoterm::{crossed_to_strict, from_ops, triple_to_skeletal, CrossedModule, TwoTermAlg};

fn consts(n: usize, entries: &[(usize, usize, usize, i64)]) -> StructureConstants {
    let mut c = vec![vec![vec![rat(0); n]; n]; n];
    for &(i, j, k, v) in entries {
        c[i][j][k] = rat(v);
    }
    c
}

/// `[L_λ L] = (∂ + 2λ) L`.
pub fn virasoro() -> LeibnizConfAlg {
    let g = ConfModule::new("Vir", &["L"]).expect("basis");
    let mut br = SesqMap::endo(&g, 2);
    let c = br.ctx().clone();
    let p = &Poly::d(&c) + &Poly::lambda(&c, 0).scale(&rat(2));
    br.set(&[0, 0], ModValue::term(&g, 0, p)).expect("entry");
    LeibnizConfAlg::raw(br).expect("shape")
}

/// Rank-1 Virasoro module `L_λ v = (∂ + λ) v`, returned as the left action.
pub fn virasoro_module() -> (Module, SesqMap) {
    let vir = virasoro();
    let m = ConfModule::new("V", &["v"]).expect("basis");
    let mut left = SesqMap::new(vec![vir.module().clone(), m.clone()], m.clone(), 0);
    let c = left.ctx().clone();
    let p = &Poly::d(&c) + &Poly::lambda(&c, 0);
    left.set(&[0, 0], ModValue::term(&m, 0, p)).expect("entry");
    (m, left)
}

/// The structure constants of the current-algebra fixtures, by name.
pub fn fd_algebras() -> Vec<(&'static str, Vec<&'static str>, StructureConstants)> {
    vec![
        // non-Lie: [a,a] = b
        ("Nil", vec!["a", "b"], consts(2, &[(0, 0, 1, 1)])),
        // non-Lie: [x,y] = y
        ("LeftAct", vec!["x", "y"], consts(2, &[(0, 1, 1, 1)])),
        // affine line: [x,y] = y, [y,x] = −y
        ("Aff", vec!["x", "y"], consts(2, &[(0, 1, 1, 1), (1, 0, 1, -1)])),
        // sl2
        (
            "Sl2",
            vec!["e", "h", "f"],
            consts(
                3,
                &[
                    (0, 2, 1, 1),
                    (2, 0, 1, -1),
                    (1, 0, 0, 2),
                    (0, 1, 0, -2),
                    (1, 2, 2, -2),
                    (2, 1, 2, 2),
                ],
            ),
        ),
        ("Zero", vec!["z"], consts(1, &[])),
    ]
}

pub fn current(name: &str) -> LeibnizConfAlg {
    let (n, basis, c) = fd_algebras()
        .into_iter()
        .find(|(n, _, _)| *n == name)
        .expect("known fixture");
    current_algebra(&format!("Cur{n}"), &basis, &c).expect("shape")
}

/// Virasoro ⋉ its rank-1 module.
pub fn virasoro_semidirect() -> LeibnizConfAlg {
    let (_, left) = virasoro_module();
    semidirect(&virasoro(), &left).expect("skew")
}

/// `Cur Aff ⋉ adjoint`.
pub fn aff_semidirect() -> LeibnizConfAlg {
    let aff = current("Aff");
    let m = ConfModule::new("AffAd", &["u", "v"]).expect("basis");
    let left = aff
        .bracket()
        .relabel(vec![aff.module().clone(), m.clone()], m, 0)
        .expect("ranks");
    semidirect(&aff, &left).expect("skew")
}

/// Every algebra expected to pass the Leibniz identity, with a label.
pub fn passing_algebras() -> Vec<(String, LeibnizConfAlg)> {
    let mut out = vec![("virasoro".to_string(), virasoro())];
    for (n, _, _) in fd_algebras() {
        out.push((format!("current-{}", n.to_lowercase()), current(n)));
    }
    out.push(("virasoro-semidirect".into(), virasoro_semidirect()));
    out.push(("aff-semidirect".into(), aff_semidirect()));
    out
}

/// Mutated structures that violate the Leibniz identity.
pub fn failing_algebras() -> Vec<(String, LeibnizConfAlg)> {
    let e = ConfModule::new("E", &["e"]).expect("basis");
    let mut br = SesqMap::endo(&e, 2);
    let c = br.ctx().clone();
    br.set(&[0, 0], ModValue::term(&e, 0, Poly::one(&c))).expect("entry");
    let idem = LeibnizConfAlg::raw(br).expect("shape");

    let idem2 = current_algebra("Idem", &["a", "b"], &consts(2, &[(0, 0, 0, 1)])).expect("shape");

    // ∂ + 3λ instead of ∂ + 2λ
    let g = ConfModule::new("Vir3", &["L"]).expect("basis");
    let mut br = SesqMap::endo(&g, 2);
    let c = br.ctx().clone();
    let p = &Poly::d(&c) + &Poly::lambda(&c, 0).scale(&rat(3));
    br.set(&[0, 0], ModValue::term(&g, 0, p)).expect("entry");
    let vir3 = LeibnizConfAlg::raw(br).expect("shape");

    vec![
        ("idempotent".into(), idem),
        ("idempotent-2d".into(), idem2),
        ("virasoro-3".into(), vir3),
    ]
}

/// Representations expected to pass, with a label.
pub fn passing_reps() -> Vec<(String, ConfRep)> {
    let mut out = Vec::new();
    for (name, alg) in passing_algebras() {
        out.push((format!("{name}-adjoint"), ConfRep::adjoint(&alg)));
    }
    let vir = virasoro();
    let (m, left) = virasoro_module();
    let right = SesqMap::new(vec![m.clone(), vir.module().clone()], m.clone(), 0);
    out.push((
        "virasoro-module".into(),
        ConfRep::raw(&vir, left, right).expect("shape"),
    ));
    let nil = current("Nil");
    let triv = ConfModule::new("T", &["t"]).expect("basis");
    out.push(("nil-trivial".into(), ConfRep::trivial(&nil, &triv)));
    out
}

/// `∂`-free constant value of a module, for 0-cochains.
pub fn constant_value(m: &Module, coeffs: &[i64]) -> ModValue {
    let ctx = VarCtx::canonical(0);
    ModValue::from_coeffs(m, &ctx, coeffs.iter().map(|&c| Poly::int(&ctx, c)).collect())
        .expect("rank")
}

/// The adjoint representation on a primed copy of the algebra's module, so
/// that algebra and module have distinct basis names.
pub fn adjoint_copy(alg: &LeibnizConfAlg) -> ConfRep {
    let g = alg.module();
    let primed: Vec<String> = g.basis().iter().map(|b| format!("{b}'")).collect();
    let m = ConfModule::new(&format!("{}'", g.name()), &primed).expect("basis");
    let br = alg.bracket();
    let left = br.relabel(vec![g.clone(), m.clone()], m.clone(), 0).expect("ranks");
    let right = br.relabel(vec![m.clone(), g.clone()], m, 0).expect("ranks");
    ConfRep::raw(alg, left, right).expect("shape")
}

/// A fixed 2-cochain on `rep` with a nonzero coboundary on the fixtures
/// below: `τ_λ(x_0, x_0) = λ m_0 + m_last`.
pub fn sample_tau(rep: &ConfRep) -> Cochain {
    let g = rep.alg().module();
    let m = rep.module();
    let mut tau = SesqMap::new(vec![g.clone(), g.clone()], m.clone(), 0);
    let c = tau.ctx().clone();
    let mut coeffs = vec![Poly::zero(&c); m.rank()];
    coeffs[0] = Poly::lambda(&c, 0);
    let last = m.rank() - 1;
    coeffs[last].add_assign_ref(&Poly::one(&c));
    tau.set(&[0, 0], ModValue::from_coeffs(m, &c, coeffs).expect("rank"))
        .expect("entry");
    Cochain::Map(tau)
}

fn skeletal_from(rep: &ConfRep) -> (TwoTermAlg, Cochain, HomotopyOps) {
    let tau = sample_tau(rep);
    let theta = coboundary(rep, &tau).expect("shapes");
    let a = triple_to_skeletal(rep, &theta).expect("coboundaries are cocycles");
    let ops = a.to_ops();
    (a, tau, ops)
}

/// Skeletal 2-term algebra on `Cur Nil` and its primed adjoint copy with
/// `ρ3 = δτ`, the `τ` used, and its graded operations.
pub fn skeletal_nil_fixture() -> (TwoTermAlg, Cochain, HomotopyOps) {
    skeletal_from(&adjoint_copy(&current("Nil")))
}

/// As [`skeletal_nil_fixture`] over the Virasoro algebra.
pub fn skeletal_virasoro_fixture() -> (TwoTermAlg, Cochain, HomotopyOps) {
    skeletal_from(&adjoint_copy(&virasoro()))
}

/// `Cur Nil` crossed with itself: `d = id`, both actions the bracket
/// (`g` is the primed copy).
pub fn nil_crossed_module() -> CrossedModule {
    let h = current("Nil");
    let rep = adjoint_copy(&h);
    let gm = rep.module().clone();
    let g = LeibnizConfAlg::raw(h.bracket().relabel(vec![gm.clone(); 2], gm.clone(), 0).expect("ranks"))
        .expect("shape");
    let d = identity_map(h.module()).relabel(vec![gm], h.module().clone(), 0).expect("ranks");
    CrossedModule::raw(g, h, d, rep.left().clone(), rep.right().clone()).expect("shape")
}

/// The strict algebra `ker --incl--> g` for an ideal spanned by basis
/// elements `kernel`.
pub fn kernel_strict(alg: &LeibnizConfAlg, kernel: &[usize]) -> TwoTermAlg {
    let ops = HomotopyOps::from_morphism_kernel(alg, kernel).expect("ideal");
    let g = alg.module();
    let names: Vec<String> = kernel.iter().map(|&k| format!("{}'", g.basis()[k])).collect();
    let k = ConfModule::new(&format!("{}-ker", g.name()), &names).expect("basis");
    from_ops(&ops, g, &k).expect("two-term data")
}

/// The strict skeletal algebra `M --0--> g` of a representation.
pub fn rep_strict(rep: &ConfRep) -> TwoTermAlg {
    triple_to_skeletal(rep, &Cochain::zero(rep, 3)).expect("zero is a cocycle")
}

/// Strict 2-term algebras: ideal inclusions (including `d = id`) and
/// representations with `d = 0`.
pub fn strict_fixtures() -> Vec<(String, TwoTermAlg)> {
    let mut out = Vec::new();
    for (name, alg) in passing_algebras() {
        let all: Vec<usize> = (0..alg.module().rank()).collect();
        out.push((format!("{name}-identity"), kernel_strict(&alg, &all)));
        out.push((format!("{name}-adjoint-rep"), rep_strict(&adjoint_copy(&alg))));
    }
    for (name, alg, kernel) in [
        ("nil-center", current("Nil"), vec![1]),
        ("aff-ideal", current("Aff"), vec![1]),
        ("leftact-ideal", current("LeftAct"), vec![1]),
        ("virasoro-semidirect-module", virasoro_semidirect(), vec![1]),
        ("aff-semidirect-module", aff_semidirect(), vec![2, 3]),
    ] {
        out.push((name.to_string(), kernel_strict(&alg, &kernel)));
    }
    for (name, rep) in passing_reps().into_iter().filter(|(n, _)| !n.ends_with("-adjoint")) {
        out.push((name, rep_strict(&rep)));
    }
    out
}

/// The strict algebra of [`nil_crossed_module`].
pub fn nil_strict() -> TwoTermAlg {
    crossed_to_strict(&nil_crossed_module()).expect("shapes")
}
