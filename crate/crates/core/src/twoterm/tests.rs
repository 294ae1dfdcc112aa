use super::*;
use crate::confcore::{basis_tuples, identity_map};
use crate::corering::rat;
use crate::leibcoh::{coboundary, random_cochain};
use crate::linfty::verify_leib_infty;
use crate::random::{self, random_sesq};
use crate::zoo;

fn random_tau<R: rand::Rng>(rng: &mut R, a: &TwoTermAlg) -> SesqMap {
    random_sesq(rng, vec![a.g0().clone(); 2], a.g1().clone(), 0, 1, 1, 0.6)
}

fn boundary_oracle_agrees(a: &TwoTermAlg) -> bool {
    let direct = a.verify().passed();
    let general = verify_leib_infty(&a.to_ops(), 4).unwrap().passed();
    assert_eq!(direct, general);
    direct
}

#[test]
fn skeletal_fixtures_pass() {
    for (a, _, ops) in [zoo::skeletal_nil_fixture(), zoo::skeletal_virasoro_fixture()] {
        assert!(a.is_skeletal() && !a.is_strict());
        assert!(a.verify().passed());
        assert_eq!(from_ops(&ops, a.g0(), a.g1()).unwrap(), a);
        assert!(boundary_oracle_agrees(&a));
    }
}

#[test]
fn strict_fixtures_pass() {
    let fx = zoo::strict_fixtures();
    assert!(fx.len() >= 20);
    for (name, a) in &fx {
        assert!(a.is_strict(), "{name}");
        assert!(a.verify().passed(), "{name}: {:?}", a.verify().failed_identities());
        assert!(strict_sum_identities(a).unwrap().passed(), "{name}");
    }
}

#[test]
fn non_cocycle_rho3_fails_only_at_ix() {
    let (a, _, _) = zoo::skeletal_nil_fixture();
    let mut rng = random::rng(3);
    let rep = a.module_rep();
    loop {
        let noise = random_sesq(&mut rng, vec![a.g0().clone(); 3], a.g1().clone(), 0, 1, 1, 0.4);
        if is_cocycle(&rep, &Cochain::Map(noise.clone())).unwrap() {
            continue;
        }
        let b = a.with_rho3(a.rho3().try_add(&noise).unwrap()).unwrap();
        let r = b.verify();
        assert_eq!(r.failed_identities(), vec!["ix".to_string()]);
        assert!(!boundary_oracle_agrees(&b));
        assert_eq!(skeletal_to_triple(&b), Err(Error::NotCocycle));
        break;
    }
}

#[test]
fn ix_is_the_cocycle_condition_when_skeletal() {
    let (a, _, _) = zoo::skeletal_nil_fixture();
    let rep = a.module_rep();
    let mut rng = random::rng(11);
    for _ in 0..5 {
        let theta = random_cochain(&mut rng, &rep, 3, 1, 1, 0.5);
        let b = a.with_rho3(theta.as_map().unwrap().clone()).unwrap();
        let d = coboundary(&rep, &theta).unwrap();
        let ix = b.verify();
        // the (ix) residual is δθ evaluated on the same tuple
        for t in basis_tuples(&[2, 2, 2, 2]) {
            let names = names(&[a.g0(); 4], &t);
            let got = ix.failures_for("ix").find(|f| f.tuple == names).map(|f| f.residual.clone());
            let want = d.as_map().unwrap().get(&t);
            match got {
                Some(v) => assert_eq!(v, want),
                None => assert!(want.is_zero()),
            }
        }
    }
}

#[test]
fn skeletal_round_trips() {
    let mut rng = random::rng(19);
    for (name, rep) in zoo::passing_algebras().iter().map(|(n, a)| (n, zoo::adjoint_copy(a))) {
        let tau = random_cochain(&mut rng, &rep, 2, 1, 1, 0.5);
        let theta = coboundary(&rep, &tau).unwrap();
        let a = triple_to_skeletal(&rep, &theta).unwrap();
        let (g, m, th) = skeletal_to_triple(&a).unwrap();
        assert_eq!((&g, &m, &th), (rep.alg(), &rep, &theta), "{name}");
        assert_eq!(triple_to_skeletal(&m, &th).unwrap(), a);
    }
    // θ = 0 gives a strict skeletal algebra
    let rep = zoo::adjoint_copy(&zoo::virasoro());
    let a = triple_to_skeletal(&rep, &Cochain::zero(&rep, 3)).unwrap();
    assert!(a.is_strict() && a.is_skeletal());
}

#[test]
fn skeletal_extraction_errors() {
    let a = zoo::nil_strict();
    assert_eq!(skeletal_to_triple(&a).unwrap_err(), Error::NotSkeletal);
    let (a, _, _) = zoo::skeletal_nil_fixture();
    let rep = a.module_rep();
    let mut bad = a.rho3().clone();
    let c = bad.ctx().clone();
    bad.add_to(&[0, 0, 0], &ModValue::basis(a.g1(), &c, 0)).unwrap();
    assert_eq!(triple_to_skeletal(&rep, &Cochain::Map(bad)).unwrap_err(), Error::NotCocycle);
}

#[test]
fn skeletal_equivalence_and_hom_sign() {
    let (a, tau, _) = zoo::skeletal_nil_fixture();
    let zero_tau = Cochain::zero(&a.module_rep(), 2);
    assert!(skeletal_equivalent(&a, &a, &zero_tau).unwrap().equivalent);
    let base = a.with_rho3(SesqMap::new(vec![a.g0().clone(); 3], a.g1().clone(), 0)).unwrap();
    assert!(skeletal_equivalent(&base, &a, &tau).unwrap().equivalent);
    assert!(!skeletal_equivalent(&a, &base, &tau).unwrap().equivalent);
    assert!(find_equivalence(&base, &a, Bounds::default()).unwrap().is_some());

    // (id, id, +τ) is a homomorphism from ρ3 to ρ3 + δτ; −τ is not
    let f = TwoTermHom {
        f0: identity_map(a.g0()),
        f1: identity_map(a.g1()),
        f2: tau.as_map().unwrap().clone(),
    };
    assert!(verify_hom(&base, &a, &f).unwrap().passed());
    let g = TwoTermHom {
        f2: f.f2.scale(&rat(-1)),
        ..f.clone()
    };
    assert_eq!(verify_hom(&base, &a, &g).unwrap().failed_identities(), vec!["hom-5".to_string()]);
}

#[test]
fn planted_non_coboundary_is_rejected() {
    // an abelian algebra acting trivially: δ vanishes, so θ(z, z, z) = t is
    // a cocycle and not a coboundary
    let alg = zoo::current("Zero");
    let t = ConfModule::new("T", &["t"]).unwrap();
    let rep = ConfRep::trivial(&alg, &t);
    let a = triple_to_skeletal(&rep, &Cochain::zero(&rep, 3)).unwrap();
    let mut theta = SesqMap::new(vec![alg.module().clone(); 3], t.clone(), 0);
    let c = theta.ctx().clone();
    theta.set(&[0, 0, 0], ModValue::basis(&t, &c, 0)).unwrap();
    let b = a.with_rho3(theta).unwrap();
    assert!(b.verify().passed());
    let v = skeletal_equivalent(&a, &b, &Cochain::zero(&rep, 2)).unwrap();
    assert!(!v.equivalent && v.reason.is_some());
    assert_eq!(find_equivalence(&a, &b, Bounds::default()).unwrap(), None);
}

#[test]
fn equivalence_requires_matching_rho2() {
    let (a, tau, _) = zoo::skeletal_nil_fixture();
    let b = a.with_rho3(a.rho3().clone()).unwrap();
    let mut other = b.clone();
    other.rho01 = other.rho01.scale(&rat(2));
    let v = skeletal_equivalent(&a, &other, &tau).unwrap();
    assert_eq!(v.reason.as_deref(), Some("ρ2 differs"));
    let s = zoo::nil_strict();
    assert_eq!(skeletal_equivalent(&a, &s, &tau).unwrap_err(), Error::NotSkeletal);
}

#[test]
fn homomorphism_category_laws() {
    let mut rng = random::rng(27);
    let s = zoo::nil_strict();
    let taus: Vec<SesqMap> = (0..3).map(|_| random_tau(&mut rng, &s)).collect();
    let a1 = gauge_transform(&s, &taus[0]).unwrap();
    let a2 = gauge_transform(&a1, &taus[1]).unwrap();
    let a3 = gauge_transform(&a2, &taus[2]).unwrap();
    for a in [&a1, &a2, &a3] {
        assert!(a.verify().passed());
        assert!(!a.is_strict() && !a.is_skeletal());
        assert!(boundary_oracle_agrees(a));
    }
    let hom = |src: &TwoTermAlg, tau: &SesqMap| TwoTermHom {
        f0: identity_map(src.g0()),
        f1: identity_map(src.g1()),
        f2: tau.clone(),
    };
    let (f, g, h) = (hom(&s, &taus[0]), hom(&a1, &taus[1]), hom(&a2, &taus[2]));
    assert!(verify_hom(&s, &a1, &f).unwrap().passed());
    assert!(verify_hom(&a1, &a2, &g).unwrap().passed());
    let gf = compose_hom(&g, &f).unwrap();
    assert!(verify_hom(&s, &a2, &gf).unwrap().passed());
    assert_eq!(gf.f2, taus[0].try_add(&taus[1]).unwrap());
    let left = compose_hom(&h, &gf).unwrap();
    let right = compose_hom(&compose_hom(&h, &g).unwrap(), &f).unwrap();
    assert_eq!(left, right);
    assert_eq!(compose_hom(&id_hom(&a1), &f).unwrap(), f);
    assert_eq!(compose_hom(&f, &id_hom(&s)).unwrap(), f);
    assert!(verify_hom(&a1, &a1, &id_hom(&a1)).unwrap().passed());
}

#[test]
fn crossed_modules() {
    let x = zoo::nil_crossed_module();
    assert!(verify_crossed(&x).passed());
    let a = crossed_to_strict(&x).unwrap();
    assert!(a.verify().passed());
    assert_eq!(strict_to_crossed(&a).unwrap(), x);
    assert_eq!(crossed_to_strict(&strict_to_crossed(&a).unwrap()).unwrap(), a);

    let bad = x.with_phi_l(x.phi_l().scale(&rat(2))).unwrap();
    let r = verify_crossed(&bad);
    assert!(r.failures_for("cm-3l").count() > 0);
    assert_eq!(r.failures_for("cm-3r").count(), 0);

    let (sk, _, _) = zoo::skeletal_nil_fixture();
    assert_eq!(strict_to_crossed(&sk).unwrap_err(), Error::NotStrict);
}

#[test]
fn strict_crossed_round_trips() {
    for (name, a) in zoo::strict_fixtures() {
        let x = strict_to_crossed(&a).unwrap();
        assert!(verify_crossed(&x).passed(), "{name}: {:?}", verify_crossed(&x).failed_identities());
        assert_eq!(crossed_to_strict(&x).unwrap(), a, "{name}");
        assert_eq!(strict_to_crossed(&crossed_to_strict(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn abelian_trivial_crossed_module() {
    let g0 = ConfModule::new("A", &["a"]).unwrap();
    let g1 = ConfModule::new("B", &["b"]).unwrap();
    let a = TwoTermAlg::zero(&g0, &g1);
    assert!(a.verify().passed());
    let x = strict_to_crossed(&a).unwrap();
    assert!(x.phi_l().is_zero() && x.phi_r().is_zero() && x.g().bracket().is_zero());
    assert!(verify_crossed(&x).passed());
    assert_eq!(crossed_to_strict(&x).unwrap(), a);
}

#[test]
fn perturbations_are_caught_by_both_checkers() {
    let mut rng = random::rng(41);
    let s = zoo::nil_strict();
    let a = gauge_transform(&s, &random_tau(&mut rng, &s)).unwrap();
    for piece in 0..4 {
        let mut b = a.clone();
        let bump = |m: &SesqMap, rng: &mut random::Rng64| {
            let n = random_sesq(rng, m.sources().to_vec(), m.target().clone(), m.degree(), 1, 1, 0.5);
            m.try_add(&n).unwrap()
        };
        match piece {
            0 => b.d = bump(&b.d, &mut rng),
            1 => b.rho00 = bump(&b.rho00, &mut rng),
            2 => b.rho01 = bump(&b.rho01, &mut rng),
            _ => b.rho10 = bump(&b.rho10, &mut rng),
        }
        if b != a {
            assert!(!boundary_oracle_agrees(&b), "piece {piece}");
        }
    }
}
