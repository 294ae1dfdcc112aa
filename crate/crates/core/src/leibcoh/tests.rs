use super::*;
use crate::corering::rat;
use crate::random;
use crate::zoo;

fn vir_lambda_poly() -> Poly {
    let c = VarCtx::canonical(1);
    &Poly::d(&c) + &Poly::lambda(&c, 0).scale(&rat(2))
}

#[test]
fn virasoro_and_currents_pass() {
    for (name, alg) in zoo::passing_algebras() {
        assert!(alg.verify().passed(), "{name}: {}", alg.verify());
    }
    assert!(zoo::virasoro().is_skew());
}

#[test]
fn idempotent_fails_with_minus_e() {
    let (_, alg) = &zoo::failing_algebras()[0];
    let r = alg.verify();
    assert_eq!(r.failures.len(), 1);
    let f = &r.failures[0];
    assert_eq!(f.tuple, vec!["e", "e", "e"]);
    let ctx = VarCtx::canonical(2);
    assert_eq!(f.residual, ModValue::basis(alg.module(), &ctx, 0).neg());
}

#[test]
fn mutated_structures_fail() {
    for (name, alg) in zoo::failing_algebras() {
        let r = alg.verify();
        assert!(!r.passed(), "{name} should fail");
        assert!(r.failures.iter().all(|f| !f.residual.is_zero()));
    }
}

#[test]
fn nil_current_is_not_skew() {
    assert!(!zoo::current("Nil").is_skew());
    assert!(LeibnizConfAlg::abelian(zoo::virasoro().module()).is_skew());
}

#[test]
fn current_algebra_matches_scalar_oracle() {
    for (n, basis, c) in zoo::fd_algebras() {
        let alg = current_algebra(n, &basis, &c).unwrap();
        assert_eq!(alg.verify().passed(), fd_leibniz_holds(&c), "{n}");
    }
    let (_, alg) = &zoo::failing_algebras()[1];
    assert!(!alg.verify().passed());
}

#[test]
fn representations() {
    for (name, rep) in zoo::passing_reps() {
        assert!(rep.verify().passed(), "{name}: {}", rep.verify());
    }
    let vir = zoo::virasoro();
    let twice = vir.bracket().scale(&rat(2));
    let r = verify_rep(&vir, vir.bracket(), &twice).unwrap();
    assert!(!r.passed());
    assert!(r.failures_for("rep-vxy").count() > 0);
    assert_eq!(r.failures_for("rep-xyv").count(), 0);
}

#[test]
fn semidirect_products() {
    assert!(zoo::virasoro_semidirect().verify().passed());
    let vir = zoo::virasoro();
    let (m, _) = zoo::virasoro_module();
    let zero = SesqMap::new(vec![vir.module().clone(), m.clone()], m.clone(), 0);
    let sd = semidirect(&vir, &zero).unwrap();
    assert!(sd.verify().passed());
    assert_eq!(sd.module().rank(), 2);
    assert_eq!(
        semidirect(&zoo::current("Nil"), &SesqMap::new(
            vec![zoo::current("Nil").module().clone(), m.clone()],
            m.clone(),
            0
        )),
        Err(Error::NotSkew)
    );
    // abelian algebra acting by non-commuting matrices
    let ab = LeibnizConfAlg::abelian(&ConfModule::new("A", &["x", "y"]).unwrap());
    let pq = ConfModule::new("P", &["p", "q"]).unwrap();
    let mut bad = SesqMap::new(vec![ab.module().clone(), pq.clone()], pq.clone(), 0);
    let c = bad.ctx().clone();
    bad.set(&[0, 1], ModValue::term(&pq, 0, Poly::one(&c))).unwrap();
    bad.set(&[1, 0], ModValue::term(&pq, 1, Poly::one(&c))).unwrap();
    assert!(!semidirect(&ab, &bad).unwrap().verify().passed());
}

#[test]
fn delta_virasoro_identity_cochain() {
    let vir = zoo::virasoro();
    let rep = ConfRep::adjoint(&vir);
    let phi = Cochain::Map(crate::confcore::identity_map(vir.module()));
    let d = coboundary(&rep, &phi).unwrap();
    let m = d.as_map().unwrap();
    assert_eq!(m.get(&[0, 0]), ModValue::term(vir.module(), 0, vir_lambda_poly()));
    assert!(is_cocycle(&rep, &d).unwrap());
}

#[test]
fn delta_zero_cochain() {
    let vir = zoo::virasoro();
    let rep = ConfRep::adjoint(&vir);
    let v = zoo::constant_value(vir.module(), &[1]);
    let d = coboundary(&rep, &Cochain::from_value(&v).unwrap()).unwrap();
    // −[L_λ L]|_{λ=0} = −∂L
    let c = VarCtx::canonical(0);
    assert_eq!(d.as_map().unwrap().get(&[0]), ModValue::term(vir.module(), 0, -&Poly::d(&c)));
}

#[test]
fn abelian_trivial_delta_vanishes() {
    let g = ConfModule::new("A", &["x", "y"]).unwrap();
    let alg = LeibnizConfAlg::abelian(&g);
    let rep = ConfRep::trivial(&alg, &g);
    let mut rng = random::rng(7);
    for n in 0..4 {
        let phi = random_cochain(&mut rng, &rep, n, 2, 2, 0.5);
        assert!(coboundary(&rep, &phi).unwrap().is_zero());
    }
}

#[test]
fn delta_squared_vanishes_on_fixtures() {
    let mut rng = random::rng(11);
    for (name, rep) in zoo::passing_reps() {
        for n in 0..3 {
            let phi = random_cochain(&mut rng, &rep, n, 2, 2, 0.4);
            let d1 = coboundary(&rep, &phi).unwrap();
            let d2 = coboundary(&rep, &d1).unwrap();
            assert!(d2.is_zero(), "{name} degree {n}");
        }
    }
}

#[test]
fn degree_cap() {
    let rep = ConfRep::adjoint(&zoo::virasoro());
    let phi = Cochain::zero(&rep, 5);
    assert!(matches!(
        coboundary(&rep, &phi),
        Err(Error::DegreeOverflow { degree: 5, max: 4 })
    ));
}

#[test]
fn preimage_search() {
    let rep = ConfRep::adjoint(&zoo::current("Nil"));
    let mut rng = random::rng(3);
    let tau = random_cochain(&mut rng, &rep, 2, 1, 1, 0.6);
    let psi = coboundary(&rep, &tau).unwrap();
    let found = find_coboundary_preimage(&rep, &psi, Bounds { max_ddeg: 1, max_ldeg: 1 })
        .unwrap()
        .expect("witness inside bounds");
    assert!(is_coboundary_of(&rep, &psi, &found).unwrap());

    let zero = Cochain::zero(&rep, 3);
    assert_eq!(
        find_coboundary_preimage(&rep, &zero, Bounds::default()).unwrap(),
        Some(Cochain::zero(&rep, 2))
    );

    let not_cocycle = random_cochain(&mut rng, &rep, 3, 1, 1, 0.8);
    assert!(!is_cocycle(&rep, &not_cocycle).unwrap());
    assert_eq!(
        find_coboundary_preimage(&rep, &not_cocycle, Bounds::default()).unwrap(),
        None
    );
    assert!(matches!(
        find_coboundary_preimage(&rep, &psi, Bounds { max_ddeg: -1, max_ldeg: 0 }),
        Err(Error::InvalidBounds(_))
    ));
}
