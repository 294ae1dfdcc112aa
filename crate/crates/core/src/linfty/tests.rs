use rand::Rng;

use super::*;
use crate::leibcoh::{coboundary, leibniz_residual, Cochain, ConfRep};
use crate::random::{self, random_sesq};
use crate::zoo;

fn two_term_module() -> Module {
    GradedConfModule::new("G", &[(0, &["x", "y"]), (1, &["u"])])
        .unwrap()
        .module()
        .clone()
}

/// Random unshifted operations `ρ_1, ρ_2, ρ_3` on a graded module.
fn random_ops<R: Rng>(rng: &mut R, m: &Module, density: f64) -> HomotopyOps {
    let mut ops = HomotopyOps::new(Flavor::Unshifted, m);
    for k in 1..=3 {
        let op = random_sesq(rng, vec![m.clone(); k], m.clone(), k as i32 - 2, 1, 1, density);
        ops.set(op).unwrap();
    }
    ops
}

#[test]
fn low_identities() {
    let m = two_term_module();
    let mut rng = random::rng(5);
    let ops = random_ops(&mut rng, &m, 0.7);
    let rho1 = ops.get(1).cloned().unwrap_or_else(|| SesqMap::new(vec![m.clone()], m.clone(), -1));
    for b in 0..m.rank() {
        let ctx = VarCtx::canonical(0);
        let x = ModValue::basis(&m, &ctx, b);
        let want = rho1.eval(&[], &[rho1.eval(&[], &[x]).unwrap()]).unwrap();
        assert_eq!(leibnizator_sum(&ops, &[b]).unwrap(), want);
    }

    // n = 2: −ρ1[x,y] + [ρ1 x, y] + (−1)^{|x|}[x, ρ1 y]
    let rho2 = ops.get(2).unwrap().clone();
    let ctx = VarCtx::canonical(1);
    let l = Poly::lambda(&ctx, 0);
    for t in basis_tuples(&[3, 3]) {
        let x = ModValue::basis(&m, &ctx, t[0]);
        let y = ModValue::basis(&m, &ctx, t[1]);
        let r1 = |v: ModValue| rho1.eval(&[], &[v]).unwrap();
        let r2 = |a: ModValue, b: ModValue| rho2.eval(std::slice::from_ref(&l), &[a, b]).unwrap();
        let mut want = r1(r2(x.clone(), y.clone())).neg();
        want.add_assign(&r2(r1(x.clone()), y.clone()));
        let s = if m.degree(t[0]) % 2 == 0 { 1 } else { -1 };
        want.add_scaled(&rat(s), &r2(x, r1(y)));
        assert_eq!(leibnizator_sum(&ops, &t).unwrap(), want, "{t:?}");
    }
}

#[test]
fn degree_zero_bracket_gives_leibniz_defect() {
    for (name, alg) in zoo::failing_algebras().into_iter().chain(zoo::passing_algebras()) {
        let ops = HomotopyOps::from_leibniz(&alg);
        let r = alg.module().rank();
        for t in basis_tuples(&[r, r, r]) {
            let got = leibnizator_sum(&ops, &t).unwrap();
            assert_eq!(got, leibniz_residual(alg.bracket(), &t).neg(), "{name} {t:?}");
        }
    }
}

#[test]
fn fixtures_are_homotopy_algebras() {
    for (name, alg) in zoo::passing_algebras() {
        let ops = HomotopyOps::from_leibniz(&alg);
        assert!(verify_leib_infty(&ops, 4).unwrap().passed(), "{name}");
    }
    let (_, idem) = &zoo::failing_algebras()[0];
    let r = verify_leib_infty(&HomotopyOps::from_leibniz(idem), 4).unwrap();
    assert_eq!(failures_per_n(&r, 4)[..3], [0, 0, 1]);
}

#[test]
fn morphism_kernel_examples() {
    let aff = zoo::current("Aff");
    let ops = HomotopyOps::from_morphism_kernel(&aff, &[1]).unwrap();
    assert_eq!(ops.module().degrees(), &[0, 0, 1]);
    assert!(verify_leib_infty(&ops, 4).unwrap().passed());

    let sd = zoo::virasoro_semidirect();
    let ops = HomotopyOps::from_morphism_kernel(&sd, &[1]).unwrap();
    assert!(verify_leib_infty(&ops, 4).unwrap().passed());

    // the span of x is not an ideal of Aff
    assert!(HomotopyOps::from_morphism_kernel(&aff, &[0]).is_err());
}

#[test]
fn perturbed_rho3_fails_at_four() {
    let (_, _, skel) = crate::zoo::skeletal_nil_fixture();
    let mut rng = random::rng(9);
    assert!(verify_leib_infty(&skel, 4).unwrap().passed());
    let m = skel.module().clone();
    let mut bumped = skel.clone();
    loop {
        let noise = random_sesq(&mut rng, vec![m.clone(); 3], m.clone(), 1, 1, 1, 0.5);
        let cur = skel.get(3).cloned().unwrap_or_else(|| SesqMap::new(vec![m.clone(); 3], m.clone(), 1));
        bumped.set(cur.try_add(&noise).unwrap()).unwrap();
        let r = verify_leib_infty(&bumped, 4).unwrap();
        if !r.passed() {
            assert_eq!(failures_per_n(&r, 4)[..3], [0, 0, 0]);
            break;
        }
    }
}

#[test]
fn shift_signs() {
    let m = two_term_module();
    let mut rng = random::rng(21);
    let ops = random_ops(&mut rng, &m, 0.8);
    let sh = shift(&ops).unwrap();
    assert_eq!(sh.module().degrees(), &[1, 1, 2]);
    let h = sh.module();
    // ϱ1 = s ρ1 s⁻¹
    for (t, v) in ops.get(1).unwrap().entries() {
        assert_eq!(sh.get(1).unwrap().get(t), v.retarget(h));
    }
    // ϱ2(h1, h2) = (−1)^{|s⁻¹h1|} s ρ2(s⁻¹h1, s⁻¹h2)
    for (t, v) in ops.get(2).unwrap().entries() {
        let s = if m.degree(t[0]) % 2 == 0 { 1 } else { -1 };
        assert_eq!(sh.get(2).unwrap().get(t), v.retarget(h).scale(&rat(s)));
    }
    assert_eq!(unshift(&sh).unwrap(), ops);
    assert!(shift(&sh).is_err());
}

#[test]
fn shifted_identity_matches_unshifted_up_to_sign() {
    let m = two_term_module();
    let mut rng = random::rng(33);
    for _ in 0..4 {
        let ops = random_ops(&mut rng, &m, 0.5);
        let sh = shift(&ops).unwrap();
        for n in 1..=4 {
            for t in basis_tuples(&vec![m.rank(); n]) {
                let a = leibnizator_sum(&ops, &t).unwrap();
                let b = shifted_leibnizator_sum(&sh, &t).unwrap().retarget(&m);
                assert!(b == a || b == a.neg(), "n={n} {t:?}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn maurer_cartan_equivalence() {
    let m = two_term_module();
    let mut rng = random::rng(2);
    let mut agree = 0;
    for _ in 0..10 {
        let ops = random_ops(&mut rng, &m, 0.3);
        let a = verify_leib_infty(&ops, 4).unwrap().passed();
        let b = is_maurer_cartan(&shift(&ops).unwrap(), 4).unwrap();
        assert_eq!(a, b);
        agree += 1;
    }
    let (_, _, skel) = crate::zoo::skeletal_nil_fixture();
    assert!(is_maurer_cartan(&shift(&skel).unwrap(), 4).unwrap());
    let zero = HomotopyOps::new(Flavor::Shifted, &m);
    assert!(is_maurer_cartan(&zero, 4).unwrap());
    assert_eq!(agree, 10);
}

#[test]
fn bracket_of_odd_element_with_itself() {
    let m = two_term_module();
    let mut rng = random::rng(8);
    let sh = shift(&random_ops(&mut rng, &m, 0.4)).unwrap();
    let r = CsElement::from_ops(&sh).unwrap();
    let b = gla_bracket(&r, &r, 4).unwrap();
    let mut twice = CsElement::zero(sh.module(), -2);
    for (&k, a) in sh.ops() {
        for (&l, c) in sh.ops() {
            if k + l - 1 <= 4 {
                twice.add_part(&diamond(a, c).unwrap().scale(&rat(2))).unwrap();
            }
        }
    }
    assert_eq!(b, twice);
}

fn random_element<R: Rng>(rng: &mut R, h: &Module, degree: i32, arities: &[usize]) -> CsElement {
    let mut out = CsElement::zero(h, degree);
    for &k in arities {
        out.add_part(&random_sesq(rng, vec![h.clone(); k], h.clone(), degree, 1, 1, 0.5))
            .unwrap();
    }
    out
}

#[test]
fn graded_antisymmetry_and_jacobi() {
    let h = GradedConfModule::new("H", &[(0, &["a"]), (1, &["b"])]).unwrap().module().clone();
    let mut rng = random::rng(13);
    for (da, db, dc) in [(0, 1, -1), (1, 1, 0), (-1, -1, -1), (0, 0, 1)] {
        let a = random_element(&mut rng, &h, da, &[1, 2]);
        let b = random_element(&mut rng, &h, db, &[1, 2]);
        let c = random_element(&mut rng, &h, dc, &[1]);
        let ab = gla_bracket(&a, &b, 3).unwrap();
        let ba = gla_bracket(&b, &a, 3).unwrap();
        let s = if (da * db) % 2 == 0 { -1 } else { 1 };
        assert_eq!(ab, ba.scale(&rat(s)));

        let lhs = gla_bracket(&a, &gla_bracket(&b, &c, 3).unwrap(), 3).unwrap();
        let r1 = gla_bracket(&ab, &c, 3).unwrap();
        let r2 = gla_bracket(&b, &gla_bracket(&a, &c, 3).unwrap(), 3).unwrap();
        let s = if (da * db) % 2 == 0 { 1 } else { -1 };
        assert_eq!(lhs, r1.try_add(&r2.scale(&rat(s))).unwrap(), "{da} {db} {dc}");
    }
}

#[test]
fn coboundary_matches_leibniz_complex() {
    let mut rng = random::rng(17);
    let mut nonzero = [0usize; 4];
    for (name, alg) in zoo::passing_algebras().into_iter().take(4) {
        let rep = ConfRep::adjoint(&alg);
        let rho = shift(&HomotopyOps::from_leibniz(&alg)).unwrap();
        for n in 1..=3 {
            let phi = crate::leibcoh::random_cochain(&mut rng, &rep, n, 1, 1, 0.5);
            let d = coboundary(&rep, &phi).unwrap();
            let emb = cochain_embedding(phi.as_map().unwrap()).unwrap();
            let got = linfty_coboundary(&rho, &emb, 4).unwrap();
            let want = match d {
                Cochain::Map(m) => cochain_embedding(&m).unwrap(),
                Cochain::Zero(_) => unreachable!(),
            };
            assert_eq!(got, want.scale(&rat(DELTA_SIGNS[n])), "{name} n={n}");
            nonzero[n] += usize::from(!got.is_zero());
        }
    }
    assert!(nonzero[1..].iter().all(|&c| c > 0), "{nonzero:?}");
}

#[test]
fn linfty_delta_squared() {
    let mut rng = random::rng(4);
    let (_, _, skel) = crate::zoo::skeletal_nil_fixture();
    let rho = shift(&skel).unwrap();
    let h = rho.module().clone();
    for deg in [0, -1] {
        let phi = random_element(&mut rng, &h, deg, &[1, 2]);
        let d1 = linfty_coboundary(&rho, &phi, 4).unwrap();
        let d2 = linfty_coboundary(&rho, &d1, 4).unwrap();
        // components of arity ≤ 4 − 1 are complete after two brackets
        assert!(d2.parts().all(|(&k, p)| k > 3 || p.is_zero()), "degree {deg}");
    }
    let zero = HomotopyOps::new(Flavor::Shifted, &h);
    let phi = random_element(&mut rng, &h, 0, &[1, 2]);
    assert!(linfty_coboundary(&zero, &phi, 4).unwrap().is_zero());
}
