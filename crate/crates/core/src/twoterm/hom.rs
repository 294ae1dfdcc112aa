use super::{expect_shape, Ev, TwoTermAlg};
use crate::confcore::{basis_tuples, compose_linear, identity_map, SesqMap};
use crate::corering::{Poly, VarCtx};
use crate::error::Result;
use crate::leibcoh::{lambdas, names};
use crate::verify::{check_tuples, CheckReport};

/// `(f0, f1, f2)` with `f0 : G0 → G0'`, `f1 : G1 → G1'` linear and
/// `f2 : G0 ⊗ G0 → G1'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermHom {
    pub f0: SesqMap,
    pub f1: SesqMap,
    pub f2: SesqMap,
}

impl TwoTermHom {
    /// Checks that the pieces fit between `a` and `b`.
    pub fn new(a: &TwoTermAlg, b: &TwoTermAlg, f0: SesqMap, f1: SesqMap, f2: SesqMap) -> Result<Self> {
        expect_shape(&f0, &[a.g0()], b.g0())?;
        expect_shape(&f1, &[a.g1()], b.g1())?;
        expect_shape(&f2, &[a.g0(), a.g0()], b.g1())?;
        Ok(TwoTermHom { f0, f1, f2 })
    }
}

/// `(id, id, 0)`.
pub fn id_hom(a: &TwoTermAlg) -> TwoTermHom {
    TwoTermHom {
        f0: identity_map(a.g0()),
        f1: identity_map(a.g1()),
        f2: SesqMap::new(vec![a.g0().clone(); 2], a.g1().clone(), 0),
    }
}

/// `g ∘ f = (g0 f0, g1 f1, g2 (f0 ⊗ f0) + g1 f2)`.
pub fn compose_hom(g: &TwoTermHom, f: &TwoTermHom) -> Result<TwoTermHom> {
    let f0 = compose_linear(&g.f0, &f.f0)?;
    let f1 = compose_linear(&g.f1, &f.f1)?;
    let pulled = g.f2.conjugate(&[&f.f0, &f.f0], None)?;
    let id = identity_map(f.f2.source(0));
    let pushed = f.f2.conjugate(&[&id, &id], Some(&g.f1))?;
    Ok(TwoTermHom {
        f0,
        f1,
        f2: pulled.try_add(&pushed)?,
    })
}

/// Condition ids `hom-1` … `hom-5`.
pub const HOM_CONDITIONS: [&str; 5] = ["hom-1", "hom-2", "hom-3", "hom-4", "hom-5"];

/// Checks the five homomorphism conditions on basis tuples.
pub fn verify_hom(a: &TwoTermAlg, b: &TwoTermAlg, f: &TwoTermHom) -> Result<CheckReport> {
    expect_shape(&f.f0, &[a.g0()], b.g0())?;
    expect_shape(&f.f1, &[a.g1()], b.g1())?;
    expect_shape(&f.f2, &[a.g0(), a.g0()], b.g1())?;
    let (g0, g1) = (a.g0(), a.g1());
    let (r0, r1) = (g0.rank(), g1.rank());
    let mut report = CheckReport::default();

    let c0 = VarCtx::canonical(0);
    let e = Ev { ctx: &c0 };
    report.merge(check_tuples(&basis_tuples(&[r1]), |t| {
        let mut r = CheckReport::default();
        let v = e.b(g1, t[0]);
        let mut res = e.lin(b.d(), &e.lin(&f.f1, &v));
        res.sub_assign(&e.lin(&f.f0, &e.lin(a.d(), &v)));
        r.record("hom-1", names(&[g1], t), res);
        r
    }));

    let c1 = VarCtx::canonical(1);
    let l = Poly::lambda(&c1, 0);
    let e = Ev { ctx: &c1 };
    report.merge(check_tuples(&basis_tuples(&[r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y) = (e.b(g0, t[0]), e.b(g0, t[1]));
        let mut res = e.two(b.rho00(), &l, &e.lin(&f.f0, &x), &e.lin(&f.f0, &y));
        res.sub_assign(&e.lin(&f.f0, &e.two(a.rho00(), &l, &x, &y)));
        res.sub_assign(&e.lin(b.d(), &e.two(&f.f2, &l, &x, &y)));
        r.record("hom-2", names(&[g0, g0], t), res);
        r
    }));
    report.merge(check_tuples(&basis_tuples(&[r0, r1]), |t| {
        let mut r = CheckReport::default();
        let (x, v) = (e.b(g0, t[0]), e.b(g1, t[1]));
        let (fx, fv, dv) = (e.lin(&f.f0, &x), e.lin(&f.f1, &v), e.lin(a.d(), &v));
        let mut res = e.two(b.rho01(), &l, &fx, &fv);
        res.sub_assign(&e.lin(&f.f1, &e.two(a.rho01(), &l, &x, &v)));
        res.sub_assign(&e.two(&f.f2, &l, &x, &dv));
        r.record("hom-3", names(&[g0, g1], t), res);
        let mut res = e.two(b.rho10(), &l, &fv, &fx);
        res.sub_assign(&e.lin(&f.f1, &e.two(a.rho10(), &l, &v, &x)));
        res.sub_assign(&e.two(&f.f2, &l, &dv, &x));
        r.record("hom-4", names(&[g1, g0], &[t[1], t[0]]), res);
        r
    }));

    let c2 = VarCtx::canonical(2);
    let ls = lambdas(&c2);
    let (lam, mu) = (&ls[0], &ls[1]);
    let lm = lam + mu;
    let e = Ev { ctx: &c2 };
    report.merge(check_tuples(&basis_tuples(&[r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y, z) = (e.b(g0, t[0]), e.b(g0, t[1]), e.b(g0, t[2]));
        let (fx, fy, fz) = (e.lin(&f.f0, &x), e.lin(&f.f0, &y), e.lin(&f.f0, &z));
        let mut res = e.three(b.rho3(), lam, mu, &fx, &fy, &fz);
        res.sub_assign(&e.lin(&f.f1, &e.three(a.rho3(), lam, mu, &x, &y, &z)));
        res.sub_assign(&e.two(b.rho01(), lam, &fx, &e.two(&f.f2, mu, &y, &z)));
        res.add_assign(&e.two(b.rho10(), &lm, &e.two(&f.f2, lam, &x, &y), &fz));
        res.add_assign(&e.two(b.rho01(), mu, &fy, &e.two(&f.f2, lam, &x, &z)));
        res.sub_assign(&e.two(&f.f2, lam, &x, &e.two(a.rho00(), mu, &y, &z)));
        res.add_assign(&e.two(&f.f2, &lm, &e.two(a.rho00(), lam, &x, &y), &z));
        res.add_assign(&e.two(&f.f2, mu, &y, &e.two(a.rho00(), lam, &x, &z)));
        r.record("hom-5", names(&[g0, g0, g0], t), res);
        r
    }));
    Ok(report)
}

/// The algebra `A'` on the same complex for which `(id, id, τ) : A → A'`
/// is a homomorphism, read off from the homomorphism conditions.
pub fn gauge_transform(a: &TwoTermAlg, tau: &SesqMap) -> Result<TwoTermAlg> {
    let (g0, g1) = (a.g0(), a.g1());
    expect_shape(tau, &[g0, g0], g1)?;
    let id0 = identity_map(g0);
    let id1 = identity_map(g1);
    let rho00 = a.rho00().try_add(&tau.conjugate(&[&id0, &id0], Some(a.d()))?)?;
    let rho01 = a.rho01().try_add(&tau.conjugate(&[&id0, a.d()], None)?)?;
    let rho10 = a.rho10().try_add(&tau.conjugate(&[a.d(), &id0], None)?)?;
    let b = TwoTermAlg::raw(a.d().clone(), rho00, rho01, rho10, a.rho3().clone())?;
    // hom-5 with ρ3' unknown: ρ3' = ρ3 + (the remaining terms)
    let f = TwoTermHom {
        f0: id0,
        f1: id1,
        f2: tau.clone(),
    };
    let rep = verify_hom(a, &b, &f)?;
    let mut rho3 = a.rho3().clone();
    for fl in rep.failures_for("hom-5") {
        let t: Vec<usize> = fl
            .tuple
            .iter()
            .map(|n| g0.index_of(n).expect("basis name"))
            .collect();
        rho3.add_to(&t, &fl.residual.neg())?;
    }
    b.with_rho3(rho3)
}
