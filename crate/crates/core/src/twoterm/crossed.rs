use super::{expect_shape, Ev, TwoTermAlg};
use crate::confcore::{basis_tuples, SesqMap};
use crate::corering::{Poly, VarCtx};
use crate::error::{Error, Result};
use crate::leibcoh::{lambdas, names, verify_rep, LeibnizConfAlg};
use crate::verify::{check_tuples, CheckReport};

/// `(g, h, d, Φˡ, Φʳ)`: a morphism `d : g → h` with `h` acting on `g` by
/// `Φˡ : h ⊗ g → g` and `Φʳ : g ⊗ h → g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    g: LeibnizConfAlg,
    h: LeibnizConfAlg,
    d: SesqMap,
    phi_l: SesqMap,
    phi_r: SesqMap,
}

impl CrossedModule {
    /// Shape-checked, unverified.
    pub fn raw(g: LeibnizConfAlg, h: LeibnizConfAlg, d: SesqMap, phi_l: SesqMap, phi_r: SesqMap) -> Result<Self> {
        let (gm, hm) = (g.module(), h.module());
        expect_shape(&d, &[gm], hm)?;
        expect_shape(&phi_l, &[hm, gm], gm)?;
        expect_shape(&phi_r, &[gm, hm], gm)?;
        Ok(CrossedModule {
            g,
            h,
            d,
            phi_l,
            phi_r,
        })
    }

    pub fn new(g: LeibnizConfAlg, h: LeibnizConfAlg, d: SesqMap, phi_l: SesqMap, phi_r: SesqMap) -> Result<Self> {
        let x = CrossedModule::raw(g, h, d, phi_l, phi_r)?;
        let r = verify_crossed(&x);
        if r.passed() {
            Ok(x)
        } else {
            Err(Error::VerificationFailed(format!(
                "crossed module equations fail: {}",
                r.failed_identities().join(", ")
            )))
        }
    }

    pub fn g(&self) -> &LeibnizConfAlg {
        &self.g
    }
    pub fn h(&self) -> &LeibnizConfAlg {
        &self.h
    }
    pub fn d(&self) -> &SesqMap {
        &self.d
    }
    pub fn phi_l(&self) -> &SesqMap {
        &self.phi_l
    }
    pub fn phi_r(&self) -> &SesqMap {
        &self.phi_r
    }

    /// Same data with `Φˡ` replaced (shape-checked only).
    pub fn with_phi_l(&self, phi_l: SesqMap) -> Result<Self> {
        CrossedModule::raw(self.g.clone(), self.h.clone(), self.d.clone(), phi_l, self.phi_r.clone())
    }
}

/// Checks that `d` is a morphism, that `Φˡ, Φʳ` form a representation
/// (ids prefixed `cm-`), and the compatibility equations `cm-1` … `cm-6`
/// (`cm-3l`, `cm-3r` for the two halves of the third).
pub fn verify_crossed(x: &CrossedModule) -> CheckReport {
    let (gm, hm) = (x.g.module(), x.h.module());
    let (rg, rh) = (gm.rank(), hm.rank());
    let (bg, bh) = (x.g.bracket(), x.h.bracket());
    let mut report = CheckReport::default();
    let rep = verify_rep(&x.h, &x.phi_l, &x.phi_r).expect("shapes checked");
    for f in rep.failures {
        report.record(&format!("cm-{}", f.identity), f.tuple, f.residual);
    }

    let c1 = VarCtx::canonical(1);
    let l = Poly::lambda(&c1, 0);
    let e = Ev { ctx: &c1 };
    report.merge(check_tuples(&basis_tuples(&[rg, rg]), |t| {
        let mut r = CheckReport::default();
        let (a, b) = (e.b(gm, t[0]), e.b(gm, t[1]));
        let (da, db) = (e.lin(&x.d, &a), e.lin(&x.d, &b));
        let ab = e.two(bg, &l, &a, &b);
        let mut res = e.lin(&x.d, &ab);
        res.sub_assign(&e.two(bh, &l, &da, &db));
        r.record("cm-morphism", names(&[gm, gm], t), res);
        let mut res = e.two(&x.phi_l, &l, &da, &b);
        res.sub_assign(&ab);
        r.record("cm-3l", names(&[gm, gm], t), res);
        let mut res = ab.clone();
        res.sub_assign(&e.two(&x.phi_r, &l, &a, &db));
        r.record("cm-3r", names(&[gm, gm], t), res);
        r
    }));
    report.merge(check_tuples(&basis_tuples(&[rh, rg]), |t| {
        let mut r = CheckReport::default();
        let (h, a) = (e.b(hm, t[0]), e.b(gm, t[1]));
        let da = e.lin(&x.d, &a);
        let mut res = e.lin(&x.d, &e.two(&x.phi_l, &l, &h, &a));
        res.sub_assign(&e.two(bh, &l, &h, &da));
        r.record("cm-1", names(&[hm, gm], t), res);
        let mut res = e.lin(&x.d, &e.two(&x.phi_r, &l, &a, &h));
        res.sub_assign(&e.two(bh, &l, &da, &h));
        r.record("cm-2", names(&[gm, hm], &[t[1], t[0]]), res);
        r
    }));

    let c2 = VarCtx::canonical(2);
    let ls = lambdas(&c2);
    let (lam, mu) = (&ls[0], &ls[1]);
    let lm = lam + mu;
    let e = Ev { ctx: &c2 };
    report.merge(check_tuples(&basis_tuples(&[rg, rg, rh]), |t| {
        let mut r = CheckReport::default();
        let (a, b, h) = (e.b(gm, t[0]), e.b(gm, t[1]), e.b(hm, t[2]));
        let (pl, pr) = (&x.phi_l, &x.phi_r);
        // [a_λ Φʳ_μ(b,h)] = Φʳ_{λ+μ}([a_λ b], h) + [b_μ Φʳ_λ(a,h)]
        let mut res = e.two(bg, lam, &a, &e.two(pr, mu, &b, &h));
        res.sub_assign(&e.two(pr, &lm, &e.two(bg, lam, &a, &b), &h));
        res.sub_assign(&e.two(bg, mu, &b, &e.two(pr, lam, &a, &h)));
        r.record("cm-4", names(&[gm, gm, hm], t), res);
        // [a_λ Φˡ_μ(h,b)] = [Φʳ_λ(a,h)_{λ+μ} b] + Φˡ_μ(h, [a_λ b])
        let mut res = e.two(bg, lam, &a, &e.two(pl, mu, &h, &b));
        res.sub_assign(&e.two(bg, &lm, &e.two(pr, lam, &a, &h), &b));
        res.sub_assign(&e.two(pl, mu, &h, &e.two(bg, lam, &a, &b)));
        r.record("cm-5", names(&[gm, hm, gm], &[t[0], t[2], t[1]]), res);
        // Φˡ_λ(h, [a_μ b]) = [Φˡ_λ(h,a)_{λ+μ} b] + [a_μ Φˡ_λ(h,b)]
        let mut res = e.two(pl, lam, &h, &e.two(bg, mu, &a, &b));
        res.sub_assign(&e.two(bg, &lm, &e.two(pl, lam, &h, &a), &b));
        res.sub_assign(&e.two(bg, mu, &a, &e.two(pl, lam, &h, &b)));
        r.record("cm-6", names(&[hm, gm, gm], &[t[2], t[0], t[1]]), res);
        r
    }));
    report
}

/// `(G1, G0, d, ρ2, ρ2)` with `[u_λ v]¹ = ρ2(du, v)` on `G1`.
pub fn strict_to_crossed(a: &TwoTermAlg) -> Result<CrossedModule> {
    if !a.is_strict() {
        return Err(Error::NotStrict);
    }
    let g1 = a.g1();
    let mut b1 = SesqMap::endo(g1, 2);
    let c1 = b1.ctx().clone();
    let l = Poly::lambda(&c1, 0);
    let e = Ev { ctx: &c1 };
    for t in b1.tuples() {
        let du = e.lin(a.d(), &e.b(g1, t[0]));
        b1.set(&t, e.two(a.rho01(), &l, &du, &e.b(g1, t[1])))?;
    }
    CrossedModule::raw(
        LeibnizConfAlg::raw(b1)?,
        a.base_algebra(),
        a.d().clone(),
        a.rho01().clone(),
        a.rho10().clone(),
    )
}

/// `(g --d--> h, ρ2, 0)` with `ρ2 = [,]^h` on `h`, `Φˡ` on `h ⊗ g` and `Φʳ`
/// on `g ⊗ h`.
pub fn crossed_to_strict(x: &CrossedModule) -> Result<TwoTermAlg> {
    let (gm, hm) = (x.g.module(), x.h.module());
    TwoTermAlg::raw(
        x.d.clone(),
        x.h.bracket().clone(),
        x.phi_l.clone(),
        x.phi_r.clone(),
        SesqMap::new(vec![hm.clone(); 3], gm.clone(), 0),
    )
}

/// The two consequences of condition (v) on strict algebras obtained by
/// adding it to itself with `x, y` swapped:
/// `ρ2_{λ+μ}(ρ2_λ(x,y), z) + ρ2_{λ+μ}(ρ2_μ(y,x), z) = 0` (id `sum-0`, on
/// `G0³`) and the same with `y` replaced by `v ∈ G1` (id `sum-1`).
pub fn strict_sum_identities(a: &TwoTermAlg) -> Result<CheckReport> {
    if !a.is_strict() {
        return Err(Error::NotStrict);
    }
    let (g0, g1) = (a.g0(), a.g1());
    let (r0, r1) = (g0.rank(), g1.rank());
    let c2 = VarCtx::canonical(2);
    let ls = lambdas(&c2);
    let (lam, mu) = (&ls[0], &ls[1]);
    let lm = lam + mu;
    let e = Ev { ctx: &c2 };
    let mut report = CheckReport::default();
    report.merge(check_tuples(&basis_tuples(&[r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y, z) = (e.b(g0, t[0]), e.b(g0, t[1]), e.b(g0, t[2]));
        let mut res = e.two(a.rho00(), &lm, &e.two(a.rho00(), lam, &x, &y), &z);
        res.add_assign(&e.two(a.rho00(), &lm, &e.two(a.rho00(), mu, &y, &x), &z));
        r.record("sum-0", names(&[g0, g0, g0], t), res);
        r
    }));
    report.merge(check_tuples(&basis_tuples(&[r0, r1, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, v, y) = (e.b(g0, t[0]), e.b(g1, t[1]), e.b(g0, t[2]));
        let mut res = e.two(a.rho10(), &lm, &e.two(a.rho01(), lam, &x, &v), &y);
        res.add_assign(&e.two(a.rho10(), &lm, &e.two(a.rho10(), mu, &v, &x), &y));
        r.record("sum-1", names(&[g0, g1, g0], t), res);
        r
    }));
    Ok(report)
}
