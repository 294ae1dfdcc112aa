use super::{ctx_lambdas, TwoAlg};
use crate::confcore::{apply_linear, basis_tuples, compose_linear, expect_module, identity_map, ModValue, SesqMap};
use crate::corering::{rat, VarCtx};
use crate::error::{Error, Result};
use crate::leibcoh::names;
use crate::twoterm::TwoTermHom;
use crate::verify::{check_tuples, CheckReport};

/// A linear functor `(F0, F1)` with the natural isomorphism
/// `F2^{x,y} : [F0 x_λ F0 y]' → F0[x_λ y]`, stored by its `K'`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAlgHom {
    pub f0: SesqMap,
    pub f1: SesqMap,
    pub f2: SesqMap,
}

fn expect_linear(f: &SesqMap, src: &crate::confcore::Module, tgt: &crate::confcore::Module) -> Result<()> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    expect_module(src, f.source(0))?;
    expect_module(tgt, f.target())
}

fn expect_hom_shape(a: &TwoAlg, b: &TwoAlg, f: &TwoAlgHom) -> Result<()> {
    let (sa, sb) = (a.space(), b.space());
    expect_linear(&f.f0, sa.c0(), sb.c0())?;
    expect_linear(&f.f1, sa.c1(), sb.c1())?;
    if f.f2.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: f.f2.arity(),
        });
    }
    expect_module(sa.c0(), f.f2.source(0))?;
    expect_module(sa.c0(), f.f2.source(1))?;
    expect_module(sb.k(), f.f2.target())
}

impl TwoAlgHom {
    /// `F2^{x,y}` as a morphism of the target.
    fn f2_morphism(&self, b: &TwoAlg, l: &crate::corering::Poly, x: &ModValue, y: &ModValue) -> ModValue {
        let fx = apply_linear(&self.f0, x).expect("shape");
        let fy = apply_linear(&self.f0, y).expect("shape");
        let k = self.f2.eval(std::slice::from_ref(l), &[x.clone(), y.clone()]).expect("shape");
        b.space().join(&b.br0(l, &fx, &fy), &k)
    }
}

/// Checks that `(F0, F1)` commutes with source, target and units, the
/// source/target and naturality of `F2`, and the compatibility square with
/// the Leibnizators.
pub fn verify_2alg_hom(a: &TwoAlg, b: &TwoAlg, f: &TwoAlgHom) -> Result<CheckReport> {
    expect_hom_shape(a, b, f)?;
    let (sa, sb) = (a.space(), b.space());
    let (c0, c1, k) = (sa.c0(), sa.c1(), sa.k());
    let (r0, r1, rk) = (c0.rank(), c1.rank(), k.rank());
    let lin = |m: &SesqMap, v: &ModValue| apply_linear(m, v).expect("shape");
    let mut report = CheckReport::default();

    let c = VarCtx::canonical(0);
    for i in 0..r1 {
        let e = ModValue::basis(c1, &c, i);
        let fe = lin(&f.f1, &e);
        let mut res = sb.source(&fe);
        res.sub_assign(&lin(&f.f0, &sa.source(&e)));
        report.record("hom-source", vec![c1.basis()[i].clone()], res);
        let mut res = sb.target(&fe);
        res.sub_assign(&lin(&f.f0, &sa.target(&e)));
        report.record("hom-target", vec![c1.basis()[i].clone()], res);
    }
    for i in 0..r0 {
        let x = ModValue::basis(c0, &c, i);
        let mut res = lin(&f.f1, &sa.unit(&x));
        res.sub_assign(&sb.unit(&lin(&f.f0, &x)));
        report.record("hom-unit", vec![c0.basis()[i].clone()], res);
    }

    let (c, ls) = ctx_lambdas(1);
    let l = &ls[0];
    report.merge(check_tuples(&basis_tuples(&[r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y) = (ModValue::basis(c0, &c, t[0]), ModValue::basis(c0, &c, t[1]));
        let m = f.f2_morphism(b, l, &x, &y);
        let mut res = sb.target(&m);
        res.sub_assign(&lin(&f.f0, &a.br0(l, &x, &y)));
        r.record("hom-f2-target", names(&[c0, c0], t), res);
        r
    }));
    // naturality against (0, h) in either slot:
    // [F1 p, F1 q]'_K + F2(t p, t q) − F2(s p, s q) − (F1 [p, q])_K = 0
    report.merge(check_tuples(&basis_tuples(&[2, rk, r0]), |t| {
        let mut r = CheckReport::default();
        let h = sa.arrow(&ModValue::basis(k, &c, t[1]));
        let y = ModValue::basis(c0, &c, t[2]);
        let (p, q) = if t[0] == 0 { (h, sa.unit(&y)) } else { (sa.unit(&y), h) };
        let f2 = |u: &ModValue, v: &ModValue| f.f2.eval(std::slice::from_ref(l), &[u.clone(), v.clone()]).expect("shape");
        let mut res = sb.kpart(&b.br1(l, &lin(&f.f1, &p), &lin(&f.f1, &q)));
        res.add_assign(&f2(&sa.target(&p), &sa.target(&q)));
        res.sub_assign(&f2(&sa.source(&p), &sa.source(&q)));
        res.sub_assign(&sb.kpart(&lin(&f.f1, &a.br1(l, &p, &q))));
        let mut tuple = vec![c0.basis()[t[2]].clone()];
        tuple.insert(t[0], format!("(0,{})", k.basis()[t[1]]));
        r.record("hom-f2-naturality", tuple, res);
        r
    }));

    let (c, ls) = ctx_lambdas(2);
    let (lam, mu) = (&ls[0], &ls[1]);
    let lm = lam + mu;
    report.merge(check_tuples(&basis_tuples(&[r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        let ob = |i: usize| ModValue::basis(c0, &c, i);
        let (x, y, z) = (ob(t[0]), ob(t[1]), ob(t[2]));
        let (fx, fy, fz) = (lin(&f.f0, &x), lin(&f.f0, &y), lin(&f.f0, &z));
        let f2k = |p: &crate::corering::Poly, u: &ModValue, v: &ModValue| {
            f.f2.eval(std::slice::from_ref(p), &[u.clone(), v.clone()]).expect("shape")
        };
        let mut left = sb.kpart(&b.br1(lam, &sb.unit(&fx), &f.f2_morphism(b, mu, &y, &z)));
        left.add_assign(&f2k(lam, &x, &a.br0(mu, &y, &z)));
        left.add_assign(&sb.kpart(&lin(&f.f1, &a.leib_morphism(lam, mu, &x, &y, &z))));
        let mut right = b.leib_k(lam, mu, &fx, &fy, &fz);
        right.add_assign(&sb.kpart(&b.br1(&lm, &f.f2_morphism(b, lam, &x, &y), &sb.unit(&fz))));
        right.add_assign(&sb.kpart(&b.br1(mu, &sb.unit(&fy), &f.f2_morphism(b, lam, &x, &z))));
        right.add_assign(&f2k(&lm, &a.br0(lam, &x, &y), &z));
        right.add_assign(&f2k(mu, &y, &a.br0(lam, &x, &z)));
        left.sub_assign(&right);
        r.record("hom-square", names(&[c0, c0, c0], t), left);
        r
    }));
    Ok(report)
}

/// Identity functor with identity `F2`.
pub fn id_2alg_hom(a: &TwoAlg) -> TwoAlgHom {
    let sp = a.space();
    TwoAlgHom {
        f0: identity_map(sp.c0()),
        f1: identity_map(sp.c1()),
        f2: SesqMap::new(vec![sp.c0().clone(); 2], sp.k().clone(), 0),
    }
}

/// `G ∘ F` with `(G ∘ F)_2^{x,y} = G1(F2^{x,y}) ∘ G2^{F0 x, F0 y}`.
pub fn compose_2alg_hom(g: &TwoAlgHom, f: &TwoAlgHom, mid: &TwoAlg, last: &TwoAlg) -> Result<TwoAlgHom> {
    let f0 = compose_linear(&g.f0, &f.f0)?;
    let f1 = compose_linear(&g.f1, &f.f1)?;
    let src = f.f2.source(0).clone();
    let mut f2 = SesqMap::new(vec![src.clone(), src.clone()], last.space().k().clone(), 0);
    let c = f2.ctx().clone();
    let l = crate::corering::Poly::lambda(&c, 0);
    for t in f2.tuples() {
        let (x, y) = (ModValue::basis(&src, &c, t[0]), ModValue::basis(&src, &c, t[1]));
        let (fx, fy) = (apply_linear(&f.f0, &x)?, apply_linear(&f.f0, &y)?);
        let mut v = g.f2.eval(std::slice::from_ref(&l), &[fx, fy])?;
        let inner = f.f2_morphism(mid, &l, &x, &y);
        v.add_assign(&last.space().kpart(&apply_linear(&g.f1, &inner)?));
        f2.set(&t, v)?;
    }
    Ok(TwoAlgHom { f0, f1, f2 })
}

/// `T(f) = (f0, f0 ⊕ f1, −f2)` between `T(a)` and `T(b)`.
pub fn functor_t_hom(f: &TwoTermHom, ta: &TwoAlg, tb: &TwoAlg) -> Result<TwoAlgHom> {
    let (sa, sb) = (ta.space(), tb.space());
    let mut f1 = SesqMap::new(vec![sa.c1().clone()], sb.c1().clone(), 0);
    let c = f1.ctx().clone();
    let r0 = sa.c0().rank();
    for i in 0..sa.c1().rank() {
        let v = if i < r0 {
            sb.unit(&apply_linear(&f.f0, &ModValue::basis(sa.c0(), &c, i))?)
        } else {
            sb.arrow(&apply_linear(&f.f1, &ModValue::basis(sa.k(), &c, i - r0))?)
        };
        f1.set(&[i], v)?;
    }
    Ok(TwoAlgHom {
        f0: f.f0.clone(),
        f1,
        f2: f.f2.scale(&rat(-1)),
    })
}

/// `S(F) = (F0, F1|K, −pr2 F2)`.
pub fn functor_s_hom(f: &TwoAlgHom, a: &TwoAlg, b: &TwoAlg) -> Result<TwoTermHom> {
    let (sa, sb) = (a.space(), b.space());
    let mut f1 = SesqMap::new(vec![sa.k().clone()], sb.k().clone(), 0);
    let c = f1.ctx().clone();
    for j in 0..sa.k().rank() {
        let img = apply_linear(&f.f1, &sa.arrow(&ModValue::basis(sa.k(), &c, j)))?;
        if !sb.source(&img).is_zero() {
            return Err(Error::Malformed("F1 does not preserve ker s".into()));
        }
        f1.set(&[j], sb.kpart(&img))?;
    }
    Ok(TwoTermHom {
        f0: f.f0.clone(),
        f1,
        f2: f.f2.scale(&rat(-1)),
    })
}

/// `α_A : T(S(A)) → A` with `α0 = id`, `α1(x, h) = 1_x + h` and identity `α2`.
pub fn alpha_iso(a: &TwoAlg) -> Result<(TwoAlg, TwoAlgHom)> {
    let ts = super::functor_t_unchecked(&super::functor_s(a)?);
    let (st, sa) = (ts.space(), a.space());
    let mut f1 = SesqMap::new(vec![st.c1().clone()], sa.c1().clone(), 0);
    let c = f1.ctx().clone();
    let r0 = st.c0().rank();
    for i in 0..st.c1().rank() {
        let v = if i < r0 {
            sa.unit(&ModValue::basis(sa.c0(), &c, i))
        } else {
            sa.arrow(&ModValue::basis(sa.k(), &c, i - r0))
        };
        f1.set(&[i], v)?;
    }
    let hom = TwoAlgHom {
        f0: identity_map(sa.c0()),
        f1,
        f2: SesqMap::new(vec![sa.c0().clone(); 2], sa.k().clone(), 0),
    };
    Ok((ts, hom))
}

/// Inverse of [`alpha_iso`], `A → T(S(A))`.
pub fn alpha_inverse(a: &TwoAlg, ts: &TwoAlg) -> Result<TwoAlgHom> {
    let (sa, st) = (a.space(), ts.space());
    let mut f1 = SesqMap::new(vec![sa.c1().clone()], st.c1().clone(), 0);
    let c = f1.ctx().clone();
    for i in 0..sa.c1().rank() {
        let e = ModValue::basis(sa.c1(), &c, i);
        let x = sa.source(&e);
        let h = sa.kpart(&e);
        let v = st.join(&x.retarget(st.c0()), &h.retarget(st.k()));
        f1.set(&[i], v)?;
    }
    Ok(TwoAlgHom {
        f0: identity_map(sa.c0()),
        f1,
        f2: SesqMap::new(vec![sa.c0().clone(); 2], st.k().clone(), 0),
    })
}
