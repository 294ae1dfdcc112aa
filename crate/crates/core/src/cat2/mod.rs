//! Leibniz conformal 2-algebras on 2-vector spaces in split normal form,
//! and the functors relating them to 2-term homotopy algebras.
//!
//! A 2-vector space is stored as `C1 = C0 ⊕ K` with `K = ker s`; a
//! morphism `(x, h)` has source `x` and target `x + dh`. Morphisms with a
//! common source are equal iff their `K`-parts are, which is how every
//! commutative diagram below is checked.

mod hom;

pub use hom::{
    alpha_inverse, alpha_iso, compose_2alg_hom, functor_s_hom, functor_t_hom, id_2alg_hom,
    verify_2alg_hom, TwoAlgHom,
};

use crate::confcore::{apply_linear, basis_tuples, expect_module, ConfModule, ModValue, Module, SesqMap};
use crate::corering::{Poly, VarCtx};
use crate::error::{Error, Result};
use crate::leibcoh::{lambdas, names};
use crate::twoterm::TwoTermAlg;
use crate::verify::{check_tuples, CheckReport};

/// `C0 ⊕ K ⇉ C0` built from a complex `d : K → C0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVectorSpace {
    c0: Module,
    k: Module,
    c1: Module,
    d: SesqMap,
}

impl TwoVectorSpace {
    pub fn from_complex(d: &SesqMap) -> Result<Self> {
        if d.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: d.arity(),
            });
        }
        let c0 = d.target().clone();
        let k = d.source(0).clone();
        let c1 = ConfModule::direct_sum(&format!("{}+{}", c0.name(), k.name()), &c0, &k)?;
        Ok(TwoVectorSpace {
            c0,
            k,
            c1,
            d: d.clone(),
        })
    }

    /// Objects.
    pub fn c0(&self) -> &Module {
        &self.c0
    }
    /// `ker s`.
    pub fn k(&self) -> &Module {
        &self.k
    }
    /// Morphisms.
    pub fn c1(&self) -> &Module {
        &self.c1
    }
    pub fn d(&self) -> &SesqMap {
        &self.d
    }

    /// `i(x) = (x, 0) = 1_x`.
    pub fn unit(&self, x: &ModValue) -> ModValue {
        self.join(x, &ModValue::zero(&self.k, x.ctx()))
    }

    /// `(x, h)`.
    pub fn join(&self, x: &ModValue, h: &ModValue) -> ModValue {
        let mut coeffs = x.coeffs().to_vec();
        coeffs.extend(h.coeffs().iter().cloned());
        ModValue::from_coeffs(&self.c1, x.ctx(), coeffs).expect("ranks add up")
    }

    /// `(0, h)`.
    pub fn arrow(&self, h: &ModValue) -> ModValue {
        self.join(&ModValue::zero(&self.c0, h.ctx()), h)
    }

    /// `s(x, h) = x`.
    pub fn source(&self, f: &ModValue) -> ModValue {
        let r = self.c0.rank();
        ModValue::from_coeffs(&self.c0, f.ctx(), f.coeffs()[..r].to_vec()).expect("rank")
    }

    /// `pr2(x, h) = h`.
    pub fn kpart(&self, f: &ModValue) -> ModValue {
        let r = self.c0.rank();
        ModValue::from_coeffs(&self.k, f.ctx(), f.coeffs()[r..].to_vec()).expect("rank")
    }

    /// `t(x, h) = x + dh`.
    pub fn target(&self, f: &ModValue) -> ModValue {
        let mut out = self.source(f);
        out.add_assign(&apply_linear(&self.d, &self.kpart(f)).expect("shape"));
        out
    }

    /// `m(f, g)` for `t f = s g`: `(x, h + k)`.
    pub fn compose(&self, f: &ModValue, g: &ModValue) -> Result<ModValue> {
        if self.target(f) != self.source(g) {
            return Err(Error::Malformed("morphisms are not composable".into()));
        }
        Ok(self.compose_unchecked(f, g))
    }

    fn compose_unchecked(&self, f: &ModValue, g: &ModValue) -> ModValue {
        let mut out = f.clone();
        out.add_assign(g);
        out.sub_assign(&self.unit(&self.source(g)));
        out
    }

    /// The inverse `(x + dh, −h)` of `(x, h)`.
    pub fn inverse(&self, f: &ModValue) -> ModValue {
        self.join(&self.target(f), &self.kpart(f).neg())
    }

    /// Basis morphisms `1_x` followed by `(0, h)`.
    fn basis_morphisms(&self, ctx: &crate::corering::Ctx) -> Vec<ModValue> {
        (0..self.c1.rank()).map(|i| ModValue::basis(&self.c1, ctx, i)).collect()
    }

    /// Unit laws, inverses and associativity of composition on composable
    /// triples built from basis morphisms.
    pub fn verify(&self) -> CheckReport {
        let ctx = VarCtx::canonical(0);
        let mut r = CheckReport::default();
        let gens = self.basis_morphisms(&ctx);
        let name = |f: &ModValue| vec![f.to_string()];
        for f in &gens {
            let x = self.source(f);
            let mut res = self.source(&self.unit(&x));
            res.sub_assign(&x);
            r.record("vs-source-unit", name(f), res);
            let mut res = self.target(&self.unit(&x));
            res.sub_assign(&x);
            r.record("vs-target-unit", name(f), res);
            let mut res = self.compose_unchecked(&self.unit(&x), f);
            res.sub_assign(f);
            r.record("vs-left-unit", name(f), res);
            let mut res = self.compose_unchecked(f, &self.unit(&self.target(f)));
            res.sub_assign(f);
            r.record("vs-right-unit", name(f), res);
            let mut res = self.compose_unchecked(f, &self.inverse(f));
            res.sub_assign(&self.unit(&x));
            r.record("vs-inverse", name(f), res);
            // composable continuations g = 1_{t f} + (0, k), h = 1_{t g} + (0, l)
            let nexts = |from: &ModValue| {
                let base = self.unit(&self.target(from));
                let mut out = vec![base.clone()];
                for j in 0..self.k.rank() {
                    let mut v = base.clone();
                    v.add_assign(&self.arrow(&ModValue::basis(&self.k, &ctx, j)));
                    out.push(v);
                }
                out
            };
            for g in nexts(f) {
                for h in nexts(&g) {
                    let lhs = self.compose_unchecked(&self.compose_unchecked(f, &g), &h);
                    let mut res = self.compose_unchecked(f, &self.compose_unchecked(&g, &h));
                    res.sub_assign(&lhs);
                    r.record("vs-assoc", vec![f.to_string(), g.to_string(), h.to_string()], res);
                }
            }
        }
        r
    }
}

/// The morphism bracket on `C0 ⊕ K` determined by 2-term data:
/// `[(x,h)_λ (y,k)] = (ρ2(x,y), ρ2(x,k) + ρ2(h,y) + ρ2(dh,k))`.
fn morphism_bracket(space: &TwoVectorSpace, a: &TwoTermAlg) -> SesqMap {
    let c1 = space.c1();
    let r0 = space.c0().rank();
    let mut out = SesqMap::endo(c1, 2);
    let ctx = out.ctx().clone();
    let l = [Poly::lambda(&ctx, 0)];
    let b0 = |m: &Module, i: usize| ModValue::basis(m, &ctx, i);
    for t in out.tuples() {
        let v = match (t[0] < r0, t[1] < r0) {
            (true, true) => space.unit(&a.rho00().eval(&l, &[b0(a.g0(), t[0]), b0(a.g0(), t[1])]).expect("shape")),
            (true, false) => space.arrow(&a.rho01().eval(&l, &[b0(a.g0(), t[0]), b0(a.g1(), t[1] - r0)]).expect("shape")),
            (false, true) => space.arrow(&a.rho10().eval(&l, &[b0(a.g1(), t[0] - r0), b0(a.g0(), t[1])]).expect("shape")),
            (false, false) => {
                let dh = apply_linear(a.d(), &b0(a.g1(), t[0] - r0)).expect("shape");
                space.arrow(&a.rho01().eval(&l, &[dh, b0(a.g1(), t[1] - r0)]).expect("shape"))
            }
        };
        out.set(&t, v).expect("homogeneous");
    }
    out
}

/// A 2-vector space with a bracket functor (object and morphism tables)
/// and a Leibnizator `L_{x,y,z} : [x_λ[y_μ z]] → [[x_λ y]_{λ+μ} z] + [y_μ[x_λ z]]`
/// stored by its `K`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAlg {
    space: TwoVectorSpace,
    bracket0: SesqMap,
    bracket1: SesqMap,
    leib: SesqMap,
}

impl TwoAlg {
    /// Shape-checked, unverified.
    pub fn raw(space: TwoVectorSpace, bracket0: SesqMap, bracket1: SesqMap, leib: SesqMap) -> Result<Self> {
        let (c0, c1, k) = (space.c0(), space.c1(), space.k());
        for (map, src, tgt) in [(&bracket0, c0, c0), (&bracket1, c1, c1)] {
            if map.arity() != 2 {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    found: map.arity(),
                });
            }
            expect_module(src, map.source(0))?;
            expect_module(src, map.source(1))?;
            expect_module(tgt, map.target())?;
        }
        if leib.arity() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: leib.arity(),
            });
        }
        for s in leib.sources() {
            expect_module(c0, s)?;
        }
        expect_module(k, leib.target())?;
        Ok(TwoAlg {
            space,
            bracket0,
            bracket1,
            leib,
        })
    }

    /// Zero bracket with the identity Leibnizator.
    pub fn trivial(space: &TwoVectorSpace) -> Self {
        TwoAlg {
            space: space.clone(),
            bracket0: SesqMap::endo(space.c0(), 2),
            bracket1: SesqMap::endo(space.c1(), 2),
            leib: SesqMap::new(vec![space.c0().clone(); 3], space.k().clone(), 0),
        }
    }

    pub fn space(&self) -> &TwoVectorSpace {
        &self.space
    }
    pub fn bracket0(&self) -> &SesqMap {
        &self.bracket0
    }
    pub fn bracket1(&self) -> &SesqMap {
        &self.bracket1
    }
    /// `pr2 L`.
    pub fn leibnizator(&self) -> &SesqMap {
        &self.leib
    }

    /// Same data with the `K`-part of `L` replaced.
    pub fn with_leibnizator(&self, leib: SesqMap) -> Result<Self> {
        TwoAlg::raw(self.space.clone(), self.bracket0.clone(), self.bracket1.clone(), leib)
    }

    pub fn verify(&self) -> CheckReport {
        verify_two_alg(self)
    }

    fn br0(&self, l: &Poly, x: &ModValue, y: &ModValue) -> ModValue {
        self.bracket0.eval(std::slice::from_ref(l), &[x.clone(), y.clone()]).expect("shape")
    }

    fn br1(&self, l: &Poly, f: &ModValue, g: &ModValue) -> ModValue {
        self.bracket1.eval(std::slice::from_ref(l), &[f.clone(), g.clone()]).expect("shape")
    }

    /// `pr2 L_{x,y,z}` with λ-arguments `(l, m)`.
    fn leib_k(&self, l: &Poly, m: &Poly, x: &ModValue, y: &ModValue, z: &ModValue) -> ModValue {
        self.leib
            .eval(&[l.clone(), m.clone()], &[x.clone(), y.clone(), z.clone()])
            .expect("shape")
    }

    /// `L_{x,y,z}` as a morphism.
    fn leib_morphism(&self, l: &Poly, m: &Poly, x: &ModValue, y: &ModValue, z: &ModValue) -> ModValue {
        let src = self.br0(l, x, &self.br0(m, y, z));
        self.space.join(&src, &self.leib_k(l, m, x, y, z))
    }
}

/// Builds `Σ_j` lambdas for `n` variables in a canonical context.
fn ctx_lambdas(n: usize) -> (crate::corering::Ctx, Vec<Poly>) {
    let c = VarCtx::canonical(n);
    let l = lambdas(&c);
    (c, l)
}

/// Condition ids checked by [`verify_two_alg`].
pub const TWO_ALG_CONDITIONS: [&str; 7] = [
    "bracket-source",
    "bracket-target",
    "bracket-unit",
    "bracket-interchange",
    "leibnizator-target",
    "leibnizator-naturality",
    "leibnizator-coherence",
];

/// Functoriality of the bracket, source/target of `L`, naturality of `L`
/// on generating morphisms `(0, h)`, and the coherence diagram on basis
/// quadruples.
pub fn verify_two_alg(a: &TwoAlg) -> CheckReport {
    let sp = &a.space;
    let (c0, c1, k) = (sp.c0(), sp.c1(), sp.k());
    let (r0, r1, rk) = (c0.rank(), c1.rank(), k.rank());
    let mut report = CheckReport::default();

    let (c, ls) = ctx_lambdas(1);
    let l = &ls[0];
    report.merge(check_tuples(&basis_tuples(&[r1, r1]), |t| {
        let mut r = CheckReport::default();
        let (f, g) = (ModValue::basis(c1, &c, t[0]), ModValue::basis(c1, &c, t[1]));
        let fg = a.br1(l, &f, &g);
        let mut res = sp.source(&fg);
        res.sub_assign(&a.br0(l, &sp.source(&f), &sp.source(&g)));
        r.record("bracket-source", names(&[c1, c1], t), res);
        let mut res = sp.target(&fg);
        res.sub_assign(&a.br0(l, &sp.target(&f), &sp.target(&g)));
        r.record("bracket-target", names(&[c1, c1], t), res);
        r
    }));
    report.merge(check_tuples(&basis_tuples(&[r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y) = (ModValue::basis(c0, &c, t[0]), ModValue::basis(c0, &c, t[1]));
        let mut res = a.br1(l, &sp.unit(&x), &sp.unit(&y));
        res.sub_assign(&sp.unit(&a.br0(l, &x, &y)));
        r.record("bracket-unit", names(&[c0, c0], t), res);
        r
    }));
    // generators (e, 1_{t e}) and (0, (0, k)) of the composable pairs
    let pairs: Vec<(ModValue, ModValue, String)> = (0..r1)
        .map(|i| {
            let e = ModValue::basis(c1, &c, i);
            let next = sp.unit(&sp.target(&e));
            (e, next, format!("({0}, 1_t{0})", c1.basis()[i]))
        })
        .chain((0..rk).map(|j| {
            let h = sp.arrow(&ModValue::basis(k, &c, j));
            (ModValue::zero(c1, &c), h, format!("(0, {})", k.basis()[j]))
        }))
        .collect();
    for (f, f2, nf) in &pairs {
        for (g, g2, ng) in &pairs {
            let lhs = a.br1(l, &sp.compose_unchecked(f, f2), &sp.compose_unchecked(g, g2));
            let mut res = sp.compose_unchecked(&a.br1(l, f, g), &a.br1(l, f2, g2));
            res.sub_assign(&lhs);
            report.record("bracket-interchange", vec![nf.clone(), ng.clone()], res);
        }
    }

    let (c, ls) = ctx_lambdas(2);
    let (lam, mu) = (&ls[0], &ls[1]);
    let lm = lam + mu;
    let ob = |i: usize| ModValue::basis(c0, &c, i);
    report.merge(check_tuples(&basis_tuples(&[r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y, z) = (ob(t[0]), ob(t[1]), ob(t[2]));
        let m = a.leib_morphism(lam, mu, &x, &y, &z);
        let mut res = sp.target(&m);
        res.sub_assign(&a.br0(&lm, &a.br0(lam, &x, &y), &z));
        res.sub_assign(&a.br0(mu, &y, &a.br0(lam, &x, &z)));
        r.record("leibnizator-target", names(&[c0, c0, c0], t), res);
        r
    }));
    // naturality in slot j against (0, h), identities elsewhere:
    // F(f)_K − G(f)_K + L_K(t ·) − L_K(s ·) = 0
    report.merge(check_tuples(&basis_tuples(&[3, rk, r0, r0]), |t| {
        let mut r = CheckReport::default();
        let slot = t[0];
        let h = ModValue::basis(k, &c, t[1]);
        let (y, z) = (ob(t[2]), ob(t[3]));
        let mut objs_s = vec![y.clone(), z.clone()];
        let mut objs_t = objs_s.clone();
        objs_s.insert(slot, ModValue::zero(c0, &c));
        objs_t.insert(slot, apply_linear(sp.d(), &h).expect("shape"));
        let mut mors: Vec<ModValue> = vec![sp.unit(&y), sp.unit(&z)];
        mors.insert(slot, sp.arrow(&h));
        let (p, q, s) = (&mors[0], &mors[1], &mors[2]);
        let f = a.br1(lam, p, &a.br1(mu, q, s));
        let mut g = a.br1(&lm, &a.br1(lam, p, q), s);
        g.add_assign(&a.br1(mu, q, &a.br1(lam, p, s)));
        let mut res = sp.kpart(&f);
        res.sub_assign(&sp.kpart(&g));
        res.add_assign(&a.leib_k(lam, mu, &objs_t[0], &objs_t[1], &objs_t[2]));
        res.sub_assign(&a.leib_k(lam, mu, &objs_s[0], &objs_s[1], &objs_s[2]));
        let mut tuple = vec![c0.basis()[t[2]].clone(), c0.basis()[t[3]].clone()];
        tuple.insert(slot, format!("(0,{})", k.basis()[t[1]]));
        r.record("leibnizator-naturality", tuple, res);
        r
    }));

    let (c, ls) = ctx_lambdas(3);
    report.merge(check_tuples(&basis_tuples(&[r0, r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        r.record("leibnizator-coherence", names(&[c0; 4], t), leibnizator_coherence(a, &c, &ls, t));
        r
    }));
    report
}

/// Left path minus right path of the coherence hexagon, as `K`-parts.
fn leibnizator_coherence(a: &TwoAlg, c: &crate::corering::Ctx, ls: &[Poly], t: &[usize]) -> ModValue {
    let sp = &a.space;
    let c0 = sp.c0();
    let ob = |i: usize| ModValue::basis(c0, c, i);
    let (x, y, z, w) = (ob(t[0]), ob(t[1]), ob(t[2]), ob(t[3]));
    let (lam, mu, nu) = (&ls[0], &ls[1], &ls[2]);
    let mn = mu + nu;
    let ln = lam + nu;
    let lm = lam + mu;
    let lmn = &lm + nu;
    let b = |p: &Poly, u: &ModValue, v: &ModValue| a.br0(p, u, v);
    let lk = |p: &Poly, q: &Poly, u: &ModValue, v: &ModValue, s: &ModValue| a.leib_k(p, q, u, v, s);
    let bk = |p: &Poly, f: &ModValue, g: &ModValue| sp.kpart(&a.br1(p, f, g));

    let mut left = bk(lam, &sp.unit(&x), &a.leib_morphism(mu, nu, &y, &z, &w));
    left.add_assign(&lk(lam, &mn, &x, &b(mu, &y, &z), &w));
    left.add_assign(&lk(lam, nu, &x, &z, &b(mu, &y, &w)));
    left.add_assign(&bk(&lmn, &a.leib_morphism(lam, mu, &x, &y, &z), &sp.unit(&w)));
    left.add_assign(&bk(nu, &sp.unit(&z), &a.leib_morphism(lam, mu, &x, &y, &w)));

    let mut right = lk(lam, mu, &x, &y, &b(nu, &z, &w));
    right.add_assign(&bk(mu, &sp.unit(&y), &a.leib_morphism(lam, nu, &x, &z, &w)));
    right.add_assign(&lk(&lm, nu, &b(lam, &x, &y), &z, &w));
    right.add_assign(&lk(mu, &ln, &y, &b(lam, &x, &z), &w));
    right.add_assign(&lk(mu, nu, &y, &z, &b(lam, &x, &w)));

    left.sub_assign(&right);
    left
}

/// `(C0 ⊕ G1 ⇉ C0)` with the bracket determined by `ρ2` and
/// `L = ([x_λ[y_μ z]], −ρ3)`.
pub fn functor_t(a: &TwoTermAlg) -> Result<TwoAlg> {
    let r = a.verify();
    if !r.passed() {
        return Err(Error::VerificationFailed(format!(
            "2-term identities fail: {}",
            r.failed_identities().join(", ")
        )));
    }
    Ok(functor_t_unchecked(a))
}

/// [`functor_t`] without validating the input, for counterexamples.
pub fn functor_t_unchecked(a: &TwoTermAlg) -> TwoAlg {
    let space = TwoVectorSpace::from_complex(a.d()).expect("linear map");
    let bracket1 = morphism_bracket(&space, a);
    TwoAlg::raw(space, a.rho00().clone(), bracket1, a.rho3().scale(&crate::corering::rat(-1)))
        .expect("shapes")
}

/// `(K --t--> C0, ρ2, ρ3)` with `ρ2(x, h) = [1_x, h]`, `ρ2(h, x) = [h, 1_x]`
/// and `ρ3 = −pr2 L`.
pub fn functor_s(a: &TwoAlg) -> Result<TwoTermAlg> {
    let sp = &a.space;
    let (c0, k) = (sp.c0(), sp.k());
    let mut rho01 = SesqMap::new(vec![c0.clone(), k.clone()], k.clone(), 0);
    let mut rho10 = SesqMap::new(vec![k.clone(), c0.clone()], k.clone(), 0);
    let c = rho01.ctx().clone();
    let l = Poly::lambda(&c, 0);
    for t in rho01.tuples() {
        let x = sp.unit(&ModValue::basis(c0, &c, t[0]));
        let h = sp.arrow(&ModValue::basis(k, &c, t[1]));
        rho01.set(&t, sp.kpart(&a.br1(&l, &x, &h)))?;
        rho10.set(&[t[1], t[0]], sp.kpart(&a.br1(&l, &h, &x)))?;
    }
    TwoTermAlg::raw(
        sp.d().clone(),
        a.bracket0.clone(),
        rho01,
        rho10,
        a.leib.scale(&crate::corering::rat(-1)),
    )
}

#[cfg(test)]
mod tests;
