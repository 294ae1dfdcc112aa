//! Two-term homotopy Leibniz conformal algebras `G1 --d--> G0`, their
//! homomorphisms, and the skeletal and strict special cases.

mod crossed;
mod hom;

pub use crossed::{crossed_to_strict, strict_sum_identities, strict_to_crossed, verify_crossed, CrossedModule};
pub use hom::{compose_hom, gauge_transform, id_hom, verify_hom, TwoTermHom, HOM_CONDITIONS};

use crate::confcore::{apply_linear, expect_module, ConfModule, ModValue, Module, SesqMap};
use crate::corering::{Ctx, Poly, VarCtx};
use crate::error::{Error, Result};
use crate::leibcoh::{
    find_coboundary_preimage, is_cocycle, lambdas, names, Bounds, Cochain, ConfRep, LeibnizConfAlg,
};
use crate::linfty::{Flavor, HomotopyOps};
use crate::verify::{check_tuples, CheckReport};

/// `(G1 --d--> G0, ρ2, ρ3)`. The piece `ρ2 : G1 ⊗ G1 → G2` does not exist,
/// so condition (i) holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermAlg {
    g0: Module,
    g1: Module,
    d: SesqMap,
    rho00: SesqMap,
    rho01: SesqMap,
    rho10: SesqMap,
    rho3: SesqMap,
}

fn expect_shape(map: &SesqMap, sources: &[&Module], target: &Module) -> Result<()> {
    if map.arity() != sources.len() {
        return Err(Error::ArityMismatch {
            expected: sources.len(),
            found: map.arity(),
        });
    }
    for (s, want) in map.sources().iter().zip(sources) {
        expect_module(want, s)?;
    }
    expect_module(target, map.target())
}

impl TwoTermAlg {
    /// Shape-checked, unverified.
    pub fn raw(d: SesqMap, rho00: SesqMap, rho01: SesqMap, rho10: SesqMap, rho3: SesqMap) -> Result<Self> {
        let g0 = d.target().clone();
        let g1 = d.source(0).clone();
        expect_shape(&d, &[&g1], &g0)?;
        expect_shape(&rho00, &[&g0, &g0], &g0)?;
        expect_shape(&rho01, &[&g0, &g1], &g1)?;
        expect_shape(&rho10, &[&g1, &g0], &g1)?;
        expect_shape(&rho3, &[&g0, &g0, &g0], &g1)?;
        Ok(TwoTermAlg {
            g0,
            g1,
            d,
            rho00,
            rho01,
            rho10,
            rho3,
        })
    }

    /// Validating constructor.
    pub fn new(d: SesqMap, rho00: SesqMap, rho01: SesqMap, rho10: SesqMap, rho3: SesqMap) -> Result<Self> {
        let a = TwoTermAlg::raw(d, rho00, rho01, rho10, rho3)?;
        let r = a.verify();
        if r.passed() {
            Ok(a)
        } else {
            Err(Error::VerificationFailed(format!(
                "2-term identities fail: {}",
                r.failed_identities().join(", ")
            )))
        }
    }

    /// All structure maps zero.
    pub fn zero(g0: &Module, g1: &Module) -> Self {
        TwoTermAlg {
            g0: g0.clone(),
            g1: g1.clone(),
            d: SesqMap::new(vec![g1.clone()], g0.clone(), 0),
            rho00: SesqMap::endo(g0, 2),
            rho01: SesqMap::new(vec![g0.clone(), g1.clone()], g1.clone(), 0),
            rho10: SesqMap::new(vec![g1.clone(), g0.clone()], g1.clone(), 0),
            rho3: SesqMap::new(vec![g0.clone(); 3], g1.clone(), 0),
        }
    }

    pub fn g0(&self) -> &Module {
        &self.g0
    }
    pub fn g1(&self) -> &Module {
        &self.g1
    }
    pub fn d(&self) -> &SesqMap {
        &self.d
    }
    /// `ρ2` on `G0 ⊗ G0`.
    pub fn rho00(&self) -> &SesqMap {
        &self.rho00
    }
    /// `ρ2` on `G0 ⊗ G1`.
    pub fn rho01(&self) -> &SesqMap {
        &self.rho01
    }
    /// `ρ2` on `G1 ⊗ G0`.
    pub fn rho10(&self) -> &SesqMap {
        &self.rho10
    }
    pub fn rho3(&self) -> &SesqMap {
        &self.rho3
    }

    pub fn is_skeletal(&self) -> bool {
        self.d.is_zero()
    }

    pub fn is_strict(&self) -> bool {
        self.rho3.is_zero()
    }

    /// Same data with `ρ3` replaced.
    pub fn with_rho3(&self, rho3: SesqMap) -> Result<Self> {
        expect_shape(&rho3, &[&self.g0, &self.g0, &self.g0], &self.g1)?;
        Ok(TwoTermAlg {
            rho3,
            ..self.clone()
        })
    }

    pub fn verify(&self) -> CheckReport {
        verify_two_term(self)
    }

    /// The algebra `G0` (unverified).
    pub fn base_algebra(&self) -> LeibnizConfAlg {
        LeibnizConfAlg::raw(self.rho00.clone()).expect("shape checked")
    }

    /// `G1` with the actions of `G0` (unverified).
    pub fn module_rep(&self) -> ConfRep {
        ConfRep::raw(&self.base_algebra(), self.rho01.clone(), self.rho10.clone()).expect("shape checked")
    }

    /// The graded module `G0 ⊕ G1` (degrees 0 and 1) and its operations
    /// `ρ1 = d`, `ρ2`, `ρ3`.
    pub fn to_ops(&self) -> HomotopyOps {
        let basis: Vec<&String> = self.g0.basis().iter().chain(self.g1.basis()).collect();
        let degrees: Vec<i32> = (0..basis.len())
            .map(|i| if i < self.g0.rank() { 0 } else { 1 })
            .collect();
        let name = format!("{}+{}", self.g0.name(), self.g1.name());
        let g = ConfModule::graded(&name, &basis, &degrees).expect("distinct basis names");
        let r0 = self.g0.rank();
        let lift = |v: &ModValue, offset: usize| {
            let mut coeffs = vec![Poly::zero(v.ctx()); g.rank()];
            for (i, p) in v.nonzero() {
                coeffs[offset + i] = p.clone();
            }
            ModValue::from_coeffs(&g, v.ctx(), coeffs).expect("rank")
        };
        let place = |map: &SesqMap, slots: &[usize], out_offset: usize, degree: i32| {
            let mut out = SesqMap::new(vec![g.clone(); map.arity()], g.clone(), degree);
            for (t, v) in map.entries() {
                let t: Vec<usize> = t.iter().zip(slots).map(|(b, o)| b + o).collect();
                out.add_to(&t, &lift(v, out_offset)).expect("homogeneous");
            }
            out
        };
        let rho1 = place(&self.d, &[r0], 0, -1);
        let mut rho2 = place(&self.rho00, &[0, 0], 0, 0);
        rho2 = rho2.try_add(&place(&self.rho01, &[0, r0], r0, 0)).expect("shape");
        rho2 = rho2.try_add(&place(&self.rho10, &[r0, 0], r0, 0)).expect("shape");
        let rho3 = place(&self.rho3, &[0, 0, 0], r0, 1);
        let mut ops = HomotopyOps::new(Flavor::Unshifted, &g);
        for op in [rho1, rho2, rho3] {
            ops.set(op).expect("degrees match flavor");
        }
        ops
    }
}

/// Evaluation helpers on basis values in one context.
struct Ev<'a> {
    ctx: &'a Ctx,
}

impl Ev<'_> {
    fn b(&self, m: &Module, i: usize) -> ModValue {
        ModValue::basis(m, self.ctx, i)
    }
    fn two(&self, f: &SesqMap, l: &Poly, a: &ModValue, b: &ModValue) -> ModValue {
        f.eval(std::slice::from_ref(l), &[a.clone(), b.clone()]).expect("shapes checked")
    }
    fn three(&self, f: &SesqMap, l: &Poly, m: &Poly, a: &ModValue, b: &ModValue, c: &ModValue) -> ModValue {
        f.eval(&[l.clone(), m.clone()], &[a.clone(), b.clone(), c.clone()])
            .expect("shapes checked")
    }
    fn lin(&self, f: &SesqMap, a: &ModValue) -> ModValue {
        apply_linear(f, a).expect("shapes checked")
    }
}

/// Condition ids `ii` … `ix` in the order they are checked.
pub const CONDITIONS: [&str; 8] = ["ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"];

/// Checks conditions (ii)–(ix) on basis tuples.
pub fn verify_two_term(a: &TwoTermAlg) -> CheckReport {
    let (g0, g1) = (&a.g0, &a.g1);
    let (r0, r1) = (g0.rank(), g1.rank());
    let mut report = CheckReport::default();
    let tuples = |shape: &[usize]| crate::confcore::basis_tuples(shape);

    let c1 = VarCtx::canonical(1);
    let l1 = Poly::lambda(&c1, 0);
    let e = Ev { ctx: &c1 };
    // (ii) d ρ2(x,u) = ρ2(x,du); (iii) d ρ2(u,x) = ρ2(du,x)
    report.merge(check_tuples(&tuples(&[r0, r1]), |t| {
        let mut r = CheckReport::default();
        let (x, u) = (e.b(g0, t[0]), e.b(g1, t[1]));
        let du = e.lin(&a.d, &u);
        let mut res = e.lin(&a.d, &e.two(&a.rho01, &l1, &x, &u));
        res.sub_assign(&e.two(&a.rho00, &l1, &x, &du));
        r.record("ii", names(&[g0, g1], t), res);
        let mut res = e.lin(&a.d, &e.two(&a.rho10, &l1, &u, &x));
        res.sub_assign(&e.two(&a.rho00, &l1, &du, &x));
        r.record("iii", names(&[g1, g0], &[t[1], t[0]]), res);
        r
    }));
    // (iv) ρ2(du,v) = ρ2(u,dv)
    report.merge(check_tuples(&tuples(&[r1, r1]), |t| {
        let mut r = CheckReport::default();
        let (u, v) = (e.b(g1, t[0]), e.b(g1, t[1]));
        let mut res = e.two(&a.rho01, &l1, &e.lin(&a.d, &u), &v);
        res.sub_assign(&e.two(&a.rho10, &l1, &u, &e.lin(&a.d, &v)));
        r.record("iv", names(&[g1, g1], t), res);
        r
    }));

    let c2 = VarCtx::canonical(2);
    let l2 = lambdas(&c2);
    let (lam, mu) = (&l2[0], &l2[1]);
    let lm = lam + mu;
    let e = Ev { ctx: &c2 };
    // Leibniz expression p(a, q(b, c)) − r(s(a, b), c) − t(b, w(a, c))
    let leib = |maps: [&SesqMap; 6], a_: &ModValue, b_: &ModValue, c_: &ModValue| {
        let mut v = e.two(maps[0], lam, a_, &e.two(maps[1], mu, b_, c_));
        v.sub_assign(&e.two(maps[2], &lm, &e.two(maps[3], lam, a_, b_), c_));
        v.sub_assign(&e.two(maps[4], mu, b_, &e.two(maps[5], lam, a_, c_)));
        v
    };
    let (p00, p01, p10) = (&a.rho00, &a.rho01, &a.rho10);
    report.merge(check_tuples(&tuples(&[r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        let (x, y, z) = (e.b(g0, t[0]), e.b(g0, t[1]), e.b(g0, t[2]));
        let mut res = e.lin(&a.d, &e.three(&a.rho3, lam, mu, &x, &y, &z));
        res.sub_assign(&leib([p00; 6], &x, &y, &z));
        r.record("v", names(&[g0, g0, g0], t), res);
        r
    }));
    report.merge(check_tuples(&tuples(&[r0, r0, r1]), |t| {
        let mut r = CheckReport::default();
        let (x, y, v) = (e.b(g0, t[0]), e.b(g0, t[1]), e.b(g1, t[2]));
        let dv = e.lin(&a.d, &v);
        // (vi) ρ3(x,y,dv)
        let mut res = e.three(&a.rho3, lam, mu, &x, &y, &dv);
        res.sub_assign(&leib([p01, p01, p01, p00, p01, p01], &x, &y, &v));
        r.record("vi", names(&[g0, g0, g1], t), res);
        // (vii) ρ3(x,dv,y)
        let mut res = e.three(&a.rho3, lam, mu, &x, &dv, &y);
        res.sub_assign(&leib([p01, p10, p10, p01, p10, p00], &x, &v, &y));
        r.record("vii", names(&[g0, g1, g0], &[t[0], t[2], t[1]]), res);
        // (viii) ρ3(dv,x,y)
        let mut res = e.three(&a.rho3, lam, mu, &dv, &x, &y);
        res.sub_assign(&leib([p10, p00, p10, p10, p01, p10], &v, &x, &y));
        r.record("viii", names(&[g1, g0, g0], &[t[2], t[0], t[1]]), res);
        r
    }));

    let c3 = VarCtx::canonical(3);
    let l3 = lambdas(&c3);
    let e = Ev { ctx: &c3 };
    report.merge(check_tuples(&tuples(&[r0, r0, r0, r0]), |t| {
        let mut r = CheckReport::default();
        r.record("ix", names(&[g0; 4], t), condition_ix(a, &e, &l3, t));
        r
    }));
    report
}

fn condition_ix(a: &TwoTermAlg, e: &Ev, l: &[Poly], t: &[usize]) -> ModValue {
    let g0 = &a.g0;
    let (x, y, z, w) = (e.b(g0, t[0]), e.b(g0, t[1]), e.b(g0, t[2]), e.b(g0, t[3]));
    let (lam, mu, nu) = (&l[0], &l[1], &l[2]);
    let r2 = |p: &Poly, u: &ModValue, v: &ModValue| {
        if u.module() == &a.g1 {
            e.two(&a.rho10, p, u, v)
        } else if v.module() == &a.g1 {
            e.two(&a.rho01, p, u, v)
        } else {
            e.two(&a.rho00, p, u, v)
        }
    };
    let r3 = |p: &Poly, q: &Poly, u: &ModValue, v: &ModValue, s: &ModValue| e.three(&a.rho3, p, q, u, v, s);
    let lm = lam + mu;
    let ln = lam + nu;
    let mn = mu + nu;
    let lmn = &lm + nu;
    let mut res = r2(lam, &x, &r3(mu, nu, &y, &z, &w));
    res.sub_assign(&r2(mu, &y, &r3(lam, nu, &x, &z, &w)));
    res.add_assign(&r2(nu, &z, &r3(lam, mu, &x, &y, &w)));
    res.add_assign(&r2(&lmn, &r3(lam, mu, &x, &y, &z), &w));
    res.sub_assign(&r3(&lm, nu, &r2(lam, &x, &y), &z, &w));
    res.sub_assign(&r3(mu, &ln, &y, &r2(lam, &x, &z), &w));
    res.sub_assign(&r3(mu, nu, &y, &z, &r2(lam, &x, &w)));
    res.add_assign(&r3(lam, &mn, &x, &r2(mu, &y, &z), &w));
    res.add_assign(&r3(lam, nu, &x, &z, &r2(mu, &y, &w)));
    res.sub_assign(&r3(lam, mu, &x, &y, &r2(nu, &z, &w)));
    res
}

/// Reads a two-term algebra back from graded operations on `G0 ⊕ G1`
/// (degrees 0 and 1, basis of `G0` first).
pub fn from_ops(ops: &HomotopyOps, g0: &Module, g1: &Module) -> Result<TwoTermAlg> {
    if ops.flavor() != Flavor::Unshifted {
        return Err(Error::WrongFlavor {
            expected: "unshifted",
        });
    }
    let g = ops.module();
    let r0 = g0.rank();
    if g.rank() != r0 + g1.rank() || g.degrees().iter().enumerate().any(|(i, &d)| d != i32::from(i >= r0)) {
        return Err(Error::Malformed("expected G0 in degree 0 followed by G1 in degree 1".into()));
    }
    if ops.max_arity() > 3 {
        return Err(Error::Malformed("operations of arity ≥ 4 are not two-term".into()));
    }
    let split = |v: &ModValue, m: &Module, offset: usize| {
        let coeffs: Vec<Poly> = (0..m.rank()).map(|i| v.coeff(offset + i).clone()).collect();
        ModValue::from_coeffs(m, v.ctx(), coeffs).expect("rank")
    };
    let mut out = TwoTermAlg::zero(g0, g1);
    let slot = |b: usize| if b < r0 { (0, b) } else { (1, b - r0) };
    for (&k, op) in ops.ops() {
        for (t, v) in op.entries() {
            let parts: Vec<(usize, usize)> = t.iter().map(|&b| slot(b)).collect();
            let kinds: Vec<usize> = parts.iter().map(|p| p.0).collect();
            let idx: Vec<usize> = parts.iter().map(|p| p.1).collect();
            let target = match (k, kinds.as_slice()) {
                (1, [1]) => &mut out.d,
                (2, [0, 0]) => &mut out.rho00,
                (2, [0, 1]) => &mut out.rho01,
                (2, [1, 0]) => &mut out.rho10,
                (3, [0, 0, 0]) => &mut out.rho3,
                _ => unreachable!("excluded by homogeneity"),
            };
            let (m, off) = if target.target() == g0 { (g0, 0) } else { (g1, r0) };
            target.set(&idx, split(v, m, off))?;
        }
    }
    Ok(out)
}

/// `(G0, G1, ρ3)` from a skeletal algebra: the algebra, the representation
/// and the 3-cocycle.
pub fn skeletal_to_triple(a: &TwoTermAlg) -> Result<(LeibnizConfAlg, ConfRep, Cochain)> {
    if !a.is_skeletal() {
        return Err(Error::NotSkeletal);
    }
    let alg = LeibnizConfAlg::new(a.rho00.clone())?;
    let rep = ConfRep::new(&alg, a.rho01.clone(), a.rho10.clone())?;
    let theta = Cochain::Map(a.rho3.clone());
    if !is_cocycle(&rep, &theta)? {
        return Err(Error::NotCocycle);
    }
    Ok((alg, rep, theta))
}

/// The skeletal algebra `(M --0--> g, ρ2, θ)`.
pub fn triple_to_skeletal(rep: &ConfRep, theta: &Cochain) -> Result<TwoTermAlg> {
    let map = match theta {
        Cochain::Map(m) if m.arity() == 3 => m.clone(),
        _ => {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: theta.degree(),
            })
        }
    };
    if !is_cocycle(rep, theta)? {
        return Err(Error::NotCocycle);
    }
    let g = rep.alg().module();
    let m = rep.module();
    TwoTermAlg::raw(
        SesqMap::new(vec![m.clone()], g.clone(), 0),
        rep.alg().bracket().clone(),
        rep.left().clone(),
        rep.right().clone(),
        map,
    )
}

/// Outcome of a skeletal equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    pub reason: Option<String>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict {
            equivalent: true,
            reason: None,
        }
    }
    fn no(reason: impl Into<String>) -> Self {
        Verdict {
            equivalent: false,
            reason: Some(reason.into()),
        }
    }
}

fn same_skeleton(a: &TwoTermAlg, b: &TwoTermAlg) -> Result<Option<Verdict>> {
    if !a.is_skeletal() || !b.is_skeletal() {
        return Err(Error::NotSkeletal);
    }
    if a.g0 != b.g0 || a.g1 != b.g1 {
        return Ok(Some(Verdict::no("different underlying complexes")));
    }
    if a.rho00 != b.rho00 || a.rho01 != b.rho01 || a.rho10 != b.rho10 {
        return Ok(Some(Verdict::no("ρ2 differs")));
    }
    Ok(None)
}

/// Whether `ρ3' = ρ3 + δτ` exactly, for a 2-cochain `τ : G0 ⊗ G0 → G1`.
pub fn skeletal_equivalent(a: &TwoTermAlg, b: &TwoTermAlg, tau: &Cochain) -> Result<Verdict> {
    if let Some(v) = same_skeleton(a, b)? {
        return Ok(v);
    }
    let rep = a.module_rep();
    let want = Cochain::Map(b.rho3.try_sub(&a.rho3)?);
    if crate::leibcoh::is_coboundary_of(&rep, &want, tau)? {
        Ok(Verdict::yes())
    } else {
        Ok(Verdict::no("ρ3' − ρ3 ≠ δτ"))
    }
}

/// Searches for `τ` within `bounds` with `ρ3' = ρ3 + δτ`. `None` means no
/// witness of bounded degree, not that none exists.
pub fn find_equivalence(a: &TwoTermAlg, b: &TwoTermAlg, bounds: Bounds) -> Result<Option<Cochain>> {
    if same_skeleton(a, b)?.is_some() {
        return Ok(None);
    }
    let rep = a.module_rep();
    let diff = Cochain::Map(b.rho3.try_sub(&a.rho3)?);
    find_coboundary_preimage(&rep, &diff, bounds)
}

#[cfg(test)]
mod tests;
