//! Leibniz conformal algebras, their representations and the cochain
//! complex with coefficients in a representation.

mod cochain;

pub use cochain::{
    coboundary, coboundary_with_max, find_coboundary_preimage, is_coboundary_of, is_cocycle,
    random_cochain, Bounds, Cochain, DEFAULT_MAX_DEGREE,
};

use num_traits::Zero;

use crate::confcore::{check_skew, expect_module, ConfModule, ModValue, Module, SesqMap};
use crate::corering::{Ctx, Poly, Rational, VarCtx};
use crate::error::{Error, Result};
use crate::verify::{check_tuples, CheckReport};

/// A `C[∂]`-module with a λ-bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizConfAlg {
    module: Module,
    bracket: SesqMap,
}

impl LeibnizConfAlg {
    /// Validating constructor.
    pub fn new(bracket: SesqMap) -> Result<Self> {
        let alg = LeibnizConfAlg::raw(bracket)?;
        let report = alg.verify();
        if report.passed() {
            Ok(alg)
        } else {
            Err(Error::VerificationFailed(format!(
                "Leibniz identity fails on {} tuple(s)",
                report.failures.len()
            )))
        }
    }

    /// Shape-checked but unverified, for counterexamples.
    pub fn raw(bracket: SesqMap) -> Result<Self> {
        check_endo(&bracket, 2)?;
        Ok(LeibnizConfAlg {
            module: bracket.target().clone(),
            bracket,
        })
    }

    /// Zero bracket on `module`.
    pub fn abelian(module: &Module) -> Self {
        LeibnizConfAlg {
            module: module.clone(),
            bracket: SesqMap::endo(module, 2),
        }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn bracket(&self) -> &SesqMap {
        &self.bracket
    }

    pub fn verify(&self) -> CheckReport {
        verify_leibniz(&self.bracket).expect("shape checked at construction")
    }

    pub fn is_skew(&self) -> bool {
        check_skew(&self.bracket)
    }
}

fn check_endo(map: &SesqMap, arity: usize) -> Result<()> {
    if map.arity() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: map.arity(),
        });
    }
    for s in map.sources() {
        expect_module(map.target(), s)?;
    }
    Ok(())
}

pub(crate) fn names(modules: &[&Module], tuple: &[usize]) -> Vec<String> {
    tuple
        .iter()
        .zip(modules)
        .map(|(&b, m)| m.basis()[b].clone())
        .collect()
}

pub(crate) fn lambdas(ctx: &Ctx) -> Vec<Poly> {
    (0..ctx.len()).map(|i| Poly::lambda(ctx, i)).collect()
}

/// Residual of `[x_λ[y_μ z]] − [[x_λ y]_{λ+μ} z] − [y_μ[x_λ z]]` on basis
/// elements, in the context `l1, l2`.
pub fn leibniz_residual(bracket: &SesqMap, t: &[usize]) -> ModValue {
    let g = bracket.target();
    let ctx = VarCtx::canonical(2);
    let l = lambdas(&ctx);
    let (x, y, z) = (
        ModValue::basis(g, &ctx, t[0]),
        ModValue::basis(g, &ctx, t[1]),
        ModValue::basis(g, &ctx, t[2]),
    );
    let b = |lam: &Poly, a: &ModValue, c: &ModValue| {
        bracket
            .eval(std::slice::from_ref(lam), &[a.clone(), c.clone()])
            .expect("shapes checked")
    };
    let lm = &l[0] + &l[1];
    let mut r = b(&l[0], &x, &b(&l[1], &y, &z));
    r.sub_assign(&b(&lm, &b(&l[0], &x, &y), &z));
    r.sub_assign(&b(&l[1], &y, &b(&l[0], &x, &z)));
    r
}

/// Checks the Leibniz conformal identity on every basis triple.
pub fn verify_leibniz(bracket: &SesqMap) -> Result<CheckReport> {
    check_endo(bracket, 2)?;
    let g = bracket.target().clone();
    let tuples = crate::confcore::basis_tuples(&[g.rank(); 3]);
    Ok(check_tuples(&tuples, |t| {
        let mut rep = CheckReport::default();
        rep.record("leibniz", names(&[&g, &g, &g], t), leibniz_residual(bracket, t));
        rep
    }))
}

/// Left and right λ-actions of an algebra on a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfRep {
    alg: LeibnizConfAlg,
    module: Module,
    left: SesqMap,
    right: SesqMap,
}

impl ConfRep {
    pub fn new(alg: &LeibnizConfAlg, left: SesqMap, right: SesqMap) -> Result<Self> {
        let rep = ConfRep::raw(alg, left, right)?;
        let report = rep.verify();
        if report.passed() {
            Ok(rep)
        } else {
            Err(Error::VerificationFailed(format!(
                "representation axioms fail on {} tuple(s)",
                report.failures.len()
            )))
        }
    }

    pub fn raw(alg: &LeibnizConfAlg, left: SesqMap, right: SesqMap) -> Result<Self> {
        let g = alg.module();
        let m = left.target().clone();
        if left.arity() != 2 || right.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: left.arity().max(right.arity()),
            });
        }
        expect_module(g, left.source(0))?;
        expect_module(&m, left.source(1))?;
        expect_module(&m, right.source(0))?;
        expect_module(g, right.source(1))?;
        expect_module(&m, right.target())?;
        Ok(ConfRep {
            alg: alg.clone(),
            module: m,
            left,
            right,
        })
    }

    /// Adjoint representation: both actions are the bracket.
    pub fn adjoint(alg: &LeibnizConfAlg) -> Self {
        ConfRep {
            alg: alg.clone(),
            module: alg.module().clone(),
            left: alg.bracket().clone(),
            right: alg.bracket().clone(),
        }
    }

    /// Zero actions on `module`.
    pub fn trivial(alg: &LeibnizConfAlg, module: &Module) -> Self {
        let g = alg.module().clone();
        ConfRep {
            alg: alg.clone(),
            module: module.clone(),
            left: SesqMap::new(vec![g.clone(), module.clone()], module.clone(), 0),
            right: SesqMap::new(vec![module.clone(), g], module.clone(), 0),
        }
    }

    pub fn alg(&self) -> &LeibnizConfAlg {
        &self.alg
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn left(&self) -> &SesqMap {
        &self.left
    }

    pub fn right(&self) -> &SesqMap {
        &self.right
    }

    pub fn verify(&self) -> CheckReport {
        rep_report(&self.alg, &self.left, &self.right)
    }
}

/// Checks the representation axioms: the four `∂`-compatibility rules on
/// basis pairs and the three mixed identities on basis triples.
pub fn verify_rep(alg: &LeibnizConfAlg, left: &SesqMap, right: &SesqMap) -> Result<CheckReport> {
    ConfRep::raw(alg, left.clone(), right.clone()).map(|r| r.verify())
}

fn rep_report(alg: &LeibnizConfAlg, left: &SesqMap, right: &SesqMap) -> CheckReport {
    let g = alg.module().clone();
    let m = left.target().clone();
    let br = alg.bracket();
    let mut report = CheckReport::default();

    // ∂-compatibility, in the context `l1`
    let c1 = VarCtx::canonical(1);
    let l = Poly::lambda(&c1, 0);
    let d = Poly::d(&c1);
    let dl = &d + &l;
    let neg_l = -&l;
    let pairs = crate::confcore::basis_tuples(&[g.rank(), m.rank()]);
    report.merge(check_tuples(&pairs, |t| {
        let mut r = CheckReport::default();
        let x = ModValue::basis(&g, &c1, t[0]);
        let v = ModValue::basis(&m, &c1, t[1]);
        let dx = x.mul_poly(&d);
        let dv = v.mul_poly(&d);
        let ev = |map: &SesqMap, a: &ModValue, b: &ModValue| {
            map.eval(std::slice::from_ref(&l), &[a.clone(), b.clone()])
                .expect("shapes checked")
        };
        let xv = ev(left, &x, &v);
        let vx = ev(right, &v, &x);
        let tn = names(&[&g, &m], t);
        let rn = vec![tn[1].clone(), tn[0].clone()];
        let mut res = ev(left, &dx, &v);
        res.sub_assign(&xv.mul_poly(&neg_l));
        r.record("rep-left-dx", tn.clone(), res);
        let mut res = ev(left, &x, &dv);
        res.sub_assign(&xv.mul_poly(&dl));
        r.record("rep-left-dv", tn, res);
        let mut res = ev(right, &dv, &x);
        res.sub_assign(&vx.mul_poly(&neg_l));
        r.record("rep-right-dv", rn.clone(), res);
        let mut res = ev(right, &v, &dx);
        res.sub_assign(&vx.mul_poly(&dl));
        r.record("rep-right-dx", rn, res);
        r
    }));

    let c2 = VarCtx::canonical(2);
    let l2 = lambdas(&c2);
    let lm = &l2[0] + &l2[1];
    let triples = crate::confcore::basis_tuples(&[g.rank(), g.rank(), m.rank()]);
    report.merge(check_tuples(&triples, |t| {
        let mut r = CheckReport::default();
        let x = ModValue::basis(&g, &c2, t[0]);
        let y = ModValue::basis(&g, &c2, t[1]);
        let v = ModValue::basis(&m, &c2, t[2]);
        let ev = |map: &SesqMap, lam: &Poly, a: &ModValue, b: &ModValue| {
            map.eval(std::slice::from_ref(lam), &[a.clone(), b.clone()])
                .expect("shapes checked")
        };
        let (lam, mu) = (&l2[0], &l2[1]);
        // x_λ(y_μ v) = [x_λ y]_{λ+μ} v + y_μ(x_λ v)
        let mut res = ev(left, lam, &x, &ev(left, mu, &y, &v));
        res.sub_assign(&ev(left, &lm, &ev(br, lam, &x, &y), &v));
        res.sub_assign(&ev(left, mu, &y, &ev(left, lam, &x, &v)));
        let n = names(&[&g, &g, &m], t);
        r.record("rep-xyv", n.clone(), res);
        // x_λ(v_μ y) = (x_λ v)_{λ+μ} y + v_μ[x_λ y]
        let mut res = ev(left, lam, &x, &ev(right, mu, &v, &y));
        res.sub_assign(&ev(right, &lm, &ev(left, lam, &x, &v), &y));
        res.sub_assign(&ev(right, mu, &v, &ev(br, lam, &x, &y)));
        r.record("rep-xvy", vec![n[0].clone(), n[2].clone(), n[1].clone()], res);
        // v_λ[x_μ y] = (v_λ x)_{λ+μ} y + x_μ(v_λ y)
        let mut res = ev(right, lam, &v, &ev(br, mu, &x, &y));
        res.sub_assign(&ev(right, &lm, &ev(right, lam, &v, &x), &y));
        res.sub_assign(&ev(left, mu, &x, &ev(right, lam, &v, &y)));
        r.record("rep-vxy", vec![n[2].clone(), n[0].clone(), n[1].clone()], res);
        r
    }));
    report
}

/// `g ⋉ M` for a skew-symmetric `g` and a left action: the bracket
/// `{(x,u)_λ(y,v)} = ([x_λ y], x_λ v)`. The result is not verified.
pub fn semidirect(alg: &LeibnizConfAlg, left: &SesqMap) -> Result<LeibnizConfAlg> {
    if !alg.is_skew() {
        return Err(Error::NotSkew);
    }
    let g = alg.module();
    if left.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: left.arity(),
        });
    }
    expect_module(g, left.source(0))?;
    let m = left.target().clone();
    expect_module(&m, left.source(1))?;
    let name = format!("{}+{}", g.name(), m.name());
    let sum = ConfModule::direct_sum(&name, g, &m)?;
    let mut br = SesqMap::endo(&sum, 2);
    let r = g.rank();
    let embed = |v: &ModValue, offset: usize| {
        let mut coeffs: Vec<Poly> = (0..sum.rank()).map(|_| Poly::zero(v.ctx())).collect();
        for (i, c) in v.nonzero() {
            coeffs[offset + i] = c.clone();
        }
        ModValue::from_coeffs(&sum, v.ctx(), coeffs).expect("rank")
    };
    for (t, v) in alg.bracket().entries() {
        br.set(t, embed(v, 0))?;
    }
    for (t, v) in left.entries() {
        br.set(&[t[0], r + t[1]], embed(v, r))?;
    }
    LeibnizConfAlg::raw(br)
}

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
pub type StructureConstants = Vec<Vec<Vec<Rational>>>;

/// Current algebra: the constant λ-bracket `[a_λ b] = [a, b]` on the free
/// `C[∂]`-module over the basis of a finite-dimensional algebra.
pub fn current_algebra<S: AsRef<str>>(
    name: &str,
    basis: &[S],
    consts: &StructureConstants,
) -> Result<LeibnizConfAlg> {
    let g = ConfModule::new(name, basis)?;
    let n = g.rank();
    if consts.len() != n || consts.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
        return Err(Error::Malformed(format!(
            "structure constants must be {n}×{n}×{n}"
        )));
    }
    let mut br = SesqMap::endo(&g, 2);
    let ctx = br.ctx().clone();
    for (i, row) in consts.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let coeffs = entry
                .iter()
                .map(|c| Poly::constant(&ctx, c.clone()))
                .collect();
            br.set(&[i, j], ModValue::from_coeffs(&g, &ctx, coeffs)?)?;
        }
    }
    LeibnizConfAlg::raw(br)
}

/// The left Leibniz identity `[a,[b,c]] = [[a,b],c] + [b,[a,c]]` checked
/// directly on scalar structure constants.
pub fn fd_leibniz_holds(consts: &StructureConstants) -> bool {
    let n = consts.len();
    let mul = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in consts[i][j].iter().enumerate() {
                    out[k] += a * b * c;
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = num_traits::One::one();
        v
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ea, eb, ec) = (e(a), e(b), e(c));
                let lhs = mul(&ea, &mul(&eb, &ec));
                let r1 = mul(&mul(&ea, &eb), &ec);
                let r2 = mul(&eb, &mul(&ea, &ec));
                if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (x, y))| *l != x + y) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests;
