use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use super::{lambdas, ConfRep};
use crate::confcore::{expect_module, ModValue, Module, SesqMap};
use crate::corering::{Monomial, Poly, Rational, VarCtx};
use crate::error::{Error, Result};
use crate::{linalg, par, random};

/// Largest cochain degree accepted by [`coboundary`].
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// An `n`-cochain. Degree 0 stores the representative of `M/∂M` with all
/// `∂`-exponents zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cochain {
    Zero(ModValue),
    Map(SesqMap),
}

impl Cochain {
    /// A degree-0 cochain; the value is reduced modulo `∂M`.
    pub fn from_value(v: &ModValue) -> Result<Self> {
        if !v.ctx().is_empty() {
            return Err(Error::InvalidContext(
                "0-cochains have ∂-only coefficients".into(),
            ));
        }
        Ok(Cochain::Zero(v.constant_part()))
    }

    pub fn zero(rep: &ConfRep, n: usize) -> Self {
        if n == 0 {
            Cochain::Zero(ModValue::zero(rep.module(), &VarCtx::canonical(0)))
        } else {
            Cochain::Map(SesqMap::new(
                vec![rep.alg().module().clone(); n],
                rep.module().clone(),
                0,
            ))
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Cochain::Zero(_) => 0,
            Cochain::Map(m) => m.arity(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Cochain::Zero(v) => v.is_zero(),
            Cochain::Map(m) => m.is_zero(),
        }
    }

    pub fn as_map(&self) -> Option<&SesqMap> {
        match self {
            Cochain::Map(m) => Some(m),
            Cochain::Zero(_) => None,
        }
    }

    pub fn try_add(&self, other: &Cochain) -> Result<Cochain> {
        match (self, other) {
            (Cochain::Zero(a), Cochain::Zero(b)) => Ok(Cochain::Zero(a.try_add(b)?)),
            (Cochain::Map(a), Cochain::Map(b)) => Ok(Cochain::Map(a.try_add(b)?)),
            _ => Err(Error::ArityMismatch {
                expected: self.degree(),
                found: other.degree(),
            }),
        }
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        match self {
            Cochain::Zero(v) => Cochain::Zero(v.scale(c)),
            Cochain::Map(m) => Cochain::Map(m.scale(c)),
        }
    }

    fn check(&self, rep: &ConfRep) -> Result<()> {
        match self {
            Cochain::Zero(v) => {
                expect_module(rep.module(), v.module())?;
                if v.coeffs().iter().any(|c| c.d_degree().unwrap_or(0) > 0) || !v.ctx().is_empty() {
                    return Err(Error::Malformed(
                        "0-cochain representative must be ∂-free".into(),
                    ));
                }
            }
            Cochain::Map(m) => {
                expect_module(rep.module(), m.target())?;
                for s in m.sources() {
                    expect_module(rep.alg().module(), s)?;
                }
            }
        }
        Ok(())
    }
}

/// `δ` with the default degree cap.
pub fn coboundary(rep: &ConfRep, phi: &Cochain) -> Result<Cochain> {
    coboundary_with_max(rep, phi, DEFAULT_MAX_DEGREE)
}

pub fn coboundary_with_max(rep: &ConfRep, phi: &Cochain, max: usize) -> Result<Cochain> {
    phi.check(rep)?;
    if phi.degree() > max {
        return Err(Error::DegreeOverflow {
            degree: phi.degree(),
            max,
        });
    }
    Ok(Cochain::Map(match phi {
        Cochain::Zero(v) => delta0(rep, v),
        Cochain::Map(m) => delta_map(rep, m),
    }))
}

// δ(v)(x) = −(v_λ x)|_{λ=0}
fn delta0(rep: &ConfRep, v: &ModValue) -> SesqMap {
    let g = rep.alg().module();
    let mut out = SesqMap::new(vec![g.clone()], rep.module().clone(), 0);
    let ctx = out.ctx().clone();
    let zero = Poly::zero(&ctx);
    for x in 0..g.rank() {
        let w = rep
            .right()
            .eval(std::slice::from_ref(&zero), &[v.clone(), ModValue::basis(g, &ctx, x)])
            .expect("shapes checked");
        out.set(&[x], w.neg()).expect("shape");
    }
    out
}

fn delta_map(rep: &ConfRep, phi: &SesqMap) -> SesqMap {
    let n = phi.arity();
    let g = rep.alg().module().clone();
    let m = rep.module().clone();
    let bracket = rep.alg().bracket();
    let mut out = SesqMap::new(vec![g.clone(); n + 1], m.clone(), 0);
    let ctx = out.ctx().clone();
    let l = lambdas(&ctx);
    let total = l.iter().fold(Poly::zero(&ctx), |acc, x| &acc + x);
    let tuples = out.tuples();
    let values = par::map(&tuples, |t| {
        let x: Vec<ModValue> = t.iter().map(|&b| ModValue::basis(&g, &ctx, b)).collect();
        let mut acc = ModValue::zero(&m, &ctx);
        let ev = |map: &SesqMap, lam: &[Poly], args: &[ModValue]| {
            map.eval(lam, args).expect("shapes checked")
        };
        for i in 0..n {
            let args: Vec<ModValue> = (0..=n).filter(|&k| k != i).map(|k| x[k].clone()).collect();
            let lam: Vec<Poly> = (0..n).filter(|&k| k != i).map(|k| l[k].clone()).collect();
            let inner = ev(phi, &lam, &args);
            if inner.is_zero() {
                continue;
            }
            let term = ev(rep.left(), std::slice::from_ref(&l[i]), &[x[i].clone(), inner]);
            if i % 2 == 0 {
                acc.add_assign(&term);
            } else {
                acc.sub_assign(&term);
            }
        }
        let inner = ev(phi, &l[..n - 1], &x[..n]);
        if !inner.is_zero() {
            let term = ev(
                rep.right(),
                std::slice::from_ref(&total),
                &[inner, x[n].clone()],
            );
            if n.is_multiple_of(2) {
                acc.sub_assign(&term);
            } else {
                acc.add_assign(&term);
            }
        }
        for i in 0..n {
            for j in i + 1..=n {
                let br = ev(bracket, std::slice::from_ref(&l[i]), &[x[i].clone(), x[j].clone()]);
                if br.is_zero() {
                    continue;
                }
                let args: Vec<ModValue> = (0..=n)
                    .filter(|&k| k != i)
                    .map(|k| if k == j { br.clone() } else { x[k].clone() })
                    .collect();
                let lam: Vec<Poly> = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| if k == j { &l[i] + &l[j] } else { l[k].clone() })
                    .collect();
                let term = ev(phi, &lam, &args);
                // (−1)^i with 1-based i
                if i % 2 == 0 {
                    acc.sub_assign(&term);
                } else {
                    acc.add_assign(&term);
                }
            }
        }
        acc
    });
    for (t, v) in tuples.iter().zip(values) {
        out.set(t, v).expect("shape");
    }
    out
}

pub fn is_cocycle(rep: &ConfRep, phi: &Cochain) -> Result<bool> {
    Ok(coboundary(rep, phi)?.is_zero())
}

/// Whether `ψ = δτ` exactly.
pub fn is_coboundary_of(rep: &ConfRep, psi: &Cochain, tau: &Cochain) -> Result<bool> {
    if psi.degree() != tau.degree() + 1 {
        return Ok(false);
    }
    Ok(&coboundary(rep, tau)? == psi)
}

/// Search box for [`find_coboundary_preimage`]: `∂`-degree and total
/// λ-degree of the unknown table coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_ddeg: i64,
    pub max_ldeg: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_ddeg: 2,
            max_ldeg: 2,
        }
    }
}

type Coords = BTreeMap<(Vec<usize>, usize, Monomial), Rational>;

fn coords(map: &SesqMap) -> Coords {
    let mut out = Coords::new();
    for (t, v) in map.entries() {
        for (c, p) in v.nonzero() {
            for (mono, q) in p.terms() {
                out.insert((t.clone(), c, mono.clone()), q.clone());
            }
        }
    }
    out
}

/// Looks for `τ` with `δτ = ψ` among cochains whose coefficients fit in
/// `bounds`. `None` means no solution inside the box.
pub fn find_coboundary_preimage(
    rep: &ConfRep,
    psi: &Cochain,
    bounds: Bounds,
) -> Result<Option<Cochain>> {
    if bounds.max_ddeg < 0 || bounds.max_ldeg < 0 {
        return Err(Error::InvalidBounds(format!(
            "degrees must be nonnegative, got ∂ ≤ {}, λ ≤ {}",
            bounds.max_ddeg, bounds.max_ldeg
        )));
    }
    psi.check(rep)?;
    let target = match psi {
        Cochain::Zero(_) => return Ok(None),
        Cochain::Map(m) => m,
    };
    let n = psi.degree() - 1;
    if psi.is_zero() {
        return Ok(Some(Cochain::zero(rep, n)));
    }
    if !is_cocycle(rep, psi)? {
        return Ok(None);
    }
    let g = rep.alg().module().clone();
    let m: Module = rep.module().clone();
    let unknowns: Vec<Cochain> = if n == 0 {
        let ctx = VarCtx::canonical(0);
        (0..m.rank())
            .map(|c| Cochain::Zero(ModValue::basis(&m, &ctx, c)))
            .collect()
    } else {
        let proto = SesqMap::new(vec![g.clone(); n], m.clone(), 0);
        let ctx = proto.ctx().clone();
        let monos = random::monomials(n - 1, bounds.max_ddeg as u32, bounds.max_ldeg as u32);
        let mut out = Vec::new();
        for t in proto.tuples() {
            for c in 0..m.rank() {
                for mono in &monos {
                    let mut u = proto.clone();
                    let p = Poly::from_terms(&ctx, [(mono.clone(), num_traits::One::one())]);
                    u.set(&t, ModValue::term(&m, c, p))?;
                    out.push(Cochain::Map(u));
                }
            }
        }
        out
    };
    let images: Vec<Coords> = par::map(&unknowns, |u| {
        coords(coboundary(rep, u).expect("checked").as_map().expect("map"))
    });
    let rhs = coords(target);
    let mut keys: Vec<&(Vec<usize>, usize, Monomial)> = rhs.keys().collect();
    for im in &images {
        keys.extend(im.keys());
    }
    keys.sort();
    keys.dedup();
    let index: BTreeMap<_, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut a = vec![vec![Rational::zero(); unknowns.len()]; keys.len()];
    for (j, im) in images.iter().enumerate() {
        for (k, q) in im {
            a[index[k]][j] = q.clone();
        }
    }
    let mut b = vec![Rational::zero(); keys.len()];
    for (k, q) in &rhs {
        b[index[k]] = q.clone();
    }
    let Some(x) = linalg::solve(&a, &b) else {
        return Ok(None);
    };
    let mut tau = Cochain::zero(rep, n);
    for (u, c) in unknowns.iter().zip(&x) {
        if !c.is_zero() {
            tau = tau.try_add(&u.scale(c))?;
        }
    }
    debug_assert!(is_coboundary_of(rep, psi, &tau)?);
    Ok(Some(tau))
}

/// Random `n`-cochain with coefficient degrees inside the given bounds.
pub fn random_cochain<R: Rng>(
    rng: &mut R,
    rep: &ConfRep,
    n: usize,
    max_d: u32,
    max_l: u32,
    density: f64,
) -> Cochain {
    if n == 0 {
        let v = random::random_plain(rng, rep.module(), 0, density);
        return Cochain::Zero(v);
    }
    Cochain::Map(random::random_sesq(
        rng,
        vec![rep.alg().module().clone(); n],
        rep.module().clone(),
        0,
        max_d,
        max_l,
        density,
    ))
}
