use std::collections::BTreeMap;

use super::{insertion_sum, parity, shuffle, suspension, Flavor, HomotopyOps, DEFAULT_NMAX};
use crate::confcore::{basis_tuples, expect_module, Module, SesqMap};
use crate::corering::{rat, VarCtx};
use crate::error::{Error, Result};
use crate::leibcoh::names;
use crate::par;
use crate::verify::CheckReport;

/// A homogeneous element `Σ_k φ_k` of the convolution space of conformal
/// sesquilinear maps on a graded module `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsElement {
    module: Module,
    degree: i32,
    parts: BTreeMap<usize, SesqMap>,
}

impl CsElement {
    pub fn zero(module: &Module, degree: i32) -> Self {
        CsElement {
            module: module.clone(),
            degree,
            parts: BTreeMap::new(),
        }
    }

    /// Adds `part` to the arity-`k` component.
    pub fn add_part(&mut self, part: &SesqMap) -> Result<()> {
        for s in part.sources() {
            expect_module(&self.module, s)?;
        }
        expect_module(&self.module, part.target())?;
        if part.degree() != self.degree {
            return Err(Error::Malformed(format!(
                "component of degree {} in an element of degree {}",
                part.degree(),
                self.degree
            )));
        }
        let k = part.arity();
        let sum = match self.parts.get(&k) {
            Some(cur) => cur.try_add(part)?,
            None => part.clone(),
        };
        if sum.is_zero() {
            self.parts.remove(&k);
        } else {
            self.parts.insert(k, sum);
        }
        Ok(())
    }

    pub fn from_parts(module: &Module, degree: i32, parts: Vec<SesqMap>) -> Result<Self> {
        let mut out = CsElement::zero(module, degree);
        for p in &parts {
            out.add_part(p)?;
        }
        Ok(out)
    }

    /// The structure maps of a shifted homotopy algebra as a degree −1
    /// element.
    pub fn from_ops(ops: &HomotopyOps) -> Result<Self> {
        ops.expect(Flavor::Shifted)?;
        CsElement::from_parts(ops.module(), -1, ops.ops().map(|(_, m)| m.clone()).collect())
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn part(&self, k: usize) -> Option<&SesqMap> {
        self.parts.get(&k)
    }

    pub fn parts(&self) -> impl Iterator<Item = (&usize, &SesqMap)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.parts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn try_add(&self, other: &CsElement) -> Result<CsElement> {
        let mut out = self.clone();
        for p in other.parts.values() {
            out.add_part(p)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &crate::corering::Rational) -> CsElement {
        let mut out = CsElement::zero(&self.module, self.degree);
        for p in self.parts.values() {
            let s = p.scale(c);
            if !s.is_zero() {
                out.parts.insert(s.arity(), s);
            }
        }
        out
    }
}

/// `φ_k ◊ ψ_l`, an arity `k + l − 1` map of degree `|φ| + |ψ|`:
/// `Σ_i Σ_{σ ∈ Sh(i−1,l−1)} ε(σ)(−1)^{|ψ|(|h_σ(1)|+…+|h_σ(i−1)|)} φ_k(…, ψ_l(…), …)`.
pub fn diamond(phi: &SesqMap, psi: &SesqMap) -> Result<SesqMap> {
    let h = phi.target().clone();
    for s in phi.sources().iter().chain(psi.sources()).chain([psi.target()]) {
        expect_module(&h, s)?;
    }
    let p = phi.arity() + psi.arity() - 1;
    let m = psi.degree() as i64;
    let mut out = SesqMap::new(vec![h.clone(); p], h.clone(), phi.degree() + psi.degree());
    if phi.is_zero() || psi.is_zero() {
        return Ok(out);
    }
    shuffle::warm_cache();
    let ctx = VarCtx::canonical(p - 1);
    let tuples = basis_tuples(&vec![h.rank(); p]);
    let values = par::map(&tuples, |t| {
        insertion_sum(phi, psi, t, &ctx, |_, _, pd| parity(m * pd as i64))
    });
    for (t, v) in tuples.iter().zip(values) {
        out.set(t, v)?;
    }
    Ok(out)
}

/// `⟦φ, ψ⟧ = Σ (φ_k ◊ ψ_l − (−1)^{|φ||ψ|} ψ_l ◊ φ_k)`, keeping components of
/// arity at most `max_arity`. Inputs with larger arity are rejected.
pub fn gla_bracket(phi: &CsElement, psi: &CsElement, max_arity: usize) -> Result<CsElement> {
    expect_module(&phi.module, &psi.module)?;
    for a in [phi.max_arity(), psi.max_arity()] {
        if a > max_arity {
            return Err(Error::DegreeOverflow {
                degree: a,
                max: max_arity,
            });
        }
    }
    let sign = parity(phi.degree as i64 * psi.degree as i64);
    let mut out = CsElement::zero(&phi.module, phi.degree + psi.degree);
    for (&k, a) in &phi.parts {
        for (&l, b) in &psi.parts {
            if k + l - 1 > max_arity {
                continue;
            }
            out.add_part(&diamond(a, b)?)?;
            out.add_part(&diamond(b, a)?.scale(&rat(-sign)))?;
        }
    }
    Ok(out)
}

/// Identity id for the arity-`p` component of `⟦ϱ, ϱ⟧`.
pub fn mc_identity_id(p: usize) -> String {
    format!("maurer-cartan-{p}")
}

/// Residuals of `Σ_{k+l=p+1} ϱ_k ◊ ϱ_l` for every `p ≤ max_arity` on every
/// basis tuple.
pub fn maurer_cartan_report(ops: &HomotopyOps, max_arity: usize) -> Result<CheckReport> {
    ops.expect(Flavor::Shifted)?;
    let h = ops.module();
    let mut report = CheckReport::default();
    for p in 1..=max_arity {
        let mut total = SesqMap::new(vec![h.clone(); p], h.clone(), -2);
        for (&k, a) in ops.ops() {
            if k > p {
                continue;
            }
            if let Some(b) = ops.get(p + 1 - k) {
                total = total.try_add(&diamond(a, b)?)?;
            }
        }
        let id = mc_identity_id(p);
        for t in basis_tuples(&vec![h.rank(); p]) {
            report.record(&id, names(&vec![h; p], &t), total.get(&t));
        }
    }
    Ok(report)
}

/// Whether `ϱ = Σ ϱ_k` satisfies `⟦ϱ, ϱ⟧ = 0` in arities up to `max_arity`.
pub fn is_maurer_cartan(ops: &HomotopyOps, max_arity: usize) -> Result<bool> {
    Ok(maurer_cartan_report(ops, max_arity)?.passed())
}

/// `δφ = (−1)^{n−1} ⟦ϱ, φ⟧` for `φ` of degree `−(n−1)`.
pub fn linfty_coboundary(rho: &HomotopyOps, phi: &CsElement, max_arity: usize) -> Result<CsElement> {
    let r = CsElement::from_ops(rho)?;
    let n = 1 - phi.degree as i64;
    Ok(gla_bracket(&r, phi, max_arity)?.scale(&rat(parity(n - 1))))
}

/// A Leibniz `n`-cochain `g^{⊗n} → g` (with `g` in degree 0) as the
/// arity-`n` component of an element of degree `−(n−1)` on `g[-1]`.
pub fn cochain_embedding(phi: &SesqMap) -> Result<CsElement> {
    let g = phi.target();
    if g.is_graded() {
        return Err(Error::Malformed("cochain module must sit in degree 0".into()));
    }
    let h = suspension(g);
    let n = phi.arity();
    let degree = 1 - n as i32;
    let part = phi.relabel(vec![h.clone(); n], h.clone(), degree)?;
    CsElement::from_parts(&h, degree, vec![part])
}

/// `DELTA_SIGNS[n]` is the sign `c` with `linfty_coboundary(embed φ) =
/// c · embed(δφ)` for Leibniz `n`-cochains in the adjoint representation of
/// an algebra in degree 0. Found by direct comparison (see tests).
pub const DELTA_SIGNS: [i64; DEFAULT_NMAX] = [0, 1, 1, 1];
