//! Strongly homotopy Leibniz conformal algebras on graded modules.
//!
//! Operations are stored as graded [`SesqMap`]s on one graded module whose
//! basis elements carry their degrees. The unshifted flavor has `deg ρ_k =
//! k − 2`; the shifted flavor lives on the suspension `H = G[-1]` (every
//! degree raised by one) with `deg ϱ_k = −1`.

mod gla;
mod shuffle;

pub use gla::{
    cochain_embedding, diamond, gla_bracket, is_maurer_cartan, linfty_coboundary,
    maurer_cartan_report, mc_identity_id, CsElement, DELTA_SIGNS,
};
pub use shuffle::{enumerate_shuffles, koszul_sign, perm_sign, warm_cache, Shuffle};

use std::collections::BTreeMap;

use crate::confcore::{basis_tuples, expect_module, ConfModule, ModValue, Module, SesqMap};
use crate::corering::{rat, Ctx, Poly, VarCtx};
use crate::error::{Error, Result};
use crate::leibcoh::{names, LeibnizConfAlg};
use crate::verify::{check_tuples, CheckReport};

/// Default cap on `n` in the Leibnizator identities and on operation arity.
pub const DEFAULT_NMAX: usize = 4;

/// A graded `C[∂]`-module with finitely many nonzero components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedConfModule {
    module: Module,
}

impl GradedConfModule {
    /// Components listed as `(degree, basis)`; basis names must be distinct
    /// across components.
    pub fn new(name: &str, components: &[(i32, &[&str])]) -> Result<Self> {
        let mut seen = Vec::new();
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for (d, b) in components {
            if seen.contains(d) {
                return Err(Error::Malformed(format!("degree {d} listed twice")));
            }
            seen.push(*d);
            basis.extend(b.iter().copied());
            degrees.extend(std::iter::repeat_n(*d, b.len()));
        }
        Ok(GradedConfModule {
            module: ConfModule::graded(name, &basis, &degrees)?,
        })
    }

    pub fn from_module(module: &Module) -> Self {
        GradedConfModule {
            module: module.clone(),
        }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    /// Basis indices of each nonzero component.
    pub fn components(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.module.degrees().iter().enumerate() {
            out.entry(d).or_default().push(i);
        }
        out
    }

    /// `G[-1]`, with `(G[-1])_i = G_(i-1)`.
    pub fn suspend(&self) -> GradedConfModule {
        GradedConfModule {
            module: suspension(&self.module),
        }
    }

    pub fn desuspend(&self) -> GradedConfModule {
        GradedConfModule {
            module: desuspension(&self.module),
        }
    }
}

pub(crate) fn suspension(m: &Module) -> Module {
    m.shifted(&format!("{}[-1]", m.name()), 1)
}

pub(crate) fn desuspension(m: &Module) -> Module {
    let name = m
        .name()
        .strip_suffix("[-1]")
        .map(str::to_string)
        .unwrap_or_else(|| format!("{}[1]", m.name()));
    m.shifted(&name, -1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `deg ρ_k = k − 2`.
    Unshifted,
    /// `deg ϱ_k = −1`.
    Shifted,
}

impl Flavor {
    fn degree(self, k: usize) -> i32 {
        match self {
            Flavor::Unshifted => k as i32 - 2,
            Flavor::Shifted => -1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Flavor::Unshifted => "unshifted",
            Flavor::Shifted => "shifted",
        }
    }
}

/// The operations `{ρ_k}` (or `{ϱ_k}`) of a homotopy structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyOps {
    flavor: Flavor,
    module: Module,
    ops: BTreeMap<usize, SesqMap>,
}

impl HomotopyOps {
    pub fn new(flavor: Flavor, module: &Module) -> Self {
        HomotopyOps {
            flavor,
            module: module.clone(),
            ops: BTreeMap::new(),
        }
    }

    /// Installs `ρ_k`, checking that it is endomorphic with the degree the
    /// flavor requires. Zero maps are dropped.
    pub fn set(&mut self, op: SesqMap) -> Result<()> {
        let k = op.arity();
        for s in op.sources() {
            expect_module(&self.module, s)?;
        }
        expect_module(&self.module, op.target())?;
        if op.degree() != self.flavor.degree(k) {
            return Err(Error::Malformed(format!(
                "arity {k} operation has degree {}, expected {}",
                op.degree(),
                self.flavor.degree(k)
            )));
        }
        if op.is_zero() {
            self.ops.remove(&k);
        } else {
            self.ops.insert(k, op);
        }
        Ok(())
    }

    pub fn with(mut self, op: SesqMap) -> Result<Self> {
        self.set(op)?;
        Ok(self)
    }

    /// A Leibniz conformal algebra in degree 0 with `ρ_2` its bracket.
    pub fn from_leibniz(alg: &LeibnizConfAlg) -> Self {
        let mut out = HomotopyOps::new(Flavor::Unshifted, alg.module());
        out.set(alg.bracket().clone()).expect("degree-0 bracket");
        out
    }

    /// `g ⊕ ker f` for a morphism `f` whose kernel is the span of the basis
    /// elements `kernel` of `g`: `g` sits in degree 0, a copy of the kernel
    /// in degree 1, `ρ_1` is the inclusion, and `ρ_2` is the bracket of `g`
    /// together with the induced actions of `g` on the kernel.
    pub fn from_morphism_kernel(alg: &LeibnizConfAlg, kernel: &[usize]) -> Result<Self> {
        let g = alg.module();
        let mut basis: Vec<String> = g.basis().to_vec();
        let mut degrees = vec![0; g.rank()];
        for &k in kernel {
            if k >= g.rank() {
                return Err(Error::Malformed(format!("basis index {k} out of range")));
            }
            basis.push(format!("{}'", g.basis()[k]));
            degrees.push(1);
        }
        let m = ConfModule::graded(&format!("{}+ker", g.name()), &basis, &degrees)?;
        let r = g.rank();
        let lift = |v: &ModValue, into_kernel: bool| -> Result<ModValue> {
            let mut coeffs = vec![Poly::zero(v.ctx()); m.rank()];
            for (c, p) in v.nonzero() {
                if into_kernel {
                    let pos = kernel.iter().position(|&k| k == c).ok_or_else(|| {
                        Error::Malformed(format!(
                            "kernel is not an ideal: `{}` appears in a bracket with it",
                            g.basis()[c]
                        ))
                    })?;
                    coeffs[r + pos] = p.clone();
                } else {
                    coeffs[c] = p.clone();
                }
            }
            ModValue::from_coeffs(&m, v.ctx(), coeffs)
        };
        let mut rho1 = SesqMap::new(vec![m.clone()], m.clone(), -1);
        let c0 = rho1.ctx().clone();
        for (pos, &k) in kernel.iter().enumerate() {
            rho1.set(&[r + pos], ModValue::term(&m, k, Poly::one(&c0)))?;
        }
        let mut rho2 = SesqMap::new(vec![m.clone(), m.clone()], m.clone(), 0);
        let as_g = |i: usize| if i < r { (i, false) } else { (kernel[i - r], true) };
        for t in rho2.tuples() {
            let (a, ka) = as_g(t[0]);
            let (b, kb) = as_g(t[1]);
            if ka && kb {
                continue;
            }
            let v = alg.bracket().get(&[a, b]);
            rho2.set(&t, lift(&v, ka || kb)?)?;
        }
        HomotopyOps::new(Flavor::Unshifted, &m).with(rho1)?.with(rho2)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn get(&self, k: usize) -> Option<&SesqMap> {
        self.ops.get(&k)
    }

    pub fn ops(&self) -> impl Iterator<Item = (&usize, &SesqMap)> {
        self.ops.iter()
    }

    /// Largest arity with a nonzero operation (0 if none).
    pub fn max_arity(&self) -> usize {
        self.ops.keys().next_back().copied().unwrap_or(0)
    }

    fn expect(&self, flavor: Flavor) -> Result<()> {
        if self.flavor == flavor {
            Ok(())
        } else {
            Err(Error::WrongFlavor {
                expected: flavor.name(),
            })
        }
    }
}

/// Sum over `i` and `σ ∈ Sh(i−1, l−1)` of `sign · outer(…, inner(…), …)` on
/// a basis tuple of length `k + l − 1`, in the context `l1 … l(n-1)`.
/// `sign(i, σ, prefix_degree)` supplies every sign factor except `ε(σ)`,
/// which is always included.
pub(crate) fn insertion_sum(
    outer: &SesqMap,
    inner: &SesqMap,
    tuple: &[usize],
    ctx: &Ctx,
    sign: impl Fn(usize, &Shuffle, i32) -> i64,
) -> ModValue {
    let k = outer.arity();
    let l = inner.arity();
    let n = tuple.len();
    debug_assert_eq!(n, k + l - 1);
    let m = inner.target();
    let degrees: Vec<i32> = tuple.iter().map(|&b| inner.source(0).degree(b)).collect();
    let lam = |j: usize| Poly::lambda(ctx, j);
    let basis = |j: usize| ModValue::basis(m, ctx, tuple[j]);
    let mut out = ModValue::zero(outer.target(), ctx);
    for i in 1..=k {
        let p = i - 1;
        let q = l - 1;
        let head = p + q;
        for sh in shuffle::shuffles_ref(p, q).iter() {
            let eps = koszul_sign(&sh.perm, &degrees[..head]);
            let prefix = &sh.perm[..p];
            let prefix_deg: i32 = prefix.iter().map(|&j| degrees[j]).sum();
            let s = eps * sign(i, sh, prefix_deg);
            let mut inner_args: Vec<ModValue> = sh.perm[p..].iter().map(|&j| basis(j)).collect();
            inner_args.push(basis(head));
            let inner_l: Vec<Poly> = sh.perm[p..].iter().map(|&j| lam(j)).collect();
            let v = inner.eval_unchecked(&inner_l, &inner_args, ctx);
            if v.is_zero() {
                continue;
            }
            let mut outer_l: Vec<Poly> = prefix.iter().map(|&j| lam(j)).collect();
            let mut outer_args: Vec<ModValue> = prefix.iter().map(|&j| basis(j)).collect();
            if i < k {
                let mut combined = lam(head);
                for x in &inner_l {
                    combined.add_assign_ref(x);
                }
                outer_l.push(combined);
            }
            outer_args.push(v);
            for j in head + 1..n {
                if j + 1 < n {
                    outer_l.push(lam(j));
                }
                outer_args.push(basis(j));
            }
            let w = outer.eval_unchecked(&outer_l, &outer_args, ctx);
            out.add_scaled(&rat(s), &w);
        }
    }
    out
}

fn parity(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ArityMismatch { expected: 1, found: 0 });
    }
    if n > max {
        return Err(Error::DegreeOverflow { degree: n, max });
    }
    Ok(())
}

/// Left-hand side of the `n`-th conformal Leibnizator identity for
/// unshifted operations on a basis tuple (`n = tuple.len()`); zero iff the
/// identity holds there.
pub fn leibnizator_sum(ops: &HomotopyOps, tuple: &[usize]) -> Result<ModValue> {
    leibnizator_sum_with_max(ops, tuple, DEFAULT_NMAX)
}

pub fn leibnizator_sum_with_max(ops: &HomotopyOps, tuple: &[usize], max: usize) -> Result<ModValue> {
    ops.expect(Flavor::Unshifted)?;
    let n = tuple.len();
    check_n(n, max)?;
    shuffle::warm_cache();
    Ok(leibnizator_unchecked(ops, tuple))
}

fn leibnizator_unchecked(ops: &HomotopyOps, tuple: &[usize]) -> ModValue {
    let n = tuple.len();
    let ctx = VarCtx::canonical(n - 1);
    let mut out = ModValue::zero(&ops.module, &ctx);
    for (&k, outer) in &ops.ops {
        if k > n {
            continue;
        }
        let l = n + 1 - k;
        let Some(inner) = ops.ops.get(&l) else { continue };
        let v = insertion_sum(outer, inner, tuple, &ctx, |i, sh, pd| {
            let (k, l, i) = (k as i64, l as i64, i as i64);
            sh.sign * parity((k - i - 1) * (l - 1)) * parity(l * pd as i64)
        });
        out.add_assign(&v);
    }
    out
}

/// The shifted identities: `Σ ε(σ)(−1)^{|h_σ(1)|+…+|h_σ(i−1)|} ϱ_k(…ϱ_l(…)…)`.
pub fn shifted_leibnizator_sum(ops: &HomotopyOps, tuple: &[usize]) -> Result<ModValue> {
    ops.expect(Flavor::Shifted)?;
    check_n(tuple.len(), DEFAULT_NMAX)?;
    shuffle::warm_cache();
    let n = tuple.len();
    let ctx = VarCtx::canonical(n - 1);
    let mut out = ModValue::zero(&ops.module, &ctx);
    for (&k, outer) in &ops.ops {
        if k > n {
            continue;
        }
        let Some(inner) = ops.ops.get(&(n + 1 - k)) else { continue };
        out.add_assign(&insertion_sum(outer, inner, tuple, &ctx, |_, _, pd| {
            parity(pd as i64)
        }));
    }
    Ok(out)
}

/// Identity id used in reports for the `n`-th Leibnizator identity.
pub fn identity_id(n: usize) -> String {
    format!("leibnizator-{n}")
}

/// Checks every identity `n ≤ n_max` on every basis tuple.
pub fn verify_leib_infty(ops: &HomotopyOps, n_max: usize) -> Result<CheckReport> {
    ops.expect(Flavor::Unshifted)?;
    shuffle::warm_cache();
    let m = &ops.module;
    let mut report = CheckReport::default();
    for n in 1..=n_max {
        let tuples = basis_tuples(&vec![m.rank(); n]);
        let id = identity_id(n);
        report.merge(check_tuples(&tuples, |t| {
            let mut r = CheckReport::default();
            r.record(&id, names(&vec![m; n], t), leibnizator_unchecked(ops, t));
            r
        }));
    }
    Ok(report)
}

/// Number of failures per `n` in a [`verify_leib_infty`] report.
pub fn failures_per_n(report: &CheckReport, n_max: usize) -> Vec<usize> {
    (1..=n_max)
        .map(|n| report.failures_for(&identity_id(n)).count())
        .collect()
}

/// Sign relating `ρ_k` and `ϱ_k` on a basis tuple of `G`:
/// `(−1)^{k(k−1)/2}` times the Koszul sign of `(s⁻¹)^{⊗k}` on the suspended
/// arguments.
fn decalage_sign(g_degrees: &[i32]) -> i64 {
    let k = g_degrees.len() as i64;
    let mut e = k * (k - 1) / 2;
    for (j, &d) in g_degrees.iter().enumerate() {
        // |h_j| = |x_j| + 1, moved past by k − j − 1 copies of s⁻¹
        e += (k - j as i64 - 1) * (d as i64 + 1);
    }
    parity(e)
}

/// Décalage: unshifted operations on `G` to shifted ones on `G[-1]`,
/// `ϱ_k = (−1)^{k(k−1)/2} s ∘ ρ_k ∘ (s⁻¹)^{⊗k}`.
pub fn shift(ops: &HomotopyOps) -> Result<HomotopyOps> {
    ops.expect(Flavor::Unshifted)?;
    let g = &ops.module;
    let h = suspension(g);
    let mut out = HomotopyOps::new(Flavor::Shifted, &h);
    for op in ops.ops.values() {
        out.set(transport(op, g, &h, -1)?)?;
    }
    Ok(out)
}

/// Inverse of [`shift`].
pub fn unshift(ops: &HomotopyOps) -> Result<HomotopyOps> {
    ops.expect(Flavor::Shifted)?;
    let h = &ops.module;
    let g = desuspension(h);
    let mut out = HomotopyOps::new(Flavor::Unshifted, &g);
    for (&k, op) in &ops.ops {
        out.set(transport(op, &g, &g, k as i32 - 2)?)?;
    }
    Ok(out)
}

/// Re-expresses `op` over `target_module` with the décalage sign, reading
/// `G`-degrees from `g`.
fn transport(op: &SesqMap, g: &Module, target_module: &Module, degree: i32) -> Result<SesqMap> {
    let k = op.arity();
    let mut out = SesqMap::new(vec![target_module.clone(); k], target_module.clone(), degree);
    for (t, v) in op.entries() {
        let gd: Vec<i32> = t.iter().map(|&b| g.degree(b)).collect();
        out.set(t, v.retarget(target_module).scale(&rat(decalage_sign(&gd))))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
