use std::fmt;
use std::sync::Arc;

use crate::corering::{Ctx, Poly, Rational, VarCtx};
use crate::error::{Error, Result};

/// A finite free `C[∂]`-module presented by a named basis. Graded modules
/// carry one degree per basis element; ungraded ones are all degree 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConfModule {
    name: String,
    basis: Vec<String>,
    degrees: Vec<i32>,
}

/// Shared module handle. Equality is by value.
pub type Module = Arc<ConfModule>;

impl ConfModule {
    pub fn new<S: AsRef<str>>(name: &str, basis: &[S]) -> Result<Module> {
        let degrees = vec![0; basis.len()];
        ConfModule::graded(name, basis, &degrees)
    }

    pub fn graded<S: AsRef<str>>(name: &str, basis: &[S], degrees: &[i32]) -> Result<Module> {
        let basis: Vec<String> = basis.iter().map(|b| b.as_ref().to_string()).collect();
        if degrees.len() != basis.len() {
            return Err(Error::Malformed(format!(
                "module `{name}`: {} degrees for {} basis elements",
                degrees.len(),
                basis.len()
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::Malformed(format!(
                    "module `{name}`: duplicate basis element `{b}`"
                )));
            }
        }
        Ok(Arc::new(ConfModule {
            name: name.to_string(),
            basis,
            degrees: degrees.to_vec(),
        }))
    }

    pub fn zero(name: &str) -> Module {
        Arc::new(ConfModule {
            name: name.to_string(),
            basis: Vec::new(),
            degrees: Vec::new(),
        })
    }

    /// Direct sum, basis of `a` first.
    pub fn direct_sum(name: &str, a: &ConfModule, b: &ConfModule) -> Result<Module> {
        let basis: Vec<&String> = a.basis.iter().chain(&b.basis).collect();
        let degrees: Vec<i32> = a.degrees.iter().chain(&b.degrees).copied().collect();
        ConfModule::graded(name, &basis, &degrees)
    }

    /// Same basis with every degree moved by `by`.
    pub fn shifted(&self, name: &str, by: i32) -> Module {
        Arc::new(ConfModule {
            name: name.to_string(),
            basis: self.basis.clone(),
            degrees: self.degrees.iter().map(|d| d + by).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.iter().any(|&d| d != 0)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }
}

pub(crate) fn same_module(a: &Module, b: &Module) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn expect_module(expected: &Module, found: &Module) -> Result<()> {
    if same_module(expected, found) {
        Ok(())
    } else {
        Err(Error::ModuleMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

/// Element of `M ⊗ ℚ[∂, λ…]`: one polynomial coefficient per basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct ModValue {
    module: Module,
    ctx: Ctx,
    coeffs: Vec<Poly>,
}

impl ModValue {
    pub fn zero(module: &Module, ctx: &Ctx) -> Self {
        ModValue {
            module: module.clone(),
            ctx: ctx.clone(),
            coeffs: (0..module.rank()).map(|_| Poly::zero(ctx)).collect(),
        }
    }

    /// The basis element `e_i` with coefficient 1.
    pub fn basis(module: &Module, ctx: &Ctx, i: usize) -> Self {
        let mut v = ModValue::zero(module, ctx);
        v.coeffs[i] = Poly::one(ctx);
        v
    }

    pub fn from_coeffs(module: &Module, ctx: &Ctx, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != module.rank() {
            return Err(Error::Malformed(format!(
                "{} coefficients for module `{}` of rank {}",
                coeffs.len(),
                module.name(),
                module.rank()
            )));
        }
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(ModValue {
            module: module.clone(),
            ctx: ctx.clone(),
            coeffs,
        })
    }

    /// Single-term value `p · e_i`.
    pub fn term(module: &Module, i: usize, p: Poly) -> Self {
        let ctx = p.ctx().clone();
        let mut v = ModValue::zero(module, &ctx);
        v.coeffs[i] = p;
        v
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Nonzero `(basis index, coefficient)` pairs.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn check(&self, other: &ModValue) -> Result<()> {
        expect_module(&self.module, &other.module)?;
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ModValue) -> Result<ModValue> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &ModValue) -> Result<ModValue> {
        self.try_add(&other.neg())
    }

    /// `self += factor * other`; panics on module or context mismatch.
    pub fn add_scaled(&mut self, factor: &Rational, other: &ModValue) {
        self.check(other).expect("incompatible module values");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(factor, b);
        }
    }

    pub fn add_assign(&mut self, other: &ModValue) {
        self.check(other).expect("incompatible module values");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
    }

    pub fn sub_assign(&mut self, other: &ModValue) {
        self.add_scaled(&crate::corering::rat(-1), other);
    }

    pub fn neg(&self) -> ModValue {
        ModValue {
            module: self.module.clone(),
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> ModValue {
        ModValue {
            module: self.module.clone(),
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every coefficient by `p` (a scalar of the same context).
    pub fn mul_poly(&self, p: &Poly) -> ModValue {
        ModValue {
            module: self.module.clone(),
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Applies a positional substitution to every coefficient.
    pub fn compose(&self, out: &Ctx, images: &[Poly]) -> ModValue {
        ModValue {
            module: self.module.clone(),
            ctx: out.clone(),
            coeffs: self.coeffs.iter().map(|c| c.compose(out, images)).collect(),
        }
    }

    pub fn rename(&self, out: &Ctx) -> ModValue {
        ModValue {
            module: self.module.clone(),
            ctx: out.clone(),
            coeffs: self.coeffs.iter().map(|c| c.rename(out)).collect(),
        }
    }

    pub fn embed(&self, out: &Ctx, map: &[usize]) -> ModValue {
        ModValue {
            module: self.module.clone(),
            ctx: out.clone(),
            coeffs: self.coeffs.iter().map(|c| c.embed(out, map)).collect(),
        }
    }

    /// Same coefficients, reinterpreted in another module of equal rank.
    pub fn retarget(&self, module: &Module) -> ModValue {
        assert_eq!(module.rank(), self.module.rank());
        ModValue {
            module: module.clone(),
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Embeds a value of a `∂`-only context into `out` (λ-free lift).
    pub fn lift(&self, out: &Ctx) -> ModValue {
        assert!(self.ctx.is_empty(), "lift expects a ∂-only value");
        self.embed(out, &[0])
    }

    /// Representative modulo `∂M`: every coefficient evaluated at `∂ = 0`.
    pub fn constant_part(&self) -> ModValue {
        let mut images = vec![Poly::zero(&self.ctx)];
        images.extend((0..self.ctx.len()).map(|i| Poly::lambda(&self.ctx, i)));
        self.compose(&self.ctx, &images)
    }

    /// Whether every coefficient lies in `ℚ[∂]`.
    pub fn is_plain(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.terms().all(|(m, _)| m.lambda_degree() == 0))
    }

    /// Total degree of the homogeneous components present, if any.
    pub fn degrees_present(&self) -> Vec<i32> {
        let mut out: Vec<i32> = self.nonzero().map(|(i, _)| self.module.degree(i)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for ModValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.nonzero() {
            let name = &self.module.basis()[i];
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match c.as_constant() {
                Some(k) if k == crate::corering::rat(1) => write!(f, "{name}")?,
                _ => write!(f, "({c}) {name}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModValue[{}; {}]({})", self.module.name(), self.ctx.names().join(","), self)
    }
}

/// Iterates all basis tuples over the given ranks, lexicographically.
pub fn basis_tuples(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in ranks {
        let mut next = Vec::with_capacity(out.len() * r);
        for prefix in &out {
            for i in 0..r {
                let mut t = prefix.clone();
                t.push(i);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Plain (∂-only) value built from integer coefficients of `∂^0`.
pub fn plain_value(module: &Module, coeffs: &[i64]) -> ModValue {
    let ctx = VarCtx::canonical(0);
    let polys = coeffs.iter().map(|&c| Poly::int(&ctx, c)).collect();
    ModValue::from_coeffs(module, &ctx, polys).expect("rank matches")
}
