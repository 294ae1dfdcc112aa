use std::collections::BTreeMap;

use super::module::{expect_module, same_module, Module, ModValue};
use crate::corering::{Ctx, Poly, VarCtx};
use crate::error::{Error, Result};

/// An n-ary conformal sesquilinear map stored on basis tuples.
///
/// `table[(b1, …, bn)]` is `φ_{l1,…,l(n-1)}(e_b1, …, e_bn)` as a value of the
/// target module in the canonical context `l1, …, l(n-1)`. Absent entries are
/// zero, and zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SesqMap {
    sources: Vec<Module>,
    target: Module,
    degree: i32,
    ctx: Ctx,
    table: BTreeMap<Vec<usize>, ModValue>,
}

impl SesqMap {
    pub fn new(sources: Vec<Module>, target: Module, degree: i32) -> Self {
        assert!(!sources.is_empty(), "arity must be at least 1");
        let ctx = VarCtx::canonical(sources.len() - 1);
        SesqMap {
            sources,
            target,
            degree,
            ctx,
            table: BTreeMap::new(),
        }
    }

    /// Endomorphic map `g^{⊗n} → g` of degree 0.
    pub fn endo(module: &Module, arity: usize) -> Self {
        SesqMap::new(vec![module.clone(); arity], module.clone(), 0)
    }

    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[Module] {
        &self.sources
    }

    pub fn source(&self, i: usize) -> &Module {
        &self.sources[i]
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Canonical table context `l1, …, l(n-1)`.
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &ModValue)> {
        self.table.iter()
    }

    pub fn get(&self, tuple: &[usize]) -> ModValue {
        self.table
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| ModValue::zero(&self.target, &self.ctx))
    }

    pub fn get_ref(&self, tuple: &[usize]) -> Option<&ModValue> {
        self.table.get(tuple)
    }

    /// All basis tuples of the source modules.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let ranks: Vec<usize> = self.sources.iter().map(|m| m.rank()).collect();
        super::basis_tuples(&ranks)
    }

    /// Sets a table entry. A value whose context has the right number of
    /// variables under other names is renamed positionally.
    pub fn set(&mut self, tuple: &[usize], value: ModValue) -> Result<()> {
        if tuple.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: tuple.len(),
            });
        }
        for (i, &b) in tuple.iter().enumerate() {
            if b >= self.sources[i].rank() {
                return Err(Error::Malformed(format!(
                    "basis index {b} out of range for `{}`",
                    self.sources[i].name()
                )));
            }
        }
        expect_module(&self.target, value.module())?;
        let value = if value.ctx() == &self.ctx {
            value
        } else if value.ctx().len() == self.ctx.len() {
            value.rename(&self.ctx)
        } else {
            return Err(Error::InvalidContext(format!(
                "entry has {} λ-variables, arity {} needs {}",
                value.ctx().len(),
                self.arity(),
                self.ctx.len()
            )));
        };
        if self.target.is_graded() || self.sources.iter().any(|m| m.is_graded()) {
            let want: i32 = tuple
                .iter()
                .enumerate()
                .map(|(i, &b)| self.sources[i].degree(b))
                .sum::<i32>()
                + self.degree;
            for (c, _) in value.nonzero() {
                if self.target.degree(c) != want {
                    return Err(Error::Malformed(format!(
                        "inhomogeneous entry: `{}` has degree {}, expected {want}",
                        self.target.basis()[c],
                        self.target.degree(c)
                    )));
                }
            }
        }
        if value.is_zero() {
            self.table.remove(tuple);
        } else {
            self.table.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    /// Adds `value` to an entry.
    pub fn add_to(&mut self, tuple: &[usize], value: &ModValue) -> Result<()> {
        let cur = self.get(tuple);
        let v = if value.ctx() == &self.ctx {
            value.clone()
        } else {
            value.rename(&self.ctx)
        };
        self.set(tuple, cur.try_add(&v)?)
    }

    fn same_shape(&self, other: &SesqMap) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        for (a, b) in self.sources.iter().zip(&other.sources) {
            expect_module(a, b)?;
        }
        expect_module(&self.target, &other.target)
    }

    pub fn try_add(&self, other: &SesqMap) -> Result<SesqMap> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (t, v) in &other.table {
            out.add_to(t, v)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SesqMap) -> Result<SesqMap> {
        self.try_add(&other.scale(&crate::corering::rat(-1)))
    }

    pub fn scale(&self, c: &crate::corering::Rational) -> SesqMap {
        let mut out = SesqMap {
            table: BTreeMap::new(),
            ..self.clone()
        };
        for (t, v) in &self.table {
            let s = v.scale(c);
            if !s.is_zero() {
                out.table.insert(t.clone(), s);
            }
        }
        out
    }

    /// Same table over different (equal-rank) source/target modules, with a
    /// new degree label.
    pub fn relabel(&self, sources: Vec<Module>, target: Module, degree: i32) -> Result<SesqMap> {
        if sources.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: sources.len(),
            });
        }
        if sources
            .iter()
            .zip(&self.sources)
            .any(|(a, b)| a.rank() != b.rank())
            || target.rank() != self.target.rank()
        {
            return Err(Error::Malformed("relabel needs equal ranks".into()));
        }
        let mut out = SesqMap::new(sources, target.clone(), degree);
        for (t, v) in &self.table {
            out.set(t, v.retarget(&target))?;
        }
        Ok(out)
    }

    /// Evaluates `φ_{Λ1,…,Λ(n-1)}(a1, …, an)` by conformal sesquilinear
    /// extension. `lambdas` and every argument live in the output context.
    ///
    /// A coefficient `p(∂)` on argument `i < n` becomes `p(-Λi)`; on the last
    /// argument it becomes `p(∂ + Λ1 + … + Λ(n-1))` acting on the result.
    pub fn eval(&self, lambdas: &[Poly], args: &[ModValue]) -> Result<ModValue> {
        let n = self.arity();
        if args.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: args.len(),
            });
        }
        if lambdas.len() != n - 1 {
            return Err(Error::ArityMismatch {
                expected: n - 1,
                found: lambdas.len(),
            });
        }
        let out = args[0].ctx().clone();
        for (i, a) in args.iter().enumerate() {
            expect_module(&self.sources[i], a.module())?;
            if a.ctx() != &out {
                return Err(Error::ContextMismatch);
            }
        }
        if lambdas.iter().any(|l| l.ctx() != &out) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.eval_unchecked(lambdas, args, &out))
    }

    pub(crate) fn eval_unchecked(&self, lambdas: &[Poly], args: &[ModValue], out: &Ctx) -> ModValue {
        let n = self.arity();
        let mut result = ModValue::zero(&self.target, out);
        if self.table.is_empty() || args.iter().any(ModValue::is_zero) {
            return result;
        }
        let ident: Vec<Poly> = (0..out.len()).map(|i| Poly::lambda(out, i)).collect();
        let d = Poly::d(out);
        let sub_d = |p: &Poly, image: Poly| -> Poly {
            if p.d_degree().unwrap_or(0) == 0 {
                return p.clone();
            }
            let mut images = Vec::with_capacity(out.len() + 1);
            images.push(image);
            images.extend(ident.iter().cloned());
            p.compose(out, &images)
        };
        let mut total = Poly::zero(out);
        for l in lambdas {
            total.add_assign_ref(l);
        }
        let mut transported: Vec<Vec<(usize, Poly)>> = Vec::with_capacity(n);
        for (i, a) in args.iter().enumerate() {
            let image = if i + 1 < n { -&lambdas[i] } else { &d + &total };
            transported.push(
                a.nonzero()
                    .map(|(b, p)| (b, sub_d(p, image.clone())))
                    .collect(),
            );
        }
        let mut table_images = Vec::with_capacity(n);
        table_images.push(d.clone());
        table_images.extend(lambdas.iter().cloned());

        let mut idx = vec![0usize; n];
        let mut tuple = vec![0usize; n];
        'outer: loop {
            for i in 0..n {
                tuple[i] = transported[i][idx[i]].0;
            }
            if let Some(entry) = self.table.get(&tuple) {
                let mut scalar = transported[0][idx[0]].1.clone();
                for i in 1..n {
                    scalar = &scalar * &transported[i][idx[i]].1;
                }
                if !scalar.is_zero() {
                    let v = entry.compose(out, &table_images);
                    result.add_assign(&v.mul_poly(&scalar));
                }
            }
            // odometer
            let mut k = n;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < transported[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
        result
    }

    /// Evaluates on plain module elements (coefficients in `ℚ[∂]`), returning
    /// a value in the canonical context with `Λi = li`.
    pub fn eval_plain(&self, args: &[ModValue]) -> Result<ModValue> {
        let ctx = self.ctx.clone();
        let mut lifted = Vec::with_capacity(args.len());
        for a in args {
            if !a.ctx().is_empty() {
                return Err(Error::InvalidContext(
                    "arguments must have ∂-only coefficients".into(),
                ));
            }
            lifted.push(a.lift(&ctx));
        }
        let lambdas: Vec<Poly> = (0..ctx.len()).map(|i| Poly::lambda(&ctx, i)).collect();
        self.eval(&lambdas, &lifted)
    }

    /// Precomposes every slot with a `C[∂]`-linear map and postcomposes with
    /// another: `(post ∘ φ ∘ (pre1 ⊗ … ⊗ pren))`.
    pub fn conjugate(
        &self,
        pre: &[&SesqMap],
        post: Option<&SesqMap>,
    ) -> Result<SesqMap> {
        let n = self.arity();
        if pre.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: pre.len(),
            });
        }
        let sources: Vec<Module> = pre.iter().map(|f| f.source(0).clone()).collect();
        let target = post.map(|p| p.target().clone()).unwrap_or(self.target.clone());
        let degree = self.degree
            + pre.iter().map(|f| f.degree()).sum::<i32>()
            + post.map(|p| p.degree()).unwrap_or(0);
        let mut out = SesqMap::new(sources.clone(), target, degree);
        let ctx = out.ctx.clone();
        let lambdas: Vec<Poly> = (0..ctx.len()).map(|i| Poly::lambda(&ctx, i)).collect();
        for tuple in out.tuples() {
            let args: Vec<ModValue> = tuple
                .iter()
                .zip(pre)
                .zip(&sources)
                .map(|((&b, f), m)| apply_linear(f, &ModValue::basis(m, &ctx, b)))
                .collect::<Result<_>>()?;
            let mut v = self.eval(&lambdas, &args)?;
            if let Some(p) = post {
                v = apply_linear(p, &v)?;
            }
            out.set(&tuple, v)?;
        }
        Ok(out)
    }
}

/// Applies an arity-1 (`C[∂]`-linear) map to a value in any context.
pub fn apply_linear(f: &SesqMap, v: &ModValue) -> Result<ModValue> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    expect_module(f.source(0), v.module())?;
    let out = v.ctx().clone();
    Ok(f.eval_unchecked(&[], std::slice::from_ref(v), &out))
}

/// Composition `g ∘ f` of `C[∂]`-linear maps.
pub fn compose_linear(g: &SesqMap, f: &SesqMap) -> Result<SesqMap> {
    if !same_module(g.source(0), f.target()) {
        return Err(Error::ModuleMismatch {
            expected: g.source(0).name().to_string(),
            found: f.target().name().to_string(),
        });
    }
    let mut out = SesqMap::new(vec![f.source(0).clone()], g.target().clone(), f.degree() + g.degree());
    for (t, v) in f.entries() {
        out.set(t, apply_linear(g, v)?)?;
    }
    Ok(out)
}

/// Identity `C[∂]`-linear map.
pub fn identity_map(m: &Module) -> SesqMap {
    let mut out = SesqMap::new(vec![m.clone()], m.clone(), 0);
    let ctx = out.ctx().clone();
    for i in 0..m.rank() {
        out.set(&[i], ModValue::basis(m, &ctx, i)).expect("identity entry");
    }
    out
}

/// Applies `φ` on the left: `x_Λ v` with `x` a basis element of the first
/// source and `v` any value of the second. Result lives in the context of `v`
/// extended by `lambda_name` when that variable is new.
pub fn transport_left(
    x: usize,
    v: &ModValue,
    action: &SesqMap,
    lambda_name: &str,
) -> Result<ModValue> {
    if action.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: action.arity(),
        });
    }
    expect_module(action.source(1), v.module())?;
    let (ctx, v) = match v.ctx().slot_of(lambda_name) {
        Some(0) => {
            return Err(Error::InvalidContext("λ cannot be ∂".into()));
        }
        Some(_) => (v.ctx().clone(), v.clone()),
        None => {
            let mut names: Vec<String> = v.ctx().names().to_vec();
            names.push(lambda_name.to_string());
            let ctx = VarCtx::new(&names)?;
            let map: Vec<usize> = (0..=v.ctx().len()).collect();
            (ctx.clone(), v.embed(&ctx, &map))
        }
    };
    let lambda = Poly::var(&ctx, lambda_name)?;
    let xv = ModValue::basis(action.source(0), &ctx, x);
    action.eval(&[lambda], &[xv, v])
}

/// Applies `φ` on the right: `v_Λ x` where `Λ` is a polynomial in the context
/// of `v` (typically a sum of λ-variables).
pub fn transport_right(v: &ModValue, x: usize, action: &SesqMap, big_lambda: &Poly) -> Result<ModValue> {
    if action.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: action.arity(),
        });
    }
    expect_module(action.source(0), v.module())?;
    let xv = ModValue::basis(action.source(1), v.ctx(), x);
    action.eval(std::slice::from_ref(big_lambda), &[v.clone(), xv])
}

/// Skew-symmetry `[x_λ y] = -[y_{-∂-λ} x]`, by literal substitution on every
/// basis pair.
pub fn check_skew(bracket: &SesqMap) -> bool {
    if bracket.arity() != 2
        || !same_module(bracket.source(0), bracket.source(1))
        || !same_module(bracket.source(0), bracket.target())
    {
        return false;
    }
    let ctx = bracket.ctx().clone();
    let d = Poly::d(&ctx);
    let l = Poly::lambda(&ctx, 0);
    let dagger = &(-&d) - &l;
    let images = [d, dagger];
    bracket.tuples().iter().all(|t| {
        let lhs = bracket.get(t);
        let rhs = bracket.get(&[t[1], t[0]]).compose(&ctx, &images).neg();
        lhs == rhs
    })
}
