use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, rat, Ctx, Rational, VarCtx, D_NAME};
use crate::error::{Error, Result};

/// Exponent vector: position 0 is `∂`, then one entry per λ-variable.
/// The total degree is cached because term maps compare by it first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            deg,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn d_degree(&self) -> u32 {
        self.exps[0] as u32
    }

    pub fn lambda_degree(&self) -> u32 {
        self.deg - self.d_degree()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }
}

// Graded lexicographic: total degree first, then exponents left to right.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over ℚ in `∂` and the λ-variables of its context.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their contexts and term maps agree.
#[derive(Clone)]
pub struct Poly {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

// Almost every coefficient is an integer; skip the gcd normalisation then.
fn mul_rat(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn add_rat(a: &mut Rational, b: Rational) {
    if a.is_integer() && b.is_integer() {
        *a = Rational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ctx: &Ctx) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len() + 1), c);
        }
        p
    }

    pub fn one(ctx: &Ctx) -> Self {
        Poly::constant(ctx, Rational::one())
    }

    pub fn int(ctx: &Ctx, n: i64) -> Self {
        Poly::constant(ctx, rat(n))
    }

    /// The variable at exponent slot `slot` (0 is `∂`).
    pub fn var_slot(ctx: &Ctx, slot: usize) -> Self {
        assert!(slot <= ctx.len(), "variable slot out of range");
        let mut e = vec![0u16; ctx.len() + 1];
        e[slot] = 1;
        Poly::from_terms(ctx, [(Monomial::new(e), Rational::one())])
    }

    /// `∂` itself.
    pub fn d(ctx: &Ctx) -> Self {
        Poly::var_slot(ctx, 0)
    }

    /// The `i`-th λ-variable (0-based).
    pub fn lambda(ctx: &Ctx, i: usize) -> Self {
        Poly::var_slot(ctx, i + 1)
    }

    pub fn var(ctx: &Ctx, name: &str) -> Result<Self> {
        ctx.slot_of(name)
            .map(|s| Poly::var_slot(ctx, s))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &Ctx, terms: I) -> Self {
        let mut out = Poly::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), ctx.len() + 1, "exponent vector length");
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                add_rat(o.get_mut(), c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the constant if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn d_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::d_degree).max()
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::lambda_degree).max()
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut out = Poly::zero(&self.ctx);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        if let Some(c) = other.constant_term_only() {
            return Ok(if c.is_one() { self.clone() } else { self.scale(c) });
        }
        if let Some(c) = self.constant_term_only() {
            return Ok(if c.is_one() { other.clone() } else { other.scale(c) });
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), mul_rat(ca, cb));
            }
        }
        Ok(out)
    }

    /// In-place `self += other`; panics on context mismatch.
    pub fn add_assign_ref(&mut self, other: &Poly) {
        self.check_ctx(other).expect("variable contexts differ");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// In-place `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &Poly) {
        self.check_ctx(other).expect("variable contexts differ");
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), mul_rat(factor, c));
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), mul_rat(v, c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Positional substitution: variable slot `i` (0 is `∂`) is replaced by
    /// `images[i]`, a polynomial in `out`.
    pub fn compose(&self, out: &Ctx, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ctx.len() + 1, "one image per variable");
        for im in images {
            assert!(
                Arc::ptr_eq(im.ctx(), out) || **im.ctx() == **out,
                "images must live in the output context"
            );
        }
        let mut result = Poly::zero(out);
        if self.is_zero() {
            return result;
        }
        // renaming variables needs no multiplication
        let slots: Option<Vec<usize>> = images.iter().map(Poly::as_variable).collect();
        if let Some(slots) = slots {
            for (m, c) in &self.terms {
                let mut e = vec![0u16; out.len() + 1];
                for (i, &k) in m.exps.iter().enumerate() {
                    e[slots[i]] += k;
                }
                result.add_term(Monomial::new(e), c.clone());
            }
            return result;
        }
        let max: Vec<u16> = (0..images.len())
            .map(|i| self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max)
            .map(|(im, &mx)| {
                let mut v = Vec::with_capacity(mx as usize + 1);
                v.push(Poly::one(out));
                for k in 1..=mx as usize {
                    let next = &v[k - 1] * im;
                    v.push(next);
                }
                v
            })
            .collect();
        for (m, c) in &self.terms {
            let mut t: Option<Poly> = None;
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    let p = &powers[i][e as usize];
                    t = Some(match t {
                        None => p.clone(),
                        Some(t) => &t * p,
                    });
                }
            }
            match t {
                None => result.add_term(Monomial::one(out.len() + 1), c.clone()),
                Some(t) => result.add_scaled(c, &t),
            }
        }
        result
    }

    fn constant_term_only(&self) -> Option<&Rational> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.deg == 0 => Some(c),
            _ => None,
        }
    }

    /// The slot of a bare variable (coefficient 1, degree 1).
    fn as_variable(&self) -> Option<usize> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if m.deg == 1 && c.is_one() => m.exps.iter().position(|&e| e == 1),
            _ => None,
        }
    }

    /// Simultaneous substitution by variable name. Unassigned variables map
    /// to the variable of the same name in `out`.
    pub fn substitute(&self, assignments: &[(&str, Poly)], out: &Ctx) -> Result<Poly> {
        for (name, im) in assignments {
            if self.ctx.slot_of(name).is_none() {
                return Err(Error::UnknownVariable(name.to_string()));
            }
            if !(Arc::ptr_eq(im.ctx(), out) || **im.ctx() == **out) {
                return Err(Error::ContextMismatch);
            }
        }
        let mut images = Vec::with_capacity(self.ctx.len() + 1);
        for slot in 0..=self.ctx.len() {
            let name = if slot == 0 {
                D_NAME
            } else {
                self.ctx.names()[slot - 1].as_str()
            };
            let assigned = assignments
                .iter()
                .rev()
                .find(|(n, _)| self.ctx.slot_of(n) == Some(slot))
                .map(|(_, p)| p.clone());
            match assigned {
                Some(p) => images.push(p),
                None => images.push(Poly::var(out, name)?),
            }
        }
        Ok(self.compose(out, &images))
    }

    /// Re-express in a context with the same number of variables, matching
    /// positionally.
    pub fn rename(&self, out: &Ctx) -> Poly {
        assert_eq!(out.len(), self.ctx.len(), "rename keeps the variable count");
        Poly {
            ctx: out.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Embed into a larger context: slot `i` goes to slot `map[i]`.
    pub fn embed(&self, out: &Ctx, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ctx.len() + 1);
        let n = out.len() + 1;
        Poly::from_terms(
            out,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exps.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("variable contexts differ")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("variable contexts differ")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("variable contexts differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if i == 0 {
                    D_NAME
                } else {
                    self.ctx.names()[i - 1].as_str()
                };
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ctx.names().join(","), self)
    }
}

fn factorial(j: usize) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Splits a polynomial in `(∂, λ)` into its j-th products: the `c_j(∂)` with
/// `p = Σ_j (λ^j / j!) c_j(∂)`. Trailing zero products are dropped.
pub fn lambda_to_jproducts(p: &Poly) -> Result<Vec<Poly>> {
    if p.ctx().len() != 1 {
        return Err(Error::InvalidContext(format!(
            "expected exactly one λ-variable, found {}",
            p.ctx().len()
        )));
    }
    let d_ctx = VarCtx::canonical(0);
    let top = p.terms().map(|(m, _)| m.exps()[1] as usize).max();
    let Some(top) = top else {
        return Ok(Vec::new());
    };
    let mut out: Vec<Poly> = (0..=top).map(|_| Poly::zero(&d_ctx)).collect();
    for (m, c) in p.terms() {
        let j = m.exps()[1] as usize;
        let coeff = c * Rational::from_integer(factorial(j));
        out[j].add_term(Monomial::new(vec![m.exps()[0]]), coeff);
    }
    while out.last().is_some_and(Poly::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// Inverse of [`lambda_to_jproducts`]: assembles `Σ_j (λ^j / j!) c_j(∂)` in
/// the single-variable context `ctx`.
pub fn jproducts_to_lambda(products: &[Poly], ctx: &Ctx) -> Result<Poly> {
    if ctx.len() != 1 {
        return Err(Error::InvalidContext(
            "expected exactly one λ-variable".into(),
        ));
    }
    let mut out = Poly::zero(ctx);
    for (j, c) in products.iter().enumerate() {
        if !c.ctx().is_empty() {
            return Err(Error::InvalidContext(
                "j-th products must be polynomials in ∂ only".into(),
            ));
        }
        let inv = Rational::new(BigInt::one(), factorial(j));
        for (m, v) in c.terms() {
            out.add_term(Monomial::new(vec![m.exps()[0], j as u16]), v * &inv);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corering::rat_frac;

    fn ctx(names: &[&str]) -> Ctx {
        VarCtx::new(names).unwrap()
    }

    #[test]
    fn cancellation_and_difference_of_squares() {
        let c = ctx(&["l"]);
        let d = Poly::d(&c);
        let l = Poly::var(&c, "l").unwrap();
        let two = Poly::int(&c, 2);
        let a = &d + &(&two * &l);
        let b = -(&two * &l);
        assert_eq!(&a + &b, d);
        let sq = &(&d + &l) * &(&d - &l);
        assert_eq!(sq, &(&d * &d) - &(&l * &l));
    }

    #[test]
    fn binomial_identity_is_zero() {
        let c = ctx(&["l", "m"]);
        let l = Poly::var(&c, "l").unwrap();
        let m = Poly::var(&c, "m").unwrap();
        let lhs = (&l + &m).pow(2);
        let rhs = &(&(&l * &l) + &(&Poly::int(&c, 2) * &(&l * &m))) + &(&m * &m);
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = Poly::d(&ctx(&["l"]));
        let b = Poly::d(&ctx(&["m"]));
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn substitution_examples() {
        let c = ctx(&["l"]);
        let d = Poly::d(&c);
        let l = Poly::var(&c, "l").unwrap();
        let p = &d + &(&Poly::int(&c, 2) * &l);
        let dagger = &(-&d) - &l;
        let got = p.substitute(&[("l", dagger)], &c).unwrap();
        assert_eq!(got, &(-&d) - &(&Poly::int(&c, 2) * &l));

        let c2 = ctx(&["l", "m"]);
        let l2 = Poly::var(&c2, "l").unwrap();
        let m2 = Poly::var(&c2, "m").unwrap();
        let lm = &l2 * &m2;
        let got = lm.substitute(&[("l", &l2 + &m2)], &c2).unwrap();
        assert_eq!(got, &lm + &(&m2 * &m2));

        assert_eq!(d.substitute(&[], &c).unwrap(), d);
        assert!(matches!(
            d.substitute(&[("q", d.clone())], &c),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn jproduct_examples() {
        let c = ctx(&["l"]);
        let d = Poly::d(&c);
        let l = Poly::var(&c, "l").unwrap();
        let p = &d + &(&Poly::int(&c, 2) * &l);
        let js = lambda_to_jproducts(&p).unwrap();
        let c0 = VarCtx::canonical(0);
        assert_eq!(js, vec![Poly::d(&c0), Poly::int(&c0, 2)]);
        assert!(lambda_to_jproducts(&Poly::zero(&c)).unwrap().is_empty());
        let js = lambda_to_jproducts(&(&l * &l)).unwrap();
        assert_eq!(js, vec![Poly::zero(&c0), Poly::zero(&c0), Poly::int(&c0, 2)]);
        assert_eq!(jproducts_to_lambda(&js, &c).unwrap(), &l * &l);
    }

    #[test]
    fn display_is_canonical() {
        let c = ctx(&["l"]);
        let d = Poly::d(&c);
        let l = Poly::var(&c, "l").unwrap();
        let p = &(&d * &d) - &l.scale(&rat_frac(1, 2));
        assert_eq!(p.to_string(), "D^2 - 1/2*l");
        assert_eq!(Poly::zero(&c).to_string(), "0");
        assert_eq!((-&d).to_string(), "-D");
    }

    #[test]
    fn reserved_names_rejected() {
        assert!(VarCtx::new(&["D"]).is_err());
        assert!(VarCtx::new(&["l", "l"]).is_err());
    }
}
