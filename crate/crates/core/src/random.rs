//! Seeded random structures for property tests, benches and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::confcore::{ModValue, Module, SesqMap};
use crate::corering::{rat, Ctx, Monomial, Poly, VarCtx};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monomials in `1 + nlambda` variables with `∂`-degree at most `max_d` and
/// total λ-degree at most `max_l`.
pub fn monomials(nlambda: usize, max_d: u32, max_l: u32) -> Vec<Monomial> {
    let mut lam: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..nlambda {
        let mut next = Vec::new();
        for p in &lam {
            let used: u32 = p.iter().map(|&e| e as u32).sum();
            for e in 0..=(max_l - used) {
                let mut q = p.clone();
                q.push(e as u16);
                next.push(q);
            }
        }
        lam = next;
    }
    let mut out = Vec::new();
    for d in 0..=max_d {
        for l in &lam {
            let mut e = vec![d as u16];
            e.extend_from_slice(l);
            out.push(Monomial::new(e));
        }
    }
    out.sort();
    out
}

/// Nonzero integer in `[-3, 3]`.
pub fn small_int<R: Rng>(rng: &mut R) -> i64 {
    *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty")
}

/// Random polynomial with each admissible monomial present with probability
/// `density`.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: &Ctx, max_d: u32, max_l: u32, density: f64) -> Poly {
    let mut terms = Vec::new();
    for m in monomials(ctx.len(), max_d, max_l) {
        if rng.gen_bool(density) {
            terms.push((m, rat(small_int(rng))));
        }
    }
    Poly::from_terms(ctx, terms)
}

/// Random value of `module`, restricted to basis elements of degree `deg`
/// when given.
pub fn random_value<R: Rng>(
    rng: &mut R,
    module: &Module,
    ctx: &Ctx,
    deg: Option<i32>,
    max_d: u32,
    max_l: u32,
    density: f64,
) -> ModValue {
    let coeffs = (0..module.rank())
        .map(|i| {
            if deg.is_some_and(|d| module.degree(i) != d) {
                Poly::zero(ctx)
            } else {
                random_poly(rng, ctx, max_d, max_l, density)
            }
        })
        .collect();
    ModValue::from_coeffs(module, ctx, coeffs).expect("shape")
}

/// Random homogeneous sesquilinear map.
pub fn random_sesq<R: Rng>(
    rng: &mut R,
    sources: Vec<Module>,
    target: Module,
    degree: i32,
    max_d: u32,
    max_l: u32,
    density: f64,
) -> SesqMap {
    let mut out = SesqMap::new(sources, target.clone(), degree);
    let ctx = out.ctx().clone();
    for t in out.tuples() {
        let deg: i32 = t
            .iter()
            .enumerate()
            .map(|(i, &b)| out.source(i).degree(b))
            .sum::<i32>()
            + degree;
        let v = random_value(rng, &target, &ctx, Some(deg), max_d, max_l, density);
        out.set(&t, v).expect("homogeneous by construction");
    }
    out
}

/// Random plain element (coefficients in `ℚ[∂]`).
pub fn random_plain<R: Rng>(rng: &mut R, module: &Module, max_d: u32, density: f64) -> ModValue {
    random_value(rng, module, &VarCtx::canonical(0), None, max_d, 0, density)
}
