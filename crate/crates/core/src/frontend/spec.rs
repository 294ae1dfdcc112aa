//! Resolved presentation files: modules, named maps and elements.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::Zero;

use super::lexer::{ParseError, Span};
use super::parser::{parse_items, Expr, Item, Name};
use crate::cat2::{TwoAlg, TwoAlgHom, TwoVectorSpace};
use crate::confcore::{ConfModule, ModValue, Module, SesqMap};
use crate::corering::{Ctx, Poly, Rational, VarCtx, D_NAME};
use crate::error::{Error, Result};
use crate::leibcoh::{Cochain, ConfRep, LeibnizConfAlg};
use crate::linfty::{Flavor, HomotopyOps};
use crate::twoterm::{CrossedModule, TwoTermAlg, TwoTermHom};

/// A parsed `.lcf` file with every name resolved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub meta: Vec<(String, String)>,
    pub modules: Vec<Module>,
    pub maps: Vec<(String, SesqMap)>,
    pub elements: Vec<(String, ModValue)>,
}

/// Default λ-variable names for an `n`-ary map: `l` when binary, otherwise
/// `l1 … l(n-1)`.
pub fn default_ctx(arity: usize) -> Ctx {
    if arity == 2 {
        VarCtx::new(&["l"]).expect("valid name")
    } else {
        VarCtx::canonical(arity.saturating_sub(1))
    }
}

pub fn parse(src: &str) -> std::result::Result<SpecFile, ParseError> {
    let items = parse_items(src)?;
    let mut spec = SpecFile::default();
    for item in items {
        resolve_item(&mut spec, item)?;
    }
    Ok(spec)
}

fn err(span: Span, msg: impl Into<String>) -> ParseError {
    ParseError::new(span, msg)
}

fn find_module<'a>(spec: &'a SpecFile, n: &Name) -> std::result::Result<&'a Module, ParseError> {
    spec.modules
        .iter()
        .find(|m| m.name() == n.text)
        .ok_or_else(|| err(n.span, format!("undeclared module `{}`", n.text)))
}

fn resolve_item(spec: &mut SpecFile, item: Item) -> std::result::Result<(), ParseError> {
    match item {
        Item::Meta { key, value } => {
            if spec.meta.iter().any(|(k, _)| *k == key.text) {
                return Err(err(key.span, format!("duplicate meta key `{}`", key.text)));
            }
            spec.meta.push((key.text, value));
        }
        Item::Module { name, basis, graded } => {
            if spec.modules.iter().any(|m| m.name() == name.text) {
                return Err(err(name.span, format!("duplicate module `{}`", name.text)));
            }
            for (i, (b, _)) in basis.iter().enumerate() {
                if basis[..i].iter().any(|(c, _)| c.text == b.text) {
                    return Err(err(b.span, format!("duplicate basis element `{}`", b.text)));
                }
            }
            let names: Vec<&str> = basis.iter().map(|(b, _)| b.text.as_str()).collect();
            let module = if graded {
                let degrees: Vec<i32> = basis.iter().map(|(_, d)| *d).collect();
                ConfModule::graded(&name.text, &names, &degrees)
            } else {
                ConfModule::new(&name.text, &names)
            }
            .map_err(|e| err(name.span, e.to_string()))?;
            spec.modules.push(module);
        }
        Item::Map {
            name,
            sources,
            target,
            degree,
            vars,
            entries,
        } => {
            if spec.maps.iter().any(|(n, _)| *n == name.text) {
                return Err(err(name.span, format!("duplicate map `{}`", name.text)));
            }
            let (sources, target) = match (sources, target) {
                (Some(s), Some(t)) => {
                    let s = s.iter().map(|n| find_module(spec, n).cloned()).collect::<std::result::Result<Vec<_>, _>>()?;
                    (s, find_module(spec, &t)?.clone())
                }
                _ => {
                    let m = infer_bracket_module(spec, &name, entries.first().map(|e| &e.args[0]))?;
                    (vec![m.clone(), m.clone()], m)
                }
            };
            let arity = sources.len();
            let ctx = match vars {
                Some((names, span)) => {
                    if names.len() + 1 != arity {
                        return Err(err(
                            span,
                            format!("a map of arity {arity} takes {} λ-variables, found {}", arity - 1, names.len()),
                        ));
                    }
                    let texts: Vec<&str> = names.iter().map(|n| n.text.as_str()).collect();
                    VarCtx::new(&texts).map_err(|e| err(span, e.to_string()))?
                }
                None => default_ctx(arity),
            };
            let mut map = SesqMap::new(sources.clone(), target.clone(), degree);
            let mut seen = BTreeMap::new();
            for e in entries {
                if e.args.len() != arity {
                    return Err(err(
                        e.span,
                        format!("map `{}` takes {arity} arguments, entry has {}", name.text, e.args.len()),
                    ));
                }
                let mut tuple = Vec::with_capacity(arity);
                for (a, m) in e.args.iter().zip(&sources) {
                    let i = m.index_of(&a.text).ok_or_else(|| {
                        err(a.span, format!("undeclared basis element `{}` of module `{}`", a.text, m.name()))
                    })?;
                    tuple.push(i);
                }
                if seen.insert(tuple.clone(), ()).is_some() {
                    return Err(err(e.span, "duplicate entry"));
                }
                let value = eval_value(&e.value, &ctx, &target)?;
                map.set(&tuple, value).map_err(|x| err(e.span, x.to_string()))?;
            }
            spec.maps.push((name.text, map));
        }
        Item::Element { name, module, value } => {
            if spec.elements.iter().any(|(n, _)| *n == name.text) {
                return Err(err(name.span, format!("duplicate element `{}`", name.text)));
            }
            let m = find_module(spec, &module)?.clone();
            let v = eval_value(&value, &VarCtx::canonical(0), &m)?;
            spec.elements.push((name.text, v));
        }
    }
    Ok(())
}

fn infer_bracket_module(spec: &SpecFile, at: &Name, first: Option<&Name>) -> std::result::Result<Module, ParseError> {
    if let Some(b) = first {
        let hits: Vec<&Module> = spec.modules.iter().filter(|m| m.index_of(&b.text).is_some()).collect();
        return match hits.as_slice() {
            [m] => Ok((*m).clone()),
            [] => Err(err(b.span, format!("undeclared basis element `{}`", b.text))),
            _ => Err(err(b.span, format!("`{}` is ambiguous; write `bracket MODULE`", b.text))),
        };
    }
    match spec.modules.as_slice() {
        [m] => Ok(m.clone()),
        _ => Err(err(at.span, "cannot infer the module of an empty bracket; write `bracket MODULE`")),
    }
}

enum Val {
    S(Poly),
    V(ModValue),
}

fn eval_value(e: &Expr, ctx: &Ctx, target: &Module) -> std::result::Result<ModValue, ParseError> {
    match eval(e, ctx, target)? {
        Val::V(v) => Ok(v),
        Val::S(p) if p.is_zero() => Ok(ModValue::zero(target, ctx)),
        Val::S(_) => Err(err(e.span(), format!("expected an element of `{}`, found a scalar", target.name()))),
    }
}

fn eval(e: &Expr, ctx: &Ctx, target: &Module) -> std::result::Result<Val, ParseError> {
    Ok(match e {
        Expr::Int(n, _) => Val::S(Poly::constant(ctx, Rational::from_integer(n.clone()))),
        Expr::Name(n) => {
            if !n.quoted && n.text == D_NAME {
                Val::S(Poly::d(ctx))
            } else if !n.quoted && ctx.slot_of(&n.text).is_some() {
                Val::S(Poly::var(ctx, &n.text).expect("known variable"))
            } else if let Some(i) = target.index_of(&n.text) {
                Val::V(ModValue::basis(target, ctx, i))
            } else {
                return Err(err(
                    n.span,
                    format!("unknown name `{}`: not a variable or a basis element of `{}`", n.text, target.name()),
                ));
            }
        }
        Expr::Neg(a, _) => match eval(a, ctx, target)? {
            Val::S(p) => Val::S(-&p),
            Val::V(v) => Val::V(v.neg()),
        },
        Expr::Pow(a, k, span) => match eval(a, ctx, target)? {
            Val::S(p) => Val::S(p.pow(*k)),
            Val::V(_) => return Err(err(*span, "cannot raise a module element to a power")),
        },
        Expr::Bin(op, a, b, span) => {
            let (x, y) = (eval(a, ctx, target)?, eval(b, ctx, target)?);
            match (op, x, y) {
                ('+', Val::S(p), Val::S(q)) => Val::S(&p + &q),
                ('-', Val::S(p), Val::S(q)) => Val::S(&p - &q),
                ('+', Val::V(u), Val::V(v)) => Val::V(add(&u, &v, false)),
                ('-', Val::V(u), Val::V(v)) => Val::V(add(&u, &v, true)),
                ('+' | '-', Val::V(u), Val::S(p)) | ('+', Val::S(p), Val::V(u)) if p.is_zero() => Val::V(u),
                ('-', Val::S(p), Val::V(u)) if p.is_zero() => Val::V(u.neg()),
                ('+' | '-', _, _) => return Err(err(*span, "cannot add a scalar and a module element")),
                ('*', Val::S(p), Val::S(q)) => Val::S(&p * &q),
                ('*', Val::S(p), Val::V(v)) | ('*', Val::V(v), Val::S(p)) => Val::V(v.mul_poly(&p)),
                ('*', Val::V(_), Val::V(_)) => return Err(err(*span, "cannot multiply two module elements")),
                ('/', x, Val::S(q)) => {
                    let c = q
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| err(*span, "can only divide by a nonzero number"))?;
                    let inv = c.recip();
                    match x {
                        Val::S(p) => Val::S(p.scale(&inv)),
                        Val::V(v) => Val::V(v.scale(&inv)),
                    }
                }
                ('/', _, Val::V(_)) => return Err(err(*span, "cannot divide by a module element")),
                _ => unreachable!("operators are + - * /"),
            }
        }
    })
}

fn add(u: &ModValue, v: &ModValue, sub: bool) -> ModValue {
    let mut out = u.clone();
    if sub {
        out.sub_assign(v);
    } else {
        out.add_assign(v);
    }
    out
}

fn is_plain(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn fmt_name(s: &str) -> String {
    if is_plain(s) {
        s.to_string()
    } else {
        format!("\"{s}\"")
    }
}

/// Prints a module element in the surface syntax, with λ-variables named
/// by `ctx`.
pub fn fmt_value(v: &ModValue, ctx: &Ctx) -> String {
    let mut out = String::new();
    for (i, c) in v.nonzero() {
        let raw = &v.module().basis()[i];
        let b = if is_plain(raw) && raw != D_NAME && ctx.slot_of(raw).is_none() {
            raw.clone()
        } else {
            format!("\"{raw}\"")
        };
        let c = c.rename(ctx);
        let term = match c.as_constant() {
            Some(k) if k.is_integer() => match k.to_string().as_str() {
                "1" => b,
                "-1" => format!("-{b}"),
                s => format!("{s} {b}"),
            },
            Some(k) if k < Rational::zero() => format!("-({}) {b}", -k),
            _ => format!("({c}) {b}"),
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            let _ = write!(out, " - {rest}");
        } else {
            let _ = write!(out, " + {term}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.meta {
            let v = if v.parse::<u64>().is_ok() { v.clone() } else { fmt_name(v) };
            writeln!(f, "meta {} = {v}", fmt_name(k))?;
        }
        for m in &self.modules {
            write!(f, "module {} {{", fmt_name(m.name()))?;
            if m.rank() > 0 {
                let basis: Vec<String> = (0..m.rank())
                    .map(|i| {
                        let b = fmt_name(&m.basis()[i]);
                        if m.is_graded() {
                            format!("{b}:{}", m.degree(i))
                        } else {
                            b
                        }
                    })
                    .collect();
                write!(f, " basis {} ", basis.join(", "))?;
            } else {
                write!(f, " ")?;
            }
            writeln!(f, "}}")?;
        }
        for (name, map) in &self.maps {
            let srcs: Vec<String> = map.sources().iter().map(|m| fmt_name(m.name())).collect();
            write!(f, "map {} : {} -> {}", fmt_name(name), srcs.join(", "), fmt_name(map.target().name()))?;
            if map.degree() != 0 {
                write!(f, " degree {}", map.degree())?;
            }
            if map.is_zero() {
                writeln!(f, " {{ }}")?;
                continue;
            }
            writeln!(f, " {{")?;
            let ctx = default_ctx(map.arity());
            for (t, v) in map.entries() {
                let args: Vec<String> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| fmt_name(&map.source(i).basis()[b]))
                    .collect();
                writeln!(f, "  [{}] = {}", args.join(", "), fmt_value(v, &ctx))?;
            }
            writeln!(f, "}}")?;
        }
        for (name, v) in &self.elements {
            writeln!(
                f,
                "element {} in {} {{ {} }}",
                fmt_name(name),
                fmt_name(v.module().name()),
                fmt_value(v, &VarCtx::canonical(0))
            )?;
        }
        Ok(())
    }
}

fn missing(kind: &str, name: &str) -> Error {
    Error::Malformed(format!("missing {kind} `{name}`"))
}

impl SpecFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_meta(&mut self, key: &str, value: &str) {
        match self.meta.iter_mut().find(|(k, _)| k == key) {
            Some(kv) => kv.1 = value.to_string(),
            None => self.meta.push((key.to_string(), value.to_string())),
        }
    }

    /// Declares a module; an identical redeclaration is a no-op.
    pub fn add_module(&mut self, m: &Module) -> Result<()> {
        match self.modules.iter().find(|x| x.name() == m.name()) {
            Some(x) if x == m => Ok(()),
            Some(_) => Err(Error::Malformed(format!("two different modules named `{}`", m.name()))),
            None => {
                self.modules.push(m.clone());
                Ok(())
            }
        }
    }

    /// Adds a map, declaring its modules; replaces a map of the same name.
    pub fn add_map(&mut self, name: &str, map: &SesqMap) -> Result<()> {
        for m in map.sources() {
            self.add_module(m)?;
        }
        self.add_module(map.target())?;
        match self.maps.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = map.clone(),
            None => self.maps.push((name.to_string(), map.clone())),
        }
        Ok(())
    }

    pub fn add_element(&mut self, name: &str, v: &ModValue) -> Result<()> {
        self.add_module(v.module())?;
        self.elements.retain(|(n, _)| n != name);
        self.elements.push((name.to_string(), v.clone()));
        Ok(())
    }

    pub fn get_map(&self, name: &str) -> Option<&SesqMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn map(&self, name: &str) -> Result<&SesqMap> {
        self.get_map(name).ok_or_else(|| missing("map", name))
    }

    pub fn get_element(&self, name: &str) -> Option<&ModValue> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn has(&self, name: &str) -> bool {
        self.get_map(name).is_some() || self.get_element(name).is_some()
    }

    // ----- domain objects out -----

    pub fn algebra(&self) -> Result<LeibnizConfAlg> {
        LeibnizConfAlg::raw(self.map("bracket")?.clone())
    }

    /// The representation given by `left`/`right`; without `left` it is the
    /// adjoint one, and a missing `right` is zero.
    pub fn rep(&self) -> Result<ConfRep> {
        let alg = self.algebra()?;
        let Some(left) = self.get_map("left") else {
            return Ok(ConfRep::adjoint(&alg));
        };
        let m = left.target().clone();
        let right = match self.get_map("right") {
            Some(r) => r.clone(),
            None => SesqMap::new(vec![m.clone(), alg.module().clone()], m, 0),
        };
        ConfRep::raw(&alg, left.clone(), right)
    }

    /// A cochain stored either as a map or (in degree 0) as an element.
    pub fn cochain(&self, name: &str) -> Result<Cochain> {
        if let Some(m) = self.get_map(name) {
            return Ok(Cochain::Map(m.clone()));
        }
        match self.get_element(name) {
            Some(v) => Cochain::from_value(v),
            None => Err(missing("cochain", name)),
        }
    }

    /// Operations `rho1, rho2, …` (flavor from `meta flavor`), or the
    /// degree-0 structure of `bracket` when there are none.
    pub fn ops(&self) -> Result<HomotopyOps> {
        let flavor = match self.meta("flavor") {
            None | Some("unshifted") => Flavor::Unshifted,
            Some("shifted") => Flavor::Shifted,
            Some(other) => return Err(Error::Malformed(format!("unknown flavor `{other}`"))),
        };
        let rhos: Vec<(usize, &SesqMap)> = self
            .maps
            .iter()
            .filter_map(|(n, m)| n.strip_prefix("rho").and_then(|k| k.parse().ok()).map(|k| (k, m)))
            .collect();
        if rhos.is_empty() {
            if flavor == Flavor::Unshifted && self.get_map("bracket").is_some() {
                return Ok(HomotopyOps::from_leibniz(&self.algebra()?));
            }
            return match self.modules.as_slice() {
                [m] => Ok(HomotopyOps::new(flavor, m)),
                _ => Err(missing("operations", "rho1, rho2, …")),
            };
        }
        let module = rhos[0].1.target().clone();
        let mut ops = HomotopyOps::new(flavor, &module);
        for (k, m) in rhos {
            if m.arity() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: m.arity(),
                });
            }
            ops.set(m.clone())?;
        }
        Ok(ops)
    }

    pub fn two_term(&self) -> Result<TwoTermAlg> {
        let d = self.map("d")?.clone();
        let (g1, g0) = (d.source(0).clone(), d.target().clone());
        let or_zero = |name: &str, srcs: Vec<Module>, tgt: &Module| {
            self.get_map(name).cloned().unwrap_or_else(|| SesqMap::new(srcs, tgt.clone(), 0))
        };
        TwoTermAlg::raw(
            d,
            or_zero("rho00", vec![g0.clone(), g0.clone()], &g0),
            or_zero("rho01", vec![g0.clone(), g1.clone()], &g1),
            or_zero("rho10", vec![g1.clone(), g0.clone()], &g1),
            or_zero("rho3", vec![g0.clone(); 3], &g1),
        )
    }

    pub fn crossed(&self) -> Result<CrossedModule> {
        CrossedModule::raw(
            LeibnizConfAlg::raw(self.map("bracket_g")?.clone())?,
            LeibnizConfAlg::raw(self.map("bracket_h")?.clone())?,
            self.map("d")?.clone(),
            self.map("phi_l")?.clone(),
            self.map("phi_r")?.clone(),
        )
    }

    pub fn two_alg(&self) -> Result<TwoAlg> {
        let space = TwoVectorSpace::from_complex(self.map("d")?)?;
        let leib = match self.get_map("leibnizator") {
            Some(m) => m.clone(),
            None => SesqMap::new(vec![space.c0().clone(); 3], space.k().clone(), 0),
        };
        TwoAlg::raw(space, self.map("bracket0")?.clone(), self.map("bracket1")?.clone(), leib)
    }

    pub fn two_term_hom(&self) -> Result<TwoTermHom> {
        Ok(TwoTermHom {
            f0: self.map("f0")?.clone(),
            f1: self.map("f1")?.clone(),
            f2: self.map("f2")?.clone(),
        })
    }

    pub fn two_alg_hom(&self) -> Result<TwoAlgHom> {
        Ok(TwoAlgHom {
            f0: self.map("f0")?.clone(),
            f1: self.map("f1")?.clone(),
            f2: self.map("f2")?.clone(),
        })
    }

    // ----- domain objects in -----

    pub fn from_algebra(alg: &LeibnizConfAlg) -> Result<Self> {
        let mut s = SpecFile::default();
        s.add_module(alg.module())?;
        s.add_map("bracket", alg.bracket())?;
        Ok(s)
    }

    pub fn from_rep(rep: &ConfRep) -> Result<Self> {
        let mut s = SpecFile::from_algebra(rep.alg())?;
        s.add_module(rep.module())?;
        s.add_map("left", rep.left())?;
        s.add_map("right", rep.right())?;
        Ok(s)
    }

    pub fn add_cochain(&mut self, name: &str, c: &Cochain) -> Result<()> {
        match c {
            Cochain::Zero(v) => self.add_element(name, v),
            Cochain::Map(m) => self.add_map(name, m),
        }
    }

    pub fn from_ops(ops: &HomotopyOps) -> Result<Self> {
        let mut s = SpecFile::default();
        if ops.flavor() == Flavor::Shifted {
            s.set_meta("flavor", "shifted");
        }
        s.add_module(ops.module())?;
        for (k, m) in ops.ops() {
            s.add_map(&format!("rho{k}"), m)?;
        }
        Ok(s)
    }

    pub fn from_two_term(a: &TwoTermAlg) -> Result<Self> {
        let mut s = SpecFile::default();
        s.add_module(a.g0())?;
        s.add_module(a.g1())?;
        s.add_map("d", a.d())?;
        for (n, m) in [("rho00", a.rho00()), ("rho01", a.rho01()), ("rho10", a.rho10()), ("rho3", a.rho3())] {
            s.add_map(n, m)?;
        }
        Ok(s)
    }

    pub fn from_crossed(x: &CrossedModule) -> Result<Self> {
        let mut s = SpecFile::default();
        s.add_map("bracket_g", x.g().bracket())?;
        s.add_map("bracket_h", x.h().bracket())?;
        s.add_map("d", x.d())?;
        s.add_map("phi_l", x.phi_l())?;
        s.add_map("phi_r", x.phi_r())?;
        Ok(s)
    }

    pub fn from_two_alg(a: &TwoAlg) -> Result<Self> {
        let sp = a.space();
        let mut s = SpecFile::default();
        s.add_module(sp.c0())?;
        s.add_module(sp.k())?;
        s.add_module(sp.c1())?;
        s.add_map("d", sp.d())?;
        s.add_map("bracket0", a.bracket0())?;
        s.add_map("bracket1", a.bracket1())?;
        s.add_map("leibnizator", a.leibnizator())?;
        Ok(s)
    }

    pub fn from_hom_maps(f0: &SesqMap, f1: &SesqMap, f2: &SesqMap) -> Result<Self> {
        let mut s = SpecFile::default();
        s.add_map("f0", f0)?;
        s.add_map("f1", f1)?;
        s.add_map("f2", f2)?;
        Ok(s)
    }
}
