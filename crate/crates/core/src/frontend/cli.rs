//! Command-line dispatch: `leibconf VERB FILE… [flags]`.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage, parse or input error. With `--json`
//! the report goes to stdout; the human summary always goes to stderr.
//! Transforming verbs print their result in the `.lcf` syntax on stdout
//! (or in the report's `output` field with `--json`).

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};

use super::explain::explain;
use super::fixtures;
use super::report::{Report, Status};
use super::spec::{parse, SpecFile};
use crate::cat2::{
    alpha_inverse, alpha_iso, compose_2alg_hom, functor_s, functor_t, id_2alg_hom, verify_2alg_hom,
};
use crate::leibcoh::{coboundary, find_coboundary_preimage, random_cochain, Bounds, Cochain};
use crate::linfty::{
    cochain_embedding, failures_per_n, linfty_coboundary, maurer_cartan_report, shift, unshift,
    verify_leib_infty, Flavor, HomotopyOps,
};
use crate::twoterm::{
    crossed_to_strict, find_equivalence, gauge_transform, skeletal_equivalent, skeletal_to_triple,
    strict_to_crossed, triple_to_skeletal, verify_crossed, verify_hom,
};
use crate::{par, random, zoo};

#[derive(Parser, Debug)]
#[command(
    name = "leibconf",
    version,
    about = "Exact checks for Leibniz conformal algebras and their homotopy and categorified versions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    verb: Option<Verb>,
    /// Largest arity n of homotopy identities to check.
    #[arg(long, global = true, default_value_t = 4)]
    nmax: usize,
    /// ∂-degree bound for preimage and equivalence searches.
    #[arg(long, global = true, default_value_t = 2)]
    max_ddeg: i64,
    /// λ-degree bound for preimage and equivalence searches.
    #[arg(long, global = true, default_value_t = 2)]
    max_ldeg: i64,
    /// Seed for randomized verbs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for per-tuple checks (0: all cores, 1: sequential).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Print the JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall time in reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Print what an identity id in a report stands for.
    #[arg(long, value_name = "IDENTITY")]
    explain: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Leibniz identity of `bracket`.
    CheckLeibniz { file: String },
    /// Representation axioms of `left`/`right` (adjoint when absent).
    CheckRep { file: String },
    /// Coboundary of a cochain.
    Delta {
        file: String,
        /// Expected degree of the input cochain.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value = "phi")]
        cochain: String,
    },
    /// Whether a cochain is closed.
    IsCocycle {
        file: String,
        #[arg(long, default_value = "phi")]
        cochain: String,
    },
    /// Bounded search for τ with δτ = ψ.
    SolvePreimage {
        file: String,
        #[arg(long, default_value = "phi")]
        cochain: String,
    },
    /// Homotopy Leibniz identities up to `--nmax`.
    CheckLinfty { file: String },
    /// Décalage to the shifted operations.
    Shift { file: String },
    /// Inverse décalage.
    Unshift { file: String },
    /// Maurer–Cartan equation of the shifted operations.
    CheckMc { file: String },
    /// Coboundary of a Leibniz cochain computed in the graded Lie algebra.
    LinftyDelta {
        file: String,
        #[arg(long, default_value = "phi")]
        cochain: String,
    },
    /// Conditions (ii)–(ix) of a 2-term algebra.
    #[command(name = "check-2term")]
    CheckTwoTerm { file: String },
    /// Homomorphism conditions of `f0, f1, f2` from SOURCE to TARGET.
    CheckHom { source: String, target: String, hom: String },
    /// Algebra, representation and 3-cocycle of a skeletal algebra.
    SkeletalExtract { file: String },
    /// Equivalence of two skeletal algebras, via `--tau` or a bounded search.
    SkeletalEquiv {
        first: String,
        second: String,
        /// File with the 2-cochain `tau`.
        #[arg(long)]
        tau: Option<String>,
    },
    /// Crossed module of a strict 2-term algebra.
    StrictToCrossed { file: String },
    /// Strict 2-term algebra of a crossed module.
    CrossedToStrict { file: String },
    /// Crossed module axioms.
    CheckCrossed { file: String },
    /// The 2-algebra of a 2-term algebra.
    FunctorT { file: String },
    /// The 2-term algebra of a 2-algebra.
    FunctorS { file: String },
    /// Axioms of a 2-algebra.
    #[command(name = "check-2alg")]
    CheckTwoAlg { file: String },
    /// The natural isomorphism between a 2-algebra and T(S(·)) of it.
    Alpha { file: String },
    /// Round trips through every correspondence that applies to the input.
    Roundtrip { file: String },
    /// Canonical form of a file.
    Print { file: String },
    /// List the built-in fixtures, or print one.
    Fixture { name: Option<String> },
    /// Randomized cross-checks between independent checkers.
    Selftest {
        #[arg(long, default_value_t = 20)]
        instances: usize,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::CheckLeibniz { .. } => "check-leibniz",
            Verb::CheckRep { .. } => "check-rep",
            Verb::Delta { .. } => "delta",
            Verb::IsCocycle { .. } => "is-cocycle",
            Verb::SolvePreimage { .. } => "solve-preimage",
            Verb::CheckLinfty { .. } => "check-linfty",
            Verb::Shift { .. } => "shift",
            Verb::Unshift { .. } => "unshift",
            Verb::CheckMc { .. } => "check-mc",
            Verb::LinftyDelta { .. } => "linfty-delta",
            Verb::CheckTwoTerm { .. } => "check-2term",
            Verb::CheckHom { .. } => "check-hom",
            Verb::SkeletalExtract { .. } => "skeletal-extract",
            Verb::SkeletalEquiv { .. } => "skeletal-equiv",
            Verb::StrictToCrossed { .. } => "strict-to-crossed",
            Verb::CrossedToStrict { .. } => "crossed-to-strict",
            Verb::CheckCrossed { .. } => "check-crossed",
            Verb::FunctorT { .. } => "functor-t",
            Verb::FunctorS { .. } => "functor-s",
            Verb::CheckTwoAlg { .. } => "check-2alg",
            Verb::Alpha { .. } => "alpha",
            Verb::Roundtrip { .. } => "roundtrip",
            Verb::Print { .. } => "print",
            Verb::Fixture { .. } => "fixture",
            Verb::Selftest { .. } => "selftest",
        }
    }
}

/// Reads a file, or a built-in fixture written `zoo:NAME`.
pub fn load(path: &str) -> Result<SpecFile, String> {
    if let Some(name) = path.strip_prefix("zoo:") {
        return fixtures::get(name)
            .map(|f| f.spec)
            .ok_or_else(|| format!("no built-in fixture `{name}`"));
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse(&text).map_err(|e| format!("{path}:{e}"))
}

fn out_text(s: &SpecFile) -> String {
    s.to_string()
}

type Run = Result<Report, String>;

fn de<T>(r: crate::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Opts {
    nmax: usize,
    bounds: Bounds,
    seed: u64,
}

fn with_output(mut r: Report, spec: &SpecFile) -> Report {
    r.output = Some(out_text(spec));
    r
}

fn unshifted(ops: HomotopyOps) -> Result<HomotopyOps, String> {
    match ops.flavor() {
        Flavor::Unshifted => Ok(ops),
        Flavor::Shifted => de(unshift(&ops)),
    }
}

fn run(verb: &Verb, o: &Opts) -> Run {
    let cmd = verb.name();
    match verb {
        Verb::CheckLeibniz { file } => {
            let alg = de(load(file)?.algebra())?;
            Ok(Report::from_check(cmd, &alg.verify()))
        }
        Verb::CheckRep { file } => {
            let rep = de(load(file)?.rep())?;
            Ok(Report::from_check(cmd, &rep.verify()))
        }
        Verb::Delta { file, level, cochain } => {
            let s = load(file)?;
            let rep = de(s.rep())?;
            let phi = de(s.cochain(cochain))?;
            if let Some(l) = level {
                if *l != phi.degree() {
                    return Err(format!("`{cochain}` has degree {}, not {l}", phi.degree()));
                }
            }
            let d = de(coboundary(&rep, &phi))?;
            let mut out = SpecFile::default();
            de(out.add_cochain(&format!("d{cochain}"), &d))?;
            let mut r = Report::new(cmd);
            r.count("degree", d.degree() as u64);
            Ok(with_output(r, &out))
        }
        Verb::IsCocycle { file, cochain } => {
            let s = load(file)?;
            let rep = de(s.rep())?;
            let phi = de(s.cochain(cochain))?;
            let d = de(coboundary(&rep, &phi))?;
            let mut r = Report::new(cmd);
            r.count("degree", phi.degree() as u64);
            match &d {
                Cochain::Zero(v) if !v.is_zero() => r.fail("cocycle", vec![], v.to_string()),
                Cochain::Map(m) => {
                    for (t, v) in m.entries() {
                        let names = t.iter().enumerate().map(|(i, &b)| m.source(i).basis()[b].clone()).collect();
                        r.fail("cocycle", names, v.to_string());
                    }
                }
                _ => {}
            }
            Ok(r)
        }
        Verb::SolvePreimage { file, cochain } => {
            let s = load(file)?;
            let rep = de(s.rep())?;
            let psi = de(s.cochain(cochain))?;
            let mut r = Report::new(cmd);
            match de(find_coboundary_preimage(&rep, &psi, o.bounds))? {
                Some(tau) => {
                    let mut out = SpecFile::default();
                    de(out.add_cochain("tau", &tau))?;
                    Ok(with_output(r, &out))
                }
                None => {
                    r.fail(
                        "preimage",
                        vec![],
                        format!("none with ∂-degree ≤ {} and λ-degree ≤ {}", o.bounds.max_ddeg, o.bounds.max_ldeg),
                    );
                    Ok(r)
                }
            }
        }
        Verb::CheckLinfty { file } => {
            let ops = unshifted(de(load(file)?.ops())?)?;
            let rep = de(verify_leib_infty(&ops, o.nmax))?;
            let mut r = Report::from_check(cmd, &rep);
            for (i, n) in failures_per_n(&rep, o.nmax).into_iter().enumerate() {
                r.count(&format!("failures-n{}", i + 1), n as u64);
            }
            Ok(r)
        }
        Verb::Shift { file } => {
            let ops = de(load(file)?.ops())?;
            let sh = de(shift(&ops))?;
            Ok(with_output(Report::new(cmd), &de(SpecFile::from_ops(&sh))?))
        }
        Verb::Unshift { file } => {
            let ops = de(load(file)?.ops())?;
            let un = de(unshift(&ops))?;
            Ok(with_output(Report::new(cmd), &de(SpecFile::from_ops(&un))?))
        }
        Verb::CheckMc { file } => {
            let ops = de(load(file)?.ops())?;
            let ops = match ops.flavor() {
                Flavor::Shifted => ops,
                Flavor::Unshifted => de(shift(&ops))?,
            };
            let rep = de(maurer_cartan_report(&ops, o.nmax))?;
            let mut r = Report::from_check(cmd, &rep);
            for p in 1..=o.nmax {
                let n = rep.failures_for(&crate::linfty::mc_identity_id(p)).count();
                r.count(&format!("failures-p{p}"), n as u64);
            }
            Ok(r)
        }
        Verb::LinftyDelta { file, cochain } => {
            let s = load(file)?;
            let alg = de(s.algebra())?;
            let phi = s.map(cochain).map_err(|e| e.to_string())?;
            if phi.target() != alg.module() || phi.sources().iter().any(|m| m != alg.module()) {
                return Err(format!("`{cochain}` must map copies of `{}` to itself", alg.module().name()));
            }
            let rho = de(shift(&HomotopyOps::from_leibniz(&alg)))?;
            let d = de(linfty_coboundary(&rho, &de(cochain_embedding(phi))?, o.nmax))?;
            let mut out = SpecFile::default();
            for (k, m) in d.parts() {
                de(out.add_map(&format!("d{cochain}_{k}"), m))?;
            }
            Ok(with_output(Report::new(cmd), &out))
        }
        Verb::CheckTwoTerm { file } => {
            let a = de(load(file)?.two_term())?;
            Ok(Report::from_check(cmd, &a.verify()))
        }
        Verb::CheckHom { source, target, hom } => {
            let (a, b) = (de(load(source)?.two_term())?, de(load(target)?.two_term())?);
            let f = de(load(hom)?.two_term_hom())?;
            Ok(Report::from_check(cmd, &de(verify_hom(&a, &b, &f))?))
        }
        Verb::SkeletalExtract { file } => {
            let a = de(load(file)?.two_term())?;
            let (_, rep, theta) = de(skeletal_to_triple(&a))?;
            let mut out = de(SpecFile::from_rep(&rep))?;
            de(out.add_cochain("theta", &theta))?;
            Ok(with_output(Report::new(cmd), &out))
        }
        Verb::SkeletalEquiv { first, second, tau } => {
            let (a, b) = (de(load(first)?.two_term())?, de(load(second)?.two_term())?);
            let mut r = Report::new(cmd);
            match tau {
                Some(path) => {
                    let t = de(load(path)?.cochain("tau"))?;
                    let v = de(skeletal_equivalent(&a, &b, &t))?;
                    if !v.equivalent {
                        r.fail("equivalence", vec![], v.reason.unwrap_or_default());
                    }
                    Ok(r)
                }
                None => match de(find_equivalence(&a, &b, o.bounds))? {
                    Some(t) => {
                        let mut out = SpecFile::default();
                        de(out.add_cochain("tau", &t))?;
                        Ok(with_output(r, &out))
                    }
                    None => {
                        r.fail("equivalence", vec![], "no τ within the degree bounds");
                        Ok(r)
                    }
                },
            }
        }
        Verb::StrictToCrossed { file } => {
            let x = de(strict_to_crossed(&de(load(file)?.two_term())?))?;
            Ok(with_output(Report::new(cmd), &de(SpecFile::from_crossed(&x))?))
        }
        Verb::CrossedToStrict { file } => {
            let a = de(crossed_to_strict(&de(load(file)?.crossed())?))?;
            Ok(with_output(Report::new(cmd), &de(SpecFile::from_two_term(&a))?))
        }
        Verb::CheckCrossed { file } => {
            let x = de(load(file)?.crossed())?;
            Ok(Report::from_check(cmd, &verify_crossed(&x)))
        }
        Verb::FunctorT { file } => {
            let t = de(functor_t(&de(load(file)?.two_term())?))?;
            Ok(with_output(Report::new(cmd), &de(SpecFile::from_two_alg(&t))?))
        }
        Verb::FunctorS { file } => {
            let a = de(functor_s(&de(load(file)?.two_alg())?))?;
            Ok(with_output(Report::new(cmd), &de(SpecFile::from_two_term(&a))?))
        }
        Verb::CheckTwoAlg { file } => {
            let a = de(load(file)?.two_alg())?;
            Ok(Report::from_check(cmd, &a.verify()))
        }
        Verb::Alpha { file } => {
            let a = de(load(file)?.two_alg())?;
            let (ts, alpha) = de(alpha_iso(&a))?;
            let mut r = Report::from_check(cmd, &de(verify_2alg_hom(&ts, &a, &alpha))?);
            let inv = de(alpha_inverse(&a, &ts))?;
            r.absorb(&de(verify_2alg_hom(&a, &ts, &inv))?);
            if de(compose_2alg_hom(&inv, &alpha, &a, &ts))? != id_2alg_hom(&ts)
                || de(compose_2alg_hom(&alpha, &inv, &ts, &a))? != id_2alg_hom(&a)
            {
                r.fail("alpha-inverse", vec![], "α and its inverse do not compose to identities");
            }
            Ok(with_output(r, &de(SpecFile::from_hom_maps(&alpha.f0, &alpha.f1, &alpha.f2))?))
        }
        Verb::Roundtrip { file } => roundtrip(&load(file)?),
        Verb::Print { file } => Ok(with_output(Report::new(cmd), &load(file)?)),
        Verb::Fixture { name } => {
            let mut r = Report::new(cmd);
            match name {
                None => {
                    let names: Vec<String> = fixtures::all().into_iter().map(|f| f.name).collect();
                    r.output = Some(names.join("\n") + "\n");
                }
                Some(n) => {
                    let f = fixtures::get(n).ok_or_else(|| format!("no built-in fixture `{n}`"))?;
                    r.output = Some(out_text(&f.spec));
                }
            }
            Ok(r)
        }
        Verb::Selftest { instances } => selftest(*instances, o),
    }
}

fn roundtrip(s: &SpecFile) -> Run {
    let mut r = Report::new("roundtrip");
    if s.get_map("bracket1").is_some() {
        let a = de(s.two_alg())?;
        let back = de(functor_t(&de(functor_s(&a))?))?;
        r.count("checked", 1);
        if back != a {
            r.fail("roundtrip-ts", vec![], "T(S(A)) differs from A");
        }
        return Ok(r);
    }
    let a = de(s.two_term())?;
    let back = de(functor_s(&de(functor_t(&a))?))?;
    r.count("checked", 1);
    if back != a {
        r.fail("roundtrip-st", vec![], "S(T(A)) differs from A");
    }
    if a.is_strict() {
        r.count("checked", 1);
        if de(crossed_to_strict(&de(strict_to_crossed(&a))?))? != a {
            r.fail("roundtrip-crossed", vec![], "crossed round trip differs");
        }
    }
    if a.is_skeletal() {
        r.count("checked", 1);
        let (_, rep, theta) = de(skeletal_to_triple(&a))?;
        if de(triple_to_skeletal(&rep, &theta))? != a {
            r.fail("roundtrip-skeletal", vec![], "skeletal round trip differs");
        }
    }
    Ok(r)
}

/// Random instances checked by two independent routes: homotopy identities
/// against the Maurer–Cartan equation on gauge-transformed and perturbed
/// 2-term algebras, décalage inversion, and `δ² = 0` on the zoo.
fn selftest(instances: usize, o: &Opts) -> Run {
    let mut r = Report::new("selftest");
    let mut rng = random::rng(o.seed);
    let bases = [zoo::nil_strict(), zoo::skeletal_nil_fixture().0];
    for i in 0..instances {
        let base = &bases[i % bases.len()];
        let (g0, g1) = (base.g0().clone(), base.g1().clone());
        let tau = random::random_sesq(&mut rng, vec![g0.clone(); 2], g1.clone(), 0, 1, 1, 0.5);
        let mut a = de(gauge_transform(base, &tau))?;
        if i % 3 == 2 {
            let noise = random::random_sesq(&mut rng, vec![g0.clone(); 3], g1.clone(), 0, 1, 1, 0.5);
            a = de(a.with_rho3(de(a.rho3().try_add(&noise))?))?;
        }
        let ops = a.to_ops();
        let direct = de(verify_leib_infty(&ops, o.nmax))?.passed();
        let sh = de(shift(&ops))?;
        let mc = de(maurer_cartan_report(&sh, o.nmax))?.passed();
        r.count("checked", 2);
        if direct != mc {
            r.fail("oracle-mc", vec![format!("instance {i}")], format!("homotopy check {direct}, Maurer–Cartan {mc}"));
        }
        if de(unshift(&sh))? != ops {
            r.fail("oracle-shift", vec![format!("instance {i}")], "unshift(shift(ρ)) ≠ ρ");
        }
        r.count(if direct { "valid-instances" } else { "invalid-instances" }, 1);
    }
    for (name, rep) in zoo::passing_reps() {
        for n in 0..3 {
            let phi = random_cochain(&mut rng, &rep, n, 1, 1, 0.5);
            let dd = de(coboundary(&rep, &de(coboundary(&rep, &phi))?))?;
            r.count("checked", 1);
            if !dd.is_zero() {
                r.fail("oracle-delta-squared", vec![name.clone(), format!("degree {n}")], "δ²φ ≠ 0");
            }
        }
    }
    Ok(r)
}

/// Parses `args` (program name first), runs the verb and writes reports.
/// Returns the process exit code.
pub fn dispatch<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    if let Some(id) = &cli.explain {
        return match explain(id) {
            Some(text) => {
                let _ = writeln!(stdout, "{text}");
                0
            }
            None => {
                let _ = writeln!(stderr, "unknown identity id `{id}`");
                2
            }
        };
    }
    let Some(verb) = &cli.verb else {
        let _ = writeln!(stderr, "missing command; see `leibconf --help`");
        return 2;
    };
    let opts = Opts {
        nmax: cli.nmax,
        bounds: Bounds {
            max_ddeg: cli.max_ddeg,
            max_ldeg: cli.max_ldeg,
        },
        seed: cli.seed,
    };
    let start = Instant::now();
    let result = if cli.jobs == 0 {
        run(verb, &opts)
    } else {
        par::with_jobs(cli.jobs, || run(verb, &opts))
    };
    let mut report = result.unwrap_or_else(|m| Report::error(verb.name(), m));
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if cli.json {
        let _ = writeln!(stdout, "{}", report.to_json());
    } else if let Some(text) = &report.output {
        let _ = write!(stdout, "{text}");
    }
    if !matches!(verb, Verb::Fixture { .. } | Verb::Print { .. }) || report.status != Status::Pass {
        let _ = write!(stderr, "{}", report.human());
    }
    report.status.exit_code()
}
