//! The built-in zoo as presentation files. The same texts are shipped
//! under `fixtures/*.lcf`.

use super::spec::SpecFile;
use crate::cat2::functor_t;
use crate::corering::{Poly, VarCtx};
use crate::confcore::{ModValue, SesqMap};
use crate::leibcoh::Cochain;
use crate::linfty::HomotopyOps;
use crate::zoo;

/// What a fixture is meant for, to pick the checker in tests and docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    BadAlgebra,
    Rep,
    Ops,
    TwoTerm,
    Crossed,
    TwoAlg,
    Cochain,
}

pub struct Fixture {
    pub name: String,
    pub kind: Kind,
    pub spec: SpecFile,
}

fn fx(name: &str, kind: Kind, spec: SpecFile) -> Fixture {
    Fixture {
        name: name.to_string(),
        kind,
        spec,
    }
}

pub fn all() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (name, alg) in zoo::passing_algebras() {
        out.push(fx(&name, Kind::Algebra, SpecFile::from_algebra(&alg).expect("algebra")));
    }
    for (name, alg) in zoo::failing_algebras() {
        let name = if name == "idempotent" { "bad".to_string() } else { name };
        out.push(fx(&name, Kind::BadAlgebra, SpecFile::from_algebra(&alg).expect("algebra")));
    }
    for (name, rep) in zoo::passing_reps().into_iter().filter(|(n, _)| !n.ends_with("-adjoint")) {
        out.push(fx(&name, Kind::Rep, SpecFile::from_rep(&rep).expect("rep")));
    }

    // a 0-cochain on the adjoint Virasoro module
    let vir = zoo::virasoro();
    let mut s = SpecFile::from_algebra(&vir).expect("algebra");
    let phi = ModValue::basis(vir.module(), &VarCtx::canonical(0), 0);
    s.add_element("phi", &phi).expect("element");
    out.push(fx("virasoro-c0", Kind::Cochain, s));
    let mut s = SpecFile::from_algebra(&vir).expect("algebra");
    let mut phi = SesqMap::endo(vir.module(), 1);
    let c = phi.ctx().clone();
    phi.set(&[0], ModValue::term(vir.module(), 0, Poly::d(&c))).expect("entry");
    s.add_map("phi", &phi).expect("map");
    out.push(fx("virasoro-c1", Kind::Cochain, s));

    let nil = zoo::current("Nil");
    let ops = HomotopyOps::from_morphism_kernel(&nil, &[1]).expect("ideal");
    out.push(fx("nil-center-kernel", Kind::Ops, SpecFile::from_ops(&ops).expect("ops")));

    let (skel, tau, _) = zoo::skeletal_nil_fixture();
    let base = zoo::rep_strict(&skel.module_rep());
    out.push(fx("skeletal-nil", Kind::TwoTerm, SpecFile::from_two_term(&skel).expect("2-term")));
    out.push(fx("skeletal-nil-base", Kind::TwoTerm, SpecFile::from_two_term(&base).expect("2-term")));
    let mut t = SpecFile::from_rep(&skel.module_rep()).expect("rep");
    t.add_cochain("tau", &tau).expect("cochain");
    out.push(fx("skeletal-nil-tau", Kind::Cochain, t));
    let mut theta = SpecFile::from_rep(&skel.module_rep()).expect("rep");
    theta.add_cochain("phi", &Cochain::Map(skel.rho3().clone())).expect("cochain");
    out.push(fx("skeletal-nil-theta", Kind::Cochain, theta));

    let strict = zoo::nil_strict();
    out.push(fx("nil-strict", Kind::TwoTerm, SpecFile::from_two_term(&strict).expect("2-term")));
    out.push(fx("nil-crossed", Kind::Crossed, SpecFile::from_crossed(&zoo::nil_crossed_module()).expect("crossed")));
    for (name, a) in [("nil-strict-2alg", &strict), ("skeletal-nil-2alg", &skel)] {
        let t = functor_t(a).expect("valid 2-term algebra");
        out.push(fx(name, Kind::TwoAlg, SpecFile::from_two_alg(&t).expect("2-algebra")));
    }
    out
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
