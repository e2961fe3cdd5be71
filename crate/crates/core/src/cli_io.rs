//! Workspaces, verdicts and the command runner behind the `morita` binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::base::Base;
use crate::bimodule::{jmath_b, tensor_over, Ambient, Bimodule, LeftModuleObject};
use crate::catalog;
use crate::error::{Error, Result};
use crate::ew::{cocontinuity_verdict, coreflect, CRITERION_II_NOTE};
use crate::functor::{hom_functor, tensor_functor_from, validate_functor, EnrichedFunctorData};
use crate::io::{
    parse_strength_key, BimoduleDoc, CertificateDoc, FunctorDataDoc, FunctorDoc, ModuleDoc, MonoidDoc, MorDoc,
    ObjectDoc, ProbeDoc, TargetDoc, WorkspaceDoc, SCHEMA,
};
use crate::monoid::{hom_object, Monoid, RightModule};
use crate::morita::{
    build_matrix_example, equivalence_from_generator, generator_report, verify_certificate, MoritaCertificate,
};
use crate::probe::ProbeFamily;
use crate::registry;
use crate::report::{Check, Report, Witness};
use crate::sample;

/// Name that always resolves to the trivial monoid of the workspace base.
pub const TRIVIAL_MONOID: &str = "trivial";

#[derive(Clone, Debug)]
pub struct NamedBimodule {
    pub left: String,
    pub right: String,
    pub carrier: String,
    pub bimodule: Bimodule,
}

#[derive(Clone, Debug)]
pub struct NamedCertificate {
    pub x: String,
    pub y: String,
    pub certificate: MoritaCertificate,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub base: Base,
    pub monoids: BTreeMap<String, Monoid>,
    /// name -> (monoid name, module)
    pub modules: BTreeMap<String, (String, RightModule)>,
    pub bimodules: BTreeMap<String, NamedBimodule>,
    pub functors: BTreeMap<String, FunctorDoc>,
    pub certificates: BTreeMap<String, NamedCertificate>,
    pub probes: BTreeMap<String, ProbeDoc>,
}

/// A resolved functor with the family it is defined over.
#[derive(Clone, Debug)]
pub struct ResolvedFunctor {
    pub probes: ProbeFamily,
    pub functor: EnrichedFunctorData,
}

fn prefixed(report: &mut Report, prefix: &str, r: Report) -> bool {
    let ok = r.passed();
    report.extend_prefixed(prefix, r);
    ok
}

fn error_check(law: &str, e: &Error) -> Check {
    Check::fail(law, Witness::Note(e.to_string()))
}

impl Workspace {
    pub fn empty(base: Base) -> Workspace {
        Workspace {
            base,
            monoids: BTreeMap::new(),
            modules: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            functors: BTreeMap::new(),
            certificates: BTreeMap::new(),
            probes: BTreeMap::new(),
        }
    }

    /// Validates every entry of a parsed document. Law failures are collected into a
    /// `ValidationFailed` report; parse-level problems are `Parse` errors.
    pub fn from_doc(doc: &WorkspaceDoc) -> Result<Workspace> {
        let base = doc.base;
        if let Base::FinVec { prime } = base {
            Base::finvec(prime)?;
        }
        let mut ws = Workspace::empty(base);
        let mut report = Report::new();
        for (name, m) in &doc.monoids {
            if name == TRIVIAL_MONOID {
                return Err(Error::Parse(format!("monoid name {TRIVIAL_MONOID:?} is reserved")));
            }
            if m.base != base {
                report.push(Check::fail(
                    format!("monoid {name}: base"),
                    Witness::Note("monoid base differs from the workspace base".into()),
                ));
                continue;
            }
            let unit = m.unit.to_morphism(base)?;
            let mult = m.mult.to_morphism(base)?;
            match Monoid::new(base, m.b, unit, mult) {
                Ok(mon) => {
                    ws.monoids.insert(name.clone(), mon);
                }
                Err(Error::InvalidMonoid(r)) => {
                    prefixed(&mut report, &format!("monoid {name}: "), r);
                }
                Err(e) => return Err(e),
            }
        }
        if !report.passed() {
            return Err(Error::ValidationFailed(report));
        }
        for (name, m) in &doc.modules {
            let mon = ws.monoid(&m.monoid)?;
            let gamma = m.gamma.to_morphism(base)?;
            match RightModule::new(&mon, m.z, gamma) {
                Ok(z) => {
                    ws.modules.insert(name.clone(), (m.monoid.clone(), z));
                }
                Err(Error::InvalidModule(r)) => {
                    prefixed(&mut report, &format!("module {name}: "), r);
                }
                Err(e) => return Err(e),
            }
        }
        if !report.passed() {
            return Err(Error::ValidationFailed(report));
        }
        for (name, b) in &doc.bimodules {
            let left = ws.monoid(&b.left)?;
            let (right_name, object) = ws.module_entry(&b.carrier)?;
            if *object.monoid() != ws.monoid(&b.right)? {
                report.push(Check::fail(
                    format!("bimodule {name}: right monoid"),
                    Witness::Note(format!("carrier {} is a module over {right_name}", b.carrier)),
                ));
                continue;
            }
            let rho = b.rho.to_morphism(base)?;
            match LeftModuleObject::new(&left, &object, rho) {
                Ok(x) => {
                    ws.bimodules.insert(
                        name.clone(),
                        NamedBimodule { left: b.left.clone(), right: b.right.clone(), carrier: b.carrier.clone(), bimodule: x },
                    );
                }
                Err(Error::InvalidLeftModule(r)) => {
                    prefixed(&mut report, &format!("bimodule {name}: "), r);
                }
                Err(e) => return Err(e),
            }
        }
        if !report.passed() {
            return Err(Error::ValidationFailed(report));
        }
        for (name, p) in &doc.probes {
            ws.monoid(&p.monoid)?;
            for s in &p.seeds {
                let (m, _) = ws.module_entry(s)?;
                if ws.monoid(&m)? != ws.monoid(&p.monoid)? {
                    return Err(Error::Parse(format!("probe family {name}: seed {s} is not over {}", p.monoid)));
                }
            }
            ws.probes.insert(name.clone(), p.clone());
        }
        for (name, c) in &doc.certificates {
            let x = ws.bimodule(&c.x)?;
            let y = ws.bimodule(&c.y)?;
            let phi = c.phi.to_morphism(base)?;
            let psi = c.psi.to_morphism(base)?;
            ws.certificates.insert(
                name.clone(),
                NamedCertificate { x: c.x.clone(), y: c.y.clone(), certificate: MoritaCertificate { x, y, phi, psi } },
            );
        }
        for (name, f) in &doc.functors {
            ws.functors.insert(name.clone(), f.clone());
            match ws.functor(name, None) {
                Ok(rf) => {
                    let r = validate_functor(&rf.functor, &rf.probes)?;
                    prefixed(&mut report, &format!("functor {name}: "), r);
                }
                Err(e) if e.report().is_some() => {
                    prefixed(&mut report, &format!("functor {name}: "), e.report().cloned().unwrap_or_default());
                }
                Err(e) => return Err(e),
            }
        }
        if !report.passed() {
            return Err(Error::ValidationFailed(report));
        }
        Ok(ws)
    }

    pub fn to_doc(&self) -> WorkspaceDoc {
        let monoids = self
            .monoids
            .iter()
            .map(|(n, m)| {
                let doc = MonoidDoc {
                    base: m.base(),
                    b: m.carrier(),
                    unit: MorDoc::from_morphism(m.unit()),
                    mult: MorDoc::from_morphism(m.mult()),
                };
                (n.clone(), doc)
            })
            .collect();
        let modules = self
            .modules
            .iter()
            .map(|(n, (m, z))| {
                let doc = ModuleDoc { monoid: m.clone(), z: z.carrier(), gamma: MorDoc::from_morphism(z.action()) };
                (n.clone(), doc)
            })
            .collect();
        let bimodules = self
            .bimodules
            .iter()
            .map(|(n, b)| {
                let doc = BimoduleDoc {
                    left: b.left.clone(),
                    right: b.right.clone(),
                    carrier: b.carrier.clone(),
                    rho: MorDoc::from_morphism(b.bimodule.rho()),
                };
                (n.clone(), doc)
            })
            .collect();
        let certificates = self
            .certificates
            .iter()
            .map(|(n, c)| {
                let doc = CertificateDoc {
                    x: c.x.clone(),
                    y: c.y.clone(),
                    phi: MorDoc::from_morphism(&c.certificate.phi),
                    psi: MorDoc::from_morphism(&c.certificate.psi),
                };
                (n.clone(), doc)
            })
            .collect();
        WorkspaceDoc {
            schema: SCHEMA,
            base: self.base,
            monoids,
            modules,
            bimodules,
            functors: self.functors.clone(),
            certificates,
            probes: self.probes.clone(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_doc().render()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn monoid(&self, name: &str) -> Result<Monoid> {
        if let Some(m) = self.monoids.get(name) {
            return Ok(m.clone());
        }
        if name == TRIVIAL_MONOID {
            return Ok(Monoid::trivial(self.base));
        }
        Err(Error::UnknownName(format!("monoid {name}")))
    }

    fn monoid_name(&self, m: &Monoid) -> Option<String> {
        if let Some((n, _)) = self.monoids.iter().find(|(_, x)| *x == m) {
            return Some(n.clone());
        }
        (*m == Monoid::trivial(self.base)).then(|| TRIVIAL_MONOID.to_string())
    }

    pub fn module_entry(&self, name: &str) -> Result<(String, RightModule)> {
        self.modules.get(name).cloned().ok_or_else(|| Error::UnknownName(format!("module {name}")))
    }

    pub fn bimodule(&self, name: &str) -> Result<Bimodule> {
        self.bimodules
            .get(name)
            .map(|b| b.bimodule.clone())
            .ok_or_else(|| Error::UnknownName(format!("bimodule {name}")))
    }

    fn seeds_over(&self, monoid: &Monoid) -> Vec<RightModule> {
        self.modules.values().filter(|(_, z)| z.monoid() == monoid).map(|(_, z)| z.clone()).collect()
    }

    /// The family named by `requested` when it is over `monoid_name`, otherwise the
    /// default `<monoid>/default` (or `<monoid>/shallow`) family seeded with every
    /// workspace module over that monoid.
    pub fn probe_family(&self, monoid_name: &str, requested: Option<&str>, shallow: bool) -> Result<ProbeFamily> {
        let monoid = self.monoid(monoid_name)?;
        if let Some(id) = requested {
            let doc = self.probes.get(id).ok_or_else(|| Error::UnknownName(format!("probe family {id}")))?;
            if self.monoid(&doc.monoid)? == monoid {
                let seeds = doc.seeds.iter().map(|s| self.module_entry(s).map(|(_, z)| z)).collect::<Result<Vec<_>>>()?;
                return if doc.shallow {
                    ProbeFamily::shallow(id, &monoid, &seeds)
                } else {
                    ProbeFamily::standard(id, &monoid, &seeds)
                };
            }
        }
        let seeds = self.seeds_over(&monoid);
        if shallow {
            ProbeFamily::shallow(&format!("{monoid_name}/shallow"), &monoid, &seeds)
        } else {
            ProbeFamily::standard(&format!("{monoid_name}/default"), &monoid, &seeds)
        }
    }

    /// Resolves a workspace functor, falling back to the built-in catalog.
    pub fn functor(&self, name: &str, probes: Option<&str>) -> Result<ResolvedFunctor> {
        let Some(doc) = self.functors.get(name) else {
            let f = catalog::functor_by_name(name)?;
            return Ok(ResolvedFunctor { probes: f.probes, functor: f.functor });
        };
        match doc {
            FunctorDoc::Identity { monoid } => {
                let p = self.probe_family(monoid, probes, false)?;
                Ok(ResolvedFunctor { functor: EnrichedFunctorData::identity(&p), probes: p })
            }
            FunctorDoc::Forgetful { monoid } => {
                let p = self.probe_family(monoid, probes, false)?;
                Ok(ResolvedFunctor { functor: EnrichedFunctorData::forgetful(&p), probes: p })
            }
            FunctorDoc::Tensor { bimodule } => {
                let nb = self.bimodules.get(bimodule).ok_or_else(|| Error::UnknownName(format!("bimodule {bimodule}")))?;
                let p = self.probe_family(&nb.left, probes, false)?;
                let (f, _) = tensor_functor_from(&nb.bimodule, &p)?;
                Ok(ResolvedFunctor { functor: f, probes: p })
            }
            FunctorDoc::Hom { bimodule, module } => {
                let (x, right) = match (bimodule, module) {
                    (Some(b), None) => {
                        let nb = self.bimodules.get(b).ok_or_else(|| Error::UnknownName(format!("bimodule {b}")))?;
                        (nb.bimodule.clone(), nb.right.clone())
                    }
                    (None, Some(m)) => {
                        let (mon, z) = self.module_entry(m)?;
                        (LeftModuleObject::trivial_action(&z), mon)
                    }
                    _ => return Err(Error::Parse("hom functor needs exactly one of \"bimodule\", \"module\"".into())),
                };
                let p = self.probe_family(&right, probes, false)?;
                let (f, _) = hom_functor(&x, &p)?;
                Ok(ResolvedFunctor { functor: f, probes: p })
            }
            FunctorDoc::Data { probes: id, data } => {
                let pd = self.probes.get(id).ok_or_else(|| Error::UnknownName(format!("probe family {id}")))?;
                let p = self.probe_family(&pd.monoid, Some(id), false)?;
                let f = self.functor_data(data, &p)?;
                Ok(ResolvedFunctor { functor: f, probes: p })
            }
        }
    }

    fn functor_data(&self, d: &FunctorDataDoc, p: &ProbeFamily) -> Result<EnrichedFunctorData> {
        let base = self.base;
        let target = match &d.target {
            TargetDoc::Base => Ambient::Base(base),
            TargetDoc::Modules { monoid } => Ambient::for_monoid(&self.monoid(monoid)?),
        };
        let indexed = |n: usize, what: &str, keys: Vec<&String>| -> Result<()> {
            let expected: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut got: Vec<String> = keys.into_iter().cloned().collect();
            got.sort_by_key(|k| k.parse::<usize>().unwrap_or(usize::MAX));
            if got != expected {
                return Err(Error::ProbeNotClosed(format!("{what} must be keyed 0..{n} by probe index")));
            }
            Ok(())
        };
        indexed(p.modules.len(), "objects", d.objects.keys().collect())?;
        indexed(p.morphisms.len(), "morphisms", d.morphisms.keys().collect())?;
        let tm = target.monoid();
        let objects = (0..p.modules.len())
            .map(|i| {
                let o: &ObjectDoc = &d.objects[&i.to_string()];
                match &o.gamma {
                    Some(g) => Ok(RightModule::new_unchecked(&tm, o.z, g.to_morphism(base)?)),
                    None if tm.is_trivial() => Ok(RightModule::plain(base, o.z)),
                    None => Err(Error::Parse(format!("object {i} needs \"gamma\" over a non-trivial target"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let morphisms = (0..p.morphisms.len())
            .map(|k| d.morphisms[&k.to_string()].to_morphism(base))
            .collect::<Result<Vec<_>>>()?;
        let mut strength = BTreeMap::new();
        for (key, m) in &d.strength {
            strength.insert(parse_strength_key(key)?, m.to_morphism(base)?);
        }
        Ok(EnrichedFunctorData { target, objects, morphisms, strength })
    }

    /// The canonical workspace for `build_matrix_example(p, n)`.
    pub fn matrix_example(p: u32, n: usize) -> Result<Workspace> {
        let cert = build_matrix_example(p, n)?;
        let base = cert.x.base();
        let mut ws = Workspace::empty(base);
        let (fp, mn) = (format!("f{p}"), format!("m{n}f{p}"));
        ws.monoids.insert(fp.clone(), cert.x.monoid().clone());
        ws.monoids.insert(mn.clone(), cert.y.monoid().clone());
        ws.modules.insert("row_carrier".into(), (mn.clone(), cert.x.object().clone()));
        ws.modules.insert("col_carrier".into(), (fp.clone(), cert.y.object().clone()));
        ws.bimodules.insert(
            "row".into(),
            NamedBimodule { left: fp.clone(), right: mn.clone(), carrier: "row_carrier".into(), bimodule: cert.x.clone() },
        );
        ws.bimodules.insert(
            "col".into(),
            NamedBimodule { left: mn, right: fp, carrier: "col_carrier".into(), bimodule: cert.y.clone() },
        );
        ws.certificates.insert("rowcol".into(), NamedCertificate { x: "row".into(), y: "col".into(), certificate: cert });
        Ok(ws)
    }
}

pub fn load_workspace(path: &Path) -> Result<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let doc = WorkspaceDoc::parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Workspace::from_doc(&doc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub schema: u32,
    pub command: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_family: Option<String>,
    pub checks: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Verdict {
    fn new(command: &str, probe_family: Option<String>, checks: Report, result: Option<Value>) -> Verdict {
        Verdict { schema: SCHEMA, command: command.into(), pass: checks.passed(), probe_family, checks, result }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check { functor: Option<String> },
    Hom { source: String, target: String },
    TensorOver { module: String, bimodule: String },
    Lambda { functor: String },
    Verdict { functor: String },
    Generator { object: String, monoid: Option<String> },
    Certify { cert: String },
    GenMatrix { p: u32, n: usize },
    Equivalence { object: String, monoid: Option<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Hom { .. } => "hom",
            Command::TensorOver { .. } => "tensor-over",
            Command::Lambda { .. } => "lambda",
            Command::Verdict { .. } => "verdict",
            Command::Generator { .. } => "generator",
            Command::Certify { .. } => "certify",
            Command::GenMatrix { .. } => "gen-matrix",
            Command::Equivalence { .. } => "equivalence",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub workspace: Option<PathBuf>,
    pub probes: Option<String>,
    pub seed: Option<u64>,
    pub pretty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code for an error: 2 for parse and usage problems, 1 for failed checks.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownName(_) | Error::InvalidPrime(_) | Error::SizeBoundExceeded(_) => 2,
        _ => 1,
    }
}

fn render<T: Serialize>(v: &T, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("serializable");
    s.push('\n');
    s
}

pub fn run(cmd: &Command, opts: &Options) -> Outcome {
    match execute(cmd, opts) {
        Ok(Output::Verdict(v)) => Outcome { code: if v.pass { 0 } else { 1 }, stdout: render(&v, opts.pretty), stderr: String::new() },
        Ok(Output::Document(s)) => Outcome { stdout: s, stderr: String::new(), code: 0 },
        Err(e) => {
            let code = exit_code(&e);
            if code == 2 {
                return Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code };
            }
            let mut checks = e.report().cloned().unwrap_or_default();
            checks.push(error_check("command completed", &e));
            let v = Verdict::new(cmd.name(), None, checks, None);
            Outcome { stdout: render(&v, opts.pretty), stderr: format!("error: {e}\n"), code }
        }
    }
}

enum Output {
    Verdict(Verdict),
    Document(String),
}

fn workspace(opts: &Options) -> Result<Workspace> {
    match &opts.workspace {
        Some(p) => load_workspace(p),
        None => Ok(Workspace::empty(Base::FinSet)),
    }
}

fn execute(cmd: &Command, opts: &Options) -> Result<Output> {
    let probes = opts.probes.as_deref();
    let name = cmd.name();
    let v = match cmd {
        Command::GenMatrix { p, n } => return Ok(Output::Document(Workspace::matrix_example(*p, *n)?.to_doc().render())),
        Command::Check { functor } => {
            let ws = workspace(opts)?;
            let mut checks = Report::new();
            let mut family = None;
            match functor {
                Some(f) => {
                    let rf = ws.functor(f, probes)?;
                    checks = validate_functor(&rf.functor, &rf.probes)?;
                    family = Some(rf.probes.id.clone());
                }
                None => {
                    for (n, m) in &ws.monoids {
                        checks.extend_prefixed(&format!("monoid {n}: "), m.check());
                    }
                    for (n, (_, z)) in &ws.modules {
                        checks.extend_prefixed(&format!("module {n}: "), z.check());
                    }
                    for (n, b) in &ws.bimodules {
                        checks.extend_prefixed(&format!("bimodule {n}: "), b.bimodule.check());
                    }
                }
            }
            if let Some(seed) = opts.seed {
                let mut rng = sample::rng(seed);
                for t in 0..16 {
                    let (f, g) = sample::random_parallel_pair(ws.base, 4, &mut rng)?;
                    let r = sample::universal_property_spot_check(&f, &g, &mut rng)?;
                    checks.extend_prefixed(&format!("spot check {t}: "), r);
                }
            }
            Verdict::new(name, family, checks, None)
        }
        Command::Hom { source, target } => {
            let ws = workspace(opts)?;
            let (_, z) = ws.module_entry(source)?;
            let (_, z2) = ws.module_entry(target)?;
            if z.monoid() != z2.monoid() {
                return Err(Error::ActionMismatch);
            }
            let h = hom_object(&z, &z2)?;
            let mut checks = Report::new();
            for (k, e) in h.elements()?.iter().enumerate() {
                checks.record(format!("element {k} is equivariant"), z.equivariance(&z2, e));
            }
            checks.push(Check::flag("inclusion is a monomorphism", h.inclusion().is_injective()));
            let result = json!({ "carrier": h.carrier(), "inclusion": MorDoc::from_morphism(h.inclusion()) });
            Verdict::new(name, None, checks, Some(result))
        }
        Command::TensorOver { module, bimodule } => {
            let ws = workspace(opts)?;
            let (_, z) = ws.module_entry(module)?;
            let x = ws.bimodule(bimodule)?;
            let t = tensor_over(&z, &x)?;
            let mut checks = Report::new();
            let (f, g) = (
                z.action().tensor(&ws.base.identity(x.carrier()))?,
                ws.base.identity(z.carrier()).tensor(x.rho())?,
            );
            checks.record("projection coequalizes the actions", t.projection().compose(&f)?.difference(&t.projection().compose(&g)?));
            checks.extend_prefixed("induced action: ", t.object.check());
            let result = json!({
                "carrier": t.carrier(),
                "projection": MorDoc::from_morphism(t.projection()),
                "gamma": MorDoc::from_morphism(t.object.action()),
            });
            Verdict::new(name, None, checks, Some(result))
        }
        Command::Lambda { functor } => {
            let ws = workspace(opts)?;
            let rf = ws.functor(functor, probes)?;
            let p = &rf.probes;
            let (x, lam) = coreflect(&rf.functor, p)?;
            let mut checks = lam.report.clone();
            let mut invertible = BTreeMap::new();
            for (&i, l) in &lam.nat.components {
                checks.push(Check::flag(format!("lambda {i} invertible"), l.is_iso()));
                invertible.insert(i.to_string(), l.is_iso());
            }
            let mut equals_j = None;
            if x == LeftModuleObject::regular_bimodule(&p.monoid) {
                let mut all = true;
                for (&i, l) in &lam.nat.components {
                    let (_, j) = jmath_b(&p.modules[i])?;
                    let d = l.difference(&j.forward);
                    all &= d.is_none();
                    checks.record(format!("lambda {i} equals j"), d);
                }
                equals_j = Some(all);
            }
            let result = json!({
                "left_module_carrier": x.carrier(),
                "invertible": invertible,
                "equals_j": equals_j,
            });
            Verdict::new(name, Some(p.id.clone()), checks, Some(result))
        }
        Command::Verdict { functor } => {
            let ws = workspace(opts)?;
            let rf = ws.functor(functor, probes)?;
            let (v, mut checks) = cocontinuity_verdict(&rf.functor, &rf.probes)?;
            checks.push(Check::flag("criteria agree", true));
            checks.push(Check::flag("cocontinuous on probes", v.lambda_iso));
            let mut result = serde_json::to_value(&v).expect("serializable");
            result["note"] = Value::String(CRITERION_II_NOTE.into());
            Verdict::new(name, Some(v.probe_family.clone()), checks, Some(result))
        }
        Command::Generator { object, monoid } => {
            let ws = workspace(opts)?;
            let (mname, x) = ws.module_entry(object)?;
            let m = match monoid {
                Some(n) => ws.monoid(n)?,
                None => x.monoid().clone(),
            };
            let p = ws.probe_family(&mname, probes, false)?;
            let g = generator_report(&x, &m, &p)?;
            let mut checks = g.report.clone();
            checks.push(Check::flag("compact", g.compact));
            checks.push(Check::flag("generator", g.generator));
            checks.push(Check::flag("comparison is a monoid isomorphism", g.comparison.is_some()));
            let result = json!({
                "compact": g.compact,
                "generator": g.generator,
                "end_monoid": { "b": g.end_monoid.carrier() },
                "comparison": g.comparison.as_ref().map(MorDoc::from_morphism),
                "note": "probe-verified",
            });
            Verdict::new(name, Some(g.probe_family.clone()), checks, Some(result))
        }
        Command::Certify { cert } => {
            let (ws, key) = certificate_source(opts, cert)?;
            let c = &ws.certificates[&key];
            let b = ws.monoid_name(c.certificate.x.monoid()).ok_or(Error::MonoidMismatch)?;
            let d = ws.monoid_name(c.certificate.y.monoid()).ok_or(Error::MonoidMismatch)?;
            let pb = ws.probe_family(&b, probes, true)?;
            let pd = ws.probe_family(&d, probes, true)?;
            let (checks, pair) = verify_certificate(&c.certificate, &pb, &pd)?;
            let dims = c.certificate.tensor_dims()?;
            let result = json!({
                "certificate": key,
                "xy": dims.xy,
                "yx": dims.yx,
                "equivalence": pair.is_some(),
                "probe_families": [pb.id, pd.id],
            });
            Verdict::new(name, Some(format!("{}+{}", pb.id, pd.id)), checks, Some(result))
        }
        Command::Equivalence { object, monoid } => {
            let ws = workspace(opts)?;
            let (dname, x) = ws.module_entry(object)?;
            let bname = monoid.clone().unwrap_or_else(|| dname.clone());
            let b = ws.monoid(&bname)?;
            let pd = ws.probe_family(&dname, probes, false)?;
            let pb = ws.probe_family(&bname, None, false)?;
            let g = generator_report(&x, &b, &pd)?;
            let f = match g.comparison {
                Some(f) => f,
                None => return Err(Error::ComparisonNotIso(g.report)),
            };
            let eq = equivalence_from_generator(&x, &f, &b, &pd, &pb)?;
            let mut checks = eq.report.clone();
            checks.push(Check::flag("unit invertible", eq.unit.is_iso()));
            checks.push(Check::flag("counit invertible", eq.counit.is_iso()));
            let dims: Vec<(usize, usize)> =
                pb.modules.iter().zip(&eq.alpha.objects).map(|(z, a)| (z.carrier(), a.carrier())).collect();
            let result = json!({ "comparison": MorDoc::from_morphism(&f), "alpha_dims": dims, "note": "probe-verified" });
            Verdict::new(name, Some(format!("{}+{}", pb.id, pd.id)), checks, Some(result))
        }
    };
    Ok(Output::Verdict(v))
}

/// `--cert` names a certificate of the workspace or a file holding a workspace
/// with exactly one certificate.
fn certificate_source(opts: &Options, cert: &str) -> Result<(Workspace, String)> {
    if let Some(p) = &opts.workspace {
        let ws = load_workspace(p)?;
        if ws.certificates.contains_key(cert) {
            return Ok((ws, cert.to_string()));
        }
    }
    let path = Path::new(cert);
    if !path.exists() {
        return Err(Error::UnknownName(format!("certificate {cert}")));
    }
    let ws = load_workspace(path)?;
    let mut keys = ws.certificates.keys();
    match (keys.next(), keys.next()) {
        (Some(k), None) => {
            let k = k.clone();
            Ok((ws, k))
        }
        _ => Err(Error::Parse(format!("{cert}: expected exactly one certificate"))),
    }
}

/// The Z/2 fixture: the regular module, the one-point module and a few functors.
pub fn z2_fixture() -> Workspace {
    let z2 = registry::z2();
    let mut ws = Workspace::empty(Base::FinSet);
    ws.monoids.insert("z2".into(), z2.clone());
    ws.modules.insert("regular".into(), ("z2".into(), z2.regular_module()));
    ws.modules.insert("onepoint".into(), ("z2".into(), registry::z2_point()));
    ws.functors.insert("identity".into(), FunctorDoc::Identity { monoid: "z2".into() });
    ws.functors.insert("forgetful".into(), FunctorDoc::Forgetful { monoid: "z2".into() });
    ws.functors.insert("fix".into(), FunctorDoc::Hom { bimodule: None, module: Some("onepoint".into()) });
    ws
}
