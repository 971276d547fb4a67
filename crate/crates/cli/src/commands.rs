//! Subcommands as pure functions from inputs to reports.

use std::path::PathBuf;

use serde_json::{json, Value};
use site_forge_core::dlo::{format_tuple, ord_site, Carrier, DloError, LinearOrderOracle, Rational, DEFAULT_ORD_GUARD};
use site_forge_core::fincat::{CategoryError, OreFailure};
use site_forge_core::flatfun::{is_flat, yoneda_check, FilteredFailure, FinSetFunctor};
use site_forge_core::homogeneity::{
    is_homogeneous_atomic, is_j_homogeneous, Bounds, HomogeneityError, HomogeneityVerdict, HomogeneityWitness,
};
use site_forge_core::karoubi::envelope;
use site_forge_core::topology::{check_axioms, enumerate_topologies, AxiomViolation, DEFAULT_SIEVE_GUARD};
use site_forge_core::transfer::{check_induces, transfer_topology, InducesViolation, TransferError};
use site_forge_core::{FinCat, Sieve, Topology};

use crate::document::{serialize, DocumentError, LoadError, Site, SiteDocument, Variance};
use crate::report::{Outcome, Report};

/// Environment variable raising the size guards.
pub const GUARD_VAR: &str = "SITE_FORGE_GUARD";

/// Size limits: sieves for topology enumeration and `N` for `ordfm:N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub sieves: usize,
    pub ord: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            sieves: DEFAULT_SIEVE_GUARD,
            ord: DEFAULT_ORD_GUARD,
        }
    }
}

impl Guards {
    /// Defaults, raised (never lowered) to the value of [`GUARD_VAR`].
    pub fn from_value(value: Option<&str>) -> Result<Guards, String> {
        let mut g = Guards::default();
        if let Some(v) = value {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| format!("{GUARD_VAR} must be a non-negative integer, got `{v}`"))?;
            g.sieves = g.sieves.max(n);
            g.ord = g.ord.max(n);
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate { file: PathBuf, canonical: bool },
    Karoubi { file: PathBuf },
    Transfer { file: PathBuf, topology: Option<String> },
    CheckTopology { file: PathBuf, topology: Option<String> },
    CheckOre { file: PathBuf },
    EnumerateTopologies { file: PathBuf },
    CheckFlat { file: PathBuf, functor: String },
    YonedaCheck { file: PathBuf },
    CheckHomogeneous { site: String, model: String, cotopology: Option<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Karoubi { .. } => "karoubi",
            Command::Transfer { .. } => "transfer",
            Command::CheckTopology { .. } => "check-topology",
            Command::CheckOre { .. } => "check-ore",
            Command::EnumerateTopologies { .. } => "enumerate-topologies",
            Command::CheckFlat { .. } => "check-flat",
            Command::YonedaCheck { .. } => "yoneda-check",
            Command::CheckHomogeneous { .. } => "check-homogeneous",
        }
    }
}

pub fn run(cmd: &Command, guards: &Guards) -> Report {
    let name = cmd.name();
    let site = |file: &PathBuf| load(name, file);
    let result = match cmd {
        Command::Validate { file, canonical } => site(file).map(|s| validate(&s, *canonical)),
        Command::Karoubi { file } => site(file).map(|s| karoubi(&s)),
        Command::Transfer { file, topology } => site(file).map(|s| transfer(&s, topology.as_deref())),
        Command::CheckTopology { file, topology } => site(file).map(|s| check_topology(&s, topology.as_deref())),
        Command::CheckOre { file } => site(file).map(|s| check_ore(&s)),
        Command::EnumerateTopologies { file } => site(file).map(|s| enumerate(&s, guards)),
        Command::CheckFlat { file, functor } => site(file).map(|s| check_flat(&s, functor)),
        Command::YonedaCheck { file } => site(file).map(|s| yoneda(&s)),
        Command::CheckHomogeneous { site, model, cotopology } => {
            Ok(check_homogeneous(site, model, cotopology.as_deref(), guards))
        }
    };
    result.unwrap_or_else(|r| r)
}

fn load(command: &str, file: &PathBuf) -> Result<Site, Report> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        Report::error(
            command,
            Outcome::Error,
            "io",
            vec![("file", file.display().to_string().into()), ("message", e.to_string().into())],
        )
    })?;
    Site::load(&text).map_err(|e| load_error(command, e))
}

fn load_error(command: &str, e: LoadError) -> Report {
    match e {
        LoadError::Document(DocumentError::Parse(p)) => Report::error(
            command,
            Outcome::Error,
            "parse",
            vec![
                ("line", p.line.into()),
                ("column", p.column.into()),
                ("expected", p.expected.into()),
            ],
        ),
        LoadError::Document(DocumentError::UnknownId { line, column, kind, id }) => Report::error(
            command,
            Outcome::Error,
            "unknown-id",
            vec![
                ("line", line.into()),
                ("column", column.into()),
                ("id-kind", kind.into()),
                ("id", id.into()),
            ],
        ),
        LoadError::Category(c) => {
            Report::new(command, Outcome::Fail).with_witness("category", category_witness(&c))
        }
        other => Report::error(command, Outcome::Error, "document", vec![("message", other.to_string().into())]),
    }
}

fn category_witness(e: &CategoryError) -> Vec<(&'static str, Value)> {
    let (law, fields): (&str, Vec<(&'static str, Value)>) = match e {
        CategoryError::DuplicateId(id) => ("duplicate-id", vec![("id", id.clone().into())]),
        CategoryError::DanglingReference(id) => ("dangling-reference", vec![("id", id.clone().into())]),
        CategoryError::NotComposable { outer, inner } => (
            "not-composable",
            vec![("outer", outer.clone().into()), ("inner", inner.clone().into())],
        ),
        CategoryError::CompositeTypeMismatch { outer, inner, result } => (
            "composite-type",
            vec![
                ("outer", outer.clone().into()),
                ("inner", inner.clone().into()),
                ("result", result.clone().into()),
            ],
        ),
        CategoryError::ConflictingComposite { outer, inner } => (
            "conflicting-composite",
            vec![("outer", outer.clone().into()), ("inner", inner.clone().into())],
        ),
        CategoryError::IdentityViolation(f) => ("identity", vec![("arrow", f.clone().into())]),
        CategoryError::MissingComposite { outer, inner } => (
            "missing-composite",
            vec![("outer", outer.clone().into()), ("inner", inner.clone().into())],
        ),
        CategoryError::AssociativityViolation { h, g, f } => (
            "associativity",
            vec![("h", h.clone().into()), ("g", g.clone().into()), ("f", f.clone().into())],
        ),
    };
    let mut out = vec![("law", law.into())];
    out.extend(fields);
    out.push(("message", e.to_string().into()));
    out
}

fn ids(cat: &FinCat, s: &Sieve) -> Value {
    json!(s.member_ids(cat))
}

fn validate(site: &Site, canonical: bool) -> Report {
    let cat = &site.category;
    let mut r = Report::new("validate", Outcome::Pass)
        .fact("objects", cat.object_count())
        .fact("arrows", cat.arrow_count())
        .fact("idempotents", cat.idempotents().len())
        .fact("topologies", json!(site.document.topology_names()))
        .fact("functors", json!(site.functors.iter().map(|f| &f.0).collect::<Vec<_>>()));
    if canonical {
        r.document = Some(serialize(&site.document));
    }
    r
}

fn karoubi(site: &Site) -> Report {
    let env = envelope(site.category.clone());
    let chat = env.completion();
    let mut r = Report::new("karoubi", Outcome::Pass)
        .fact("objects", chat.object_count())
        .fact("arrows", chat.arrow_count());
    r.document = Some(serialize(&SiteDocument::from_category(chat)));
    r
}

fn select(site: &Site, command: &str, topology: Option<&str>) -> Result<Vec<String>, Report> {
    let names = site.document.topology_names();
    match topology {
        Some(t) if names.iter().any(|n| n == t) => Ok(vec![t.to_string()]),
        Some(t) => Err(Report::error(
            command,
            Outcome::Error,
            "usage",
            vec![("message", format!("no topology named `{t}`").into())],
        )),
        None if names.is_empty() => Err(Report::error(
            command,
            Outcome::Error,
            "usage",
            vec![("message", "document declares no topology".into())],
        )),
        None => Ok(names),
    }
}

fn resolve(site: &Site, command: &str, name: &str) -> Result<Topology, Report> {
    site.topology(name).expect("selected name exists").map_err(|f| {
        Report::new(command, Outcome::Fail).with_witness("ore", ore_fields(&site.category, f.failure, Some(name)))
    })
}

fn ore_fields(cat: &FinCat, f: OreFailure, topology: Option<&str>) -> Vec<(&'static str, Value)> {
    let mut v = Vec::new();
    if let Some(t) = topology {
        v.push(("topology", t.into()));
    }
    v.push(("left", cat.arrow_id(f.left).into()));
    v.push(("right", cat.arrow_id(f.right).into()));
    v.push(("codomain", cat.object_id(cat.cod(f.left)).into()));
    v
}

fn axiom_fields(cat: &FinCat, name: &str, v: &AxiomViolation) -> Vec<(&'static str, Value)> {
    let mut out: Vec<(&'static str, Value)> = vec![("topology", name.into()), ("axiom", v.axiom().into())];
    match v {
        AxiomViolation::InvalidSieve { object, sieve } => {
            out.push(("object", cat.object_id(*object).into()));
            if let Some(s) = sieve {
                out.push(("sieve", ids(cat, s)));
            }
        }
        AxiomViolation::Maximality { object } => out.push(("object", cat.object_id(*object).into())),
        AxiomViolation::Stability { sieve, arrow, pulled } => {
            out.push(("object", cat.object_id(sieve.base()).into()));
            out.push(("sieve", ids(cat, sieve)));
            out.push(("arrow", cat.arrow_id(*arrow).into()));
            out.push(("pulled", ids(cat, pulled)));
        }
        AxiomViolation::Transitivity { covering, sieve } => {
            out.push(("object", cat.object_id(sieve.base()).into()));
            out.push(("covering", ids(cat, covering)));
            out.push(("sieve", ids(cat, sieve)));
        }
    }
    out
}

fn transfer(site: &Site, topology: Option<&str>) -> Report {
    let names = match select(site, "transfer", topology) {
        Ok(n) => n,
        Err(r) => return r,
    };
    let env = envelope(site.category.clone());
    let chat = env.completion();
    let base = &site.category;
    let mut doc = SiteDocument::from_category(chat);
    let mut certificate = String::new();
    let mut admitted = Vec::new();
    for name in &names {
        let j = match resolve(site, "transfer", name) {
            Ok(j) => j,
            Err(r) => return r,
        };
        let out = match transfer_topology(&env, &j) {
            Ok(out) => out,
            Err(TransferError::InvalidSourceTopology(v)) => {
                return Report::new("transfer", Outcome::Fail).with_witness("axiom", axiom_fields(base, name, &v))
            }
            Err(TransferError::ResultNotATopology(v)) => {
                return Report::new("transfer", Outcome::Fail).with_witness("axiom", axiom_fields(chat, name, &v))
            }
            Err(e) => {
                return Report::error("transfer", Outcome::Error, "transfer", vec![("message", e.to_string().into())])
            }
        };
        if let Err(v) = check_induces(&env, &j, &out.result) {
            let (rule, object, sieve) = match v {
                InducesViolation::RestrictionNotCovering { object, sieve } => ("restriction-not-covering", object, sieve),
                InducesViolation::CoverNotReflected { object, sieve } => ("cover-not-reflected", object, sieve),
                InducesViolation::NotGenerated { object, sieve } => ("not-generated", object, sieve),
            };
            let cat_of_sieve = if rule == "cover-not-reflected" { base.as_ref() } else { chat.as_ref() };
            return Report::new("transfer", Outcome::Fail).with_witness(
                "induces",
                vec![
                    ("topology", name.as_str().into()),
                    ("rule", rule.into()),
                    ("object", base.object_id(object).into()),
                    ("sieve", ids(cat_of_sieve, &sieve)),
                ],
            );
        }
        certificate.push_str(&format!("\n# certificate {name}\n"));
        for e in &out.certificate {
            certificate.push_str(&format!(
                "#   {} : {{{}}} from {} : {{{}}} along {} / {}\n",
                chat.object_id(e.sieve.base()),
                e.sieve.member_ids(chat).join(", "),
                base.object_id(e.retract.carrier),
                e.source_cover.member_ids(base).join(", "),
                chat.arrow_id(e.retract.section),
                chat.arrow_id(e.retract.retraction),
            ));
        }
        admitted.push(json!({"topology": name, "sieves": out.certificate.len()}));
        doc.push_topology(name, chat, &out.result);
    }
    let mut r = Report::new("transfer", Outcome::Pass)
        .fact("objects", chat.object_count())
        .fact("arrows", chat.arrow_count())
        .fact("transferred", Value::Array(admitted));
    let mut text = serialize(&doc);
    text.push_str(&certificate);
    r.document = Some(text);
    r
}

fn check_topology(site: &Site, topology: Option<&str>) -> Report {
    let names = match select(site, "check-topology", topology) {
        Ok(n) => n,
        Err(r) => return r,
    };
    for name in &names {
        let j = match resolve(site, "check-topology", name) {
            Ok(j) => j,
            Err(r) => return r,
        };
        if let Err(v) = check_axioms(&site.category, &j) {
            return Report::new("check-topology", Outcome::Fail)
                .fact("checked", json!(names))
                .with_witness("axiom", axiom_fields(&site.category, name, &v));
        }
    }
    Report::new("check-topology", Outcome::Pass).fact("checked", json!(names))
}

fn check_ore(site: &Site) -> Report {
    let cat = &site.category;
    let cospans: usize = cat.objects().map(|c| cat.arrows_into(c).len().pow(2)).sum();
    match cat.right_ore() {
        Ok(()) => Report::new("check-ore", Outcome::Pass).fact("cospans", cospans),
        Err(f) => Report::new("check-ore", Outcome::Fail)
            .fact("cospans", cospans)
            .with_witness("ore", ore_fields(cat, f, None)),
    }
}

fn enumerate(site: &Site, guards: &Guards) -> Report {
    let cat = &site.category;
    match enumerate_topologies(cat, guards.sieves) {
        Err(e) => Report::new("enumerate-topologies", Outcome::Guard).with_witness(
            "guard",
            vec![("sieves", e.sieves.into()), ("limit", e.limit.into()), ("variable", GUARD_VAR.into())],
        ),
        Ok(all) => {
            let width = all.len().to_string().len();
            let mut doc = SiteDocument::from_category(cat);
            for (i, t) in all.iter().enumerate() {
                doc.push_topology(&format!("T{:0width$}", i + 1), cat, t);
            }
            let mut r = Report::new("enumerate-topologies", Outcome::Pass).fact("count", all.len());
            r.document = Some(serialize(&doc));
            r
        }
    }
}

fn check_flat(site: &Site, name: &str) -> Report {
    let Some((_, variance, f)) = site.functor(name) else {
        return Report::error(
            "check-flat",
            Outcome::Error,
            "usage",
            vec![("message", format!("no functor named `{name}`").into())],
        );
    };
    let r = Report::new("check-flat", Outcome::Pass)
        .fact("functor", name)
        .fact("variance", variance.name());
    match is_flat(f) {
        Ok(()) => r,
        Err(w) => {
            let el = &w.elements.category;
            let (failure, items): (&str, Vec<&str>) = match w.failure {
                FilteredFailure::Empty => ("empty", vec![]),
                FilteredFailure::NoCocone(a, b) => ("no-cone", vec![el.object_id(a), el.object_id(b)]),
                FilteredFailure::NotCoequalized(u, v) => ("not-equalized", vec![el.arrow_id(u), el.arrow_id(v)]),
            };
            Report {
                outcome: Outcome::Fail,
                ..r
            }
            .with_witness("flatness", vec![("failure", failure.into()), ("elements", json!(items))])
        }
    }
}

fn yoneda(site: &Site) -> Report {
    let cat = &site.category;
    let declared: Vec<(String, FinSetFunctor)> = site
        .functors
        .iter()
        .filter(|(_, v, _)| *v == Variance::Presheaf)
        .map(|(n, _, f)| (n.clone(), f.clone()))
        .collect();
    let presheaves = if declared.is_empty() {
        cat.objects()
            .map(|c| (format!("Y({})", cat.object_id(c)), FinSetFunctor::yoneda(cat, c)))
            .collect()
    } else {
        declared
    };
    let mut checked = Vec::new();
    for (name, p) in &presheaves {
        for c in cat.objects() {
            match yoneda_check(cat, p, c) {
                Ok(n) => checked.push(json!(format!("{name} at {}: {n}", cat.object_id(c)))),
                Err(e) => {
                    return Report::new("yoneda-check", Outcome::Fail).with_witness(
                        "yoneda",
                        vec![
                            ("presheaf", name.as_str().into()),
                            ("object", cat.object_id(c).into()),
                            ("failure", format!("{e:?}").into()),
                        ],
                    )
                }
            }
        }
    }
    Report::new("yoneda-check", Outcome::Pass).fact("bijections", Value::Array(checked))
}

fn usage(command: &str, message: String) -> Report {
    Report::error(command, Outcome::Error, "usage", vec![("message", message.into())])
}

fn check_homogeneous(site: &str, model: &str, cotopology: Option<&str>, guards: &Guards) -> Report {
    const CMD: &str = "check-homogeneous";
    let Some(n) = site.strip_prefix("ordfm:").and_then(|n| n.parse::<usize>().ok()) else {
        return usage(CMD, format!("unknown site `{site}`, expected ordfm:N"));
    };
    let Some(carrier) = Carrier::parse(model) else {
        return usage(CMD, format!("unknown model `{model}`, expected Q, Z or chain:k"));
    };
    let cosieve_form = match cotopology {
        None => false,
        Some("atomic") => true,
        Some(other) => return usage(CMD, format!("unknown cotopology `{other}`, expected atomic")),
    };
    let ord = match ord_site(n, guards.ord) {
        Ok(s) => s,
        Err(DloError::TooLarge { n, limit }) => {
            return Report::new(CMD, Outcome::Guard).with_witness(
                "guard",
                vec![("size", n.into()), ("limit", limit.into()), ("variable", GUARD_VAR.into())],
            )
        }
        Err(e) => return usage(CMD, e.to_string()),
    };
    let oracle = LinearOrderOracle::new(ord, carrier);
    let base = Report::new(CMD, Outcome::Pass)
        .fact("site", site)
        .fact("model", carrier.name())
        .fact("form", if cosieve_form { "cosieve" } else { "single-arrow" });
    let verdict = if cosieve_form {
        let bounds = Bounds {
            enforce_axioms: false,
            ..Bounds::default()
        };
        is_j_homogeneous(&oracle, &oracle.ord_site().atomic_cotopology(), &bounds)
    } else {
        is_homogeneous_atomic(&oracle, &Bounds::default())
    };
    let cat = oracle.ord_site().category();
    let witness_fields = |w: &HomogeneityWitness<Vec<Rational>>| {
        let mut v: Vec<(&str, Value)> = vec![("object", cat.object_id(w.object).into())];
        if let Some(s) = &w.cosieve {
            v.push(("cosieve", ids(cat, s)));
        }
        if let [f] = w.arrows.as_slice() {
            let images = oracle.ord_site().images(*f);
            let map: Vec<String> = images.iter().enumerate().map(|(i, j)| format!("f({i})={j}")).collect();
            v.push(("arrow", cat.arrow_id(*f).into()));
            let map = if map.is_empty() { "empty".to_string() } else { map.join(", ") };
            v.push(("map", map.into()));
        }
        v.push(("y", format_tuple(&w.sample).into()));
        v
    };
    match verdict {
        Ok(HomogeneityVerdict::Pass { certificate }) => base.fact("lifts", certificate.len()),
        Ok(HomogeneityVerdict::Fail { witness }) => Report {
            outcome: Outcome::Fail,
            ..base
        }
        .with_witness("no-lift", witness_fields(&witness)),
        Ok(HomogeneityVerdict::Inconclusive { witness }) => Report {
            outcome: Outcome::Inconclusive,
            ..base
        }
        .with_witness("undecided-lift", witness_fields(&witness)),
        Err(HomogeneityError::OreConditionFails(f)) => Report {
            outcome: Outcome::Fail,
            ..base
        }
        .with_witness("ore", ore_fields(cat, f, None)),
        Err(e) => Report::error(CMD, Outcome::Error, "oracle", vec![("message", e.to_string().into())]),
    }
}
