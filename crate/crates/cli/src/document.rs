//! The site document format.
//!
//! ```text
//! # the monoid {1, e}
//! object * identity 1
//! arrow e : * -> *
//! e . e = e
//!
//! topology J
//!   cover * : {e}
//! end
//!
//! named K = atomic
//!
//! functor F covariant
//!   set * : {x, y}
//!   map e : {x -> x, y -> x}
//! end
//! ```
//!
//! `#` starts a comment. Ids are runs of any characters other than
//! whitespace, `# , { } : = .` and the arrow token `->`. A cover line names
//! the sieve generated by the listed arrows. Maps of a `presheaf` functor run
//! against the arrows of the category. Identities and identity maps are
//! implicit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use site_forge_core::fincat::{default_identity_name, CategoryError, OreFailure};
use site_forge_core::flatfun::{FinSetFunctor, SetFunctorError};
use site_forge_core::sieve::generate;
use site_forge_core::{FinCat, RawCategory, Sieve, Topology, TopologyKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}, column {column}: unknown {kind} `{id}`")]
    UnknownId {
        line: usize,
        column: usize,
        kind: &'static str,
        id: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObjectDecl {
    pub id: String,
    pub identity: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArrowDecl {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompositeDecl {
    pub outer: String,
    pub inner: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverDecl {
    pub object: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyBlock {
    pub name: String,
    pub covers: Vec<CoverDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDecl {
    pub name: String,
    pub kind: TopologyKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Presheaf,
}

impl Variance {
    pub fn name(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Presheaf => "presheaf",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetDecl {
    pub object: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MapDecl {
    pub arrow: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorBlock {
    pub name: String,
    pub variance: Variance,
    pub sets: Vec<SetDecl>,
    pub maps: Vec<MapDecl>,
}

/// A parsed document. Every list is kept in canonical order, so equal
/// documents serialize to equal text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SiteDocument {
    pub objects: Vec<ObjectDecl>,
    pub arrows: Vec<ArrowDecl>,
    pub composites: Vec<CompositeDecl>,
    pub topologies: Vec<TopologyBlock>,
    pub named: Vec<NamedDecl>,
    pub functors: Vec<FunctorBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Sym(char),
    To,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn lex(line: &str) -> Vec<Token> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let is_sep = |c: char| c.is_whitespace() || ",{}:=.#".contains(c);
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::To, column: i + 1 });
            i += 2;
            continue;
        }
        if is_sep(c) {
            out.push(Token { tok: Tok::Sym(c), column: i + 1 });
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !is_sep(chars[i]) && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>')) {
            i += 1;
        }
        out.push(Token {
            tok: Tok::Id(chars[start..i].iter().collect()),
            column: start + 1,
        });
    }
    out
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    width: usize,
}

impl Cursor<'_> {
    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.width + 1, |t| t.column)
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column: self.column(),
            expected: expected.to_string(),
        })
    }

    fn id(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Id(s), column }) => {
                self.pos += 1;
                Ok((s.clone(), *column))
            }
            _ => self.fail(what),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Id(s), .. }) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(&format!("`{word}`")),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Sym(s), .. }) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(&format!("`{c}`")),
        }
    }

    fn to(&mut self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::To, .. }) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail("`->`"),
        }
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
    }

    fn end(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return self.fail("end of line");
        }
        Ok(())
    }

    /// `{ item, item, ... }` where `item` is parsed by `each`.
    fn braced<T>(&mut self, mut each: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.sym('{')?;
        let mut out = Vec::new();
        if self.peek_sym('}') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(each(self)?);
            if self.peek_sym(',') {
                self.pos += 1;
                continue;
            }
            self.sym('}')?;
            return Ok(out);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RefKind {
    Object,
    Arrow,
}

struct Reference {
    kind: RefKind,
    id: String,
    line: usize,
    column: usize,
}

enum Block {
    Topology(TopologyBlock),
    Functor(FunctorBlock),
}

/// Parses a document, checking syntax and that every referenced object and
/// arrow id is declared.
pub fn parse(text: &str) -> Result<SiteDocument, DocumentError> {
    let mut doc = SiteDocument::default();
    let mut refs: Vec<Reference> = Vec::new();
    let mut block: Option<Block> = None;
    // Element references in maps: (functor, arrow, from, to, line, column).
    let mut element_refs: Vec<(String, String, String, String, usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (n, raw_line) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let toks = lex(raw_line);
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            line,
            toks: &toks,
            pos: 0,
            width: raw_line.chars().count(),
        };
        let mut push_ref = |kind, id: &str, column| {
            refs.push(Reference {
                kind,
                id: id.to_string(),
                line,
                column,
            })
        };
        if let Some(b) = block.as_mut() {
            let (word, _) = c.id("`end` or a block line")?;
            match (b, word.as_str()) {
                (_, "end") => {
                    c.end()?;
                    match block.take().expect("open block") {
                        Block::Topology(t) => doc.topologies.push(t),
                        Block::Functor(f) => doc.functors.push(f),
                    }
                }
                (Block::Topology(t), "cover") => {
                    let (object, col) = c.id("object id")?;
                    push_ref(RefKind::Object, &object, col);
                    c.sym(':')?;
                    let gens = c.braced(|c| c.id("arrow id"))?;
                    c.end()?;
                    let mut generators = Vec::new();
                    for (g, col) in gens {
                        push_ref(RefKind::Arrow, &g, col);
                        generators.push(g);
                    }
                    generators.sort();
                    generators.dedup();
                    t.covers.push(CoverDecl { object, generators });
                }
                (Block::Functor(f), "set") => {
                    let (object, col) = c.id("object id")?;
                    push_ref(RefKind::Object, &object, col);
                    c.sym(':')?;
                    let elements: Vec<String> = c.braced(|c| c.id("element id"))?.into_iter().map(|e| e.0).collect();
                    c.end()?;
                    f.sets.push(SetDecl { object, elements });
                }
                (Block::Functor(f), "map") => {
                    let (arrow, col) = c.id("arrow id")?;
                    push_ref(RefKind::Arrow, &arrow, col);
                    c.sym(':')?;
                    let pairs = c.braced(|c| {
                        let (x, col) = c.id("element id")?;
                        c.to()?;
                        let (y, _) = c.id("element id")?;
                        Ok((x, y, col))
                    })?;
                    c.end()?;
                    for (x, y, col) in &pairs {
                        element_refs.push((f.name.clone(), arrow.clone(), x.clone(), y.clone(), line, *col));
                    }
                    f.maps.push(MapDecl {
                        arrow,
                        pairs: pairs.into_iter().map(|(x, y, _)| (x, y)).collect(),
                    });
                }
                (Block::Topology(_), _) => {
                    return Err(ParseError {
                        line,
                        column: toks[0].column,
                        expected: "`cover` or `end`".into(),
                    }
                    .into())
                }
                (Block::Functor(_), _) => {
                    return Err(ParseError {
                        line,
                        column: toks[0].column,
                        expected: "`set`, `map` or `end`".into(),
                    }
                    .into())
                }
            }
            continue;
        }
        let (first, first_col) = c.id("a declaration")?;
        if c.peek_sym('.') {
            c.pos += 1;
            let (inner, inner_col) = c.id("arrow id")?;
            c.sym('=')?;
            let (result, result_col) = c.id("arrow id")?;
            c.end()?;
            push_ref(RefKind::Arrow, &first, first_col);
            push_ref(RefKind::Arrow, &inner, inner_col);
            push_ref(RefKind::Arrow, &result, result_col);
            doc.composites.push(CompositeDecl {
                outer: first,
                inner,
                result,
            });
            continue;
        }
        match first.as_str() {
            "object" => {
                let (id, _) = c.id("object id")?;
                let identity = if c.pos < toks.len() {
                    c.keyword("identity")?;
                    Some(c.id("arrow id")?.0)
                } else {
                    None
                };
                c.end()?;
                let identity = identity.filter(|i| *i != default_identity_name(&id));
                doc.objects.push(ObjectDecl { id, identity });
            }
            "arrow" => {
                let (id, _) = c.id("arrow id")?;
                c.sym(':')?;
                let (dom, dcol) = c.id("object id")?;
                c.to()?;
                let (cod, ccol) = c.id("object id")?;
                c.end()?;
                push_ref(RefKind::Object, &dom, dcol);
                push_ref(RefKind::Object, &cod, ccol);
                doc.arrows.push(ArrowDecl { id, dom, cod });
            }
            "topology" => {
                let (name, _) = c.id("topology name")?;
                c.end()?;
                block = Some(Block::Topology(TopologyBlock { name, covers: Vec::new() }));
            }
            "named" => {
                let (name, _) = c.id("topology name")?;
                c.sym('=')?;
                let col = c.column();
                let (kind, _) = c.id("`trivial`, `dense` or `atomic`")?;
                c.end()?;
                let kind = TopologyKind::from_name(&kind).ok_or(ParseError {
                    line,
                    column: col,
                    expected: "`trivial`, `dense` or `atomic`".into(),
                })?;
                doc.named.push(NamedDecl { name, kind });
            }
            "functor" => {
                let (name, _) = c.id("functor name")?;
                let col = c.column();
                let (v, _) = c.id("`covariant` or `presheaf`")?;
                c.end()?;
                let variance = match v.as_str() {
                    "covariant" => Variance::Covariant,
                    "presheaf" => Variance::Presheaf,
                    _ => {
                        return Err(ParseError {
                            line,
                            column: col,
                            expected: "`covariant` or `presheaf`".into(),
                        }
                        .into())
                    }
                };
                block = Some(Block::Functor(FunctorBlock {
                    name,
                    variance,
                    sets: Vec::new(),
                    maps: Vec::new(),
                }));
            }
            _ => {
                return Err(ParseError {
                    line,
                    column: first_col,
                    expected: "`object`, `arrow`, `topology`, `named`, `functor` or a composite `g . f = h`".into(),
                }
                .into())
            }
        }
    }
    if block.is_some() {
        return Err(ParseError {
            line: last_line + 1,
            column: 1,
            expected: "`end`".into(),
        }
        .into());
    }

    let objects: BTreeSet<&str> = doc.objects.iter().map(|o| o.id.as_str()).collect();
    let mut arrows: BTreeMap<String, (String, String)> = BTreeMap::new();
    for o in &doc.objects {
        let id = o.identity.clone().unwrap_or_else(|| default_identity_name(&o.id));
        arrows.insert(id, (o.id.clone(), o.id.clone()));
    }
    for a in &doc.arrows {
        arrows.insert(a.id.clone(), (a.dom.clone(), a.cod.clone()));
    }
    for r in &refs {
        let known = match r.kind {
            RefKind::Object => objects.contains(r.id.as_str()),
            RefKind::Arrow => arrows.contains_key(&r.id),
        };
        if !known {
            return Err(DocumentError::UnknownId {
                line: r.line,
                column: r.column,
                kind: if r.kind == RefKind::Object { "object" } else { "arrow" },
                id: r.id.clone(),
            });
        }
    }
    for (fname, arrow, x, y, line, column) in element_refs {
        let f = doc.functors.iter().find(|f| f.name == fname).expect("parsed functor");
        let (dom, cod) = &arrows[&arrow];
        let (src, dst) = match f.variance {
            Variance::Covariant => (dom, cod),
            Variance::Presheaf => (cod, dom),
        };
        let has = |obj: &String, e: &String| {
            f.sets
                .iter()
                .any(|s| &s.object == obj && s.elements.contains(e))
        };
        for (obj, e) in [(src, &x), (dst, &y)] {
            if !has(obj, e) {
                return Err(DocumentError::UnknownId {
                    line,
                    column,
                    kind: "element",
                    id: e.clone(),
                });
            }
        }
    }

    doc.normalize();
    Ok(doc)
}

impl SiteDocument {
    fn normalize(&mut self) {
        self.objects.sort();
        self.arrows.sort();
        self.composites.sort();
        self.topologies.sort_by(|a, b| a.name.cmp(&b.name));
        for t in &mut self.topologies {
            t.covers.sort();
            t.covers.dedup();
        }
        self.named.sort_by(|a, b| a.name.cmp(&b.name));
        self.functors.sort_by(|a, b| a.name.cmp(&b.name));
        for f in &mut self.functors {
            f.sets.sort_by(|a, b| a.object.cmp(&b.object));
            f.maps.sort_by(|a, b| a.arrow.cmp(&b.arrow));
        }
    }

    /// The category tables, identities and identity composites omitted.
    pub fn from_category(cat: &FinCat) -> SiteDocument {
        let raw = cat.to_raw();
        let mut doc = SiteDocument {
            objects: raw
                .objects
                .iter()
                .map(|o| ObjectDecl {
                    id: o.clone(),
                    identity: raw.identities.get(o).cloned(),
                })
                .collect(),
            arrows: raw
                .arrows
                .iter()
                .map(|a| ArrowDecl {
                    id: a.id.clone(),
                    dom: a.dom.clone(),
                    cod: a.cod.clone(),
                })
                .collect(),
            composites: raw
                .composites
                .iter()
                .map(|c| CompositeDecl {
                    outer: c.outer.clone(),
                    inner: c.inner.clone(),
                    result: c.result.clone(),
                })
                .collect(),
            ..SiteDocument::default()
        };
        doc.normalize();
        doc
    }

    /// Adds a topology block listing every member of every covering sieve.
    pub fn push_topology(&mut self, name: &str, cat: &FinCat, topology: &Topology) {
        let mut covers = Vec::new();
        for (c, sieves) in topology.iter() {
            for s in sieves {
                covers.push(CoverDecl {
                    object: cat.object_id(c).to_string(),
                    generators: s.member_ids(cat).into_iter().map(String::from).collect(),
                });
            }
        }
        self.topologies.push(TopologyBlock {
            name: name.to_string(),
            covers,
        });
        self.normalize();
    }

    pub fn raw_category(&self) -> RawCategory {
        let mut raw = RawCategory::new();
        for o in &self.objects {
            raw = raw.object(o.id.clone());
            if let Some(i) = &o.identity {
                raw = raw.identity_named(o.id.clone(), i.clone());
            }
        }
        for a in &self.arrows {
            raw = raw.arrow(a.id.clone(), a.dom.clone(), a.cod.clone());
        }
        for c in &self.composites {
            raw = raw.compose(c.outer.clone(), c.inner.clone(), c.result.clone());
        }
        raw
    }

    /// Names of all topologies, blocks and named requests together, sorted.
    pub fn topology_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .topologies
            .iter()
            .map(|t| t.name.clone())
            .chain(self.named.iter().map(|n| n.name.clone()))
            .collect();
        names.sort();
        names
    }
}

/// Canonical text of a document.
pub fn serialize(doc: &SiteDocument) -> String {
    let mut sections: Vec<String> = Vec::new();
    let mut s = String::new();
    for o in &doc.objects {
        match &o.identity {
            Some(i) => writeln!(s, "object {} identity {i}", o.id),
            None => writeln!(s, "object {}", o.id),
        }
        .expect("write to string");
    }
    sections.push(std::mem::take(&mut s));
    for a in &doc.arrows {
        writeln!(s, "arrow {} : {} -> {}", a.id, a.dom, a.cod).expect("write to string");
    }
    sections.push(std::mem::take(&mut s));
    for c in &doc.composites {
        writeln!(s, "{} . {} = {}", c.outer, c.inner, c.result).expect("write to string");
    }
    sections.push(std::mem::take(&mut s));
    for t in &doc.topologies {
        let mut b = format!("topology {}\n", t.name);
        for c in &t.covers {
            writeln!(b, "  cover {} : {{{}}}", c.object, c.generators.join(", ")).expect("write to string");
        }
        b.push_str("end\n");
        sections.push(b);
    }
    for n in &doc.named {
        writeln!(s, "named {} = {}", n.name, n.kind.name()).expect("write to string");
    }
    sections.push(std::mem::take(&mut s));
    for f in &doc.functors {
        let mut b = format!("functor {} {}\n", f.name, f.variance.name());
        for set in &f.sets {
            writeln!(b, "  set {} : {{{}}}", set.object, set.elements.join(", ")).expect("write to string");
        }
        for m in &f.maps {
            let pairs: Vec<String> = m.pairs.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
            writeln!(b, "  map {} : {{{}}}", m.arrow, pairs.join(", ")).expect("write to string");
        }
        b.push_str("end\n");
        sections.push(b);
    }
    sections.retain(|s| !s.is_empty());
    sections.join("\n")
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("invalid category: {0}")]
    Category(#[from] CategoryError),
    #[error("topology name `{0}` is used twice")]
    DuplicateTopology(String),
    #[error("cover `{object} : {{{generators}}}` in `{topology}` mixes codomains")]
    BadCover {
        topology: String,
        object: String,
        generators: String,
    },
    #[error("functor `{name}`: {error}")]
    Functor { name: String, error: SetFunctorError },
    #[error("functor `{name}` has no set for object `{object}`")]
    MissingSet { name: String, object: String },
    #[error("functor `{name}` has no map for arrow `{arrow}`")]
    MissingMap { name: String, arrow: String },
    #[error("functor `{name}` maps `{element}` twice along `{arrow}`")]
    DuplicateMapEntry { name: String, arrow: String, element: String },
}

/// A named topology that could not be built because the category fails the
/// right Ore condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFailure {
    pub name: String,
    pub failure: OreFailure,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Site {
    pub document: SiteDocument,
    pub category: Arc<FinCat>,
    /// Topology blocks as cover tables (sieves generated from the listed
    /// arrows), by name.
    pub tables: Vec<(String, Topology)>,
    pub functors: Vec<(String, Variance, FinSetFunctor)>,
}

impl Site {
    pub fn load(text: &str) -> Result<Site, LoadError> {
        let document = parse(text)?;
        Site::from_document(document)
    }

    pub fn from_document(document: SiteDocument) -> Result<Site, LoadError> {
        let names = document.topology_names();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(LoadError::DuplicateTopology(w[0].clone()));
        }
        let category = Arc::new(document.raw_category().validate()?);
        let cat = &category;
        let mut tables = Vec::new();
        for t in &document.topologies {
            let mut covers: Vec<BTreeSet<Sieve>> = vec![BTreeSet::new(); cat.object_count()];
            for c in &t.covers {
                let o = cat.object(&c.object).expect("checked on parse");
                let gens = c.generators.iter().map(|g| cat.arrow(g).expect("checked on parse"));
                let sieve = generate(cat, o, gens).map_err(|_| LoadError::BadCover {
                    topology: t.name.clone(),
                    object: c.object.clone(),
                    generators: c.generators.join(", "),
                })?;
                covers[o.0].insert(sieve);
            }
            tables.push((t.name.clone(), Topology::from_covers(covers)));
        }
        let mut functors = Vec::new();
        for f in &document.functors {
            functors.push((f.name.clone(), f.variance, build_functor(cat, f)?));
        }
        Ok(Site {
            document,
            category,
            tables,
            functors,
        })
    }

    /// A topology block or a named topology built on the category.
    pub fn topology(&self, name: &str) -> Option<Result<Topology, NamedFailure>> {
        if let Some((_, t)) = self.tables.iter().find(|(n, _)| n == name) {
            return Some(Ok(t.clone()));
        }
        let named = self.document.named.iter().find(|n| n.name == name)?;
        Some(named.kind.build(&self.category).map_err(|failure| NamedFailure {
            name: name.to_string(),
            failure,
        }))
    }

    pub fn functor(&self, name: &str) -> Option<&(String, Variance, FinSetFunctor)> {
        self.functors.iter().find(|(n, _, _)| n == name)
    }
}

fn build_functor(cat: &Arc<FinCat>, block: &FunctorBlock) -> Result<FinSetFunctor, LoadError> {
    let source = match block.variance {
        Variance::Covariant => cat.clone(),
        Variance::Presheaf => Arc::new(cat.opposite()),
    };
    let mut sets = Vec::new();
    for o in cat.objects() {
        let id = cat.object_id(o);
        let decl = block.sets.iter().find(|s| s.object == id).ok_or_else(|| LoadError::MissingSet {
            name: block.name.clone(),
            object: id.to_string(),
        })?;
        sets.push(decl.elements.clone());
    }
    let mut maps = Vec::new();
    for a in cat.arrows() {
        let (d, c) = (source.dom(a), source.cod(a));
        let id = cat.arrow_id(a);
        let decl = block.maps.iter().find(|m| m.arrow == id);
        let table = match decl {
            None if cat.is_identity(a) => (0..sets[d.0].len()).collect(),
            None => {
                return Err(LoadError::MissingMap {
                    name: block.name.clone(),
                    arrow: id.to_string(),
                })
            }
            Some(m) => {
                let mut table = vec![usize::MAX; sets[d.0].len()];
                for (x, y) in &m.pairs {
                    let i = sets[d.0].iter().position(|e| e == x).expect("checked on parse");
                    let j = sets[c.0].iter().position(|e| e == y).expect("checked on parse");
                    if table[i] != usize::MAX {
                        return Err(LoadError::DuplicateMapEntry {
                            name: block.name.clone(),
                            arrow: id.to_string(),
                            element: x.clone(),
                        });
                    }
                    table[i] = j;
                }
                table
            }
        };
        maps.push(table);
    }
    FinSetFunctor::new(source, sets, maps).map_err(|error| LoadError::Functor {
        name: block.name.clone(),
        error,
    })
}
