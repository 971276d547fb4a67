//! Finite categories as validated composition tables.
//!
//! A [`FinCat`] is built from a [`RawCategory`] listing objects, non-identity
//! arrows and composites. Identities are synthesized (named `id_<object>`
//! unless a name is supplied) and every composable pair must be assigned a
//! composite. Validation checks the identity laws and associativity
//! exhaustively and reports the first violation with a witness.
//!
//! Objects and arrows are sorted by id, so index order is lexicographic id
//! order and every hom-set listing is deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

/// Index of an object in a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of an arrow in a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arr(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawArrow {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// `outer . inner = result`, i.e. `outer ∘ inner`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawComposite {
    pub outer: String,
    pub inner: String,
    pub result: String,
}

/// Unvalidated category tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// Explicit identity names; objects not listed get `id_<object>`.
    pub identities: BTreeMap<String, String>,
    pub arrows: Vec<RawArrow>,
    pub composites: Vec<RawComposite>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, id: impl Into<String>) -> Self {
        self.objects.push(id.into());
        self
    }

    pub fn identity_named(mut self, object: impl Into<String>, arrow: impl Into<String>) -> Self {
        self.identities.insert(object.into(), arrow.into());
        self
    }

    pub fn arrow(
        mut self,
        id: impl Into<String>,
        dom: impl Into<String>,
        cod: impl Into<String>,
    ) -> Self {
        self.arrows.push(RawArrow {
            id: id.into(),
            dom: dom.into(),
            cod: cod.into(),
        });
        self
    }

    pub fn compose(
        mut self,
        outer: impl Into<String>,
        inner: impl Into<String>,
        result: impl Into<String>,
    ) -> Self {
        self.composites.push(RawComposite {
            outer: outer.into(),
            inner: inner.into(),
            result: result.into(),
        });
        self
    }

    pub fn identity_name(&self, object: &str) -> String {
        self.identities
            .get(object)
            .cloned()
            .unwrap_or_else(|| default_identity_name(object))
    }

    pub fn validate(&self) -> Result<FinCat, CategoryError> {
        FinCat::from_raw(self)
    }
}

pub fn default_identity_name(object: &str) -> String {
    format!("id_{object}")
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("dangling reference to `{0}`")]
    DanglingReference(String),
    #[error("`{outer} . {inner}` is not a composable pair")]
    NotComposable { outer: String, inner: String },
    #[error("composite `{outer} . {inner} = {result}` has the wrong domain or codomain")]
    CompositeTypeMismatch {
        outer: String,
        inner: String,
        result: String,
    },
    #[error("composite `{outer} . {inner}` is given two different values")]
    ConflictingComposite { outer: String, inner: String },
    #[error("identity law violated for `{0}`")]
    IdentityViolation(String),
    #[error("missing composite `{outer} . {inner}`")]
    MissingComposite { outer: String, inner: String },
    #[error("associativity fails: {h} . ({g} . {f}) != ({h} . {g}) . {f}")]
    AssociativityViolation { h: String, g: String, f: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ArrowInfo {
    id: String,
    dom: Obj,
    cod: Obj,
}

/// A validated finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<ArrowInfo>,
    identity: Vec<Arr>,
    /// `table[g * n + f] = g ∘ f` for composable pairs.
    table: Vec<Option<Arr>>,
    homs: Vec<Vec<Arr>>,
    into: Vec<Vec<Arr>>,
    from: Vec<Vec<Arr>>,
    object_index: BTreeMap<String, Obj>,
    arrow_index: BTreeMap<String, Arr>,
}

/// A cospan `left: a → c ← b :right` with no commuting completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OreFailure {
    pub left: Arr,
    pub right: Arr,
}

impl FinCat {
    pub fn from_raw(raw: &RawCategory) -> Result<FinCat, CategoryError> {
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for o in &raw.objects {
            if !names.insert(o) {
                return Err(CategoryError::DuplicateId(o.clone()));
            }
        }
        for o in raw.identities.keys() {
            if !raw.objects.contains(o) {
                return Err(CategoryError::DanglingReference(o.clone()));
            }
        }
        let identity_names: Vec<(String, String)> = raw
            .objects
            .iter()
            .map(|o| (o.clone(), raw.identity_name(o)))
            .collect();
        for (_, id) in &identity_names {
            if !names.insert(id) {
                return Err(CategoryError::DuplicateId(id.clone()));
            }
        }
        for a in &raw.arrows {
            if !names.insert(&a.id) {
                return Err(CategoryError::DuplicateId(a.id.clone()));
            }
        }

        let mut objects: Vec<String> = raw.objects.clone();
        objects.sort();
        let object_index: BTreeMap<String, Obj> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), Obj(i)))
            .collect();
        let lookup_obj = |id: &str| {
            object_index
                .get(id)
                .copied()
                .ok_or_else(|| CategoryError::DanglingReference(id.to_string()))
        };

        let mut arrow_rows: Vec<(String, Obj, Obj)> = Vec::new();
        for (o, id) in &identity_names {
            let x = lookup_obj(o)?;
            arrow_rows.push((id.clone(), x, x));
        }
        for a in &raw.arrows {
            arrow_rows.push((a.id.clone(), lookup_obj(&a.dom)?, lookup_obj(&a.cod)?));
        }
        arrow_rows.sort();
        let arrows: Vec<ArrowInfo> = arrow_rows
            .into_iter()
            .map(|(id, dom, cod)| ArrowInfo { id, dom, cod })
            .collect();
        let arrow_index: BTreeMap<String, Arr> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), Arr(i)))
            .collect();
        let lookup_arr = |id: &str| {
            arrow_index
                .get(id)
                .copied()
                .ok_or_else(|| CategoryError::DanglingReference(id.to_string()))
        };
        let identity: Vec<Arr> = objects
            .iter()
            .map(|o| arrow_index[&raw.identity_name(o)])
            .collect();
        let is_identity = |a: Arr| identity[arrows[a.0].dom.0] == a;

        let n = arrows.len();
        let mut table: Vec<Option<Arr>> = alloc::vec![None; n * n];
        for c in &raw.composites {
            let g = lookup_arr(&c.outer)?;
            let f = lookup_arr(&c.inner)?;
            let h = lookup_arr(&c.result)?;
            if arrows[g.0].dom != arrows[f.0].cod {
                return Err(CategoryError::NotComposable {
                    outer: c.outer.clone(),
                    inner: c.inner.clone(),
                });
            }
            let (gi, fi) = (is_identity(g), is_identity(f));
            if gi || fi {
                let expected = if gi { f } else { g };
                if h != expected {
                    let culprit = if gi { f } else { g };
                    return Err(CategoryError::IdentityViolation(arrows[culprit.0].id.clone()));
                }
            }
            if arrows[h.0].dom != arrows[f.0].dom || arrows[h.0].cod != arrows[g.0].cod {
                return Err(CategoryError::CompositeTypeMismatch {
                    outer: c.outer.clone(),
                    inner: c.inner.clone(),
                    result: c.result.clone(),
                });
            }
            let slot = &mut table[g.0 * n + f.0];
            match slot {
                Some(prev) if *prev != h => {
                    return Err(CategoryError::ConflictingComposite {
                        outer: c.outer.clone(),
                        inner: c.inner.clone(),
                    })
                }
                _ => *slot = Some(h),
            }
        }

        for g in 0..n {
            for f in 0..n {
                if arrows[g].dom != arrows[f].cod {
                    continue;
                }
                if is_identity(Arr(g)) {
                    table[g * n + f] = Some(Arr(f));
                } else if is_identity(Arr(f)) {
                    table[g * n + f] = Some(Arr(g));
                }
            }
        }
        for g in 0..n {
            for f in 0..n {
                if arrows[g].dom == arrows[f].cod && table[g * n + f].is_none() {
                    return Err(CategoryError::MissingComposite {
                        outer: arrows[g].id.clone(),
                        inner: arrows[f].id.clone(),
                    });
                }
            }
        }

        let cat = FinCat::assemble(objects, arrows, identity, table, object_index, arrow_index);
        cat.check_associativity()?;
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        arrows: Vec<ArrowInfo>,
        identity: Vec<Arr>,
        table: Vec<Option<Arr>>,
        object_index: BTreeMap<String, Obj>,
        arrow_index: BTreeMap<String, Arr>,
    ) -> FinCat {
        let k = objects.len();
        let mut homs = alloc::vec![Vec::new(); k * k];
        let mut into = alloc::vec![Vec::new(); k];
        let mut from = alloc::vec![Vec::new(); k];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.dom.0 * k + a.cod.0].push(Arr(i));
            into[a.cod.0].push(Arr(i));
            from[a.dom.0].push(Arr(i));
        }
        FinCat {
            objects,
            arrows,
            identity,
            table,
            homs,
            into,
            from,
            object_index,
            arrow_index,
        }
    }

    fn check_associativity(&self) -> Result<(), CategoryError> {
        for f in self.arrows() {
            for &g in self.arrows_from(self.cod(f)) {
                let gf = self.compose(g, f).expect("composable");
                for &h in self.arrows_from(self.cod(g)) {
                    let hg = self.compose(h, g).expect("composable");
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CategoryError::AssociativityViolation {
                            h: self.arrow_id(h).to_string(),
                            g: self.arrow_id(g).to_string(),
                            f: self.arrow_id(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arr> + '_ {
        (0..self.arrows.len()).map(Arr)
    }

    pub fn object_id(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn arrow_id(&self, a: Arr) -> &str {
        &self.arrows[a.0].id
    }

    pub fn object(&self, id: &str) -> Option<Obj> {
        self.object_index.get(id).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<Arr> {
        self.arrow_index.get(id).copied()
    }

    pub fn dom(&self, a: Arr) -> Obj {
        self.arrows[a.0].dom
    }

    pub fn cod(&self, a: Arr) -> Obj {
        self.arrows[a.0].cod
    }

    pub fn identity(&self, o: Obj) -> Arr {
        self.identity[o.0]
    }

    pub fn is_identity(&self, a: Arr) -> bool {
        self.identity[self.dom(a).0] == a
    }

    /// `g ∘ f`, or `None` when `dom g != cod f`.
    pub fn compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        self.table[g.0 * self.arrows.len() + f.0]
    }

    /// Arrows `a → b` in id order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Arr] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    /// Arrows with codomain `c`.
    pub fn arrows_into(&self, c: Obj) -> &[Arr] {
        &self.into[c.0]
    }

    /// Arrows with domain `c`.
    pub fn arrows_from(&self, c: Obj) -> &[Arr] {
        &self.from[c.0]
    }

    /// Tables with arrows reversed; ids and indices are unchanged.
    pub fn opposite(&self) -> FinCat {
        let n = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| ArrowInfo {
                id: a.id.clone(),
                dom: a.cod,
                cod: a.dom,
            })
            .collect();
        let mut table = alloc::vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        FinCat::assemble(
            self.objects.clone(),
            arrows,
            self.identity.clone(),
            table,
            self.object_index.clone(),
            self.arrow_index.clone(),
        )
    }

    /// Endo-arrows `e` with `e ∘ e = e`, identities included.
    pub fn idempotents(&self) -> Vec<(Obj, Arr)> {
        self.arrows()
            .filter(|&e| self.dom(e) == self.cod(e) && self.compose(e, e) == Some(e))
            .map(|e| (self.dom(e), e))
            .collect()
    }

    /// Every cospan `f: a → c ← b :g` completes to a commuting square
    /// `f ∘ h = g ∘ k`. Reports the first cospan (in arrow order) without one.
    pub fn right_ore(&self) -> Result<(), OreFailure> {
        for c in self.objects() {
            for &f in self.arrows_into(c) {
                for &g in self.arrows_into(c) {
                    if self.complete_cospan(f, g).is_none() {
                        return Err(OreFailure { left: f, right: g });
                    }
                }
            }
        }
        Ok(())
    }

    /// A pair `(h, k)` with `f ∘ h = g ∘ k`, if one exists.
    pub fn complete_cospan(&self, f: Arr, g: Arr) -> Option<(Arr, Arr)> {
        let (a, b) = (self.dom(f), self.dom(g));
        self.objects().find_map(|d| {
            self.hom(d, a).iter().find_map(|&h| {
                let fh = self.compose(f, h)?;
                self.hom(d, b)
                    .iter()
                    .find(|&&k| self.compose(g, k) == Some(fh))
                    .map(|&k| (h, k))
            })
        })
    }

    /// An inverse of `a`, if `a` is an isomorphism.
    pub fn inverse(&self, a: Arr) -> Option<Arr> {
        let (x, y) = (self.dom(a), self.cod(a));
        self.hom(y, x).iter().copied().find(|&b| {
            self.compose(b, a) == Some(self.identity(x)) && self.compose(a, b) == Some(self.identity(y))
        })
    }

    /// Tables with identities and identity composites left implicit.
    pub fn to_raw(&self) -> RawCategory {
        let mut raw = RawCategory::new();
        for o in self.objects() {
            raw.objects.push(self.object_id(o).to_string());
            let id = self.arrow_id(self.identity(o));
            if id != default_identity_name(self.object_id(o)) {
                raw.identities
                    .insert(self.object_id(o).to_string(), id.to_string());
            }
        }
        for a in self.arrows().filter(|&a| !self.is_identity(a)) {
            raw.arrows.push(RawArrow {
                id: self.arrow_id(a).to_string(),
                dom: self.object_id(self.dom(a)).to_string(),
                cod: self.object_id(self.cod(a)).to_string(),
            });
        }
        for g in self.arrows().filter(|&a| !self.is_identity(a)) {
            for &f in self.arrows_into(self.dom(g)) {
                if self.is_identity(f) {
                    continue;
                }
                let h = self.compose(g, f).expect("composable");
                raw.composites.push(RawComposite {
                    outer: self.arrow_id(g).to_string(),
                    inner: self.arrow_id(f).to_string(),
                    result: self.arrow_id(h).to_string(),
                });
            }
        }
        raw
    }

    /// The same category with every id passed through the given maps.
    pub fn relabel(
        &self,
        object: impl Fn(&str) -> String,
        arrow: impl Fn(&str) -> String,
    ) -> Result<FinCat, CategoryError> {
        let mut raw = RawCategory::new();
        for o in self.objects() {
            let name = object(self.object_id(o));
            raw.identities
                .insert(name.clone(), arrow(self.arrow_id(self.identity(o))));
            raw.objects.push(name);
        }
        for a in self.arrows().filter(|&a| !self.is_identity(a)) {
            raw.arrows.push(RawArrow {
                id: arrow(self.arrow_id(a)),
                dom: object(self.object_id(self.dom(a))),
                cod: object(self.object_id(self.cod(a))),
            });
        }
        for g in self.arrows() {
            for &f in self.arrows_into(self.dom(g)) {
                let h = self.compose(g, f).expect("composable");
                raw.composites.push(RawComposite {
                    outer: arrow(self.arrow_id(g)),
                    inner: arrow(self.arrow_id(f)),
                    result: arrow(self.arrow_id(h)),
                });
            }
        }
        FinCat::from_raw(&raw)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("object or arrow map has the wrong length")]
    LengthMismatch,
    #[error("arrow map does not respect the endpoints of `{0}`")]
    EndpointMismatch(String),
    #[error("identity of `{0}` is not sent to an identity")]
    IdentityNotPreserved(String),
    #[error("composite `{outer} . {inner}` is not preserved")]
    CompositeNotPreserved { outer: String, inner: String },
}

/// A functor between finite categories, checked exhaustively on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    objects: Vec<Obj>,
    arrows: Vec<Arr>,
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: Vec<Obj>,
        arrows: Vec<Arr>,
    ) -> Result<Self, FunctorError> {
        if objects.len() != source.object_count() || arrows.len() != source.arrow_count() {
            return Err(FunctorError::LengthMismatch);
        }
        for a in source.arrows() {
            let fa = arrows[a.0];
            if target.dom(fa) != objects[source.dom(a).0] || target.cod(fa) != objects[source.cod(a).0]
            {
                return Err(FunctorError::EndpointMismatch(source.arrow_id(a).to_string()));
            }
        }
        for o in source.objects() {
            if arrows[source.identity(o).0] != target.identity(objects[o.0]) {
                return Err(FunctorError::IdentityNotPreserved(source.object_id(o).to_string()));
            }
        }
        for g in source.arrows() {
            for &f in source.arrows_into(source.dom(g)) {
                let gf = source.compose(g, f).expect("composable");
                if target.compose(arrows[g.0], arrows[f.0]) != Some(arrows[gf.0]) {
                    return Err(FunctorError::CompositeNotPreserved {
                        outer: source.arrow_id(g).to_string(),
                        inner: source.arrow_id(f).to_string(),
                    });
                }
            }
        }
        Ok(FinFunctor {
            source,
            target,
            objects,
            arrows,
        })
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let objects = cat.objects().collect();
        let arrows = cat.arrows().collect();
        FinFunctor {
            source: cat.clone(),
            target: cat,
            objects,
            arrows,
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn map_obj(&self, o: Obj) -> Obj {
        self.objects[o.0]
    }

    pub fn map_arr(&self, a: Arr) -> Arr {
        self.arrows[a.0]
    }

    /// The object of the source sent to `o`, when unique.
    pub fn preimage_obj(&self, o: Obj) -> Option<Obj> {
        let mut hits = self.source.objects().filter(|&x| self.map_obj(x) == o);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    pub fn preimage_arr(&self, a: Arr) -> Option<Arr> {
        self.source.arrows().find(|&x| self.map_arr(x) == a)
    }

    pub fn is_faithful(&self) -> bool {
        let s = &self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let images: BTreeSet<Arr> = s.hom(a, b).iter().map(|&f| self.map_arr(f)).collect();
                images.len() == s.hom(a, b).len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let s = &self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let images: BTreeSet<Arr> = s.hom(a, b).iter().map(|&f| self.map_arr(f)).collect();
                images.len() == self.target.hom(self.map_obj(a), self.map_obj(b)).len()
            })
        })
    }

    /// Every target object is isomorphic to the image of some source object.
    pub fn is_essentially_surjective(&self) -> bool {
        let t = &self.target;
        t.objects().all(|y| {
            self.source.objects().any(|x| {
                t.hom(self.map_obj(x), y)
                    .iter()
                    .any(|&u| t.inverse(u).is_some())
            })
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_faithful() && self.is_full() && self.is_essentially_surjective()
    }
}

/// Components `α_a: F(a) → G(a)` of a natural transformation, indexed by
/// source object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NatTransform {
    pub components: Vec<Arr>,
}

impl NatTransform {
    pub fn is_natural(&self, f: &FinFunctor, g: &FinFunctor) -> bool {
        let (s, t) = (f.source(), f.target());
        s.arrows().all(|u| {
            let (a, b) = (s.dom(u), s.cod(u));
            t.compose(g.map_arr(u), self.components[a.0])
                == t.compose(self.components[b.0], f.map_arr(u))
        })
    }
}

/// All natural transformations `F ⇒ G`, in lexicographic order of components.
pub fn nat_transforms(f: &FinFunctor, g: &FinFunctor) -> Vec<NatTransform> {
    assert!(
        f.source() == g.source() && f.target() == g.target(),
        "functors must share source and target"
    );
    let s = f.source().clone();
    let t = f.target().clone();
    let mut out = Vec::new();
    let mut comps: Vec<Arr> = Vec::with_capacity(s.object_count());

    fn consistent(
        s: &FinCat,
        t: &FinCat,
        f: &FinFunctor,
        g: &FinFunctor,
        comps: &[Arr],
    ) -> bool {
        let last = Obj(comps.len() - 1);
        s.arrows()
            .filter(|&u| {
                let (a, b) = (s.dom(u), s.cod(u));
                (a == last && b <= last) || (b == last && a <= last)
            })
            .all(|u| {
                let (a, b) = (s.dom(u), s.cod(u));
                t.compose(g.map_arr(u), comps[a.0]) == t.compose(comps[b.0], f.map_arr(u))
            })
    }

    fn go(
        s: &FinCat,
        t: &FinCat,
        f: &FinFunctor,
        g: &FinFunctor,
        comps: &mut Vec<Arr>,
        out: &mut Vec<NatTransform>,
    ) {
        if comps.len() == s.object_count() {
            out.push(NatTransform {
                components: comps.clone(),
            });
            return;
        }
        let a = Obj(comps.len());
        for &alpha in t.hom(f.map_obj(a), g.map_obj(a)) {
            comps.push(alpha);
            if consistent(s, t, f, g, comps) {
                go(s, t, f, g, comps, out);
            }
            comps.pop();
        }
    }

    go(&s, &t, f, g, &mut comps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn poset01() -> FinCat {
        RawCategory::new()
            .object("0")
            .object("1")
            .arrow("f", "0", "1")
            .validate()
            .unwrap()
    }

    fn monoid() -> FinCat {
        RawCategory::new()
            .object("*")
            .identity_named("*", "1")
            .arrow("e", "*", "*")
            .compose("e", "e", "e")
            .validate()
            .unwrap()
    }

    #[test]
    fn poset_is_valid_with_three_arrows() {
        let c = poset01();
        assert_eq!(c.arrow_count(), 3);
        let f = c.arrow("f").unwrap();
        let id0 = c.arrow("id_0").unwrap();
        assert_eq!(c.compose(f, id0), Some(f));
        assert_eq!(c.hom(c.object("0").unwrap(), c.object("1").unwrap()), &[f]);
    }

    #[test]
    fn identity_violation_is_reported() {
        let err = RawCategory::new()
            .object("0")
            .object("1")
            .arrow("f", "0", "1")
            .compose("f", "id_0", "id_0")
            .validate()
            .unwrap_err();
        assert_eq!(err, CategoryError::IdentityViolation("f".into()));

        let err = RawCategory::new()
            .object("*")
            .arrow("e", "*", "*")
            .compose("e", "e", "e")
            .compose("e", "id_*", "id_*")
            .validate()
            .unwrap_err();
        assert_eq!(err, CategoryError::IdentityViolation("e".into()));
    }

    #[test]
    fn missing_composite_and_dangling_reference() {
        let err = RawCategory::new()
            .object("*")
            .arrow("e", "*", "*")
            .validate()
            .unwrap_err();
        assert_eq!(
            err,
            CategoryError::MissingComposite {
                outer: "e".into(),
                inner: "e".into()
            }
        );
        let err = RawCategory::new()
            .object("a")
            .arrow("f", "a", "b")
            .validate()
            .unwrap_err();
        assert_eq!(err, CategoryError::DanglingReference("b".into()));
        let err = RawCategory::new().object("a").object("a").validate().unwrap_err();
        assert_eq!(err, CategoryError::DuplicateId("a".into()));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // Monoid table on {1, a, b} with a∘a = b, a∘b = a, b∘a = a, b∘b = a:
        // (a∘a)∘a = b∘a = a but a∘(a∘a) = a∘b = a; try b: (b∘b)∘b = a∘b = a,
        // b∘(b∘b) = b∘a = a; (a∘b)∘b = a∘b = a vs a∘(b∘b) = a∘a = b.
        let err = RawCategory::new()
            .object("*")
            .arrow("a", "*", "*")
            .arrow("b", "*", "*")
            .compose("a", "a", "b")
            .compose("a", "b", "a")
            .compose("b", "a", "a")
            .compose("b", "b", "a")
            .validate()
            .unwrap_err();
        assert!(matches!(err, CategoryError::AssociativityViolation { .. }));
    }

    #[test]
    fn monoid_idempotents_match_scan() {
        let m = monoid();
        let scan: Vec<&str> = m
            .arrows()
            .filter(|&a| m.compose(a, a) == Some(a))
            .map(|a| m.arrow_id(a))
            .collect();
        let ids: Vec<&str> = m.idempotents().iter().map(|&(_, e)| m.arrow_id(e)).collect();
        assert_eq!(ids, scan);
        assert_eq!(ids, vec!["1", "e"]);
    }

    #[test]
    fn group_z2_has_only_the_identity_idempotent() {
        let g = RawCategory::new()
            .object("*")
            .arrow("s", "*", "*")
            .compose("s", "s", "id_*")
            .validate()
            .unwrap();
        let ids: Vec<&str> = g.idempotents().iter().map(|&(_, e)| g.arrow_id(e)).collect();
        assert_eq!(ids, vec!["id_*"]);
    }

    #[test]
    fn opposite_cases() {
        let d = RawCategory::new().object("a").object("b").validate().unwrap();
        assert_eq!(d.opposite(), d);
        let p = poset01();
        let op = p.opposite();
        let f = op.arrow("f").unwrap();
        assert_eq!(op.object_id(op.dom(f)), "1");
        assert_eq!(op.object_id(op.cod(f)), "0");
        assert_eq!(op.opposite(), p);
        let m = monoid();
        assert_eq!(m.opposite(), m);
    }

    #[test]
    fn right_ore_cases() {
        let cospan = RawCategory::new()
            .object("x")
            .object("y")
            .object("z")
            .arrow("p", "x", "z")
            .arrow("q", "y", "z")
            .validate()
            .unwrap();
        let w = cospan.right_ore().unwrap_err();
        assert_eq!(cospan.arrow_id(w.left), "p");
        assert_eq!(cospan.arrow_id(w.right), "q");
        assert!(monoid().right_ore().is_ok());
        assert!(poset01().right_ore().is_ok());
    }

    #[test]
    fn nat_transforms_between_representable_embeddings() {
        let c = Arc::new(poset01());
        let id = FinFunctor::identity(c.clone());
        // Id ⇒ Id has exactly the identity components on a poset.
        let all = nat_transforms(&id, &id);
        assert_eq!(all.len(), 1);
        assert!(all[0].is_natural(&id, &id));
        let one = Arc::new(RawCategory::new().object("x").validate().unwrap());
        let to0 = FinFunctor::new(one.clone(), c.clone(), vec![Obj(0)], vec![c.identity(Obj(0))]).unwrap();
        let to1 = FinFunctor::new(one, c.clone(), vec![Obj(1)], vec![c.identity(Obj(1))]).unwrap();
        assert_eq!(nat_transforms(&to0, &to1).len(), 1);
        assert_eq!(nat_transforms(&to1, &to0).len(), 0);
    }

    #[test]
    fn functor_validation_rejects_bad_maps() {
        let c = Arc::new(poset01());
        let bad = FinFunctor::new(
            c.clone(),
            c.clone(),
            vec![Obj(1), Obj(0)],
            c.arrows().collect(),
        );
        assert!(bad.is_err());
    }
}
