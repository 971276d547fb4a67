//! `Set`-valued functors on finite categories.
//!
//! A [`FinSetFunctor`] is covariant on its source. A presheaf on `C` is a
//! functor whose source is `C.opposite()`; since [`FinCat::opposite`] keeps
//! indices, an arrow `h: d → c` of `C` acts on a presheaf as
//! `F(h): F(c) → F(d)`.
//!
//! Flatness follows the convention that a covariant functor is flat when its
//! category of elements is cofiltered, i.e. the opposite of the category of
//! elements is filtered. Representables are flat under this convention
//! because `(c, id_c)` is initial among their elements.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::fincat::{Arr, FinCat, FinFunctor, Obj, RawArrow, RawCategory, RawComposite};
use crate::sieve::Sieve;
use crate::topology::Topology;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SetFunctorError {
    #[error("set or map table has the wrong length")]
    LengthMismatch,
    #[error("map for `{0}` is not a function between the assigned sets")]
    BadMap(String),
    #[error("identity of `{0}` is not sent to the identity function")]
    IdentityNotPreserved(String),
    #[error("composite `{outer} . {inner}` is not preserved")]
    CompositeNotPreserved { outer: String, inner: String },
}

/// A functor into finite sets, stored as explicit element lists and function
/// tables (`maps[f][i]` is the index of the image of element `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSetFunctor {
    source: Arc<FinCat>,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl FinSetFunctor {
    pub fn new(
        source: Arc<FinCat>,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, SetFunctorError> {
        if sets.len() != source.object_count() || maps.len() != source.arrow_count() {
            return Err(SetFunctorError::LengthMismatch);
        }
        for f in source.arrows() {
            let (d, c) = (source.dom(f), source.cod(f));
            let map = &maps[f.0];
            if map.len() != sets[d.0].len() || map.iter().any(|&y| y >= sets[c.0].len()) {
                return Err(SetFunctorError::BadMap(source.arrow_id(f).to_string()));
            }
        }
        for o in source.objects() {
            let id = &maps[source.identity(o).0];
            if id.iter().enumerate().any(|(i, &y)| i != y) {
                return Err(SetFunctorError::IdentityNotPreserved(source.object_id(o).to_string()));
            }
        }
        for g in source.arrows() {
            for &f in source.arrows_into(source.dom(g)) {
                let gf = source.compose(g, f).expect("composable");
                let ok = (0..sets[source.dom(f).0].len())
                    .all(|x| maps[g.0][maps[f.0][x]] == maps[gf.0][x]);
                if !ok {
                    return Err(SetFunctorError::CompositeNotPreserved {
                        outer: source.arrow_id(g).to_string(),
                        inner: source.arrow_id(f).to_string(),
                    });
                }
            }
        }
        Ok(FinSetFunctor { source, sets, maps })
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn set(&self, c: Obj) -> &[String] {
        &self.sets[c.0]
    }

    pub fn size(&self, c: Obj) -> usize {
        self.sets[c.0].len()
    }

    pub fn apply(&self, f: Arr, x: usize) -> usize {
        self.maps[f.0][x]
    }

    pub fn element(&self, c: Obj, id: &str) -> Option<usize> {
        self.sets[c.0].iter().position(|x| x == id)
    }

    /// `Hom(c, −)`, acting by postcomposition.
    pub fn covariant_representable(cat: Arc<FinCat>, c: Obj) -> Self {
        let sets: Vec<Vec<String>> = cat
            .objects()
            .map(|d| cat.hom(c, d).iter().map(|&h| cat.arrow_id(h).to_string()).collect())
            .collect();
        let maps = cat
            .arrows()
            .map(|u| {
                let (d, e) = (cat.dom(u), cat.cod(u));
                cat.hom(c, d)
                    .iter()
                    .map(|&h| {
                        let uh = cat.compose(u, h).expect("composable");
                        cat.hom(c, e).iter().position(|&x| x == uh).expect("in hom")
                    })
                    .collect()
            })
            .collect();
        FinSetFunctor::new(cat, sets, maps).expect("representable is a functor")
    }

    /// The presheaf `Hom(−, c)` on `cat`, with source `cat.opposite()`.
    pub fn yoneda(cat: &FinCat, c: Obj) -> Self {
        let sets: Vec<Vec<String>> = cat
            .objects()
            .map(|d| cat.hom(d, c).iter().map(|&h| cat.arrow_id(h).to_string()).collect())
            .collect();
        // u: d' → d in cat acts as Hom(d, c) → Hom(d', c), h ↦ h ∘ u.
        let maps = cat
            .arrows()
            .map(|u| {
                let (d_src, d) = (cat.dom(u), cat.cod(u));
                cat.hom(d, c)
                    .iter()
                    .map(|&h| {
                        let hu = cat.compose(h, u).expect("composable");
                        cat.hom(d_src, c).iter().position(|&x| x == hu).expect("in hom")
                    })
                    .collect()
            })
            .collect();
        FinSetFunctor::new(Arc::new(cat.opposite()), sets, maps).expect("Yoneda presheaf is a functor")
    }

    /// The one-point functor.
    pub fn terminal(source: Arc<FinCat>) -> Self {
        let sets = source.objects().map(|_| alloc::vec!["pt".to_string()]).collect();
        let maps = source.arrows().map(|_| alloc::vec![0]).collect();
        FinSetFunctor { source, sets, maps }
    }

    pub fn empty(source: Arc<FinCat>) -> Self {
        let sets = source.objects().map(|_| Vec::new()).collect();
        let maps = source.arrows().map(|_| Vec::new()).collect();
        FinSetFunctor { source, sets, maps }
    }

    /// Objectwise disjoint union; elements are tagged `inl|x` and `inr|x`.
    pub fn coproduct(&self, other: &FinSetFunctor) -> FinSetFunctor {
        assert_eq!(self.source, other.source, "coproduct needs a common source");
        let sets = self
            .sets
            .iter()
            .zip(&other.sets)
            .map(|(a, b)| {
                a.iter()
                    .map(|x| format!("inl|{x}"))
                    .chain(b.iter().map(|x| format!("inr|{x}")))
                    .collect()
            })
            .collect();
        let maps = self
            .source
            .arrows()
            .map(|f| {
                let shift = self.size(self.source.cod(f));
                self.maps[f.0]
                    .iter()
                    .copied()
                    .chain(other.maps[f.0].iter().map(|&y| y + shift))
                    .collect()
            })
            .collect();
        FinSetFunctor {
            source: self.source.clone(),
            sets,
            maps,
        }
    }
}

/// Components `α_c: F(c) → G(c)` as index tables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetNatTransform {
    pub components: Vec<Vec<usize>>,
}

impl SetNatTransform {
    pub fn is_natural(&self, f: &FinSetFunctor, g: &FinSetFunctor) -> bool {
        let s = f.source();
        s.arrows().all(|u| {
            let (a, b) = (s.dom(u), s.cod(u));
            (0..f.size(a)).all(|x| {
                g.apply(u, self.components[a.0][x]) == self.components[b.0][f.apply(u, x)]
            })
        })
    }
}

/// All natural transformations `F ⇒ G`, duplicate-free and in lexicographic
/// order of components.
///
/// Slots `(c, x)` are filled in order; each choice is propagated along every
/// arrout out of `c` via naturality, and conflicting branches are cut.
pub fn set_nat_transforms(f: &FinSetFunctor, g: &FinSetFunctor) -> Vec<SetNatTransform> {
    assert_eq!(f.source(), g.source(), "functors must share a source");
    let s = f.source().clone();
    let slots: Vec<(Obj, usize)> = s
        .objects()
        .flat_map(|c| (0..f.size(c)).map(move |x| (c, x)))
        .collect();
    let empty: Vec<Vec<Option<usize>>> = s.objects().map(|c| alloc::vec![None; f.size(c)]).collect();

    fn assign(
        s: &FinCat,
        f: &FinSetFunctor,
        g: &FinSetFunctor,
        state: &mut [Vec<Option<usize>>],
        c: Obj,
        x: usize,
        y: usize,
    ) -> bool {
        let mut stack = alloc::vec![(c, x, y)];
        while let Some((c, x, y)) = stack.pop() {
            match state[c.0][x] {
                Some(prev) if prev != y => return false,
                Some(_) => continue,
                None => state[c.0][x] = Some(y),
            }
            for &u in s.arrows_from(c) {
                stack.push((s.cod(u), f.apply(u, x), g.apply(u, y)));
            }
        }
        true
    }

    fn go(
        s: &FinCat,
        f: &FinSetFunctor,
        g: &FinSetFunctor,
        slots: &[(Obj, usize)],
        i: usize,
        state: &[Vec<Option<usize>>],
        out: &mut Vec<SetNatTransform>,
    ) {
        let Some(pos) = (i..slots.len()).find(|&k| state[slots[k].0 .0][slots[k].1].is_none()) else {
            out.push(SetNatTransform {
                components: state
                    .iter()
                    .map(|row| row.iter().map(|v| v.expect("filled")).collect())
                    .collect(),
            });
            return;
        };
        let (c, x) = slots[pos];
        for y in 0..g.size(c) {
            let mut next = state.to_vec();
            if assign(s, f, g, &mut next, c, x, y) {
                go(s, f, g, slots, pos + 1, &next, out);
            }
        }
    }

    let mut out = Vec::new();
    go(&s, f, g, &slots, 0, &empty, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YonedaFailure {
    /// The functor is not a presheaf on the given category.
    SourceMismatch,
    /// The transformation built from `element` is not natural.
    NotNatural { element: usize },
    /// Two elements give the same transformation.
    NotInjective { first: usize, second: usize },
    /// Brute-force enumeration found a transformation not built from any
    /// element, or a different count.
    NotSurjective { elements: usize, transformations: usize },
    /// `α^x ∘ Y(g) ≠ α^{F(g)(x)}`.
    NotNaturalInObject { arrow: Arr, element: usize },
}

/// The transformation `Y(c) ⇒ F` determined by `x ∈ F(c)`: `h ↦ F(h)(x)`.
pub fn yoneda_transform(cat: &FinCat, presheaf: &FinSetFunctor, c: Obj, x: usize) -> SetNatTransform {
    SetNatTransform {
        components: cat
            .objects()
            .map(|d| cat.hom(d, c).iter().map(|&h| presheaf.apply(h, x)).collect())
            .collect(),
    }
}

/// Checks that `x ↦ (h ↦ F(h)(x))` is a bijection `F(c) ≅ Nat(Y(c), F)`,
/// against brute-force enumeration of the transformations, and that it is
/// natural in `c`. Returns the size of the bijection.
pub fn yoneda_check(cat: &FinCat, presheaf: &FinSetFunctor, c: Obj) -> Result<usize, YonedaFailure> {
    if **presheaf.source() != cat.opposite() {
        return Err(YonedaFailure::SourceMismatch);
    }
    let y = FinSetFunctor::yoneda(cat, c);
    let built: Vec<SetNatTransform> = (0..presheaf.size(c))
        .map(|x| yoneda_transform(cat, presheaf, c, x))
        .collect();
    for (x, t) in built.iter().enumerate() {
        if !t.is_natural(&y, presheaf) {
            return Err(YonedaFailure::NotNatural { element: x });
        }
        if let Some(first) = built[..x].iter().position(|u| u == t) {
            return Err(YonedaFailure::NotInjective { first, second: x });
        }
    }
    let all: BTreeSet<SetNatTransform> = set_nat_transforms(&y, presheaf).into_iter().collect();
    let built_set: BTreeSet<SetNatTransform> = built.iter().cloned().collect();
    if all != built_set {
        return Err(YonedaFailure::NotSurjective {
            elements: built.len(),
            transformations: all.len(),
        });
    }
    // Naturality in c: precomposing with Y(g) for g: c' → c matches F(g).
    for &g in cat.arrows_into(c) {
        let c2 = cat.dom(g);
        for (x, alpha) in built.iter().enumerate() {
            let moved = yoneda_transform(cat, presheaf, c2, presheaf.apply(g, x));
            let ok = cat.objects().all(|d| {
                cat.hom(d, c2).iter().enumerate().all(|(k, &h)| {
                    let gh = cat.compose(g, h).expect("composable");
                    let idx = cat.hom(d, c).iter().position(|&a| a == gh).expect("in hom");
                    alpha.components[d.0][idx] == moved.components[d.0][k]
                })
            });
            if !ok {
                return Err(YonedaFailure::NotNaturalInObject { arrow: g, element: x });
            }
        }
    }
    Ok(built.len())
}

/// Category of elements of a covariant functor with its projection.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub category: Arc<FinCat>,
    pub projection: FinFunctor,
    /// `(c, x)` for each object, indexed by [`Obj`].
    pub points: Vec<(Obj, usize)>,
}

/// Objects `(c, x)` with ids `[c|x]`; arrows `(c, x) → (d, F(u)(x))` with ids
/// `[c|x]u`.
pub fn elements(functor: &FinSetFunctor) -> ElementsCategory {
    let s = functor.source();
    let name = |c: Obj, x: usize| format!("[{}|{}]", s.object_id(c), functor.set(c)[x]);
    let arrow_name = |u: Arr, x: usize| format!("{}{}", name(s.dom(u), x), s.arrow_id(u));
    let mut raw = RawCategory::new();
    for c in s.objects() {
        for x in 0..functor.size(c) {
            raw.objects.push(name(c, x));
            raw.identities.insert(name(c, x), arrow_name(s.identity(c), x));
        }
    }
    for u in s.arrows() {
        let (c, d) = (s.dom(u), s.cod(u));
        for x in 0..functor.size(c) {
            if !s.is_identity(u) {
                raw.arrows.push(RawArrow {
                    id: arrow_name(u, x),
                    dom: name(c, x),
                    cod: name(d, functor.apply(u, x)),
                });
            }
            for &v in s.arrows_from(d) {
                let vu = s.compose(v, u).expect("composable");
                raw.composites.push(RawComposite {
                    outer: arrow_name(v, functor.apply(u, x)),
                    inner: arrow_name(u, x),
                    result: arrow_name(vu, x),
                });
            }
        }
    }
    let category = Arc::new(raw.validate().expect("category of elements"));
    let mut points = alloc::vec![(Obj(0), 0); category.object_count()];
    let mut obj_map = alloc::vec![Obj(0); category.object_count()];
    for c in s.objects() {
        for x in 0..functor.size(c) {
            let o = category.object(&name(c, x)).expect("listed");
            points[o.0] = (c, x);
            obj_map[o.0] = c;
        }
    }
    let mut arr_map = alloc::vec![Arr(0); category.arrow_count()];
    for u in s.arrows() {
        for x in 0..functor.size(s.dom(u)) {
            arr_map[category.arrow(&arrow_name(u, x)).expect("listed").0] = u;
        }
    }
    let projection =
        FinFunctor::new(category.clone(), s.clone(), obj_map, arr_map).expect("projection is a functor");
    ElementsCategory {
        category,
        projection,
        points,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilteredFailure {
    Empty,
    /// No object receives arrows from both.
    NoCocone(Obj, Obj),
    /// No arrow out of the common codomain equalizes the pair.
    NotCoequalized(Arr, Arr),
}

/// Nonempty, every pair of objects has a cocone, and every parallel pair is
/// equalized by some arrow out of its codomain.
pub fn is_filtered(cat: &FinCat) -> Result<(), FilteredFailure> {
    if cat.object_count() == 0 {
        return Err(FilteredFailure::Empty);
    }
    for a in cat.objects() {
        for b in cat.objects() {
            let cocone = cat
                .objects()
                .any(|z| !cat.hom(a, z).is_empty() && !cat.hom(b, z).is_empty());
            if !cocone {
                return Err(FilteredFailure::NoCocone(a, b));
            }
        }
    }
    for a in cat.objects() {
        for b in cat.objects() {
            let hom = cat.hom(a, b);
            for &u in hom {
                for &v in hom {
                    let ok = cat
                        .arrows_from(b)
                        .iter()
                        .any(|&w| cat.compose(w, u) == cat.compose(w, v));
                    if !ok {
                        return Err(FilteredFailure::NotCoequalized(u, v));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A failed flatness check: the obstruction lives in the opposite of the
/// category of elements (same indices as `elements.category`).
#[derive(Clone, Debug)]
pub struct FlatnessWitness {
    pub elements: ElementsCategory,
    pub failure: FilteredFailure,
}

pub fn is_flat(functor: &FinSetFunctor) -> Result<(), FlatnessWitness> {
    let el = elements(functor);
    is_filtered(&el.category.opposite()).map_err(|failure| FlatnessWitness {
        elements: el,
        failure,
    })
}

/// A covering sieve whose image family misses `element` of `F(base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityFailure {
    pub sieve: Sieve,
    pub element: usize,
}

/// For every cover `S` of `J`, the maps `F(f): F(dom f) → F(c)`, `f ∈ S`, are
/// jointly surjective. `F` and `J` live on the same category.
pub fn is_j_continuous(functor: &FinSetFunctor, topology: &Topology) -> Result<(), ContinuityFailure> {
    let s = functor.source();
    for c in s.objects() {
        for sieve in topology.covers(c) {
            let mut hit = alloc::vec![false; functor.size(c)];
            for f in sieve.members() {
                for x in 0..functor.size(s.dom(f)) {
                    hit[functor.apply(f, x)] = true;
                }
            }
            if let Some(element) = hit.iter().position(|h| !h) {
                return Err(ContinuityFailure {
                    sieve: sieve.clone(),
                    element,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::trivial_topology;
    use alloc::vec;

    fn poset01() -> FinCat {
        RawCategory::new()
            .object("0")
            .object("1")
            .arrow("f", "0", "1")
            .validate()
            .unwrap()
    }

    #[test]
    fn terminal_and_empty_nat_counts() {
        let c = Arc::new(poset01());
        let t = FinSetFunctor::terminal(c.clone());
        assert_eq!(set_nat_transforms(&t, &t).len(), 1);
        let e = FinSetFunctor::empty(c.clone());
        assert_eq!(set_nat_transforms(&e, &t).len(), 1);
        assert_eq!(set_nat_transforms(&e, &e).len(), 1);
        assert_eq!(set_nat_transforms(&t, &e).len(), 0);
    }

    #[test]
    fn yoneda_on_small_cases() {
        let c = poset01();
        let y0 = FinSetFunctor::yoneda(&c, Obj(0));
        assert_eq!(set_nat_transforms(&y0, &y0).len(), 1);
        assert_eq!(yoneda_check(&c, &y0, Obj(0)), Ok(1));
        let t = FinSetFunctor::terminal(Arc::new(c.opposite()));
        for o in c.objects() {
            assert_eq!(yoneda_check(&c, &t, o), Ok(1));
        }
        let cov = FinSetFunctor::covariant_representable(Arc::new(c.clone()), Obj(0));
        assert_eq!(yoneda_check(&c, &cov, Obj(0)), Err(YonedaFailure::SourceMismatch));
    }

    #[test]
    fn elements_counts_and_initial_object() {
        let c = Arc::new(poset01());
        assert_eq!(elements(&FinSetFunctor::empty(c.clone())).category.object_count(), 0);
        let rep = FinSetFunctor::covariant_representable(c.clone(), Obj(0));
        let el = elements(&rep);
        let init = el.category.object("[0|id_0]").unwrap();
        assert!(el.category.objects().all(|o| el.category.hom(init, o).len() == 1));
        let point = Arc::new(RawCategory::new().object("*").validate().unwrap());
        let two = FinSetFunctor::new(point, vec![vec!["a".into(), "b".into()]], vec![vec![0, 1]]).unwrap();
        assert_eq!(elements(&two).category.object_count(), 2);
    }

    #[test]
    fn filtered_cases() {
        assert_eq!(is_filtered(&poset01()), Ok(()));
        let empty = RawCategory::new().validate().unwrap();
        assert_eq!(is_filtered(&empty), Err(FilteredFailure::Empty));
        let discrete = RawCategory::new().object("a").object("b").validate().unwrap();
        assert_eq!(is_filtered(&discrete), Err(FilteredFailure::NoCocone(Obj(0), Obj(1))));
    }

    #[test]
    fn flatness_cases() {
        let c = Arc::new(poset01());
        for o in c.objects() {
            assert!(is_flat(&FinSetFunctor::covariant_representable(c.clone(), o)).is_ok());
        }
        assert!(is_flat(&FinSetFunctor::empty(c.clone())).is_err());
        let r = FinSetFunctor::covariant_representable(c.clone(), Obj(0));
        let w = is_flat(&r.coproduct(&r)).unwrap_err();
        assert!(matches!(w.failure, FilteredFailure::NoCocone(..)));
    }

    #[test]
    fn continuity_cases() {
        let c = Arc::new(poset01());
        let t = FinSetFunctor::terminal(c.clone());
        assert_eq!(is_j_continuous(&t, &trivial_topology(&c)), Ok(()));
        // F(0) empty, F(1) = {x}: the cover {f} of 1 hits nothing.
        let f = FinSetFunctor::new(c.clone(), vec![vec![], vec!["x".into()]], vec![vec![], vec![], vec![0]]);
        let f = f.unwrap();
        let cover = crate::sieve::generate(&c, Obj(1), [c.arrow("f").unwrap()]).unwrap();
        let mut covers: Vec<BTreeSet<Sieve>> = trivial_topology(&c).iter().map(|(_, s)| s.clone()).collect();
        covers[1].insert(cover.clone());
        let j = Topology::from_covers(covers);
        assert_eq!(
            is_j_continuous(&f, &j),
            Err(ContinuityFailure { sieve: cover, element: 0 })
        );
    }
}
