//! Karoubi envelope (idempotent-splitting completion) of a finite category.
//!
//! Objects of the envelope are pairs `(a, e)` with `e` an idempotent on `a`,
//! and arrows `(a, e) → (b, e')` are the arrows `f: a → b` with
//! `e' ∘ f ∘ e = f`. The identity on `(a, e)` is `e` itself. Ids are
//! canonical: objects print as `[a|e]` and arrows as `[a|e]f[b|e']`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::fincat::{Arr, FinCat, FinFunctor, Obj, RawArrow, RawCategory, RawComposite};

/// An object of the envelope: a carrier with an idempotent on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KaroubiObject {
    pub carrier: Obj,
    pub idem: Arr,
}

/// `object ↪ emb(carrier) → object` with `retraction ∘ section = id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Retract {
    pub object: Obj,
    pub carrier: Obj,
    pub section: Arr,
    pub retraction: Arr,
}

#[derive(Clone, Debug)]
pub struct Envelope {
    base: Arc<FinCat>,
    completion: Arc<FinCat>,
    embedding: FinFunctor,
    objects: Vec<KaroubiObject>,
    underlying: Vec<Arr>,
}

fn object_name(cat: &FinCat, k: KaroubiObject) -> String {
    format!("[{}|{}]", cat.object_id(k.carrier), cat.arrow_id(k.idem))
}

fn arrow_name(cat: &FinCat, src: KaroubiObject, f: Arr, dst: KaroubiObject) -> String {
    format!(
        "{}{}{}",
        object_name(cat, src),
        cat.arrow_id(f),
        object_name(cat, dst)
    )
}

/// Builds the envelope of `cat` with its full embedding `a ↦ (a, id_a)`.
pub fn envelope(cat: Arc<FinCat>) -> Envelope {
    let kobjs: Vec<KaroubiObject> = cat
        .idempotents()
        .into_iter()
        .map(|(carrier, idem)| KaroubiObject { carrier, idem })
        .collect();
    // (source, underlying, target) for every arrow of the envelope.
    let mut rows: Vec<(KaroubiObject, Arr, KaroubiObject)> = Vec::new();
    for &x in &kobjs {
        for &y in &kobjs {
            for &f in cat.hom(x.carrier, y.carrier) {
                let fe = cat.compose(f, x.idem).expect("composable");
                if cat.compose(y.idem, fe) == Some(f) {
                    rows.push((x, f, y));
                }
            }
        }
    }

    let mut raw = RawCategory::new();
    for &x in &kobjs {
        let name = object_name(&cat, x);
        raw.identities
            .insert(name.clone(), arrow_name(&cat, x, x.idem, x));
        raw.objects.push(name);
    }
    for &(x, f, y) in &rows {
        if f == x.idem && x == y {
            continue;
        }
        raw.arrows.push(RawArrow {
            id: arrow_name(&cat, x, f, y),
            dom: object_name(&cat, x),
            cod: object_name(&cat, y),
        });
    }
    for &(y, g, z) in &rows {
        for &(x, f, y2) in &rows {
            if y2 != y {
                continue;
            }
            let h = cat.compose(g, f).expect("composable");
            raw.composites.push(RawComposite {
                outer: arrow_name(&cat, y, g, z),
                inner: arrow_name(&cat, x, f, y),
                result: arrow_name(&cat, x, h, z),
            });
        }
    }
    let completion = Arc::new(raw.validate().expect("envelope tables are a category"));

    let mut objects = alloc::vec![kobjs[0]; completion.object_count()];
    for &x in &kobjs {
        let o = completion.object(&object_name(&cat, x)).expect("listed");
        objects[o.0] = x;
    }
    let mut underlying = alloc::vec![Arr(0); completion.arrow_count()];
    for &(x, f, y) in &rows {
        let a = completion.arrow(&arrow_name(&cat, x, f, y)).expect("listed");
        underlying[a.0] = f;
    }

    let unit = |a: Obj| KaroubiObject {
        carrier: a,
        idem: cat.identity(a),
    };
    let obj_map: Vec<Obj> = cat
        .objects()
        .map(|a| completion.object(&object_name(&cat, unit(a))).expect("listed"))
        .collect();
    let arr_map: Vec<Arr> = cat
        .arrows()
        .map(|f| {
            let name = arrow_name(&cat, unit(cat.dom(f)), f, unit(cat.cod(f)));
            completion.arrow(&name).expect("listed")
        })
        .collect();
    let embedding = FinFunctor::new(cat.clone(), completion.clone(), obj_map, arr_map)
        .expect("embedding is a functor");

    Envelope {
        base: cat,
        completion,
        embedding,
        objects,
        underlying,
    }
}

impl Envelope {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn completion(&self) -> &Arc<FinCat> {
        &self.completion
    }

    pub fn embedding(&self) -> &FinFunctor {
        &self.embedding
    }

    pub fn karoubi_object(&self, o: Obj) -> KaroubiObject {
        self.objects[o.0]
    }

    /// The base arrow underlying an arrow of the completion.
    pub fn underlying(&self, a: Arr) -> Arr {
        self.underlying[a.0]
    }

    pub fn object_of(&self, k: KaroubiObject) -> Option<Obj> {
        self.completion.object(&object_name(&self.base, k))
    }

    /// The completion arrow `x → y` with underlying base arrow `f`, if any.
    pub fn arrow_between(&self, x: Obj, f: Arr, y: Obj) -> Option<Arr> {
        self.completion
            .hom(x, y)
            .iter()
            .copied()
            .find(|&a| self.underlying(a) == f)
    }

    /// `i = e: (a, e) → (a, id)` and `r = e: (a, id) → (a, e)`.
    pub fn canonical_retract(&self, d: Obj) -> Retract {
        let k = self.karoubi_object(d);
        let ea = self.embedding.map_obj(k.carrier);
        Retract {
            object: d,
            carrier: k.carrier,
            section: self.arrow_between(d, k.idem, ea).expect("e: (a,e) → (a,1)"),
            retraction: self.arrow_between(ea, k.idem, d).expect("e: (a,1) → (a,e)"),
        }
    }

    /// Every retract of `d` onto an embedded base object.
    pub fn enumerate_retracts(&self, d: Obj) -> Vec<Retract> {
        let chat = &self.completion;
        let id = chat.identity(d);
        let mut out = Vec::new();
        for a in self.base.objects() {
            let ea = self.embedding.map_obj(a);
            for &i in chat.hom(d, ea) {
                for &r in chat.hom(ea, d) {
                    if chat.compose(r, i) == Some(id) {
                        out.push(Retract {
                            object: d,
                            carrier: a,
                            section: i,
                            retraction: r,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_retract(&self, r: &Retract) -> bool {
        self.completion.compose(r.retraction, r.section) == Some(self.completion.identity(r.object))
    }
}

/// Every idempotent `e` on `x` factors as `i ∘ r` with `r ∘ i = id`; on
/// failure returns the first idempotent that does not split.
pub fn is_cauchy_complete(cat: &FinCat) -> Result<(), Arr> {
    for (x, e) in cat.idempotents() {
        let split = cat.objects().any(|y| {
            cat.hom(y, x).iter().any(|&i| {
                cat.hom(x, y).iter().any(|&r| {
                    cat.compose(r, i) == Some(cat.identity(y)) && cat.compose(i, r) == Some(e)
                })
            })
        });
        if !split {
            return Err(e);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn monoid() -> Arc<FinCat> {
        Arc::new(
            RawCategory::new()
                .object("*")
                .identity_named("*", "1")
                .arrow("e", "*", "*")
                .compose("e", "e", "e")
                .validate()
                .unwrap(),
        )
    }

    #[test]
    fn monoid_envelope_hom_sizes() {
        let env = envelope(monoid());
        let chat = env.completion();
        let one = chat.object("[*|1]").unwrap();
        let e = chat.object("[*|e]").unwrap();
        assert_eq!(chat.object_count(), 2);
        assert_eq!(chat.hom(one, one).len(), 2);
        assert_eq!(chat.hom(one, e).len(), 1);
        assert_eq!(chat.hom(e, one).len(), 1);
        assert_eq!(chat.hom(e, e).len(), 1);
        assert_eq!(chat.arrow_id(chat.identity(e)), "[*|e]e[*|e]");
        assert!(is_cauchy_complete(chat).is_ok());
        assert_eq!(is_cauchy_complete(env.base()), Err(env.base().arrow("e").unwrap()));
    }

    #[test]
    fn monoid_retracts() {
        let env = envelope(monoid());
        let chat = env.completion();
        let e_obj = chat.object("[*|e]").unwrap();
        let r = env.canonical_retract(e_obj);
        assert_eq!(chat.arrow_id(r.section), "[*|e]e[*|1]");
        assert_eq!(chat.arrow_id(r.retraction), "[*|1]e[*|e]");
        assert!(env.is_retract(&r));
        assert_eq!(env.enumerate_retracts(e_obj), vec![r]);
        let one = chat.object("[*|1]").unwrap();
        let r1 = env.canonical_retract(one);
        assert_eq!(r1.section, chat.identity(one));
        assert!(env.enumerate_retracts(one).contains(&r1));
    }

    #[test]
    fn poset_envelope_is_isomorphic() {
        let p = Arc::new(
            RawCategory::new()
                .object("0")
                .object("1")
                .object("2")
                .arrow("a", "0", "1")
                .arrow("b", "1", "2")
                .arrow("c", "0", "2")
                .compose("b", "a", "c")
                .validate()
                .unwrap(),
        );
        let env = envelope(p.clone());
        let emb = env.embedding();
        assert_eq!(env.completion().object_count(), p.object_count());
        assert_eq!(env.completion().arrow_count(), p.arrow_count());
        assert!(emb.is_equivalence());
        let objs: alloc::collections::BTreeSet<Obj> = p.objects().map(|o| emb.map_obj(o)).collect();
        assert_eq!(objs.len(), p.object_count());
        assert!(is_cauchy_complete(&p).is_ok());
    }
}
