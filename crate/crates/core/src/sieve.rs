//! Sieves on a finite category.
//!
//! A sieve is stored extensionally as the set of its member arrows. All
//! constructors close under precomposition with a work-list fixpoint.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bits::ArrowSet;
use crate::fincat::{Arr, FinCat, FinFunctor, Obj};

/// A set of arrows with common codomain `base`, closed under precomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sieve {
    base: Obj,
    members: ArrowSet,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SieveError {
    #[error("arrow `{0}` does not have the sieve's base as codomain")]
    WrongCodomain(String),
    #[error("arrow `{0}` does not land in the base of the sieve")]
    BaseMismatch(String),
    #[error("base `{0}` is not in the image of the embedding")]
    BaseNotInImage(String),
}

impl Sieve {
    pub fn empty(cat: &FinCat, base: Obj) -> Sieve {
        Sieve {
            base,
            members: ArrowSet::empty(cat.arrow_count()),
        }
    }

    pub fn maximal(cat: &FinCat, base: Obj) -> Sieve {
        let mut members = ArrowSet::empty(cat.arrow_count());
        for a in cat.arrows_into(base) {
            members.insert(a.0);
        }
        Sieve { base, members }
    }

    pub fn base(&self) -> Obj {
        self.base
    }

    pub fn contains(&self, a: Arr) -> bool {
        self.members.contains(a.0)
    }

    pub fn members(&self) -> impl Iterator<Item = Arr> + '_ {
        self.members.iter().map(Arr)
    }

    pub fn member_set(&self) -> &ArrowSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subsieve_of(&self, other: &Sieve) -> bool {
        self.base == other.base && self.members.is_subset(&other.members)
    }

    pub fn is_maximal(&self, cat: &FinCat) -> bool {
        self.contains(cat.identity(self.base))
    }

    /// Checks both sieve invariants against `cat`.
    pub fn is_valid(&self, cat: &FinCat) -> bool {
        self.members().all(|s| {
            cat.cod(s) == self.base
                && cat
                    .arrows_into(cat.dom(s))
                    .iter()
                    .all(|&g| self.contains(cat.compose(s, g).expect("composable")))
        })
    }

    pub fn member_ids<'c>(&self, cat: &'c FinCat) -> Vec<&'c str> {
        self.members().map(|a| cat.arrow_id(a)).collect()
    }
}

/// The least sieve on `base` containing `generators`.
pub fn generate(
    cat: &FinCat,
    base: Obj,
    generators: impl IntoIterator<Item = Arr>,
) -> Result<Sieve, SieveError> {
    let mut members = ArrowSet::empty(cat.arrow_count());
    let mut work = Vec::new();
    for g in generators {
        if cat.cod(g) != base {
            return Err(SieveError::WrongCodomain(cat.arrow_id(g).to_string()));
        }
        if members.insert(g.0) {
            work.push(g);
        }
    }
    while let Some(s) = work.pop() {
        for &g in cat.arrows_into(cat.dom(s)) {
            let sg = cat.compose(s, g).expect("composable");
            if members.insert(sg.0) {
                work.push(sg);
            }
        }
    }
    Ok(Sieve { base, members })
}

/// `g*(S) = { h | g ∘ h ∈ S }` for `g: d → S.base`.
pub fn pullback(cat: &FinCat, sieve: &Sieve, g: Arr) -> Result<Sieve, SieveError> {
    if cat.cod(g) != sieve.base {
        return Err(SieveError::BaseMismatch(cat.arrow_id(g).to_string()));
    }
    let d = cat.dom(g);
    let mut members = ArrowSet::empty(cat.arrow_count());
    for &h in cat.arrows_into(d) {
        if sieve.contains(cat.compose(g, h).expect("composable")) {
            members.insert(h.0);
        }
    }
    Ok(Sieve { base: d, members })
}

/// The sieve in the target of `emb` generated by the images of the members of
/// `sieve`.
pub fn bar(emb: &FinFunctor, sieve: &Sieve) -> Sieve {
    generate(
        emb.target(),
        emb.map_obj(sieve.base),
        sieve.members().map(|a| emb.map_arr(a)),
    )
    .expect("functor preserves codomains")
}

/// The members of `sieve` that are images of source arrows, read back in the
/// source of `emb`.
pub fn restrict(emb: &FinFunctor, sieve: &Sieve) -> Result<Sieve, SieveError> {
    let target = emb.target();
    let base = emb
        .preimage_obj(sieve.base)
        .ok_or_else(|| SieveError::BaseNotInImage(target.object_id(sieve.base).to_string()))?;
    let source = emb.source();
    let mut members = ArrowSet::empty(source.arrow_count());
    for &f in source.arrows_into(base) {
        if sieve.contains(emb.map_arr(f)) {
            members.insert(f.0);
        }
    }
    Ok(Sieve { base, members })
}

/// Every sieve on `c`, in sieve order.
pub fn all_sieves(cat: &FinCat, c: Obj) -> Vec<Sieve> {
    let into: Vec<Arr> = cat.arrows_into(c).to_vec();
    let n = cat.arrow_count();
    // down[i]: principal sieve of into[i]; up[i]: arrows of which into[i] is a
    // precomposite.
    let down: Vec<ArrowSet> = into
        .iter()
        .map(|&s| generate(cat, c, [s]).expect("codomain c").members)
        .collect();
    let up: Vec<ArrowSet> = into
        .iter()
        .map(|&s| {
            let mut set = ArrowSet::empty(n);
            for (j, &t) in into.iter().enumerate() {
                if down[j].contains(s.0) {
                    set.insert(t.0);
                }
            }
            set
        })
        .collect();

    fn go(
        into: &[Arr],
        down: &[ArrowSet],
        up: &[ArrowSet],
        include: &ArrowSet,
        exclude: &ArrowSet,
        start: usize,
        base: Obj,
        out: &mut Vec<Sieve>,
    ) {
        let next = (start..into.len())
            .find(|&i| !include.contains(into[i].0) && !exclude.contains(into[i].0));
        let Some(i) = next else {
            out.push(Sieve {
                base,
                members: include.clone(),
            });
            return;
        };
        let mut inc = include.clone();
        for a in down[i].iter() {
            inc.insert(a);
        }
        go(into, down, up, &inc, exclude, i + 1, base, out);
        let mut exc = exclude.clone();
        for a in up[i].iter() {
            exc.insert(a);
        }
        go(into, down, up, include, &exc, i + 1, base, out);
    }

    let mut out = Vec::new();
    let empty = ArrowSet::empty(n);
    go(&into, &down, &up, &empty, &empty, 0, c, &mut out);
    out.sort();
    out
}
