//! Lifting criterion for homogeneous models, checked against model oracles.
//!
//! A model `M` is seen through its site `C` (the finitely presentable models)
//! and the hom-sets `Hom(i(c), M)`. For a cotopology `J` (a topology on
//! `C.opposite()`), `M` is `J`-homogeneous when for every cosieve `S ∈ J(c)`
//! and every `y: i(c) → M` some `f: c → d` in `S` admits `u: i(d) → M` with
//! `y = u ∘ i(f)`.
//!
//! Hom-sets may be infinite, so the checker works on the oracle's
//! deterministic samples and returns a three-valued verdict: a failure is
//! reported only when the oracle certifies that no lift exists.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::fincat::{Arr, FinCat, Obj, OreFailure};
use crate::flatfun::FinSetFunctor;
use crate::sieve::Sieve;
use crate::topology::{check_axioms, AxiomViolation, Topology};

/// Result of a lift search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lift<E> {
    Found(E),
    /// No lift exists (certified by the oracle).
    Absent,
    /// The search gave up without a decision.
    Unknown,
}

/// A model as seen from its site of finitely presentable models.
pub trait ModelOracle {
    type Elem: Clone + Eq + Ord + Debug;

    /// The site `C`; arrows `f: c → d` act as `Hom(i(d), M) → Hom(i(c), M)`.
    fn site(&self) -> &FinCat;

    /// Deterministic bounded enumeration of `Hom(i(c), M)`. Equals the whole
    /// hom-set when that is finite.
    fn samples(&self, c: Obj) -> Vec<Self::Elem>;

    /// The whole hom-set, when finite.
    fn hom_set(&self, c: Obj) -> Option<Vec<Self::Elem>>;

    fn contains(&self, c: Obj, u: &Self::Elem) -> bool;

    /// `u ∘ i(f)` for `f: c → d` and `u ∈ Hom(i(d), M)`.
    fn act(&self, f: Arr, u: &Self::Elem) -> Self::Elem;

    /// Some `u` with `act(f, u) = y`.
    fn lift(&self, f: Arr, y: &Self::Elem) -> Lift<Self::Elem>;

    /// Printable id of an element, used for functor tables and reports.
    fn element_id(&self, u: &Self::Elem) -> String;

    /// Right Ore condition for `site().opposite()`. Oracles over truncated
    /// sites may certify the condition for the untruncated category instead.
    fn right_ore(&self) -> Result<(), OreFailure> {
        self.site().opposite().right_ore()
    }
}

/// Which part of the hom-sets and site the checker visits.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Objects `c` to test; `None` means all.
    pub objects: Option<Vec<Obj>>,
    /// Arrows to test in the single-arrow check; `None` means all.
    pub arrows: Option<Vec<Arr>>,
    /// Cap on samples per object; `None` uses all the oracle supplies.
    pub max_samples: Option<usize>,
    /// Require the cotopology to pass [`check_axioms`]. Cover tables of
    /// truncated atomic sites fail stability and must opt out.
    pub enforce_axioms: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            objects: None,
            arrows: None,
            max_samples: None,
            enforce_axioms: true,
        }
    }
}

impl Bounds {
    fn objects(&self, site: &FinCat) -> Vec<Obj> {
        self.objects.clone().unwrap_or_else(|| site.objects().collect())
    }

    fn take<E>(&self, mut v: Vec<E>) -> Vec<E> {
        if let Some(n) = self.max_samples {
            v.truncate(n);
        }
        v
    }
}

/// A successful lift `y = u ∘ i(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRecord<E> {
    pub object: Obj,
    /// The cosieve the lift was drawn from, if the check was cosieve-based.
    pub cosieve: Option<Sieve>,
    pub arrow: Arr,
    pub sample: E,
    pub lift: E,
}

impl<E: Clone + Eq + Ord + Debug> LiftRecord<E> {
    pub fn replays<M: ModelOracle<Elem = E>>(&self, oracle: &M) -> bool {
        oracle.act(self.arrow, &self.lift) == self.sample
            && oracle.contains(oracle.site().cod(self.arrow), &self.lift)
    }
}

/// A sample `y ∈ Hom(i(c), M)` with no lift along any arrow tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityWitness<E> {
    pub object: Obj,
    pub cosieve: Option<Sieve>,
    /// The arrows searched (a single arrow in the atomic check).
    pub arrows: Vec<Arr>,
    pub sample: E,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomogeneityVerdict<E> {
    Pass { certificate: Vec<LiftRecord<E>> },
    Fail { witness: HomogeneityWitness<E> },
    Inconclusive { witness: HomogeneityWitness<E> },
}

impl<E> HomogeneityVerdict<E> {
    pub fn is_pass(&self) -> bool {
        matches!(self, HomogeneityVerdict::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, HomogeneityVerdict::Fail { .. })
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            HomogeneityVerdict::Pass { .. } => "pass",
            HomogeneityVerdict::Fail { .. } => "fail",
            HomogeneityVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomogeneityError {
    #[error("cotopology violates the {} axiom", .0.axiom())]
    InvalidTopology(AxiomViolation),
    #[error("oracle breaks functoriality at arrow #{}", .arrow.0)]
    OracleContract { arrow: Arr },
    #[error("lift returned by the oracle does not replay at arrow #{}", .arrow.0)]
    BadLift { arrow: Arr },
    #[error("right Ore condition fails")]
    OreConditionFails(OreFailure),
    #[error("hom-set at object #{} is not finite", .0.0)]
    InfiniteHomSet(Obj),
}

/// Samples `act(id, u) = u` and `act(g ∘ f, u) = act(f, act(g, u))`.
pub fn check_oracle_contract<M: ModelOracle>(oracle: &M, bounds: &Bounds) -> Result<(), HomogeneityError> {
    let site = oracle.site();
    for d in site.objects() {
        for u in bounds.take(oracle.samples(d)) {
            let id = site.identity(d);
            if oracle.act(id, &u) != u {
                return Err(HomogeneityError::OracleContract { arrow: id });
            }
            for &g in site.arrows_into(d) {
                let gu = oracle.act(g, &u);
                if !oracle.contains(site.dom(g), &gu) {
                    return Err(HomogeneityError::OracleContract { arrow: g });
                }
                for &f in site.arrows_into(site.dom(g)) {
                    let gf = site.compose(g, f).expect("composable");
                    if oracle.act(gf, &u) != oracle.act(f, &gu) {
                        return Err(HomogeneityError::OracleContract { arrow: gf });
                    }
                }
            }
        }
    }
    Ok(())
}

enum Search<E> {
    Found(LiftRecord<E>),
    Absent,
    Unknown,
}

fn search<M: ModelOracle>(
    oracle: &M,
    object: Obj,
    cosieve: Option<&Sieve>,
    arrows: &[Arr],
    y: &M::Elem,
) -> Result<Search<M::Elem>, HomogeneityError> {
    let mut unknown = false;
    for &f in arrows {
        match oracle.lift(f, y) {
            Lift::Found(u) => {
                let record = LiftRecord {
                    object,
                    cosieve: cosieve.cloned(),
                    arrow: f,
                    sample: y.clone(),
                    lift: u,
                };
                if !record.replays(oracle) {
                    return Err(HomogeneityError::BadLift { arrow: f });
                }
                return Ok(Search::Found(record));
            }
            Lift::Absent => {}
            Lift::Unknown => unknown = true,
        }
    }
    Ok(if unknown { Search::Unknown } else { Search::Absent })
}

/// Checks the lifting criterion for every tested cosieve `S ∈ J(c)` and sample
/// `y`. `cotopology` is a topology on `oracle.site().opposite()`; its sieves
/// are sets of site arrows out of `c`.
pub fn is_j_homogeneous<M: ModelOracle>(
    oracle: &M,
    cotopology: &Topology,
    bounds: &Bounds,
) -> Result<HomogeneityVerdict<M::Elem>, HomogeneityError> {
    let site = oracle.site();
    if bounds.enforce_axioms {
        check_axioms(&site.opposite(), cotopology).map_err(HomogeneityError::InvalidTopology)?;
    }
    check_oracle_contract(oracle, bounds)?;
    let mut certificate = Vec::new();
    let mut pending: Option<HomogeneityWitness<M::Elem>> = None;
    for c in bounds.objects(site) {
        let samples = bounds.take(oracle.samples(c));
        for cosieve in cotopology.covers(c) {
            let arrows: Vec<Arr> = cosieve.members().collect();
            for y in &samples {
                let witness = || HomogeneityWitness {
                    object: c,
                    cosieve: Some(cosieve.clone()),
                    arrows: arrows.clone(),
                    sample: y.clone(),
                };
                match search(oracle, c, Some(cosieve), &arrows, y)? {
                    Search::Found(r) => certificate.push(r),
                    Search::Absent => return Ok(HomogeneityVerdict::Fail { witness: witness() }),
                    Search::Unknown => {
                        pending.get_or_insert_with(witness);
                    }
                }
            }
        }
    }
    Ok(match pending {
        Some(witness) => HomogeneityVerdict::Inconclusive { witness },
        None => HomogeneityVerdict::Pass { certificate },
    })
}

/// The single-arrow form of the criterion for the atomic cotopology: every
/// tested `y ∈ Hom(i(c), M)` lifts along every tested arrow `f: c → d`.
pub fn is_homogeneous_atomic<M: ModelOracle>(
    oracle: &M,
    bounds: &Bounds,
) -> Result<HomogeneityVerdict<M::Elem>, HomogeneityError> {
    oracle.right_ore().map_err(HomogeneityError::OreConditionFails)?;
    check_oracle_contract(oracle, bounds)?;
    let site = oracle.site();
    let allowed: Option<BTreeSet<Arr>> = bounds.arrows.as_ref().map(|a| a.iter().copied().collect());
    let mut certificate = Vec::new();
    let mut pending = None;
    for c in bounds.objects(site) {
        let samples = bounds.take(oracle.samples(c));
        for &f in site.arrows_from(c) {
            if allowed.as_ref().is_some_and(|a| !a.contains(&f)) {
                continue;
            }
            for y in &samples {
                let witness = || HomogeneityWitness {
                    object: c,
                    cosieve: None,
                    arrows: alloc::vec![f],
                    sample: y.clone(),
                };
                match search(oracle, c, None, &[f], y)? {
                    Search::Found(r) => certificate.push(r),
                    Search::Absent => return Ok(HomogeneityVerdict::Fail { witness: witness() }),
                    Search::Unknown => {
                        pending.get_or_insert_with(witness);
                    }
                }
            }
        }
    }
    Ok(match pending {
        Some(witness) => HomogeneityVerdict::Inconclusive { witness },
        None => HomogeneityVerdict::Pass { certificate },
    })
}

/// The functor `c ↦ Hom(i(c), M)` on `site().opposite()`, as explicit tables.
pub fn hom_functor_of<M: ModelOracle>(oracle: &M) -> Result<FinSetFunctor, HomogeneityError> {
    let site = oracle.site();
    let homs: Vec<Vec<M::Elem>> = site
        .objects()
        .map(|c| oracle.hom_set(c).ok_or(HomogeneityError::InfiniteHomSet(c)))
        .collect::<Result<_, _>>()?;
    let sets = homs
        .iter()
        .map(|h| h.iter().map(|u| oracle.element_id(u)).collect())
        .collect();
    // In the opposite, f: c → d of the site runs d → c and acts by act(f, −).
    let maps = site
        .arrows()
        .map(|f| {
            let (c, d) = (site.dom(f), site.cod(f));
            homs[d.0]
                .iter()
                .map(|u| {
                    let v = oracle.act(f, u);
                    homs[c.0]
                        .iter()
                        .position(|w| *w == v)
                        .ok_or(HomogeneityError::OracleContract { arrow: f })
                })
                .collect::<Result<Vec<usize>, _>>()
        })
        .collect::<Result<_, _>>()?;
    FinSetFunctor::new(Arc::new(site.opposite()), sets, maps)
        .map_err(|_| HomogeneityError::OracleContract { arrow: site.identity(Obj(0)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::RawCategory;
    use crate::topology::trivial_topology;
    use alloc::string::ToString;

    /// A model with exactly one arrow from every i(c).
    struct Terminal(FinCat);

    impl ModelOracle for Terminal {
        type Elem = ();
        fn site(&self) -> &FinCat {
            &self.0
        }
        fn samples(&self, _: Obj) -> Vec<()> {
            alloc::vec![()]
        }
        fn hom_set(&self, _: Obj) -> Option<Vec<()>> {
            Some(alloc::vec![()])
        }
        fn contains(&self, _: Obj, _: &()) -> bool {
            true
        }
        fn act(&self, _: Arr, _: &()) {}
        fn lift(&self, _: Arr, _: &()) -> Lift<()> {
            Lift::Found(())
        }
        fn element_id(&self, _: &()) -> String {
            "pt".to_string()
        }
    }

    fn poset01() -> FinCat {
        RawCategory::new()
            .object("0")
            .object("1")
            .arrow("f", "0", "1")
            .validate()
            .unwrap()
    }

    #[test]
    fn terminal_model_is_homogeneous() {
        let m = Terminal(poset01());
        let op = m.site().opposite();
        let v = is_j_homogeneous(&m, &trivial_topology(&op), &Bounds::default()).unwrap();
        assert!(v.is_pass());
        let v = is_homogeneous_atomic(&m, &Bounds::default()).unwrap();
        let HomogeneityVerdict::Pass { certificate } = v else { panic!() };
        assert_eq!(certificate.len(), 3);
        assert!(certificate.iter().all(|r| r.replays(&m)));
        let h = hom_functor_of(&m).unwrap();
        assert!(m.site().objects().all(|c| h.size(c) == 1));
    }

    #[test]
    fn invalid_cotopology_is_rejected() {
        let m = Terminal(poset01());
        let bad = Topology::from_covers(alloc::vec![BTreeSet::new(), BTreeSet::new()]);
        assert!(matches!(
            is_j_homogeneous(&m, &bad, &Bounds::default()),
            Err(HomogeneityError::InvalidTopology(_))
        ));
    }
}
