//! Grothendieck topologies as explicit covering-sieve tables.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::fincat::{Arr, FinCat, Obj, OreFailure};
use crate::sieve::{all_sieves, pullback, Sieve};

/// Default bound on the total number of sieves for [`enumerate_topologies`].
pub const DEFAULT_SIEVE_GUARD: usize = 20;

/// Covering sieves per object, indexed by [`Obj`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Topology {
    covers: Vec<BTreeSet<Sieve>>,
}

impl Topology {
    /// Wraps a cover table. No axioms are checked; see [`check_axioms`].
    pub fn from_covers(covers: Vec<BTreeSet<Sieve>>) -> Topology {
        Topology { covers }
    }

    pub fn covers(&self, c: Obj) -> &BTreeSet<Sieve> {
        &self.covers[c.0]
    }

    pub fn is_covering(&self, sieve: &Sieve) -> bool {
        self.covers
            .get(sieve.base().0)
            .is_some_and(|s| s.contains(sieve))
    }

    pub fn object_count(&self) -> usize {
        self.covers.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Obj, &BTreeSet<Sieve>)> {
        self.covers.iter().enumerate().map(|(i, s)| (Obj(i), s))
    }

    /// `true` when every cover of `self` is a cover of `other`.
    pub fn is_coarser_than(&self, other: &Topology) -> bool {
        self.covers
            .iter()
            .zip(&other.covers)
            .all(|(a, b)| a.is_subset(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The table has the wrong shape or holds something that is not a sieve
    /// on the object it is listed under.
    InvalidSieve { object: Obj, sieve: Option<Sieve> },
    Maximality { object: Obj },
    /// `sieve` covers but its pullback `pulled` along `arrow` does not.
    Stability {
        sieve: Sieve,
        arrow: Arr,
        pulled: Sieve,
    },
    /// Every pullback of `sieve` along a member of `covering` covers, but
    /// `sieve` itself does not.
    Transitivity { covering: Sieve, sieve: Sieve },
}

impl AxiomViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::InvalidSieve { .. } => "sieve",
            AxiomViolation::Maximality { .. } => "maximality",
            AxiomViolation::Stability { .. } => "stability",
            AxiomViolation::Transitivity { .. } => "transitivity",
        }
    }
}

/// Checks maximality, stability and transitivity, returning the first
/// violation found.
pub fn check_axioms(cat: &FinCat, topology: &Topology) -> Result<(), AxiomViolation> {
    if topology.object_count() != cat.object_count() {
        return Err(AxiomViolation::InvalidSieve {
            object: Obj(topology.object_count().min(cat.object_count())),
            sieve: None,
        });
    }
    for (c, covers) in topology.iter() {
        for s in covers {
            if s.base() != c || !s.is_valid(cat) {
                return Err(AxiomViolation::InvalidSieve {
                    object: c,
                    sieve: Some(s.clone()),
                });
            }
        }
    }
    for c in cat.objects() {
        if !topology.is_covering(&Sieve::maximal(cat, c)) {
            return Err(AxiomViolation::Maximality { object: c });
        }
    }
    check_stability(cat, topology, |_, _| true)?;
    for c in cat.objects() {
        let covers = topology.covers(c);
        for r in all_sieves(cat, c) {
            if covers.contains(&r) {
                continue;
            }
            let locally = locally_covering(cat, topology, &r);
            if let Some(s) = covers.iter().find(|s| s.member_set().is_subset(&locally)) {
                return Err(AxiomViolation::Transitivity {
                    covering: s.clone(),
                    sieve: r,
                });
            }
        }
    }
    Ok(())
}

fn check_stability(
    cat: &FinCat,
    topology: &Topology,
    relevant: impl Fn(Obj, Obj) -> bool,
) -> Result<(), AxiomViolation> {
    for (c, covers) in topology.iter() {
        for s in covers {
            for &g in cat.arrows_into(c) {
                if !relevant(c, cat.dom(g)) {
                    continue;
                }
                let pulled = pullback(cat, s, g).expect("codomain matches");
                if !topology.is_covering(&pulled) {
                    return Err(AxiomViolation::Stability {
                        sieve: s.clone(),
                        arrow: g,
                        pulled,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Arrows `f` into the base of `sieve` along which it pulls back to a cover.
fn locally_covering(cat: &FinCat, topology: &Topology, sieve: &Sieve) -> crate::ArrowSet {
    let mut set = crate::ArrowSet::empty(cat.arrow_count());
    for &f in cat.arrows_into(sieve.base()) {
        if topology.is_covering(&pullback(cat, sieve, f).expect("codomain matches")) {
            set.insert(f.0);
        }
    }
    set
}

pub fn trivial_topology(cat: &FinCat) -> Topology {
    Topology::from_covers(
        cat.objects()
            .map(|c| BTreeSet::from([Sieve::maximal(cat, c)]))
            .collect(),
    )
}

/// Sieves `S` such that every arrow into the base has a precomposite in `S`.
pub fn is_dense_sieve(cat: &FinCat, sieve: &Sieve) -> bool {
    cat.arrows_into(sieve.base()).iter().all(|&f| {
        cat.arrows_into(cat.dom(f))
            .iter()
            .any(|&g| sieve.contains(cat.compose(f, g).expect("composable")))
    })
}

pub fn dense_topology(cat: &FinCat) -> Topology {
    Topology::from_covers(
        cat.objects()
            .map(|c| {
                all_sieves(cat, c)
                    .into_iter()
                    .filter(|s| is_dense_sieve(cat, s))
                    .collect()
            })
            .collect(),
    )
}

/// All nonempty sieves. Defined only when the category satisfies the right
/// Ore condition.
pub fn atomic_topology(cat: &FinCat) -> Result<Topology, OreFailure> {
    cat.right_ore()?;
    Ok(nonempty_covers(cat))
}

/// The table of all nonempty sieves, without the right Ore precondition.
///
/// On a category failing the Ore condition this is a coverage but not a
/// topology (stability fails); it is still the right cover table for bounded
/// lifting checks on truncations of an atomic site.
pub fn nonempty_covers(cat: &FinCat) -> Topology {
    Topology::from_covers(
        cat.objects()
            .map(|c| {
                all_sieves(cat, c)
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect()
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TopologyKind {
    Trivial,
    Dense,
    Atomic,
}

impl TopologyKind {
    pub fn build(self, cat: &FinCat) -> Result<Topology, OreFailure> {
        match self {
            TopologyKind::Trivial => Ok(trivial_topology(cat)),
            TopologyKind::Dense => Ok(dense_topology(cat)),
            TopologyKind::Atomic => atomic_topology(cat),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Trivial => "trivial",
            TopologyKind::Dense => "dense",
            TopologyKind::Atomic => "atomic",
        }
    }

    pub fn from_name(name: &str) -> Option<TopologyKind> {
        match name {
            "trivial" => Some(TopologyKind::Trivial),
            "dense" => Some(TopologyKind::Dense),
            "atomic" => Some(TopologyKind::Atomic),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("category has {sieves} sieves, above the enumeration guard of {limit}")]
pub struct TooLarge {
    pub sieves: usize,
    pub limit: usize,
}

/// Total number of sieves over all objects.
pub fn sieve_count(cat: &FinCat) -> usize {
    cat.objects().map(|c| all_sieves(cat, c).len()).sum()
}

/// Every Grothendieck topology on `cat`, sorted.
///
/// Each object's cover family is drawn from the upward-closed families
/// containing the maximal sieve; assignments are pruned on stability as soon
/// as both ends of an arrow are decided, and survivors are checked in full.
pub fn enumerate_topologies(cat: &FinCat, limit: usize) -> Result<Vec<Topology>, TooLarge> {
    let sieves: Vec<Vec<Sieve>> = cat.objects().map(|c| all_sieves(cat, c)).collect();
    let total: usize = sieves.iter().map(Vec::len).sum();
    if total > limit {
        return Err(TooLarge {
            sieves: total,
            limit,
        });
    }
    let families: Vec<Vec<BTreeSet<Sieve>>> = sieves
        .iter()
        .map(|list| upward_closed_families(cat, list))
        .collect();

    fn go(
        cat: &FinCat,
        families: &[Vec<BTreeSet<Sieve>>],
        chosen: &mut Vec<BTreeSet<Sieve>>,
        out: &mut Vec<Topology>,
    ) {
        let k = chosen.len();
        if k == families.len() {
            let t = Topology::from_covers(chosen.clone());
            if check_axioms(cat, &t).is_ok() {
                out.push(t);
            }
            return;
        }
        for fam in &families[k] {
            chosen.push(fam.clone());
            if stable_so_far(cat, chosen) {
                go(cat, families, chosen, out);
            }
            chosen.pop();
        }
    }

    let mut out = Vec::new();
    go(cat, &families, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Stability among the first `chosen.len()` objects, for pairs involving the
/// most recently decided one.
fn stable_so_far(cat: &FinCat, chosen: &[BTreeSet<Sieve>]) -> bool {
    let last = chosen.len() - 1;
    for (x, covers) in chosen.iter().enumerate() {
        for s in covers {
            for &g in cat.arrows_into(Obj(x)) {
                let y = cat.dom(g).0;
                if y > last || (x != last && y != last) {
                    continue;
                }
                let pulled = pullback(cat, s, g).expect("codomain matches");
                if !chosen[y].contains(&pulled) {
                    return false;
                }
            }
        }
    }
    true
}

fn upward_closed_families(cat: &FinCat, sieves: &[Sieve]) -> Vec<BTreeSet<Sieve>> {
    let mut order: Vec<&Sieve> = sieves.iter().collect();
    order.sort_by_key(|s| core::cmp::Reverse(s.len()));
    let mut out = Vec::new();

    fn go<'a>(
        cat: &FinCat,
        order: &[&'a Sieve],
        i: usize,
        chosen: &mut Vec<&'a Sieve>,
        out: &mut Vec<BTreeSet<Sieve>>,
    ) {
        if i == order.len() {
            out.push(chosen.iter().map(|s| (*s).clone()).collect());
            return;
        }
        let s = order[i];
        let supersets_in = order[..i]
            .iter()
            .filter(|t| s.is_subsieve_of(t))
            .all(|t| chosen.contains(t));
        if supersets_in {
            chosen.push(s);
            go(cat, order, i + 1, chosen, out);
            chosen.pop();
        }
        if !s.is_maximal(cat) {
            go(cat, order, i + 1, chosen, out);
        }
    }

    go(cat, &order, 0, &mut Vec::new(), &mut out);
    out
}
