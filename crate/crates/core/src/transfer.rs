//! Transport of a topology on a category to its Karoubi envelope.
//!
//! A sieve `R` on an envelope object `d` covers iff there is a retract
//! `d ↪ a → d` with `a` in the base and a cover `S ∈ J(a)` such that
//! `R = i*(S̄)`. The result is checked to be a topology and to induce `J`
//! back on the base; a brute-force enumerator confirms it is the only one.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::fincat::{Arr, FinCat, Obj, OreFailure};
use crate::karoubi::{envelope, Envelope, Retract};
use crate::sieve::{bar, pullback, restrict, Sieve};
use crate::topology::{check_axioms, enumerate_topologies, AxiomViolation, Topology, TopologyKind, TooLarge};

/// Why `sieve` was admitted: `sieve = retract.section* (bar(source_cover))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub sieve: Sieve,
    pub retract: Retract,
    pub source_cover: Sieve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferResult {
    pub source: Topology,
    pub result: Topology,
    /// One entry per admitted sieve, ordered by object then sieve.
    pub certificate: Vec<CertificateEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("source topology violates the {} axiom", .0.axiom())]
    InvalidSourceTopology(AxiomViolation),
    #[error("transferred cover table violates the {} axiom", .0.axiom())]
    ResultNotATopology(AxiomViolation),
    #[error("right Ore condition fails; the atomic topology is undefined")]
    OreConditionFails(OreFailure),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

/// Sieve on the completion obtained by replaying a certificate entry.
pub fn replay(env: &Envelope, entry: &CertificateEntry) -> Sieve {
    let chat = env.completion();
    pullback(chat, &bar(env.embedding(), &entry.source_cover), entry.retract.section)
        .expect("section lands in the embedded carrier")
}

/// Transfers `topology` using every retract of each envelope object.
pub fn transfer_topology(env: &Envelope, topology: &Topology) -> Result<TransferResult, TransferError> {
    transfer_with(env, topology, |d| env.enumerate_retracts(d))
}

/// Same construction restricted to the canonical retract of each object.
pub fn transfer_topology_canonical(
    env: &Envelope,
    topology: &Topology,
) -> Result<TransferResult, TransferError> {
    transfer_with(env, topology, |d| alloc::vec![env.canonical_retract(d)])
}

fn transfer_with(
    env: &Envelope,
    topology: &Topology,
    retracts: impl Fn(Obj) -> Vec<Retract>,
) -> Result<TransferResult, TransferError> {
    let base = env.base();
    check_axioms(base, topology).map_err(TransferError::InvalidSourceTopology)?;
    let chat = env.completion();
    let mut covers = Vec::with_capacity(chat.object_count());
    let mut certificate = Vec::new();
    for d in chat.objects() {
        let mut admitted: BTreeSet<Sieve> = BTreeSet::new();
        let mut entries = Vec::new();
        for retract in retracts(d) {
            for s in topology.covers(retract.carrier) {
                let entry = CertificateEntry {
                    sieve: Sieve::empty(chat, d),
                    retract,
                    source_cover: s.clone(),
                };
                let r = replay(env, &entry);
                if admitted.insert(r.clone()) {
                    entries.push(CertificateEntry { sieve: r, ..entry });
                }
            }
        }
        entries.sort_by(|a, b| a.sieve.cmp(&b.sieve));
        certificate.extend(entries);
        covers.push(admitted);
    }
    let result = Topology::from_covers(covers);
    check_axioms(chat, &result).map_err(TransferError::ResultNotATopology)?;
    Ok(TransferResult {
        source: topology.clone(),
        result,
        certificate,
    })
}

/// Builds a certificate for `g*(R)` from one for `R`, following the stability
/// argument: with `e ↪j b →z e` the canonical retract of `dom g`,
/// `g*(R) = j*(bar((i∘g∘z)*(S)))`.
pub fn stability_certificate(env: &Envelope, entry: &CertificateEntry, g: Arr) -> CertificateEntry {
    let chat = env.completion();
    let base = env.base();
    let e = chat.dom(g);
    let canon = env.canonical_retract(e);
    let igz = chat
        .compose(
            chat.compose(entry.retract.section, g).expect("g lands in d"),
            canon.retraction,
        )
        .expect("composable");
    let arrow_in_base = env.underlying(igz);
    debug_assert_eq!(base.dom(arrow_in_base), canon.carrier);
    let pulled = pullback(base, &entry.source_cover, arrow_in_base).expect("codomain is a");
    let sieve = pullback(chat, &entry.sieve, g).expect("g lands in d");
    CertificateEntry {
        sieve,
        retract: canon,
        source_cover: pulled,
    }
}

/// Why a pair of topologies fails to satisfy the inducing relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InducesViolation {
    /// A cover on `emb(object)` whose restriction does not cover in the base.
    RestrictionNotCovering { object: Obj, sieve: Sieve },
    /// A base cover whose generated sieve does not cover in the completion.
    CoverNotReflected { object: Obj, sieve: Sieve },
    /// A cover on `emb(object)` that is not generated by its restriction.
    NotGenerated { object: Obj, sieve: Sieve },
}

/// `{ restrict(R) | R ∈ Ĵ(emb c) } = J(c)` and `{ bar(S) | S ∈ J(c) } = Ĵ(emb c)`
/// for every base object `c`.
pub fn check_induces(env: &Envelope, base_topology: &Topology, lifted: &Topology) -> Result<(), InducesViolation> {
    let emb = env.embedding();
    for c in env.base().objects() {
        let ec = emb.map_obj(c);
        for r in lifted.covers(ec) {
            let s = restrict(emb, r).expect("base is embedded");
            if !base_topology.covers(c).contains(&s) {
                return Err(InducesViolation::RestrictionNotCovering {
                    object: c,
                    sieve: r.clone(),
                });
            }
            if bar(emb, &s) != *r {
                return Err(InducesViolation::NotGenerated {
                    object: c,
                    sieve: r.clone(),
                });
            }
        }
        for s in base_topology.covers(c) {
            if !lifted.covers(ec).contains(&bar(emb, s)) {
                return Err(InducesViolation::CoverNotReflected {
                    object: c,
                    sieve: s.clone(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    /// Every topology on the completion that induces the base topology.
    pub inducing: Vec<Topology>,
    pub transferred: Topology,
}

impl UniquenessReport {
    pub fn holds(&self) -> bool {
        self.inducing.len() == 1 && self.inducing[0] == self.transferred
    }
}

/// Enumerates all topologies on the completion and keeps those inducing
/// `topology`.
pub fn verify_uniqueness(env: &Envelope, topology: &Topology, limit: usize) -> Result<UniquenessReport, TransferError> {
    let transferred = transfer_topology(env, topology)?.result;
    let inducing = enumerate_topologies(env.completion(), limit)?
        .into_iter()
        .filter(|t| check_induces(env, topology, t).is_ok())
        .collect();
    Ok(UniquenessReport {
        inducing,
        transferred,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub kind: TopologyKind,
    pub transferred: Topology,
    pub direct: Topology,
}

impl PreservationReport {
    pub fn holds(&self) -> bool {
        self.transferred == self.direct
    }
}

/// Transfers the named topology and compares it with the same named topology
/// computed directly on the completion.
pub fn check_preservation(cat: Arc<FinCat>, kind: TopologyKind) -> Result<PreservationReport, TransferError> {
    let j = kind.build(&cat).map_err(TransferError::OreConditionFails)?;
    let env = envelope(cat);
    let transferred = transfer_topology(&env, &j)?.result;
    let direct = kind
        .build(env.completion())
        .map_err(TransferError::OreConditionFails)?;
    Ok(PreservationReport {
        kind,
        transferred,
        direct,
    })
}
