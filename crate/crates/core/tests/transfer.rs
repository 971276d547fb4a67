mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use site_forge_core::karoubi::{envelope, is_cauchy_complete};
use site_forge_core::sieve::{generate, pullback};
use site_forge_core::topology::{
    atomic_topology, check_axioms, trivial_topology, DEFAULT_SIEVE_GUARD,
};
use site_forge_core::transfer::{
    check_induces, check_preservation, replay, stability_certificate, transfer_topology,
    transfer_topology_canonical, verify_uniqueness, TransferError,
};
use site_forge_core::{FinCat, Sieve, Topology, TopologyKind};

/// Maximal sieves everywhere plus the sieve generated by `arrows` on their
/// common codomain.
fn with_extra_cover(cat: &FinCat, arrows: &[&str]) -> Topology {
    let mut covers: Vec<BTreeSet<Sieve>> = cat.objects().map(|c| BTreeSet::from([Sieve::maximal(cat, c)])).collect();
    let gens: Vec<_> = arrows.iter().map(|id| cat.arrow(id).unwrap()).collect();
    let c = cat.cod(gens[0]);
    covers[c.0].insert(generate(cat, c, gens).unwrap());
    Topology::from_covers(covers)
}

fn hand_written() -> Vec<(&'static str, Arc<FinCat>, Topology)> {
    let pair = common::idempotent_pair();
    let lz = common::left_zero();
    let chain = common::chain3();
    vec![
        ("idempotent-pair", pair.clone(), with_extra_cover(&pair, &["f"])),
        ("left-zero", lz.clone(), with_extra_cover(&lz, &["p", "q"])),
        ("chain3", chain.clone(), with_extra_cover(&chain, &["b"])),
    ]
}

fn topologies(cat: &FinCat) -> Vec<(String, Topology)> {
    let mut out = Vec::new();
    for kind in [TopologyKind::Trivial, TopologyKind::Dense, TopologyKind::Atomic] {
        if let Ok(t) = kind.build(cat) {
            out.push((kind.name().to_string(), t));
        }
    }
    out
}

#[test]
fn hand_written_topologies_are_valid() {
    for (name, cat, t) in hand_written() {
        assert_eq!(check_axioms(&cat, &t), Ok(()), "{name}");
    }
}

#[test]
fn transfer_is_sound_on_idempotent_suite() {
    let mut cases: Vec<(String, Arc<FinCat>, Topology)> = Vec::new();
    for (name, cat) in common::idempotent_suite() {
        for (kind, t) in topologies(&cat) {
            cases.push((format!("{name}/{kind}"), cat.clone(), t));
        }
    }
    for (name, cat, t) in hand_written() {
        cases.push((format!("{name}/hand"), cat, t));
    }
    assert!(cases.len() >= 9);
    for (name, cat, j) in cases {
        let env = envelope(cat);
        let out = transfer_topology(&env, &j).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(check_axioms(env.completion(), &out.result), Ok(()), "{name}");
        assert_eq!(check_induces(&env, &j, &out.result), Ok(()), "{name}");
        for entry in &out.certificate {
            assert_eq!(replay(&env, entry), entry.sieve, "{name}");
            assert!(env.is_retract(&entry.retract));
            assert!(j.covers(entry.retract.carrier).contains(&entry.source_cover));
        }
        let canonical = transfer_topology_canonical(&env, &j).unwrap();
        assert_eq!(canonical.result, out.result, "{name}: canonical retracts suffice");
    }
}

#[test]
fn stability_certificates_replay() {
    for (name, cat) in common::idempotent_suite() {
        for (kind, j) in topologies(&cat) {
            let env = envelope(cat.clone());
            let chat = env.completion();
            let out = transfer_topology(&env, &j).unwrap();
            for entry in &out.certificate {
                for &g in chat.arrows_into(entry.sieve.base()) {
                    let moved = stability_certificate(&env, entry, g);
                    assert_eq!(moved.sieve, pullback(chat, &entry.sieve, g).unwrap());
                    assert_eq!(replay(&env, &moved), moved.sieve, "{name}/{kind}");
                    assert!(j.covers(moved.retract.carrier).contains(&moved.source_cover));
                    assert!(out.result.is_covering(&moved.sieve));
                }
            }
        }
    }
}

#[test]
fn uniqueness_on_monoid_and_pair() {
    for cat in [common::monoid(), common::idempotent_pair()] {
        let env = envelope(cat.clone());
        for j in [trivial_topology(&cat), atomic_topology(&cat).unwrap()] {
            let report = verify_uniqueness(&env, &j, DEFAULT_SIEVE_GUARD).unwrap();
            assert_eq!(report.inducing.len(), 1);
            assert!(report.holds());
        }
    }
}

#[test]
fn preservation_of_named_topologies() {
    let mut atomic_cases = 0;
    for (name, cat) in common::suite() {
        for kind in [TopologyKind::Trivial, TopologyKind::Dense, TopologyKind::Atomic] {
            match check_preservation(cat.clone(), kind) {
                Ok(report) => {
                    assert!(report.holds(), "{name}/{}", kind.name());
                    if kind == TopologyKind::Atomic {
                        atomic_cases += 1;
                    }
                }
                Err(TransferError::OreConditionFails(_)) => {
                    assert_eq!(kind, TopologyKind::Atomic);
                    assert!(cat.right_ore().is_err(), "{name}");
                }
                Err(e) => panic!("{name}: {e}"),
            }
        }
    }
    assert!(atomic_cases >= 3);
}

#[test]
fn envelope_is_idempotent_up_to_equivalence() {
    for (name, cat) in common::suite() {
        let env = envelope(cat);
        let chat = env.completion().clone();
        assert!(is_cauchy_complete(&chat).is_ok(), "{name}");
        let twice = envelope(chat);
        assert!(twice.embedding().is_equivalence(), "{name}");
    }
}
