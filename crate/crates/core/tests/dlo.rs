use site_forge_core::dlo::{
    axiom_arrows, chain_lift, increasing_tuples, ord_site, q_lift, z_lift, Carrier, LinearOrderOracle, OrdSite,
    Rational, DEFAULT_ORD_GUARD,
};
use site_forge_core::flatfun::is_j_continuous;
use site_forge_core::homogeneity::{
    hom_functor_of, is_homogeneous_atomic, is_j_homogeneous, Bounds, HomogeneityVerdict, ModelOracle,
};
use site_forge_core::topology::{check_axioms, AxiomViolation};
use site_forge_core::RawCategory;

fn binomial(m: usize, n: usize) -> usize {
    if n > m {
        return 0;
    }
    (0..n).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn site(n: usize) -> OrdSite {
    ord_site(n, DEFAULT_ORD_GUARD).unwrap()
}

fn q(p: i64) -> Rational {
    Rational::from_integer(p)
}

fn strictly_increasing<T: PartialOrd>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Every lift of `y` along `images` inside `0..k`, by enumeration.
fn brute_lifts(k: i64, lo: i64, images: &[usize], m: usize, y: &[i64]) -> Vec<Vec<i64>> {
    let width = (k - lo) as usize;
    increasing_tuples(m, width)
        .into_iter()
        .map(|t| t.into_iter().map(|i| i as i64 + lo).collect::<Vec<i64>>())
        .filter(|u| images.iter().zip(y).all(|(&p, &v)| u[p] == v))
        .collect()
}

#[test]
fn arrow_counts_are_binomial() {
    for n in 1..=5 {
        let s = site(n);
        let c = s.category();
        for a in 0..=n {
            for b in 0..=n {
                let (oa, ob) = (s.object_of_size(a).unwrap(), s.object_of_size(b).unwrap());
                assert_eq!(c.hom(oa, ob).len(), binomial(b, a));
            }
        }
    }
}

#[test]
fn q_lift_replays_exhaustively() {
    let grid: Vec<Rational> = [-3, -1, 0, 1, 2, 5, 7].iter().map(|&v| Rational::new(v, 3)).collect();
    let mut count = 0;
    for m in 0..=6 {
        for n in 0..=m {
            for f in increasing_tuples(n, m) {
                for idx in increasing_tuples(n, grid.len()) {
                    let y: Vec<Rational> = idx.iter().map(|&i| grid[i]).collect();
                    let u = q_lift(&f, m, &y);
                    assert_eq!(u.len(), m);
                    assert!(strictly_increasing(&u));
                    assert!(f.iter().zip(&y).all(|(&p, v)| u[p] == *v));
                    count += 1;
                }
            }
        }
    }
    assert!(count > 1000);
}

#[test]
fn discrete_lifts_agree_with_enumeration() {
    for m in 0..=5 {
        for n in 0..=m {
            for f in increasing_tuples(n, m) {
                for k in 1..=6i64 {
                    for idx in increasing_tuples(n, k as usize) {
                        let y: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
                        let brute = brute_lifts(k, 0, &f, m, &y);
                        match chain_lift(k as usize, &f, m, &y) {
                            Some(u) => assert!(brute.contains(&u)),
                            None => assert!(brute.is_empty(), "chain {k} f={f:?} y={y:?}"),
                        }
                        // Integers: any lift stays within m of the anchors.
                        let lo = y.first().copied().unwrap_or(0) - m as i64;
                        let hi = y.last().copied().unwrap_or(0) + m as i64 + 1;
                        let brute = brute_lifts(hi, lo, &f, m, &y);
                        match z_lift(&f, m, &y) {
                            Some(u) => assert!(brute.contains(&u)),
                            None => assert!(brute.is_empty(), "Z f={f:?} y={y:?}"),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn rationals_are_homogeneous() {
    for n in 1..=6 {
        let oracle = LinearOrderOracle::new(site(n), Carrier::Rationals);
        let v = is_homogeneous_atomic(&oracle, &Bounds::default()).unwrap();
        let HomogeneityVerdict::Pass { certificate } = v else {
            panic!("N={n}: {v:?}")
        };
        let s = oracle.ord_site();
        for r in &certificate {
            let img = s.images(r.arrow);
            assert!(strictly_increasing(&r.lift));
            assert!(img.iter().zip(&r.sample).all(|(&p, y)| r.lift[p] == *y));
        }
        let expected: usize = s
            .category()
            .arrows()
            .map(|f| oracle.samples(s.category().dom(f)).len())
            .sum();
        assert_eq!(certificate.len(), expected);
    }
}

#[test]
fn rationals_agree_with_cosieve_form() {
    let oracle = LinearOrderOracle::new(site(3), Carrier::Rationals);
    let bounds = Bounds {
        enforce_axioms: false,
        ..Bounds::default()
    };
    let cot = oracle.ord_site().atomic_cotopology();
    assert!(is_j_homogeneous(&oracle, &cot, &bounds).unwrap().is_pass());
    assert!(is_homogeneous_atomic(&oracle, &bounds).unwrap().is_pass());
}

#[test]
fn integers_fail_with_density_witness() {
    let oracle = LinearOrderOracle::new(site(3), Carrier::Integers);
    let v = is_homogeneous_atomic(&oracle, &Bounds::default()).unwrap();
    let HomogeneityVerdict::Fail { witness } = v else {
        panic!("{v:?}")
    };
    let s = oracle.ord_site();
    assert_eq!(witness.arrows.len(), 1);
    assert_eq!(s.images(witness.arrows[0]), &[0, 2]);
    assert_eq!(s.category().arrow_id(witness.arrows[0]), "02@3");
    assert_eq!(witness.sample, vec![q(0), q(1)]);
}

#[test]
fn finite_chains_fail_with_replayable_witness() {
    for k in 1..=6 {
        for n in 2..=4 {
            let oracle = LinearOrderOracle::new(site(n), Carrier::Chain(k));
            let v = is_homogeneous_atomic(&oracle, &Bounds::default()).unwrap();
            let HomogeneityVerdict::Fail { witness } = v else {
                panic!("chain {k} N={n}: {v:?}")
            };
            let s = oracle.ord_site();
            let f = witness.arrows[0];
            let m = s.size(s.category().cod(f));
            let y: Vec<i64> = witness.sample.iter().map(|r| r.to_integer()).collect();
            assert!(oracle.contains(witness.object, &witness.sample));
            assert!(brute_lifts(k as i64, 0, s.images(f), m, &y).is_empty());
        }
    }
}

#[test]
fn singleton_chain_misses_middle_inclusion() {
    let s = site(3);
    let f = s.arrow(&[1], 3).unwrap();
    let oracle = LinearOrderOracle::new(s, Carrier::Chain(1));
    let bounds = Bounds {
        arrows: Some(vec![f]),
        ..Bounds::default()
    };
    let v = is_homogeneous_atomic(&oracle, &bounds).unwrap();
    let HomogeneityVerdict::Fail { witness } = v else { panic!("{v:?}") };
    assert_eq!(witness.arrows, vec![f]);
    assert_eq!(witness.sample, vec![q(0)]);
}

#[test]
fn identity_arrows_always_lift() {
    for carrier in [Carrier::Integers, Carrier::Chain(2)] {
        let oracle = LinearOrderOracle::new(site(3), carrier);
        let ids = oracle.site().objects().map(|o| oracle.site().identity(o)).collect();
        let bounds = Bounds {
            arrows: Some(ids),
            ..Bounds::default()
        };
        assert!(is_homogeneous_atomic(&oracle, &bounds).unwrap().is_pass());
    }
}

#[test]
fn chain_hom_functor_sizes() {
    for k in 0..=5 {
        for n in 1..=4 {
            let oracle = LinearOrderOracle::new(site(n), Carrier::Chain(k));
            let h = hom_functor_of(&oracle).unwrap();
            let s = oracle.ord_site();
            for a in 0..=n {
                assert_eq!(h.size(s.object_of_size(a).unwrap()), binomial(k, a));
            }
        }
    }
    let oracle = LinearOrderOracle::new(site(3), Carrier::Rationals);
    assert!(hom_functor_of(&oracle).is_err());
}

#[test]
fn continuity_matches_homogeneity_on_chains() {
    let bounds = Bounds {
        enforce_axioms: false,
        ..Bounds::default()
    };
    let mut outcomes = Vec::new();
    for n in [1, 4] {
        for k in 1..=6 {
            let oracle = LinearOrderOracle::new(site(n), Carrier::Chain(k));
            let cot = oracle.ord_site().atomic_cotopology();
            let h = hom_functor_of(&oracle).unwrap();
            let continuous = is_j_continuous(&h, &cot).is_ok();
            let v = is_j_homogeneous(&oracle, &cot, &bounds).unwrap();
            assert!(!matches!(v, HomogeneityVerdict::Inconclusive { .. }));
            assert_eq!(continuous, v.is_pass(), "N={n} chain {k}");
            outcomes.push(continuous);
        }
    }
    assert!(outcomes.contains(&true) && outcomes.contains(&false));
}

#[test]
fn right_ore_by_amalgamation() {
    for n in 1..=5 {
        assert!(site(n).right_ore().is_ok(), "N={n}");
    }
    // The truncated table itself is not closed under amalgams.
    assert!(site(1).category().opposite().right_ore().is_ok());
    for n in 2..=4 {
        assert!(site(n).category().opposite().right_ore().is_err(), "N={n}");
    }
    let cospan = RawCategory::new()
        .object("a")
        .object("b")
        .object("c")
        .arrow("f", "a", "c")
        .arrow("g", "b", "c")
        .validate()
        .unwrap();
    let w = cospan.right_ore().unwrap_err();
    assert_eq!(cospan.arrow_id(w.left), "f");
    assert_eq!(cospan.arrow_id(w.right), "g");
}

#[test]
fn truncated_atomic_cotopology_fails_stability_only() {
    let s1 = site(1);
    assert!(check_axioms(&s1.category().opposite(), &s1.atomic_cotopology()).is_ok());
    for n in 2..=3 {
        let s = site(n);
        let err = check_axioms(&s.category().opposite(), &s.atomic_cotopology()).unwrap_err();
        assert!(matches!(err, AxiomViolation::Stability { .. }), "{err:?}");
    }
}

#[test]
fn axiom_arrows_decide_homogeneity() {
    assert_eq!(axiom_arrows(&site(2)).len(), 1);
    let carriers = [Carrier::Rationals, Carrier::Integers, Carrier::Chain(1), Carrier::Chain(3), Carrier::Chain(6)];
    for n in 3..=5 {
        for carrier in carriers {
            let oracle = LinearOrderOracle::new(site(n), carrier);
            let named = axiom_arrows(oracle.ord_site());
            assert_eq!(named.len(), 4);
            let bounds = Bounds {
                arrows: Some(named.iter().map(|&(_, a)| a).collect()),
                ..Bounds::default()
            };
            let axioms = is_homogeneous_atomic(&oracle, &bounds).unwrap().is_pass();
            let full = is_homogeneous_atomic(&oracle, &Bounds::default()).unwrap().is_pass();
            assert_eq!(axioms, full, "N={n} {}", carrier.name());
        }
    }
    let oracle = LinearOrderOracle::new(site(3), Carrier::Integers);
    let failing: Vec<&str> = axiom_arrows(oracle.ord_site())
        .into_iter()
        .filter(|&(_, a)| {
            let bounds = Bounds {
                arrows: Some(vec![a]),
                ..Bounds::default()
            };
            is_homogeneous_atomic(&oracle, &bounds).unwrap().is_fail()
        })
        .map(|(name, _)| name)
        .collect();
    assert_eq!(failing, ["dense"]);
}
