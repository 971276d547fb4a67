#![allow(dead_code)]

use std::sync::Arc;

use site_forge_core::{FinCat, RawCategory};

pub fn monoid() -> Arc<FinCat> {
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

/// `e: a → a` idempotent with `f ∘ e = f` for `f: a → b`; `e` does not split.
pub fn idempotent_pair() -> Arc<FinCat> {
    Arc::new(
        RawCategory::new()
            .object("a")
            .object("b")
            .arrow("e", "a", "a")
            .arrow("f", "a", "b")
            .compose("e", "e", "e")
            .compose("f", "e", "f")
            .validate()
            .unwrap(),
    )
}

/// The monoid `{1, p, q}` with `xy = x` for `x ≠ 1`.
pub fn left_zero() -> Arc<FinCat> {
    Arc::new(
        RawCategory::new()
            .object("*")
            .identity_named("*", "1")
            .arrow("p", "*", "*")
            .arrow("q", "*", "*")
            .compose("p", "p", "p")
            .compose("p", "q", "p")
            .compose("q", "p", "q")
            .compose("q", "q", "q")
            .validate()
            .unwrap(),
    )
}

pub fn z2() -> Arc<FinCat> {
    Arc::new(
        RawCategory::new()
            .object("*")
            .identity_named("*", "1")
            .arrow("s", "*", "*")
            .compose("s", "s", "1")
            .validate()
            .unwrap(),
    )
}

pub fn chain2() -> Arc<FinCat> {
    Arc::new(
        RawCategory::new()
            .object("0")
            .object("1")
            .arrow("a", "0", "1")
            .validate()
            .unwrap(),
    )
}

pub fn chain3() -> Arc<FinCat> {
    Arc::new(
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
    )
}

/// `a → c ← b`.
pub fn cospan() -> Arc<FinCat> {
    Arc::new(
        RawCategory::new()
            .object("a")
            .object("b")
            .object("c")
            .arrow("f", "a", "c")
            .arrow("g", "b", "c")
            .validate()
            .unwrap(),
    )
}

/// Categories with non-split idempotents.
pub fn idempotent_suite() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("monoid", monoid()),
        ("idempotent-pair", idempotent_pair()),
        ("left-zero", left_zero()),
    ]
}

pub fn posets() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![("chain2", chain2()), ("chain3", chain3()), ("cospan", cospan())]
}

pub fn suite() -> Vec<(&'static str, Arc<FinCat>)> {
    let mut all = idempotent_suite();
    all.push(("z2", z2()));
    all.extend(posets());
    all
}
