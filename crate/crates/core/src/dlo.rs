//! Finite ordinals with order-preserving injections, and linear orders as
//! model oracles.
//!
//! The site `Ord_fm(N)` has objects `0..=N` (an object `n` is the chain
//! `{0 < … < n-1}`) and arrows all strictly increasing maps. An arrow
//! `n → m` is named by its image list followed by `@m`, so `02@3` is the map
//! `2 → 3` with `0 ↦ 0, 1 ↦ 2`. The cotopology lives on the opposite
//! category, whose arrows carry the same ids.
//!
//! Hom-sets `Hom(n, L)` into a linear order `L` are strictly increasing
//! `n`-tuples, and an arrow `f: n → m` acts on `u ∈ Hom(m, L)` by
//! `(u[f(0)], …, u[f(n-1)])`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::fincat::{Arr, FinCat, Obj, OreFailure, RawCategory};
use crate::homogeneity::{Lift, ModelOracle};
use crate::topology::{nonempty_covers, Topology};

pub type Rational = Ratio<i64>;

/// Largest `N` accepted by [`ord_site`] without an explicit override.
pub const DEFAULT_ORD_GUARD: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DloError {
    #[error("site size must be at least 1")]
    ZeroSize,
    #[error("site size {n} exceeds the guard of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// `Ord_fm(N)` with the bookkeeping needed to read arrows as maps.
#[derive(Clone, Debug)]
pub struct OrdSite {
    n: usize,
    category: FinCat,
    sizes: Vec<usize>,
    images: Vec<Vec<usize>>,
}

fn arrow_name(images: &[usize], m: usize) -> String {
    let body: Vec<String> = images.iter().map(|i| format!("{i}")).collect();
    let sep = if m > 10 { "_" } else { "" };
    format!("{}@{m}", body.join(sep))
}

/// Strictly increasing `n`-subsets of `0..m`, in lexicographic order.
pub fn increasing_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < n - cur.len() {
                break;
            }
            cur.push(i);
            go(n, m, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Builds `Ord_fm(n)`, refusing sizes above `limit`.
pub fn ord_site(n: usize, limit: usize) -> Result<OrdSite, DloError> {
    if n == 0 {
        return Err(DloError::ZeroSize);
    }
    if n > limit {
        return Err(DloError::TooLarge { n, limit });
    }
    let mut raw = RawCategory::new();
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for m in 0..=n {
        raw.objects.push(format!("{m}"));
        let id: Vec<usize> = (0..m).collect();
        raw.identities.insert(format!("{m}"), arrow_name(&id, m));
        for k in 0..=m {
            for img in increasing_tuples(k, m) {
                if k == m {
                    maps.push((k, m, img));
                    continue;
                }
                raw = raw.arrow(arrow_name(&img, m), format!("{k}"), format!("{m}"));
                maps.push((k, m, img));
            }
        }
    }
    for (k, m, g) in &maps {
        for (_, k2, f) in &maps {
            if k2 != k {
                continue;
            }
            let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
            raw = raw.compose(arrow_name(g, *m), arrow_name(f, *k), arrow_name(&gf, *m));
        }
    }
    let category = raw.validate().expect("Ord_fm tables are a category");
    let mut sizes = alloc::vec![0; category.object_count()];
    for o in category.objects() {
        sizes[o.0] = category.object_id(o).parse().expect("numeric object id");
    }
    let mut images = alloc::vec![Vec::new(); category.arrow_count()];
    for (_, m, img) in maps {
        let a = category.arrow(&arrow_name(&img, m)).expect("listed");
        images[a.0] = img;
    }
    Ok(OrdSite {
        n,
        category,
        sizes,
        images,
    })
}

impl OrdSite {
    pub fn bound(&self) -> usize {
        self.n
    }

    pub fn category(&self) -> &FinCat {
        &self.category
    }

    /// The number of elements of an object.
    pub fn size(&self, o: Obj) -> usize {
        self.sizes[o.0]
    }

    pub fn object_of_size(&self, k: usize) -> Option<Obj> {
        self.category.object(&format!("{k}"))
    }

    pub fn images(&self, f: Arr) -> &[usize] {
        &self.images[f.0]
    }

    /// The arrow `images.len() → m` with the given images.
    pub fn arrow(&self, images: &[usize], m: usize) -> Option<Arr> {
        self.category.arrow(&arrow_name(images, m))
    }

    /// Right Ore condition for the opposite of the full category of finite
    /// ordinals, on every cospan whose objects lie in this truncation.
    ///
    /// A cospan `a → c ← b` in the opposite is a span `f: c → a`, `g: c → b`
    /// of injections. The amalgam of `a` and `b` over `c` (size
    /// `a + b - c`, possibly above `N`) gives `h`, `k` with `h ∘ f = k ∘ g`;
    /// each square is checked by composing the maps.
    pub fn right_ore(&self) -> Result<(), OreFailure> {
        let cat = &self.category;
        for c in cat.objects() {
            for &f in cat.arrows_from(c) {
                for &g in cat.arrows_from(c) {
                    let (a, b) = (self.size(cat.cod(f)), self.size(cat.cod(g)));
                    let (_, h, k) = amalgamate(self.images(f), a, self.images(g), b);
                    let hf: Vec<usize> = self.images(f).iter().map(|&i| h[i]).collect();
                    let kg: Vec<usize> = self.images(g).iter().map(|&i| k[i]).collect();
                    let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
                    if hf != kg || !increasing(&h) || !increasing(&k) {
                        return Err(OreFailure { left: f, right: g });
                    }
                }
            }
        }
        Ok(())
    }

    /// All nonempty cosieves, as a cover table on the opposite category.
    ///
    /// This is the restriction of the atomic cotopology to the truncation. It
    /// fails the stability axiom for `N ≥ 2` because amalgams leave the
    /// truncation, so it is meant for bounded lifting checks only.
    pub fn atomic_cotopology(&self) -> Topology {
        nonempty_covers(&self.category.opposite())
    }
}

/// Arrows whose lifting property spells out one axiom of dense linear orders
/// without endpoints: `@1` (non-empty), `02@3` (dense), `2@3` (no least
/// element) and `0@3` (no greatest element). Arrows outside the truncation
/// are omitted.
pub fn axiom_arrows(site: &OrdSite) -> Vec<(&'static str, Arr)> {
    let named: [(&str, &[usize], usize); 4] = [
        ("non-empty", &[], 1),
        ("dense", &[0, 2], 3),
        ("no-least", &[2], 3),
        ("no-greatest", &[0], 3),
    ];
    named
        .iter()
        .filter_map(|&(name, img, m)| site.arrow(img, m).map(|a| (name, a)))
        .collect()
}

/// Amalgam of two injections `f: c → a`, `g: c → b`: returns `(d, h, k)`
/// with `h: a → d`, `k: b → d` strictly increasing and `h ∘ f = k ∘ g`.
/// Within each gap between shared points, the `a`-elements come first.
pub fn amalgamate(f: &[usize], a: usize, g: &[usize], b: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let c = f.len();
    let mut h = alloc::vec![0; a];
    let mut k = alloc::vec![0; b];
    let mut next = 0;
    let (mut ia, mut ib) = (0, 0);
    for i in 0..=c {
        let (fa, gb) = if i < c { (f[i], g[i]) } else { (a, b) };
        while ia < fa {
            h[ia] = next;
            next += 1;
            ia += 1;
        }
        while ib < gb {
            k[ib] = next;
            next += 1;
            ib += 1;
        }
        if i < c {
            h[ia] = next;
            k[ib] = next;
            next += 1;
            ia += 1;
            ib += 1;
        }
    }
    (next, h, k)
}

/// An `m`-tuple with `u[images[i]] = y[i]` and every other slot empty.
fn place_anchors<T: Clone>(images: &[usize], m: usize, y: &[T]) -> Vec<Option<T>> {
    let mut u = alloc::vec![None; m];
    for (i, &p) in images.iter().enumerate() {
        u[p] = Some(y[i].clone());
    }
    u
}

/// Exact lift over the rationals.
///
/// Anchors `u[f(i)] = y[i]` are kept; slots between anchors `a < b` get
/// iterated midpoints `(a+b)/2, ((a+b)/2 + b)/2, …`; slots below the least
/// anchor `a` get `a-1, a-2, …` outward; slots above the greatest anchor `b`
/// get `b+1, b+2, …`. With no anchors the first slot is `0`.
pub fn q_lift(images: &[usize], m: usize, y: &[Rational]) -> Vec<Rational> {
    let mut u = place_anchors(images, m, y);
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    if images.is_empty() && m > 0 {
        u[0] = Some(Rational::from_integer(0));
    }
    let first = u.iter().position(Option::is_some);
    if let Some(p) = first {
        let mut v = u[p].expect("anchor");
        for slot in u[..p].iter_mut().rev() {
            v -= one;
            *slot = Some(v);
        }
    }
    let mut i = first.unwrap_or(m);
    while i < m {
        let a = u[i].expect("anchor");
        let next = (i + 1..m).find(|&j| u[j].is_some());
        match next {
            Some(j) => {
                let b = u[j].expect("anchor");
                let mut lo = a;
                for slot in u[i + 1..j].iter_mut() {
                    lo = (lo + b) / two;
                    *slot = Some(lo);
                }
                i = j;
            }
            None => {
                let mut v = a;
                for slot in u[i + 1..].iter_mut() {
                    v += one;
                    *slot = Some(v);
                }
                i = m;
            }
        }
    }
    u.into_iter().map(|x| x.expect("filled")).collect()
}

/// Lift inside the integers window `[lo, hi]` (unbounded sides as `None`).
///
/// New slots are packed next to the anchors (`a+1, a+2, …` inside a gap,
/// `a-1, a-2, …` below, `b+1, …` above); packing is the tightest possible
/// placement, so `None` certifies that no lift exists.
fn discrete_lift(images: &[usize], m: usize, y: &[i64], lo: Option<i64>, hi: Option<i64>) -> Option<Vec<i64>> {
    if m == 0 {
        return Some(Vec::new());
    }
    let mut u = place_anchors(images, m, y);
    if images.is_empty() {
        u[0] = Some(lo.unwrap_or(0));
    }
    let first = u.iter().position(Option::is_some)?;
    let mut v = u[first]?;
    for slot in u[..first].iter_mut().rev() {
        v -= 1;
        *slot = Some(v);
    }
    let mut prev = u[first]?;
    for slot in u[first + 1..].iter_mut() {
        match *slot {
            Some(b) => {
                if b <= prev {
                    return None;
                }
                prev = b;
            }
            None => {
                prev += 1;
                *slot = Some(prev);
            }
        }
    }
    let out: Vec<i64> = u.into_iter().map(|x| x.expect("filled")).collect();
    let in_range = out
        .iter()
        .all(|&x| lo.is_none_or(|l| x >= l) && hi.is_none_or(|h| x <= h));
    in_range.then_some(out)
}

/// Lift over the integers; `None` certifies absence.
pub fn z_lift(images: &[usize], m: usize, y: &[i64]) -> Option<Vec<i64>> {
    discrete_lift(images, m, y, None, None)
}

/// Lift over the chain `{0 < … < k-1}`; `None` certifies absence.
pub fn chain_lift(k: usize, images: &[usize], m: usize, y: &[i64]) -> Option<Vec<i64>> {
    if m > k {
        return None;
    }
    discrete_lift(images, m, y, Some(0), Some(k as i64 - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Rationals,
    Integers,
    /// `{0 < … < k-1}`.
    Chain(usize),
}

impl Carrier {
    pub fn name(self) -> String {
        match self {
            Carrier::Rationals => "Q".into(),
            Carrier::Integers => "Z".into(),
            Carrier::Chain(k) => format!("chain:{k}"),
        }
    }

    pub fn parse(s: &str) -> Option<Carrier> {
        match s {
            "Q" => Some(Carrier::Rationals),
            "Z" => Some(Carrier::Integers),
            _ => s.strip_prefix("chain:")?.parse().ok().map(Carrier::Chain),
        }
    }
}

/// Grid used to sample rational tuples.
const Q_GRID: [(i64, i64); 8] = [(-2, 1), (-1, 1), (0, 1), (1, 3), (1, 2), (1, 1), (3, 2), (2, 1)];

/// A linear order viewed as a model oracle over `Ord_fm(N)`.
#[derive(Clone, Debug)]
pub struct LinearOrderOracle {
    site: OrdSite,
    carrier: Carrier,
}

impl LinearOrderOracle {
    pub fn new(site: OrdSite, carrier: Carrier) -> Self {
        LinearOrderOracle { site, carrier }
    }

    pub fn ord_site(&self) -> &OrdSite {
        &self.site
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    fn grid(&self, n: usize) -> Vec<Rational> {
        match self.carrier {
            Carrier::Rationals => Q_GRID.iter().map(|&(p, q)| Rational::new(p, q)).collect(),
            Carrier::Integers => (0..=n as i64 + 1).map(Rational::from_integer).collect(),
            Carrier::Chain(k) => (0..k as i64).map(Rational::from_integer).collect(),
        }
    }

    fn tuples(&self, n: usize) -> Vec<Vec<Rational>> {
        let grid = self.grid(n);
        increasing_tuples(n, grid.len())
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| grid[i]).collect())
            .collect()
    }
}

fn as_integers(y: &[Rational]) -> Option<Vec<i64>> {
    y.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect()
}

/// `(0,1/2,1)`.
pub fn format_tuple(u: &[Rational]) -> String {
    let parts: Vec<String> = u.iter().map(|r| format!("{r}")).collect();
    format!("({})", parts.join(","))
}

impl ModelOracle for LinearOrderOracle {
    type Elem = Vec<Rational>;

    fn site(&self) -> &FinCat {
        &self.site.category
    }

    fn samples(&self, c: Obj) -> Vec<Vec<Rational>> {
        self.tuples(self.site.size(c))
    }

    fn hom_set(&self, c: Obj) -> Option<Vec<Vec<Rational>>> {
        matches!(self.carrier, Carrier::Chain(_)).then(|| self.tuples(self.site.size(c)))
    }

    fn contains(&self, c: Obj, u: &Vec<Rational>) -> bool {
        let shape = u.len() == self.site.size(c) && u.windows(2).all(|w| w[0] < w[1]);
        shape
            && match self.carrier {
                Carrier::Rationals => true,
                Carrier::Integers => u.iter().all(Ratio::is_integer),
                Carrier::Chain(k) => u
                    .iter()
                    .all(|r| r.is_integer() && *r >= Rational::from_integer(0) && r.to_integer() < k as i64),
            }
    }

    fn act(&self, f: Arr, u: &Vec<Rational>) -> Vec<Rational> {
        self.site.images(f).iter().map(|&i| u[i]).collect()
    }

    fn lift(&self, f: Arr, y: &Vec<Rational>) -> Lift<Vec<Rational>> {
        let images = self.site.images(f);
        let m = self.site.size(self.site.category.cod(f));
        let to_q = |v: Vec<i64>| v.into_iter().map(Rational::from_integer).collect();
        match self.carrier {
            Carrier::Rationals => Lift::Found(q_lift(images, m, y)),
            Carrier::Integers => match as_integers(y).and_then(|y| z_lift(images, m, &y)) {
                Some(u) => Lift::Found(to_q(u)),
                None => Lift::Absent,
            },
            Carrier::Chain(k) => match as_integers(y).and_then(|y| chain_lift(k, images, m, &y)) {
                Some(u) => Lift::Found(to_q(u)),
                None => Lift::Absent,
            },
        }
    }

    fn element_id(&self, u: &Vec<Rational>) -> String {
        let parts: Vec<String> = u.iter().map(|r| format!("{r}")).collect();
        format!("({})", parts.join("|"))
    }

    fn right_ore(&self) -> Result<(), OreFailure> {
        self.site.right_ore()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn hom_counts_are_binomial() {
        let s = ord_site(3, DEFAULT_ORD_GUARD).unwrap();
        let c = s.category();
        let o = |k| s.object_of_size(k).unwrap();
        assert_eq!(c.hom(o(2), o(3)).len(), 3);
        let s2 = ord_site(2, DEFAULT_ORD_GUARD).unwrap();
        let o2 = |k| s2.object_of_size(k).unwrap();
        assert_eq!(s2.category().hom(o2(1), o2(2)).len(), 2);
        assert_eq!(s2.category().hom(o2(2), o2(2)).len(), 1);
    }

    #[test]
    fn guards() {
        assert_eq!(ord_site(0, 7).unwrap_err(), DloError::ZeroSize);
        assert_eq!(ord_site(8, 7).unwrap_err(), DloError::TooLarge { n: 8, limit: 7 });
    }

    #[test]
    fn q_lift_examples() {
        let y = vec![q(3, 1), q(5, 1)];
        assert_eq!(q_lift(&[0, 1], 2, &y), y);
        assert_eq!(q_lift(&[0, 2], 3, &[q(0, 1), q(1, 1)]), vec![q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(q_lift(&[], 1, &[]), vec![q(0, 1)]);
        assert_eq!(
            q_lift(&[1, 4], 6, &[q(0, 1), q(1, 1)]),
            vec![q(-1, 1), q(0, 1), q(1, 2), q(3, 4), q(1, 1), q(2, 1)]
        );
    }

    #[test]
    fn z_and_chain_lift_examples() {
        assert_eq!(z_lift(&[0, 2], 3, &[0, 1]), None);
        assert_eq!(z_lift(&[0], 2, &[5]), Some(vec![5, 6]));
        assert_eq!(z_lift(&[1], 2, &[5]), Some(vec![4, 5]));
        assert_eq!(chain_lift(1, &[1], 3, &[0]), None);
        assert_eq!(chain_lift(3, &[1], 3, &[1]), Some(vec![0, 1, 2]));
        assert_eq!(chain_lift(3, &[0], 2, &[2]), None);
    }

    #[test]
    fn truncated_opposite_fails_literal_ore_but_amalgams_exist() {
        let s = ord_site(2, DEFAULT_ORD_GUARD).unwrap();
        let op = s.category().opposite();
        let w = op.right_ore().unwrap_err();
        // The failing cospan is a pair of points of 2 that no injection of 2
        // can identify; the amalgam needs 3 elements.
        let (f, g) = (w.left, w.right);
        let (d, _, _) = amalgamate(s.images(f), 2, s.images(g), 2);
        assert!(d > 2);
        assert!(s.right_ore().is_ok());
    }

    #[test]
    fn amalgam_of_extreme_points() {
        let (d, h, k) = amalgamate(&[0], 3, &[2], 3);
        assert_eq!(d, 5);
        assert_eq!(h[0], k[2]);
    }

    #[test]
    fn carrier_names_round_trip() {
        for c in [Carrier::Rationals, Carrier::Integers, Carrier::Chain(4)] {
            assert_eq!(Carrier::parse(&c.name()), Some(c));
        }
        assert_eq!(Carrier::parse("chain:x"), None);
    }
}
