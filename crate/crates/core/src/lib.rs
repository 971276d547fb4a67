/*! Finite-site computations.

`site-forge-core` works with categories given as explicit composition tables
and decides, by exhaustive enumeration, questions about the Grothendieck
topologies they carry:

* [`fincat`]: validated finite categories, opposites, functors, idempotents
  and the right Ore condition.
* [`sieve`]: sieve closure, pullback and the correspondence between sieves in
  a category and in its Karoubi envelope.
* [`topology`]: covering-sieve tables, the three Grothendieck axioms, the
  trivial/dense/atomic topologies and a brute-force enumerator.
* [`karoubi`]: the idempotent-splitting completion with its embedding and
  retracts.
* [`transfer`]: transport of a topology along the embedding into the
  completion, together with checks that the result is the unique topology
  inducing the original one.
* [`flatfun`]: `Set`-valued functors, the Yoneda bijection, categories of
  elements, filteredness, flatness and continuity.
* [`homogeneity`]: the lifting criterion for homogeneous models against
  pluggable model oracles.
* [`dlo`]: finite ordinals with order-preserving injections and linear-order
  oracles over the rationals, the integers and finite chains.

The crate is `no_std` and needs only `alloc`.
*/

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

mod bits;

pub mod dlo;
pub mod fincat;
pub mod flatfun;
pub mod homogeneity;
pub mod karoubi;
pub mod sieve;
pub mod topology;
pub mod transfer;

pub use bits::ArrowSet;
pub use fincat::{Arr, CategoryError, FinCat, FinFunctor, Obj, RawCategory};
pub use sieve::Sieve;
pub use topology::{Topology, TopologyKind};
