//! Exact cocycle calculus for equivariant torus duality over finite groups.
//!
//! Everything is computed over ℚ/ℤ with exact rational arithmetic: circle
//! values are additive rationals in `[0,1)`, torus points are vectors of
//! them, and all cohomological identities hold bit-exactly rather than up
//! to floating-point tolerance.
//!
//! The crate is organised in layers:
//!
//! * [`rational`] — circle values, torus points, integer characters and the
//!   dual pairings between them;
//! * [`group`] — finite groups as multiplication tables, homomorphisms into
//!   tori and the integer 2-cocycle measuring the failure of such a
//!   homomorphism to lift;
//! * [`snf`] — dense integer matrices, Smith normal form and exact linear
//!   solvers over ℤ and ℚ/ℤ;
//! * [`cohomology`] — normalized group cochains for circle-plus-character
//!   modules, the boundary operator, coboundary solving with witnesses and
//!   invariant factors of cohomology groups;
//! * [`duality`] — standard-form dynamical cocycles, the duality map and
//!   the cohomologous test;
//! * [`triple`] — obstruction classes, topological triples of a given
//!   order, torsor structure, order-change maps and the bridges between
//!   dynamical and topological data;
//! * [`codec`] — JSON document schemas for groups, homomorphisms, cocycles
//!   and triples;
//! * [`sample`] — deterministic, seeded generators used by the self-test
//!   suite and the randomized properties.

pub mod codec;
pub mod cohomology;
pub mod duality;
pub mod group;
pub mod rational;
pub mod sample;
pub mod snf;
pub mod triple;

pub use codec::{CodecError, DynDoc, GroupSpec, HomSpec, Manifest, TripleDoc, WitnessDoc};
pub use cohomology::{
    cohomology_group, is_cocycle, schur_multiplier, solve_coboundary, Cochain, CochainValue,
    CohomologyGroup, EngineError, UnipotentModule,
};
pub use duality::{
    conjugate, dual_hom, dualize, is_cohomologous_dyn, mackey_vanishes, tensor, validate_dyn,
    DualityError, DynCocycle, DynWitness, MackeyObstruction,
};
pub use group::{bockstein, product_cyclic, FiniteGroup, GroupError, Side, TorusHom};
pub use rational::{
    pair, pair_lift, reduce_mod1, section_lift, ArithError, QVec, QmodZ, QmodZVec, Rat, ZVec,
};
pub use triple::{
    beta_eval, connecting_c, cup3, cup3_mirror, dyn_to_triple, exists_triple, gamma_table,
    is_strict, l_star, lhat_star, order_change, poincare_pullback, sqcup, strictify, torsor_action,
    triple_difference, triple_to_dyn, triple_to_dyn_dual, triples_equivalent, validate_triple,
    BiCocycle, PsiPart, TopTriple, TripleError, TripleWitness,
};
