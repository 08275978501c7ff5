//! Skeletal calculus for fusion categories.
//!
//! The crate is organised around concrete coefficient data rather than
//! abstract categories: a [`fusion::FusionRing`] is an integer tensor, a
//! [`skel::SkeletalData`] is a fusion ring plus F/R symbols, and everything
//! above that (algebras, Hopf monads, condensations, bimodule products) is
//! linear algebra over hom-space bases enumerated from labelled trees.
//!
//! Modules:
//!
//! * [`fusion`] — fusion rings, validation, product decomposition.
//! * [`catalog`] — the built-in rings (group rings, Fib and its relatives,
//!   doubled theories, gauged `SO(8)_1`) and doubles of finite groups.
//! * [`skel`] — F/R symbol data, pentagon/hexagon checks, twists.
//! * [`engine`] — the labelled-tree morphism calculus used everywhere.
//! * [`hopf`] — categorical Hopf algebras: axiom checks, built-in structures,
//!   integrals, antipode order, algebra decomposition.
//! * [`solver`] — multi-start damped Newton search for Hopf structures on a
//!   fixed algebra.
//! * [`modules`] — modules over a categorical Hopf algebra and their fusion.
//! * [`monad`] — skeletal tensor-functor and Hopf-monad checkers plus the
//!   constructors from group actions and Hopf algebras.
//! * [`cond`] — condensable-algebra screening and the Frobenius-reciprocity
//!   condensation engine.
//! * [`abelian`] — module categories over `Vec_G` for finite abelian `G` and
//!   their bimodule tensor products.
//! * [`pointed`] — pointed modular categories from quadratic forms and the
//!   simplicity classification.

pub mod abelian;
pub mod catalog;
pub mod cond;
pub mod engine;
pub mod fusion;
pub mod groups;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod modules;
pub mod monad;
pub mod num;
pub mod pointed;
pub mod report;
pub mod skel;
pub mod solver;

pub use fusion::{FusionRing, ObjectVector};
pub use num::C64;
pub use report::ValidationReport;

/// Default numeric tolerance for residual-based equality checks.
pub const DEFAULT_TOL: f64 = 1e-9;
