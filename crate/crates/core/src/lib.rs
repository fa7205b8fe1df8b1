//! Online coloring of interval graphs with exact arithmetic.
//!
//! The centerpiece is the Kierstead-Trotter online colorer
//! ([`colorers::KiersteadTrotter`]), which on unit intervals never uses more
//! than `3ω - 3` colors, together with the instance family on which it uses
//! exactly that many ([`generators::gen_tight`]). First-Fit and an
//! offline optimum serve as baselines; [`verify`] checks results against
//! the applicable bounds and against brute-force oracles.

pub mod arith;
pub mod clique;
pub mod colorers;
pub mod experiment;
pub mod generators;
pub mod model;
pub mod verify;

pub use arith::Rational;
pub use clique::{omega, omega_containing, CliqueWitness};
pub use colorers::{
    offline_optimal, run, run_kt_traced, FirstFit, KiersteadTrotter, OnlineColorer, TraceRecord,
};
pub use generators::{gen_random_general, gen_random_unit, gen_tight, TightParams};
pub use model::{Algorithm, Assignment, ColoringResult, Instance, Interval};
pub use verify::{check, check_level2_matching, chromatic_brute, VerificationReport};
