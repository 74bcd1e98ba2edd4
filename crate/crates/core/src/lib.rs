//! Exact combinatorial engine for trace moments of easy quantum groups.
//!
//! The crate computes finite-n Haar moments of products of traces of powers
//! of the fundamental representation, exactly over the rationals, along
//! with the asymptotic moment/cumulant counts by set-partition enumeration,
//! the closed-form limit laws, and Monte Carlo samplers of the classical
//! groups as an independent stochastic oracle.
//!
//! Modules:
//! - [`partitions`]: set partitions in restricted growth form, joins,
//!   kernels, the trace permutation γ and its action, lifts, Möbius values.
//! - [`categories`]: the easy quantum groups as partition-set predicates
//!   and enumerators (O, S, H, B, their free versions, the half-liberated
//!   O*, H*, the series H(s), and the colored U/H^s categories).
//! - [`weingarten`]: exact integer Gram matrices n^|p∨q|, their exact
//!   rational inverses by fraction-free elimination, and the closed double
//!   sums for finite-n trace moments.
//! - [`asymptotics`]: invariant-partition counting for moments and
//!   cumulants, closed-form limit values, moment↔cumulant inversion, limit
//!   laws, and the cycle-variable decompositions.
//! - [`montecarlo`]: reproducible samplers (orthogonal, unitary,
//!   permutation, signed/monomial, bistochastic) with empirical trace and
//!   cycle statistics, plus exhaustive exact averages for the finite groups.

pub mod caps;
pub mod error;

pub mod asymptotics;
pub mod categories;
pub mod montecarlo;
pub mod partitions;
pub mod weingarten;

pub use error::{Error, Result};

pub use asymptotics::{
    asymptotic_cumulant_count, asymptotic_moment_count, asymptotic_moment_count_words,
    classical_cumulant_from_moments, closed_form_cumulant, compound_poisson_cumulant,
    connected_invariant_count, connected_invariant_count_words, cycle_decomposition_check,
    free_cumulant_from_moments, hs_cumulant_count, law_cumulants, law_moments,
    law_star_covariance, z_cumulant_count, Law, MomentSpec,
};
pub use categories::{Category, SParam};
pub use montecarlo::{
    empirical_cycle_statistics, empirical_power_traces, empirical_trace_moments,
    empirical_unitary_word_moments, exhaustive_trace_moment, Estimate, SampleBatch, SampleGroup,
};
pub use partitions::{
    enumerate_partitions, Color, ColorString, Partition, Permutation, TracePermutation,
};
pub use weingarten::{
    build_table, rat_int, rat_string, trace_moment_exact, unitary_trace_moment_exact,
    word_moment_exact, Rat, WeingartenTable,
};
