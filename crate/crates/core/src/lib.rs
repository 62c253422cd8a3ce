//! Combinatorics of finite Weyl groups and the invariants attached to
//! double-coset strata: Bruhat order, weighted double-coset posets,
//! Kazhdan-Lusztig polynomials and Lusztig's a-function, homological
//! dimension formulas for stratified blocks, and the essential-order
//! engine for abstract multiplicity data.

pub mod bruhat;
pub mod cli;
pub mod cosets;
pub mod coxeter;
pub mod hecke;
pub mod homdim;
pub mod stratorder;
pub mod wposet;
