//! Exact computations for Heisenberg covers of a punctured surface: homology
//! as a module over the deck group ring, intersection and Reidemeister
//! pairings, monodromy operators, and lattice certificates.

pub mod cyclotomic;
pub mod heisenberg;
pub mod intlat;
pub mod linalg;
pub mod covers;
pub mod fox;
pub mod homology;
pub mod pairing;
pub mod aring;
pub mod amodule;
pub mod monodromy;
pub mod arithmeticity;
pub mod nonnormal;
