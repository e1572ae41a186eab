//! Exact q-series for MacMahon-type divisor sums and their relatives:
//! nested sums, Eisenstein decompositions, Appell-function expansions,
//! complex-valued completion checks and congruence scans.

pub mod appell;
pub mod congruence;
pub mod eisenstein;
pub mod exactnum;
pub mod macmahon;
pub mod numerics;
pub mod partitions;
pub mod quasishuffle;
pub mod series;

use exactnum::Rat;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("incompatible prefactors q^{} and q^{}", .0 .0, .0 .1)]
    Prefactor(Box<(Rat, Rat)>),
    #[error("series is not invertible")]
    NotInvertible,
    #[error("exponential needs a vanishing constant term")]
    ExpConstantTerm,
    #[error("{0}")]
    Domain(String),
}
