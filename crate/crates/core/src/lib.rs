//! Numerical verification of harmonic and biharmonic Gauss maps of
//! hypersurfaces, with the hypercone and isoparametric catalogs.

// negated comparisons reject NaN; index loops mirror tensor notation
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod exprjet;
pub mod geometry;
pub mod roots;
pub mod biharmonic;
pub mod hypercone;
pub mod isoparametric;
