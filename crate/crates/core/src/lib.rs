pub mod braid;
pub mod curves;
pub mod error;
pub mod laurent;
pub mod libgober;
pub mod polymatrix;
pub mod representations;

pub use braid::{BraidWord, FreeGroupWord};
pub use curves::{
    analyze, one_fiber_monodromy, partial_fiber_monodromy, singular_fibers, CompletelyReducibleCurve, CurveReport,
    FiberReport, FullTwistFamily, RationalPoly, SingularFiberInfo,
};
pub use error::{Error, Result};
pub use laurent::{Exponent, LaurentPoly};
pub use libgober::{
    alexander_polynomial, krammer_polynomial, krammer_polynomial_capped, libgober_matrix, InvariantResult, MonodromyList,
};
pub use polymatrix::{MinorsGcd, PolyMatrix};
pub use representations::{
    burau_reduced_generator, burau_word, essential_eigenvector, krammer_generator, krammer_word, nontrivial_column,
    EigenSlot, EssentialEigenvector, KrammerBasis,
};
