//! Exact modular classes of finite-groupoid representations up to weak homotopy.
//!
//! Everything is generic over a [`Field`] of exact scalars; [`Rational`] is the
//! arbitrary-precision default.

pub mod complexes;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod linalg;
pub mod random;
pub mod report;
pub mod reps;
pub mod scalar;

pub use complexes::{
    are_homotopic, berezinian, berezinian_class, berezinian_class_with, cohomology_dims, decompose,
    decompose_with, invertible_replacement, invertible_replacement_with, is_homotopy_equivalence,
    is_homotopy_equivalence_with, null_homotopy, verify_chain_map, verify_complex,
    BerTrivialization, BlockForm, ChainMap, ComplexFiber, Decomposition, EquivalenceCheck,
    Homotopy, Replacement, ScanOrder,
};
pub use error::{Error, ParseScalarError, Result};
pub use groupoid::{
    class_equal, coboundary, coboundary_solve_1, is_cocycle_1, Arrow, ArrowId, ClassReport,
    Cochain, ComposableTuple, FiniteGroupoid, ObjectId, Simplex,
};
pub use linalg::Matrix;
pub use report::{ValidationReport, Violation};
pub use reps::{
    abs_plus_function, characteristic_function, cohomology_representation, det_representation,
    induced_ber_rep, induced_ber_rep_with, modular_class_ruth, modular_class_vector,
    regular_factorization_check, tensor, verify_certificate, verify_line_rep, verify_ruth,
    verify_vector_rep, LineRep, RepUpToWeakHomotopy, RuthReport, Trivialization, VectorRep,
};
pub use scalar::{format_scalar, parse_scalar, Field};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalComplex = ComplexFiber<Rational>;
pub type RationalChainMap = ChainMap<Rational>;
pub type RationalCochain = Cochain<Rational>;
