//! Invertible polynomials in five variables: weights, Kreuzer-Skarke atoms,
//! Milnor-Orlik link invariants, Berglund-Hubsch duals, and the local moduli
//! dimension of the associated Sasaki-Einstein links, counted exactly.

pub mod atoms;
pub mod error;
pub mod families;
pub mod latticecount;
pub mod linkinv;
pub mod moduli;
pub mod pipeline;
pub mod polymodel;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::ExactInt;

pub use atoms::{
    admits_type, admits_type_any_order, classify_shape, cycle_weights_from_exponents, decompose_atoms,
    extract_split, Atom, AtomDecomposition, ShapeClass, ShapeTag, StructuredSplit,
};
pub use latticecount::{enumerate_monomials, h0, h0_dp, split_counts, sum_h0_weights, MonomialBasis};
pub use linkinv::{
    alexander_divisor, alpha_beta, betti_b3, is_qhs, link_invariants, milnor_number, torsion_order, uv_pairs,
    CycloDivisor, LinkInvariants, Torsion,
};
pub use moduli::{
    aut_dim_criterion, bh_dual_weights, bh_transpose, canonicalize, closed_form_mu, moduli_dimension,
    moduli_report, twin_check, AutDim, ModuliReport, TwinVerdict,
};
pub use polymodel::{
    parse_poly, solve_weights, solve_weights_in, well_formed, ExponentMatrix, PolySpec, WeightSystem, WeightedPoly,
};

/// Divisor with arbitrary-precision coefficients; never overflows.
pub type Divisor = CycloDivisor<num_bigint::BigInt>;
/// Divisor over `i128`; faster, fine while degrees stay below about 10^6.
pub type FastDivisor = CycloDivisor<i128>;
pub type AlphaBeta = linkinv::AlphaBeta<num_bigint::BigInt>;
pub type Rational = num_rational::Ratio<num_bigint::BigInt>;
