//! Exact symbolic computation of characteristic numbers for multiple-point
//! manifolds of immersions, Thom polynomials of the first two singularity
//! strata, and the rational cobordism ring of Morin maps.
//!
//! Everything runs over finite graded-ring models of manifold cohomology
//! with exact rational or mod-2 arithmetic: re-running any computation
//! reproduces bit-identical results. The library is organized around a few
//! layers:
//!
//! - [`algebra`]: graded commutative algebras with fundamental-class
//!   pairing, linear and ring maps, tensor (Kunneth) models.
//! - [`charclass`]: total Pontrjagin / Stiefel-Whitney classes, Whitney-sum
//!   calculus, and partition-indexed beta series.
//! - [`multipoint`]: characteristic numbers of r-fold point manifolds, the
//!   one-step recursion for general targets, Euler loci of generic
//!   sections, and the product theorems for multiple points.
//! - [`singularity`]: Thom polynomials of the corank-1 and corank-2 strata,
//!   suspension operators, and Cartan-type product expansions.
//! - [`morin`]: cobordism-class arithmetic, strata vectors of Morin maps,
//!   the star product, and rank formulas.
//! - [`cli`]: a declarative JSON model format, command dispatch, and exact
//!   reporting; see the `strata` binary.
//! - [`check`]: seeded randomized verification suites for every identity
//!   the engine implements.
//!
//! See the crate examples for one runnable walkthrough per capability:
//!
//! ```bash
//! cargo run --example boys_surface
//! cargo run --example k3_euler_locus
//! cargo run --example morin_ring
//! ```

pub mod algebra;
pub mod charclass;
pub mod check;
pub mod cli;
pub mod error;
pub mod morin;
pub mod multipoint;
pub mod partition;
pub mod sample;
pub mod scalar;
pub mod singularity;

pub use algebra::{tensor, AlgebraRef, Element, GradedAlgebra, LinearMap, Monomial, TensorAlgebra};
pub use charclass::{BetaSeries, BundleData, SpaceModel, TotalClass};
pub use error::{Error, Result};
pub use morin::{class_product, morin_mul, morin_rank, prim_strata, MorinClass};
pub use multipoint::{
    double_point_class, euler_locus, herbert_step, multipoint_numbers,
    product_double_points, product_immersion_multipoint, ClassDim, CobordismClass,
    GeneralMapData, ImmersionData,
};
pub use partition::Partition;
pub use scalar::{rat, FieldTag, Mod2, Rat, Scalar};
pub use singularity::{
    sigma1_product, sigma2_product, suspend, thom_sigma1, thom_sigma2, CartanExpansion, MapData,
};
