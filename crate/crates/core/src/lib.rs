//! Exact-arithmetic constructions and verification for the infinitesimal
//! Newton-Okounkov bodies of box-product polarizations on products of
//! curves.
//!
//! The crate is organized around one pipeline:
//!
//! - [`geometry`] is the exact rational convex-polytope engine (hulls,
//!   halfspace intersections, volumes, slices) on which everything rests;
//! - [`toric`] evaluates the slice-volume quasi-polynomial of the divisors
//!   on the blow-up of projective space at the coordinate points, its branch
//!   points, and the volume integral;
//! - [`poly`] and [`valuation`] provide sparse homogeneous polynomials,
//!   linear flags, the iterated-restriction flag valuation, point
//!   multiplicities, and slice admissibility;
//! - [`sections`] solves for witness sections whose valuations certify body
//!   vertices, and emits replayable membership certificates;
//! - [`bodies`] builds the closed-form candidate bodies (simplex, trapezoid,
//!   nine-point threefold) and cross-verifies volumes, slices, certificates,
//!   and projections against all of the above.
//!
//! All arithmetic is exact rational: every identity checked anywhere in the
//! crate is an equality, never a tolerance. All values are immutable after
//! construction and all operations are pure, so everything can be called
//! concurrently; seeded generators are owned by the caller.

pub mod bodies;
pub mod error;
pub mod export;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod sections;
pub mod toric;
pub mod valuation;

pub use bodies::{
    default_samples, is_pseff_blowup, is_pseff_product, simplex_body, threefold_body,
    threefold_decomposition, trapezoid_body, verify_body, width, BodyKind, BoxProductClass,
    CandidateBody, VerifyReport,
};
pub use error::{Error, Result};
pub use geometry::{hull, intersect_halfspaces, Halfspace, QPolytope, QVector};
pub use linalg::{solve_linear, QMatrix, SolveReport};
pub use poly::HomoPoly;
pub use rat::{parse_rat, rat, rat_int, Rat};
pub use sections::{
    construct_qd, psi_matrix, psi_matrix_seeded, sample_threefold_frame, threefold_witnesses,
    weighted_flag_valuation, LambdaSystem, MembershipCertificate, PsiMatrix, ThreefoldFrame,
};
pub use toric::{
    box_slab_volume, branch_points, slice_volume_csv, slice_volume_table, volume_integral,
    BlowupFan, ToricSliceDivisor,
};
pub use valuation::{
    admissible_in_slice, flag_valuation, mult_at_point, sample_flag, seeded_rng, Admissibility,
    LinearFlag, ProjPoint, ValuationVector,
};
