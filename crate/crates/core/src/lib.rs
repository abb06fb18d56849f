//! Exact computational algebra for graded artinian quotients of k[x,y,z]:
//! exact scalar fields, sparse multivariate polynomials and the divided-power
//! dual, dense exact linear algebra, degreewise ideal computations, weak and
//! strong Lefschetz deciders, Gorenstein constructions (inverse systems and
//! pfaffians of skew matrices), and finite plane geometry.

pub mod error;
pub mod field;
pub mod geometry;
pub mod gorenstein;
pub mod ideal;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod unipoly;

pub use error::{Error, Result};
pub use field::{field_arith, parse_field_spec, ArithOp, FieldElement, FieldSpec};
pub use geometry::{BaseLocusReport, CubicSystem, ProjPoint};
pub use gorenstein::{GorensteinCertificate, SkewPolyMatrix};
pub use ideal::{GradedIdeal, HVector, HVectorPredicates};
pub use lefschetz::{JordanPartition, LinearForm, Strategy, Verdict, WlpReport};
pub use linalg::ExactMatrix;
pub use poly::{contract, hessian_det, monomials_of_degree, parse_polynomial, DualForm, Monomial, Polynomial};
