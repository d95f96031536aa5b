//! Modular units on X0(N): eta quotients, their divisors and leading
//! coefficients at the cusps, the rational cuspidal divisor class group,
//! and the torsion of the generalized Jacobian with cuspidal modulus.

pub mod arith;
pub mod classgroup;
pub mod curve;
pub mod error;
pub mod eta;
pub mod jacobian;
pub mod linalg;
pub mod transform;

pub use classgroup::{class_group, class_group_for_level, class_group_pq, order_matrices, ClassGroupResult, OrderMatrices};
pub use curve::{cusps, Cusp, CuspDivisor};
pub use error::{Error, Result};
pub use eta::{check_modular_function, divisor, order_at_cusp, parse_eta_quotient, EtaQuotient, LigozatReport};
pub use jacobian::{
    delta_cokernel, delta_kernel_on_cuspidal, delta_matrix, evaluate_delta_class, generalized_torsion,
    mu_contribution, pq_delta_kernel, split_injection_scope, DeltaClass, LambdaBasis, Resolution,
    SplitInjectionReport, TorsionResult,
};
pub use linalg::{AbelianGroup, IntMatrix, Integer, QmodZ, Rational};
pub use transform::{
    eta_multiplier, leading_coefficient, leading_coefficient_at, sigma_matrix, Generator, LeadingCoeff, SigmaMatrix,
    UnitPhase,
};
