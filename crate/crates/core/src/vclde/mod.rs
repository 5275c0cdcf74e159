//! Linear difference equations with variable coefficients,
//!
//! ```text
//! y_t = phi_1(t) y_{t-1} + ... + phi_p(t) y_{t-p} + v_t,
//! ```
//!
//! solved through banded Hessenbergians. With initial values
//! `y_{s-p+1}, ..., y_s` the solution is
//!
//! ```text
//! y_t = sum_{m=1}^{p} sum_{j=1}^{p-m+1} phi_{m+j-1}(s+j) H(t,s+j) y_{s-m+1}
//!     + sum_{j=1}^{t-s} H(t,s+j) v_{s+j}
//! ```
//!
//! where the Green's function `H(t,s)` is the determinant of the order
//! `t-s` banded matrix `Phi_{t,s}` with entries `phi_{i-j+1}(s+i)` and `-1`
//! on the superdiagonal.

mod fundamental;
mod model;
mod solution;
mod verify;

pub use fundamental::{
    build_phi_matrix, casorati, casoratian, companion, companion_product, green, green_by,
    green_companion, green_leibnizian, green_nested_sum, xi, xi_via_green, GreenMethod,
};
pub use model::{
    model_from_json, CoefficientModel, ConstantModel, Domain, FnModel, PeriodicModel, SharedModel,
    SymbolicModel, TableModel,
};
pub use solution::{
    general_solution, general_solution_kittappa, general_solution_leibnizian,
    general_solution_nested, homogeneous_solution, homogeneous_solution_green,
    particular_solution, particular_solution_det, recursion_oracle, solve_by, Forcing,
    SolutionProblem, SolveMethod, SYMBOLIC_SPAN_LIMIT,
};
pub use verify::{run_verification, CheckOutcome, Corruption, VerifyReport};
