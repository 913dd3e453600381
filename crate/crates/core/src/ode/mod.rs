//! Linear differential equations with polynomial coefficients and the
//! procedures that build them for factorial series.

mod catalog;
mod construct;
mod lagrangian;
mod linear;
mod nonlinear;
mod solution_space;
mod w1;

pub use catalog::{
    catalog, catalog_specs, printed_3_13, printed_3_14, printed_3_15, printed_3_16, printed_3_17, printed_3_18,
    printed_3_19, printed_3_20, printed_6_4, CatalogEntry, CatalogEquation, CatalogParams, CatalogSpec, Source,
};
pub use construct::{
    combine, first_order_for, first_to_second, multiply_by_linear_factor, prop1_iterate, prop1_step, prop2_shift,
};
pub use lagrangian::{LogCoefficient, QuadraticLagrangian};
pub use linear::{FirstOrderForm, FormalCheck, LinearODE};
pub use nonlinear::{nonlinear_product_check, ProductCheck};
pub use solution_space::{formal_solution_space, Recurrence, SolutionSpace};
pub use w1::{in_w1_region, verify_w1, verify_w1_formal, w1_in_inverse_variable, w1_residual_at, W1Report};
