//! Gap quantities, hardness indices, predicted error exponents and the
//! adversarial instance families.

mod classes;
mod exponents;
mod report;

pub use classes::{feasibility_class, risky_class, risky_class_gap};
pub use exponents::{
    predict_exponents, ExponentPrediction, FEASIBILITY_CLASS_CONSTANT, LOWER_BOUND_CONSTANT,
    LOWER_BOUND_PREFACTOR, RISKY_CLASS_CONSTANT,
};
pub use report::{compute_hardness, HardnessReport};
pub use report::json_number;
