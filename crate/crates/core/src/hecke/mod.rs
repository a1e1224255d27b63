//! The affine Hecke algebra of type A through its polynomial representation.

pub mod cyclotomic;
pub mod example;
pub mod poly;
pub mod presentation;

pub use cyclotomic::CyclotomicScalar;
pub use example::{standard_module_params, verify_example_6_2, ExampleReport, StandardModuleSpec};
pub use poly::{act_t, act_x, MultiLaurent};
pub use presentation::{
    sigma_twist, verify_bernstein, verify_presentation, Gen, HeckeReport, OpExpr,
};
