//! Finite free `C[∂]`-modules and conformal sesquilinear maps.

mod module;
mod sesq;

pub use module::{basis_tuples, plain_value, ConfModule, ModValue, Module};
pub use sesq::{
    apply_linear, check_skew, compose_linear, identity_map, transport_left, transport_right,
    SesqMap,
};

pub(crate) use module::expect_module;
#[allow(unused_imports)]
pub(crate) use module::same_module;
