//! Special functions: gamma, Pochhammer, Gauss `₂F₁` on the cut plane,
//! generalized `ₚF_q` series, and the transformation identities used by the
//! closed forms in [`crate::stieltjes`].

mod continuation;
mod euler;
mod gamma;
mod hypergeometric;
mod transforms;

pub use euler::euler_2f1_oracle;
pub use gamma::{gamma, gamma_ratio, gamma_real, ln_gamma, pochhammer, pochhammer_real, rgamma};
pub use hypergeometric::{gauss_2f1, gauss_2f1_traced, hyper_pfq, hyper_pfq_real, EvaluationPath, SeriesPolicy};
pub use transforms::{
    closed_id1, closed_id2, transform_linear, transform_quadratic_0, transform_quadratic_1,
    IdentityResidual,
};

