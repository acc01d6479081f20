//! Cayley noise operators and the statements built on them.
//!
//! Every operator averages over a noise distribution, `(M A)(f) = E A(f + eta)`,
//! so each character is an eigenvector. Eigenvalues are read off the Fourier
//! transform of the noise distribution, and operators can be applied either by
//! direct summation or through the spectrum.

mod lift;
mod noise;
mod op;
mod pipeline;
mod verify;

pub use lift::{
    hypercontractivity_ratio, lift, moment_check, moment_monte_carlo, random_sparse_spectrum,
    HypercontractivityReport, MomentReport, MonteCarloMoment,
};
pub use noise::{affine_product, independent_rows, sample_noise, NoiseDist, OpKind};
pub use op::{eigenvalue_mc, ApplyMode, CayleyOp, EigenEstimate};
pub use pipeline::{
    key_lemma_pipeline, noise_interpolation_check, pipeline_t, random_unit_degree_one, xi,
    xi_expectations, xi_gap_probe, xi_mean, InterpolationReport, PipelineOutput, PipelineReport,
    PipelineSide, XiReport,
};
pub use verify::{
    lambda_full, lambda_independent, verify_eigval_S, verify_eigval_T, EigvalSReport, EigvalSRow,
    EigvalTReport, EigvalTRow,
};
