//! Calculus on spaces of finite point configurations.
//!
//! The library builds, over a ground space `X` carrying an intensity
//! measure, the commutative star-convolution algebra of finitely
//! supported functions on finite configurations, the K-transform that
//! turns star into pointwise multiplication, the Lebesgue-Poisson
//! measure and its normalized Poisson process, and the moment Hilbert
//! space on which the multiplication operators `A(phi)` act as a
//! commuting symmetric family. The headline operation recovers the
//! joint spectral measure of that family by simultaneous
//! diagonalization and checks that it is the Poisson (in exact mode:
//! Bernoulli) measure predicted by the Laplace-transform identity.
//!
//! Two ground-space modes are supported:
//!
//! * **Exact** — a finite set of weighted atoms, weights in `(0, 1)`.
//!   Every integral is a finite subset sum and every identity can be
//!   checked to machine precision (or exactly, in rational arithmetic).
//! * **Continuous** — an axis-aligned box in `R^d` with an intensity
//!   density. Integrals go through Gauss-Legendre quadrature and the
//!   measure identities are checked statistically by Monte Carlo.

pub mod algebra;
pub mod configuration;
pub mod error;
pub mod ground;
pub mod ktransform;
pub mod measure;
pub mod moment;
pub mod process;
pub mod quad;
pub mod rng;
pub mod scalar;
pub mod spectral;

pub use algebra::{Character, ConfigFunction};
pub use configuration::{ConfigMask, FiniteConfiguration};
pub use error::{Error, Result};
pub use ground::{Atom, BoxRegion, Density, GroundSpace, TestFunction, Window};
pub use ktransform::{homomorphism_residual, k_apply, k_apply_character, k_inverse, ConfigObservable};
pub use measure::{project, LambdaTotal, LebesguePoissonMeasure};
pub use moment::{gram_matrix, GramOperatorBundle, MomentFunctional};
pub use process::{
    consistency_check, finite_mass_trend, lp_p_residual_exact, lp_p_residual_mc, Estimate,
    ProcessSampler, SampleBatch,
};
pub use rng::CounterStream;
pub use scalar::{RationalComplex, RationalComplex64, StarScalar};
pub use spectral::{
    exp_series_identity, joint_diagonalize, laplace_of_rho, SpectralReport, SpectralSettings,
};
