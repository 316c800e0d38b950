use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(&'static str),

    #[error("coupling range {range} out of bounds (max {max}) for L = {l}")]
    RangeOutOfBounds { l: usize, range: usize, max: usize },

    #[error("size {l} exceeds the limit {max}")]
    SizeGuard { l: usize, max: usize },

    #[error("-1 is in the spectrum of T, the Cayley transform is undefined")]
    NotCayleyRepresentable,

    #[error("det T = -1, the ground state has odd parity")]
    OddParity,

    #[error("degenerate endpoint: det Z = 0, the polar factor is undefined")]
    DegenerateEndpoint,

    #[error("finite-difference stencil crosses a first-order transition")]
    StencilCrossesTransition,

    #[error("degenerate point: a single-particle energy vanishes")]
    DegeneratePoint,

    #[error("singular point mu = 1, gamma = 0")]
    SingularPoint,

    #[error("no interior minimum in the search window")]
    WindowError,

    #[error("outside the validity domain: {0}")]
    Domain(&'static str),

    #[error("internal consistency failure: {0}")]
    Consistency(&'static str),
}
