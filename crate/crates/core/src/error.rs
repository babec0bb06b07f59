use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed state document: {0}")]
    Malformed(String),

    #[error("expected 16 amplitudes, found {0}")]
    WrongLength(usize),

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("invalid qubit subset {0:?}: must be a nonempty proper subset of {{1,2,3,4}}")]
    InvalidCut(Vec<u8>),

    #[error("bipartition {0} is not in canonical form")]
    NonCanonicalCut(String),

    #[error(
        "density matrix purity {purity} lies outside [{lower}, 1] by more than the clamp tolerance"
    )]
    InvalidDensity { purity: f64, lower: f64 },

    #[error(
        "degenerate base triangle (Heron radicand {radicand:e}, smallest triangle slack {slack:e})"
    )]
    DegenerateBase { radicand: f64, slack: f64 },

    #[error("edge lengths do not form a tetrahedron (Cayley-Menger determinant {cm_det:e})")]
    Infeasible { cm_det: f64 },

    #[error("volume radicand {0:e} is negative beyond tolerance")]
    NegativeRadicand(f64),

    #[error("finite-difference stencil left the feasible region on edge {edge}")]
    InfeasibleStencil { edge: usize },

    #[error("eps {0} outside (0, 1e-3]")]
    EpsOutOfRange(f64),

    #[error("family {family} takes {expected} parameter(s), got {got}")]
    Arity {
        family: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("unknown benchmark state {0:?}")]
    UnknownBenchmark(String),

    #[error("invalid range {0:?}: expected start:stop:step with step > 0 and start <= stop")]
    InvalidRange(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
