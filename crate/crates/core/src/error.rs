use crate::int::Int;
use crate::ring::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mixed rings: {left} and {right}")]
    MixedRings { left: Ring, right: Ring },

    #[error("modulus {0} is out of range (need 2 <= n <= 2^31)")]
    InvalidModulus(u64),

    #[error("modulus {modulus} exceeds the exhaustive-search bound {max}")]
    ModulusTooLarge { modulus: u64, max: u64 },

    #[error("malformed matrix literal at byte {position}: {message}")]
    ParseMatrix { message: String, position: usize },

    #[error("matrix {0} is not unimodular")]
    NotUnimodular(String),

    #[error("matrix {0} is not a unit")]
    NotUnit(String),

    #[error("entries {r} and {s} are not coprime")]
    NotCoprime { r: Int, s: Int },

    #[error("matrix does not have stable range one: determinant {det} is neither 0 nor a unit")]
    DeterminantObstruction { det: Int },

    #[error("unitizer check failed: det(A + Y(XA - I)) = {value} is not a unit")]
    InvalidCertificate { value: Int },

    #[error("dimension {n} is outside the supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("matrix {0} does not have the required shape")]
    ShapeMismatch(String),

    #[error("every coefficient of the conic is zero")]
    ZeroConic,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedRings { .. } => "mixed_rings",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::ModulusTooLarge { .. } => "modulus_too_large",
            Error::ParseMatrix { .. } => "parse",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::NotUnit(_) => "not_unit",
            Error::NotCoprime { .. } => "not_coprime",
            Error::DeterminantObstruction { .. } => "determinant_obstruction",
            Error::InvalidCertificate { .. } => "invalid_certificate",
            Error::DimensionOutOfRange { .. } => "dimension_out_of_range",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::ZeroConic => "zero_conic",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
