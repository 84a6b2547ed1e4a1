use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("`{0}` is not a half-odd-integer")]
    NotHalfOdd(String),

    /// `line` is 0 when the problem is not tied to a line of the file.
    #[error("{}", config_message(*line, reason))]
    Config { line: usize, reason: String },

    #[error("finite-cylinder quantity requested with nu = 0; use the infinite-cylinder form")]
    InfiniteGeometry,

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(&'static str),

    #[error("z = {z} lies outside the finite cylinder [0, {length}]")]
    OutsideCylinder { z: f64, length: f64 },

    #[error("inner product of infinite-cylinder modes with k = {k_a} and k' = {k_b} is a delta distribution")]
    DistributionalInnerProduct { k_a: f64, k_b: f64 },

    #[error("bilinear has imaginary part {imag:e}; the spinor construction is inconsistent")]
    NonRealBilinear { imag: f64 },

    #[error("packet is not normalized: integral of |a+|^2 + |a-|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("mixed state is not normalized: |c+|^2 + |c-|^2 = {norm}")]
    MixedNotNormalized { norm: f64 },

    #[error("empty packet: all amplitudes vanish")]
    EmptyPacket,

    #[error(
        "momentum grid spacing {spacing:e} does not resolve the phase at t = {t}, z = {z}; \
         at least {required_nodes} nodes are required"
    )]
    Resolution {
        spacing: f64,
        t: f64,
        z: f64,
        required_nodes: usize,
    },

    #[error("regime error: {0}")]
    Regime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn config_message(line: usize, reason: &str) -> String {
    match line {
        0 => format!("config: {reason}"),
        n => format!("config line {n}: {reason}"),
    }
}
