use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("incomplete multiplier map: no value for cycle {0}")]
    IncompleteMultipliers(String),
    #[error("zero multiplier not supported in engine (cycle {0})")]
    ZeroMultiplier(String),
    #[error("sticker placement violated: {0}")]
    StickerPlacement(String),
    #[error("quotient is not a manifold: {0}")]
    Quotient(String),
    #[error("pairing misalignment: {0}")]
    PairingMisalignment(String),
    #[error("cylinder partition failed: {0}")]
    Partition(String),
    #[error("winding mismatch in cylinder {cycle}: expected {expected}, found {found}")]
    Winding { cycle: String, expected: i64, found: i64 },
    #[error("Rolfsen precondition: {0}")]
    RolfsenPrecondition(String),
    #[error("slam-dunk precondition: {0}")]
    SlamDunkPrecondition(String),
    #[error("component {0} has framing inf; delete components with framing inf before computing homology")]
    InfiniteFraming(String),
    #[error("unknown link component {0}")]
    UnknownComponent(String),
    #[error("lens parameters: {0}")]
    Lens(String),
    #[error("connected sum: {0}")]
    ConnectedSum(String),
    #[error("reframe: {0}")]
    Reframe(String),
    #[error("missing blackboard framing for component {0}")]
    MissingBlackboard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
