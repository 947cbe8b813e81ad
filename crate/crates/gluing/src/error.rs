use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("image array is not a permutation of 0..{degree}: {image:?}")]
    NotAPermutation { degree: usize, image: Vec<usize> },
    #[error("{what} exceeds the configured cap ({size} > {cap})")]
    OrderBound { what: &'static str, size: usize, cap: usize },
    #[error("unknown group spec `{0}`")]
    UnknownSpec(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("p-rank {rank} is below 2")]
    RankTooSmall { rank: usize },
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i32),
    #[error("collection does not contain the sections needed: {0}")]
    CollectionTooSmall(String),
    #[error("normalized bar complex needs {chains} chains, cap is {cap}")]
    BarSizeBound { chains: usize, cap: usize },
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("elementary abelian rank {rank} exceeds the Steinberg cap {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("degree {degree} over non-p-local coefficients is not supported")]
    CoefficientScope { degree: i32 },
    #[error("subgroup is not of index p")]
    NotIndexP,
    #[error("table has no entry for {0}")]
    TableIncomplete(String),
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(i32),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// A configured size bound was hit, as opposed to bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::OrderBound { .. } | Error::BarSizeBound { .. } | Error::RankCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
