use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. [`Error::name`] is the stable
/// identifier echoed by the command line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation {0:?} is not an automorphism of the Dynkin diagram")]
    InvalidDiagramAut(Vec<usize>),
    #[error("unsupported type/isogeny combination: {0}")]
    UnsupportedType(String),
    #[error("invalid group model: {0}")]
    InvalidModel(String),
    #[error("group generated by the action exceeds {0} elements")]
    NonFiniteAction(usize),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("coinvariant lattice has torsion {0:?}; highest-weight theory over it is not supported")]
    TorsionInCoinvariants(Vec<i64>),
    #[error("branching produced a negative multiplicity at {0:?}")]
    NegativeMultiplicity(Vec<i64>),
    #[error("oracle bound exceeded: {0}")]
    OracleBoundExceeded(String),
    #[error("basic very-special criteria disagree: weight criterion {tate}, central-character criterion {character}")]
    CriteriaDisagree { tate: bool, character: bool },
    #[error("the affine Deligne-Lusztig variety is empty")]
    EmptyVariety,
    #[error("dimension {0} is not an integer")]
    NonIntegralDimension(String),
    #[error("best integral approximation is only known for very special b; supply lambda_b")]
    LambdaBUnavailable,
    #[error("defect of the basic element is unknown here; supply it explicitly")]
    DefectUnavailable,
    #[error("coweight {0:?} is not minuscule")]
    NotMinuscule(Vec<i64>),
    #[error("element is not very special")]
    NotVerySpecial,
    #[error("the center is not connected")]
    CenterNotConnected,
    #[error("no witness found within search height {0}")]
    SearchBoundExceeded(i64),
    #[error("witness set has no minimal element within the searched region")]
    NoMinimalElement,
    #[error("model is not an unramified restriction-of-scalars preset")]
    NotResUnramPreset,
    #[error("the basic element of B(G, mu*) is not very special")]
    BasicNotVerySpecial,
    #[error("only rational Satake parameters are supported")]
    NonRationalUnsupported,
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidDiagramAut(_) => "InvalidDiagramAut",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::InvalidModel(_) => "InvalidModel",
            Error::NonFiniteAction(_) => "NonFiniteAction",
            Error::NotDominant(_) => "NotDominant",
            Error::TorsionInCoinvariants(_) => "TorsionInCoinvariants",
            Error::NegativeMultiplicity(_) => "NegativeMultiplicity",
            Error::OracleBoundExceeded(_) => "OracleBoundExceeded",
            Error::CriteriaDisagree { .. } => "CriteriaDisagree",
            Error::EmptyVariety => "EmptyVariety",
            Error::NonIntegralDimension(_) => "NonIntegralDimension",
            Error::LambdaBUnavailable => "LambdaBUnavailable",
            Error::DefectUnavailable => "DefectUnavailable",
            Error::NotMinuscule(_) => "NotMinuscule",
            Error::NotVerySpecial => "NotVerySpecial",
            Error::CenterNotConnected => "CenterNotConnected",
            Error::SearchBoundExceeded(_) => "SearchBoundExceeded",
            Error::NoMinimalElement => "NoMinimalElement",
            Error::NotResUnramPreset => "NotResUnramPreset",
            Error::BasicNotVerySpecial => "BasicNotVerySpecial",
            Error::NonRationalUnsupported => "NonRationalUnsupported",
            Error::InvalidQuery(_) => "InvalidQuery",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}

pub fn check_len(expected: usize, v: &[i64]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: v.len() });
    }
    Ok(())
}
