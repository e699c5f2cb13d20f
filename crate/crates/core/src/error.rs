use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. `code()` gives the stable
/// machine-readable tag used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("no exact root of order {order}: {detail}")]
    NoExactRoot { order: u32, detail: String },
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("degenerate polytope: {0}")]
    Degenerate(String),
    #[error("not a lattice point of the polytope: {0:?}")]
    NotALatticePoint(Vec<i64>),
    #[error("polytope is not lattice-normalized: {0}")]
    NotNormalized(String),
    #[error("invalid lattice map: {0}")]
    InvalidMap(String),
    #[error("not a column structure: {0}")]
    NotAColumn(String),
    #[error("normal form ordering violated: {0}")]
    OrderingViolation(String),
    #[error("repeated facet {0} in normal form")]
    RepeatedFacet(usize),
    #[error("zero entry in toric scaling vector at position {0}")]
    ZeroTorusEntry(usize),
    #[error("polytope mismatch: {0}")]
    PolytopeMismatch(String),
    #[error("not an endomorphism")]
    NotEndomorphism,
    #[error("not a face: {0}")]
    NotAFace(String),
    #[error("invalid fibration: {0}")]
    InvalidFibration(String),
    #[error("a lattice point is mapped to zero: {0}")]
    ZeroGeneratorImage(String),
    #[error("no blow-up witness up to degree {bound} for point {point:?}")]
    WitnessNotFound { point: Vec<i64>, bound: usize },
    #[error("Newton polytope containment violated at lattice point {0:?}")]
    NewtonContainmentViolated(Vec<i64>),
    #[error("not a pyramid: {0}")]
    NotAPyramid(String),
    #[error("image of {point:?} escapes the target at monomial {monomial:?}")]
    ImageEscapesTarget { point: Vec<i64>, monomial: Vec<i64> },
    #[error("not integral affine: {0}")]
    NotIntegralAffine(String),
    #[error("scalar root of order {order} missing from the field: {detail}")]
    ScalarRootMissing { order: u32, detail: String },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("generation degree not certified up to {0}")]
    GenerationNotCertified(usize),
    #[error("search limit exceeded: {0}")]
    SearchLimit(String),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("recipe node {path}: {source}")]
    Recipe { path: String, source: Box<Error> },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::InvalidField(_) => "InvalidField",
            Error::ParseScalar(_) => "ParseScalar",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotDivisible(_) => "NotDivisible",
            Error::NoExactRoot { .. } => "NoExactRoot",
            Error::NotMonic(_) => "NotMonic",
            Error::ZeroPolynomial(_) => "ZeroPolynomial",
            Error::InvalidPolytope(_) => "InvalidPolytope",
            Error::Degenerate(_) => "Degenerate",
            Error::NotALatticePoint(_) => "NotALatticePoint",
            Error::NotNormalized(_) => "NotNormalized",
            Error::InvalidMap(_) => "InvalidMap",
            Error::NotAColumn(_) => "NotAColumn",
            Error::OrderingViolation(_) => "OrderingViolation",
            Error::RepeatedFacet(_) => "RepeatedFacet",
            Error::ZeroTorusEntry(_) => "ZeroTorusEntry",
            Error::PolytopeMismatch(_) => "PolytopeMismatch",
            Error::NotEndomorphism => "NotEndomorphism",
            Error::NotAFace(_) => "NotAFace",
            Error::InvalidFibration(_) => "InvalidFibration",
            Error::ZeroGeneratorImage(_) => "ZeroGeneratorImage",
            Error::WitnessNotFound { .. } => "WitnessNotFound",
            Error::NewtonContainmentViolated(_) => "NewtonContainmentViolated",
            Error::NotAPyramid(_) => "NotAPyramid",
            Error::ImageEscapesTarget { .. } => "ImageEscapesTarget",
            Error::NotIntegralAffine(_) => "NotIntegralAffine",
            Error::ScalarRootMissing { .. } => "ScalarRootMissing",
            Error::NotAHomomorphism(_) => "NotAHomomorphism",
            Error::DecompositionFailed(_) => "DecompositionFailed",
            Error::GenerationNotCertified(_) => "GenerationNotCertified",
            Error::SearchLimit(_) => "SearchLimit",
            Error::InvalidRecipe(_) => "InvalidRecipe",
            Error::Recipe { .. } => "RecipeError",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// The innermost error, looking through recipe path wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Recipe { source, .. } => source.root(),
            e => e,
        }
    }
}
