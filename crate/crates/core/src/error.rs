use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different ambient rings ({left} vs {right})")]
    AmbientMismatch { left: String, right: String },

    #[error("generator `{generator}` has a nonzero constant term; ideals must lie in the maximal ideal")]
    ConstantTermPresent { generator: String },

    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),

    #[error("input is not a standard basis: s-polynomial of elements {0} and {1} does not reduce to zero")]
    NotStandardBasis(usize, usize),

    #[error(
        "map `{map}` is ill-defined: generator `{generator}` of the source ideal does not map into the target ideal"
    )]
    IllDefinedMap { map: String, generator: String },

    #[error("map `{map}` is not surjective: {detail}")]
    NonSurjectiveMap { map: String, detail: String },

    #[error("map `{map}` has {found} variable images, expected {expected}")]
    ImageCountMismatch { map: String, expected: usize, found: usize },

    #[error(
        "image `{image}` of map `{map}` has a nonzero constant term; local homomorphisms preserve the maximal ideal"
    )]
    NonLocalMap { map: String, image: String },

    #[error("fiber product factor `{0}` is the residue field; the fiber product would be trivial")]
    TrivialFactor(String),

    #[error("ideal `{0}` is zero")]
    ZeroIdeal(String),

    #[error("truncation orders differ ({left} vs {right})")]
    TruncationMismatch { left: usize, right: usize },

    #[error("no closed-form presentation for {0}")]
    NoPresentation(String),

    #[error("gluing along chart `{chart}` is trivial: comorphism `{map}` is an isomorphism")]
    TrivialGluing { chart: String, map: String },

    #[error("cannot compute the kernel of map `{0}` (neither a residue map nor a quotient map)")]
    UnsupportedKernel(String),

    #[error("invalid field: {0}")]
    BadField(String),

    #[error("atlas `{0}` has no charts")]
    EmptyAtlas(String),

    #[error("chart `{chart}` appears twice in atlas `{atlas}`")]
    DuplicateChart { atlas: String, chart: String },

    #[error("immersion `{immersion}`: {detail}")]
    BadImmersion { immersion: String, detail: String },

    /// Bad command-line arguments or an unreadable document.
    #[error("{0}")]
    Usage(String),

    #[error("{line}:{column}: parse error: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: undefined name `{name}`")]
    UndefinedName { name: String, line: usize, column: usize },

    #[error("{line}:{column}: {source}")]
    Located {
        line: usize,
        column: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attaches a source location unless the error already carries one.
    pub fn at(self, line: usize, column: usize) -> Error {
        match self {
            Error::Parse { .. } | Error::UndefinedName { .. } | Error::Located { .. } => self,
            other => Error::Located {
                line,
                column,
                source: Box::new(other),
            },
        }
    }

    /// The innermost error with any location wrapper removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            other => other,
        }
    }
}
