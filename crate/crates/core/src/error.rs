use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cyclotomic order {order} exceeds the configured maximum {max}")]
    OrderOverflow { order: u64, max: u32 },

    #[error("{sigma} is not a unit modulo {order}")]
    NotAUnit { sigma: u32, order: u32 },

    #[error("element is not in the field fixed by {0}")]
    NotInField(String),

    #[error("fields are not nested: {0}")]
    NonNestedFields(String),

    #[error("invalid subfield: {0}")]
    InvalidSubfield(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group closure exceeds the bound of {bound} elements")]
    GroupTooLarge { bound: usize },

    #[error("point set is not G-stable: element {element} maps {point} outside the set")]
    NotGStable { element: usize, point: String },

    #[error("character table construction failed: {0}")]
    CharacterTable(String),

    #[error("not a virtual character: inner product with {label} is {value}")]
    NotVirtualCharacter { label: String, value: String },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("zeros not isolated: the ideal on chart x{chart} = 1 is not zero-dimensional")]
    ZerosNotIsolated { chart: usize },

    #[error("unresolved locus on chart x{chart} = 1 (supply point hints or enlarge the cyclotomic order); residual eliminant factors: {}", residual.join("; "))]
    UnresolvedLocus { chart: usize, residual: Vec<String> },

    #[error("point {0} is not a zero of the system")]
    NotAZero(String),

    #[error("sections not semi-invariant: element {element} does not map section {section} to a multiple of itself (ideal G-stable: {ideal_stable})")]
    NotSemiInvariant {
        section: usize,
        element: usize,
        ideal_stable: bool,
    },

    #[error("not equivariant: {0}")]
    NotEquivariant(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("invalid problem specification: {0}")]
    Spec(String),

    #[error("mismatched bundle data: {0}")]
    MismatchedBundles(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ZerosNotIsolated { .. }
            | Error::NotSemiInvariant { .. }
            | Error::NotEquivariant(_) => 2,
            Error::UnresolvedLocus { .. } => 3,
            _ => 1,
        }
    }
}
