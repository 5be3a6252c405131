use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("enumeration cap exceeded: group has more than {cap} elements")]
    CapExceeded { cap: usize },

    #[error("lattice cap exceeded: more than {cap} subgroups")]
    LatticeCapExceeded { cap: usize },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("group axiom violated: {0}")]
    AxiomViolation(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not a Schmidt group")]
    NotSchmidt,

    #[error("Schmidt certificate check ({entry}) failed: {detail}")]
    CertificateFailure { entry: char, detail: String },

    #[error("nilpotency tests disagree on {group}: sylow={sylow}, lower central series={lcs}")]
    NilpotencyTestDisagreement {
        group: String,
        sylow: bool,
        lcs: bool,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
