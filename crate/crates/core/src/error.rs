use thiserror::Error;

/// Errors raised by constructors, validators and deciders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("bad descriptor: {0}")]
    BadDescriptor(String),
    #[error("no embedding from {0} into {1}")]
    NoEmbedding(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different fields")]
    ContextMismatch,

    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit coordinates do not give a two-sided unit")]
    BadUnit,
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("not a right module: {0}")]
    NotAModule(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,

    #[error("gram array is not sesquilinear: {0}")]
    NotSesquilinear(String),
    #[error("no unimodular form found after {0} tries")]
    NoUnimodularFound(usize),
    #[error("bilinear form is not invariant under {0}")]
    NotInvariant(String),
    #[error("algebra is not a group ring with its canonical involution")]
    NotAGroupRing,

    #[error("module is not reflexive")]
    NotReflexive,
    #[error("pair is not hermitian")]
    NotHermitian,
    #[error("pair is not a morphism of double arrows")]
    NotAMorphism,
    #[error("map is not an isometry")]
    NotAnIsometry,
    #[error("morphism is not invertible")]
    NotInvertible,
    #[error("hermitian form is not unimodular")]
    NotUnimodular,
    #[error("endomorphism ring carries no involution yet")]
    MissingInvolution,

    #[error("enumeration of {size} elements exceeds cap {cap}")]
    EnumTooLarge { size: String, cap: u64 },
    #[error("enumeration requires a finite base field")]
    InfiniteField,
    #[error("radical is not stable under the involution")]
    RadicalNotStable,
    #[error("object is not isomorphic to the base object")]
    NotIsomorphicToQ0,
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn too_large(size: impl ToString, cap: u64) -> Self {
        Error::EnumTooLarge {
            size: size.to_string(),
            cap,
        }
    }
}
