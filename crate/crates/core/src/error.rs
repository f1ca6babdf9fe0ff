use std::fmt;

use thiserror::Error;

/// Named hypotheses that a construction or theorem check can reject.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    BExact,
    FExact,
    GExact,
    FPrimeExact,
    GPrimeExact,
    TopRowExact,
    BottomRowExact,
    BKernel,
    BCokernel,
    RightVerticalNMono,
    Custom(&'static str),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hypothesis::BExact => "b exact",
            Hypothesis::FExact => "f exact",
            Hypothesis::GExact => "g exact",
            Hypothesis::FPrimeExact => "f' exact",
            Hypothesis::GPrimeExact => "g' exact",
            Hypothesis::TopRowExact => "top row exact",
            Hypothesis::BottomRowExact => "bottom row exact",
            Hypothesis::BKernel => "b is a kernel",
            Hypothesis::BCokernel => "b is a cokernel",
            Hypothesis::RightVerticalNMono => "right vertical is an N-monomorphism",
            Hypothesis::Custom(s) => s,
        };
        f.write_str(s)
    }
}

fn join(hs: &[Hypothesis]) -> String {
    hs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ChaseError {
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("ill-defined morphism: {0}")]
    IllDefined(String),
    #[error("factorization failed: {0}")]
    FactorizationFailure(String),
    #[error("composite g∘f is not null")]
    NotNullComposite,
    #[error("comparison m(f,g) is not an isomorphism")]
    MNotIso,
    #[error("rows are not null sequences: {0}")]
    NotNullRows(String),
    #[error("square does not commute: {0}")]
    NotCommutative(String),
    #[error("hypothesis violated: {}", join(.0))]
    HypothesisViolated(Vec<Hypothesis>),
    #[error("theorem conclusion failed with hypotheses satisfied: {0}")]
    TheoremViolated(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("enumeration of {count} morphisms exceeds cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
}

pub type Result<T> = std::result::Result<T, ChaseError>;
