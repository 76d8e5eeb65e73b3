use thiserror::Error;

use crate::grey::GreyNumber;
use crate::scale::ScaleViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lower}, {upper}]: endpoints must be finite with lower <= upper")]
    InvalidInterval { lower: f64, upper: f64 },

    #[error("division by the interval {0}, which contains zero")]
    DivisionByZero(GreyNumber),

    #[error("scalar multiplier must be a positive finite number, got {0}")]
    NonPositiveScalar(f64),

    #[error("whitening parameter must lie in [0, 1], got {0}")]
    InvalidWhitening(f64),

    #[error("unknown grade `{0}`")]
    UnknownGrade(String),

    #[error("score {score} lies outside the score domain [{min}, {max}]")]
    ScoreOutOfDomain { score: f64, min: f64, max: f64 },

    #[error("subject `{subject}`: score {score} lies outside the score domain [{min}, {max}]")]
    SubjectScoreOutOfDomain {
        subject: String,
        score: f64,
        min: f64,
        max: f64,
    },

    #[error("no grade of the scale covers score {0}")]
    Unclassifiable(f64),

    #[error("grade distribution is empty (n = 0)")]
    EmptyDistribution,

    #[error("score sheet holds no scores")]
    EmptySheet,

    #[error("invalid grade scale: {}", join_violations(.0))]
    InvalidScale(Vec<ScaleViolation>),

    #[error("reports were produced under different grade scales")]
    MixedScales,

    #[error("reports were produced with different whitening parameters")]
    MixedWhitening,
}

fn join_violations(v: &[ScaleViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
