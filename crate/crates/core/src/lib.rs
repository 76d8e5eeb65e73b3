//! Grey numbers and a group assessment method built on them.
//!
//! A grey number is a closed interval `[lower, upper]` known to contain an
//! otherwise undetermined value. Linguistic grades (A, B, C, ...) map to
//! score intervals; a group's grade counts average into a mean grey number,
//! whose whitened value is classified back onto the grade scale.
//!
//! ```
//! use greymark::{assess, GradeDistribution, GradeScale, Whitening};
//!
//! let scale = GradeScale::default_scale();
//! let group: GradeDistribution =
//!     [("A", 20), ("B", 15), ("C", 7), ("D", 10), ("F", 8)].into_iter().collect();
//! let report = assess("G1", &group, &scale, Whitening::default()).unwrap();
//! assert_eq!(report.grade, "C");
//! assert!((report.whitened - 70.875).abs() < 1e-9);
//! ```

pub mod assessment;
pub mod error;
pub mod expr;
pub mod grey;
pub mod io;
pub mod report;
pub mod scale;
pub mod tfn;

pub use assessment::{
    assess, compare_groups, mean_gn, scores_to_distribution, AssessmentReport, GradeDistribution,
    ScoreSheet, Standing, TIE_TOLERANCE,
};
pub use error::{Error, Result};
pub use expr::{
    evaluate, parse as parse_expr, BinOp, CalcError, EvalError, Expr, ParseError, ParseErrorKind,
};
pub use grey::{GreyNumber, Whitening};
pub use scale::{Grade, GradeScale, ScaleFileError, ScaleViolation};
pub use tfn::{
    check_equivalence, grade_to_tfn, tfn_mean, EquivalenceReport, TriangularFuzzyNumber,
};
