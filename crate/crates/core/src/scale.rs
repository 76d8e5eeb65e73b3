//! Linguistic grade scales: ordered `(label, interval)` pairs over a score domain.
//!
//! Arithmetic always uses the stored closed intervals. Classification of a
//! real score uses the contiguous partition induced by the lower bounds: a
//! score belongs to the highest grade whose lower bound it reaches. This
//! closes gaps such as `(84, 85)` between `B = [75, 84]` and `A = [85, 100]`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::grey::GreyNumber;

#[derive(Debug, Clone, PartialEq)]
pub struct Grade {
    pub label: String,
    pub interval: GreyNumber,
}

impl Grade {
    pub fn new(label: impl Into<String>, interval: GreyNumber) -> Self {
        Grade {
            label: label.into(),
            interval,
        }
    }
}

/// Grades ordered from the highest interval to the lowest.
///
/// A `GradeScale` value is not guaranteed to be well formed; use
/// [`GradeScale::validate`] or build through [`GradeScale::validated`].
#[derive(Debug, Clone, PartialEq)]
pub struct GradeScale {
    grades: Vec<Grade>,
    domain: GreyNumber,
}

/// One broken scale invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleViolation {
    #[error("scale needs at least 2 grades, found {0}")]
    TooFewGrades(usize),
    #[error("score domain {0} is degenerate")]
    DegenerateDomain(GreyNumber),
    #[error("empty grade label at position {0}")]
    EmptyLabel(usize),
    #[error("grade label `{0}` contains whitespace")]
    WhitespaceInLabel(String),
    #[error("duplicate grade label `{0}`")]
    DuplicateLabel(String),
    #[error("grades `{0}` and `{1}` overlap")]
    Overlap(String, String),
    #[error("grade `{higher}` must lie strictly above the following grade `{lower}`")]
    NotDescending { higher: String, lower: String },
    #[error("grade `{0}` extends outside the score domain")]
    OutsideDomain(String),
    #[error("lowest grade `{label}` starts at {start}, not at the domain minimum {domain_min}")]
    BottomGap {
        label: String,
        start: f64,
        domain_min: f64,
    },
    #[error("highest grade `{label}` ends at {end}, not at the domain maximum {domain_max}")]
    TopGap {
        label: String,
        end: f64,
        domain_max: f64,
    },
}

fn gn(a: f64, b: f64) -> GreyNumber {
    GreyNumber::new(a, b).expect("literal interval")
}

impl GradeScale {
    pub const DEFAULT_DOMAIN: (f64, f64) = (0.0, 100.0);

    /// Builds a scale without checking its invariants.
    pub fn new(grades: Vec<Grade>, domain: GreyNumber) -> Self {
        GradeScale { grades, domain }
    }

    /// Builds a scale and rejects it if any invariant fails.
    pub fn validated(grades: Vec<Grade>, domain: GreyNumber) -> Result<Self> {
        let scale = GradeScale::new(grades, domain);
        let violations = scale.validate();
        if violations.is_empty() {
            Ok(scale)
        } else {
            Err(Error::InvalidScale(violations))
        }
    }

    /// A (100-85), B (84-75), C (74-60), D (59-50), F (49-0).
    pub fn default_scale() -> Self {
        GradeScale::new(
            vec![
                Grade::new("A", gn(85.0, 100.0)),
                Grade::new("B", gn(75.0, 84.0)),
                Grade::new("C", gn(60.0, 74.0)),
                Grade::new("D", gn(50.0, 59.0)),
                Grade::new("F", gn(0.0, 49.0)),
            ],
            gn(0.0, 100.0),
        )
    }

    /// The stricter variant: A (100-90), B (89-80), C (79-70), D (69-60), F (59-0).
    pub fn strict_scale() -> Self {
        GradeScale::new(
            vec![
                Grade::new("A", gn(90.0, 100.0)),
                Grade::new("B", gn(80.0, 89.0)),
                Grade::new("C", gn(70.0, 79.0)),
                Grade::new("D", gn(60.0, 69.0)),
                Grade::new("F", gn(0.0, 59.0)),
            ],
            gn(0.0, 100.0),
        )
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn domain(&self) -> GreyNumber {
        self.domain
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.grades.iter().map(|g| g.label.as_str())
    }

    /// Position of `label`, 0 being the highest grade.
    pub fn rank(&self, label: &str) -> Option<usize> {
        self.grades.iter().position(|g| g.label == label)
    }

    /// Every violated invariant. An empty list means the scale is valid.
    pub fn validate(&self) -> Vec<ScaleViolation> {
        let mut out = Vec::new();
        let g = &self.grades;

        if g.len() < 2 {
            out.push(ScaleViolation::TooFewGrades(g.len()));
        }
        if self.domain.is_white() {
            out.push(ScaleViolation::DegenerateDomain(self.domain));
        }

        let mut seen = HashSet::new();
        for (i, grade) in g.iter().enumerate() {
            if grade.label.is_empty() {
                out.push(ScaleViolation::EmptyLabel(i));
            } else if grade.label.chars().any(char::is_whitespace) {
                out.push(ScaleViolation::WhitespaceInLabel(grade.label.clone()));
            }
            if !grade.label.is_empty() && !seen.insert(grade.label.as_str()) {
                out.push(ScaleViolation::DuplicateLabel(grade.label.clone()));
            }
        }

        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (hi, lo) = (&g[i], &g[j]);
                let overlap = hi.interval.lower() <= lo.interval.upper()
                    && lo.interval.lower() <= hi.interval.upper();
                if overlap {
                    out.push(ScaleViolation::Overlap(hi.label.clone(), lo.label.clone()));
                } else if j == i + 1 && hi.interval.lower() <= lo.interval.upper() {
                    out.push(ScaleViolation::NotDescending {
                        higher: hi.label.clone(),
                        lower: lo.label.clone(),
                    });
                }
            }
        }

        for grade in g {
            if grade.interval.lower() < self.domain.lower()
                || grade.interval.upper() > self.domain.upper()
            {
                out.push(ScaleViolation::OutsideDomain(grade.label.clone()));
            }
        }

        if let (Some(top), Some(bottom)) = (g.first(), g.last()) {
            if bottom.interval.lower() != self.domain.lower() {
                out.push(ScaleViolation::BottomGap {
                    label: bottom.label.clone(),
                    start: bottom.interval.lower(),
                    domain_min: self.domain.lower(),
                });
            }
            if top.interval.upper() != self.domain.upper() {
                out.push(ScaleViolation::TopGap {
                    label: top.label.clone(),
                    end: top.interval.upper(),
                    domain_max: self.domain.upper(),
                });
            }
        }

        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn grade(&self, label: &str) -> Result<&Grade> {
        self.grades
            .iter()
            .find(|g| g.label == label)
            .ok_or_else(|| Error::UnknownGrade(label.to_string()))
    }

    /// The grey number registered for `label`.
    pub fn grade_to_gn(&self, label: &str) -> Result<GreyNumber> {
        self.grade(label).map(|g| g.interval)
    }

    /// Label of the grade that owns `score` under the lower-bound partition.
    pub fn classify_score(&self, score: f64) -> Result<&str> {
        if !self.domain.contains(score) {
            return Err(Error::ScoreOutOfDomain {
                score,
                min: self.domain.lower(),
                max: self.domain.upper(),
            });
        }
        self.grades
            .iter()
            .find(|g| score >= g.interval.lower())
            .map(|g| g.label.as_str())
            .ok_or(Error::Unclassifiable(score))
    }

    /// Parses the plain-text scale format, then validates the result.
    pub fn parse(text: &str) -> std::result::Result<Self, ScaleFileError> {
        let mut domain = None;
        let mut grades = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ScaleFileError::Syntax {
                    line: line_no,
                    message: format!(
                        "expected `<label> <lower> <upper>`, found {} fields",
                        fields.len()
                    ),
                });
            }
            let num = |s: &str| {
                s.parse::<f64>().map_err(|_| ScaleFileError::Syntax {
                    line: line_no,
                    message: format!("`{s}` is not a number"),
                })
            };
            let (lo, hi) = (num(fields[1])?, num(fields[2])?);
            let interval = GreyNumber::new(lo, hi).map_err(|e| ScaleFileError::Syntax {
                line: line_no,
                message: e.to_string(),
            })?;

            if fields[0] == "domain" {
                if domain.is_some() || !grades.is_empty() {
                    return Err(ScaleFileError::Syntax {
                        line: line_no,
                        message: "`domain` must be the first entry and appear once".into(),
                    });
                }
                domain = Some(interval);
            } else {
                grades.push(Grade::new(fields[0], interval));
            }
        }

        let (lo, hi) = Self::DEFAULT_DOMAIN;
        let scale = GradeScale::new(grades, domain.unwrap_or_else(|| gn(lo, hi)));
        let violations = scale.validate();
        if violations.is_empty() {
            Ok(scale)
        } else {
            Err(ScaleFileError::Invalid(violations))
        }
    }
}

impl Default for GradeScale {
    fn default() -> Self {
        GradeScale::default_scale()
    }
}

impl FromStr for GradeScale {
    type Err = ScaleFileError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        GradeScale::parse(s)
    }
}

/// Writes the scale file format. The `domain` line is omitted for `[0, 100]`.
impl fmt::Display for GradeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = Self::DEFAULT_DOMAIN;
        if self.domain.lower() != lo || self.domain.upper() != hi {
            writeln!(f, "domain {} {}", self.domain.lower(), self.domain.upper())?;
        }
        for g in &self.grades {
            writeln!(
                f,
                "{} {} {}",
                g.label,
                g.interval.lower(),
                g.interval.upper()
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid grade scale: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ScaleViolation>),
}
