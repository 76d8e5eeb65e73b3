//! CSV input for grade counts (`group,grade,count`) and raw scores
//! (`subject,score`).
//!
//! Comma separated, header first, `#` lines ignored, no quoting.

use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::assessment::{GradeDistribution, ScoreSheet};
use crate::scale::{GradeScale, ScaleFileError};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("header must be `{expected}`, found `{found}`")]
    BadHeader {
        expected: &'static str,
        found: String,
    },
    #[error("no data rows")]
    NoData,
    #[error("line {line}: negative count {count}")]
    NegativeCount { line: u64, count: i64 },
    #[error("line {line}: unknown grade `{grade}`")]
    UnknownGrade { line: u64, grade: String },
    #[error("line {line}: duplicate row for group `{group}`, grade `{grade}`")]
    Duplicate {
        line: u64,
        group: String,
        grade: String,
    },
    #[error("line {line}: subject `{subject}` score {score} lies outside the score domain [{min}, {max}]")]
    ScoreOutOfDomain {
        line: u64,
        subject: String,
        score: f64,
        min: f64,
        max: f64,
    },
    #[error("{}: {source}", path.display())]
    Scale {
        path: PathBuf,
        #[source]
        source: ScaleFileError,
    },
}

pub const COUNTS_HEADER: &str = "group,grade,count";
pub const SCORES_HEADER: &str = "subject,score";

/// Groups in first-appearance order.
pub type GroupCounts = Vec<(String, GradeDistribution)>;

fn open(path: &Path) -> Result<File, LoadError> {
    File::open(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Yields `(line, fields)` for each data row after checking the header.
fn rows<R: Read>(reader: R, header: &'static str) -> Result<Vec<(u64, Vec<String>)>, LoadError> {
    let width = header.split(',').count();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .quoting(false)
        .from_reader(reader);

    let found = match rdr.headers() {
        Ok(h) => h.iter().collect::<Vec<_>>().join(","),
        Err(e) => return Err(csv_error(e)),
    };
    if found != header {
        return Err(LoadError::BadHeader {
            expected: header,
            found,
        });
    }

    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(LoadError::Malformed {
                line,
                message: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        out.push((line, rec.iter().map(str::to_string).collect()));
    }
    if out.is_empty() {
        return Err(LoadError::NoData);
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> LoadError {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(source) => LoadError::Io {
            path: PathBuf::from("<input>"),
            source,
        },
        other => LoadError::Malformed {
            line,
            message: format!("{other:?}"),
        },
    }
}

/// Reads a counts table. Grades absent for a group count zero.
pub fn read_counts<R: Read>(reader: R, scale: &GradeScale) -> Result<GroupCounts, LoadError> {
    let mut groups: GroupCounts = Vec::new();
    let mut seen = HashSet::new();

    for (line, f) in rows(reader, COUNTS_HEADER)? {
        let (group, grade, count) = (&f[0], &f[1], &f[2]);
        if group.is_empty() {
            return Err(LoadError::Malformed {
                line,
                message: "empty group name".into(),
            });
        }
        let count: i64 = count.parse().map_err(|_| LoadError::Malformed {
            line,
            message: format!("count `{count}` is not an integer"),
        })?;
        if count < 0 {
            return Err(LoadError::NegativeCount { line, count });
        }
        if scale.grade(grade).is_err() {
            return Err(LoadError::UnknownGrade {
                line,
                grade: grade.clone(),
            });
        }
        if !seen.insert((group.clone(), grade.clone())) {
            return Err(LoadError::Duplicate {
                line,
                group: group.clone(),
                grade: grade.clone(),
            });
        }

        let idx = match groups.iter().position(|(g, _)| g == group) {
            Some(i) => i,
            None => {
                groups.push((group.clone(), GradeDistribution::new()));
                groups.len() - 1
            }
        };
        groups[idx].1.add(grade.as_str(), count as u64);
    }
    Ok(groups)
}

pub fn load_counts_csv(
    path: impl AsRef<Path>,
    scale: &GradeScale,
) -> Result<GroupCounts, LoadError> {
    read_counts(open(path.as_ref())?, scale)
}

/// Writes a counts table with one row per grade of `scale`, zeros included.
pub fn write_counts(groups: &[(String, GradeDistribution)], scale: &GradeScale) -> String {
    let mut out = format!("{COUNTS_HEADER}\n");
    for (group, dist) in groups {
        for (label, count) in dist.in_scale_order(scale) {
            out.push_str(&format!("{group},{label},{count}\n"));
        }
    }
    out
}

/// Reads `subject,score` rows into a sheet, checking each score against the scale domain.
pub fn read_scores<R: Read>(reader: R, scale: &GradeScale) -> Result<ScoreSheet, LoadError> {
    let mut sheet = ScoreSheet::new();
    let domain = scale.domain();
    for (line, f) in rows(reader, SCORES_HEADER)? {
        let (subject, raw) = (&f[0], &f[1]);
        if subject.is_empty() {
            return Err(LoadError::Malformed {
                line,
                message: "empty subject".into(),
            });
        }
        let score = match raw.parse::<f64>() {
            Ok(x) if x.is_finite() => x,
            _ => {
                return Err(LoadError::Malformed {
                    line,
                    message: format!("score `{raw}` is not a finite number"),
                })
            }
        };
        if !domain.contains(score) {
            return Err(LoadError::ScoreOutOfDomain {
                line,
                subject: subject.clone(),
                score,
                min: domain.lower(),
                max: domain.upper(),
            });
        }
        sheet.push(subject, score);
    }
    Ok(sheet)
}

pub fn load_scores_csv(
    path: impl AsRef<Path>,
    scale: &GradeScale,
) -> Result<ScoreSheet, LoadError> {
    read_scores(open(path.as_ref())?, scale)
}

pub fn load_scale_file(path: impl AsRef<Path>) -> Result<GradeScale, LoadError> {
    let path = path.as_ref();
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .map_err(|source| LoadError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    GradeScale::parse(&text).map_err(|source| LoadError::Scale {
        path: path.to_path_buf(),
        source,
    })
}
