//! Fixtures shared by the benchmarks.

use greymark::{GradeDistribution, ScoreSheet};

pub const LABELS: [&str; 5] = ["A", "B", "C", "D", "F"];

pub fn table1() -> Vec<(String, GradeDistribution)> {
    vec![
        (
            "G1".into(),
            LABELS.into_iter().zip([20, 15, 7, 10, 8]).collect(),
        ),
        (
            "G2".into(),
            LABELS.into_iter().zip([20, 30, 15, 15, 5]).collect(),
        ),
    ]
}

/// `subjects * per_subject` integer scores spread over 0..=100.
pub fn synthetic_sheet(subjects: usize, per_subject: usize) -> ScoreSheet {
    let mut sheet = ScoreSheet::new();
    for s in 0..subjects {
        let id = format!("S{s}");
        for k in 0..per_subject {
            sheet.push(&id, ((s * 37 + k * 11) % 101) as f64);
        }
    }
    sheet
}

/// A left-leaning sum of `terms` grade intervals.
pub fn long_expression(terms: usize) -> String {
    (0..terms)
        .map(|i| match i % 3 {
            0 => "[85, 100]".to_string(),
            1 => "2 * [60, 74]".to_string(),
            _ => "[50, 59] / [1, 2]".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
