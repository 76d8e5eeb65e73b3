//! Group assessment: grade counts to a mean grey number, its whitened value
//! and the grade that value falls in.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grey::{GreyNumber, Whitening};
use crate::scale::GradeScale;

/// Per-grade counts for one group. Grades not mentioned count zero, and
/// zero counts are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradeDistribution {
    counts: BTreeMap<String, u64>,
}

impl GradeDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` objects graded `label`.
    pub fn add(&mut self, label: impl Into<String>, count: u64) -> &mut Self {
        if count > 0 {
            *self.counts.entry(label.into()).or_insert(0) += count;
        }
        self
    }

    pub fn with(mut self, label: impl Into<String>, count: u64) -> Self {
        self.add(label, count);
        self
    }

    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    /// Total number of assessed objects.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Counts in scale order, including zeros for absent grades.
    pub fn in_scale_order<'a>(
        &'a self,
        scale: &'a GradeScale,
    ) -> impl Iterator<Item = (&'a str, u64)> {
        scale.labels().map(move |l| (l, self.count(l)))
    }

    /// Checks every label against `scale` and that `n >= 1`.
    pub fn check(&self, scale: &GradeScale) -> Result<()> {
        for label in self.counts.keys() {
            scale.grade(label)?;
        }
        if self.total() == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(())
    }
}

impl<S: Into<String>> FromIterator<(S, u64)> for GradeDistribution {
    fn from_iter<I: IntoIterator<Item = (S, u64)>>(iter: I) -> Self {
        let mut d = GradeDistribution::new();
        for (label, count) in iter {
            d.add(label, count);
        }
        d
    }
}

/// Raw numeric scores per subject, in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreSheet {
    subjects: Vec<(String, Vec<f64>)>,
}

impl ScoreSheet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a score, creating the subject on first sight.
    pub fn push(&mut self, subject: &str, score: f64) {
        match self.subjects.iter_mut().find(|(s, _)| s == subject) {
            Some((_, scores)) => scores.push(score),
            None => self.subjects.push((subject.to_string(), vec![score])),
        }
    }

    pub fn subjects(&self) -> &[(String, Vec<f64>)] {
        &self.subjects
    }

    /// A sheet holding only `subject`'s scores.
    pub fn subject(&self, subject: &str) -> Option<ScoreSheet> {
        self.subjects
            .iter()
            .find(|(s, _)| s == subject)
            .map(|entry| ScoreSheet {
                subjects: vec![entry.clone()],
            })
    }

    pub fn scores(&self) -> impl Iterator<Item = f64> + '_ {
        self.subjects.iter().flat_map(|(_, s)| s.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.subjects.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Arithmetic mean of all pooled scores.
    pub fn raw_mean(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptySheet);
        }
        Ok(self.scores().sum::<f64>() / self.len() as f64)
    }
}

/// Pools every score on the sheet and counts the grade each one falls in.
pub fn scores_to_distribution(sheet: &ScoreSheet, scale: &GradeScale) -> Result<GradeDistribution> {
    if sheet.is_empty() {
        return Err(Error::EmptySheet);
    }
    let mut dist = GradeDistribution::new();
    for (subject, scores) in sheet.subjects() {
        for &score in scores {
            let label = scale.classify_score(score).map_err(|e| match e {
                Error::ScoreOutOfDomain { score, min, max } => Error::SubjectScoreOutOfDomain {
                    subject: subject.clone(),
                    score,
                    min,
                    max,
                },
                other => other,
            })?;
            dist.add(label, 1);
        }
    }
    Ok(dist)
}

/// `M = (1/n) * sum_g count(g) * grade_g`.
///
/// Terms are accumulated in scale order, so the result does not depend on how
/// the distribution was built.
pub fn mean_gn(dist: &GradeDistribution, scale: &GradeScale) -> Result<GreyNumber> {
    dist.check(scale)?;
    let n = dist.total();
    let mut sum = GreyNumber::white(0.0)?;
    for grade in scale.grades() {
        let count = dist.count(&grade.label);
        if count > 0 {
            sum = sum + grade.interval.scalar_mul(count as f64)?;
        }
    }
    sum.scalar_mul(1.0 / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentReport {
    pub group_id: String,
    pub n: u64,
    pub mean_gn: GreyNumber,
    pub whitened: f64,
    pub grade: String,
    pub distribution: GradeDistribution,
    pub t_used: Whitening,
    pub scale: GradeScale,
}

/// Mean grey number, its whitening at `t`, and the grade it lands in.
pub fn assess(
    group_id: &str,
    dist: &GradeDistribution,
    scale: &GradeScale,
    t: Whitening,
) -> Result<AssessmentReport> {
    let mean = mean_gn(dist, scale)?;
    let whitened = mean.whiten(t);
    let grade = scale.classify_score(whitened)?.to_string();
    Ok(AssessmentReport {
        group_id: group_id.to_string(),
        n: dist.total(),
        mean_gn: mean,
        whitened,
        grade,
        distribution: dist.clone(),
        t_used: t,
        scale: scale.clone(),
    })
}

/// Whitened values closer than this are treated as a tie.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Standing {
    /// 1-based; tied groups share a rank.
    pub rank: usize,
    pub tied: bool,
    pub report: AssessmentReport,
}

/// Orders reports by whitened value, best first.
pub fn compare_groups(reports: &[AssessmentReport]) -> Result<Vec<Standing>> {
    if let Some(first) = reports.first() {
        for r in &reports[1..] {
            if r.scale != first.scale {
                return Err(Error::MixedScales);
            }
            if r.t_used != first.t_used {
                return Err(Error::MixedWhitening);
            }
        }
    }

    let mut sorted: Vec<&AssessmentReport> = reports.iter().collect();
    // stable: ties keep input order
    sorted.sort_by(|a, b| b.whitened.total_cmp(&a.whitened));

    let mut out: Vec<Standing> = Vec::with_capacity(sorted.len());
    for (i, r) in sorted.into_iter().enumerate() {
        let tied_with_prev = out
            .last()
            .is_some_and(|p| (p.report.whitened - r.whitened).abs() < TIE_TOLERANCE);
        let rank = if tied_with_prev {
            out[i - 1].rank
        } else {
            i + 1
        };
        if tied_with_prev {
            out[i - 1].tied = true;
        }
        out.push(Standing {
            rank,
            tied: tied_with_prev,
            report: r.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table1_g1() -> GradeDistribution {
        [("A", 20), ("B", 15), ("C", 7), ("D", 10), ("F", 8)]
            .into_iter()
            .collect()
    }

    fn table1_g2() -> GradeDistribution {
        [("A", 20), ("B", 30), ("C", 15), ("D", 15), ("F", 5)]
            .into_iter()
            .collect()
    }

    fn example2_sheet() -> ScoreSheet {
        let rows: [(&str, [f64; 6]); 5] = [
            ("P1", [43.0, 48.0, 49.0, 49.0, 50.0, 52.0]),
            ("P2", [81.0, 83.0, 85.0, 88.0, 91.0, 95.0]),
            ("P3", [76.0, 82.0, 89.0, 95.0, 95.0, 98.0]),
            ("P4", [86.0, 86.0, 87.0, 87.0, 87.0, 88.0]),
            ("P5", [35.0, 40.0, 44.0, 52.0, 59.0, 62.0]),
        ];
        let mut sheet = ScoreSheet::new();
        for (p, scores) in rows {
            for s in scores {
                sheet.push(p, s);
            }
        }
        sheet
    }

    // Expected endpoints below are the exact rationals from summing the
    // grade endpoints by hand, e.g. G1: 3745/60 and 4760/60.
    #[test]
    fn table1_means() {
        let s = GradeScale::default_scale();
        let m1 = mean_gn(&table1_g1(), &s).unwrap();
        assert!((m1.lower() - 3745.0 / 60.0).abs() < 1e-9);
        assert!((m1.upper() - 4760.0 / 60.0).abs() < 1e-9);
        let m2 = mean_gn(&table1_g2(), &s).unwrap();
        assert!((m2.lower() - 5600.0 / 85.0).abs() < 1e-9);
        assert!((m2.upper() - 6760.0 / 85.0).abs() < 1e-9);
    }

    #[test]
    fn single_grade_identity() {
        let s = GradeScale::default_scale();
        let d = GradeDistribution::new().with("C", 17);
        assert_eq!(
            mean_gn(&d, &s).unwrap(),
            GreyNumber::new(60.0, 74.0).unwrap()
        );

        let r = assess(
            "all-A",
            &GradeDistribution::new().with("A", 3),
            &s,
            Whitening::default(),
        )
        .unwrap();
        assert_eq!(r.whitened, 92.5);
        assert_eq!(r.grade, "A");
    }

    #[test]
    fn mean_errors() {
        let s = GradeScale::default_scale();
        assert_eq!(
            mean_gn(&GradeDistribution::new(), &s),
            Err(Error::EmptyDistribution)
        );
        assert_eq!(
            mean_gn(&GradeDistribution::new().with("A", 0), &s),
            Err(Error::EmptyDistribution)
        );
        assert_eq!(
            mean_gn(&GradeDistribution::new().with("E", 2), &s),
            Err(Error::UnknownGrade("E".into()))
        );
    }

    #[test]
    fn assess_table1() {
        let s = GradeScale::default_scale();
        let t = Whitening::default();
        let r1 = assess("G1", &table1_g1(), &s, t).unwrap();
        let r2 = assess("G2", &table1_g2(), &s, t).unwrap();
        assert!((r1.whitened - 70.875).abs() < 1e-9);
        assert!((r2.whitened - 72.705_882_352_941_17).abs() < 1e-9);
        assert_eq!((r1.grade.as_str(), r2.grade.as_str()), ("C", "C"));
        assert_eq!((r1.n, r2.n), (60, 85));

        let ranking = compare_groups(&[r1, r2]).unwrap();
        assert_eq!(ranking[0].report.group_id, "G2");
        assert_eq!(ranking[0].rank, 1);
        assert_eq!(ranking[1].rank, 2);
        assert!(!ranking[0].tied);
    }

    #[test]
    fn example2_distribution() {
        let s = GradeScale::default_scale();
        let sheet = example2_sheet();
        assert_eq!(sheet.subjects().len(), 5);
        assert_eq!(sheet.len(), 30);
        let d = scores_to_distribution(&sheet, &s).unwrap();
        let counts: Vec<_> = d.in_scale_order(&s).collect();
        assert_eq!(
            counts,
            vec![("A", 14), ("B", 4), ("C", 1), ("D", 4), ("F", 7)]
        );

        let r = assess("players", &d, &s, Whitening::default()).unwrap();
        assert!((r.mean_gn.lower() - 1750.0 / 30.0).abs() < 1e-9);
        assert!((r.mean_gn.upper() - 2389.0 / 30.0).abs() < 1e-9);
        assert!((r.whitened - 68.983_333_333_333_33).abs() < 1e-9);
        assert_eq!(r.grade, "C");
        assert!((sheet.raw_mean().unwrap() - 2162.0 / 30.0).abs() < 1e-9);
    }

    #[test]
    fn sheet_edge_cases() {
        let s = GradeScale::default_scale();
        let mut one = ScoreSheet::new();
        one.push("x", 100.0);
        let d = scores_to_distribution(&one, &s).unwrap();
        assert_eq!(d.count("A"), 1);
        assert_eq!(d.total(), 1);

        let mut fifty = ScoreSheet::new();
        fifty.push("x", 50.0);
        assert_eq!(fifty.raw_mean().unwrap(), 50.0);

        let mut ends = ScoreSheet::new();
        ends.push("x", 0.0);
        ends.push("y", 100.0);
        assert_eq!(ends.raw_mean().unwrap(), 50.0);

        assert_eq!(ScoreSheet::new().raw_mean(), Err(Error::EmptySheet));
        assert_eq!(
            scores_to_distribution(&ScoreSheet::new(), &s),
            Err(Error::EmptySheet)
        );

        let mut bad = ScoreSheet::new();
        bad.push("P9", 101.0);
        assert!(matches!(
            scores_to_distribution(&bad, &s),
            Err(Error::SubjectScoreOutOfDomain { ref subject, score, .. }) if subject == "P9" && score == 101.0
        ));
    }

    #[test]
    fn per_subject_sheet() {
        let sheet = example2_sheet();
        let p4 = sheet.subject("P4").unwrap();
        let d = scores_to_distribution(&p4, &GradeScale::default_scale()).unwrap();
        assert_eq!(d.count("A"), 6);
        assert!(sheet.subject("P6").is_none());
    }

    #[test]
    fn compare_ties_and_singletons() {
        let s = GradeScale::default_scale();
        let t = Whitening::default();
        let a = assess("a", &table1_g1(), &s, t).unwrap();
        let b = assess("b", &table1_g1(), &s, t).unwrap();
        let c = assess("c", &table1_g2(), &s, t).unwrap();
        let r = compare_groups(&[a.clone(), c, b]).unwrap();
        assert_eq!(r[0].report.group_id, "c");
        assert_eq!((r[1].rank, r[2].rank), (2, 2));
        assert!(r[1].tied && r[2].tied);
        assert_eq!(r[1].report.group_id, "a");

        let single = compare_groups(std::slice::from_ref(&a)).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].report, a);
        assert!(compare_groups(&[]).unwrap().is_empty());
    }

    #[test]
    fn compare_rejects_mixed_settings() {
        let t = Whitening::default();
        let a = assess("a", &table1_g1(), &GradeScale::default_scale(), t).unwrap();
        let b = assess("b", &table1_g1(), &GradeScale::strict_scale(), t).unwrap();
        assert_eq!(compare_groups(&[a.clone(), b]), Err(Error::MixedScales));
        let c = assess(
            "c",
            &table1_g1(),
            &GradeScale::default_scale(),
            Whitening::new(0.3).unwrap(),
        )
        .unwrap();
        assert_eq!(compare_groups(&[a, c]), Err(Error::MixedWhitening));
    }

    const LABELS: [&str; 5] = ["A", "B", "C", "D", "F"];

    fn counts(max: u64) -> impl Strategy<Value = [u64; 5]> {
        prop::array::uniform5(0..=max).prop_filter("n >= 1", |c| c.iter().sum::<u64>() > 0)
    }

    fn dist_of(c: &[u64; 5]) -> GradeDistribution {
        LABELS.iter().zip(c).map(|(l, &n)| (*l, n)).collect()
    }

    proptest! {
        #[test]
        fn order_independent(c in counts(50), idx in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
            let s = GradeScale::default_scale();
            let permuted: GradeDistribution = idx.iter().map(|&i| (LABELS[i], c[i])).collect();
            prop_assert_eq!(mean_gn(&dist_of(&c), &s).unwrap(), mean_gn(&permuted, &s).unwrap());
        }

        #[test]
        fn endpoints_are_weighted_averages(c in counts(200)) {
            let s = GradeScale::default_scale();
            let m = mean_gn(&dist_of(&c), &s).unwrap();
            let n: u64 = c.iter().sum();
            let mut lo = 0.0;
            let mut hi = 0.0;
            for (l, &k) in LABELS.iter().zip(&c) {
                let g = s.grade_to_gn(l).unwrap();
                lo += k as f64 * g.lower();
                hi += k as f64 * g.upper();
            }
            prop_assert!((m.lower() - lo / n as f64).abs() < 1e-9);
            prop_assert!((m.upper() - hi / n as f64).abs() < 1e-9);
            prop_assert!(m.lower() >= 0.0 && m.upper() <= 100.0);
        }

        #[test]
        fn upgrading_one_object_raises_whitened(c in counts(30), from in 1usize..5, by in 1usize..5, t in 0.01f64..0.99) {
            let to = from.saturating_sub(by);
            prop_assume!(c[from] > 0);
            let s = GradeScale::default_scale();
            let t = Whitening::new(t).unwrap();
            let before = mean_gn(&dist_of(&c), &s).unwrap().whiten(t);
            let mut moved = c;
            moved[from] -= 1;
            moved[to] += 1;
            let after = mean_gn(&dist_of(&moved), &s).unwrap().whiten(t);
            prop_assert!(after > before, "{before} -> {after}");
        }

        #[test]
        fn midpoint_equals_mean_of_object_midpoints(c in counts(2).prop_filter("n <= 10", |c| c.iter().sum::<u64>() <= 10)) {
            let s = GradeScale::default_scale();
            let mut mids = Vec::new();
            for (l, &k) in LABELS.iter().zip(&c) {
                let g = s.grade_to_gn(l).unwrap();
                for _ in 0..k {
                    mids.push((g.lower() + g.upper()) / 2.0);
                }
            }
            let brute = mids.iter().sum::<f64>() / mids.len() as f64;
            prop_assert!((mean_gn(&dist_of(&c), &s).unwrap().midpoint() - brute).abs() < 1e-9);
        }

        #[test]
        fn raw_mean_inside_mean_gn(scores in prop::collection::vec(0u32..=100, 1..60)) {
            let s = GradeScale::default_scale();
            let mut sheet = ScoreSheet::new();
            for (i, x) in scores.iter().enumerate() {
                sheet.push(&format!("s{}", i % 4), *x as f64);
            }
            let m = mean_gn(&scores_to_distribution(&sheet, &s).unwrap(), &s).unwrap();
            let raw = sheet.raw_mean().unwrap();
            prop_assert!(m.lower() - 1e-9 <= raw && raw <= m.upper() + 1e-9);
        }
    }
}
