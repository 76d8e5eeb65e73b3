//! Triangular fuzzy number form of the assessment, used to cross-check the
//! grey-number route.
//!
//! Each grade `[lo, hi]` maps to the symmetric triangle `(lo, (lo + hi) / 2, hi)`.
//! The group mean is the count-weighted componentwise average and is
//! defuzzified as `(a + c) / 2`. Membership functions are never built.

use crate::assessment::{mean_gn, GradeDistribution};
use crate::error::{Error, Result};
use crate::grey::Whitening;
use crate::scale::GradeScale;

/// `(a, b, c)`: left end, peak, right end, with `a <= b <= c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularFuzzyNumber {
    a: f64,
    b: f64,
    c: f64,
}

impl TriangularFuzzyNumber {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) || !(a <= b && b <= c) {
            return Err(Error::InvalidInterval { lower: a, upper: c });
        }
        Ok(TriangularFuzzyNumber { a, b, c })
    }

    pub fn left(&self) -> f64 {
        self.a
    }

    pub fn peak(&self) -> f64 {
        self.b
    }

    pub fn right(&self) -> f64 {
        self.c
    }

    /// `(a + c) / 2`. Equals the peak only for symmetric triangles.
    pub fn defuzzify(&self) -> f64 {
        (self.a + self.c) / 2.0
    }
}

pub fn grade_to_tfn(scale: &GradeScale, label: &str) -> Result<TriangularFuzzyNumber> {
    let g = scale.grade_to_gn(label)?;
    TriangularFuzzyNumber::new(g.lower(), (g.lower() + g.upper()) / 2.0, g.upper())
}

/// Componentwise `(1/n) * sum_g count(g) * tfn(g)`.
pub fn tfn_mean(dist: &GradeDistribution, scale: &GradeScale) -> Result<TriangularFuzzyNumber> {
    dist.check(scale)?;
    let n = dist.total() as f64;
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for label in scale.labels() {
        let k = dist.count(label) as f64;
        if k == 0.0 {
            continue;
        }
        let t = grade_to_tfn(scale, label)?;
        a += k * t.a;
        b += k * t.b;
        c += k * t.c;
    }
    let (a, b, c) = (a / n, b / n, c / n);
    // rounding can nudge the peak a hair outside [a, c]
    TriangularFuzzyNumber::new(a, b.clamp(a, c), c)
}

/// Maximum allowed gap between the two routes.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub gn_whitened: f64,
    pub tfn_defuzzified: f64,
    pub tfn_peak: f64,
    pub difference: f64,
    pub pass: bool,
}

/// Compares `whiten(mean_gn, 1/2)` with `defuzzify(tfn_mean)`.
pub fn check_equivalence(
    dist: &GradeDistribution,
    scale: &GradeScale,
) -> Result<EquivalenceReport> {
    let gn_whitened = mean_gn(dist, scale)?.whiten(Whitening::EQUAL_WEIGHT);
    let tfn = tfn_mean(dist, scale)?;
    let tfn_defuzzified = tfn.defuzzify();
    let difference = (gn_whitened - tfn_defuzzified).abs();
    Ok(EquivalenceReport {
        gn_whitened,
        tfn_defuzzified,
        tfn_peak: tfn.peak(),
        difference,
        pass: difference <= EQUIVALENCE_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grey::GreyNumber;
    use crate::scale::Grade;
    use proptest::prelude::*;

    fn tfn(a: f64, b: f64, c: f64) -> TriangularFuzzyNumber {
        TriangularFuzzyNumber::new(a, b, c).unwrap()
    }

    #[test]
    fn grade_triangles() {
        let s = GradeScale::default_scale();
        assert_eq!(grade_to_tfn(&s, "A").unwrap(), tfn(85.0, 92.5, 100.0));
        assert_eq!(grade_to_tfn(&s, "B").unwrap(), tfn(75.0, 79.5, 84.0));
        assert_eq!(grade_to_tfn(&s, "C").unwrap(), tfn(60.0, 67.0, 74.0));
        assert_eq!(grade_to_tfn(&s, "D").unwrap(), tfn(50.0, 54.5, 59.0));
        assert_eq!(grade_to_tfn(&s, "F").unwrap(), tfn(0.0, 24.5, 49.0));
        assert!(grade_to_tfn(&s, "Z").is_err());
    }

    #[test]
    fn rejects_unordered_triple() {
        assert!(TriangularFuzzyNumber::new(1.0, 0.5, 2.0).is_err());
        assert!(TriangularFuzzyNumber::new(1.0, 3.0, 2.0).is_err());
    }

    #[test]
    fn defuzzification() {
        assert_eq!(tfn(85.0, 92.5, 100.0).defuzzify(), 92.5);
        assert_eq!(tfn(7.0, 7.0, 7.0).defuzzify(), 7.0);
        // asymmetric: defuzzified value differs from the peak
        assert_eq!(tfn(0.0, 10.0, 40.0).defuzzify(), 20.0);
    }

    #[test]
    fn means() {
        let s = GradeScale::default_scale();
        let b_only = GradeDistribution::new().with("B", 9);
        assert_eq!(tfn_mean(&b_only, &s).unwrap(), tfn(75.0, 79.5, 84.0));

        // G1 oracle: (3745, 4252.5, 4760) / 60 summed by hand from Table 1
        let g1: GradeDistribution = [("A", 20), ("B", 15), ("C", 7), ("D", 10), ("F", 8)]
            .into_iter()
            .collect();
        let m = tfn_mean(&g1, &s).unwrap();
        assert!((m.left() - 3745.0 / 60.0).abs() < 1e-9);
        assert!((m.peak() - 70.875).abs() < 1e-9);
        assert!((m.right() - 4760.0 / 60.0).abs() < 1e-9);
        assert!((m.defuzzify() - 70.875).abs() < 1e-9);

        // Example 2: peak sum 14*92.5 + 4*79.5 + 67 + 4*54.5 + 7*24.5 = 2069.5
        let ex2: GradeDistribution = [("A", 14), ("B", 4), ("C", 1), ("D", 4), ("F", 7)]
            .into_iter()
            .collect();
        let m = tfn_mean(&ex2, &s).unwrap();
        assert!((m.peak() - 2069.5 / 30.0).abs() < 1e-9);
        let eq = check_equivalence(&ex2, &s).unwrap();
        assert!(eq.pass);
        assert!((eq.gn_whitened - m.peak()).abs() < 1e-9);

        assert_eq!(
            tfn_mean(&GradeDistribution::new(), &s),
            Err(Error::EmptyDistribution)
        );
    }

    fn counts() -> impl Strategy<Value = [u64; 5]> {
        prop::array::uniform5(0u64..100).prop_filter("n >= 1", |c| c.iter().sum::<u64>() > 0)
    }

    proptest! {
        #[test]
        fn routes_agree(c in counts()) {
            let s = GradeScale::default_scale();
            let d: GradeDistribution = ["A", "B", "C", "D", "F"].into_iter().zip(c).collect();
            let eq = check_equivalence(&d, &s).unwrap();
            prop_assert!(eq.pass, "{eq:?}");
        }

        #[test]
        fn mean_keeps_order_and_symmetry(c in counts(), cuts in prop::array::uniform4(1.0f64..99.0)) {
            // arbitrary non-integer scale: grade i = [cut_i, cut_{i+1} - 0.001]
            let mut b = cuts.to_vec();
            b.sort_by(f64::total_cmp);
            b.dedup();
            prop_assume!(b.len() == 4 && b.windows(2).all(|w| w[1] - w[0] > 0.01));
            let bounds = [0.0, b[0], b[1], b[2], b[3]];
            let labels = ["F", "D", "C", "B", "A"];
            let grades: Vec<Grade> = (0..5)
                .rev()
                .map(|i| {
                    let hi = if i == 4 { 100.0 } else { bounds[i + 1] - 0.001 };
                    Grade::new(labels[i], GreyNumber::new(bounds[i], hi).unwrap())
                })
                .collect();
            let s = GradeScale::new(grades, GreyNumber::new(0.0, 100.0).unwrap());
            prop_assert!(s.is_valid());
            let d: GradeDistribution = ["A", "B", "C", "D", "F"].into_iter().zip(c).collect();
            let m = tfn_mean(&d, &s).unwrap();
            prop_assert!(m.left() <= m.peak() && m.peak() <= m.right());
            prop_assert!((m.peak() - (m.left() + m.right()) / 2.0).abs() < 1e-9);
            prop_assert!(check_equivalence(&d, &s).unwrap().pass);
        }
    }
}
