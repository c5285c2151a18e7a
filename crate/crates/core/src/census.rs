//! Numeric counts of cusps, tangencies, crossings and infinity cuts set
//! against the closed-form predictions.

use serde::{Deserialize, Serialize};

use crate::crossings::{self, count_self_crossings_with};
use crate::envelope::Envelope;
use crate::error::Result;
use crate::families::{FamilyKind, FamilySpec, LineFamily};
use crate::singularity::{class_counts, default_samples, predict, singular_points_of, AnalyticPrediction, ClassCounts};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub cusps: usize,
    pub tangencies: usize,
    pub crossings: Option<usize>,
    pub infinities: usize,
    pub classes: ClassCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub family: FamilySpec,
    pub numeric: Counts,
    pub analytic: Option<AnalyticPrediction>,
    /// Crossings were counted on a curve with infinity cuts.
    pub crossings_partial: bool,
    pub mismatches: Vec<String>,
}

impl CensusReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CensusOptions {
    /// Grid for the singular-point search; `None` uses the default.
    pub singular_samples: Option<usize>,
    /// Polyline size for crossings; `None` uses the default.
    pub crossing_samples: Option<usize>,
    pub skip_crossings: bool,
}

pub fn census(family: &LineFamily) -> Result<CensusReport> {
    census_with(family, CensusOptions::default())
}

pub fn census_with(family: &LineFamily, opts: CensusOptions) -> Result<CensusReport> {
    let env = Envelope::new(family)?;
    let points = singular_points_of(&env, opts.singular_samples.unwrap_or_else(|| default_samples(family.slope)))?;
    let classes = class_counts(&points);
    let crossing = if opts.skip_crossings {
        None
    } else {
        let n = opts.crossing_samples.unwrap_or_else(|| crossings::default_samples(family));
        Some(count_self_crossings_with(family, n)?)
    };
    let numeric = Counts {
        cusps: classes.total(),
        tangencies: env.removable_points().len(),
        crossings: crossing.as_ref().map(|c| c.count),
        infinities: env.infinity_cuts().len(),
        classes,
    };
    let analytic = match family.kind {
        FamilyKind::OneCircle | FamilyKind::TwoCircle => Some(predict(family)?),
        _ => None,
    };

    let mut mismatches = Vec::new();
    if let Some(p) = &analytic {
        let mut check = |what: &str, got: usize, want: usize| {
            if got != want {
                mismatches.push(format!("{what}: numeric {got}, analytic {want}"));
            }
        };
        check("cusps", numeric.cusps, p.total_cusps());
        check("tangencies", numeric.tangencies, p.tangency_count);
        check("infinities", numeric.infinities, p.infinity_count);
        if let (Some(got), Some(want)) = (numeric.crossings, p.crossing_count) {
            check("crossings", got, want);
        }
    }
    Ok(CensusReport {
        family: family.spec(),
        numeric,
        analytic,
        crossings_partial: crossing.map_or(false, |c| c.partial),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::RationalSlope;

    #[test]
    fn five_fourths_census() {
        let fam = LineFamily::one_circle(RationalSlope::new(5, 4).unwrap()).unwrap();
        let rep = census(&fam).unwrap();
        assert!(rep.agrees(), "{rep:?}");
        assert_eq!((rep.numeric.cusps, rep.numeric.tangencies, rep.numeric.crossings), (1, 1, Some(3)));
    }

    #[test]
    fn offset_family_has_no_prediction() {
        let fam = LineFamily::offset_circle(RationalSlope::new(3, 4).unwrap(), 2.5, 0.0, 0.5).unwrap();
        let rep = census_with(&fam, CensusOptions { skip_crossings: true, ..Default::default() }).unwrap();
        assert!(rep.analytic.is_none() && rep.agrees());
    }
}
