use serde::{Deserialize, Serialize};

use super::EXCLUSION;
use crate::complex::ComplexValue;
use crate::error::{Error, Result};
use crate::measures::MeasureSpec;

/// Evaluation points kept away from the cut `(−∞, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalGrid {
    points: Vec<ComplexValue>,
}

fn distance_to_left_cut(z: ComplexValue) -> f64 {
    if z.re <= 1.0 {
        z.im.abs()
    } else {
        (z - 1.0).norm()
    }
}

impl EvalGrid {
    pub fn new(points: Vec<ComplexValue>) -> Result<Self> {
        if let Some(z) = points.iter().find(|z| !(distance_to_left_cut(**z) >= EXCLUSION)) {
            return Err(Error::cut(*z, "grid point within the exclusion zone of (−∞, 1]"));
        }
        Ok(EvalGrid { points })
    }

    /// Points kept away from the support of `m` only.
    pub fn off_support(points: Vec<ComplexValue>, m: &MeasureSpec) -> Result<Self> {
        for z in &points {
            let distance = m.distance_to_support(*z);
            if !(distance >= EXCLUSION) {
                return Err(Error::Support {
                    re: z.re,
                    im: z.im,
                    distance,
                    measure: m.name().to_string(),
                });
            }
        }
        Ok(EvalGrid { points })
    }

    /// Row-major rectangle: for each imaginary part, real parts from `re_lo`
    /// to `re_hi` inclusive in steps of `step`.
    pub fn rectangle(re_lo: f64, re_hi: f64, step: f64, ims: &[f64]) -> Result<Self> {
        if !(step > 0.0) || !(re_hi >= re_lo) {
            return Err(Error::parameter(format!(
                "bad grid: re ∈ [{re_lo}, {re_hi}] step {step}"
            )));
        }
        let n = ((re_hi - re_lo) / step + 1e-9).floor() as usize + 1;
        let points = ims
            .iter()
            .flat_map(|&im| (0..n).map(move |i| ComplexValue::new(re_lo + i as f64 * step, im)))
            .collect();
        EvalGrid::new(points)
    }

    /// `Re z ∈ [−3, 3]` step 0.25, `Im z ∈ {0.5, 1, 2}`: 75 points.
    pub fn standard() -> Self {
        EvalGrid::rectangle(-3.0, 3.0, 0.25, &[0.5, 1.0, 2.0]).expect("standard grid is valid")
    }

    pub fn points(&self) -> &[ComplexValue] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_shape() {
        let g = EvalGrid::standard();
        assert_eq!(g.len(), 75);
        assert_eq!(g.points()[0], ComplexValue::new(-3.0, 0.5));
        assert_eq!(g.points()[24], ComplexValue::new(3.0, 0.5));
    }

    #[test]
    fn cut_points_rejected() {
        assert!(EvalGrid::new(vec![ComplexValue::new(0.3, 1e-7)]).is_err());
        assert!(EvalGrid::new(vec![ComplexValue::new(1.0 + 1e-7, 0.0)]).is_err());
        assert!(EvalGrid::new(vec![ComplexValue::new(2.0, 0.0)]).is_ok());
        assert!(EvalGrid::new(vec![]).unwrap().is_empty());
    }
}
