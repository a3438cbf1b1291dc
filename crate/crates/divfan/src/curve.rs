//! Abstract smooth projective curves: a genus and a finite list of labeled
//! points. Everything downstream uses only the genus, the labels, and the
//! canonical degree 2g - 2.

use crate::DivError;

/// Reserved label for the horizontal part of the hyperspace.
pub const GENERIC_LABEL: &str = "generic";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveData {
    genus: usize,
    points: Vec<String>,
}

impl CurveData {
    pub fn new(genus: usize, points: Vec<String>) -> Result<CurveData, DivError> {
        for (i, p) in points.iter().enumerate() {
            if p == GENERIC_LABEL {
                return Err(DivError::Label(format!("\"{GENERIC_LABEL}\" is reserved")));
            }
            if points[..i].contains(p) {
                return Err(DivError::Label(format!("\"{p}\" listed twice")));
            }
        }
        Ok(CurveData { genus, points })
    }

    /// The projective line with the given labeled points.
    pub fn projective_line(points: &[&str]) -> CurveData {
        CurveData::new(0, points.iter().map(|s| s.to_string()).collect())
            .expect("valid point labels")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn has_point(&self, label: &str) -> bool {
        self.points.iter().any(|p| p == label)
    }

    /// deg K_C = 2g - 2.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }

    /// Adds a fresh labeled point, erroring on collisions.
    pub fn add_point(&mut self, label: &str) -> Result<(), DivError> {
        if label == GENERIC_LABEL {
            return Err(DivError::Label(format!("\"{GENERIC_LABEL}\" is reserved")));
        }
        if self.has_point(label) {
            return Err(DivError::Label(format!("\"{label}\" listed twice")));
        }
        self.points.push(label.to_string());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_distinct_and_not_reserved() {
        assert!(CurveData::new(0, vec!["0".into(), "inf".into()]).is_ok());
        assert!(CurveData::new(0, vec!["0".into(), "0".into()]).is_err());
        assert!(CurveData::new(1, vec!["generic".into()]).is_err());
    }

    #[test]
    fn canonical_degree_is_two_g_minus_two() {
        assert_eq!(CurveData::projective_line(&["0"]).canonical_degree(), -2);
        assert_eq!(CurveData::new(1, vec![]).unwrap().canonical_degree(), 0);
        assert_eq!(CurveData::new(3, vec![]).unwrap().canonical_degree(), 4);
    }
}
