//! Finite matrix windows `⟨T e_m, e_{m'}⟩` and their CSV / JSON exports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IndexBox, MultiIndex};
use crate::scalar::Scalar;

/// Rows are indexed by `m'` (output), columns by `m` (input), both in box
/// enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixWindow {
    rows: IndexBox,
    cols: IndexBox,
    entries: Vec<Vec<Scalar>>,
}

impl MatrixWindow {
    pub fn new(rows: IndexBox, cols: IndexBox, entries: Vec<Vec<Scalar>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Input(format!(
                "window entries do not match a {}x{} shape",
                rows.len(),
                cols.len()
            )));
        }
        Ok(MatrixWindow {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> &IndexBox {
        &self.rows
    }

    pub fn cols(&self) -> &IndexBox {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    /// The entry at row `m'`, column `m`, if both lie in the window.
    pub fn get(&self, m_prime: &MultiIndex, m: &MultiIndex) -> Option<&Scalar> {
        let r = self.rows.position(m_prime)?;
        let c = self.cols.position(m)?;
        Some(&self.entries[r][c])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    /// CSV with one row per `m'` and one column per `m`; the header row and
    /// first column carry the multi-index labels.
    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["m'\\m".to_string()];
        header.extend(self.cols.iter().map(|m| m.to_string()));
        wtr.write_record(&header).map_err(csv_err)?;
        for (m2, row) in self.rows.iter().zip(&self.entries) {
            let mut rec = vec![m2.to_string()];
            rec.extend(row.iter().map(Scalar::to_string));
            wtr.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = wtr.into_inner().map_err(|e| Error::Input(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("window serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w: MatrixWindow =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        MatrixWindow::new(w.rows, w.cols, w.entries)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Input(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MatrixWindow {
        let rows = IndexBox::cube_i64(1, 1).unwrap();
        let cols = "(0)..(1)".parse().unwrap();
        let entries = vec![
            vec![Scalar::ONE, Scalar::ZERO],
            vec![Scalar::from_ratios(-1, 2, 1, 3), Scalar::I],
            vec![Scalar::ZERO, Scalar::from_int(7)],
        ];
        MatrixWindow::new(rows, cols, entries).unwrap()
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "m'\\m,(0),(1)");
        assert_eq!(lines[1], "(-1),1+0i,0+0i");
        assert_eq!(lines[2], "(0),-1/2+1/3i,0+1i");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn csv_quotes_multidimensional_labels() {
        let b: IndexBox = "(0,0)..(0,1)".parse().unwrap();
        let w = MatrixWindow::new(b.clone(), b, vec![vec![Scalar::ZERO; 2]; 2]).unwrap();
        let csv = w.to_csv().unwrap();
        assert!(csv.starts_with("m'\\m,\"(0,0)\",\"(0,1)\""), "{csv}");
    }

    #[test]
    fn json_round_trip_and_lookup() {
        let w = sample();
        let back = MatrixWindow::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
        let m2 = MultiIndex::from_i64s(&[0]);
        assert_eq!(w.get(&m2, &MultiIndex::from_i64s(&[1])), Some(&Scalar::I));
        assert_eq!(w.get(&m2, &MultiIndex::from_i64s(&[2])), None);
    }

    #[test]
    fn shape_is_validated() {
        let b = IndexBox::cube_i64(1, 1).unwrap();
        assert!(MatrixWindow::new(b.clone(), b, vec![vec![Scalar::ZERO; 3]; 2]).is_err());
    }
}
