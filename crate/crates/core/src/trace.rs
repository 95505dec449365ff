use serde::Serialize;

use crate::{ComplexValue, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Checkpoint {
    pub n: u64,
    pub value: ComplexValue,
    /// Analytic reference value reported next to `value`, if any.
    pub reference: Option<ComplexValue>,
}

/// Partial values of a sequence recorded at increasing indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesTrace {
    pub label: String,
    checkpoints: Vec<Checkpoint>,
}

impl SeriesTrace {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            checkpoints: Vec::new(),
        }
    }

    /// Appends a checkpoint; indices must be strictly increasing.
    pub fn push(
        &mut self,
        n: u64,
        value: ComplexValue,
        reference: Option<ComplexValue>,
    ) -> Result<()> {
        if let Some(last) = self.checkpoints.last() {
            if n <= last.n {
                return Err(Error::Domain(format!(
                    "checkpoint index {n} does not exceed previous index {}",
                    last.n
                )));
            }
        }
        self.checkpoints.push(Checkpoint {
            n,
            value,
            reference,
        });
        Ok(())
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    pub fn last(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }

    /// Differences between consecutive checkpoint values.
    pub fn first_differences(&self) -> Vec<(u64, ComplexValue)> {
        self.checkpoints
            .windows(2)
            .map(|w| (w[1].n, w[1].value - w[0].value))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing_index() {
        let mut t = SeriesTrace::new("x");
        t.push(10, ComplexValue::new(1.0, 0.0), None).unwrap();
        assert!(t.push(10, ComplexValue::new(2.0, 0.0), None).is_err());
        assert!(t.push(5, ComplexValue::new(2.0, 0.0), None).is_err());
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn differences_follow_checkpoints() {
        let mut t = SeriesTrace::new("x");
        for (n, v) in [(1, 1.0), (2, 3.0), (4, 7.0)] {
            t.push(n, ComplexValue::new(v, 0.0), None).unwrap();
        }
        let d = t.first_differences();
        assert_eq!(
            d,
            vec![
                (2, ComplexValue::new(2.0, 0.0)),
                (4, ComplexValue::new(4.0, 0.0))
            ]
        );
    }
}
