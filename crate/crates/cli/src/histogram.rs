//! Histogram CSV for the random-baseline experiments: header
//! `repaired_count,frequency`, one row per distinct count, ascending.

use crate::CliError;
use recov_core::{render_rational, Rational};
use std::collections::BTreeMap;
use std::io::Write;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub frequencies: BTreeMap<usize, u64>,
    pub samples: u64,
}

impl Histogram {
    pub fn from_counts(counts: &[usize]) -> Histogram {
        let mut frequencies = BTreeMap::new();
        for &c in counts {
            *frequencies.entry(c).or_insert(0u64) += 1;
        }
        Histogram {
            frequencies,
            samples: counts.len() as u64,
        }
    }

    /// Exact mean repaired count, rendered as a decimal or fraction string.
    pub fn mean(&self) -> String {
        let total: u64 = self.frequencies.iter().map(|(c, f)| *c as u64 * f).sum();
        let mean = Rational::new(total.into(), self.samples.into());
        render_rational(&mean)
    }

    /// Most frequent count; ties break toward the smaller count.
    pub fn mode(&self) -> usize {
        self.frequencies
            .iter()
            .max_by_key(|(count, f)| (**f, std::cmp::Reverse(**count)))
            .map(|(c, _)| *c)
            .expect("histogram has samples")
    }

    pub fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "repaired_count,frequency")?;
        for (count, freq) in &self.frequencies {
            writeln!(out, "{count},{freq}")?;
        }
        Ok(())
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), CliError> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        std::fs::write(path, buf)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequencies_sum_to_sample_count() {
        let h = Histogram::from_counts(&[2, 2, 3, 7, 2]);
        assert_eq!(h.samples, 5);
        assert_eq!(h.frequencies.values().sum::<u64>(), 5);
        assert_eq!(h.mode(), 2);
        assert_eq!(h.mean(), "3.2");
        let mut buf = Vec::new();
        h.write(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "repaired_count,frequency\n2,3\n3,1\n7,1\n"
        );
    }
}
