use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative parts. The length is part of
/// the data: `(2)` and `(2, 0)` are different partitions here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::precondition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// `(n, 0, …, 0)` with exactly `zeros` trailing zeros.
    pub fn hook_row(n: usize, zeros: usize) -> Self {
        let mut parts = vec![n];
        parts.extend(std::iter::repeat(0).take(zeros));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Append a zero part.
    pub fn with_zero(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.push(0);
        Partition { parts }
    }

    /// Add one to every part.
    pub fn shifted(&self) -> Self {
        Partition { parts: self.parts.iter().map(|x| x + 1).collect() }
    }

    /// Hook lengths of the Young diagram, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for (j, &col) in conj.iter().enumerate().take(row) {
                out.push((row - j - 1) + (col - i - 1) + 1);
            }
        }
        out
    }

    /// Column lengths of the diagram (zero parts contribute nothing).
    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.parts.first().copied().unwrap_or(0);
        (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect()
    }

    /// Every partition of length `len` with parts `≤ max_part`.
    pub fn in_box(max_part: usize, len: usize) -> Vec<Partition> {
        fn rec(prefix: &mut Vec<usize>, cap: usize, len: usize, out: &mut Vec<Partition>) {
            if prefix.len() == len {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (0..=cap).rev() {
                prefix.push(p);
                rec(prefix, p, len, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), max_part, len, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses `"3,2,1"`; the empty string is the empty partition.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Partition::new(vec![]);
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}
