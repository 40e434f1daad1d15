use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::proj::{lines_meet, ProjLine, LINE_EQ_TOL};

/// Lines met by each line of a nonsingular cubic.
pub const NEIGHBOURS_PER_LINE: usize = 10;
/// Sets of six pairwise disjoint lines.
pub const SKEW_SEXTUPLES: usize = 72;
pub const DOUBLE_SIXES: usize = 36;

/// The 27 lines of a cubic with their incidence relation.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSet27 {
    lines: Vec<ProjLine>,
    /// `adjacency[i][j]` is true when lines `i` and `j` meet; false on the diagonal.
    adjacency: Vec<Vec<bool>>,
}

impl LineSet27 {
    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn meet(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Indices of the lines meeting every line in `set` (and not in it).
    pub fn common_transversals(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|k| !set.contains(k) && set.iter().all(|&s| self.adjacency[s][*k])).collect()
    }

    /// Unordered pairs `(i, j)`, `i < j`, of disjoint lines.
    pub fn skew_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| !self.adjacency[i][j]).collect()
    }

    /// Adjacency rows as strings of `0`/`1`.
    pub fn adjacency_bits(&self) -> Vec<String> {
        self.adjacency.iter().map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect()
    }

    /// All sets of six pairwise disjoint lines, each sorted, in lexicographic order.
    pub fn skew_sextuples(&self) -> Vec<[usize; 6]> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(6);
        self.extend_skew(0, &mut stack, &mut out);
        out
    }

    fn extend_skew(&self, from: usize, stack: &mut Vec<usize>, out: &mut Vec<[usize; 6]>) {
        if stack.len() == 6 {
            out.push(std::array::from_fn(|k| stack[k]));
            return;
        }
        for k in from..self.len() {
            if stack.iter().all(|&s| !self.adjacency[s][k]) {
                stack.push(k);
                self.extend_skew(k + 1, stack, out);
                stack.pop();
            }
        }
    }

    /// For a skew sextuple `a`, the lines `b_i` meeting every `a_j` except `a_i`,
    /// if each is unique.
    pub fn partner_sextuple(&self, a: &[usize; 6]) -> Option<[usize; 6]> {
        let mut b = [0usize; 6];
        for i in 0..6 {
            let cands: Vec<usize> = (0..self.len())
                .filter(|k| !a.contains(k))
                .filter(|&k| (0..6).all(|j| self.adjacency[a[j]][k] == (j != i)))
                .collect();
            if cands.len() != 1 {
                return None;
            }
            b[i] = cands[0];
        }
        Some(b)
    }

    /// Double sixes as unordered pairs of sorted sextuples.
    pub fn double_sixes(&self) -> Vec<([usize; 6], [usize; 6])> {
        let sextuples = self.skew_sextuples();
        let mut seen = BTreeSet::new();
        for a in &sextuples {
            if let Some(b) = self.partner_sextuple(a) {
                let mut bs = b;
                bs.sort_unstable();
                let skew = (0..6).all(|i| (i + 1..6).all(|j| !self.adjacency[bs[i]][bs[j]]));
                if skew {
                    seen.insert(if *a <= bs { (*a, bs) } else { (bs, *a) });
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Builds the incidence graph of 27 distinct lines and checks the counts every
/// nonsingular cubic satisfies: 10 neighbours per line, 72 skew sextuples,
/// 36 double sixes.
pub fn intersection_graph(lines: &[ProjLine]) -> Result<LineSet27> {
    if lines.len() != 27 {
        return Err(Error::GraphInvariantViolation(format!("{} lines, expected 27", lines.len())));
    }
    for i in 0..27 {
        for j in (i + 1)..27 {
            if lines[i].distance(&lines[j]) < LINE_EQ_TOL {
                return Err(Error::GraphInvariantViolation(format!("lines {i} and {j} coincide")));
            }
        }
    }
    let adjacency: Vec<Vec<bool>> =
        (0..27).map(|i| (0..27).map(|j| i != j && lines_meet(&lines[i], &lines[j])).collect()).collect();
    let ls = LineSet27 { lines: lines.to_vec(), adjacency };
    for (i, row) in ls.adjacency.iter().enumerate() {
        let deg = row.iter().filter(|b| **b).count();
        if deg != NEIGHBOURS_PER_LINE {
            return Err(Error::GraphInvariantViolation(format!("line {i} meets {deg} lines")));
        }
    }
    let sextuples = ls.skew_sextuples().len();
    if sextuples != SKEW_SEXTUPLES {
        return Err(Error::GraphInvariantViolation(format!("{sextuples} skew sextuples")));
    }
    let ds = ls.double_sixes().len();
    if ds != DOUBLE_SIXES {
        return Err(Error::GraphInvariantViolation(format!("{ds} double sixes")));
    }
    Ok(ls)
}

/// Serialized form of a line set with optional labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineSetRecord {
    pub lines: Vec<ProjLine>,
    pub adjacency: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
}

impl LineSetRecord {
    pub fn new(ls: &LineSet27, labels: Option<&super::SchlafliLabeling>) -> Self {
        LineSetRecord {
            lines: ls.lines.clone(),
            adjacency: ls.adjacency_bits(),
            labels: labels.map(|l| l.labels().iter().map(ToString::to_string).collect()),
        }
    }

    /// Rebuilds the line set, recomputing and cross-checking the adjacency.
    pub fn into_line_set(self) -> Result<LineSet27> {
        let ls = intersection_graph(&self.lines)?;
        if ls.adjacency_bits() != self.adjacency {
            return Err(Error::GraphInvariantViolation("stored adjacency does not match the lines".into()));
        }
        Ok(ls)
    }
}
