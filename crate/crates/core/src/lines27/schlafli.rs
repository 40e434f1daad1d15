use std::fmt;
use std::str::FromStr;

use super::LineSet27;
use crate::error::{Error, Result};

/// Schläfli's name for one of the 27 lines; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A(u8),
    B(u8),
    /// `c_ij` with `i < j`.
    C(u8, u8),
}

impl Label {
    /// All 27 labels in the order a1..a6, b1..b6, c12..c56.
    pub fn all() -> Vec<Label> {
        let mut v: Vec<Label> = (1..=6).map(Label::A).collect();
        v.extend((1..=6).map(Label::B));
        for i in 1..=6 {
            for j in (i + 1)..=6 {
                v.push(Label::C(i, j));
            }
        }
        v
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(i) => write!(f, "a{i}"),
            Label::B(i) => write!(f, "b{i}"),
            Label::C(i, j) => write!(f, "c{i}{j}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad line label {s:?}"));
        let digit = |c: u8| -> Result<u8> {
            if (b'1'..=b'6').contains(&c) {
                Ok(c - b'0')
            } else {
                Err(bad())
            }
        };
        let b = s.as_bytes();
        match (b.first(), b.len()) {
            (Some(b'a'), 2) => Ok(Label::A(digit(b[1])?)),
            (Some(b'b'), 2) => Ok(Label::B(digit(b[1])?)),
            (Some(b'c'), 3) => {
                let (i, j) = (digit(b[1])?, digit(b[2])?);
                if i < j {
                    Ok(Label::C(i, j))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}

/// Whether two distinct labelled lines meet, by Schläfli's rules.
pub fn labels_meet(x: Label, y: Label) -> bool {
    use Label::*;
    match (x, y) {
        (A(_), A(_)) | (B(_), B(_)) => false,
        (A(i), B(j)) | (B(j), A(i)) => i != j,
        (A(i), C(j, k)) | (C(j, k), A(i)) | (B(i), C(j, k)) | (C(j, k), B(i)) => i == j || i == k,
        (C(i, j), C(k, l)) => i != k && i != l && j != k && j != l,
    }
}

/// Assignment of Schläfli labels to the lines of a [`LineSet27`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchlafliLabeling {
    labels: Vec<Label>,
}

impl SchlafliLabeling {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        let mut sorted = labels.clone();
        sorted.sort();
        let mut all = Label::all();
        all.sort();
        if sorted != all {
            return Err(Error::LabelingFailed("labels are not a permutation of the 27 names".into()));
        }
        Ok(SchlafliLabeling { labels })
    }

    /// Label of line `i`.
    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, l: Label) -> usize {
        self.labels.iter().position(|x| *x == l).expect("labeling is a bijection")
    }

    /// Exchanges the labels carried by two lines.
    pub fn swapped(&self, x: Label, y: Label) -> SchlafliLabeling {
        let (i, j) = (self.index_of(x), self.index_of(y));
        let mut labels = self.labels.clone();
        labels.swap(i, j);
        SchlafliLabeling { labels }
    }
}

/// Labels the lines from a chosen skew sextuple `a` (taken as `a1..a6`).
pub fn label_from_sextuple(ls: &LineSet27, a: &[usize; 6]) -> Result<SchlafliLabeling> {
    let b = ls.partner_sextuple(a).ok_or_else(|| Error::LabelingFailed("no partner sextuple".into()))?;
    let mut labels: Vec<Option<Label>> = vec![None; ls.len()];
    for i in 0..6 {
        labels[a[i]] = Some(Label::A(i as u8 + 1));
        labels[b[i]] = Some(Label::B(i as u8 + 1));
    }
    for k in 0..ls.len() {
        if labels[k].is_some() {
            continue;
        }
        let met: Vec<u8> = (0..6).filter(|&i| ls.meet(a[i], k)).map(|i| i as u8 + 1).collect();
        if met.len() != 2 {
            return Err(Error::LabelingFailed(format!("line {k} meets {} of the a-lines", met.len())));
        }
        labels[k] = Some(Label::C(met[0], met[1]));
    }
    let labels = labels
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::LabelingFailed("unlabelled line".into()))?;
    let lab = SchlafliLabeling::new(labels)?;
    if !verify_schlafli_rules(ls, &lab) {
        return Err(Error::LabelingFailed("labels violate the intersection rules".into()));
    }
    Ok(lab)
}

/// Deterministic labeling: the lexicographically first skew sextuple becomes `a1..a6`.
pub fn schlafli_label(ls: &LineSet27) -> Result<SchlafliLabeling> {
    let first =
        ls.skew_sextuples().into_iter().next().ok_or_else(|| Error::LabelingFailed("no skew sextuple".into()))?;
    label_from_sextuple(ls, &first)
}

/// Checks all 351 pairs against Schläfli's intersection rules.
pub fn verify_schlafli_rules(ls: &LineSet27, lab: &SchlafliLabeling) -> bool {
    if lab.labels.len() != ls.len() {
        return false;
    }
    (0..ls.len()).all(|i| ((i + 1)..ls.len()).all(|j| labels_meet(lab.labels[i], lab.labels[j]) == ls.meet(i, j)))
}

/// Incidence matrix in label order `a1..a6, b1..b6, c12..c56` as CSV, with a
/// header row and a label column; `1` marks meeting lines.
pub fn roadmap_csv(ls: &LineSet27, lab: &SchlafliLabeling) -> String {
    let order: Vec<(Label, usize)> = Label::all().into_iter().map(|l| (l, lab.index_of(l))).collect();
    let mut out = String::from("label");
    for (l, _) in &order {
        out.push_str(&format!(",{l}"));
    }
    out.push('\n');
    for (l, i) in &order {
        out.push_str(&l.to_string());
        for (_, j) in &order {
            out.push_str(if ls.meet(*i, *j) { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}
