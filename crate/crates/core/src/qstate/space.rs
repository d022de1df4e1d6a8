use std::fmt;

use crate::error::{Error, Result};

/// Label of one basis mode: an interferometer path or gate, or a pair for
/// tensor-product spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeLabel {
    Mode(u8),
    /// `∅`: the particle reached no detector.
    Empty,
    Rest,
    Pair(Box<ModeLabel>, Box<ModeLabel>),
}

impl ModeLabel {
    pub fn pair(a: ModeLabel, b: ModeLabel) -> Self {
        ModeLabel::Pair(Box::new(a), Box::new(b))
    }
}

impl From<u8> for ModeLabel {
    fn from(n: u8) -> Self {
        ModeLabel::Mode(n)
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::Mode(n) => write!(f, "{n}"),
            ModeLabel::Empty => write!(f, "∅"),
            ModeLabel::Rest => write!(f, "rest"),
            ModeLabel::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// An ordered list of distinct mode labels spanning a Hilbert space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    labels: Vec<ModeLabel>,
}

impl Space {
    pub fn new(labels: Vec<ModeLabel>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        Ok(Self { labels })
    }

    /// Space of numbered modes `0..n`.
    pub fn modes(n: u8) -> Self {
        Self {
            labels: (0..n).map(ModeLabel::Mode).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: &ModeLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Product space with labels ordered lexicographically `(a, b)`.
    pub fn tensor(&self, other: &Space) -> Space {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(ModeLabel::pair(a.clone(), b.clone()));
            }
        }
        Space { labels }
    }

    pub(crate) fn ensure_same(&self, other: &Space, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!("{what}: {self} vs {other}")))
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}
