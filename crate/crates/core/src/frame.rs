//! Frames of discernment and focal sets.
//!
//! A [`Frame`] is an ordered list of exclusive, exhaustive hypotheses. A
//! [`FocalSet`] is a subset of a frame stored as a bit vector indexed by
//! hypothesis position, so frames wider than a machine word (the target
//! identification scenario uses 135 hypotheses) work the same as tiny ones.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A subset of a frame, as a fixed-width bit vector.
///
/// Ordering is by the raw words (lowest hypothesis bits first), which gives
/// every container keyed by `FocalSet` a deterministic iteration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FocalSet {
    words: Box<[u64]>,
    width: usize,
}

fn word_count(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

impl FocalSet {
    pub fn empty(width: usize) -> Self {
        Self {
            words: vec![0; word_count(width)].into_boxed_slice(),
            width,
        }
    }

    pub fn full(width: usize) -> Self {
        let mut set = Self::empty(width);
        for (i, word) in set.words.iter_mut().enumerate() {
            let remaining = width - i * WORD_BITS;
            *word = if remaining >= WORD_BITS {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        set
    }

    pub fn singleton(width: usize, index: usize) -> Result<Self> {
        Self::from_indices(width, [index])
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(width);
        for index in indices {
            if index >= width {
                return Err(Error::IndexOutOfRange { index, size: width });
            }
            set.words[index / WORD_BITS] |= 1 << (index % WORD_BITS);
        }
        Ok(set)
    }

    /// Number of hypotheses in the frame this set belongs to.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.width && self.words[index / WORD_BITS] & (1 << (index % WORD_BITS)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.width)
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + bit)
            })
        })
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.width, other.width, "focal sets from different frames");
        Self {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| op(*a, *b))
                .collect(),
            width: self.width,
        }
    }
}

impl fmt::Debug for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug)]
struct FrameInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of exclusive, exhaustive hypotheses.
///
/// Cloning is cheap; clones share the label table.
#[derive(Clone, Debug)]
pub struct Frame(Arc<FrameInner>);

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (position, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel { position });
            }
            if index.insert(label.clone(), position).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self(Arc::new(FrameInner { labels, index })))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    /// Always false: a frame has at least one hypothesis.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.0.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// The focal set made of the named hypotheses.
    pub fn set<I, S>(&self, labels: I) -> Result<FocalSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let indices = labels
            .into_iter()
            .map(|label| {
                let label = label.as_ref();
                self.index_of(label)
                    .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        FocalSet::from_indices(self.len(), indices)
    }

    pub fn singleton(&self, index: usize) -> Result<FocalSet> {
        FocalSet::singleton(self.len(), index)
    }

    pub fn empty_set(&self) -> FocalSet {
        FocalSet::empty(self.len())
    }

    /// The whole frame, i.e. total ignorance.
    pub fn full_set(&self) -> FocalSet {
        FocalSet::full(self.len())
    }

    /// Labels of the members of `set`, in frame order.
    pub fn labels_of<'a>(&'a self, set: &'a FocalSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().map(move |i| self.0.labels[i].as_str())
    }

    /// Renders a set as `A∪B`, or `∅` for the empty set.
    pub fn display_set(&self, set: &FocalSet) -> String {
        if set.is_empty() {
            return "∅".to_owned();
        }
        self.labels_of(set).collect::<Vec<_>>().join("∪")
    }

    pub fn same_as(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Frame {}
