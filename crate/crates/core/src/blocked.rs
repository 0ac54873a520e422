//! Partitions and the seven blocked-structure predicates.
//!
//! Every predicate is a vanishing constraint on the nonzero entries of a row
//! block, expressed through the minimum and maximum of the trailing indices
//! `i2, …, im`. Only stored nonzeros are scanned.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tensor::{IndexSet, Tensor};

/// Largest dimension accepted by [`blocked_partitions`].
pub const MAX_ENUM_DIM: usize = 12;

/// An ordered composition `(n_1, …, n_r)` of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    // starts[j] = S_{j} in 0-based form; starts has r + 1 entries.
    starts: Vec<usize>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        let mut starts = Vec::with_capacity(parts.len() + 1);
        starts.push(0);
        let mut block_of = Vec::new();
        for (j, &p) in parts.iter().enumerate() {
            starts.push(starts[j] + p);
            block_of.extend(std::iter::repeat(j).take(p));
        }
        Ok(Partition {
            parts,
            starts,
            block_of,
        })
    }

    /// The partition `(1, …, 1)`.
    pub fn singletons(n: usize) -> Result<Self> {
        Partition::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        *self.starts.last().unwrap()
    }

    /// Number of blocks `r`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First index of block `j` (0-based), equal to `S_{j}` in 1-based terms.
    pub fn block_start(&self, j: usize) -> usize {
        self.starts[j]
    }

    /// One past the last index of block `j`.
    pub fn block_end(&self, j: usize) -> usize {
        self.starts[j + 1]
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn block(&self, j: usize) -> IndexSet {
        IndexSet::range(self.n(), self.block_start(j), self.block_end(j))
    }

    /// Parts `n_1, …, n_t` (the first `t` blocks).
    pub fn head(&self, t: usize) -> Result<Partition> {
        Partition::new(self.parts[..t].to_vec())
    }

    /// Parts `n_{t+1}, …, n_r`.
    pub fn tail(&self, t: usize) -> Result<Partition> {
        Partition::new(self.parts[t..].to_vec())
    }

    /// The two-block partition `(S_t, n - S_t)`.
    pub fn cut(&self, t: usize) -> Result<Partition> {
        let k = self.starts[t];
        Partition::new(vec![k, self.n() - k])
    }

    pub fn reversed(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Partition::new(parts).expect("reversal keeps parts positive")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses a comma-separated part list such as `1,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// The seven structural classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Utb1,
    Utb2,
    Utb3,
    Ltb1,
    Ltb2,
    Ltb3,
    Diag,
}

impl BlockKind {
    pub const ALL: [BlockKind; 7] = [
        BlockKind::Utb1,
        BlockKind::Utb2,
        BlockKind::Utb3,
        BlockKind::Ltb1,
        BlockKind::Ltb2,
        BlockKind::Ltb3,
        BlockKind::Diag,
    ];

    pub fn is_triangular(self) -> bool {
        self != BlockKind::Diag
    }

    pub fn is_third_type(self) -> bool {
        matches!(self, BlockKind::Utb3 | BlockKind::Ltb3)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BlockKind::Utb1 => "utb1",
            BlockKind::Utb2 => "utb2",
            BlockKind::Utb3 => "utb3",
            BlockKind::Ltb1 => "ltb1",
            BlockKind::Ltb2 => "ltb2",
            BlockKind::Ltb3 => "ltb3",
            BlockKind::Diag => "diag",
        }
    }

    /// Whether an entry in row block `[start, end)` whose trailing indices
    /// have the given extremes is forced to vanish.
    fn forbids(self, start: usize, end: usize, min: usize, max: usize) -> bool {
        match self {
            BlockKind::Utb1 => min < start,
            BlockKind::Utb2 => min < start && max < end,
            BlockKind::Utb3 => max < start,
            BlockKind::Ltb1 => max >= end,
            BlockKind::Ltb2 => max >= end && min >= start,
            BlockKind::Ltb3 => min >= end,
            BlockKind::Diag => min < start || max >= end,
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown block kind {s:?}")))
    }
}

/// Whether `a` is `p`-blocked of the given kind.
///
/// Triangular kinds need at least two blocks; `Diag` accepts one.
pub fn is_blocked(a: &Tensor, p: &Partition, kind: BlockKind) -> Result<bool> {
    a.require_order(2)?;
    if p.n() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: p.n(),
        });
    }
    if kind.is_triangular() && p.len() < 2 {
        return Err(Error::PartitionTooCoarse(p.len()));
    }
    Ok(pattern_holds(a, p, kind))
}

/// The vanishing pattern of `kind` over `p`, with no arity checks. A single
/// block makes every pattern hold vacuously.
pub(crate) fn pattern_holds(a: &Tensor, p: &Partition, kind: BlockKind) -> bool {
    a.entries().all(|(idx, _)| {
        let j = p.block_of(idx[0]);
        let (start, end) = (p.block_start(j), p.block_end(j));
        let tail = &idx[1..];
        let min = tail.iter().copied().min().unwrap_or(usize::MAX);
        let max = tail.iter().copied().max().unwrap_or(0);
        tail.is_empty() || !kind.forbids(start, end, min, max)
    })
}

/// `[A[I_1], …, A[I_r]]`.
pub fn diagonal_blocks(a: &Tensor, p: &Partition) -> Result<Vec<Tensor>> {
    if p.n() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: p.n(),
        });
    }
    (0..p.len())
        .map(|j| a.principal_subtensor(&p.block(j)))
        .collect()
}

/// All compositions of `n` in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every composition with at least `r_min` parts for which `a` is blocked of
/// the given kind, in lexicographic order.
pub fn blocked_partitions(a: &Tensor, kind: BlockKind, r_min: usize) -> Result<Vec<Partition>> {
    a.require_order(2)?;
    if a.dim() > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge {
            dim: a.dim(),
            max: MAX_ENUM_DIM,
        });
    }
    let r_min = if kind.is_triangular() {
        r_min.max(2)
    } else {
        r_min.max(1)
    };
    Ok(compositions(a.dim())
        .into_iter()
        .filter(|c| c.len() >= r_min)
        .map(|c| Partition::new(c).expect("compositions have positive parts"))
        .filter(|p| pattern_holds(a, p, kind))
        .collect())
}
