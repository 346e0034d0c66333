//! Enumeration and transformation of planar diagrams: non-crossing and
//! annular permutations, circular and linear half-permutations, dot
//! structures, and coloured annular sets.

mod annular;
pub mod colored;
mod cut;
mod dots;
mod halfperm;
mod nc;
mod perm;
pub mod recursion;

pub use annular::{block_histogram, enum_snc, enum_snc_capped, for_each_circlewise_nc, is_annular_noncrossing, AnnularPerm};
pub use cut::{cut, reassemble};
pub use dots::{dot_decode, dot_encode, enum_dots, gbar_step, gbar_unstep, last_pattern, Dot, DotStructure};
pub use halfperm::{
    closed_histogram, enum_ncc, enum_ncc_capped, enum_ncl, enum_ncl_capped, for_each_subset, Anchor, CircularHalfPerm,
    LinearHalfPerm,
};
pub use nc::{enum_nc, enum_nc_capped, for_each_nc_rgs, perm_from_rgs, rgs_is_noncrossing};
pub use perm::{rgs_blocks, Perm, RgsIter};

use crate::polyalg::PolyC;

/// Default cap on total points for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DiagramError {
    #[error("{name} = {value} exceeds the enumeration cap {cap} (raise it with --cap)")]
    CapExceeded { name: &'static str, value: usize, cap: usize },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("{0} is not non-crossing")]
    NotNoncrossing(String),
    #[error("malformed dot structure: {0}")]
    Malformed(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("open-block counts differ: {0} vs {1}")]
    Mismatch(usize, usize),
}

pub(crate) fn check_cap(name: &'static str, value: usize, cap: usize) -> Result<(), DiagramError> {
    if value > cap {
        return Err(DiagramError::CapExceeded { name, value, cap });
    }
    Ok(())
}

/// Which statistic goes in the exponent of `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// Every block.
    AllBlocks,
    /// Closed blocks; a designated block of the permutation is not counted.
    ClosedBlocks,
}

/// Anything carrying a block count and a closed-block count.
pub trait Weighted {
    fn all_blocks(&self) -> usize;
    fn closed_blocks(&self) -> usize;
}

impl Weighted for AnnularPerm {
    fn all_blocks(&self) -> usize {
        self.num_blocks()
    }
    fn closed_blocks(&self) -> usize {
        self.num_blocks() - self.through_blocks().len()
    }
}

impl Weighted for CircularHalfPerm {
    fn all_blocks(&self) -> usize {
        self.perm().num_cycles()
    }
    fn closed_blocks(&self) -> usize {
        self.weight_exponent()
    }
}

impl Weighted for LinearHalfPerm {
    fn all_blocks(&self) -> usize {
        self.perm().num_cycles()
    }
    fn closed_blocks(&self) -> usize {
        self.num_closed()
    }
}

impl Weighted for Perm {
    fn all_blocks(&self) -> usize {
        self.num_cycles()
    }
    fn closed_blocks(&self) -> usize {
        self.num_cycles()
    }
}

/// `sum c^(statistic)` over the diagrams.
pub fn weighted_count<'a, T: Weighted + 'a>(items: impl IntoIterator<Item = &'a T>, weight: Weight) -> PolyC {
    weighted_count_by(items, |x| match weight {
        Weight::AllBlocks => x.all_blocks(),
        Weight::ClosedBlocks => x.closed_blocks(),
    })
}

/// `sum c^(f(x))`.
pub fn weighted_count_by<'a, T: 'a>(items: impl IntoIterator<Item = &'a T>, f: impl Fn(&T) -> usize) -> PolyC {
    let mut h: Vec<u64> = Vec::new();
    for x in items {
        let j = f(x);
        if h.len() <= j {
            h.resize(j + 1, 0);
        }
        h[j] += 1;
    }
    PolyC::from_counts(&h)
}
