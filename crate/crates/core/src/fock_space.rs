//! Truncated Fock bases for Alice (two levels) and Bob's out / hor modes.
//!
//! Layout is row-major with Alice outermost and the hor mode innermost, so
//! the tripartite flat index is `alice * (n+1)^2 + out * (n+1) + hor` and
//! the bipartite one is `alice * (n+1) + mode`.

use crate::error::{Error, Result};

/// Highest retained occupation number, shared by the out and hor modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Truncation {
    n_max: usize,
}

impl Truncation {
    pub const fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub const fn n_max(self) -> usize {
        self.n_max
    }

    /// Number of retained levels per bosonic mode.
    pub const fn levels(self) -> usize {
        self.n_max + 1
    }

    pub const fn dimension(self, space: Space) -> usize {
        match space {
            Space::Bipartite => 2 * self.levels(),
            Space::Tripartite => 2 * self.levels() * self.levels(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Alice ⊗ one of Bob's modes.
    Bipartite,
    /// Alice ⊗ out ⊗ hor.
    Tripartite,
}

/// Label of a basis ket `|alice⟩|out⟩|hor⟩`; `hor` is `None` in the
/// bipartite space, where `out` holds the occupation of whichever mode was kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub alice: usize,
    pub out_n: usize,
    pub hor_n: Option<usize>,
}

impl BasisIndex {
    pub const fn tripartite(alice: usize, out_n: usize, hor_n: usize) -> Self {
        Self {
            alice,
            out_n,
            hor_n: Some(hor_n),
        }
    }

    pub const fn bipartite(alice: usize, mode_n: usize) -> Self {
        Self {
            alice,
            out_n: mode_n,
            hor_n: None,
        }
    }

    pub const fn space(&self) -> Space {
        match self.hor_n {
            Some(_) => Space::Tripartite,
            None => Space::Bipartite,
        }
    }
}

fn check(field: &'static str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        Err(Error::OutOfBounds {
            field,
            value,
            n_max: bound,
        })
    } else {
        Ok(())
    }
}

pub fn flat_index(b: BasisIndex, t: Truncation) -> Result<usize> {
    check("alice", b.alice, 1)?;
    check("out_n", b.out_n, t.n_max())?;
    let levels = t.levels();
    match b.hor_n {
        Some(hor) => {
            check("hor_n", hor, t.n_max())?;
            Ok((b.alice * levels + b.out_n) * levels + hor)
        }
        None => Ok(b.alice * levels + b.out_n),
    }
}

pub fn unflatten(index: usize, t: Truncation, space: Space) -> Result<BasisIndex> {
    let dimension = t.dimension(space);
    if index >= dimension {
        return Err(Error::IndexOutOfRange { index, dimension });
    }
    let levels = t.levels();
    Ok(match space {
        Space::Bipartite => BasisIndex::bipartite(index / levels, index % levels),
        Space::Tripartite => BasisIndex::tripartite(
            index / (levels * levels),
            (index / levels) % levels,
            index % levels,
        ),
    })
}

pub fn dimension(t: Truncation, space: Space) -> usize {
    t.dimension(space)
}

/// Flat index in the tripartite space without bounds checks; callers own the bounds.
#[inline]
pub(crate) fn tri(t: Truncation, alice: usize, out_n: usize, hor_n: usize) -> usize {
    (alice * t.levels() + out_n) * t.levels() + hor_n
}

/// Flat index in the bipartite space without bounds checks.
#[inline]
pub(crate) fn bi(t: Truncation, alice: usize, mode_n: usize) -> usize {
    alice * t.levels() + mode_n
}
