use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The six degree-0 components of `C²(L; L)` for a ℤ₃-graded `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    /// Hom(L_0 ∧ L_0, L_0)
    A,
    /// Hom(L_0 ∧ L_1, L_1)
    B,
    /// Hom(L_0 ∧ L_2, L_2)
    C,
    /// Hom(L_1 ∧ L_1, L_2)
    D,
    /// Hom(L_1 ∧ L_2, L_0)
    E,
    /// Hom(L_2 ∧ L_2, L_1)
    F,
}

impl BlockKind {
    pub const ALL: [BlockKind; 6] = [
        BlockKind::A,
        BlockKind::B,
        BlockKind::C,
        BlockKind::D,
        BlockKind::E,
        BlockKind::F,
    ];

    /// Source degrees, lower degree first.
    pub fn sources(self) -> (u32, u32) {
        match self {
            BlockKind::A => (0, 0),
            BlockKind::B => (0, 1),
            BlockKind::C => (0, 2),
            BlockKind::D => (1, 1),
            BlockKind::E => (1, 2),
            BlockKind::F => (2, 2),
        }
    }

    pub fn target(self) -> u32 {
        let (g, h) = self.sources();
        (g + h) % 3
    }

    pub fn from_sources(g: u32, h: u32) -> Option<Self> {
        let key = if g <= h { (g, h) } else { (h, g) };
        Self::ALL.into_iter().find(|b| b.sources() == key)
    }

    /// Blocks with both sources in the same component (skew pairs `i < j`).
    pub fn is_same_family(self) -> bool {
        let (g, h) = self.sources();
        g == h
    }

    /// Blocks valued in `L_0`, where `X_0` is excluded as a target.
    pub fn targets_l0(self) -> bool {
        self.target() == 0
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "A" | "a" => Ok(BlockKind::A),
            "B" | "b" => Ok(BlockKind::B),
            "C" | "c" => Ok(BlockKind::C),
            "D" | "d" => Ok(BlockKind::D),
            "E" | "e" => Ok(BlockKind::E),
            "F" | "f" => Ok(BlockKind::F),
            other => Err(Error::UnknownBlock(other.to_string())),
        }
    }
}
