//! Lattice configurations, the update field and the step kernels.
//!
//! Every model reads the neighborhood `{-1, 0}`: the new value at site `i`
//! depends on sites `i - 1` and `i` and on the arrows at those sites. On a
//! [`Boundary::Line`] window the leftmost site therefore drops out at every
//! step; on a [`Boundary::Cycle`] indices wrap.

mod bitplane;
mod config;
mod evolve;
mod genealogy;
pub mod kernel;
mod maps;
pub mod rules;
mod stream;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bitplane::BitPlane;
pub use config::{Configuration, UpdateRow};
pub use evolve::{evolve, evolve_final, MergeEvent, MergeLog, Trajectory};
pub use genealogy::{trace_merges, DisjointSets, ForestNode, MergeForest, NodeOrigin};
pub use kernel::{step, step_a, step_b, step_c, step_d};
pub use maps::{phi, pi_b, pi_c};
pub use stream::{Lane, UpdateStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `{0, 1}`
    Binary,
    /// `{empty, particle}`
    Particle,
    /// `{empty, blue, green}`
    Colored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Zero,
    One,
    Empty,
    Particle,
    Blue,
    Green,
}

impl Symbol {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Symbol::Zero | Symbol::One => Alphabet::Binary,
            Symbol::Empty | Symbol::Particle => Alphabet::Particle,
            Symbol::Blue | Symbol::Green => Alphabet::Colored,
        }
    }

    /// Whether `self` belongs to `alphabet`. `Empty` is shared by both particle alphabets.
    pub fn belongs_to(self, alphabet: Alphabet) -> bool {
        self.alphabet() == alphabet || (self == Symbol::Empty && alphabet == Alphabet::Colored)
    }

    pub fn is_occupied(self) -> bool {
        matches!(self, Symbol::Particle | Symbol::Blue | Symbol::Green)
    }

    pub fn glyph(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Empty => '.',
            Symbol::Particle => '#',
            Symbol::Blue => 'B',
            Symbol::Green => 'G',
        }
    }
}

impl Alphabet {
    pub fn symbols(self) -> &'static [Symbol] {
        match self {
            Alphabet::Binary => &[Symbol::Zero, Symbol::One],
            Alphabet::Particle => &[Symbol::Empty, Symbol::Particle],
            Alphabet::Colored => &[Symbol::Empty, Symbol::Blue, Symbol::Green],
        }
    }

    pub fn parse_glyph(self, c: char) -> Option<Symbol> {
        let s = match (self, c) {
            (Alphabet::Binary, '0') => Symbol::Zero,
            (Alphabet::Binary, '1') => Symbol::One,
            (Alphabet::Particle | Alphabet::Colored, '.' | 'o' | '◦') => Symbol::Empty,
            (Alphabet::Particle, '#' | '•' | 'x') => Symbol::Particle,
            (Alphabet::Colored, 'B' | 'b') => Symbol::Blue,
            (Alphabet::Colored, 'G' | 'g') => Symbol::Green,
            _ => return None,
        };
        Some(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    A,
    B,
    C,
    D,
}

impl Model {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Model::A => Alphabet::Binary,
            Model::B | Model::C => Alphabet::Particle,
            Model::D => Alphabet::Colored,
        }
    }

    pub fn tracks_merges(self) -> bool {
        matches!(self, Model::C | Model::D)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Model::A => "a",
            Model::B => "b",
            Model::C => "c",
            Model::D => "d",
        };
        f.write_str(s)
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Model::A),
            "b" => Ok(Model::B),
            "c" => Ok(Model::C),
            "d" => Ok(Model::D),
            other => Err(format!("unknown model `{other}` (expected a, b, c or d)")),
        }
    }
}

/// One update variable: `Up` stays (or switches, in model A), `Right` hops (or keeps).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arrow {
    Up,
    Right,
}

impl Arrow {
    pub const BOTH: [Arrow; 2] = [Arrow::Up, Arrow::Right];

    pub fn is_up(self) -> bool {
        self == Arrow::Up
    }

    pub fn from_up(up: bool) -> Self {
        if up {
            Arrow::Up
        } else {
            Arrow::Right
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Arrow::Up => '↑',
            Arrow::Right => '↗',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Boundary {
    /// Exact marginals on a window that loses its leftmost site every step.
    #[default]
    Line,
    /// Periodic window of constant width.
    Cycle,
}

impl FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "line" => Ok(Boundary::Line),
            "cycle" => Ok(Boundary::Cycle),
            other => Err(format!("unknown boundary `{other}` (expected line or cycle)")),
        }
    }
}
