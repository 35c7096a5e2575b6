use std::fmt;

use super::{Alphabet, Arrow, BitPlane, Symbol};
use crate::{Error, Result};

/// A finite window of the lattice starting at absolute site `offset`.
///
/// The primary plane holds the value bit (model A) or occupancy (B, C, D).
/// Model D keeps a second plane with `1 = green`, cleared at empty cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    alphabet: Alphabet,
    offset: i64,
    primary: BitPlane,
    color: Option<BitPlane>,
}

impl Configuration {
    pub fn from_symbols(alphabet: Alphabet, offset: i64, symbols: &[Symbol]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::WindowTooShort { width: 0, needed: 1 });
        }
        if let Some(&bad) = symbols.iter().find(|s| !s.belongs_to(alphabet)) {
            return Err(Error::ForeignSymbol { symbol: bad, alphabet });
        }
        let primary = BitPlane::from_fn(symbols.len(), |j| match symbols[j] {
            Symbol::One => true,
            s => s.is_occupied(),
        });
        let color = (alphabet == Alphabet::Colored)
            .then(|| BitPlane::from_fn(symbols.len(), |j| symbols[j] == Symbol::Green));
        Ok(Self {
            alphabet,
            offset,
            primary,
            color,
        })
    }

    /// Parses glyphs such as `"0110"`, `".##."` or `"bg."`.
    pub fn parse(alphabet: Alphabet, offset: i64, word: &str) -> Result<Self> {
        let symbols = word
            .chars()
            .map(|c| {
                alphabet.parse_glyph(c).ok_or_else(|| {
                    Error::InvalidParameter(format!("glyph {c:?} is not valid for {alphabet:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_symbols(alphabet, offset, &symbols)
    }

    /// Builds from raw planes; model D color bits at empty cells are cleared.
    pub fn from_planes(
        alphabet: Alphabet,
        offset: i64,
        primary: BitPlane,
        color: Option<BitPlane>,
    ) -> Result<Self> {
        if primary.is_empty() {
            return Err(Error::WindowTooShort { width: 0, needed: 1 });
        }
        let color = match (alphabet, color) {
            (Alphabet::Colored, Some(c)) => {
                if c.len() != primary.len() {
                    return Err(Error::InvalidParameter("color plane length mismatch".into()));
                }
                Some(c.zip_with(&primary, |g, o| g & o))
            }
            (Alphabet::Colored, None) => Some(BitPlane::zeros(primary.len())),
            (_, None) => None,
            (_, Some(_)) => {
                return Err(Error::InvalidParameter(format!(
                    "{alphabet:?} configurations carry no color plane"
                )))
            }
        };
        Ok(Self {
            alphabet,
            offset,
            primary,
            color,
        })
    }

    pub fn constant(alphabet: Alphabet, offset: i64, len: usize, symbol: Symbol) -> Result<Self> {
        Self::from_symbols(alphabet, offset, &vec![symbol; len])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.primary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primary.is_empty()
    }

    /// One past the rightmost absolute site.
    pub fn end(&self) -> i64 {
        self.offset + self.len() as i64
    }

    pub fn contains_site(&self, site: i64) -> bool {
        site >= self.offset && site < self.end()
    }

    pub fn primary(&self) -> &BitPlane {
        &self.primary
    }

    pub fn color(&self) -> Option<&BitPlane> {
        self.color.as_ref()
    }

    /// Symbol at local index `j`.
    pub fn symbol_at(&self, j: usize) -> Symbol {
        let bit = self.primary.get(j);
        match self.alphabet {
            Alphabet::Binary => {
                if bit {
                    Symbol::One
                } else {
                    Symbol::Zero
                }
            }
            Alphabet::Particle => {
                if bit {
                    Symbol::Particle
                } else {
                    Symbol::Empty
                }
            }
            Alphabet::Colored => match (bit, self.color.as_ref().is_some_and(|c| c.get(j))) {
                (false, _) => Symbol::Empty,
                (true, false) => Symbol::Blue,
                (true, true) => Symbol::Green,
            },
        }
    }

    /// Symbol at absolute site `site`, if inside the window.
    pub fn symbol(&self, site: i64) -> Option<Symbol> {
        self.contains_site(site)
            .then(|| self.symbol_at((site - self.offset) as usize))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        (0..self.len()).map(|j| self.symbol_at(j)).collect()
    }

    /// Occupied cells; for model A this counts ones.
    pub fn particle_count(&self) -> usize {
        self.primary.count_ones()
    }

    /// Coordinate-wise `empty <= particle` on the overlap of both windows.
    /// `None` unless both are particle configurations.
    pub fn le_on_overlap(&self, other: &Self) -> Option<bool> {
        if self.alphabet != Alphabet::Particle || other.alphabet != Alphabet::Particle {
            return None;
        }
        let lo = self.offset.max(other.offset);
        let hi = self.end().min(other.end());
        Some((lo..hi).all(|s| {
            let a = self.primary.get((s - self.offset) as usize);
            let b = other.primary.get((s - other.offset) as usize);
            !a || b
        }))
    }

    /// The sub-window `[start, start + len)` in absolute sites.
    pub fn restrict(&self, start: i64, len: usize) -> Result<Self> {
        if start < self.offset || start + len as i64 > self.end() || len == 0 {
            return Err(Error::InvalidParameter(format!(
                "[{start}, {}) is not inside [{}, {})",
                start + len as i64,
                self.offset,
                self.end()
            )));
        }
        let local = (start - self.offset) as usize;
        Ok(Self {
            alphabet: self.alphabet,
            offset: start,
            primary: self.primary.extract(local, len),
            color: self.color.as_ref().map(|c| c.extract(local, len)),
        })
    }

    pub fn to_glyphs(&self) -> String {
        self.symbols().into_iter().map(Symbol::glyph).collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{} {}", self.offset, self.to_glyphs())
    }
}

/// The arrows used for one time step over a window; bit `1` is `Up`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpdateRow {
    offset: i64,
    up: BitPlane,
}

impl UpdateRow {
    pub fn new(offset: i64, up: BitPlane) -> Self {
        Self { offset, up }
    }

    pub fn from_arrows(offset: i64, arrows: &[Arrow]) -> Self {
        Self {
            offset,
            up: BitPlane::from_fn(arrows.len(), |j| arrows[j].is_up()),
        }
    }

    /// Parses `^`/`u`/`↑` as up and `>`/`r`/`→`/`↗` as right.
    pub fn parse(offset: i64, word: &str) -> Result<Self> {
        let arrows = word
            .chars()
            .map(|c| match c {
                '^' | 'u' | '↑' => Ok(Arrow::Up),
                '>' | 'r' | '→' | '↗' => Ok(Arrow::Right),
                other => Err(Error::InvalidParameter(format!("bad arrow glyph {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_arrows(offset, &arrows))
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn up_plane(&self) -> &BitPlane {
        &self.up
    }

    pub fn arrow_at(&self, j: usize) -> Arrow {
        Arrow::from_up(self.up.get(j))
    }

    pub fn arrow(&self, site: i64) -> Option<Arrow> {
        (site >= self.offset && site < self.offset + self.len() as i64)
            .then(|| self.arrow_at((site - self.offset) as usize))
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        (0..self.len()).map(|j| self.arrow_at(j)).collect()
    }

    pub fn aligned_with(&self, x: &Configuration) -> Result<()> {
        if self.offset != x.offset() || self.len() != x.len() {
            return Err(Error::MisalignedRow {
                offset: x.offset(),
                len: x.len(),
                row_offset: self.offset,
                row_len: self.len(),
            });
        }
        Ok(())
    }
}
