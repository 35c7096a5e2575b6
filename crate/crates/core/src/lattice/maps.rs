use super::{Alphabet, BitPlane, Configuration};
use crate::{Error, Result};

/// Marks each site whose value equals its left neighbor's: the cell at
/// absolute site `i` is a particle iff `x_{i-1} = x_i`.
///
/// The result starts one site to the right of `x`, so `phi` commutes with one
/// step of A/B under the same arrow row.
pub fn phi(x: &Configuration) -> Result<Configuration> {
    if x.alphabet() != Alphabet::Binary {
        return Err(Error::InvalidParameter(
            "phi maps binary configurations".into(),
        ));
    }
    if x.len() < 2 {
        return Err(Error::WindowTooShort {
            width: x.len(),
            needed: 2,
        });
    }
    let n = x.len();
    let left = x.primary().extract(0, n - 1);
    let center = x.primary().extract(1, n - 1);
    let out = left.zip_with(&center, |l, c| !(l ^ c));
    Configuration::from_planes(Alphabet::Particle, x.offset() + 1, out, None)
}

fn colored(d: &Configuration) -> Result<(&BitPlane, &BitPlane)> {
    match (d.alphabet(), d.color()) {
        (Alphabet::Colored, Some(c)) => Ok((d.primary(), c)),
        _ => Err(Error::InvalidParameter(
            "projection expects a colored configuration".into(),
        )),
    }
}

/// Keeps blue particles only.
pub fn pi_b(d: &Configuration) -> Result<Configuration> {
    let (occ, green) = colored(d)?;
    let out = occ.zip_with(green, |o, g| o & !g);
    Configuration::from_planes(Alphabet::Particle, d.offset(), out, None)
}

/// Forgets colors.
pub fn pi_c(d: &Configuration) -> Result<Configuration> {
    let (occ, _) = colored(d)?;
    Configuration::from_planes(Alphabet::Particle, d.offset(), occ.clone(), None)
}
