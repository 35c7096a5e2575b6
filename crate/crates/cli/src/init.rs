//! Initial conditions named on the command line.

use std::str::FromStr;

use anyhow::{bail, Context, Result};
use pcasim::analytics::{BinaryInit, ParticleInit};
use pcasim::lattice::{Alphabet, BitPlane, Configuration, Lane, Model, UpdateStream};

#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    Full,
    Uniform,
    Alternating,
    Ones,
    Zeros,
    Iid(f64),
    /// Repeated periodically with its first symbol at site 0.
    Custom(String),
}

impl FromStr for InitSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(word) = s.strip_prefix("custom:") {
            if word.is_empty() {
                return Err("custom word is empty".into());
            }
            return Ok(Self::Custom(word.into()));
        }
        if let Some(p) = s.strip_prefix("iid:") {
            let p: f64 = p.parse().map_err(|_| format!("bad probability `{p}`"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("probability {p} outside [0, 1]"));
            }
            return Ok(Self::Iid(p));
        }
        match s {
            "full" => Ok(Self::Full),
            "uniform" => Ok(Self::Uniform),
            "alternating" => Ok(Self::Alternating),
            "ones" => Ok(Self::Ones),
            "zeros" | "empty" => Ok(Self::Zeros),
            _ => Err(format!(
                "unknown init `{s}` (expected full, uniform, alternating, ones, zeros, iid:P or custom:WORD)"
            )),
        }
    }
}

impl InitSpec {
    pub fn binary(&self) -> Result<BinaryInit> {
        Ok(match self {
            Self::Uniform => BinaryInit::Uniform,
            Self::Ones | Self::Full => BinaryInit::Ones,
            Self::Zeros => BinaryInit::Zeros,
            Self::Alternating => BinaryInit::Alternating,
            Self::Custom(w) => {
                let c = Configuration::parse(Alphabet::Binary, 0, w)?;
                BinaryInit::Custom(c.primary().iter().collect())
            }
            Self::Iid(_) => bail!("model a takes uniform, ones, zeros, alternating or custom:WORD"),
        })
    }

    pub fn particle(&self) -> Result<ParticleInit> {
        Ok(match self {
            Self::Full | Self::Ones => ParticleInit::Full,
            Self::Zeros => ParticleInit::Iid(0.0),
            Self::Uniform => ParticleInit::Iid(0.5),
            Self::Iid(p) => ParticleInit::Iid(*p),
            Self::Alternating | Self::Custom(_) => bail!("density runs of models b and c take full, uniform or iid:P"),
        })
    }

    /// A window of `width` sites starting at site 0.
    pub fn configuration(&self, model: Model, stream: &UpdateStream, width: usize) -> Result<Configuration> {
        let alphabet = model.alphabet();
        if let Self::Custom(word) = self {
            let tile = Configuration::parse(alphabet, 0, word).with_context(|| format!("custom word `{word}`"))?;
            let symbols: Vec<_> = (0..width).map(|j| tile.symbol_at(j % tile.len())).collect();
            return Ok(Configuration::from_symbols(alphabet, 0, &symbols)?);
        }
        if model == Model::A {
            return Ok(self.binary()?.configuration(stream, 0, width)?);
        }
        let occupancy = match self {
            Self::Alternating => BitPlane::from_fn(width, |j| j % 2 == 1),
            _ => self.particle()?.configuration(stream, 0, width)?.primary().clone(),
        };
        let color = (model == Model::D).then(|| stream.bits(Lane::Init, 1, 0, width));
        Ok(Configuration::from_planes(alphabet, 0, occupancy, color)?)
    }
}
