use serde::{Deserialize, Serialize};

use super::kernel::{reference, step};
use super::{Boundary, Configuration, Model, UpdateRow, UpdateStream};
use crate::{Error, Result};

/// Two particles meeting at `site` when step `step` is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeEvent {
    pub step: usize,
    pub site: i64,
    pub left: u32,
    pub right: u32,
    pub child: u32,
}

/// Particle identities along a model C or D run.
///
/// Initial particles get ids `0..initial.len()` from left to right; every
/// collision mints the next id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeLog {
    pub initial: Vec<(i64, u32)>,
    /// `ids[n][j]`: id of the particle in local cell `j` at time `n`.
    pub ids: Vec<Vec<Option<u32>>>,
    pub events: Vec<MergeEvent>,
}

impl MergeLog {
    fn start(init: &Configuration) -> Self {
        let mut next = 0;
        let mut initial = Vec::new();
        let ids = (0..init.len())
            .map(|j| {
                init.primary().get(j).then(|| {
                    let id = next;
                    next += 1;
                    initial.push((init.offset() + j as i64, id));
                    id
                })
            })
            .collect();
        Self {
            initial,
            ids: vec![ids],
            events: Vec::new(),
        }
    }

    pub fn id_count(&self) -> u32 {
        (self.initial.len() + self.events.len()) as u32
    }

    fn advance(&mut self, n: usize, x: &Configuration, u: &UpdateRow, boundary: Boundary) {
        let prev = self.ids.last().expect("log starts with the initial row");
        let arrows = u.arrows();
        let offset = match boundary {
            Boundary::Line => x.offset() + 1,
            Boundary::Cycle => x.offset(),
        };
        let mut next_id = self.id_count();
        let mut events = Vec::new();
        let row = reference::cell_pairs(x.len(), boundary)
            .enumerate()
            .map(|(j, (l, c))| {
                let arriving = prev[l].filter(|_| !arrows[l].is_up());
                let staying = prev[c].filter(|_| arrows[c].is_up());
                match (arriving, staying) {
                    (Some(left), Some(right)) => {
                        let child = next_id;
                        next_id += 1;
                        events.push(MergeEvent {
                            step: n,
                            site: offset + j as i64,
                            left,
                            right,
                            child,
                        });
                        Some(child)
                    }
                    (a, s) => a.or(s),
                }
            })
            .collect();
        self.ids.push(row);
        self.events.extend(events);
    }
}

/// A run of one model: `configs[n]` is the state at time `n`, `rows[n]` the
/// arrows that produced `configs[n + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub model: Model,
    pub boundary: Boundary,
    pub configs: Vec<Configuration>,
    pub rows: Vec<UpdateRow>,
    pub merges: Option<MergeLog>,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.rows.len()
    }

    pub fn last(&self) -> Option<&Configuration> {
        self.configs.last()
    }

    pub fn particle_counts(&self) -> Vec<usize> {
        self.configs.iter().map(Configuration::particle_count).collect()
    }
}

fn check_feasible(init: &Configuration, steps: usize, boundary: Boundary) -> Result<()> {
    match boundary {
        Boundary::Cycle if init.len() < 2 => Err(Error::WindowTooShort {
            width: init.len(),
            needed: 2,
        }),
        Boundary::Line if steps > 0 && init.len() < steps + 1 => Err(Error::WindowExhausted {
            completed: init.len().saturating_sub(1),
            requested: steps,
        }),
        _ => Ok(()),
    }
}

/// Runs `steps` steps with the arrows of `stream`, step `n` using row `n`.
/// Models C and D also record particle identities and merges.
pub fn evolve(
    model: Model,
    init: &Configuration,
    stream: &UpdateStream,
    steps: usize,
    boundary: Boundary,
) -> Result<Trajectory> {
    check_feasible(init, steps, boundary)?;
    let mut merges = model.tracks_merges().then(|| MergeLog::start(init));
    let mut configs = vec![init.clone()];
    let mut rows = Vec::with_capacity(steps);
    for n in 0..steps {
        let x = configs.last().expect("nonempty");
        let u = stream.row(n as u64, x.offset(), x.len());
        let next = step(model, x, &u, boundary)?;
        if let Some(log) = merges.as_mut() {
            log.advance(n, x, &u, boundary);
        }
        configs.push(next);
        rows.push(u);
    }
    Ok(Trajectory {
        model,
        boundary,
        configs,
        rows,
        merges,
    })
}

/// Final configuration only; the Monte Carlo hot path.
pub fn evolve_final(
    model: Model,
    init: &Configuration,
    stream: &UpdateStream,
    steps: usize,
    boundary: Boundary,
) -> Result<Configuration> {
    check_feasible(init, steps, boundary)?;
    let mut x = init.clone();
    for n in 0..steps {
        let u = stream.row(n as u64, x.offset(), x.len());
        x = step(model, &x, &u, boundary)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Alphabet, Symbol};

    #[test]
    fn alternating_cycle_has_period_two() {
        let init = Configuration::parse(Alphabet::Binary, 0, "0101010101").unwrap();
        let s = UpdateStream::new(1, 0);
        let t = evolve(Model::A, &init, &s, 2, Boundary::Cycle).unwrap();
        assert_eq!(t.configs[1].to_glyphs(), "1010101010");
        assert_eq!(t.configs[2], init);
    }

    #[test]
    fn line_window_shrinks_from_the_left() {
        let n = 7;
        let init = Configuration::constant(Alphabet::Particle, -3, n + 2, Symbol::Particle).unwrap();
        let t = evolve(Model::C, &init, &UpdateStream::new(2, 0), n, Boundary::Line).unwrap();
        for (k, c) in t.configs.iter().enumerate() {
            assert_eq!(c.offset(), -3 + k as i64);
            assert_eq!(c.len(), n + 2 - k);
        }
        assert_eq!(t.last().unwrap().len(), 2);
    }

    #[test]
    fn exhausted_window_is_an_error() {
        let init = Configuration::constant(Alphabet::Particle, 0, 4, Symbol::Particle).unwrap();
        let s = UpdateStream::new(0, 0);
        assert!(evolve(Model::C, &init, &s, 3, Boundary::Line).is_ok());
        assert!(matches!(
            evolve(Model::C, &init, &s, 4, Boundary::Line),
            Err(Error::WindowExhausted { .. })
        ));
        let tiny = Configuration::constant(Alphabet::Particle, 0, 1, Symbol::Particle).unwrap();
        assert!(matches!(
            evolve(Model::C, &tiny, &s, 1, Boundary::Cycle),
            Err(Error::WindowTooShort { .. })
        ));
    }

    #[test]
    fn final_matches_full_trajectory() {
        let init = Configuration::constant(Alphabet::Binary, 0, 90, Symbol::One).unwrap();
        let s = UpdateStream::new(4, 2);
        let t = evolve(Model::A, &init, &s, 20, Boundary::Line).unwrap();
        let f = evolve_final(Model::A, &init, &s, 20, Boundary::Line).unwrap();
        assert_eq!(t.last().unwrap(), &f);
    }

    #[test]
    fn id_rows_track_occupancy() {
        let init = Configuration::constant(Alphabet::Particle, 0, 40, Symbol::Particle).unwrap();
        let t = evolve(Model::C, &init, &UpdateStream::new(8, 0), 12, Boundary::Cycle).unwrap();
        let log = t.merges.as_ref().unwrap();
        for (c, ids) in t.configs.iter().zip(&log.ids) {
            for (j, id) in ids.iter().enumerate() {
                assert_eq!(c.primary().get(j), id.is_some());
            }
        }
        assert!(t.particle_counts().windows(2).all(|w| w[1] <= w[0]));
    }
}
