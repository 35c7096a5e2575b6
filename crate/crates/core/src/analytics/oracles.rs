//! Two independent routes to `d_n` by exact dynamic programming.

use crate::Scalar;

/// `P(T > 2n)` where `T` is the first time a simple symmetric walk from 0
/// reaches 2. Tracks the surviving mass on positions `-2n ..= 1`.
pub fn hitting_time_oracle<T: Scalar>(n: u64) -> T {
    let steps = 2 * n as usize;
    // position p lives at index p + steps
    let size = steps + 2;
    let mut mass = vec![T::zero(); size];
    mass[steps] = T::one();
    let half = T::half();
    for _ in 0..steps {
        let mut next = vec![T::zero(); size];
        for (i, m) in mass.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let share = m.clone() * half.clone();
            if i > 0 {
                next[i - 1] = next[i - 1].clone() + share.clone();
            }
            // stepping up from position 1 hits 2 and is removed
            if i + 1 < size {
                next[i + 1] = next[i + 1].clone() + share;
            }
        }
        mass = next;
    }
    mass.into_iter().fold(T::zero(), |a, b| a + b)
}

/// A lattice walk with bounded integer steps, killed on reaching `barrier`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSpec<T> {
    pub steps: Vec<(i64, T)>,
    pub start: i64,
    pub barrier: i64,
}

impl<T: Scalar> WalkSpec<T> {
    /// Size of the block of particles merging into a fixed survivor:
    /// steps `-1, 0, +1` with weights `1/4, 1/2, 1/4`, from 1, killed at 0.
    pub fn interface() -> Self {
        Self {
            steps: vec![(-1, T::ratio(1, 4)), (0, T::half()), (1, T::ratio(1, 4))],
            start: 1,
            barrier: 0,
        }
    }

    pub fn is_normalized(&self) -> bool {
        let total = self.steps.iter().fold(T::zero(), |a, (_, w)| a + w.clone());
        total.close_to(&T::one())
    }

    /// Probability of not having hit the barrier after `n` steps, for walks
    /// started above the barrier.
    pub fn survival(&self, n: u64) -> T {
        let reach = self.steps.iter().map(|(d, _)| d.abs()).max().unwrap_or(0);
        let top = self.start + reach * n as i64;
        // heights barrier+1 ..= top
        let size = (top - self.barrier) as usize;
        let mut mass = vec![T::zero(); size];
        mass[(self.start - self.barrier - 1) as usize] = T::one();
        for _ in 0..n {
            let mut next = vec![T::zero(); size];
            for (i, m) in mass.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                for (d, w) in &self.steps {
                    let j = i as i64 + d;
                    if j >= 0 && (j as usize) < size {
                        next[j as usize] = next[j as usize].clone() + m.clone() * w.clone();
                    }
                }
            }
            mass = next;
        }
        mass.into_iter().fold(T::zero(), |a, b| a + b)
    }
}

/// Survival to step `n` of the interface walk.
pub fn interface_walk_oracle<T: Scalar>(n: u64) -> T {
    WalkSpec::<T>::interface().survival(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    /// Enumerates all `4^n` sign sequences of length `2n`.
    fn brute_hitting(n: u32) -> Rational {
        let len = 2 * n;
        let survivors = (0u64..1 << len)
            .filter(|bits| {
                let mut pos = 0i32;
                (0..len).all(|k| {
                    pos += if bits >> k & 1 == 1 { 1 } else { -1 };
                    pos < 2
                })
            })
            .count();
        Rational::ratio(survivors as i64, 1 << len)
    }

    /// Enumerates all `3^n` step sequences with their weights.
    fn brute_interface(n: u32) -> Rational {
        let mut total = Rational::ratio(0, 1);
        for code in 0..3u64.pow(n) {
            let mut c = code;
            let mut h = 1i64;
            let mut weight = Rational::ratio(1, 1);
            let mut alive = true;
            for _ in 0..n {
                let (d, w) = match c % 3 {
                    0 => (-1, Rational::ratio(1, 4)),
                    1 => (0, Rational::ratio(1, 2)),
                    _ => (1, Rational::ratio(1, 4)),
                };
                c /= 3;
                h += d;
                weight *= w;
                if h == 0 {
                    alive = false;
                    break;
                }
            }
            if alive {
                total += weight;
            }
        }
        total
    }

    #[test]
    fn hitting_time_matches_enumeration() {
        for n in 0..=6 {
            assert_eq!(hitting_time_oracle::<Rational>(n as u64), brute_hitting(n), "n = {n}");
        }
        assert_eq!(hitting_time_oracle::<Rational>(1), Rational::ratio(3, 4));
        assert_eq!(hitting_time_oracle::<Rational>(2), Rational::ratio(5, 8));
    }

    #[test]
    fn interface_walk_matches_enumeration() {
        // Killed paths stop early, so the enumeration above only needs the
        // weight of the surviving ones.
        for n in 0..=7 {
            assert_eq!(interface_walk_oracle::<Rational>(n as u64), brute_interface(n), "n = {n}");
        }
        assert_eq!(interface_walk_oracle::<Rational>(1), Rational::ratio(3, 4));
        assert_eq!(interface_walk_oracle::<Rational>(3), Rational::ratio(35, 64));
    }

    #[test]
    fn float_oracles_track_exact() {
        for n in [0, 1, 10, 40] {
            let e = hitting_time_oracle::<Rational>(n).to_f64();
            assert!((hitting_time_oracle::<f64>(n) - e).abs() < 1e-12);
            assert!((interface_walk_oracle::<f64>(n) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn step_law_normalized() {
        assert!(WalkSpec::<Rational>::interface().is_normalized());
        assert!(WalkSpec::<f64>::interface().is_normalized());
    }
}
