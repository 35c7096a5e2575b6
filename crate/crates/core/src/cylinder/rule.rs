use crate::lattice::rules;
use crate::lattice::Arrow;
use crate::{Error, Result, Scalar};

/// A stochastic local rule `f: Σ^V -> M(Σ)`.
///
/// Row `w` of the table is the law of the new symbol given the neighborhood
/// word `w`, where `w` is read at offsets `neighborhood[0] < neighborhood[1] < ...`
/// and encoded with the first offset most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionFunction<T> {
    alphabet: Vec<String>,
    neighborhood: Vec<i64>,
    table: Vec<Vec<T>>,
}

impl<T: Scalar> TransitionFunction<T> {
    pub fn new(alphabet: Vec<String>, neighborhood: Vec<i64>, table: Vec<Vec<T>>) -> Result<Self> {
        let q = alphabet.len();
        if q == 0 {
            return Err(Error::InvalidRule("empty alphabet".into()));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(Error::InvalidRule(format!("duplicate symbol {a:?}")));
            }
        }
        if neighborhood.is_empty() || neighborhood.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidRule(
                "neighborhood must be nonempty and strictly increasing".into(),
            ));
        }
        let rows = q
            .checked_pow(neighborhood.len() as u32)
            .ok_or_else(|| Error::InvalidRule("table too large".into()))?;
        if table.len() != rows {
            return Err(Error::InvalidRule(format!(
                "expected {rows} rows, got {}",
                table.len()
            )));
        }
        for (w, row) in table.iter().enumerate() {
            if row.len() != q {
                return Err(Error::InvalidRule(format!("row {w} has {} entries", row.len())));
            }
            if row.iter().any(|p| *p < T::zero()) {
                return Err(Error::InvalidRule(format!("row {w} has a negative entry")));
            }
            let sum = row.iter().cloned().fold(T::zero(), |a, b| a + b);
            if !sum.close_to(&T::one()) {
                return Err(Error::InvalidRule(format!("row {w} sums to {sum:?}")));
            }
        }
        Ok(Self {
            alphabet,
            neighborhood,
            table,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.len()
    }

    pub fn neighborhood(&self) -> &[i64] {
        &self.neighborhood
    }

    /// `max V - min V`.
    pub fn span(&self) -> usize {
        (self.neighborhood[self.neighborhood.len() - 1] - self.neighborhood[0]) as usize
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.table
    }

    pub fn row(&self, word: &[usize]) -> &[T] {
        &self.table[self.encode(word)]
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        debug_assert_eq!(word.len(), self.neighborhood.len());
        word.iter().fold(0, |acc, &s| acc * self.q() + s)
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut word = vec![0; self.neighborhood.len()];
        for slot in word.iter_mut().rev() {
            *slot = code % self.q();
            code /= self.q();
        }
        word
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Same rule over another scalar field, routed through `f64`.
    pub fn to_float(&self) -> TransitionFunction<f64> {
        TransitionFunction {
            alphabet: self.alphabet.clone(),
            neighborhood: self.neighborhood.clone(),
            table: self
                .table
                .iter()
                .map(|r| r.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }
}

/// Model A on `{0, 1}` with `V = {-1, 0}`.
pub fn model_a_rule<T: Scalar>() -> TransitionFunction<T> {
    let half = T::half;
    let (zero, one) = (T::zero, T::one);
    // rows: 00, 01, 10, 11; entries: P(0), P(1)
    let table = vec![
        vec![half(), half()],
        vec![one(), zero()],
        vec![zero(), one()],
        vec![half(), half()],
    ];
    TransitionFunction::new(vec!["0".into(), "1".into()], vec![-1, 0], table)
        .expect("model A table is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftedModel {
    B,
    C,
}

/// Index of `(occupied, arrow)` in the lifted alphabet `o^ o> x^ x>`.
pub fn lifted_symbol(occupied: bool, arrow: Arrow) -> usize {
    2 * occupied as usize + (arrow == Arrow::Right) as usize
}

pub fn lifted_occupancy(symbol: usize) -> bool {
    symbol >= 2
}

fn lifted_arrow(symbol: usize) -> Arrow {
    if symbol % 2 == 1 {
        Arrow::Right
    } else {
        Arrow::Up
    }
}

/// Model B or C as a genuine PCA on `{empty, particle} x {up, right}`:
/// the particle component follows the deterministic local map from the
/// neighborhood's two symbols and arrows, the arrow component is a fresh fair coin.
pub fn lift_model<T: Scalar>(which: LiftedModel) -> TransitionFunction<T> {
    let local = match which {
        LiftedModel::B => rules::rule_b,
        LiftedModel::C => rules::rule_c,
    };
    let alphabet: Vec<String> = ["o^", "o>", "x^", "x>"].iter().map(|s| s.to_string()).collect();
    let mut table = Vec::with_capacity(16);
    for left in 0..4 {
        for center in 0..4 {
            let occ = local(
                lifted_occupancy(left),
                lifted_occupancy(center),
                lifted_arrow(left),
                lifted_arrow(center),
            );
            let row = (0..4)
                .map(|s| {
                    if lifted_occupancy(s) == occ {
                        T::half()
                    } else {
                        T::zero()
                    }
                })
                .collect();
            table.push(row);
        }
    }
    TransitionFunction::new(alphabet, vec![-1, 0], table).expect("lifted table is valid")
}
