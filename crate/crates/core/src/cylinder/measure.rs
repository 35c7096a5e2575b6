use super::TransitionFunction;
use crate::{Error, Result, Scalar};

/// Largest dense table a measure may hold: `2^24` words, i.e. 24 binary sites.
pub const SUPPORT_CAP_ENTRIES: usize = 1 << 24;

/// An exact probability vector over `Σ^K`, `K = [start, start + len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderMeasure<T> {
    q: usize,
    start: i64,
    len: usize,
    weights: Vec<T>,
}

fn table_size(q: usize, len: usize) -> Result<usize> {
    let cap_len = (0..)
        .take_while(|&l| q.checked_pow(l as u32).is_some_and(|n| n <= SUPPORT_CAP_ENTRIES))
        .last()
        .unwrap_or(0);
    q.checked_pow(len as u32)
        .filter(|&n| n <= SUPPORT_CAP_ENTRIES)
        .ok_or(Error::SupportTooLarge { len, cap: cap_len })
}

impl<T: Scalar> CylinderMeasure<T> {
    pub fn new(q: usize, start: i64, len: usize, weights: Vec<T>) -> Result<Self> {
        if q == 0 || len == 0 {
            return Err(Error::InvalidMeasure("empty alphabet or support".into()));
        }
        let size = table_size(q, len)?;
        if weights.len() != size {
            return Err(Error::InvalidMeasure(format!(
                "expected {size} weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w < T::zero()) {
            return Err(Error::InvalidMeasure("negative weight".into()));
        }
        let total = weights.iter().cloned().fold(T::zero(), |a, b| a + b);
        if !total.close_to(&T::one()) {
            return Err(Error::InvalidMeasure(format!("weights sum to {total:?}")));
        }
        Ok(Self {
            q,
            start,
            len,
            weights,
        })
    }

    /// Point mass on one word.
    pub fn dirac(q: usize, start: i64, word: &[usize]) -> Result<Self> {
        let size = table_size(q, word.len())?;
        if word.iter().any(|&s| s >= q) {
            return Err(Error::InvalidMeasure("symbol out of range".into()));
        }
        let mut weights = vec![T::zero(); size];
        weights[encode(q, word)] = T::one();
        Self::new(q, start, word.len(), weights)
    }

    /// Independent sites with the given one-site laws.
    pub fn product(start: i64, marginals: &[Vec<T>]) -> Result<Self> {
        let q = marginals.first().map_or(0, Vec::len);
        if marginals.iter().any(|m| m.len() != q) {
            return Err(Error::InvalidMeasure("marginals over different alphabets".into()));
        }
        let mut weights = vec![T::one()];
        for m in marginals {
            weights = weights
                .iter()
                .flat_map(|w| m.iter().map(move |p| w.clone() * p.clone()))
                .collect();
        }
        Self::new(q, start, marginals.len(), weights)
    }

    pub fn iid(start: i64, len: usize, law: &[T]) -> Result<Self> {
        Self::product(start, &vec![law.to_vec(); len])
    }

    /// Convex combination of measures on the same support.
    pub fn mixture(parts: &[(T, &Self)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::InvalidMeasure("empty mixture".into()))?;
        let mut weights = vec![T::zero(); first.weights.len()];
        for (c, m) in parts {
            if (m.q, m.start, m.len) != (first.q, first.start, first.len) {
                return Err(Error::InvalidMeasure("mixture of different supports".into()));
            }
            for (acc, w) in weights.iter_mut().zip(&m.weights) {
                *acc = acc.clone() + c.clone() * w.clone();
            }
        }
        Self::new(first.q, first.start, first.len, weights)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Inclusive support `[start, end]`.
    pub fn support(&self) -> (i64, i64) {
        (self.start, self.start + self.len as i64 - 1)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight(&self, word: &[usize]) -> &T {
        &self.weights[encode(self.q, word)]
    }

    pub fn word(&self, index: usize) -> Vec<usize> {
        decode(self.q, self.len, index)
    }

    pub fn total(&self) -> T {
        self.weights.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Mass of the words satisfying `pred`.
    pub fn probability(&self, mut pred: impl FnMut(&[usize]) -> bool) -> T {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| pred(&self.word(*i)))
            .fold(T::zero(), |a, (_, w)| a + w.clone())
    }

    /// Marginal on `[start, start + len)`.
    pub fn marginal(&self, start: i64, len: usize) -> Result<Self> {
        let end = start + len as i64 - 1;
        let (a, b) = self.support();
        if len == 0 || start < a || end > b {
            return Err(Error::NotASubinterval {
                start,
                end,
                support_start: a,
                support_end: b,
            });
        }
        let right = (b - end) as u32;
        let div = self.q.pow(right);
        let modulus = self.q.pow(len as u32);
        let mut weights = vec![T::zero(); modulus];
        for (i, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let j = (i / div) % modulus;
            weights[j] = weights[j].clone() + w.clone();
        }
        Ok(Self {
            q: self.q,
            start,
            len,
            weights,
        })
    }

    /// Push-forward under a site-wise relabeling `Σ -> Σ'`.
    pub fn map_symbols(&self, new_q: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        let size = table_size(new_q, self.len)?;
        let mut weights = vec![T::zero(); size];
        for (i, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let image: Vec<usize> = self.word(i).into_iter().map(&f).collect();
            let j = encode(new_q, &image);
            weights[j] = weights[j].clone() + w.clone();
        }
        Self::new(new_q, self.start, self.len, weights)
    }
}

fn encode(q: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &s| acc * q + s)
}

fn decode(q: usize, len: usize, mut index: usize) -> Vec<usize> {
    let mut word = vec![0; len];
    for slot in word.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
    word
}

/// One application of the PCA to `mu`, producing the exact law on the
/// largest window whose neighborhoods lie in the support of `mu`.
///
/// Sites are contracted left to right. After `t` rounds the working array is
/// indexed by `(y_0 .. y_{t-1}, x_t .. x_{L-1})`; round `t` draws `y_t` from
/// the window starting at `x_t` and sums `x_t` out, so the array never grows
/// past `q^L` entries.
pub fn evolve_measure<T: Scalar>(mu: &CylinderMeasure<T>, f: &TransitionFunction<T>) -> Result<CylinderMeasure<T>> {
    let q = mu.q;
    if f.q() != q {
        return Err(Error::InvalidParameter(format!(
            "measure over {q} symbols, rule over {}",
            f.q()
        )));
    }
    let span = f.span();
    let len = mu.len;
    if len <= span {
        return Err(Error::EmptyImage { support: len, span });
    }
    let out_len = len - span;
    let vmin = f.neighborhood()[0];

    // Row index of every window of span + 1 consecutive symbols.
    let window_rows: Vec<usize> = (0..q.pow(span as u32 + 1))
        .map(|code| {
            let window = decode(q, span + 1, code);
            let word: Vec<usize> = f
                .neighborhood()
                .iter()
                .map(|&v| window[(v - vmin) as usize])
                .collect();
            f.encode(&word)
        })
        .collect();

    let mut cur = mu.weights.clone();
    let mut next = vec![T::zero(); cur.len()];
    for t in 0..out_len {
        let suffix = q.pow((len - t - 1) as u32);
        let below = q.pow((len - t - 1 - span) as u32);
        let top_mod = q.pow(span as u32);
        let prefixes = q.pow(t as u32);
        next.iter_mut().for_each(|v| *v = T::zero());
        for p in 0..prefixes {
            for x in 0..q {
                let src_base = (p * q + x) * suffix;
                for s in 0..suffix {
                    let w = &cur[src_base + s];
                    if w.is_zero() {
                        continue;
                    }
                    let window = x * top_mod + s / below;
                    let row = &f.rows()[window_rows[window]];
                    for (y, prob) in row.iter().enumerate() {
                        if prob.is_zero() {
                            continue;
                        }
                        let dst = (p * q + y) * suffix + s;
                        next[dst] = next[dst].clone() + w.clone() * prob.clone();
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }

    let tail = q.pow(span as u32);
    let weights: Vec<T> = cur
        .chunks(tail)
        .map(|c| c.iter().cloned().fold(T::zero(), |a, b| a + b))
        .collect();
    CylinderMeasure::new(q, mu.start - vmin, out_len, weights)
}

/// Half the `L1` distance between two measures on the same support.
pub fn total_variation<T: Scalar>(a: &CylinderMeasure<T>, b: &CylinderMeasure<T>) -> Result<T> {
    if (a.q, a.start, a.len) != (b.q, b.start, b.len) {
        return Err(Error::InvalidParameter("measures live on different supports".into()));
    }
    let l1 = a
        .weights
        .iter()
        .zip(&b.weights)
        .fold(T::zero(), |acc, (x, y)| acc + x.abs_diff(y));
    Ok(l1 * T::half())
}

/// Total variation between the one-step image of `mu` and `mu` itself,
/// both restricted to the image window. Zero for invariant measures.
pub fn invariance_residual<T: Scalar>(mu: &CylinderMeasure<T>, f: &TransitionFunction<T>) -> Result<T> {
    let image = evolve_measure(mu, f)?;
    let base = mu.marginal(image.start, image.len)?;
    total_variation(&image, &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::model_a_rule;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn dirac_01_goes_to_zero() {
        let mu = CylinderMeasure::<Rational>::dirac(2, -1, &[0, 1]).unwrap();
        let out = evolve_measure(&mu, &model_a_rule()).unwrap();
        assert_eq!(out.support(), (0, 0));
        assert_eq!(out.weights(), &[r(1, 1), r(0, 1)]);
    }

    #[test]
    fn uniform_one_site_image() {
        let mu = CylinderMeasure::iid(-1, 2, &[r(1, 2), r(1, 2)]).unwrap();
        let out = evolve_measure(&mu, &model_a_rule()).unwrap();
        assert_eq!(out.weight(&[1]), &r(1, 2));
    }

    #[test]
    fn marginal_cases() {
        let mu = CylinderMeasure::iid(0, 3, &[r(1, 3), r(2, 3)]).unwrap();
        assert_eq!(mu.marginal(0, 3).unwrap(), mu);
        let m = mu.marginal(1, 2).unwrap();
        assert_eq!(m, CylinderMeasure::iid(1, 2, &[r(1, 3), r(2, 3)]).unwrap());
        assert_eq!(m.total(), r(1, 1));
        assert!(matches!(mu.marginal(2, 2), Err(Error::NotASubinterval { .. })));
        assert!(mu.marginal(-1, 1).is_err());
    }

    #[test]
    fn image_needs_room() {
        let mu = CylinderMeasure::<Rational>::dirac(2, 0, &[1]).unwrap();
        assert!(matches!(
            evolve_measure(&mu, &model_a_rule()),
            Err(Error::EmptyImage { .. })
        ));
    }

    #[test]
    fn all_ones_is_not_invariant() {
        let mu = CylinderMeasure::<Rational>::dirac(2, 0, &[1; 6]).unwrap();
        let res = invariance_residual(&mu, &model_a_rule()).unwrap();
        assert!(res > r(0, 1));
    }

    #[test]
    fn support_cap() {
        let too_big = CylinderMeasure::<f64>::dirac(2, 0, &[0; 25]);
        assert!(matches!(too_big, Err(Error::SupportTooLarge { len: 25, cap: 24 })));
    }

    #[test]
    fn float_and_exact_agree() {
        let exact = CylinderMeasure::iid(0, 6, &[r(1, 3), r(2, 3)]).unwrap();
        let float = CylinderMeasure::iid(0, 6, &[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let e = evolve_measure(&exact, &model_a_rule()).unwrap();
        let f = evolve_measure(&float, &model_a_rule()).unwrap();
        for (a, b) in e.weights().iter().zip(f.weights()) {
            assert!((a.to_f64() - b).abs() < 1e-12);
        }
    }
}
