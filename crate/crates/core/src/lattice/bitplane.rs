//! Packed boolean rows, 64 cells per word, cell `j` at bit `j % 64` of word `j / 64`.

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitPlane {
    words: Vec<u64>,
    len: usize,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitPlane {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        Self::from_words(vec![u64::MAX; word_count(len)], len)
    }

    /// Takes ownership of `words`; bits past `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(word_count(len), 0);
        let mut plane = Self { words, len };
        plane.mask_tail();
        plane
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut plane = Self::zeros(len);
        for j in 0..len {
            if f(j) {
                plane.words[j / 64] |= 1 << (j % 64);
            }
        }
        plane
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        (self.words[j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        debug_assert!(j < self.len);
        let mask = 1u64 << (j % 64);
        if value {
            self.words[j / 64] |= mask;
        } else {
            self.words[j / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |j| self.get(j))
    }

    /// Cells `[start, start + len)` as a new plane.
    pub fn extract(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "extract out of range");
        let shift = start % 64;
        let base = start / 64;
        let words = (0..word_count(len))
            .map(|k| {
                let lo = self.words.get(base + k).copied().unwrap_or(0);
                if shift == 0 {
                    lo
                } else {
                    let hi = self.words.get(base + k + 1).copied().unwrap_or(0);
                    (lo >> shift) | (hi << (64 - shift))
                }
            })
            .collect();
        Self::from_words(words, len)
    }

    /// Cyclic left-neighbor view: cell `j` of the result is cell `j - 1 (mod len)`.
    pub fn left_neighbors_cyclic(&self) -> Self {
        if self.len == 0 {
            return self.clone();
        }
        let last = self.get(self.len - 1);
        let mut carry = last as u64;
        let words = self
            .words
            .iter()
            .map(|&w| {
                let out = (w << 1) | carry;
                carry = w >> 63;
                out
            })
            .collect();
        Self::from_words(words, self.len)
    }

    /// Word-wise combination of equal-length planes.
    pub fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_words(words, self.len)
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(len: usize) -> BitPlane {
        BitPlane::from_fn(len, |j| (j * 7 + j / 3) % 5 < 2)
    }

    #[test]
    fn extract_matches_cellwise() {
        let p = pattern(200);
        for start in [0, 1, 63, 64, 65, 130] {
            for len in [0, 1, 5, 64, 65] {
                if start + len > 200 {
                    continue;
                }
                let e = p.extract(start, len);
                let expect: Vec<bool> = (start..start + len).map(|j| p.get(j)).collect();
                assert_eq!(e.iter().collect::<Vec<_>>(), expect, "start {start} len {len}");
            }
        }
    }

    #[test]
    fn cyclic_left_neighbors() {
        for len in [1, 2, 63, 64, 65, 129] {
            let p = pattern(len);
            let r = p.left_neighbors_cyclic();
            for j in 0..len {
                assert_eq!(r.get(j), p.get((j + len - 1) % len));
            }
        }
    }

    #[test]
    fn tail_bits_stay_clear() {
        let p = BitPlane::ones(70);
        assert_eq!(p.count_ones(), 70);
        let q = p.zip_with(&p, |a, _| !a | a);
        assert_eq!(q.count_ones(), 70);
    }
}
