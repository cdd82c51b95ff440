//! Small dense linear algebra over GF(2).

/// Packed bit vector of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &Self) -> bool {
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut [BitVec], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let ncols = first.len();
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_span(rows: &[BitVec], v: &BitVec) -> bool {
    let mut with = rows.to_vec();
    with.push(v.clone());
    rank(&with) == rank(rows)
}

/// Solve `A x = b` where row `i` of `A` is `rows[i]`. Returns one solution.
pub fn solve(rows: &[BitVec], rhs: &[bool], ncols: usize) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    let mut aug: Vec<BitVec> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = BitVec::zeros(ncols + 1);
            for c in 0..ncols {
                v.set(c, r.get(c));
            }
            v.set(ncols, b);
            v
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = BitVec::zeros(ncols);
    for (r, &c) in pivots.iter().enumerate() {
        x.set(c, aug[r].get(ncols));
    }
    Some(x)
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = BitVec::zeros(ncols);
            v.set(f, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if m[r].get(f) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_span() {
        let rows = vec![bv("1100"), bv("0110"), bv("1010")];
        assert_eq!(rank(&rows), 2);
        assert!(in_span(&rows, &bv("0110")));
        assert!(!in_span(&rows, &bv("0001")));
    }

    #[test]
    fn solve_and_nullspace() {
        let rows = vec![bv("0001111"), bv("0110011"), bv("1010101")];
        let x = solve(&rows, &[true, false, true], 7).unwrap();
        assert!(rows[0].dot(&x));
        assert!(!rows[1].dot(&x));
        assert!(rows[2].dot(&x));
        let ns = nullspace(&rows, 7);
        assert_eq!(ns.len(), 4);
        for v in &ns {
            assert!(rows.iter().all(|r| !r.dot(v)));
        }
        assert!(solve(&[bv("11"), bv("11")], &[true, false], 2).is_none());
    }
}
