use std::collections::VecDeque;

use super::StabilizerCode;
use crate::error::{Error, Result};

/// Largest block length accepted by [`covering_radius_exhaustive`].
pub const MAX_COVERING_N: usize = 8;

/// Index of a Pauli modulo phase in `0..4^n`: x mask in the low `n` bits, z
/// mask in the high `n` bits.
fn index(n: usize, x: u64, z: u64) -> usize {
    (x | (z << n)) as usize
}

/// Covering radius of the set `centers` (Paulis modulo phase) in the GF(4)
/// Hamming metric, by multi-source breadth-first search over all `4^n` words.
pub(crate) fn covering_radius_of(n: usize, centers: &[(u64, u64)]) -> usize {
    let size = 1usize << (2 * n);
    let mut dist = vec![u8::MAX; size];
    let mut queue = VecDeque::with_capacity(size);
    for &(x, z) in centers {
        let i = index(n, x, z);
        if dist[i] == u8::MAX {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    let low = (1usize << n) - 1;
    let mut radius = 0;
    while let Some(i) = queue.pop_front() {
        let d = dist[i];
        radius = radius.max(d as usize);
        let (x, z) = (i & low, i >> n);
        for q in 0..n {
            let bit = 1usize << q;
            // the three other symbols at position q
            for (dx, dz) in [(bit, 0), (0, bit), (bit, bit)] {
                let j = (x ^ dx) | ((z ^ dz) << n);
                if dist[j] == u8::MAX {
                    dist[j] = d + 1;
                    queue.push_back(j);
                }
            }
        }
    }
    radius
}

/// Smallest `ρ` such that every Pauli on `n` qubits (modulo phase) lies within
/// GF(4) Hamming distance `ρ` of `<generators, X̄, Z̄>`.
///
/// Refuses `n > 8`; use the redundancy bound `⌊(n−1)/2⌋` there instead.
pub fn covering_radius_exhaustive(code: &StabilizerCode) -> Result<usize> {
    let n = code.n();
    if n > MAX_COVERING_N {
        return Err(Error::TooLarge { what: "covering radius scan (use redundancy_bound)", n, max: MAX_COVERING_N });
    }
    Ok(covering_radius_of(n, &code.logical_group_masks()))
}
