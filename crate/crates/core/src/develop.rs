//! Cyclic development of base blocks over Z_n.

use crate::error::DevelopError;
use crate::model::OrderedBlock;

/// Adds `r` to every entry modulo `n`, keeping tuple order.
pub fn shift(block: &OrderedBlock, r: u32, n: u32) -> OrderedBlock {
    block.map(|p| ((p as u64 + r as u64) % n as u64) as u32)
}

/// Full orbits of every base block under `+1 mod n`.
///
/// Output is base-major: block `i·n + r` is `shift(base[i], r)`. Short orbits
/// and repeated base blocks are kept as-is so the verifier sees them.
pub fn develop(base_blocks: &[OrderedBlock], n: u32) -> Result<Vec<OrderedBlock>, DevelopError> {
    for (i, b) in base_blocks.iter().enumerate() {
        if let Some(&entry) = b.points().iter().find(|&&p| p >= n) {
            return Err(DevelopError::EntryOutOfRange { block: i, entry, modulus: n });
        }
    }
    Ok(base_blocks.iter().flat_map(|b| (0..n).map(move |r| shift(b, r, n))).collect())
}

/// `true` if no nonzero shift maps the block's point set onto itself.
///
/// A tuple is never fixed by a nonzero shift, but its point set can be, and
/// then the development repeats underlying blocks.
pub fn has_full_orbit(block: &OrderedBlock, n: u32) -> bool {
    let set = block.sorted_points();
    (1..n).all(|r| shift(block, r, n).sorted_points() != set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn b(p: [u32; 4]) -> OrderedBlock {
        OrderedBlock::from(p)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&b([0, 1, 11, 5]), 1, 13), b([1, 2, 12, 6]));
        assert_eq!(shift(&b([6, 5, 0, 2]), 0, 13), b([6, 5, 0, 2]));
        assert_eq!(shift(&b([2, 0, 5, 8]), 5, 10), b([7, 5, 0, 3]));
    }

    #[test]
    fn develop_examples() {
        let base = [b([0, 1, 2, 6]), b([1, 0, 4, 3]), b([2, 0, 5, 8])];
        assert_eq!(develop(&base, 10).unwrap().len(), 30);

        let single = OrderedBlock::new(&[0]).unwrap();
        assert_eq!(develop(std::slice::from_ref(&single), 1).unwrap(), vec![single]);

        let dup = [b([0, 11, 1, 26]), b([0, 11, 1, 26])];
        let out = develop(&dup, 76).unwrap();
        assert_eq!(out.len(), 152);
        let mut mult: HashMap<&OrderedBlock, usize> = HashMap::new();
        for blk in &out {
            *mult.entry(blk).or_default() += 1;
        }
        assert_eq!(mult.len(), 76);
        assert!(mult.values().all(|&m| m == 2));

        assert_eq!(
            develop(&[b([0, 1, 2, 13])], 13),
            Err(DevelopError::EntryOutOfRange { block: 0, entry: 13, modulus: 13 })
        );
    }

    #[test]
    fn full_orbits() {
        assert!(has_full_orbit(&b([0, 1, 2, 6]), 10));
        assert!(!has_full_orbit(&b([0, 2, 4, 6]), 8));
    }

    proptest! {
        #[test]
        fn shifts_compose(pts in proptest::sample::subsequence((0u32..40).collect::<Vec<_>>(), 4), r in 0u32..40, s in 0u32..40) {
            let n = 40;
            let blk = OrderedBlock::new(&pts).unwrap();
            prop_assert_eq!(shift(&shift(&blk, r, n), s, n), shift(&blk, (r + s) % n, n));
        }

        #[test]
        fn developed_pair_coverage_is_shift_invariant(
            base in proptest::collection::vec(proptest::sample::subsequence((0u32..17).collect::<Vec<_>>(), 4), 1..4),
        ) {
            let n = 17;
            let base: Vec<_> = base.iter().map(|p| OrderedBlock::new(p).unwrap()).collect();
            let blocks = develop(&base, n).unwrap();
            prop_assert_eq!(blocks.len(), base.len() * n as usize);
            let mut count = vec![0u32; (n * n) as usize];
            for blk in &blocks {
                for (x, y) in blk.ordered_pairs() {
                    count[(x * n + y) as usize] += 1;
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let (x1, y1) = ((x + 1) % n, (y + 1) % n);
                    prop_assert_eq!(count[(x * n + y) as usize], count[(x1 * n + y1) as usize]);
                }
            }
        }
    }
}
