//! Fixed-capacity bit sets used for vertex sets and family membership masks.

/// A bit set over `len` slots, stored as 64-bit blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bits {
    len: usize,
    blocks: Vec<u64>,
}

impl Bits {
    pub fn empty(len: usize) -> Self {
        Bits { len, blocks: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            len: self.len,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// True when `other \ self` is non-empty.
    pub fn misses_some_of(&self, other: &Bits) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| !a & b != 0)
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            BitBlockIter { block, base: bi * 64 }
        })
    }

    /// Indices in `other` but not in `self`.
    pub fn complement_iter<'a>(&'a self, other: &'a Bits) -> impl Iterator<Item = usize> + 'a {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .enumerate()
            .flat_map(|(bi, (a, b))| BitBlockIter { block: !a & b, base: bi * 64 })
    }
}

struct BitBlockIter {
    block: u64,
    base: usize,
}

impl Iterator for BitBlockIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.block == 0 {
            return None;
        }
        let tz = self.block.trailing_zeros() as usize;
        self.block &= self.block - 1;
        Some(self.base + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_roundtrip() {
        let mut b = Bits::empty(130);
        for i in [0, 63, 64, 65, 129] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 65, 129]);
        assert_eq!(b.count(), 5);
        assert!(b.contains(64));
        assert!(!b.contains(1));
    }

    #[test]
    fn set_algebra() {
        let mut a = Bits::empty(10);
        a.insert(1);
        a.insert(3);
        let mut b = Bits::empty(10);
        b.insert(3);
        b.insert(4);
        assert!(a.intersects(&b));
        assert_eq!(a.intersect(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert!(a.misses_some_of(&b));
        assert_eq!(a.complement_iter(&b).collect::<Vec<_>>(), vec![4]);
    }
}
