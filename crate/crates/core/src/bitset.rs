//! Fixed-size bitset keyed by projective-point slots.
//!
//! Slot v < size is the affine point ⟨(v,1)⟩; slot = size is ⟨(1,0)⟩.
//! The sweep oracles live on these: building one costs a single pass over
//! F_{q^n}^*, and intersection tests are word-wise ANDs.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotSet {
    words: Vec<u64>,
    slots: u64,
}

impl SlotSet {
    /// Capacity for all points of PG(1,q^n): field size + 1 slots.
    pub fn for_field_size(size: u64) -> Self {
        let slots = size + 1;
        SlotSet {
            words: vec![0; slots.div_ceil(64) as usize],
            slots,
        }
    }

    #[inline]
    pub fn insert(&mut self, slot: u64) {
        debug_assert!(slot < self.slots);
        self.words[(slot / 64) as usize] |= 1u64 << (slot % 64);
    }

    #[inline]
    pub fn contains(&self, slot: u64) -> bool {
        self.words[(slot / 64) as usize] >> (slot % 64) & 1 == 1
    }

    pub fn intersects(&self, other: &SlotSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &SlotSet) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// First common slot in slot order, if any.
    pub fn first_common(&self, other: &SlotSet) -> Option<u64> {
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let both = a & b;
            if both != 0 {
                return Some(i as u64 * 64 + both.trailing_zeros() as u64);
            }
        }
        None
    }

    pub fn iter_slots(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.slots).filter(|&s| self.contains(s))
    }
}
