//! Deterministic infinite bit sequences.
//!
//! A [`BitStream`] is a value: reading never mutates it, and every consuming
//! operation hands back an advanced copy. Bits come from a counter-based
//! generator, so the bit at any index is computed directly from
//! `(seed, index)` without walking the sequence. That makes even/odd
//! splitting an index remap instead of a copy, and lets batch drivers
//! derive per-item streams that are identical no matter how work is chunked.

use std::fmt;
use std::sync::Arc;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function. A bijection on `u64`.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, PartialEq, Eq)]
enum Source {
    /// Word `j` is `mix64(seed + (j + 1) * GOLDEN_GAMMA)`, i.e. the `j`-th
    /// SplitMix64 output for `seed`.
    Counter { seed: u64 },
    /// A fixed bit pattern repeated forever.
    Cycle(Arc<[bool]>),
}

impl Source {
    #[inline]
    fn bit(&self, index: u64) -> bool {
        match self {
            Source::Counter { seed } => {
                let word = mix64(seed.wrapping_add((index / 64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
                // MSB first within each word.
                (word >> (63 - (index % 64))) & 1 == 1
            }
            Source::Cycle(bits) => bits[(index % bits.len() as u64) as usize],
        }
    }
}

/// An infinite boolean sequence with a read cursor.
///
/// Index `i` of the stream maps to position `base + stride * i` of the
/// underlying source. Fresh streams have `base = 0`, `stride = 1`; splitting
/// composes the map. Positions wrap modulo 2^64, which is only reachable after
/// 64 levels of nested splitting.
#[derive(Clone, PartialEq, Eq)]
pub struct BitStream {
    source: Source,
    base: u64,
    stride: u64,
    cursor: u64,
}

/// The even- and odd-indexed halves of a stream's unread portion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitStreams {
    pub even: BitStream,
    pub odd: BitStream,
}

impl BitStream {
    /// A stream at cursor 0 whose bits are fully determined by `seed`.
    ///
    /// The first 64 bits are a bijective function of the seed, so distinct
    /// seeds always differ somewhere in their 64-bit prefix.
    pub fn from_seed(seed: u64) -> Self {
        Self {
            source: Source::Counter { seed },
            base: 0,
            stride: 1,
            cursor: 0,
        }
    }

    /// A stream that repeats `pattern` forever. Handy for pinning exact bits.
    ///
    /// # Panics
    ///
    /// Panics if `pattern` is empty.
    pub fn from_bits(pattern: &[bool]) -> Self {
        assert!(!pattern.is_empty(), "bit pattern must be non-empty");
        Self {
            source: Source::Cycle(pattern.into()),
            base: 0,
            stride: 1,
            cursor: 0,
        }
    }

    /// Stream number `index` in the family keyed by `seed`.
    ///
    /// Used by batch drivers: item `i` of a run reads `derive(seed, i)`, so the
    /// result does not depend on the order items are processed in.
    pub fn derive(seed: u64, index: u64) -> Self {
        let key = mix64(seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
        Self::from_seed(mix64(key.wrapping_add(seed)))
    }

    /// Bit `index` of this stream, counted from its origin (ignores the cursor).
    #[inline]
    pub fn bit(&self, index: u64) -> bool {
        self.source.bit(self.base.wrapping_add(self.stride.wrapping_mul(index)))
    }

    pub fn cursor(&self) -> u64 {
        self.cursor
    }

    /// Bit at the cursor, without consuming it.
    #[inline]
    pub fn peek(&self) -> bool {
        self.bit(self.cursor)
    }

    /// Reads the next `n` bits and returns them with the advanced stream.
    /// `self` is left untouched.
    pub fn take(&self, n: usize) -> (Vec<bool>, BitStream) {
        let bits = (0..n as u64).map(|k| self.bit(self.cursor + k)).collect();
        (bits, self.advance(n as u64))
    }

    /// A copy of the stream with the cursor moved forward by `n`.
    pub fn advance(&self, n: u64) -> BitStream {
        BitStream {
            cursor: self.cursor + n,
            ..self.clone()
        }
    }

    /// Splits the unread portion into its even- and odd-indexed bits.
    ///
    /// With the cursor at `c`, `even.bit(k)` reads this stream's bit `c + 2k`
    /// and `odd.bit(k)` reads bit `c + 2k + 1`. Both children start at cursor
    /// 0 and the parent stays readable.
    pub fn split_even_odd(&self) -> SplitStreams {
        let origin = self.base.wrapping_add(self.stride.wrapping_mul(self.cursor));
        let stride = self.stride.wrapping_mul(2);
        SplitStreams {
            even: BitStream {
                source: self.source.clone(),
                base: origin,
                stride,
                cursor: 0,
            },
            odd: BitStream {
                source: self.source.clone(),
                base: origin.wrapping_add(self.stride),
                stride,
                cursor: 0,
            },
        }
    }

    /// Source position read by `bit(index)`.
    pub fn source_index(&self, index: u64) -> u64 {
        self.base.wrapping_add(self.stride.wrapping_mul(index))
    }
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("BitStream");
        match &self.source {
            Source::Counter { seed } => s.field("seed", seed),
            Source::Cycle(bits) => s.field("pattern_len", &bits.len()),
        };
        s.field("base", &self.base)
            .field("stride", &self.stride)
            .field("cursor", &self.cursor)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn same_index_same_bit() {
        let s = BitStream::from_seed(7);
        assert_eq!(s.bit(0), s.bit(0));
        assert_eq!(s.take(64).0, BitStream::from_seed(7).take(64).0);
    }

    #[test]
    fn neighbouring_seeds_differ_in_first_word() {
        let a = BitStream::from_seed(7).take(64).0;
        let b = BitStream::from_seed(8).take(64).0;
        assert_ne!(a, b);
    }

    #[test]
    fn zero_seed_is_ordinary() {
        let (prefix, _) = BitStream::from_seed(0).take(256);
        let ones = prefix.iter().filter(|&&b| b).count();
        assert!(ones > 64 && ones < 192, "ones = {ones}");
    }

    #[test]
    fn take_zero_is_identity() {
        let s = BitStream::from_seed(3);
        let (v, rest) = s.take(0);
        assert!(v.is_empty());
        assert_eq!(rest, s);
    }

    #[test]
    fn take_chains_through_cursor() {
        let s = BitStream::from_seed(11);
        let (_, rest) = s.take(3);
        let (next, _) = rest.take(2);
        assert_eq!(next, vec![s.bit(3), s.bit(4)]);
    }

    #[test]
    fn take_has_value_semantics() {
        let s = BitStream::from_seed(5);
        let (a, advanced) = s.take(5);
        let (b, _) = s.take(5);
        assert_eq!(a, b);
        assert_eq!(s.cursor(), 0);
        assert_eq!(advanced.cursor(), 5);
    }

    #[test]
    fn split_maps_indices() {
        let parent = BitStream::from_bits(&bits("101100"));
        let SplitStreams { even, odd } = parent.split_even_odd();
        assert_eq!(even.take(3).0, bits("110"));
        assert_eq!(odd.take(3).0, bits("010"));
    }

    #[test]
    fn split_of_split_composes() {
        let parent = BitStream::from_seed(99);
        let even_even = parent.split_even_odd().even.split_even_odd().even;
        for k in 0..16 {
            assert_eq!(even_even.source_index(k), 4 * k);
            assert_eq!(even_even.bit(k), parent.bit(4 * k));
        }
    }

    #[test]
    fn split_starts_at_cursor() {
        let parent = BitStream::from_seed(1).advance(10);
        let split = parent.split_even_odd();
        for k in 0..20 {
            assert_eq!(split.even.bit(k), parent.bit(10 + 2 * k));
            assert_eq!(split.odd.bit(k), parent.bit(11 + 2 * k));
        }
    }

    #[test]
    fn interleave_reconstructs_parent() {
        for seed in 0..10u64 {
            let parent = BitStream::from_seed(seed);
            let split = parent.split_even_odd();
            for i in 0..256u64 {
                let child = if i % 2 == 0 { &split.even } else { &split.odd };
                assert_eq!(child.bit(i / 2), parent.bit(i), "seed {seed} index {i}");
            }
        }
    }

    #[test]
    fn reproducible_long_prefix() {
        for seed in [0, 1, 42, u64::MAX] {
            let a = BitStream::from_seed(seed).take(10_000).0;
            let b = BitStream::from_seed(seed).take(10_000).0;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ones_fraction_is_balanced() {
        let (prefix, _) = BitStream::from_seed(2024).take(100_000);
        let frac = prefix.iter().filter(|&&b| b).count() as f64 / 1e5;
        assert!((0.49..=0.51).contains(&frac), "fraction of ones {frac}");
    }

    #[test]
    fn derived_streams_are_distinct() {
        let a = BitStream::derive(42, 0).take(128).0;
        let b = BitStream::derive(42, 1).take(128).0;
        let c = BitStream::derive(43, 0).take(128).0;
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    proptest! {
        #[test]
        fn even_and_odd_never_share_a_parent_index(
            seed in any::<u64>(), cursor in 0u64..1000, k in 0u64..10_000, j in 0u64..10_000
        ) {
            let split = BitStream::from_seed(seed).advance(cursor).split_even_odd();
            prop_assert_ne!(split.even.source_index(k), split.odd.source_index(j));
        }

        #[test]
        fn advancing_keeps_observed_prefix(seed in any::<u64>(), n in 0usize..200, m in 0usize..200) {
            let s = BitStream::from_seed(seed);
            let (first, rest) = s.take(n);
            let _ = rest.take(m);
            prop_assert_eq!(first, s.take(n).0);
        }
    }
}
