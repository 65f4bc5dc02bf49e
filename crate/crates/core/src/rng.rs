/// Deterministic 64-bit generator with a splitmix-style update.
///
/// State advances by the odd constant 0x9E3779B97F4A7C15 and the output is a
/// 3-round xor-shift-multiply mix of the new state. Every randomized routine
/// in this crate takes an explicit seed, so identical seeds reproduce
/// identical samples across runs and platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Generator for the `index`-th member of a seeded batch.
    ///
    /// Each member gets its own stream, so batches can be generated out of
    /// order or in parallel without changing any sample.
    pub fn stream(seed: u64, index: u64) -> Self {
        SplitMix64::new(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` via rejection sampling; `bound` must be
    /// nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below(0)");
        // Reject the tail of the u64 range that would bias small residues.
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_across_instances() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ_from_each_other_and_base() {
        let mut base = SplitMix64::new(7);
        let mut s0 = SplitMix64::stream(7, 0);
        let mut s1 = SplitMix64::stream(7, 1);
        let (a, b, c) = (base.next_u64(), s0.next_u64(), s1.next_u64());
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn bounded_values_in_range_and_all_residues_hit() {
        let mut rng = SplitMix64::new(1);
        let mut seen = [false; 7];
        for _ in 0..200 {
            let v = rng.next_below(7);
            assert!(v < 7);
            seen[v as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn known_vector_is_stable() {
        // Frozen output of the documented update; guards against accidental
        // changes to the mixing constants.
        let mut rng = SplitMix64::new(0);
        let first = rng.next_u64();
        let mut again = SplitMix64::new(0);
        assert_eq!(first, again.next_u64());
        assert_eq!(first, 0xE220A8397B1DCDAF);
    }
}
