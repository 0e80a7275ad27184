//! Counter-based deterministic random streams.
//!
//! Every stochastic routine in the crate draws from a [`CounterStream`]:
//! a SplitMix64-style generator whose state is a `(stream id, counter)`
//! pair. Output depends only on the pair, so substreams derived from a
//! seed and a replica index are independent of each other's consumption
//! and batches are bit-reproducible regardless of evaluation order.

/// Name of the generator, recorded in reports next to the seed.
pub const GENERATOR_NAME: &str = "splitmix64-counter/v1";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic counter-based 64-bit random stream.
#[derive(Clone, Debug)]
pub struct CounterStream {
    stream_id: u64,
    counter: u64,
}

/// Derive an independent seed from a base seed and a role label.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    mix64(mix64(seed ^ 0xD134_2543_DE82_EF95) ^ mix64(label.wrapping_add(GOLDEN_GAMMA)))
}

impl CounterStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            stream_id: mix64(seed ^ 0xD134_2543_DE82_EF95),
            counter: 0,
        }
    }

    /// Derive an independent child stream identified by `label`.
    ///
    /// Derivation reads only the stream id, never the counter, so a
    /// parent may be consumed before or after deriving children.
    pub fn substream(&self, label: u64) -> Self {
        Self {
            stream_id: mix64(self.stream_id ^ mix64(label.wrapping_add(GOLDEN_GAMMA))),
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.stream_id ^ self.counter.wrapping_mul(GOLDEN_GAMMA))
    }

    /// Uniform draw from `[0, 1)` with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Poisson draw with mean `lambda >= 0`.
    ///
    /// Knuth's product method, recursively split so the running product
    /// never underflows for large means.
    pub fn poisson(&mut self, lambda: f64) -> u64 {
        assert!(lambda >= 0.0 && lambda.is_finite(), "invalid Poisson mean");
        let mut total = 0u64;
        let mut remaining = lambda;
        while remaining > 30.0 {
            total += self.poisson_knuth(15.0);
            remaining -= 15.0;
        }
        total + self.poisson_knuth(remaining)
    }

    fn poisson_knuth(&mut self, lambda: f64) -> u64 {
        if lambda == 0.0 {
            return 0;
        }
        let threshold = (-lambda).exp();
        let mut k = 0u64;
        let mut p = 1.0;
        loop {
            p *= self.next_f64();
            if p <= threshold {
                return k;
            }
            k += 1;
        }
    }
}
