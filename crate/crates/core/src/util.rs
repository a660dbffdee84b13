//! Small shared utilities: a deterministic PRNG, mixed-radix point codecs,
//! and fixed-chunk worker helpers whose reduction order does not depend on
//! thread scheduling.

/// SplitMix64. Used for seeded start vectors and random subset sampling so
/// results are bit-reproducible across platforms and releases.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)` by rejection, unbiased.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// First `k` entries of a seeded Fisher-Yates shuffle of `0..n`:
    /// a uniform random `k`-subset, in sampling order.
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.next_below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}

/// Decode a point index into `d` coordinates, first coordinate least
/// significant.
pub fn decode_point(index: usize, m: usize, d: usize, out: &mut [u16]) {
    debug_assert_eq!(out.len(), d);
    let mut rest = index;
    for slot in out.iter_mut() {
        *slot = (rest % m) as u16;
        rest /= m;
    }
    debug_assert_eq!(rest, 0);
}

/// Inverse of [`decode_point`].
pub fn encode_point(coords: &[u16], m: usize) -> usize {
    let mut index = 0usize;
    for &c in coords.iter().rev() {
        index = index * m + c as usize;
    }
    index
}

/// `m^d` with overflow checking.
pub fn checked_pow(m: usize, d: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..d {
        acc = acc.checked_mul(m)?;
    }
    Some(acc)
}

/// Split `0..len` into at most `workers` contiguous chunks of near-equal
/// size. The chunk boundaries depend only on `len` and `workers`.
pub fn chunk_ranges(len: usize, workers: usize) -> Vec<std::ops::Range<usize>> {
    let workers = workers.max(1).min(len.max(1));
    let base = len / workers;
    let extra = len % workers;
    let mut ranges = Vec::with_capacity(workers);
    let mut start = 0;
    for i in 0..workers {
        let size = base + usize::from(i < extra);
        ranges.push(start..start + size);
        start += size;
    }
    ranges
}

/// Fill `out[i] = f(i)` in parallel over fixed chunks. Writes are disjoint,
/// so the result is identical for any worker count.
pub fn par_fill<T, F>(out: &mut [T], workers: usize, f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let ranges = chunk_ranges(out.len(), workers);
    if ranges.len() <= 1 {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i);
        }
        return;
    }
    std::thread::scope(|scope| {
        let mut rest = out;
        let mut offset = 0;
        for range in &ranges {
            let (head, tail) = rest.split_at_mut(range.len());
            rest = tail;
            let start = offset;
            offset += range.len();
            let f = &f;
            scope.spawn(move || {
                for (k, slot) in head.iter_mut().enumerate() {
                    *slot = f(start + k);
                }
            });
        }
    });
}

/// Sum `f(i)` for `i in 0..len` with per-chunk partial sums combined in
/// chunk order: a deterministic reduction tree for a fixed worker count.
pub fn par_sum_f64<F>(len: usize, workers: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let ranges = chunk_ranges(len, workers);
    if ranges.len() <= 1 {
        return (0..len).map(f).sum();
    }
    let mut partials = vec![0.0f64; ranges.len()];
    std::thread::scope(|scope| {
        for (slot, range) in partials.iter_mut().zip(ranges.iter()) {
            let range = range.clone();
            let f = &f;
            scope.spawn(move || {
                *slot = range.map(f).sum();
            });
        }
    });
    partials.iter().sum()
}
