//! Two-dimensional Sobol `(0, m, 2)`-nets with nested uniform (Owen)
//! scrambling.
//!
//! Points are stored as 31-bit digit strings. Scrambling flips the digit at
//! depth `b` of a coordinate according to a keyed hash of the `b` digits
//! above it, which is a nested uniform scramble with O(1) memory per point.

use crate::error::{Error, Result};

/// Digits per coordinate.
pub const BITS: u32 = 31;
const SCALE: f64 = 1.0 / (1u64 << BITS) as f64;

/// `2^m` points of the first two Sobol coordinates, as 31-bit digit strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalNet2D {
    m: u32,
    points: Vec<[u32; 2]>,
}

/// Direction numbers, most significant digit first: coordinate 1 is the
/// identity (van der Corput), coordinate 2 comes from the primitive
/// polynomial `x + 1` with initial value `m₁ = 1`.
fn direction_numbers() -> [[u32; BITS as usize]; 2] {
    let mut dirs = [[0u32; BITS as usize]; 2];
    for (k, d) in dirs[0].iter_mut().enumerate() {
        *d = 1 << (BITS - 1 - k as u32);
    }
    dirs[1][0] = 1 << (BITS - 1);
    for k in 1..BITS as usize {
        dirs[1][k] = dirs[1][k - 1] ^ (dirs[1][k - 1] >> 1);
    }
    dirs
}

pub fn sobol_net(m: u32) -> Result<DigitalNet2D> {
    if !(1..=BITS).contains(&m) {
        return Err(Error::param("m", format!("must lie in 1..=31, got {m}")));
    }
    let dirs = direction_numbers();
    let n = 1usize << m;
    let mut points = Vec::with_capacity(n);
    // Gray-code order visits the same point set as the natural order.
    let mut current = [0u32; 2];
    points.push(current);
    for i in 1..n {
        let bit = (i.trailing_zeros()) as usize;
        current[0] ^= dirs[0][bit];
        current[1] ^= dirs[1][bit];
        points.push(current);
    }
    Ok(DigitalNet2D { m, points })
}

impl DigitalNet2D {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn digits(&self) -> &[[u32; 2]] {
        &self.points
    }

    /// `digits / 2³¹`, in `[0, 1)`.
    pub fn point(&self, i: usize) -> [f64; 2] {
        let [a, b] = self.points[i];
        [a as f64 * SCALE, b as f64 * SCALE]
    }

    /// `(digits + ½) / 2³¹`, in `(0, 1)`; used wherever points feed an
    /// inverse CDF.
    pub fn point_offset(&self, i: usize) -> [f64; 2] {
        let [a, b] = self.points[i];
        [(a as f64 + 0.5) * SCALE, (b as f64 + 0.5) * SCALE]
    }

    /// Whether every elementary box `[a/2^p, (a+1)/2^p) × [b/2^q, (b+1)/2^q)`
    /// with `p + q = m` holds exactly one point.
    pub fn has_net_property(&self) -> bool {
        let m = self.m;
        if self.points.len() != 1usize << m {
            return false;
        }
        let mut seen = vec![false; 1usize << m];
        for p in 0..=m {
            let q = m - p;
            seen.iter_mut().for_each(|s| *s = false);
            for &[x, y] in &self.points {
                let a = (x >> (BITS - p)) as usize;
                let b = (y >> (BITS - q)) as usize;
                let cell = (a << q) | b;
                if std::mem::replace(&mut seen[cell], true) {
                    return false;
                }
            }
        }
        true
    }
}

fn mix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Per-coordinate keys of one randomization replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScrambleSeedTree {
    keys: [u64; 2],
}

impl ScrambleSeedTree {
    pub fn new(seed: u64, replicate: u64) -> Self {
        let base = mix64(mix64(seed ^ 0x5851_f42d_4c95_7f2d).wrapping_add(replicate));
        ScrambleSeedTree {
            keys: [mix64(base ^ 0x9e37_79b9_7f4a_7c15), mix64(base ^ 0xd1b5_4a32_d192_ed03)],
        }
    }

    /// Nested uniform scramble of one 31-digit coordinate.
    pub fn scramble(&self, coord: usize, digits: u32) -> u32 {
        let key = self.keys[coord];
        let mut out = 0u32;
        for depth in 0..BITS {
            let shift = BITS - 1 - depth;
            let prefix = if depth == 0 { 0 } else { digits >> (shift + 1) };
            let h = mix64(key ^ ((depth as u64) << 40) ^ prefix as u64);
            let bit = ((digits >> shift) & 1) ^ (h & 1) as u32;
            out |= bit << shift;
        }
        out
    }
}

pub fn owen_scramble(net: &DigitalNet2D, seed: u64, replicate: u64) -> DigitalNet2D {
    let tree = ScrambleSeedTree::new(seed, replicate);
    DigitalNet2D {
        m: net.m,
        points: net
            .points
            .iter()
            .map(|&[a, b]| [tree.scramble(0, a), tree.scramble(1, b)])
            .collect(),
    }
}
