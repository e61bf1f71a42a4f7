//! Seeded randomness. Every consumer draws from its own labelled stream so
//! that adding a new check never shifts the draws of an existing one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elliptic::TauPoint;
use crate::field::Coefficient;

fn label_hash(label: &str) -> u64 {
    // FNV-1a; stable across platforms and releases, unlike `DefaultHasher`.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The stream for `label` under the global `seed`.
pub fn substream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(label_hash(label));
    rng
}

/// `p / q` with `|p| <= num_bound`, `1 <= q <= den_bound`.
pub fn rational<F: Coefficient>(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> F {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=den_bound);
    F::from_ratio(p, q)
}

pub fn nonzero_rational<F: Coefficient>(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> F {
    loop {
        let x: F = rational(rng, num_bound, den_bound);
        if !x.is_exact_zero() {
            return x;
        }
    }
}

/// A non-zero Gaussian rational with small numerators and denominators.
pub fn nonzero_gaussian<F: Coefficient>(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> F {
    loop {
        let re = (rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound));
        let im = (rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound));
        let x = F::from_parts(re, im);
        if !x.is_exact_zero() {
            return x;
        }
    }
}

/// A rational point of the upper half-plane.
pub fn tau_point<F: Coefficient>(rng: &mut impl Rng) -> TauPoint<F> {
    let re = (rng.gen_range(-6..=6), rng.gen_range(1..=6));
    let im = (rng.gen_range(1..=12), rng.gen_range(1..=6));
    TauPoint::new(F::from_parts(re, im)).expect("positive imaginary part")
}
