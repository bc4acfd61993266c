//! Seeded random inputs for tests, verification grids and benchmarks.
//!
//! Rationals are drawn from `[-3, 3]` with denominators at most 4.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fock::{GeneratorB, GeneratorD};
use crate::polycore::Scalar;
use crate::tau_bkp::{PartitionExt, ShiftConstants};
use crate::tau_dkp::DkpParams;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational<R: Rng>(rng: &mut R) -> Scalar {
    let den = rng.gen_range(1..=4);
    Scalar::ratio(rng.gen_range(-3 * den..=3 * den), den)
}

fn sparse_rational<R: Rng>(rng: &mut R) -> Scalar {
    if rng.gen_bool(0.5) {
        rational(rng)
    } else {
        Scalar::zero()
    }
}

/// One vector per part, each filling the first `λ_1 + λ_2` slots.
pub fn constants<R: Rng>(rng: &mut R, partition: &PartitionExt) -> ShiftConstants {
    let order = partition.max_schur_order();
    ShiftConstants((0..partition.len()).map(|_| (0..order).map(|_| rational(rng)).collect()).collect())
}

pub fn dkp_params<R: Rng>(rng: &mut R, partition: &PartitionExt) -> DkpParams {
    let c = constants(rng, partition);
    let b = (0..partition.len()).map(|_| rational(rng)).collect();
    DkpParams::new(partition.clone(), c, b).expect("matching lengths")
}

/// A strict partition of weight between 1 and `max_weight`.
pub fn strict_partition<R: Rng>(rng: &mut R, max_weight: u32) -> PartitionExt {
    let all: Vec<PartitionExt> = PartitionExt::strict_up_to(max_weight).into_iter().filter(|p| !p.is_empty()).collect();
    all.choose(rng).expect("nonempty").clone()
}

/// Type-B generators with strictly decreasing pivots, `|λ| ≤ max_weight`, and
/// random coefficients on the modes above each pivot up to `φ_2`.
pub fn generators_b<R: Rng>(rng: &mut R, max_weight: u32) -> Vec<GeneratorB> {
    let lambda = strict_partition(rng, max_weight);
    lambda
        .parts()
        .iter()
        .map(|&p| {
            let coeffs: BTreeMap<i64, Scalar> = (-(p as i64) + 1..=2).map(|m| (m, sparse_rational(rng))).collect();
            GeneratorB::new(p, coeffs).expect("modes above pivot")
        })
        .collect()
}

/// Type-D generators over an extended strict partition with `|λ| ≤ max_weight`,
/// with random coefficients on half-integer modes above the pivot up to `φ_{5/2}`.
/// A zero pivot never gets `a_{1/2} = -1`.
pub fn generators_d<R: Rng>(rng: &mut R, max_weight: u32) -> Vec<GeneratorD> {
    let all = PartitionExt::extended_up_to(max_weight);
    let lambda = loop {
        let p = all.choose(rng).expect("nonempty");
        if !p.is_empty() {
            break p.clone();
        }
    };
    lambda
        .parts()
        .iter()
        .map(|&p| {
            let lead = -(2 * p as i64 + 1);
            let coeffs: BTreeMap<i64, Scalar> = (lead + 2..=5)
                .step_by(2)
                .map(|m| {
                    let mut c = sparse_rational(rng);
                    while p == 0 && m == 1 && c == Scalar::from_int(-1) {
                        c = sparse_rational(rng);
                    }
                    (m, c)
                })
                .collect();
            GeneratorD::new(p, coeffs).expect("modes above pivot")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_range() {
        let mut r = rng(1);
        for _ in 0..200 {
            let x = rational(&mut r);
            assert!(x.is_rational());
            let q = x.rational_part();
            assert!(*q.denom() <= 4.into());
            assert!(q.numer().magnitude() <= &(q.denom().magnitude() * 3u32));
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let a = generators_d(&mut rng(9), 5);
        let b = generators_d(&mut rng(9), 5);
        assert_eq!(a, b);
    }
}
