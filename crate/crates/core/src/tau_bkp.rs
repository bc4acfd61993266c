//! Polynomial BKP tau-functions as Pfaffians of the `χ` kernel.

use std::fmt;

use thiserror::Error;

use crate::fock::{Generator, GeneratorB};
use crate::pfaffian::{pf_expand, SkewMatrix};
use crate::polycore::{coeffs_to_c, schur_sequence, MPoly, Scalar, SchurArg};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TauError {
    #[error("partition {0:?} is not strictly decreasing with positive parts")]
    NotStrict(Vec<u32>),
    #[error("partition {0:?} is not strictly decreasing (a single zero part may only come last)")]
    NotExtendedStrict(Vec<u32>),
    #[error("expected {expected} constant vectors, got {got}")]
    ConstantCount { expected: usize, got: usize },
    #[error("expected {expected} b values, got {got}")]
    BCount { expected: usize, got: usize },
    #[error("part count {0} is odd; the V_0 formula needs an even count")]
    OddCount(usize),
    #[error("part count {0} is even; the V_1 formula needs an odd count")]
    EvenCount(usize),
    #[error("drop index {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("generator {0} has a vanishing integer-field leading coefficient")]
    DegeneratePivot(usize),
}

/// `λ_1 > λ_2 > ··· > λ_k ≥ 0`; a zero part may appear only last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionExt {
    parts: Vec<u32>,
}

impl PartitionExt {
    pub fn new(parts: Vec<u32>) -> Result<Self, TauError> {
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(TauError::NotExtendedStrict(parts));
        }
        Ok(PartitionExt { parts })
    }

    /// A strict partition: decreasing and all parts positive.
    pub fn strict(parts: Vec<u32>) -> Result<Self, TauError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(TauError::NotStrict(parts));
        }
        Ok(PartitionExt { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        !self.parts.contains(&0)
    }

    /// `λ_1 + λ_2`, the largest Schur index any kernel entry consumes.
    pub fn max_schur_order(&self) -> usize {
        self.parts.iter().take(2).map(|&p| p as usize).sum()
    }

    /// The partition with part `j` (0-based) removed.
    pub fn without(&self, j: usize) -> PartitionExt {
        let mut parts = self.parts.clone();
        parts.remove(j);
        PartitionExt { parts }
    }

    /// All strict partitions of weight at most `max_weight`, including the empty one.
    pub fn strict_up_to(max_weight: u32) -> Vec<PartitionExt> {
        fn rec(remaining: u32, below: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionExt>) {
            out.push(PartitionExt { parts: cur.clone() });
            for p in (1..below.min(remaining + 1)).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_weight, max_weight + 1, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.parts.cmp(&a.parts)));
        out
    }

    /// All extended strict partitions of weight at most `max_weight`: every
    /// strict partition, and each nonempty one also with a trailing zero.
    pub fn extended_up_to(max_weight: u32) -> Vec<PartitionExt> {
        let mut out = Vec::new();
        for p in PartitionExt::strict_up_to(max_weight) {
            let mut with_zero = p.parts.clone();
            with_zero.push(0);
            out.push(p);
            out.push(PartitionExt { parts: with_zero });
        }
        out
    }
}

impl fmt::Display for PartitionExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One constant vector `c_j = (c_{1j}, c_{2j}, ...)` per part.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ShiftConstants(pub Vec<Vec<Scalar>>);

impl ShiftConstants {
    pub fn zeros(k: usize) -> Self {
        ShiftConstants(vec![Vec::new(); k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> &[Scalar] {
        &self.0[j]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    pub fn without(&self, j: usize) -> ShiftConstants {
        let mut v = self.0.clone();
        v.remove(j);
        ShiftConstants(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Bkp,
    /// Even sector `V_0` of the D module.
    Dkp0,
    /// Odd sector `V_1`; stands for `τ_1(t)θ`.
    Dkp1,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Bkp => "bkp",
            Family::Dkp0 => "dkp0",
            Family::Dkp1 => "dkp1",
        }
    }
}

/// Construction data behind a [`TauPoly`].
#[derive(Clone, Debug, PartialEq)]
pub struct TauOrigin {
    pub partition: PartitionExt,
    pub constants: ShiftConstants,
    /// Empty for BKP.
    pub b: Vec<Scalar>,
}

/// A tau-function in `t_1, t_3, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauPoly {
    pub poly: MPoly,
    pub family: Family,
    pub origin: Option<TauOrigin>,
}

impl TauPoly {
    /// Wraps a polynomial with no construction data (e.g. one read from a file).
    pub fn from_poly(poly: MPoly, family: Family) -> Self {
        TauPoly { poly, family, origin: None }
    }

    pub fn scaled(&self, a: &Scalar) -> TauPoly {
        TauPoly { poly: self.poly.scale(a), family: self.family, origin: self.origin.clone() }
    }
}

/// `Σ_{ℓ=1}^{λj} (-1)^ℓ s_{λi+ℓ}(ci) s_{λj-ℓ}(cj)`.
pub(crate) fn alternating_tail(li: usize, lj: usize, si: &[MPoly], sj: &[MPoly]) -> MPoly {
    let mut acc = MPoly::zero();
    for l in 1..=lj {
        let term = &si[li + l] * &sj[lj - l];
        if l % 2 == 0 {
            acc.add_assign_ref(&term);
        } else {
            acc.sub_assign_ref(&term);
        }
    }
    acc
}

// si, sj are Schur sequences long enough for index li + lj
fn chi_from_sequences(li: i64, lj: i64, si: &[MPoly], sj: &[MPoly]) -> MPoly {
    if li.min(lj) < 0 || li == lj {
        return MPoly::zero();
    }
    if li < lj {
        return -chi_from_sequences(lj, li, sj, si);
    }
    let (li, lj) = (li as usize, lj as usize);
    let mut out = (&si[li] * &sj[lj]).scale(&Scalar::ratio(1, 2));
    out.add_assign_ref(&alternating_tail(li, lj, si, sj));
    out
}

/// `χ_{λi,λj}(ci, cj) = ½ s_{λi}(ci) s_{λj}(cj) + Σ_{ℓ=1}^{λj} (-1)^ℓ s_{λi+ℓ}(ci) s_{λj-ℓ}(cj)`
/// for `λi > λj ≥ 0`, extended antisymmetrically; zero if either index is
/// negative or they coincide.
pub fn chi(li: i64, lj: i64, ci: &SchurArg, cj: &SchurArg) -> MPoly {
    let n = (li.max(0) + lj.max(0)) as usize;
    chi_from_sequences(li, lj, &schur_sequence(ci, n), &schur_sequence(cj, n))
}

/// Pads an odd-length partition with a zero part and zero constants.
fn padded(lambda: &PartitionExt, c: &ShiftConstants) -> (Vec<u32>, Vec<Vec<Scalar>>) {
    let mut parts = lambda.parts.clone();
    let mut consts = c.0.clone();
    if parts.len() % 2 == 1 {
        parts.push(0);
        consts.push(Vec::new());
    }
    (parts, consts)
}

pub(crate) fn shifted_sequences(parts: &[u32], consts: &[Vec<Scalar>], order: usize) -> Vec<Vec<MPoly>> {
    parts.iter().zip(consts).map(|(_, c)| schur_sequence(&SchurArg::shifted_time(c), order)).collect()
}

/// `Pf(χ_{λi,λj}(t̃+c_i, t̃+c_j))` for a strict partition, padded with a zero
/// part when the length is odd.
pub fn tau_bkp(lambda: &PartitionExt, c: &ShiftConstants) -> Result<TauPoly, TauError> {
    if !lambda.is_strict() {
        return Err(TauError::NotStrict(lambda.parts.clone()));
    }
    if c.len() != lambda.len() {
        return Err(TauError::ConstantCount { expected: lambda.len(), got: c.len() });
    }
    let (parts, consts) = padded(lambda, c);
    let order = lambda.max_schur_order();
    let seqs = shifted_sequences(&parts, &consts, order);
    let matrix = SkewMatrix::from_fn(parts.len(), |i, j| {
        chi_from_sequences(parts[i] as i64, parts[j] as i64, &seqs[i], &seqs[j])
    });
    let poly = pf_expand(&matrix).expect("padded to even size");
    Ok(TauPoly {
        poly,
        family: Family::Bkp,
        origin: Some(TauOrigin { partition: lambda.clone(), constants: c.clone(), b: Vec::new() }),
    })
}

/// The Q-Schur function: [`tau_bkp`] with all constants zero.
pub fn q_schur(lambda: &PartitionExt) -> Result<TauPoly, TauError> {
    tau_bkp(lambda, &ShiftConstants::zeros(lambda.len()))
}

/// Converts generators `φ_{-λ} + Σ a_{-n} φ_{-n}` into the partition of pivots
/// and constants `c_j` with `exp(Σ c_{ij} z^i) = 1 + Σ a_{-n} z^{λ-n}`, truncated
/// at order `λ_1 + λ_2`.
pub fn generators_to_constants(gens: &[GeneratorB]) -> Result<(PartitionExt, ShiftConstants), TauError> {
    let pivots: Vec<u32> = gens.iter().map(|g| g.pivot()).collect();
    let partition = PartitionExt::strict(pivots)?;
    let order = partition.max_schur_order();
    let consts = gens
        .iter()
        .map(|g| {
            let lambda = g.pivot() as i64;
            let mut a = vec![Scalar::zero(); order];
            for (mode, coeff) in g.coeffs() {
                let m = (lambda + mode) as usize;
                if m <= order {
                    a[m - 1] = coeff.clone();
                }
            }
            coeffs_to_c(&a, order)
        })
        .collect();
    Ok((partition, ShiftConstants(consts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::VarId;
    use std::collections::BTreeMap;

    fn t(j: u32) -> MPoly {
        MPoly::var(VarId::time(j))
    }

    #[test]
    fn chi_small_cases() {
        let tt = SchurArg::tilde_t();
        assert_eq!(chi(1, 0, &tt, &tt), t(1).scale(&Scalar::ratio(1, 2)));
        let expected = t(1).pow(3).scale(&Scalar::ratio(1, 12)) - t(3);
        assert_eq!(chi(2, 1, &tt, &tt), expected);
        assert!(chi(2, 2, &tt, &tt).is_zero());
        assert!(chi(2, -1, &tt, &tt).is_zero());
    }

    #[test]
    fn chi_antisymmetry() {
        let a = SchurArg::shifted_time(&[Scalar::from_int(2), Scalar::ratio(-1, 3)]);
        let b = SchurArg::shifted_time(&[Scalar::ratio(1, 2)]);
        assert_eq!(chi(0, 1, &a, &b), -chi(1, 0, &b, &a));
        assert_eq!(chi(1, 3, &a, &b), -chi(3, 1, &b, &a));
    }

    #[test]
    fn q_schur_examples() {
        let q1 = q_schur(&PartitionExt::strict(vec![1]).unwrap()).unwrap();
        assert_eq!(q1.poly, t(1).scale(&Scalar::ratio(1, 2)));
        let q21 = q_schur(&PartitionExt::strict(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(q21.poly, t(1).pow(3).scale(&Scalar::ratio(1, 12)) - t(3));
        let q321 = q_schur(&PartitionExt::strict(vec![3, 2, 1]).unwrap()).unwrap();
        assert!(q321.poly.is_weighted_homogeneous(6));
    }

    #[test]
    fn empty_partition_gives_one() {
        let tau = tau_bkp(&PartitionExt::default(), &ShiftConstants::zeros(0)).unwrap();
        assert_eq!(tau.poly, MPoly::one());
    }

    #[test]
    fn rejects_non_strict_input() {
        assert_eq!(PartitionExt::strict(vec![1, 2]), Err(TauError::NotStrict(vec![1, 2])));
        assert!(PartitionExt::strict(vec![2, 0]).is_err());
        assert!(PartitionExt::new(vec![2, 0]).is_ok());
        assert!(PartitionExt::new(vec![0, 0]).is_err());
        let lam = PartitionExt::new(vec![2, 0]).unwrap();
        assert!(matches!(tau_bkp(&lam, &ShiftConstants::zeros(2)), Err(TauError::NotStrict(_))));
    }

    #[test]
    fn strict_partition_counts() {
        // q(0..=8) = 1, 1, 1, 2, 2, 3, 4, 5, 6
        assert_eq!(PartitionExt::strict_up_to(8).len(), 25);
        assert_eq!(PartitionExt::strict_up_to(3).len(), 5);
    }

    #[test]
    fn generator_with_phi0_coefficient() {
        let a = Scalar::ratio(-5, 3);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, a.clone());
        let g = GeneratorB::new(1, coeffs).unwrap();
        let (lam, c) = generators_to_constants(&[g]).unwrap();
        let tau = tau_bkp(&lam, &c).unwrap();
        let expected = (t(1) + MPoly::constant(a)).scale(&Scalar::ratio(1, 2));
        assert_eq!(tau.poly, expected);
    }
}
