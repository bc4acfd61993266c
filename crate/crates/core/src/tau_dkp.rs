//! Polynomial DKP tau-functions in `V_0` and `V_1`, and MDKP pairs.

use crate::fock::{integer_field_decomposition, Generator, GeneratorD};
use crate::pfaffian::{pf_expand, SkewMatrix};
use crate::polycore::{coeffs_to_c, schur_sequence, MPoly, Scalar, SchurArg};
use crate::tau_bkp::{
    alternating_tail, shifted_sequences, Family, PartitionExt, ShiftConstants, TauError, TauOrigin, TauPoly,
};

/// Partition, shift constants `c_j` and scalars `b_j`, one per part.
#[derive(Clone, Debug, PartialEq)]
pub struct DkpParams {
    pub partition: PartitionExt,
    pub c: ShiftConstants,
    pub b: Vec<Scalar>,
}

impl DkpParams {
    pub fn new(partition: PartitionExt, c: ShiftConstants, b: Vec<Scalar>) -> Result<Self, TauError> {
        if c.len() != partition.len() {
            return Err(TauError::ConstantCount { expected: partition.len(), got: c.len() });
        }
        if b.len() != partition.len() {
            return Err(TauError::BCount { expected: partition.len(), got: b.len() });
        }
        Ok(DkpParams { partition, c, b })
    }

    /// Zero constants and zero `b`.
    pub fn plain(partition: PartitionExt) -> Self {
        let k = partition.len();
        DkpParams { partition, c: ShiftConstants::zeros(k), b: vec![Scalar::zero(); k] }
    }

    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }

    /// The parameters with part `j` (0-based) removed.
    pub fn without(&self, j: usize) -> DkpParams {
        let mut b = self.b.clone();
        b.remove(j);
        DkpParams { partition: self.partition.without(j), c: self.c.without(j), b }
    }

    fn origin(&self) -> TauOrigin {
        TauOrigin { partition: self.partition.clone(), constants: self.c.clone(), b: self.b.clone() }
    }
}

fn rho_pair_from_sequences(li: i64, lj: i64, si: &[MPoly], sj: &[MPoly], bi: &Scalar, bj: &Scalar) -> MPoly {
    if li.min(lj) < 0 || li == lj {
        return MPoly::zero();
    }
    if li < lj {
        return -rho_pair_from_sequences(lj, li, sj, si, bj, bi);
    }
    let (li, lj) = (li as usize, lj as usize);
    let r = Scalar::inv_sqrt2();
    let left = si[li].scale(&r) - MPoly::constant(bi.clone());
    let right = sj[lj].scale(&r) + MPoly::constant(bj.clone());
    let mut out = &left * &right;
    out.add_assign_ref(&alternating_tail(li, lj, si, sj));
    out
}

/// `ρ_{λi,λj}(ci,cj;bi,bj) = (s_{λi}(ci)/√2 - bi)(s_{λj}(cj)/√2 + bj) + Σ_{ℓ=1}^{λj} (-1)^ℓ s_{λi+ℓ}(ci) s_{λj-ℓ}(cj)`
/// for `λi > λj ≥ 0`, extended antisymmetrically.
pub fn rho_pair(li: i64, lj: i64, ci: &SchurArg, cj: &SchurArg, bi: &Scalar, bj: &Scalar) -> MPoly {
    let n = (li.max(0) + lj.max(0)) as usize;
    rho_pair_from_sequences(li, lj, &schur_sequence(ci, n), &schur_sequence(cj, n), bi, bj)
}

/// `ρ_{λj}(cj;bj) = s_{λj}(cj)/√2 + bj`.
pub fn rho_single(lj: u32, cj: &SchurArg, bj: &Scalar) -> MPoly {
    let s = schur_sequence(cj, lj as usize);
    s[lj as usize].scale(&Scalar::inv_sqrt2()) + MPoly::constant(bj.clone())
}

fn sequences(params: &DkpParams) -> Vec<Vec<MPoly>> {
    shifted_sequences(params.partition.parts(), &params.c.0, params.partition.max_schur_order())
}

/// `Pf(ρ_{λi,λj}(t̃+c_i, t̃+c_j; b_i, b_j))` for an even number of parts.
pub fn tau_dkp_even(params: &DkpParams) -> Result<TauPoly, TauError> {
    let k = params.len();
    if k % 2 == 1 {
        return Err(TauError::OddCount(k));
    }
    let parts = params.partition.parts();
    let seqs = sequences(params);
    let matrix = SkewMatrix::from_fn(k, |i, j| {
        rho_pair_from_sequences(parts[i] as i64, parts[j] as i64, &seqs[i], &seqs[j], &params.b[i], &params.b[j])
    });
    Ok(TauPoly { poly: pf_expand(&matrix).expect("even size"), family: Family::Dkp0, origin: Some(params.origin()) })
}

/// Pfaffian of the bordered matrix: index 0 carries `ρ_{λk}(t̃+c_k; b_k)` in
/// row 0, indices `1..=k` the pair kernel.
pub fn tau_dkp_odd(params: &DkpParams) -> Result<TauPoly, TauError> {
    let k = params.len();
    if k.is_multiple_of(2) {
        return Err(TauError::EvenCount(k));
    }
    let parts = params.partition.parts();
    let seqs = sequences(params);
    let r = Scalar::inv_sqrt2();
    let matrix = SkewMatrix::from_fn(k + 1, |i, j| {
        if i == 0 {
            let m = j - 1;
            seqs[m][parts[m] as usize].scale(&r) + MPoly::constant(params.b[m].clone())
        } else {
            let (i, j) = (i - 1, j - 1);
            rho_pair_from_sequences(parts[i] as i64, parts[j] as i64, &seqs[i], &seqs[j], &params.b[i], &params.b[j])
        }
    });
    Ok(TauPoly { poly: pf_expand(&matrix).expect("even size"), family: Family::Dkp1, origin: Some(params.origin()) })
}

/// Which list the dropped part is removed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdkpVariant {
    /// Odd part count: `τ_1` uses all parts, `τ_0` drops one.
    OddDrop,
    /// Even part count: `τ_0` uses all parts, `τ_1` drops one.
    EvenDrop,
}

/// The pair `(a0·τ_0, a1·τ_1)` with part `drop_index` (1-based) removed from
/// one side.
pub fn mdkp_pair(
    params: &DkpParams,
    drop_index: usize,
    a0: &Scalar,
    a1: &Scalar,
    variant: MdkpVariant,
) -> Result<(TauPoly, TauPoly), TauError> {
    let k = params.len();
    if drop_index == 0 || drop_index > k {
        return Err(TauError::IndexOutOfRange { index: drop_index, len: k });
    }
    let dropped = params.without(drop_index - 1);
    let (tau0, tau1) = match variant {
        MdkpVariant::OddDrop => (tau_dkp_even(&dropped)?, tau_dkp_odd(params)?),
        MdkpVariant::EvenDrop => (tau_dkp_even(params)?, tau_dkp_odd(&dropped)?),
    };
    Ok((tau0.scaled(a0), tau1.scaled(a1)))
}

/// Converts D generators into `(c, b)` data.
///
/// Each generator is rewritten in the integer-labelled fields as
/// `β_0·(φ^B_{-λ} + Σ β'_k φ^B_k) + √2·b·(φ_{-½} - φ_{½})/√2`; then `c_j` is the
/// truncated log of `1 + Σ β'_k z^{λ+k}`. For `λ ≥ 1` the leading coefficient
/// is 1. For `λ = 0` it is `β_0 = (1 + a_{½})/√2`, which is divided out and
/// returned in the overall scale, so that the constructed tau times `scale`
/// equals the expectation value of the generators themselves.
pub fn generator_d_to_params(gens: &[GeneratorD]) -> Result<(DkpParams, Scalar), TauError> {
    let pivots: Vec<u32> = gens.iter().map(|g| g.pivot()).collect();
    let partition = PartitionExt::new(pivots)?;
    let order = partition.max_schur_order();
    let mut scale = Scalar::one();
    let mut consts = Vec::with_capacity(gens.len());
    let mut bs = Vec::with_capacity(gens.len());
    for (idx, g) in gens.iter().enumerate() {
        let lambda = g.pivot() as i64;
        let (beta, psi) = integer_field_decomposition(&g.to_clifford());
        let lead = beta.get(&-lambda).cloned().unwrap_or_default();
        let inv = lead.inverse().ok_or(TauError::DegeneratePivot(idx + 1))?;
        scale = &scale * &lead;
        let mut a = vec![Scalar::zero(); order];
        for (k, coeff) in beta.range(-lambda + 1..) {
            let m = (lambda + k) as usize;
            if m <= order {
                a[m - 1] = coeff * &inv;
            }
        }
        consts.push(coeffs_to_c(&a, order));
        bs.push(&(&psi * &Scalar::inv_sqrt2()) * &inv);
    }
    Ok((DkpParams { partition, c: ShiftConstants(consts), b: bs }, scale))
}
