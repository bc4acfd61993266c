//! Bosonic bilinear identities checked as exact polynomial identities in two
//! sets of times `t` and `t'`.
//!
//! The derivative exponentials are applied as Miwa substitutions
//! `t_j → t_j ∓ 2z^{-j}/j`, and the residue `Res_{z=0} dz/z` picks the
//! `z^0` coefficient.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::polycore::{schur_sequence, MPoly, Monomial, Scalar, SchurArg, VarId, VarKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HirotaError {
    #[error("tau-function is zero")]
    ZeroTau,
    #[error("tau-function already contains primed variables")]
    PrimedInput,
}

/// A finite Laurent polynomial in `z` with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentZ {
    coeffs: BTreeMap<i64, MPoly>,
}

impl LaurentZ {
    pub fn zero() -> Self {
        LaurentZ::default()
    }

    pub fn constant(p: MPoly) -> Self {
        let mut out = LaurentZ::zero();
        out.add_term(0, p);
        out
    }

    pub fn add_term(&mut self, power: i64, p: MPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_default();
        slot.add_assign_ref(&p);
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    /// Coefficient of `z^power`.
    pub fn coeff(&self, power: i64) -> MPoly {
        self.coeffs.get(&power).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &MPoly)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_power(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &LaurentZ) -> LaurentZ {
        let mut out = LaurentZ::zero();
        for (a, p) in &self.coeffs {
            for (b, q) in &other.coeffs {
                let slot = out.coeffs.entry(a + b).or_default();
                slot.add_product(p, q);
            }
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }

    /// `Res_{z=0} dz/z`, i.e. the `z^0` coefficient.
    pub fn residue(&self) -> MPoly {
        self.coeff(0)
    }
}

fn time_var(j: u32, primed: bool) -> VarId {
    if primed {
        VarId::primed(j)
    } else {
        VarId::time(j)
    }
}

/// `τ` with `t_j → t_j - sign·2z^{-j}/j`, written in the primed variables when
/// `primed` is set.
pub fn miwa_shift(tau: &MPoly, sign: i32, primed: bool) -> LaurentZ {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    // (var, exponent) -> expansion of (t_j + δ_j z^{-j})^e
    let mut cache: BTreeMap<(u32, u16), LaurentZ> = BTreeMap::new();
    let mut out = LaurentZ::zero();
    for (mono, c) in tau.terms() {
        let mut acc = LaurentZ::constant(MPoly::constant(c.clone()));
        for (v, e) in mono.exponents() {
            let j = v.index();
            let factor = cache.entry((j, e)).or_insert_with(|| {
                let delta = Scalar::ratio(-2 * sign as i64, j as i64);
                let var = time_var(j, primed);
                let mut f = LaurentZ::zero();
                let mut binom = Scalar::one();
                for k in 0..=e {
                    let c = &binom * &delta.pow(k as u32);
                    f.add_term(-(j as i64) * k as i64, MPoly::term(Monomial::var(var, e - k), c));
                    binom = &binom * &Scalar::ratio((e - k) as i64, (k + 1) as i64);
                }
                f
            });
            acc = acc.mul(factor);
        }
        for (k, p) in acc.coeffs {
            out.add_term(k, p);
        }
    }
    out
}

fn diff_slots(n: usize) -> SchurArg {
    let slots = (1..=n as u32)
        .map(|i| if i % 2 == 1 { MPoly::var(VarId::time(i)) - MPoly::var(VarId::primed(i)) } else { MPoly::zero() })
        .collect();
    SchurArg::from_slots(slots)
}

/// `Σ_{m=0}^{N} s_m(t̃ - t̃') z^m`, the expansion of `exp Σ_j (t_j - t'_j) z^j`.
pub fn xi_kernel(n: usize) -> LaurentZ {
    let mut out = LaurentZ::zero();
    for (m, s) in schur_sequence(&diff_slots(n), n).into_iter().enumerate() {
        out.add_term(m as i64, s);
    }
    out
}

fn check_input(tau: &MPoly) -> Result<(), HirotaError> {
    if tau.is_zero() {
        return Err(HirotaError::ZeroTau);
    }
    if tau.has_primed() {
        return Err(HirotaError::PrimedInput);
    }
    Ok(())
}

/// `Res_{z=0} dz/z e^{ξ(t,z)} τ_a(t - 2[z^{-1}]) e^{-ξ(t',z)} τ_b(t' + 2[z^{-1}])`.
///
/// Computed by first folding each exponential into its own shifted factor:
/// with `A = τ_a(t - 2[z^{-1}])`, `F_k = Σ_a s_{k+a}(t̃) A_{-a}` is the `z^k`
/// coefficient of `e^{ξ(t,z)} A`, similarly `G_k` with `s(-t̃')`, and the
/// residue is `Σ_k F_k G_{-k}`.
pub fn bilinear_residue(tau_a: &MPoly, tau_b: &MPoly) -> MPoly {
    let a = miwa_shift(tau_a, 1, false);
    let b = miwa_shift(tau_b, -1, true);
    let deg_a = -a.min_power().unwrap_or(0);
    let deg_b = -b.min_power().unwrap_or(0);
    let n = (deg_a + deg_b) as usize;
    let s = schur_sequence(&SchurArg::tilde_t(), n);
    let s_neg = schur_sequence(&SchurArg::scaled_time(VarKind::TimePrimed, Scalar::from_int(-1)), n);
    let fold = |series: &LaurentZ, s: &[MPoly], k: i64| {
        let mut acc = MPoly::zero();
        for (p, coeff) in series.terms() {
            let idx = k - p;
            if idx >= 0 && (idx as usize) < s.len() {
                acc.add_product(&s[idx as usize], coeff);
            }
        }
        acc
    };
    let mut out = MPoly::zero();
    for k in -deg_a..=deg_b {
        let f = fold(&a, &s, k);
        if f.is_zero() {
            continue;
        }
        let g = fold(&b, &s_neg, -k);
        out.add_product(&f, &g);
    }
    out
}

/// The same residue through the combined kernel `Σ s_m(t̃ - t̃') z^m` and the
/// full product of both shifted factors.
pub fn bilinear_residue_reference(tau_a: &MPoly, tau_b: &MPoly) -> MPoly {
    let product = miwa_shift(tau_a, 1, false).mul(&miwa_shift(tau_b, -1, true));
    let n = (-product.min_power().unwrap_or(0)).max(0) as usize;
    product.mul(&xi_kernel(n)).residue()
}

/// Residue side minus `τ(t)τ(t')`; zero iff `τ` satisfies the bosonic BKP identity.
pub fn bkp_residual(tau: &MPoly) -> Result<MPoly, HirotaError> {
    check_input(tau)?;
    let mut out = bilinear_residue(tau, tau);
    out.sub_assign_ref(&(tau * &tau.to_primed()));
    Ok(out)
}

/// Residue with `τ_0` in `t` and `τ_1` in `t'`, minus
/// `2τ_1(t)τ_0(t') - τ_0(t)τ_1(t')`; zero iff the pair satisfies the bosonic
/// MDKP identity.
///
/// The fermionic operator `S_D` equals `S_B` minus `ψ⊗ψ` with
/// `ψ = (φ_{-½} - φ_{½})/√2`, and `S_B` transports to half the residue, which
/// produces the second term on the right.
pub fn mdkp_residual(tau0: &MPoly, tau1: &MPoly) -> Result<MPoly, HirotaError> {
    check_input(tau0)?;
    check_input(tau1)?;
    let mut out = bilinear_residue(tau0, tau1);
    let rhs = (tau1 * &tau0.to_primed()).scale(&Scalar::from_int(2)) - tau0 * &tau1.to_primed();
    out.sub_assign_ref(&rhs);
    Ok(out)
}

/// Residue minus `τ_1(t)τ_0(t')` alone. Kept for comparison: it vanishes on
/// some genuine pairs but not all, e.g. not on `(1, t_1/√2)`.
pub fn mdkp_residual_literal(tau0: &MPoly, tau1: &MPoly) -> Result<MPoly, HirotaError> {
    check_input(tau0)?;
    check_input(tau1)?;
    let mut out = bilinear_residue(tau0, tau1);
    out.sub_assign_ref(&(tau1 * &tau0.to_primed()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(j: u32) -> MPoly {
        MPoly::var(VarId::time(j))
    }

    fn zinv(k: i64) -> i64 {
        -k
    }

    #[test]
    fn miwa_examples() {
        let s = miwa_shift(&t(1), 1, false);
        assert_eq!(s.coeff(0), t(1));
        assert_eq!(s.coeff(zinv(1)), MPoly::constant(Scalar::from_int(-2)));
        let s = miwa_shift(&t(3), 1, false);
        assert_eq!(s.coeff(zinv(3)), MPoly::constant(Scalar::ratio(-2, 3)));
        let s = miwa_shift(&t(1).pow(2), 1, false);
        assert_eq!(s.coeff(0), t(1).pow(2));
        assert_eq!(s.coeff(zinv(1)), t(1).scale(&Scalar::from_int(-4)));
        assert_eq!(s.coeff(zinv(2)), MPoly::constant(Scalar::from_int(4)));
        let s = miwa_shift(&t(1), -1, true);
        assert_eq!(s.coeff(0), MPoly::var(VarId::primed(1)));
        assert_eq!(s.coeff(zinv(1)), MPoly::constant(Scalar::from_int(2)));
    }

    #[test]
    fn kernel_low_orders() {
        let k = xi_kernel(2);
        let d = t(1) - MPoly::var(VarId::primed(1));
        assert_eq!(k.coeff(0), MPoly::one());
        assert_eq!(k.coeff(1), d);
        assert_eq!(k.coeff(2), d.pow(2).scale(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn bkp_examples() {
        assert!(bkp_residual(&MPoly::one()).unwrap().is_zero());
        assert!(bkp_residual(&t(1).scale(&Scalar::ratio(1, 2))).unwrap().is_zero());
        let bad = MPoly::one() + t(1).pow(3);
        assert!(!bkp_residual(&bad).unwrap().is_zero());
        assert_eq!(bkp_residual(&MPoly::zero()), Err(HirotaError::ZeroTau));
        assert_eq!(bkp_residual(&MPoly::var(VarId::primed(1))), Err(HirotaError::PrimedInput));
    }

    #[test]
    fn fast_and_reference_residues_agree() {
        let a = t(1).pow(3).scale(&Scalar::ratio(1, 12)) - t(3) + MPoly::constant(Scalar::from_int(2));
        let b = t(1).scale(&Scalar::sqrt2()) + t(1).pow(2);
        assert_eq!(bilinear_residue(&a, &b), bilinear_residue_reference(&a, &b));
        assert_eq!(bilinear_residue(&b, &a), bilinear_residue_reference(&b, &a));
    }

    #[test]
    fn mdkp_examples() {
        let r = Scalar::inv_sqrt2();
        assert!(mdkp_residual(&MPoly::one(), &MPoly::constant(r.clone())).unwrap().is_zero());
        let tau1 = t(1).scale(&r);
        assert!(mdkp_residual(&MPoly::one(), &tau1).unwrap().is_zero());
        assert!(!mdkp_residual_literal(&MPoly::one(), &tau1).unwrap().is_zero());
        let half = t(1).scale(&Scalar::ratio(1, 2));
        assert!(mdkp_residual(&half, &tau1).unwrap().is_zero());
        assert!(!mdkp_residual(&t(1), &t(3)).unwrap().is_zero());
    }
}
