//! Neutral fermions acting on the spin modules `V_B` and `V_D`.
//!
//! Mode indices are stored doubled (`twice = 2j`), so type-B modes are even
//! and type-D modes are odd. Basis vectors of the Fock space are words
//! `φ_{j1} φ_{j2} ··· φ_{jp} |0⟩` with `j1 < j2 < ··· < jp < 0`, kept as
//! ascending vectors of doubled indices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg;
use crate::pfaffian::{pf_expand, SkewMatrix};
use crate::polycore::{schur_sequence, MPoly, Ring, Scalar, SchurArg};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("operands belong to different Clifford algebras")]
    AlgebraMismatch,
    #[error("Wick expansion needs an even number of operators, got {0}")]
    OddLength(usize),
    #[error("vector mixes even and odd words")]
    MixedParity,
    #[error("expected {expected} parity for {which}")]
    ParityError { which: &'static str, expected: &'static str },
    #[error("window {window} does not exceed the largest mode magnitude {needed}")]
    WindowTooSmall { window: String, needed: String },
    #[error("reflection vector is isotropic")]
    IsotropicAlpha,
    #[error("the bra <0|φ_1/2 exists only in V_D")]
    PhiHalfNeedsD,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    B,
    D,
}

/// A fermion mode `φ_j`: `j ∈ Z` for B, `j ∈ ½ + Z` for D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    algebra: Algebra,
    twice: i64,
}

impl ModeIndex {
    /// Integer mode `φ_j` of type B.
    pub fn b(j: i64) -> Self {
        ModeIndex { algebra: Algebra::B, twice: 2 * j }
    }

    /// Half-integer mode `φ_{k/2}` of type D; `k` must be odd.
    pub fn d_half(k: i64) -> Option<Self> {
        (k.rem_euclid(2) == 1).then_some(ModeIndex { algebra: Algebra::D, twice: k })
    }

    pub fn from_twice(algebra: Algebra, twice: i64) -> Option<Self> {
        let ok = match algebra {
            Algebra::B => twice % 2 == 0,
            Algebra::D => twice.rem_euclid(2) == 1,
        };
        ok.then_some(ModeIndex { algebra, twice })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn twice(&self) -> i64 {
        self.twice
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `(φ_a, φ_b)` for doubled indices: `(-1)^a δ_{a,-b}` for B, `δ_{a,-b}` for D.
pub fn pairing(algebra: Algebra, a: i64, b: i64) -> i64 {
    if a + b != 0 {
        return 0;
    }
    match algebra {
        Algebra::B if (a / 2) % 2 != 0 => -1,
        _ => 1,
    }
}

/// `⟨0|φ_a φ_b|0⟩` for doubled indices.
pub fn two_point_modes(algebra: Algebra, a: i64, b: i64) -> Scalar {
    if a > 0 && b == -a {
        Scalar::from_int(pairing(algebra, a, b))
    } else if algebra == Algebra::B && a == 0 && b == 0 {
        Scalar::ratio(1, 2)
    } else {
        Scalar::zero()
    }
}

/// An element `Σ v_j φ_j` of the generating space, with coefficients in `R`.
#[derive(Clone, PartialEq)]
pub struct CliffordVector<R> {
    algebra: Algebra,
    coeffs: BTreeMap<i64, R>,
}

impl<R: Ring> CliffordVector<R> {
    pub fn zero(algebra: Algebra) -> Self {
        CliffordVector { algebra, coeffs: BTreeMap::new() }
    }

    /// The single mode `φ_j`.
    pub fn mode(m: ModeIndex) -> Self {
        let mut v = CliffordVector::zero(m.algebra);
        v.add_mode(m.twice, R::one());
        v
    }

    pub fn from_terms(algebra: Algebra, terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut v = CliffordVector::zero(algebra);
        for (twice, c) in terms {
            v.add_mode(twice, c);
        }
        v
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    /// Adds `c·φ_{twice/2}`. Panics if the index does not belong to the algebra.
    pub fn add_mode(&mut self, twice: i64, c: R) {
        assert!(
            ModeIndex::from_twice(self.algebra, twice).is_some(),
            "mode {twice}/2 is not a {:?} index",
            self.algebra
        );
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(twice).or_insert_with(R::zero);
        slot.add_assign(&c);
        if slot.is_zero() {
            self.coeffs.remove(&twice);
        }
    }

    pub fn coeff(&self, twice: i64) -> R {
        self.coeffs.get(&twice).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|2j|` over the support.
    pub fn max_twice_magnitude(&self) -> Option<i64> {
        self.coeffs.keys().map(|k| k.abs()).max()
    }

    /// The bilinear form `(self, other)`.
    pub fn form(&self, other: &Self) -> Result<R, FockError> {
        if self.algebra != other.algebra {
            return Err(FockError::AlgebraMismatch);
        }
        let mut acc = R::zero();
        for (a, x) in &self.coeffs {
            if let Some(y) = other.coeffs.get(&-a) {
                let p = pairing(self.algebra, *a, -a);
                acc.add_assign(&x.mul(y).scale(&Scalar::from_int(p)));
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, s: &R) -> Self {
        CliffordVector::from_terms(self.algebra, self.coeffs.iter().map(|(k, v)| (*k, v.mul(s))))
    }

    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        if self.algebra != other.algebra {
            return Err(FockError::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_mode(*k, v.clone());
        }
        Ok(out)
    }

    /// Lifts scalar coefficients into `R`.
    pub fn lift<S: Ring>(&self) -> CliffordVector<S>
    where
        R: Into<S>,
    {
        CliffordVector::from_terms(self.algebra, self.coeffs.iter().map(|(k, v)| (*k, v.clone().into())))
    }
}

impl CliffordVector<Scalar> {
    pub fn to_poly(&self) -> CliffordVector<MPoly> {
        CliffordVector::from_terms(self.algebra, self.coeffs.iter().map(|(k, v)| (*k, MPoly::constant(v.clone()))))
    }
}

impl<R: fmt::Debug> fmt::Debug for CliffordVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(k, v)| format!("({v:?})φ[{k}/2]")).collect();
        write!(f, "{:?}[{}]", self.algebra, parts.join(" + "))
    }
}

/// Basis word: ascending doubled indices, all negative.
pub type Word = Vec<i64>;

/// A finite vector in `V_B` or `V_D`.
#[derive(Clone, PartialEq)]
pub struct FockVector<R> {
    algebra: Algebra,
    terms: BTreeMap<Word, R>,
}

impl<R: Ring> FockVector<R> {
    pub fn zero(algebra: Algebra) -> Self {
        FockVector { algebra, terms: BTreeMap::new() }
    }

    pub fn vacuum(algebra: Algebra) -> Self {
        let mut v = FockVector::zero(algebra);
        v.add_term(Vec::new(), R::one());
        v
    }

    /// `φ_{j1}···φ_{jp}|0⟩` for the given modes in any order, with the sign
    /// of sorting them into ascending order; zero on a repeated mode.
    pub fn basis(algebra: Algebra, modes: &[i64]) -> Self {
        let mut v = FockVector::vacuum(algebra);
        for &m in modes.iter().rev() {
            let mut op = CliffordVector::zero(algebra);
            op.add_mode(m, R::one());
            v = v.apply(&op).expect("same algebra");
        }
        v
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn add_term(&mut self, word: Word, c: R) {
        debug_assert!(word.windows(2).all(|w| w[0] < w[1]) && word.iter().all(|&j| j < 0));
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_insert_with(R::zero);
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[i64]) -> R {
        self.terms.get(word).cloned().unwrap_or_else(R::zero)
    }

    pub fn vacuum_coeff(&self) -> R {
        self.coeff(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(p)` if every word has length `≡ p (mod 2)`; the zero vector is even.
    pub fn parity(&self) -> Option<usize> {
        let mut parities = self.terms.keys().map(|w| w.len() % 2);
        let first = parities.next().unwrap_or(0);
        parities.all(|p| p == first).then_some(first)
    }

    /// Largest `|2j|` over all modes occurring in any word.
    pub fn max_twice_magnitude(&self) -> Option<i64> {
        self.terms.keys().flat_map(|w| w.iter().map(|j| j.abs())).max()
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = FockVector::zero(self.algebra);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(s));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        if self.algebra != other.algebra {
            return Err(FockError::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FockError> {
        self.add(&other.scale(&R::one().neg()))
    }

    /// `φ_m · self` for a single mode with coefficient `c`.
    fn apply_mode(&self, m: i64, c: &R, out: &mut FockVector<R>) {
        for (word, x) in &self.terms {
            let coeff = c.mul(x);
            if m < 0 {
                if let Err(pos) = word.binary_search(&m) {
                    let mut w = word.clone();
                    w.insert(pos, m);
                    out.add_term(w, if pos % 2 == 0 { coeff } else { coeff.neg() });
                }
            } else if m == 0 {
                let v = coeff.scale(&Scalar::inv_sqrt2());
                out.add_term(word.clone(), if word.len() % 2 == 0 { v } else { v.neg() });
            } else if let Ok(pos) = word.binary_search(&-m) {
                let mut w = word.clone();
                w.remove(pos);
                let p = pairing(self.algebra, m, -m) * if pos % 2 == 0 { 1 } else { -1 };
                out.add_term(w, coeff.scale(&Scalar::from_int(p)));
            }
        }
    }

    /// Clifford action `v · self`.
    pub fn apply(&self, v: &CliffordVector<R>) -> Result<Self, FockError> {
        if v.algebra != self.algebra {
            return Err(FockError::AlgebraMismatch);
        }
        let mut out = FockVector::zero(self.algebra);
        for (m, c) in v.terms() {
            self.apply_mode(m, c, &mut out);
        }
        Ok(out)
    }
}

impl<R: fmt::Debug> fmt::Debug for FockVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c:?}){w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `v · x`.
pub fn clifford_apply<R: Ring>(v: &CliffordVector<R>, x: &FockVector<R>) -> Result<FockVector<R>, FockError> {
    x.apply(v)
}

/// The bra used to read off an expectation value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftState {
    /// `⟨0|`
    Vacuum,
    /// `⟨1| = ⟨0|φ_{1/2}` (type D only)
    PhiHalf,
}

/// `⟨left| ops[0] ops[1] ··· ops[n-1] |0⟩`, applying operators right to left.
pub fn vev<R: Ring>(ops: &[CliffordVector<R>], left: LeftState) -> Result<R, FockError> {
    let Some(first) = ops.first() else {
        return match left {
            LeftState::Vacuum => Ok(R::one()),
            LeftState::PhiHalf => Err(FockError::PhiHalfNeedsD),
        };
    };
    let algebra = first.algebra;
    if left == LeftState::PhiHalf && algebra != Algebra::D {
        return Err(FockError::PhiHalfNeedsD);
    }
    let mut state = FockVector::vacuum(algebra);
    for op in ops.iter().rev() {
        state = state.apply(op)?;
    }
    if left == LeftState::PhiHalf {
        state = state.apply(&CliffordVector::mode(ModeIndex { algebra, twice: 1 }))?;
    }
    Ok(state.vacuum_coeff())
}

/// `⟨0|v w|0⟩` from the two-point function of single modes.
pub fn two_point<R: Ring>(v: &CliffordVector<R>, w: &CliffordVector<R>) -> Result<R, FockError> {
    if v.algebra != w.algebra {
        return Err(FockError::AlgebraMismatch);
    }
    let mut acc = R::zero();
    for (a, x) in v.terms() {
        if a < 0 {
            continue;
        }
        if let Some(y) = w.coeffs.get(&-a) {
            let c = two_point_modes(v.algebra, a, -a);
            acc.add_assign(&x.mul(y).scale(&c));
        }
    }
    Ok(acc)
}

/// `⟨0|v_1···v_{2ℓ}|0⟩` as the Pfaffian of the two-point values `⟨0|v_i v_j|0⟩`, `i < j`.
pub fn wick_pfaffian_vev<R: Ring>(ops: &[CliffordVector<R>]) -> Result<R, FockError> {
    if ops.len() % 2 == 1 {
        return Err(FockError::OddLength(ops.len()));
    }
    if let Some(first) = ops.first() {
        if ops.iter().any(|o| o.algebra != first.algebra) {
            return Err(FockError::AlgebraMismatch);
        }
    }
    let mut entries = Vec::new();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            entries.push(two_point(&ops[i], &ops[j])?);
        }
    }
    let mut it = entries.into_iter();
    let m = SkewMatrix::from_fn(ops.len(), |_, _| it.next().expect("entry count"));
    Ok(pf_expand(&m).expect("even size"))
}

/// A finite element of `V ⊗ V`, keyed by pairs of basis words.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorResidual<R> {
    terms: BTreeMap<(Word, Word), R>,
    /// Largest `|2j|` summed over in the `S` operator.
    pub window_twice: i64,
}

impl<R: Ring> TensorResidual<R> {
    fn new(window_twice: i64) -> Self {
        TensorResidual { terms: BTreeMap::new(), window_twice }
    }

    fn add_tensor(&mut self, left: &FockVector<R>, right: &FockVector<R>, scale: &R) {
        for (wl, cl) in &left.terms {
            for (wr, cr) in &right.terms {
                let c = cl.mul(cr).mul(scale);
                if c.is_zero() {
                    continue;
                }
                let key = (wl.clone(), wr.clone());
                let slot = self.terms.entry(key.clone()).or_insert_with(R::zero);
                slot.add_assign(&c);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &R)> {
        self.terms.iter()
    }
}

// S(x ⊗ y) = Σ_j sign(j) φ_j x ⊗ φ_{-j} y over the window
fn apply_s<R: Ring>(x: &FockVector<R>, y: &FockVector<R>, out: &mut TensorResidual<R>) {
    let algebra = x.algebra;
    let w = out.window_twice;
    let step = 2;
    let start = match algebra {
        Algebra::B => -(w - w.rem_euclid(2)),
        Algebra::D => -(w - (w + 1).rem_euclid(2)),
    };
    let mut j = start;
    while j <= -start {
        let sign = match algebra {
            Algebra::B if (j / 2) % 2 != 0 => R::one().neg(),
            _ => R::one(),
        };
        let mut left = FockVector::zero(algebra);
        x.apply_mode(j, &R::one(), &mut left);
        if !left.is_zero() {
            let mut right = FockVector::zero(algebra);
            y.apply_mode(-j, &R::one(), &mut right);
            out.add_tensor(&left, &right, &sign);
        }
        j += step;
    }
}

fn window_for<R: Ring>(vs: &[&FockVector<R>]) -> i64 {
    // one step past the largest mode: beyond it every summand kills a factor
    vs.iter().filter_map(|v| v.max_twice_magnitude()).max().unwrap_or(0) + 2
}

/// `S_B(τ⊗τ) - ½ τ⊗τ` with `S_B = Σ_j (-1)^j φ_j ⊗ φ_{-j}`; empty iff τ solves
/// the fermionic BKP hierarchy.
pub fn fermionic_bkp_residual<R: Ring>(tau: &FockVector<R>) -> Result<TensorResidual<R>, FockError> {
    if tau.algebra != Algebra::B {
        return Err(FockError::AlgebraMismatch);
    }
    let mut out = TensorResidual::new(window_for(&[tau]));
    apply_s(tau, tau, &mut out);
    out.add_tensor(tau, tau, &R::from_scalar(Scalar::ratio(-1, 2)));
    Ok(out)
}

/// `S_D(τ⊗τ)` with `S_D = Σ_j φ_j ⊗ φ_{-j}`; empty iff τ lies in the orbit.
pub fn fermionic_dkp_residual<R: Ring>(tau: &FockVector<R>) -> Result<TensorResidual<R>, FockError> {
    if tau.algebra != Algebra::D {
        return Err(FockError::AlgebraMismatch);
    }
    if tau.parity().is_none() {
        return Err(FockError::MixedParity);
    }
    let mut out = TensorResidual::new(window_for(&[tau]));
    apply_s(tau, tau, &mut out);
    Ok(out)
}

/// `S_D(τ0⊗τ1) - τ1⊗τ0`; empty iff the pair solves the modified DKP hierarchy.
pub fn fermionic_mdkp_residual<R: Ring>(
    tau0: &FockVector<R>,
    tau1: &FockVector<R>,
) -> Result<TensorResidual<R>, FockError> {
    if tau0.algebra != Algebra::D || tau1.algebra != Algebra::D {
        return Err(FockError::AlgebraMismatch);
    }
    if tau0.parity() != Some(0) {
        return Err(FockError::ParityError { which: "tau0", expected: "even" });
    }
    if tau1.parity() != Some(1) || tau1.is_zero() {
        return Err(FockError::ParityError { which: "tau1", expected: "odd" });
    }
    let mut out = TensorResidual::new(window_for(&[tau0, tau1]));
    apply_s(tau0, tau1, &mut out);
    out.add_tensor(tau1, tau0, &R::one().neg());
    Ok(out)
}

/// `dim (Ann τ0 + Ann τ1)/(Ann τ0 ∩ Ann τ1)`, computed on the span of the
/// modes `φ_j` with `|j| ≤ window`.
///
/// The window must exceed every mode occurring in either vector; modes
/// outside it then either annihilate both vectors or neither.
pub fn annihilator_quotient_dim(
    tau0: &FockVector<Scalar>,
    tau1: &FockVector<Scalar>,
    window: ModeIndex,
) -> Result<usize, FockError> {
    let algebra = window.algebra;
    if tau0.algebra != algebra || tau1.algebra != algebra {
        return Err(FockError::AlgebraMismatch);
    }
    let needed = window_for(&[tau0, tau1]) - 2;
    if window.twice <= needed && (tau0.max_twice_magnitude().is_some() || tau1.max_twice_magnitude().is_some()) {
        return Err(FockError::WindowTooSmall {
            window: window.to_string(),
            needed: ModeIndex { algebra, twice: needed }.to_string(),
        });
    }
    let modes = window_modes(window);
    let k0 = annihilator_basis(tau0, &modes);
    let k1 = annihilator_basis(tau1, &modes);
    let mut stacked = k0.clone();
    stacked.extend(k1.iter().cloned());
    let sum_dim = linalg::rank(&stacked, modes.len());
    Ok(2 * sum_dim - k0.len() - k1.len())
}

/// `dim Ann τ` on the span of the modes `φ_j` with `|j| ≤ window`; equals
/// half the number of modes (rounded down) when τ is in the group orbit of
/// the vacuum and the window covers every mode of τ.
pub fn annihilator_dim(tau: &FockVector<Scalar>, window: ModeIndex) -> Result<usize, FockError> {
    let algebra = window.algebra;
    if tau.algebra != algebra {
        return Err(FockError::AlgebraMismatch);
    }
    if let Some(m) = tau.max_twice_magnitude() {
        if window.twice <= m {
            return Err(FockError::WindowTooSmall {
                window: window.to_string(),
                needed: ModeIndex { algebra, twice: m }.to_string(),
            });
        }
    }
    Ok(annihilator_basis(tau, &window_modes(window)).len())
}

/// The smallest window strictly beyond every mode of the given vectors.
pub fn window_above(algebra: Algebra, vs: &[&FockVector<Scalar>]) -> ModeIndex {
    let m = vs.iter().filter_map(|v| v.max_twice_magnitude()).max().unwrap_or(0);
    let twice = match algebra {
        Algebra::B => m + 2 - m.rem_euclid(2),
        Algebra::D => m + 1 + m.rem_euclid(2),
    };
    ModeIndex { algebra, twice }
}

/// Doubled indices of the modes inside a window.
pub fn window_modes(window: ModeIndex) -> Vec<i64> {
    (-window.twice..=window.twice).filter(|m| ModeIndex::from_twice(window.algebra, *m).is_some()).collect()
}

fn annihilator_basis(tau: &FockVector<Scalar>, modes: &[i64]) -> Vec<Vec<Scalar>> {
    let images: Vec<FockVector<Scalar>> = modes
        .iter()
        .map(|&m| {
            let mut out = FockVector::zero(tau.algebra);
            tau.apply_mode(m, &Scalar::one(), &mut out);
            out
        })
        .collect();
    let mut words: Vec<&Word> = images.iter().flat_map(|v| v.terms.keys()).collect();
    words.sort();
    words.dedup();
    let rows: Vec<Vec<Scalar>> = words.iter().map(|w| images.iter().map(|v| v.coeff(w)).collect()).collect();
    linalg::nullspace(&rows, modes.len())
}

/// `α v α⁻¹ = -r_α(v) = -v + (2(α,v)/(α,α))·α`.
pub fn reflection_conjugate(
    alpha: &CliffordVector<Scalar>,
    v: &CliffordVector<Scalar>,
) -> Result<CliffordVector<Scalar>, FockError> {
    let norm = alpha.form(alpha)?;
    let inv = norm.inverse().ok_or(FockError::IsotropicAlpha)?;
    let k = &alpha.form(v)?.scale_int(2) * &inv;
    v.scale(&Scalar::from_int(-1)).add(&alpha.scale(&k))
}

/// Applies `α v α⁻¹` to `x` inside the Clifford algebra, with `α⁻¹ = 2α/(α,α)`.
pub fn conjugation_action(
    alpha: &CliffordVector<Scalar>,
    v: &CliffordVector<Scalar>,
    x: &FockVector<Scalar>,
) -> Result<FockVector<Scalar>, FockError> {
    let norm = alpha.form(alpha)?;
    let inv = norm.inverse().ok_or(FockError::IsotropicAlpha)?;
    let alpha_inv = alpha.scale(&inv.scale_int(2));
    x.apply(&alpha_inv)?.apply(v)?.apply(alpha)
}

/// A normalised Clifford vector as it appears in a product `v_1···v_k|0⟩`.
pub trait Generator {
    fn algebra(&self) -> Algebra;
    /// The partition part `λ`.
    fn pivot(&self) -> u32;
    fn to_clifford(&self) -> CliffordVector<Scalar>;
}

/// `v = φ_{-λ} + Σ_{n<λ} a_{-n} φ_{-n}` with `λ > 0`; coefficients keyed by mode `-n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorB {
    pivot: u32,
    coeffs: BTreeMap<i64, Scalar>,
}

impl GeneratorB {
    pub fn new(pivot: u32, coeffs: BTreeMap<i64, Scalar>) -> Result<Self, FockError> {
        if pivot == 0 {
            return Err(FockError::InvalidGenerator("type-B pivots are positive".into()));
        }
        if let Some(bad) = coeffs.keys().find(|&&m| m <= -(pivot as i64)) {
            return Err(FockError::InvalidGenerator(format!("mode {bad} is not above the pivot -{pivot}")));
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(GeneratorB { pivot, coeffs })
    }

    pub fn plain(pivot: u32) -> Result<Self, FockError> {
        GeneratorB::new(pivot, BTreeMap::new())
    }

    /// Coefficients `a_{-n}` keyed by the mode index `-n`.
    pub fn coeffs(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }
}

impl Generator for GeneratorB {
    fn algebra(&self) -> Algebra {
        Algebra::B
    }
    fn pivot(&self) -> u32 {
        self.pivot
    }
    fn to_clifford(&self) -> CliffordVector<Scalar> {
        let mut v = CliffordVector::mode(ModeIndex::b(-(self.pivot as i64)));
        for (m, c) in &self.coeffs {
            v.add_mode(2 * m, c.clone());
        }
        v
    }
}

/// `v = φ_{-λ-½} + Σ a_j φ_j` over half-integers `j > -λ-½`, `λ ≥ 0`;
/// coefficients keyed by the doubled index `2j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorD {
    pivot: u32,
    coeffs: BTreeMap<i64, Scalar>,
}

impl GeneratorD {
    pub fn new(pivot: u32, coeffs: BTreeMap<i64, Scalar>) -> Result<Self, FockError> {
        let lead = -(2 * pivot as i64 + 1);
        for &m in coeffs.keys() {
            if m.rem_euclid(2) != 1 {
                return Err(FockError::InvalidGenerator(format!("{m}/2 is not a half-integer")));
            }
            if m <= lead {
                return Err(FockError::InvalidGenerator(format!("mode {m}/2 is not above the pivot {lead}/2")));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(GeneratorD { pivot, coeffs })
    }

    pub fn plain(pivot: u32) -> Result<Self, FockError> {
        GeneratorD::new(pivot, BTreeMap::new())
    }

    /// Coefficients keyed by doubled mode index.
    pub fn coeffs(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }
}

impl Generator for GeneratorD {
    fn algebra(&self) -> Algebra {
        Algebra::D
    }
    fn pivot(&self) -> u32 {
        self.pivot
    }
    fn to_clifford(&self) -> CliffordVector<Scalar> {
        let mut v = CliffordVector::zero(Algebra::D);
        v.add_mode(-(2 * self.pivot as i64 + 1), Scalar::one());
        for (m, c) in &self.coeffs {
            v.add_mode(*m, c.clone());
        }
        v
    }
}

/// `v_1 v_2 ··· v_k |0⟩`. May be the zero vector.
pub fn generator_state<G: Generator>(gens: &[G]) -> Result<FockVector<Scalar>, FockError> {
    let Some(first) = gens.first() else {
        return Err(FockError::InvalidGenerator("empty generator list has no algebra".into()));
    };
    let algebra = first.algebra();
    let mut state = FockVector::vacuum(algebra);
    for g in gens.iter().rev() {
        state = state.apply(&g.to_clifford())?;
    }
    Ok(state)
}

/// Coefficients of `v` on the integer-labelled fields `φ^B_k` and on
/// `ψ = (φ_{-½} - φ_{½})/√2`.
///
/// For type B the `φ^B_k` are the modes themselves and `ψ` is absent. For
/// type D, `φ^B_0 = (φ_{-½} + φ_{½})/√2`, `φ^B_{-i} = φ_{-i-½}` and
/// `φ^B_i = (-1)^i φ_{i+½}` for `i ≥ 1`.
pub fn integer_field_decomposition(v: &CliffordVector<Scalar>) -> (BTreeMap<i64, Scalar>, Scalar) {
    let mut beta: BTreeMap<i64, Scalar> = BTreeMap::new();
    let mut psi = Scalar::zero();
    let mut push = |k: i64, c: Scalar| {
        let slot = beta.entry(k).or_default();
        *slot += &c;
    };
    for (m, c) in v.terms() {
        match v.algebra {
            Algebra::B => push(m / 2, c.clone()),
            Algebra::D => match m {
                -1 => {
                    let h = c * &Scalar::inv_sqrt2();
                    psi += &h;
                    push(0, h);
                }
                1 => {
                    let h = c * &Scalar::inv_sqrt2();
                    psi -= &h;
                    push(0, h);
                }
                m if m < 0 => push((m + 1) / 2, c.clone()),
                m => {
                    let i = (m - 1) / 2;
                    push(i, if i % 2 == 0 { c.clone() } else { -c });
                }
            },
        }
    }
    beta.retain(|_, c| !c.is_zero());
    (beta, psi)
}

/// Adds `c·φ^B_k` to a type-D vector, expanding into half-integer modes.
fn push_integer_field<R: Ring>(out: &mut CliffordVector<R>, k: i64, c: R) {
    match out.algebra {
        Algebra::B => out.add_mode(2 * k, c),
        Algebra::D => {
            if k == 0 {
                let h = c.scale(&Scalar::inv_sqrt2());
                out.add_mode(-1, h.clone());
                out.add_mode(1, h);
            } else if k < 0 {
                out.add_mode(2 * k - 1, c);
            } else {
                out.add_mode(2 * k + 1, if k % 2 == 0 { c } else { c.neg() });
            }
        }
    }
}

/// Time evolution `e^{H(t)} v e^{-H(t)}`: each integer field `φ^B_m` becomes
/// `Σ_ℓ s_ℓ(t̃) φ^B_{m+ℓ}` and the `ψ` component (type D) is unchanged.
///
/// Modes above `max_mode` are dropped; they cannot contract with anything
/// when all operators in a product have their lowest mode at or above
/// `-max_mode`.
pub fn time_evolve(v: &CliffordVector<Scalar>, max_mode: i64) -> CliffordVector<MPoly> {
    let (beta, psi) = integer_field_decomposition(v);
    let mut out = CliffordVector::zero(v.algebra);
    let Some(&lowest) = beta.keys().next() else {
        if !psi.is_zero() {
            push_psi(&mut out, MPoly::constant(psi));
        }
        return out;
    };
    let order = (max_mode - lowest).max(0) as usize;
    let s = schur_sequence(&SchurArg::tilde_t(), order);
    for k in lowest..=max_mode {
        let mut coeff = MPoly::zero();
        for (m, b) in beta.range(..=k) {
            coeff.add_assign_ref(&s[(k - m) as usize].scale(b));
        }
        push_integer_field(&mut out, k, coeff);
    }
    if !psi.is_zero() {
        push_psi(&mut out, MPoly::constant(psi));
    }
    out
}

/// `e^{H(t)} v_j e^{-H(t)}` for each generator, keeping every mode that can
/// contract inside the product (up to the largest pivot).
pub fn lift_generators<G: Generator>(gens: &[G]) -> Vec<CliffordVector<MPoly>> {
    let top = gens.iter().map(|g| g.pivot() as i64).max().unwrap_or(0);
    gens.iter().map(|g| time_evolve(&g.to_clifford(), top)).collect()
}

fn push_psi<R: Ring>(out: &mut CliffordVector<R>, c: R) {
    let h = c.scale(&Scalar::inv_sqrt2());
    out.add_mode(-1, h.clone());
    out.add_mode(1, h.neg());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(j: i64) -> CliffordVector<Scalar> {
        CliffordVector::mode(ModeIndex::b(j))
    }

    fn d(k: i64) -> CliffordVector<Scalar> {
        CliffordVector::mode(ModeIndex::d_half(k).unwrap())
    }

    #[test]
    fn positive_modes_kill_the_vacuum() {
        let vac = FockVector::<Scalar>::vacuum(Algebra::B);
        assert!(clifford_apply(&b(1), &vac).unwrap().is_zero());
        let vac_d = FockVector::<Scalar>::vacuum(Algebra::D);
        assert!(clifford_apply(&d(1), &vac_d).unwrap().is_zero());
    }

    #[test]
    fn phi0_on_vacuum() {
        let vac = FockVector::<Scalar>::vacuum(Algebra::B);
        let out = clifford_apply(&b(0), &vac).unwrap();
        assert_eq!(out, vac.scale(&Scalar::inv_sqrt2()));
    }

    #[test]
    fn phi1_contracts_phi_minus1_with_sign() {
        let x = FockVector::<Scalar>::basis(Algebra::B, &[-2]);
        let out = clifford_apply(&b(1), &x).unwrap();
        assert_eq!(out.vacuum_coeff(), Scalar::from_int(-1));
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn repeated_creation_vanishes() {
        let x = FockVector::<Scalar>::basis(Algebra::D, &[-3, -3]);
        assert!(x.is_zero());
    }

    #[test]
    fn basis_sorts_with_sign() {
        let x = FockVector::<Scalar>::basis(Algebra::B, &[-2, -4]);
        assert_eq!(x.coeff(&[-4, -2]), Scalar::from_int(-1));
    }

    #[test]
    fn vacuum_expectations() {
        assert_eq!(vev(&[b(0), b(0)], LeftState::Vacuum).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(vev(&[d(1), d(-1)], LeftState::Vacuum).unwrap(), Scalar::one());
        assert_eq!(vev(&[b(0)], LeftState::Vacuum).unwrap(), Scalar::inv_sqrt2());
        assert_eq!(vev(&[d(-1)], LeftState::PhiHalf).unwrap(), Scalar::one());
        assert_eq!(vev::<Scalar>(&[], LeftState::Vacuum).unwrap(), Scalar::one());
        assert_eq!(vev(&[b(0)], LeftState::PhiHalf), Err(FockError::PhiHalfNeedsD));
    }

    #[test]
    fn algebra_mismatch_is_reported() {
        let vac = FockVector::<Scalar>::vacuum(Algebra::D);
        assert_eq!(clifford_apply(&b(1), &vac), Err(FockError::AlgebraMismatch));
    }

    #[test]
    fn wick_short_sequences() {
        assert_eq!(wick_pfaffian_vev::<Scalar>(&[]).unwrap(), Scalar::one());
        let pair = [b(2), b(-2)];
        assert_eq!(wick_pfaffian_vev(&pair).unwrap(), vev(&pair, LeftState::Vacuum).unwrap());
        assert_eq!(wick_pfaffian_vev(&[b(1), b(0), b(-1)]), Err(FockError::OddLength(3)));
    }

    #[test]
    fn vacuum_is_a_tau_function() {
        let vac = FockVector::<Scalar>::vacuum(Algebra::B);
        assert!(fermionic_bkp_residual(&vac).unwrap().is_empty());
        let vac_d = FockVector::<Scalar>::vacuum(Algebra::D);
        assert!(fermionic_dkp_residual(&vac_d).unwrap().is_empty());
        let one = FockVector::<Scalar>::basis(Algebra::D, &[-1]);
        assert!(fermionic_dkp_residual(&one).unwrap().is_empty());
    }

    #[test]
    fn four_mode_sum_is_not_a_tau_function() {
        let mut tau = FockVector::<Scalar>::vacuum(Algebra::B);
        tau = tau.add(&FockVector::basis(Algebra::B, &[-8, -6, -4, -2])).unwrap();
        assert!(!fermionic_bkp_residual(&tau).unwrap().is_empty());
    }

    #[test]
    fn mixed_parity_is_rejected_in_d() {
        let tau = FockVector::<Scalar>::vacuum(Algebra::D).add(&FockVector::basis(Algebra::D, &[-1])).unwrap();
        assert_eq!(fermionic_dkp_residual(&tau).unwrap_err(), FockError::MixedParity);
    }

    #[test]
    fn vacuum_pair_is_mdkp() {
        let tau0 = FockVector::<Scalar>::vacuum(Algebra::D);
        let tau1 = FockVector::<Scalar>::basis(Algebra::D, &[-1]);
        assert!(fermionic_mdkp_residual(&tau0, &tau1).unwrap().is_empty());
        let window = ModeIndex::d_half(3).unwrap();
        assert_eq!(annihilator_quotient_dim(&tau0, &tau1, window).unwrap(), 2);
        assert_eq!(annihilator_quotient_dim(&tau0, &tau0, window).unwrap(), 0);
        assert_eq!(
            fermionic_mdkp_residual(&tau1, &tau0).unwrap_err(),
            FockError::ParityError { which: "tau0", expected: "even" }
        );
    }

    #[test]
    fn window_must_exceed_modes() {
        let tau0 = FockVector::<Scalar>::vacuum(Algebra::D);
        let tau1 = FockVector::<Scalar>::basis(Algebra::D, &[-3]);
        let small = ModeIndex::d_half(3).unwrap();
        assert!(matches!(annihilator_quotient_dim(&tau0, &tau1, small), Err(FockError::WindowTooSmall { .. })));
    }

    #[test]
    fn reflection_fixes_orthogonal_vectors_up_to_sign() {
        let alpha = b(-1).add(&b(1)).unwrap();
        let v = b(3);
        assert_eq!(reflection_conjugate(&alpha, &v).unwrap(), v.scale(&Scalar::from_int(-1)));
        assert_eq!(reflection_conjugate(&alpha, &alpha).unwrap(), alpha);
        assert_eq!(reflection_conjugate(&b(2), &v).unwrap_err(), FockError::IsotropicAlpha);
    }

    #[test]
    fn reflection_matches_conjugation_on_states() {
        let alpha = b(-1).add(&b(1)).unwrap();
        let v = b(1);
        let reflected = reflection_conjugate(&alpha, &v).unwrap();
        for modes in [vec![], vec![-2], vec![-4, -2], vec![-6, -2]] {
            let x = FockVector::<Scalar>::basis(Algebra::B, &modes);
            let lhs = conjugation_action(&alpha, &v, &x).unwrap();
            let rhs = x.apply(&reflected).unwrap();
            assert_eq!(lhs, rhs, "state {modes:?}");
        }
    }

    #[test]
    fn plain_generators_give_basis_words() {
        let g = [GeneratorB::plain(2).unwrap(), GeneratorB::plain(1).unwrap()];
        assert_eq!(generator_state(&g).unwrap(), FockVector::basis(Algebra::B, &[-4, -2]));
        let single = [GeneratorB::plain(1).unwrap()];
        assert_eq!(generator_state(&single).unwrap(), FockVector::basis(Algebra::B, &[-2]));
    }

    #[test]
    fn repeated_isotropic_generator_gives_zero() {
        let mut c = BTreeMap::new();
        c.insert(-1, Scalar::from_int(3));
        let g = GeneratorB::new(2, c).unwrap();
        assert!(generator_state(&[g.clone(), g]).unwrap().is_zero());
    }

    #[test]
    fn generator_validation() {
        let mut c = BTreeMap::new();
        c.insert(-2, Scalar::one());
        assert!(GeneratorB::new(2, c).is_err());
        assert!(GeneratorB::plain(0).is_err());
        let mut c = BTreeMap::new();
        c.insert(2, Scalar::one());
        assert!(GeneratorD::new(0, c).is_err());
    }

    #[test]
    fn integer_fields_reassemble() {
        let mut v = CliffordVector::<Scalar>::zero(Algebra::D);
        for (m, c) in [(-5, 2), (-1, 3), (1, -1), (3, 4), (5, 7)] {
            v.add_mode(m, Scalar::from_int(c));
        }
        let (beta, psi) = integer_field_decomposition(&v);
        let mut back = CliffordVector::<Scalar>::zero(Algebra::D);
        for (k, c) in beta {
            push_integer_field(&mut back, k, c);
        }
        push_psi(&mut back, psi);
        assert_eq!(back, v);
    }
}
