//! Elementary Schur polynomials and truncated exp/log of power series.

use super::mpoly::{MPoly, VarId, VarKind};
use super::scalar::Scalar;

/// Argument `x = (x_1, x_2, ...)` of an elementary Schur polynomial.
///
/// Slot `i` holds `time_coeff·t_i` (odd `i` only, when a time set is attached)
/// plus the polynomial `extra[i-1]`. This covers `t̃`, `t̃ + c`, `-t̃'` and any
/// finitely supported polynomial sequence.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SchurArg {
    time: Option<(VarKind, Scalar)>,
    extra: Vec<MPoly>,
}

impl SchurArg {
    /// The zero sequence.
    pub fn zero() -> Self {
        SchurArg::default()
    }

    /// `t̃ = (t_1, 0, t_3, 0, ...)`.
    pub fn tilde_t() -> Self {
        SchurArg { time: Some((VarKind::Time, Scalar::one())), extra: Vec::new() }
    }

    /// `coeff·t̃` in the chosen variable set.
    pub fn scaled_time(kind: VarKind, coeff: Scalar) -> Self {
        SchurArg { time: Some((kind, coeff)), extra: Vec::new() }
    }

    /// `(c_1, c_2, ...)` with constant entries.
    pub fn constants(c: &[Scalar]) -> Self {
        SchurArg { time: None, extra: c.iter().cloned().map(MPoly::constant).collect() }
    }

    /// A finitely supported polynomial sequence, slot 1 first.
    pub fn from_slots(slots: Vec<MPoly>) -> Self {
        SchurArg { time: None, extra: slots }
    }

    /// `t̃ + c`.
    pub fn shifted_time(c: &[Scalar]) -> Self {
        SchurArg::tilde_t().plus_constants(c)
    }

    pub fn plus_constants(self, c: &[Scalar]) -> Self {
        let polys: Vec<MPoly> = c.iter().cloned().map(MPoly::constant).collect();
        self.plus_slots(&polys)
    }

    /// Adds a polynomial to each slot, e.g. symbolic shift constants.
    pub fn plus_slots(mut self, c: &[MPoly]) -> Self {
        if self.extra.len() < c.len() {
            self.extra.resize(c.len(), MPoly::zero());
        }
        for (slot, x) in self.extra.iter_mut().zip(c) {
            slot.add_assign_ref(x);
        }
        self
    }

    /// Slot `i ≥ 1`.
    pub fn slot(&self, i: usize) -> MPoly {
        assert!(i >= 1, "slots start at 1");
        let mut out = self.extra.get(i - 1).cloned().unwrap_or_default();
        if let Some((kind, coeff)) = &self.time {
            if i % 2 == 1 {
                let v = VarId::new(*kind, i as u32).expect("odd slot");
                out.add_assign_ref(&MPoly::var(v).scale(coeff));
            }
        }
        out
    }
}

/// `[s_0(x), ..., s_n(x)]` where `exp(Σ x_i z^i) = Σ s_k(x) z^k`.
///
/// Uses `k·s_k = Σ_{i=1}^{k} i·x_i·s_{k-i}`, obtained by differentiating the
/// generating function in `z`.
pub fn schur_sequence(arg: &SchurArg, n: usize) -> Vec<MPoly> {
    let slots: Vec<MPoly> = (1..=n).map(|i| arg.slot(i)).collect();
    let mut s = Vec::with_capacity(n + 1);
    s.push(MPoly::one());
    for k in 1..=n {
        let mut acc = MPoly::zero();
        for i in 1..=k {
            if slots[i - 1].is_zero() {
                continue;
            }
            let weighted = slots[i - 1].scale(&Scalar::from_int(i as i64));
            acc.add_product(&weighted, &s[k - i]);
        }
        s.push(acc.scale(&Scalar::ratio(1, k as i64)));
    }
    s
}

/// The elementary Schur polynomial `s_k(arg)`.
pub fn elementary_schur(k: usize, arg: &SchurArg) -> MPoly {
    schur_sequence(arg, k).pop().expect("sequence has k+1 entries")
}

/// `[s_0(c), ..., s_n(c)]` for constant `c`: the truncated series `exp(Σ c_i z^i)`.
pub fn exp_series(c: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut s = Vec::with_capacity(n + 1);
    s.push(Scalar::one());
    for k in 1..=n {
        let mut acc = Scalar::zero();
        for i in 1..=k.min(c.len()) {
            acc += &(&c[i - 1].scale_int(i as i64) * &s[k - i]);
        }
        s.push(&acc * &Scalar::ratio(1, k as i64));
    }
    s
}

/// Returns `c_1..c_n` with `exp(Σ c_i z^i) ≡ 1 + Σ a_m z^m (mod z^{n+1})`,
/// i.e. the truncated logarithm. `a` holds `a_1, a_2, ...`; entries beyond
/// order `n` do not affect the result.
pub fn coeffs_to_c(a: &[Scalar], n: usize) -> Vec<Scalar> {
    let coeff = |m: usize| -> Scalar {
        match m {
            0 => Scalar::one(),
            m if m <= a.len() => a[m - 1].clone(),
            _ => Scalar::zero(),
        }
    };
    // f' = c' f  gives  m a_m = Σ_{k=1}^{m} k c_k a_{m-k}
    let mut c: Vec<Scalar> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = coeff(m).scale_int(m as i64);
        for k in 1..m {
            acc -= &(&c[k - 1].scale_int(k as i64) * &coeff(m - k));
        }
        c.push(&acc * &Scalar::ratio(1, m as i64));
    }
    c
}
