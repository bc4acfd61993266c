//! Sparse multivariate polynomials over [`Scalar`] in the odd time variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::scalar::Scalar;
use super::Ring;

/// Which copy of the time variables a [`VarId`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Time,
    TimePrimed,
}

/// A time variable `t_j` or `t'_j`. Only odd `j` can be constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    kind: VarKind,
    index: u32,
}

impl VarId {
    /// `None` unless `index` is a positive odd integer.
    pub fn new(kind: VarKind, index: u32) -> Option<Self> {
        (index % 2 == 1).then_some(VarId { kind, index })
    }

    pub fn time(index: u32) -> Self {
        VarId::new(VarKind::Time, index).expect("time variables have odd index")
    }

    pub fn primed(index: u32) -> Self {
        VarId::new(VarKind::TimePrimed, index).expect("time variables have odd index")
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    // t_1, t'_1, t_3, t'_3, ... interleaved
    fn slot(&self) -> usize {
        (self.index as usize - 1) + usize::from(self.kind == VarKind::TimePrimed)
    }

    fn from_slot(slot: usize) -> Self {
        let kind = if slot.is_multiple_of(2) { VarKind::Time } else { VarKind::TimePrimed };
        VarId { kind, index: (slot - slot % 2 + 1) as u32 }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Time => write!(f, "t_{}", self.index),
            VarKind::TimePrimed => write!(f, "t'_{}", self.index),
        }
    }
}

/// Exponent vector indexed by variable slot, trailing zeros trimmed.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId, exp: u16) -> Self {
        let mut m = Monomial::one();
        if exp > 0 {
            m.0.resize(v.slot() + 1, 0);
            m.0[v.slot()] = exp;
        }
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = (VarId, u16)>>(it: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in it {
            if v.slot() >= m.0.len() {
                m.0.resize(v.slot() + 1, 0);
            }
            m.0[v.slot()] += e;
        }
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> u16 {
        self.0.get(v.slot()).copied().unwrap_or(0)
    }

    /// Nonzero exponents in slot order (t_1, t'_1, t_3, ...).
    pub fn exponents(&self) -> impl Iterator<Item = (VarId, u16)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(s, &e)| (VarId::from_slot(s), e))
    }

    /// Σ j·e_j over both variable sets.
    pub fn weighted_degree(&self) -> u32 {
        self.exponents().map(|(v, e)| v.index() * e as u32).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut out = long.0.clone();
        for (o, &e) in out.iter_mut().zip(short.0.iter()) {
            *o += e;
        }
        Monomial(out)
    }

    fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_exponents(self.exponents().map(|(v, e)| (f(v), e)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.exponents().map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Polynomial in `t_j`, `t'_j` (odd `j`) with nonzero [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        MPoly::term(Monomial::var(v, 1), Scalar::one())
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    /// `Some(c)` if the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += a * b`, without materialising the product.
    pub fn add_product(&mut self, a: &MPoly, b: &MPoly) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &(ca * cb));
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, exp: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Largest weighted degree of a term; `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weighted_degree).max()
    }

    pub fn is_weighted_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.weighted_degree() == degree)
    }

    /// Terms of weighted degree exactly `degree`.
    pub fn weighted_part(&self, degree: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.exponents().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn has_primed(&self) -> bool {
        self.variables().iter().any(|v| v.kind() == VarKind::TimePrimed)
    }

    /// Substitutes values for the bound variables; unbound variables stay symbolic.
    pub fn substitute(&self, values: &BTreeMap<VarId, Scalar>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.exponents() {
                match values.get(&v) {
                    Some(x) => coeff = &coeff * &x.pow(e as u32),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_exponents(rest), &coeff);
        }
        out
    }

    /// Full evaluation; `None` if some variable is left unbound.
    pub fn evaluate(&self, values: &BTreeMap<VarId, Scalar>) -> Option<Scalar> {
        self.substitute(values).as_constant()
    }

    /// Renames `t_j` to `t'_j` (and leaves primed variables alone).
    pub fn to_primed(&self) -> MPoly {
        self.map_vars(|v| VarId::primed(v.index()))
    }

    /// Sets `t'_j := t_j`.
    pub fn identify_primed(&self) -> MPoly {
        self.map_vars(|v| VarId::time(v.index()))
    }

    fn map_vars(&self, f: impl Fn(VarId) -> VarId + Copy) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(f), c);
        }
        out
    }

    /// Some term of the polynomial, used as a failure witness.
    pub fn leading_term(&self) -> Option<(Monomial, Scalar)> {
        self.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        MPoly::constant(s)
    }
    fn scale(&self, s: &Scalar) -> Self {
        MPoly::scale(self, s)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other)
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly { <&MPoly as $tr<&MPoly>>::$m(&self, &rhs) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly { <&MPoly as $tr<&MPoly>>::$m(&self, rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<Scalar> for MPoly {
    fn from(c: Scalar) -> Self {
        MPoly::constant(c)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(j: u32) -> MPoly {
        MPoly::var(VarId::time(j))
    }

    #[test]
    fn difference_of_squares() {
        let one = MPoly::one();
        let p = &(&t(1) + &one) * &(&t(1) - &one);
        let expected = &t(1).pow(2) - &one;
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = &t(3) * &t(1) + MPoly::constant(Scalar::ratio(2, 3));
        assert_eq!(&p + &MPoly::zero(), p);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_exact() {
        let p = t(1).pow(3).scale(&Scalar::ratio(1, 6));
        let mut vals = BTreeMap::new();
        vals.insert(VarId::time(1), Scalar::from_int(2));
        assert_eq!(p.evaluate(&vals), Some(Scalar::ratio(4, 3)));
        assert_eq!((&p * &t(3)).evaluate(&vals), None);
    }

    #[test]
    fn even_indices_are_not_variables() {
        assert!(VarId::new(VarKind::Time, 2).is_none());
        assert!(VarId::new(VarKind::TimePrimed, 0).is_none());
        assert!(VarId::new(VarKind::Time, 5).is_some());
    }

    #[test]
    fn weighted_degree_counts_indices() {
        let m = Monomial::from_exponents([(VarId::time(1), 2), (VarId::primed(5), 1)]);
        assert_eq!(m.weighted_degree(), 7);
        assert_eq!(m.total_degree(), 3);
        assert_eq!(format!("{m}"), "t_1^2*t'_5");
    }

    #[test]
    fn priming_round_trip() {
        let p = &t(1) * &t(3) + t(5);
        assert!(p.to_primed().has_primed());
        assert_eq!(p.to_primed().identify_primed(), p);
    }
}
