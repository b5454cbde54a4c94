//! Exact Laurent polynomials in one variable, plus the two-variable
//! Poincaré series used for bigraded homology.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::scalar::Ring;

/// Which indeterminate a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    A,
    Q,
    /// `t` with exponents counted in quarter units, so `t^{1/4}` has exponent 1.
    QuarterT,
}

impl Variable {
    fn symbol(self) -> &'static str {
        match self {
            Variable::A => "A",
            Variable::Q => "q",
            Variable::QuarterT => "t",
        }
    }
}

/// Sparse Laurent polynomial; no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<T> {
    var: Variable,
    terms: BTreeMap<i64, T>,
}

impl<T: Ring> Laurent<T> {
    pub fn zero(var: Variable) -> Self {
        Self {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, T::one(), 0)
    }

    pub fn monomial(var: Variable, coeff: T, exp: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(var: Variable, terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(T::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.var, self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `var = coeff * new_var^factor`; every exponent `e` becomes `factor * e`.
    pub fn substitute(&self, new_var: Variable, factor: i64, coeff: &T) -> Self {
        Self::from_terms(
            new_var,
            self.terms.iter().map(|(e, c)| {
                let k = u32::try_from(e.unsigned_abs()).expect("exponent fits u32");
                let mut w = T::one();
                for _ in 0..k {
                    w = w * coeff.clone();
                }
                // coeff is a unit (+1 or -1) whenever negative exponents occur
                (factor * e, c.clone() * w)
            }),
        )
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.var, divisor.var, "variable mismatch");
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some(hi) = rem.max_exp() {
            let lo = rem.min_exp().expect("nonempty");
            if hi - dhi < lo - dlo {
                return None;
            }
            let (q, r) = rem.coeff(hi).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(self.var, q, hi - dhi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

impl<'a, T: Ring> Add<&'a Laurent<T>> for &'a Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: &Laurent<T>) -> Laurent<T> {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a, T: Ring> Sub<&'a Laurent<T>> for &'a Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: &Laurent<T>) -> Laurent<T> {
        self + &(-rhs)
    }
}

impl<T: Ring> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<'a, T: Ring> Mul<&'a Laurent<T>> for &'a Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: &Laurent<T>) -> Laurent<T> {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = Laurent::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, var: Variable, exp: i64) -> fmt::Result {
    let sym = var.symbol();
    match var {
        Variable::QuarterT if exp % 4 != 0 => {
            let g = exp.gcd(&4);
            write!(f, "{sym}^({}/{})", exp / g, 4 / g)
        }
        Variable::QuarterT => match exp / 4 {
            1 => write!(f, "{sym}"),
            k => write!(f, "{sym}^{k}"),
        },
        _ => match exp {
            1 => write!(f, "{sym}"),
            k => write!(f, "{sym}^{k}"),
        },
    }
}

fn write_signed<T: Ring>(f: &mut fmt::Formatter<'_>, first: bool, c: &T) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-"),
        (true, false) => Ok(()),
        (false, true) => write!(f, " - "),
        (false, false) => write!(f, " + "),
    }
}

/// Renders terms by ascending exponent, e.g. `-A^-2 - A^2` or `q^-1 + q`.
impl<T: Ring> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            write_signed(f, k == 0, c)?;
            let a = c.abs();
            if *e == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                write_exponent(f, self.var, *e)?;
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// Two-variable Laurent polynomial in `t` (homological) and `q` (quantum).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poincare<T> {
    terms: BTreeMap<(i64, i64), T>,
}

impl<T: Ring> Poincare<T> {
    pub fn new() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, t_exp: i64, q_exp: i64, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((t_exp, q_exp)).or_insert_with(T::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&(t_exp, q_exp));
        }
    }

    pub fn coeff(&self, t_exp: i64, q_exp: i64) -> T {
        self.terms.get(&(t_exp, q_exp)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &T)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Specializes `t = -1`.
    pub fn at_t_minus_one(&self) -> Laurent<T> {
        Laurent::from_terms(
            Variable::Q,
            self.terms.iter().map(|((i, j), c)| {
                let s = if i.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
                (*j, s)
            }),
        )
    }
}

impl<T: Ring> fmt::Display for Poincare<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.terms.iter().enumerate() {
            write_signed(f, k == 0, c)?;
            let a = c.abs();
            if *i == 0 && *j == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            if *i != 0 {
                write_exponent(f, Variable::QuarterT, 4 * i)?;
            }
            if *j != 0 {
                write_exponent(f, Variable::Q, *j)?;
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Poincare<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poincare({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use num_traits::Zero;

    type P = Laurent<BigInt>;

    fn p(var: Variable, terms: &[(i64, i64)]) -> P {
        P::from_terms(var, terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn rendering_orders_by_exponent() {
        assert_eq!(p(Variable::A, &[(2, -1), (-2, -1)]).to_string(), "-A^-2 - A^2");
        assert_eq!(p(Variable::Q, &[(1, 1), (-1, 1)]).to_string(), "q^-1 + q");
        assert_eq!(p(Variable::Q, &[(0, 3), (2, -2)]).to_string(), "3 - 2q^2");
        assert_eq!(p(Variable::QuarterT, &[(-4, 1), (2, -1), (-3, 1)]).to_string(), "t^-1 + t^(-3/4) - t^(1/2)");
        assert_eq!(P::zero(Variable::Q).to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = p(Variable::Q, &[(1, 1)]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let delta = p(Variable::A, &[(2, -1), (-2, -1)]);
        let sq = &delta * &delta;
        assert_eq!(sq.div_exact(&delta), Some(delta.clone()));
        assert_eq!(p(Variable::A, &[(0, 1)]).div_exact(&delta), None);
    }

    #[test]
    fn poincare_specialization() {
        let mut pp = Poincare::<BigInt>::new();
        pp.add_term(0, 1, BigInt::from(1));
        pp.add_term(2, 5, BigInt::from(1));
        pp.add_term(3, 9, BigInt::from(1));
        assert_eq!(pp.to_string(), "q + t^2q^5 + t^3q^9");
        assert_eq!(pp.at_t_minus_one(), p(Variable::Q, &[(1, 1), (5, 1), (9, -1)]));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((-6i64..6, -4i64..5), 0..6).prop_map(|t| p(Variable::Q, &t))
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }

        #[test]
        fn no_zero_coefficients_stored(a in arb_poly(), b in arb_poly()) {
            let s = &a + &b;
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
