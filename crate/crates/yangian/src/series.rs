//! Truncated series in u^{-1} over an arbitrary exact coefficient ring.
//!
//! A `Tail` stores coefficients of u^0, u^-1, ..., u^-N for an explicit
//! truncation order N. Nothing beyond the stored order is assumed: products
//! and inverses demand enough stored coefficients, and comparisons report how
//! far they actually looked. Callers that know a tail is an exact polynomial
//! zero-extend it with [`Tail::extended`] before asking for more.

use std::fmt;

use crate::field::binom_mod;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Tail<R> {
    c: Vec<R>,
}

/// Outcome of comparing two tails through the smaller of their orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compare {
    /// Coefficients agree through this order (the full comparison range).
    Equal { through: usize },
    /// First disagreement at u^{-index}.
    Differs { index: usize },
}

impl Compare {
    pub fn is_equal(&self) -> bool {
        matches!(self, Compare::Equal { .. })
    }
}

impl<R: Scalar> Tail<R> {
    /// Builds a tail from coefficients c[r] of u^{-r}; the truncation order
    /// is coeffs.len() − 1.
    pub fn new(coeffs: Vec<R>) -> Tail<R> {
        assert!(!coeffs.is_empty(), "a tail needs at least the u^0 coefficient");
        Tail { c: coeffs }
    }

    pub fn constant(x: R, order: usize) -> Tail<R> {
        let mut c = vec![R::zero(); order + 1];
        c[0] = x;
        Tail { c }
    }

    pub fn one(order: usize) -> Tail<R> {
        Tail::constant(R::one(), order)
    }

    pub fn zero_tail(order: usize) -> Tail<R> {
        Tail {
            c: vec![R::zero(); order + 1],
        }
    }

    /// The single term coeff · u^{-r}.
    pub fn monomial(r: usize, coeff: R, order: usize) -> Tail<R> {
        assert!(r <= order);
        let mut c = vec![R::zero(); order + 1];
        c[r] = coeff;
        Tail { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &R {
        &self.c[r]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn set_coeff(&mut self, r: usize, x: R) {
        self.c[r] = x;
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Tail<S> {
        Tail {
            c: self.c.iter().map(f).collect(),
        }
    }

    /// Zero-extends to a higher order. Only correct when the tail is known
    /// to be an exact polynomial of its current order.
    pub fn extended(&self, order: usize) -> Tail<R> {
        let mut c = self.c.clone();
        c.resize(order + 1, R::zero());
        Tail { c }
    }

    pub fn truncated(&self, order: usize) -> Tail<R> {
        assert!(order <= self.order());
        Tail {
            c: self.c[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Tail<R>) -> Tail<R> {
        let n = self.order().min(other.order());
        Tail {
            c: (0..=n)
                .map(|r| self.c[r].clone() + other.c[r].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Tail<R>) -> Tail<R> {
        let n = self.order().min(other.order());
        Tail {
            c: (0..=n)
                .map(|r| self.c[r].clone() - other.c[r].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Tail<R> {
        Tail {
            c: self.c.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &R) -> Tail<R> {
        Tail {
            c: self.c.iter().map(|x| k.clone() * x.clone()).collect(),
        }
    }

    /// Cauchy product through order n. Coefficient order is preserved, so
    /// this is correct over noncommutative coefficient rings.
    pub fn mul(&self, other: &Tail<R>, n: usize) -> Tail<R> {
        assert!(
            self.order() >= n && other.order() >= n,
            "product through order {n} needs both factors to that order (have {}, {})",
            self.order(),
            other.order()
        );
        let mut out = vec![R::zero(); n + 1];
        for r in 0..=n {
            if self.c[r].is_zero() {
                continue;
            }
            for s in 0..=n - r {
                if other.c[s].is_zero() {
                    continue;
                }
                out[r + s] = out[r + s].clone() + self.c[r].clone() * other.c[s].clone();
            }
        }
        Tail { c: out }
    }

    /// Two-sided inverse through order n; the constant term must be
    /// invertible. For noncommutative coefficients this computes the right
    /// inverse b with a·b = 1, which is also the left inverse.
    pub fn inv(&self, n: usize) -> Option<Tail<R>> {
        assert!(self.order() >= n);
        let c0 = self.c[0].try_inv()?;
        let mut out = vec![R::zero(); n + 1];
        out[0] = c0.clone();
        for r in 1..=n {
            let mut acc = R::zero();
            for t in 1..=r {
                acc = acc + self.c[t].clone() * out[r - t].clone();
            }
            out[r] = -(c0.clone() * acc);
        }
        Some(Tail { c: out })
    }

    /// a(u − c) through order n in characteristic p: re-expands each u^{-r}
    /// by (u−c)^{-r} = Σ_k C(r+k−1, k) c^k u^{-r-k}. The binomials are
    /// reduced mod p up front (Lucas), and the powers of c accumulate onto
    /// the source coefficient, so large orders never overflow machine
    /// integers.
    pub fn shift(&self, c: &R, p: u32, n: usize) -> Tail<R> {
        assert!(self.order() >= n);
        let mut out = vec![R::zero(); n + 1];
        out[0] = self.c[0].clone();
        for r in 1..=n {
            if self.c[r].is_zero() {
                continue;
            }
            let mut acc = self.c[r].clone();
            for k in 0..=n - r {
                let b = binom_mod(p, (r + k - 1) as u64, k as u64);
                if b != 0 {
                    out[r + k] = out[r + k].clone() + acc.clone() * R::from_int(b as i64);
                }
                acc = acc * c.clone();
            }
        }
        Tail { c: out }
    }

    /// Coefficient-wise comparison through the smaller order.
    pub fn compare(&self, other: &Tail<R>) -> Compare {
        let n = self.order().min(other.order());
        for r in 0..=n {
            if self.c[r] != other.c[r] {
                return Compare::Differs { index: r };
            }
        }
        Compare::Equal { through: n }
    }

    pub fn agrees_with(&self, other: &Tail<R>) -> bool {
        self.compare(other).is_equal()
    }

    /// The product f(u) f(u−1) ⋯ f(u−p+1) through order n.
    pub fn orbit_product(&self, p: u32, n: usize) -> Tail<R> {
        assert!(self.order() >= n);
        let mut acc = Tail::one(n);
        for j in 0..p {
            acc = acc.mul(&self.shift(&R::from_int(j as i64), p, n), n);
        }
        acc
    }

    /// None when f(u) f(u−1) ⋯ f(u−p+1) = 1 through order n; otherwise the
    /// first order with a nonzero defect.
    pub fn restricted_defect(&self, p: u32, n: usize) -> Option<usize> {
        let prod = self.orbit_product(p, n);
        match prod.compare(&Tail::one(n)) {
            Compare::Equal { .. } => None,
            Compare::Differs { index } => Some(index),
        }
    }
}

impl<R: Scalar> fmt::Display for Tail<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match r {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u^-1")?,
                _ => write!(f, "({c})*u^-{r}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^-{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDesc, Fq};
    use crate::poly::Poly;
    use num_traits::One;

    fn tail(desc: FieldDesc, coeffs: &[i64]) -> Tail<Fq> {
        Tail::new(coeffs.iter().map(|&x| desc.from_int(x)).collect())
    }

    #[test]
    fn cube_over_f3_is_freshmans_dream() {
        let d = FieldDesc::new(3, 1).unwrap();
        let a = tail(d, &[1, 1, 0, 0]);
        let cube = a.mul(&a, 3).mul(&a, 3);
        assert_eq!(cube, tail(d, &[1, 0, 0, 1]));
    }

    #[test]
    fn inverse_recurrence() {
        let d = FieldDesc::new(5, 1).unwrap();
        let a = tail(d, &[1, 1, 1]);
        let inv = a.inv(2).unwrap();
        assert_eq!(inv, tail(d, &[1, 4, 0]));
        assert!(a.mul(&inv, 2).is_one());
        assert!(inv.mul(&a, 2).is_one());
    }

    #[test]
    fn shift_matches_binomial_expansion() {
        let d = FieldDesc::new(5, 1).unwrap();
        let a = tail(d, &[1, 0, 2, 0, 0]);
        let shifted = a.shift(&d.from_int(3), d.p, 4);
        // 2(u−3)^-2 = 2u^-2 + 2·C(2,1)·3 u^-3 + 2·C(3,2)·9 u^-4 + ...
        assert_eq!(shifted, tail(d, &[1, 0, 2, 2, 4]));
    }

    #[test]
    fn shift_agrees_with_rational_function_route() {
        // For a polynomial tail a of degree D, write A(u) = u^D a(u); then
        // a(u−c) = A(u−c)·(u−c)^{-D}. The right-hand side only needs
        // polynomial Taylor shift, series multiplication and inversion —
        // none of the binomial re-expansion code under test.
        let d = FieldDesc::new(7, 2).unwrap();
        let w = d.gen().unwrap();
        let coeffs = vec![
            d.from_int(1),
            w.clone(),
            d.from_int(3),
            d.from_int(0),
            w.clone() * w.clone() + d.from_int(5),
        ];
        let deg = coeffs.len() - 1;
        let a = Tail::new(coeffs.clone());
        let n = 11;
        for c in [d.from_int(1), d.from_int(3), w.clone()] {
            let shifted = a.extended(n).shift(&c, d.p, n);

            let big: Poly = Poly::new(coeffs.iter().rev().cloned().collect());
            let moved = big.shift_arg(&(-c.clone()));
            // (u−c)^{-D} = u^{-D} · (1 − c u^{-1})^{-D}
            let lin = Tail::new(vec![d.from_int(1), -c.clone()]).extended(n);
            let mut lin_pow = Tail::one(n);
            for _ in 0..deg {
                lin_pow = lin_pow.mul(&lin, n);
            }
            let lin_inv = lin_pow.inv(n).unwrap();
            let mut expect: Tail<Fq> = Tail::zero_tail(n);
            for (i, b) in moved.coeffs().iter().enumerate() {
                // b · u^i · u^{-D} · lin_inv contributes at orders ≥ D − i.
                let base = deg - i;
                for k in 0..=n - base {
                    let v = expect.coeff(base + k).clone()
                        + b.clone() * lin_inv.coeff(k).clone();
                    expect.set_coeff(base + k, v);
                }
            }
            assert_eq!(shifted, expect, "shift by {c}");
        }
    }

    #[test]
    fn shift_round_trips_and_composes() {
        let d = FieldDesc::new(5, 2).unwrap();
        let a = tail(d, &[1, 2, 0, 3, 1, 4, 0, 2]).extended(12);
        let c1 = d.gen().unwrap();
        let c2 = d.from_int(2);
        let n = 7;
        let there = a.shift(&c1, d.p, 12).shift(&c2, d.p, 12);
        let direct = a.shift(&(c1.clone() + c2.clone()), d.p, 12);
        assert!(there.truncated(n).agrees_with(&direct.truncated(n)));
        let back = there.shift(&(-(c1 + c2)), d.p, 12);
        assert!(back.truncated(n).agrees_with(&a.truncated(n)));
    }

    #[test]
    fn shift_is_a_ring_homomorphism() {
        let d = FieldDesc::new(3, 1).unwrap();
        let n = 9;
        let a = tail(d, &[1, 2, 1, 0, 2]).extended(n);
        let b = tail(d, &[2, 0, 1, 1]).extended(n);
        let c = d.from_int(2);
        let lhs = a.mul(&b, n).shift(&c, d.p, n);
        let rhs = a.shift(&c, d.p, n).mul(&b.shift(&c, d.p, n), n);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_by_p_is_identity() {
        let d = FieldDesc::new(3, 1).unwrap();
        let a = tail(d, &[1, 1, 2, 0, 1]).extended(10);
        assert_eq!(a.shift(&d.from_int(3), d.p, 10), a);
    }

    #[test]
    fn restrictedness_of_linear_tails() {
        // 1 + c u^-1 is restricted exactly when c lies in the prime field.
        for (p, mm) in [(3u32, 2u32), (5, 2)] {
            let d = FieldDesc::new(p, mm).unwrap();
            for c in d.elements() {
                let f = Tail::new(vec![d.from_int(1), c.clone()]).extended(p as usize);
                let defect = f.restricted_defect(p, p as usize);
                if c.in_prime_field() {
                    assert_eq!(defect, None, "c = {c}");
                } else {
                    // ∏ (u+c−j)/(u−j) = 1 + (c^p − c)/(u^p − u): the defect
                    // shows up exactly at order p.
                    assert_eq!(defect, Some(p as usize), "c = {c}");
                }
            }
        }
    }

    #[test]
    fn compare_reports_partial_ranges() {
        let d = FieldDesc::new(5, 1).unwrap();
        let a = tail(d, &[1, 2, 3]);
        let b = tail(d, &[1, 2, 3, 4, 4]);
        assert_eq!(a.compare(&b), Compare::Equal { through: 2 });
        let c = tail(d, &[1, 0, 3]);
        assert_eq!(a.compare(&c), Compare::Differs { index: 1 });
    }

    #[test]
    fn polynomial_tail_coefficients_ride_along() {
        // Coefficients in F_p[x]: the shift machinery is ring-generic.
        let d = FieldDesc::new(3, 1).unwrap();
        let x = Poly::x();
        let n = 4;
        let a: Tail<Poly> = Tail::new(vec![Poly::one(), x.clone()]).extended(n);
        let shifted = a.shift(&Poly::from_int(1), d.p, n);
        // (u−1)^{-1} = u^-1 + u^-2 + ...: coefficient of u^-k is x for k ≥ 1.
        for k in 1..=n {
            assert_eq!(shifted.coeff(k), &x, "order {k}");
        }
        assert_eq!(d.p, 3);
    }
}
