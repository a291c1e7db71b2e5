//! Dense polynomials over the coefficient field, low degree first.
//!
//! Used for Drinfeld polynomials (after homogenizing series in u^{-1} to
//! monic polynomials in u) and as a coefficient ring in its own right when
//! series coefficients are polynomials in a matrix unit.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Fq};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    /// Coefficients, constant term first, no trailing zeros.
    c: Vec<Fq>,
}

impl Poly {
    pub fn new(coeffs: Vec<Fq>) -> Poly {
        let mut p = Poly { c: coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn constant(x: Fq) -> Poly {
        Poly::new(vec![x])
    }

    pub fn x() -> Poly {
        Poly::new(vec![Fq::lit(0), Fq::lit(1)])
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).cloned().unwrap_or(Fq::lit(0))
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().map_or(false, |x| x.is_one())
    }

    pub fn eval(&self, x: &Fq) -> Fq {
        let mut acc = Fq::lit(0);
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// ∏ (x − r) over the given roots.
    pub fn from_roots(roots: &[Fq]) -> Poly {
        let mut acc = Poly::one();
        for r in roots {
            acc = acc * Poly::new(vec![-r.clone(), Fq::lit(1)]);
        }
        acc
    }

    /// P(x + a).
    pub fn shift_arg(&self, a: &Fq) -> Poly {
        let lin = Poly::new(vec![a.clone(), Fq::lit(1)]);
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = acc * lin.clone() + Poly::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, k: &Fq) -> Poly {
        Poly::new(self.c.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn monic(&self) -> Result<Poly> {
        let lead = self
            .c
            .last()
            .ok_or_else(|| Error::NotInvertible("zero polynomial has no monic form".into()))?;
        let inv = lead
            .try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {lead}")))?;
        Ok(self.scale(&inv))
    }

    /// Quotient and remainder; the divisor's leading coefficient must be
    /// invertible.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .deg()
            .ok_or_else(|| Error::NotInvertible("division by the zero polynomial".into()))?;
        let lead_inv = d.c[dd]
            .try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {}", d.c[dd])))?;
        let mut r = self.clone();
        let mut q = vec![Fq::lit(0); self.c.len().saturating_sub(dd)];
        while let Some(dr) = r.deg() {
            if dr < dd {
                break;
            }
            let f = r.c[dr].clone() * lead_inv.clone();
            q[dr - dd] = f.clone();
            for j in 0..=dd {
                r.c[dr - dd + j] = r.c[dr - dd + j].clone() - f.clone() * d.c[j].clone();
            }
            r.trim();
        }
        Ok((Poly::new(q), r))
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        let (_, r) = other.divrem(self)?;
        Ok(r.is_zero())
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Roots in F_{p^m} with multiplicities, by exhaustive evaluation and
    /// repeated division. The boolean reports whether the polynomial splits
    /// completely over the field.
    pub fn roots(&self, desc: FieldDesc) -> Result<(Vec<(Fq, usize)>, bool)> {
        if self.is_zero() {
            return Err(Error::Invalid("root extraction of the zero polynomial".into()));
        }
        let mut out = Vec::new();
        let mut rem = self.clone();
        for x in desc.elements() {
            let mut mult = 0;
            while rem.deg().unwrap_or(0) > 0 && rem.eval(&x).is_zero() {
                let lin = Poly::new(vec![-x.clone(), Fq::lit(1)]);
                let (q, r) = rem.divrem(&lin)?;
                debug_assert!(r.is_zero());
                rem = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((x, mult));
            }
        }
        let split = rem.deg() == Some(0);
        Ok((out, split))
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Fq::lit(1))
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl std::ops::Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fq::lit(0); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Scalar for Poly {
    fn from_int(n: i64) -> Self {
        Poly::constant(Fq::lit(n))
    }

    fn try_inv(&self) -> Option<Self> {
        match self.deg() {
            Some(0) => self.c[0].try_inv().map(Poly::constant),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldDesc {
        FieldDesc::new(5, 1).unwrap()
    }

    #[test]
    fn divrem_and_gcd() {
        let d = f5();
        // (x+1)(x+2) and (x+1)(x+3) have gcd x+1.
        let a = Poly::from_roots(&[d.from_int(-1), d.from_int(-2)]);
        let b = Poly::from_roots(&[d.from_int(-1), d.from_int(-3)]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, Poly::from_roots(&[d.from_int(-1)]));
        let (q, r) = a.divrem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_roots(&[d.from_int(-2)]));
    }

    #[test]
    fn roots_round_trip() {
        let d = FieldDesc::new(3, 2).unwrap();
        let w = d.gen().unwrap();
        let roots = vec![w.clone(), w.clone(), d.from_int(2)];
        let p = Poly::from_roots(&roots);
        let (found, split) = p.roots(d).unwrap();
        assert!(split);
        let mut expanded: Vec<u64> = found
            .iter()
            .flat_map(|(r, m)| std::iter::repeat(r.residue_code()).take(*m))
            .collect();
        expanded.sort_unstable();
        let mut expected: Vec<u64> = roots.iter().map(|r| r.residue_code()).collect();
        expected.sort_unstable();
        assert_eq!(expanded, expected);
    }

    #[test]
    fn product_over_prime_field_orbit() {
        // ∏_{j in F_p} (x + c − j) = x^p − x + (c^p − c): the classical
        // identity behind every restrictedness computation here.
        for (p, mm) in [(3u32, 2u32), (5, 2)] {
            let d = FieldDesc::new(p, mm).unwrap();
            let c = d.gen().unwrap() + d.from_int(1);
            let roots: Vec<Fq> = (0..p).map(|j| d.from_int(j as i64) - c.clone()).collect();
            let prod = Poly::from_roots(&roots);
            let mut expect = vec![Fq::lit(0); p as usize + 1];
            expect[p as usize] = d.from_int(1);
            expect[1] = d.from_int(-1);
            expect[0] = c.pow(p as u64) - c.clone();
            assert_eq!(prod, Poly::new(expect));
        }
    }

    #[test]
    fn shift_arg_is_substitution() {
        let d = f5();
        let p = Poly::new(vec![d.from_int(1), d.from_int(3), d.from_int(1)]);
        let a = d.from_int(2);
        let shifted = p.shift_arg(&a);
        for x in d.elements() {
            assert_eq!(shifted.eval(&x), p.eval(&(x.clone() + a.clone())));
        }
    }
}
