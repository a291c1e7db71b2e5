//! Tensor squares and cubes of the algebra, with the Koszul sign rule
//! (x ⊗ y)(x' ⊗ y') = (-1)^{|y||x'|} xx' ⊗ yy'.
//!
//! Only parity-homogeneous monomial legs are stored, so the sign is always
//! defined term by term.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::Fq;
use crate::pbw::{Element, Monomial};
use crate::scalar::Scalar;
use crate::series::Tail;

#[derive(Clone, PartialEq, Debug)]
pub struct Tensor2<K: Scalar = Fq> {
    terms: BTreeMap<(Monomial, Monomial), K>,
}

impl<K: Scalar> Tensor2<K> {
    pub fn zero() -> Tensor2<K> {
        Tensor2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Tensor2<K> {
        Tensor2::term(Monomial::one(), Monomial::one(), K::one())
    }

    pub fn term(left: Monomial, right: Monomial, k: K) -> Tensor2<K> {
        let mut t = Tensor2::zero();
        t.add_term(left, right, k);
        t
    }

    pub fn scalar(k: K) -> Tensor2<K> {
        Tensor2::term(Monomial::one(), Monomial::one(), k)
    }

    /// x ⊗ y for two elements, no sign (a single parallel application).
    pub fn of(x: &Element<K>, y: &Element<K>) -> Tensor2<K> {
        let mut t = Tensor2::zero();
        for (mx, cx) in x.iter() {
            for (my, cy) in y.iter() {
                t.add_term(mx.clone(), my.clone(), cx.clone() * cy.clone());
            }
        }
        t
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

    pub fn iter(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &K)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + k;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Tensor2<K>) {
        for ((l, r), k) in &other.terms {
            self.add_term(l.clone(), r.clone(), k.clone());
        }
    }

    pub fn scale(&self, k: &K) -> Tensor2<K> {
        let mut out = Tensor2::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Swap of the two legs with the Koszul sign (-1)^{|x||y|}.
    pub fn flipped(&self) -> Tensor2<K> {
        let mut out = Tensor2::zero();
        for ((l, r), c) in &self.terms {
            let c = if l.parity() == 1 && r.parity() == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(r.clone(), l.clone(), c);
        }
        out
    }
}

impl<K: Scalar> std::ops::Add for Tensor2<K> {
    type Output = Tensor2<K>;
    fn add(mut self, rhs: Tensor2<K>) -> Tensor2<K> {
        for ((l, r), k) in rhs.terms {
            self.add_term(l, r, k);
        }
        self
    }
}

impl<K: Scalar> std::ops::Sub for Tensor2<K> {
    type Output = Tensor2<K>;
    fn sub(self, rhs: Tensor2<K>) -> Tensor2<K> {
        self + (-rhs)
    }
}

impl<K: Scalar> std::ops::Neg for Tensor2<K> {
    type Output = Tensor2<K>;
    fn neg(mut self) -> Tensor2<K> {
        for k in self.terms.values_mut() {
            *k = -k.clone();
        }
        self
    }
}

impl<K: Scalar> std::ops::Mul for Tensor2<K> {
    type Output = Tensor2<K>;
    fn mul(self, rhs: Tensor2<K>) -> Tensor2<K> {
        let mut out = Tensor2::zero();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &rhs.terms {
                let mut c = ca.clone() * cb.clone();
                if ra.parity() == 1 && lb.parity() == 1 {
                    c = -c;
                }
                let left = Element::term(la.clone(), K::one()) * Element::term(lb.clone(), K::one());
                let right =
                    Element::term(ra.clone(), K::one()) * Element::term(rb.clone(), K::one());
                for (ml, cl) in left.iter() {
                    for (mr, cr) in right.iter() {
                        out.add_term(
                            ml.clone(),
                            mr.clone(),
                            c.clone() * cl.clone() * cr.clone(),
                        );
                    }
                }
            }
        }
        out
    }
}

impl<K: Scalar> Zero for Tensor2<K> {
    fn zero() -> Tensor2<K> {
        Tensor2::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Scalar> One for Tensor2<K> {
    fn one() -> Tensor2<K> {
        Tensor2::one()
    }
}

impl<K: Scalar> fmt::Display for Tensor2<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((l, r), k) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{k}*({l})(x)({r})")?;
        }
        Ok(())
    }
}

impl<K: Scalar> Scalar for Tensor2<K> {
    fn from_int(n: i64) -> Tensor2<K> {
        Tensor2::scalar(K::from_int(n))
    }

    fn try_inv(&self) -> Option<Tensor2<K>> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((l, r), k) = self.terms.iter().next().unwrap();
        if !l.is_one() || !r.is_one() {
            return None;
        }
        Some(Tensor2::scalar(k.try_inv()?))
    }
}

/// The coefficient-wise tensor x(u) ⊗ y(u) of two series, i.e. the image of
/// a product-free expression under "apply to both legs": coefficient r is
/// sum_{a+b=r} x^(a) ⊗ y^(b).
pub fn tensor_of_tails<K: Scalar>(
    x: &Tail<Element<K>>,
    y: &Tail<Element<K>>,
    n: usize,
) -> Tail<Tensor2<K>> {
    assert!(x.order() >= n && y.order() >= n);
    let mut out = vec![Tensor2::zero(); n + 1];
    for a in 0..=n {
        if x.coeff(a).is_zero() {
            continue;
        }
        for b in 0..=n - a {
            out[a + b].add_assign(&Tensor2::of(x.coeff(a), y.coeff(b)));
        }
    }
    Tail::new(out)
}

/// A triple tensor; used additively for coassociativity checks, so there is
/// no product implementation.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor3<K: Scalar = Fq> {
    terms: BTreeMap<(Monomial, Monomial, Monomial), K>,
}

impl<K: Scalar> Tensor3<K> {
    pub fn zero() -> Tensor3<K> {
        Tensor3 {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Monomial, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry((a, b, c)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + k;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Δ applied to the left leg: embeds (x ⊗ y) ⊗ z termwise, no signs.
    pub fn from_t2_left(t2: &Tensor2<K>, z: &Monomial, k: &K) -> Tensor3<K> {
        let mut out = Tensor3::zero();
        for ((a, b), c) in t2.iter() {
            out.add_term(a.clone(), b.clone(), z.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Δ applied to the right leg: embeds x ⊗ (y ⊗ z) termwise, no signs.
    pub fn from_t2_right(x: &Monomial, t2: &Tensor2<K>, k: &K) -> Tensor3<K> {
        let mut out = Tensor3::zero();
        for ((b, c), cc) in t2.iter() {
            out.add_term(x.clone(), b.clone(), c.clone(), cc.clone() * k.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Tensor3<K>) {
        for ((a, b, c), k) in &other.terms {
            self.add_term(a.clone(), b.clone(), c.clone(), k.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDesc;
    use crate::pbw::Gen;

    type T2 = Tensor2<Fq>;

    #[test]
    fn koszul_sign_fires_on_odd_odd() {
        let desc = FieldDesc::new(3, 1).unwrap();
        // (1 ⊗ e1)(f1 ⊗ 1) = -(f1 ⊗ e1)
        let a = T2::term(Monomial::one(), Monomial::single(Gen::e(1)), desc.one());
        let b = T2::term(Monomial::single(Gen::f(1)), Monomial::one(), desc.one());
        let prod = a * b;
        let expect = T2::term(
            Monomial::single(Gen::f(1)),
            Monomial::single(Gen::e(1)),
            -desc.one(),
        );
        assert_eq!(prod, expect);
        // while (f1 ⊗ 1)(1 ⊗ e1) has no sign
        let a = T2::term(Monomial::single(Gen::f(1)), Monomial::one(), desc.one());
        let b = T2::term(Monomial::one(), Monomial::single(Gen::e(1)), desc.one());
        assert_eq!(a * b, -expect.clone());
    }

    #[test]
    fn tensor_square_is_associative() {
        let desc = FieldDesc::new(5, 1).unwrap();
        let one = desc.one();
        let a = T2::term(Monomial::single(Gen::e(1)), Monomial::single(Gen::f(2)), one.clone())
            + T2::term(Monomial::one(), Monomial::single(Gen::d1(1)), one.clone());
        let b = T2::term(Monomial::single(Gen::f(1)), Monomial::single(Gen::e(2)), one.clone());
        let c = T2::term(Monomial::single(Gen::d2(1)), Monomial::single(Gen::f(3)), one.clone())
            + T2::scalar(desc.from_int(2));
        let lhs = (a.clone() * b.clone()) * c.clone();
        let rhs = a * (b * c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn flip_is_an_involution_and_algebra_map_on_samples() {
        let desc = FieldDesc::new(3, 1).unwrap();
        let one = desc.one();
        let a = T2::term(Monomial::single(Gen::e(1)), Monomial::single(Gen::f(1)), one.clone());
        let b = T2::term(Monomial::single(Gen::f(2)), Monomial::single(Gen::e(2)), one.clone());
        assert_eq!(a.flipped().flipped(), a);
        // the flip is an algebra homomorphism for the Koszul product
        assert_eq!((a.clone() * b.clone()).flipped(), a.flipped() * b.flipped());
    }
}
