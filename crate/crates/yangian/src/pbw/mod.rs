//! PBW normal forms for the super Yangian of gl(1|1).
//!
//! Elements are finite linear combinations of ordered supermonomials in the
//! Drinfeld generators d1, d2, e, f. The fixed block order is
//! f < d1 < d2 < e, ascending superscripts inside each block; e- and
//! f-letters are odd and square to zero, d-letters are even and commute with
//! each other. Multiplication straightens words with the defining relations;
//! see [`rewrite`] for the rules.

pub mod center;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::field::Fq;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    F,
    D1,
    D2,
    E,
}

impl Kind {
    pub fn is_odd(self) -> bool {
        matches!(self, Kind::F | Kind::E)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::F => "f",
            Kind::D1 => "d1",
            Kind::D2 => "d2",
            Kind::E => "e",
        }
    }

    pub fn all() -> [Kind; 4] {
        [Kind::F, Kind::D1, Kind::D2, Kind::E]
    }
}

/// One Drinfeld generator g^(r). Superscripts start at 1; the r = 0
/// coefficients are the unit (for d) or zero (for e, f) and never stored.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen {
    pub kind: Kind,
    pub sup: u16,
}

impl Gen {
    pub fn new(kind: Kind, sup: u16) -> Gen {
        assert!(sup >= 1, "superscripts start at 1");
        Gen { kind, sup }
    }

    pub fn f(r: u16) -> Gen {
        Gen::new(Kind::F, r)
    }

    pub fn d1(r: u16) -> Gen {
        Gen::new(Kind::D1, r)
    }

    pub fn d2(r: u16) -> Gen {
        Gen::new(Kind::D2, r)
    }

    pub fn e(r: u16) -> Gen {
        Gen::new(Kind::E, r)
    }

    pub fn is_odd(self) -> bool {
        self.kind.is_odd()
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.name(), self.sup)
    }
}

/// An ordered supermonomial: strictly increasing generators with positive
/// exponents, odd generators with exponent exactly 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    factors: SmallVec<[(Gen, u16); 8]>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn single(g: Gen) -> Monomial {
        let mut factors = SmallVec::new();
        factors.push((g, 1));
        Monomial { factors }
    }

    pub fn from_factors(factors: Vec<(Gen, u16)>) -> Monomial {
        let m = Monomial {
            factors: factors.into(),
        };
        m.check();
        m
    }

    fn check(&self) {
        for w in self.factors.windows(2) {
            assert!(w[0].0 < w[1].0, "factors out of order");
        }
        for &(g, e) in &self.factors {
            assert!(e >= 1);
            assert!(!g.is_odd() || e == 1, "odd generator with exponent > 1");
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Gen, u16)] {
        &self.factors
    }

    pub fn weight(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(g, e)| g.sup as u64 * e as u64)
            .sum()
    }

    pub fn parity(&self) -> u8 {
        (self
            .factors
            .iter()
            .filter(|(g, _)| g.is_odd())
            .count()
            % 2) as u8
    }

    /// e-count minus f-count.
    pub fn z_degree(&self) -> i64 {
        self.factors
            .iter()
            .map(|&(g, e)| match g.kind {
                Kind::E => e as i64,
                Kind::F => -(e as i64),
                _ => 0,
            })
            .sum()
    }

    pub fn is_d_sector(&self) -> bool {
        self.factors
            .iter()
            .all(|(g, _)| matches!(g.kind, Kind::D1 | Kind::D2))
    }

    /// No d-exponent reaches p; e/f exponents are 1 by construction.
    pub fn is_restricted(&self, p: u32) -> bool {
        self.factors
            .iter()
            .all(|&(g, e)| g.is_odd() || (e as u32) < p)
    }

    pub fn last(&self) -> Option<(Gen, u16)> {
        self.factors.last().copied()
    }

    /// Removes one copy of the last generator.
    pub fn split_last(&self) -> (Monomial, Gen) {
        let mut m = self.clone();
        let last = m.factors.last_mut().expect("nonempty monomial");
        let g = last.0;
        if last.1 > 1 {
            last.1 -= 1;
        } else {
            m.factors.pop();
        }
        (m, g)
    }

    /// Appends a generator strictly above the current last one.
    pub fn appended(&self, g: Gen) -> Monomial {
        debug_assert!(self.last().map_or(true, |(h, _)| h < g));
        let mut m = self.clone();
        m.factors.push((g, 1));
        m
    }

    /// Raises the exponent of the (even) last generator.
    pub fn bumped_last(&self) -> Monomial {
        let mut m = self.clone();
        let last = m.factors.last_mut().expect("nonempty monomial");
        assert!(!last.0.is_odd());
        last.1 += 1;
        m
    }

    /// Inserts an even generator at its sorted position (commuting merge).
    pub fn merged(&self, g: Gen) -> Monomial {
        assert!(!g.is_odd());
        let mut m = self.clone();
        match m.factors.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(i) => m.factors[i].1 += 1,
            Err(i) => m.factors.insert(i, (g, 1)),
        }
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(g, e) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A linear combination of PBW monomials with coefficients in a scalar ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<K: Scalar = Fq> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> Element<K> {
    pub fn zero() -> Element<K> {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Element<K> {
        Element::term(Monomial::one(), K::one())
    }

    pub fn term(m: Monomial, k: K) -> Element<K> {
        let mut e = Element::zero();
        e.add_term(m, k);
        e
    }

    pub fn gen(g: Gen) -> Element<K> {
        Element::term(Monomial::single(g), K::one())
    }

    pub fn scalar(k: K) -> Element<K> {
        Element::term(Monomial::one(), k)
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

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, m: Monomial, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &Element<K>) {
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k.clone());
        }
    }

    pub fn scale(&self, k: &K) -> Element<K> {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Common parity of all monomials, if there is one. Zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Some(0);
        };
        let p = first.parity();
        it.all(|m| m.parity() == p).then_some(p)
    }

    /// Common weight of all monomials, if there is one.
    pub fn weight(&self) -> Option<u64> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight();
        it.all(|m| m.weight() == first).then_some(first)
    }

    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    pub fn is_d_sector(&self) -> bool {
        self.terms.keys().all(Monomial::is_d_sector)
    }

    /// x y - (-1)^{|x||y|} y x for parity-homogeneous x, y.
    pub fn super_commutator(&self, other: &Element<K>) -> Element<K> {
        let px = self.parity().expect("left factor not parity-homogeneous");
        let py = other.parity().expect("right factor not parity-homogeneous");
        let xy = self.clone() * other.clone();
        let yx = other.clone() * self.clone();
        if px == 1 && py == 1 {
            xy + yx
        } else {
            xy - yx
        }
    }
}

/// Normal form of a word in the generators.
pub fn normal_form<K: Scalar>(word: &[Gen]) -> Element<K> {
    let mut budget = rewrite::Budget::new();
    let mut cur = Element::one();
    for &g in word {
        let mut next = Element::zero();
        for (m, c) in &cur.terms {
            rewrite::mono_times_gen(m, g, c, &mut next, &mut budget);
        }
        cur = next;
    }
    cur
}

impl<K: Scalar> std::ops::Add for Element<K> {
    type Output = Element<K>;
    fn add(mut self, rhs: Element<K>) -> Element<K> {
        for (m, k) in rhs.terms {
            self.add_term(m, k);
        }
        self
    }
}

impl<K: Scalar> std::ops::Sub for Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: Element<K>) -> Element<K> {
        self + (-rhs)
    }
}

impl<K: Scalar> std::ops::Neg for Element<K> {
    type Output = Element<K>;
    fn neg(mut self) -> Element<K> {
        for k in self.terms.values_mut() {
            *k = -k.clone();
        }
        self
    }
}

impl<K: Scalar> std::ops::Mul for Element<K> {
    type Output = Element<K>;
    fn mul(self, rhs: Element<K>) -> Element<K> {
        let mut budget = rewrite::Budget::new();
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca.clone() * cb.clone();
                rewrite::mono_times_mono(ma, mb, &c, &mut out, &mut budget);
            }
        }
        out
    }
}

impl<K: Scalar> Zero for Element<K> {
    fn zero() -> Element<K> {
        Element::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Scalar> One for Element<K> {
    fn one() -> Element<K> {
        Element::one()
    }
}

impl<K: Scalar> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, k) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<K: Scalar> Scalar for Element<K> {
    fn from_int(n: i64) -> Element<K> {
        Element::scalar(K::from_int(n))
    }

    fn try_inv(&self) -> Option<Element<K>> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, k) = self.terms.iter().next().unwrap();
        if !m.is_one() {
            return None;
        }
        Some(Element::scalar(k.try_inv()?))
    }
}
