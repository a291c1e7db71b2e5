//! Arithmetic in F_{p^m} for odd primes p.
//!
//! Elements carry their field descriptor inline. Plain integers (relation
//! constants, binomial coefficients, `Zero::zero()`, `One::one()`) live in an
//! unbound `Lit` variant that binds to a concrete field the first time it
//! meets a bound element; this keeps the generic containers free of any
//! global field context.
//!
//! The extension F_{p^m} is presented as F_p[w] modulo the lexicographically
//! least monic irreducible polynomial of degree m (least when the coefficient
//! tuple is read as a base-p number, low degree first), so a given (p, m)
//! always names the same field.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

type Coeffs = SmallVec<[u32; 2]>;

const MAX_PRIME: u32 = 1 << 20;
const MAX_EXT_DEGREE: u32 = 6;

/// A runtime description of F_{p^m}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    pub p: u32,
    pub m: u32,
}

impl FieldDesc {
    /// Validates the descriptor: p must be an odd prime, m ≥ 1.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if p < 3 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::FieldMismatch(format!(
                "p = {p} is not an odd prime in range 3..={MAX_PRIME}"
            )));
        }
        if m == 0 || m > MAX_EXT_DEGREE {
            return Err(Error::FieldMismatch(format!(
                "extension degree m = {m} out of range 1..={MAX_EXT_DEGREE}"
            )));
        }
        let desc = FieldDesc { p, m };
        // Force the modulus search now so later arithmetic cannot fail.
        if m > 1 {
            desc.modulus();
        }
        Ok(desc)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    /// Non-leading coefficients [a_0, ..., a_{m-1}] of the modulus
    /// x^m + a_{m-1} x^{m-1} + ... + a_0. Empty for m = 1.
    pub fn modulus(&self) -> Vec<u32> {
        if self.m == 1 {
            return Vec::new();
        }
        static CACHE: Mutex<Option<HashMap<(u32, u32), Vec<u32>>>> = Mutex::new(None);
        let mut guard = CACHE.lock().unwrap();
        let cache = guard.get_or_insert_with(HashMap::new);
        if let Some(v) = cache.get(&(self.p, self.m)) {
            return v.clone();
        }
        let v = least_irreducible(self.p, self.m);
        cache.insert((self.p, self.m), v.clone());
        v
    }

    pub fn zero(&self) -> Fq {
        Fq::El {
            p: self.p,
            c: smallvec![0; self.m as usize],
        }
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let mut c: Coeffs = smallvec![0; self.m as usize];
        c[0] = n.rem_euclid(self.p as i64) as u32;
        Fq::El { p: self.p, c }
    }

    /// The class of w (only meaningful for m ≥ 2).
    pub fn gen(&self) -> Result<Fq> {
        if self.m < 2 {
            return Err(Error::Invalid(
                "the prime field has no extension generator w".into(),
            ));
        }
        let mut c: Coeffs = smallvec![0; self.m as usize];
        c[1] = 1;
        Ok(Fq::El { p: self.p, c })
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Fq> {
        if coeffs.len() > self.m as usize {
            return Err(Error::FieldMismatch(format!(
                "{} coefficients for extension degree {}",
                coeffs.len(),
                self.m
            )));
        }
        let mut c: Coeffs = smallvec![0; self.m as usize];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x.rem_euclid(self.p as i64) as u32;
        }
        Ok(Fq::El { p: self.p, c })
    }

    /// All q elements, in base-p counting order. Exhaustive loops (root
    /// extraction, spinning) stay desk-scale because q does too.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        let q = self.q();
        (0..q).map(move |code| self.decode(code))
    }

    pub fn decode(&self, mut code: u64) -> Fq {
        let mut c: Coeffs = smallvec![0; self.m as usize];
        for slot in c.iter_mut() {
            *slot = (code % self.p as u64) as u32;
            code /= self.p as u64;
        }
        Fq::El { p: self.p, c }
    }
}

/// An element of F_{p^m}, or an unbound integer literal.
#[derive(Clone, Debug)]
pub enum Fq {
    Lit(i64),
    El { p: u32, c: Coeffs },
}

impl Fq {
    pub fn lit(n: i64) -> Fq {
        Fq::Lit(n)
    }

    pub fn is_lit(&self) -> bool {
        matches!(self, Fq::Lit(_))
    }

    pub fn desc(&self) -> Option<FieldDesc> {
        match self {
            Fq::Lit(_) => None,
            Fq::El { p, c } => Some(FieldDesc {
                p: *p,
                m: c.len() as u32,
            }),
        }
    }

    /// Binds a literal into the given field; bound elements are promoted from
    /// the prime subfield if needed.
    pub fn bind(&self, desc: FieldDesc) -> Fq {
        match self {
            Fq::Lit(n) => desc.from_int(*n),
            Fq::El { p, c } => {
                assert_eq!(*p, desc.p, "element of F_{p} bound into characteristic {}", desc.p);
                if c.len() as u32 == desc.m {
                    self.clone()
                } else if c.len() == 1 {
                    let mut cc: Coeffs = smallvec![0; desc.m as usize];
                    cc[0] = c[0];
                    Fq::El { p: *p, c: cc }
                } else {
                    panic!(
                        "cannot embed F_{}^{} into F_{}^{}",
                        p,
                        c.len(),
                        desc.p,
                        desc.m
                    )
                }
            }
        }
    }

    fn unify(a: &Fq, b: &Fq) -> Option<(Fq, Fq)> {
        match (a.desc(), b.desc()) {
            (None, None) => None,
            (Some(d), None) => Some((a.clone(), b.bind(d))),
            (None, Some(d)) => Some((a.bind(d), b.clone())),
            (Some(da), Some(db)) => {
                assert_eq!(da.p, db.p, "mixed characteristics {} and {}", da.p, db.p);
                let d = if da.m >= db.m { da } else { db };
                Some((a.bind(d), b.bind(d)))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Fq {
        let mut base = self.clone();
        let mut acc = match self.desc() {
            Some(d) => d.one(),
            None => Fq::Lit(1),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// x ↦ x^p, the Frobenius of F_{p^m} over F_p.
    pub fn frobenius(&self) -> Fq {
        match self.desc() {
            Some(d) => self.pow(d.p as u64),
            None => self.clone(),
        }
    }

    /// Membership in the prime subfield: exactly the Frobenius fixed points.
    pub fn in_prime_field(&self) -> bool {
        self.frobenius() == *self
    }

    pub fn inv(&self) -> Result<Fq> {
        self.try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("{self}")))
    }

    /// Base-p digit code; panics on unbound literals (sort keys are only
    /// taken in contexts where everything is bound).
    pub fn residue_code(&self) -> u64 {
        match self {
            Fq::Lit(_) => panic!("residue_code of unbound literal"),
            Fq::El { p, c } => {
                let mut code = 0u64;
                for &x in c.iter().rev() {
                    code = code * (*p as u64) + x as u64;
                }
                code
            }
        }
    }

    /// Coefficient sequence over the prime subfield, e.g. "2" or "2,1".
    pub fn coeff_string(&self) -> String {
        match self {
            Fq::Lit(n) => format!("{n}"),
            Fq::El { c, .. } => c
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        match (self.desc(), other.desc()) {
            (Some(da), Some(db)) if da.p != db.p => false,
            _ => match Fq::unify(self, other) {
                None => {
                    let (Fq::Lit(a), Fq::Lit(b)) = (self, other) else {
                        unreachable!()
                    };
                    a == b
                }
                Some((Fq::El { c: ca, .. }, Fq::El { c: cb, .. })) => ca == cb,
                _ => unreachable!(),
            },
        }
    }
}

impl Eq for Fq {}

impl std::ops::Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        match Fq::unify(&self, &rhs) {
            None => {
                let (Fq::Lit(a), Fq::Lit(b)) = (&self, &rhs) else {
                    unreachable!()
                };
                Fq::Lit(a.checked_add(*b).expect("literal overflow"))
            }
            Some((Fq::El { p, c: mut ca }, Fq::El { c: cb, .. })) => {
                for (x, y) in ca.iter_mut().zip(cb.iter()) {
                    *x = (*x + *y) % p;
                }
                Fq::El { p, c: ca }
            }
            _ => unreachable!(),
        }
    }
}

impl std::ops::Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        self + (-rhs)
    }
}

impl std::ops::Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        match self {
            Fq::Lit(n) => Fq::Lit(n.checked_neg().expect("literal overflow")),
            Fq::El { p, mut c } => {
                for x in c.iter_mut() {
                    *x = (p - *x) % p;
                }
                Fq::El { p, c }
            }
        }
    }
}

impl std::ops::Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        match Fq::unify(&self, &rhs) {
            None => {
                let (Fq::Lit(a), Fq::Lit(b)) = (&self, &rhs) else {
                    unreachable!()
                };
                Fq::Lit(a.checked_mul(*b).expect("literal overflow"))
            }
            Some((Fq::El { p, c: ca }, Fq::El { c: cb, .. })) => {
                let m = ca.len();
                if m == 1 {
                    let v = (ca[0] as u64 * cb[0] as u64 % p as u64) as u32;
                    return Fq::El { p, c: smallvec![v] };
                }
                let desc = FieldDesc { p, m: m as u32 };
                let modulus = desc.modulus();
                // Schoolbook product then reduction by the monic modulus.
                let mut prod = vec![0u64; 2 * m - 1];
                for (i, &x) in ca.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
                    }
                }
                for i in (m..2 * m - 1).rev() {
                    let coeff = prod[i];
                    if coeff == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (j, &a) in modulus.iter().enumerate() {
                        let sub = coeff * a as u64 % p as u64;
                        prod[i - m + j] = (prod[i - m + j] + p as u64 - sub) % p as u64;
                    }
                }
                let c: Coeffs = prod[..m].iter().map(|&x| x as u32).collect();
                Fq::El { p, c }
            }
            _ => unreachable!(),
        }
    }
}

impl Zero for Fq {
    fn zero() -> Self {
        Fq::Lit(0)
    }
    fn is_zero(&self) -> bool {
        match self {
            Fq::Lit(n) => *n == 0,
            Fq::El { c, .. } => c.iter().all(|&x| x == 0),
        }
    }
}

impl One for Fq {
    fn one() -> Self {
        Fq::Lit(1)
    }
    fn is_one(&self) -> bool {
        match self {
            Fq::Lit(n) => *n == 1,
            Fq::El { c, .. } => c[0] == 1 && c[1..].iter().all(|&x| x == 0),
        }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fq::Lit(n) => write!(f, "{n}"),
            Fq::El { c, .. } => {
                if c.iter().all(|&x| x == 0) {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, &x) in c.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{x}")?,
                        1 if x == 1 => write!(f, "w")?,
                        1 => write!(f, "{x}w")?,
                        _ if x == 1 => write!(f, "w^{i}")?,
                        _ => write!(f, "{x}w^{i}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl Scalar for Fq {
    fn from_int(n: i64) -> Self {
        Fq::Lit(n)
    }

    fn try_inv(&self) -> Option<Self> {
        match self {
            Fq::Lit(0) => None,
            Fq::Lit(1) => Some(Fq::Lit(1)),
            Fq::Lit(-1) => Some(Fq::Lit(-1)),
            Fq::Lit(n) => panic!("inverse of unbound literal {n}: bind it to a field first"),
            Fq::El { .. } => {
                if self.is_zero() {
                    None
                } else {
                    let q = self.desc().unwrap().q();
                    Some(self.pow(q - 2))
                }
            }
        }
    }
}

/// C(n, k) mod p by Lucas' theorem: the product of the digit-wise binomials
/// in base p.
pub fn binom_mod(p: u32, mut n: u64, mut k: u64) -> u32 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p as u64, k % p as u64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(p, nd as u32, kd as u32) as u64 % p as u64;
        n /= p as u64;
        k /= p as u64;
    }
    acc as u32
}

/// C(n, k) mod p for 0 ≤ k ≤ n < p, by the multiplicative formula.
fn small_binom(p: u32, n: u32, k: u32) -> u32 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=k as u64 {
        num = num * ((n as u64 - k as u64 + i) % p as u64) % p as u64;
        den = den * (i % p as u64) % p as u64;
    }
    let den_inv = mod_pow(den, p as u64 - 2, p as u64);
    (num * den_inv % p as u64) as u32
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Parses a field element: integers, the extension generator `w`, powers
/// `w^k`, products like `2*w` or `2w`, and sums and differences of terms,
/// e.g. "7", "-2", "w^3+2w+1".
pub fn parse_element(desc: FieldDesc, src: &str) -> Result<Fq> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = s.as_bytes();
    let mut acc = desc.zero();
    let mut i = 0;
    loop {
        let mut sign = 1i64;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            Some(
                s[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in {src:?}")))?,
            )
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let term = if i < bytes.len() && bytes[i] == b'w' {
            i += 1;
            let mut exp = 1u64;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let st = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == st {
                    return Err(Error::Parse(format!("missing exponent in {src:?}")));
                }
                exp = s[st..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {src:?}")))?;
            }
            desc.gen()?.pow(exp) * desc.from_int(coeff.unwrap_or(1) * sign)
        } else {
            match coeff {
                Some(c) => desc.from_int(c * sign),
                None => return Err(Error::Parse(format!("expected a term in {src:?}"))),
            }
        };
        acc = acc + term;
        if i >= bytes.len() {
            return Ok(acc);
        }
        if bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(Error::Parse(format!(
                "unexpected {:?} in {src:?}",
                s[i..].chars().next().unwrap()
            )));
        }
    }
}

// ---------------------------------------------------------------------------
// Modulus search. Polynomials here are dense coefficient vectors over F_p,
// low degree first, used only for finding and certifying the modulus.

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut c = Vec::with_capacity(m as usize);
        let mut x = code;
        for _ in 0..m {
            c.push((x % p as u64) as u32);
            x /= p as u64;
        }
        if poly_is_irreducible(p, &c) {
            return c;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Irreducibility of the monic polynomial x^m + Σ c_i x^i over F_p, by the
/// Frobenius criterion: x^{p^m} ≡ x mod f, and gcd(x^{p^{m/q}} − x, f) = 1
/// for every prime q dividing m.
fn poly_is_irreducible(p: u32, c: &[u32]) -> bool {
    let m = c.len() as u32;
    if m == 1 {
        return true;
    }
    if !is_poly_x(&frobenius_power(p, c, m)) {
        return false;
    }
    for q in prime_divisors(m) {
        let mut h = frobenius_power(p, c, m / q);
        // h ← h − x
        h[1] = (h[1] + p - 1) % p;
        if poly_gcd_deg(p, c, &h) != 0 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product of two polynomials of degree < m, reduced mod the monic
/// polynomial with non-leading coefficients c.
fn poly_mulmod(p: u32, c: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let m = c.len();
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for i in (m..2 * m - 1).rev() {
        let coeff = prod[i];
        if coeff == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &cj) in c.iter().enumerate() {
            let sub = coeff * cj as u64 % p as u64;
            prod[i - m + j] = (prod[i - m + j] + p as u64 - sub) % p as u64;
        }
    }
    prod[..m].iter().map(|&x| x as u32).collect()
}

/// x^{p^d} mod the monic polynomial with non-leading coefficients c (needs
/// deg ≥ 2): d rounds of raising to the p-th power by square-and-multiply.
fn frobenius_power(p: u32, c: &[u32], d: u32) -> Vec<u32> {
    let m = c.len();
    let mut acc = vec![0u32; m];
    acc[1] = 1;
    for _ in 0..d {
        let mut out = vec![0u32; m];
        out[0] = 1;
        let mut base = acc.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                out = poly_mulmod(p, c, &out, &base);
            }
            base = poly_mulmod(p, c, &base, &base);
            e >>= 1;
        }
        acc = out;
    }
    acc
}

fn is_poly_x(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &x)| x == u32::from(i == 1))
}

/// Degree of gcd(f, h) where f is monic with non-leading coefficients c and h
/// has degree < deg f. Returns 0 when coprime.
fn poly_gcd_deg(p: u32, c: &[u32], h: &[u32]) -> usize {
    let mut f: Vec<u32> = c.to_vec();
    f.push(1);
    let mut g: Vec<u32> = h.to_vec();
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let r = poly_rem(p, &f, &g);
        f = g;
        g = r;
    }
    f.len().saturating_sub(1)
}

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db] as u64, p as u64 - 2, p as u64) as u32;
    while r.len() > db {
        let dr = r.len() - 1;
        let coeff = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if coeff != 0 {
            for j in 0..=db {
                let sub = coeff as u64 * b[j] as u64 % p as u64;
                let idx = dr - db + j;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    trim(&mut r);
    r
}
