//! The RTT presentation: generating series t_ij(u), their Gauss
//! decomposition, the inverse-matrix series t'_ij(u), and the quadratic
//! exchange relations.
//!
//! With row parities |1| = 0, |2| = 1, the defining relation reads, for all
//! r, s >= 0 and t^(0)_ij = delta_ij:
//!
//!   [t_ij^(r), t_kl^(s)] = (-1)^{|i||j| + |i||k| + |j||k|} *
//!       sum_{t=0}^{min(r,s)-1} ( t_kj^(t) t_il^(r+s-1-t)
//!                              - t_kj^(r+s-1-t) t_il^(t) )
//!
//! where the bracket is the supercommutator for the parities |i| + |j|.

use std::collections::HashMap;

use crate::field::{FieldDesc, Fq};
use crate::pbw::center::{d_series, e_series, f_series};
use crate::pbw::Element;
use crate::scalar::Scalar;
use crate::series::Tail;
use crate::SymbolicTail;

pub fn parity(i: u8) -> u8 {
    match i {
        1 => 0,
        2 => 1,
        _ => panic!("row index must be 1 or 2"),
    }
}

/// The four series t_ij(u) through order n, as the Gauss product
/// T = F D E with F, E unitriangular and D = diag(d1, d2):
/// t11 = d1, t12 = d1 e, t21 = f d1, t22 = f d1 e + d2.
pub fn t_matrix(desc: FieldDesc, n: usize) -> [[SymbolicTail; 2]; 2] {
    let d1 = d_series(desc, 1, n);
    let d2 = d_series(desc, 2, n);
    let e = e_series(desc, n);
    let f = f_series(desc, n);
    let t11 = d1.clone();
    let t12 = d1.mul(&e, n);
    let t21 = f.mul(&d1, n);
    let t22 = f.mul(&t12, n).add(&d2);
    [[t11, t12], [t21, t22]]
}

/// The entries of T(u)^{-1} = E^{-1} D^{-1} F^{-1}:
/// t'11 = d1^-1 + e d2^-1 f, t'12 = -e d2^-1, t'21 = -d2^-1 f, t'22 = d2^-1.
pub fn t_prime_matrix(desc: FieldDesc, n: usize) -> [[SymbolicTail; 2]; 2] {
    let d1i = d_series(desc, 1, n).inv(n).expect("d1 starts at 1");
    let d2i = d_series(desc, 2, n).inv(n).expect("d2 starts at 1");
    let e = e_series(desc, n);
    let f = f_series(desc, n);
    let ed2i = e.mul(&d2i, n);
    let t11 = d1i.add(&ed2i.mul(&f, n));
    let t12 = ed2i.neg();
    let t21 = d2i.mul(&f, n).neg();
    let t22 = d2i;
    [[t11, t12], [t21, t22]]
}

/// Gauss data extracted back out of any 2x2 series with invertible t11:
/// d1 = t11, e = t11^-1 t12, f = t21 t11^-1, d2 = t22 - t21 t11^-1 t12.
pub struct GaussTails<R> {
    pub d1: Tail<R>,
    pub d2: Tail<R>,
    pub e: Tail<R>,
    pub f: Tail<R>,
}

pub fn gauss_tails<R: Scalar>(t: &[[Tail<R>; 2]; 2], n: usize) -> GaussTails<R> {
    let t11i = t[0][0].inv(n).expect("t11 must start at an invertible term");
    let d1 = t[0][0].truncated(n);
    let e = t11i.mul(&t[0][1], n);
    let f = t[1][0].mul(&t11i, n);
    let d2 = t[1][1].sub(&t[1][0].mul(&t11i, n).mul(&t[0][1], n));
    GaussTails { d1, d2, e, f }
}

/// A failing instance of the exchange relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RttWitness {
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub l: u8,
    pub r: usize,
    pub s: usize,
}

type ProductCache = HashMap<(u8, u8, usize, u8, u8, usize), Element<Fq>>;

fn cached_product<'c>(
    cache: &'c mut ProductCache,
    t: &[[SymbolicTail; 2]; 2],
    a: (u8, u8, usize),
    b: (u8, u8, usize),
) -> &'c Element<Fq> {
    cache
        .entry((a.0, a.1, a.2, b.0, b.1, b.2))
        .or_insert_with(|| {
            let x = t[a.0 as usize - 1][a.1 as usize - 1].coeff(a.2);
            let y = t[b.0 as usize - 1][b.1 as usize - 1].coeff(b.2);
            x.clone() * y.clone()
        })
}

fn check_rtt_tuple(
    desc: FieldDesc,
    t: &[[SymbolicTail; 2]; 2],
    cache: &mut ProductCache,
    (i, j, k, l): (u8, u8, u8, u8),
    n: usize,
) -> Option<RttWitness> {
    let sign_exp = parity(i) * parity(j) + parity(i) * parity(k) + parity(j) * parity(k);
    let p_ij = (parity(i) + parity(j)) % 2;
    let p_kl = (parity(k) + parity(l)) % 2;
    for r in 0..=n {
        for s in 0..=n {
            // supercommutator [t_ij^(r), t_kl^(s)]
            let xy = cached_product(cache, t, (i, j, r), (k, l, s)).clone();
            let yx = cached_product(cache, t, (k, l, s), (i, j, r)).clone();
            let lhs = if p_ij == 1 && p_kl == 1 { xy + yx } else { xy - yx };
            let mut rhs = Element::zero();
            for tt in 0..r.min(s) {
                rhs.add_assign(cached_product(cache, t, (k, j, tt), (i, l, r + s - 1 - tt)));
                let second =
                    cached_product(cache, t, (k, j, r + s - 1 - tt), (i, l, tt)).clone();
                rhs = rhs - second;
            }
            if sign_exp % 2 == 1 {
                rhs = -rhs;
            }
            if lhs != rhs.scale(&desc.one()) {
                return Some(RttWitness { i, j, k, l, r, s });
            }
        }
    }
    None
}

/// Checks the exchange relation for one index tuple, r, s <= n.
pub fn verify_rtt(desc: FieldDesc, i: u8, j: u8, k: u8, l: u8, n: usize) -> Option<RttWitness> {
    let t = t_matrix(desc, 2 * n.max(1) - 1);
    let mut cache = ProductCache::new();
    check_rtt_tuple(desc, &t, &mut cache, (i, j, k, l), n)
}

/// Checks all 16 index tuples, sharing one product cache.
pub fn verify_rtt_all(desc: FieldDesc, n: usize) -> Option<RttWitness> {
    let t = t_matrix(desc, 2 * n.max(1) - 1);
    let mut cache = ProductCache::new();
    for i in [1, 2] {
        for j in [1, 2] {
            for k in [1, 2] {
                for l in [1, 2] {
                    let w = check_rtt_tuple(desc, &t, &mut cache, (i, j, k, l), n);
                    if w.is_some() {
                        return w;
                    }
                }
            }
        }
    }
    None
}

/// A failing instance of one of the four quadratic series identities
/// behind the coproduct computation for the p-center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftIdentityWitness {
    pub identity: u8,
    pub k: u32,
    pub order: usize,
}

/// The four identities, checked through order n:
///  1. t11(u-1) t12(u) = t12(u-1) t11(u)
///  2. t11(u) t21(u-1) = t21(u) t11(u-1)
///  3. t12(u-1) t12(u) = 0
///  4. (k+1) t21(u) t11(u-k) = k t11(u-k) t21(u) + t21(u-k) t11(u),  k <= kmax
pub fn verify_shift_identities(
    desc: FieldDesc,
    n: usize,
    kmax: u32,
) -> Option<ShiftIdentityWitness> {
    let t = t_matrix(desc, n);
    let one = Element::scalar(desc.one());
    let sh =
        |x: &SymbolicTail, k: u32| x.shift(&Element::scalar(desc.from_int(k as i64)), desc.p, n);

    let lhs1 = sh(&t[0][0], 1).mul(&t[0][1], n);
    let rhs1 = sh(&t[0][1], 1).mul(&t[0][0], n);
    if let crate::series::Compare::Differs { index } = lhs1.compare(&rhs1) {
        return Some(ShiftIdentityWitness { identity: 1, k: 1, order: index });
    }

    let lhs2 = t[0][0].mul(&sh(&t[1][0], 1), n);
    let rhs2 = t[1][0].mul(&sh(&t[0][0], 1), n);
    if let crate::series::Compare::Differs { index } = lhs2.compare(&rhs2) {
        return Some(ShiftIdentityWitness { identity: 2, k: 1, order: index });
    }

    let sq = sh(&t[0][1], 1).mul(&t[0][1], n);
    if let Some(index) = (0..=n).find(|&r| !sq.coeff(r).is_zero()) {
        return Some(ShiftIdentityWitness { identity: 3, k: 1, order: index });
    }

    for k in 0..=kmax {
        let kk = one.scale(&desc.from_int(k as i64));
        let kk1 = one.scale(&desc.from_int(k as i64 + 1));
        let lhs = t[1][0].mul(&sh(&t[0][0], k), n).scale(&kk1);
        let rhs = sh(&t[0][0], k)
            .mul(&t[1][0], n)
            .scale(&kk)
            .add(&sh(&t[1][0], k).mul(&t[0][0], n));
        if let crate::series::Compare::Differs { index } = lhs.compare(&rhs) {
            return Some(ShiftIdentityWitness { identity: 4, k, order: index });
        }
    }
    None
}

/// b_1'(u) = t'11(u) t'11(u-1) ... t'11(u-p+1) through order n.
pub fn b1_prime_series(desc: FieldDesc, n: usize) -> SymbolicTail {
    t_prime_matrix(desc, n)[0][0].orbit_product(desc.p, n)
}

/// b_2'(u) = t22(u) t22(u-1) ... t22(u-p+1) through order n.
pub fn b2_prime_series(desc: FieldDesc, n: usize) -> SymbolicTail {
    t_matrix(desc, n)[1][1].orbit_product(desc.p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::center::bound_gen;
    use crate::pbw::Gen;

    #[test]
    fn first_order_inverse_coefficients() {
        let desc = FieldDesc::new(5, 1).unwrap();
        let tp = t_prime_matrix(desc, 2);
        // t'22^(1) = -d2^(1), t'12^(1) = -e^(1), t'21^(1) = -f^(1),
        // t'11^(1) = -d1^(1)
        assert_eq!(tp[1][1].coeff(1), &-bound_gen(desc, Gen::d2(1)));
        assert_eq!(tp[0][1].coeff(1), &-bound_gen(desc, Gen::e(1)));
        assert_eq!(tp[1][0].coeff(1), &-bound_gen(desc, Gen::f(1)));
        assert_eq!(tp[0][0].coeff(1), &-bound_gen(desc, Gen::d1(1)));
    }

    #[test]
    fn t_prime_is_two_sided_inverse() {
        let desc = FieldDesc::new(3, 1).unwrap();
        let n = 5;
        let t = t_matrix(desc, n);
        let tp = t_prime_matrix(desc, n);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = t[i][0].mul(&tp[0][j], n).add(&t[i][1].mul(&tp[1][j], n));
                let mut acc2 = tp[i][0].mul(&t[0][j], n).add(&tp[i][1].mul(&t[1][j], n));
                if i == j {
                    acc = acc.sub(&Tail::one(n));
                    acc2 = acc2.sub(&Tail::one(n));
                }
                for r in 0..=n {
                    assert!(acc.coeff(r).is_zero(), "T T' at ({i},{j}), order {r}");
                    assert!(acc2.coeff(r).is_zero(), "T' T at ({i},{j}), order {r}");
                }
            }
        }
    }

    #[test]
    fn gauss_round_trip() {
        let desc = FieldDesc::new(5, 1).unwrap();
        let n = 5;
        let t = t_matrix(desc, n);
        let g = gauss_tails(&t, n);
        assert!(g.d1.agrees_with(&d_series(desc, 1, n)));
        assert!(g.d2.agrees_with(&d_series(desc, 2, n)));
        assert!(g.e.agrees_with(&e_series(desc, n)));
        assert!(g.f.agrees_with(&f_series(desc, n)));
        // e^(2) = t12^(2) - t11^(1) t12^(1), spelled out
        let e2 = t[0][1].coeff(2).clone()
            - t[0][0].coeff(1).clone() * t[0][1].coeff(1).clone();
        assert_eq!(e2, bound_gen(desc, Gen::e(2)));
    }

    #[test]
    fn rtt_holds_at_small_order() {
        for p in [3u32, 5] {
            let desc = FieldDesc::new(p, 1).unwrap();
            assert_eq!(verify_rtt_all(desc, 3), None, "p = {p}");
        }
    }

    #[test]
    fn rtt_witness_on_corrupted_series() {
        // Corrupt t12^(2) and watch the (1,1,1,2) relation fail.
        let desc = FieldDesc::new(3, 1).unwrap();
        let n = 2;
        let mut t = t_matrix(desc, 2 * n - 1);
        let bad = t[0][1].coeff(2).clone() + Element::scalar(desc.one());
        t[0][1].set_coeff(2, bad);
        let mut cache = ProductCache::new();
        let w = check_rtt_tuple(desc, &t, &mut cache, (1, 1, 1, 2), n);
        assert!(w.is_some());
    }

    #[test]
    fn shift_identities_small() {
        for p in [3u32, 5] {
            let desc = FieldDesc::new(p, 1).unwrap();
            assert_eq!(verify_shift_identities(desc, 4, 3), None, "p = {p}");
        }
    }

    #[test]
    fn primed_center_series_low_orders_vanish() {
        let desc = FieldDesc::new(3, 1).unwrap();
        let b1p = b1_prime_series(desc, 3);
        let b2p = b2_prime_series(desc, 3);
        for r in 1..3 {
            assert!(b1p.coeff(r).is_zero(), "b1'^({r})");
            assert!(b2p.coeff(r).is_zero(), "b2'^({r})");
        }
        assert!(!b1p.coeff(3).is_zero());
        assert!(!b2p.coeff(3).is_zero());
    }
}
