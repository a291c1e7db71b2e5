//! Hopf structure: coproduct Δ(t_ij(u)) = Σ_k t_ik(u) ⊗ t_kj(u), counit
//! ε(t_ij(u)) = δ_ij, antipode S(t_ij(u)) = t'_ij(u).
//!
//! Δ and S act on Drinfeld generators only through the Gauss decomposition;
//! there is no independent formula. Δ extends multiplicatively with the
//! Koszul product; S extends anti-multiplicatively with the sign
//! S(x y) = (-1)^{|x||y|} S(y) S(x).

use crate::field::{FieldDesc, Fq};
use crate::pbw::center::{b_series, bound_gen};
use crate::pbw::{Element, Gen, Kind, Monomial};
use crate::rtt::{b1_prime_series, b2_prime_series, t_matrix, t_prime_matrix};
use crate::series::{Compare, Tail};
use crate::tensor::{tensor_of_tails, Tensor2, Tensor3};

pub type TensorTail = Tail<Tensor2<Fq>>;

/// Coproduct data through a fixed series order.
pub struct Coproduct {
    desc: FieldDesc,
    n: usize,
    /// Δ(t_ij(u)) for i, j in {1, 2}.
    t: [[TensorTail; 2]; 2],
    /// Δ on the Drinfeld generating series, derived by Gauss algebra.
    d1: TensorTail,
    d2: TensorTail,
    e: TensorTail,
    f: TensorTail,
}

impl Coproduct {
    pub fn new(desc: FieldDesc, n: usize) -> Coproduct {
        let t = t_matrix(desc, n);
        let dt = |i: usize, j: usize| -> TensorTail {
            let mut acc = Tail::zero_tail(n);
            for k in 0..2 {
                acc = acc.add(&tensor_of_tails(&t[i][k], &t[k][j], n));
            }
            acc
        };
        let t2 = [[dt(0, 0), dt(0, 1)], [dt(1, 0), dt(1, 1)]];
        let t11i = t2[0][0].inv(n).expect("Δt11 starts at 1⊗1");
        let d1 = t2[0][0].clone();
        let e = t11i.mul(&t2[0][1], n);
        let f = t2[1][0].mul(&t11i, n);
        let d2 = t2[1][1].sub(&t2[1][0].mul(&t11i, n).mul(&t2[0][1], n));
        Coproduct {
            desc,
            n,
            t: t2,
            d1,
            d2,
            e,
            f,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn desc(&self) -> FieldDesc {
        self.desc
    }

    pub fn t_series(&self, i: u8, j: u8) -> &TensorTail {
        &self.t[i as usize - 1][j as usize - 1]
    }

    pub fn gen_series(&self, kind: Kind) -> &TensorTail {
        match kind {
            Kind::D1 => &self.d1,
            Kind::D2 => &self.d2,
            Kind::E => &self.e,
            Kind::F => &self.f,
        }
    }

    /// Δ of a PBW element, by multiplicative extension over its letters.
    pub fn apply(&self, x: &Element<Fq>) -> Tensor2<Fq> {
        let mut out = Tensor2::zero();
        for (m, c) in x.iter() {
            let mut acc = Tensor2::scalar(c.clone());
            for &(g, exp) in m.factors() {
                assert!(
                    (g.sup as usize) <= self.n,
                    "coproduct table order {} too small for {g}",
                    self.n
                );
                for _ in 0..exp {
                    acc = acc * self.gen_series(g.kind).coeff(g.sup as usize).clone();
                }
            }
            out.add_assign(&acc);
        }
        out
    }
}

/// ε: the coefficient of the empty monomial.
pub fn counit(x: &Element<Fq>) -> Fq {
    x.coeff(&Monomial::one())
}

/// Antipode data through a fixed series order.
pub struct Antipode {
    n: usize,
    d1: Tail<Element<Fq>>,
    d2: Tail<Element<Fq>>,
    e: Tail<Element<Fq>>,
    f: Tail<Element<Fq>>,
}

impl Antipode {
    pub fn new(desc: FieldDesc, n: usize) -> Antipode {
        let tp = t_prime_matrix(desc, n);
        let t11i = tp[0][0].inv(n).expect("t'11 starts at 1");
        // S(d1) = t'11, S(e) = t'12 t'11^-1, S(f) = t'11^-1 t'21,
        // S(d2) = t'22 + t'12 t'11^-1 t'21
        let d1 = tp[0][0].clone();
        let e = tp[0][1].mul(&t11i, n);
        let f = t11i.mul(&tp[1][0], n);
        let d2 = tp[1][1].add(&tp[0][1].mul(&t11i, n).mul(&tp[1][0], n));
        Antipode { n, d1, d2, e, f }
    }

    pub fn gen_series(&self, kind: Kind) -> &Tail<Element<Fq>> {
        match kind {
            Kind::D1 => &self.d1,
            Kind::D2 => &self.d2,
            Kind::E => &self.e,
            Kind::F => &self.f,
        }
    }

    /// S of a PBW element: letters reversed, with the reordering sign
    /// (-1)^{C(o,2)} for o odd letters in the monomial.
    pub fn apply(&self, x: &Element<Fq>) -> Element<Fq> {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            let mut letters: Vec<Gen> = Vec::new();
            for &(g, exp) in m.factors() {
                for _ in 0..exp {
                    letters.push(g);
                }
            }
            let odd = letters.iter().filter(|g| g.is_odd()).count();
            let sign_flip = (odd * odd.saturating_sub(1) / 2) % 2 == 1;
            let mut acc = Element::scalar(if sign_flip { -c.clone() } else { c.clone() });
            for g in letters.into_iter().rev() {
                assert!(
                    (g.sup as usize) <= self.n,
                    "antipode table order {} too small for {g}",
                    self.n
                );
                acc = acc * self.gen_series(g.kind).coeff(g.sup as usize).clone();
            }
            out.add_assign(&acc);
        }
        out
    }
}

/// A failing Hopf-axiom instance on a t-coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub axiom: &'static str,
    pub i: u8,
    pub j: u8,
    pub r: usize,
}

/// (ε ⊗ id)Δ = id = (id ⊗ ε)Δ on all t_ij^(r), r <= n.
pub fn verify_counit_axiom(desc: FieldDesc, n: usize) -> Option<AxiomWitness> {
    let cp = Coproduct::new(desc, n);
    let t = t_matrix(desc, n);
    for i in [1u8, 2] {
        for j in [1u8, 2] {
            for r in 0..=n {
                let target = t[i as usize - 1][j as usize - 1].coeff(r);
                let mut left = Element::zero();
                let mut right = Element::zero();
                for ((a, b), c) in cp.t_series(i, j).coeff(r).iter() {
                    if a.is_one() {
                        left.add_term(b.clone(), c.clone());
                    }
                    if b.is_one() {
                        right.add_term(a.clone(), c.clone());
                    }
                }
                if &left != target || &right != target {
                    return Some(AxiomWitness {
                        axiom: "counit",
                        i,
                        j,
                        r,
                    });
                }
            }
        }
    }
    None
}

/// (Δ ⊗ id)Δ = (id ⊗ Δ)Δ on all t_ij^(r), r <= n.
pub fn verify_coassociativity(desc: FieldDesc, n: usize) -> Option<AxiomWitness> {
    let cp = Coproduct::new(desc, n);
    for i in [1u8, 2] {
        for j in [1u8, 2] {
            for r in 0..=n {
                let mut lhs = Tensor3::zero();
                let mut rhs = Tensor3::zero();
                for ((a, b), c) in cp.t_series(i, j).coeff(r).iter() {
                    let da = cp.apply(&Element::term(a.clone(), desc.one()));
                    lhs.add_assign(&Tensor3::from_t2_left(&da, b, c));
                    let db = cp.apply(&Element::term(b.clone(), desc.one()));
                    rhs.add_assign(&Tensor3::from_t2_right(a, &db, c));
                }
                if lhs != rhs {
                    return Some(AxiomWitness {
                        axiom: "coassociativity",
                        i,
                        j,
                        r,
                    });
                }
            }
        }
    }
    None
}

/// m(S ⊗ id)Δ = ε·1 = m(id ⊗ S)Δ on all t_ij^(r), r <= n.
pub fn verify_antipode_axiom(desc: FieldDesc, n: usize) -> Option<AxiomWitness> {
    let cp = Coproduct::new(desc, n);
    let s = Antipode::new(desc, n);
    for i in [1u8, 2] {
        for j in [1u8, 2] {
            for r in 0..=n {
                let target = if i == j && r == 0 {
                    Element::scalar(desc.one())
                } else {
                    Element::zero()
                };
                let mut left = Element::zero();
                let mut right = Element::zero();
                for ((a, b), c) in cp.t_series(i, j).coeff(r).iter() {
                    let sa = s.apply(&Element::term(a.clone(), c.clone()));
                    left.add_assign(&(sa * Element::term(b.clone(), desc.one())));
                    let sb = s.apply(&Element::term(b.clone(), desc.one()));
                    right.add_assign(&(Element::term(a.clone(), c.clone()) * sb));
                }
                if left != target || right != target {
                    return Some(AxiomWitness {
                        axiom: "antipode",
                        i,
                        j,
                        r,
                    });
                }
            }
        }
    }
    None
}

/// Δ(x y) = Δ(x) Δ(y) on a panel of sample pairs, including odd ones whose
/// product exercises the Koszul sign.
pub fn verify_coproduct_multiplicative(desc: FieldDesc, n: usize) -> bool {
    let cp = Coproduct::new(desc, n);
    let t = t_matrix(desc, n);
    let samples: Vec<Element<Fq>> = vec![
        bound_gen(desc, Gen::e(1)),
        bound_gen(desc, Gen::f(2)),
        bound_gen(desc, Gen::d2(1)),
        t[0][1].coeff(2).clone(),
        t[1][0].coeff(1).clone(),
        t[1][1].coeff(2).clone(),
    ];
    for x in &samples {
        for y in &samples {
            let xy = x.clone() * y.clone();
            if xy.max_weight() as usize > n {
                continue;
            }
            if cp.apply(&xy) != cp.apply(x) * cp.apply(y) {
                return false;
            }
        }
    }
    true
}

/// S(x y) = (-1)^{|x||y|} S(y) S(x) on the same panel.
pub fn verify_antipode_anti_hom(desc: FieldDesc, n: usize) -> bool {
    let s = Antipode::new(desc, n);
    let t = t_matrix(desc, n);
    let samples: Vec<Element<Fq>> = vec![
        bound_gen(desc, Gen::e(1)),
        bound_gen(desc, Gen::f(2)),
        bound_gen(desc, Gen::d1(1)),
        t[0][1].coeff(1).clone(),
        t[1][0].coeff(2).clone(),
        t[1][1].coeff(1).clone(),
    ];
    for x in &samples {
        for y in &samples {
            let xy = x.clone() * y.clone();
            if xy.max_weight() as usize > n {
                continue;
            }
            let lhs = s.apply(&xy);
            let mut rhs = s.apply(y) * s.apply(x);
            let (px, py) = (x.parity().unwrap(), y.parity().unwrap());
            if px == 1 && py == 1 {
                rhs = -rhs;
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// S(t_ij^(r)) = t'_ij^(r) for r <= n, recomputed through the
/// anti-multiplicative extension rather than series algebra.
pub fn verify_antipode_on_t(desc: FieldDesc, n: usize) -> Option<AxiomWitness> {
    let s = Antipode::new(desc, n);
    let t = t_matrix(desc, n);
    let tp = t_prime_matrix(desc, n);
    for i in [1u8, 2] {
        for j in [1u8, 2] {
            for r in 0..=n {
                let image = s.apply(t[i as usize - 1][j as usize - 1].coeff(r));
                if &image != tp[i as usize - 1][j as usize - 1].coeff(r) {
                    return Some(AxiomWitness {
                        axiom: "antipode on t",
                        i,
                        j,
                        r,
                    });
                }
            }
        }
    }
    None
}

/// Δ(b_i(u)) versus b_i(u) ⊗ b_i(u), compared through order n.
pub fn verify_center_coproduct(desc: FieldDesc, i: u8, n: usize) -> Compare {
    let cp = Coproduct::new(desc, n);
    let lhs = match i {
        1 => cp.d1.orbit_product(desc.p, n),
        2 => cp
            .d2
            .inv(n)
            .expect("Δd2 starts at 1⊗1")
            .orbit_product(desc.p, n),
        _ => panic!("i must be 1 or 2"),
    };
    let b = b_series(desc, i, n);
    let rhs = tensor_of_tails(&b, &b, n);
    lhs.compare(&rhs)
}

/// S(b_1^(r)) = b_1'^(r) and S(b_2'^(r)) = b_2^(r) for r <= n.
pub fn verify_center_antipode(desc: FieldDesc, n: usize) -> Option<(u8, usize)> {
    let s = Antipode::new(desc, n);
    let b1 = b_series(desc, 1, n);
    let b1p = b1_prime_series(desc, n);
    let b2 = b_series(desc, 2, n);
    let b2p = b2_prime_series(desc, n);
    for r in 0..=n {
        if s.apply(b1.coeff(r)) != *b1p.coeff(r) {
            return Some((1, r));
        }
        if s.apply(b2p.coeff(r)) != *b2.coeff(r) {
            return Some((2, r));
        }
    }
    None
}

/// Δ of the length-nn diagonal string, against its closed form:
///
///   Δ(t11(u-nn+1) ... t11(u)) =
///       [t11(u-nn+1) ... t11(u)] ⊗ [t11(u) ... t11(u-nn+1)]
///     + nn · [t12(u-nn+1) t11(u-nn+2) ... t11(u)]
///            ⊗ [t11(u) ... t11(u-nn+2) t21(u-nn+1)]
///
/// At nn = p the second term dies and the first is Δ(b_1) = b_1 ⊗ b_1.
pub fn verify_diagonal_string_coproduct(desc: FieldDesc, nn: u32, n: usize) -> Compare {
    assert!(nn >= 1);
    let cp = Coproduct::new(desc, n);
    let t = t_matrix(desc, n);
    let shift_el = |x: &Tail<Element<Fq>>, k: u32| {
        x.shift(&Element::scalar(desc.from_int(k as i64)), desc.p, n)
    };
    let shift_t2 = |x: &TensorTail, k: u32| {
        x.shift(&Tensor2::scalar(desc.from_int(k as i64)), desc.p, n)
    };

    let mut lhs: TensorTail = Tail::one(n);
    for c in 0..nn {
        lhs = lhs.mul(&shift_t2(&cp.d1, nn - 1 - c), n);
    }

    let mut a = Tail::one(n);
    let mut b = Tail::one(n);
    for c in 0..nn {
        a = a.mul(&shift_el(&t[0][0], nn - 1 - c), n);
        b = b.mul(&shift_el(&t[0][0], c), n);
    }
    let mut rhs = tensor_of_tails(&a, &b, n);

    let mut a2 = shift_el(&t[0][1], nn - 1);
    for c in 1..nn {
        a2 = a2.mul(&shift_el(&t[0][0], nn - 1 - c), n);
    }
    let mut b2 = Tail::one(n);
    for c in 0..nn.saturating_sub(1) {
        b2 = b2.mul(&shift_el(&t[0][0], c), n);
    }
    b2 = b2.mul(&shift_el(&t[1][0], nn - 1), n);
    let second = tensor_of_tails(&a2, &b2, n).scale(&Tensor2::scalar(desc.from_int(nn as i64)));
    rhs = rhs.add(&second);

    lhs.compare(&rhs)
}
