//! Finite dimensional super modules given by explicit action matrices:
//! evaluation modules, graded tensor products, highest weight extraction,
//! irreducibility tests, duality, twists, and the correspondence between
//! highest weights and pairs of monic polynomials.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Fq};
use crate::matrix::{Mat, MatTail, Subspace};
use crate::pbw::{Element, Kind};
use crate::poly::Poly;
use crate::rtt::RttWitness;
use crate::series::Tail;

fn idx_parity(i: u8) -> u8 {
    i - 1
}

/// A module over the Yangian: the matrices of t_{i,j}^(r) on a fixed
/// homogeneous basis. Coefficient 0 of t[i][j] is δ_ij I, and every
/// coefficient beyond the stored order is identically zero, so the stored
/// data determines the action exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperModule {
    desc: FieldDesc,
    parity: Vec<u8>,
    t: [[MatTail; 2]; 2],
}

/// Action matrices for the Gauss generating series, through a chosen order.
pub struct GaussMats {
    pub d1: MatTail,
    pub d2: MatTail,
    pub e: MatTail,
    pub f: MatTail,
}

impl GaussMats {
    pub fn series(&self, kind: Kind) -> &MatTail {
        match kind {
            Kind::D1 => &self.d1,
            Kind::D2 => &self.d2,
            Kind::E => &self.e,
            Kind::F => &self.f,
        }
    }

    pub fn order(&self) -> usize {
        self.d1.order()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight {
    pub lambda1: Tail<Fq>,
    pub lambda2: Tail<Fq>,
    pub vector: Vec<Fq>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    /// The action matrices generate the full matrix algebra.
    Absolutely,
    /// No invariant subspace over the base field, but the generated algebra
    /// is a proper subalgebra; certified by exhausting the projective space.
    RelativeOnly,
    /// A proper invariant subspace, returned as a basis.
    Reducible { invariant: Vec<Vec<Fq>> },
    /// Not absolutely irreducible and too large to exhaust; no invariant
    /// subspace was found among basis and sampled vectors.
    Undetermined,
}

impl SuperModule {
    pub fn from_action(desc: FieldDesc, parity: Vec<u8>, t: [[MatTail; 2]; 2]) -> SuperModule {
        let dim = parity.len();
        let order = t[0][0].order();
        for (i, row) in t.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                assert_eq!(s.dim(), dim);
                assert_eq!(s.order(), order);
                if i == j {
                    assert!(s.coeff(0).is_identity());
                } else {
                    assert!(s.coeff(0).is_zero());
                }
            }
        }
        assert!(parity.iter().all(|&e| e <= 1));
        SuperModule { desc, parity, t }
    }

    pub fn desc(&self) -> FieldDesc {
        self.desc
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn order(&self) -> usize {
        self.t[0][0].order()
    }

    /// The largest r with some t_{i,j}^(r) nonzero; 0 for the trivial module.
    pub fn degree(&self) -> usize {
        let mut d = 0;
        for row in &self.t {
            for s in row {
                for r in (0..=s.order()).rev() {
                    if !s.coeff(r).is_zero() {
                        d = d.max(if r == 0 { 0 } else { r });
                        break;
                    }
                }
            }
        }
        d
    }

    pub fn t_series(&self, i: u8, j: u8) -> &MatTail {
        &self.t[i as usize - 1][j as usize - 1]
    }

    /// Matrix of t_{i,j}^(r), zero beyond the stored order.
    pub fn t_mat(&self, i: u8, j: u8, r: usize) -> Mat {
        let s = self.t_series(i, j);
        if r <= s.order() {
            s.coeff(r).clone()
        } else {
            Mat::zeros(self.dim(), self.dim())
        }
    }

    /// The one dimensional even module with t_ij(u) = δ_ij.
    pub fn trivial(desc: FieldDesc) -> SuperModule {
        let t = || MatTail::zero(1, 1);
        let mut t11 = t();
        *t11.coeff_mut(0) = Mat::identity(1);
        let t22 = t11.clone();
        SuperModule::from_action(desc, vec![0], [[t11, t()], [t(), t22]])
    }

    /// The simple evaluation module with highest weight
    /// (1 + λ1 u^{-1}, 1 − λ2 u^{-1}): two dimensional when λ1 + λ2 ≠ 0,
    /// one dimensional otherwise.
    pub fn eval(desc: FieldDesc, lambda1: &Fq, lambda2: &Fq) -> SuperModule {
        let l1 = lambda1.clone().bind(desc);
        let l2 = lambda2.clone().bind(desc);
        if (l1.clone() + l2.clone()).is_zero() {
            let z = || MatTail::zero(1, 1);
            let mut t11 = z();
            *t11.coeff_mut(0) = Mat::identity(1);
            let mut t22 = t11.clone();
            *t11.coeff_mut(1) = Mat::from_rows(vec![vec![l1.clone()]]);
            *t22.coeff_mut(1) = Mat::from_rows(vec![vec![l1]]);
            return SuperModule::from_action(desc, vec![0], [[t11, z()], [z(), t22]]);
        }
        let zero = desc.zero();
        let one = desc.one();
        let z = || MatTail::zero(2, 1);
        let mut t11 = z();
        *t11.coeff_mut(0) = Mat::identity(2);
        let mut t22 = t11.clone();
        let mut t12 = z();
        let mut t21 = z();
        *t11.coeff_mut(1) = Mat::from_rows(vec![
            vec![l1.clone(), zero.clone()],
            vec![zero.clone(), l1.clone() - one.clone()],
        ]);
        *t22.coeff_mut(1) = Mat::from_rows(vec![
            vec![-l2.clone(), zero.clone()],
            vec![zero.clone(), -l2.clone() - one.clone()],
        ]);
        *t12.coeff_mut(1) = Mat::from_rows(vec![
            vec![zero.clone(), l1 + l2],
            vec![zero.clone(), zero.clone()],
        ]);
        *t21.coeff_mut(1) = Mat::from_rows(vec![
            vec![zero.clone(), zero.clone()],
            vec![-one, zero],
        ]);
        SuperModule::from_action(desc, vec![0, 1], [[t11, t12], [t21, t22]])
    }

    /// Graded tensor product: Δ(t_ij(u)) = Σ_k t_ik(u) ⊗ t_kj(u) with the
    /// sign rule (x ⊗ y)(v ⊗ w) = (−1)^{|y||v|} xv ⊗ yw. Basis indexed
    /// left-major: (a, b) at a·dim(other) + b.
    pub fn tensor(&self, other: &SuperModule) -> SuperModule {
        assert_eq!(self.desc, other.desc);
        let n = self.order() + other.order();
        let (da, db) = (self.dim(), other.dim());
        let mut parity = Vec::with_capacity(da * db);
        for &pa in &self.parity {
            for &pb in &other.parity {
                parity.push((pa + pb) % 2);
            }
        }
        let kron = |x: &Mat, y: &Mat, y_odd: bool| -> Mat {
            let mut out = Mat::zeros(da * db, da * db);
            for ra in 0..da {
                for ca in 0..da {
                    let xe = x[(ra, ca)].clone();
                    if xe.is_zero() {
                        continue;
                    }
                    let flip = y_odd && self.parity[ca] == 1;
                    for rb in 0..db {
                        for cb in 0..db {
                            let ye = y[(rb, cb)].clone();
                            if ye.is_zero() {
                                continue;
                            }
                            let v = xe.clone() * ye;
                            out[(ra * db + rb, ca * db + cb)] =
                                if flip { -v } else { v };
                        }
                    }
                }
            }
            out
        };
        let mut t: [[MatTail; 2]; 2] = [
            [MatTail::zero(da * db, n), MatTail::zero(da * db, n)],
            [MatTail::zero(da * db, n), MatTail::zero(da * db, n)],
        ];
        for i in 1u8..=2 {
            for j in 1u8..=2 {
                for k in 1u8..=2 {
                    let y_odd = (idx_parity(k) + idx_parity(j)) % 2 == 1;
                    for r in 0..=n {
                        let mut acc = Mat::zeros(da * db, da * db);
                        for a in 0..=r {
                            let xa = self.t_mat(i, k, a);
                            if xa.is_zero() {
                                continue;
                            }
                            let yb = other.t_mat(k, j, r - a);
                            if yb.is_zero() {
                                continue;
                            }
                            acc = acc + kron(&xa, &yb, y_odd);
                        }
                        let slot = t[i as usize - 1][j as usize - 1].coeff_mut(r);
                        *slot = slot.clone() + acc;
                    }
                }
            }
        }
        SuperModule::from_action(self.desc, parity, t)
    }

    /// Checks the defining relation on all index tuples with r, s <= n.
    pub fn verify_rtt(&self, n: usize) -> Option<RttWitness> {
        for i in 1u8..=2 {
            for j in 1u8..=2 {
                for k in 1u8..=2 {
                    for l in 1u8..=2 {
                        let (pi, pj, pk) = (idx_parity(i), idx_parity(j), idx_parity(k));
                        let pl = idx_parity(l);
                        let x_odd = (pi + pj) % 2 == 1;
                        let y_odd = (pk + pl) % 2 == 1;
                        let sign_neg = (pi * pj + pi * pk + pj * pk) % 2 == 1;
                        for r in 1..=n {
                            for s in 1..=n {
                                let x = self.t_mat(i, j, r);
                                let y = self.t_mat(k, l, s);
                                let mut lhs = x.matmul(&y);
                                let yx = y.matmul(&x);
                                lhs = if x_odd && y_odd { lhs + yx } else { lhs - yx };
                                let mut rhs = Mat::zeros(self.dim(), self.dim());
                                for t in 0..r.min(s) {
                                    let a = self.t_mat(k, j, t).matmul(&self.t_mat(i, l, r + s - 1 - t));
                                    let b = self.t_mat(k, j, r + s - 1 - t).matmul(&self.t_mat(i, l, t));
                                    rhs = rhs + a - b;
                                }
                                if sign_neg {
                                    rhs = -rhs;
                                }
                                if lhs != rhs {
                                    return Some(RttWitness { i, j, k, l, r, s });
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Gauss decomposition of the action, through order n.
    pub fn gauss(&self, n: usize) -> GaussMats {
        let at = |i: usize, j: usize| -> MatTail {
            if n <= self.order() {
                self.t[i][j].truncated(n)
            } else {
                self.t[i][j].extended(n)
            }
        };
        let t11 = at(0, 0);
        let t11i = t11.inv(n).expect("t11 starts at the identity");
        let d1 = t11.clone();
        let e = t11i.mul(&at(0, 1), n);
        let f = at(1, 0).mul(&t11i, n);
        let d2 = at(1, 1).sub(&at(1, 0).mul(&t11i, n).mul(&at(0, 1), n));
        GaussMats { d1, d2, e, f }
    }

    /// The matrix of a PBW element under the action, computed through the
    /// supplied Gauss data.
    pub fn act(&self, g: &GaussMats, x: &Element<Fq>) -> Mat {
        let mut out = Mat::zeros(self.dim(), self.dim());
        for (m, c) in x.iter() {
            let mut acc = Mat::identity(self.dim()).scale(&c.clone().bind(self.desc));
            for &(gen, exp) in m.factors() {
                assert!((gen.sup as usize) <= g.order(), "Gauss order too small for {gen}");
                for _ in 0..exp {
                    acc = acc.matmul(g.series(gen.kind).coeff(gen.sup as usize));
                }
            }
            out = out + acc;
        }
        out
    }

    /// Basis of the joint kernel of all t_{1,2}^(r), r >= 1.
    pub fn singular_basis(&self) -> Vec<Vec<Fq>> {
        let mut rows = Vec::new();
        for r in 1..=self.order() {
            let m = self.t_series(1, 2).coeff(r);
            for i in 0..m.nrows() {
                rows.push(m.row(i));
            }
        }
        if rows.is_empty() {
            rows.push(vec![self.desc.zero(); self.dim()]);
        }
        Mat::from_rows(rows).kernel_basis()
    }

    /// Eigenvalue tails of t11(u) and t22(u) on a joint eigenvector.
    pub fn eigen_tails(&self, v: &[Fq]) -> Result<(Tail<Fq>, Tail<Fq>)> {
        let pivot = v
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Invalid("eigenvalue of the zero vector".into()))?;
        let pinv = v[pivot].inv()?;
        let mut tails = Vec::new();
        for i in 1u8..=2 {
            let mut coeffs = Vec::new();
            for r in 0..=self.order() {
                let w = self.t_series(i, i).coeff(r).apply(v);
                let lam = w[pivot].clone() * pinv.clone();
                for (a, b) in w.iter().zip(v.iter()) {
                    if a.clone() != lam.clone() * b.clone() {
                        return Err(Error::Invalid(format!(
                            "vector is not an eigenvector of t_{i}{i}^({r})"
                        )));
                    }
                }
                coeffs.push(lam);
            }
            tails.push(Tail::new(coeffs));
        }
        let l2 = tails.pop().unwrap();
        let l1 = tails.pop().unwrap();
        Ok((l1, l2))
    }

    /// The highest weight when the singular space is a single line.
    pub fn highest_weight(&self) -> Result<HighestWeight> {
        let basis = self.singular_basis();
        if basis.len() != 1 {
            return Err(Error::Invalid(format!(
                "singular space has dimension {}",
                basis.len()
            )));
        }
        let v = basis.into_iter().next().unwrap();
        let (lambda1, lambda2) = self.eigen_tails(&v)?;
        Ok(HighestWeight {
            lambda1,
            lambda2,
            vector: v,
        })
    }

    fn action_generators(&self) -> Vec<Mat> {
        let mut gens = Vec::new();
        for i in 1u8..=2 {
            for j in 1u8..=2 {
                for r in 1..=self.order() {
                    let m = self.t_mat(i, j, r);
                    if !m.is_zero() {
                        gens.push(m);
                    }
                }
            }
        }
        gens
    }

    /// Burnside test for absolute irreducibility, backed by a submodule
    /// search over the base field.
    pub fn is_irreducible(&self) -> Irreducibility {
        irreducibility_over(self.desc, self.dim(), &self.action_generators())
    }

    /// Twist by a scalar series f with f(u) f(u−1) ⋯ f(u−p+1) = 1; the tail
    /// is read as an exact polynomial in u^{-1}.
    pub fn twist(&self, f: &Tail<Fq>) -> Result<SuperModule> {
        if !f.coeff(0).is_one() {
            return Err(Error::Invalid("twist series must start at 1".into()));
        }
        let k = f.order();
        let cert = (self.desc.p as usize) * k.max(1);
        if let Some(r) = f.extended(cert).restricted_defect(self.desc.p, cert) {
            return Err(Error::NotRestricted(format!(
                "twist series fails the orbit product identity at order {r}"
            )));
        }
        let n = self.order() + k;
        let fe = f.extended(n);
        let tw = |s: &MatTail| s.extended(n).scale_series(&fe, n);
        Ok(SuperModule::from_action(
            self.desc,
            self.parity.clone(),
            [
                [tw(&self.t[0][0]), tw(&self.t[0][1])],
                [tw(&self.t[1][0]), tw(&self.t[1][1])],
            ],
        ))
    }

    /// Dual module through the flip automorphism t_ij(u) -> t_{3-i,3-j}(u):
    /// the action is the signed transpose
    /// ρ*(t_ij^(r))[a][b] = (−1)^{|a|(|a|+|b|)} ρ(t_{3-i,3-j}^(r))[b][a].
    pub fn dual(&self) -> SuperModule {
        let n = self.order();
        let dim = self.dim();
        let mk = |i: usize, j: usize| -> MatTail {
            let src = &self.t[1 - i][1 - j];
            let mut out = MatTail::zero(dim, n);
            for r in 0..=n {
                let m = src.coeff(r);
                let slot = out.coeff_mut(r);
                for a in 0..dim {
                    for b in 0..dim {
                        let v = m[(b, a)].clone();
                        (*slot)[(a, b)] = if self.parity[a] == 1 && self.parity[b] == 0 {
                            -v
                        } else {
                            v
                        };
                    }
                }
            }
            out
        };
        SuperModule::from_action(
            self.desc,
            self.parity.clone(),
            [[mk(0, 0), mk(0, 1)], [mk(1, 0), mk(1, 1)]],
        )
    }

    /// Action of b_i(u) through order n.
    pub fn b_action(&self, i: u8, n: usize) -> MatTail {
        let g = self.gauss(n);
        match i {
            1 => mat_orbit(self.desc, &g.d1, n),
            2 => {
                let inv = g.d2.inv(n).expect("d2 starts at the identity");
                mat_orbit(self.desc, &inv, n)
            }
            _ => panic!("i must be 1 or 2"),
        }
    }

    /// Checks that b_1(u) and b_2(u) act as the identity. Returns the first
    /// failing (i, r), or None.
    ///
    /// The entries of both orbit products are rational in u with numerator
    /// and denominator of u^{-1}-degree at most p·deg·dim and p·deg, so
    /// agreement with 1 through p·deg·(dim+1) is an exact certificate. For
    /// b_2 the uninverted product Π_j d2(u−j) is compared with the identity,
    /// which is equivalent because the factors commute.
    pub fn restricted_action_check(&self) -> Option<(u8, usize)> {
        let d = self.degree().max(1);
        let n = (self.desc.p as usize) * d * (self.dim() + 1);
        let g = self.gauss(n);
        let b1 = mat_orbit(self.desc, &g.d1, n);
        if let Some(r) = b1.identity_defect() {
            return Some((1, r));
        }
        let b2inv = mat_orbit(self.desc, &g.d2, n);
        if let Some(r) = b2inv.identity_defect() {
            return Some((2, r));
        }
        None
    }
}

pub(crate) fn spin_space(dim: usize, gens: &[Mat], v: &[Fq]) -> Subspace {
    let mut space = Subspace::new(dim);
    let mut queue = vec![v.to_vec()];
    space.insert(v.to_vec());
    while let Some(w) = queue.pop() {
        for g in gens {
            let gw = g.apply(&w);
            if space.insert(gw.clone()) {
                queue.push(gw);
            }
        }
    }
    space
}

/// Burnside closure of the generator matrices, then a submodule search:
/// exhaustive over projective points when the vector space is small enough,
/// seeded random spinning otherwise.
pub(crate) fn irreducibility_over(desc: FieldDesc, n: usize, gens: &[Mat]) -> Irreducibility {
    let vectorize = |m: &Mat| -> Vec<Fq> {
        let mut v = Vec::with_capacity(n * n);
        for i in 0..n {
            v.extend(m.row(i));
        }
        v
    };
    let mut algebra = Subspace::new(n * n);
    let mut queue: Vec<Mat> = vec![Mat::identity(n)];
    algebra.insert(vectorize(&queue[0]));
    while let Some(m) = queue.pop() {
        for g in gens {
            let gm = g.matmul(&m);
            if algebra.insert(vectorize(&gm)) {
                queue.push(gm);
            }
        }
    }
    if algebra.dim() == n * n {
        return Irreducibility::Absolutely;
    }
    let q = desc.q();
    let exhaustive = q.checked_pow(n as u32).map_or(false, |t| t <= 100_000);
    let elems: Vec<Fq> = desc.elements().collect();
    if exhaustive {
        // One vector per projective point: first nonzero coordinate 1.
        let mut idx = vec![0usize; n];
        loop {
            let v: Vec<Fq> = idx.iter().map(|&c| elems[c].clone()).collect();
            let lead = v.iter().position(|x| !x.is_zero());
            if let Some(l) = lead {
                if v[l].is_one() {
                    let s = spin_space(n, gens, &v);
                    if s.dim() < n {
                        return Irreducibility::Reducible {
                            invariant: s.basis().to_vec(),
                        };
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Irreducibility::RelativeOnly;
                }
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut candidates: Vec<Vec<Fq>> = (0..n)
        .map(|i| {
            let mut v = vec![desc.zero(); n];
            v[i] = desc.one();
            v
        })
        .collect();
    for _ in 0..64 {
        candidates.push(
            (0..n)
                .map(|_| elems[rng.gen_range(0..elems.len())].clone())
                .collect(),
        );
    }
    for v in candidates {
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let s = spin_space(n, gens, &v);
        if s.dim() < n {
            return Irreducibility::Reducible {
                invariant: s.basis().to_vec(),
            };
        }
    }
    Irreducibility::Undetermined
}

pub(crate) fn mat_orbit(desc: FieldDesc, x: &MatTail, n: usize) -> MatTail {
    let mut acc = MatTail::identity(x.dim(), n);
    for j in 0..desc.p {
        acc = acc.mul(&x.shift(&desc.from_int(j as i64), desc.p, n), n);
    }
    acc
}

/// Monic polynomials (P1, P2) with λ1(u) = u^{-k} P1(u), λ2(u) = u^{-k} P2(u)
/// for k the larger u^{-1}-degree of the two tails.
pub fn drinfeld_polys(desc: FieldDesc, lambda1: &Tail<Fq>, lambda2: &Tail<Fq>) -> Result<(Poly, Poly)> {
    let mut polys = Vec::new();
    let mut k = 0;
    for lam in [lambda1, lambda2] {
        if !lam.coeff(0).is_one() {
            return Err(Error::Invalid("highest weight tail must start at 1".into()));
        }
        for r in (0..=lam.order()).rev() {
            if !lam.coeff(r).clone().bind(desc).is_zero() {
                k = k.max(r);
                break;
            }
        }
    }
    for lam in [lambda1, lambda2] {
        let mut c = vec![desc.zero(); k + 1];
        for r in 0..=lam.order().min(k) {
            c[k - r] = lam.coeff(r).clone().bind(desc);
        }
        polys.push(Poly::new(c));
    }
    let p2 = polys.pop().unwrap();
    let p1 = polys.pop().unwrap();
    Ok((p1, p2))
}

fn sorted_roots(desc: FieldDesc, p: &Poly, negate: bool) -> Result<Vec<Fq>> {
    let (roots, split) = p.roots(desc)?;
    if !split {
        return Err(Error::Invalid(format!(
            "{p} does not split over F_{}; pass a larger extension degree",
            desc.q()
        )));
    }
    let mut out = Vec::new();
    for (root, mult) in roots {
        let v = if negate { -root } else { root };
        for _ in 0..mult {
            out.push(v.clone());
        }
    }
    out.sort_by_key(|x| x.residue_code());
    Ok(out)
}

/// The simple module with highest weight (λ1(u), λ2(u)), built as a tensor
/// product of evaluation modules along the roots of the two polynomials.
/// Requires P1 and P2 coprime; then every factor is two dimensional, the
/// product is irreducible, and its highest weight is exactly (λ1, λ2),
/// which is re-verified before returning.
pub fn build_finite_irrep(
    desc: FieldDesc,
    lambda1: &Tail<Fq>,
    lambda2: &Tail<Fq>,
) -> Result<SuperModule> {
    let (p1, p2) = drinfeld_polys(desc, lambda1, lambda2)?;
    let g = p1.gcd(&p2)?;
    if g.deg() != Some(0) {
        return Err(Error::Invalid(format!(
            "Drinfeld polynomials share the factor {g}"
        )));
    }
    let mu1 = sorted_roots(desc, &p1, true)?;
    let mu2 = sorted_roots(desc, &p2, false)?;
    assert_eq!(mu1.len(), mu2.len());
    let mut m = SuperModule::trivial(desc);
    for (a, b) in mu1.iter().zip(mu2.iter()) {
        let s = a.clone() + b.clone();
        assert!(!s.is_zero(), "coprimality forces two dimensional factors");
        m = m.tensor(&SuperModule::eval(desc, a, b));
    }
    let hw = m.highest_weight()?;
    let kk = m.order();
    let want = |lam: &Tail<Fq>| {
        let mut c = vec![desc.zero(); kk + 1];
        for r in 0..=kk.min(lam.order()) {
            c[r] = lam.coeff(r).clone().bind(desc);
        }
        Tail::new(c)
    };
    if !hw.lambda1.agrees_with(&want(lambda1)) || !hw.lambda2.agrees_with(&want(lambda2)) {
        return Err(Error::Invalid(
            "constructed module has the wrong highest weight".into(),
        ));
    }
    Ok(m)
}

/// ev(b_1(u)) as a series whose coefficients are polynomials in the even
/// matrix unit: the orbit product of 1 + x u^{-1}.
pub fn ev_b1_poly(desc: FieldDesc, n: usize) -> Tail<Poly> {
    let one = Poly::constant(desc.one());
    let x = Poly::new(vec![desc.zero(), desc.one()]);
    let t = Tail::new(vec![one, x]).extended(n);
    t.orbit_product(desc.p, n)
}

/// Matrix of t_{i,j}^(r) on a tensor product of evaluation modules, by the
/// closed combinatorial formula: a sum over r-element column sets
/// c_1 < ... < c_r and intermediate indices h of products of single leg
/// operators (−1)^{|i|} e_{i,h} acting in place with the crossing sign.
/// Independent of the pairwise Koszul product used by tensor().
pub fn tensor_action_oracle(
    desc: FieldDesc,
    weights: &[(Fq, Fq)],
    i: u8,
    j: u8,
    r: usize,
) -> Mat {
    struct Leg {
        dim: usize,
        parity: Vec<u8>,
        /// e[a][b] is the matrix of the unit e_{a+1,b+1}.
        e: [[Mat; 2]; 2],
    }
    let legs: Vec<Leg> = weights
        .iter()
        .map(|(l1, l2)| {
            let m = SuperModule::eval(desc, l1, l2);
            let e = |a: u8, b: u8| -> Mat {
                let t = m.t_mat(a, b, 1);
                if a == 2 {
                    -t
                } else {
                    t
                }
            };
            Leg {
                dim: m.dim(),
                parity: m.parity().to_vec(),
                e: [[e(1, 1), e(1, 2)], [e(2, 1), e(2, 2)]],
            }
        })
        .collect();
    let ell = legs.len();
    let total: usize = legs.iter().map(|l| l.dim).product();
    let decode = |mut code: usize| -> Vec<usize> {
        let mut idx = vec![0; ell];
        for c in (0..ell).rev() {
            idx[c] = code % legs[c].dim;
            code /= legs[c].dim;
        }
        idx
    };
    let encode = |idx: &[usize]| -> usize {
        let mut code = 0;
        for c in 0..ell {
            code = code * legs[c].dim + idx[c];
        }
        code
    };
    // Applies the single leg operator (−1)^{|a|} e_{a,b} at leg c to a sparse
    // vector, with the sign for carrying an odd operator past legs 1..c−1.
    let apply_box = |v: &std::collections::BTreeMap<usize, Fq>, c: usize, a: u8, b: u8| {
        let mut out: std::collections::BTreeMap<usize, Fq> = std::collections::BTreeMap::new();
        let op_odd = (idx_parity(a) + idx_parity(b)) % 2 == 1;
        for (&code, coef) in v {
            let idx = decode(code);
            let mut sign = idx_parity(a) == 1;
            if op_odd {
                let crossed: u8 = (0..c).map(|d| legs[d].parity[idx[d]]).sum();
                if crossed % 2 == 1 {
                    sign ^= true;
                }
            }
            let col = idx[c];
            let mat = &legs[c].e[a as usize - 1][b as usize - 1];
            for row in 0..legs[c].dim {
                let entry = mat[(row, col)].clone();
                if entry.is_zero() {
                    continue;
                }
                let mut nidx = idx.clone();
                nidx[c] = row;
                let mut val = coef.clone() * entry;
                if sign {
                    val = -val;
                }
                let slot = out.entry(encode(&nidx)).or_insert_with(|| desc.zero());
                *slot = slot.clone() + val;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    let mut out = Mat::zeros(total, total);
    if r == 0 {
        return if i == j { Mat::identity(total) } else { out };
    }
    if r > ell {
        return out;
    }
    let mut cols: Vec<usize> = (0..r).collect();
    loop {
        // All index chains i = h_0, h_1, ..., h_{r-1}, h_r = j.
        let mut chains = vec![vec![i]];
        for _ in 1..r {
            let mut next = Vec::new();
            for ch in chains {
                for h in 1u8..=2 {
                    let mut c2 = ch.clone();
                    c2.push(h);
                    next.push(c2);
                }
            }
            chains = next;
        }
        for ch in &mut chains {
            ch.push(j);
        }
        for ch in &chains {
            for col in 0..total {
                let mut v = std::collections::BTreeMap::new();
                v.insert(col, desc.one());
                // Rightmost factor acts first.
                for t in (0..r).rev() {
                    v = apply_box(&v, cols[t], ch[t], ch[t + 1]);
                    if v.is_empty() {
                        break;
                    }
                }
                for (row, val) in v {
                    out[(row, col)] = out[(row, col)].clone() + val;
                }
            }
        }
        // Next r-subset of 0..ell in lexicographic order.
        let mut t = r;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if cols[t] + 1 <= ell - (r - t) {
                cols[t] += 1;
                for u in t + 1..r {
                    cols[u] = cols[u - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::center::b_series;
    use crate::pbw::Gen;

    fn f3() -> FieldDesc {
        FieldDesc::new(3, 1).unwrap()
    }

    fn f5() -> FieldDesc {
        FieldDesc::new(5, 1).unwrap()
    }

    #[test]
    fn eval_modules_satisfy_rtt() {
        let desc = f5();
        for a in 0..5 {
            for b in 0..5 {
                let m = SuperModule::eval(desc, &Fq::lit(a), &Fq::lit(b));
                assert_eq!(m.verify_rtt(3), None, "λ = ({a}, {b})");
            }
        }
    }

    #[test]
    fn eval_dimension_follows_weight_sum() {
        let desc = f3();
        for a in 0..3 {
            for b in 0..3 {
                let m = SuperModule::eval(desc, &Fq::lit(a), &Fq::lit(b));
                let expect = if (a + b) % 3 == 0 { 1 } else { 2 };
                assert_eq!(m.dim(), expect);
            }
        }
    }

    #[test]
    fn eval_highest_weight() {
        let desc = f5();
        let m = SuperModule::eval(desc, &Fq::lit(2), &Fq::lit(1));
        let hw = m.highest_weight().unwrap();
        assert_eq!(hw.lambda1, Tail::new(vec![desc.one(), desc.from_int(2)]));
        assert_eq!(hw.lambda2, Tail::new(vec![desc.one(), desc.from_int(-1)]));
    }

    #[test]
    fn tensor_satisfies_rtt_and_multiplies_weights() {
        let desc = f5();
        let a = SuperModule::eval(desc, &Fq::lit(1), &Fq::lit(1));
        let b = SuperModule::eval(desc, &Fq::lit(2), &Fq::lit(1));
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 4);
        assert_eq!(t.verify_rtt(4), None);
        let hw = t.highest_weight().unwrap();
        // (1 + u^-1)(1 + 2u^-1) and (1 - u^-1)(1 - u^-1)
        assert_eq!(
            hw.lambda1,
            Tail::new(vec![desc.one(), desc.from_int(3), desc.from_int(2)])
        );
        assert_eq!(
            hw.lambda2,
            Tail::new(vec![desc.one(), desc.from_int(-2), desc.one()])
        );
    }

    #[test]
    fn tensor_agrees_with_combinatorial_action() {
        let desc = f5();
        let weights = [
            (Fq::lit(1), Fq::lit(1)),
            (Fq::lit(2), Fq::lit(4)),
            (Fq::lit(3), Fq::lit(1)),
        ];
        let mut m = SuperModule::eval(desc, &weights[0].0, &weights[0].1);
        for w in &weights[1..] {
            m = m.tensor(&SuperModule::eval(desc, &w.0, &w.1));
        }
        for i in 1u8..=2 {
            for j in 1u8..=2 {
                for r in 0..=4 {
                    let direct = m.t_mat(i, j, r);
                    let oracle = tensor_action_oracle(desc, &weights, i, j, r);
                    assert_eq!(direct, oracle, "t_{i}{j}^({r})");
                }
            }
        }
    }

    #[test]
    fn gauss_action_matches_engine() {
        let desc = f3();
        let a = SuperModule::eval(desc, &Fq::lit(1), &Fq::lit(1));
        let b = SuperModule::eval(desc, &Fq::lit(2), &Fq::lit(2));
        let m = a.tensor(&b);
        let n = 6;
        let g = m.gauss(n);
        // The engine identity e^(1) f^(1) + f^(1) e^(1) = d2^(1) − d1^(1)
        // must hold for the action matrices.
        let lhs = g.e.coeff(1).matmul(g.f.coeff(1)) .clone()
            + g.f.coeff(1).matmul(g.e.coeff(1));
        let rhs = g.d2.coeff(1).clone() - g.d1.coeff(1).clone();
        assert_eq!(lhs, rhs);
        // And a symbolic product evaluated through act() matches the matrix
        // product of the generator images.
        let x = Element::<Fq>::gen(Gen::e(1)) * Element::gen(Gen::f(2));
        let direct = g.e.coeff(1).matmul(g.f.coeff(2));
        assert_eq!(m.act(&g, &x), direct);
    }

    #[test]
    fn center_acts_as_identity_on_restricted_input() {
        let desc = f3();
        let m = SuperModule::eval(desc, &Fq::lit(1), &Fq::lit(1));
        assert_eq!(m.restricted_action_check(), None);
        let t = m.tensor(&SuperModule::eval(desc, &Fq::lit(2), &Fq::lit(2)));
        assert_eq!(t.restricted_action_check(), None);
    }

    #[test]
    fn center_action_detects_non_restricted_weights() {
        let desc = FieldDesc::new(3, 2).unwrap();
        let c = desc.gen().unwrap();
        assert!(!c.in_prime_field());
        let m = SuperModule::eval(desc, &c, &desc.one());
        let witness = m.restricted_action_check();
        assert!(witness.is_some());
        let inside = SuperModule::eval(desc, &desc.from_int(2), &desc.one());
        assert_eq!(inside.restricted_action_check(), None);
    }

    #[test]
    fn symbolic_center_acts_like_orbit_product() {
        let desc = f3();
        let m = SuperModule::eval(desc, &Fq::lit(1), &Fq::lit(2));
        let n = 8;
        let g = m.gauss(n);
        let b1 = b_series(desc, 1, n);
        let orbit = mat_orbit(desc, &g.d1, n);
        for r in 0..=n {
            assert_eq!(m.act(&g, b1.coeff(r)), orbit.coeff(r).clone(), "order {r}");
        }
    }

    #[test]
    fn burnside_and_spinning_agree() {
        let desc = f3();
        let m = SuperModule::eval(desc, &Fq::lit(1), &Fq::lit(1));
        assert_eq!(m.is_irreducible(), Irreducibility::Absolutely);
        // Direct sum of two one dimensional modules, reducible.
        let z = || MatTail::zero(2, 1);
        let mut t11 = z();
        *t11.coeff_mut(0) = Mat::identity(2);
        let mut t22 = t11.clone();
        *t11.coeff_mut(1) = Mat::from_rows(vec![
            vec![desc.one(), desc.zero()],
            vec![desc.zero(), desc.from_int(2)],
        ]);
        *t22.coeff_mut(1) = t11.coeff(1).clone();
        let sum = SuperModule::from_action(desc, vec![0, 0], [[t11, z()], [z(), t22]]);
        match sum.is_irreducible() {
            Irreducibility::Reducible { invariant } => assert_eq!(invariant.len(), 1),
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn twist_gates_on_the_orbit_identity() {
        let desc = FieldDesc::new(3, 2).unwrap();
        let m = SuperModule::eval(desc, &desc.one(), &desc.one());
        let good = Tail::new(vec![desc.one(), desc.from_int(2)]);
        let bad = Tail::new(vec![desc.one(), desc.gen().unwrap()]);
        assert!(m.twist(&bad).is_err());
        let tw = m.twist(&good).unwrap();
        assert_eq!(tw.verify_rtt(3), None);
        let hw = tw.highest_weight().unwrap();
        // Both weight tails are multiplied by 1 + 2u^-1.
        assert_eq!(
            hw.lambda1,
            Tail::new(vec![desc.one(), desc.from_int(3), desc.from_int(2)])
        );
        // The center action is unchanged by a restricted twist.
        assert_eq!(tw.restricted_action_check(), None);
    }

    #[test]
    fn dual_swaps_and_negates_the_weight() {
        let desc = f5();
        let m = SuperModule::eval(desc, &Fq::lit(2), &Fq::lit(1));
        let d = m.dual();
        assert_eq!(d.verify_rtt(3), None);
        let hw = d.highest_weight().unwrap();
        // L(2,1)* has highest weight (-1, -2).
        assert_eq!(hw.lambda1, Tail::new(vec![desc.one(), desc.from_int(-1)]));
        assert_eq!(hw.lambda2, Tail::new(vec![desc.one(), desc.from_int(2)]));
    }

    #[test]
    fn drinfeld_polynomials_from_tails() {
        let desc = f3();
        let l1 = Tail::new(vec![desc.one(), desc.one()]);
        let l2 = Tail::new(vec![desc.one(), desc.zero()]);
        let (p1, p2) = drinfeld_polys(desc, &l1, &l2).unwrap();
        assert_eq!(p1, Poly::new(vec![desc.one(), desc.one()]));
        assert_eq!(p2, Poly::new(vec![desc.zero(), desc.one()]));
    }

    #[test]
    fn built_module_carries_the_requested_weight() {
        let desc = f5();
        // λ1 = (1 + u^-1)(1 + 2u^-1), λ2 = (1 - u^-1)(1 - 2u^-1); the root
        // sets {1, 2} and {1, 2} have no pair adding to zero mod 5.
        let l1 = Tail::new(vec![desc.one(), desc.from_int(3), desc.from_int(2)]);
        let l2 = Tail::new(vec![desc.one(), desc.from_int(-3), desc.from_int(2)]);
        let m = build_finite_irrep(desc, &l1, &l2).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.verify_rtt(4), None);
        assert_eq!(m.is_irreducible(), Irreducibility::Absolutely);
        assert_eq!(m.restricted_action_check(), None);
    }

    #[test]
    fn build_rejects_shared_roots() {
        let desc = f5();
        // λ1 = 1 + u^-1 and λ2 = 1 + u^-1 give P1 = P2 = u + 1.
        let l = Tail::new(vec![desc.one(), desc.one()]);
        assert!(build_finite_irrep(desc, &l, &l).is_err());
    }

    #[test]
    fn evaluated_center_is_divisible_by_the_artin_schreier_factor() {
        for p in [3u32, 5] {
            let desc = FieldDesc::new(p, 1).unwrap();
            let n = 2 * p as usize;
            let series = ev_b1_poly(desc, n);
            let divisor = {
                // x^p − x
                let mut c = vec![desc.zero(); p as usize + 1];
                c[1] = -desc.one();
                c[p as usize] = desc.one();
                Poly::new(c)
            };
            for r in 1..=n {
                assert!(
                    divisor.divides(series.coeff(r)).unwrap(),
                    "p = {p}, order {r}"
                );
            }
        }
    }
}
