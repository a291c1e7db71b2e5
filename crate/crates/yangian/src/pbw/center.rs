//! The p-center: the series b_1(u) = d1(u) d1(u-1) ... d1(u-p+1) and
//! b_2(u) = d2(u)^-1 d2(u-1)^-1 ... d2(u-p+1)^-1, their centrality, and
//! reduction to the p-restricted monomial basis.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Fq};
use crate::matrix::Mat;
use crate::pbw::{Element, Gen, Kind, Monomial};
use crate::series::Tail;

pub type SymbolicTail = Tail<Element<Fq>>;

/// The generator g as an element with coefficients bound to the field.
pub fn bound_gen(desc: FieldDesc, g: Gen) -> Element<Fq> {
    Element::term(Monomial::single(g), desc.one())
}

/// d_i(u) = 1 + sum_r d_i^(r) u^-r through order n.
pub fn d_series(desc: FieldDesc, i: u8, n: usize) -> SymbolicTail {
    assert!(i == 1 || i == 2);
    let kind = if i == 1 { Kind::D1 } else { Kind::D2 };
    let mut c = vec![Element::scalar(desc.one())];
    for r in 1..=n {
        c.push(bound_gen(desc, Gen::new(kind, r as u16)));
    }
    Tail::new(c)
}

/// e(u) = sum_{r>=1} e^(r) u^-r through order n.
pub fn e_series(desc: FieldDesc, n: usize) -> SymbolicTail {
    let mut c = vec![Element::zero()];
    for r in 1..=n {
        c.push(bound_gen(desc, Gen::e(r as u16)));
    }
    Tail::new(c)
}

pub fn f_series(desc: FieldDesc, n: usize) -> SymbolicTail {
    let mut c = vec![Element::zero()];
    for r in 1..=n {
        c.push(bound_gen(desc, Gen::f(r as u16)));
    }
    Tail::new(c)
}

/// b_i(u) through order n.
pub fn b_series(desc: FieldDesc, i: u8, n: usize) -> SymbolicTail {
    match i {
        1 => d_series(desc, 1, n).orbit_product(desc.p, n),
        2 => d_series(desc, 2, n)
            .inv(n)
            .expect("d2 series starts at 1")
            .orbit_product(desc.p, n),
        _ => panic!("i must be 1 or 2"),
    }
}

/// Whether b_i^(r) supercommutes with every generator of superscript <= s_max.
/// Returns the first offending generator otherwise.
pub fn centrality_check(desc: FieldDesc, i: u8, r: usize, s_max: u16) -> Option<Gen> {
    let b = b_series(desc, i, r).coeff(r).clone();
    for kind in Kind::all() {
        for s in 1..=s_max {
            let g = Gen::new(kind, s);
            if !b.super_commutator(&bound_gen(desc, g)).is_zero() {
                return Some(g);
            }
        }
    }
    None
}

/// All monomials in the d-generators of the given weight, in a fixed order.
pub fn d_monomials_of_weight(w: u64) -> Vec<Monomial> {
    fn rec(kinds: &[(Kind, u16)], at: usize, left: u64, cur: &mut Vec<(Gen, u16)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            let mut factors = cur.clone();
            factors.sort_by_key(|&(g, _)| g);
            out.push(Monomial::from_factors(factors));
            return;
        }
        if at == kinds.len() {
            return;
        }
        let (kind, sup) = kinds[at];
        let max_exp = left / sup as u64;
        for exp in (0..=max_exp).rev() {
            if exp > 0 {
                cur.push((Gen::new(kind, sup), exp as u16));
            }
            rec(kinds, at + 1, left - exp * sup as u64, cur, out);
            if exp > 0 {
                cur.pop();
            }
        }
    }
    let mut kinds = Vec::new();
    for kind in [Kind::D1, Kind::D2] {
        for sup in 1..=w.max(1) as u16 {
            kinds.push((kind, sup));
        }
    }
    let mut out = Vec::new();
    if w == 0 {
        return vec![Monomial::one()];
    }
    rec(&kinds, 0, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Weight-w data for reduction modulo the ideal generated by the b_i^(r).
///
/// The products m·b_i^(r) with weight(m) + r = w are only weight-filtered:
/// their top (weight-w) components span the graded slice, and the lower
/// tails must ride along during elimination. Rows hold the full product
/// elements; `reduced` is the row reduction of their weight-w components
/// against the column order "non-restricted monomials first", with the row
/// operations replayed on the full elements in `combos`.
struct Slice {
    columns: Vec<Monomial>,
    n_nonrestricted: usize,
    reduced: Mat,
    pivots: Vec<usize>,
    /// Full ideal elements whose weight-w parts are the rows of `reduced`.
    combos: Vec<Element<Fq>>,
}

fn ideal_slice(desc: FieldDesc, w: u64) -> Slice {
    let p = desc.p;
    let mut columns = d_monomials_of_weight(w);
    columns.sort_by_key(|m| (m.is_restricted(p), m.clone()));
    let n_nonrestricted = columns.iter().filter(|m| !m.is_restricted(p)).count();
    let col_index: BTreeMap<Monomial, usize> = columns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    let b1 = b_series(desc, 1, w as usize);
    let b2 = b_series(desc, 2, w as usize);
    let mut full: Vec<Element<Fq>> = Vec::new();
    let mut graded: Vec<Vec<Fq>> = Vec::new();
    for b in [&b1, &b2] {
        for r in 1..=w {
            let br = b.coeff(r as usize);
            if br.is_zero() {
                continue;
            }
            for m in d_monomials_of_weight(w - r) {
                let prod = Element::term(m, desc.one()) * br.clone();
                let mut row = vec![desc.zero(); columns.len()];
                let mut top_nonzero = false;
                for (mono, c) in prod.iter() {
                    if mono.weight() == w {
                        row[col_index[mono]] = c.clone();
                        top_nonzero = true;
                    }
                }
                if top_nonzero {
                    graded.push(row);
                    full.push(prod);
                }
            }
        }
    }

    let ncols = columns.len();
    if graded.is_empty() {
        return Slice {
            columns,
            n_nonrestricted,
            reduced: Mat::zeros(1, ncols),
            pivots: Vec::new(),
            combos: Vec::new(),
        };
    }
    // Augment with an identity block to recover the row operations.
    let nrows = graded.len();
    let mut aug = Mat::zeros(nrows, ncols + nrows);
    for (i, row) in graded.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            aug[(i, j)] = c.clone();
        }
        aug[(i, ncols + i)] = desc.one();
    }
    let aug_pivots = aug.rref();
    let mut reduced_rows = Vec::new();
    let mut pivots = Vec::new();
    let mut combos = Vec::new();
    for (i, &pc) in aug_pivots.iter().enumerate() {
        if pc >= ncols {
            break;
        }
        pivots.push(pc);
        reduced_rows.push((0..ncols).map(|j| aug[(i, j)].clone()).collect());
        let mut combo = Element::zero();
        for (j, orig) in full.iter().enumerate() {
            let t = aug[(i, ncols + j)].clone();
            if !t.is_zero() {
                combo.add_assign(&orig.scale(&t));
            }
        }
        combos.push(combo);
    }
    Slice {
        columns,
        n_nonrestricted,
        reduced: Mat::from_rows(reduced_rows),
        pivots,
        combos,
    }
}

pub struct SliceReport {
    pub weight: u64,
    pub dim: usize,
    pub restricted: usize,
    pub ideal_rank: usize,
    /// Restricted monomials stay independent modulo the ideal slice.
    pub independent: bool,
    /// They moreover span a complement: rank + restricted = dim.
    pub complement: bool,
}

pub fn restricted_slice(desc: FieldDesc, w: u64) -> SliceReport {
    let slice = ideal_slice(desc, w);
    let dim = slice.columns.len();
    let restricted = dim - slice.n_nonrestricted;
    let ideal_rank = slice.pivots.len();
    // Independence of the restricted monomials modulo the slice: appending
    // their indicator rows must raise the rank by their full count.
    let mut rows: Vec<Vec<Fq>> = (0..slice.pivots.len())
        .map(|i| slice.reduced.row(i).to_vec())
        .collect();
    for (j, m) in slice.columns.iter().enumerate() {
        if m.is_restricted(desc.p) {
            let mut row = vec![desc.zero(); dim];
            row[j] = desc.one();
            rows.push(row);
        }
    }
    let stacked_rank = Mat::from_rows(rows).rank();
    SliceReport {
        weight: w,
        dim,
        restricted,
        ideal_rank,
        independent: stacked_rank == ideal_rank + restricted,
        complement: ideal_rank + restricted == dim,
    }
}

/// Rewrites a d-sector element as the unique p-restricted representative
/// modulo the ideal generated by the p-center. Works down the weight
/// filtration: at the top weight carrying non-restricted monomials it
/// subtracts full ideal elements whose leading parts clear them, then
/// recurses on the (strictly lighter) non-restricted remainder.
pub fn restricted_reduce(desc: FieldDesc, x: &Element<Fq>, weight_cap: u64) -> Result<Element<Fq>> {
    if !x.is_d_sector() {
        return Err(Error::Invalid(
            "restricted reduction only handles the d-sector".into(),
        ));
    }
    if x.max_weight() > weight_cap {
        return Err(Error::CapExceeded(format!(
            "weight {} exceeds cap {weight_cap}",
            x.max_weight()
        )));
    }

    let mut work = x.clone();
    loop {
        let Some(w) = work
            .iter()
            .filter(|(m, _)| !m.is_restricted(desc.p))
            .map(|(m, _)| m.weight())
            .max()
        else {
            return Ok(work);
        };
        let slice = ideal_slice(desc, w);
        // The restricted monomials form a basis modulo the ideal, so every
        // pivot must sit in the non-restricted block and cover all of it.
        assert_eq!(
            slice.pivots,
            (0..slice.n_nonrestricted).collect::<Vec<_>>(),
            "ideal slice at weight {w} does not complement the restricted monomials"
        );
        for (row, &pc) in slice.pivots.iter().enumerate() {
            let factor = work.coeff(&slice.columns[pc]);
            if !factor.is_zero() {
                work.add_assign(&slice.combos[row].scale(&(-factor)));
            }
        }
        for (m, _) in work.iter() {
            assert!(
                m.weight() < w || m.is_restricted(desc.p),
                "top-weight elimination left a non-restricted monomial"
            );
        }
    }
}
