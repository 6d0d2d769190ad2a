//! Regularity polynomials, section bounds and Hilbert–Mumford weights.
//!
//! Slopes follow the α-convention of [`QPoly::slope`]: a summand of degree
//! `n` on a coarse curve of genus `g` with `deg O_X(1) = c` has slope
//! `(n + 1 - g) / c`. The multiplicity of a sheaf is its top α-coefficient.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{gen_binomial, int_binomial, QPoly, Rational};
use crate::rootcurve::{
    f_e_summand_degrees, modified_hilbert, semistable, DecomposableSheaf, GeneratingSheaf, Stability, StackyCurve,
};

/// The recursion `P_{-1} = 0`,
/// `P_i(x_0..x_i) = P_{i-1}(x_1..x_i) + Σ_j x_j · binom(P_{i-1}(x_1..x_i) - 1 + j, j)`.
///
/// `xs` must have length `i + 1`; pass `i = -1` with an empty slice for the base case.
pub fn kleiman_poly(i: i64, xs: &[BigInt]) -> Result<BigInt> {
    if i < -1 || xs.len() as i64 != i + 1 {
        return Err(Error::ShapeMismatch(format!("P_{i} takes {} arguments, got {}", i + 1, xs.len())));
    }
    Ok(kleiman(xs))
}

fn kleiman(xs: &[BigInt]) -> BigInt {
    match xs.split_first() {
        None => BigInt::zero(),
        Some((_, tail)) => {
            let prev = kleiman(tail);
            let mut acc = prev.clone();
            for (j, x) in xs.iter().enumerate() {
                acc += x * int_binomial(&(&prev - 1 + j), j);
            }
            acc
        }
    }
}

/// `P_r(c_0, ..., c_r)` with `c_i = max(b_i - a_i, 0)`.
pub fn regularity_bound(a: &[BigInt], b: &[BigInt]) -> Result<BigInt> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::ShapeMismatch(format!(
            "need two nonempty lists of equal length, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let c: Vec<BigInt> = a
        .iter()
        .zip(b)
        .map(|(a, b)| {
            let d = b - a;
            if d.is_negative() {
                BigInt::zero()
            } else {
                d
            }
        })
        .collect();
    kleiman_poly(a.len() as i64 - 1, &c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: i64,
    pub dim: u64,
    pub hilbert: QPoly,
}

/// A splitting `V = ⊕ V_n` with the polynomials of the induced graded pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightDecomposition {
    pub entries: Vec<WeightEntry>,
}

impl WeightDecomposition {
    pub fn new(entries: Vec<WeightEntry>) -> Result<WeightDecomposition> {
        let w = WeightDecomposition { entries };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.iter().any(|e| e.dim == 0) {
            return Err(Error::InvalidInput("weight spaces must have positive dimension".into()));
        }
        Ok(())
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.iter().map(|e| e.dim).sum()
    }

    /// `Σ n · dim V_n = 0`.
    pub fn is_special_linear(&self) -> bool {
        self.entries.iter().map(|e| e.weight as i128 * e.dim as i128).sum::<i128>() == 0
    }

    pub fn concat(&self, other: &WeightDecomposition) -> WeightDecomposition {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        WeightDecomposition { entries }
    }
}

/// `Σ_n n · P_n(l)`.
pub fn hm_weight(w: &WeightDecomposition, l: i64) -> Rational {
    w.entries.iter().map(|e| Rational::from(e.weight) * e.hilbert.eval_int(l)).sum()
}

/// A subspace `V' ⊂ V` with the polynomial of the subsheaf it generates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspacePair {
    pub dim: u64,
    pub hilbert: QPoly,
}

fn check_dims(n: u64, pairs: &[SubspacePair]) -> Result<()> {
    if let Some(p) = pairs.iter().find(|p| p.dim == 0 || p.dim > n) {
        return Err(Error::InvalidInput(format!("subspace dimension {} outside 1..={n}", p.dim)));
    }
    Ok(())
}

fn passes(ord: Ordering, strict: bool) -> bool {
    if strict {
        ord == Ordering::Greater
    } else {
        ord != Ordering::Less
    }
}

/// `N · P'(l) ≥ dim V' · P(l)` for every pair (`>` when `strict`).
pub fn git_semistable_check(n: u64, p: &QPoly, pairs: &[SubspacePair], l: i64, strict: bool) -> Result<bool> {
    check_dims(n, pairs)?;
    let total = p.eval_int(l);
    let n = Rational::from(n as i64);
    Ok(pairs.iter().all(|pair| {
        let lhs = &n * pair.hilbert.eval_int(l);
        let rhs = Rational::from(pair.dim as i64) * &total;
        passes(lhs.cmp(&rhs), strict)
    }))
}

/// The same comparison for all large `l`, as polynomials in the eventual order.
pub fn git_semistable_check_poly(n: u64, p: &QPoly, pairs: &[SubspacePair], strict: bool) -> Result<bool> {
    check_dims(n, pairs)?;
    let n = Rational::from(n as i64);
    Ok(pairs.iter().all(|pair| {
        let lhs = pair.hilbert.scale(&n);
        let rhs = p.scale(&Rational::from(pair.dim as i64));
        passes(lhs.lex_at_infinity(&rhs), strict)
    }))
}

/// False iff some nonzero subspace generates the zero subsheaf.
pub fn validation_injectivity(pairs: &[SubspacePair]) -> bool {
    !pairs.iter().any(|p| p.dim > 0 && p.hilbert.is_zero())
}

fn require_genus_zero(curve: &StackyCurve) -> Result<()> {
    if curve.genus != 0 {
        return Err(Error::UnsupportedGenus(curve.genus));
    }
    Ok(())
}

/// Least `m̃ ≥ 0` with `π_* End(E)(m̃)` globally generated on a genus-0 base.
pub fn find_mtilde(e: &GeneratingSheaf, curve: &StackyCurve) -> Result<u64> {
    require_genus_zero(curve)?;
    let end = DecomposableSheaf::from_lines(e.summands.clone());
    let min = f_e_summand_degrees(&end, e, curve)?.into_iter().min().expect("E is nonempty");
    let c = curve.polarization_degree as i64;
    Ok(Integer::div_ceil(&(-min).max(0), &c) as u64)
}

fn summand_slope(n: i64, curve: &StackyCurve) -> Rational {
    Rational::new(n + 1 - curve.genus as i64, curve.polarization_degree as i64)
}

/// Maximal slope of `F_E(F)`, a direct sum on the coarse curve.
pub fn mu_hat_max(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<Rational> {
    let max = f_e_summand_degrees(f, e, curve)?.into_iter().max().ok_or(Error::ZeroSheaf)?;
    Ok(summand_slope(max, curve))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeBound {
    /// `μ̂_max(F_E(F))`.
    pub lhs: Rational,
    /// `μ̂_E(F) + m̃ · c`.
    pub rhs: Rational,
    pub holds: bool,
}

/// `μ̂_max(F_E(F)) ≤ μ̂_E(F) + m̃ · deg O_X(1)` for a semistable locally free `F`.
pub fn slope_bound_check(
    f: &DecomposableSheaf,
    e: &GeneratingSheaf,
    curve: &StackyCurve,
    mtilde: u64,
) -> Result<SlopeBound> {
    if semistable(f, e, curve)? == Stability::Unstable {
        return Err(Error::NotSemistable);
    }
    let lhs = mu_hat_max(f, e, curve)?;
    let mu = modified_hilbert(f, e, curve)?.slope()?;
    let rhs = mu + Rational::from(mtilde as i64 * curve.polarization_degree as i64);
    let holds = lhs <= rhs;
    Ok(SlopeBound { lhs, rhs, holds })
}

/// `f(r) = -1 + Σ_{i=1}^r 1/i`.
pub fn langer_f(r: u64) -> Rational {
    (1..=r as i64).map(|i| Rational::new(1, i)).sum::<Rational>() - Rational::one()
}

/// `r · binom(μ̂_max + r² + f(r) + (d-1)/2, d)`, or 0 below `(d+1)/2 - r²`.
pub fn langer_h0_bound(mu_max: &Rational, r: u64, d: u64) -> Rational {
    let r_sq = Rational::from((r * r) as i64);
    if mu_max < &(Rational::new(d as i64 + 1, 2) - &r_sq) {
        return Rational::zero();
    }
    let top = mu_max + &r_sq + langer_f(r) + Rational::new(d as i64 - 1, 2);
    Rational::from(r as i64) * gen_binomial(&top, d as usize)
}

/// Section count of `F_E(F)(m)` and the value `P_E(F, m) = r · p(m)` it is compared with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LePotierCounts {
    /// Always an integer.
    pub h0: Rational,
    pub rp: Rational,
}

fn h0_twisted(degrees: &[i64], curve: &StackyCurve, m: i64) -> Rational {
    let c = curve.polarization_degree as i64;
    degrees.iter().map(|&n| Rational::from((n + m * c + 1).max(0))).sum()
}

pub fn lepotier_counts(
    f: &DecomposableSheaf,
    e: &GeneratingSheaf,
    curve: &StackyCurve,
    m: i64,
) -> Result<LePotierCounts> {
    require_genus_zero(curve)?;
    let degrees = f_e_summand_degrees(f, e, curve)?;
    if degrees.is_empty() {
        return Err(Error::ZeroSheaf);
    }
    let rp = modified_hilbert(f, e, curve)?.eval_int(m);
    Ok(LePotierCounts { h0: h0_twisted(&degrees, curve, m), rp })
}

/// `h⁰(F_E(F')(m))` against `α(F') · p_E(F)(m)`, for a subsheaf `F' ⊂ F`.
pub fn lepotier_sub_counts(
    sub: &DecomposableSheaf,
    f: &DecomposableSheaf,
    e: &GeneratingSheaf,
    curve: &StackyCurve,
    m: i64,
) -> Result<LePotierCounts> {
    require_genus_zero(curve)?;
    let degrees = f_e_summand_degrees(sub, e, curve)?;
    if degrees.is_empty() {
        return Err(Error::ZeroSheaf);
    }
    let mult = modified_hilbert(sub, e, curve)?.top_alpha()?;
    let p = modified_hilbert(f, e, curve)?.reduced()?;
    Ok(LePotierCounts { h0: h0_twisted(&degrees, curve, m), rp: mult * p.eval_int(m) })
}

/// Least `m ≥ 0` from which every summand of `F_E(F)(m)` has degree `≥ -1`,
/// so that `h⁰` equals the Euler characteristic.
pub fn lepotier_regularity(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<i64> {
    require_genus_zero(curve)?;
    let min = f_e_summand_degrees(f, e, curve)?.into_iter().min().ok_or(Error::ZeroSheaf)?;
    let c = curve.polarization_degree as i64;
    Ok(Integer::div_ceil(&(-1 - min).max(0), &c))
}
