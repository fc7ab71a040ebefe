//! Determinantal formulas for `G_λ(x; a, b)` and `g_λ(x; a, b)`: bialternants,
//! Jacobi–Trudi forms, flagged skew versions, Schur-expansion coefficients,
//! duality, Matsumura's flagged formula and skew Schur expansions.

use crate::error::{Error, Result};
use crate::ring::{det, exact_divide, Assignment, Context, Family, FamilyRule, Monomial, TruncPoly, VarId};
use crate::shapes::{DentedPartition, FlagPair, GenPartition, MarkSet, Partition};
use crate::symfunc::{
    h_ominus, h_pleth, e_ominus, e_pleth, skew_e_det, skew_h_det, schur, vandermonde, vandermonde_degree,
    Alphabet, Block, OminusArg,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `G` (canonical) or `g` (dual).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    G,
    Dual,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::G => "G",
            Kind::Dual => "g",
        })
    }
}

/// Row flags bound the entries of each row; column flags those of each
/// column of the conjugate shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Row,
    Col,
}

fn padded(p: &Partition, n: usize) -> Result<Vec<i64>> {
    Ok(p.padded(n)?.into_iter().map(i64::from).collect())
}

fn at(v: &[i64], i: usize) -> i64 {
    v[i - 1]
}

/// Determinant of the `n × n` matrix with 1-based entries `entry(i, j)`.
fn matrix_det(n: usize, ctx: Context, mut entry: impl FnMut(usize, usize) -> Result<TruncPoly>) -> Result<TruncPoly> {
    let mut m = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(entry(i, j)?);
        }
        m.push(row);
    }
    det(ctx, &m)
}

fn a(k: i64) -> Alphabet {
    Alphabet::a(k)
}

fn b(k: i64) -> Alphabet {
    Alphabet::b(k)
}

/// `∏_{(i, r, s)} ∏_{l=r}^{s} (1 + sign·v_i x_l)`.
pub fn linear_factors(ctx: Context, family: Family, sign: i64, ranges: &[(u32, u32, u32)]) -> Result<TruncPoly> {
    let mut p = TruncPoly::one(ctx);
    let c = BigInt::from(sign);
    for &(i, r, s) in ranges {
        for l in r..=s {
            let m = Monomial::from_pairs([(VarId::new(family, i), 1), (VarId::x(l), 1)]);
            if l > ctx.n {
                return Err(Error::XIndexOutOfRange { var: VarId::x(l), ctx });
            }
            p = &p + &p.mul_term(&m, &c);
        }
    }
    Ok(p)
}

/// `∏_{(i, r, s)} ∏_{l=r}^{s} (1 − sign·v_i x_l)^{−1}`, truncated.
pub fn geometric_factors(ctx: Context, family: Family, sign: i64, ranges: &[(u32, u32, u32)]) -> Result<TruncPoly> {
    let mut p = TruncPoly::one(ctx);
    let c = BigInt::from(sign);
    for &(i, r, s) in ranges {
        for l in r..=s {
            if l > ctx.n {
                return Err(Error::XIndexOutOfRange { var: VarId::x(l), ctx });
            }
            let m = Monomial::from_pairs([(VarId::new(family, i), 1), (VarId::x(l), 1)]);
            let mut acc = p.clone();
            let mut q = p;
            for _ in 0..ctx.d {
                q = q.mul_term(&m, &c);
                if q.is_zero() {
                    break;
                }
                acc += &q;
            }
            p = acc;
        }
    }
    Ok(p)
}

fn full_ranges(rows: usize, n_x: u32) -> Vec<(u32, u32, u32)> {
    (1..=rows as u32).map(|i| (i, 1, n_x)).collect()
}

fn bialternant(
    lambda: &Partition,
    ctx: Context,
    entry: impl Fn(i64, u32, usize, Context) -> Result<TruncPoly>,
) -> Result<TruncPoly> {
    let n = ctx.n as usize;
    let l = padded(lambda, n)?;
    let guard = vandermonde_degree(ctx.n);
    let big = ctx.with_degree(ctx.d + guard);
    let num = matrix_det(n, big, |i, j| entry(at(&l, i), j as u32, i, big))?;
    exact_divide(&num, &vandermonde(big), guard)
        .map_err(|e| Error::Inconsistency(format!("bialternant of {}: {}", lambda, e)))
}

/// `G_λ(x_n)` as `det(h_{λ_i+n−i}[x_j ⊖ (A_{λ_i} − B_{i−1})]) / ∏_{i<j}(x_i − x_j)`.
pub fn big_g_bialternant(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as i64;
    bialternant(lambda, ctx, |li, j, i, c| {
        let arg = OminusArg::new(Alphabet::x(j, j), a(li) - b(i as i64 - 1))?;
        h_ominus(li + n - i as i64, &arg, c)
    })
}

/// `g_λ(x_n)` as `det(h_{λ_i+n−i}[x_j − A_{λ_i−1} + B_{i−1}]) / ∏_{i<j}(x_i − x_j)`.
pub fn small_g_bialternant(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as i64;
    bialternant(lambda, ctx, |li, j, i, c| {
        let z = Alphabet::x(j, j) - a(li - 1) + b(i as i64 - 1);
        h_pleth(li + n - i as i64, &z, c)
    })
}

/// `det(h_{λ_i−i+j}[X_n ⊖ (A_{λ_i} − B_{i−1})])`.
pub fn big_g_jt(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as usize;
    let l = padded(lambda, n)?;
    matrix_det(n, ctx, |i, j| {
        let li = at(&l, i);
        let arg = OminusArg::new(Alphabet::x_all(ctx.n), a(li) - b(i as i64 - 1))?;
        h_ominus(li - i as i64 + j as i64, &arg, ctx)
    })
}

/// `det(h_{λ_i−i+j}[X_n − A_{λ_i−1} + B_{i−1}])`.
pub fn small_g_jt(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as usize;
    let l = padded(lambda, n)?;
    matrix_det(n, ctx, |i, j| {
        let li = at(&l, i);
        let z = Alphabet::x_all(ctx.n) - a(li - 1) + b(i as i64 - 1);
        h_pleth(li - i as i64 + j as i64, &z, ctx)
    })
}

/// `∏_{i,j=1}^n (1 − β_i x_j) · det(h_{λ_i−i+j}[X_n ⊖ (A_{λ_i} − B_{i−1} + B_j)])`.
pub fn big_g_jt_modified(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as usize;
    let l = padded(lambda, n)?;
    let d = matrix_det(n, ctx, |i, j| {
        let li = at(&l, i);
        let arg = OminusArg::new(Alphabet::x_all(ctx.n), a(li) - b(i as i64 - 1) + b(j as i64))?;
        h_ominus(li - i as i64 + j as i64, &arg, ctx)
    })?;
    let c = linear_factors(ctx, Family::Beta, -1, &full_ranges(n, ctx.n))?;
    Ok(&c * &d)
}

/// `det(h_{λ_i−i+j}[X_n − A_{λ_i−1} + B_{i−1} − B_{j−1}])`.
pub fn small_g_jt_modified(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as usize;
    let l = padded(lambda, n)?;
    matrix_det(n, ctx, |i, j| {
        let li = at(&l, i);
        let z = Alphabet::x_all(ctx.n) - a(li - 1) + b(i as i64 - 1) - b(j as i64 - 1);
        h_pleth(li - i as i64 + j as i64, &z, ctx)
    })
}

/// `G_λ(x_n)` or `g_λ(x_n)` through the Jacobi–Trudi formula.
pub fn grothendieck(kind: Kind, lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    match kind {
        Kind::G => big_g_jt(lambda, ctx),
        Kind::Dual => small_g_jt(lambda, ctx),
    }
}

fn param_det(n: usize, elementary: bool, entry: impl Fn(usize, usize) -> (i64, Alphabet)) -> Result<TruncPoly> {
    let ctx = Context::params();
    matrix_det(n, ctx, |i, j| {
        let (m, z) = entry(i, j);
        if elementary {
            e_pleth(m, &z, ctx)
        } else {
            h_pleth(m, &z, ctx)
        }
    })
}

fn common_len(p: &Partition, q: &Partition) -> usize {
    p.len().max(q.len())
}

/// `C_{λ,μ} = det(h_{μ_i−λ_j−i+j}[A_{λ_j} − B_{j−1}])`, the coefficient of
/// `s_μ` in `G_λ`.
pub fn upper_c(lambda: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let n = common_len(lambda, mu);
    let (l, m) = (padded(lambda, n)?, padded(mu, n)?);
    param_det(n, false, |i, j| {
        (at(&m, i) - at(&l, j) - i as i64 + j as i64, a(at(&l, j)) - b(j as i64 - 1))
    })
}

/// `c_{λ,μ} = det(h_{λ_i−μ_j−i+j}[−A_{λ_i−1} + B_{i−1}])`, the coefficient of
/// `s_μ` in `g_λ`.
pub fn lower_c(lambda: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let n = common_len(lambda, mu);
    let (l, m) = (padded(lambda, n)?, padded(mu, n)?);
    param_det(n, false, |i, j| {
        (at(&l, i) - at(&m, j) - i as i64 + j as i64, b(i as i64 - 1) - a(at(&l, i) - 1))
    })
}

/// `D_{λ,ν} = det(e_{ν_i−λ_j−i+j}[A_{j−1} − B_{λ_j}])`.
pub fn upper_d(lambda: &Partition, nu: &Partition) -> Result<TruncPoly> {
    let n = common_len(lambda, nu);
    let (l, v) = (padded(lambda, n)?, padded(nu, n)?);
    param_det(n, true, |i, j| {
        (at(&v, i) - at(&l, j) - i as i64 + j as i64, a(j as i64 - 1) - b(at(&l, j)))
    })
}

/// `d_{λ,ν} = det(e_{λ_i−ν_j−i+j}[−A_{i−1} + B_{λ_i−1}])`.
pub fn lower_d(lambda: &Partition, nu: &Partition) -> Result<TruncPoly> {
    let n = common_len(lambda, nu);
    let (l, v) = (padded(lambda, n)?, padded(nu, n)?);
    param_det(n, true, |i, j| {
        (at(&l, i) - at(&v, j) - i as i64 + j as i64, b(at(&l, i) - 1) - a(i as i64 - 1))
    })
}

fn gen_vs(rho: &GenPartition, mu: &Partition) -> Result<(usize, Vec<i64>, Vec<i64>)> {
    let n = rho.len();
    Ok((n, rho.parts().to_vec(), padded(mu, n)?))
}

/// `C'_{ρ,μ} = det(h_{μ_i−ρ_j−i+j}[−A_{μ_i} + B_i])` over `ℓ(ρ)` rows.
pub fn upper_c_prime(rho: &GenPartition, mu: &Partition) -> Result<TruncPoly> {
    let (n, r, m) = gen_vs(rho, mu)?;
    param_det(n, false, |i, j| (at(&m, i) - at(&r, j) - i as i64 + j as i64, b(i as i64) - a(at(&m, i))))
}

/// `D'_{ρ,μ} = det(e_{μ_i−ρ_j−i+j}[−A_i + B_{μ_i}])` over `ℓ(ρ)` rows.
pub fn upper_d_prime(rho: &GenPartition, mu: &Partition) -> Result<TruncPoly> {
    let (n, r, m) = gen_vs(rho, mu)?;
    param_det(n, true, |i, j| (at(&m, i) - at(&r, j) - i as i64 + j as i64, b(at(&m, i)) - a(i as i64)))
}

/// `c'_{ρ,μ} = det(h_{ρ_i−μ_j−i+j}[A_{μ_j} − B_{j−1}]) = C_{μ,ρ}`.
pub fn lower_c_prime(rho: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let n = common_len(rho, mu);
    let (r, m) = (padded(rho, n)?, padded(mu, n)?);
    param_det(n, false, |i, j| {
        (at(&r, i) - at(&m, j) - i as i64 + j as i64, a(at(&m, j)) - b(j as i64 - 1))
    })
}

/// `d'_{ρ,μ} = det(e_{ρ_i−μ_j−i+j}[A_{j−1} − B_{μ_j}])`.
pub fn lower_d_prime(rho: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let n = common_len(rho, mu);
    let (r, m) = (padded(rho, n)?, padded(mu, n)?);
    param_det(n, true, |i, j| {
        (at(&r, i) - at(&m, j) - i as i64 + j as i64, a(j as i64 - 1) - b(at(&m, j)))
    })
}

/// `⟨G_λ, g_μ⟩`, computed both as `Σ_{λ⊆ν⊆μ} C_{λ,ν} c_{μ,ν}` and as
/// `det(h_{μ_i−λ_j−i+j}[A_{λ_j} − B_{j−1} − A_{μ_i−1} + B_{i−1}])`.
pub fn hall_pairing(lambda: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let mut sum = TruncPoly::zero(Context::params());
    if lambda.is_contained_in(mu) {
        for nu in mu.subpartitions() {
            if lambda.is_contained_in(&nu) {
                sum += &(&upper_c(lambda, &nu)? * &lower_c(mu, &nu)?);
            }
        }
    }
    let n = common_len(lambda, mu);
    let (l, m) = (padded(lambda, n)?, padded(mu, n)?);
    let closed = param_det(n, false, |i, j| {
        (
            at(&m, i) - at(&l, j) - i as i64 + j as i64,
            a(at(&l, j)) - b(j as i64 - 1) - a(at(&m, i) - 1) + b(i as i64 - 1),
        )
    })?;
    if closed != sum {
        return Err(Error::Inconsistency(format!(
            "pairing of {} and {}: sum {} but determinant {}",
            lambda, mu, sum, closed
        )));
    }
    Ok(sum)
}

/// Checks `∏_{i,j} (1 − x_i y_j)^{−1} = Σ_λ G_λ(x) g_λ(y)` for all terms of
/// x-degree and y-degree at most `bound`. The `y` variables are realized as
/// `x_{n_x+1}, …, x_{n_x+n_y}`.
pub fn cauchy_check(n_x: u32, n_y: u32, bound: u32) -> Result<bool> {
    let ctx = Context::new(n_x + n_y, 2 * bound);
    let x_deg = |m: &Monomial| m.iter().filter(|(v, _)| v.is_x() && v.index <= n_x).map(|(_, e)| *e).sum::<u32>();
    let y_deg = |m: &Monomial| m.x_degree() - x_deg(m);
    let in_range = |m: &Monomial| x_deg(m) <= bound && y_deg(m) <= bound;

    let mut lhs = TruncPoly::one(ctx);
    for i in 1..=n_x {
        for j in 1..=n_y {
            let xy = Monomial::from_pairs([(VarId::x(i), 1), (VarId::x(n_x + j), 1)]);
            let mut acc = lhs.clone();
            let mut q = lhs.clone();
            for _ in 0..bound {
                q = q.mul_term(&xy, &BigInt::one()).filter_terms(in_range);
                acc += &q;
            }
            lhs = acc.filter_terms(in_range);
        }
    }

    let mut rhs = TruncPoly::zero(ctx);
    for lambda in Partition::all_up_to(bound) {
        if lambda.len() > n_x as usize {
            continue;
        }
        let gx = big_g_jt(&lambda, Context::new(n_x, bound))?.lift(ctx)?;
        let wide = (lambda.len() as u32).max(n_y);
        let gy = small_g_jt(&lambda, Context::new(wide, bound))?.restrict_x(n_y).shift_x(n_x, ctx)?;
        rhs += &(&gx * &gy).filter_terms(in_range);
    }
    Ok(lhs == rhs)
}

/// Coefficients of `s_λ` in the `G` basis (`Σ_{μ⊇λ} c_{μ,λ} G_μ`, truncated to
/// `|μ| ≤ budget`) or in the `g` basis (`Σ_{μ⊆λ} C_{μ,λ} g_μ`, finite).
pub fn schur_in_grothendieck(lambda: &Partition, basis: Kind, budget: u32) -> Result<BTreeMap<Partition, TruncPoly>> {
    let mut out = BTreeMap::new();
    match basis {
        Kind::G => {
            for mu in lambda.superpartitions(budget.saturating_sub(lambda.size()), usize::MAX) {
                let c = lower_c(&mu, lambda)?;
                if !c.is_zero() {
                    out.insert(mu, c);
                }
            }
        }
        Kind::Dual => {
            for mu in lambda.subpartitions() {
                let c = upper_c(&mu, lambda)?;
                if !c.is_zero() {
                    out.insert(mu, c);
                }
            }
        }
    }
    Ok(out)
}

/// Multiplies out [`schur_in_grothendieck`] in `n` variables and compares with
/// `s_λ(x_n)` up to x-degree `budget`.
pub fn schur_in_grothendieck_check(lambda: &Partition, basis: Kind, budget: u32, n: u32) -> Result<bool> {
    let ctx = Context::new(n, budget);
    let mut sum = TruncPoly::zero(ctx);
    for (mu, c) in schur_in_grothendieck(lambda, basis, budget)? {
        if mu.len() > n as usize {
            if basis == Kind::G {
                continue;
            }
            let wide = Context::new(mu.len() as u32, budget);
            sum += &(&c.lift(wide)? * &grothendieck(basis, &mu, wide)?).restrict_x(n);
            continue;
        }
        sum += &(&c.lift(ctx)? * &grothendieck(basis, &mu, ctx)?);
    }
    Ok(sum == schur(lambda, ctx)?)
}

/// The row hypothesis: `r_i ≤ r_{i+1}` and `s_i ≤ s_{i+1}` whenever `μ_i < λ_{i+1}`.
pub fn row_hypothesis(lambda: &[i64], mu: &[i64], r: &[u32], s: &[u32]) -> bool {
    (1..lambda.len()).all(|i| mu[i - 1] >= lambda[i] || (r[i - 1] <= r[i] && s[i - 1] <= s[i]))
}

/// The column hypothesis for `G`: `r_i − μ_i ≤ r_{i+1} − μ_{i+1}` and
/// `s_i − λ_i ≤ s_{i+1} − λ_{i+1} + 1` whenever `μ_i < λ_{i+1}`.
pub fn col_hypothesis(lambda: &[i64], mu: &[i64], r: &[u32], s: &[u32]) -> bool {
    (1..lambda.len()).all(|i| {
        mu[i - 1] >= lambda[i]
            || (r[i - 1] as i64 - mu[i - 1] <= r[i] as i64 - mu[i]
                && s[i - 1] as i64 - lambda[i - 1] <= s[i] as i64 - lambda[i] + 1)
    })
}

/// `r_i ≤ r_{i+1} + 1` and `s_i ≤ s_{i+1} + 1` whenever `μ_i < λ_{i+1}`.
/// Known to suffice for column-flagged `g` when `a = 0`, but not in general.
pub fn weak_col_hypothesis(lambda: &[i64], mu: &[i64], r: &[u32], s: &[u32]) -> bool {
    (1..lambda.len()).all(|i| mu[i - 1] >= lambda[i] || (r[i - 1] <= r[i] + 1 && s[i - 1] <= s[i] + 1))
}

/// A flagged determinant together with whether the hypotheses of the
/// corresponding identity hold for the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flagged {
    pub value: TruncPoly,
    pub hypotheses_hold: bool,
}

struct FlagData {
    n: usize,
    l: Vec<i64>,
    m: Vec<i64>,
    r: Vec<u32>,
    s: Vec<u32>,
}

fn flag_data(lambda: &[u32], mu: &Partition, flags: &FlagPair, ctx: Context) -> Result<FlagData> {
    let n = flags.len();
    if lambda.iter().skip(n).any(|&p| p > 0) {
        return Err(Error::Length(format!("shape has more than {} nonzero rows", n)));
    }
    let mut l: Vec<i64> = lambda.iter().take(n).map(|&p| p as i64).collect();
    l.resize(n, 0);
    let s = flags.resolve_s(ctx.n);
    if let Some(&top) = s.iter().max() {
        if top > ctx.n {
            return Err(Error::XIndexOutOfRange { var: VarId::x(top), ctx });
        }
    }
    Ok(FlagData { n, l, m: padded(mu, n)?, r: flags.r.clone(), s })
}

fn contained(mu: &[i64], lambda: &[i64]) -> bool {
    mu.iter().zip(lambda).all(|(m, l)| m <= l)
}

/// Flagged skew `G`.
///
/// Row: `∏_i ∏_{l=r_i}^{s_i}(1 − β_i x_l) · det(h_{λ_i−μ_j−i+j}[X_{[r_j,s_i]} ⊖ (A_{λ_i} − A_{μ_j} − B_{i−1} + B_j)])`,
/// which is `G_{λ/μ}` with row flags.
///
/// Col: `∏_i ∏_{l=r_i}^{s_i}(1 − α_i x_l)^{−1} · det(e_{λ_i−μ_j−i+j}[X_{[r_j,s_i]} ⊖ (A_{i−1} − A_j − B_{λ_i} + B_{μ_j})])`,
/// which is `G_{λ'/μ'}` with column flags.
///
/// The matrix size is the flag length; `inf` flags resolve to `ctx.n`.
pub fn big_g_flagged_det(
    lambda: &Partition,
    mu: &Partition,
    flags: &FlagPair,
    orientation: Orientation,
    ctx: Context,
) -> Result<Flagged> {
    let fd = flag_data(lambda.parts(), mu, flags, ctx)?;
    let FlagData { n, l, m, r, s } = &fd;
    let ranges: Vec<(u32, u32, u32)> = (1..=*n).map(|i| (i as u32, r[i - 1], s[i - 1])).collect();
    let (value, hyp) = match orientation {
        Orientation::Row => {
            let d = matrix_det(*n, ctx, |i, j| {
                let (li, mj) = (at(l, i), at(m, j));
                let arg = OminusArg::new(
                    Alphabet::x(r[j - 1], s[i - 1]),
                    a(li) - a(mj) - b(i as i64 - 1) + b(j as i64),
                )?;
                h_ominus(li - mj - i as i64 + j as i64, &arg, ctx)
            })?;
            let c = linear_factors(ctx, Family::Beta, -1, &ranges)?;
            (&c * &d, row_hypothesis(l, m, r, s))
        }
        Orientation::Col => {
            let d = matrix_det(*n, ctx, |i, j| {
                let (li, mj) = (at(l, i), at(m, j));
                let arg = OminusArg::new(
                    Alphabet::x(r[j - 1], s[i - 1]),
                    a(i as i64 - 1) - a(j as i64) - b(li) + b(mj),
                )?;
                e_ominus(li - mj - i as i64 + j as i64, &arg, ctx)
            })?;
            let c = geometric_factors(ctx, Family::Alpha, 1, &ranges)?;
            (&c * &d, col_hypothesis(l, m, r, s))
        }
    };
    Ok(Flagged { value, hypotheses_hold: hyp && contained(m, l) })
}

/// Flagged skew `g`.
///
/// Row: `det(h_{λ_i−μ_j−i+j}[X_{[r_j,s_i]} − A_{λ_i−1} + A_{μ_j} + B_{i−1} − B_{j−1}])`.
///
/// Col (`g_{λ'/μ'}`): `det(e_{λ_i−μ_j−i+j}[X_{[r_j,s_i]} − A_{i−1} + A_{j−1} + B_{λ_i−1} − B_{μ_j}])`.
pub fn small_g_flagged_det(
    lambda: &Partition,
    mu: &Partition,
    flags: &FlagPair,
    orientation: Orientation,
    ctx: Context,
) -> Result<Flagged> {
    let fd = flag_data(lambda.parts(), mu, flags, ctx)?;
    let FlagData { n, l, m, r, s } = &fd;
    let value = matrix_det(*n, ctx, |i, j| {
        let (li, mj) = (at(l, i), at(m, j));
        let k = li - mj - i as i64 + j as i64;
        let x = Alphabet::x(r[j - 1], s[i - 1]);
        match orientation {
            Orientation::Row => h_pleth(k, &(x - a(li - 1) + a(mj) + b(i as i64 - 1) - b(j as i64 - 1)), ctx),
            Orientation::Col => e_pleth(k, &(x - a(i as i64 - 1) + a(j as i64 - 1) + b(li - 1) - b(mj)), ctx),
        }
    })?;
    Ok(Flagged { value, hypotheses_hold: row_hypothesis(l, m, r, s) && contained(m, l) })
}

/// Dispatches to [`big_g_flagged_det`] or [`small_g_flagged_det`].
pub fn flagged_det(
    kind: Kind,
    lambda: &Partition,
    mu: &Partition,
    flags: &FlagPair,
    orientation: Orientation,
    ctx: Context,
) -> Result<Flagged> {
    match kind {
        Kind::G => big_g_flagged_det(lambda, mu, flags, orientation, ctx),
        Kind::Dual => small_g_flagged_det(lambda, mu, flags, orientation, ctx),
    }
}

/// Inputs of a (possibly flagged, possibly skew) Grothendieck evaluation.
/// With column orientation the polynomial is indexed by the conjugate shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckSpec {
    pub outer: Partition,
    pub inner: Partition,
    pub n: u32,
    pub flags: Option<FlagPair>,
    pub orientation: Orientation,
    pub kind: Kind,
}

impl GrothendieckSpec {
    /// Evaluates with x-degree bound `d`. Without flags the rows are bounded
    /// by `1..n` and the matrix size is `max(ℓ(outer), 1)`.
    pub fn evaluate(&self, d: u32) -> Result<Flagged> {
        let ctx = Context::new(self.n, d);
        let flags = match &self.flags {
            Some(f) => f.clone(),
            None => {
                let rows = self.outer.len().max(self.inner.len()).max(1);
                FlagPair::finite(vec![1; rows], vec![self.n.max(1); rows])?
            }
        };
        if self.n == 0 {
            return Err(Error::Usage("n must be positive".into()));
        }
        flagged_det(self.kind, &self.outer, &self.inner, &flags, self.orientation, ctx)
    }
}

/// `ℓ` of a dented partition: index of its last nonzero part.
fn dented_len(lambda: &DentedPartition) -> usize {
    lambda.parts().iter().rposition(|&p| p > 0).map_or(0, |i| i + 1)
}

/// Whether `I` has the form `{1..p}` or `{1..p}∖{k}` with `k ≤ p ≤ ℓ(λ)` and
/// `λ_k = … = λ_p`, where `(k, λ_k)` is the minimal cell.
pub fn mark_set_admissible(lambda: &DentedPartition, marks: &MarkSet) -> bool {
    let (k, lk) = lambda.minimal_cell();
    (k..=dented_len(lambda)).any(|p| {
        (k..=p).all(|i| lambda.part(i) == lk) && {
            let full: Vec<usize> = (1..=p).collect();
            let dented: Vec<usize> = (1..=p).filter(|&i| i != k).collect();
            let got: Vec<usize> = marks.iter().collect();
            got == full || got == dented
        }
    })
}

fn dented_data(
    lambda: &DentedPartition,
    mu: &Partition,
    flags: &FlagPair,
    marks: &MarkSet,
    ctx: Context,
) -> Result<(FlagData, bool)> {
    let fd = flag_data(lambda.parts(), mu, flags, ctx)?;
    if marks.max().is_some_and(|m| m > fd.n) {
        return Err(Error::Length(format!("mark set {:?} exceeds {} rows", marks.iter().collect::<Vec<_>>(), fd.n)));
    }
    let hyp = row_hypothesis(&fd.l, &fd.m, &fd.r, &fd.s) && contained(&fd.m, &fd.l) && mark_set_admissible(lambda, marks);
    Ok((fd, hyp))
}

/// `det(χ(r_j ≤ s_i) h_{λ_i−μ_j−i+j}[X_{[r_j,s_i]} − A_{λ_i−1+χ(i∈I)} + A_{μ_j} + B_{i−1} − B_{j−1}])`,
/// the determinant side of the left-marked generating function with virtual cells.
pub fn dented_h_det(
    lambda: &DentedPartition,
    mu: &Partition,
    flags: &FlagPair,
    marks: &MarkSet,
    ctx: Context,
) -> Result<Flagged> {
    let (fd, hyp) = dented_data(lambda, mu, flags, marks, ctx)?;
    let FlagData { n, l, m, r, s } = &fd;
    let value = matrix_det(*n, ctx, |i, j| {
        if r[j - 1] > s[i - 1] {
            return Ok(TruncPoly::zero(ctx));
        }
        let (li, mj) = (at(l, i), at(m, j));
        let chi = marks.contains(i) as i64;
        let z = Alphabet::x(r[j - 1], s[i - 1]) - a(li - 1 + chi) + a(mj) + b(i as i64 - 1) - b(j as i64 - 1);
        h_pleth(li - mj - i as i64 + j as i64, &z, ctx)
    })?;
    Ok(Flagged { value, hypotheses_hold: hyp })
}

/// `det(χ(r_j ≤ s_i) e_{λ_i−μ_j−i+j}[X_{[r_j, s_i−χ(i∈I)]} − A_{i−1} + A_{j−1} + B_{λ_i−1+χ(i∈I)} − B_{μ_j}])`,
/// the determinant side of the bottom-marked generating function with virtual cells.
pub fn dented_e_det(
    lambda: &DentedPartition,
    mu: &Partition,
    flags: &FlagPair,
    marks: &MarkSet,
    ctx: Context,
) -> Result<Flagged> {
    let (fd, hyp) = dented_data(lambda, mu, flags, marks, ctx)?;
    let FlagData { n, l, m, r, s } = &fd;
    let value = matrix_det(*n, ctx, |i, j| {
        if r[j - 1] > s[i - 1] {
            return Ok(TruncPoly::zero(ctx));
        }
        let (li, mj) = (at(l, i), at(m, j));
        let chi = marks.contains(i) as i64;
        let top = s[i - 1] - chi as u32;
        let z = Alphabet::x(r[j - 1], top) - a(i as i64 - 1) + a(j as i64 - 1) + b(li - 1 + chi) - b(mj);
        e_pleth(li - mj - i as i64 + j as i64, &z, ctx)
    })?;
    Ok(Flagged { value, hypotheses_hold: hyp })
}

fn beta() -> VarId {
    VarId::beta(1)
}

/// `binom(n, k)` for any integer `n`.
fn gen_binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= n - t;
        den *= t + 1;
    }
    num / den
}

/// `G^{[p/q]}_m = ∏_{i=q}^{p}(1 + βx_i) Σ_{k≥0} (−β)^k h_{m+k}[X_{[q,p]}]`,
/// with `β` realized as `β_1`. For `p < q` this is `(−β)^{−m}` when `m ≤ 0`.
pub fn matsumura_gpq(m: i64, p: u32, q: u32, ctx: Context) -> Result<TruncPoly> {
    let neg_beta = |k: i64| -> TruncPoly {
        let c = if k % 2 == 0 { 1 } else { -1 };
        TruncPoly::term(ctx, Monomial::pow(beta(), k as u32), c).expect("parameter term")
    };
    if p < q {
        return Ok(if m <= 0 { neg_beta(-m) } else { TruncPoly::zero(ctx) });
    }
    let x = Alphabet::x(q, p);
    let mut sum = TruncPoly::zero(ctx);
    for k in 0.max(-m)..=(ctx.d as i64 - m) {
        sum += &(&neg_beta(k) * &h_pleth(m + k, &x, ctx)?);
    }
    let pre = linear_factors(ctx, Family::Beta, 1, &[(1, q, p)])?;
    Ok(&pre * &sum)
}

fn matsumura_data(lambda: &Partition, mu: &Partition, f: &[u32], g: &[u32]) -> Result<(usize, Vec<i64>, Vec<i64>)> {
    let n = lambda.len();
    if f.len() < n || g.len() < n {
        return Err(Error::Length(format!("flags need at least {} entries", n)));
    }
    Ok((n, padded(lambda, n)?, padded(mu, n)?))
}

/// `det(Σ_{s≥0} binom(i−j, s) β^s G^{[f_i/g_j]}_{λ_i−μ_j−i+j+s})` over `ℓ(λ)` rows.
pub fn matsumura_det(lambda: &Partition, mu: &Partition, f: &[u32], g: &[u32], ctx: Context) -> Result<TruncPoly> {
    let (n, l, m) = matsumura_data(lambda, mu, f, g)?;
    matrix_det(n, ctx, |i, j| {
        let base = at(&l, i) - at(&m, j) - i as i64 + j as i64;
        let mut sum = TruncPoly::zero(ctx);
        let mut s = 0;
        while base + s <= ctx.d as i64 {
            let c = gen_binom(i as i64 - j as i64, s);
            if !c.is_zero() {
                let gp = matsumura_gpq(base + s, f[i - 1], g[j - 1], ctx)?;
                sum += &gp.mul_term(&Monomial::pow(beta(), s as u32), &c);
            }
            if i >= j && s >= (i - j) as i64 {
                break;
            }
            s += 1;
        }
        Ok(sum)
    })
}

/// The `⊖`-rewritten form `∏_i ∏_{l=g_i}^{f_i}(1 + βx_l) · det(h_{λ_i−μ_j−i+j}[X_{[g_j,f_i]} ⊖ (j−i+1)β])`,
/// taken literally with `+β` inside the `⊖`.
pub fn matsumura_rewritten(lambda: &Partition, mu: &Partition, f: &[u32], g: &[u32], ctx: Context) -> Result<TruncPoly> {
    let (n, l, m) = matsumura_data(lambda, mu, f, g)?;
    let d = matrix_det(n, ctx, |i, j| {
        let right = Alphabet::block(Block::ConstMultiple(j as i64 - i as i64 + 1, beta()));
        let arg = OminusArg::new(Alphabet::x(g[j - 1], f[i - 1]), right)?;
        h_ominus(at(&l, i) - at(&m, j) - i as i64 + j as i64, &arg, ctx)
    })?;
    let ranges: Vec<(u32, u32, u32)> = (0..n).map(|i| (1, g[i], f[i])).collect();
    Ok(&linear_factors(ctx, Family::Beta, 1, &ranges)? * &d)
}

/// Row-flagged `G_{λ/μ}` with `r = g`, `s = f`, `a = 0` and every `β_i`
/// replaced by `sign·β`.
pub fn matsumura_specialization(
    lambda: &Partition,
    mu: &Partition,
    f: &[u32],
    g: &[u32],
    sign: i64,
    ctx: Context,
) -> Result<TruncPoly> {
    let n = lambda.len();
    let flags = FlagPair::finite(g[..n].to_vec(), f[..n].to_vec())?;
    let v = big_g_flagged_det(lambda, mu, &flags, Orientation::Row, ctx)?.value;
    v.specialize(&collapse(sign))
}

/// `a = 0` and `β_i → sign·β_1`.
pub fn collapse(sign: i64) -> Assignment {
    Assignment::new()
        .family(Family::Alpha, FamilyRule::Const(BigInt::zero()))
        .family(Family::Beta, FamilyRule::Collapse { coeff: sign, var: beta() })
}

/// Multiplicative prefactor of a skew Schur expansion, kept symbolic so that
/// `ω` can act on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prefactor {
    One,
    /// `∏_{i≤rows} ∏_l (1 + sign·v_i x_l)`
    EProduct { sign: i64, family: Family, rows: usize },
    /// `∏_{i≤rows} ∏_l (1 − sign·v_i x_l)^{−1}`
    HProduct { sign: i64, family: Family, rows: usize },
}

impl Prefactor {
    /// `ω` exchanges `Σ e_m t^m` and `Σ h_m t^m`.
    pub fn omega(self) -> Prefactor {
        match self {
            Prefactor::One => Prefactor::One,
            Prefactor::EProduct { sign, family, rows } => Prefactor::HProduct { sign, family, rows },
            Prefactor::HProduct { sign, family, rows } => Prefactor::EProduct { sign, family, rows },
        }
    }

    /// `(a, b) → (−b, −a)`.
    pub fn swap_negate(self) -> Prefactor {
        let flip = |f: Family| if f == Family::Alpha { Family::Beta } else { Family::Alpha };
        match self {
            Prefactor::One => Prefactor::One,
            Prefactor::EProduct { sign, family, rows } => Prefactor::EProduct { sign: -sign, family: flip(family), rows },
            Prefactor::HProduct { sign, family, rows } => Prefactor::HProduct { sign: -sign, family: flip(family), rows },
        }
    }

    /// Value in `x_1, …, x_n` for `n = ctx.n`.
    pub fn evaluate(self, ctx: Context) -> Result<TruncPoly> {
        match self {
            Prefactor::One => Ok(TruncPoly::one(ctx)),
            Prefactor::EProduct { sign, family, rows } => linear_factors(ctx, family, sign, &full_ranges(rows, ctx.n)),
            Prefactor::HProduct { sign, family, rows } => geometric_factors(ctx, family, sign, &full_ranges(rows, ctx.n)),
        }
    }
}

/// Which skew Schur expansion: `G_{λ/μ}` in `s_{ν/ρ}` (`GH`), `G_{λ'/μ'}` in
/// `s_{ν'/ρ'}` (`GE`), and likewise for `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    GH,
    GE,
    DualH,
    DualE,
}

impl ExpansionKind {
    fn elementary(self) -> bool {
        matches!(self, ExpansionKind::GE | ExpansionKind::DualE)
    }
}

/// `prefactor · Σ coeff(ν, ρ) · s_{ν/ρ}`; in the elementary kinds a key
/// `(ν, ρ)` stands for `s_{ν'/ρ'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurExpansion {
    pub kind: ExpansionKind,
    pub entries: BTreeMap<(GenPartition, GenPartition), TruncPoly>,
    pub prefactor: Prefactor,
}

impl SchurExpansion {
    /// Multiplies out in `x_1, …, x_n`.
    pub fn evaluate(&self, ctx: Context) -> Result<TruncPoly> {
        let x = Alphabet::x_all(ctx.n);
        let mut sum = TruncPoly::zero(ctx);
        for ((nu, rho), c) in &self.entries {
            let s = if self.kind.elementary() {
                skew_e_det(nu.parts(), rho.parts(), &x, ctx)?
            } else {
                skew_h_det(nu.parts(), rho.parts(), &x, ctx)?
            };
            sum += &(&c.lift(ctx)? * &s);
        }
        Ok(&self.prefactor.evaluate(ctx)? * &sum)
    }

    /// `ω` applied termwise: `s_{ν/ρ} ↔ s_{ν'/ρ'}` and the prefactor swaps
    /// its generating series.
    pub fn omega(&self) -> SchurExpansion {
        let kind = match self.kind {
            ExpansionKind::GH => ExpansionKind::GE,
            ExpansionKind::GE => ExpansionKind::GH,
            ExpansionKind::DualH => ExpansionKind::DualE,
            ExpansionKind::DualE => ExpansionKind::DualH,
        };
        SchurExpansion { kind, entries: self.entries.clone(), prefactor: self.prefactor.omega() }
    }

    /// `(a, b) → (−b, −a)` on the coefficients and the prefactor.
    pub fn swap_negate(&self) -> Result<SchurExpansion> {
        let sub = Assignment::swap_negate();
        let mut entries = BTreeMap::new();
        for (k, c) in &self.entries {
            let v = c.specialize(&sub)?;
            if !v.is_zero() {
                entries.insert(k.clone(), v);
            }
        }
        Ok(SchurExpansion { kind: self.kind, entries, prefactor: self.prefactor.swap_negate() })
    }
}

fn gen(p: &Partition, n: usize) -> Result<GenPartition> {
    p.to_generalized(n)
}

/// The skew Schur expansion of `G_{λ/μ}`, `G_{λ'/μ'}`, `g_{λ/μ}` or
/// `g_{λ'/μ'}` over `n = ℓ(λ)` rows. For `G` the pairs are limited to
/// `|ν/λ| + |μ/ρ| ≤ budget`, which makes the expansion exact up to x-degree
/// `|λ/μ| + budget`; for `g` the sum is finite and `budget` is ignored.
pub fn skew_schur_expansion(
    lambda: &Partition,
    mu: &Partition,
    kind: ExpansionKind,
    budget: u32,
) -> Result<SchurExpansion> {
    if !mu.is_contained_in(lambda) {
        return Err(Error::InvalidPartition(format!("{} is not contained in {}", mu, lambda)));
    }
    let n = lambda.len();
    let mut entries = BTreeMap::new();
    let mut put = |nu: GenPartition, rho: GenPartition, c: TruncPoly| {
        if !c.is_zero() {
            entries.insert((nu, rho), c);
        }
    };
    let prefactor = match kind {
        ExpansionKind::GH | ExpansionKind::GE => {
            let mu_g = gen(mu, n)?;
            let lower = mu_g.shift(-(budget as i64));
            for nu in lambda.superpartitions(budget, n) {
                let left = if kind == ExpansionKind::GH { upper_c(lambda, &nu)? } else { upper_d(lambda, &nu)? };
                if left.is_zero() {
                    continue;
                }
                let rest = budget - (nu.size() - lambda.size());
                for rho in GenPartition::between(&lower, &mu_g) {
                    if mu_g.size() - rho.size() > rest as i64 {
                        continue;
                    }
                    let right =
                        if kind == ExpansionKind::GH { upper_c_prime(&rho, mu)? } else { upper_d_prime(&rho, mu)? };
                    put(gen(&nu, n)?, rho, &left * &right);
                }
            }
            if kind == ExpansionKind::GH {
                Prefactor::EProduct { sign: -1, family: Family::Beta, rows: n }
            } else {
                Prefactor::HProduct { sign: 1, family: Family::Alpha, rows: n }
            }
        }
        ExpansionKind::DualH | ExpansionKind::DualE => {
            for nu in lambda.subpartitions() {
                if !mu.is_contained_in(&nu) {
                    continue;
                }
                let left = if kind == ExpansionKind::DualH { lower_c(lambda, &nu)? } else { lower_d(lambda, &nu)? };
                if left.is_zero() {
                    continue;
                }
                for rho in nu.subpartitions() {
                    if !mu.is_contained_in(&rho) {
                        continue;
                    }
                    let right =
                        if kind == ExpansionKind::DualH { lower_c_prime(&rho, mu)? } else { lower_d_prime(&rho, mu)? };
                    put(gen(&nu, n)?, gen(&rho, n)?, &left * &right);
                }
            }
            Prefactor::One
        }
    };
    Ok(SchurExpansion { kind, entries, prefactor })
}

/// Checks `ω(G_{λ/μ}(a, b)) = G_{λ'/μ'}(−b, −a)` (or the same for `g`) on
/// expansion data: the `ω`-image of the `h`-side expansion must equal the
/// `e`-side expansion after `(a, b) → (−b, −a)`, entry by entry and in the
/// prefactor.
pub fn omega_check(lambda: &Partition, mu: &Partition, kind: Kind, budget: u32) -> Result<bool> {
    let (h, e) = match kind {
        Kind::G => (ExpansionKind::GH, ExpansionKind::GE),
        Kind::Dual => (ExpansionKind::DualH, ExpansionKind::DualE),
    };
    let image = skew_schur_expansion(lambda, mu, h, budget)?.omega();
    let target = skew_schur_expansion(lambda, mu, e, budget)?.swap_negate()?;
    Ok(image == target)
}

/// Compares an expansion multiplied out in `n_x` variables with the flagged
/// determinant for `r = 1`, `s = n_x` up to x-degree `|λ/μ| + budget`.
pub fn expansion_matches_det(
    lambda: &Partition,
    mu: &Partition,
    kind: ExpansionKind,
    budget: u32,
    n_x: u32,
) -> Result<bool> {
    let ctx = Context::new(n_x, lambda.size() - mu.size() + budget);
    let exp = skew_schur_expansion(lambda, mu, kind, budget)?.evaluate(ctx)?;
    let rows = lambda.len();
    if rows == 0 {
        return Ok(exp == TruncPoly::one(ctx));
    }
    let flags = FlagPair::finite(vec![1; rows], vec![n_x; rows])?;
    let (k, o) = match kind {
        ExpansionKind::GH => (Kind::G, Orientation::Row),
        ExpansionKind::GE => (Kind::G, Orientation::Col),
        ExpansionKind::DualH => (Kind::Dual, Orientation::Row),
        ExpansionKind::DualE => (Kind::Dual, Orientation::Col),
    };
    Ok(exp == flagged_det(k, lambda, mu, &flags, o, ctx)?.value)
}
