//! Complete homogeneous and elementary symmetric functions of signed
//! alphabets, the `⊖` combination, and Schur polynomials.

use crate::error::{Error, Result};
use crate::ring::{det, exact_divide, Context, Family, Monomial, TruncPoly, VarId};
use crate::shapes::{circ, Partition, SkewShape};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

/// A block of variables. Prefix bounds `k <= 0` denote the empty alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    /// `x_r + … + x_s`
    XInterval(u32, u32),
    /// `A_k = α_1 + … + α_k`
    APrefix(i64),
    /// `B_k = β_1 + … + β_k`
    BPrefix(i64),
    /// `α_p + … + α_q`
    AInterval(u32, u32),
    /// `β_p + … + β_q`
    BInterval(u32, u32),
    Single(VarId),
    /// `m` copies of one variable; `m` may be negative.
    ConstMultiple(i64, VarId),
}

impl Block {
    fn vars(&self) -> Vec<(VarId, i64)> {
        let range = |f: Family, p: i64, q: i64| -> Vec<(VarId, i64)> {
            (p.max(1)..=q).map(|i| (VarId::new(f, i as u32), 1)).collect()
        };
        match *self {
            Block::XInterval(r, s) => range(Family::X, r as i64, s as i64),
            Block::APrefix(k) => range(Family::Alpha, 1, k),
            Block::BPrefix(k) => range(Family::Beta, 1, k),
            Block::AInterval(p, q) => range(Family::Alpha, p as i64, q as i64),
            Block::BInterval(p, q) => range(Family::Beta, p as i64, q as i64),
            Block::Single(v) => vec![(v, 1)],
            Block::ConstMultiple(m, v) => vec![(v, m)],
        }
    }
}

/// A formal signed sum of blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    atoms: Vec<(i64, Block)>,
}

impl Alphabet {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn block(b: Block) -> Self {
        Alphabet { atoms: vec![(1, b)] }
    }

    pub fn x(r: u32, s: u32) -> Self {
        Self::block(Block::XInterval(r, s))
    }

    /// `X_n`.
    pub fn x_all(n: u32) -> Self {
        Self::x(1, n)
    }

    pub fn a(k: i64) -> Self {
        Self::block(Block::APrefix(k))
    }

    pub fn b(k: i64) -> Self {
        Self::block(Block::BPrefix(k))
    }

    pub fn single(v: VarId) -> Self {
        Self::block(Block::Single(v))
    }

    pub fn atoms(&self) -> &[(i64, Block)] {
        &self.atoms
    }

    /// Net multiplicity of every variable.
    pub fn multiplicities(&self) -> BTreeMap<VarId, i64> {
        let mut m = BTreeMap::new();
        for (sign, b) in &self.atoms {
            for (v, c) in b.vars() {
                *m.entry(v).or_insert(0) += sign * c;
            }
        }
        m.retain(|_, c| *c != 0);
        m
    }

    pub fn has_x(&self) -> bool {
        self.multiplicities().keys().any(VarId::is_x)
    }

    pub fn has_params(&self) -> bool {
        self.multiplicities().keys().any(|v| !v.is_x())
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities().is_empty()
    }
}

impl From<Block> for Alphabet {
    fn from(b: Block) -> Self {
        Alphabet::block(b)
    }
}

impl Add for Alphabet {
    type Output = Alphabet;
    fn add(mut self, rhs: Alphabet) -> Alphabet {
        self.atoms.extend(rhs.atoms);
        self
    }
}

impl Sub for Alphabet {
    type Output = Alphabet;
    fn sub(self, rhs: Alphabet) -> Alphabet {
        self + (-rhs)
    }
}

impl Neg for Alphabet {
    type Output = Alphabet;
    fn neg(self) -> Alphabet {
        Alphabet { atoms: self.atoms.into_iter().map(|(s, b)| (-s, b)).collect() }
    }
}

/// `left ⊖ right` with an x-only left side and a parameter-only right side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OminusArg {
    pub left: Alphabet,
    pub right: Alphabet,
}

impl OminusArg {
    pub fn new(left: Alphabet, right: Alphabet) -> Result<Self> {
        if left.has_params() {
            return Err(Error::UnsupportedArgument("left side of ⊖ must contain x variables only".into()));
        }
        if right.has_x() {
            return Err(Error::UnsupportedArgument("right side of ⊖ must not contain x variables".into()));
        }
        Ok(OminusArg { left, right })
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

type SeriesKey = (u32, u32, Vec<(VarId, i64)>);

thread_local! {
    static H_CACHE: RefCell<HashMap<SeriesKey, Vec<TruncPoly>>> = RefCell::new(HashMap::new());
}

/// Drops memoized series.
pub fn clear_cache() {
    H_CACHE.with(|c| c.borrow_mut().clear());
}

/// `[h_0[Z], …, h_top[Z]]`, computed from `∏_v (1 − v t)^{−c_v}`.
pub fn h_series(z: &Alphabet, top: usize, ctx: Context) -> Result<Vec<TruncPoly>> {
    let mult = z.multiplicities();
    if let Some(v) = mult.keys().find(|v| v.is_x() && v.index > ctx.n) {
        return Err(Error::XIndexOutOfRange { var: *v, ctx });
    }
    let key: SeriesKey = (ctx.n, ctx.d, mult.iter().map(|(v, c)| (*v, *c)).collect());
    let cached = H_CACHE.with(|c| {
        c.borrow().get(&key).filter(|s| s.len() > top).map(|s| s[..=top].to_vec())
    });
    if let Some(s) = cached {
        return Ok(s);
    }
    let mut series = vec![TruncPoly::zero(ctx); top + 1];
    series[0] = TruncPoly::one(ctx);
    for (&v, &c) in &mult {
        // factor series of (1 - v t)^{-c}
        let factor: Vec<TruncPoly> = (0..=top as i64)
            .map(|k| {
                let coeff = if c > 0 {
                    binom(c + k - 1, k)
                } else if k % 2 == 0 {
                    binom(-c, k)
                } else {
                    -binom(-c, k)
                };
                TruncPoly::term(ctx, Monomial::pow(v, k as u32), coeff).expect("index checked")
            })
            .collect();
        let mut next = vec![TruncPoly::zero(ctx); top + 1];
        for (i, a) in series.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, f) in factor.iter().enumerate().take(top + 1 - i) {
                if !f.is_zero() {
                    next[i + j] += &(a * f);
                }
            }
        }
        series = next;
    }
    H_CACHE.with(|c| {
        c.borrow_mut().insert(key, series.clone());
    });
    Ok(series)
}

/// `[e_0[Z], …, e_top[Z]]` via `e_k[Z] = (−1)^k h_k[−Z]`.
pub fn e_series(z: &Alphabet, top: usize, ctx: Context) -> Result<Vec<TruncPoly>> {
    let mut s = h_series(&-z.clone(), top, ctx)?;
    for (k, p) in s.iter_mut().enumerate() {
        if k % 2 == 1 {
            *p = -&*p;
        }
    }
    Ok(s)
}

/// `h_m[Z]`; zero for `m < 0`.
pub fn h_pleth(m: i64, z: &Alphabet, ctx: Context) -> Result<TruncPoly> {
    if m < 0 {
        return Ok(TruncPoly::zero(ctx));
    }
    Ok(h_series(z, m as usize, ctx)?.pop().unwrap())
}

/// `e_m[Z]`; zero for `m < 0`.
pub fn e_pleth(m: i64, z: &Alphabet, ctx: Context) -> Result<TruncPoly> {
    if m < 0 {
        return Ok(TruncPoly::zero(ctx));
    }
    Ok(e_series(z, m as usize, ctx)?.pop().unwrap())
}

pub fn h_block(m: i64, b: Block, ctx: Context) -> Result<TruncPoly> {
    h_pleth(m, &Alphabet::block(b), ctx)
}

pub fn e_block(m: i64, b: Block, ctx: Context) -> Result<TruncPoly> {
    e_pleth(m, &Alphabet::block(b), ctx)
}

fn ominus(m: i64, arg: &OminusArg, ctx: Context, elementary: bool) -> Result<TruncPoly> {
    let lo = 0.max(-m);
    // h_{m+k}[left] has x-degree m+k, so it vanishes past k = D - m
    let hi = if arg.left.is_zero() { lo } else { ctx.d as i64 - m };
    if hi < lo {
        return Ok(TruncPoly::zero(ctx));
    }
    let series = |z: &Alphabet, top: i64| {
        if elementary {
            e_series(z, top as usize, ctx)
        } else {
            h_series(z, top as usize, ctx)
        }
    };
    let left = series(&arg.left, m + hi)?;
    let right = series(&arg.right, hi)?;
    let mut out = TruncPoly::zero(ctx);
    for k in lo..=hi {
        let a = &left[(m + k) as usize];
        if !a.is_zero() {
            out += &(a * &right[k as usize]);
        }
    }
    Ok(out)
}

/// `h_m[left ⊖ right] = Σ_k h_{m+k}[left] h_k[right]`.
pub fn h_ominus(m: i64, arg: &OminusArg, ctx: Context) -> Result<TruncPoly> {
    ominus(m, arg, ctx, false)
}

/// `e_m[left ⊖ right] = Σ_k e_{m+k}[left] e_k[right]`.
pub fn e_ominus(m: i64, arg: &OminusArg, ctx: Context) -> Result<TruncPoly> {
    ominus(m, arg, ctx, true)
}

/// `det(h_{ν_i − ρ_j − i + j}[Z])` for sequences of equal length.
pub fn skew_h_det(nu: &[i64], rho: &[i64], z: &Alphabet, ctx: Context) -> Result<TruncPoly> {
    jt_det(nu, rho, z, ctx, false)
}

/// `det(e_{ν_i − ρ_j − i + j}[Z])`.
pub fn skew_e_det(nu: &[i64], rho: &[i64], z: &Alphabet, ctx: Context) -> Result<TruncPoly> {
    jt_det(nu, rho, z, ctx, true)
}

fn jt_det(nu: &[i64], rho: &[i64], z: &Alphabet, ctx: Context, elementary: bool) -> Result<TruncPoly> {
    let n = nu.len();
    if rho.len() != n {
        return Err(Error::Length(format!("{} rows against {} columns", n, rho.len())));
    }
    let idx = |i: usize, j: usize| nu[i] - rho[j] - i as i64 + j as i64;
    let top = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| idx(i, j)).max().unwrap_or(0).max(0);
    let series = if elementary {
        e_series(z, top as usize, ctx)?
    } else {
        h_series(z, top as usize, ctx)?
    };
    let m: Vec<Vec<TruncPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = idx(i, j);
                    if k < 0 {
                        TruncPoly::zero(ctx)
                    } else {
                        series[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    det(ctx, &m)
}

/// `s_{λ/μ}(x_n)` by the Jacobi–Trudi determinant over `ℓ(λ)` rows.
pub fn schur_jt(shape: &SkewShape, n: u32, ctx: Context) -> Result<TruncPoly> {
    let l = shape.outer.len();
    let nu: Vec<i64> = shape.outer.padded(l)?.into_iter().map(i64::from).collect();
    let rho: Vec<i64> = shape.inner.padded(l)?.into_iter().map(i64::from).collect();
    skew_h_det(&nu, &rho, &Alphabet::x_all(n), ctx)
}

/// `s_λ(x_n)` for a straight shape.
pub fn schur(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    if lambda.len() > ctx.n as usize {
        return Ok(TruncPoly::zero(ctx));
    }
    schur_jt(&SkewShape::straight(lambda.clone()), ctx.n, ctx)
}

/// `∏_{i<j} (x_i − x_j)` in the given context.
pub fn vandermonde(ctx: Context) -> TruncPoly {
    let n = ctx.n;
    let mut v = TruncPoly::one(ctx);
    for i in 1..=n {
        for j in i + 1..=n {
            let d = &TruncPoly::x(ctx, i).unwrap() - &TruncPoly::x(ctx, j).unwrap();
            v = &v * &d;
        }
    }
    v
}

/// Degree of the Vandermonde polynomial in `n` variables.
pub fn vandermonde_degree(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// `det(x_j^{λ_i+n−i}) / ∏_{i<j}(x_i − x_j)`.
pub fn schur_bialternant(lambda: &Partition, ctx: Context) -> Result<TruncPoly> {
    let n = ctx.n as usize;
    let l = lambda.padded(n)?;
    let guard = vandermonde_degree(ctx.n);
    let big = ctx.with_degree(ctx.d + guard);
    let m: Vec<Vec<TruncPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    TruncPoly::term(big, Monomial::pow(VarId::x(j as u32 + 1), l[i] + (n - 1 - i) as u32), 1)
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let num = det(big, &m)?;
    exact_divide(&num, &vandermonde(big), guard)
}

/// Compares `det(h_{λ_i−i+j}[X_{n−j+1}])` against `s_λ(x_n)`.
pub fn schur_flagged_check(lambda: &Partition, n: u32) -> Result<bool> {
    let ctx = Context::new(n, lambda.size());
    let l = lambda.padded(n as usize)?;
    let nn = n as usize;
    let mut m = Vec::with_capacity(nn);
    for i in 0..nn {
        let mut row = Vec::with_capacity(nn);
        for j in 0..nn {
            let k = l[i] as i64 - i as i64 + j as i64;
            row.push(h_pleth(k, &Alphabet::x_all(n - j as u32), ctx)?);
        }
        m.push(row);
    }
    Ok(det(ctx, &m)? == schur(lambda, ctx)?)
}

/// Checks invariance under every adjacent transposition of `x_1..x_n`.
pub fn check_symmetric(p: &TruncPoly, n: u32) -> Result<()> {
    for i in 1..n {
        if &p.swap_x(i, i + 1) != p {
            return Err(Error::SymmetryViolation(i, i + 1));
        }
    }
    Ok(())
}

/// Expansion of a symmetric polynomial in Schur polynomials `s_μ(x_n)`,
/// keeping only x-degrees up to `max_degree`. Coefficients are parameter
/// polynomials.
pub fn schur_expand(p: &TruncPoly, max_degree: u32) -> Result<BTreeMap<Partition, TruncPoly>> {
    let n = p.ctx().n;
    check_symmetric(p, n)?;
    let ctx = Context::new(n, max_degree.min(p.ctx().d));
    let mut rest = p.truncate(ctx.d).lift(ctx)?;
    let mut out = BTreeMap::new();
    while let Some(xm) = rest.by_x_monomial().keys().next_back().cloned() {
        let expo: Vec<u32> = (1..=n).map(|i| xm.exponent(VarId::x(i))).collect();
        let mu = Partition::new(expo.clone())
            .map_err(|_| Error::ExpansionIncomplete(format!("dominant monomial {} is not a partition", xm)))?;
        let coeff = rest.by_x_monomial().remove(&xm).unwrap();
        let s = schur(&mu, ctx)?;
        rest -= &(&coeff.lift(ctx)? * &s);
        if rest.by_x_monomial().contains_key(&xm) {
            return Err(Error::ExpansionIncomplete(format!("could not remove {}", xm)));
        }
        out.insert(mu, coeff);
    }
    Ok(out)
}

/// Compares `s_λ(x_n) s_μ(x_n)` with `s_{λ∘μ}(x_n)`.
pub fn product_circ_check(lambda: &Partition, mu: &Partition, n: u32) -> Result<bool> {
    let ctx = Context::new(n, lambda.size() + mu.size());
    let shape = circ(lambda, mu, n as usize)?;
    let lhs = &schur(lambda, ctx)? * &schur(mu, ctx)?;
    Ok(lhs == schur_jt(&shape, n, ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(ctx: Context, terms: &[(&[(VarId, u32)], i64)]) -> TruncPoly {
        TruncPoly::from_terms(
            ctx,
            terms.iter().map(|(m, c)| (Monomial::from_pairs(m.iter().copied()), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn blocks() {
        let c = Context::new(2, 4);
        let (x1, x2) = (VarId::x(1), VarId::x(2));
        assert_eq!(
            h_block(2, Block::XInterval(1, 2), c).unwrap(),
            poly(c, &[(&[(x1, 2)], 1), (&[(x1, 1), (x2, 1)], 1), (&[(x2, 2)], 1)])
        );
        assert!(e_block(2, Block::BPrefix(1), c).unwrap().is_zero());
        let b = VarId::beta(1);
        assert_eq!(e_block(2, Block::ConstMultiple(3, b), c).unwrap(), poly(c, &[(&[(b, 2)], 3)]));
        assert_eq!(h_block(2, Block::ConstMultiple(3, b), c).unwrap(), poly(c, &[(&[(b, 2)], 6)]));
    }

    #[test]
    fn linear_and_sign_rule() {
        let c = Context::new(2, 3);
        let z = Alphabet::x_all(2) - Alphabet::a(1);
        assert_eq!(
            h_pleth(1, &z, c).unwrap(),
            poly(c, &[(&[(VarId::x(1), 1)], 1), (&[(VarId::x(2), 1)], 1), (&[(VarId::alpha(1), 1)], -1)])
        );
        assert!(h_pleth(2, &-Alphabet::b(1), c).unwrap().is_zero());
        assert_eq!(h_pleth(0, &Alphabet::zero(), c).unwrap(), TruncPoly::one(c));
        assert!(h_pleth(1, &Alphabet::zero(), c).unwrap().is_zero());
    }

    #[test]
    fn ominus_negative_degree() {
        let c = Context::new(1, 3);
        let arg = OminusArg::new(Alphabet::x(1, 1), Alphabet::block(Block::Single(VarId::alpha(1)))).unwrap();
        let v = h_ominus(-2, &arg, c).unwrap();
        let (x1, a1) = (VarId::x(1), VarId::alpha(1));
        let expect = poly(
            c,
            &[
                (&[(a1, 2)], 1),
                (&[(x1, 1), (a1, 3)], 1),
                (&[(x1, 2), (a1, 4)], 1),
                (&[(x1, 3), (a1, 5)], 1),
            ],
        );
        assert_eq!(v, expect);
        let plain = OminusArg::new(Alphabet::x_all(1), Alphabet::zero()).unwrap();
        assert_eq!(h_ominus(2, &plain, c).unwrap(), h_pleth(2, &Alphabet::x_all(1), c).unwrap());
        assert!(OminusArg::new(Alphabet::x_all(1), Alphabet::x_all(1)).is_err());
    }

    #[test]
    fn ominus_single_cell() {
        let c = Context::new(1, 4);
        let arg = OminusArg::new(Alphabet::x(1, 1), Alphabet::a(1)).unwrap();
        let (x1, a1) = (VarId::x(1), VarId::alpha(1));
        let expect = poly(
            c,
            &[(&[(x1, 1)], 1), (&[(x1, 2), (a1, 1)], 1), (&[(x1, 3), (a1, 2)], 1), (&[(x1, 4), (a1, 3)], 1)],
        );
        assert_eq!(h_ominus(1, &arg, c).unwrap(), expect);
    }

    #[test]
    fn schur_examples() {
        let c2 = Context::new(2, 3);
        let c3 = Context::new(3, 3);
        assert_eq!(
            schur(&p("1"), c2).unwrap(),
            &TruncPoly::x(c2, 1).unwrap() + &TruncPoly::x(c2, 2).unwrap()
        );
        assert!(schur_jt(&SkewShape::straight(p("1,1,1")), 2, c2).unwrap().is_zero());
        let s21 = schur(&p("2,1"), c3).unwrap();
        assert_eq!(s21.terms().map(|(_, c)| c.clone()).sum::<BigInt>(), BigInt::from(8));
        assert_eq!(schur_bialternant(&p("2,1"), c2).unwrap(), schur(&p("2,1"), c2).unwrap());
        assert_eq!(schur_bialternant(&p(""), c2).unwrap(), TruncPoly::one(c2));
        assert_eq!(schur_bialternant(&p("1"), c2).unwrap(), schur(&p("1"), c2).unwrap());
    }

    #[test]
    fn flagged_and_circ() {
        assert!(schur_flagged_check(&p("2,1"), 3).unwrap());
        assert!(schur_flagged_check(&p(""), 2).unwrap());
        assert!(schur_flagged_check(&p("1"), 1).unwrap());
        assert!(product_circ_check(&p("3,1"), &p("4,2,2"), 3).unwrap());
        assert!(product_circ_check(&p(""), &p("2,1"), 2).unwrap());
        assert!(product_circ_check(&p("1"), &p("1"), 2).unwrap());
    }

    #[test]
    fn expansions() {
        let c = Context::new(3, 3);
        let e = schur_expand(&schur(&p("2,1"), c).unwrap(), 3).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&p("2,1")], TruncPoly::one(Context::params()));
        let c2 = Context::new(2, 2);
        let e = schur_expand(&h_pleth(2, &Alphabet::x_all(2), c2).unwrap(), 2).unwrap();
        assert_eq!(e.keys().cloned().collect::<Vec<_>>(), vec![p("2")]);
        let asym = TruncPoly::x(c2, 1).unwrap();
        assert!(matches!(schur_expand(&asym, 2), Err(Error::SymmetryViolation(1, 2))));
    }
}
