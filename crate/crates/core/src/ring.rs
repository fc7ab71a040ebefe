//! Truncated sparse polynomials over the integers in the variables
//! x_i, alpha_i, beta_i.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Alpha,
    Beta,
}

/// A variable `x_i`, `alpha_i` or `beta_i` with `i >= 1`.
///
/// The derived order (family first, then index) is the variable order used by
/// the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub fn new(family: Family, index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        VarId { family, index }
    }
    pub fn x(index: u32) -> Self {
        Self::new(Family::X, index)
    }
    pub fn alpha(index: u32) -> Self {
        Self::new(Family::Alpha, index)
    }
    pub fn beta(index: u32) -> Self {
        Self::new(Family::Beta, index)
    }
    pub fn is_x(&self) -> bool {
        self.family == Family::X
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::X => 'x',
            Family::Alpha => 'a',
            Family::Beta => 'b',
        };
        write!(f, "{}{}", c, self.index)
    }
}

/// Number of x variables and the maximal total x-degree kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    pub n: u32,
    pub d: u32,
}

impl Context {
    pub fn new(n: u32, d: u32) -> Self {
        Context { n, d }
    }

    /// Context for polynomials in the parameters only.
    pub fn params() -> Self {
        Context { n: 0, d: 0 }
    }

    pub fn with_degree(self, d: u32) -> Self {
        Context { n: self.n, d }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, D={})", self.n, self.d)
    }
}

/// A monomial, stored as a sorted list of (variable, positive exponent).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VarId, u32)> {
        self.0.iter()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.0
            .iter()
            .take_while(|(v, _)| v.is_x())
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn max_x_index(&self) -> u32 {
        self.0
            .iter()
            .take_while(|(v, _)| v.is_x())
            .map(|(v, _)| v.index)
            .max()
            .unwrap_or(0)
    }

    pub fn x_part(&self) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| v.is_x()).collect())
    }

    pub fn param_part(&self) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| !v.is_x()).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - self.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        ))
    }

    /// Applies a variable renaming; colliding variables have their exponents added.
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the first
    /// variable (in `VarId` order) where the two monomials differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // the one containing the smaller variable is larger
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial with integer coefficients, truncated at total x-degree `ctx.d`.
#[derive(Clone, Debug)]
pub struct TruncPoly {
    ctx: Context,
    terms: HashMap<Monomial, BigInt>,
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for TruncPoly {}

impl TruncPoly {
    pub fn zero(ctx: Context) -> Self {
        TruncPoly { ctx, terms: HashMap::new() }
    }

    pub fn one(ctx: Context) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: Context, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one(), c.into());
        p
    }

    /// A single term; fails if the monomial uses an x variable outside the context.
    pub fn term(ctx: Context, m: Monomial, c: impl Into<BigInt>) -> Result<Self> {
        if let Some(&(v, _)) = m.iter().find(|(v, _)| v.is_x() && v.index > ctx.n) {
            return Err(Error::XIndexOutOfRange { var: v, ctx });
        }
        let mut p = Self::zero(ctx);
        p.add_term(m, c.into());
        Ok(p)
    }

    pub fn var(ctx: Context, v: VarId) -> Result<Self> {
        Self::term(ctx, Monomial::var(v), 1)
    }

    pub fn x(ctx: Context, i: u32) -> Result<Self> {
        Self::var(ctx, VarId::x(i))
    }

    pub fn alpha(ctx: Context, i: u32) -> Self {
        Self::var(ctx, VarId::alpha(i)).expect("parameters never leave the context")
    }

    pub fn beta(ctx: Context, i: u32) -> Self {
        Self::var(ctx, VarId::beta(i)).expect("parameters never leave the context")
    }

    /// Builds a polynomial from terms; terms above the x-degree bound are dropped.
    pub fn from_terms<I>(ctx: Context, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            if let Some(&(v, _)) = m.iter().find(|(v, _)| v.is_x() && v.index > ctx.n) {
                return Err(Error::XIndexOutOfRange { var: v, ctx });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ctx(&self) -> Context {
        self.ctx
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in ascending monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Adds `c * m`, dropping it when it exceeds the x-degree bound.
    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || m.x_degree() > self.ctx.d {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            Err(Error::ContextMismatch(self.ctx, other.ctx))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_bounded(other, self.ctx.d))
    }

    /// Product keeping only terms of x-degree at most `bound` (and at most `ctx.d`).
    pub fn mul_bounded(&self, other: &Self, bound: u32) -> Self {
        let bound = bound.min(self.ctx.d);
        let mut out = Self::zero(self.ctx);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let mut rhs: Vec<(u32, &Monomial, &BigInt)> =
            other.terms.iter().map(|(m, c)| (m.x_degree(), m, c)).collect();
        rhs.sort_by_key(|t| t.0);
        for (ma, ca) in &self.terms {
            let da = ma.x_degree();
            if da > bound {
                continue;
            }
            for &(db, mb, cb) in &rhs {
                if da + db > bound {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        TruncPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        let mut out = Self::zero(self.ctx);
        for (a, b) in &self.terms {
            out.add_term(a.mul(m), b * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.ctx);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn min_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::x_degree).min()
    }

    pub fn max_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::x_degree).max()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.cmp(b.0))
    }

    /// The same polynomial viewed in another context: terms above the new
    /// degree bound are dropped; x variables must fit into the new `n`.
    pub fn lift(&self, ctx: Context) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            let top = m.max_x_index();
            if top > ctx.n {
                return Err(Error::XIndexOutOfRange { var: VarId::x(top), ctx });
            }
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Truncation to a smaller degree bound.
    pub fn truncate(&self, d: u32) -> Self {
        self.lift(self.ctx.with_degree(d.min(self.ctx.d)))
            .expect("truncation keeps the variable set")
    }

    /// Sets `x_i = 0` for every `i > n`.
    pub fn restrict_x(&self, n: u32) -> Self {
        let ctx = Context::new(n, self.ctx.d);
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            if m.max_x_index() <= n {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Renames `x_i` to `x_{i + offset}` inside a larger context.
    pub fn shift_x(&self, offset: u32, ctx: Context) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            let mm = m.map_vars(|v| if v.is_x() { VarId::x(v.index + offset) } else { v });
            if mm.max_x_index() > ctx.n {
                return Err(Error::XIndexOutOfRange { var: VarId::x(mm.max_x_index()), ctx });
            }
            out.add_term(mm, c.clone());
        }
        Ok(out)
    }

    /// Swaps `x_i` and `x_j`.
    pub fn swap_x(&self, i: u32, j: u32) -> Self {
        let mut out = Self::zero(self.ctx);
        for (m, c) in &self.terms {
            let mm = m.map_vars(|v| match v {
                v if v == VarId::x(i) => VarId::x(j),
                v if v == VarId::x(j) => VarId::x(i),
                v => v,
            });
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Groups terms by their x-part; the values are parameter polynomials in
    /// `Context::params()`.
    pub fn by_x_monomial(&self) -> BTreeMap<Monomial, TruncPoly> {
        let mut out: BTreeMap<Monomial, TruncPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.x_part())
                .or_insert_with(|| TruncPoly::zero(Context::params()))
                .add_term(m.param_part(), c.clone());
        }
        out
    }

    /// Groups terms by their parameter part; the values keep the x variables.
    pub fn by_param_monomial(&self) -> BTreeMap<Monomial, TruncPoly> {
        let mut out: BTreeMap<Monomial, TruncPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.param_part())
                .or_insert_with(|| TruncPoly::zero(self.ctx))
                .add_term(m.x_part(), c.clone());
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        TruncPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes parameters according to `a`.
    pub fn specialize(&self, a: &Assignment) -> Result<Self> {
        a.validate()?;
        let mut out = Self::zero(self.ctx);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for &(v, e) in m.iter() {
                match a.image(v) {
                    None => mono = mono.mul(&Monomial::pow(v, e)),
                    Some(Subst::Const(k)) => coeff *= num_traits::pow(k, e as usize),
                    Some(Subst::Param { coeff: k, var }) => {
                        coeff *= num_traits::pow(BigInt::from(k), e as usize);
                        mono = mono.mul(&Monomial::pow(var, e));
                    }
                }
                if coeff.is_zero() {
                    break;
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

fn combine(a: &TruncPoly, b: &TruncPoly, what: &str) {
    if a.ctx != b.ctx {
        panic!("{}: context mismatch {} vs {}", what, a.ctx, b.ctx);
    }
}

// Operator forms panic on context mismatch; use the `try_*` methods when the
// contexts are not known to agree.
impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        combine(self, rhs, "add");
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        combine(self, rhs, "sub");
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        combine(self, rhs, "mul");
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&TruncPoly> for TruncPoly {
    fn add_assign(&mut self, rhs: &TruncPoly) {
        combine(self, rhs, "add");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&TruncPoly> for TruncPoly {
    fn sub_assign(&mut self, rhs: &TruncPoly) {
        combine(self, rhs, "sub");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

/// Image of a parameter under a substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subst {
    Const(BigInt),
    /// `coeff * var`
    Param { coeff: i64, var: VarId },
}

/// Rule applied to every variable of a family that has no explicit image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRule {
    Const(BigInt),
    /// `v_i -> coeff * w_i` with `w` in another family, same index.
    Rename { coeff: i64, family: Family },
    /// `v_i -> coeff * var` for every `i`.
    Collapse { coeff: i64, var: VarId },
}

/// A simultaneous substitution of parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    explicit: BTreeMap<VarId, Subst>,
    rules: BTreeMap<Family, FamilyRule>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, v: VarId, s: Subst) -> Self {
        self.explicit.insert(v, s);
        self
    }

    pub fn set_const(self, v: VarId, c: i64) -> Self {
        self.set(v, Subst::Const(BigInt::from(c)))
    }

    pub fn family(mut self, f: Family, rule: FamilyRule) -> Self {
        self.rules.insert(f, rule);
        self
    }

    /// All alpha and beta set to zero.
    pub fn schur() -> Self {
        Self::new()
            .family(Family::Alpha, FamilyRule::Const(BigInt::zero()))
            .family(Family::Beta, FamilyRule::Const(BigInt::zero()))
    }

    /// `(a, b) -> (-b, -a)`.
    pub fn swap_negate() -> Self {
        Self::new()
            .family(Family::Alpha, FamilyRule::Rename { coeff: -1, family: Family::Beta })
            .family(Family::Beta, FamilyRule::Rename { coeff: -1, family: Family::Alpha })
    }

    fn validate(&self) -> Result<()> {
        if let Some(v) = self.explicit.keys().find(|v| v.is_x()) {
            return Err(Error::XSpecialization(*v));
        }
        if self.rules.contains_key(&Family::X) {
            return Err(Error::XSpecialization(VarId::x(1)));
        }
        let bad_target = self.explicit.values().any(|s| matches!(s, Subst::Param { var, .. } if var.is_x()))
            || self.rules.values().any(|r| match r {
                FamilyRule::Rename { family, .. } => *family == Family::X,
                FamilyRule::Collapse { var, .. } => var.is_x(),
                FamilyRule::Const(_) => false,
            });
        if bad_target {
            return Err(Error::UnsupportedArgument(
                "parameters cannot be replaced by x variables".into(),
            ));
        }
        Ok(())
    }

    fn image(&self, v: VarId) -> Option<Subst> {
        if let Some(s) = self.explicit.get(&v) {
            return Some(s.clone());
        }
        match self.rules.get(&v.family)? {
            FamilyRule::Const(c) => Some(Subst::Const(c.clone())),
            FamilyRule::Rename { coeff, family } => Some(Subst::Param {
                coeff: *coeff,
                var: VarId::new(*family, v.index),
            }),
            FamilyRule::Collapse { coeff, var } => Some(Subst::Param { coeff: *coeff, var: *var }),
        }
    }
}

/// Determinant by Laplace expansion along rows with memoization over column
/// subsets. No divisions are performed.
pub fn det(ctx: Context, m: &[Vec<TruncPoly>]) -> Result<TruncPoly> {
    let n = m.len();
    for (r, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, row: r, len: row.len() });
        }
        for e in row {
            if e.ctx != ctx {
                return Err(Error::ContextMismatch(ctx, e.ctx));
            }
        }
    }
    if n == 0 {
        return Ok(TruncPoly::one(ctx));
    }
    assert!(n < 64, "determinant too large for subset memoization");
    // Lowest x-degree of each row; a minor on rows k.. is multiplied by terms
    // of total degree at least low[0] + ... + low[k-1], so it can be truncated.
    let low: Vec<Option<u32>> = m
        .iter()
        .map(|row| row.iter().filter_map(TruncPoly::min_x_degree).min())
        .collect();
    if low.iter().any(Option::is_none) {
        return Ok(TruncPoly::zero(ctx));
    }
    let low: Vec<u32> = low.into_iter().map(Option::unwrap).collect();
    let mut above = vec![0u32; n + 1];
    for k in 0..n {
        above[k + 1] = above[k] + low[k];
    }

    // minors[mask] = det of rows (n - |mask|).. restricted to the columns in mask
    let mut minors: HashMap<u64, TruncPoly> = HashMap::new();
    minors.insert(0, TruncPoly::one(ctx));
    for k in (0..n).rev() {
        let bound = ctx.d.saturating_sub(above[k]);
        let mut next: HashMap<u64, TruncPoly> = HashMap::new();
        for (mask, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 || m[k][c].is_zero() {
                    continue;
                }
                let sign_neg = (mask & ((1u64 << c) - 1)).count_ones() % 2 == 1;
                let mut prod = m[k][c].mul_bounded(minor, bound);
                if sign_neg {
                    prod = -&prod;
                }
                let key = mask | (1 << c);
                match next.get_mut(&key) {
                    Some(acc) => *acc += &prod,
                    None => {
                        next.insert(key, prod);
                    }
                }
            }
        }
        minors = next;
    }
    Ok(minors.remove(&((1u64 << n) - 1)).unwrap_or_else(|| TruncPoly::zero(ctx)))
}

/// Exact quotient `num / den`.
///
/// `num` must have been computed with degree bound `D + guard` where `guard`
/// is the x-degree of `den`; the quotient lives in the context with bound `D`.
pub fn exact_divide(num: &TruncPoly, den: &TruncPoly, guard: u32) -> Result<TruncPoly> {
    num.check(den)?;
    if den.is_zero() {
        return Err(Error::DivisibilityViolation("division by zero".into()));
    }
    if guard > num.ctx.d {
        return Err(Error::DivisibilityViolation(format!(
            "guard degree {} exceeds the bound {}",
            guard, num.ctx.d
        )));
    }
    let out_ctx = num.ctx.with_degree(num.ctx.d - guard);
    let (lm, lc) = den.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let den_terms: Vec<(Monomial, BigInt)> =
        den.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut rem: BTreeMap<Monomial, BigInt> =
        num.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut q = TruncPoly::zero(out_ctx);
    while let Some((m, c)) = rem.pop_last() {
        let t = lm.quotient_of(&m).ok_or_else(|| {
            Error::DivisibilityViolation(format!("leading monomial {} not divisible by {}", m, lm))
        })?;
        if !(&c % &lc).is_zero() {
            return Err(Error::DivisibilityViolation(format!(
                "coefficient {} not divisible by {}",
                c, lc
            )));
        }
        let k = &c / &lc;
        if t.x_degree() > out_ctx.d {
            return Err(Error::DivisibilityViolation(format!(
                "quotient term {} exceeds the degree bound",
                t
            )));
        }
        for (dm, dc) in &den_terms {
            if *dm == lm {
                continue;
            }
            let prod = t.mul(dm);
            if prod.x_degree() > num.ctx.d {
                continue;
            }
            let e = rem.entry(prod).or_insert_with(BigInt::zero);
            *e -= &k * dc;
            if e.is_zero() {
                // the entry API cannot remove in place
                let key = t.mul(dm);
                rem.remove(&key);
            }
        }
        q.add_term(t, k);
    }
    Ok(q)
}
