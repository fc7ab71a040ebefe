//! Tableau enumerations: marked multiset-valued tableaux for `G`, flagged
//! set-valued tableaux, marked reverse plane partitions for `g` (with virtual
//! cells for dented shapes), and elegant-type fillings for the Schur
//! expansion coefficients.

use crate::error::{Error, Result};
use crate::grothendieck::Orientation;
use crate::ring::{Context, Family, TruncPoly, VarId};
use crate::shapes::{Cell, DentedPartition, FlagPair, MarkSet, Partition, SkewShape};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// `v_idx` as a polynomial; zero for `idx ≤ 0`.
fn param(ctx: Context, family: Family, idx: i64) -> TruncPoly {
    if idx <= 0 {
        TruncPoly::zero(ctx)
    } else {
        TruncPoly::var(ctx, VarId::new(family, idx as u32)).expect("parameter variable")
    }
}

fn alpha(ctx: Context, idx: i64) -> TruncPoly {
    param(ctx, Family::Alpha, idx)
}

fn beta(ctx: Context, idx: i64) -> TruncPoly {
    param(ctx, Family::Beta, idx)
}

fn x(ctx: Context, i: u32) -> Result<TruncPoly> {
    TruncPoly::x(ctx, i)
}

/// Per-cell inclusive value bounds from a flag pair, indexed by row or column.
fn cell_bounds(shape: &SkewShape, flags: &FlagPair, orientation: Orientation, n: u32) -> Result<Vec<(u32, u32)>> {
    let s = flags.resolve_s(n);
    shape
        .cells()
        .iter()
        .map(|c| {
            let k = match orientation {
                Orientation::Row => c.row,
                Orientation::Col => c.col as usize,
            };
            if k > flags.len() {
                return Err(Error::Length(format!("no flag for index {} (flags have length {})", k, flags.len())));
            }
            Ok((flags.r[k - 1].max(1), s[k - 1]))
        })
        .collect()
}

/// Assignments of intervals `[lo, hi]` to the cells of a skew shape with
/// `hi ≤ lo` along rows and `hi < lo` down columns.
struct IntervalSearch {
    cells: Vec<Cell>,
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    table: Vec<Vec<(u32, u32, TruncPoly)>>,
}

impl IntervalSearch {
    fn new(
        shape: &SkewShape,
        bounds: &[(u32, u32)],
        mut gf: impl FnMut(&Cell, u32, u32) -> Result<TruncPoly>,
    ) -> Result<Self> {
        let cells = shape.cells();
        let index: BTreeMap<(usize, i64), usize> = cells.iter().enumerate().map(|(k, c)| ((c.row, c.col), k)).collect();
        let left = cells.iter().map(|c| index.get(&(c.row, c.col - 1)).copied()).collect();
        let above = cells.iter().map(|c| index.get(&(c.row.wrapping_sub(1), c.col)).copied()).collect();
        let mut table = Vec::with_capacity(cells.len());
        for (c, &(lo_b, hi_b)) in cells.iter().zip(bounds) {
            let mut opts = Vec::new();
            for lo in lo_b..=hi_b {
                for hi in lo..=hi_b {
                    let p = gf(c, lo, hi)?;
                    if !p.is_zero() {
                        opts.push((lo, hi, p));
                    }
                }
            }
            table.push(opts);
        }
        Ok(IntervalSearch { cells, left, above, table })
    }

    fn sum(&self, ctx: Context) -> TruncPoly {
        let mut out = TruncPoly::zero(ctx);
        let mut chosen = vec![(0, 0); self.cells.len()];
        self.dfs(0, &mut chosen, &TruncPoly::one(ctx), &mut out);
        out
    }

    fn dfs(&self, k: usize, chosen: &mut Vec<(u32, u32)>, acc: &TruncPoly, out: &mut TruncPoly) {
        if acc.is_zero() {
            return;
        }
        if k == self.cells.len() {
            *out += acc;
            return;
        }
        let min_lo = match (self.left[k], self.above[k]) {
            (l, a) => l.map_or(0, |l| chosen[l].1).max(a.map_or(0, |a| chosen[a].1 + 1)),
        };
        for (lo, hi, p) in &self.table[k] {
            if *lo < min_lo {
                continue;
            }
            chosen[k] = (*lo, *hi);
            self.dfs(k + 1, chosen, &(acc * p), out);
        }
    }
}

/// `Σ_{m≥1} x_v^m α_j^{m−1}`, truncated.
fn mmsvt_series(ctx: Context, v: u32, j: i64) -> Result<TruncPoly> {
    let xv = x(ctx, v)?;
    let a = alpha(ctx, j);
    let step = &xv * &a;
    let mut term = xv;
    let mut sum = TruncPoly::zero(ctx);
    while !term.is_zero() {
        sum += &term;
        term = &term * &step;
    }
    Ok(sum)
}

/// Generating function of marked multiset-valued tableaux of the given skew
/// shape: each cell holds a nonempty multiset, the first copy of each value
/// other than the smallest may be marked, and a cell in row `i`, column `j`
/// weighs `x^T α_j^{(#unmarked − 1)} (−β_i)^{#marked}`. Entries of row (or
/// column) `k` lie in `[r_k, s_k]`.
pub fn mmsvt_sum(shape: &SkewShape, flags: &FlagPair, orientation: Orientation, ctx: Context) -> Result<TruncPoly> {
    let bounds = cell_bounds(shape, flags, orientation, ctx.n)?;
    let mut series: BTreeMap<(u32, i64), TruncPoly> = BTreeMap::new();
    let mut f = |v: u32, j: i64| -> Result<TruncPoly> {
        if let Some(p) = series.get(&(v, j)) {
            return Ok(p.clone());
        }
        let p = mmsvt_series(ctx, v, j)?;
        series.insert((v, j), p.clone());
        Ok(p)
    };
    let search = IntervalSearch::new(shape, &bounds, |c, lo, hi| {
        let flo = f(lo, c.col)?;
        if lo == hi {
            return Ok(flo);
        }
        let gap = &alpha(ctx, c.col) - &beta(ctx, c.row as i64);
        let mut p = &(&flo * &gap) * &f(hi, c.col)?;
        for v in lo + 1..hi {
            p = &p * &(&TruncPoly::one(ctx) + &(&gap * &f(v, c.col)?));
        }
        Ok(p)
    })?;
    Ok(search.sum(ctx))
}

/// Generating function of flagged set-valued tableaux of shape `λ/μ` with
/// row `i` in `[g_i, f_i]`, weight `β^{|T| − |λ/μ|} x^T` and `β = β_1`.
pub fn fsvt_sum(lambda: &Partition, mu: &Partition, f: &[u32], g: &[u32], ctx: Context) -> Result<TruncPoly> {
    let shape = SkewShape::new(lambda.clone(), mu.clone())?;
    if f.len() < lambda.len() || g.len() < lambda.len() {
        return Err(Error::Length(format!("flags need at least {} entries", lambda.len())));
    }
    let bounds: Vec<(u32, u32)> = shape.cells().iter().map(|c| (g[c.row - 1].max(1), f[c.row - 1])).collect();
    if let Some(&(_, hi)) = bounds.iter().max_by_key(|b| b.1) {
        if hi > ctx.n {
            return Err(Error::XIndexOutOfRange { var: VarId::x(hi), ctx });
        }
    }
    let b = beta(ctx, 1);
    let search = IntervalSearch::new(&shape, &bounds, |_, lo, hi| {
        let mut p = x(ctx, lo)?;
        if lo < hi {
            p = &(&p * &b) * &x(ctx, hi)?;
            for v in lo + 1..hi {
                p = &p * &(&TruncPoly::one(ctx) + &(&b * &x(ctx, v)?));
            }
        }
        Ok(p)
    })?;
    Ok(search.sum(ctx))
}

/// A set- or multiset-valued tableau; each entry is `(value, marked)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedTableau {
    pub shape: SkewShape,
    pub entries: Vec<(Cell, Vec<(u32, bool)>)>,
}

impl SetValuedTableau {
    /// Builds a tableau from rows such as `"_ {1,2*,2} {2,2,4*}"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut outer = Vec::new();
        let mut inner = Vec::new();
        let mut entries = Vec::new();
        for (i, line) in text.split('/').enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let blanks = toks.iter().take_while(|t| **t == "_").count();
            inner.push(blanks as u32);
            outer.push(toks.len() as u32);
            for (j, t) in toks.iter().enumerate().skip(blanks) {
                let body = t
                    .strip_prefix('{')
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {}", t)))?;
                let mut cell = Vec::new();
                for e in body.split(',') {
                    let (v, m) = match e.trim().strip_suffix('*') {
                        Some(v) => (v, true),
                        None => (e.trim(), false),
                    };
                    cell.push((v.parse().map_err(|_| Error::Parse(format!("bad entry {}", e)))?, m));
                }
                entries.push((Cell { row: i + 1, col: j as i64 + 1 }, cell));
            }
        }
        let shape = SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)?;
        Ok(SetValuedTableau { shape, entries })
    }

    /// The marked multiset-valued weight, or an error if the tableau is not
    /// a valid marked multiset-valued tableau.
    pub fn mmsvt_weight(&self, ctx: Context) -> Result<TruncPoly> {
        let mut w = TruncPoly::one(ctx);
        let mut span: BTreeMap<(usize, i64), (u32, u32)> = BTreeMap::new();
        for (c, e) in &self.entries {
            let lo = e.iter().map(|p| p.0).min().ok_or_else(|| Error::Inconsistency("empty cell".into()))?;
            let hi = e.iter().map(|p| p.0).max().unwrap_or(lo);
            let mut seen = BTreeSet::new();
            let (mut marked, mut unmarked) = (0u32, 0u32);
            for &(v, m) in e {
                let first = seen.insert(v);
                if m {
                    if !first || v == lo {
                        return Err(Error::Inconsistency(format!("illegal mark on {} in cell {:?}", v, c)));
                    }
                    marked += 1;
                } else {
                    unmarked += 1;
                }
                w = &w * &x(ctx, v)?;
            }
            if unmarked == 0 {
                return Err(Error::Inconsistency(format!("cell {:?} has no unmarked entry", c)));
            }
            for _ in 1..unmarked {
                w = &w * &alpha(ctx, c.col);
            }
            for _ in 0..marked {
                w = &w * &(-&beta(ctx, c.row as i64));
            }
            if let Some(&(_, lhi)) = span.get(&(c.row, c.col - 1)) {
                if lhi > lo {
                    return Err(Error::Inconsistency(format!("row condition fails at {:?}", c)));
                }
            }
            if let Some(&(_, ahi)) = span.get(&(c.row.wrapping_sub(1), c.col)) {
                if ahi >= lo {
                    return Err(Error::Inconsistency(format!("column condition fails at {:?}", c)));
                }
            }
            span.insert((c.row, c.col), (lo, hi));
        }
        Ok(w)
    }
}

impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<Vec<String>> =
            (1..=self.shape.outer.len()).map(|i| vec!["_".to_string(); self.shape.inner.part(i) as usize]).collect();
        for (c, e) in &self.entries {
            let body: Vec<String> = e.iter().map(|(v, m)| format!("{}{}", v, if *m { "*" } else { "" })).collect();
            rows[c.row - 1].push(format!("{{{}}}", body.join(",")));
        }
        let lines: Vec<String> = rows.iter().map(|r| r.join(" ")).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Possible contents of one marked multiset-valued cell with entries in
/// `[lo, hi]` and at most `budget` entries.
fn mmsvt_cell_contents(lo: u32, hi: u32, budget: u32) -> Vec<Vec<(u32, bool)>> {
    fn go(v: u32, hi: u32, budget: u32, cur: &mut Vec<(u32, bool)>, out: &mut Vec<Vec<(u32, bool)>>) {
        if v > hi {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        go(v + 1, hi, budget, cur, out);
        let first = cur.is_empty();
        for m in 1..=budget {
            for mark in [false, true] {
                if mark && first {
                    continue;
                }
                let len = cur.len();
                cur.push((v, mark));
                cur.extend(std::iter::repeat((v, false)).take(m as usize - 1));
                go(v + 1, hi, budget - m, cur, out);
                cur.truncate(len);
            }
        }
    }
    let mut out = Vec::new();
    go(lo, hi, budget, &mut Vec::new(), &mut out);
    out
}

/// All marked multiset-valued tableaux of the given shape with at most
/// `ctx.d` entries, by direct enumeration.
pub fn mmsvt_list(shape: &SkewShape, flags: &FlagPair, orientation: Orientation, ctx: Context) -> Result<Vec<SetValuedTableau>> {
    let bounds = cell_bounds(shape, flags, orientation, ctx.n)?;
    let cells = shape.cells();
    let options: Vec<Vec<Vec<(u32, bool)>>> = bounds.iter().map(|&(lo, hi)| mmsvt_cell_contents(lo, hi, ctx.d)).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<(u32, bool)>> = Vec::with_capacity(cells.len());
    fn go(
        k: usize,
        budget: u32,
        cells: &[Cell],
        options: &[Vec<Vec<(u32, bool)>>],
        shape: &SkewShape,
        cur: &mut Vec<Vec<(u32, bool)>>,
        out: &mut Vec<SetValuedTableau>,
    ) {
        if k == cells.len() {
            out.push(SetValuedTableau { shape: shape.clone(), entries: cells.iter().copied().zip(cur.iter().cloned()).collect() });
            return;
        }
        let c = cells[k];
        let find = |row: usize, col: i64| cells[..k].iter().position(|d| d.row == row && d.col == col);
        let left_hi = find(c.row, c.col - 1).map(|p| cur[p].iter().map(|e| e.0).max().unwrap_or(0));
        let above_hi = find(c.row.wrapping_sub(1), c.col).map(|p| cur[p].iter().map(|e| e.0).max().unwrap_or(0));
        for opt in &options[k] {
            let size = opt.len() as u32;
            let lo = opt[0].0;
            if size > budget || left_hi.is_some_and(|h| h > lo) || above_hi.is_some_and(|h| h >= lo) {
                continue;
            }
            cur.push(opt.clone());
            go(k + 1, budget - size, cells, options, shape, cur, out);
            cur.pop();
        }
    }
    go(0, ctx.d, &cells, &options, shape, &mut cur, &mut out);
    Ok(out)
}

/// `Σ` of [`SetValuedTableau::mmsvt_weight`] over [`mmsvt_list`].
pub fn mmsvt_sum_explicit(shape: &SkewShape, flags: &FlagPair, orientation: Orientation, ctx: Context) -> Result<TruncPoly> {
    let mut sum = TruncPoly::zero(ctx);
    for t in mmsvt_list(shape, flags, orientation, ctx)? {
        sum += &t.mmsvt_weight(ctx)?;
    }
    Ok(sum)
}

/// How the marks of a marked reverse plane partition are placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarkVariant {
    /// A cell equal to its right neighbour may be marked (`−α_j`); an
    /// unmarked cell equal to the cell above weighs `β_{i−1}`.
    Left,
    /// A cell equal to its left neighbour may be marked (`−α_{j−1}`); an
    /// unmarked cell equal to the cell below weighs `β_i`.
    Right,
    /// A cell equal to the cell above may be marked (`−α_{i−1}`); an
    /// unmarked cell equal to its right neighbour weighs `β_j`.
    Bottom,
}

impl std::str::FromStr for MarkVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(MarkVariant::Left),
            "right" => Ok(MarkVariant::Right),
            "bottom" => Ok(MarkVariant::Bottom),
            _ => Err(Error::Parse(format!("unknown mark variant {}", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Nb {
    Absent,
    Val(u32),
    Inf,
}

/// A shape `λ/μ` (with `λ` possibly dented), row flags and an optional mark
/// set `I`. With a mark set, row `i` carries a virtual cell at `(i, λ_i+1)`
/// holding `s_i` if `i ∈ I` and `∞` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RppSetup {
    outer: Vec<u32>,
    inner: Vec<u32>,
    r: Vec<u32>,
    s: Vec<u32>,
    virt: Option<Vec<Option<u32>>>,
    empty: bool,
    by_column: bool,
}

impl RppSetup {
    pub fn new(outer: &DentedPartition, inner: &Partition, flags: &FlagPair, marks: Option<&MarkSet>, n_x: u32) -> Result<Self> {
        let n = flags.len();
        if outer.parts().iter().skip(n).any(|&p| p > 0) {
            return Err(Error::Length(format!("shape has more than {} nonzero rows", n)));
        }
        let mut o: Vec<u32> = outer.parts().iter().take(n).copied().collect();
        o.resize(n, 0);
        let inn = inner.padded(n)?;
        let s = flags.resolve_s(n_x);
        let r: Vec<u32> = flags.r.iter().map(|&v| v.max(1)).collect();
        let mut empty = inn.iter().zip(&o).any(|(a, b)| a > b);
        let virt = marks.map(|m| (1..=n).map(|i| m.contains(i).then(|| s[i - 1])).collect());
        if marks.is_some() && r.iter().zip(&s).any(|(a, b)| a > b) {
            empty = true;
        }
        Ok(RppSetup { outer: o, inner: inn, r, s, virt, empty, by_column: false })
    }

    /// `λ/μ` with entries of column `j` bounded by `r_j ≤ T(i, j) ≤ s_j`.
    pub fn column_flagged(outer: &Partition, inner: &Partition, flags: &FlagPair, n_x: u32) -> Result<Self> {
        let cols = outer.part(1) as usize;
        if cols > flags.len() {
            return Err(Error::Length(format!("shape has more than {} nonzero columns", flags.len())));
        }
        let rows = outer.len();
        let inn = inner.padded(rows.max(inner.len()))?;
        if inn.len() > rows {
            return Ok(RppSetup { outer: outer.padded(inn.len())?, inner: inn, r: vec![], s: vec![], virt: None, empty: true, by_column: true });
        }
        let empty = inn.iter().zip(outer.parts()).any(|(a, b)| a > b);
        let s = flags.resolve_s(n_x);
        let r: Vec<u32> = flags.r.iter().map(|&v| v.max(1)).collect();
        Ok(RppSetup { outer: outer.parts().to_vec(), inner: inn, r, s, virt: None, empty, by_column: true })
    }

    pub fn straight(outer: &Partition, inner: &Partition, flags: &FlagPair, n_x: u32) -> Result<Self> {
        RppSetup::new(&DentedPartition::from_partition(outer, flags.len())?, inner, flags, None, n_x)
    }

    fn rows(&self) -> usize {
        self.outer.len()
    }

    fn real(&self, vals: &[Vec<u32>], i: usize, j: i64) -> Option<u32> {
        if i == 0 || i > self.rows() {
            return None;
        }
        let (a, b) = (self.inner[i - 1] as i64, self.outer[i - 1] as i64);
        if j > a && j <= b {
            vals.get(i - 1).and_then(|row| row.get((j - a - 1) as usize)).copied()
        } else {
            None
        }
    }

    fn virtual_at(&self, i: usize, j: i64) -> Nb {
        match &self.virt {
            Some(v) if i >= 1 && i <= self.rows() && j == self.outer[i - 1] as i64 + 1 => match v[i - 1] {
                Some(s) => Nb::Val(s),
                None => Nb::Inf,
            },
            _ => Nb::Absent,
        }
    }

    fn nb(&self, vals: &[Vec<u32>], i: usize, j: i64) -> Nb {
        match self.real(vals, i, j) {
            Some(v) => Nb::Val(v),
            None => self.virtual_at(i, j),
        }
    }

    /// Admissible value range of cell `(i, j)` given the cells to its left
    /// and above.
    fn range(&self, vals: &[Vec<u32>], i: usize, j: i64) -> Option<(u32, u32)> {
        let k = if self.by_column { j as usize } else { i };
        let mut lo = self.r[k - 1];
        let mut hi = self.s[k - 1];
        if let Some(v) = self.real(vals, i, j - 1) {
            lo = lo.max(v);
        }
        match self.nb(vals, i - 1, j) {
            Nb::Val(v) => lo = lo.max(v),
            Nb::Inf => return None,
            Nb::Absent => {}
        }
        if let Nb::Val(v) = self.virtual_at(i, j + 1) {
            hi = hi.min(v);
        }
        if let Nb::Val(v) = self.virtual_at(i + 1, j) {
            hi = hi.min(v);
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// All reverse plane partitions (rows and columns weakly increasing)
    /// compatible with the flags and virtual cells, row by row.
    pub fn fillings(&self) -> Vec<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        if self.empty {
            return out;
        }
        let mut vals: Vec<Vec<u32>> = vec![Vec::new(); self.rows()];
        self.fill(1, self.inner.first().map_or(1, |&a| a as i64 + 1), &mut vals, &mut out);
        out
    }

    fn fill(&self, i: usize, j: i64, vals: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if i > self.rows() {
            out.push(vals.clone());
            return;
        }
        if j > self.outer[i - 1] as i64 {
            let next = self.inner.get(i).map_or(1, |&a| a as i64 + 1);
            self.fill(i + 1, next, vals, out);
            return;
        }
        let Some((lo, hi)) = self.range(vals, i, j) else { return };
        for v in lo..=hi {
            vals[i - 1].push(v);
            self.fill(i, j + 1, vals, out);
            vals[i - 1].pop();
        }
    }

    /// `(unmarked weight, marked weight if markable)` of cell `(i, j)`.
    fn cell_weights(
        &self,
        vals: &[Vec<u32>],
        i: usize,
        j: i64,
        variant: MarkVariant,
        ctx: Context,
    ) -> Result<(TruncPoly, Option<TruncPoly>)> {
        let t = self.real(vals, i, j).expect("cell inside the shape");
        let same = |nb: Nb| nb == Nb::Val(t);
        let xt = || x(ctx, t);
        Ok(match variant {
            MarkVariant::Left => (
                if same(self.nb(vals, i - 1, j)) { beta(ctx, i as i64 - 1) } else { xt()? },
                same(self.nb(vals, i, j + 1)).then(|| -&alpha(ctx, j)),
            ),
            MarkVariant::Right => (
                if same(self.nb(vals, i + 1, j)) { beta(ctx, i as i64) } else { xt()? },
                (self.real(vals, i, j - 1) == Some(t)).then(|| -&alpha(ctx, j - 1)),
            ),
            MarkVariant::Bottom => (
                if same(self.nb(vals, i, j + 1)) { beta(ctx, j) } else { xt()? },
                same(self.nb(vals, i - 1, j)).then(|| -&alpha(ctx, i as i64 - 1)),
            ),
        })
    }

    fn cells(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (1..=self.rows()).flat_map(move |i| (self.inner[i - 1] as i64 + 1..=self.outer[i - 1] as i64).map(move |j| (i, j)))
    }

    /// `Σ_RPP ∏_cells (unmarked + [markable]·marked)`.
    pub fn generating_function(&self, variant: MarkVariant, ctx: Context) -> Result<TruncPoly> {
        let mut sum = TruncPoly::zero(ctx);
        for vals in self.fillings() {
            let mut w = TruncPoly::one(ctx);
            for (i, j) in self.cells() {
                let (u, m) = self.cell_weights(&vals, i, j, variant, ctx)?;
                w = match m {
                    Some(m) => &w * &(&u + &m),
                    None => &w * &u,
                };
            }
            sum += &w;
        }
        Ok(sum)
    }

    /// All marked reverse plane partitions.
    pub fn marked(&self, variant: MarkVariant, ctx: Context) -> Result<Vec<MarkedRpp>> {
        let mut out = Vec::new();
        for vals in self.fillings() {
            let mut markable = Vec::new();
            for (i, j) in self.cells() {
                if self.cell_weights(&vals, i, j, variant, ctx)?.1.is_some() {
                    markable.push((i, j));
                }
            }
            for mask in 0u64..(1 << markable.len()) {
                let marks = markable.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, c)| *c).collect();
                out.push(MarkedRpp { inner: self.inner.clone(), values: vals.clone(), marks });
            }
        }
        Ok(out)
    }

    /// Weight of a marked reverse plane partition; errors if it is not valid
    /// for this setup.
    pub fn weight(&self, t: &MarkedRpp, variant: MarkVariant, ctx: Context) -> Result<TruncPoly> {
        let bad = |why: String| Err(Error::Inconsistency(why));
        if self.empty {
            return bad("the setup admits no fillings".into());
        }
        let outer: Vec<u32> = t.inner.iter().zip(&t.values).map(|(a, r)| a + r.len() as u32).collect();
        if t.inner != self.inner || outer != self.outer {
            return bad(format!("shape {:?}/{:?} does not match {:?}/{:?}", outer, t.inner, self.outer, self.inner));
        }
        if let Some(&(i, j)) = t.marks.iter().find(|&&(i, j)| self.real(&t.values, i, j).is_none()) {
            return bad(format!("mark at ({}, {}) is outside the shape", i, j));
        }
        let mut w = TruncPoly::one(ctx);
        for (i, j) in self.cells() {
            let v = self.real(&t.values, i, j).expect("cell inside the shape");
            let prefix: Vec<Vec<u32>> = t
                .values
                .iter()
                .enumerate()
                .map(|(k, row)| if k + 1 < i { row.clone() } else if k + 1 == i { row[..(j - self.inner[k] as i64 - 1) as usize].to_vec() } else { Vec::new() })
                .collect();
            match self.range(&prefix, i, j) {
                Some((lo, hi)) if lo <= v && v <= hi => {}
                _ => return bad(format!("entry {} at ({}, {}) violates the filling rules", v, i, j)),
            }
            let (u, m) = self.cell_weights(&t.values, i, j, variant, ctx)?;
            if t.marks.contains(&(i, j)) {
                match m {
                    Some(m) => w = &w * &m,
                    None => return bad(format!("cell ({}, {}) cannot be marked", i, j)),
                }
            } else {
                w = &w * &u;
            }
        }
        Ok(w)
    }
}

/// A reverse plane partition together with a set of marked cells `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedRpp {
    pub inner: Vec<u32>,
    pub values: Vec<Vec<u32>>,
    pub marks: BTreeSet<(usize, i64)>,
}

impl MarkedRpp {
    /// Parses rows separated by `/`, entries by whitespace; `_` is a cell of
    /// the inner shape and a trailing `*` marks an entry.
    pub fn parse(text: &str) -> Result<Self> {
        let mut inner = Vec::new();
        let mut values = Vec::new();
        let mut marks = BTreeSet::new();
        for (i, line) in text.split('/').enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let blanks = toks.iter().take_while(|t| **t == "_").count();
            inner.push(blanks as u32);
            let mut row = Vec::new();
            for (j, t) in toks.iter().enumerate().skip(blanks) {
                let (v, m) = match t.strip_suffix('*') {
                    Some(v) => (v, true),
                    None => (*t, false),
                };
                row.push(v.parse().map_err(|_| Error::Parse(format!("bad entry {}", t)))?);
                if m {
                    marks.insert((i + 1, j as i64 + 1));
                }
            }
            values.push(row);
        }
        Ok(MarkedRpp { inner, values, marks })
    }

    fn value(&self, i: usize, j: i64) -> Option<u32> {
        let a = *self.inner.get(i.checked_sub(1)?)? as i64;
        if j <= a {
            return None;
        }
        self.values[i - 1].get((j - a - 1) as usize).copied()
    }
}

impl fmt::Display for MarkedRpp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let a = self.inner[k] as usize;
                let mut toks = vec!["_".to_string(); a];
                for (c, v) in row.iter().enumerate() {
                    let star = if self.marks.contains(&(k + 1, (a + c + 1) as i64)) { "*" } else { "" };
                    toks.push(format!("{}{}", v, star));
                }
                toks.join(" ")
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Moves left-variant marks to right-variant marks. Within each connected
/// region of equal entries, a mark at `(a, b)` moves to `(a−1, b+1)`, or, when
/// `a` is the highest row of column `b` in the region, to `(a', b+1)` with
/// `a'` the lowest row having both `(a', b)` and `(a', b+1)` in the region.
pub fn left_to_right(t: &MarkedRpp) -> MarkedRpp {
    let mut region: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let cells: Vec<(usize, i64)> = t
        .values
        .iter()
        .enumerate()
        .flat_map(|(k, row)| (0..row.len()).map(move |c| (k + 1, t.inner[k] as i64 + c as i64 + 1)))
        .collect();
    let mut next = 0;
    for &start in &cells {
        if region.contains_key(&start) {
            continue;
        }
        let v = t.value(start.0, start.1);
        let mut stack = vec![start];
        region.insert(start, next);
        while let Some((i, j)) = stack.pop() {
            for nb in [(i.wrapping_sub(1), j), (i + 1, j), (i, j - 1), (i, j + 1)] {
                if !region.contains_key(&nb) && t.value(nb.0, nb.1).is_some() && t.value(nb.0, nb.1) == v {
                    region.insert(nb, next);
                    stack.push(nb);
                }
            }
        }
        next += 1;
    }
    let marks = t
        .marks
        .iter()
        .map(|&(a, b)| {
            let id = region[&(a, b)];
            let in_region = |i: usize, j: i64| region.get(&(i, j)) == Some(&id);
            let rows: Vec<usize> = region.iter().filter(|(c, r)| **r == id && c.1 == b).map(|(c, _)| c.0).collect();
            let top = *rows.iter().min().expect("column of the mark");
            if a == top {
                let bottom = rows.iter().copied().filter(|&i| in_region(i, b + 1)).max().unwrap_or(a);
                (bottom, b + 1)
            } else {
                (a - 1, b + 1)
            }
        })
        .collect();
    MarkedRpp { inner: t.inner.clone(), values: t.values.clone(), marks }
}

/// Comparison between an entry and its left (row) or upper (column) neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    WeakInc,
    StrictInc,
    WeakDec,
    StrictDec,
}

impl Relation {
    fn admits(self, prev: i64, t: i64) -> bool {
        match self {
            Relation::WeakInc => prev <= t,
            Relation::StrictInc => prev < t,
            Relation::WeakDec => prev >= t,
            Relation::StrictDec => prev > t,
        }
    }
}

/// Fillings with entries bounded per cell and monotone along rows and columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElegantFamily {
    /// Rows weak, columns strict increasing, `min(i−j, 0) < T < i`.
    Elegant,
    /// Rows weak, columns strict decreasing, `min(j−i, 0) < T < j`.
    InverseElegant,
    /// Rows weak, columns strict increasing, `min(i−j, 0) < T ≤ i`.
    ElegantBar,
    /// Rows weak, columns strict decreasing, `0 < T < j`.
    FlaggedDecreasing,
    /// Rows strict, columns weak increasing, `0 < T ≤ j`.
    FlaggedIncreasing,
}

impl ElegantFamily {
    fn relations(self) -> (Relation, Relation) {
        match self {
            ElegantFamily::Elegant | ElegantFamily::ElegantBar => (Relation::WeakInc, Relation::StrictInc),
            ElegantFamily::InverseElegant | ElegantFamily::FlaggedDecreasing => (Relation::WeakDec, Relation::StrictDec),
            ElegantFamily::FlaggedIncreasing => (Relation::StrictInc, Relation::WeakInc),
        }
    }

    /// Inclusive bounds for cell `(i, j)`.
    fn bounds(self, i: i64, j: i64) -> (i64, i64) {
        match self {
            ElegantFamily::Elegant => ((i - j).min(0) + 1, i - 1),
            ElegantFamily::InverseElegant => ((j - i).min(0) + 1, j - 1),
            ElegantFamily::ElegantBar => ((i - j).min(0) + 1, i),
            ElegantFamily::FlaggedDecreasing => (1, j - 1),
            ElegantFamily::FlaggedIncreasing => (1, j),
        }
    }
}

/// A filling of a skew shape whose row `i` occupies columns
/// `inner_i+1 ..= outer_i` (parts may be negative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filling {
    pub inner: Vec<i64>,
    pub outer: Vec<i64>,
    pub values: Vec<Vec<i64>>,
}

impl Filling {
    /// `(i, j, T(i, j))` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .flat_map(move |(k, row)| row.iter().enumerate().map(move |(c, &t)| (k + 1, self.inner[k] + c as i64 + 1, t)))
    }

    pub fn get(&self, i: usize, j: i64) -> Option<i64> {
        let k = i.checked_sub(1)?;
        let a = *self.inner.get(k)?;
        if j <= a {
            return None;
        }
        self.values[k].get((j - a - 1) as usize).copied()
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                format!("{}: {}", self.inner[k] + 1, vals.join(" "))
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// All fillings of `outer/inner` in the given family; empty if `inner` is
/// not contained in `outer` row by row.
pub fn elegant_fillings(family: ElegantFamily, outer: &[i64], inner: &[i64]) -> Vec<Filling> {
    let n = outer.len().max(inner.len());
    let pad = |v: &[i64]| -> Vec<i64> {
        let mut w = v.to_vec();
        w.resize(n, 0);
        w
    };
    let (outer, inner) = (pad(outer), pad(inner));
    let mut out = Vec::new();
    if inner.iter().zip(&outer).any(|(a, b)| a > b) {
        return out;
    }
    let (row_rel, col_rel) = family.relations();
    let mut cur = Filling { inner: inner.clone(), outer: outer.clone(), values: vec![Vec::new(); n] };
    fn go(
        i: usize,
        family: ElegantFamily,
        rel: (Relation, Relation),
        cur: &mut Filling,
        out: &mut Vec<Filling>,
    ) {
        let n = cur.outer.len();
        if i > n {
            out.push(cur.clone());
            return;
        }
        let j = cur.inner[i - 1] + cur.values[i - 1].len() as i64 + 1;
        if j > cur.outer[i - 1] {
            go(i + 1, family, rel, cur, out);
            return;
        }
        let (lo, hi) = family.bounds(i as i64, j);
        for t in lo..=hi {
            if cur.get(i, j - 1).is_some_and(|p| !rel.0.admits(p, t)) {
                continue;
            }
            if cur.get(i - 1, j).is_some_and(|p| !rel.1.admits(p, t)) {
                continue;
            }
            cur.values[i - 1].push(t);
            go(i, family, rel, cur, out);
            cur.values[i - 1].pop();
        }
    }
    go(1, family, (row_rel, col_rel), &mut cur, &mut out);
    out
}

/// The Schur-expansion coefficients that have a tableau description. The
/// arguments of [`coefficient_by_tableaux`] follow the determinantal
/// functions of the same name in `grothendieck`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    /// `C_{λ,μ}`: inverse elegant fillings of `μ/λ`, `α_T − β_{T−c}`.
    UpperC,
    /// `c_{λ,μ}`: elegant fillings of `λ/μ`, `−α_{T+c} + β_T`.
    LowerC,
    /// `D_{λ,ν}`: inverse elegant fillings of `ν/λ`, `−β_T + α_{T−c}`.
    UpperD,
    /// `d_{λ,ν}`: elegant fillings of `λ/ν`, `β_{T+c} − α_T`.
    LowerD,
    /// `C'_{ρ,μ}`: barred elegant fillings of `μ/ρ`, `−α_{T+c} + β_T`.
    UpperCPrime,
    /// `D'_{ρ,μ}`: barred elegant fillings of `μ/ρ`, `β_{T+c} − α_T`.
    UpperDPrime,
    /// `c'_{ρ,μ}`: inverse elegant fillings of `ρ/μ`, `α_T − β_{T−c}`.
    LowerCPrime,
    /// `d'_{ρ,μ}`: inverse elegant fillings of `ρ/μ`, `−β_T + α_{T−c}`.
    LowerDPrime,
}

impl Coefficient {
    pub const ALL: [Coefficient; 8] = [
        Coefficient::UpperC,
        Coefficient::LowerC,
        Coefficient::UpperD,
        Coefficient::LowerD,
        Coefficient::UpperCPrime,
        Coefficient::UpperDPrime,
        Coefficient::LowerCPrime,
        Coefficient::LowerDPrime,
    ];

    /// `(family, first argument is the outer shape)`.
    fn layout(self) -> (ElegantFamily, bool) {
        match self {
            Coefficient::UpperC | Coefficient::UpperD => (ElegantFamily::InverseElegant, false),
            Coefficient::LowerC | Coefficient::LowerD => (ElegantFamily::Elegant, true),
            Coefficient::UpperCPrime | Coefficient::UpperDPrime => (ElegantFamily::ElegantBar, false),
            Coefficient::LowerCPrime | Coefficient::LowerDPrime => (ElegantFamily::InverseElegant, true),
        }
    }

    /// Weight of an entry `t` with content `c`.
    fn cell(self, ctx: Context, t: i64, c: i64) -> TruncPoly {
        match self {
            Coefficient::UpperC | Coefficient::LowerCPrime => &alpha(ctx, t) - &beta(ctx, t - c),
            Coefficient::LowerC | Coefficient::UpperCPrime => &beta(ctx, t) - &alpha(ctx, t + c),
            Coefficient::UpperD | Coefficient::LowerDPrime => &alpha(ctx, t - c) - &beta(ctx, t),
            Coefficient::LowerD | Coefficient::UpperDPrime => &beta(ctx, t + c) - &alpha(ctx, t),
        }
    }
}

/// The fillings attached to `which`; `first` and `second` follow the
/// argument order of the determinant functions.
pub fn coefficient_fillings(which: Coefficient, first: &[i64], second: &[i64]) -> Vec<Filling> {
    let (family, first_outer) = which.layout();
    let (outer, inner) = if first_outer { (first, second) } else { (second, first) };
    elegant_fillings(family, outer, inner)
}

pub fn filling_weight(which: Coefficient, f: &Filling) -> TruncPoly {
    let ctx = Context::params();
    f.entries().fold(TruncPoly::one(ctx), |w, (i, j, t)| &w * &which.cell(ctx, t, j - i as i64))
}

/// Weighted sum over the fillings attached to `which`.
pub fn coefficient_by_tableaux(which: Coefficient, first: &[i64], second: &[i64]) -> TruncPoly {
    let mut sum = TruncPoly::zero(Context::params());
    for f in coefficient_fillings(which, first, second) {
        sum += &filling_weight(which, &f);
    }
    sum
}

/// `Σ_T ∏_cells cell(T, c)` over the fillings of one family.
pub fn filling_sum(
    family: ElegantFamily,
    outer: &[i64],
    inner: &[i64],
    cell: impl Fn(Context, i64, i64) -> TruncPoly,
) -> TruncPoly {
    let ctx = Context::params();
    let mut sum = TruncPoly::zero(ctx);
    for f in elegant_fillings(family, outer, inner) {
        let mut w = TruncPoly::one(ctx);
        for (i, j, t) in f.entries() {
            w = &w * &cell(ctx, t, j - i as i64);
        }
        sum += &w;
    }
    sum
}

/// `(Σ_X ∏(−β_T), Σ_IET ∏(−β_T))` and `(Σ_Y ∏β_T, Σ_{ET̄} ∏β_{T+c})` over
/// fillings of `outer/inner`; each pair agrees.
pub fn beta_only_sums(outer: &[i64], inner: &[i64]) -> [(TruncPoly, TruncPoly); 2] {
    let neg = |ctx, t: i64, _c: i64| -&beta(ctx, t);
    [
        (
            filling_sum(ElegantFamily::FlaggedDecreasing, outer, inner, neg),
            filling_sum(ElegantFamily::InverseElegant, outer, inner, neg),
        ),
        (
            filling_sum(ElegantFamily::FlaggedIncreasing, outer, inner, |ctx, t, _| beta(ctx, t)),
            filling_sum(ElegantFamily::ElegantBar, outer, inner, |ctx, t, c| beta(ctx, t + c)),
        ),
    ]
}
