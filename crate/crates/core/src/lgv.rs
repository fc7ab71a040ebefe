//! Weighted lattice paths for the Schur-expansion coefficients `C_{λ,μ}` and
//! `c_{λ,μ}`, nonintersecting families, and their correspondence with
//! inverse elegant and elegant fillings.

use crate::error::{Error, Result};
use crate::ring::{det, Context, Family, TruncPoly, VarId};
use crate::shapes::Partition;
use crate::tableaux::Filling;
use std::collections::{BTreeMap, BTreeSet};

pub type Point = (i64, i64);

/// The two weighted lattice graphs. Both have north steps of weight 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Graph {
    /// West steps `(a,b) → (a−1,b)` of weight `α_b − β_{b−a}`.
    WestNorth,
    /// East steps `(a,b) → (a+1,b)` of weight `−α_{a+b+1} + β_b`.
    EastNorth,
}

fn param(family: Family, idx: i64) -> TruncPoly {
    let ctx = Context::params();
    if idx <= 0 {
        TruncPoly::zero(ctx)
    } else {
        TruncPoly::var(ctx, VarId::new(family, idx as u32)).expect("parameter variable")
    }
}

impl Graph {
    /// Weight of the horizontal step leaving `(a, b)`.
    pub fn horizontal_weight(self, (a, b): Point) -> TruncPoly {
        match self {
            Graph::WestNorth => &param(Family::Alpha, b) - &param(Family::Beta, b - a),
            Graph::EastNorth => &param(Family::Beta, b) - &param(Family::Alpha, a + b + 1),
        }
    }

    fn dx(self) -> i64 {
        match self {
            Graph::WestNorth => -1,
            Graph::EastNorth => 1,
        }
    }
}

/// `Σ` of path weights from `u` to `v`.
pub fn path_weight_sum(graph: Graph, u: Point, v: Point) -> TruncPoly {
    let ctx = Context::params();
    let steps = (v.0 - u.0) * graph.dx();
    if steps < 0 || v.1 < u.1 {
        return TruncPoly::zero(ctx);
    }
    let width = steps as usize + 1;
    // row[k]: weight sum from u to (u.0 + k·dx, b)
    let mut row = vec![TruncPoly::zero(ctx); width];
    row[0] = TruncPoly::one(ctx);
    for b in u.1..=v.1 {
        for k in 1..width {
            let prev = (u.0 + (k as i64 - 1) * graph.dx(), b);
            let side = &row[k - 1] * &graph.horizontal_weight(prev);
            row[k] += &side;
        }
        if b == v.1 {
            break;
        }
    }
    row.pop().expect("nonempty row")
}

/// A path given by its start and its steps; `true` is a horizontal step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    pub start: Point,
    pub steps: Vec<bool>,
}

impl LatticePath {
    pub fn vertices(&self, graph: Graph) -> Vec<Point> {
        let mut p = self.start;
        let mut out = vec![p];
        for &h in &self.steps {
            p = if h { (p.0 + graph.dx(), p.1) } else { (p.0, p.1 + 1) };
            out.push(p);
        }
        out
    }

    pub fn end(&self, graph: Graph) -> Point {
        *self.vertices(graph).last().expect("nonempty")
    }

    /// Points from which a horizontal step is taken, in order.
    pub fn horizontal_starts(&self, graph: Graph) -> Vec<Point> {
        let v = self.vertices(graph);
        self.steps.iter().enumerate().filter(|(_, h)| **h).map(|(k, _)| v[k]).collect()
    }

    pub fn weight(&self, graph: Graph) -> TruncPoly {
        let mut w = TruncPoly::one(Context::params());
        for p in self.horizontal_starts(graph) {
            w = &w * &graph.horizontal_weight(p);
        }
        w
    }
}

/// All paths from `u` to `v`.
pub fn paths(graph: Graph, u: Point, v: Point) -> Vec<LatticePath> {
    let h = (v.0 - u.0) * graph.dx();
    let n = v.1 - u.1;
    let mut out = Vec::new();
    if h < 0 || n < 0 {
        return out;
    }
    fn go(h: i64, n: i64, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if h == 0 && n == 0 {
            out.push(cur.clone());
            return;
        }
        for (step, left) in [(true, h), (false, n)] {
            if left > 0 {
                cur.push(step);
                if step { go(h - 1, n, cur, out) } else { go(h, n - 1, cur, out) }
                cur.pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(h, n, &mut Vec::new(), &mut raw);
    out.extend(raw.into_iter().map(|steps| LatticePath { start: u, steps }));
    out
}

pub fn is_nonintersecting(graph: Graph, family: &[LatticePath]) -> bool {
    let mut seen = BTreeSet::new();
    family.iter().all(|p| p.vertices(graph).into_iter().all(|v| seen.insert(v)))
}

/// All nonintersecting families `(p_1, …, p_n)` with `p_i` from `us[i]` to `vs[i]`.
pub fn nonintersecting_families(graph: Graph, us: &[Point], vs: &[Point]) -> Vec<Vec<LatticePath>> {
    let options: Vec<Vec<LatticePath>> = us.iter().zip(vs).map(|(&u, &v)| paths(graph, u, v)).collect();
    let mut out = Vec::new();
    let mut cur: Vec<LatticePath> = Vec::new();
    let mut used: BTreeMap<Point, usize> = BTreeMap::new();
    fn go(
        k: usize,
        graph: Graph,
        options: &[Vec<LatticePath>],
        cur: &mut Vec<LatticePath>,
        used: &mut BTreeMap<Point, usize>,
        out: &mut Vec<Vec<LatticePath>>,
    ) {
        if k == options.len() {
            out.push(cur.clone());
            return;
        }
        for p in &options[k] {
            let vs = p.vertices(graph);
            if vs.iter().any(|v| used.contains_key(v)) {
                continue;
            }
            for v in &vs {
                used.insert(*v, k);
            }
            cur.push(p.clone());
            go(k + 1, graph, options, cur, used, out);
            cur.pop();
            for v in &vs {
                used.remove(v);
            }
        }
    }
    go(0, graph, &options, &mut cur, &mut used, &mut out);
    out
}

fn padded(p: &Partition, n: usize) -> Vec<i64> {
    let mut v: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
    v.resize(n.max(v.len()), 0);
    v
}

/// Endpoints for `C_{λ,μ}`: `u_i = (μ_i−i, min(μ_i−i+1, 1))`,
/// `v_i = (λ_i−i, λ_i)` for `i ≤ ℓ(μ)`.
pub fn upper_c_endpoints(lambda: &Partition, mu: &Partition) -> (Vec<Point>, Vec<Point>) {
    let n = mu.len().max(lambda.len());
    let (l, m) = (padded(lambda, n), padded(mu, n));
    let us = (1..=n as i64).map(|i| {
        let t = m[i as usize - 1] - i;
        (t, (t + 1).min(1))
    });
    let vs = (1..=n as i64).map(|i| (l[i as usize - 1] - i, l[i as usize - 1]));
    (us.collect(), vs.collect())
}

/// Endpoints for `c_{λ,μ}`: `u_i = (μ_i−i, min(i−μ_i, 1))`,
/// `v_i = (λ_i−i, i−1)` for `i ≤ ℓ(λ)`.
pub fn lower_c_endpoints(lambda: &Partition, mu: &Partition) -> (Vec<Point>, Vec<Point>) {
    let n = mu.len().max(lambda.len());
    let (l, m) = (padded(lambda, n), padded(mu, n));
    let us = (1..=n as i64).map(|i| (m[i as usize - 1] - i, (i - m[i as usize - 1]).min(1)));
    let vs = (1..=n as i64).map(|i| (l[i as usize - 1] - i, i - 1));
    (us.collect(), vs.collect())
}

fn lgv_det(graph: Graph, us: &[Point], vs: &[Point]) -> Result<TruncPoly> {
    let m: Vec<Vec<TruncPoly>> =
        us.iter().map(|&u| vs.iter().map(|&v| path_weight_sum(graph, u, v)).collect()).collect();
    det(Context::params(), &m)
}

/// `C_{λ,μ}` as the determinant of path weight sums.
pub fn upper_c_by_paths(lambda: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let (us, vs) = upper_c_endpoints(lambda, mu);
    lgv_det(Graph::WestNorth, &us, &vs)
}

/// `c_{λ,μ}` as the determinant of path weight sums.
pub fn lower_c_by_paths(lambda: &Partition, mu: &Partition) -> Result<TruncPoly> {
    let (us, vs) = lower_c_endpoints(lambda, mu);
    lgv_det(Graph::EastNorth, &us, &vs)
}

/// Total weight of the nonintersecting families for `C_{λ,μ}` or `c_{λ,μ}`.
pub fn family_weight_sum(graph: Graph, us: &[Point], vs: &[Point]) -> TruncPoly {
    let mut sum = TruncPoly::zero(Context::params());
    for fam in nonintersecting_families(graph, us, vs) {
        let mut w = TruncPoly::one(Context::params());
        for p in &fam {
            w = &w * &p.weight(graph);
        }
        sum += &w;
    }
    sum
}

/// The filling read off a family: for the west graph the step leaving
/// `(a, b)` in path `i` is the entry `T(i, i+a) = b` of shape `μ/λ`; for the
/// east graph it is `T(i, i+a+1) = b` of shape `λ/μ`.
pub fn family_to_filling(graph: Graph, family: &[LatticePath], outer: &Partition, inner: &Partition) -> Result<Filling> {
    let n = family.len();
    let (o, inn) = (padded(outer, n), padded(inner, n));
    let mut values = Vec::with_capacity(n);
    for (k, p) in family.iter().enumerate() {
        let i = k as i64 + 1;
        let mut row: BTreeMap<i64, i64> = BTreeMap::new();
        for (a, b) in p.horizontal_starts(graph) {
            let j = match graph {
                Graph::WestNorth => i + a,
                Graph::EastNorth => i + a + 1,
            };
            row.insert(j, b);
        }
        let cols: Vec<i64> = row.keys().copied().collect();
        let expect: Vec<i64> = (inn[k] + 1..=o[k]).collect();
        if cols != expect {
            return Err(Error::Inconsistency(format!("path {} covers columns {:?}, expected {:?}", i, cols, expect)));
        }
        values.push(row.into_values().collect());
    }
    Ok(Filling { inner: inn, outer: o, values })
}

/// Inverse of [`family_to_filling`] for the endpoints `us`, `vs`.
pub fn filling_to_family(graph: Graph, t: &Filling, us: &[Point], vs: &[Point]) -> Result<Vec<LatticePath>> {
    let mut out = Vec::with_capacity(us.len());
    for (k, (&u, &v)) in us.iter().zip(vs).enumerate() {
        let i = k as i64 + 1;
        let row = t.values.get(k).cloned().unwrap_or_default();
        let first = t.inner.get(k).copied().unwrap_or(0) + 1;
        let mut cells: Vec<(i64, i64)> = row.iter().enumerate().map(|(c, &b)| (first + c as i64, b)).collect();
        if graph == Graph::WestNorth {
            cells.reverse();
        }
        let mut pos = u;
        let mut steps = Vec::new();
        for (j, b) in cells {
            let a = match graph {
                Graph::WestNorth => j - i,
                Graph::EastNorth => j - i - 1,
            };
            if a != pos.0 || b < pos.1 {
                return Err(Error::Inconsistency(format!("entry {} at ({}, {}) is not reachable", b, i, j)));
            }
            steps.extend(std::iter::repeat(false).take((b - pos.1) as usize));
            steps.push(true);
            pos = (a + graph.dx(), b);
        }
        if pos.0 != v.0 || v.1 < pos.1 {
            return Err(Error::Inconsistency(format!("row {} does not end at {:?}", i, v)));
        }
        steps.extend(std::iter::repeat(false).take((v.1 - pos.1) as usize));
        out.push(LatticePath { start: u, steps });
    }
    Ok(out)
}
