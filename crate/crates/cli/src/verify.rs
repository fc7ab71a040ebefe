//! Verification suites behind `groth verify`. Each suite sweeps small
//! inputs, compares exact polynomials and stops at the first mismatch.

use crate::{Opts, Report};
use grothendieck_core::grothendieck::{
    big_g_bialternant, big_g_flagged_det, big_g_jt, big_g_jt_modified, cauchy_check, col_hypothesis,
    expansion_matches_det, hall_pairing, lower_c, matsumura_det, matsumura_specialization, omega_check,
    row_hypothesis, small_g_bialternant, small_g_flagged_det, small_g_jt, small_g_jt_modified, upper_c,
    ExpansionKind, Kind, Orientation,
};
use grothendieck_core::lgv::{lower_c_by_paths, upper_c_by_paths};
use grothendieck_core::shapes::{FlagPair, Partition, SkewShape};
use grothendieck_core::symfunc::{schur, schur_bialternant, schur_flagged_check};
use grothendieck_core::tableaux::{coefficient_by_tableaux, fsvt_sum, mmsvt_sum, Coefficient, MarkVariant, RppSetup};
use grothendieck_core::{Assignment, Context, Error, Family, FamilyRule, Result, TruncPoly};

/// Outcome of a sweep: cases checked before stopping, and the first failure.
struct Sweep {
    cases: usize,
    failure: Option<String>,
}

impl Sweep {
    fn new() -> Self {
        Sweep { cases: 0, failure: None }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    /// Records one comparison; returns `false` once a failure is recorded.
    fn expect_eq(&mut self, what: impl FnOnce() -> String, got: &TruncPoly, want: &TruncPoly) -> bool {
        self.cases += 1;
        if got != want {
            self.failure = Some(format!("{}\n  got:      {}\n  expected: {}", what(), got, want));
        }
        !self.done()
    }

    fn expect(&mut self, what: impl FnOnce() -> String, ok: bool) -> bool {
        self.cases += 1;
        if !ok {
            self.failure = Some(what());
        }
        !self.done()
    }
}

fn ints(p: &Partition) -> Vec<i64> {
    p.parts().iter().map(|&v| v as i64).collect()
}

fn padded(p: &Partition, n: usize) -> Vec<i64> {
    (1..=n).map(|i| p.part(i) as i64).collect()
}

fn vectors(len: usize, top: u32) -> Vec<Vec<u32>> {
    (0..len).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|v| (1..=top).map(move |x| [v.clone(), vec![x]].concat())).collect()
    })
}

struct Knobs {
    max_size: u32,
    n: u32,
    deg: u32,
}

pub(crate) fn run(o: &Opts) -> Result<Report> {
    let deg = o.deg.unwrap_or(o.max_size + 1);
    let k = Knobs { max_size: o.max_size, n: o.n.unwrap_or(3), deg };
    let mut notes = Vec::new();
    let sweep = match o.target.as_str() {
        "G" => concordance(&k, Kind::G)?,
        "g" => concordance(&k, Kind::Dual)?,
        "s" => schur_suite(&k)?,
        "C" | "c" => coefficients(&k, o.target == "C")?,
        "hall" | "duality" => duality(&k)?,
        "positivity" => positivity(&k)?,
        "cauchy" => {
            let mut s = Sweep::new();
            let (n, b) = (o.n.unwrap_or(2), o.budget.or(o.deg).unwrap_or(3));
            s.expect(|| format!("Cauchy identity with {} + {} variables to bidegree {}", n, n, b), cauchy_check(n, n, b)?);
            s
        }
        "omega" => omega(&k, o.budget.unwrap_or(2))?,
        "expansion" => expansion(&k, o.budget.unwrap_or(2))?,
        "flagged" => flagged(&k)?,
        "matsumura" => matsumura(&k, &mut notes)?,
        t => return Err(Error::Usage(format!("unknown verification suite {:?}", t))),
    };
    let mut r = Report::default();
    match &sweep.failure {
        None => r.line(format!("ok verify {}: {} cases", o.target, sweep.cases)),
        Some(f) => {
            r.line(format!("FAIL verify {}: case {} failed", o.target, sweep.cases));
            r.line(format!("  {}", f));
            r.failed = true;
        }
    }
    for n in notes {
        r.line(n);
    }
    Ok(r)
}

fn concordance(k: &Knobs, kind: Kind) -> Result<Sweep> {
    let mut s = Sweep::new();
    for n in 1..=k.n {
        let ctx = Context::new(n, k.deg);
        for lambda in Partition::all_up_to(k.max_size).into_iter().filter(|l| l.len() <= n as usize) {
            let rows = lambda.len().max(1);
            let flags = FlagPair::finite(vec![1; rows], vec![n; rows])?;
            let (jt, others) = match kind {
                Kind::G => (
                    big_g_jt(&lambda, ctx)?,
                    vec![
                        ("bialternant", big_g_bialternant(&lambda, ctx)?),
                        ("modified Jacobi-Trudi", big_g_jt_modified(&lambda, ctx)?),
                        ("flagged determinant", big_g_flagged_det(&lambda, &Partition::empty(), &flags, Orientation::Row, ctx)?.value),
                        ("tableau sum", mmsvt_sum(&SkewShape::straight(lambda.clone()), &flags, Orientation::Row, ctx)?),
                    ],
                ),
                Kind::Dual => (
                    small_g_jt(&lambda, ctx)?,
                    vec![
                        ("bialternant", small_g_bialternant(&lambda, ctx)?),
                        ("modified Jacobi-Trudi", small_g_jt_modified(&lambda, ctx)?),
                        ("flagged determinant", small_g_flagged_det(&lambda, &Partition::empty(), &flags, Orientation::Row, ctx)?.value),
                        (
                            "marked RPP sum",
                            RppSetup::straight(&lambda, &Partition::empty(), &flags, n)?.generating_function(MarkVariant::Left, ctx)?,
                        ),
                    ],
                ),
            };
            for (name, v) in others {
                if !s.expect_eq(|| format!("{} of {}_{} with n={}", name, kind, lambda, n), &v, &jt) {
                    return Ok(s);
                }
            }
        }
    }
    Ok(s)
}

fn schur_suite(k: &Knobs) -> Result<Sweep> {
    let mut s = Sweep::new();
    for n in 1..=k.n {
        for lambda in Partition::all_up_to(k.max_size).into_iter().filter(|l| l.len() <= n as usize) {
            let ctx = Context::new(n, lambda.size());
            if !s.expect_eq(|| format!("bialternant s_{} with n={}", lambda, n), &schur_bialternant(&lambda, ctx)?, &schur(&lambda, ctx)?)
                || !s.expect(|| format!("flagged form of s_{} with n={}", lambda, n), schur_flagged_check(&lambda, n)?)
            {
                return Ok(s);
            }
        }
    }
    Ok(s)
}

fn coefficients(k: &Knobs, upper: bool) -> Result<Sweep> {
    let mut s = Sweep::new();
    for mu in Partition::all_up_to(k.max_size) {
        for lambda in mu.subpartitions() {
            let (det, tab, paths, name) = if upper {
                (
                    upper_c(&lambda, &mu)?,
                    coefficient_by_tableaux(Coefficient::UpperC, &ints(&lambda), &ints(&mu)),
                    upper_c_by_paths(&lambda, &mu)?,
                    format!("C_{{{},{}}}", lambda, mu),
                )
            } else {
                (
                    lower_c(&mu, &lambda)?,
                    coefficient_by_tableaux(Coefficient::LowerC, &ints(&mu), &ints(&lambda)),
                    lower_c_by_paths(&mu, &lambda)?,
                    format!("c_{{{},{}}}", mu, lambda),
                )
            };
            if !s.expect_eq(|| format!("{} by tableaux", name), &tab, &det) || !s.expect_eq(|| format!("{} by lattice paths", name), &paths, &det) {
                return Ok(s);
            }
        }
    }
    Ok(s)
}

fn duality(k: &Knobs) -> Result<Sweep> {
    let mut s = Sweep::new();
    let parts = Partition::all_up_to(k.max_size);
    for lambda in &parts {
        for mu in &parts {
            let v = hall_pairing(lambda, mu)?;
            let want = TruncPoly::constant(v.ctx(), (lambda == mu) as i64);
            if !s.expect_eq(|| format!("<G_{}, g_{}>", lambda, mu), &v, &want) {
                return Ok(s);
            }
        }
    }
    Ok(s)
}

fn positivity(k: &Knobs) -> Result<Sweep> {
    let negate = |f: Family| Assignment::new().family(f, FamilyRule::Rename { coeff: -1, family: f });
    let mut s = Sweep::new();
    for mu in Partition::all_up_to(k.max_size) {
        for lambda in mu.subpartitions() {
            let c = upper_c(&lambda, &mu)?.specialize(&negate(Family::Beta))?;
            let e = lower_c(&mu, &lambda)?.specialize(&negate(Family::Alpha))?;
            if !s.expect(|| format!("C_{{{},{}}}(a,-b) = {} has a negative coefficient", lambda, mu, c), c.is_nonnegative())
                || !s.expect(|| format!("c_{{{},{}}}(-a,b) = {} has a negative coefficient", mu, lambda, e), e.is_nonnegative())
            {
                return Ok(s);
            }
        }
    }
    Ok(s)
}

fn omega(k: &Knobs, budget: u32) -> Result<Sweep> {
    let mut s = Sweep::new();
    for lambda in Partition::all_up_to(k.max_size) {
        for mu in Partition::all_up_to(2).into_iter().filter(|m| m.is_contained_in(&lambda)) {
            for kind in [Kind::G, Kind::Dual] {
                if !s.expect(|| format!("omega on {}_{}/{} with budget {}", kind, lambda, mu, budget), omega_check(&lambda, &mu, kind, budget)?) {
                    return Ok(s);
                }
            }
        }
    }
    Ok(s)
}

fn expansion(k: &Knobs, budget: u32) -> Result<Sweep> {
    let mut s = Sweep::new();
    for lambda in Partition::all_up_to(k.max_size).into_iter().filter(|l| !l.is_empty() && l.len() <= 3) {
        for mu in Partition::all_up_to(2).into_iter().filter(|m| m.is_contained_in(&lambda)) {
            for which in [ExpansionKind::GH, ExpansionKind::GE, ExpansionKind::DualH, ExpansionKind::DualE] {
                let n_x = lambda.len().max(lambda.part(1) as usize).min(3) as u32;
                let ok = expansion_matches_det(&lambda, &mu, which, budget, n_x)?;
                if !s.expect(|| format!("{:?} expansion of {}/{} in {} variables", which, lambda, mu, n_x), ok) {
                    return Ok(s);
                }
            }
        }
    }
    Ok(s)
}

/// Row and column flagged determinants against tableau sums with flag
/// values up to 3, on inputs satisfying the stated hypotheses.
fn flagged(k: &Knobs) -> Result<Sweep> {
    let top = 3u32;
    let mut s = Sweep::new();
    for n in 1..=k.n.min(3) as usize {
        let shapes: Vec<Partition> = Partition::all_up_to(k.max_size).into_iter().filter(|l| l.len() <= n).collect();
        let vs = vectors(n, top);
        for lambda in &shapes {
            for mu in shapes.iter().filter(|m| m.is_contained_in(lambda)) {
                let (l, m) = (padded(lambda, n), padded(mu, n));
                let cells = lambda.size() - mu.size();
                let (gc, dc) = (Context::new(top, cells + 2), Context::new(top, cells));
                let shape = SkewShape::new(lambda.clone(), mu.clone())?;
                let conj = shape.conjugate();
                for r in &vs {
                    for sv in &vs {
                        let flags = FlagPair::finite(r.clone(), sv.clone())?;
                        let what = |name: &str| format!("{} at λ={} μ={} r={:?} s={:?}", name, lambda, mu, r, sv);
                        if row_hypothesis(&l, &m, r, sv) {
                            let g = big_g_flagged_det(lambda, mu, &flags, Orientation::Row, gc)?.value;
                            let dual = small_g_flagged_det(lambda, mu, &flags, Orientation::Row, dc)?.value;
                            let dual_col = small_g_flagged_det(lambda, mu, &flags, Orientation::Col, dc)?.value;
                            let ok = s.expect_eq(|| what("G row"), &g, &mmsvt_sum(&shape, &flags, Orientation::Row, gc)?)
                                && s.expect_eq(
                                    || what("g row"),
                                    &dual,
                                    &RppSetup::straight(lambda, mu, &flags, top)?.generating_function(MarkVariant::Left, dc)?,
                                )
                                && s.expect_eq(
                                    || what("g col"),
                                    &dual_col,
                                    &RppSetup::column_flagged(&conj.outer, &conj.inner, &flags, top)?
                                        .generating_function(MarkVariant::Left, dc)?,
                                );
                            if !ok {
                                return Ok(s);
                            }
                        }
                        if col_hypothesis(&l, &m, r, sv) {
                            let g = big_g_flagged_det(lambda, mu, &flags, Orientation::Col, gc)?.value;
                            if !s.expect_eq(|| what("G col"), &g, &mmsvt_sum(&conj, &flags, Orientation::Col, gc)?) {
                                return Ok(s);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(s)
}

/// Set-valued sums against the determinant and against the row-flagged
/// `G` with `a = 0` and every `β_i` replaced by `±β`, on shapes with at most
/// 3 cells.
fn matsumura(k: &Knobs, notes: &mut Vec<String>) -> Result<Sweep> {
    let mut s = Sweep::new();
    let (mut plus, mut minus) = (true, true);
    for lambda in Partition::all_up_to(k.max_size.max(3)).into_iter().filter(|l| !l.is_empty() && l.len() <= 3) {
        let n = lambda.len();
        for mu in lambda.subpartitions().into_iter().filter(|m| lambda.size() - m.size() <= 3) {
            let (l, m) = (padded(&lambda, n), padded(&mu, n));
            let ctx = Context::new(3, lambda.size() - mu.size() + 3);
            for f in vectors(n, 3) {
                for g in vectors(n, 3) {
                    if !row_hypothesis(&l, &m, &g, &f) {
                        continue;
                    }
                    let en = fsvt_sum(&lambda, &mu, &f, &g, ctx)?;
                    let what = || format!("set-valued sum vs determinant at λ={} μ={} f={:?} g={:?}", lambda, mu, f, g);
                    if !s.expect_eq(what, &matsumura_det(&lambda, &mu, &f, &g, ctx)?, &en) {
                        return Ok(s);
                    }
                    plus &= matsumura_specialization(&lambda, &mu, &f, &g, 1, ctx)? == en;
                    minus &= matsumura_specialization(&lambda, &mu, &f, &g, -1, ctx)? == en;
                }
            }
        }
    }
    let convention = match (plus, minus) {
        (true, false) => "b = (beta, beta, ...)",
        (false, true) => "b = (-beta, -beta, ...)",
        (true, true) => "both signs",
        (false, false) => "neither sign",
    };
    notes.push(format!("specialization matching the set-valued sums: {}", convention));
    s.expect(|| format!("expected exactly one matching specialization, found {}", convention), plus != minus);
    Ok(s)
}
