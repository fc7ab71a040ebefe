//! The `groth` command line. [`run`] parses arguments and returns the exit
//! code together with everything that would be printed.

mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grothendieck_core::format::{render, Format};
use grothendieck_core::grothendieck::{
    dented_e_det, dented_h_det, hall_pairing, lower_c, matsumura_det, skew_schur_expansion, upper_c,
    ExpansionKind, GrothendieckSpec, Kind, Orientation, Prefactor,
};
use grothendieck_core::shapes::{DentedPartition, FlagPair, MarkSet, Partition, SkewShape};
use grothendieck_core::symfunc::{schur_expand, schur_jt};
use grothendieck_core::tableaux::{
    coefficient_fillings, filling_weight, fsvt_sum, mmsvt_list, Coefficient, MarkVariant, RppSetup,
};
use grothendieck_core::{Assignment, Context, Error, Family, FamilyRule, Result, Subst, TruncPoly, VarId};
use std::ffi::OsString;
use std::fmt::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "groth", version, about = "Refined canonical stable Grothendieck polynomials and their duals")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print a polynomial: G, g, s, matsumura, or a coefficient C, c, hall
    Compute(Opts),
    /// Expand G, g or s in Schur functions
    Expand(Opts),
    /// Print C_{shape,inner}, c_{shape,inner} or the pairing <G_shape, g_inner>
    Coeff(Opts),
    /// Run a verification suite and report the first failure
    Verify(Opts),
    /// List tableaux, marked RPPs or fillings with their weights
    Enumerate(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// G, g, s, C, c, hall, cauchy, omega, matsumura (verify also takes
    /// duality, positivity, flagged, expansion)
    target: String,
    /// Outer shape, e.g. 3,2,1 (a dented partition with --mark-set)
    #[arg(long)]
    shape: Option<String>,
    /// Inner shape
    #[arg(long)]
    inner: Option<String>,
    /// Number of x variables
    #[arg(long)]
    n: Option<u32>,
    /// x-degree bound D
    #[arg(long)]
    deg: Option<u32>,
    /// Lower flags r, e.g. 1,1,2
    #[arg(long = "flags-r")]
    flags_r: Option<String>,
    /// Upper flags s, e.g. 2,3,inf
    #[arg(long = "flags-s")]
    flags_s: Option<String>,
    #[arg(long, value_enum, default_value_t = Orient::Row)]
    orientation: Orient,
    #[arg(long, value_enum, default_value_t = Variant::Left)]
    variant: Variant,
    /// Rows carrying a finite virtual cell, e.g. 1,3
    #[arg(long = "mark-set")]
    mark_set: Option<String>,
    /// Expansion budget (defaults to D)
    #[arg(long)]
    budget: Option<u32>,
    /// Largest partition size swept by verify
    #[arg(long = "max-size", default_value_t = 4)]
    max_size: u32,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Parameter specialization, e.g. "a=0,b=1" or "b=-b1,a2=3"
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Orient {
    Row,
    Col,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Left,
    Right,
    Bottom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Latex,
    JsonLike,
}

impl From<Orient> for Orientation {
    fn from(o: Orient) -> Self {
        match o {
            Orient::Row => Orientation::Row,
            Orient::Col => Orientation::Col,
        }
    }
}

impl From<Variant> for MarkVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Left => MarkVariant::Left,
            Variant::Right => MarkVariant::Right,
            Variant::Bottom => MarkVariant::Bottom,
        }
    }
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Latex => Format::Latex,
            OutFormat::JsonLike => Format::JsonLike,
        }
    }
}

/// What a verb produced before it is turned into an [`Output`].
#[derive(Default)]
struct Report {
    stdout: String,
    warnings: Vec<String>,
    failed: bool,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_)
        | Error::Parse(_)
        | Error::InvalidPartition(_)
        | Error::Length(_)
        | Error::NotDented(_)
        | Error::XIndexOutOfRange { .. }
        | Error::XSpecialization(_)
        | Error::UnsupportedArgument(_) => EXIT_USAGE,
        _ => EXIT_INCONSISTENT,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match &cli.verb {
        Verb::Compute(o) => compute(o),
        Verb::Expand(o) => expand(o),
        Verb::Coeff(o) => coeff(o),
        Verb::Verify(o) => verify::run(o),
        Verb::Enumerate(o) => enumerate(o),
    };
    match result {
        Ok(r) => {
            let stderr: String = r.warnings.iter().map(|w| format!("warning: {}\n", w)).collect();
            let code = if r.failed { EXIT_VERIFY_FAILED } else { EXIT_OK };
            Output { code, stdout: r.stdout, stderr }
        }
        Err(e) => Output { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {:?} in {:?}", t, s))))
        .collect()
}

fn partition_arg(s: &Option<String>) -> Result<Partition> {
    s.as_deref().map_or(Ok(Partition::empty()), |s| Partition::new(parse_list(s)?))
}

/// Shapes, sizes and flags shared by the polynomial-valued verbs.
struct Setup {
    outer: Partition,
    dented: DentedPartition,
    inner: Partition,
    n: u32,
    d: u32,
    flags: Option<FlagPair>,
    marks: Option<MarkSet>,
    warnings: Vec<String>,
}

impl Setup {
    /// `extra` is added to `|λ/μ|` for the default degree bound.
    fn new(o: &Opts, extra: u32) -> Result<Setup> {
        let raw = o.shape.as_deref().map_or(Ok(Vec::new()), parse_list)?;
        let marks = o.mark_set.as_deref().map(str::parse::<MarkSet>).transpose()?;
        let dented = DentedPartition::new(raw.clone())?;
        let outer = if dented.is_partition() {
            Partition::new(raw)?
        } else if marks.is_some() {
            let mut sorted = raw;
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(sorted)?
        } else {
            return Err(Error::Usage(format!("{} is dented; a dented shape needs --mark-set", dented)));
        };
        let inner = partition_arg(&o.inner)?;
        let flags = match (&o.flags_r, &o.flags_s) {
            (Some(r), Some(s)) => Some(FlagPair::parse_parts(r, s)?),
            (None, None) => None,
            _ => return Err(Error::Usage("--flags-r and --flags-s go together".into())),
        };
        let rows = match o.orientation {
            Orient::Row => dented.parts().iter().rposition(|&p| p > 0).map_or(0, |i| i + 1),
            Orient::Col => outer.part(1) as usize,
        };
        let flag_top = flags.as_ref().and_then(|f| f.resolve_s(0).into_iter().max());
        let n = o.n.or(flag_top.filter(|&t| t > 0)).unwrap_or(rows.max(1) as u32);
        if n == 0 {
            return Err(Error::Usage("--n must be positive".into()));
        }
        if flags.is_none() && (n as usize) < rows {
            return Err(Error::Usage(format!("--n {} is smaller than the number of rows {}", n, rows)));
        }
        let cells = outer.size().saturating_sub(inner.size());
        let d = o.deg.unwrap_or(cells + extra);
        let mut warnings = Vec::new();
        if d < cells {
            warnings.push(format!("--deg {} is below the shape size {}; terms above x-degree {} are dropped", d, cells, d));
        }
        Ok(Setup { outer, dented, inner, n, d, flags, marks, warnings })
    }

    fn ctx(&self) -> Context {
        Context::new(self.n, self.d)
    }

    /// The given flags, or `r = 1`, `s = n` on every row.
    fn flags_or_full(&self, rows: usize) -> Result<FlagPair> {
        match &self.flags {
            Some(f) => Ok(f.clone()),
            None => FlagPair::finite(vec![1; rows.max(1)], vec![self.n; rows.max(1)]),
        }
    }

    fn rows(&self) -> usize {
        self.dented.parts().iter().rposition(|&p| p > 0).map_or(0, |i| i + 1).max(self.inner.len())
    }
}

fn kind_of(target: &str) -> Option<Kind> {
    match target {
        "G" => Some(Kind::G),
        "g" => Some(Kind::Dual),
        _ => None,
    }
}

/// Parses `a=0,b=1`, `b=-a`, `b=-b1`, `a2=3`, `b1=-a1`.
fn parse_spec(text: &str) -> Result<Assignment> {
    let bad = |t: &str| Error::Usage(format!("bad specialization {:?}", t));
    let family = |c: char| match c {
        'a' => Some(Family::Alpha),
        'b' => Some(Family::Beta),
        'x' => Some(Family::X),
        _ => None,
    };
    let mut out = Assignment::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (lhs, rhs) = item.split_once('=').ok_or_else(|| bad(item))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let mut chars = lhs.chars();
        let fam = chars.next().and_then(family).ok_or_else(|| bad(item))?;
        let index: Option<u32> = match chars.as_str() {
            "" => None,
            k => Some(k.parse().map_err(|_| bad(item))?),
        };
        if fam == Family::X {
            return Err(Error::XSpecialization(VarId::x(index.unwrap_or(1))));
        }
        if let Ok(c) = rhs.parse::<i64>() {
            out = match index {
                Some(i) => out.set_const(VarId::new(fam, i), c),
                None => out.family(fam, FamilyRule::Const(c.into())),
            };
            continue;
        }
        let (coeff, body) = match rhs.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, rhs),
        };
        let mut rc = body.chars();
        let target = rc.next().and_then(family).ok_or_else(|| bad(item))?;
        let target_index: Option<u32> = match rc.as_str() {
            "" => None,
            k => Some(k.parse().map_err(|_| bad(item))?),
        };
        out = match (index, target_index) {
            (None, None) => out.family(fam, FamilyRule::Rename { coeff, family: target }),
            (None, Some(j)) => out.family(fam, FamilyRule::Collapse { coeff, var: VarId::new(target, j) }),
            (Some(i), Some(j)) => out.set(VarId::new(fam, i), Subst::Param { coeff, var: VarId::new(target, j) }),
            (Some(_), None) => return Err(bad(item)),
        };
    }
    Ok(out)
}

fn finish(p: TruncPoly, o: &Opts) -> Result<String> {
    let p = match &o.spec {
        Some(s) => p.specialize(&parse_spec(s)?)?,
        None => p,
    };
    Ok(render(&p, o.format.into()))
}

fn compute(o: &Opts) -> Result<Report> {
    match o.target.as_str() {
        "C" | "c" | "hall" => return coeff(o),
        "cauchy" | "omega" => return Err(Error::Usage(format!("{} is a check; use `verify {}`", o.target, o.target))),
        _ => {}
    }
    let kind = kind_of(&o.target);
    let su = Setup::new(o, if kind == Some(Kind::G) { 2 } else { 0 })?;
    let mut r = Report { warnings: su.warnings.clone(), ..Report::default() };
    let ctx = su.ctx();
    let value = match o.target.as_str() {
        "G" | "g" => polynomial(&su, o, kind.unwrap(), &mut r)?,
        "s" => {
            let shape = SkewShape::new(su.outer.clone(), su.inner.clone())?;
            let shape = if o.orientation == Orient::Col { shape.conjugate() } else { shape };
            schur_jt(&shape, su.n, ctx)?
        }
        "matsumura" => {
            let f = su.flags.as_ref().ok_or_else(|| Error::Usage("matsumura needs --flags-r g and --flags-s f".into()))?;
            matsumura_det(&su.outer, &su.inner, &f.resolve_s(su.n), &f.r, ctx)?
        }
        t => return Err(Error::Usage(format!("unknown target {:?} for compute", t))),
    };
    r.line(finish(value, o)?);
    Ok(r)
}

/// `G` or `g` for the setup: flagged determinants, or the marked-set
/// determinants when `--mark-set` is given.
fn polynomial(su: &Setup, o: &Opts, kind: Kind, r: &mut Report) -> Result<TruncPoly> {
    let ctx = su.ctx();
    if let Some(marks) = &su.marks {
        if kind == Kind::G {
            return Err(Error::Usage("--mark-set applies to g only".into()));
        }
        let flags = su.flags_or_full(su.rows())?;
        let v = match o.variant {
            Variant::Bottom => dented_e_det(&su.dented, &su.inner, &flags, marks, ctx)?,
            _ => dented_h_det(&su.dented, &su.inner, &flags, marks, ctx)?,
        };
        if !v.hypotheses_hold {
            r.warnings.push("the flag and mark-set hypotheses do not hold for this input".into());
        }
        return Ok(v.value);
    }
    let spec = GrothendieckSpec {
        outer: su.outer.clone(),
        inner: su.inner.clone(),
        n: su.n,
        flags: su.flags.clone(),
        orientation: o.orientation.into(),
        kind,
    };
    let v = spec.evaluate(su.d)?;
    if !v.hypotheses_hold {
        r.warnings.push("the flag hypotheses do not hold; the determinant need not match the tableau sum".into());
    }
    Ok(v.value)
}

fn coeff(o: &Opts) -> Result<Report> {
    let lambda = partition_arg(&o.shape)?;
    let mu = partition_arg(&o.inner)?;
    let v = match o.target.as_str() {
        "C" => upper_c(&lambda, &mu)?,
        "c" => lower_c(&lambda, &mu)?,
        "hall" => hall_pairing(&lambda, &mu)?,
        t => return Err(Error::Usage(format!("unknown target {:?} for coeff (use C, c or hall)", t))),
    };
    let mut r = Report::default();
    r.line(finish(v, o)?);
    Ok(r)
}

fn prefactor_text(p: Prefactor) -> String {
    let name = |f: Family| if f == Family::Alpha { "a" } else { "b" };
    let sign = |s: i64| if s < 0 { "-" } else { "+" };
    match p {
        Prefactor::One => "1".into(),
        Prefactor::EProduct { sign: s, family, rows } => {
            format!("prod_{{i<={}}} prod_l (1 {} {}i*xl)", rows, sign(s), name(family))
        }
        Prefactor::HProduct { sign: s, family, rows } => {
            format!("prod_{{i<={}}} prod_l (1 {} {}i*xl)^-1", rows, sign(-s), name(family))
        }
    }
}

fn expand(o: &Opts) -> Result<Report> {
    let kind = kind_of(&o.target);
    if kind.is_none() && o.target != "s" {
        return Err(Error::Usage(format!("unknown target {:?} for expand (use G, g or s)", o.target)));
    }
    let su = Setup::new(o, if kind == Some(Kind::G) { 2 } else { 0 })?;
    let mut r = Report { warnings: su.warnings.clone(), ..Report::default() };
    let skew = !su.inner.is_empty() || o.orientation == Orient::Col;
    if let (Some(kind), true) = (kind, skew) {
        let which = match (kind, o.orientation) {
            (Kind::G, Orient::Row) => ExpansionKind::GH,
            (Kind::G, Orient::Col) => ExpansionKind::GE,
            (Kind::Dual, Orient::Row) => ExpansionKind::DualH,
            (Kind::Dual, Orient::Col) => ExpansionKind::DualE,
        };
        let exp = skew_schur_expansion(&su.outer, &su.inner, which, o.budget.unwrap_or(su.d))?;
        r.line(format!("prefactor: {}", prefactor_text(exp.prefactor)));
        for ((nu, rho), c) in &exp.entries {
            let shape = if o.orientation == Orient::Col { "'" } else { "" };
            r.line(format!("s_{{{}{}/{}{}}}: {}", nu, shape, rho, shape, finish(c.clone(), o)?));
        }
        return Ok(r);
    }
    let ctx = su.ctx();
    let p = match kind {
        Some(k) => polynomial(&su, o, k, &mut r)?,
        None => schur_jt(&SkewShape::new(su.outer.clone(), su.inner.clone())?, su.n, ctx)?,
    };
    for (mu, c) in schur_expand(&p, o.budget.unwrap_or(su.d))? {
        r.line(format!("s_{{{}}}: {}", mu, finish(c, o)?));
    }
    Ok(r)
}

fn one_line(s: impl ToString) -> String {
    s.to_string().replace('\n', " / ")
}

fn enumerate(o: &Opts) -> Result<Report> {
    let mut r = Report::default();
    let mut total: Option<TruncPoly> = None;
    let mut add = |r: &mut Report, obj: String, w: TruncPoly| -> Result<()> {
        r.line(format!("{}\t{}", obj, finish(w.clone(), o)?));
        total = Some(match total.take() {
            Some(t) => &t + &w,
            None => w,
        });
        Ok(())
    };
    match o.target.as_str() {
        "G" => {
            let su = Setup::new(o, 2)?;
            r.warnings = su.warnings.clone();
            let shape = SkewShape::new(su.outer.clone(), su.inner.clone())?;
            let (shape, rows) = match o.orientation {
                Orient::Row => (shape, su.rows()),
                Orient::Col => (shape.conjugate(), su.rows()),
            };
            let ctx = su.ctx();
            for t in mmsvt_list(&shape, &su.flags_or_full(rows)?, o.orientation.into(), ctx)? {
                let w = t.mmsvt_weight(ctx)?;
                add(&mut r, one_line(&t), w)?;
            }
        }
        "g" => {
            let su = Setup::new(o, 0)?;
            r.warnings = su.warnings.clone();
            let ctx = su.ctx();
            let flags = su.flags_or_full(su.rows())?;
            let setup = match o.orientation {
                Orient::Row => RppSetup::new(&su.dented, &su.inner, &flags, su.marks.as_ref(), su.n)?,
                Orient::Col => {
                    let shape = SkewShape::new(su.outer.clone(), su.inner.clone())?.conjugate();
                    RppSetup::column_flagged(&shape.outer, &shape.inner, &flags, su.n)?
                }
            };
            let variant = o.variant.into();
            for t in setup.marked(variant, ctx)? {
                let w = setup.weight(&t, variant, ctx)?;
                add(&mut r, one_line(&t), w)?;
            }
        }
        "C" | "c" => {
            let ints = |p: Partition| p.parts().iter().map(|&v| v as i64).collect::<Vec<_>>();
            let (first, second) = (ints(partition_arg(&o.shape)?), ints(partition_arg(&o.inner)?));
            let which = if o.target == "C" { Coefficient::UpperC } else { Coefficient::LowerC };
            for f in coefficient_fillings(which, &first, &second) {
                let w = filling_weight(which, &f);
                add(&mut r, one_line(&f), w)?;
            }
        }
        "matsumura" => {
            let su = Setup::new(o, 0)?;
            r.warnings = su.warnings.clone();
            let f = su.flags.as_ref().ok_or_else(|| Error::Usage("matsumura needs --flags-r g and --flags-s f".into()))?;
            let v = fsvt_sum(&su.outer, &su.inner, &f.resolve_s(su.n), &f.r, su.ctx())?;
            r.line(format!("total: {}", finish(v, o)?));
            return Ok(r);
        }
        t => return Err(Error::Usage(format!("unknown target {:?} for enumerate (use G, g, C, c or matsumura)", t))),
    }
    let count = r.stdout.lines().count();
    let total = total.map_or(Ok("0".to_string()), |t| finish(t, o))?;
    writeln!(r.stdout, "count: {}", count).expect("writing to a string");
    r.line(format!("total: {}", total));
    Ok(r)
}
