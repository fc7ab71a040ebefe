//! Partitions, skew shapes, generalized and dented partitions, flags and mark sets.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An integer partition, stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts trailing zeros and strips them.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{:?} is not weakly decreasing", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if n < self.len() {
            return Err(Error::Length(format!("{} has more than {} parts", self, n)));
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.part(1);
        Partition((1..=top).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// `self ⊆ outer` as Young diagrams.
    pub fn is_contained_in(&self, outer: &Partition) -> bool {
        self.len() <= outer.len() && self.0.iter().zip(&outer.0).all(|(a, b)| a <= b)
    }

    pub fn to_generalized(&self, n: usize) -> Result<GenPartition> {
        Ok(GenPartition(self.padded(n)?.into_iter().map(i64::from).collect()))
    }

    /// All partitions of `k`, in reverse lexicographic order.
    pub fn all_of_size(k: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `k`, by size.
    pub fn all_up_to(k: u32) -> Vec<Partition> {
        (0..=k).flat_map(Partition::all_of_size).collect()
    }

    /// All partitions `μ ⊆ self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &[u32], i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for p in 0..=outer[i].min(max) {
                cur.push(p);
                rec(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.0, 0, u32::MAX, &mut Vec::new(), &mut out);
        out.sort_by_key(|p| (p.size(), std::cmp::Reverse(p.clone())));
        out
    }

    /// All partitions `ν ⊇ self` with `|ν| - |self| <= budget` and at most `max_len` parts.
    pub fn superpartitions(&self, budget: u32, max_len: usize) -> Vec<Partition> {
        Partition::all_up_to(self.size() + budget)
            .into_iter()
            .filter(|p| p.len() <= max_len && self.is_contained_in(p))
            .collect()
    }
}

/// `inner ⊆ outer`.
pub fn contains(inner: &Partition, outer: &Partition) -> bool {
    inner.is_contained_in(outer)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad entry {:?}", t))))
        .collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

/// A cell `(i, j)` (1-based) with content `j - i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: i64,
}

impl Cell {
    pub fn content(&self) -> i64 {
        self.col - self.row as i64
    }
}

/// The skew shape `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !inner.is_contained_in(&outer) {
            return Err(Error::InvalidPartition(format!("{} is not contained in {}", inner, outer)));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    /// Row-major list of cells.
    pub fn cells(&self) -> Vec<Cell> {
        (1..=self.outer.len())
            .flat_map(|i| {
                let lo = self.inner.part(i) as i64 + 1;
                let hi = self.outer.part(i) as i64;
                (lo..=hi).map(move |j| Cell { row: i, col: j })
            })
            .collect()
    }

    pub fn contains_cell(&self, i: usize, j: i64) -> bool {
        i >= 1 && j > self.inner.part(i) as i64 && j <= self.outer.part(i) as i64
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape { outer: self.outer.conjugate(), inner: self.inner.conjugate() }
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "({})", self.outer)
        } else {
            write!(f, "({})/({})", self.outer, self.inner)
        }
    }
}

/// `λ∘μ = (λ_1+μ_1, …, λ_1+μ_n) / (λ_1−λ_n, …, λ_1−λ_1)`.
pub fn circ(lambda: &Partition, mu: &Partition, n: usize) -> Result<SkewShape> {
    let l = lambda.padded(n)?;
    let m = mu.padded(n)?;
    let top = l.first().copied().unwrap_or(0);
    let outer: Vec<u32> = m.iter().map(|&x| top + x).collect();
    let inner: Vec<u32> = (0..n).map(|i| top - l[n - 1 - i]).collect();
    SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)
}

/// A weakly decreasing integer sequence of fixed length (parts may be negative).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenPartition(Vec<i64>);

impl GenPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{:?} is not weakly decreasing", parts)));
        }
        Ok(GenPartition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_contained_in(&self, outer: &GenPartition) -> bool {
        self.len() == outer.len() && self.0.iter().zip(&outer.0).all(|(a, b)| a <= b)
    }

    pub fn shift(&self, k: i64) -> GenPartition {
        GenPartition(self.0.iter().map(|p| p + k).collect())
    }

    /// The ordinary partition, if every part is nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.0.iter().any(|&p| p < 0) {
            return None;
        }
        Partition::new(self.0.iter().map(|&p| p as u32).collect()).ok()
    }

    /// All generalized partitions `ν` of the same length with `lower ⊆ ν ⊆ upper`.
    pub fn between(lower: &GenPartition, upper: &GenPartition) -> Vec<GenPartition> {
        fn rec(lo: &[i64], hi: &[i64], i: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<GenPartition>) {
            if i == lo.len() {
                out.push(GenPartition(cur.clone()));
                return;
            }
            let mut p = lo[i];
            while p <= hi[i].min(max) {
                cur.push(p);
                rec(lo, hi, i + 1, p, cur, out);
                cur.pop();
                p += 1;
            }
        }
        let mut out = Vec::new();
        if lower.len() == upper.len() {
            rec(&lower.0, &upper.0, 0, i64::MAX, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for GenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `λ_1+1 = … = λ_{k−1}+1 = λ_k ≥ λ_{k+1} ≥ … ≥ λ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DentedPartition {
    parts: Vec<u32>,
    k: usize,
}

impl DentedPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let n = parts.len();
        if n == 0 {
            return Ok(DentedPartition { parts, k: 1 });
        }
        for k in 1..=n {
            let head = parts[..k - 1].iter().all(|&p| p + 1 == parts[k - 1]);
            let tail = parts[k - 1..].windows(2).all(|w| w[0] >= w[1]);
            if head && tail {
                return Ok(DentedPartition { parts, k });
            }
        }
        Err(Error::NotDented(parts))
    }

    pub fn from_partition(p: &Partition, n: usize) -> Result<Self> {
        DentedPartition::new(p.padded(n)?)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `(k, λ_k)`.
    pub fn minimal_cell(&self) -> (usize, u32) {
        (self.k, self.part(self.k))
    }

    pub fn is_partition(&self) -> bool {
        self.k == 1
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for DentedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlagValue {
    Finite(u32),
    Inf,
}

impl FlagValue {
    pub fn resolve(self, n: u32) -> u32 {
        match self {
            FlagValue::Finite(v) => v,
            FlagValue::Inf => n,
        }
    }
}

impl fmt::Display for FlagValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagValue::Finite(v) => write!(f, "{}", v),
            FlagValue::Inf => write!(f, "inf"),
        }
    }
}

/// Lower flags `r` and upper flags `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagPair {
    pub r: Vec<u32>,
    pub s: Vec<FlagValue>,
}

impl FlagPair {
    pub fn new(r: Vec<u32>, s: Vec<FlagValue>) -> Result<Self> {
        if r.len() != s.len() {
            return Err(Error::Length(format!("flags r has {} entries, s has {}", r.len(), s.len())));
        }
        if r.contains(&0) || s.contains(&FlagValue::Finite(0)) {
            return Err(Error::Parse("flag entries must be positive".into()));
        }
        Ok(FlagPair { r, s })
    }

    pub fn finite(r: Vec<u32>, s: Vec<u32>) -> Result<Self> {
        FlagPair::new(r, s.into_iter().map(FlagValue::Finite).collect())
    }

    /// `r = (1,…,1)`, `s = (∞,…,∞)`.
    pub fn unbounded(len: usize) -> Self {
        FlagPair { r: vec![1; len], s: vec![FlagValue::Inf; len] }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn resolve_s(&self, n: u32) -> Vec<u32> {
        self.s.iter().map(|v| v.resolve(n)).collect()
    }

    pub fn parse_parts(r: &str, s: &str) -> Result<Self> {
        let r: Vec<u32> = parse_list(r)?;
        let s = s.trim();
        let s: Vec<FlagValue> = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| match t.trim() {
                    "inf" | "∞" => Ok(FlagValue::Inf),
                    t => t
                        .parse::<u32>()
                        .map(FlagValue::Finite)
                        .map_err(|_| Error::Parse(format!("bad flag entry {:?}", t))),
                })
                .collect::<Result<_>>()?
        };
        FlagPair::new(r, s)
    }
}

impl FromStr for FlagPair {
    type Err = Error;
    /// `"r=1,1,2 s=3,3,inf"`.
    fn from_str(text: &str) -> Result<Self> {
        let mut r = None;
        let mut s = None;
        for tok in text.split_whitespace() {
            if let Some(v) = tok.strip_prefix("r=") {
                r = Some(v);
            } else if let Some(v) = tok.strip_prefix("s=") {
                s = Some(v);
            } else {
                return Err(Error::Parse(format!("unexpected flag token {:?}", tok)));
            }
        }
        match (r, s) {
            (Some(r), Some(s)) => FlagPair::parse_parts(r, s),
            _ => Err(Error::Parse("flags need both r= and s=".into())),
        }
    }
}

impl fmt::Display for FlagPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.r.iter().map(u32::to_string).collect();
        let s: Vec<String> = self.s.iter().map(FlagValue::to_string).collect();
        write!(f, "r={} s={}", r.join(","), s.join(","))
    }
}

/// A set `I ⊆ {1..n}` of rows whose boundary entry is bounded by the flag.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MarkSet(BTreeSet<usize>);

impl MarkSet {
    pub fn new<I: IntoIterator<Item = usize>>(rows: I) -> Self {
        MarkSet(rows.into_iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }
}

impl FromStr for MarkSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<usize> = parse_list(s.trim().trim_start_matches('{').trim_end_matches('}'))?;
        if v.contains(&0) {
            return Err(Error::Parse("mark set rows start at 1".into()));
        }
        Ok(MarkSet::new(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn containment() {
        assert!(contains(&p("2,1"), &p("3,2,1")));
        assert!(!contains(&p("2"), &p("1,1")));
        assert!(contains(&p(""), &p("4,3,1")));
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("4,3,1").conjugate(), p("3,2,2,1"));
        assert_eq!(p("0").conjugate(), Partition::empty());
    }

    #[test]
    fn contents() {
        let sh = SkewShape::straight(p("4,3,1"));
        let cells = sh.cells();
        assert_eq!(cells.len(), 8);
        assert_eq!(cells.iter().find(|c| c.row == 1 && c.col == 4).unwrap().content(), 3);
        assert_eq!(cells.iter().find(|c| c.row == 3 && c.col == 1).unwrap().content(), -2);
        assert!(SkewShape::new(p("1"), p("1")).unwrap().cells().is_empty());
    }

    #[test]
    fn circ_example() {
        let s = circ(&p("3,1"), &p("4,2,2"), 3).unwrap();
        assert_eq!(s.outer, p("7,5,5"));
        assert_eq!(s.inner, p("3,2"));
        assert_eq!(circ(&p(""), &p("2,1"), 2).unwrap(), SkewShape::straight(p("2,1")));
        assert!(circ(&p("1,1,1"), &p("1"), 2).is_err());
    }

    #[test]
    fn minimal_cells() {
        assert_eq!(DentedPartition::new(vec![3, 3, 4, 4, 1]).unwrap().minimal_cell(), (3, 4));
        assert_eq!(DentedPartition::new(vec![4, 3, 1]).unwrap().minimal_cell(), (1, 4));
        assert_eq!(DentedPartition::new(vec![2, 3]).unwrap().minimal_cell(), (2, 3));
        assert!(DentedPartition::new(vec![1, 3]).is_err());
    }

    #[test]
    fn flag_parsing() {
        let f: FlagPair = "r=1,1,2 s=3,3,inf".parse().unwrap();
        assert_eq!(f.r, vec![1, 1, 2]);
        assert_eq!(f.resolve_s(5), vec![3, 3, 5]);
        assert!("r=1 s=1,2".parse::<FlagPair>().is_err());
        assert_eq!(f.to_string(), "r=1,1,2 s=3,3,inf");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|k| Partition::all_of_size(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(p("2,1").subpartitions().len(), 5);
    }
}
