//! Weight matrices, triples, tableaux and the matching fields they induce.
//!
//! Indices are 1-based throughout: rows are `1..=3`, columns `1..=n`.
//! A tableau `(c1, c2, c3)` places column `c_t` in row `t`, and its weight
//! under a matrix `M` is `m[1][c1] + m[2][c2] + m[3][c3]`. A matrix induces
//! a matching field when every triple has a unique minimum-weight tableau.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, int, parse_q, Q};

/// Rows 2 and 3 are what carry information once row 1 is normalized away.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    rows: [Vec<Q>; 3],
}

impl WeightMatrix {
    pub fn new(rows: [Vec<Q>; 3]) -> Result<Self> {
        let n = rows[0].len();
        if n < 3 {
            return Err(Error::BadSize(format!("need n >= 3, got {n}")));
        }
        if rows[1].len() != n || rows[2].len() != n {
            return Err(Error::BadSize("rows have different lengths".into()));
        }
        Ok(WeightMatrix { rows })
    }

    pub fn from_ints(r1: &[i64], r2: &[i64], r3: &[i64]) -> Result<Self> {
        let conv = |r: &[i64]| r.iter().map(|&v| int(v)).collect::<Vec<_>>();
        Self::new([conv(r1), conv(r2), conv(r3)])
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new([vec![Q::zero(); n], vec![Q::zero(); n], vec![Q::zero(); n]])
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Q>; 3] {
        &self.rows
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &Q {
        &self.rows[row - 1][col - 1]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Q) {
        self.rows[row - 1][col - 1] = value;
    }

    pub fn is_normalized(&self) -> bool {
        self.rows[0].iter().all(Zero::is_zero)
    }

    /// Subtracts each column's first-row entry from the whole column.
    pub fn normalize(&self) -> WeightMatrix {
        let shift = self.rows[0].clone();
        let rows = self
            .rows
            .clone()
            .map(|r| r.into_iter().zip(&shift).map(|(v, s)| v - s).collect());
        WeightMatrix { rows }
    }

    pub fn tableau_weight(&self, t: &Tableau) -> Q {
        (1..=3).map(|r| self.entry(r, t.row(r))).sum()
    }

    /// All six tableaux of `triple` with their weights, in a fixed order.
    fn assignment_weights(&self, triple: &Triple) -> Vec<(Tableau, Q)> {
        triple
            .tableaux()
            .into_iter()
            .map(|t| {
                let w = self.tableau_weight(&t);
                (t, w)
            })
            .collect()
    }

    /// The minimizing tableau and its weight, or `None` on a tie.
    pub fn initial_tableau(&self, triple: &Triple) -> (Option<Tableau>, Q) {
        let weights = self.assignment_weights(triple);
        let min = weights.iter().map(|(_, w)| w).min().cloned().expect("six tableaux");
        let mut at_min = weights.into_iter().filter(|(_, w)| *w == min);
        let first = at_min.next().map(|(t, _)| t);
        if at_min.next().is_some() {
            (None, min)
        } else {
            (first, min)
        }
    }

    pub fn genericity(&self) -> GenericityReport {
        let offending = Triple::all(self.n())
            .filter(|t| self.initial_tableau(t).0.is_none())
            .collect();
        GenericityReport { offending }
    }

    pub fn is_generic(&self) -> bool {
        Triple::all(self.n()).all(|t| self.initial_tableau(&t).0.is_some())
    }

    pub fn induce(&self) -> Result<MatchingField> {
        let mut map = BTreeMap::new();
        for triple in Triple::all(self.n()) {
            match self.initial_tableau(&triple).0 {
                Some(t) => map.insert(triple, t),
                None => return Err(Error::Tie(triple)),
            };
        }
        Ok(MatchingField { n: self.n(), map })
    }

    pub fn plucker_weights(&self) -> PluckerWeights {
        PluckerWeights(
            Triple::all(self.n())
                .map(|t| {
                    let w = self.initial_tableau(&t).1;
                    (t, w)
                })
                .collect(),
        )
    }

    /// `"3 n"` followed by the three rows.
    pub fn to_text(&self) -> String {
        let mut out = format!("3 {}\n", self.n());
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(fmt_q).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty weight file"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 || dims[0] != "3" {
            return Err(Error::parse(ln + 1, "header must be \"3 n\""));
        }
        let n: usize = dims[1]
            .parse()
            .map_err(|_| Error::parse(ln + 1, "bad column count"))?;
        let mut rows: [Vec<Q>; 3] = Default::default();
        for row in rows.iter_mut() {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln + 1, "expected three rows"))?;
            *row = line
                .split_whitespace()
                .map(|tok| parse_q(tok).ok_or_else(|| Error::parse(ln + 1, format!("bad rational {tok:?}"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(ln + 1, format!("expected {n} entries")));
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln + 1, "trailing content"));
        }
        WeightMatrix::new(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub offending: Vec<Triple>,
}

impl GenericityReport {
    pub fn ok(&self) -> bool {
        self.offending.is_empty()
    }
}

/// A 3-subset `i1 < i2 < i3` of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([usize; 3]);

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == 0 || !(a < b && b < c) {
            return Err(Error::BadSize(format!("{a} {b} {c} is not an increasing triple")));
        }
        Ok(Triple([a, b, c]))
    }

    /// Sorts and validates three distinct positive indices.
    pub fn from_set(mut v: [usize; 3]) -> Result<Self> {
        v.sort_unstable();
        Triple::new(v[0], v[1], v[2])
    }

    pub fn elements(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.contains(&c)
    }

    pub fn largest(&self) -> usize {
        self.0[2]
    }

    /// All triples of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Triple> {
        (1..=n).flat_map(move |a| {
            (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| Triple([a, b, c])))
        })
    }

    pub fn identity(&self) -> Tableau {
        Tableau(self.0)
    }

    pub fn tableaux(&self) -> [Tableau; 6] {
        let [a, b, c] = self.0;
        [
            Tableau([a, b, c]),
            Tableau([a, c, b]),
            Tableau([b, a, c]),
            Tableau([b, c, a]),
            Tableau([c, a, b]),
            Tableau([c, b, a]),
        ]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

/// Row `t` of the tableau holds column `c_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau([usize; 3]);

impl Tableau {
    pub fn new(c1: usize, c2: usize, c3: usize) -> Result<Self> {
        Triple::from_set([c1, c2, c3])?;
        Ok(Tableau([c1, c2, c3]))
    }

    pub fn rows(&self) -> [usize; 3] {
        self.0
    }

    /// Column placed in 1-based row `r`.
    pub fn row(&self, r: usize) -> usize {
        self.0[r - 1]
    }

    pub fn triple(&self) -> Triple {
        Triple::from_set(self.0).expect("tableau entries are distinct")
    }

    /// Signature of the permutation taking the sorted triple to this tableau.
    pub fn sign(&self) -> i32 {
        let c = self.0;
        let inversions = (0..3)
            .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
            .filter(|&(a, b)| c[a] > c[b])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Exchanges the entries of two 1-based rows.
    pub fn swap_rows(&self, r: usize, s: usize) -> Tableau {
        let mut c = self.0;
        c.swap(r - 1, s - 1);
        Tableau(c)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

fn parse_three(tokens: &[&str], line: usize) -> Result<[usize; 3]> {
    if tokens.len() != 3 {
        return Err(Error::parse(line, "expected three indices"));
    }
    let mut out = [0; 3];
    for (slot, tok) in out.iter_mut().zip(tokens) {
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("bad index {tok:?}")))?;
    }
    Ok(out)
}

pub(crate) fn parse_triple(s: &str, line: usize) -> Result<Triple> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let [a, b, c] = parse_three(&toks, line)?;
    Triple::new(a, b, c).map_err(|_| Error::parse(line, format!("{s:?} is not an increasing triple")))
}

pub(crate) fn parse_tableau(s: &str, line: usize) -> Result<Tableau> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let [a, b, c] = parse_three(&toks, line)?;
    Tableau::new(a, b, c).map_err(|_| Error::parse(line, format!("{s:?} is not a tableau")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingField {
    n: usize,
    map: BTreeMap<Triple, Tableau>,
}

/// One disagreement between two matching fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDiff {
    pub triple: Triple,
    pub before: Tableau,
    pub after: Tableau,
}

impl MatchingField {
    /// Builds a field from a per-triple rule; the rule must return a
    /// rearrangement of its argument.
    pub fn from_fn(n: usize, mut rule: impl FnMut(&Triple) -> Tableau) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadSize(format!("need n >= 3, got {n}")));
        }
        let mut map = BTreeMap::new();
        for triple in Triple::all(n) {
            let t = rule(&triple);
            if t.triple() != triple {
                return Err(Error::BadSize(format!("tableau {t} does not match triple {triple}")));
            }
            map.insert(triple, t);
        }
        Ok(MatchingField { n, map })
    }

    pub fn diagonal(n: usize) -> Result<Self> {
        Self::from_fn(n, Triple::identity)
    }

    /// Identity tableau unless exactly one element of the triple is `<= ell`,
    /// in which case rows 1 and 2 are exchanged.
    pub fn block_diagonal(n: usize, ell: usize) -> Result<Self> {
        if ell > n {
            return Err(Error::BadSize(format!("ell = {ell} exceeds n = {n}")));
        }
        Self::from_fn(n, |t| {
            let low = t.elements().iter().filter(|&&c| c <= ell).count();
            if low == 1 {
                t.identity().swap_rows(1, 2)
            } else {
                t.identity()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, t: &Triple) -> &Tableau {
        &self.map[t]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &Tableau)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn set(&mut self, tableau: Tableau) {
        self.map.insert(tableau.triple(), tableau);
    }

    pub fn diff(&self, other: &MatchingField) -> Result<Vec<FieldDiff>> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self
            .map
            .iter()
            .filter_map(|(triple, a)| {
                let b = other.get(triple);
                (a != b).then_some(FieldDiff { triple: *triple, before: *a, after: *b })
            })
            .collect())
    }

    /// Applies a diff recorded against this field.
    pub fn apply(&self, diff: &[FieldDiff]) -> Result<MatchingField> {
        let mut out = self.clone();
        for d in diff {
            if self.map.get(&d.triple) != Some(&d.before) {
                return Err(Error::BadSize(format!("diff does not apply at triple {}", d.triple)));
            }
            out.set(d.after);
        }
        Ok(out)
    }

    /// One `"i1 i2 i3 : c1 c2 c3"` line per triple, lexicographic.
    pub fn to_text(&self) -> String {
        self.map.iter().map(|(t, tab)| format!("{t} : {tab}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut n = 0;
        for (ln, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln + 1, "expected \"triple : tableau\""))?;
            let triple = parse_triple(lhs, ln + 1)?;
            let tab = parse_tableau(rhs, ln + 1)?;
            if tab.triple() != triple {
                return Err(Error::parse(ln + 1, "tableau is not a rearrangement of its triple"));
            }
            if let Some((last, _)) = map.last_key_value() {
                if *last >= triple {
                    return Err(Error::parse(ln + 1, "triples must be in lexicographic order"));
                }
            }
            n = n.max(triple.largest());
            map.insert(triple, tab);
        }
        let field = MatchingField { n, map };
        if n < 3 || field.map.len() != Triple::all(n).count() {
            return Err(Error::parse(0, "matching field does not cover every triple"));
        }
        Ok(field)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerWeights(pub BTreeMap<Triple, Q>);

impl PluckerWeights {
    pub fn get(&self, t: &Triple) -> &Q {
        &self.0[t]
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|(t, w)| format!("{t} : {}\n", fmt_q(w))).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (ln, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln + 1, "expected \"triple : weight\""))?;
            let triple = parse_triple(lhs, ln + 1)?;
            let w = parse_q(rhs).ok_or_else(|| Error::parse(ln + 1, "bad rational"))?;
            map.insert(triple, w);
        }
        Ok(PluckerWeights(map))
    }
}

/// A matrix inducing `block_diagonal(n, ell)`.
///
/// Row 2 descends within `[ell]` and within the rest, with every column of
/// `[ell]` below every other column; row 3 is `n^2 * (n, n-1, .., 1)`, whose
/// gaps exceed any row-2 spread so the largest column of each triple lands
/// in row 3.
pub fn block_diagonal_weights(n: usize, ell: usize) -> Result<WeightMatrix> {
    if n < 3 || ell > n {
        return Err(Error::BadSize(format!("need n >= 3 and ell <= n, got n = {n}, ell = {ell}")));
    }
    let c = (n * n) as i64;
    let row2: Vec<i64> = (1..=n)
        .map(|p| if p <= ell { (ell + 1 - p) as i64 } else { (n + ell + 1 - p) as i64 })
        .collect();
    let row3: Vec<i64> = (1..=n).map(|p| (n + 1 - p) as i64 * c).collect();
    WeightMatrix::from_ints(&vec![0; n], &row2, &row3)
}
