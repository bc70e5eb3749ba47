//! Matching-field polytopes as explicit point sets in `R^{3 x n}`, with an
//! exact convex-hull membership oracle.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{MatchingField, Tableau};
use crate::lp;
use crate::rational::{fmt_q, parse_q, Q};

/// A point of `R^{3 x n}`, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    rows: [Vec<Q>; 3],
}

impl LatticePoint {
    pub fn zero(n: usize) -> Self {
        LatticePoint { rows: [vec![Q::zero(); n], vec![Q::zero(); n], vec![Q::zero(); n]] }
    }

    pub fn from_rows(rows: [Vec<Q>; 3]) -> Result<Self> {
        let n = rows[0].len();
        if rows[1].len() != n || rows[2].len() != n {
            return Err(Error::ShapeMismatch(n, rows[1].len().max(rows[2].len())));
        }
        Ok(LatticePoint { rows })
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Q>; 3] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &Q {
        &self.rows[row - 1][col - 1]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Q) {
        self.rows[row - 1][col - 1] = v;
    }

    fn same_shape(&self, other: &LatticePoint) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::ShapeMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Sum of entrywise products.
    pub fn pair(&self, other: &LatticePoint) -> Result<Q> {
        self.same_shape(other)?;
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .flat_map(|(a, b)| a.iter().zip(b))
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn add(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (ra, rb) in out.rows.iter_mut().zip(&other.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> LatticePoint {
        let mut out = self.clone();
        for row in out.rows.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn midpoint(&self, other: &LatticePoint) -> Result<LatticePoint> {
        Ok(self.add(other)?.scale(&Q::new(1.into(), 2.into())))
    }

    /// The tableau this point encodes, when it is a 0/1 matrix with one 1 per
    /// row in three distinct columns.
    pub fn as_tableau(&self) -> Option<Tableau> {
        let mut cols = [0usize; 3];
        for (t, row) in self.rows.iter().enumerate() {
            let mut one = None;
            for (c, v) in row.iter().enumerate() {
                if v.is_one() {
                    if one.is_some() {
                        return None;
                    }
                    one = Some(c + 1);
                } else if !v.is_zero() {
                    return None;
                }
            }
            cols[t] = one?;
        }
        Tableau::new(cols[0], cols[1], cols[2]).ok()
    }

    /// Column triple `c1 c2 c3` for tableau points, otherwise a grid
    /// `[r1 ; r2 ; r3]`.
    pub fn to_token(&self) -> String {
        match self.as_tableau() {
            Some(t) => t.to_string(),
            None => {
                let rows: Vec<String> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("[{}]", rows.join(" ; "))
            }
        }
    }

    pub fn parse_token(s: &str, n: usize) -> Option<LatticePoint> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let rows: Vec<Vec<Q>> = inner
                .split(';')
                .map(|r| r.split_whitespace().map(parse_q).collect::<Option<Vec<_>>>())
                .collect::<Option<_>>()?;
            let rows: [Vec<Q>; 3] = rows.try_into().ok()?;
            if rows[0].len() != n {
                return None;
            }
            return LatticePoint::from_rows(rows).ok();
        }
        let cols: Vec<usize> = s.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
        let [a, b, c] = cols.try_into().ok()?;
        vertex_of(&Tableau::new(a, b, c).ok()?, n).ok()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}

/// The 0/1 matrix with a 1 at `(t, c_t)` for each row `t`.
pub fn vertex_of(t: &Tableau, n: usize) -> Result<LatticePoint> {
    let mut p = LatticePoint::zero(n);
    for r in 1..=3 {
        let c = t.row(r);
        if c > n {
            return Err(Error::BadIndex(c));
        }
        p.set(r, c, Q::one());
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    points: Vec<LatticePoint>,
}

impl VertexSet {
    pub fn new(n: usize, points: Vec<LatticePoint>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.n() != n) {
            return Err(Error::ShapeMismatch(n, p.n()));
        }
        Ok(VertexSet { n, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, q: &LatticePoint) -> bool {
        self.points.contains(q)
    }

    /// One tableau line per point, in stored order.
    pub fn to_text(&self) -> String {
        self.points.iter().map(|p| format!("{}\n", p.to_token())).collect()
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let points = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(ln, l)| LatticePoint::parse_token(l, n).ok_or_else(|| Error::parse(ln + 1, "bad point")))
            .collect::<Result<_>>()?;
        VertexSet::new(n, points)
    }
}

/// One point per triple, in lexicographic triple order.
pub fn vertices(field: &MatchingField) -> VertexSet {
    let points = field
        .iter()
        .map(|(_, t)| vertex_of(t, field.n()).expect("field tableaux fit in n"))
        .collect();
    VertexSet { n: field.n(), points }
}

/// Convex-combination coefficients expressing `q` over `points`, if any.
pub fn convex_combination(q: &LatticePoint, points: &[LatticePoint]) -> Option<Vec<Q>> {
    let n = q.n();
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(3 * n + 1);
    let mut b = Vec::with_capacity(3 * n + 1);
    for r in 1..=3 {
        for c in 1..=n {
            a.push(points.iter().map(|p| p.entry(r, c).clone()).collect());
            b.push(q.entry(r, c).clone());
        }
    }
    a.push(vec![Q::one(); points.len()]);
    b.push(Q::one());
    lp::solve_feasible(&a, &b)
}

/// Whether `q` lies in the convex hull of `set`.
pub fn member(q: &LatticePoint, set: &VertexSet) -> Result<bool> {
    if q.n() != set.n {
        return Err(Error::ShapeMismatch(q.n(), set.n));
    }
    Ok(convex_combination(q, &set.points).is_some())
}

/// Whether `q` is not a convex combination of the other points of `set`.
pub fn is_hull_vertex(q: &LatticePoint, set: &VertexSet) -> Result<bool> {
    if !set.contains(q) {
        return Err(Error::NotInSet);
    }
    let others: Vec<LatticePoint> = set.points.iter().filter(|p| *p != q).cloned().collect();
    Ok(convex_combination(q, &others).is_none())
}

/// Equality of convex hulls by mutual membership.
pub fn hull_equal(s: &VertexSet, t: &VertexSet) -> Result<bool> {
    if s.n != t.n {
        return Err(Error::ShapeMismatch(s.n, t.n));
    }
    for p in &s.points {
        if !member(p, t)? {
            return Ok(false);
        }
    }
    for p in &t.points {
        if !member(p, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}
