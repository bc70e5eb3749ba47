//! Tropical line arrangements in the plane.
//!
//! Column `p` of a weight matrix gives the tropical line with apex
//! `(m2p - m1p, m3p - m1p)`: an x-ray to the left, a y-ray downward and a
//! diagonal ray up-right. At a point `q = (x, y)` line `p` has type
//! `argmin_t (m_tp - u_t)` with `u = (0, x, y)`; the rays are exactly where
//! that minimum is not unique.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{MatchingField, Tableau, Triple, WeightMatrix};
use crate::rational::{int, Q};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalLine {
    pub index: usize,
    pub apex: Point,
}

impl TropicalLine {
    /// Row type of this line at `q`: 1 below-left of the apex, 2 right and
    /// below the diagonal, 3 above.
    pub fn type_at(&self, q: &Point) -> Result<usize> {
        let values = [Q::zero(), &self.apex.x - &q.x, &self.apex.y - &q.y];
        let min = values.iter().min().expect("three values");
        let mut hits = values.iter().enumerate().filter(|(_, v)| *v == min);
        let (row, _) = hits.next().expect("minimum attained");
        if hits.next().is_some() {
            return Err(Error::OnBoundary(self.index));
        }
        Ok(row + 1)
    }

    pub fn diagonal_offset(&self) -> Q {
        &self.apex.y - &self.apex.x
    }
}

/// `S_t` is the set of lines of type `t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Covector(pub [BTreeSet<usize>; 3]);

impl Covector {
    pub fn coarse(&self) -> [usize; 3] {
        [self.0[0].len(), self.0[1].len(), self.0[2].len()]
    }

    /// The tableau `(c1, c2, c3)` when every part is a singleton.
    pub fn as_tableau(&self) -> Option<Tableau> {
        if self.coarse() != [1, 1, 1] {
            return None;
        }
        let c = |t: usize| *self.0[t].iter().next().unwrap();
        Tableau::new(c(0), c(1), c(2)).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<TropicalLine>,
    source: WeightMatrix,
}

impl Arrangement {
    pub fn from_weights(m: &WeightMatrix) -> Arrangement {
        let source = m.normalize();
        let lines = (1..=m.n())
            .map(|p| TropicalLine {
                index: p,
                apex: Point::new(source.entry(2, p).clone(), source.entry(3, p).clone()),
            })
            .collect();
        Arrangement { lines, source }
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn source(&self) -> &WeightMatrix {
        &self.source
    }

    pub fn lines(&self) -> &[TropicalLine] {
        &self.lines
    }

    pub fn line(&self, p: usize) -> Result<&TropicalLine> {
        if p == 0 || p > self.lines.len() {
            return Err(Error::BadIndex(p));
        }
        Ok(&self.lines[p - 1])
    }

    pub fn apex(&self, p: usize) -> &Point {
        &self.lines[p - 1].apex
    }

    pub fn covector_at(&self, q: &Point, subset: &[usize]) -> Result<Covector> {
        let mut cov = Covector::default();
        for &p in subset {
            let t = self.line(p)?.type_at(q)?;
            cov.0[t - 1].insert(p);
        }
        Ok(cov)
    }

    /// Finds the cell where the three lines of `triple` take pairwise
    /// distinct types, returning a sample point inside it and its covector.
    ///
    /// The cell is a bounded polygon whose edges are horizontal, vertical
    /// or slope one, so one of its corners is an intersection of two of the
    /// nine supporting lines. Each such intersection is probed in sixteen
    /// directions at a distance small enough that no other supporting line
    /// is crossed.
    pub fn cell111(&self, triple: &Triple) -> Result<(Point, Covector)> {
        let members = triple.elements();
        for &p in &members {
            self.line(p)?;
        }
        let apexes: Vec<&Point> = members.iter().map(|&p| self.apex(p)).collect();
        let xs: Vec<Q> = apexes.iter().map(|a| a.x.clone()).collect();
        let ys: Vec<Q> = apexes.iter().map(|a| a.y.clone()).collect();
        let ds: Vec<Q> = apexes.iter().map(|a| &a.y - &a.x).collect();

        let mut corners = BTreeSet::new();
        for x in &xs {
            for y in &ys {
                corners.insert(Point::new(x.clone(), y.clone()));
            }
            for d in &ds {
                corners.insert(Point::new(x.clone(), x + d));
            }
        }
        for y in &ys {
            for d in &ds {
                corners.insert(Point::new(y - d, y.clone()));
            }
        }

        let min_gap = |values: &mut Vec<Q>| -> Option<Q> {
            values.sort();
            values.dedup();
            values.windows(2).map(|w| &w[1] - &w[0]).min()
        };
        let mut cx: Vec<Q> = corners.iter().map(|c| c.x.clone()).collect();
        let mut cy: Vec<Q> = corners.iter().map(|c| c.y.clone()).collect();
        let mut cd: Vec<Q> = corners.iter().map(|c| &c.y - &c.x).collect();
        let gap = [min_gap(&mut cx), min_gap(&mut cy), min_gap(&mut cd)]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or_else(Q::one);
        let delta = gap / int(4);

        const DIRECTIONS: [(i64, i64); 16] = [
            (1, 0), (0, 1), (-1, 0), (0, -1),
            (1, 1), (-1, 1), (-1, -1), (1, -1),
            (2, 1), (1, 2), (-1, 2), (-2, 1),
            (-2, -1), (-1, -2), (1, -2), (2, -1),
        ];
        let mut found: Option<(Point, Covector)> = None;
        for corner in &corners {
            for (dx, dy) in DIRECTIONS {
                let q = Point::new(&corner.x + &delta * int(dx), &corner.y + &delta * int(dy));
                let cov = match self.covector_at(&q, &members) {
                    Ok(c) => c,
                    Err(Error::OnBoundary(_)) => continue,
                    Err(e) => return Err(e),
                };
                if cov.coarse() != [1, 1, 1] {
                    continue;
                }
                match &found {
                    None => found = Some((q, cov)),
                    Some((_, seen)) if *seen != cov => return Err(Error::Ambiguous(*triple)),
                    Some(_) => {}
                }
            }
        }
        found.ok_or(Error::NotFound(*triple))
    }

    /// The matching field read off the (1,1,1) cells of every triple.
    pub fn induce_geometric(&self) -> Result<MatchingField> {
        let mut cells = Vec::new();
        for triple in Triple::all(self.n()) {
            let (_, cov) = self.cell111(&triple)?;
            cells.push(cov.as_tableau().ok_or(Error::NotFound(triple))?);
        }
        let mut it = cells.into_iter();
        MatchingField::from_fn(self.n(), |_| it.next().expect("one cell per triple"))
    }

    /// Line indices sorted by apex x-coordinate.
    pub fn x_order(&self) -> Result<Vec<usize>> {
        let mut order: Vec<usize> = (1..=self.n()).collect();
        order.sort_by(|&p, &q| self.apex(p).x.cmp(&self.apex(q).x).then(p.cmp(&q)));
        for w in order.windows(2) {
            if self.apex(w[0]).x == self.apex(w[1]).x {
                return Err(Error::TiedX(w[0], w[1]));
            }
        }
        Ok(order)
    }

    /// True when `i` and `j` are consecutive in the x-order, in either order.
    pub fn adjacent(&self, i: usize, j: usize) -> Result<bool> {
        self.line(i)?;
        self.line(j)?;
        let order = self.x_order()?;
        Ok(order
            .windows(2)
            .any(|w| (w[0] == i && w[1] == j) || (w[0] == j && w[1] == i)))
    }
}
