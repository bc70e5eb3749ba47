//! The six colored regions around an adjacent pair of lines and the swap
//! condition built from them.
//!
//! `i` is the left line of the pair and `j` the right one. Region
//! membership is decided by apex location; every region is an intersection
//! of open half-planes, so an apex on a bounding ray belongs to none.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arrange::{Arrangement, Point};
use crate::error::{Error, Result};
use crate::rational::{int, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Red,
    Purple,
    Olive,
    Blue,
    Green,
    Yellow,
}

impl Region {
    pub const ALL: [Region; 6] = [
        Region::Red,
        Region::Purple,
        Region::Olive,
        Region::Blue,
        Region::Green,
        Region::Yellow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Region::Red => "RED",
            Region::Purple => "PURPLE",
            Region::Olive => "OLIVE",
            Region::Blue => "BLUE",
            Region::Green => "GREEN",
            Region::Yellow => "YELLOW",
        }
    }

    pub fn from_name(s: &str) -> Option<Region> {
        Region::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `One`: the apex of `j` is higher than that of `i`. `Two`: lower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Posture {
    One,
    Two,
}

impl Posture {
    pub fn name(self) -> &'static str {
        match self {
            Posture::One => "ONE",
            Posture::Two => "TWO",
        }
    }

    pub fn from_name(s: &str) -> Option<Posture> {
        match s {
            "ONE" => Some(Posture::One),
            "TWO" => Some(Posture::Two),
            _ => None,
        }
    }
}

/// The open half-plane `cx * x + cy * y < c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub cx: Q,
    pub cy: Q,
    pub c: Q,
}

impl HalfPlane {
    fn new(cx: i64, cy: i64, c: Q) -> Self {
        HalfPlane { cx: int(cx), cy: int(cy), c }
    }

    /// `c - (cx x + cy y)`: positive inside, zero on the boundary.
    pub fn slack(&self, p: &Point) -> Q {
        &self.c - (&self.cx * &p.x + &self.cy * &p.y)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.slack(p) > Q::zero()
    }
}

fn x_below(v: &Q) -> HalfPlane {
    HalfPlane::new(1, 0, v.clone())
}
fn x_above(v: &Q) -> HalfPlane {
    HalfPlane::new(-1, 0, -v)
}
fn y_below(v: &Q) -> HalfPlane {
    HalfPlane::new(0, 1, v.clone())
}
fn y_above(v: &Q) -> HalfPlane {
    HalfPlane::new(0, -1, -v)
}
/// `y - x < v`
fn diag_below(v: &Q) -> HalfPlane {
    HalfPlane::new(-1, 1, v.clone())
}
/// `y - x > v`
fn diag_above(v: &Q) -> HalfPlane {
    HalfPlane::new(1, -1, -v)
}

pub fn posture(apex_i: &Point, apex_j: &Point) -> Result<Posture> {
    match apex_j.y.cmp(&apex_i.y) {
        std::cmp::Ordering::Greater => Ok(Posture::One),
        std::cmp::Ordering::Less => Ok(Posture::Two),
        std::cmp::Ordering::Equal => Err(Error::Boundary(0)),
    }
}

pub type RegionTable = Vec<(Region, Vec<HalfPlane>)>;

/// Half-plane descriptions of the six regions for a pair with apexes
/// `(a_i, b_i)` left of `(a_j, b_j)`.
pub fn region_constraints(apex_i: &Point, apex_j: &Point) -> Result<(Posture, RegionTable)> {
    let (ai, bi) = (&apex_i.x, &apex_i.y);
    let (aj, bj) = (&apex_j.x, &apex_j.y);
    let di = bi - ai;
    let dj = bj - aj;
    let posture = posture(apex_i, apex_j)?;
    let table = match posture {
        Posture::One => {
            let knee = aj + &di;
            vec![
                (Region::Red, vec![x_below(ai), diag_below(&di)]),
                (Region::Purple, vec![x_below(ai), diag_above(&di), y_below(bj)]),
                (Region::Olive, vec![x_below(ai), y_above(bj)]),
                (Region::Blue, vec![x_above(aj), y_below(&knee)]),
                (Region::Green, vec![x_above(aj), y_above(&knee), diag_below(&dj)]),
                (Region::Yellow, vec![x_above(aj), diag_above(&dj)]),
            ]
        }
        Posture::Two => {
            let knee = bj - ai;
            vec![
                (Region::Red, vec![x_below(ai), diag_below(&knee)]),
                (Region::Purple, vec![x_below(ai), diag_above(&knee), y_below(bi)]),
                (Region::Olive, vec![x_below(ai), y_above(bi)]),
                (Region::Blue, vec![x_above(aj), y_below(bj)]),
                (Region::Green, vec![x_above(aj), y_above(bj), diag_below(&di)]),
                (Region::Yellow, vec![x_above(aj), diag_above(&di)]),
            ]
        }
    };
    Ok((posture, table))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionAssignment {
    pub i: usize,
    pub j: usize,
    pub posture: Posture,
    pub regions: BTreeMap<usize, Region>,
}

impl RegionAssignment {
    pub fn lines_in(&self, region: Region) -> Vec<usize> {
        self.regions
            .iter()
            .filter(|(_, r)| **r == region)
            .map(|(k, _)| *k)
            .collect()
    }

    /// Red lines.
    pub fn group1(&self) -> Vec<usize> {
        self.lines_in(Region::Red)
    }

    /// Green and yellow lines.
    pub fn group2(&self) -> Vec<usize> {
        self.regions
            .iter()
            .filter(|(_, r)| matches!(r, Region::Green | Region::Yellow))
            .map(|(k, _)| *k)
            .collect()
    }

    /// Purple lines.
    pub fn group3(&self) -> Vec<usize> {
        self.lines_in(Region::Purple)
    }
}

/// Assigns every line other than `i` and `j` to one of the six regions.
///
/// Requires `i` immediately left of `j` in the x-order. An apex on a
/// bounding ray is `Boundary`; an apex matching two predicates (possible
/// when `j` is higher than `i` yet below the diagonal ray of `i`) is
/// `RegionOverlap`.
pub fn classify(arr: &Arrangement, i: usize, j: usize) -> Result<RegionAssignment> {
    arr.line(i)?;
    arr.line(j)?;
    let order = arr.x_order()?;
    if !order.windows(2).any(|w| w[0] == i && w[1] == j) {
        return Err(Error::NotAdjacent(i, j));
    }
    let (apex_i, apex_j) = (arr.apex(i), arr.apex(j));
    let (posture, table) = region_constraints(apex_i, apex_j).map_err(|_| Error::Boundary(j))?;
    let mut regions = BTreeMap::new();
    for k in (1..=arr.n()).filter(|&k| k != i && k != j) {
        let p = arr.apex(k);
        let mut hits = table
            .iter()
            .filter(|(_, planes)| planes.iter().all(|h| h.contains(p)))
            .map(|(r, _)| *r);
        let region = hits.next().ok_or(Error::Boundary(k))?;
        if hits.next().is_some() {
            return Err(Error::RegionOverlap(k));
        }
        regions.insert(k, region);
    }
    Ok(RegionAssignment { i, j, posture, regions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub red: Vec<usize>,
    pub blue_olive: Vec<usize>,
    pub yellow_green: Vec<usize>,
    pub red_purple: Vec<usize>,
}

impl StarReport {
    pub fn from_assignment(ra: &RegionAssignment) -> StarReport {
        let pick = |set: &[Region]| -> Vec<usize> {
            ra.regions
                .iter()
                .filter(|(_, r)| set.contains(r))
                .map(|(k, _)| *k)
                .collect()
        };
        let red = pick(&[Region::Red]);
        let blue_olive = pick(&[Region::Blue, Region::Olive]);
        let yellow_green = pick(&[Region::Yellow, Region::Green]);
        let red_purple = pick(&[Region::Red, Region::Purple]);
        StarReport {
            a: !red.is_empty(),
            b: blue_olive.is_empty(),
            c: !yellow_green.is_empty(),
            d: red_purple.len() >= 2,
            red,
            blue_olive,
            yellow_green,
            red_purple,
        }
    }

    pub fn overall(&self) -> bool {
        self.a && self.b && self.c && self.d
    }

    pub fn flags_line(&self) -> String {
        format!("a={} b={} c={} d={}", self.a, self.b, self.c, self.d)
    }
}

pub fn star(arr: &Arrangement, i: usize, j: usize) -> Result<StarReport> {
    classify(arr, i, j).map(|ra| StarReport::from_assignment(&ra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::WeightMatrix;
    use crate::fixtures;
    use crate::rational::ratio;

    /// Arrangement with line 1 = i, line 2 = j and the remaining lines at
    /// the given apexes.
    fn pair_with(i: (Q, Q), j: (Q, Q), others: &[(Q, Q)]) -> Arrangement {
        let mut r2 = vec![i.0, j.0];
        let mut r3 = vec![i.1, j.1];
        for (x, y) in others {
            r2.push(x.clone());
            r3.push(y.clone());
        }
        let n = r2.len();
        Arrangement::from_weights(&WeightMatrix::new([vec![Q::zero(); n], r2, r3]).unwrap())
    }

    fn region_of(i: (i64, i64), j: (i64, i64), k: (Q, Q)) -> Result<Region> {
        let arr = pair_with((int(i.0), int(i.1)), (int(j.0), int(j.1)), &[k]);
        classify(&arr, 1, 2).map(|ra| ra.regions[&3])
    }

    #[test]
    fn posture_one_regions() {
        let (i, j) = ((0, 0), (1, 2));
        assert_eq!(region_of(i, j, (int(-1), ratio(-3, 2))), Ok(Region::Red));
        assert_eq!(region_of(i, j, (int(-1), int(1))), Ok(Region::Purple));
        assert_eq!(region_of(i, j, (ratio(3, 2), int(4))), Ok(Region::Yellow));
        assert_eq!(region_of(i, j, (int(-1), int(3))), Ok(Region::Olive));
        assert_eq!(region_of(i, j, (int(2), int(0))), Ok(Region::Blue));
        assert_eq!(region_of(i, j, (int(3), ratio(7, 2))), Ok(Region::Green));
        // on the anti-diagonal ray of i
        assert_eq!(region_of(i, j, (int(-1), int(-1))), Err(Error::Boundary(3)));
    }

    #[test]
    fn posture_two_regions() {
        let (i, j) = ((0, 2), (1, 0));
        assert_eq!(region_of(i, j, (int(2), int(-1))), Ok(Region::Blue));
        assert_eq!(region_of(i, j, (int(-1), int(3))), Ok(Region::Olive));
        assert_eq!(region_of(i, j, (int(2), int(1))), Ok(Region::Green));
        assert_eq!(region_of(i, j, (int(-1), int(-2))), Ok(Region::Red));
        assert_eq!(region_of(i, j, (int(-1), int(1))), Ok(Region::Purple));
        assert_eq!(region_of(i, j, (int(2), int(5))), Ok(Region::Yellow));
        assert_eq!(region_of(i, j, (int(2), int(0))), Err(Error::Boundary(3)));
    }

    #[test]
    fn overlap_when_j_under_diagonal_of_i() {
        // j higher than i but below the diagonal ray of i
        let (i, j) = ((0, 0), (4, 1));
        assert_eq!(region_of(i, j, (int(5), int(3))), Err(Error::RegionOverlap(3)));
    }

    #[test]
    fn f5_regions() {
        let arr = Arrangement::from_weights(&fixtures::f5());
        let ra = classify(&arr, 3, 4).unwrap();
        assert_eq!(ra.posture, Posture::One);
        assert_eq!(ra.regions[&1], Region::Red);
        assert_eq!(ra.regions[&2], Region::Purple);
        assert_eq!(ra.regions[&5], Region::Yellow);
        assert_eq!(classify(&arr, 4, 3), Err(Error::NotAdjacent(4, 3)));
        assert_eq!(classify(&arr, 1, 4), Err(Error::NotAdjacent(1, 4)));
    }

    #[test]
    fn star_reports() {
        let arr = Arrangement::from_weights(&fixtures::f5());
        let s = star(&arr, 3, 4).unwrap();
        assert!(s.a && s.b && s.c && s.d && s.overall());
        assert_eq!(s.red_purple, vec![1, 2]);
        assert_eq!(s.flags_line(), "a=true b=true c=true d=true");

        // every line left of 4 sits below the diagonal ray of 4
        let d6 = Arrangement::from_weights(&fixtures::mdiag6());
        let s = star(&d6, 4, 3).unwrap();
        assert!(s.a);
        assert_eq!(s.red, vec![5, 6]);
        let s = star(&d6, 6, 5).unwrap();
        assert!(!s.a);

        let three = pair_with((int(0), int(0)), (int(1), int(2)), &[(int(-1), int(1))]);
        let s = star(&three, 1, 2).unwrap();
        assert_eq!((s.a, s.b, s.c, s.d), (false, true, false, false));
    }
}
