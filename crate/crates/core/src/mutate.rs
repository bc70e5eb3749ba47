//! Mutation data for an adjacent swap, the tropical map it defines, and the
//! exact certification of a swap.
//!
//! For an adjacent pair `(i, j)` with region groups ① (red), ② (green and
//! yellow) and ③ (purple), `w` has column `i = (1,-1,0)` and column
//! `j = (-1,1,0)`; `f` has `(1,-1,0)` on ② and `(0,-1,0)` on `i` and `j`.
//! The tropical map is `q -> q - min(0, <q,f>) w`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::arrange::Arrangement;
use crate::certificate::{Battery, Checks, Kind, MutationCertificate, Verdict, WitnessCase, WitnessRow};
use crate::error::{Error, Result};
use crate::field::{FieldDiff, MatchingField, Tableau, WeightMatrix};
use crate::polytope::{member, vertex_of, vertices, LatticePoint, VertexSet};
use crate::rational::{int, Q};
use crate::regions::{classify, RegionAssignment, StarReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationData {
    pub i: usize,
    pub j: usize,
    pub w: LatticePoint,
    pub f: LatticePoint,
    pub group1: Vec<usize>,
    pub group2: Vec<usize>,
    pub group3: Vec<usize>,
}

impl MutationData {
    pub fn new(n: usize, ra: &RegionAssignment) -> MutationData {
        let (i, j) = (ra.i, ra.j);
        let mut w = LatticePoint::zero(n);
        w.set(1, i, int(1));
        w.set(2, i, int(-1));
        w.set(1, j, int(-1));
        w.set(2, j, int(1));
        let group2 = ra.group2();
        let mut f = LatticePoint::zero(n);
        for &k in &group2 {
            f.set(1, k, int(1));
            f.set(2, k, int(-1));
        }
        f.set(2, i, int(-1));
        f.set(2, j, int(-1));
        MutationData { i, j, w, f, group1: ra.group1(), group2, group3: ra.group3() }
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn f_value(&self, q: &LatticePoint) -> Result<Q> {
        self.f.pair(q)
    }

    /// Inverse of the shear `q -> q - <q,f> w`; exact because `<w,f> = 0`.
    pub fn inverse_shear(&self, q: &LatticePoint) -> Result<LatticePoint> {
        let s = self.f.pair(q)?;
        q.add(&self.w.scale(&s))
    }
}

pub fn build_wf(arr: &Arrangement, ra: &RegionAssignment) -> MutationData {
    MutationData::new(arr.n(), ra)
}

/// The tropical map `q -> q - min(0, <q,f>) w`.
pub fn phi(q: &LatticePoint, data: &MutationData) -> Result<LatticePoint> {
    let s = data.f.pair(q)?;
    if s < Q::zero() {
        q.add(&data.w.scale(&-s))
    } else {
        Ok(q.clone())
    }
}

/// The field obtained by exchanging rows 1 and 2 of the tableau of
/// `{i, j, k}` for every red `k`, which must currently read `(j, i, k)`.
pub fn expected_flip(field: &MatchingField, ra: &RegionAssignment) -> Result<MatchingField> {
    let mut out = field.clone();
    for k in ra.group1() {
        let triple = crate::field::Triple::from_set([ra.i, ra.j, k])?;
        let t = field.get(&triple);
        if t.rows() != [ra.j, ra.i, k] {
            return Err(Error::PatternMismatch(k));
        }
        out.set(t.swap_rows(1, 2));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Swap {
    pub matrix: WeightMatrix,
    pub epsilon: Q,
    pub diff: Vec<FieldDiff>,
}

pub const SWAP_HALVINGS: usize = 64;

/// Moves line `i` horizontally to `(a_j + eps, b_i)`.
///
/// `eps` starts at half the gap to the next apex right of `j` (gap 1 when
/// `j` is rightmost) and is halved until the moved matrix is generic, has
/// `i` and `j` transposed in the x-order, and changes exactly the triples
/// predicted by [`expected_flip`].
pub fn swap(m: &WeightMatrix, i: usize, j: usize) -> Result<Swap> {
    let field = m.induce()?;
    let arr = Arrangement::from_weights(m);
    let ra = classify(&arr, i, j)?;
    let expected = field.diff(&expected_flip(&field, &ra)?)?;

    let order = arr.x_order()?;
    let pos = order.iter().position(|&p| p == j).expect("j is a line");
    let aj = arr.apex(j).x.clone();
    let gap = order
        .get(pos + 1)
        .map(|&p| &arr.apex(p).x - &aj)
        .unwrap_or_else(Q::one);
    let mut target_order = order.clone();
    target_order.swap(pos - 1, pos);

    let half = Q::new(1.into(), 2.into());
    let mut eps = &gap * &half;
    for _ in 0..SWAP_HALVINGS {
        let mut moved = m.clone();
        moved.set_entry(2, i, m.entry(1, i) + &aj + &eps);
        if let Ok(new_field) = moved.induce() {
            let same_order = Arrangement::from_weights(&moved).x_order().ok().as_ref() == Some(&target_order);
            if same_order {
                let diff = field.diff(&new_field)?;
                if diff == expected {
                    return Ok(Swap { matrix: moved, epsilon: eps, diff });
                }
            }
        }
        eps = &eps * &half;
    }
    Err(Error::NotSwappable(i, j))
}

fn tableau_f_value(data: &MutationData, t: &Tableau) -> Result<i64> {
    let v = data.f_value(&vertex_of(t, data.n())?)?;
    if v == int(-1) {
        Ok(-1)
    } else if v.is_zero() {
        Ok(0)
    } else if v.is_one() {
        Ok(1)
    } else {
        Err(Error::SlabViolation(t.to_string()))
    }
}

/// For every vertex pair `(u, v)` with `<f,u> = -1` and `<f,v> = 1`, looks
/// for vertices `t, t'` on `<f,.> = 0` with `t + t' = u + v`: first the
/// first-row exchange, then the second-row exchange, then every pair.
pub fn witness_table(set: &VertexSet, data: &MutationData) -> Result<Vec<WitnessRow>> {
    let mut tabs = Vec::with_capacity(set.len());
    for p in set.points() {
        let t = p.as_tableau().ok_or_else(|| Error::SlabViolation(p.to_token()))?;
        tabs.push((t, tableau_f_value(data, &t)?));
    }
    let present: BTreeSet<Tableau> = tabs.iter().map(|(t, _)| *t).collect();
    let level0: Vec<Tableau> = tabs.iter().filter(|(_, v)| *v == 0).map(|(t, _)| *t).collect();
    let n = data.n();

    let usable = |t: &[usize; 3]| -> Option<Tableau> {
        let t = Tableau::new(t[0], t[1], t[2]).ok()?;
        (present.contains(&t) && tableau_f_value(data, &t).ok()? == 0).then_some(t)
    };

    let mut rows = Vec::new();
    for (u, _) in tabs.iter().filter(|(_, v)| *v == -1) {
        for (v, _) in tabs.iter().filter(|(_, v)| *v == 1) {
            let (a, b) = (u.rows(), v.rows());
            let row_one = (usable(&[b[0], a[1], a[2]]), usable(&[a[0], b[1], b[2]]));
            let row_two = (usable(&[a[0], b[1], a[2]]), usable(&[b[0], a[1], b[2]]));
            let witness = if let (Some(t), Some(t2)) = row_one {
                Some((WitnessCase::RowOne, t, t2))
            } else if let (Some(t), Some(t2)) = row_two {
                Some((WitnessCase::RowTwo, t, t2))
            } else {
                let target = vertex_of(u, n)?.add(&vertex_of(v, n)?)?;
                let mut found = None;
                'search: for (x, t) in level0.iter().enumerate() {
                    for t2 in &level0[x + 1..] {
                        if vertex_of(t, n)?.add(&vertex_of(t2, n)?)? == target {
                            found = Some((WitnessCase::Search, *t, *t2));
                            break 'search;
                        }
                    }
                }
                found
            };
            rows.push(WitnessRow { u: *u, v: *v, witness });
        }
    }
    Ok(rows)
}

fn digest(m: &WeightMatrix) -> String {
    hex::encode(Sha256::digest(m.to_text().as_bytes()))
}

fn battery(from: &VertexSet, into: &VertexSet, data: &MutationData) -> Result<Battery> {
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for p in from.points() {
        let v = data.f_value(p)?;
        if v == int(-1) {
            neg.push(p);
        } else if v.is_one() {
            pos.push(p);
        }
    }
    let mut out = Battery { pairs: 0, failures: Vec::new() };
    for u in &neg {
        for v in &pos {
            out.pairs += 1;
            if !member(&u.midpoint(v)?, into)? {
                out.failures.push(((*u).clone(), (*v).clone()));
            }
        }
    }
    Ok(out)
}

/// Runs classification, the swap condition, the swap itself and every
/// verification check for the pair `(i, j)` of `m`.
///
/// Failures of the hypotheses are reported as an `Inapplicable` verdict
/// with a reason rather than as errors.
pub fn certify(m: &WeightMatrix, i: usize, j: usize) -> MutationCertificate {
    certify_detailed(m, i, j).0
}

/// Like [`certify`], also returning the error that made the certificate
/// inapplicable, if any.
pub fn certify_detailed(m: &WeightMatrix, i: usize, j: usize) -> (MutationCertificate, Option<Error>) {
    let mut cert = MutationCertificate::empty(m.clone(), digest(m), i, j);
    match certify_into(&mut cert, m, i, j) {
        Ok(()) => (cert, None),
        Err(e) => {
            cert.verdict = Verdict::Inapplicable;
            cert.reason = e.to_string();
            (cert, Some(e))
        }
    }
}

fn certify_into(cert: &mut MutationCertificate, m: &WeightMatrix, i: usize, j: usize) -> Result<()> {
    let field = m.induce()?;
    let arr = Arrangement::from_weights(m);
    let ra = classify(&arr, i, j)?;
    let star = StarReport::from_assignment(&ra);
    cert.posture = Some(ra.posture);
    cert.regions = ra.regions.clone();
    cert.star = Some(star.clone());

    let sw = swap(m, i, j)?;
    let swapped_field = sw.matrix.induce()?;
    cert.epsilon = Some(sw.epsilon.clone());
    cert.swapped = Some(sw.matrix.clone());
    cert.diff = sw.diff.clone();

    let data = build_wf(&arr, &ra);
    let before = vertices(&field);
    let after = vertices(&swapped_field);

    let values: Vec<Q> = before.points().iter().map(|p| data.f_value(p)).collect::<Result<_>>()?;
    let kind = if data.group1.is_empty() {
        Some(Kind::Noop)
    } else if values.iter().all(|v| *v >= Q::zero()) || values.iter().all(|v| *v <= Q::zero()) {
        Some(Kind::Shear)
    } else if star.overall() {
        Some(Kind::Mutation)
    } else {
        None
    };
    cert.kind = kind;

    let slab = values.iter().all(|v| *v >= int(-1) && *v <= int(1));
    let images: Vec<LatticePoint> = before.points().iter().map(|p| phi(p, &data)).collect::<Result<_>>()?;
    cert.images = before
        .points()
        .iter()
        .zip(&images)
        .filter(|(p, q)| p != q)
        .map(|(p, q)| (p.as_tableau().expect("field vertex"), q.clone()))
        .collect();
    let image_set: BTreeSet<&LatticePoint> = images.iter().collect();
    let after_set: BTreeSet<&LatticePoint> = after.points().iter().collect();
    let vertex_images = image_set == after_set;
    let forward = battery(&before, &after, &data)?;
    let backward = battery(&after, &before, &data)?;
    cert.witnesses = if slab { witness_table(&before, &data)? } else { Vec::new() };
    cert.data = Some(data);
    cert.checks = Some(Checks {
        slab,
        vertex_images,
        forward,
        backward,
        exchange_weak: slab,
    });

    let checks = cert.checks.as_ref().expect("just set");
    let all_pass = checks.all_pass();
    let (verdict, reason) = match kind {
        None => (
            Verdict::Inapplicable,
            "vertices lie on both sides of <f,.> = 0 but the swap condition fails".to_string(),
        ),
        Some(_) if all_pass => (Verdict::Verified, "all checks passed".to_string()),
        Some(_) if star.overall() => (Verdict::Refuted, checks.failure_summary()),
        Some(_) => (
            Verdict::Inapplicable,
            format!("{} and the swap condition fails", checks.failure_summary()),
        ),
    };
    cert.verdict = verdict;
    cert.reason = reason;
    Ok(())
}
