//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropmut::arrange::{Arrangement, Point};
use tropmut::certificate::{Kind, Verdict};
use tropmut::field::{block_diagonal_weights, MatchingField, Tableau, Triple, WeightMatrix};
use tropmut::fixtures;
use tropmut::mutate::{build_wf, certify, phi};
use tropmut::planner::plan_block_to_diagonal;
use tropmut::polytope::{is_hull_vertex, member, vertex_of, vertices, LatticePoint, VertexSet};
use tropmut::rational::{int, ratio, Q};
use tropmut::regions::{classify, Region};
use tropmut::render::{render, RenderOptions};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn tab(a: usize, b: usize, c: usize) -> Tableau {
    Tableau::new(a, b, c).unwrap()
}

/// Minimum over the six assignments, computed from scratch.
fn brute_min(m: &WeightMatrix, t: &Triple) -> (Q, Vec<[usize; 3]>) {
    let [a, b, c] = t.elements();
    let perms = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    let weight = |p: &[usize; 3]| m.entry(1, p[0]) + m.entry(2, p[1]) + m.entry(3, p[2]);
    let min = perms.iter().map(weight).min().unwrap();
    let argmin = perms.iter().filter(|p| weight(p) == min).copied().collect();
    (min, argmin)
}

fn brute_field(m: &WeightMatrix) -> Option<BTreeMap<Triple, [usize; 3]>> {
    let mut out = BTreeMap::new();
    for t in Triple::all(m.n()) {
        let (_, argmin) = brute_min(m, &t);
        if argmin.len() != 1 {
            return None;
        }
        out.insert(t, argmin[0]);
    }
    Some(out)
}

fn as_map(field: &MatchingField) -> BTreeMap<Triple, [usize; 3]> {
    field.iter().map(|(t, tab)| (*t, tab.rows())).collect()
}

/// Rows 1 and 2 exchanged exactly when one element of the triple is at
/// most `ell`.
fn block_rule(n: usize, ell: usize) -> BTreeMap<Triple, [usize; 3]> {
    Triple::all(n)
        .map(|t| {
            let [a, b, c] = t.elements();
            let small = t.elements().iter().filter(|&&x| x <= ell).count();
            (t, if small == 1 { [b, a, c] } else { [a, b, c] })
        })
        .collect()
}

/// Solves `A x = b` exactly for columns that must be independent; `None`
/// when they are dependent or the system is inconsistent.
fn solve_exact(cols: &[&LatticePoint], q: &LatticePoint) -> Option<Vec<Q>> {
    let n = q.n();
    let k = cols.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for r in 1..=3 {
        for c in 1..=n {
            let mut row: Vec<Q> = cols.iter().map(|p| p.entry(r, c).clone()).collect();
            row.push(q.entry(r, c).clone());
            rows.push(row);
        }
    }
    let mut ones = vec![Q::one(); k];
    ones.push(Q::one());
    rows.push(ones);
    let mut pivot_row = 0;
    for col in 0..k {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let lead = rows[pivot_row][col].clone();
        for v in rows[pivot_row].iter_mut() {
            *v /= &lead;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(rows[..k].iter().map(|r| r[k].clone()).collect())
}

/// Hull membership by enumerating basic solutions over the points whose
/// support lies inside the support of `q`.
fn member_by_enumeration(q: &LatticePoint, set: &[LatticePoint]) -> bool {
    let n = q.n();
    let support: Vec<&LatticePoint> = set
        .iter()
        .filter(|p| (1..=3).all(|r| (1..=n).all(|c| p.entry(r, c).is_zero() || q.entry(r, c).is_positive())))
        .collect();
    assert!(support.len() <= 16, "support too large for enumeration");
    (1u32..1 << support.len()).any(|mask| {
        let cols: Vec<&LatticePoint> =
            support.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, p)| *p).collect();
        solve_exact(&cols, q).is_some_and(|x| x.iter().all(|v| !v.is_negative()))
    })
}

/// `<f, u>` for the vertex of `t`: one if row 1 is in group two, minus one
/// if row 2 is `i`, `j` or in group two.
fn f_value_by_rule(t: &Tableau, i: usize, j: usize, group2: &BTreeSet<usize>) -> i64 {
    let [c1, c2, _] = t.rows();
    let plus = i64::from(group2.contains(&c1));
    let minus = i64::from(c2 == i || c2 == j || group2.contains(&c2));
    plus - minus
}

fn criterion_1() -> Check {
    let m = fixtures::mdiag6();
    let w = m.plucker_weights();
    for (t, expected) in [((1, 2, 3), 12), ((1, 2, 4), 10), ((4, 5, 6), 3)] {
        let t = Triple::new(t.0, t.1, t.2).unwrap();
        ensure!(*w.get(&t) == int(expected), "weight of {t} is {}", w.get(&t));
        ensure!(brute_min(&m, &t).0 == int(expected), "oracle weight of {t}");
    }
    let field = m.induce().map_err(|e| e.to_string())?;
    let diagonal: BTreeMap<Triple, [usize; 3]> = Triple::all(6).map(|t| (t, t.elements())).collect();
    ensure!(as_map(&field) == diagonal, "induced field is not diagonal");
    ensure!(field == MatchingField::diagonal(6).unwrap(), "library diagonal differs");
    Ok(format!("weights 12/10/3, induced field diagonal on {} triples", field.len()))
}

fn criterion_2() -> Check {
    let m = fixtures::fig2();
    let arr = Arrangement::from_weights(&m);
    let sample = Point::new(ratio(3, 2), ratio(9, 5));
    let apexes: Vec<Point> = arr.lines().iter().map(|l| l.apex.clone()).collect();
    let mut by_x: Vec<usize> = (1..=3).collect();
    by_x.sort_by(|a, b| apexes[a - 1].x.cmp(&apexes[b - 1].x));
    let (left, middle, right) = (by_x[0], by_x[1], by_x[2]);
    // row type: argmin of (0, a - x, b - y)
    let mut types = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    for (k, a) in apexes.iter().enumerate() {
        let v = [Q::zero(), &a.x - &sample.x, &a.y - &sample.y];
        let min = v.iter().min().unwrap();
        ensure!(v.iter().filter(|x| *x == min).count() == 1, "sample on a ray");
        types[v.iter().position(|x| x == min).unwrap()].insert(k + 1);
    }
    let expected = [BTreeSet::from([right]), BTreeSet::from([middle]), BTreeSet::from([left])];
    ensure!(types == expected, "oracle covector {types:?}");
    let cov = arr.covector_at(&sample, &[1, 2, 3]).map_err(|e| e.to_string())?;
    ensure!(cov.0 == expected, "library covector {:?}", cov.0);
    let (_, cell) = arr.cell111(&Triple::new(1, 2, 3).unwrap()).map_err(|e| e.to_string())?;
    ensure!(cell.0 == expected, "(1,1,1) cell covector {:?}", cell.0);
    Ok(format!("covector ({{{right}}},{{{middle}}},{{{left}}}) at (3/2, 9/5)"))
}

fn geometric_agrees(m: &WeightMatrix) -> Result<usize, String> {
    let algebraic = m.induce().map_err(|e| e.to_string())?;
    let geometric = Arrangement::from_weights(m).induce_geometric().map_err(|e| e.to_string())?;
    ensure!(algebraic == geometric, "disagreement on\n{}", m.to_text());
    ensure!(Some(as_map(&algebraic)) == brute_field(m), "oracle disagreement on\n{}", m.to_text());
    Ok(algebraic.len())
}

fn criterion_3() -> Check {
    let mut matrices = vec![fixtures::mdiag6(), fixtures::f5()];
    for n in 3..=8 {
        for ell in 0..=n {
            matrices.push(block_diagonal_weights(n, ell).unwrap());
        }
    }
    let fixed = matrices.len();
    matrices.extend(common::random_generic(120, 2024));
    let mut triples = 0;
    for m in &matrices {
        triples += geometric_agrees(m)?;
    }
    Ok(format!("{} matrices ({} random), {triples} triples, 100% agreement", matrices.len(), matrices.len() - fixed))
}

fn criterion_4() -> Check {
    let mut count = 0;
    for n in 3..=8 {
        for ell in 0..=n {
            let m = block_diagonal_weights(n, ell).map_err(|e| e.to_string())?;
            let field = m.induce().map_err(|e| e.to_string())?;
            ensure!(as_map(&field) == block_rule(n, ell), "n={n} ell={ell}");
            ensure!(field == MatchingField::block_diagonal(n, ell).unwrap(), "library rule n={n} ell={ell}");
            count += 1;
        }
    }
    Ok(format!("{count} (n, ell) pairs match the block rule"))
}

fn criterion_5() -> Check {
    let m = fixtures::f5();
    let cert = certify(&m, 3, 4);
    let star = cert.star.as_ref().ok_or("no star report")?;
    ensure!(star.a && star.b && star.c && star.d, "star flags {}", star.flags_line());
    let in_region = |r: Region| -> Vec<usize> {
        cert.regions.iter().filter(|(_, x)| **x == r).map(|(k, _)| *k).collect()
    };
    ensure!(in_region(Region::Red) == vec![1], "red {:?}", in_region(Region::Red));
    ensure!(in_region(Region::Purple) == vec![2], "purple");
    ensure!(in_region(Region::Yellow) == vec![5], "yellow");
    ensure!(cert.diff.len() == 1, "diff has {} entries", cert.diff.len());
    let d = &cert.diff[0];
    ensure!(
        d.triple == Triple::new(1, 3, 4).unwrap() && d.before == tab(4, 3, 1) && d.after == tab(3, 4, 1),
        "diff {} : {} -> {}",
        d.triple,
        d.before,
        d.after
    );
    let swapped = cert.swapped.as_ref().ok_or("no swapped matrix")?;
    let before = brute_field(&m).ok_or("oracle tie")?;
    let after = brute_field(swapped).ok_or("oracle tie after swap")?;
    let changed: Vec<_> = before.iter().filter(|(t, v)| after[*t] != **v).collect();
    ensure!(changed.len() == 1, "oracle diff has {} entries", changed.len());

    let checks = cert.checks.as_ref().ok_or("no checks")?;
    ensure!(checks.vertex_images, "vertex-image equality failed");

    let u = vertex_of(&tab(4, 3, 1), 5).unwrap();
    let v = vertex_of(&tab(5, 2, 4), 5).unwrap();
    let mid = u.midpoint(&v).unwrap();
    let after_points: Vec<LatticePoint> =
        after.values().map(|r| vertex_of(&tab(r[0], r[1], r[2]), 5).unwrap()).collect();
    let oracle_member = member_by_enumeration(&mid, &after_points);
    let recorded_fail = checks.forward.failures.contains(&(u.clone(), v.clone()));
    ensure!(oracle_member != recorded_fail, "battery disagrees with the enumeration oracle");

    let kind_ok = cert.kind == Some(Kind::Mutation);
    ensure!(kind_ok, "kind {:?}", cert.kind);
    let expected = if checks.all_pass() { Verdict::Verified } else { Verdict::Refuted };
    ensure!(cert.verdict == expected, "verdict {:?} does not follow the checks", cert.verdict);
    Ok(format!(
        "eps {}, midpoint of (4,3,1),(5,2,4) member={oracle_member}, verdict {}",
        tropmut::rational::fmt_q(cert.epsilon.as_ref().unwrap()),
        cert.verdict.name()
    ))
}

fn criterion_6() -> Check {
    let mut matrices = vec![
        fixtures::mdiag6(),
        fixtures::fig2(),
        fixtures::f5(),
        fixtures::f5_one_sided(),
        fixtures::f5_unswappable(),
    ];
    matrices.extend(common::random_generic(120, 2024));
    let (mut pairs, mut checked) = (0, 0);
    for m in &matrices {
        let arr = Arrangement::from_weights(m);
        let field = m.induce().map_err(|e| e.to_string())?;
        let set = vertices(&field);
        for (i, j) in common::adjacent_pairs(m) {
            let Ok(ra) = classify(&arr, i, j) else { continue };
            pairs += 1;
            let data = build_wf(&arr, &ra);
            let group2: BTreeSet<usize> = ra.group2().into_iter().collect();
            for (_, t) in field.iter() {
                let value = f_value_by_rule(t, i, j, &group2);
                ensure!((-1..=1).contains(&value), "rule value {value} for {t}");
                let lib = data.f_value(&vertex_of(t, m.n()).unwrap()).unwrap();
                ensure!(lib == int(value), "library value {lib} vs {value} for {t}");
                checked += 1;
            }
            ensure!(set.len() == field.len(), "vertex count");
        }
    }
    Ok(format!("{pairs} classified pairs, {checked} vertex values in {{-1,0,1}}"))
}

fn criterion_7() -> Check {
    let plan = plan_block_to_diagonal(6, 2, false).map_err(|e| e.to_string())?;
    ensure!(plan.steps.len() == 8, "{} steps", plan.steps.len());
    let mut field = as_map(&plan.initial.induce().unwrap());
    ensure!(field == block_rule(6, 2), "initial field is not B_2");
    for step in &plan.steps {
        for d in &step.certificate.diff {
            ensure!(field[&d.triple] == d.before.rows(), "diff does not apply at {}", d.triple);
            field.insert(d.triple, d.after.rows());
        }
    }
    let diagonal: BTreeMap<Triple, [usize; 3]> = Triple::all(6).map(|t| (t, t.elements())).collect();
    ensure!(field == diagonal, "composed diffs do not reach the diagonal field");

    let mut moves: BTreeMap<usize, usize> = BTreeMap::new();
    for step in &plan.steps {
        *moves.entry(step.i).or_default() += 1;
        let cert = &step.certificate;
        if cert.kind == Some(Kind::Mutation) {
            let data = cert.data.as_ref().unwrap();
            let images: BTreeSet<LatticePoint> = vertices(&cert.source.induce().unwrap())
                .points()
                .iter()
                .map(|p| phi(p, data).unwrap())
                .collect();
            let post: BTreeSet<LatticePoint> =
                vertices(&step.post().induce().unwrap()).points().iter().cloned().collect();
            ensure!(images == post, "vertex images differ at step ({}, {})", step.i, step.j);
        }
    }
    ensure!(moves == BTreeMap::from([(1, 4), (2, 4)]), "migrating lines {moves:?}");
    let again = plan_block_to_diagonal(6, 2, false).map_err(|e| e.to_string())?;
    ensure!(again.to_text() == plan.to_text(), "plan text differs between runs");
    let s = plan.summary();
    Ok(format!(
        "8 steps; NOOP {} SHEAR {} MUTATION {}; VERIFIED {} REFUTED {} INAPPLICABLE {}",
        s.noop, s.shear, s.mutation, s.verified, s.refuted, s.inapplicable
    ))
}

fn criterion_8() -> Check {
    let set = vertices(&MatchingField::diagonal(6).unwrap());
    ensure!(set.len() == 20, "{} points", set.len());
    for p in set.points() {
        ensure!(is_hull_vertex(p, &set).map_err(|e| e.to_string())?, "{p} is not a hull vertex");
    }
    let pts = set.points();
    let mut probes = Vec::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let mid = pts[a].midpoint(&pts[b]).unwrap();
            ensure!(member(&mid, &set).unwrap(), "midpoint of {} and {} rejected", pts[a], pts[b]);
            probes.push(mid);
        }
    }
    let outside = vertex_of(&tab(2, 1, 3), 6).unwrap();
    ensure!(!member(&outside, &set).unwrap(), "(2,1,3) accepted");
    probes.push(outside);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let baseline: Vec<bool> = probes.iter().map(|q| member(q, &set).unwrap()).collect();
    for _ in 0..3 {
        let mut shuffled = pts.to_vec();
        shuffled.shuffle(&mut rng);
        let permuted = VertexSet::new(6, shuffled).unwrap();
        let again: Vec<bool> = probes.iter().map(|q| member(q, &permuted).unwrap()).collect();
        ensure!(again == baseline, "membership depends on point order");
    }
    Ok(format!("20/20 hull vertices, {} midpoints accepted, order-independent", probes.len() - 1))
}

fn criterion_9() -> Check {
    let m = fixtures::f5_one_sided();
    let cert = certify(&m, 3, 4);
    ensure!(cert.kind == Some(Kind::Shear), "kind {:?}", cert.kind);
    let data = cert.data.as_ref().ok_or("no mutation data")?;
    let set = vertices(&m.induce().unwrap());
    let values: Vec<Q> = set.points().iter().map(|p| data.f_value(p).unwrap()).collect();
    let nonpositive = values.iter().all(|v| !v.is_positive());
    let nonnegative = values.iter().all(|v| !v.is_negative());
    ensure!(nonpositive || nonnegative, "vertices on both sides");
    let mut images = BTreeSet::new();
    for (p, v) in set.points().iter().zip(&values) {
        let image = phi(p, data).unwrap();
        let linear = if nonpositive { p.add(&data.w.scale(&-v)).unwrap() } else { p.clone() };
        ensure!(image == linear, "map is not linear at {p}");
        ensure!(data.inverse_shear(&image).unwrap() == *p, "inverse shear fails at {p}");
        images.insert(image);
    }
    ensure!(images.len() == set.len(), "map is not injective");
    let checks = cert.checks.as_ref().ok_or("no checks")?;
    ensure!(checks.vertex_images, "vertex-image equality failed");
    Ok(format!("SHEAR on {} vertices, verdict {}", set.len(), cert.verdict.name()))
}

fn criterion_10() -> Check {
    let d6 = Arrangement::from_weights(&fixtures::mdiag6());
    let svg = render(&d6, &RenderOptions::default()).map_err(|e| e.to_string())?;
    let groups = svg.matches("<g class=\"line\"").count();
    let rays = svg.matches("class=\"ray\"").count();
    ensure!(groups == 6 && rays == 18, "{groups} groups, {rays} rays");
    let f5 = Arrangement::from_weights(&fixtures::f5());
    let opts = RenderOptions { pair: Some((3, 4)), regions: true, ..RenderOptions::default() };
    let first = render(&f5, &opts).map_err(|e| e.to_string())?;
    let polygons = first.matches("<polygon class=\"region\"").count();
    ensure!(polygons == 6, "{polygons} region polygons");
    ensure!(render(&f5, &opts).unwrap() == first, "F5 render differs between runs");
    ensure!(render(&d6, &RenderOptions::default()).unwrap() == svg, "M-DIAG6 render differs between runs");
    Ok("6 groups / 18 rays; 6 region polygons; byte-identical reruns".to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("plucker weights and diagonal field", criterion_1, Duration::from_secs(1)),
        ("(1,1,1) cell covector", criterion_2, Duration::from_secs(1)),
        ("geometric induction", criterion_3, Duration::from_secs(60)),
        ("block diagonal oracle", criterion_4, Duration::from_secs(30)),
        ("F5 swap pipeline", criterion_5, Duration::from_secs(5)),
        ("slab invariant", criterion_6, Duration::from_secs(60)),
        ("block to diagonal plan", criterion_7, Duration::from_secs(60)),
        ("hull oracle", criterion_8, Duration::from_secs(10)),
        ("shear", criterion_9, Duration::from_secs(5)),
        ("render", criterion_10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({elapsed:.2?}): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
