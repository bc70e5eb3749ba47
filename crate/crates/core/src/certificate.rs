//! Swap certificates and their text format.
//!
//! A certificate is a sequence of sections. Each section starts with an
//! upper-case header line and holds `key: value` lines; a key may own a
//! block of lines indented by two spaces (matrices, failing pairs).
//! Every rational is written exactly.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::field::{parse_tableau, parse_triple, FieldDiff, Tableau, WeightMatrix};
use crate::mutate::MutationData;
use crate::polytope::LatticePoint;
use crate::rational::{fmt_q, parse_q, Q};
use crate::regions::{Posture, Region, StarReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Noop,
    Shear,
    Mutation,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Noop => "NOOP",
            Kind::Shear => "SHEAR",
            Kind::Mutation => "MUTATION",
        }
    }

    fn from_name(s: &str) -> Option<Option<Kind>> {
        match s {
            "NOOP" => Some(Some(Kind::Noop)),
            "SHEAR" => Some(Some(Kind::Shear)),
            "MUTATION" => Some(Some(Kind::Mutation)),
            "none" => Some(None),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Verified,
    Refuted,
    Inapplicable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::Refuted => "REFUTED",
            Verdict::Inapplicable => "INAPPLICABLE",
        }
    }

    fn from_name(s: &str) -> Option<Verdict> {
        match s {
            "VERIFIED" => Some(Verdict::Verified),
            "REFUTED" => Some(Verdict::Refuted),
            "INAPPLICABLE" => Some(Verdict::Inapplicable),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessCase {
    /// First-row entries of `u` and `v` exchanged.
    RowOne,
    /// Second-row entries exchanged.
    RowTwo,
    /// Found by scanning all pairs on `<f,.> = 0`.
    Search,
}

impl WitnessCase {
    fn name(self) -> &'static str {
        match self {
            WitnessCase::RowOne => "row1",
            WitnessCase::RowTwo => "row2",
            WitnessCase::Search => "search",
        }
    }

    fn from_name(s: &str) -> Option<WitnessCase> {
        match s {
            "row1" => Some(WitnessCase::RowOne),
            "row2" => Some(WitnessCase::RowTwo),
            "search" => Some(WitnessCase::Search),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRow {
    pub u: Tableau,
    pub v: Tableau,
    pub witness: Option<(WitnessCase, Tableau, Tableau)>,
}

/// Midpoint membership over all pairs with `<f,.>` values `(-1, +1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Battery {
    pub pairs: usize,
    pub failures: Vec<(LatticePoint, LatticePoint)>,
}

impl Battery {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks {
    pub slab: bool,
    pub vertex_images: bool,
    pub forward: Battery,
    pub backward: Battery,
    /// The midpoint itself witnesses the weak form of the no-new-vertex
    /// criterion whenever the slab condition holds.
    pub exchange_weak: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.slab && self.vertex_images && self.forward.passed() && self.backward.passed()
    }

    pub fn failure_summary(&self) -> String {
        let mut failed = Vec::new();
        if !self.slab {
            failed.push("slab".to_string());
        }
        if !self.vertex_images {
            failed.push("vertex-images".to_string());
        }
        if !self.forward.passed() {
            failed.push(format!("forward-midpoints ({} pairs)", self.forward.failures.len()));
        }
        if !self.backward.passed() {
            failed.push(format!("backward-midpoints ({} pairs)", self.backward.failures.len()));
        }
        format!("failed: {}", failed.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationCertificate {
    pub source: WeightMatrix,
    pub digest: String,
    pub i: usize,
    pub j: usize,
    pub posture: Option<Posture>,
    pub regions: BTreeMap<usize, Region>,
    pub star: Option<StarReport>,
    pub epsilon: Option<Q>,
    pub swapped: Option<WeightMatrix>,
    pub data: Option<MutationData>,
    pub kind: Option<Kind>,
    pub diff: Vec<FieldDiff>,
    /// Vertices moved by the tropical map, with their images.
    pub images: Vec<(Tableau, LatticePoint)>,
    pub checks: Option<Checks>,
    pub witnesses: Vec<WitnessRow>,
    pub verdict: Verdict,
    pub reason: String,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn write_rows(out: &mut String, rows: &[Vec<Q>; 3]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(fmt_q).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn write_block(out: &mut String, text: &str) {
    for line in text.lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

impl MutationCertificate {
    pub(crate) fn empty(source: WeightMatrix, digest: String, i: usize, j: usize) -> Self {
        MutationCertificate {
            source,
            digest,
            i,
            j,
            posture: None,
            regions: BTreeMap::new(),
            star: None,
            epsilon: None,
            swapped: None,
            data: None,
            kind: None,
            diff: Vec::new(),
            images: Vec::new(),
            checks: None,
            witnesses: Vec::new(),
            verdict: Verdict::Inapplicable,
            reason: String::new(),
        }
    }

    pub fn exchange_witnessed(&self) -> usize {
        self.witnesses.iter().filter(|w| w.witness.is_some()).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "CERTIFICATE");
        let _ = writeln!(out, "source-digest: {}", self.digest);
        let _ = writeln!(out, "pair: {} {}", self.i, self.j);
        let _ = writeln!(out, "source:");
        write_block(&mut out, &self.source.to_text());

        if let Some(star) = &self.star {
            out.push_str(&star_section(star, self.posture, &self.regions));
        }
        if let (Some(eps), Some(m)) = (&self.epsilon, &self.swapped) {
            let _ = writeln!(out, "SWAP");
            let _ = writeln!(out, "epsilon: {}", fmt_q(eps));
            let _ = writeln!(out, "swapped:");
            write_block(&mut out, &m.to_text());
        }
        if let Some(d) = &self.data {
            let _ = writeln!(out, "WF");
            let _ = writeln!(out, "kind: {}", self.kind.map_or("none", Kind::name));
            let _ = writeln!(out, "group1: {}", join(&d.group1));
            let _ = writeln!(out, "group2: {}", join(&d.group2));
            let _ = writeln!(out, "group3: {}", join(&d.group3));
            let _ = writeln!(out, "w:");
            write_rows(&mut out, d.w.rows());
            let _ = writeln!(out, "f:");
            write_rows(&mut out, d.f.rows());
        }
        if self.swapped.is_some() {
            let _ = writeln!(out, "DIFF");
            for d in &self.diff {
                let _ = writeln!(out, "diff: {} : {} -> {}", d.triple, d.before, d.after);
            }
            for (u, img) in &self.images {
                let _ = writeln!(out, "image: {} -> {}", u, img.to_token());
            }
        }
        if let Some(c) = &self.checks {
            let _ = writeln!(out, "CHECKS");
            let _ = writeln!(out, "slab: {}", pass(c.slab));
            let _ = writeln!(out, "vertex-images: {}", pass(c.vertex_images));
            for (key, b) in [("forward-midpoints", &c.forward), ("backward-midpoints", &c.backward)] {
                let _ = writeln!(out, "{key}: {} pairs, {} failed", b.pairs, b.failures.len());
                for (u, v) in &b.failures {
                    let _ = writeln!(out, "  {} | {}", u.to_token(), v.to_token());
                }
            }
            let _ = writeln!(out, "exchange-weak: {}", pass(c.exchange_weak));
            let _ = writeln!(
                out,
                "exchange-vertex: {} of {} pairs witnessed",
                self.exchange_witnessed(),
                self.witnesses.len()
            );
            let _ = writeln!(out, "WITNESSES");
            for w in &self.witnesses {
                match &w.witness {
                    Some((case, t, t2)) => {
                        let _ = writeln!(out, "pair: {} | {} => {} {} + {}", w.u, w.v, case.name(), t, t2);
                    }
                    None => {
                        let _ = writeln!(out, "pair: {} | {} => NONE", w.u, w.v);
                    }
                }
            }
        }
        let _ = writeln!(out, "VERDICT");
        let _ = writeln!(out, "verdict: {}", self.verdict.name());
        let _ = writeln!(out, "reason: {}", self.reason);
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc = Doc::parse(text)?;
        let mut sections = doc.sections.into_iter().peekable();
        let cert = parse_certificate(&mut sections)?;
        if let Some(s) = sections.next() {
            return Err(Error::parse(s.line, format!("unexpected section {}", s.name)));
        }
        Ok(cert)
    }
}

/// The STAR section, also printed on its own by the `star` command.
pub fn star_section(star: &StarReport, posture: Option<Posture>, regions: &BTreeMap<usize, Region>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "STAR");
    if let Some(p) = posture {
        let _ = writeln!(out, "case: {}", p.name());
    }
    let regions: Vec<String> = regions.iter().map(|(k, r)| format!("{k}:{r}")).collect();
    let _ = writeln!(out, "regions: {}", regions.join(" "));
    let _ = writeln!(out, "flags: {}", star.flags_line());
    let _ = writeln!(out, "red: {}", join(&star.red));
    let _ = writeln!(out, "blue-olive: {}", join(&star.blue_olive));
    let _ = writeln!(out, "yellow-green: {}", join(&star.yellow_green));
    let _ = writeln!(out, "red-purple: {}", join(&star.red_purple));
    let _ = writeln!(out, "overall: {}", star.overall());
    out.lines().map(|l| format!("{}\n", l.trim_end())).collect()
}

#[derive(Debug, Clone)]
pub(crate) struct Entry {
    pub key: String,
    pub value: String,
    pub block: Vec<String>,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Section {
    pub name: String,
    pub entries: Vec<Entry>,
    pub line: usize,
}

impl Section {
    pub fn get(&self, key: &str) -> Result<&Entry> {
        self.entries
            .iter()
            .find(|e| e.key == key)
            .ok_or_else(|| Error::parse(self.line, format!("section {} lacks {key:?}", self.name)))
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }
}

pub(crate) struct Doc {
    pub sections: Vec<Section>,
}

impl Doc {
    pub fn parse(text: &str) -> Result<Doc> {
        let mut sections: Vec<Section> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if let Some(rest) = raw.strip_prefix("  ") {
                let entry = sections
                    .last_mut()
                    .and_then(|s| s.entries.last_mut())
                    .ok_or_else(|| Error::parse(ln, "indented line outside an entry"))?;
                entry.block.push(rest.to_string());
            } else if let Some((k, v)) = raw.split_once(':') {
                let section = sections
                    .last_mut()
                    .ok_or_else(|| Error::parse(ln, "entry before any section"))?;
                section.entries.push(Entry {
                    key: k.trim().to_string(),
                    value: v.trim().to_string(),
                    block: Vec::new(),
                    line: ln,
                });
            } else {
                sections.push(Section { name: raw.trim().to_string(), entries: Vec::new(), line: ln });
            }
        }
        Ok(Doc { sections })
    }
}

fn indices(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad index {t:?}"))))
        .collect()
}

fn boolean(s: &str, line: usize) -> Result<bool> {
    match s {
        "true" | "pass" => Ok(true),
        "false" | "fail" => Ok(false),
        _ => Err(Error::parse(line, format!("expected a boolean, got {s:?}"))),
    }
}

fn rows_block(e: &Entry, n: usize) -> Result<LatticePoint> {
    if e.block.len() != 3 {
        return Err(Error::parse(e.line, "expected three matrix rows"));
    }
    let mut rows: [Vec<Q>; 3] = Default::default();
    for (row, text) in rows.iter_mut().zip(&e.block) {
        *row = text
            .split_whitespace()
            .map(|t| parse_q(t).ok_or_else(|| Error::parse(e.line, format!("bad rational {t:?}"))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::parse(e.line, format!("expected {n} entries per row")));
        }
    }
    LatticePoint::from_rows(rows)
}

fn point(s: &str, n: usize, line: usize) -> Result<LatticePoint> {
    LatticePoint::parse_token(s, n).ok_or_else(|| Error::parse(line, format!("bad point {s:?}")))
}

fn parse_star(s: &Section) -> Result<(Option<Posture>, BTreeMap<usize, Region>, StarReport)> {
    let posture = match s.all("case").next() {
        Some(e) => Some(Posture::from_name(&e.value).ok_or_else(|| Error::parse(e.line, "bad case"))?),
        None => None,
    };
    let e = s.get("regions")?;
    let mut regions = BTreeMap::new();
    for tok in e.value.split_whitespace() {
        let (k, r) = tok.split_once(':').ok_or_else(|| Error::parse(e.line, "bad region entry"))?;
        let k: usize = k.parse().map_err(|_| Error::parse(e.line, "bad region line index"))?;
        let r = Region::from_name(r).ok_or_else(|| Error::parse(e.line, "bad region name"))?;
        regions.insert(k, r);
    }
    let e = s.get("flags")?;
    let mut flags = [false; 4];
    for (slot, (name, tok)) in flags.iter_mut().zip(["a", "b", "c", "d"].iter().zip(e.value.split_whitespace())) {
        let v = tok
            .strip_prefix(&format!("{name}="))
            .ok_or_else(|| Error::parse(e.line, "bad flags"))?;
        *slot = boolean(v, e.line)?;
    }
    let list = |key: &str| -> Result<Vec<usize>> {
        let e = s.get(key)?;
        indices(&e.value, e.line)
    };
    let star = StarReport {
        a: flags[0],
        b: flags[1],
        c: flags[2],
        d: flags[3],
        red: list("red")?,
        blue_olive: list("blue-olive")?,
        yellow_green: list("yellow-green")?,
        red_purple: list("red-purple")?,
    };
    Ok((posture, regions, star))
}

/// Parses the STAR section printed by [`star_section`].
pub fn parse_star_section(text: &str) -> Result<(Option<Posture>, BTreeMap<usize, Region>, StarReport)> {
    let doc = Doc::parse(text)?;
    match doc.sections.as_slice() {
        [s] if s.name == "STAR" => parse_star(s),
        _ => Err(Error::parse(1, "expected a single STAR section")),
    }
}

fn parse_battery(e: &Entry, n: usize) -> Result<Battery> {
    let pairs = e
        .value
        .split_whitespace()
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(e.line, "bad pair count"))?;
    let failures = e
        .block
        .iter()
        .map(|l| {
            let (u, v) = l.split_once('|').ok_or_else(|| Error::parse(e.line, "bad failing pair"))?;
            Ok((point(u, n, e.line)?, point(v, n, e.line)?))
        })
        .collect::<Result<_>>()?;
    Ok(Battery { pairs, failures })
}

fn parse_weight_block(e: &Entry) -> Result<WeightMatrix> {
    WeightMatrix::parse(&e.block.join("\n"))
}

pub(crate) fn parse_certificate(
    sections: &mut std::iter::Peekable<impl Iterator<Item = Section>>,
) -> Result<MutationCertificate> {
    let head = sections.next().ok_or_else(|| Error::parse(0, "missing CERTIFICATE"))?;
    if head.name != "CERTIFICATE" {
        return Err(Error::parse(head.line, "expected CERTIFICATE"));
    }
    let source = parse_weight_block(head.get("source")?)?;
    let n = source.n();
    let e = head.get("pair")?;
    let pair = indices(&e.value, e.line)?;
    let [i, j] = pair[..] else {
        return Err(Error::parse(e.line, "pair needs two indices"));
    };
    let mut cert = MutationCertificate::empty(source, head.get("source-digest")?.value.clone(), i, j);

    loop {
        let s = sections.next().ok_or_else(|| Error::parse(0, "missing VERDICT"))?;
        match s.name.as_str() {
            "STAR" => {
                let (posture, regions, star) = parse_star(&s)?;
                cert.posture = posture;
                cert.regions = regions;
                cert.star = Some(star);
            }
            "SWAP" => {
                let e = s.get("epsilon")?;
                cert.epsilon = Some(parse_q(&e.value).ok_or_else(|| Error::parse(e.line, "bad epsilon"))?);
                cert.swapped = Some(parse_weight_block(s.get("swapped")?)?);
            }
            "WF" => {
                let e = s.get("kind")?;
                cert.kind = Kind::from_name(&e.value).ok_or_else(|| Error::parse(e.line, "bad kind"))?;
                let g = |key: &str| -> Result<Vec<usize>> {
                    let e = s.get(key)?;
                    indices(&e.value, e.line)
                };
                cert.data = Some(MutationData {
                    i,
                    j,
                    w: rows_block(s.get("w")?, n)?,
                    f: rows_block(s.get("f")?, n)?,
                    group1: g("group1")?,
                    group2: g("group2")?,
                    group3: g("group3")?,
                });
            }
            "DIFF" => {
                for e in s.all("diff") {
                    let (tri, rest) = e.value.split_once(':').ok_or_else(|| Error::parse(e.line, "bad diff"))?;
                    let (a, b) = rest.split_once("->").ok_or_else(|| Error::parse(e.line, "bad diff"))?;
                    cert.diff.push(FieldDiff {
                        triple: parse_triple(tri, e.line)?,
                        before: parse_tableau(a, e.line)?,
                        after: parse_tableau(b, e.line)?,
                    });
                }
                for e in s.all("image") {
                    let (a, b) = e.value.split_once("->").ok_or_else(|| Error::parse(e.line, "bad image"))?;
                    cert.images.push((parse_tableau(a, e.line)?, point(b, n, e.line)?));
                }
            }
            "CHECKS" => {
                let flag = |key: &str| -> Result<bool> {
                    let e = s.get(key)?;
                    boolean(&e.value, e.line)
                };
                cert.checks = Some(Checks {
                    slab: flag("slab")?,
                    vertex_images: flag("vertex-images")?,
                    forward: parse_battery(s.get("forward-midpoints")?, n)?,
                    backward: parse_battery(s.get("backward-midpoints")?, n)?,
                    exchange_weak: flag("exchange-weak")?,
                });
            }
            "WITNESSES" => {
                for e in s.all("pair") {
                    let (uv, rest) = e.value.split_once("=>").ok_or_else(|| Error::parse(e.line, "bad witness"))?;
                    let (u, v) = uv.split_once('|').ok_or_else(|| Error::parse(e.line, "bad witness"))?;
                    let rest = rest.trim();
                    let witness = if rest == "NONE" {
                        None
                    } else {
                        let (case, ts) = rest.split_once(' ').ok_or_else(|| Error::parse(e.line, "bad witness"))?;
                        let case = WitnessCase::from_name(case).ok_or_else(|| Error::parse(e.line, "bad case"))?;
                        let (t, t2) = ts.split_once('+').ok_or_else(|| Error::parse(e.line, "bad witness"))?;
                        Some((case, parse_tableau(t, e.line)?, parse_tableau(t2, e.line)?))
                    };
                    cert.witnesses.push(WitnessRow {
                        u: parse_tableau(u, e.line)?,
                        v: parse_tableau(v, e.line)?,
                        witness,
                    });
                }
            }
            "VERDICT" => {
                let e = s.get("verdict")?;
                cert.verdict = Verdict::from_name(&e.value).ok_or_else(|| Error::parse(e.line, "bad verdict"))?;
                cert.reason = s.get("reason")?.value.clone();
                return Ok(cert);
            }
            other => return Err(Error::parse(s.line, format!("unknown section {other}"))),
        }
    }
}
