//! Chains of certified adjacent swaps.
//!
//! Scheduling is deterministic: at every step the leftmost adjacent pair
//! of the current x-order that is inverted relative to the target is
//! swapped. Each step transposes exactly one pair, so the number of steps
//! equals the inversion count between the initial and target orders.

use std::fmt::{self, Write};

use crate::arrange::Arrangement;
use crate::certificate::{parse_certificate, Doc, Kind, MutationCertificate, Verdict};
use crate::error::{Error, Result};
use crate::field::{block_diagonal_weights, MatchingField, WeightMatrix};
use crate::mutate::certify_detailed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanSource {
    Block { n: usize, ell: usize },
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub i: usize,
    pub j: usize,
    pub certificate: MutationCertificate,
}

impl Step {
    /// Matrix after the swap; present for every recorded step.
    pub fn post(&self) -> &WeightMatrix {
        self.certificate.swapped.as_ref().expect("recorded steps carry a swapped matrix")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub source: PlanSource,
    pub initial: WeightMatrix,
    pub target: Vec<usize>,
    pub strict: bool,
    pub steps: Vec<Step>,
    pub final_field: MatchingField,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub steps: usize,
    pub noop: usize,
    pub shear: usize,
    pub mutation: usize,
    pub unclassified: usize,
    pub verified: usize,
    pub refuted: usize,
    pub inapplicable: usize,
}

impl Summary {
    fn entries(&self) -> [(&'static str, usize); 8] {
        [
            ("steps", self.steps),
            ("NOOP", self.noop),
            ("SHEAR", self.shear),
            ("MUTATION", self.mutation),
            ("unclassified", self.unclassified),
            ("VERIFIED", self.verified),
            ("REFUTED", self.refuted),
            ("INAPPLICABLE", self.inapplicable),
        ]
    }
}

/// A plan that stopped early, with the steps completed so far.
#[derive(Debug, Clone)]
pub struct PlanError {
    pub error: Error,
    pub partial: Option<Box<Plan>>,
}

impl fmt::Display for PlanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.partial {
            Some(p) => write!(f, "{} (after {} steps)", self.error, p.steps.len()),
            None => write!(f, "{}", self.error),
        }
    }
}

impl std::error::Error for PlanError {}

impl From<Error> for PlanError {
    fn from(error: Error) -> Self {
        PlanError { error, partial: None }
    }
}

pub fn inversions(order: &[usize], target: &[usize]) -> usize {
    let pos = positions(target);
    let mut count = 0;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if pos[order[a]] > pos[order[b]] {
                count += 1;
            }
        }
    }
    count
}

fn positions(target: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; target.len() + 1];
    for (k, &p) in target.iter().enumerate() {
        pos[p] = k;
    }
    pos
}

fn check_target(n: usize, target: &[usize]) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if target.len() != n {
        return Err(Error::BadTarget(n));
    }
    for &p in target {
        if p == 0 || p > n || seen[p] {
            return Err(Error::BadTarget(n));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Decreasing order `n, n-1, ..., 1`, the x-order of the diagonal field.
pub fn diagonal_order(n: usize) -> Vec<usize> {
    (1..=n).rev().collect()
}

pub fn plan_to_order(m: &WeightMatrix, target: &[usize], strict: bool) -> std::result::Result<Plan, PlanError> {
    plan_from(m, target, strict, PlanSource::Matrix)
}

fn plan_from(
    m: &WeightMatrix,
    target: &[usize],
    strict: bool,
    source: PlanSource,
) -> std::result::Result<Plan, PlanError> {
    check_target(m.n(), target)?;
    let initial_field = m.induce()?;
    let mut plan = Plan {
        source,
        initial: m.clone(),
        target: target.to_vec(),
        strict,
        steps: Vec::new(),
        final_field: initial_field,
    };
    let pos = positions(target);
    let mut current = m.clone();
    loop {
        let order = Arrangement::from_weights(&current).x_order()?;
        let Some(k) = (0..order.len() - 1).find(|&k| pos[order[k]] > pos[order[k + 1]]) else {
            break;
        };
        let (i, j) = (order[k], order[k + 1]);
        let (cert, err) = certify_detailed(&current, i, j);
        let abort = match (&cert.swapped, err) {
            (None, e) => Some(e.unwrap_or(Error::NotSwappable(i, j))),
            (Some(_), _) if strict && cert.verdict != Verdict::Verified => {
                Some(Error::Unverified(i, j, cert.verdict.name().to_string()))
            }
            _ => None,
        };
        if let Some(error) = abort {
            if cert.swapped.is_some() {
                current = cert.swapped.clone().expect("checked");
                plan.steps.push(Step { i, j, certificate: cert });
            }
            plan.final_field = current.induce()?;
            return Err(PlanError { error, partial: Some(Box::new(plan)) });
        }
        current = cert.swapped.clone().expect("checked");
        plan.steps.push(Step { i, j, certificate: cert });
    }
    plan.final_field = current.induce()?;
    Ok(plan)
}

/// Plans from `block_diagonal_weights(n, ell)` to the diagonal order and
/// checks that the final field is the diagonal field.
pub fn plan_block_to_diagonal(n: usize, ell: usize, strict: bool) -> std::result::Result<Plan, PlanError> {
    let m = block_diagonal_weights(n, ell)?;
    let plan = plan_from(&m, &diagonal_order(n), strict, PlanSource::Block { n, ell })?;
    if plan.final_field != MatchingField::diagonal(n)? {
        return Err(PlanError { error: Error::EndpointMismatch, partial: Some(Box::new(plan)) });
    }
    Ok(plan)
}

impl Plan {
    pub fn summary(&self) -> Summary {
        let mut s = Summary { steps: self.steps.len(), ..Summary::default() };
        for step in &self.steps {
            let c = &step.certificate;
            match c.kind {
                Some(Kind::Noop) => s.noop += 1,
                Some(Kind::Shear) => s.shear += 1,
                Some(Kind::Mutation) => s.mutation += 1,
                None => s.unclassified += 1,
            }
            match c.verdict {
                Verdict::Verified => s.verified += 1,
                Verdict::Refuted => s.refuted += 1,
                Verdict::Inapplicable => s.inapplicable += 1,
            }
        }
        s
    }

    /// The initial field with every step's diff applied in order.
    pub fn replay(&self) -> Result<MatchingField> {
        let mut field = self.initial.induce()?;
        for step in &self.steps {
            field = field.apply(&step.certificate.diff)?;
        }
        Ok(field)
    }

    pub fn last_matrix(&self) -> &WeightMatrix {
        self.steps.last().map_or(&self.initial, Step::post)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "PLAN");
        let _ = writeln!(out, "n: {}", self.initial.n());
        match self.source {
            PlanSource::Block { n, ell } => {
                let _ = writeln!(out, "source: block {n} {ell}");
            }
            PlanSource::Matrix => {
                let _ = writeln!(out, "source: matrix");
            }
        }
        let target: Vec<String> = self.target.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "target: {}", target.join(" "));
        let _ = writeln!(out, "strict: {}", self.strict);
        let _ = writeln!(out, "initial:");
        for line in self.initial.to_text().lines() {
            let _ = writeln!(out, "  {line}");
        }
        for (k, step) in self.steps.iter().enumerate() {
            let _ = writeln!(out, "STEP {}", k + 1);
            out.push_str(&step.certificate.to_text());
        }
        let _ = writeln!(out, "FINAL");
        let _ = writeln!(out, "field:");
        for line in self.final_field.to_text().lines() {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(out, "SUMMARY");
        for (key, v) in self.summary().entries() {
            let _ = writeln!(out, "{key}: {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Plan> {
        let doc = Doc::parse(text)?;
        let mut sections = doc.sections.into_iter().peekable();
        let head = sections.next().ok_or_else(|| Error::parse(1, "missing PLAN"))?;
        if head.name != "PLAN" {
            return Err(Error::parse(head.line, "expected PLAN"));
        }
        let initial = WeightMatrix::parse(&head.get("initial")?.block.join("\n"))?;
        let e = head.get("source")?;
        let words: Vec<&str> = e.value.split_whitespace().collect();
        let source = match words[..] {
            ["matrix"] => PlanSource::Matrix,
            ["block", n, ell] => PlanSource::Block {
                n: n.parse().map_err(|_| Error::parse(e.line, "bad n"))?,
                ell: ell.parse().map_err(|_| Error::parse(e.line, "bad ell"))?,
            },
            _ => return Err(Error::parse(e.line, "bad source")),
        };
        let e = head.get("target")?;
        let target = e
            .value
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(e.line, "bad target")))
            .collect::<Result<Vec<usize>>>()?;
        let e = head.get("strict")?;
        let strict = match e.value.as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(Error::parse(e.line, "bad strict flag")),
        };

        let mut steps = Vec::new();
        let final_field = loop {
            let s = sections.next().ok_or_else(|| Error::parse(0, "missing FINAL"))?;
            if s.name.starts_with("STEP ") {
                let certificate = parse_certificate(&mut sections)?;
                if certificate.swapped.is_none() {
                    return Err(Error::parse(s.line, "step without a swapped matrix"));
                }
                steps.push(Step { i: certificate.i, j: certificate.j, certificate });
            } else if s.name == "FINAL" {
                break MatchingField::parse(&s.get("field")?.block.join("\n"))?;
            } else {
                return Err(Error::parse(s.line, format!("unexpected section {}", s.name)));
            }
        };
        let plan = Plan { source, initial, target, strict, steps, final_field };

        let s = sections.next().ok_or_else(|| Error::parse(0, "missing SUMMARY"))?;
        if s.name != "SUMMARY" {
            return Err(Error::parse(s.line, "expected SUMMARY"));
        }
        for (key, v) in plan.summary().entries() {
            let e = s.get(key)?;
            if e.value != v.to_string() {
                return Err(Error::parse(e.line, format!("{key} disagrees with the steps")));
            }
        }
        if let Some(s) = sections.next() {
            return Err(Error::parse(s.line, format!("unexpected section {}", s.name)));
        }
        Ok(plan)
    }
}
