//! Field sources, modulus enumeration, per-configuration reports and sweeps.

use std::path::PathBuf;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::fp::is_prime;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, IdealHNF};
use crate::hecke::{compute_tp, eigensystem_report, psi_report, Level};
use crate::ray_class::ClassGroup;
use crate::units::InvariantsRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSource {
    Native(u64),
    Descriptor(PathBuf),
}

impl FieldSource {
    pub fn load(&self) -> Result<FieldDescriptor> {
        match self {
            FieldSource::Native(d) => FieldDescriptor::real_quadratic(*d),
            FieldSource::Descriptor(path) => FieldDescriptor::load(path),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub fields: Vec<FieldSource>,
    pub modulus_norm_bound: u64,
    pub primes: Vec<u64>,
    pub budget: usize,
    pub cap_residue: u64,
    /// Skip moduli sharing a prime with `p`.
    pub coprime_only: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.modulus_norm_bound == 0 || self.budget == 0 || self.cap_residue == 0 {
            return Err(Error::InvalidInput("bounds must be positive".into()));
        }
        for (i, &p) in self.primes.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if self.primes[..i].contains(&p) {
                return Err(Error::InvalidInput(format!("prime {p} listed twice")));
            }
        }
        Ok(())
    }
}

/// Every integral ideal of norm at most `bound` whose prime factors are not
/// over index primes, ordered by norm then HNF.
pub fn moduli_up_to(field: &FieldDescriptor, bound: u64) -> Vec<IdealHNF> {
    let primes = field.primes_up_to_norm(bound);
    let mut out = Vec::new();
    let mut stack: Vec<(usize, IdealHNF, u64)> = vec![(0, field.unit_ideal(), 1)];
    while let Some((start, ideal, norm)) = stack.pop() {
        out.push(ideal.clone());
        for (i, p) in primes.iter().enumerate().skip(start) {
            let n = norm.saturating_mul(p.norm());
            if n > bound {
                continue;
            }
            stack.push((i, field.ideal_product(&ideal, p.ideal()), n));
        }
    }
    out.sort_by(|a, b| (a.norm(), a.rows()).cmp(&(b.norm(), b.rows())));
    out.dedup();
    out
}

/// The first ideal of norm exactly `norm` in [`moduli_up_to`] order.
pub fn modulus_of_norm(field: &FieldDescriptor, norm: u64) -> Result<IdealHNF> {
    moduli_up_to(field, norm)
        .into_iter()
        .find(|a| a.norm().to_u64() == Some(norm))
        .ok_or_else(|| Error::InvalidInput(format!("no ideal of norm {norm}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigensystems {
    pub count: usize,
    pub matched_both_degrees: bool,
}

/// Per-configuration report; field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub field: String,
    pub modulus_norm: u64,
    pub p: u64,
    pub r: usize,
    pub r_p: usize,
    pub delta_p: usize,
    pub t_p: usize,
    pub h_plus: u64,
    pub index: u64,
    #[serde(rename = "hypothesis_A")]
    pub hypothesis_a: bool,
    #[serde(rename = "dim_H0")]
    pub dim_h0: usize,
    #[serde(rename = "dim_H1")]
    pub dim_h1: usize,
    pub dim_psi_domain: usize,
    pub dim_psi_image: usize,
    pub psi_isomorphism: bool,
    pub certificate_primes: Vec<u64>,
    pub eigensystems: Eigensystems,
}

pub const CSV_HEADER: &str =
    "field,modulus_norm,p,r,r_p,delta_p,t_p,h_plus,index,hypothesis_A,psi_isomorphism,eigensystems_matched";

/// Report plus the internal record and the scan's shortfall flag.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub report: Report,
    pub record: InvariantsRecord,
    pub shortfall: bool,
}

/// Everything for one `(F, 𝔑, p)`.
pub fn run_invariants(level: &Level, p: u64, budget: usize) -> Result<Evaluation> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let tp = compute_tp(level, p, budget)?;
    let psi = psi_report(level, p, &tp);
    let eig = eigensystem_report(level, p, &tp)?;
    let mut record = InvariantsRecord::new(level.field(), level.eunits(), p);
    record.t_p = Some(tp.t_p);
    record.h_plus = Some(level.h_plus() as u64);
    let index = u64::try_from(record.index).map_err(|_| Error::CapExceeded {
        what: "unit index",
        value: record.index,
        cap: u64::MAX as u128,
    })?;
    let report = Report {
        field: level.field().label().to_string(),
        modulus_norm: level.modulus_norm(),
        p,
        r: record.r,
        r_p: record.r_p,
        delta_p: record.delta_p,
        t_p: tp.t_p,
        h_plus: level.h_plus() as u64,
        index,
        hypothesis_a: psi.hypothesis_holds,
        dim_h0: psi.dim_h0,
        dim_h1: psi.dim_h1,
        dim_psi_domain: psi.dim_domain,
        dim_psi_image: psi.dim_image,
        psi_isomorphism: psi.is_isomorphism,
        certificate_primes: tp.certificate_primes(),
        eigensystems: Eigensystems {
            count: eig.count(),
            matched_both_degrees: eig.matched_both_degrees,
        },
    };
    Ok(Evaluation {
        report,
        record,
        shortfall: tp.shortfall,
    })
}

/// Failed checks for one evaluation; empty means it passes.
pub fn check(ev: &Evaluation) -> Vec<String> {
    let r = &ev.report;
    let mut fails = Vec::new();
    let expected = r.r_p.saturating_sub(r.delta_p);
    if r.t_p > expected {
        fails.push(format!("t_p = {} exceeds r_p - delta_p = {expected}", r.t_p));
    }
    if !ev.record.is_consistent() && !ev.shortfall {
        fails.push("invariants record inconsistent".into());
    }
    let target = r.h_plus as usize * r.t_p;
    if r.dim_psi_image != target {
        fails.push(format!("psi image dimension {} != h_plus * t_p = {target}", r.dim_psi_image));
    }
    if r.dim_psi_domain != target {
        fails.push(format!("psi domain dimension {} != h_plus * t_p = {target}", r.dim_psi_domain));
    }
    if r.dim_h0 != r.h_plus as usize {
        fails.push(format!("dim H0 = {} != h_plus", r.dim_h0));
    }
    if r.psi_isomorphism != (r.t_p == r.r) {
        fails.push("psi isomorphism does not match t_p = r".into());
    }
    if r.hypothesis_a && !r.psi_isomorphism && !ev.shortfall {
        fails.push("hypothesis holds but psi is not an isomorphism".into());
    }
    if !r.hypothesis_a && r.psi_isomorphism && r.delta_p + r.r != r.r_p {
        fails.push("psi isomorphism reported although delta_p != r_p - r".into());
    }
    if r.hypothesis_a && !r.eigensystems.matched_both_degrees {
        fails.push("eigensystems not matched in both degrees".into());
    }
    fails
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Shortfall,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub field: String,
    pub modulus: Vec<Vec<i64>>,
    pub modulus_norm: u64,
    pub p: u64,
    pub status: Status,
    pub messages: Vec<String>,
    pub report: Option<Report>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub exit_code: i32,
    pub entries: Vec<SweepEntry>,
}

impl SweepOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut wtr = csv::WriterBuilder::new().from_writer(Vec::new());
        wtr.write_record(CSV_HEADER.split(',')).expect("in-memory write");
        for e in &self.entries {
            let Some(r) = &e.report else { continue };
            wtr.write_record([
                r.field.clone(),
                r.modulus_norm.to_string(),
                r.p.to_string(),
                r.r.to_string(),
                r.r_p.to_string(),
                r.delta_p.to_string(),
                r.t_p.to_string(),
                r.h_plus.to_string(),
                r.index.to_string(),
                r.hypothesis_a.to_string(),
                r.psi_isomorphism.to_string(),
                r.eigensystems.matched_both_degrees.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("flush")).expect("utf8")
    }
}

fn is_capacity_error(e: &Error) -> bool {
    matches!(
        e,
        Error::CapExceeded { .. } | Error::BudgetShortfall { .. } | Error::Inconclusive(_) | Error::TorsionObstruction { .. }
    )
}

/// Runs every `(field, modulus, p)`; exit code 0 when all pass, 1 on any
/// failed check or hard error, otherwise 2 when some configuration hit a cap
/// or budget.
pub fn run_verify(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let mut entries = Vec::new();
    let mut worst = 0;
    for src in &cfg.fields {
        let field = src.load()?;
        let classes = ClassGroup::compute(&field)?;
        for modulus in moduli_up_to(&field, cfg.modulus_norm_bound) {
            let norm = modulus.norm().to_u64().unwrap_or(u64::MAX);
            let rows = modulus.rows_i64().unwrap_or_default();
            let level = Level::new(&field, &classes, &modulus, cfg.cap_residue);
            for &p in &cfg.primes {
                if cfg.coprime_only && norm % p == 0 {
                    continue;
                }
                let mut entry = SweepEntry {
                    field: field.label().to_string(),
                    modulus: rows.clone(),
                    modulus_norm: norm,
                    p,
                    status: Status::Pass,
                    messages: Vec::new(),
                    report: None,
                };
                match level.as_ref().map_err(Clone::clone).and_then(|l| run_invariants(l, p, cfg.budget)) {
                    Ok(ev) => {
                        entry.messages = check(&ev);
                        if !entry.messages.is_empty() {
                            entry.status = Status::Fail;
                        } else if ev.shortfall {
                            entry.status = Status::Shortfall;
                            entry.messages.push(format!(
                                "budget shortfall: t_p = {} < r_p - delta_p = {}",
                                ev.report.t_p,
                                ev.record.expected_tp()
                            ));
                        }
                        entry.report = Some(ev.report);
                    }
                    Err(e) => {
                        entry.status = if is_capacity_error(&e) { Status::Shortfall } else { Status::Fail };
                        entry.messages.push(e.to_string());
                    }
                }
                worst = match (worst, entry.status) {
                    (_, Status::Fail) | (1, _) => 1,
                    (_, Status::Shortfall) => 2,
                    (w, Status::Pass) => w,
                };
                entries.push(entry);
            }
        }
    }
    Ok(SweepOutcome {
        exit_code: worst,
        entries,
    })
}
