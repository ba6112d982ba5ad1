//! Verification sweeps: enumerate weighted paths or cycles, classify integral
//! closure with both checkers, and compare engine regularity with the closed
//! forms at every requested characteristic.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{is_prime, regularity_quotient, EngineConfig, DEFAULT_CHARACTERISTIC};
use crate::closed_forms::{predict_reg_cycle_power, predict_reg_path_power, CyclePowerQuery};
use crate::error::{Error, Result};
use crate::graph::{canonical_cycle_weights, canonical_path_weights, Shape, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub shape: Shape,
    /// Inclusive range of vertex counts.
    pub n_min: usize,
    pub n_max: usize,
    pub alphabet: Vec<u32>,
    /// Inclusive range of powers.
    pub t_min: u32,
    pub t_max: u32,
    pub characteristics: Vec<u32>,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
    pub engine: EngineConfig,
    /// Keep one weight vector per rotation/reflection class.
    pub dedup: bool,
    /// Record per-row wall time.
    pub timing: bool,
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
}

impl SweepConfig {
    pub fn new(shape: Shape, n_min: usize, n_max: usize, t_min: u32, t_max: u32) -> Self {
        Self {
            shape,
            n_min,
            n_max,
            alphabet: vec![1, 2, 3],
            t_min,
            t_max,
            characteristics: vec![DEFAULT_CHARACTERISTIC, 2],
            workers: 0,
            engine: EngineConfig::default(),
            dedup: true,
            timing: true,
            output: None,
            format: ReportFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min_n = match self.shape {
            Shape::Cycle => 3,
            Shape::Path => 2,
            Shape::General => {
                return Err(Error::Config("sweeps support cycles and paths only".into()))
            }
        };
        if self.n_min > self.n_max {
            return Err(Error::Config(format!(
                "empty n range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.n_min < min_n {
            return Err(Error::Config(format!(
                "a {} needs at least {min_n} vertices",
                self.shape
            )));
        }
        if self.t_min > self.t_max {
            return Err(Error::Config(format!(
                "empty t range {}..={}",
                self.t_min, self.t_max
            )));
        }
        if self.t_min == 0 {
            return Err(Error::ZeroPower);
        }
        if self.alphabet.is_empty() || self.alphabet.contains(&0) {
            return Err(Error::Config(
                "weight alphabet must be nonempty and positive".into(),
            ));
        }
        if self.characteristics.is_empty() {
            return Err(Error::Config(
                "at least one characteristic is required".into(),
            ));
        }
        if let Some(&p) = self.characteristics.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        if self.engine.max_lattice == 0 || self.engine.max_vars == 0 {
            return Err(Error::Config("resource caps must be positive".into()));
        }
        Ok(())
    }

    /// Weight vectors in the sweep, in lexicographic order within each `n`.
    pub fn weight_vectors(&self) -> Vec<Vec<u32>> {
        let mut alphabet = self.alphabet.clone();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut out = Vec::new();
        for n in self.n_min..=self.n_max {
            let len = if self.shape == Shape::Cycle { n } else { n - 1 };
            let mut digits = vec![0usize; len];
            loop {
                let w: Vec<u32> = digits.iter().map(|&d| alphabet[d]).collect();
                let canonical = match self.shape {
                    Shape::Cycle => canonical_cycle_weights(&w),
                    _ => canonical_path_weights(&w),
                };
                if !self.dedup || canonical == w {
                    out.push(w);
                }
                let Some(pos) = digits.iter().rposition(|&d| d + 1 < alphabet.len()) else {
                    break;
                };
                digits[pos] += 1;
                digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Matched,
    Mismatched,
    NotClosed,
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub shape: Shape,
    pub n: usize,
    pub weights: Vec<u32>,
    pub t: u32,
    pub closed: bool,
    /// Verdict of the Newton-polyhedron checker, recorded when it disagrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_algebraic: Option<bool>,
    pub predicted: Option<i64>,
    /// `reg(S/I^t)` per characteristic, in config order; `None` when capped.
    pub regs: Vec<Option<i64>>,
    pub status: RowStatus,
    pub ms: Option<u64>,
}

impl ReportRow {
    pub fn is_match(&self) -> Option<bool> {
        match self.status {
            RowStatus::Matched => Some(true),
            RowStatus::Mismatched => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub skipped_not_closed: usize,
    pub skipped_capped: usize,
    pub oracle_disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub shape: Shape,
    pub characteristics: Vec<u32>,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct CsvRow {
    shape: Shape,
    n: usize,
    weights: String,
    t: u32,
    closed: bool,
    predicted: Option<i64>,
    reg_p1: Option<i64>,
    reg_p2: Option<i64>,
    #[serde(rename = "match")]
    matched: Option<bool>,
    ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.mismatched == 0 && self.summary.oracle_disagreements == 0
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows
            .iter()
            .filter(|r| r.status == RowStatus::Mismatched || r.closed_algebraic.is_some())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(CsvRow {
                shape: r.shape,
                n: r.n,
                weights: join_weights(&r.weights),
                t: r.t,
                closed: r.closed,
                predicted: r.predicted,
                reg_p1: r.regs.first().copied().flatten(),
                reg_p2: r.regs.get(1).copied().flatten(),
                matched: r.is_match(),
                ms: r.ms,
            })
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json_string(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Csv => self.to_csv_string(),
            ReportFormat::Json => self.to_json_string(),
        }
    }
}

pub fn join_weights(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join("-")
}

fn build_graph(shape: Shape, w: &[u32]) -> Result<WeightedGraph> {
    match shape {
        Shape::Cycle => WeightedGraph::cycle(w),
        _ => WeightedGraph::path(w),
    }
}

fn predict(shape: Shape, w: &[u32], t: u32) -> Result<i64> {
    match shape {
        Shape::Cycle => predict_reg_cycle_power(&CyclePowerQuery::new(w.to_vec(), t)),
        _ => predict_reg_path_power(w, t),
    }
}

struct Closure {
    combinatorial: bool,
    algebraic: bool,
}

fn classify(cfg: &SweepConfig, w: &[u32]) -> Result<Closure> {
    let g = build_graph(cfg.shape, w)?;
    Ok(Closure {
        combinatorial: g.is_integrally_closed_combinatorial(),
        algebraic: g.is_integrally_closed_algebraic()?,
    })
}

fn run_row(cfg: &SweepConfig, w: &[u32], closure: &Closure, t: u32) -> Result<ReportRow> {
    let start = Instant::now();
    let n = if cfg.shape == Shape::Cycle {
        w.len()
    } else {
        w.len() + 1
    };
    let mut row = ReportRow {
        shape: cfg.shape,
        n,
        weights: w.to_vec(),
        t,
        closed: closure.combinatorial,
        closed_algebraic: (closure.algebraic != closure.combinatorial).then_some(closure.algebraic),
        predicted: None,
        regs: vec![None; cfg.characteristics.len()],
        status: RowStatus::NotClosed,
        ms: None,
    };
    if closure.combinatorial {
        let predicted = predict(cfg.shape, w, t)?;
        row.predicted = Some(predicted);
        let power = build_graph(cfg.shape, w)?.edge_ideal()?.power(t)?;
        row.status = RowStatus::Matched;
        for (slot, &p) in row.regs.iter_mut().zip(&cfg.characteristics) {
            match regularity_quotient(&power, p, &cfg.engine) {
                Ok(r) => {
                    *slot = Some(r);
                    if r != predicted {
                        row.status = RowStatus::Mismatched;
                    }
                }
                Err(Error::LatticeCapExceeded { .. } | Error::VariableCapExceeded { .. }) => {
                    row.status = RowStatus::Capped;
                    *slot = None;
                }
                Err(e) => return Err(e),
            }
        }
        if row.status == RowStatus::Capped {
            row.regs.iter_mut().for_each(|r| *r = None);
        }
    }
    if cfg.timing {
        row.ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(row)
}

/// Runs the sweep and, when an output path is configured, writes the report there.
pub fn run_verification_sweep(cfg: &SweepConfig) -> Result<Report> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let report = pool.install(|| sweep_in_pool(cfg))?;
    if let Some(path) = &cfg.output {
        let text = report.render(cfg.format)?;
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

fn sweep_in_pool(cfg: &SweepConfig) -> Result<Report> {
    let weights = cfg.weight_vectors();
    let closures = weights
        .par_iter()
        .map(|w| classify(cfg, w))
        .collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(usize, u32)> = (0..weights.len())
        .flat_map(|k| (cfg.t_min..=cfg.t_max).map(move |t| (k, t)))
        .collect();
    let rows = tasks
        .par_iter()
        .map(|&(k, t)| run_row(cfg, &weights[k], &closures[k], t))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = Summary {
        total: rows.len(),
        ..Summary::default()
    };
    for r in &rows {
        match r.status {
            RowStatus::Matched => summary.matched += 1,
            RowStatus::Mismatched => summary.mismatched += 1,
            RowStatus::NotClosed => summary.skipped_not_closed += 1,
            RowStatus::Capped => summary.skipped_capped += 1,
        }
        if r.closed_algebraic.is_some() {
            summary.oracle_disagreements += 1;
        }
    }
    Ok(Report {
        shape: cfg.shape,
        characteristics: cfg.characteristics.clone(),
        rows,
        summary,
    })
}
