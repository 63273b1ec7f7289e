use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::observables::{JEngine, MinorsEngine, PauliEngine, PurityEngine};
use crate::random::{haar_state, substream};
use crate::state::StateVector;

use super::format::{aligned, num};

pub const BENCH_AGREEMENT_TOL: f64 = 1e-8;
pub const BENCH_MAX_QUBITS: usize = 24;
/// Cap on `4^l * 2^n` for the Pauli-sum engine.
pub const PAULI_WORK_LOG2: usize = 34;
/// Cap on the number of minors for the minors engine to be included.
pub const MINORS_MAX_COUNT: u128 = 1 << 24;

#[derive(Debug, Clone, Serialize)]
pub struct EngineTiming {
    pub engine: String,
    pub seconds: f64,
    pub per_eval: f64,
    pub evals_per_sec: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub ell: usize,
    pub reps: usize,
    pub seed: u64,
    /// Largest pairwise engine difference on the validation state.
    pub max_deviation: f64,
    pub agree: bool,
    pub timings: Vec<EngineTiming>,
    /// Pauli-sum time over purity time.
    pub speedup: Option<f64>,
}

impl BenchReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "n = {}, l = {}, reps = {}, seed = {}\nagreement: max deviation {} ({})\n",
            self.n,
            self.ell,
            self.reps,
            self.seed,
            num(self.max_deviation),
            if self.agree { "PASS" } else { "FAIL" }
        );
        if self.reps == 0 {
            out.push_str("validation only\n");
            return out;
        }
        let mut rows = vec![vec![
            "engine".to_string(),
            "total s".to_string(),
            "per eval s".to_string(),
            "evals/s".to_string(),
        ]];
        for t in &self.timings {
            rows.push(vec![
                t.engine.clone(),
                num(t.seconds),
                num(t.per_eval),
                num(t.evals_per_sec),
            ]);
        }
        out.push_str(&aligned(&rows));
        if let Some(s) = self.speedup {
            out.push_str(&format!("pauli / purity time ratio: {}\n", num(s)));
        }
        out
    }
}

fn choose2(x: u128) -> u128 {
    x * x.saturating_sub(1) / 2
}

fn engines(n: usize, ell: usize) -> Vec<Box<dyn JEngine>> {
    let mut list: Vec<Box<dyn JEngine>> = vec![Box::new(PurityEngine), Box::new(PauliEngine)];
    let minors = choose2(1u128 << ell) * choose2(1u128 << (n - ell));
    if minors <= MINORS_MAX_COUNT {
        list.push(Box::new(MinorsEngine));
    }
    list
}

fn time_engine(engine: &dyn JEngine, states: &[StateVector], ell: usize) -> Result<EngineTiming> {
    let start = Instant::now();
    for psi in states {
        black_box(engine.j(black_box(psi), ell)?);
    }
    let seconds = start.elapsed().as_secs_f64();
    let evals = states.len() as f64;
    Ok(EngineTiming {
        engine: engine.name().to_string(),
        seconds,
        per_eval: seconds / evals,
        evals_per_sec: if seconds > 0.0 { evals / seconds } else { f64::INFINITY },
    })
}

/// Times each engine on `reps` Haar-random states after checking that they
/// agree on a separate validation state.
pub fn bench(n: usize, ell: usize, reps: usize, seed: u64) -> Result<BenchReport> {
    if n > BENCH_MAX_QUBITS {
        return Err(Error::TooLarge(format!("bench supports n <= {BENCH_MAX_QUBITS}, got {n}")));
    }
    if n < 2 || ell == 0 || ell >= n {
        return Err(Error::BadCut { ell, n });
    }
    if 2 * ell + n > PAULI_WORK_LOG2 {
        return Err(Error::TooLarge(format!(
            "4^{ell} * 2^{n} exceeds 2^{PAULI_WORK_LOG2} for the Pauli-sum engine"
        )));
    }
    let list = engines(n, ell);
    let check = haar_state(&mut substream(seed, 0), n);
    let values = list
        .iter()
        .map(|e| e.j(&check, ell))
        .collect::<Result<Vec<f64>>>()?;
    let max_deviation = values
        .iter()
        .flat_map(|a| values.iter().map(move |b| (a - b).abs()))
        .fold(0.0, f64::max);
    let agree = max_deviation < BENCH_AGREEMENT_TOL;
    let mut report = BenchReport {
        n,
        ell,
        reps,
        seed,
        max_deviation,
        agree,
        timings: Vec::new(),
        speedup: None,
    };
    if !agree || reps == 0 {
        return Ok(report);
    }
    let states: Vec<StateVector> = (1..=reps as u64)
        .map(|s| haar_state(&mut substream(seed, s), n))
        .collect();
    for e in &list {
        report.timings.push(time_engine(e.as_ref(), &states, ell)?);
    }
    let t = |name: &str| report.timings.iter().find(|t| t.engine == name).map(|t| t.seconds);
    if let (Some(p), Some(u)) = (t("pauli"), t("purity")) {
        report.speedup = Some(p / u);
    }
    Ok(report)
}
