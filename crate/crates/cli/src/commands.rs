use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use qwass_core::cost::build_cost;
use qwass_core::divergence::DivergenceEvaluator;
use qwass_core::experiments::{
    gap_surface, lattice_draws, lattice_scan, min_gap_sweep, write_gap_csv, write_lattice_csv, write_surface_csv,
    write_surface_svg, Anchor, LatticeSpec, Scenario, SurfaceSpec, SweepSpec,
};
use qwass_core::complexity::{wasserstein_complexity_with, ComplexityOptions};
use qwass_core::io::{load_state, MatrixJson};
use qwass_core::transport::{evaluate_dual_certificate, solve_dual, solve_primal};
use qwass_core::{ChannelSelector, CostSelector, DensityMatrix, Error, ObservableSet, Result, SolverConfig};

/// What a finished command leaves behind for its manifest.
pub struct Finished {
    /// Output directory; no manifest is written when this is `None`.
    pub dir: Option<PathBuf>,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    pub outputs: Vec<String>,
}

impl Finished {
    fn new(args: &impl Serialize, seed: u64, dir: Option<PathBuf>) -> Result<Self> {
        let parameters = match serde_json::to_value(args)? {
            serde_json::Value::Object(map) => map.into_iter().collect(),
            other => BTreeMap::from([("value".to_string(), other)]),
        };
        if let Some(d) = &dir {
            std::fs::create_dir_all(d).map_err(|e| Error::from(e).context(d.display().to_string()))?;
        }
        Ok(Self {
            dir,
            parameters,
            seed,
            outputs: Vec::new(),
        })
    }

    /// Writes `name` inside the output directory and records it.
    fn write(&mut self, name: String, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
        let dir = self.dir.as_deref().unwrap_or(Path::new("."));
        let path = dir.join(&name);
        let mut w = BufWriter::new(File::create(&path).map_err(|e| Error::from(e).context(path.display().to_string()))?);
        body(&mut w)?;
        w.flush()?;
        println!("wrote {}", path.display());
        self.outputs.push(name);
        Ok(())
    }

    fn write_json(&mut self, name: String, value: &impl Serialize) -> Result<()> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            writeln!(w)?;
            Ok(())
        })
    }
}

#[derive(Args, Serialize)]
pub struct SolverArgs {
    /// Relative duality-gap tolerance of the SDP solver.
    #[arg(long, default_value_t = 1e-8)]
    pub solver_gap_tol: f64,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let d = SolverConfig::default();
        let cfg = SolverConfig {
            gap_tol: self.solver_gap_tol,
            feas_tol: d.feas_tol.min(self.solver_gap_tol),
            ..d
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn resolve_cost(cost: &CostSelector, dim: usize, seed: u64) -> Result<ObservableSet> {
    let a = cost.resolve(dim, seed)?;
    if a.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: a.dim(),
        }
        .context(format!("cost '{cost}'")));
    }
    Ok(a)
}

fn same_dim(states: &[&DensityMatrix]) -> Result<usize> {
    let d = states[0].dim();
    for s in states {
        if s.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            }
            .context("input states"));
        }
    }
    Ok(d)
}

#[derive(Args, Serialize)]
pub struct DistArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub omega: PathBuf,
    /// symmetric | pauli-products:n | random:k | file:path
    #[arg(long, default_value = "symmetric")]
    pub cost: CostSelector,
    /// Solve the dual problem and print its certificates.
    #[arg(long)]
    pub dual: bool,
    /// Seed for `random:k` costs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    /// Also write the result and a manifest to this directory.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DistReport {
    squared_distance: f64,
    distance: f64,
    duality_gap: f64,
    iterations: usize,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_slack_min_eigenvalue: Option<f64>,
}

pub fn run_dist(a: &DistArgs) -> Result<Finished> {
    let rho = load_state(&a.rho)?;
    let omega = load_state(&a.omega)?;
    let dim = same_dim(&[&rho, &omega])?;
    let cost = build_cost(&resolve_cost(&a.cost, dim, a.seed)?, true);
    let cfg = a.solver.config()?;
    let r = if a.dual {
        solve_dual(&rho, &omega, &cost, &cfg)?
    } else {
        solve_primal(&rho, &omega, &cost, &cfg)?
    };
    println!("D^2 = {}", r.squared_distance);
    println!("D = {}", r.distance());
    println!("duality gap = {:e}", r.duality_gap);
    let mut report = DistReport {
        squared_distance: r.squared_distance,
        distance: r.distance(),
        duality_gap: r.duality_gap,
        iterations: r.iterations,
        status: format!("{:?}", r.status),
        x: None,
        y: None,
        certificate_slack_min_eigenvalue: None,
    };
    if a.dual {
        let cert = r
            .certificates
            .as_ref()
            .ok_or_else(|| Error::SolverFailure("dual solve returned no certificates".into()))?;
        let (value, slack) = evaluate_dual_certificate(&rho, &omega, &cost, cert)?;
        println!("dual value = {value}");
        println!("slack min eigenvalue = {slack:e}");
        let x = MatrixJson::from_matrix(cert.x.matrix());
        let y = MatrixJson::from_matrix(cert.y.matrix());
        println!("X = {}", serde_json::to_string(&x)?);
        println!("Y = {}", serde_json::to_string(&y)?);
        report.x = Some(x);
        report.y = Some(y);
        report.certificate_slack_min_eigenvalue = Some(slack);
    }
    let mut fin = Finished::new(a, a.seed, a.out.clone())?;
    if fin.dir.is_some() {
        fin.write_json("dist.json".into(), &report)?;
    }
    Ok(fin)
}

#[derive(Args, Serialize)]
pub struct PairArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub omega: PathBuf,
    #[arg(long, default_value = "symmetric")]
    pub cost: CostSelector,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DivergenceReport {
    divergence: f64,
    squared_divergence: f64,
    cross: f64,
    self_rho: f64,
    self_omega: f64,
}

pub fn run_divergence(a: &PairArgs) -> Result<Finished> {
    let rho = load_state(&a.rho)?;
    let omega = load_state(&a.omega)?;
    let dim = same_dim(&[&rho, &omega])?;
    let obs = resolve_cost(&a.cost, dim, a.seed)?;
    let v = DivergenceEvaluator::new(&obs, a.solver.config()?).divergence(&rho, &omega)?;
    println!("d = {}", v.value);
    println!("d^2 = {}", v.raw_squared);
    println!("D^2(rho, omega) = {}", v.cross);
    println!("D^2(rho, rho) = {}", v.self_rho);
    println!("D^2(omega, omega) = {}", v.self_omega);
    let mut fin = Finished::new(a, a.seed, a.out.clone())?;
    if fin.dir.is_some() {
        let report = DivergenceReport {
            divergence: v.value,
            squared_divergence: v.raw_squared,
            cross: v.cross,
            self_rho: v.self_rho,
            self_omega: v.self_omega,
        };
        fin.write_json("divergence.json".into(), &report)?;
    }
    Ok(fin)
}

#[derive(Args, Serialize)]
pub struct TriangleArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub omega: PathBuf,
    #[arg(long)]
    pub tau: PathBuf,
    #[arg(long, default_value = "symmetric")]
    pub cost: CostSelector,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn run_triangle(a: &TriangleArgs) -> Result<Finished> {
    let rho = load_state(&a.rho)?;
    let omega = load_state(&a.omega)?;
    let tau = load_state(&a.tau)?;
    let dim = same_dim(&[&rho, &omega, &tau])?;
    let obs = resolve_cost(&a.cost, dim, a.seed)?;
    let record = DivergenceEvaluator::new(&obs, a.solver.config()?).triangle(&rho, &omega, &tau, a.seed, &a.cost.to_string())?;
    println!("d(rho, omega) = {}", record.d_rho_omega);
    println!("d(omega, tau) = {}", record.d_omega_tau);
    println!("d(rho, tau) = {}", record.d_rho_tau);
    println!("gap = {}", record.gap);
    let mut fin = Finished::new(a, a.seed, a.out.clone())?;
    if fin.dir.is_some() {
        fin.write("triangle.csv".into(), |w| write_gap_csv(w, std::slice::from_ref(&record)))?;
    }
    Ok(fin)
}

#[derive(Args, Serialize)]
pub struct LatticeArgs {
    /// Number of random (ρ, τ) pairs (table rows).
    #[arg(long, default_value_t = 4)]
    pub pairs: usize,
    /// Number of random observable triples (table columns).
    #[arg(long, default_value_t = 4)]
    pub triples: usize,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// Keep integer points with j² + k² + l² at most this.
    #[arg(long, default_value_t = 100)]
    pub radius_bound: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

pub fn run_lattice(a: &LatticeArgs) -> Result<Finished> {
    let spec = LatticeSpec {
        step: a.step,
        radius_bound: a.radius_bound,
    };
    spec.validate()?;
    let cfg = a.solver.config()?;
    let draws = lattice_draws(a.seed, a.pairs, a.triples)?;
    let mut fin = Finished::new(a, a.seed, Some(a.out.clone()))?;
    let mut table = Vec::new();
    for (n, (rho, tau)) in draws.pairs.iter().enumerate() {
        for (m, obs) in draws.triples.iter().enumerate() {
            let tag = format!("lattice-p{n}-t{m}");
            let scan = lattice_scan(rho, tau, obs, &spec, &cfg, a.seed, &tag)
                .map_err(|e| e.context(format!("pair {n}, triple {m}")))?;
            fin.write(format!("lattice_p{n}_t{m}.csv"), |w| write_lattice_csv(w, &scan.points))?;
            table.push((n, m, scan.min_gap, scan.argmin));
        }
    }
    fin.write("lattice_table.csv".into(), |w| {
        writeln!(w, "pair,triple,min_gap,j,k,l")?;
        for (n, m, g, p) in &table {
            writeln!(w, "{n},{m},{g},{},{},{}", p[0], p[1], p[2])?;
        }
        Ok(())
    })?;
    println!("min gap (rows: state pairs, columns: observable triples)");
    for n in 0..a.pairs {
        let row: Vec<String> = table
            .iter()
            .filter(|t| t.0 == n)
            .map(|t| format!("{:.6}", t.2))
            .collect();
        println!("  {}", row.join("  "));
    }
    let overall = table.iter().map(|t| t.2).fold(f64::INFINITY, f64::min);
    println!("overall min gap = {overall}");
    Ok(fin)
}

#[derive(Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 4000)]
    pub samples: usize,
    /// Wishart rank of the random states; defaults to the dimension.
    #[arg(long)]
    pub rank: Option<usize>,
    /// random:k draws k fresh observables per sample.
    #[arg(long, default_value = "random:3")]
    pub cost: CostSelector,
    /// generic | pure-omega | pure-rho-tau
    #[arg(long, default_value = "generic")]
    pub anchor: Anchor,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

pub fn run_sweep(a: &SweepArgs) -> Result<Finished> {
    let CostSelector::Random(k) = a.cost else {
        return Err(Error::InvalidParameter(format!(
            "sweep draws observables per sample and needs a random:k cost, got '{}'",
            a.cost
        )));
    };
    let spec = SweepSpec {
        samples: a.samples,
        observables: k,
        rank: a.rank.unwrap_or(a.dim),
        anchor: a.anchor,
        ..SweepSpec::new(a.dim, a.seed)
    };
    spec.validate()?;
    let result = min_gap_sweep(&spec, &a.solver.config()?)?;
    let mut fin = Finished::new(a, a.seed, Some(a.out.clone()))?;
    fin.write(format!("sweep_dim{}.csv", a.dim), |w| write_gap_csv(w, &result.records))?;
    println!("min gap = {} (sample {})", result.min_gap, result.argmin);
    Ok(fin)
}

#[derive(Args, Serialize)]
pub struct SurfaceArgs {
    /// c2-deterministic | c4-deterministic | c2-random | c4-random | all
    #[arg(long, default_value = "c2-deterministic")]
    pub scenario: String,
    /// Grid points per axis.
    #[arg(long, default_value_t = 41)]
    pub resolution: usize,
    /// Observables drawn in the random scenarios.
    #[arg(long, default_value_t = 3)]
    pub observables: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

pub fn run_surface(a: &SurfaceArgs) -> Result<Finished> {
    let scenarios = if a.scenario == "all" {
        Scenario::ALL.to_vec()
    } else {
        vec![a.scenario.parse::<Scenario>()?]
    };
    let cfg = a.solver.config()?;
    let mut fin = Finished::new(a, a.seed, Some(a.out.clone()))?;
    for sc in scenarios {
        let spec = SurfaceSpec {
            resolution: a.resolution,
            observables: a.observables,
            ..SurfaceSpec::new(sc, a.seed)
        };
        let s = gap_surface(&spec, &cfg)?;
        fin.write(format!("surface_{}.csv", sc.name()), |w| write_surface_csv(w, &s))?;
        fin.write(format!("surface_{}.svg", sc.name()), |w| write_surface_svg(w, &s))?;
        let min = s.min_gap().map_or("none".to_string(), |g| g.to_string());
        println!(
            "{}: min gap = {min} over {} admissible points, d(rho, tau) = {}",
            sc.name(),
            s.evaluated(),
            s.d_rho_tau
        );
    }
    Ok(fin)
}

#[derive(Args, Serialize)]
pub struct ComplexityArgs {
    /// identity | unitary:file | depolarizing:p | dephasing:p | file:path
    #[arg(long, default_value = "identity")]
    pub channel: ChannelSelector,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value = "symmetric")]
    pub cost: CostSelector,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    /// Function evaluations per restart; defaults to 250 per real parameter.
    #[arg(long)]
    pub max_evals: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

pub fn run_complexity(a: &ComplexityArgs) -> Result<Finished> {
    let phi = a.channel.resolve(a.dim)?;
    let obs = resolve_cost(&a.cost, a.dim, a.seed)?;
    let opts = ComplexityOptions {
        restarts: a.restarts,
        seed: a.seed,
        max_evals: a.max_evals,
    };
    let r = wasserstein_complexity_with(&phi, &obs, &a.solver.config()?, &opts)?;
    let mut fin = Finished::new(a, a.seed, Some(a.out.clone()))?;
    fin.write("complexity.csv".into(), |w| {
        writeln!(w, "restart,initial,value")?;
        for (i, (s, v)) in r.initial_values.iter().zip(&r.restart_values).enumerate() {
            writeln!(w, "{i},{s},{v}")?;
        }
        Ok(())
    })?;
    fin.write_json("complexity_argmax.json".into(), &MatrixJson::from_matrix(r.argmax_state.matrix()))?;
    println!("complexity lower bound = {}", r.value);
    println!(
        "restarts = {}, two best agree within 1e-4: {}",
        r.restarts_used,
        if r.converged { "yes" } else { "no" }
    );
    Ok(fin)
}
