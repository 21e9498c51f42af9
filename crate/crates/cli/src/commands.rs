use std::path::{Path, PathBuf};

use serde::Serialize;

use coarse_embed::coarse::{empirical_moduli, verify_coarse_bounds};
use coarse_embed::embed::{
    isometric_hilbert_test, max_squared_distance_error, schoenberg_embed, snowflake_embed, Embedding, Provenance,
};
use coarse_embed::kernels::{
    check_negative_definite, check_positive_definite, fractional_power, schoenberg_transform,
    verify_levy_representation, QuadratureParams, SymmetricKernel,
};
use coarse_embed::metrics::{
    cycle_edges, graph_shortest_path_metric, lp_distance_matrix, lp_power_kernel, metric_power_kernel, path_edges,
    random_connected_edges, random_point_cloud, star_edges, CloudDistribution, FiniteMetric, PointCloud,
};
use coarse_embed::Error;

use crate::report::{Inputs, LevyDocument, ModuliDocument, VerdictReport};
use crate::{bounds, io, CliError, Distribution, GenArgs, GenKind, InputFormat, KernelInput, Outcome, Topology};

#[derive(Debug, Clone, Copy)]
pub enum Definiteness {
    Positive,
    Negative,
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn emit<T: Serialize>(doc: &T, json: bool, text: impl FnOnce(&T) -> String) -> Result<(), CliError> {
    if json {
        let s = serde_json::to_string_pretty(doc).map_err(|e| CliError::input(format!("serializing report: {e}")))?;
        println!("{s}");
    } else {
        print!("{}", text(doc));
    }
    Ok(())
}

fn path_string(p: &Path) -> String {
    p.display().to_string()
}

fn read_cloud(path: &Path) -> Result<PointCloud, CliError> {
    Ok(PointCloud::new(io::read_points(path)?)?)
}

fn read_metric(path: &Path, format: InputFormat, p: Option<f64>) -> Result<FiniteMetric, CliError> {
    match format {
        InputFormat::Matrix => {
            if p.is_some() {
                return Err(CliError::input("--p only applies to --format points"));
            }
            Ok(FiniteMetric::new(io::read_matrix(path)?)?)
        }
        InputFormat::Points => Ok(lp_distance_matrix(&read_cloud(path)?, p.unwrap_or(2.0))?),
    }
}

/// Matrix input is the kernel itself unless `--beta` is given, in which case
/// it is read as a metric and raised to `beta`. Point input builds the `ℓ_p`
/// metric (default `p = 2`) raised to `beta` (default 2).
fn load_kernel(k: &KernelInput) -> Result<(SymmetricKernel, Inputs), CliError> {
    let mut inputs = Inputs {
        file: Some(path_string(&k.input)),
        format: Some(k.format.name().into()),
        beta: k.beta,
        ..Inputs::default()
    };
    let kernel = match k.format {
        InputFormat::Matrix => match k.beta {
            None => {
                if k.p.is_some() {
                    return Err(CliError::input("--p only applies to --format points"));
                }
                SymmetricKernel::new(io::read_matrix(&k.input)?)?
            }
            Some(beta) => metric_power_kernel(&read_metric(&k.input, k.format, k.p)?, beta)?,
        },
        InputFormat::Points => {
            let p = k.p.unwrap_or(2.0);
            let beta = k.beta.unwrap_or(2.0);
            inputs.p = Some(p);
            inputs.beta = Some(beta);
            metric_power_kernel(&lp_distance_matrix(&read_cloud(&k.input)?, p)?, beta)?
        }
    };
    Ok((kernel, inputs))
}

pub fn check_definite(k: KernelInput, kind: Definiteness) -> Result<Outcome, CliError> {
    let (kernel, inputs) = load_kernel(&k)?;
    let (name, report) = match kind {
        Definiteness::Positive => ("check-pd", check_positive_definite(&kernel, k.tol)?),
        Definiteness::Negative => ("check-nd", check_negative_definite(&kernel, k.tol)?),
    };
    let doc = VerdictReport::from_definiteness(name, &report, kernel.n(), inputs);
    emit(&doc, k.json, VerdictReport::to_text)?;
    Ok(outcome(doc.passed()))
}

fn write_coords(e: &Embedding, output: Option<&Path>) -> Result<Option<String>, CliError> {
    match output {
        None => Ok(None),
        Some(path) => {
            io::write_text(path, &io::format_points(e.coords()))?;
            Ok(Some(path_string(path)))
        }
    }
}

pub fn embed_schoenberg(k: KernelInput, base: usize, output: Option<PathBuf>) -> Result<Outcome, CliError> {
    let (kernel, mut inputs) = load_kernel(&k)?;
    inputs.base = Some(base);
    let report = match schoenberg_embed(&kernel, base, k.tol) {
        Ok(e) => {
            let nd = check_negative_definite(&kernel, k.tol)?;
            let mut doc = VerdictReport::from_definiteness("embed-schoenberg", &nd, kernel.n(), inputs);
            doc.dimension = Some(e.dim());
            doc.max_reconstruction_error = Some(max_squared_distance_error(&e, &kernel));
            doc.output = write_coords(&e, output.as_deref())?;
            doc
        }
        Err(Error::NotDefinite { report, .. }) => {
            VerdictReport::from_definiteness("embed-schoenberg", &report, kernel.n(), inputs)
        }
        Err(e) => return Err(e.into()),
    };
    emit(&report, k.json, VerdictReport::to_text)?;
    Ok(outcome(report.passed()))
}

pub fn snowflake(
    input: PathBuf,
    p: f64,
    tol: Option<f64>,
    output: Option<PathBuf>,
    json: bool,
) -> Result<Outcome, CliError> {
    let cloud = read_cloud(&input)?;
    let kernel = lp_power_kernel(&cloud, p)?;
    let e = snowflake_embed(&cloud, p, tol)?;
    let nd = check_negative_definite(&kernel, tol)?;
    let inputs =
        Inputs { file: Some(path_string(&input)), format: Some("points".into()), p: Some(p), ..Inputs::default() };
    let mut doc = VerdictReport::from_definiteness("snowflake", &nd, cloud.n(), inputs);
    doc.dimension = Some(e.dim());
    doc.max_reconstruction_error = Some(max_squared_distance_error(&e, &kernel));
    doc.output = write_coords(&e, output.as_deref())?;
    emit(&doc, json, VerdictReport::to_text)?;
    Ok(outcome(doc.passed()))
}

pub fn isometric_test(
    input: PathBuf,
    format: InputFormat,
    p: Option<f64>,
    tol: Option<f64>,
    output: Option<PathBuf>,
    json: bool,
) -> Result<Outcome, CliError> {
    let metric = read_metric(&input, format, p)?;
    let result = isometric_hilbert_test(&metric, tol)?;
    let inputs = Inputs {
        file: Some(path_string(&input)),
        format: Some(format.name().into()),
        p: if format == InputFormat::Points { Some(p.unwrap_or(2.0)) } else { None },
        ..Inputs::default()
    };
    let mut doc = VerdictReport::from_definiteness("isometric-test", &result.report, metric.n(), inputs);
    if let Some(e) = &result.embedding {
        let n = metric.n();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((e.distance(i, j) - metric.get(i, j)).abs());
            }
        }
        doc.dimension = Some(e.dim());
        doc.max_reconstruction_error = Some(worst);
        doc.output = write_coords(e, output.as_deref())?;
    }
    emit(&doc, json, VerdictReport::to_text)?;
    Ok(outcome(doc.passed()))
}

pub struct ModuliArgs {
    pub input: PathBuf,
    pub format: InputFormat,
    pub p: Option<f64>,
    pub coords: PathBuf,
    pub rho1: Option<String>,
    pub rho2: Option<String>,
    pub plot: Option<PathBuf>,
    pub json: bool,
}

pub fn moduli(args: ModuliArgs) -> Result<Outcome, CliError> {
    let metric = read_metric(&args.input, args.format, args.p)?;
    let e = Embedding::new(io::read_points(&args.coords)?, Provenance::External)?;
    let moduli = empirical_moduli(&metric, &e)?;

    let (pairs_checked, tolerance, violations) = match moduli.to_step_functions() {
        None => (0, 0.0, Vec::new()),
        Some((tight1, tight2)) => {
            // a missing bound defaults to the empirical modulus, which never binds
            let rho1 = match &args.rho1 {
                Some(expr) => bounds::parse(expr)?.to_function(&moduli.achieved_distances)?,
                None => tight1,
            };
            let rho2 = match &args.rho2 {
                Some(expr) => bounds::parse(expr)?.to_function(&moduli.achieved_distances)?,
                None => tight2,
            };
            let r = verify_coarse_bounds(&metric, &e, &rho1, &rho2)?;
            (r.pairs_checked, r.tolerance, r.violations)
        }
    };

    if let Some(plot) = &args.plot {
        let mut csv = String::from("t,compression,expansion\n");
        for k in 0..moduli.len() {
            csv.push_str(&format!(
                "{},{},{}\n",
                io::fmt_num(moduli.achieved_distances[k]),
                io::fmt_num(moduli.compression[k]),
                io::fmt_num(moduli.expansion[k])
            ));
        }
        io::write_text(plot, &csv)?;
    }

    let inputs = Inputs {
        file: Some(path_string(&args.input)),
        coords: Some(path_string(&args.coords)),
        format: Some(args.format.name().into()),
        p: args.p,
        rho1: args.rho1.clone(),
        rho2: args.rho2.clone(),
        ..Inputs::default()
    };
    let doc = ModuliDocument::new(&moduli, metric.n(), pairs_checked, tolerance, violations, inputs);
    emit(&doc, args.json, ModuliDocument::to_text)?;
    Ok(outcome(doc.violations.is_empty()))
}

pub fn transform(
    input: PathBuf,
    exp: Option<f64>,
    power: Option<f64>,
    output: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    let kernel = SymmetricKernel::new(io::read_matrix(&input)?)?;
    let result = match (exp, power) {
        (Some(t), None) => schoenberg_transform(&kernel, t)?,
        (None, Some(alpha)) => fractional_power(&kernel, alpha)?,
        _ => return Err(CliError::input("give exactly one of --exp or --power")),
    };
    let text = io::format_matrix(result.entries());
    match output {
        Some(path) => io::write_text(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}

pub fn levy_check(x: f64, alpha: f64, quad: QuadratureParams, tol: f64, json: bool) -> Result<Outcome, CliError> {
    if !(tol >= 0.0) {
        return Err(CliError::input(format!("--tol must be >= 0, got {tol}")));
    }
    let check = verify_levy_representation(x, alpha, quad)?;
    let inputs = Inputs { x: Some(x), alpha: Some(alpha), ..Inputs::default() };
    let doc = LevyDocument::new(&check, tol, quad, inputs);
    emit(&doc, json, LevyDocument::to_text)?;
    Ok(outcome(doc.verdict == "pass"))
}

pub fn generate(args: GenArgs) -> Result<Outcome, CliError> {
    let text = match args.kind {
        GenKind::Cloud => {
            let dist = match args.dist {
                Distribution::Uniform => CloudDistribution::UniformBox { low: 0.0, high: 1.0 },
                Distribution::Gaussian => CloudDistribution::Gaussian { mean: 0.0, std_dev: 1.0 },
            };
            let cloud = random_point_cloud(args.n, args.dim, args.seed, dist)?;
            match args.p {
                Some(p) => io::format_matrix(lp_distance_matrix(&cloud, p)?.distances()),
                None => io::format_points(cloud.coords()),
            }
        }
        GenKind::Graph => {
            if !(0.0..=1.0).contains(&args.edge_prob) {
                return Err(CliError::input(format!("--edge-prob must lie in [0, 1], got {}", args.edge_prob)));
            }
            let edges = match args.topology {
                Topology::Random => random_connected_edges(args.n, args.edge_prob, args.seed),
                Topology::Path => path_edges(args.n),
                Topology::Star => star_edges(args.n),
                Topology::Cycle => cycle_edges(args.n),
            };
            io::format_matrix(graph_shortest_path_metric(args.n, &edges)?.distances())
        }
    };
    match &args.output {
        Some(path) => io::write_text(path, &text)?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}
