//! File-driven command line for the simulation engine and validation
//! harness. Thin by design: every subcommand parses its inputs, calls the
//! library, and writes one document.
//!
//! Exit codes: 0 = ran and all checks passed, 1 = ran with check failures,
//! 2 = usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thermbench::conduction::ConductionModel;
use thermbench::harness::{
    emit_report, load_catalog, run_case, run_pair, run_suite, Catalog, LoadQuantity, ReportFormat,
    SuiteReport,
};
use thermbench::weather::{
    parse_weather, serialize_weather, synth_weather, Site, SynthParams, WeatherSeries,
};

#[derive(Parser)]
#[command(
    name = "thermbench",
    version,
    about = "Building thermal simulation and comparative validation harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliModel {
    #[value(name = "two-node")]
    TwoNode,
    Discretized,
}

impl From<CliModel> for ConductionModel {
    fn from(m: CliModel) -> Self {
        match m {
            CliModel::TwoNode => ConductionModel::TwoNode,
            CliModel::Discretized => ConductionModel::Discretized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Json,
    Csv,
}

impl From<CliFormat> for ReportFormat {
    fn from(f: CliFormat) -> Self {
        match f {
            CliFormat::Json => ReportFormat::Json,
            CliFormat::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliQuantity {
    Heating,
    Cooling,
}

impl From<CliQuantity> for LoadQuantity {
    fn from(q: CliQuantity) -> Self {
        match q {
            CliQuantity::Heating => LoadQuantity::Heating,
            CliQuantity::Cooling => LoadQuantity::Cooling,
        }
    }
}

#[derive(Args)]
struct RunInputs {
    /// Case catalog document (JSON).
    #[arg(long)]
    catalog: PathBuf,
    /// Annual weather series (weather-CSV).
    #[arg(long)]
    weather: PathBuf,
    /// Conduction model override for every simulated case.
    #[arg(long, value_enum)]
    model: Option<CliModel>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    format: CliFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a single catalog case and check it against its envelope.
    Run {
        /// Case id to simulate.
        #[arg(long = "case")]
        case_id: String,
        #[command(flatten)]
        inputs: RunInputs,
    },
    /// Run every catalog case and emit the full suite report.
    Suite {
        #[command(flatten)]
        inputs: RunInputs,
        /// Worker threads for parallel case execution (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compute the diagnostic delta between a pair of cases.
    Diag {
        /// Pair as <minuend>:<subtrahend>, e.g. 280:270.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum)]
        quantity: CliQuantity,
        #[command(flatten)]
        inputs: RunInputs,
    },
    /// Synthesize a deterministic desk-scale weather year.
    SynthWeather {
        /// Annual mean dry-bulb temperature, °C.
        #[arg(long)]
        mean: f64,
        /// Daily temperature half-amplitude, K.
        #[arg(long = "daily-amp")]
        daily_amp: f64,
        /// Seasonal temperature half-amplitude, K.
        #[arg(long = "seasonal-amp")]
        seasonal_amp: f64,
        /// Clear-sky fraction in [0, 1].
        #[arg(long)]
        clearness: f64,
        /// Perturbation seed; 0 disables the perturbation.
        #[arg(long)]
        seed: u64,
        /// Output weather-CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Site latitude, degrees.
        #[arg(long, default_value_t = 40.0)]
        lat: f64,
        /// Site longitude, degrees.
        #[arg(long, default_value_t = 0.0)]
        lon: f64,
        /// Timezone meridian, degrees.
        #[arg(long, default_value_t = 0.0)]
        meridian: f64,
        /// Ground reflectance, [0, 1].
        #[arg(long = "ground-reflectance", default_value_t = 0.2)]
        ground_reflectance: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Run { case_id, inputs } => {
            let (catalog, weather) = load_inputs(&inputs)?;
            let report = run_case(&catalog, &weather, &case_id, inputs.model.map(Into::into))
                .map_err(|e| e.to_string())?;
            finish(&report, &inputs)
        }
        Command::Suite { inputs, jobs } => {
            let (catalog, weather) = load_inputs(&inputs)?;
            let model = inputs.model.map(Into::into);
            let report = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| e.to_string())?
                    .install(|| run_suite(&catalog, &weather, model)),
                None => run_suite(&catalog, &weather, model),
            };
            finish(&report, &inputs)
        }
        Command::Diag {
            pair,
            quantity,
            inputs,
        } => {
            let (minuend, subtrahend) = pair
                .split_once(':')
                .ok_or_else(|| format!("pair '{}' is not of the form <idA>:<idB>", pair))?;
            let (catalog, weather) = load_inputs(&inputs)?;
            let report = run_pair(
                &catalog,
                &weather,
                minuend,
                subtrahend,
                quantity.into(),
                inputs.model.map(Into::into),
            )
            .map_err(|e| e.to_string())?;
            finish(&report, &inputs)
        }
        Command::SynthWeather {
            mean,
            daily_amp,
            seasonal_amp,
            clearness,
            seed,
            out,
            lat,
            lon,
            meridian,
            ground_reflectance,
        } => {
            let site = Site {
                latitude: lat,
                longitude: lon,
                timezone_meridian: meridian,
                ground_reflectance,
            };
            let series = synth_weather(
                site,
                SynthParams {
                    mean_temp: mean,
                    daily_amp,
                    seasonal_amp,
                    clearness,
                    seed,
                },
            )
            .map_err(|e| e.to_string())?;
            fs::write(&out, serialize_weather(&series))
                .map_err(|e| format!("writing {}: {}", out.display(), e))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_inputs(inputs: &RunInputs) -> Result<(Catalog, WeatherSeries), String> {
    let catalog_text = fs::read_to_string(&inputs.catalog)
        .map_err(|e| format!("reading {}: {}", inputs.catalog.display(), e))?;
    let catalog = load_catalog(&catalog_text).map_err(|e| e.to_string())?;
    let weather_text = fs::read_to_string(&inputs.weather)
        .map_err(|e| format!("reading {}: {}", inputs.weather.display(), e))?;
    let weather = parse_weather(&weather_text).map_err(|e| e.to_string())?;
    Ok((catalog, weather))
}

fn finish(report: &SuiteReport, inputs: &RunInputs) -> Result<ExitCode, String> {
    let document = emit_report(report, inputs.format.into());
    match &inputs.out {
        Some(path) => {
            fs::write(path, document).map_err(|e| format!("writing {}: {}", path.display(), e))?
        }
        None => print!("{}", document),
    }
    Ok(if report.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
