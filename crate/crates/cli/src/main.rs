mod args;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use nestvar::experiments::GENERATOR;
use nestvar::io::{
    filter_target_max, histogram, load_csv, write_report, Destination, Format, LoadOptions, Metadata,
    MissingPolicy, ReportBody, ReportDocument,
};
use nestvar::{
    decompose_ordered, generate_exam_like, random_subset_baseline, robustness_check, simulate_soo_recovery,
    soo_rank, BaselineConfig, Dataset, Error, ErrorClass, SimulationConfig,
};

use crate::args::{Cli, Command, DataArgs, Missing, OutputFormat};

fn load(data: &DataArgs) -> Result<Dataset, Error> {
    let dataset = match (&data.input, data.exam_questions) {
        (Some(path), _) => {
            let target = data
                .target
                .as_deref()
                .ok_or_else(|| Error::InvalidConfig("--target is required with --input".into()))?;
            let options = LoadOptions {
                delimiter: data.delimiter.byte(),
                missing: match data.missing {
                    Missing::Reject => MissingPolicy::Reject,
                    Missing::AsCategory => MissingPolicy::AsCategory,
                },
            };
            load_csv(path, target, data.characters.as_deref(), options)?
        }
        (None, Some(questions)) => {
            let d = generate_exam_like(questions, data.exam_rows, data.exam_spread, data.exam_seed)?;
            match &data.characters {
                Some(names) => d.with_characters(&d.positions(names)?)?,
                None => d,
            }
        }
        (None, None) => {
            return Err(Error::InvalidConfig(
                "a data source is required: --input or --exam-questions".into(),
            ))
        }
    };
    match data.max_target {
        Some(max) => filter_target_max(&dataset, max),
        None => Ok(dataset),
    }
}

fn require_variance(d: &Dataset) -> Result<(), Error> {
    if d.target().variance() == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(())
}

fn execute(command: &Command) -> Result<(ReportBody, Option<String>), Error> {
    Ok(match command {
        Command::Rank { data, max_steps } => {
            let d = load(data)?;
            require_variance(&d)?;
            (ReportBody::Ranking(soo_rank(&d, *max_steps)?), None)
        }
        Command::Decompose { data, order } => {
            let d = load(data)?;
            require_variance(&d)?;
            (ReportBody::Decomposition(decompose_ordered(&d, order)?), None)
        }
        Command::Baseline {
            data,
            k,
            trials,
            seed,
        } => {
            let d = load(data)?;
            require_variance(&d)?;
            let cfg = BaselineConfig {
                subset_size: *k,
                trials: *trials,
                seed: *seed,
            };
            (
                ReportBody::Baseline(random_subset_baseline(&d, &cfg)?),
                Some(GENERATOR.to_owned()),
            )
        }
        Command::Simulate {
            num_characters,
            population,
            coefficients,
            noise_sd,
            bernoulli_p,
            trials,
            seed,
        } => {
            let coefficients = coefficients.clone().unwrap_or_else(|| {
                (0..*num_characters)
                    .map(|i| (*num_characters - i) as f64 / *num_characters as f64)
                    .collect()
            });
            let cfg = SimulationConfig {
                num_characters: *num_characters,
                population: *population,
                coefficients,
                noise_sd: *noise_sd,
                bernoulli_p: *bernoulli_p,
                trials: *trials,
                seed: *seed,
            };
            (
                ReportBody::Simulation(simulate_soo_recovery(&cfg)?),
                Some(GENERATOR.to_owned()),
            )
        }
        Command::Robustness { data } => (ReportBody::Robustness(robustness_check(&load(data)?)?), None),
        Command::Histogram {
            data,
            from_report,
            bin_width,
            origin,
            bins,
        } => {
            let values = match from_report {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                        path: path.clone(),
                        source,
                    })?;
                    match ReportDocument::from_json(&text)?.report {
                        ReportBody::Baseline(b) => b.residual_fractions()?,
                        other => {
                            return Err(Error::InvalidConfig(format!(
                                "--from-report needs a baseline report, got {}",
                                other.kind()
                            )))
                        }
                    }
                }
                None => load(data)?.target().values().to_vec(),
            };
            (
                ReportBody::Histogram(histogram(&values, *bin_width, *origin, *bins)?),
                None,
            )
        }
    })
}

fn input_name(command: &Command) -> Option<String> {
    let data = match command {
        Command::Rank { data, .. }
        | Command::Decompose { data, .. }
        | Command::Baseline { data, .. }
        | Command::Robustness { data } => data,
        Command::Histogram {
            from_report: Some(path),
            ..
        } => return Some(path.display().to_string()),
        Command::Histogram { data, .. } => data,
        Command::Simulate { .. } => return None,
    };
    match (&data.input, data.exam_questions) {
        (Some(path), _) => Some(path.display().to_string()),
        (None, Some(q)) => Some(format!(
            "synthetic exam: {q} questions, {} rows, spread {}, seed {}",
            data.exam_rows, data.exam_spread, data.exam_seed
        )),
        (None, None) => None,
    }
}

fn config_echo(command: &Command) -> BTreeMap<String, serde_json::Value> {
    match serde_json::to_value(command) {
        Ok(serde_json::Value::Object(outer)) => outer
            .into_iter()
            .flat_map(|(name, fields)| {
                let mut map = BTreeMap::from([("command".to_owned(), serde_json::Value::String(name))]);
                if let serde_json::Value::Object(fields) = fields {
                    for (key, value) in fields {
                        match value {
                            serde_json::Value::Object(nested) => map.extend(nested),
                            other => {
                                map.insert(key, other);
                            }
                        }
                    }
                }
                map
            })
            .collect(),
        _ => BTreeMap::new(),
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let (body, generator) = execute(&cli.command)?;
    let metadata = Metadata {
        input: input_name(&cli.command),
        config: config_echo(&cli.command),
        generator,
        timestamp: cli.output.timestamp.then(|| {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            format!("{secs}")
        }),
        ..Default::default()
    };
    let format = match cli.output.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Table => Format::Table,
        OutputFormat::Csv => Format::Csv,
    };
    let destination = cli
        .output
        .output
        .clone()
        .map_or(Destination::Stdout, Destination::File);
    write_report(&ReportDocument::new(body, metadata), format, &destination)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Usage => 2,
                ErrorClass::Data => 3,
                ErrorClass::Degenerate => 4,
            })
        }
    }
}
