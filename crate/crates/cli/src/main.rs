mod args;
mod commands;
mod manifest;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use commands::{CliError, Inputs};
use manifest::{manifest_path, FileDigest, RunManifest};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();

    let result = set_threads(cli.threads).and_then(|()| commands::run(&cli.command, &mut inputs));
    let (mut code, output, error) = match result {
        Ok(outcome) => {
            let mut text = serde_json::to_string_pretty(&outcome.value).expect("result serializes");
            text.push('\n');
            match write_output(cli.out.as_deref(), &text) {
                Ok(digest) => (outcome.status.exit_code(), Some(digest), None),
                Err(e) => (2, None, Some(e)),
            }
        }
        Err(e) => (e.exit_code(), None, Some(e.to_string())),
    };
    if let Some(e) = &error {
        eprintln!("error: {e}");
    }

    let params = serde_json::to_value(&cli).expect("arguments serialize");
    let (command, parameters) = match &params["command"] {
        serde_json::Value::Object(m) => m.iter().next().map(|(k, v)| (k.clone(), v.clone())).expect("one subcommand"),
        serde_json::Value::String(s) => (s.clone(), serde_json::Value::Null),
        other => (other.to_string(), serde_json::Value::Null),
    };
    let mut parameters = parameters;
    if let (serde_json::Value::Object(p), Some(t)) = (&mut parameters, cli.threads) {
        p.insert("threads".into(), t.into());
    }
    let m = RunManifest {
        command,
        parameters,
        version: env!("CARGO_PKG_VERSION"),
        inputs: inputs.0,
        output,
        duration_ms: start.elapsed().as_millis() as u64,
        exit_code: code as i32,
        error,
    };
    let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
    match manifest_path(cli.manifest.as_deref(), cli.out.as_deref()) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text + "\n") {
                eprintln!("error: cannot write manifest {}: {e}", path.display());
                code = code.max(2);
            }
        }
        None => eprintln!("{text}"),
    }
    ExitCode::from(code)
}

fn set_threads(threads: Option<usize>) -> Result<(), CliError> {
    match threads {
        None => Ok(()),
        Some(0) => Err(CliError::Input("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("cannot configure threads: {e}"))),
    }
}

fn write_output(out: Option<&std::path::Path>, text: &str) -> Result<FileDigest, String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            Ok(FileDigest::of_bytes(&path.display().to_string(), text.as_bytes()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| format!("cannot write stdout: {e}"))?;
            Ok(FileDigest::of_bytes("-", text.as_bytes()))
        }
    }
}
