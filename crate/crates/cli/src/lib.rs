//! Command-line orchestration for `assoclab`.
//!
//! Each subcommand resolves a [`JobConfig`], runs the wrapped computation
//! and returns a [`Report`] of values and checks. The binary prints the
//! report as a table (or JSON with `--json`), writes the JSON to `--out`,
//! and exits with 0 when every check passed, 2 when a check or computation
//! failed, and 3 on input or IO errors.

mod commands;
mod config;
mod error;
mod report;

pub use commands::{
    kz_cache_path, load_or_compute_kz, run, run_check, run_etingof, run_gc, run_interp, run_kz,
    run_weights, write_output,
};
pub use config::{
    parse_complex, parse_rational, resolve_cache_dir, Cli, Command, CommonArgs, GcAction,
    JobConfig, CACHE_ENV, MAX_INTERP_ORDER, MAX_KZ_ORDER,
};
pub use error::CliError;
pub use report::{Check, Report};

/// Parses `args` (including the program name), runs the job, prints and
/// writes the report, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::error::ErrorKind;
    use clap::Parser;

    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
        }
    };
    let cfg = match JobConfig::from_cli(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Some(dir) = cfg.output.as_ref().and_then(|p| p.parent()) {
        if !dir.as_os_str().is_empty() && !dir.is_dir() {
            eprintln!("error: output directory {} does not exist", dir.display());
            return 3;
        }
    }
    match run(&cfg) {
        Ok(report) => {
            if cfg.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("serializable")
                );
            } else {
                print!("{}", report.render_table());
            }
            if let Err(e) = write_output(&cfg, &report) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
