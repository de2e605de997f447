//! Command line, input files, and the experiment journal.
//!
//! [`run_command`] parses arguments, runs one pipeline, writes its result
//! documents into the results directory, and appends an
//! [`ExperimentRecord`] to `journal.jsonl` there.

mod cli;
mod files;
mod journal;
mod table1;

pub use cli::{parse_grid, run_command, Cli, RunOutcome, RESULTS_DIR_ENV};
pub use files::{digest_bytes, load_graph, load_matrix, parse_real_csv, InputFile};
pub use journal::{ExperimentRecord, Journal, JOURNAL_FILE};
pub use table1::{table1_experiment, GraphEstimate, Table1Report, Table1Row};

/// Formats `x` with at most six significant digits, dropping trailing zeros.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        format!("{}e{exponent}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
