//! The JSON model pipeline as a library.
//!
//! Loads the bundled CP^2 model, executes its commands, and prints each
//! report; the same machinery backs the `strata` binary. See the `models/`
//! directory for the file format.
//!
//! ```bash
//! cargo run --example model_runner
//! # equivalent to:
//! cargo run --bin strata -- --input crates/strata/models/cp2.json
//! ```

use std::path::PathBuf;

use strata::cli::exec::{execute, ExecOptions};
use strata::cli::model::load_model;

fn main() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/cp2.json");
    let model = load_model(&path).expect("bundled model is valid");

    let opts = ExecOptions::default();
    for command in &model.commands {
        let report = execute(&model, command, &opts).expect("bundled commands succeed");
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    }
}
