//! Load a JSON problem and print the closure document.
//!
//! ```text
//! cargo run --example problem_file -- crates/core/problems/example_b.json
//! ```

use std::path::PathBuf;

use sphere_closure::closure::{compute_closure_with_digits, rhs_constraints};
use sphere_closure::schema::{closure_to_json, load_problem};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems/example_a.json"));
    let text = std::fs::read_to_string(&path).expect("readable problem file");
    let spec = match load_problem(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            std::process::exit(2);
        }
    };
    let closure = compute_closure_with_digits(&spec, 24).unwrap();
    let rhs = rhs_constraints(&spec, 24).unwrap();
    let doc = closure_to_json(&closure, &rhs);
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}
