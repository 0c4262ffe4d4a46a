//! Prints one line per acceptance criterion and exits nonzero if any fails.

use srd_core::acceptance;
use srd_core::verify::Config;

fn main() {
    let results = acceptance::run(None, &Config::default()).expect("drivers run");
    for r in &results {
        println!("{}", r.line());
    }
    assert_eq!(results.len(), 11);
    let failed: Vec<u8> = results.iter().filter(|r| r.status.is_failure()).map(|r| r.number).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all 11 criteria pass");
}
