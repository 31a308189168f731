//! Run the bundled nine-case suite against a synthetic year and print the
//! CSV report plus the diagnostic pair deltas.
//!
//! The bundled buildings are desk-scale stand-ins, so the two cases that
//! carry published reference envelopes are expected to miss them; the point
//! of this example is the report machinery, not the absolute numbers.
//!
//! Run with: `cargo run --release --example suite_run`

use thermbench::harness::{bundled_catalog, emit_report, load_catalog, run_suite, ReportFormat};
use thermbench::weather::{synth_weather, Site, SynthParams};

fn main() {
    let catalog = load_catalog(bundled_catalog()).expect("bundled catalog is valid");
    let weather = synth_weather(
        Site {
            latitude: 40.0,
            longitude: 0.0,
            timezone_meridian: 0.0,
            ground_reflectance: 0.2,
        },
        SynthParams {
            mean_temp: 15.0,
            daily_amp: 3.0,
            seasonal_amp: 17.0,
            clearness: 0.35,
            seed: 0,
        },
    )
    .expect("valid synthetic weather");

    let start = std::time::Instant::now();
    let report = run_suite(&catalog, &weather, None);
    let elapsed = start.elapsed();

    print!("{}", emit_report(&report, ReportFormat::Csv));
    println!();
    for pair in &report.pairs {
        println!(
            "delta {} - {} ({}): {:+.3} MWh{}",
            pair.case_minuend,
            pair.case_subtrahend,
            pair.quantity,
            pair.delta_mwh.unwrap_or(f64::NAN),
            match pair.within_expected {
                Some(true) => "  [within expected range]",
                Some(false) => "  [OUTSIDE expected range]",
                None => "",
            }
        );
    }
    println!();
    println!(
        "{} cases in {:.2?}, overall pass: {}",
        report.cases.len(),
        elapsed,
        report.overall_pass
    );
}
