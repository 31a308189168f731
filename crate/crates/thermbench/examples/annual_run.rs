//! Simulate one catalog case through a full synthetic year with both wall
//! models and print the monthly load breakdown.
//!
//! Run with: `cargo run --release --example annual_run [-- <case_id>]`

use thermbench::conduction::ConductionModel;
use thermbench::harness::{bundled_catalog, load_catalog};
use thermbench::simulate::simulate_annual;
use thermbench::weather::{synth_weather, Site, SynthParams};

fn main() {
    let case_id = std::env::args().nth(1).unwrap_or_else(|| "600".into());
    let catalog = load_catalog(bundled_catalog()).expect("bundled catalog is valid");
    let case = catalog
        .case(&case_id)
        .unwrap_or_else(|| panic!("case '{}' not in the bundled catalog", case_id));

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

    println!("case {}: {}", case.id, case.description);
    for model in [ConductionModel::TwoNode, ConductionModel::Discretized] {
        let result = simulate_annual(&case.zone, &weather, model).expect("simulation runs");
        println!();
        println!("model {}", model);
        println!("month  heating_kWh  cooling_kWh");
        const DAYS_PER_MONTH: [usize; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
        let mut hour = 0;
        for (m, &days) in DAYS_PER_MONTH.iter().enumerate() {
            let heat: f64 = result.hourly_heating[hour..hour + days * 24].iter().sum();
            let cool: f64 = result.hourly_cooling[hour..hour + days * 24].iter().sum();
            hour += days * 24;
            println!(
                "{:>5}  {:>11.1}  {:>11.1}",
                m + 1,
                heat / 1000.0,
                cool / 1000.0
            );
        }
        println!(
            "annual: heating {:.3} MWh, cooling {:.3} MWh",
            result.annual_heating_mwh, result.annual_cooling_mwh
        );
    }
}
