//! Compare the two wall model orders against the fine-grid reference on a
//! heavyweight wall step response.
//!
//! The exterior surface steps from 0 to 10 °C with the interior adiabatic;
//! each model's interior-surface temperature is tracked for 48 hours. The
//! surface-lumped two-node wall responds too early because its inertia sits
//! on the surfaces, while the layer-discretized wall stays close to the
//! reference.
//!
//! Run with: `cargo run --release --example wall_models`

use thermbench::conduction::{
    discretized_network, fine_grid_oracle, transient_interior_response, two_node_network,
    Construction, Layer, OracleBoundary,
};

fn main() {
    let wall = Construction {
        layers: vec![Layer {
            thickness: 0.2,
            conductivity: 1.4,
            density: 2000.0,
            specific_heat: 900.0,
        }],
        exterior_solar_absorptance: 0.6,
        interior_solar_absorptance: 0.6,
    };

    let step = |_t: f64| 10.0;
    let horizon = 48.0 * 3600.0;

    let oracle = fine_grid_oracle(
        &wall,
        101,
        1.0,
        &OracleBoundary {
            exterior: &step,
            interior: None,
        },
        horizon,
        0.0,
    )
    .expect("stable oracle march");

    let two = transient_interior_response(&two_node_network(&wall), &step, 60.0, horizon, 0.0)
        .expect("two-node march");
    let disc = transient_interior_response(&discretized_network(&wall), &step, 60.0, horizon, 0.0)
        .expect("discretized march");

    println!("hour  oracle_C  two_node_C  discretized_C");
    for hour in (2..=48).step_by(2) {
        let t = hour as f64 * 3600.0;
        println!(
            "{:>4}  {:>8.3}  {:>10.3}  {:>13.3}",
            hour,
            oracle.at(t),
            two.at(t),
            disc.at(t)
        );
    }

    let rms = |series: &thermbench::conduction::TransientSolution| {
        let samples = 96;
        let sq: f64 = (1..=samples)
            .map(|k| {
                let t = k as f64 * horizon / samples as f64;
                let d = series.at(t) - oracle.at(t);
                d * d
            })
            .sum();
        (sq / samples as f64).sqrt()
    };
    let rms_two = rms(&two);
    let rms_disc = rms(&disc);
    println!();
    println!("RMS error vs fine grid over 48 h:");
    println!("  two-node:    {:.4} K", rms_two);
    println!(
        "  discretized: {:.4} K  ({:.1}x closer)",
        rms_disc,
        rms_two / rms_disc
    );
}
