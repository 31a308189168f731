//! Show how the interior solar absorptance (the cavity albedo) governs the
//! split between absorbed solar power and power bounced back out through the
//! glazing.
//!
//! Run with: `cargo run --example cavity_albedo`

use thermbench::enclosure::{distribute_interior_solar, view_factor_matrix, EnclosureSurface};

fn enclosure(absorptance: f64) -> Vec<EnclosureSurface> {
    // Walls, roof and floor of an 8 x 6 x 2.7 m room plus 12 m2 of glazing
    // that lets 52% of what strikes it from inside escape.
    let mut surfaces: Vec<EnclosureSurface> = [63.6, 48.0, 48.0]
        .iter()
        .map(|&area| EnclosureSurface {
            area,
            solar_absorptance: absorptance,
            back_loss_transmittance: 0.0,
        })
        .collect();
    surfaces.push(EnclosureSurface {
        area: 12.0,
        solar_absorptance: 0.0,
        back_loss_transmittance: 0.52,
    });
    surfaces
}

fn main() {
    let injected = 1000.0;
    println!("injected: {} W through the glazing", injected);
    println!();
    println!("absorptance  absorbed_W  lost_back_out_W  cavity_albedo");
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let surfaces = enclosure(alpha);
        let factors = view_factor_matrix(&surfaces).expect("valid enclosure");
        let weights = {
            let opaque: f64 = surfaces[..3].iter().map(|s| s.area).sum();
            let mut w: Vec<f64> = surfaces[..3].iter().map(|s| s.area / opaque).collect();
            w.push(0.0);
            w
        };
        let split = distribute_interior_solar(injected, &surfaces, &factors, &weights)
            .expect("absorbing enclosure");
        let conservation = split.absorbed_total() + split.lost_out - injected;
        assert!(
            conservation.abs() < 1e-6,
            "conservation residual {}",
            conservation
        );
        println!(
            "{:>11.1}  {:>10.1}  {:>15.1}  {:>13.3}",
            alpha,
            split.absorbed_total(),
            split.lost_out,
            split.lost_out / injected
        );
    }
    println!();
    println!("raising the absorptance from 0.1 to 0.9 traps most of the solar");
    println!("gain in the room; with low absorptance a large share escapes");
    println!("back through the glazing and never loads the zone.");
}
