//! Building thermal simulation engine with selectable wall-conduction models
//! and a comparative validation harness.
//!
//! The engine represents each wall as an RC network under the thermal-electrical
//! analogy and offers two model orders: a surface-lumped two-node form and a
//! layer-discretized form. A zone heat balance couples the wall networks with
//! glazing, infiltration, internal gains and distributed interior solar
//! radiation, steps through an hourly weather year with an implicit scheme, and
//! applies an ideal-loads thermostat. The harness runs a catalog of diagnostic
//! test-case buildings in the style of IEA BESTEST, checks annual heating and
//! cooling loads against reference-program envelopes, and computes diagnostic
//! deltas between paired cases.
//!
//! Conventions used throughout:
//! - Azimuth: degrees clockwise from north (0 = N, 90 = E, 180 = S, 270 = W).
//! - Tilt: degrees from horizontal; 0 = horizontal facing up, 90 = vertical,
//!   180 = horizontal facing down.
//! - Temperatures in degrees Celsius, power in W, energy totals in MWh
//!   (1 MWh = 3.6e9 J).
//! - Wall networks are per unit area; surface area is applied at zone level.
//!
//! See the crate `examples/` directory for one runnable example per major
//! capability, and the `thermbench` binary for the file-driven CLI.

pub mod conduction;
pub mod enclosure;
pub mod harness;
pub mod simulate;
pub mod solar;
pub mod weather;

pub use conduction::{ConductionModel, Construction, Layer, RcNetwork};
pub use harness::{Catalog, RangeVerdict, ReferenceRange, SuiteReport};
pub use simulate::{SimulationResult, Thermostat, ZoneModel};
pub use solar::{Glazing, ShadingDevice, SunPosition, SurfaceGeometry};
pub use weather::{Site, WeatherRecord, WeatherSeries};
