//! Site-term throughput of the resonant octant sum.
//!
//! `cargo run --release -p cpshift-core --example throughput [M] [kind]`

use std::time::Instant;

use cpshift::lattice_sum::{sum_lattice, ShiftKind};
use cpshift::model::{validate, Geometry, LatticeSpec, ModelParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let m: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let kind = match args.next().as_deref() {
        Some("off") => ShiftKind::OffResonant,
        _ => ShiftKind::Resonant,
    };
    for params in [ModelParams::zz(0.5, 1e-6), ModelParams::zx(0.5, 1e-6)] {
        let sys = validate(params, LatticeSpec::new(0.01, m), Geometry::new(0.2)).unwrap();
        let start = Instant::now();
        let total = sum_lattice(&sys, kind).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let reduced = (m as f64 + 1.0) * (m as f64 + 2.0) / 2.0;
        println!(
            "{:?} {:?} M={m}: {:.6e}  {:.3} s  {:.3e} reduced terms/s  {:.3e} sites/s",
            params.orientation(),
            kind,
            total.value,
            secs,
            reduced / secs,
            total.terms_summed as f64 / secs
        );
    }
}
