//! Full certification reports as JSON, the same ones the `rimcert` binary
//! prints with `--json`.

use rimcert::cli::{cmd_pi1, cmd_sw_family, cmd_x9, BaseSw};
use rimcert::knots::torus_family;
use rimcert::lcurve::Window;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reports = [
        cmd_pi1(5, 1, 100_000)?,
        cmd_pi1(4, 1, 100_000)?,
        cmd_sw_family(&BaseSw::K3Like, 2, &torus_family(3)?, true, true)?,
        cmd_x9(0.01, 1e-7, Window::square(-0.3, 0.3), 256, None)?,
    ];
    for r in &reports {
        println!("{}: {} ({})", r.command, r.verdict.as_str(), r.summary);
    }
    println!("{}", reports[0].to_json(false));
    Ok(())
}
