use lambwave_core::dispersion::*;
fn main() {
    let m = MaterialSpec::aluminium_1mm();
    let ftp = 2.15f64;
    // dense scan around the pole pair
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=600 {
        let c = 4298.3 + 0.002 * i as f64;
        if let Ok(f) = characteristic_residual(&m, ftp, c, ModeFamily::Symmetric) {
            if let Some((pc, pf)) = prev {
                if pf * f < 0.0 {
                    println!("sign change in [{pc:.5}, {c:.5}]: {pf:.3e} -> {f:.3e}");
                }
            }
            prev = Some((c, f));
        } else {
            println!("non-evaluable at {c}");
            prev = None;
        }
    }
    // what python said the surrounding roots were: S0(2.14)=4318.3, S0(2.16)=4278.3
    for c in [4277.0f64, 4278.0, 4278.3, 4279.0, 4280.0] {
        let r = characteristic_residual(&m, 2.16, c, ModeFamily::Symmetric);
        println!("ftp 2.16 f({c}) = {r:?}");
    }
}
