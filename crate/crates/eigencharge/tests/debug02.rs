use eigencharge::model::ModelParams;
use eigencharge::scalar::{ratio};
use eigencharge::secular;
use eigencharge::spectra;
use std::time::Instant;

#[test]
fn profile_sample() {
    for n in [8usize, 10] {
        let params = ModelParams::new(n, ratio(0, 1), ratio(-311, 64));
        let t0 = Instant::now();
        let cp = secular::char_poly_f(&params);
        let t1 = Instant::now();
        let set = spectra::eigencharges(&params, 1e-9).unwrap();
        let t2 = Instant::now();
        println!(
            "N={n}: char_poly {:?}, eigencharges {:?} ({} charges, deg {})",
            t1 - t0,
            t2 - t1,
            set.charges.len(),
            cp.degree().unwrap()
        );
    }
}
