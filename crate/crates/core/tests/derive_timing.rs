// Scratch benchmark for derivation feasibility; not part of the suite.
use std::time::Instant;
use wittlab_core::witt::universal::{DeriveBudget, UniversalWittPolys};

#[test]
#[ignore]
fn timing_grid() {
    for (p, n) in [(2u64, 5usize), (3, 4), (5, 3), (5, 4), (3, 5)] {
        let t = Instant::now();
        let r = UniversalWittPolys::derive_with_budget(p, n, &DeriveBudget::default());
        match r {
            Ok(u) => {
                let counts = u.term_counts();
                println!(
                    "({}, {}): {:.2}s, top-level terms (S,P,N) = {:?}",
                    p, n, t.elapsed().as_secs_f64(), counts.last().unwrap()
                );
            }
            Err(e) => println!("({}, {}): {:.2}s -> {}", p, n, t.elapsed().as_secs_f64(), e),
        }
    }
}
