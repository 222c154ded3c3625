use std::time::Instant;
use wittlab_core::witt::universal::{DeriveBudget, UniversalWittPolys};

#[test]
#[ignore]
fn timing_55() {
    let t = Instant::now();
    let budget = DeriveBudget { max_terms_per_poly: 80_000_000, max_coeff_ops: 30_000_000_000 };
    match UniversalWittPolys::derive_with_budget(5, 5, &budget) {
        Ok(u) => println!(
            "(5,5): {:.2}s, top-level terms (S,P,N) = {:?}",
            t.elapsed().as_secs_f64(),
            u.term_counts().last().unwrap()
        ),
        Err(e) => println!("(5,5): {:.2}s -> {}", t.elapsed().as_secs_f64(), e),
    }
}
