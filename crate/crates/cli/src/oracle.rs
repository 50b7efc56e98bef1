use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satcert::projective_sets::{covers_circle, uncovered_witness, Arc, SlopeSet};
use satcert::{farey_enumerate, Slope};

use crate::{Failure, Outcome};

#[derive(Args)]
pub struct OracleArgs {
    /// Height of the Farey slopes used as the brute-force oracle.
    #[arg(long, default_value_t = 50)]
    max_den: u32,
    /// Largest denominator of random arc endpoints.
    #[arg(long, default_value_t = 12)]
    endpoint_den: i64,
    /// Number of random set pairs.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn random_slope(rng: &mut impl Rng, den: i64) -> Slope {
    if rng.gen_ratio(1, 16) {
        return Slope::infinity();
    }
    let q = rng.gen_range(1..=den);
    let p = rng.gen_range(-2 * den..=2 * den);
    Slope::new(p, q).expect("q > 0")
}

fn random_set(rng: &mut impl Rng, den: i64) -> SlopeSet {
    let pieces = rng.gen_range(0..=3);
    let arcs = (0..pieces)
        .map(|_| {
            let (a, b) = (random_slope(rng, den), random_slope(rng, den));
            if a == b {
                Arc::point(a)
            } else {
                Arc::new(a, b, rng.gen(), rng.gen()).expect("distinct endpoints")
            }
        })
        .collect();
    SlopeSet::from_arcs(arcs)
}

pub fn run(a: OracleArgs) -> Outcome {
    if a.max_den < 1 || a.endpoint_den < 1 {
        return Err(Failure::input(
            "max-den and endpoint-den must be at least 1",
        ));
    }
    // every gap between endpoints of height ≤ 2·endpoint_den holds a slope of
    // height ≤ 4·endpoint_den, so coarser grids can miss gaps
    if i64::from(a.max_den) < 4 * a.endpoint_den {
        eprintln!("warning: max-den below 4 x endpoint-den may miss narrow gaps");
    }
    let grid = farey_enumerate(a.max_den);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut discrepancies = 0usize;
    for i in 0..a.samples {
        let (s1, s2) = (
            random_set(&mut rng, a.endpoint_den),
            random_set(&mut rng, a.endpoint_den),
        );
        let brute = grid.iter().all(|x| s1.contains(x) || s2.contains(x));
        let fast = covers_circle(&s1, &s2);
        let witness_ok = match uncovered_witness(&s1, &s2) {
            None => fast,
            Some(w) => !fast && !s1.contains(&w) && !s2.contains(&w),
        };
        let union = s1.union(&s2);
        let union_ok = grid
            .iter()
            .all(|x| union.contains(x) == (s1.contains(x) || s2.contains(x)));
        if brute != fast || !witness_ok || !union_ok {
            discrepancies += 1;
            println!("sample {i}: A = {s1}; B = {s2}; brute = {brute}; covers = {fast}");
        }
    }
    println!(
        "oracle: {} pairs, Farey height {}, {} discrepancies",
        a.samples, a.max_den, discrepancies
    );
    Ok(if discrepancies == 0 { 0 } else { 1 })
}
