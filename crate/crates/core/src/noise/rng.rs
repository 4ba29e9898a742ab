use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator behind every sampled trial.
pub type TrialRng = ChaCha8Rng;

/// Independent stream for trial `trial` of an experiment seeded with `seed`.
///
/// Streams depend only on `(seed, trial)`, so trials may run in any order or
/// on any number of threads.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
