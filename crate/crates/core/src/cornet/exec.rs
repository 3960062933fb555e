//! Seeded case execution, sequential or data-parallel.
//!
//! Case `i` always draws from a generator seeded by `(seed, i)`, so both modes
//! produce identical results in identical order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CaseRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is on; otherwise sequential.
    #[default]
    Parallel,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn case_rng(seed: u64, case: u64) -> CaseRng {
    CaseRng::seed_from_u64(splitmix64(seed ^ splitmix64(case)))
}

/// Stable 64-bit FNV-1a, used to give each law its own sample stream.
pub fn salt(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn run_cases<T, F>(exec: Exec, seed: u64, cases: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut CaseRng) -> T + Sync + Send,
{
    let one = |i: u64| {
        let mut rng = case_rng(seed, i);
        f(i, &mut rng)
    };
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..cases).into_par_iter().map(one).collect()
        }
        _ => (0..cases).map(one).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn modes_agree() {
        let draw = |_: u64, rng: &mut CaseRng| rng.gen::<u64>();
        let a = run_cases(Exec::Sequential, 7, 64, draw);
        let b = run_cases(Exec::Parallel, 7, 64, draw);
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        assert_ne!(run_cases(Exec::Sequential, 8, 1, draw), a[..1]);
    }
}
