use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::DiagError;
use crate::graph::{DistMatrix, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaOptions {
    /// Largest vertex count scanned exhaustively.
    pub max_exact: usize,
    /// `(samples, seed)`: above `max_exact`, scan random 4-tuples instead.
    pub sampling: Option<(u64, u64)>,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        DeltaOptions { max_exact: 200, sampling: None }
    }
}

/// Four-point hyperbolicity constant. Kept doubled so it stays integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub twice_delta: u32,
    pub witness: Option<[usize; 4]>,
    pub exact: bool,
}

impl DeltaReport {
    pub fn value(&self) -> f64 {
        f64::from(self.twice_delta) / 2.0
    }
}

/// Gap between the largest and second largest of the three pair sums.
fn defect(d: &DistMatrix, [x, y, z, w]: [usize; 4]) -> u32 {
    let mut s = [d.get(x, y) + d.get(z, w), d.get(x, z) + d.get(y, w), d.get(x, w) + d.get(y, z)];
    s.sort_unstable();
    s[2] - s[1]
}

pub fn delta(d: &DistMatrix, opts: DeltaOptions) -> Result<DeltaReport, DiagError> {
    let n = d.n();
    if (0..n).any(|u| d.row(u).contains(&UNREACHABLE)) {
        return Err(DiagError::Disconnected);
    }
    if n < 4 {
        return Ok(DeltaReport { twice_delta: 0, witness: None, exact: true });
    }
    if n > opts.max_exact {
        let Some((samples, seed)) = opts.sampling else {
            return Err(DiagError::TooLarge { n, limit: opts.max_exact });
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = (0, None);
        for _ in 0..samples {
            let t = [0; 4].map(|_| rng.gen_range(0..n));
            let v = defect(d, t);
            if v > best.0 {
                best = (v, Some(t));
            }
        }
        return Ok(DeltaReport { twice_delta: best.0, witness: best.1, exact: false });
    }
    // Per first index the best tuple; ties go to the lexicographically least.
    let best = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            let mut best: Option<(u32, [usize; 4])> = None;
            for y in x + 1..n {
                for z in y + 1..n {
                    for w in z + 1..n {
                        let v = defect(d, [x, y, z, w]);
                        if v > best.map_or(0, |b| b.0) {
                            best = Some((v, [x, y, z, w]));
                        }
                    }
                }
            }
            best
        })
        .max_by_key(|&(v, t)| (v, std::cmp::Reverse(t)));
    let best = (best.map_or(0, |b| b.0), best.map(|b| b.1));
    Ok(DeltaReport { twice_delta: best.0, witness: best.1, exact: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn delta_examples() {
        let t = build::random_tree(30, 1).distances();
        assert_eq!(delta(&t, DeltaOptions::default()).unwrap().twice_delta, 0);
        let c4 = build::cycle(4).distances();
        let r = delta(&c4, DeltaOptions::default()).unwrap();
        assert_eq!(r.value(), 1.0);
        assert_eq!(r.witness, Some([0, 1, 2, 3]));
    }

    #[test]
    fn refusal_and_sampling() {
        let g = build::grid(3, 3).distances();
        let opts = DeltaOptions { max_exact: 10, sampling: None };
        assert_eq!(delta(&g, opts), Err(DiagError::TooLarge { n: 16, limit: 10 }));
        let sampled = delta(&g, DeltaOptions { max_exact: 10, sampling: Some((2000, 7)) }).unwrap();
        let exact = delta(&g, DeltaOptions::default()).unwrap();
        assert!(!sampled.exact);
        assert!(sampled.twice_delta <= exact.twice_delta);
        assert_eq!(sampled, delta(&g, DeltaOptions { max_exact: 10, sampling: Some((2000, 7)) }).unwrap());
    }
}
