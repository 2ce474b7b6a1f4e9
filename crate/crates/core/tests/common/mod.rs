#![allow(dead_code)]

use nestvar::{CharacterColumn, Dataset, NumericVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force conditional means: for every individual, average the target
/// over everyone agreeing with it on the first `depth` characters of `order`.
/// Quadratic in N and independent of `Partition`.
pub fn oracle_projection(d: &Dataset, order: &[usize], depth: usize) -> Vec<f64> {
    let n = d.len();
    let x = d.target().values();
    let agree = |i: usize, h: usize| {
        order[..depth]
            .iter()
            .all(|&c| d.characters()[c].codes()[i] == d.characters()[c].codes()[h])
    };
    (0..n)
        .map(|i| {
            let members: Vec<usize> = (0..n).filter(|&h| agree(i, h)).collect();
            members.iter().map(|&h| x[h]).sum::<f64>() / members.len() as f64
        })
        .collect()
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum::<f64>() / a.len() as f64
}

/// Per-step components `‖E_j − E_{j−1}‖²` and the final residual, by brute force.
pub fn oracle_components(d: &Dataset, order: &[usize]) -> (Vec<f64>, f64) {
    let projections: Vec<Vec<f64>> = (0..=order.len())
        .map(|depth| oracle_projection(d, order, depth))
        .collect();
    let components = projections.windows(2).map(|w| dist_sq(&w[1], &w[0])).collect();
    let residual = dist_sq(d.target().values(), projections.last().unwrap());
    (components, residual)
}

/// A dataset with `n` rows, `chars` characters of up to `codes` codes each,
/// and a target mixing per-code effects with noise.
pub fn random_dataset(rng: &mut ChaCha8Rng, n: usize, chars: usize, codes: usize) -> Dataset {
    let columns: Vec<Vec<usize>> = (0..chars)
        .map(|_| (0..n).map(|_| rng.random_range(0..codes)).collect())
        .collect();
    let effects: Vec<Vec<f64>> = (0..chars)
        .map(|_| (0..codes).map(|_| rng.random_range(-3.0..3.0)).collect())
        .collect();
    let offset = rng.random_range(-10.0..10.0);
    let target = (0..n)
        .map(|i| {
            offset
                + columns
                    .iter()
                    .zip(&effects)
                    .map(|(col, eff)| eff[col[i]])
                    .sum::<f64>()
                + rng.random_range(-1.0..1.0)
        })
        .collect();
    let characters = columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            CharacterColumn::new(
                format!("C{j}"),
                col.iter().map(|c| format!("k{c}")).collect::<Vec<_>>(),
            )
            .unwrap()
        })
        .collect();
    Dataset::new(NumericVector::new(target).unwrap(), characters).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let item = rest.remove(i);
            prefix.push(item);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, item);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Every dataset with `N ≤ 12`, at most three characters of at most three
/// codes, over five deterministic draws per shape.
pub fn small_cases() -> Vec<Dataset> {
    let mut cases = Vec::new();
    for n in 1..=12 {
        for chars in 1..=3 {
            for codes in 1..=3 {
                for variant in 0..5 {
                    let seed = (n * 1000 + chars * 100 + codes * 10 + variant) as u64;
                    cases.push(random_dataset(&mut rng(seed), n, chars, codes));
                }
            }
        }
    }
    cases
}
