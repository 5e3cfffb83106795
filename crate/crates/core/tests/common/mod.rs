#![allow(dead_code)]

use quasimod::gauge::make_tabulated;
use quasimod::{Distances, Ext, Gauge, Grid, Regime, TConorm};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random arcs with small integer costs; `zero_share` of them cost nothing.
pub fn random_arcs(rng: &mut ChaCha8Rng, n: usize, density: f64, zero_share: f64) -> Vec<(usize, usize, f64)> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                let c = if rng.gen_bool(zero_share) {
                    0.0
                } else {
                    rng.gen_range(1..=8) as f64
                };
                arcs.push((u, v, c));
            }
        }
    }
    arcs
}

/// Shortest-path closure by Floyd-Warshall; unreachable pairs stay infinite.
pub fn closure(n: usize, arcs: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, c) in arcs {
        d[u][v] = d[u][v].min(c);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Random finite quasi-pseudometric on `n` points.
pub fn random_quasi_metric(rng: &mut ChaCha8Rng, n: usize, zero_share: f64) -> Vec<Vec<f64>> {
    let mut arcs = random_arcs(rng, n, 0.5, zero_share);
    for u in 0..n {
        arcs.push((u, (u + 1) % n, rng.gen_range(1..=8) as f64));
    }
    closure(n, &arcs)
}

pub fn table(rows: &[Vec<f64>]) -> Distances {
    Distances::from_rows(rows).unwrap()
}

/// Conorm-regime gauge tabulated from a quasi-pseudometric `p`, either
/// `p / (t + p)` or `1 - exp(-p / t)`. Both satisfy the max-triangle, hence
/// the triangle of every conorm.
pub fn conorm_gauge(rng: &mut ChaCha8Rng, conorm: TConorm) -> (Gauge, Grid) {
    let n = rng.gen_range(2..=6);
    let p = random_quasi_metric(rng, n, 0.4);
    let m = rng.gen_range(1..=5);
    let grid = Grid::uniform(1.0, m).unwrap();
    let exp = rng.gen_bool(0.5);
    let mut values = Vec::with_capacity(n * n * m);
    for row in &p {
        for &d in row {
            for &t in grid.scales() {
                let v = if d == 0.0 {
                    0.0
                } else if d.is_infinite() {
                    1.0
                } else if exp {
                    1.0 - (-d / t).exp()
                } else {
                    d / (t + d)
                };
                values.push(Ext::new(v).unwrap());
            }
        }
    }
    let g = make_tabulated(Regime::Conorm(conorm), grid.clone(), n, values).unwrap();
    (g, grid)
}

pub const CONORMS: [TConorm; 3] = [TConorm::Max, TConorm::ProbabilisticSum, TConorm::BoundedSum];

/// Least cost over all simple paths from `x` to `y`, by exhaustive search.
pub fn brute_force_path(n: usize, arcs: &[(usize, usize, f64)], x: usize, y: usize) -> f64 {
    fn go(arcs: &[(usize, usize, f64)], at: usize, y: usize, seen: &mut Vec<bool>, cost: f64, best: &mut f64) {
        if at == y {
            *best = best.min(cost);
            return;
        }
        for &(u, v, c) in arcs {
            if u == at && !seen[v] {
                seen[v] = true;
                go(arcs, v, y, seen, cost + c, best);
                seen[v] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut seen = vec![false; n];
    seen[x] = true;
    go(arcs, x, y, &mut seen, 0.0, &mut best);
    best
}
