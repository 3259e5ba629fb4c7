//! Test-side oracles. Everything here works on plain integers modulo a
//! prime and shares no code with the library.
#![allow(dead_code)]

use rand::Rng;

pub fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn smallest_prime_at_least(n: u32) -> u32 {
    (n.max(2)..).find(|&c| is_prime(c)).unwrap()
}

/// Minimum nonzero weight of `m G` over GF(p), by odometer enumeration:
/// bumping digit `i` by one adds row `i` modulo `p`, carries included.
pub fn brute_distance(p: u32, g: &[Vec<u32>]) -> Option<usize> {
    let s = g.len();
    let n = g[0].len();
    let mut digits = vec![0u32; s];
    let mut word = vec![0u32; n];
    let mut best: Option<usize> = None;
    loop {
        let mut i = s;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            for (w, &x) in word.iter_mut().zip(&g[i]) {
                *w = (*w + x) % p;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
        let w = word.iter().filter(|&&x| x != 0).count();
        if w > 0 && best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    }
}

pub fn rank_mod_p(p: u32, m: &[Vec<u32>]) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).collect())
        .collect();
    let p = p as u64;
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][c].is_multiple_of(p)) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_multiple_of(p) {
                let f = a[r][c] * inv % p;
                let pivot = a[rank].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// min over nonempty row subsets of |N(S)| - |S| + 1, clamped at zero.
pub fn brute_d_min(adj: &[Vec<u8>]) -> usize {
    let s = adj.len();
    let n = adj[0].len();
    let mut best = i64::MAX;
    for mask in 1u32..(1 << s) {
        let rows: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
        let nb = (0..n)
            .filter(|&j| rows.iter().any(|&i| adj[i][j] == 1))
            .count() as i64;
        best = best.min(nb - rows.len() as i64 + 1);
    }
    best.max(0) as usize
}

/// Every matching saturating the rows, as row -> column assignments.
pub fn all_matchings(adj: &[Vec<u8>]) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[Vec<u8>],
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == adj.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..adj[i].len() {
            if adj[i][j] == 1 && !used[j] {
                used[j] = true;
                cur.push(j);
                rec(adj, i + 1, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        adj,
        0,
        &mut vec![false; adj[0].len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Zeros per row once every matched column keeps only its matched edge.
pub fn matched_zeros(adj: &[Vec<u8>], matching: &[usize]) -> Vec<usize> {
    (0..adj.len())
        .map(|i| {
            (0..adj[i].len())
                .filter(|&j| {
                    let owner = matching.iter().position(|&c| c == j);
                    adj[i][j] == 0 || owner.is_some_and(|r| r != i)
                })
                .count()
        })
        .collect()
}

/// Smallest (max zeros + 1) over all matchings, or None without one.
pub fn brute_k_sys(adj: &[Vec<u8>]) -> Option<usize> {
    all_matchings(adj)
        .iter()
        .map(|m| matched_zeros(adj, m).into_iter().max().unwrap() + 1)
        .min()
}

/// Random adjacency with no empty row or column.
pub fn random_graph(rng: &mut impl Rng, s: usize, n: usize, density: f64) -> Vec<Vec<u8>> {
    let mut adj: Vec<Vec<u8>> = (0..s)
        .map(|_| (0..n).map(|_| rng.gen_bool(density) as u8).collect())
        .collect();
    for row in adj.iter_mut() {
        if !row.contains(&1) {
            row[rng.gen_range(0..n)] = 1;
        }
    }
    for j in 0..n {
        if adj.iter().all(|row| row[j] == 0) {
            adj[rng.gen_range(0..s)][j] = 1;
        }
    }
    adj
}

/// Random graph shape in the acceptance corpus: s <= 5, s <= n <= 9.
pub fn random_instance(rng: &mut impl Rng) -> Vec<Vec<u8>> {
    let s = rng.gen_range(1..=5);
    let n = rng.gen_range(s..=9);
    let density = rng.gen_range(0.2..0.95);
    random_graph(rng, s, n, density)
}

pub fn zero_pattern(g: &[Vec<u32>]) -> Vec<Vec<bool>> {
    g.iter()
        .map(|r| r.iter().map(|&x| x == 0).collect())
        .collect()
}

pub fn respects(adj: &[Vec<u8>], g: &[Vec<u32>]) -> bool {
    adj.iter()
        .zip(g)
        .all(|(a, r)| a.iter().zip(r).all(|(&e, &x)| e == 1 || x == 0))
}
