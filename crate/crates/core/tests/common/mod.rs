#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbtensor::{BlockKind, Matrix, Partition, Tensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn single_entry() -> Tensor {
    Tensor::from_one_based(3, 3, vec![(vec![2, 1, 3], 1.0)]).unwrap()
}

pub fn det_gap() -> Tensor {
    Tensor::from_one_based(
        3,
        2,
        vec![
            (vec![1, 1, 1], 1.0),
            (vec![1, 2, 2], 1.0),
            (vec![2, 1, 2], 1.0),
            (vec![2, 2, 1], 1.0),
        ],
    )
    .unwrap()
}

pub fn hub() -> Tensor {
    let mut entries = Vec::new();
    for i in 1..=3 {
        for j in 1..=4 {
            for k in 1..=4 {
                if j == 4 || k == 4 {
                    entries.push((vec![i, j, k], 1.0));
                }
            }
        }
    }
    Tensor::from_one_based(3, 4, entries).unwrap()
}

pub fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// The vanishing condition of each kind, transcribed with 1-based block
/// bounds `S_{j-1} < i <= S_j`. Independent of the library predicate.
pub fn entry_allowed(idx: &[usize], p: &Partition, kind: BlockKind) -> bool {
    let one: Vec<usize> = idx.iter().map(|i| i + 1).collect();
    let i = one[0];
    let tail = &one[1..];
    let (lo, hi) = (*tail.iter().min().unwrap(), *tail.iter().max().unwrap());
    let mut s = vec![0usize];
    for &n in p.parts() {
        s.push(s.last().unwrap() + n);
    }
    let r = p.len();
    let j = (1..=r).find(|&j| s[j - 1] < i && i <= s[j]).unwrap();
    let (prev, cur) = (s[j - 1], s[j]);
    match kind {
        BlockKind::Utb1 => !(j >= 2 && lo <= prev),
        BlockKind::Utb2 => !(j >= 2 && lo <= prev && hi <= cur),
        BlockKind::Utb3 => !(j >= 2 && hi <= prev),
        BlockKind::Ltb1 => !(j < r && hi >= cur + 1),
        BlockKind::Ltb2 => !(j < r && hi >= cur + 1 && lo >= prev + 1),
        BlockKind::Ltb3 => !(j < r && lo >= cur + 1),
        BlockKind::Diag => tail.iter().all(|&t| prev < t && t <= cur),
    }
}

pub fn oracle_blocked(a: &Tensor, p: &Partition, kind: BlockKind) -> bool {
    a.entries().all(|(idx, _)| entry_allowed(idx, p, kind))
}

/// `is_blocked`, reading one-block partitions of the triangular kinds as
/// vacuously true (the sub-statements of the recursive characterizations).
pub fn holds(a: &Tensor, p: &Partition, kind: BlockKind) -> bool {
    if p.len() < 2 && kind.is_triangular() {
        return true;
    }
    tbtensor::is_blocked(a, p, kind).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize, r_min: usize) -> Partition {
    let comps: Vec<Vec<usize>> = tbtensor::compositions(n)
        .into_iter()
        .filter(|c| c.len() >= r_min)
        .collect();
    Partition::new(comps.choose(rng).unwrap().clone()).unwrap()
}

/// Integer-valued random tensor; each position is nonzero with probability
/// `density`, values drawn from `-range..=range` without zero.
pub fn random_tensor(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64, range: i32) -> Tensor {
    let mut entries = Vec::new();
    for idx in tbtensor::all_tuples(m, n) {
        if rng.gen_bool(density) {
            entries.push((idx, nonzero_int(rng, range)));
        }
    }
    Tensor::new(m, n, entries).unwrap()
}

pub fn random_nonnegative(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64) -> Tensor {
    let mut entries = Vec::new();
    for idx in tbtensor::all_tuples(m, n) {
        if rng.gen_bool(density) {
            entries.push((idx, rng.gen_range(0.1..2.0)));
        }
    }
    Tensor::new(m, n, entries).unwrap()
}

pub fn nonzero_int(rng: &mut ChaCha8Rng, range: i32) -> f64 {
    loop {
        let v = rng.gen_range(-range..=range);
        if v != 0 {
            return v as f64;
        }
    }
}

/// Random tensor with every entry forbidden by `kind` over `p` removed.
pub fn random_blocked(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    p: &Partition,
    kind: BlockKind,
    density: f64,
    range: i32,
) -> Tensor {
    let t = random_tensor(rng, m, n, density, range);
    let kept: Vec<(Vec<usize>, f64)> = t
        .entries()
        .filter(|(idx, _)| entry_allowed(idx, p, kind))
        .map(|(idx, v)| (idx.to_vec(), v))
        .collect();
    Tensor::new(m, n, kept).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> tbtensor::Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    tbtensor::Permutation::new(image).unwrap()
}

/// Unimodular integer matrix that is block upper triangular for `p`:
/// unit upper triangular times a permutation inside each diagonal block,
/// with random integer coupling above the blocks.
pub fn unimodular_blocked(rng: &mut ChaCha8Rng, p: &Partition) -> Matrix {
    let n = p.n();
    let mut m = Matrix::zeros(n);
    for j in 0..p.len() {
        let (s, e) = (p.block_start(j), p.block_end(j));
        let size = e - s;
        // L·U with unit diagonals, entries in {-1,0,1}.
        let mut l = Matrix::identity(size);
        let mut u = Matrix::identity(size);
        for a in 0..size {
            for b in 0..size {
                if a > b {
                    l.set(a, b, rng.gen_range(-1..=1) as f64);
                } else if a < b {
                    u.set(a, b, rng.gen_range(-1..=1) as f64);
                }
            }
        }
        let block = l.mul(&u).unwrap();
        for a in 0..size {
            for b in 0..size {
                m.set(s + a, s + b, block.get(a, b));
            }
        }
        for a in s..e {
            for b in e..n {
                m.set(a, b, rng.gen_range(-1..=1) as f64);
            }
        }
    }
    m
}

pub fn matrix_block(m: &Matrix, p: &Partition, j: usize) -> Matrix {
    let idx: Vec<usize> = (p.block_start(j)..p.block_end(j)).collect();
    m.principal(&idx)
}

/// Reducing-set condition straight from the definition, over all tuples.
pub fn brute_is_reducing(a: &Tensor, members: &[usize]) -> bool {
    let n = a.dim();
    let inside = |i: usize| members.contains(&i);
    tbtensor::all_tuples(a.order(), n)
        .all(|idx| !(inside(idx[0]) && idx[1..].iter().all(|&j| !inside(j))) || a.get(&idx) == 0.0)
}

/// Weakly-reducing condition straight from the definition.
pub fn brute_is_weakly_reducing(a: &Tensor, members: &[usize]) -> bool {
    let n = a.dim();
    let inside = |i: usize| members.contains(&i);
    tbtensor::all_tuples(a.order(), n)
        .all(|idx| !(inside(idx[0]) && idx[1..].iter().any(|&j| !inside(j))) || a.get(&idx) == 0.0)
}

/// Every proper nonempty subset of `0..n`.
pub fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..(1u32 << n) - 1)
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

/// `s·I - B` with `B` nonnegative irreducible and `s` above its spectral
/// radius (bounded by the max row sum).
pub fn random_irreducible_m_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut b = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.gen_bool(0.6) {
                    b.set(i, j, rng.gen_range(1..=3) as f64);
                }
            }
        }
        if n > 1 && !b.is_irreducible() {
            continue;
        }
        let row_max = (0..n)
            .map(|i| b.row(i).iter().sum::<f64>())
            .fold(0.0, f64::max);
        let s = row_max + rng.gen_range(1..=3) as f64;
        let mut m = Matrix::identity(n).scale(s);
        m = m.sub(&b).unwrap();
        return m;
    }
}

/// Random triangular tensor: blocked over singletons for a random kind
/// among the first and second types, upper or lower.
pub fn random_triangular(rng: &mut ChaCha8Rng, m: usize, n: usize) -> (Tensor, BlockKind) {
    let kinds = [
        BlockKind::Utb1,
        BlockKind::Utb2,
        BlockKind::Ltb1,
        BlockKind::Ltb2,
    ];
    let kind = *kinds.choose(rng).unwrap();
    let p = Partition::singletons(n).unwrap();
    let mut t = random_blocked(rng, m, n, &p, kind, 0.3, 3);
    // Make sure every diagonal entry is present so the determinant is nonzero.
    let mut entries: Vec<(Vec<usize>, f64)> = t
        .entries()
        .filter(|(i, _)| !i.iter().all(|&j| j == i[0]))
        .map(|(i, v)| (i.to_vec(), v))
        .collect();
    for i in 0..n {
        entries.push((vec![i; m], nonzero_int(rng, 3)));
    }
    t = Tensor::new(m, n, entries).unwrap();
    (t, kind)
}

/// Nonnegative tensor whose entries lie inside the diagonal blocks of `p`,
/// each block weakly irreducible.
pub fn random_diagonal_blocked(rng: &mut ChaCha8Rng, m: usize, p: &Partition) -> Tensor {
    let n = p.n();
    let mut entries = Vec::new();
    for j in 0..p.len() {
        let (s, e) = (p.block_start(j), p.block_end(j));
        let size = e - s;
        // A cycle through the block keeps it weakly irreducible.
        for a in 0..size {
            let mut idx = vec![s + a; m];
            idx[1] = s + (a + 1) % size;
            entries.push((idx, rng.gen_range(0.5..2.0)));
        }
        for idx in tbtensor::all_tuples(m, size) {
            let shifted: Vec<usize> = idx.iter().map(|i| i + s).collect();
            if rng.gen_bool(0.2) && !entries.iter().any(|(k, _)| *k == shifted) {
                entries.push((shifted, rng.gen_range(0.1..2.0)));
            }
        }
    }
    Tensor::new(m, n, entries).unwrap()
}

/// 3-uniform hypergraph with `comps` components, each a connected chain of
/// edges over 3 to 5 vertices, with vertices shuffled.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, comps: usize) -> tbtensor::Hypergraph {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for _ in 0..comps {
        let size = rng.gen_range(3..=5);
        groups.push((next..next + size).collect());
        next += size;
    }
    let n = next;
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for g in &groups {
        for w in 0..g.len() - 2 {
            edges.push(vec![label[g[w]], label[g[w + 1]], label[g[w + 2]]]);
        }
        if g.len() >= 4 && rng.gen_bool(0.5) {
            edges.push(vec![label[g[0]], label[g[1]], label[g[g.len() - 1]]]);
        }
    }
    tbtensor::Hypergraph::new(3, n, edges).unwrap()
}

/// Minimum of `‖Ax‖` over a dense grid of complex unit vectors in C^2
/// (global phase fixed), refined by a local grid around the best point.
pub fn grid_min_norm_2d(a: &Tensor) -> f64 {
    use num_complex::Complex64;
    assert_eq!(a.dim(), 2);
    let eval = |theta: f64, phi: f64| -> f64 {
        let x = [
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), phi),
        ];
        let mut y = [Complex64::new(0.0, 0.0); 2];
        for (idx, v) in a.entries() {
            y[idx[0]] += v * idx[1..].iter().map(|&j| x[j]).product::<Complex64>();
        }
        (y[0].norm_sqr() + y[1].norm_sqr()).sqrt()
    };
    let (nt, np) = (400, 800);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=nt {
        for j in 0..np {
            let (t, p) = (
                half_pi * i as f64 / nt as f64,
                two_pi * j as f64 / np as f64,
            );
            let f = eval(t, p);
            if f < best.0 {
                best = (f, t, p);
            }
        }
    }
    let (mut dt, mut dp) = (half_pi / nt as f64, two_pi / np as f64);
    for _ in 0..30 {
        let (_, t0, p0) = best;
        for i in -4..=4 {
            for j in -4..=4 {
                let t = (t0 + dt * i as f64 / 4.0).clamp(0.0, half_pi);
                let p = p0 + dp * j as f64 / 4.0;
                let f = eval(t, p);
                if f < best.0 {
                    best = (f, t, p);
                }
            }
        }
        dt /= 2.0;
        dp /= 2.0;
    }
    best.0
}

/// Block upper triangular nonsingular M-matrix: irreducible nonsingular
/// M-matrix diagonal blocks, nonpositive integer coupling above them.
pub fn random_blocked_m_matrix(rng: &mut ChaCha8Rng, p: &Partition) -> Matrix {
    let n = p.n();
    let mut m = Matrix::zeros(n);
    for j in 0..p.len() {
        let (s, e) = (p.block_start(j), p.block_end(j));
        let block = random_irreducible_m_matrix(rng, e - s);
        for a in 0..e - s {
            for b in 0..e - s {
                m.set(s + a, s + b, block.get(a, b));
            }
        }
        for a in s..e {
            for b in e..n {
                m.set(a, b, -(rng.gen_range(0..=2) as f64));
            }
        }
    }
    m
}

/// Determinant by cofactor expansion.
pub fn cofactor_det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    if n == 0 {
        return 1.0;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<f64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * rows[0][c] * cofactor_det(&minor)
        })
        .sum()
}

/// Every principal minor, by subset.
pub fn principal_minors(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    (1..(1u32 << n))
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let rows: Vec<Vec<f64>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| m.get(i, j)).collect())
                .collect();
            cofactor_det(&rows)
        })
        .collect()
}

pub fn oracle_is_z_matrix(m: &Matrix) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j) <= 0.0))
}

/// Z-matrix with all principal minors positive.
pub fn oracle_is_nonsingular_m_matrix(m: &Matrix) -> bool {
    oracle_is_z_matrix(m) && principal_minors(m).iter().all(|&d| d > 1e-9)
}

/// Z-matrix with all principal minors nonnegative.
pub fn oracle_is_m_matrix(m: &Matrix) -> bool {
    oracle_is_z_matrix(m) && principal_minors(m).iter().all(|&d| d > -1e-9)
}
