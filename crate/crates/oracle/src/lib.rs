//! Slow reference computations for tests.
//!
//! Nothing here shares code with `aalpha-core`: strong connectivity is
//! decided by boolean matrix closure or plain BFS, and Perron roots come from
//! the characteristic polynomial (Faddeev–LeVerrier) followed by bisection.
//! Everything is written for tiny inputs (n ≤ 5) and favours obviousness over
//! speed.

pub type Dense = Vec<Vec<f64>>;

/// Boolean adjacency matrix of an arc list on `n` vertices.
pub fn adjacency(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in arcs {
        adj[u][v] = true;
    }
    adj
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut c = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = (0..n).any(|k| a[i][k] && b[k][j]);
        }
    }
    c
}

/// Reflexive-transitive closure by repeated squaring of `I ∨ A`.
pub fn reachability_closure(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || adj[i][j]).collect())
        .collect();
    loop {
        let next = bool_mul(&r, &r);
        if next == r {
            return r;
        }
        r = next;
    }
}

pub fn strongly_connected_by_closure(n: usize, arcs: &[(usize, usize)]) -> bool {
    let closure = reachability_closure(&adjacency(n, arcs));
    closure.iter().all(|row| row.iter().all(|&b| b))
}

/// Breadth-first search from every vertex.
pub fn strongly_connected_by_bfs(n: usize, arcs: &[(usize, usize)]) -> bool {
    let adj = adjacency(n, arcs);
    (0..n).all(|s| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if adj[u][v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().all(|&b| b)
    })
}

/// Every labeled simple digraph on `n` vertices, as arc lists.
pub fn all_digraphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    (0u64..1 << slots.len())
        .map(|mask| {
            slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &a)| a)
                .collect()
        })
        .collect()
}

/// Dense `αD + (1−α)A` built straight from the arc list.
pub fn alpha_matrix(n: usize, arcs: &[(usize, usize)], alpha: f64) -> Dense {
    let mut m = vec![vec![0.0; n]; n];
    for &(u, v) in arcs {
        m[u][v] = 1.0 - alpha;
        m[u][u] += alpha;
    }
    m
}

fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// Coefficients `c[0..=n]` of `det(xI − A) = Σ c[i] xⁱ` by the
/// Faddeev–LeVerrier recurrence.
pub fn charpoly(a: &Dense) -> Vec<f64> {
    let n = a.len();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace: f64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -trace / k as f64;
    }
    c
}

pub fn eval_poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Largest real root of a monic polynomial known to lie in `[lo, hi]`.
///
/// Scans down from `hi` in small steps until the sign flips, then bisects.
/// Adequate for the simple dominant root of a Perron matrix.
pub fn largest_real_root(c: &[f64], lo: f64, hi: f64) -> f64 {
    let step = 1e-4;
    let mut upper = hi;
    assert!(eval_poly(c, upper) > 0.0, "no sign change above the root");
    let mut x = hi;
    loop {
        x -= step;
        if eval_poly(c, x) <= 0.0 {
            break;
        }
        upper = x;
        assert!(x > lo - 1.0, "root not bracketed in [{lo}, {hi}]");
    }
    let (mut a, mut b) = (x, upper);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if eval_poly(c, mid) > 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

/// Perron root of `αD + (1−α)A` via the characteristic polynomial, bracketed
/// in `[0, Δ⁺ + 1]`.
pub fn perron_root(n: usize, arcs: &[(usize, usize)], alpha: f64) -> f64 {
    let mut out = vec![0usize; n];
    for &(u, _) in arcs {
        out[u] += 1;
    }
    let max_out = out.iter().copied().max().unwrap_or(0) as f64;
    largest_real_root(&charpoly(&alpha_matrix(n, arcs, alpha)), 0.0, max_out + 1.0)
}

/// Largest real root of the characteristic polynomial of an arbitrary dense
/// nonnegative matrix, bracketed by its largest row sum.
pub fn perron_root_dense(a: &Dense) -> f64 {
    let bound = a
        .iter()
        .map(|row| row.iter().sum::<f64>())
        .fold(0.0, f64::max);
    largest_real_root(&charpoly(a), 0.0, bound + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_d1_adjacency() {
        // 0→1, 0→2, 1→2, 2→0
        let c = charpoly(&alpha_matrix(3, &[(0, 1), (0, 2), (1, 2), (2, 0)], 0.0));
        let expect = [-1.0, -1.0, 0.0, 1.0];
        for (a, b) in c.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn plastic_number() {
        let r = largest_real_root(&[-1.0, -1.0, 0.0, 1.0], 0.0, 3.0);
        assert!((r - 1.324_717_957_244_746).abs() < 1e-12);
    }

    #[test]
    fn closure_and_bfs_agree_on_three_vertices() {
        for arcs in all_digraphs(3) {
            assert_eq!(
                strongly_connected_by_closure(3, &arcs),
                strongly_connected_by_bfs(3, &arcs)
            );
        }
    }
}
