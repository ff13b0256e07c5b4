//! Matching backends.
//!
//! Two classical engines behind thin deterministic wrappers: general
//! max-weight matching (blossom algorithm, via the `mwmatching` port of the
//! van Rossum reference implementation) and rectangular min-cost assignment
//! (Hungarian potentials). The cost solver's gadget reduction and the record
//! assembly's slot-to-component assignment sit on top of these.

/// Cost sentinel for forbidden assignment cells. Large enough to dominate any
/// real total, small enough that accumulated potentials cannot overflow i64.
pub const FORBIDDEN: i64 = 1_000_000_000_000_000;

/// Maximum-weight matching on a general graph.
///
/// `edges` are (u, v, weight) over vertices `0..n`; `maximize_cardinality`
/// asks for maximum weight among maximum-cardinality matchings. Returns the
/// mate of each vertex. Deterministic in the edge order.
pub fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    maximize_cardinality: bool,
) -> Vec<Option<usize>> {
    if edges.is_empty() {
        return vec![None; n];
    }
    let converted: Vec<(usize, usize, i32)> = edges
        .iter()
        .map(|&(u, v, w)| {
            let w32 = i32::try_from(w).expect("matching weight fits i32");
            (u, v, w32)
        })
        .collect();
    let mut engine = mwmatching::Matching::new(converted);
    if maximize_cardinality {
        engine.max_cardinality();
    }
    let mates = engine.solve();
    let mut out = vec![None; n];
    for (v, &m) in mates.iter().enumerate() {
        if m != mwmatching::SENTINEL && v < n {
            out[v] = Some(m);
        }
    }
    out
}

/// Minimum-weight perfect matching; `None` if no perfect matching exists.
/// Returns (total weight, mate array).
pub fn min_weight_perfect_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
) -> Option<(i64, Vec<usize>)> {
    if n == 0 {
        return Some((0, Vec::new()));
    }
    if n % 2 != 0 {
        return None;
    }
    let negated: Vec<(usize, usize, i64)> = edges.iter().map(|&(u, v, w)| (u, v, -w)).collect();
    let mates = max_weight_matching(n, &negated, true);
    let mut out = vec![usize::MAX; n];
    for (v, m) in mates.iter().enumerate() {
        match m {
            Some(w) => out[v] = *w,
            None => return None,
        }
    }
    // total over matched pairs, each counted once; callers pass no parallel edges
    let mut total = 0i64;
    for &(u, v, w) in edges {
        let (a, b) = (u.min(v), u.max(v));
        if out[a] == b {
            total += w;
        }
    }
    Some((total, out))
}

/// Minimum-cost assignment of `rows` to distinct columns (rows ≤ cols).
///
/// Cells with cost ≥ `FORBIDDEN` are unusable; returns `None` when every
/// complete assignment uses one. Classic Hungarian algorithm with potentials.
pub fn min_cost_assignment(cost: &[Vec<i64>]) -> Option<(i64, Vec<usize>)> {
    let rows = cost.len();
    if rows == 0 {
        return Some((0, Vec::new()));
    }
    let cols = cost[0].len();
    if rows > cols {
        return None;
    }
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut matched = vec![0usize; cols + 1]; // row matched to each column, 1-based; 0 = free
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        matched[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![i64::MAX; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = matched[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[matched[j]] += delta;
                    v[j] -= delta;
                } else if minv[j] != i64::MAX {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched[j0] = matched[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![usize::MAX; rows];
    let mut total = 0i64;
    for j in 1..=cols {
        if matched[j] != 0 {
            assign[matched[j] - 1] = j - 1;
        }
    }
    for (i, &j) in assign.iter().enumerate() {
        debug_assert!(j != usize::MAX);
        if cost[i][j] >= FORBIDDEN {
            return None;
        }
        total += cost[i][j];
    }
    Some((total, assign))
}
