use super::{EdgeCountHistogram, Method, StatisticKind, StatisticValue};
use crate::error::{Error, Result};
use crate::model::AdjacencySample;

/// Largest subgraph order handled by enumeration.
pub const MAX_ORDER: usize = 8;

fn check_order(k: usize) -> Result<()> {
    if !(3..=MAX_ORDER).contains(&k) {
        return Err(Error::UnsupportedOrder { k, max: MAX_ORDER });
    }
    Ok(())
}

/// Calls `f` on every k-subset of 0..n in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// Bit of local pair (a, b), a < b < k, in a k-vertex pattern.
fn local_bit(a: usize, b: usize, k: usize) -> u32 {
    (a * k - a * (a + 1) / 2 + (b - a - 1)) as u32
}

/// Hamilton cycles on vertices 0..k as vertex sequences starting at 0; each
/// undirected cycle appears once, (k − 1)!/2 in total.
pub fn hamilton_cycles(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..k).collect();
    permute(&mut rest, 0, &mut |perm| {
        if perm.first() < perm.last() {
            let mut cycle = vec![0];
            cycle.extend_from_slice(perm);
            out.push(cycle);
        }
    });
    out
}

fn permute(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, f);
        v.swap(start, i);
    }
}

fn cycle_masks(k: usize) -> Vec<u32> {
    hamilton_cycles(k)
        .iter()
        .map(|c| {
            (0..k).fold(0u32, |m, i| {
                let (a, b) = (c[i], c[(i + 1) % k]);
                m | 1 << local_bit(a.min(b), a.max(b), k)
            })
        })
        .collect()
}

// Present-edge mask of the subset, over its local pairs.
fn subset_mask(g: &AdjacencySample, s: &[usize]) -> u32 {
    let k = s.len();
    let mut mask = 0u32;
    for a in 0..k {
        for b in a + 1..k {
            if g.has_edge(s[a], s[b]) {
                mask |= 1 << local_bit(a, b, k);
            }
        }
    }
    mask
}

fn degenerate_value(kind: StatisticKind, k: usize) -> StatisticValue {
    StatisticValue { kind, k, value: 0.0, method: Method::Enumeration, degenerate: true }
}

/// τ_k(G): sum over k-subsets S of ∏_{{i,j} ⊂ S} ā_{ij}.
pub fn signed_clique_stat(g: &AdjacencySample, p: f64, k: usize) -> Result<StatisticValue> {
    check_order(k)?;
    if g.n() < k {
        return Ok(degenerate_value(StatisticKind::SignedClique, k));
    }
    let mut h = EdgeCountHistogram::new(k * (k - 1) / 2);
    for_each_combination(g.n(), k, |s| h.counts[subset_mask(g, s).count_ones() as usize] += 1);
    Ok(StatisticValue {
        kind: StatisticKind::SignedClique,
        k,
        value: h.signed_sum(p),
        method: Method::Enumeration,
        degenerate: false,
    })
}

/// κ_k(G): sum over k-subsets and their Hamilton cycles C of ∏_{e ∈ C} ā_e.
pub fn signed_cycle_stat(g: &AdjacencySample, p: f64, k: usize) -> Result<StatisticValue> {
    check_order(k)?;
    if g.n() < k {
        return Ok(degenerate_value(StatisticKind::SignedCycle, k));
    }
    let cycles = cycle_masks(k);
    let mut h = EdgeCountHistogram::new(k);
    for_each_combination(g.n(), k, |s| {
        let mask = subset_mask(g, s);
        for c in &cycles {
            h.counts[(mask & c).count_ones() as usize] += 1;
        }
    });
    Ok(StatisticValue {
        kind: StatisticKind::SignedCycle,
        k,
        value: h.signed_sum(p),
        method: Method::Enumeration,
        degenerate: false,
    })
}

/// Number of k-cliques.
pub fn plain_clique_count(g: &AdjacencySample, k: usize) -> Result<StatisticValue> {
    check_order(k)?;
    if g.n() < k {
        return Ok(degenerate_value(StatisticKind::PlainCount, k));
    }
    let full = k * (k - 1) / 2;
    let mut count = 0u64;
    for_each_combination(g.n(), k, |s| {
        if subset_mask(g, s).count_ones() as usize == full {
            count += 1;
        }
    });
    Ok(StatisticValue {
        kind: StatisticKind::PlainCount,
        k,
        value: count as f64,
        method: Method::Enumeration,
        degenerate: false,
    })
}
