//! Independent oracles for the integration tests. Nothing here calls the
//! crate's enumeration or canonical-form code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Adjacency lists from an edge list on `n` vertices.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn rooted_string(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| rooted_string(adj, w, Some(v)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// The one or two centres, found by repeatedly stripping leaves.
fn centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Canonical string of a free tree: the least rooted parenthesis string over
/// the centres.
pub fn tree_certificate(n: usize, edges: &[(usize, usize)]) -> String {
    let adj = adjacency(n, edges);
    centres(&adj)
        .into_iter()
        .map(|c| rooted_string(&adj, c, None))
        .min()
        .unwrap_or_default()
}

/// Decodes a Prüfer sequence over `0..n` into an edge list.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Isomorphism classes of labelled trees on `n` vertices with maximum degree
/// four, by running over all `n^(n−2)` Prüfer sequences.
pub fn prufer_classes(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if n <= 2 {
        let edges: Vec<(usize, usize)> = if n == 2 { vec![(0, 1)] } else { vec![] };
        out.insert(tree_certificate(n, &edges));
        return out;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut counts = vec![0usize; n];
    counts[0] = len;
    loop {
        // Degree of v is 1 + occurrences of v in the sequence.
        if counts.iter().all(|&c| c <= 3) {
            out.insert(tree_certificate(n, &prufer_decode(&seq, n)));
        }
        let mut k = 0;
        loop {
            if k == len {
                return out;
            }
            counts[seq[k]] -= 1;
            seq[k] += 1;
            if seq[k] < n {
                counts[seq[k]] += 1;
                break;
            }
            seq[k] = 0;
            counts[0] += 1;
            k += 1;
        }
    }
}

/// Classes on `n` vertices grown from the classes on `n − 1` vertices by
/// attaching a leaf wherever the degree allows. Returns one edge list per
/// class, keyed by certificate.
pub fn leaf_addition_classes(n: usize) -> Vec<(String, Vec<(usize, usize)>)> {
    let mut level: Vec<(String, Vec<(usize, usize)>)> = vec![(tree_certificate(1, &[]), vec![])];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (_, edges) in &level {
            let adj = adjacency(size - 1, edges);
            for v in 0..size - 1 {
                if adj[v].len() >= 4 {
                    continue;
                }
                let mut e = edges.clone();
                e.push((v, size - 1));
                let cert = tree_certificate(size, &e);
                if seen.insert(cert.clone()) {
                    next.push((cert, e));
                }
            }
        }
        level = next;
    }
    level
}

fn multiply(a: &[BigUint], b: &[BigUint], cap: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); cap + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(cap + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(x^k)` truncated at degree `cap`.
fn substitute_power(f: &[BigUint], k: usize, cap: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); cap + 1];
    for (i, x) in f.iter().enumerate() {
        if i * k <= cap {
            out[i * k] = x.clone();
        }
    }
    out
}

/// Pólya's cycle index of `S_m` for `m ≤ 4`, applied to `f`, truncated.
fn cycle_index_sym(m: usize, f: &[BigUint], cap: usize) -> Vec<BigUint> {
    let p = |k: usize| substitute_power(f, k, cap);
    let (a1, a2, a3, a4) = (p(1), p(2), p(3), p(4));
    let mul = |x: &[BigUint], y: &[BigUint]| multiply(x, y, cap);
    let add = |acc: &mut Vec<BigUint>, x: Vec<BigUint>, c: u32| {
        for (s, t) in acc.iter_mut().zip(x) {
            *s += t * c;
        }
    };
    let mut acc = vec![BigUint::zero(); cap + 1];
    let den: u32 = match m {
        0 => {
            acc[0] = BigUint::one();
            return acc;
        }
        1 => {
            add(&mut acc, a1, 1);
            1
        }
        2 => {
            add(&mut acc, mul(&a1, &a1), 1);
            add(&mut acc, a2, 1);
            2
        }
        3 => {
            add(&mut acc, mul(&mul(&a1, &a1), &a1), 1);
            add(&mut acc, mul(&a1, &a2), 3);
            add(&mut acc, a3, 2);
            6
        }
        4 => {
            let a1sq = mul(&a1, &a1);
            add(&mut acc, mul(&a1sq, &a1sq), 1);
            add(&mut acc, mul(&a1sq, &a2), 6);
            add(&mut acc, mul(&a2, &a2), 3);
            add(&mut acc, mul(&a1, &a3), 8);
            add(&mut acc, a4, 6);
            24
        }
        _ => unreachable!("only m <= 4"),
    };
    acc.into_iter().map(|x| x / den).collect()
}

/// Counts of rooted trees whose vertices have at most three children,
/// `r[0] = 1` standing for the empty branch, up to `cap` vertices.
pub fn rooted_counts(cap: usize) -> Vec<BigUint> {
    let mut r = vec![BigUint::zero(); cap + 1];
    r[0] = BigUint::one();
    for n in 1..=cap {
        // Coefficient of x^(n−1) in Z(S_3; R), which only involves r[..n].
        let z = cycle_index_sym(3, &r[..n], n - 1);
        r[n] = z[n - 1].clone();
    }
    r
}

/// Alkane counts by centroid decomposition and the cycle index of `S_4`.
pub fn otter_alkane_count(n: usize) -> BigUint {
    if n <= 2 {
        return BigUint::one();
    }
    let r = rooted_counts(n);
    // Unicentroidal: at most four branches, each with fewer than n/2 vertices.
    let mut branch = vec![BigUint::zero(); n];
    branch[0] = BigUint::one();
    for k in 1..n {
        if 2 * k < n {
            branch[k] = r[k].clone();
        }
    }
    let uni = cycle_index_sym(4, &branch, n - 1)[n - 1].clone();
    let bi = if n.is_multiple_of(2) {
        let h = &r[n / 2];
        h * (h + BigUint::one()) / BigUint::from(2u32)
    } else {
        BigUint::zero()
    };
    uni + bi
}

/// Horner evaluation of a polynomial given as (exponent, coefficient) terms,
/// variable by variable.
pub fn horner_eval<T: Clone>(
    terms: &[(Vec<u32>, T)],
    point: &[T],
    zero: T,
    add: impl Fn(&T, &T) -> T + Copy,
    mul: impl Fn(&T, &T) -> T + Copy,
) -> T {
    if point.is_empty() {
        return terms.iter().fold(zero, |acc, (_, c)| add(&acc, c));
    }
    let x = &point[0];
    let max = terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0);
    let mut acc = zero.clone();
    for d in (0..=max).rev() {
        let slice: Vec<(Vec<u32>, T)> = terms
            .iter()
            .filter(|(e, _)| e[0] == d)
            .map(|(e, c)| (e[1..].to_vec(), c.clone()))
            .collect();
        let inner = horner_eval(&slice, &point[1..], zero.clone(), add, mul);
        acc = add(&mul(&acc, x), &inner);
    }
    acc
}
