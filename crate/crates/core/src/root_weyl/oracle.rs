//! Word-search oracles for the extended affine Weyl group.
//!
//! Nothing here uses the closed length formula: lengths come from
//! breadth-first search over words in the affine simple reflections, and Ω
//! is found as the set of elements normalizing those reflections.

use std::collections::HashMap;

use super::{ExtAffineElement, RootDatum};

/// All elements of the affine Coxeter group of word length `≤ max_len`,
/// with their lengths.
pub fn bfs_ball(datum: &RootDatum, max_len: usize) -> HashMap<ExtAffineElement, usize> {
    let gens: Vec<ExtAffineElement> = datum.affine_reflections().iter().map(|a| a.element.clone()).collect();
    let mut seen = HashMap::new();
    seen.insert(datum.identity(), 0);
    let mut frontier = vec![datum.identity()];
    for depth in 1..=max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = datum.mul(x, s);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), depth);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// BFS lengths together with one lexicographically smallest reduced word per
/// element (words compared letter by letter, left to right).
pub fn bfs_words(datum: &RootDatum, max_len: usize) -> HashMap<ExtAffineElement, Vec<usize>> {
    let gens: Vec<(usize, ExtAffineElement)> =
        datum.affine_reflections().iter().map(|a| (a.label, a.element.clone())).collect();
    let mut best: HashMap<ExtAffineElement, Vec<usize>> = HashMap::new();
    best.insert(datum.identity(), vec![]);
    let mut frontier = vec![datum.identity()];
    for _ in 1..=max_len {
        let mut layer: HashMap<ExtAffineElement, Vec<usize>> = HashMap::new();
        for x in &frontier {
            let wx = best[x].clone();
            for (label, s) in &gens {
                let y = datum.mul(x, s);
                if best.contains_key(&y) {
                    continue;
                }
                let mut w = wx.clone();
                w.push(*label);
                match layer.get(&y) {
                    Some(old) if *old <= w => {}
                    _ => {
                        layer.insert(y, w);
                    }
                }
            }
        }
        frontier = layer.keys().cloned().collect();
        best.extend(layer);
    }
    best
}

/// Elements `(λ, w)` with entries of `λ` in `[-bound, bound]` that permute the
/// affine simple reflections under conjugation.
pub fn normalizers(datum: &RootDatum, bound: i64) -> Vec<ExtAffineElement> {
    let n = datum.cochar_rank();
    let gens: Vec<ExtAffineElement> = datum.affine_reflections().iter().map(|a| a.element.clone()).collect();
    let mut out = Vec::new();
    let mut lambda = vec![-bound; n];
    loop {
        for w in 0..datum.weyl_order() {
            let x = ExtAffineElement { lambda: lambda.clone(), w };
            let xi = datum.inverse(&x);
            let ok = gens.iter().all(|s| {
                let c = datum.mul(&datum.mul(&x, s), &xi);
                gens.contains(&c)
            });
            if ok {
                out.push(x);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return out;
            }
            if lambda[k] < bound {
                lambda[k] += 1;
                break;
            }
            lambda[k] = -bound;
            k += 1;
        }
    }
}

/// Products of the given Ω-generators with exponents in `[-k, k]`.
pub fn omega_ball(datum: &RootDatum, generators: &[ExtAffineElement], k: i64) -> Vec<ExtAffineElement> {
    let mut elems = vec![datum.identity()];
    for g in generators {
        let gi = datum.inverse(g);
        let mut next = Vec::new();
        for e in &elems {
            let mut x = e.clone();
            next.push(x.clone());
            for _ in 0..k {
                x = datum.mul(&x, g);
                next.push(x.clone());
            }
            let mut y = e.clone();
            for _ in 0..k {
                y = datum.mul(&y, &gi);
                next.push(y.clone());
            }
        }
        next.sort();
        next.dedup();
        elems = next;
    }
    elems
}

/// Ω-generators found without the length formula: for each configured
/// translation class, the smallest normalizer of the affine reflections in
/// that class modulo the coroot lattice.
pub fn omega_generators_oracle(datum: &RootDatum) -> Vec<ExtAffineElement> {
    let cands = normalizers(datum, 1);
    datum
        .spec()
        .omega_translations
        .iter()
        .filter_map(|g| {
            cands
                .iter()
                .find(|c| {
                    let diff: Vec<i64> = c.lambda.iter().zip(g).map(|(a, b)| a - b).collect();
                    in_coroot_lattice(datum, &diff)
                })
                .cloned()
        })
        .collect()
}

/// Membership in the integer span of the simple coroots (brute force over
/// small coefficient vectors, adequate for the low-rank presets).
pub fn in_coroot_lattice(datum: &RootDatum, v: &[i64]) -> bool {
    let r = datum.rank();
    if r == 0 {
        return v.iter().all(|&x| x == 0);
    }
    let bound: i64 = v.iter().map(|x| x.abs()).sum::<i64>() + 2;
    let mut c = vec![-bound; r];
    loop {
        let mut s = vec![0i64; v.len()];
        for (i, ci) in c.iter().enumerate() {
            for (a, b) in s.iter_mut().zip(&datum.simple_coroots()[i]) {
                *a += ci * b;
            }
        }
        if s == v {
            return true;
        }
        let mut k = 0;
        loop {
            if k == r {
                return false;
            }
            if c[k] < bound {
                c[k] += 1;
                break;
            }
            c[k] = -bound;
            k += 1;
        }
    }
}

/// Compares the closed length formula with BFS on `ball × Ω-ball`.
/// Returns the first disagreement `(element, formula, oracle)`.
pub fn check_length_formula(
    datum: &RootDatum,
    max_len: usize,
    omega_power: i64,
) -> std::result::Result<usize, (ExtAffineElement, usize, usize)> {
    let ball = bfs_ball(datum, max_len);
    let omegas = omega_ball(datum, &omega_generators_oracle(datum), omega_power);
    let mut checked = 0;
    for (w, &len) in &ball {
        for om in &omegas {
            let x = datum.mul(w, om);
            let f = datum.length(&x);
            if f != len {
                return Err((x, f, len));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
