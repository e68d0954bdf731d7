//! Brute-force conjugacy oracle over a small prime field.
//!
//! For eigenvalues with q not a root of unity, `N` is a tuple of maps
//! `V_x → V_{qx}` and the centralizer of `s` is `∏ GL(V_x)`. Orbits of this
//! type-A quiver action do not depend on the field, so counting them over
//! `F_p` by explicit orbit computation gives the number of classes.

use std::collections::BTreeMap;

/// Vertex `(orbit, exponent)` with the dimension of its eigenspace.
pub type Vertex = ((String, i64), usize);

type Mat = Vec<Vec<u64>>;

/// Orbits of `∏ GL(V_x)(F_p)` on `⊕ Hom(V_x, V_{qx})`, each described by
/// the ranks of the composite maps `V_x → V_{q^k x}`. The map has one entry
/// per orbit; a rank vector seen twice would mean the invariants fail to
/// separate orbits.
pub fn quiver_orbits(vertices: &[Vertex], p: u64) -> Vec<BTreeMap<(String, i64, i64), usize>> {
    let dims: BTreeMap<(String, i64), usize> = vertices.iter().cloned().collect();
    let arrows: Vec<((String, i64), (String, i64))> = dims
        .keys()
        .filter_map(|(o, i)| {
            let t = (o.clone(), i + 1);
            dims.contains_key(&t).then(|| ((o.clone(), *i), t))
        })
        .collect();
    let shapes: Vec<(usize, usize)> = arrows.iter().map(|(s, t)| (dims[t], dims[s])).collect();
    let sizes: Vec<usize> = shapes.iter().map(|(r, c)| r * c).collect();
    let total: usize = sizes.iter().sum();
    let count = (p as usize).pow(total as u32);

    let decode = |mut code: usize| -> Vec<Mat> {
        shapes
            .iter()
            .map(|&(r, c)| {
                (0..r)
                    .map(|_| {
                        (0..c)
                            .map(|_| {
                                let x = (code % p as usize) as u64;
                                code /= p as usize;
                                x
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let encode = |ms: &[Mat]| -> usize {
        let mut code = 0;
        let mut mult = 1;
        for m in ms {
            for row in m {
                for &x in row {
                    code += x as usize * mult;
                    mult *= p as usize;
                }
            }
        }
        code
    };

    let groups: BTreeMap<(String, i64), Vec<(Mat, Mat)>> =
        dims.iter().map(|(v, &d)| (v.clone(), gl(d, p))).collect();
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for code in 0..count {
        let ms = decode(code);
        for (v, elems) in &groups {
            for (g, ginv) in elems {
                // g acts on maps out of v by precomposing with g⁻¹ and on maps into v by g
                let moved: Vec<Mat> = arrows
                    .iter()
                    .zip(&ms)
                    .map(|((s, t), m)| {
                        let mut m = m.clone();
                        if t == v {
                            m = mat_mul(g, &m, p);
                        }
                        if s == v {
                            m = mat_mul(&m, ginv, p);
                        }
                        m
                    })
                    .collect();
                let (a, b) = (find(&mut parent, code), find(&mut parent, encode(&moved)));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out = Vec::new();
    for code in 0..count {
        if find(&mut parent, code) != code {
            continue;
        }
        out.push(rank_vector(&dims, &arrows, &decode(code), p));
    }
    out
}

fn rank_vector(
    dims: &BTreeMap<(String, i64), usize>,
    arrows: &[((String, i64), (String, i64))],
    ms: &[Mat],
    p: u64,
) -> BTreeMap<(String, i64, i64), usize> {
    let arrow_from: BTreeMap<&(String, i64), &Mat> = arrows.iter().map(|(s, _)| s).zip(ms).collect();
    let mut out = BTreeMap::new();
    for (v, &d) in dims {
        let (o, i) = v;
        out.insert((o.clone(), *i, *i), d);
        let mut comp: Mat = identity(d);
        let mut cur = v.clone();
        while let Some(m) = arrow_from.get(&cur) {
            comp = mat_mul(m, &comp, p);
            cur = (cur.0.clone(), cur.1 + 1);
            out.insert((o.clone(), *i, cur.1), rank(&comp, p));
        }
    }
    out
}

fn identity(d: usize) -> Mat {
    (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<u64>() % p).collect())
        .collect()
}

fn inv_mod(x: u64, p: u64) -> u64 {
    (1..p).find(|y| x * y % p == 1).expect("p prime")
}

fn rank(m: &Mat, p: u64) -> usize {
    let mut m = m.clone();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for j in 0..cols {
            m[r][j] = m[r][j] * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// All of `GL_d(F_p)` with inverses.
fn gl(d: usize, p: u64) -> Vec<(Mat, Mat)> {
    let n = (p as usize).pow((d * d) as u32);
    let mut out = Vec::new();
    for code in 0..n {
        let mut c = code;
        let m: Mat = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let x = (c % p as usize) as u64;
                        c /= p as usize;
                        x
                    })
                    .collect()
            })
            .collect();
        if rank(&m, p) == d {
            out.push(m);
        }
    }
    let id = identity(d);
    let inverse = |m: &Mat| out.iter().find(|x| mat_mul(m, x, p) == id).cloned().expect("group");
    out.iter().map(|m| (m.clone(), inverse(m))).collect()
}
