use serde::Serialize;

use super::class::{tv, FixedPointClass, QConvention, SteinbergModel};
use crate::error::{Error, Result};
use crate::exact_arith::MultiLaurent;
use crate::hecke::HeckeElement;
use crate::root_weyl::{load_datum, oracle::bfs_ball, oracle::omega_ball};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    /// First counterexample, when any.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelReport {
    pub convention: QConvention,
    pub twist: (i32, i32),
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl ModelReport {
    /// `ModelInconsistent` naming the first failed check.
    pub fn require(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::ModelInconsistent(format!(
                "{}: {}",
                c.name,
                c.detail.clone().unwrap_or_default()
            ))),
        }
    }
}

struct Recorder {
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn run(&mut self, name: &str, cases: impl IntoIterator<Item = (String, bool)>) {
        let mut checked = 0;
        let mut detail = None;
        for (label, ok) in cases {
            checked += 1;
            if !ok {
                detail = Some(label);
                break;
            }
        }
        self.checks.push(CheckResult { name: name.into(), passed: detail.is_none(), checked, detail });
    }
}

fn q() -> MultiLaurent {
    tv(0, 2)
}

fn qm1() -> MultiLaurent {
    &tv(0, 2) - &tv(0, 0)
}

/// `(θ_n − θ_{−n}) / (1 − θ_{−2})` as a finite sum of diagonal classes.
fn bernstein_quotient(m: &SteinbergModel, n: i32) -> FixedPointClass {
    let mut out = FixedPointClass::zero();
    if n > 0 {
        for j in 0..n {
            out = out.add(&m.class_theta(n - 2 * j));
        }
    } else {
        for j in 1..=-n {
            out = out.sub(&m.class_theta(n + 2 * j));
        }
    }
    out
}

fn quadratic_holds(m: &SteinbergModel) -> bool {
    let ts = m.class_Ts();
    m.convolve(&ts, &ts) == ts.scale(&qm1()).add(&m.unit().scale(&q()))
}

fn bernstein_holds(m: &SteinbergModel, n: i32) -> bool {
    let ts = m.class_Ts();
    let lhs = m.convolve(&ts, &m.class_theta(n)).sub(&m.convolve(&m.class_theta(-n), &ts));
    lhs == bernstein_quotient(m, n).scale(&qm1())
}

/// Runs every identity of the model under the given convention.
pub fn hecke_model_check(convention: QConvention) -> Result<ModelReport> {
    check_model(&SteinbergModel::with_convention(convention))
}

/// Runs every identity of the given model.
pub fn check_model(m: &SteinbergModel) -> Result<ModelReport> {
    let convention = m.tangent.convention;
    let mut rec = Recorder { checks: Vec::new() };
    let ts = m.class_Ts();
    let unit = m.unit();
    let gens = [("Ts", ts.clone()), ("theta(1)", m.class_theta(1)), ("theta(-1)", m.class_theta(-1))];

    rec.run(
        "unit",
        gens.iter().map(|(n, g)| (n.to_string(), m.convolve(&unit, g) == *g && m.convolve(g, &unit) == *g)),
    );
    rec.run(
        "theta_lattice",
        (-2..=2).flat_map(|a| (-2..=2).map(move |b| (a, b))).map(|(a, b)| {
            (format!("theta({a})*theta({b})"), m.convolve(&m.class_theta(a), &m.class_theta(b)) == m.class_theta(a + b))
        }),
    );
    rec.run("quadratic", [("Ts*Ts = (q-1)Ts + q".to_string(), quadratic_holds(m))]);
    rec.run("bernstein", (-3..=3).map(|n| (format!("n = {n}"), bernstein_holds(m, n))));
    rec.run(
        "center",
        (1..=2).map(|n| {
            let z = m.class_theta(n).add(&m.class_theta(-n));
            (format!("theta({n}) + theta(-{n})"), m.convolve(&z, &ts) == m.convolve(&ts, &z))
        }),
    );

    // words of length 3 and 4 in the generators
    let mut words: Vec<Vec<usize>> = Vec::new();
    for len in 3..=4 {
        let mut w = vec![0usize; len];
        loop {
            words.push(w.clone());
            let mut k = 0;
            while k < len && w[k] == gens.len() - 1 {
                w[k] = 0;
                k += 1;
            }
            if k == len {
                break;
            }
            w[k] += 1;
        }
    }
    let mut products = vec![unit.clone(), ts.clone()];
    let assoc: Vec<(String, bool)> = words
        .iter()
        .map(|w| {
            let g: Vec<&FixedPointClass> = w.iter().map(|&i| &gens[i].1).collect();
            let left = g[1..].iter().fold(g[0].clone(), |acc, x| m.convolve(&acc, x));
            let right = g[..g.len() - 1].iter().rev().fold(g[g.len() - 1].clone(), |acc, x| m.convolve(x, &acc));
            let mut ok = left == right;
            if g.len() == 4 {
                ok &= m.convolve(&m.convolve(g[0], g[1]), &m.convolve(g[2], g[3])) == left;
            }
            products.push(left);
            let names: Vec<&str> = w.iter().map(|&i| gens[i].0).collect();
            (names.join("*"), ok)
        })
        .collect();
    rec.run("associativity", assoc);
    rec.run(
        "integrality",
        products.iter().enumerate().map(|(i, p)| (format!("product #{i}: {p}"), p.is_integral())),
    );
    rec.run(
        "weyl_involution",
        gens.iter().flat_map(|(na, a)| gens.iter().map(move |(nb, b)| (na, a, nb, b))).map(|(na, a, nb, b)| {
            let ok = m.convolve(a, b).weyl_involution() == m.convolve(&a.weyl_involution(), &b.weyl_involution())
                && a.weyl_involution().weyl_involution() == *a;
            (format!("{na}, {nb}"), ok)
        }),
    );
    for name in ["PGL2", "SL2"] {
        let cases = hecke_map_cases(m, name, 3)?;
        rec.run(&format!("hecke_map_{name}"), cases);
    }
    let all_passed = rec.checks.iter().all(|c| c.passed);
    Ok(ModelReport { convention, twist: m.twist, checks: rec.checks, all_passed })
}

/// `image(T_x T_y) = image(T_x) * image(T_y)` over basis elements of length
/// at most `max_len` (times `Ω^{±1}`).
fn hecke_map_cases(m: &SteinbergModel, datum_name: &str, max_len: usize) -> Result<Vec<(String, bool)>> {
    let datum = load_datum(datum_name, None)?;
    let mut map = m.hecke_map(&datum)?;
    let omegas = omega_ball(&datum, datum.omega_generators(), 1);
    let mut basis: Vec<_> = bfs_ball(&datum, max_len)
        .into_keys()
        .flat_map(|w| omegas.iter().map(|o| datum.mul(&w, o)).collect::<Vec<_>>())
        .collect();
    basis.sort();
    basis.dedup();
    let mut out = Vec::new();
    for x in &basis {
        for y in &basis {
            let prod = HeckeElement::basis(&datum, x).mul(&HeckeElement::basis(&datum, y))?;
            let lhs = map.image(&prod);
            let rhs = m.convolve(&map.basis_image(x), &map.basis_image(y));
            out.push((format!("{x:?} * {y:?}"), lhs == rhs));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistCandidate {
    pub twist: (i32, i32),
    pub c: String,
    pub d: String,
    pub bernstein: bool,
}

/// All `class_Ts = c·Y(a, b) + d·unit` with `(a, b) ∈ [−2, 2]²`,
/// `c = ±v^k (|k| ≤ 3)`, `d ∈ {−1, q}` satisfying the quadratic relation,
/// with whether the Bernstein relation also holds.
pub fn search_ts_twists(convention: QConvention) -> Vec<TwistCandidate> {
    let mut out = Vec::new();
    let cs: Vec<MultiLaurent> =
        (-3..=3).flat_map(|k| [tv(0, k), -tv(0, k)]).collect();
    let ds = [-tv(0, 0), tv(0, 2)];
    for a in -2..=2 {
        for b in -2..=2 {
            for c in &cs {
                for d in &ds {
                    let m = SteinbergModel::new(convention, (a, b), c.clone(), d.clone());
                    if !quadratic_holds(&m) {
                        continue;
                    }
                    let bernstein = (-2..=2).all(|n| bernstein_holds(&m, n));
                    out.push(TwistCandidate { twist: (a, b), c: c.to_string(), d: d.to_string(), bernstein });
                }
            }
        }
    }
    out
}
