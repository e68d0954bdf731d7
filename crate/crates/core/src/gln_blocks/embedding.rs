use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hecke::{v_pow, HeckeElement};
use crate::root_weyl::{load_datum, ExtAffineElement, RootDatum};

/// The algebra map `ℋ(L_fine) → ℋ(L_coarse)` for block-diagonal Levis of
/// `GL_n`, fixed on the Bernstein presentation by `θ_λ ↦ θ_λ` and
/// `T_w ↦ T_w` for `w` in the finite Weyl group of the source.
pub struct LeviEmbedding {
    pub source_blocks: Vec<usize>,
    pub target_blocks: Vec<usize>,
    /// Source simple label ↦ target simple label.
    pub simple_map: Vec<(usize, usize)>,
    source: Arc<RootDatum>,
    target: Arc<RootDatum>,
    /// Images of `T_g` for affine reflections and Ω generators `g` of the
    /// source, and of `T_ω⁻¹` for the latter.
    gens: HashMap<ExtAffineElement, HeckeElement>,
    inverse_omega: HashMap<ExtAffineElement, HeckeElement>,
}

/// `ℋ(GL_{m1} × ⋯ × GL_{mk}) → ℋ(GL_n)`.
pub fn hecke_embedding(composition: &[usize]) -> Result<LeviEmbedding> {
    let n = composition.iter().sum();
    levi_embedding(composition, &[n])
}

fn levi_name(blocks: &[usize]) -> String {
    format!("GL({})", blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","))
}

fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    let mut it = fine.iter();
    coarse.iter().all(|&c| {
        let mut acc = 0;
        while acc < c {
            match it.next() {
                Some(&f) => acc += f,
                None => return false,
            }
        }
        acc == c
    }) && it.next().is_none()
}

/// The embedding between Levis; `fine` must refine `coarse`.
pub fn levi_embedding(fine: &[usize], coarse: &[usize]) -> Result<LeviEmbedding> {
    let n: usize = coarse.iter().sum();
    if fine.contains(&0) || coarse.contains(&0) || fine.iter().sum::<usize>() != n || !refines(fine, coarse) {
        return Err(Error::BadComposition(fine.to_vec(), n));
    }
    let source = load_datum(&levi_name(fine), None)?;
    let target = load_datum(&levi_name(coarse), None)?;
    let simple_map = (0..source.rank())
        .map(|i| {
            let root = &source.simple_roots()[i];
            let j = target
                .simple_roots()
                .iter()
                .position(|r| r == root)
                .ok_or_else(|| Error::BadComposition(fine.to_vec(), n))?;
            Ok((i + 1, j + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut emb = LeviEmbedding {
        source_blocks: fine.to_vec(),
        target_blocks: coarse.to_vec(),
        simple_map,
        source,
        target,
        gens: HashMap::new(),
        inverse_omega: HashMap::new(),
    };
    let mut special: Vec<(ExtAffineElement, bool)> = emb
        .source
        .affine_reflections()
        .iter()
        .filter(|a| a.element.lambda.iter().any(|&x| x != 0))
        .map(|a| (a.element.clone(), false))
        .collect();
    special.extend(emb.source.omega_generators().iter().map(|o| (o.clone(), true)));
    for (g, is_omega) in special {
        let (img, inv) = emb.translation_form(&g)?;
        emb.gens.insert(g.clone(), img);
        if is_omega {
            emb.inverse_omega.insert(g, inv);
        }
    }
    Ok(emb)
}

impl LeviEmbedding {
    pub fn source(&self) -> &Arc<RootDatum> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RootDatum> {
        &self.target
    }

    /// Image of `T_w` for a finite Weyl element of the source.
    fn finite_image(&self, w: usize) -> Result<ExtAffineElement> {
        let word: Vec<usize> = self.source.weyl_element(w).word.iter().map(|&l| self.map_label(l)).collect();
        Ok(self.target.finite(self.target.weyl_from_word(&word)?))
    }

    fn map_label(&self, l: usize) -> usize {
        self.simple_map.iter().find(|(s, _)| *s == l).map(|p| p.1).expect("finite label")
    }

    /// For `g = t_λ w` with `λ` dominant and `ℓ(t_λ) = ℓ(g) + ℓ(w⁻¹)` one has
    /// `T_g = v^{ℓ(t_λ)} θ_λ T_{w⁻¹}⁻¹`; returns the image of `T_g` and of
    /// `T_g⁻¹ = v^{−ℓ(t_λ)} T_{w⁻¹} θ_{−λ}`.
    fn translation_form(&self, g: &ExtAffineElement) -> Result<(HeckeElement, HeckeElement)> {
        let src = &self.source;
        let w_inv = src.inverse(&src.finite(g.w));
        let t = src.mul(g, &w_inv);
        let l = src.length(&t);
        if t.w != 0 || !src.is_dominant(&t.lambda) || l != src.length(g) + src.length(&w_inv) {
            return Err(Error::InvalidElement(format!("{g:?} is not of the form t_λ w with λ dominant")));
        }
        // sanity check inside the source algebra itself
        let theta_src = HeckeElement::theta(src, &t.lambda)?.expansion;
        let lhs = theta_src.mul(&HeckeElement::invert_basis(src, &w_inv))?.scale(&v_pow(l as i32));
        if lhs != HeckeElement::basis(src, g) {
            return Err(Error::InvalidElement(format!("translation form fails for {g:?}")));
        }
        let tgt = &self.target;
        let wt = self.finite_image(w_inv.w)?;
        let theta = HeckeElement::theta(tgt, &t.lambda)?.expansion;
        let img = theta.mul(&HeckeElement::invert_basis(tgt, &wt))?.scale(&v_pow(l as i32));
        let neg: Vec<i64> = t.lambda.iter().map(|x| -x).collect();
        let inv = HeckeElement::basis(tgt, &wt)
            .mul(&HeckeElement::theta(tgt, &neg)?.expansion)?
            .scale(&v_pow(-(l as i32)));
        Ok((img, inv))
    }

    /// Image of `T_ω` for `ω ∈ Ω ≅ Z^k`, coordinates given by block sums.
    fn omega_image(&self, om: &ExtAffineElement) -> Result<HeckeElement> {
        let mut acc = HeckeElement::one(&self.target);
        let mut start = 0;
        for (b, &m) in self.source_blocks.iter().enumerate() {
            let deg: i64 = om.lambda[start..start + m].iter().sum();
            let g = &self.source.omega_generators()[b];
            let step = if deg >= 0 { &self.gens[g] } else { &self.inverse_omega[g] };
            for _ in 0..deg.unsigned_abs() {
                acc = acc.mul(step)?;
            }
            start += m;
        }
        Ok(acc)
    }

    /// Image of a basis element `T_x` of the source.
    pub fn basis_image(&self, x: &ExtAffineElement) -> Result<HeckeElement> {
        let rw = self.source.reduced_word(x);
        let mut acc = HeckeElement::one(&self.target);
        for &l in &rw.word {
            let s = self.source.affine_reflection(l).expect("label");
            let img = match self.gens.get(s) {
                Some(h) => h.clone(),
                None => HeckeElement::basis(&self.target, &self.finite_image(s.w)?),
            };
            acc = acc.mul(&img)?;
        }
        acc.mul(&self.omega_image(&rw.omega)?)
    }

    pub fn image(&self, h: &HeckeElement) -> Result<HeckeElement> {
        if h.datum().name() != self.source.name() {
            return Err(Error::RootDatumMismatch(h.datum().name().into(), self.source.name().into()));
        }
        let mut out = HeckeElement::zero(&self.target);
        for (x, c) in h.terms() {
            out = out.add(&self.basis_image(x)?.scale(c))?;
        }
        Ok(out)
    }

    /// Images of the source algebra generators, labelled.
    pub fn generator_images(&self) -> Result<Vec<(String, HeckeElement)>> {
        let mut out = Vec::new();
        for a in self.source.affine_reflections() {
            out.push((format!("T_s{}", a.label), self.basis_image(&a.element)?));
        }
        for (i, om) in self.source.omega_generators().iter().enumerate() {
            out.push((format!("T_omega{}", i + 1), self.basis_image(om)?));
            out.push((format!("T_omega{}^-1", i + 1), self.basis_image(&self.source.inverse(om))?));
        }
        Ok(out)
    }
}

/// Outcome of [`embedding_checks`]: each field counts the identities checked
/// and names the first failure.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct EmbeddingReport {
    pub source: String,
    pub target: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, name: impl FnOnce() -> String, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(name());
        }
    }
}

/// Checks in the target that the images satisfy the defining relations of
/// the source: quadratic and braid relations, `θ_λ ↦ θ_λ` on `{−1,0,1}^n`,
/// the Bernstein relation, centrality of the image of the source centre
/// against the image generators, and `image(T_x T_y) = image(T_x) image(T_y)`
/// for `x, y` of length at most `max_len` times `Ω^{±1}`.
pub fn embedding_checks(emb: &LeviEmbedding, max_len: usize) -> Result<EmbeddingReport> {
    use crate::hecke::{bernstein_quotient, q};
    use crate::root_weyl::oracle::{bfs_ball, omega_ball};

    let src = emb.source();
    let tgt = emb.target();
    let mut rep = EmbeddingReport { source: src.name().into(), target: tgt.name().into(), ..Default::default() };
    let qm1 = &q() - &v_pow(0);
    let images: Vec<(usize, HeckeElement)> = src
        .affine_reflections()
        .iter()
        .map(|a| Ok((a.label, emb.basis_image(&a.element)?)))
        .collect::<Result<_>>()?;
    for (l, t) in &images {
        let sq = t.mul(t)?;
        let rhs = t.scale(&qm1).add(&HeckeElement::one(tgt).scale(&q()))?;
        rep.record(|| format!("quadratic s{l}"), sq == rhs);
    }
    for (la, ta) in &images {
        for (lb, tb) in &images {
            if la >= lb {
                continue;
            }
            let Some(m) = src.braid_order(*la, *lb) else { continue };
            let alt = |x: &HeckeElement, y: &HeckeElement| -> Result<HeckeElement> {
                let mut acc = HeckeElement::one(tgt);
                for k in 0..m {
                    acc = acc.mul(if k % 2 == 0 { x } else { y })?;
                }
                Ok(acc)
            };
            rep.record(|| format!("braid s{la} s{lb}"), alt(ta, tb)? == alt(tb, ta)?);
        }
    }
    let n = src.cochar_rank();
    let box_: Vec<Vec<i64>> = (0..3usize.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = (c % 3) as i64 - 1;
                    c /= 3;
                    x
                })
                .collect()
        })
        .collect();
    for lam in &box_ {
        let img = emb.image(&HeckeElement::theta(src, lam)?.expansion)?;
        rep.record(|| format!("theta {lam:?}"), img == HeckeElement::theta(tgt, lam)?.expansion);
        for i in 0..src.rank() {
            let s = emb.basis_image(&src.finite(src.simple_reflection_index(i)))?;
            let sl = src.act(src.simple_reflection_index(i), lam);
            let lhs = s
                .mul(&HeckeElement::theta(tgt, lam)?.expansion)?
                .sub(&HeckeElement::theta(tgt, &sl)?.expansion.mul(&s)?)?;
            let rhs = emb.image(&bernstein_quotient(src, i, lam)?)?.scale(&qm1);
            rep.record(|| format!("bernstein s{} {lam:?}", i + 1), lhs == rhs);
        }
    }
    let gens: Vec<HeckeElement> = emb.generator_images()?.into_iter().map(|(_, h)| h).collect();
    for lam in box_.iter().filter(|l| src.is_dominant(l)) {
        let z = emb.image(&HeckeElement::center_element(src, lam)?)?;
        for g in &gens {
            rep.record(|| format!("centre {lam:?}"), z.commutator(g)?.is_zero());
        }
    }
    let omegas = omega_ball(src, src.omega_generators(), 1);
    let mut basis: Vec<ExtAffineElement> =
        bfs_ball(src, max_len).into_keys().flat_map(|w| omegas.iter().map(move |o| (w.clone(), o.clone()))).map(|(w, o)| src.mul(&w, &o)).collect();
    basis.sort();
    basis.dedup();
    let imgs: Vec<HeckeElement> = basis.iter().map(|x| emb.basis_image(x)).collect::<Result<_>>()?;
    for (x, ix) in basis.iter().zip(&imgs) {
        for (y, iy) in basis.iter().zip(&imgs) {
            let prod = HeckeElement::basis(src, x).mul(&HeckeElement::basis(src, y))?;
            rep.record(|| format!("product {x:?} {y:?}"), emb.image(&prod)? == ix.mul(iy)?);
        }
    }
    Ok(rep)
}

/// `E_{b→c} ∘ E_{a→b} = E_{a→c}` on the generators of `ℋ(L_a)` and on basis
/// elements of length at most `max_len`.
pub fn transitivity_holds(a: &[usize], b: &[usize], c: &[usize], max_len: usize) -> Result<bool> {
    use crate::root_weyl::oracle::bfs_ball;
    let ab = levi_embedding(a, b)?;
    let bc = levi_embedding(b, c)?;
    let ac = levi_embedding(a, c)?;
    let src = ab.source();
    let mut xs: Vec<ExtAffineElement> = bfs_ball(src, max_len).into_keys().collect();
    xs.extend(src.affine_reflections().iter().map(|r| r.element.clone()));
    for om in src.omega_generators() {
        xs.push(om.clone());
        xs.push(src.inverse(om));
    }
    for x in xs {
        if bc.image(&ab.basis_image(&x)?)? != ac.basis_image(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
