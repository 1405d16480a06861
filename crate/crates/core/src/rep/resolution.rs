use std::sync::Arc;

use crate::error::Result;
use crate::exactla::{EchelonSpace, Field, Mat};

use super::hom::hom_basis;
use super::module::{Morphism, Quotient, Representation};

/// Projective cover `P → M` with its kernel `Ω M ↪ P`.
#[derive(Clone, Debug)]
pub struct Cover<F: Field> {
    /// Vertex and vector of each chosen top generator.
    pub generators: Vec<(usize, Vec<F::Elem>)>,
    pub projective: Representation<F>,
    pub epi: Morphism<F>,
    pub kernel: Representation<F>,
    pub inclusion: Morphism<F>,
}

impl<F: Field> Representation<F> {
    /// Projective cover; computed once per module value and shared by clones.
    pub fn projective_cover(&self) -> Arc<Cover<F>> {
        self.cover.get_or_init(|| Arc::new(self.compute_cover())).clone()
    }

    fn compute_cover(&self) -> Cover<F> {
        let f = self.field();
        let alg = self.algebra();
        let rad = self.radical_bases();
        let mut generators = Vec::new();
        for (v, b) in rad.iter().enumerate() {
            let d = self.dim_at(v);
            let mut s = EchelonSpace::new(f, d);
            for c in 0..b.cols() {
                s.insert(&b.column(c));
            }
            for j in 0..d {
                let mut e = vec![f.zero(); d];
                e[j] = f.one();
                if s.insert(&e) {
                    generators.push((v, e));
                }
            }
        }
        let parts: Vec<Representation<F>> =
            generators.iter().map(|(v, _)| Representation::projective(alg, *v)).collect();
        let projective = Representation::direct_sum_all(alg, &parts);
        let epi = self.from_projective_sum(&generators);
        let (kernel, inclusion) = epi.kernel(&projective);
        Cover { generators, projective, epi, kernel, inclusion }
    }

    /// `Ω^n M`; `Ω^0 M = M`.
    pub fn syzygy(&self, n: usize) -> Representation<F> {
        let mut m = self.clone();
        for _ in 0..n {
            if m.is_zero() {
                break;
            }
            m = m.projective_cover().kernel.clone();
        }
        m
    }

    pub fn is_projective(&self) -> bool {
        self.is_zero() || self.projective_cover().kernel.is_zero()
    }

    /// Smallest `n` with `Ω^n M` projective, searching up to `bound`.
    pub fn projective_dimension(&self, bound: usize) -> Option<usize> {
        let mut m = self.clone();
        for n in 0..=bound {
            if m.is_projective() {
                return Some(n);
            }
            m = m.projective_cover().kernel.clone();
        }
        None
    }

    /// `Hom_A(M, A)` as a left module over the opposite algebra: the vertex
    /// `v` space is `Hom(M, A e_v)`, and the reversed arrow `a` acts by
    /// post-composing with right multiplication by `a`.
    pub fn star(&self) -> Representation<F> {
        let f = self.field();
        let alg = self.algebra();
        let n = alg.vertex_count();
        let proj: Vec<Representation<F>> = (0..n).map(|v| Representation::projective(alg, v)).collect();
        let homs: Vec<_> = proj.iter().map(|p| hom_basis(self, p)).collect();
        let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                // right multiplication by a: A e_t → A e_s
                let (s, t) = (a.source, a.target);
                let ra = right_multiplication(alg, ai, &proj[t], &proj[s]);
                let cols: Vec<Vec<F::Elem>> = homs[t]
                    .basis
                    .iter()
                    .map(|g| homs[s].coordinates(&ra.after(g)).expect("composite is a module map"))
                    .collect();
                Mat::from_columns(f, dims[s], &cols)
            })
            .collect();
        Representation::new_unchecked(alg.opposite(), dims, maps)
    }

    /// First extension group with explicit classes.
    pub fn ext1(&self, n: &Representation<F>) -> Result<Ext1Space<F>> {
        self.same_algebra(n)?;
        let cover = self.projective_cover();
        let omega = &cover.kernel;
        let hom = hom_basis(omega, n);
        let f = self.field();
        let len = hom.shapes().iter().map(|(r, c)| r * c).sum();
        let mut span = EchelonSpace::new(f, len);
        // maps that extend over the cover give split extensions
        for (k, (v, _)) in cover.generators.iter().enumerate() {
            for j in 0..n.dim_at(*v) {
                let mut e = vec![f.zero(); n.dim_at(*v)];
                e[j] = f.one();
                let mut images: Vec<(usize, Vec<F::Elem>)> =
                    cover.generators.iter().map(|(w, _)| (*w, vec![f.zero(); n.dim_at(*w)])).collect();
                images[k].1 = e;
                let phi = n.from_projective_sum(&images);
                span.insert(&phi.after(&cover.inclusion).flatten());
            }
        }
        let mut classes = Vec::new();
        for b in &hom.basis {
            if span.insert(&b.flatten()) {
                classes.push(b.clone());
            }
        }
        Ok(Ext1Space { start: self.clone(), end: n.clone(), cover, classes })
    }

    /// `dim Ext^n(M, N)` computed as `Ext^1(Ω^{n-1} M, N)`; `n = 0` is `dim Hom`.
    pub fn ext_dim(&self, n: &Representation<F>, degree: usize) -> Result<usize> {
        self.same_algebra(n)?;
        if degree == 0 {
            return Ok(hom_basis(self, n).dim());
        }
        let m = self.syzygy(degree - 1);
        if m.is_zero() {
            return Ok(0);
        }
        Ok(m.ext1(n)?.dim())
    }
}

/// Right multiplication by arrow `ai` as a map `A e_t → A e_s`.
pub(crate) fn right_multiplication<F: Field>(
    alg: &crate::rep::Alg<F>,
    ai: usize,
    from: &Representation<F>,
    to: &Representation<F>,
) -> Morphism<F> {
    let a = alg.quiver().arrow(ai);
    let e = match alg.arrow_elem(ai) {
        Some(x) => alg.basis_vector(x),
        None => vec![alg.field().zero(); alg.dim()],
    };
    // e_t ↦ a, which lives in A e_s at vertex t
    let at_t: Vec<usize> = alg.paths_between(a.source, a.target);
    let gen: Vec<F::Elem> = at_t.iter().map(|&i| e[i].clone()).collect();
    let m = to.from_projective_generator(a.target, &gen);
    debug_assert_eq!(m.maps.len(), from.dims().len());
    m
}

/// `Ext^1_A(M, N)` realized as `Hom(Ω M, N)` modulo maps extending to the cover.
#[derive(Clone, Debug)]
pub struct Ext1Space<F: Field> {
    pub start: Representation<F>,
    pub end: Representation<F>,
    pub cover: Arc<Cover<F>>,
    /// Maps `Ω M → N` whose classes form a basis.
    pub classes: Vec<Morphism<F>>,
}

/// A short exact sequence `0 → N → E → M → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact<F: Field> {
    pub middle: Representation<F>,
    pub inc: Morphism<F>,
    pub proj: Morphism<F>,
}

impl<F: Field> Ext1Space<F> {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, coeffs: &[F::Elem]) -> Morphism<F> {
        let f = self.start.field();
        let omega = &self.cover.kernel;
        let mut acc = omega.zero_morphism(&self.end);
        for (c, b) in coeffs.iter().zip(&self.classes) {
            if !f.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Middle term of the extension with the given class coordinates: the
    /// pushout of `P ← Ω M → N`.
    pub fn middle_term(&self, coeffs: &[F::Elem]) -> ShortExact<F> {
        let phi = self.class(coeffs);
        self.pushout(&phi)
    }

    pub fn pushout(&self, phi: &Morphism<F>) -> ShortExact<F> {
        let f = self.start.field();
        let p = &self.cover.projective;
        let n = &self.end;
        let sum = p.direct_sum(n);
        let h = Morphism {
            maps: self.cover.inclusion.maps.iter().zip(&phi.maps).map(|(i, g)| i.vstack(&g.neg())).collect(),
        };
        let q: Quotient<F> = h.cokernel(&sum);
        let inc = Morphism {
            maps: q
                .proj
                .maps
                .iter()
                .enumerate()
                .map(|(v, qv)| qv.block(0, p.dim_at(v), qv.rows(), n.dim_at(v)))
                .collect(),
        };
        let down = Morphism {
            maps: self
                .cover
                .epi
                .maps
                .iter()
                .enumerate()
                .map(|(v, e)| e.hstack(&Mat::zeros(f, e.rows(), n.dim_at(v))))
                .collect(),
        };
        let proj = q.induced(&down);
        ShortExact { middle: q.module, inc, proj }
    }
}

/// Result of an Ext computation; degree-one results carry middle terms.
#[derive(Clone, Debug)]
pub struct ExtResult<F: Field> {
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<Representation<F>>,
}

pub fn ext<F: Field>(m: &Representation<F>, n: &Representation<F>, degree: usize) -> Result<ExtResult<F>> {
    if degree == 1 {
        let e = m.ext1(n)?;
        let f = m.field();
        let representatives = (0..e.dim())
            .map(|i| {
                let mut c = vec![f.zero(); e.dim()];
                c[i] = f.one();
                e.middle_term(&c).middle
            })
            .collect();
        return Ok(ExtResult { degree, dimension: e.dim(), representatives });
    }
    Ok(ExtResult { degree, dimension: m.ext_dim(n, degree)?, representatives: vec![] })
}
