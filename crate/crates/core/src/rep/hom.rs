use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactla::{EchelonSpace, Field, Mat};

use super::decompose::{decompose_with_embeddings, is_local_endomorphism_ring};
use super::module::{Morphism, Representation};

/// Exhaustive searches are allowed up to this many elements.
pub(crate) const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
pub(crate) const RANDOM_TRIALS: usize = 64;

/// A basis of `Hom_A(M, N)` with coordinate lookup.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub domain: Representation<F>,
    pub codomain: Representation<F>,
    pub basis: Vec<Morphism<F>>,
    coords: EchelonSpace<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.domain.dims().iter().zip(self.codomain.dims()).map(|(&m, &n)| (n, m)).collect()
    }

    /// Coordinates of `f` in the basis, `None` if `f` is not a module map.
    pub fn coordinates(&self, f: &Morphism<F>) -> Option<Vec<F::Elem>> {
        self.coords.coordinates(&f.flatten())
    }

    pub fn combine(&self, coeffs: &[F::Elem]) -> Morphism<F> {
        let field = self.domain.field();
        let mut acc = self.domain.zero_morphism(&self.codomain);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !field.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Number of elements when finite and small enough to list.
    pub fn enumerable_size(&self) -> Option<u64> {
        let q = self.domain.field().order()?;
        let mut n: u64 = 1;
        for _ in 0..self.dim() {
            n = n.checked_mul(q)?;
            if n > EXHAUSTIVE_LIMIT {
                return None;
            }
        }
        Some(n)
    }

    /// The `i`-th element in the base-`q` enumeration of coefficient vectors.
    pub fn element(&self, mut i: u64) -> Morphism<F> {
        let field = self.domain.field();
        let q = field.order().expect("finite field");
        let coeffs: Vec<F::Elem> = (0..self.dim())
            .map(|_| {
                let c = field.element(i % q);
                i /= q;
                c
            })
            .collect();
        self.combine(&coeffs)
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Morphism<F> {
        let field = self.domain.field();
        let coeffs: Vec<F::Elem> = (0..self.dim()).map(|_| field.random(rng)).collect();
        self.combine(&coeffs)
    }
}

/// Solve `f_t M_a = N_a f_s` for all arrows.
pub fn hom_basis<F: Field>(m: &Representation<F>, n: &Representation<F>) -> HomSpace<F> {
    let field = m.field();
    let q = m.algebra().quiver();
    let nv = m.dims().len();
    let mut offs = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offs.push(unknowns);
        unknowns += m.dim_at(v) * n.dim_at(v);
    }
    let dm = m.dims();
    let dn = n.dims();
    let var = |v: usize, i: usize, j: usize| offs[v] + i * dm[v] + j;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = m.map(ai);
        let na = n.map(ai);
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..dm[t] {
                    let c = ma.get(k, j);
                    if !field.is_zero(c) {
                        let x = var(t, i, k);
                        row[x] = field.add(&row[x], c);
                    }
                }
                for l in 0..dn[s] {
                    let c = na.get(i, l);
                    if !field.is_zero(c) {
                        let x = var(s, l, j);
                        row[x] = field.sub(&row[x], c);
                    }
                }
                if row.iter().any(|c| !field.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Mat::identity(field, unknowns).column_space()
    } else {
        Mat::from_rows(field, rows, unknowns).kernel()
    };
    let shapes: Vec<(usize, usize)> = (0..nv).map(|v| (dn[v], dm[v])).collect();
    let mut coords = EchelonSpace::with_coordinates(field, unknowns);
    let mut basis = Vec::with_capacity(kernel.len());
    for k in kernel {
        coords.insert(&k);
        basis.push(Morphism::unflatten(field, &shapes, &k));
    }
    HomSpace { domain: m.clone(), codomain: n.clone(), basis, coords }
}

/// An isomorphism `m → n` if one exists.
///
/// Dimension vectors are compared first; then `Hom(m, n)` is searched, listing
/// it completely when small. For indecomposable ends the answer is exact: `m ≅ n`
/// iff some composite `g ∘ f` of basis maps is not nilpotent. Otherwise the
/// decompositions of both sides are compared summand by summand.
pub fn is_isomorphic<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<Option<Morphism<F>>> {
    m.same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(m.identity()));
    }
    if m == n {
        return Ok(Some(m.identity()));
    }
    let hom = hom_basis(m, n);
    if hom.dim() == 0 {
        return Ok(None);
    }
    if let Some(size) = hom.enumerable_size() {
        for i in 0..size {
            let f = hom.element(i);
            if f.is_iso() {
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    for f in &hom.basis {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0150);
    for _ in 0..RANDOM_TRIALS {
        let f = hom.random(&mut rng);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    if is_local_endomorphism_ring(m)? && is_local_endomorphism_ring(n)? {
        return Ok(iso_between_indecomposables(m, n, &hom));
    }
    iso_by_decomposition(m, n)
}

/// `m`, `n` indecomposable with equal dimension vectors: an iso exists iff
/// some `g ∘ f` is invertible (then `f` is split mono, hence an iso).
pub(crate) fn iso_between_indecomposables<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
    hom: &HomSpace<F>,
) -> Option<Morphism<F>> {
    debug_assert_eq!(m.dims(), n.dims());
    let back = hom_basis(n, m);
    for f in &hom.basis {
        for g in &back.basis {
            if g.after(f).is_iso() {
                return Some(f.clone());
            }
        }
    }
    None
}

fn iso_by_decomposition<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<Option<Morphism<F>>> {
    let dm = decompose_with_embeddings(m)?;
    let dn = decompose_with_embeddings(n)?;
    if dm.len() != dn.len() {
        return Ok(None);
    }
    if dm.len() == 1 {
        return Ok(iso_between_indecomposables(m, n, &hom_basis(m, n)));
    }
    let mut used = vec![false; dn.len()];
    let mut pairs = Vec::with_capacity(dm.len());
    for (sm, em) in &dm {
        let mut found = None;
        for (j, (sn, _)) in dn.iter().enumerate() {
            if used[j] || sm.dims() != sn.dims() {
                continue;
            }
            if let Some(iso) = is_isomorphic(sm, sn)? {
                found = Some((j, iso));
                break;
            }
        }
        let Some((j, iso)) = found else {
            return Ok(None);
        };
        used[j] = true;
        pairs.push((em.clone(), iso, dn[j].1.clone()));
    }
    // m = ⊕ im(em): invert the assembled embedding to get projections
    let field = m.field();
    let nv = m.dims().len();
    let mut witness = Vec::with_capacity(nv);
    for v in 0..nv {
        let assembled = pairs.iter().fold(Mat::zeros(field, m.dim_at(v), 0), |acc, (em, _, _)| acc.hstack(&em.maps[v]));
        let through = pairs
            .iter()
            .fold(Mat::zeros(field, n.dim_at(v), 0), |acc, (_, iso, en)| acc.hstack(&en.maps[v].mul(&iso.maps[v])));
        let inv = if assembled.rows() == 0 { assembled.clone() } else { assembled.inverse().expect("direct sum") };
        witness.push(through.mul(&inv));
    }
    Ok(Some(Morphism { maps: witness }))
}
