use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{EchelonSpace, Field};

use super::hom::{hom_basis, iso_between_indecomposables, HomSpace, RANDOM_TRIALS};
use super::module::{Morphism, Representation};

/// Extra random endomorphisms tried when the ring is too large to list.
const LATE_TRIALS: usize = 1024;

/// An indecomposable summand together with how often it occurs.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Representation<F>,
    pub multiplicity: usize,
}

/// Krull–Schmidt decomposition, summands grouped up to isomorphism and
/// ordered by dimension, then dimension vector, then first occurrence.
pub fn decompose<F: Field>(m: &Representation<F>) -> Result<Vec<Summand<F>>> {
    let parts = decompose_with_embeddings(m)?;
    let mut groups: Vec<Summand<F>> = Vec::new();
    for (s, _) in parts {
        let mut placed = false;
        for g in groups.iter_mut() {
            if indecomposables_isomorphic(&g.module, &s) {
                g.multiplicity += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(Summand { module: s, multiplicity: 1 });
        }
    }
    groups.sort_by(|a, b| {
        a.module.total_dim().cmp(&b.module.total_dim()).then_with(|| a.module.dims().cmp(b.module.dims()))
    });
    Ok(groups)
}

/// Exact isomorphism test for two indecomposable modules.
pub(crate) fn indecomposables_isomorphic<F: Field>(a: &Representation<F>, b: &Representation<F>) -> bool {
    if a.dims() != b.dims() {
        return false;
    }
    if a == b || a.is_zero() {
        return true;
    }
    iso_between_indecomposables(a, b, &hom_basis(a, b)).is_some()
}

/// Indecomposable summands (with repetition) and their embeddings into `m`;
/// `m` is the internal direct sum of the images.
pub fn decompose_with_embeddings<F: Field>(m: &Representation<F>) -> Result<Vec<(Representation<F>, Morphism<F>)>> {
    let mut out = Vec::new();
    let mut stack = vec![(m.clone(), m.identity())];
    while let Some((x, emb)) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match splitting_endomorphism(&x)? {
            None => out.push((x, emb)),
            Some(g) => {
                let (k, kin) = g.kernel(&x);
                let (i, iin) = g.image(&x);
                stack.push((i, emb.after(&iin)));
                stack.push((k, emb.after(&kin)));
            }
        }
    }
    Ok(out)
}

pub fn is_indecomposable<F: Field>(m: &Representation<F>) -> Result<bool> {
    Ok(!m.is_zero() && splitting_endomorphism(m)?.is_none())
}

/// `f^N` for an endomorphism that is neither nilpotent nor invertible, which
/// splits `m = ker f^N ⊕ im f^N`; `None` when `m` is indecomposable.
fn splitting_endomorphism<F: Field>(m: &Representation<F>) -> Result<Option<Morphism<F>>> {
    let end = hom_basis(m, m);
    let n = m.dims().iter().copied().max().unwrap_or(0).max(1);
    let splits = |f: &Morphism<F>| {
        let g = f.power(n);
        if g.is_zero() || g.is_iso() {
            None
        } else {
            Some(g)
        }
    };
    if end.dim() <= 1 {
        return Ok(None);
    }
    for f in &end.basis {
        if let Some(g) = splits(f) {
            return Ok(Some(g));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1771e);
    for _ in 0..RANDOM_TRIALS {
        if let Some(g) = splits(&end.random(&mut rng)) {
            return Ok(Some(g));
        }
    }
    if local_certificate(m, &end) {
        return Ok(None);
    }
    if m.field().order().is_none() {
        return Err(Error::FieldUnsupported("decomposition fallback needs a finite field".into()));
    }
    if let Some(size) = end.enumerable_size() {
        for i in 0..size {
            if let Some(g) = splits(&end.element(i)) {
                return Ok(Some(g));
            }
        }
        return Ok(None);
    }
    for _ in 0..LATE_TRIALS {
        if let Some(g) = splits(&end.random(&mut rng)) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// `true` only if `End(m)` is certified local: every basis element is a
/// scalar plus a nilpotent, and the nilpotent parts span a nilpotent ideal.
pub fn is_local_endomorphism_ring<F: Field>(m: &Representation<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(local_certificate(m, &hom_basis(m, m)))
}

fn local_certificate<F: Field>(m: &Representation<F>, end: &HomSpace<F>) -> bool {
    let field = m.field();
    let total = m.total_dim();
    let id = m.identity();
    let nil = |g: &Morphism<F>| g.power(total.max(1)).is_zero();
    let mut parts = Vec::with_capacity(end.dim());
    for f in &end.basis {
        let Some(lambda) = scalar_part(m, f) else {
            return false;
        };
        let g = f.sub(&id.scale(&lambda));
        if !nil(&g) {
            return false;
        }
        parts.push(g);
    }
    // J' must be closed under products and nilpotent; J'^k spans shrink to 0
    let len = parts.first().map(|p| p.flatten().len()).unwrap_or(0);
    let mut span = EchelonSpace::new(field, len);
    for p in &parts {
        span.insert(&p.flatten());
    }
    let shapes = end.shapes();
    let mut power: Vec<Morphism<F>> = parts.clone();
    for _ in 0..=total {
        let mut next = EchelonSpace::new(field, len);
        for x in &power {
            for y in &parts {
                let z = x.after(y).flatten();
                if !span.contains(&z) {
                    return false;
                }
                next.insert(&z);
            }
        }
        if next.dim() == 0 {
            return true;
        }
        power = next.rows().iter().map(|r| Morphism::unflatten(field, &shapes, r)).collect();
    }
    false
}

/// The `λ` with `f − λ·id` nilpotent, if the field makes it easy to find.
fn scalar_part<F: Field>(m: &Representation<F>, f: &Morphism<F>) -> Option<F::Elem> {
    let field = m.field();
    let total = m.total_dim();
    let trace = f.maps.iter().fold(field.zero(), |acc, g| {
        (0..g.rows()).fold(acc, |a, i| field.add(&a, g.get(i, i)))
    });
    let n = field.from_i64(total as i64);
    if let Some(inv) = field.inv(&n) {
        return Some(field.mul(&trace, &inv));
    }
    // characteristic divides the dimension: try every scalar
    let q = field.order()?;
    if q > 1 << 16 {
        return None;
    }
    let id = m.identity();
    (0..q).map(|i| field.element(i)).find(|l| f.sub(&id.scale(l)).power(total).is_zero())
}
