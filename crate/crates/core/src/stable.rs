//! The stable category: Hom modulo maps factoring through projectives,
//! weak equivalences, and stable endomorphism rings.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{group_from_presentation, AbelianGroupDescription, EchelonSpace, Field, Mat, MatZ};
use crate::gorenstein::GpModule;
use crate::rep::{decompose, hom_basis, is_isomorphic, HomSpace, Morphism, Representation};

const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
const RANDOM_TRIALS: usize = 64;

/// A morphism considered up to maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableMorphism<F: Field> {
    pub map: Morphism<F>,
    pub domain: Representation<F>,
    pub codomain: Representation<F>,
}

/// `Hom(M, N)` modulo the maps that factor through the projective cover of `N`.
#[derive(Clone, Debug)]
pub struct StableHom<F: Field> {
    pub hom: HomSpace<F>,
    /// Representatives of a basis of the quotient.
    pub classes: Vec<Morphism<F>>,
    factoring_dim: usize,
    /// In Hom-coordinates: factoring maps first, then the class vectors.
    space: EchelonSpace<F>,
}

pub fn stable_hom<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<StableHom<F>> {
    m.same_algebra(n)?;
    let f = m.field();
    let hom = hom_basis(m, n);
    let cover = n.projective_cover();
    let mut space = EchelonSpace::with_coordinates(f, hom.dim());
    for g in &hom_basis(m, &cover.projective).basis {
        let c = hom.coordinates(&cover.epi.after(g)).expect("composite is a module map");
        space.insert(&c);
    }
    let factoring_dim = space.dim();
    let mut classes = Vec::new();
    for i in 0..hom.dim() {
        let mut e = vec![f.zero(); hom.dim()];
        e[i] = f.one();
        if space.insert(&e) {
            classes.push(hom.basis[i].clone());
        }
    }
    Ok(StableHom { hom, classes, factoring_dim, space })
}

impl<F: Field> StableHom<F> {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Coordinates of the class of `g` in the quotient basis.
    pub fn reduce(&self, g: &Morphism<F>) -> Vec<F::Elem> {
        let c = self.hom.coordinates(g).expect("not a module map");
        let all = self.space.coordinates(&c).expect("Hom coordinates span");
        all[self.factoring_dim..].to_vec()
    }

    pub fn is_stably_zero(&self, g: &Morphism<F>) -> bool {
        let f = self.hom.domain.field();
        self.reduce(g).iter().all(|x| f.is_zero(x))
    }

    pub fn combine(&self, coeffs: &[F::Elem]) -> Morphism<F> {
        let f = self.hom.domain.field();
        let mut acc = self.hom.domain.zero_morphism(&self.hom.codomain);
        for (c, b) in coeffs.iter().zip(&self.classes) {
            if !f.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    pub fn class(&self, g: Morphism<F>) -> StableMorphism<F> {
        StableMorphism { map: g, domain: self.hom.domain.clone(), codomain: self.hom.codomain.clone() }
    }

    fn enumerable_size(&self) -> Option<u64> {
        let q = self.hom.domain.field().order()?;
        let mut n: u64 = 1;
        for _ in 0..self.dim() {
            n = n.checked_mul(q)?;
            if n > EXHAUSTIVE_LIMIT {
                return None;
            }
        }
        Some(n)
    }

    fn element(&self, mut i: u64) -> Morphism<F> {
        let f = self.hom.domain.field();
        let q = f.order().expect("finite field");
        let c: Vec<F::Elem> = (0..self.dim())
            .map(|_| {
                let x = f.element(i % q);
                i /= q;
                x
            })
            .collect();
        self.combine(&c)
    }
}

#[derive(Clone, Debug)]
pub struct WeakEquivalence<F: Field> {
    pub equivalent: bool,
    /// Mutually inverse stable maps `f: M → N`, `g: N → M`, when found.
    pub witness: Option<(StableMorphism<F>, StableMorphism<F>)>,
}

/// `M` with its projective direct summands removed.
pub fn strip_projectives<F: Field>(m: &Representation<F>) -> Result<Representation<F>> {
    let parts: Vec<Representation<F>> = decompose(m)?
        .into_iter()
        .filter(|s| !s.module.is_projective())
        .flat_map(|s| std::iter::repeat_n(s.module, s.multiplicity))
        .collect();
    Ok(Representation::direct_sum_all(m.algebra(), &parts))
}

/// Given `f`, solve linearly for `g` with `g∘f ≡ id` and `f∘g ≡ id` stably.
fn stable_inverse<F: Field>(
    f: &Morphism<F>,
    back: &StableHom<F>,
    end_m: &StableHom<F>,
    end_n: &StableHom<F>,
) -> Option<Morphism<F>> {
    let field = back.hom.domain.field();
    let (dm, dn) = (end_m.dim(), end_n.dim());
    let k = back.dim();
    let mut a = Mat::zeros(field, dm + dn, k);
    for (j, g) in back.classes.iter().enumerate() {
        for (i, x) in end_m.reduce(&g.after(f)).into_iter().enumerate() {
            a.set(i, j, x);
        }
        for (i, x) in end_n.reduce(&f.after(g)).into_iter().enumerate() {
            a.set(dm + i, j, x);
        }
    }
    let mut rhs = end_m.reduce(&end_m.hom.domain.identity());
    rhs.extend(end_n.reduce(&end_n.hom.domain.identity()));
    let c = a.solve(&rhs)?;
    Some(back.combine(&c))
}

/// Weak equivalence of certified GP modules: mutually inverse stable maps,
/// cross-checked against isomorphism after stripping projective summands.
pub fn is_weakly_equivalent<F: Field>(m: &GpModule<F>, n: &GpModule<F>) -> Result<WeakEquivalence<F>> {
    let (m, n) = (m.module(), n.module());
    let there = stable_hom(m, n)?;
    let back = stable_hom(n, m)?;
    let end_m = stable_hom(m, m)?;
    let end_n = stable_hom(n, n)?;
    let try_f = |f: Morphism<F>| stable_inverse(&f, &back, &end_m, &end_n).map(|g| (f, g));
    let mut found = None;
    if let Some(size) = there.enumerable_size() {
        for i in 0..size {
            if let Some(w) = try_f(there.element(i)) {
                found = Some(w);
                break;
            }
        }
    } else {
        let mut cands: Vec<Morphism<F>> = there.classes.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0x57ab_1e);
        let field = m.field();
        for _ in 0..RANDOM_TRIALS {
            let c: Vec<F::Elem> = (0..there.dim()).map(|_| field.random(&mut rng)).collect();
            cands.push(there.combine(&c));
        }
        found = cands.into_iter().find_map(try_f);
    }
    let stripped = {
        let (a, b) = (strip_projectives(m)?, strip_projectives(n)?);
        is_isomorphic(&a, &b)?.is_some()
    };
    if found.is_some() && !stripped {
        return Err(Error::LimitExceeded(
            "stable witness found but stripped modules are not isomorphic".into(),
        ));
    }
    let witness = found.map(|(f, g)| (there.class(f), back.class(g)));
    Ok(WeakEquivalence { equivalent: stripped, witness })
}

/// A finite-dimensional associative unital algebra given by structure
/// constants: `e_i e_j = Σ_k table[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct FinDimRing<F: Field> {
    field: F,
    table: Vec<Vec<Vec<F::Elem>>>,
    one: Vec<F::Elem>,
}

impl<F: Field> FinDimRing<F> {
    pub fn new(field: &F, table: Vec<Vec<Vec<F::Elem>>>, one: Vec<F::Elem>) -> Self {
        FinDimRing { field: field.clone(), table, one }
    }

    /// The field itself, as a one-dimensional algebra.
    pub fn ground(field: &F) -> Self {
        Self::truncated_polynomial(field, 1)
    }

    /// `F[t]/(t^n)` on the basis `1, t, …, t^{n-1}`.
    pub fn truncated_polynomial(field: &F, n: usize) -> Self {
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![field.zero(); n];
                        if i + j < n {
                            v[i + j] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut one = vec![field.zero(); n];
        if n > 0 {
            one[0] = field.one();
        }
        FinDimRing { field: field.clone(), table, one }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.one.len()
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.one.clone()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn scalar(&self, c: &F::Elem) -> Vec<F::Elem> {
        self.scale(&self.one, c)
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.neg(a)).collect()
    }

    pub fn scale(&self, x: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(a, c)).collect()
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.add_mul(&out[k], &ab, c);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[F::Elem], mut n: u64) -> Vec<F::Elem> {
        let mut base = x.to_vec();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim()).map(|j| self.mul(x, &self.basis(j))).collect();
        Mat::from_columns(&self.field, self.dim(), &cols)
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let y = self.left_matrix(x).solve(&self.one)?;
        (self.mul(&y, x) == self.one).then_some(y)
    }

    pub fn is_unit(&self, x: &[F::Elem]) -> bool {
        self.dim() > 0 && self.left_matrix(x).is_invertible()
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn check_associativity(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }

    pub fn check_unit(&self) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis(i);
            self.mul(&self.one, &b) == b && self.mul(&b, &self.one) == b
        })
    }

    /// Nilradical of a commutative algebra: over `F_q` the kernel of a high
    /// power of the (linear) Frobenius `x ↦ x^q`; over `Q` the radical of
    /// the trace form.
    pub fn nilradical(&self) -> Result<Vec<Vec<F::Elem>>> {
        if !self.is_commutative() {
            return Err(Error::UnsupportedRing("nilradical of a noncommutative algebra".into()));
        }
        let d = self.dim();
        match self.field.order() {
            Some(_) => Ok(self.frobenius().pow(d.max(1)).kernel()),
            None => {
                let mut g = Mat::zeros(&self.field, d, d);
                for i in 0..d {
                    for j in 0..d {
                        let t = self.left_matrix(&self.mul(&self.basis(i), &self.basis(j)));
                        let tr = (0..d).fold(self.field.zero(), |a, k| self.field.add(&a, t.get(k, k)));
                        g.set(i, j, tr);
                    }
                }
                Ok(g.kernel())
            }
        }
    }

    fn frobenius(&self) -> Mat<F> {
        let q = self.field.order().expect("finite field");
        let cols: Vec<Vec<F::Elem>> = (0..self.dim()).map(|j| self.pow(&self.basis(j), q)).collect();
        Mat::from_columns(&self.field, self.dim(), &cols)
    }

    /// Whether a commutative algebra is local: `R / N` must be a field.
    pub fn is_local(&self) -> Result<bool> {
        if self.dim() == 0 {
            return Ok(false);
        }
        let nil = self.nilradical()?;
        let d = self.dim();
        if nil.len() + 1 == d {
            return Ok(true);
        }
        if self.field.order().is_none() {
            return Err(Error::UnsupportedRing("locality over the rationals beyond a split residue field".into()));
        }
        // R/N is a product of fields; its Frobenius-fixed part has one
        // dimension per factor.
        let f = &self.field;
        let mut phi = self.frobenius();
        for i in 0..d {
            phi.set(i, i, f.sub(phi.get(i, i), &f.one()));
        }
        let nb = Mat::from_columns(f, d, &nil.iter().map(|v| self.neg(v)).collect::<Vec<_>>());
        let stacked = if nil.is_empty() { phi } else { phi.hstack(&nb) };
        Ok(stacked.kernel().len() == nil.len() + 1)
    }

    /// All elements of the algebra, when there are at most `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<F::Elem>>> {
        let q = self.field.order()?;
        let total = q.checked_pow(self.dim() as u32)?;
        if total > limit {
            return None;
        }
        Some(
            (0..total)
                .map(|mut i| {
                    (0..self.dim())
                        .map(|_| {
                            let x = self.field.element(i % q);
                            i /= q;
                            x
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// The unit group of a commutative algebra over a finite field, found by
    /// listing the algebra; its structure follows from counting `p^i`-torsion.
    pub fn unit_group(&self, limit: u64) -> Result<Option<(u64, AbelianGroupDescription)>> {
        if !self.is_commutative() {
            return Err(Error::NoncommutativeStableEnd);
        }
        self.field.finite_order()?;
        let Some(all) = self.elements(limit) else {
            return Ok(None);
        };
        let units: Vec<Vec<F::Elem>> = all.into_iter().filter(|x| self.is_unit(x)).collect();
        let n = units.len() as u64;
        let mut primary: Vec<u64> = Vec::new();
        for (p, e) in factorize(n) {
            let mut counts = vec![1u64];
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                counts.push(units.iter().filter(|x| self.pow(x, pk) == self.one).count() as u64);
            }
            // r[i] = number of cyclic factors of order ≥ p^i
            let r: Vec<u32> = (1..=e as usize).map(|i| ilog(counts[i] / counts[i - 1], p)).collect();
            for i in 0..e as usize {
                let next = r.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(r[i] - next) {
                    primary.push(p.pow(i as u32 + 1));
                }
            }
        }
        let gens: Vec<String> = (0..primary.len()).map(|i| format!("u{i}")).collect();
        let rows: Vec<Vec<BigInt>> = primary
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let mut r = vec![BigInt::from(0); primary.len()];
                r[i] = BigInt::from(o);
                r
            })
            .collect();
        let g = group_from_presentation(&gens, &MatZ::from_rows(rows, primary.len()));
        Ok(Some((n, g)))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// `End(G)` in the stable category.
#[derive(Clone, Debug)]
pub struct StableEndAlgebra<F: Field> {
    pub module: GpModule<F>,
    pub hom: StableHom<F>,
    pub ring: FinDimRing<F>,
}

impl<F: Field> StableEndAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    /// Representative endomorphism of a ring element.
    pub fn endomorphism(&self, x: &[F::Elem]) -> Morphism<F> {
        self.hom.combine(x)
    }
}

/// Structure constants `b_i · b_j = b_i ∘ b_j`, reduced to the quotient basis.
pub fn stable_end_algebra<F: Field>(g: &GpModule<F>) -> Result<StableEndAlgebra<F>> {
    let hom = stable_hom(g.module(), g.module())?;
    let table = hom
        .classes
        .iter()
        .map(|x| hom.classes.iter().map(|y| hom.reduce(&x.after(y))).collect())
        .collect();
    let one = hom.reduce(&g.module().identity());
    let ring = FinDimRing::new(g.field(), table, one);
    Ok(StableEndAlgebra { module: g.clone(), hom, ring })
}

/// A stable inverse of `f: M → N`, if `f` is a stable isomorphism.
pub fn stable_inverse_of<F: Field>(
    f: &Morphism<F>,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<Option<Morphism<F>>> {
    let back = stable_hom(n, m)?;
    let end_m = stable_hom(m, m)?;
    let end_n = stable_hom(n, n)?;
    Ok(stable_inverse(f, &back, &end_m, &end_n))
}
