//! Gorenstein K0 from harvested short exact sequences, and Gorenstein K1
//! as the unit group of the stable endomorphism ring.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{group_from_presentation, AbelianGroupDescription, Field, Mat, MatZ};
use crate::gorenstein::{CatalogVerdict, GPCatalog, GpModule};
use crate::rep::{decompose, Representation};
use crate::stable::{stable_end_algebra, FinDimRing};

/// Extension classes are listed exhaustively up to this many.
pub const EXHAUSTIVE_CLASSES: u64 = 4096;
pub const SAMPLED_CLASSES: usize = 128;
/// Stable endomorphism rings are listed element by element up to this size.
pub const UNIT_ENUMERATION_LIMIT: u64 = 1 << 16;

/// One relation `[Y] − [X] − [Z] = 0` from `0 → X → Y → Z → 0`.
#[derive(Clone, Debug)]
pub struct HarvestedRelation {
    /// Catalog index of the sub and quotient ends; `None` for a projective.
    pub sub: Option<usize>,
    pub quotient: Option<usize>,
    /// Multiplicity of each catalog item in the middle term.
    pub middle: Vec<i64>,
    pub split: bool,
}

impl HarvestedRelation {
    pub fn row(&self) -> Vec<i64> {
        let mut r = self.middle.clone();
        for i in [self.sub, self.quotient].into_iter().flatten() {
            r[i] -= 1;
        }
        r
    }
}

#[derive(Clone, Debug)]
pub struct K0Result {
    pub group: AbelianGroupDescription,
    pub relations: Vec<HarvestedRelation>,
    /// Pairs whose Ext classes were sampled rather than listed.
    pub sampled_pairs: usize,
    pub warnings: Vec<String>,
}

impl K0Result {
    pub fn relation_matrix(&self) -> MatZ {
        relation_matrix(&self.relations, self.group.generators.len())
    }
}

/// Distinct relation rows in a fixed order.
fn relation_matrix(relations: &[HarvestedRelation], n: usize) -> MatZ {
    let rows: BTreeSet<Vec<i64>> = relations.iter().map(|r| r.row()).collect();
    let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    MatZ::from_rows(rows, n)
}

pub(crate) fn require_known<F: Field>(catalog: &GPCatalog<F>) -> Result<()> {
    match &catalog.verdict {
        CatalogVerdict::Unknown(r) => Err(Error::CatalogUnknown(r.clone())),
        _ => Ok(()),
    }
}

pub fn generator_names<F: Field>(catalog: &GPCatalog<F>) -> Vec<String> {
    catalog
        .items
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let d: Vec<String> = g.dims().iter().map(|x| x.to_string()).collect();
            format!("G{i}[{}]", d.join(","))
        })
        .collect()
}

/// Multiplicities of catalog items in `m`; projective summands are dropped.
pub fn catalog_multiplicities<F: Field>(catalog: &GPCatalog<F>, m: &Representation<F>) -> Result<Vec<i64>> {
    let mut out = vec![0i64; catalog.items.len()];
    for s in decompose(m)? {
        if s.module.is_projective() {
            continue;
        }
        match catalog.find(&s.module)? {
            Some(i) => out[i] += s.multiplicity as i64,
            None => {
                return Err(Error::CatalogIncomplete(format!(
                    "summand with dimension vector {:?} is not in the catalog",
                    s.module.dims()
                )))
            }
        }
    }
    Ok(out)
}

/// The ends used for harvesting: catalog items, then indecomposable projectives.
fn ends<F: Field>(catalog: &GPCatalog<F>, a: &crate::rep::Alg<F>) -> Vec<(Option<usize>, Representation<F>)> {
    let mut v: Vec<(Option<usize>, Representation<F>)> =
        catalog.items.iter().enumerate().map(|(i, g)| (Some(i), g.module().clone())).collect();
    for p in 0..a.vertex_count() {
        v.push((None, Representation::projective(a, p)));
    }
    v
}

fn harvest_pair<F: Field>(
    catalog: &GPCatalog<F>,
    (zi, z): &(Option<usize>, Representation<F>),
    (xi, x): &(Option<usize>, Representation<F>),
    seed: u64,
) -> Result<(Vec<HarvestedRelation>, bool)> {
    let f = z.field();
    let q = f.finite_order()?;
    let split_mid = catalog_multiplicities(catalog, &x.direct_sum(z))?;
    let mut out = vec![HarvestedRelation { sub: *xi, quotient: *zi, middle: split_mid, split: true }];
    let e = z.ext1(x)?;
    let d = e.dim();
    if d == 0 {
        return Ok((out, false));
    }
    let exhaustive = (d as u32) < 64 && q.checked_pow(d as u32).is_some_and(|n| n <= EXHAUSTIVE_CLASSES);
    let mut coeffs: Vec<Vec<F::Elem>> = Vec::new();
    if exhaustive {
        for mut i in 1..q.pow(d as u32) {
            coeffs.push(
                (0..d)
                    .map(|_| {
                        let c = f.element(i % q);
                        i /= q;
                        c
                    })
                    .collect(),
            );
        }
    } else {
        for k in 0..d {
            let mut c = vec![f.zero(); d];
            c[k] = f.one();
            coeffs.push(c);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_CLASSES {
            coeffs.push((0..d).map(|_| f.random(&mut rng)).collect());
        }
    }
    for c in coeffs {
        let ses = e.middle_term(&c);
        let middle = catalog_multiplicities(catalog, &ses.middle)?;
        out.push(HarvestedRelation { sub: *xi, quotient: *zi, middle, split: false });
    }
    Ok((out, !exhaustive))
}

/// `K0` of the Gorenstein projectives: generators are the catalog items,
/// projectives are zero, and every harvested extension gives a relation.
pub fn k0_gorenstein<F: Field>(a: &crate::rep::Alg<F>, catalog: &GPCatalog<F>, seed: u64) -> Result<K0Result>
where
    F::Elem: Send + Sync,
{
    require_known(catalog)?;
    let ends = ends(catalog, a);
    let pairs: Vec<(usize, usize)> =
        (0..ends.len()).flat_map(|i| (0..ends.len()).map(move |j| (i, j))).collect();
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(pairs.len().max(1));
    let chunks: Vec<Vec<(usize, usize)>> =
        (0..workers).map(|w| pairs.iter().copied().skip(w).step_by(workers).collect()).collect();
    let results: Vec<Result<Vec<(usize, Vec<HarvestedRelation>, bool)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let ends = &ends;
                s.spawn(move || {
                    chunk
                        .iter()
                        .map(|&(i, j)| {
                            let pair_seed = seed ^ ((i as u64) << 32 | j as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
                            harvest_pair(catalog, &ends[i], &ends[j], pair_seed)
                                .map(|(r, sampled)| (i * ends.len() + j, r, sampled))
                        })
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("harvest worker panicked")).collect()
    });
    let mut merged = Vec::new();
    for r in results {
        merged.extend(r?);
    }
    merged.sort_by_key(|(k, _, _)| *k);
    let mut relations = Vec::new();
    let mut sampled_pairs = 0;
    for (_, r, s) in merged {
        relations.extend(r);
        sampled_pairs += s as usize;
    }
    let mut warnings = Vec::new();
    if sampled_pairs > 0 {
        warnings.push(format!("extension classes sampled for {sampled_pairs} pair(s)"));
    }
    let names = generator_names(catalog);
    let group = group_from_presentation(&names, &relation_matrix(&relations, names.len()));
    Ok(K0Result { group, relations, sampled_pairs, warnings })
}

/// A class in `K1(Λ)`: for commutative `Λ` this is a unit of `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1Class<E> {
    pub unit: Vec<E>,
}

/// A square matrix over `Λ`: `m[i][j]` is an element of the ring.
pub type RingMatrix<E> = Vec<Vec<Vec<E>>>;

pub fn ring_matrix_mul<F: Field>(r: &FinDimRing<F>, x: &RingMatrix<F::Elem>, y: &RingMatrix<F::Elem>) -> RingMatrix<F::Elem> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(&x[i][k], &y[k][j]))))
                .collect()
        })
        .collect()
}

pub fn ring_identity<F: Field>(r: &FinDimRing<F>, n: usize) -> RingMatrix<F::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect()
}

/// The elementary matrix `1 + λ e_{ij}`.
pub fn elementary<F: Field>(r: &FinDimRing<F>, n: usize, i: usize, j: usize, lambda: &[F::Elem]) -> RingMatrix<F::Elem> {
    assert_ne!(i, j);
    let mut e = ring_identity(r, n);
    e[i][j] = lambda.to_vec();
    e
}

/// Two-sided inverse of a matrix over `Λ`, found by solving over the field.
pub fn ring_matrix_inverse<F: Field>(r: &FinDimRing<F>, m: &RingMatrix<F::Elem>) -> Option<RingMatrix<F::Elem>> {
    let n = m.len();
    let d = r.dim();
    let f = r.field();
    let mut big = Mat::zeros(f, n * d, n * d);
    for i in 0..n {
        for j in 0..n {
            big.paste(i * d, j * d, &r.left_matrix(&m[i][j]));
        }
    }
    let mut inv: RingMatrix<F::Elem> = vec![vec![r.zero(); n]; n];
    for j in 0..n {
        let mut rhs = vec![f.zero(); n * d];
        rhs[j * d..(j + 1) * d].clone_from_slice(&r.one());
        let x = big.solve(&rhs)?;
        for i in 0..n {
            inv[i][j] = x[i * d..(i + 1) * d].to_vec();
        }
    }
    (ring_matrix_mul(r, &inv, m) == ring_identity(r, n)).then_some(inv)
}

/// Reduce an invertible matrix over a commutative local ring (or field) to
/// `diag(u, 1, …, 1)` by elementary operations and return `u`.
pub fn whitehead_reduce<F: Field>(r: &FinDimRing<F>, m: &RingMatrix<F::Elem>) -> Result<K1Class<F::Elem>> {
    if !r.is_commutative() {
        return Err(Error::UnsupportedRing("noncommutative ring".into()));
    }
    if !r.is_local()? {
        return Err(Error::UnsupportedRing("ring is not local".into()));
    }
    let n = m.len();
    if n == 0 {
        return Ok(K1Class { unit: r.one() });
    }
    ring_matrix_inverse(r, m).ok_or(Error::NotInvertible)?;
    let mut a = m.clone();
    for k in 0..n {
        if !r.is_unit(&a[k][k]) {
            // unit + non-unit is a unit in a local ring
            let i = (k + 1..n).find(|&i| r.is_unit(&a[i][k])).ok_or(Error::NotInvertible)?;
            for j in 0..n {
                a[k][j] = r.add(&a[k][j], &a[i][j]);
            }
        }
        let inv = r.inverse(&a[k][k]).ok_or(Error::NotInvertible)?;
        for i in k + 1..n {
            let c = r.mul(&a[i][k], &inv);
            if r.is_zero(&c) {
                continue;
            }
            for j in 0..n {
                let t = r.mul(&c, &a[k][j]);
                a[i][j] = r.sub(&a[i][j], &t);
            }
        }
        for j in k + 1..n {
            let c = r.mul(&inv, &a[k][j]);
            if r.is_zero(&c) {
                continue;
            }
            for i in 0..n {
                let t = r.mul(&a[i][k], &c);
                a[i][j] = r.sub(&a[i][j], &t);
            }
        }
    }
    // diag(d_1, …, d_n) ~ diag(d_1 ⋯ d_n, 1, …, 1)
    let unit = (0..n).fold(r.one(), |acc, k| r.mul(&acc, &a[k][k]));
    Ok(K1Class { unit })
}

#[derive(Clone, Debug, Serialize)]
pub struct K1Result {
    pub group: Option<AbelianGroupDescription>,
    pub order: Option<u64>,
    pub stable_end_dim: usize,
    pub local: Option<bool>,
    pub warnings: Vec<String>,
}

/// `K1` of the Gorenstein projectives as the unit group of the stable
/// endomorphism ring of the sum of the catalog items.
pub fn k1_gorenstein<F: Field>(a: &crate::rep::Alg<F>, catalog: &GPCatalog<F>) -> Result<K1Result> {
    require_known(catalog)?;
    if catalog.items.is_empty() {
        return Ok(K1Result {
            group: Some(AbelianGroupDescription::trivial()),
            order: Some(1),
            stable_end_dim: 0,
            local: None,
            warnings: vec![],
        });
    }
    let parts: Vec<Representation<F>> = catalog.items.iter().map(|g| g.module().clone()).collect();
    let sum = Representation::direct_sum_all(a, &parts);
    let g = GpModule::certify(sum, &catalog.report, catalog.report.bound)?;
    let lambda = stable_end_algebra(&g)?;
    let ring = &lambda.ring;
    if !ring.is_commutative() {
        return Err(Error::NoncommutativeStableEnd);
    }
    let local = ring.is_local().ok();
    let mut warnings = Vec::new();
    let (order, group) = match ring.unit_group(UNIT_ENUMERATION_LIMIT)? {
        Some((n, grp)) => (Some(n), Some(grp)),
        None => {
            warnings.push("stable endomorphism ring too large to list; structure not determined".into());
            let q = a.field().finite_order()?;
            let order = match (local, ring.nilradical()) {
                (Some(true), Ok(nil)) => {
                    let d = ring.dim() as u32;
                    let k = d - nil.len() as u32;
                    q.checked_pow(d).zip(q.checked_pow(d - k)).map(|(x, y)| x - y)
                }
                _ => None,
            };
            (order, None)
        }
    };
    Ok(K1Result { group, order, stable_end_dim: ring.dim(), local, warnings })
}
