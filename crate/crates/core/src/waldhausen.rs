//! A brute-force model of the Waldhausen category of Gorenstein projectives
//! on a finite universe of objects, used as an independent K0 oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactla::{group_from_presentation, AbelianGroupDescription, Field, Mat, MatZ};
use crate::gorenstein::GPCatalog;
use crate::ktheory::require_known;
use crate::rep::{decompose, hom_basis, is_isomorphic, Alg, Morphism, Quotient, Representation};
use crate::stable::stable_inverse_of;

pub const DEFAULT_DEPTH: usize = 2;
pub const MAX_MULTIPLICITY: usize = 4;
/// Hom spaces with at most this many elements are listed completely.
pub const EXHAUSTIVE_MAPS: u64 = 1 << 14;
pub const SAMPLED_MAPS: usize = 256;

/// Objects are multiplicity vectors over the basic modules: catalog items
/// first, then the indecomposable projectives `P(v)`.
#[derive(Clone, Debug)]
pub struct WObject<F: Field> {
    pub key: Vec<usize>,
    pub module: Representation<F>,
    pub weak_class: usize,
}

#[derive(Clone, Debug)]
pub struct Cofibration<F: Field> {
    pub source: usize,
    pub target: usize,
    pub map: Morphism<F>,
    pub cokernel: usize,
}

#[derive(Clone, Debug)]
pub struct FiniteWaldhausenData<F: Field> {
    pub algebra: Alg<F>,
    pub basics: Vec<Representation<F>>,
    pub catalog_len: usize,
    pub objects: Vec<WObject<F>>,
    pub cofibrations: Vec<Cofibration<F>>,
    /// Catalog multiplicities of each weak class.
    pub weak_classes: Vec<Vec<usize>>,
    pub depth: usize,
    pub dim_cap: usize,
    /// Some Hom spaces were sampled rather than listed.
    pub sampled: bool,
    index: HashMap<Vec<usize>, usize>,
}

impl<F: Field> FiniteWaldhausenData<F> {
    pub fn object_index(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Multiplicity vector of `m` over the basics, if every summand is one.
    pub fn key_of(&self, m: &Representation<F>) -> Result<Option<Vec<usize>>> {
        key_of(&self.basics, m)
    }

    /// The object isomorphic to `m`, if it lies in the universe.
    pub fn canonical(&self, m: &Representation<F>) -> Result<Option<usize>> {
        Ok(self.key_of(m)?.and_then(|k| self.object_index(&k)))
    }

    pub fn object(&self, i: usize) -> &Representation<F> {
        &self.objects[i].module
    }

    pub fn zero_object(&self) -> usize {
        self.object_index(&vec![0; self.basics.len()]).expect("0 is an object")
    }
}

fn key_of<F: Field>(basics: &[Representation<F>], m: &Representation<F>) -> Result<Option<Vec<usize>>> {
    let mut key = vec![0; basics.len()];
    for s in decompose(m)? {
        let mut hit = None;
        for (i, b) in basics.iter().enumerate() {
            if b.dims() == s.module.dims() && is_isomorphic(b, &s.module)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => key[i] += s.multiplicity,
            None => return Ok(None),
        }
    }
    Ok(Some(key))
}

fn keys_up_to(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for k in &out {
            let used: usize = k.iter().sum();
            for m in 0..=(depth - used).min(MAX_MULTIPLICITY) {
                let mut k2 = k.clone();
                k2.push(m);
                next.push(k2);
            }
        }
        out = next;
    }
    out.sort_by_key(|k| (k.iter().sum::<usize>(), std::cmp::Reverse(k.clone())));
    out
}

/// Conjugate a quotient module by a random change of basis: another choice
/// of the same subquotient.
fn twisted<F: Field>(m: &Representation<F>, rng: &mut ChaCha8Rng) -> Representation<F> {
    let f = m.field();
    let g: Vec<Mat<F>> = m
        .dims()
        .iter()
        .map(|&d| loop {
            let mut x = Mat::zeros(f, d, d);
            for i in 0..d {
                for j in 0..d {
                    x.set(i, j, f.random(rng));
                }
            }
            if x.is_invertible() {
                break x;
            }
        })
        .collect();
    let maps = m
        .algebra()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| g[a.target].mul(m.map(i)).mul(&g[a.source].inverse().expect("invertible")))
        .collect();
    Representation::new_unchecked(m.algebra().clone(), m.dims().to_vec(), maps)
}

fn hom_candidates<F: Field>(x: &Representation<F>, y: &Representation<F>, rng: &mut ChaCha8Rng) -> (Vec<Morphism<F>>, bool) {
    let h = hom_basis(x, y);
    let q = x.field().order().expect("finite field");
    let size = (0..h.dim()).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|n| *n <= EXHAUSTIVE_MAPS));
    match size {
        Some(n) => ((0..n).map(|i| h.element(i)).collect(), false),
        None => {
            let mut v = h.basis.clone();
            v.extend((0..SAMPLED_MAPS).map(|_| h.random(rng)));
            (v, true)
        }
    }
}

/// Build the finite Waldhausen data: objects are sums of at most `depth`
/// basic modules (multiplicities ≤ 4, total dimension ≤ 8·dim A); cofibrations
/// are monomorphisms between objects whose cokernel is again an object.
/// `twist` replaces every chosen cokernel by a randomly re-based copy.
pub fn build_wdata<F: Field>(catalog: &GPCatalog<F>, a: &Alg<F>, depth: usize, seed: u64) -> Result<FiniteWaldhausenData<F>>
where
    F::Elem: Send + Sync,
{
    build_wdata_with(catalog, a, depth, seed, None)
}

pub fn build_wdata_with<F: Field>(
    catalog: &GPCatalog<F>,
    a: &Alg<F>,
    depth: usize,
    seed: u64,
    twist: Option<u64>,
) -> Result<FiniteWaldhausenData<F>>
where
    F::Elem: Send + Sync,
{
    require_known(catalog)?;
    a.field().finite_order()?;
    let catalog_len = catalog.items.len();
    let mut basics: Vec<Representation<F>> = catalog.items.iter().map(|g| g.module().clone()).collect();
    basics.extend((0..a.vertex_count()).map(|v| Representation::projective(a, v)));
    let dim_cap = 8 * a.dim();

    let mut objects = Vec::new();
    let mut index = HashMap::new();
    let mut classes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for key in keys_up_to(basics.len(), depth) {
        let parts: Vec<Representation<F>> = key
            .iter()
            .zip(&basics)
            .flat_map(|(&m, b)| std::iter::repeat_n(b.clone(), m))
            .collect();
        let module = Representation::direct_sum_all(a, &parts);
        if module.total_dim() > dim_cap {
            continue;
        }
        let ck = key[..catalog_len].to_vec();
        let n = classes.len();
        let weak_class = *classes.entry(ck).or_insert(n);
        index.insert(key.clone(), objects.len());
        objects.push(WObject { key, module, weak_class });
    }
    let mut weak_classes = vec![vec![]; classes.len()];
    for (k, i) in classes {
        weak_classes[i] = k;
    }

    let mut data = FiniteWaldhausenData {
        algebra: a.clone(),
        basics,
        catalog_len,
        objects,
        cofibrations: Vec::new(),
        weak_classes,
        depth,
        dim_cap,
        sampled: false,
        index,
    };

    let n = data.objects.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (x, y) = (data.object(i), data.object(j));
            x.dims().iter().zip(y.dims()).all(|(a, b)| a <= b)
        })
        .collect();
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(pairs.len().max(1));
    let cache: Mutex<HashMap<Representation<F>, Option<usize>>> = Mutex::new(HashMap::new());
    let results: Vec<Result<Vec<(usize, Vec<Cofibration<F>>, bool)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let data = &data;
                let pairs = &pairs;
                let cache = &cache;
                s.spawn(move || {
                    let mut out = Vec::new();
                    for (k, &(i, j)) in pairs.iter().enumerate().skip(w).step_by(workers) {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x2545_f491_4f6c_dd1d));
                        let (x, y) = (data.object(i), data.object(j));
                        let (cands, sampled) = hom_candidates(x, y, &mut rng);
                        let mut seen = BTreeSet::new();
                        let mut found = Vec::new();
                        for f in cands {
                            if !f.is_injective() {
                                continue;
                            }
                            let q: Quotient<F> = f.cokernel(y);
                            let module = match twist {
                                Some(t) => {
                                    let mut r = ChaCha8Rng::seed_from_u64(t ^ k as u64);
                                    twisted(&q.module, &mut r)
                                }
                                None => q.module,
                            };
                            let hit = cache.lock().unwrap().get(&module).copied();
                            let c = match hit {
                                Some(c) => c,
                                None => {
                                    let c = data.canonical(&module)?;
                                    cache.lock().unwrap().insert(module, c);
                                    c
                                }
                            };
                            if let Some(c) = c {
                                if seen.insert(c) {
                                    found.push(Cofibration { source: i, target: j, map: f, cokernel: c });
                                }
                            }
                        }
                        out.push((k, found, sampled));
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut merged = Vec::new();
    for r in results {
        merged.extend(r?);
    }
    merged.sort_by_key(|(k, _, _)| *k);
    for (_, cofs, sampled) in merged {
        data.cofibrations.extend(cofs);
        data.sampled |= sampled;
    }
    Ok(data)
}

/// `(d_2, d_1, d_0) = (G_1, G_2, G_2/G_1)` for every 2-simplex `G_1 ↣ G_2`.
pub fn s2_faces<F: Field>(data: &FiniteWaldhausenData<F>) -> Vec<(usize, usize, usize)> {
    let set: BTreeSet<(usize, usize, usize)> =
        data.cofibrations.iter().map(|c| (c.source, c.target, c.cokernel)).collect();
    set.into_iter().collect()
}

pub fn weak_class_names<F: Field>(data: &FiniteWaldhausenData<F>) -> Vec<String> {
    data.weak_classes
        .iter()
        .map(|k| {
            let parts: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| if m == 1 { format!("G{i}") } else { format!("G{i}^{m}") })
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join("+")
            }
        })
        .collect()
}

/// Free abelian group on weak classes modulo `[Y] = [X] + [Z]` for every
/// 2-simplex.
pub fn k0_oracle<F: Field>(data: &FiniteWaldhausenData<F>) -> AbelianGroupDescription {
    let n = data.weak_classes.len();
    let rows: BTreeSet<Vec<i64>> = s2_faces(data)
        .into_iter()
        .map(|(x, y, z)| {
            let mut r = vec![0i64; n];
            r[data.objects[y].weak_class] += 1;
            r[data.objects[x].weak_class] -= 1;
            r[data.objects[z].weak_class] -= 1;
            r
        })
        .collect();
    let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    group_from_presentation(&weak_class_names(data), &MatZ::from_rows(rows, n))
}

/// A 2-simplex `G_1 ↣ G_2 ↠ G_2/G_1`.
#[derive(Clone, Debug)]
pub struct S2Simplex<F: Field> {
    pub sub: Representation<F>,
    pub total: Representation<F>,
    pub quotient: Representation<F>,
    pub inc: Morphism<F>,
    pub proj: Morphism<F>,
}

impl<F: Field> S2Simplex<F> {
    /// The chosen cokernel of a monomorphism.
    pub fn from_cofibration(sub: &Representation<F>, total: &Representation<F>, inc: &Morphism<F>) -> Self {
        let q = inc.cokernel(total);
        S2Simplex { sub: sub.clone(), total: total.clone(), quotient: q.module, inc: inc.clone(), proj: q.proj }
    }

    pub fn face(&self, i: usize) -> &Representation<F> {
        match i {
            0 => &self.quotient,
            1 => &self.total,
            2 => &self.sub,
            _ => panic!("2-simplex has faces 0..=2"),
        }
    }

    /// `0 → G_1 → G_2 → G_2/G_1 → 0` is exact.
    pub fn is_exact(&self) -> bool {
        self.sub.is_morphism_to(&self.total, &self.inc)
            && self.total.is_morphism_to(&self.quotient, &self.proj)
            && self.inc.is_injective()
            && self.proj.is_surjective()
            && self.proj.after(&self.inc).is_zero()
            && self.total.total_dim() == self.sub.total_dim() + self.quotient.total_dim()
    }
}

/// A 3-simplex `C_1 ↣ C_2 ↣ C_3` with chosen subquotients.
#[derive(Clone, Debug)]
pub struct S3Simplex<F: Field> {
    pub c: [Representation<F>; 3],
    pub i12: Morphism<F>,
    pub i23: Morphism<F>,
}

impl<F: Field> S3Simplex<F> {
    /// Faces: `d_0` divides out `C_1`, `d_1`, `d_2`, `d_3` drop `C_1`, `C_2`, `C_3`.
    pub fn face(&self, k: usize) -> S2Simplex<F> {
        let [c1, c2, c3] = &self.c;
        match k {
            0 => {
                let q12 = self.i12.cokernel(c2);
                let q13 = self.i23.after(&self.i12).cokernel(c3);
                let induced = q12.induced(&q13.proj.after(&self.i23));
                S2Simplex::from_cofibration(&q12.module, &q13.module, &induced)
            }
            1 => S2Simplex::from_cofibration(c2, c3, &self.i23),
            2 => S2Simplex::from_cofibration(c1, c3, &self.i23.after(&self.i12)),
            3 => S2Simplex::from_cofibration(c1, c2, &self.i12),
            _ => panic!("3-simplex has faces 0..=3"),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct S3Report {
    pub flags_checked: usize,
    pub identities_checked: usize,
    pub failures: Vec<String>,
}

/// Check `d_i d_j = d_{j−1} d_i` (up to isomorphism) and exactness of every
/// face on up to `samples` composable pairs of cofibrations.
pub fn s3_check<F: Field>(data: &FiniteWaldhausenData<F>, samples: usize, seed: u64) -> Result<S3Report> {
    let mut flags: Vec<(usize, usize)> = Vec::new();
    for (a, c1) in data.cofibrations.iter().enumerate() {
        for (b, c2) in data.cofibrations.iter().enumerate() {
            if c1.target == c2.source {
                flags.push((a, b));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked: Vec<(usize, usize)> = if flags.len() <= samples {
        flags
    } else {
        (0..samples).map(|_| flags[rng.gen_range(0..flags.len())]).collect()
    };
    let mut report = S3Report::default();
    for (a, b) in picked {
        let (f1, f2) = (&data.cofibrations[a], &data.cofibrations[b]);
        let s = S3Simplex {
            c: [data.object(f1.source).clone(), data.object(f1.target).clone(), data.object(f2.target).clone()],
            i12: f1.map.clone(),
            i23: f2.map.clone(),
        };
        report.flags_checked += 1;
        let faces: Vec<S2Simplex<F>> = (0..4).map(|k| s.face(k)).collect();
        for (k, t) in faces.iter().enumerate() {
            if !t.is_exact() {
                report.failures.push(format!("flag ({a},{b}): face d{k} is not exact"));
            }
        }
        for j in 1..4 {
            for i in 0..j {
                let lhs = faces[j].face(i);
                let rhs = faces[i].face(j - 1);
                report.identities_checked += 1;
                if is_isomorphic(lhs, rhs)?.is_none() {
                    report.failures.push(format!("flag ({a},{b}): d{i} d{j} != d{} d{i}", j - 1));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GluingReport {
    pub trials: usize,
    pub counterexamples: Vec<String>,
}

/// Pushout `Y ⊔_X Z` of `f: X → Y` and `c: X ↣ Z`.
fn pushout<F: Field>(
    x: &Representation<F>,
    y: &Representation<F>,
    z: &Representation<F>,
    f: &Morphism<F>,
    c: &Morphism<F>,
) -> (Representation<F>, Quotient<F>) {
    let sum = y.direct_sum(z);
    let h = Morphism { maps: f.maps.iter().zip(&c.maps).map(|(a, b)| a.vstack(&b.neg())).collect() };
    debug_assert!(x.is_morphism_to(&sum, &h));
    (sum.clone(), h.cokernel(&sum))
}

fn random_automorphism<F: Field>(m: &Representation<F>, rng: &mut ChaCha8Rng) -> Morphism<F> {
    let h = hom_basis(m, m);
    for _ in 0..32 {
        let g = h.random(rng);
        if g.is_iso() {
            return g;
        }
    }
    m.identity()
}

fn block_map<F: Field>(
    from: &[&Representation<F>],
    to: &[&Representation<F>],
    blocks: &[(usize, usize, &Morphism<F>)],
) -> Morphism<F> {
    let f = from[0].field();
    let nv = from[0].dims().len();
    let maps = (0..nv)
        .map(|v| {
            let rows: usize = to.iter().map(|m| m.dim_at(v)).sum();
            let cols: usize = from.iter().map(|m| m.dim_at(v)).sum();
            let mut out = Mat::zeros(f, rows, cols);
            for &(r, c, g) in blocks {
                let r0: usize = to[..r].iter().map(|m| m.dim_at(v)).sum();
                let c0: usize = from[..c].iter().map(|m| m.dim_at(v)).sum();
                out.paste(r0, c0, &g.maps[v]);
            }
            out
        })
        .collect();
    Morphism { maps }
}

/// Random ladders `Y ← X ↣ Z` ⇒ `Y' ← X' ↣ Z'` whose verticals are weak
/// equivalences (add projective summands, then twist by automorphisms); the
/// induced map of pushouts must again be a weak equivalence, and both
/// pushouts must split into catalog items and projectives.
pub fn gluing_check<F: Field>(data: &FiniteWaldhausenData<F>, trials: usize, seed: u64) -> Result<GluingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = GluingReport { trials, counterexamples: Vec::new() };
    let a = &data.algebra;
    let projectives: Vec<Representation<F>> = (0..a.vertex_count()).map(|v| Representation::projective(a, v)).collect();
    let zero = Representation::zero(a);
    for t in 0..trials {
        let cof = &data.cofibrations[rng.gen_range(0..data.cofibrations.len())];
        let (x, z) = (data.object(cof.source), data.object(cof.target));
        let y = data.object(rng.gen_range(0..data.objects.len()));
        let f = hom_basis(x, y).random(&mut rng);
        let c = &cof.map;
        // the first trial is the identity ladder
        let pick = |rng: &mut ChaCha8Rng| {
            if t == 0 || rng.gen_bool(0.4) {
                zero.clone()
            } else {
                projectives[rng.gen_range(0..projectives.len())].clone()
            }
        };
        let (px, py, pz) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let x2 = x.direct_sum(&px);
        let y2 = y.direct_sum(&py);
        let z2 = Representation::direct_sum_all(a, &[z.clone(), px.clone(), pz.clone()]);
        // f' = f on X, anything on P_x; c' = c on X, (r, id) on P_x
        let g1 = hom_basis(&px, y).random(&mut rng);
        let g2 = hom_basis(&px, &py).random(&mut rng);
        let r = hom_basis(&px, z).random(&mut rng);
        let f2 = block_map(&[x, &px], &[y, &py], &[(0, 0, &f), (0, 1, &g1), (1, 1, &g2)]);
        let c2 = block_map(&[x, &px], &[z, &px, &pz], &[(0, 0, c), (0, 1, &r), (1, 1, &px.identity())]);
        let vx = block_map(&[x], &[x, &px], &[(0, 0, &x.identity())]);
        let vy = block_map(&[y], &[y, &py], &[(0, 0, &y.identity())]);
        let vz = block_map(&[z], &[z, &px, &pz], &[(0, 0, &z.identity())]);
        // twist the bottom row by automorphisms
        let (ax, ay, az) = if t == 0 {
            (x2.identity(), y2.identity(), z2.identity())
        } else {
            (random_automorphism(&x2, &mut rng), random_automorphism(&y2, &mut rng), random_automorphism(&z2, &mut rng))
        };
        let ax_inv = ax.inverse().expect("automorphism");
        let f2 = ay.after(&f2).after(&ax_inv);
        let c2 = az.after(&c2).after(&ax_inv);
        let (vx, vy, vz) = (ax.after(&vx), ay.after(&vy), az.after(&vz));

        let mut fail = |msg: String| report.counterexamples.push(format!("ladder {t}: {msg}"));
        if !(x2.is_morphism_to(&y2, &f2) && x2.is_morphism_to(&z2, &c2) && c2.is_injective()) {
            fail("bottom row is not a valid span".into());
            continue;
        }
        if f2.after(&vx) != vy.after(&f) || c2.after(&vx) != vz.after(c) {
            fail("ladder squares do not commute".into());
            continue;
        }
        let (_, q) = pushout(x, y, z, &f, c);
        let (_, q2) = pushout(&x2, &y2, &z2, &f2, &c2);
        let down = Morphism {
            maps: vy.maps.iter().zip(&vz.maps).map(|(a, b)| Mat::block_diag(a, b)).collect(),
        };
        let phi = q.induced(&q2.proj.after(&down));
        if !q.module.is_morphism_to(&q2.module, &phi) {
            fail("induced map is not a module map".into());
            continue;
        }
        for (name, m) in [("top", &q.module), ("bottom", &q2.module)] {
            if key_of(&data.basics, m)?.is_none() {
                fail(format!("{name} pushout leaves the catalog closure"));
            }
        }
        if stable_inverse_of(&phi, &q.module, &q2.module)?.is_none() {
            fail("induced map of pushouts is not a weak equivalence".into());
        }
    }
    Ok(report)
}
