use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{EchelonSpace, Field, Mat};
use crate::presentation::FiniteDimAlgebra;

use super::resolution::Cover;

pub type Alg<F> = Arc<FiniteDimAlgebra<F>>;

/// A finite-dimensional left module: a vector space per vertex and a matrix
/// per arrow (shape `dims[target] × dims[source]`).
#[derive(Clone)]
pub struct Representation<F: Field> {
    algebra: Alg<F>,
    dims: Vec<usize>,
    maps: Vec<Mat<F>>,
    path_mats: Arc<OnceLock<Vec<Mat<F>>>>,
    pub(crate) cover: Arc<OnceLock<Arc<Cover<F>>>>,
}

impl<F: Field> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.fingerprint() == other.algebra.fingerprint() && self.dims == other.dims && self.maps == other.maps
    }
}
impl<F: Field> Eq for Representation<F> {}

impl<F: Field> Hash for Representation<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.algebra.fingerprint().hash(state);
        self.dims.hash(state);
        for m in &self.maps {
            m.data().hash(state);
        }
    }
}

/// A module map, one matrix per vertex (`dims_N[v] × dims_M[v]`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism<F: Field> {
    pub maps: Vec<Mat<F>>,
}

impl<F: Field> fmt::Debug for Morphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.maps).finish()
    }
}

impl<F: Field> Representation<F> {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(algebra: Alg<F>, dims: Vec<usize>, maps: Vec<Mat<F>>) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::InvalidRepresentation("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} has shape {:?}, expected {:?}",
                    a.label,
                    m.shape(),
                    (dims[a.target], dims[a.source])
                )));
            }
        }
        let rep = Self::new_unchecked(algebra, dims, maps);
        for r in rep.algebra.relations() {
            let f = rep.field();
            let mut acc = Mat::zeros(f, rep.dims[r.target()], rep.dims[r.source()]);
            for (c, p) in r.terms() {
                acc = acc.add(&rep.path_matrix(&p.arrows, p.source).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation {} does not vanish",
                    r.written(f, rep.algebra.quiver())
                )));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: Alg<F>, dims: Vec<usize>, maps: Vec<Mat<F>>) -> Self {
        Representation { algebra, dims, maps, path_mats: Arc::default(), cover: Arc::default() }
    }

    pub fn zero(algebra: &Alg<F>) -> Self {
        let q = algebra.quiver();
        let f = algebra.field();
        let maps = q.arrows().iter().map(|_| Mat::zeros(f, 0, 0)).collect();
        Self::new_unchecked(algebra.clone(), vec![0; q.vertex_count()], maps)
    }

    pub fn algebra(&self) -> &Alg<F> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn map(&self, a: usize) -> &Mat<F> {
        &self.maps[a]
    }
    pub fn maps(&self) -> &[Mat<F>] {
        &self.maps
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub(crate) fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn path_matrix(&self, arrows: &[usize], source: usize) -> Mat<F> {
        let mut m = Mat::identity(self.field(), self.dims[source]);
        for &a in arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of basis element `i` of the algebra, a map from the space at its
    /// source to the space at its target.
    pub fn act(&self, i: usize) -> &Mat<F> {
        let mats = self.path_mats.get_or_init(|| {
            self.algebra.basis().iter().map(|p| self.path_matrix(&p.arrows, p.source)).collect()
        });
        &mats[i]
    }

    pub fn identity(&self) -> Morphism<F> {
        Morphism { maps: self.dims.iter().map(|&d| Mat::identity(self.field(), d)).collect() }
    }

    pub fn zero_morphism(&self, to: &Self) -> Morphism<F> {
        Morphism { maps: (0..self.dims.len()).map(|v| Mat::zeros(self.field(), to.dims[v], self.dims[v])).collect() }
    }

    /// Whether `f` really is a module map from `self` to `to`.
    pub fn is_morphism_to(&self, to: &Self, f: &Morphism<F>) -> bool {
        if f.maps.len() != self.dims.len() {
            return false;
        }
        for v in 0..self.dims.len() {
            if f.maps[v].shape() != (to.dims[v], self.dims[v]) {
                return false;
            }
        }
        self.algebra.quiver().arrows().iter().enumerate().all(|(i, a)| {
            f.maps[a.target].mul(&self.maps[i]) == to.maps[i].mul(&f.maps[a.source])
        })
    }

    pub fn simple(algebra: &Alg<F>, v: usize) -> Self {
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        let f = algebra.field();
        let maps =
            algebra.quiver().arrows().iter().map(|a| Mat::zeros(f, dims[a.target], dims[a.source])).collect();
        Self::new_unchecked(algebra.clone(), dims, maps)
    }

    /// `A e_v`: basis the normal paths starting at `v`, graded by target.
    pub fn projective(algebra: &Alg<F>, v: usize) -> Self {
        let f = algebra.field();
        let n = algebra.vertex_count();
        let spaces: Vec<Vec<usize>> = (0..n).map(|t| algebra.paths_between(v, t)).collect();
        let dims: Vec<usize> = spaces.iter().map(Vec::len).collect();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
                if let Some(x) = algebra.arrow_elem(ai) {
                    for (col, &b) in spaces[a.source].iter().enumerate() {
                        for (k, c) in algebra.mul_basis(x, b) {
                            let row = spaces[a.target].iter().position(|&y| y == *k).expect("graded product");
                            m.set(row, col, f.add(m.get(row, col), c));
                        }
                    }
                }
                m
            })
            .collect();
        Self::new_unchecked(algebra.clone(), dims, maps)
    }

    /// `A` as a left module, the direct sum of all `A e_v`.
    pub fn regular(algebra: &Alg<F>) -> Self {
        let parts: Vec<Self> = (0..algebra.vertex_count()).map(|v| Self::projective(algebra, v)).collect();
        Self::direct_sum_all(algebra, &parts)
    }

    /// The cyclic left ideal `A x`. `x` is given in the algebra basis.
    pub fn left_ideal(algebra: &Alg<F>, x: &[F::Elem]) -> Self {
        let f = algebra.field();
        let reg = Self::regular(algebra);
        let n = algebra.vertex_count();
        // position of basis element i inside regular_t: paths into t grouped by source
        let mut gens = Vec::new();
        for t in 0..n {
            let mut v = vec![f.zero(); reg.dims[t]];
            let mut pos = 0;
            for s in 0..n {
                for i in algebra.paths_between(s, t) {
                    v[pos] = x[i].clone();
                    pos += 1;
                }
            }
            if v.iter().any(|c| !f.is_zero(c)) {
                gens.push((t, v));
            }
        }
        reg.submodule(&gens).0
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Self::new_unchecked(self.algebra.clone(), dims, maps)
    }

    pub fn direct_sum_all(algebra: &Alg<F>, parts: &[Self]) -> Self {
        parts.iter().fold(Self::zero(algebra), |acc, p| acc.direct_sum(p))
    }

    /// Inclusions and projections of the summands of `⊕ parts`.
    pub fn sum_structure(parts: &[Self]) -> (Vec<Morphism<F>>, Vec<Morphism<F>>) {
        let Some(first) = parts.first() else {
            return (vec![], vec![]);
        };
        let f = first.field().clone();
        let n = first.dims.len();
        let total: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mut offs = vec![0usize; n];
        let mut incs = Vec::new();
        let mut projs = Vec::new();
        for p in parts {
            let mut inc = Vec::new();
            let mut proj = Vec::new();
            for v in 0..n {
                let mut i = Mat::zeros(&f, total[v], p.dims[v]);
                let mut j = Mat::zeros(&f, p.dims[v], total[v]);
                for k in 0..p.dims[v] {
                    i.set(offs[v] + k, k, f.one());
                    j.set(k, offs[v] + k, f.one());
                }
                inc.push(i);
                proj.push(j);
                offs[v] += p.dims[v];
            }
            incs.push(Morphism { maps: inc });
            projs.push(Morphism { maps: proj });
        }
        (incs, projs)
    }

    /// Submodule spanned by per-vertex column bases (assumed closed under the
    /// arrows), with its inclusion.
    pub(crate) fn from_subspaces(&self, bases: Vec<Mat<F>>) -> (Self, Morphism<F>) {
        let q = self.algebra.quiver();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let img = self.maps[i].mul(&bases[a.source]);
                bases[a.target].solve_matrix(&img).expect("subspace closed under arrows")
            })
            .collect();
        let sub = Self::new_unchecked(self.algebra.clone(), dims, maps);
        (sub, Morphism { maps: bases })
    }

    /// Submodule generated by `(vertex, vector)` pairs, with its inclusion.
    pub fn submodule(&self, gens: &[(usize, Vec<F::Elem>)]) -> (Self, Morphism<F>) {
        let f = self.field();
        let q = self.algebra.quiver();
        let mut spaces: Vec<EchelonSpace<F>> = self.dims.iter().map(|&d| EchelonSpace::new(f, d)).collect();
        let mut stack: Vec<(usize, Vec<F::Elem>)> = gens.to_vec();
        while let Some((v, x)) = stack.pop() {
            if !spaces[v].insert(&x) {
                continue;
            }
            for (i, a) in q.arrows().iter().enumerate() {
                if a.source == v {
                    let y = self.maps[i].mul_vec(&x);
                    if y.iter().any(|c| !f.is_zero(c)) {
                        stack.push((a.target, y));
                    }
                }
            }
        }
        let bases = spaces
            .iter()
            .enumerate()
            .map(|(v, s)| Mat::from_columns(f, self.dims[v], s.rows()))
            .collect();
        self.from_subspaces(bases)
    }

    /// Everything reachable from a vertex subspace under the arrows is added,
    /// then the quotient is formed.
    pub fn quotient_by(&self, gens: &[(usize, Vec<F::Elem>)]) -> Quotient<F> {
        let (_, inc) = self.submodule(gens);
        self.quotient_by_subspaces(&inc.maps)
    }

    /// Quotient by a submodule given by per-vertex column bases.
    pub fn quotient_by_subspaces(&self, bases: &[Mat<F>]) -> Quotient<F> {
        let f = self.field();
        let q = self.algebra.quiver();
        let mut proj = Vec::with_capacity(bases.len());
        let mut sections = Vec::with_capacity(bases.len());
        for (v, b) in bases.iter().enumerate() {
            let d = self.dims[v];
            // rows spanning the annihilator of the subspace
            let rows = if b.cols() == 0 { Mat::identity(f, d).rows_vec() } else { b.transpose().kernel() };
            let qv = Mat::from_rows(f, rows, d);
            let sec = qv.solve_matrix(&Mat::identity(f, qv.rows())).expect("full row rank");
            proj.push(qv);
            sections.push(sec);
        }
        let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| proj[a.target].mul(&self.maps[i]).mul(&sections[a.source]))
            .collect();
        let module = Self::new_unchecked(self.algebra.clone(), dims, maps);
        Quotient { module, proj: Morphism { maps: proj }, sections }
    }

    /// Radical: the sum of the images of all arrows.
    pub fn radical(&self) -> (Self, Morphism<F>) {
        let bases = self.radical_bases();
        self.from_subspaces(bases)
    }

    pub(crate) fn radical_bases(&self) -> Vec<Mat<F>> {
        let f = self.field();
        let q = self.algebra.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut s = EchelonSpace::new(f, self.dims[v]);
                for (i, a) in q.arrows().iter().enumerate() {
                    if a.target == v {
                        for c in 0..self.maps[i].cols() {
                            s.insert(&self.maps[i].column(c));
                        }
                    }
                }
                Mat::from_columns(f, self.dims[v], s.rows())
            })
            .collect()
    }

    /// Dimension vector of `M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_bases().iter().zip(&self.dims).map(|(b, d)| d - b.cols()).collect()
    }

    /// The map `A e_v → self` sending `e_v` to `m`.
    pub fn from_projective_generator(&self, v: usize, m: &[F::Elem]) -> Morphism<F> {
        let f = self.field();
        let alg = &self.algebra;
        let maps = (0..self.dims.len())
            .map(|t| {
                let cols: Vec<Vec<F::Elem>> =
                    alg.paths_between(v, t).into_iter().map(|b| self.act(b).mul_vec(m)).collect();
                Mat::from_columns(f, self.dims[t], &cols)
            })
            .collect();
        Morphism { maps }
    }

    /// The map `⊕_k A e_{v_k} → self` sending the k-th generator to `images[k]`.
    pub fn from_projective_sum(&self, gens: &[(usize, Vec<F::Elem>)]) -> Morphism<F> {
        let f = self.field();
        let parts: Vec<Morphism<F>> = gens.iter().map(|(v, m)| self.from_projective_generator(*v, m)).collect();
        let maps = (0..self.dims.len())
            .map(|t| parts.iter().fold(Mat::zeros(f, self.dims[t], 0), |acc, p| acc.hstack(&p.maps[t])))
            .collect();
        Morphism { maps }
    }

    /// k-linear dual `Hom_k(M, k)`, a left module over the opposite algebra.
    pub fn k_dual(&self) -> Self {
        let op = self.algebra.opposite();
        let maps = self.maps.iter().map(Mat::transpose).collect();
        Self::new_unchecked(op, self.dims.clone(), maps)
    }

    /// Reinterpret over an algebra with the same quiver and table (e.g. `(A^op)^op`).
    pub fn over(&self, algebra: &Alg<F>) -> Self {
        Self::new_unchecked(algebra.clone(), self.dims.clone(), self.maps.clone())
    }
}

/// A quotient module `M / U` with its projection and a chosen section per
/// vertex, used to induce maps out of the quotient.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub module: Representation<F>,
    pub proj: Morphism<F>,
    pub sections: Vec<Mat<F>>,
}

impl<F: Field> Quotient<F> {
    /// The map `M/U → X` induced by `g: M → X` vanishing on `U`.
    pub fn induced(&self, g: &Morphism<F>) -> Morphism<F> {
        Morphism { maps: g.maps.iter().zip(&self.sections).map(|(m, s)| m.mul(s)).collect() }
    }
}

impl<F: Field> Morphism<F> {
    /// `self ∘ g` (apply `g` first).
    pub fn after(&self, g: &Morphism<F>) -> Morphism<F> {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, g: &Morphism<F>) -> Morphism<F> {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, g: &Morphism<F>) -> Morphism<F> {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Morphism<F> {
        Morphism { maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && (m.rows() == 0 || m.is_invertible()))
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Mat::rank).sum()
    }

    pub fn inverse(&self) -> Option<Morphism<F>> {
        let maps: Option<Vec<Mat<F>>> = self
            .maps
            .iter()
            .map(|m| if m.rows() == 0 && m.cols() == 0 { Some(m.clone()) } else { m.inverse() })
            .collect();
        maps.map(|maps| Morphism { maps })
    }

    pub fn power(&self, n: usize) -> Morphism<F> {
        Morphism { maps: self.maps.iter().map(|m| m.pow(n)).collect() }
    }

    /// All entries concatenated vertex by vertex.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.maps.iter().flat_map(|m| m.data().iter().cloned()).collect()
    }

    /// Inverse of [`flatten`](Self::flatten) for the given shapes.
    pub fn unflatten(field: &F, shapes: &[(usize, usize)], v: &[F::Elem]) -> Morphism<F> {
        let mut off = 0;
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let m = Mat::from_vec(field, r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        Morphism { maps }
    }

    /// Kernel of `self: m → _` as a submodule of `m`.
    pub fn kernel(&self, m: &Representation<F>) -> (Representation<F>, Morphism<F>) {
        let f = m.field();
        let bases = self
            .maps
            .iter()
            .enumerate()
            .map(|(v, g)| Mat::from_columns(f, m.dims()[v], &g.kernel()))
            .collect();
        m.from_subspaces(bases)
    }

    /// Image of `self: _ → n` as a submodule of `n`.
    pub fn image(&self, n: &Representation<F>) -> (Representation<F>, Morphism<F>) {
        let f = n.field();
        let bases = self
            .maps
            .iter()
            .enumerate()
            .map(|(v, g)| Mat::from_columns(f, n.dims()[v], &g.column_space()))
            .collect();
        n.from_subspaces(bases)
    }

    /// Cokernel of `self: _ → n`.
    pub fn cokernel(&self, n: &Representation<F>) -> Quotient<F> {
        let (_, inc) = self.image(n);
        n.quotient_by_subspaces(&inc.maps)
    }
}

trait RowsVec<F: Field> {
    fn rows_vec(&self) -> Vec<Vec<F::Elem>>;
}

impl<F: Field> RowsVec<F> for Mat<F> {
    fn rows_vec(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}
