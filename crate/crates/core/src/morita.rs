//! Bimodules, tensor products over a middle algebra, and checks for the
//! conditions of a stable equivalence of Morita type.
//!
//! A `(B, A)`-bimodule is a left module over `B ⊗ A^op`. With `nA` vertices
//! on the right, the space `e_c M e_a` sits at vertex `c * nA + a`; the left
//! action of a `B`-arrow `β` on the column `a` is arrow `β * nA + a`, and the
//! right action of an `A`-arrow `α: s → t` on the row `c` is arrow
//! `|Q_B|₁ * nA + c * |Q_A|₁ + α`, a map `e_c M e_t → e_c M e_s`.

use std::sync::Arc;
use std::thread;

use serde::Serialize;

use crate::analysis::{analyze, Options, Stages};
use crate::error::{Error, Result};
use crate::exactla::{AbelianGroupDescription, Field, Mat};
use crate::gorenstein::{CatalogVerdict, Dim, GorensteinStatus, DEFAULT_BOUND};
use crate::presentation::FiniteDimAlgebra;
use crate::rep::right_multiplication;
use crate::rep::{decompose_with_embeddings, hom_basis, is_isomorphic, Alg, HomSpace, Morphism, Quotient, Representation};

fn is_ground<F: Field>(a: &FiniteDimAlgebra<F>) -> bool {
    a.vertex_count() == 1 && a.quiver().arrow_count() == 0
}

fn same<F: Field>(x: &Alg<F>, y: &Alg<F>) -> bool {
    Arc::ptr_eq(x, y) || **x == **y
}

/// The enveloping algebra `B ⊗ A^op`. When one side is the ground field the
/// other side's algebra is returned as is; the arrow numbering agrees.
pub fn envelope<F: Field>(b: &Alg<F>, a: &Alg<F>) -> Alg<F> {
    if is_ground(a) {
        b.clone()
    } else if is_ground(b) {
        a.opposite()
    } else {
        let op = a.opposite();
        Arc::new(FiniteDimAlgebra::tensor(b, &op))
    }
}

#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    left: Alg<F>,
    right: Alg<F>,
    env: Alg<F>,
    module: Representation<F>,
}

impl<F: Field> Bimodule<F> {
    /// Wrap a module over `envelope(left, right)`.
    pub fn from_module(left: Alg<F>, right: Alg<F>, env: Alg<F>, module: Representation<F>) -> Result<Self> {
        if !same(module.algebra(), &env) {
            return Err(Error::AlgebraMismatch);
        }
        let b = Bimodule { left, right, env, module };
        if b.env.vertex_count() != b.nl() * b.nr() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(b)
    }

    /// Build from the spaces `dims[c][a]`, the left maps `left_maps[β][a]`
    /// and the right maps `right_maps[α][c]`; checks that the actions commute
    /// and satisfy both sets of relations.
    pub fn from_actions(
        left: &Alg<F>,
        right: &Alg<F>,
        dims: Vec<Vec<usize>>,
        left_maps: Vec<Vec<Mat<F>>>,
        right_maps: Vec<Vec<Mat<F>>>,
    ) -> Result<Self> {
        let env = envelope(left, right);
        let flat: Vec<usize> = dims.iter().flatten().copied().collect();
        let mut maps: Vec<Mat<F>> = left_maps.into_iter().flatten().collect();
        maps.extend(transpose_blocks(right_maps, left.vertex_count()));
        let module = Representation::new(env.clone(), flat, maps)?;
        Self::from_module(left.clone(), right.clone(), env, module)
    }

    /// `A` as an `(A, A)`-bimodule. The basis path `p: s → t` lives at `(t, s)`.
    pub fn regular(a: &Alg<F>) -> Self {
        let f = a.field();
        let n = a.vertex_count();
        let q = a.quiver();
        let space = |c: usize, v: usize| a.paths_between(v, c);
        let dims: Vec<Vec<usize>> = (0..n).map(|c| (0..n).map(|v| space(c, v).len()).collect()).collect();
        let mult = |x: Option<usize>, from: &[usize], to: &[usize], on_left: bool| {
            let mut m = Mat::zeros(f, to.len(), from.len());
            if let Some(x) = x {
                for (col, &p) in from.iter().enumerate() {
                    let prod = if on_left { a.mul_basis(x, p) } else { a.mul_basis(p, x) };
                    for (k, c) in prod {
                        let row = to.iter().position(|y| y == k).expect("graded product");
                        m.set(row, col, f.add(m.get(row, col), c));
                    }
                }
            }
            m
        };
        let left_maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, ar)| {
                (0..n).map(|v| mult(a.arrow_elem(i), &space(ar.source, v), &space(ar.target, v), true)).collect()
            })
            .collect();
        let right_maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, ar)| {
                (0..n).map(|c| mult(a.arrow_elem(i), &space(c, ar.target), &space(c, ar.source), false)).collect()
            })
            .collect();
        Self::from_actions(a, a, dims, left_maps, right_maps).expect("regular bimodule")
    }

    pub fn zero(left: &Alg<F>, right: &Alg<F>) -> Self {
        let env = envelope(left, right);
        let module = Representation::zero(&env);
        Bimodule { left: left.clone(), right: right.clone(), env, module }
    }

    /// The indecomposable projective bimodule `B e_u ⊗ e_v A`.
    pub fn projective(left: &Alg<F>, right: &Alg<F>, u: usize, v: usize) -> Self {
        let env = envelope(left, right);
        let module = Representation::projective(&env, u * right.vertex_count() + v);
        Bimodule { left: left.clone(), right: right.clone(), env, module }
    }

    /// A left `A`-module as an `(A, k)`-bimodule.
    pub fn from_left_module(x: &Representation<F>) -> Self {
        let a = x.algebra().clone();
        let k = Arc::new(FiniteDimAlgebra::ground_field(x.field().clone()));
        Bimodule { left: a.clone(), right: k, env: a, module: x.clone() }
    }

    /// A right `A`-module, given as a left `A^op`-module, as a `(k, A)`-bimodule.
    pub fn from_right_module(a: &Alg<F>, y: &Representation<F>) -> Result<Self> {
        let op = a.opposite();
        if !same(y.algebra(), &op) {
            return Err(Error::AlgebraMismatch);
        }
        let k = Arc::new(FiniteDimAlgebra::ground_field(y.field().clone()));
        let module = y.over(&op);
        Ok(Bimodule { left: k, right: a.clone(), env: op, module })
    }

    pub fn left(&self) -> &Alg<F> {
        &self.left
    }

    pub fn right(&self) -> &Alg<F> {
        &self.right
    }

    pub fn envelope(&self) -> &Alg<F> {
        &self.env
    }

    pub fn module(&self) -> &Representation<F> {
        &self.module
    }

    pub fn field(&self) -> &F {
        self.left.field()
    }

    pub fn total_dim(&self) -> usize {
        self.module.total_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    fn nl(&self) -> usize {
        self.left.vertex_count()
    }

    fn nr(&self) -> usize {
        self.right.vertex_count()
    }

    pub fn space(&self, c: usize, a: usize) -> usize {
        self.module.dim_at(c * self.nr() + a)
    }

    /// Left action of `β: s → t` on column `a`: `e_s M e_a → e_t M e_a`.
    pub fn left_map(&self, beta: usize, a: usize) -> &Mat<F> {
        self.module.map(beta * self.nr() + a)
    }

    /// Right action of `α: s → t` on row `c`: `e_c M e_t → e_c M e_s`.
    pub fn right_map(&self, alpha: usize, c: usize) -> &Mat<F> {
        let off = self.left.quiver().arrow_count() * self.nr();
        self.module.map(off + c * self.right.quiver().arrow_count() + alpha)
    }

    /// `M e_a` as a left `B`-module.
    pub fn column(&self, a: usize) -> Representation<F> {
        let dims = (0..self.nl()).map(|c| self.space(c, a)).collect();
        let maps = (0..self.left.quiver().arrow_count()).map(|b| self.left_map(b, a).clone()).collect();
        Representation::new_unchecked(self.left.clone(), dims, maps)
    }

    /// `e_c M` as a left `A^op`-module.
    pub fn row(&self, c: usize) -> Representation<F> {
        let dims = (0..self.nr()).map(|a| self.space(c, a)).collect();
        let maps = (0..self.right.quiver().arrow_count()).map(|x| self.right_map(x, c).clone()).collect();
        Representation::new_unchecked(self.right.opposite(), dims, maps)
    }

    /// `_B M` as a left module.
    pub fn restrict_left(&self) -> Representation<F> {
        let parts: Vec<_> = (0..self.nr()).map(|a| self.column(a)).collect();
        Representation::direct_sum_all(&self.left, &parts)
    }

    /// `M_A` as a left `A^op`-module.
    pub fn restrict_right(&self) -> Representation<F> {
        let parts: Vec<_> = (0..self.nl()).map(|c| self.row(c)).collect();
        Representation::direct_sum_all(&self.right.opposite(), &parts)
    }

    /// `(B, k)`-bimodules are left `B`-modules.
    pub fn into_left_module(self) -> Result<Representation<F>> {
        if !is_ground(&self.right) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.module.over(&self.left))
    }

    pub fn is_projective(&self) -> bool {
        self.module.is_projective()
    }

    /// Replace the module by an isomorphic one over the same envelope.
    fn with_module(&self, module: Representation<F>) -> Self {
        Bimodule { left: self.left.clone(), right: self.right.clone(), env: self.env.clone(), module }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.module.same_algebra(&other.module)?;
        Ok(self.with_module(self.module.direct_sum(&other.module)))
    }

    /// `*M = Hom_B(M, B)`, an `(A, B)`-bimodule.
    pub fn left_dual(&self) -> Result<Self> {
        let (b, a) = (&self.left, &self.right);
        let (nb, na) = (self.nl(), self.nr());
        let cols: Vec<_> = (0..na).map(|x| self.column(x)).collect();
        let proj: Vec<_> = (0..nb).map(|v| Representation::projective(b, v)).collect();
        let homs: Vec<Vec<HomSpace<F>>> =
            (0..na).map(|x| (0..nb).map(|v| hom_basis(&cols[x], &proj[v])).collect()).collect();
        let f = self.field();
        let dims: Vec<Vec<usize>> = homs.iter().map(|r| r.iter().map(HomSpace::dim).collect()).collect();
        // α·φ = φ ∘ (right action of α)
        let left_maps = a
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(al, ar)| {
                let rho = Morphism { maps: (0..nb).map(|c| self.right_map(al, c).clone()).collect() };
                (0..nb)
                    .map(|v| {
                        let (from, to) = (&homs[ar.source][v], &homs[ar.target][v]);
                        action_matrix(f, from, to, |g| g.after(&rho))
                    })
                    .collect()
            })
            .collect();
        // φ·β = (right multiplication by β) ∘ φ
        let right_maps = b
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(be, br)| {
                let r = right_multiplication(b, be, &proj[br.target], &proj[br.source]);
                (0..na)
                    .map(|x| {
                        let (from, to) = (&homs[x][br.target], &homs[x][br.source]);
                        action_matrix(f, from, to, |g| r.after(g))
                    })
                    .collect()
            })
            .collect();
        Self::from_actions(a, b, dims, left_maps, right_maps)
    }

    /// `M* = Hom_{A^op}(M, A)`, an `(A, B)`-bimodule.
    pub fn right_dual(&self) -> Result<Self> {
        let (b, a) = (&self.left, &self.right);
        let (nb, na) = (self.nl(), self.nr());
        let op = a.opposite();
        let rows: Vec<_> = (0..nb).map(|c| self.row(c)).collect();
        let proj: Vec<_> = (0..na).map(|v| Representation::projective(&op, v)).collect();
        let homs: Vec<Vec<HomSpace<F>>> =
            (0..na).map(|x| (0..nb).map(|c| hom_basis(&rows[c], &proj[x])).collect()).collect();
        let f = self.field();
        let dims: Vec<Vec<usize>> = homs.iter().map(|r| r.iter().map(HomSpace::dim).collect()).collect();
        // α·φ = (left multiplication by α) ∘ φ
        let left_maps = a
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(al, ar)| {
                let l = right_multiplication(&op, al, &proj[ar.source], &proj[ar.target]);
                (0..nb)
                    .map(|c| {
                        let (from, to) = (&homs[ar.source][c], &homs[ar.target][c]);
                        action_matrix(f, from, to, |g| l.after(g))
                    })
                    .collect()
            })
            .collect();
        // φ·β = φ ∘ (left action of β)
        let right_maps = b
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(be, br)| {
                let lam = Morphism { maps: (0..na).map(|x| self.left_map(be, x).clone()).collect() };
                (0..na)
                    .map(|x| {
                        let (from, to) = (&homs[x][br.target], &homs[x][br.source]);
                        action_matrix(f, from, to, |g| g.after(&lam))
                    })
                    .collect()
            })
            .collect();
        Self::from_actions(a, b, dims, left_maps, right_maps)
    }
}

/// Regroup `maps[α][c]` into the arrow order of the envelope (`c` outer).
fn transpose_blocks<F: Field>(maps: Vec<Vec<Mat<F>>>, rows: usize) -> Vec<Mat<F>> {
    let mut out: Vec<Option<Mat<F>>> = vec![None; maps.len() * rows];
    let n = maps.len();
    for (al, per_row) in maps.into_iter().enumerate() {
        for (c, m) in per_row.into_iter().enumerate() {
            out[c * n + al] = Some(m);
        }
    }
    out.into_iter().map(|m| m.expect("one map per row and arrow")).collect()
}

/// Matrix of `φ ↦ op(φ)` between two Hom spaces, in their bases.
fn action_matrix<F: Field>(f: &F, from: &HomSpace<F>, to: &HomSpace<F>, op: impl Fn(&Morphism<F>) -> Morphism<F>) -> Mat<F> {
    let cols: Vec<Vec<F::Elem>> =
        from.basis.iter().map(|g| to.coordinates(&op(g)).expect("action preserves module maps")).collect();
    Mat::from_columns(f, to.dim(), &cols)
}

/// `⊕_b M(c, b) ⊗ N(b, a)` before dividing out the balanced relations.
struct RawTensor<F: Field> {
    quotient: Quotient<F>,
    /// `offsets[c * nA + a][b]`: where the `b` block starts.
    offsets: Vec<Vec<usize>>,
}

fn raw_tensor<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, env: &Alg<F>) -> RawTensor<F> {
    let f = m.field();
    let (c_alg, b_alg, a_alg) = (&m.left, &m.right, &n.right);
    let (nc, nb, na) = (c_alg.vertex_count(), b_alg.vertex_count(), a_alg.vertex_count());
    let idx = |c: usize, a: usize| c * na + a;
    let mut offsets = vec![Vec::with_capacity(nb); nc * na];
    let mut dims = vec![0usize; nc * na];
    for c in 0..nc {
        for a in 0..na {
            let mut off = 0;
            for b in 0..nb {
                offsets[idx(c, a)].push(off);
                off += m.space(c, b) * n.space(b, a);
            }
            dims[idx(c, a)] = off;
        }
    }
    let mut maps = Vec::new();
    for (g, gr) in c_alg.quiver().arrows().iter().enumerate() {
        for a in 0..na {
            let (s, t) = (idx(gr.source, a), idx(gr.target, a));
            let mut mat = Mat::zeros(f, dims[t], dims[s]);
            for b in 0..nb {
                let blk = m.left_map(g, b).kron(&Mat::identity(f, n.space(b, a)));
                mat.paste(offsets[t][b], offsets[s][b], &blk);
            }
            maps.push(mat);
        }
    }
    for c in 0..nc {
        for (al, ar) in a_alg.quiver().arrows().iter().enumerate() {
            let (s, t) = (idx(c, ar.source), idx(c, ar.target));
            let mut mat = Mat::zeros(f, dims[s], dims[t]);
            for b in 0..nb {
                let blk = Mat::identity(f, m.space(c, b)).kron(n.right_map(al, b));
                mat.paste(offsets[s][b], offsets[t][b], &blk);
            }
            maps.push(mat);
        }
    }
    let w = Representation::new_unchecked(env.clone(), dims.clone(), maps);
    // m·β ⊗ x − m ⊗ β·x for every middle arrow β: s → t
    let bases: Vec<Mat<F>> = (0..nc)
        .flat_map(|c| (0..na).map(move |a| (c, a)))
        .map(|(c, a)| {
            let v = idx(c, a);
            let mut gens = Mat::zeros(f, dims[v], 0);
            for (be, br) in b_alg.quiver().arrows().iter().enumerate() {
                let (s, t) = (br.source, br.target);
                let cols = m.space(c, t) * n.space(s, a);
                let mut rel = Mat::zeros(f, dims[v], cols);
                rel.paste(offsets[v][s], 0, &m.right_map(be, c).kron(&Mat::identity(f, n.space(s, a))));
                // a loop (s = t) hits the same block twice
                let blk = Mat::identity(f, m.space(c, t)).kron(n.left_map(be, a));
                let cur = rel.block(offsets[v][t], 0, blk.rows(), cols);
                rel.paste(offsets[v][t], 0, &cur.sub(&blk));
                gens = gens.hstack(&rel);
            }
            gens
        })
        .collect();
    let quotient = w.quotient_by_subspaces(&bases);
    debug_assert_eq!(
        quotient.module.total_dim(),
        bases.iter().map(|g| g.rows() - g.rank()).sum::<usize>()
    );
    RawTensor { quotient, offsets }
}

fn product_envelope<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Alg<F> {
    if same(&m.right, &n.right) {
        m.env.clone()
    } else if same(&n.left, &m.left) {
        n.env.clone()
    } else {
        envelope(&m.left, &n.right)
    }
}

/// `M ⊗_B N` for `M` over `(C, B)` and `N` over `(B, A)`.
pub fn tensor_bimodules<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Bimodule<F>> {
    if !same(&m.right, &n.left) {
        return Err(Error::AlgebraMismatch);
    }
    let env = product_envelope(m, n);
    let raw = raw_tensor(m, n, &env);
    Ok(Bimodule { left: m.left.clone(), right: n.right.clone(), env, module: raw.quotient.module })
}

/// `T_M(X) = M ⊗_A X` for `M` over `(B, A)` and a left `A`-module `X`.
pub fn tensor<F: Field>(m: &Bimodule<F>, x: &Representation<F>) -> Result<Representation<F>> {
    if !same(&m.right, x.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    tensor_bimodules(m, &Bimodule::from_left_module(x))?.into_left_module()
}

/// `f ⊗ N: M ⊗_B N → M' ⊗_B N` for a bimodule map `f: M → M'`, with the
/// two products.
pub fn tensor_map<F: Field>(
    f: &Morphism<F>,
    m: &Bimodule<F>,
    m2: &Bimodule<F>,
    n: &Bimodule<F>,
) -> Result<(Bimodule<F>, Bimodule<F>, Morphism<F>)> {
    m.module.same_algebra(&m2.module)?;
    if !same(&m.right, &n.left) {
        return Err(Error::AlgebraMismatch);
    }
    if !m.module.is_morphism_to(&m2.module, f) {
        return Err(Error::InvalidRepresentation("not a bimodule map".into()));
    }
    let field = m.field();
    let env = product_envelope(m, n);
    let r1 = raw_tensor(m, n, &env);
    let r2 = raw_tensor(m2, n, &env);
    let (nb, na) = (m.nr(), n.nr());
    let w1 = &r1.quotient.sections;
    let maps = (0..m.nl() * na)
        .map(|v| {
            let (c, a) = (v / na, v % na);
            let rows = r2.quotient.proj.maps[v].cols();
            let cols = r1.quotient.proj.maps[v].cols();
            let mut big = Mat::zeros(field, rows, cols);
            for b in 0..nb {
                let blk = f.maps[c * nb + b].kron(&Mat::identity(field, n.space(b, a)));
                big.paste(r2.offsets[v][b], r1.offsets[v][b], &blk);
            }
            r2.quotient.proj.maps[v].mul(&big).mul(&w1[v])
        })
        .collect();
    let dom = Bimodule { left: m.left.clone(), right: n.right.clone(), env: env.clone(), module: r1.quotient.module };
    let cod = Bimodule { left: m.left.clone(), right: n.right.clone(), env, module: r2.quotient.module };
    Ok((dom, cod, Morphism { maps }))
}

/// `f ⊗_A X` as a map of left modules.
pub fn tensor_map_module<F: Field>(
    f: &Morphism<F>,
    m: &Bimodule<F>,
    m2: &Bimodule<F>,
    x: &Representation<F>,
) -> Result<(Representation<F>, Representation<F>, Morphism<F>)> {
    let (d, c, g) = tensor_map(f, m, m2, &Bimodule::from_left_module(x))?;
    Ok((d.into_left_module()?, c.into_left_module()?, g))
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub dim: usize,
    pub left_projective: bool,
    pub right_projective: bool,
    pub duals_isomorphic: bool,
    pub left_dual_dim: usize,
    pub right_dual_dim: usize,
    pub is_frobenius: bool,
}

/// Both restrictions projective, `Hom_B(M, B) ≅ Hom_{A^op}(M, A)` as
/// bimodules, and `M ≠ 0`.
pub fn check_frobenius_bimodule<F: Field>(m: &Bimodule<F>) -> Result<FrobeniusReport> {
    let left_projective = m.restrict_left().is_projective();
    let right_projective = m.restrict_right().is_projective();
    let ld = m.left_dual()?;
    let rd = m.right_dual()?;
    let duals_isomorphic = is_isomorphic(&ld.module, &rd.module)?.is_some();
    let dim = m.total_dim();
    Ok(FrobeniusReport {
        dim,
        left_projective,
        right_projective,
        duals_isomorphic,
        left_dual_dim: ld.total_dim(),
        right_dual_dim: rd.total_dim(),
        is_frobenius: dim > 0 && left_projective && right_projective && duals_isomorphic,
    })
}

/// One side of a stable equivalence of Morita type: `X ≅ R ⊕ P` with `R`
/// the regular bimodule and `P` projective.
#[derive(Clone, Debug)]
pub struct SplitProduct<F: Field> {
    pub product: Bimodule<F>,
    /// The summands matched with the regular bimodule, then the rest.
    pub summands: Vec<Representation<F>>,
    pub regular_count: usize,
    /// Projection of `product` onto the regular part, and the inclusion back.
    pub to_regular: Option<Morphism<F>>,
    pub from_regular: Option<Morphism<F>>,
    pub regular_found: bool,
    pub complement_projective: bool,
    pub witness: Option<String>,
}

impl<F: Field> SplitProduct<F> {
    pub fn passed(&self) -> bool {
        self.regular_found && self.complement_projective
    }

    fn part(&self, range: std::ops::Range<usize>) -> Bimodule<F> {
        let env = &self.product.env;
        self.product.with_module(Representation::direct_sum_all(env, &self.summands[range]))
    }

    pub fn regular_part(&self) -> Bimodule<F> {
        self.part(0..self.regular_count)
    }

    pub fn complement(&self) -> Bimodule<F> {
        self.part(self.regular_count..self.summands.len())
    }
}

fn split_regular<F: Field>(product: Bimodule<F>, algebra: &Alg<F>, side: &str) -> Result<SplitProduct<F>> {
    let regular = Bimodule::regular(algebra);
    let reg_parts = decompose_with_embeddings(&regular.module.over(&product.env))?;
    let parts = decompose_with_embeddings(&product.module)?;
    let mut used = vec![false; parts.len()];
    let mut order = Vec::new();
    let mut witness = None;
    for (j, (r, _)) in reg_parts.iter().enumerate() {
        let mut hit = None;
        for (i, (p, _)) in parts.iter().enumerate() {
            if !used[i] && is_isomorphic(r, p)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                used[i] = true;
                order.push(i);
            }
            None => {
                witness = Some(format!(
                    "{side}: no summand isomorphic to regular summand {j} (dimension vector {:?})",
                    r.dims()
                ));
                break;
            }
        }
    }
    let regular_found = witness.is_none();
    let regular_count = order.len();
    order.extend((0..parts.len()).filter(|&i| !used[i]));
    let mut complement_projective = true;
    for &i in &order[regular_count..] {
        if !parts[i].0.is_projective() {
            complement_projective = false;
            if witness.is_none() {
                witness = Some(format!(
                    "{side}: complement summand with dimension vector {:?} is not a projective bimodule",
                    parts[i].0.dims()
                ));
            }
            break;
        }
    }
    let summands: Vec<_> = order.iter().map(|&i| parts[i].0.clone()).collect();
    let (to_regular, from_regular) = if regular_found {
        let f = product.field();
        let nv = product.env.vertex_count();
        let mut inc = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for v in 0..nv {
            let full = order.iter().fold(Mat::zeros(f, product.module.dim_at(v), 0), |acc, &i| acc.hstack(&parts[i].1.maps[v]));
            let reg: usize = order[..regular_count].iter().map(|&i| parts[i].0.dim_at(v)).sum();
            let inv = full.inverse().ok_or(Error::NotInvertible)?;
            proj.push(inv.block(0, 0, reg, inv.cols()));
            inc.push(full.block(0, 0, full.rows(), reg));
        }
        (Some(Morphism { maps: proj }), Some(Morphism { maps: inc }))
    } else {
        (None, None)
    };
    Ok(SplitProduct {
        product,
        summands,
        regular_count,
        to_regular,
        from_regular,
        regular_found,
        complement_projective,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct SemtReport<F: Field> {
    /// `N ⊗_B M ≅ A ⊕ P`.
    pub left: SplitProduct<F>,
    /// `M ⊗_A N ≅ B ⊕ Q`.
    pub right: SplitProduct<F>,
}

impl<F: Field> SemtReport<F> {
    pub fn passed(&self) -> bool {
        self.left.passed() && self.right.passed()
    }

    pub fn witnesses(&self) -> Vec<String> {
        self.left.witness.iter().chain(&self.right.witness).cloned().collect()
    }
}

/// Decide whether `M` over `(B, A)` and `N` over `(A, B)` satisfy
/// `N ⊗_B M ≅ A ⊕ P` and `M ⊗_A N ≅ B ⊕ Q` with `P`, `Q` projective.
pub fn check_semt<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<SemtReport<F>> {
    if !same(&m.right, &n.left) || !same(&m.left, &n.right) {
        return Err(Error::AlgebraMismatch);
    }
    let nm = tensor_bimodules(n, m)?;
    let mn = tensor_bimodules(m, n)?;
    let left = split_regular(nm, &m.right, "N⊗M")?;
    let right = split_regular(mn, &m.left, "M⊗N")?;
    Ok(SemtReport { left, right })
}

#[derive(Clone, Debug, Serialize)]
pub struct CokernelCheck {
    pub sample: usize,
    pub sample_dims: Vec<usize>,
    pub dims: Vec<usize>,
    /// `η_X` is injective (resp. `ε_Y` surjective).
    pub split: bool,
    /// Agrees with `P ⊗ X` (resp. `Q ⊗ Y`).
    pub matches_tensor: bool,
    pub projective: bool,
    pub projective_dimension: Dim,
}

impl CokernelCheck {
    pub fn passed(&self) -> bool {
        self.split && self.matches_tensor && self.projective
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitCounitReport {
    pub semt_passed: bool,
    pub unit: Vec<CokernelCheck>,
    pub counit: Vec<CokernelCheck>,
    pub notes: Vec<String>,
}

impl UnitCounitReport {
    pub fn passed(&self) -> bool {
        self.semt_passed && self.unit.iter().chain(&self.counit).all(CokernelCheck::passed)
    }
}

fn pd_of<F: Field>(x: &Representation<F>) -> Dim {
    match x.projective_dimension(DEFAULT_BOUND) {
        Some(d) => Dim::Exact(d),
        None => Dim::AtLeast(DEFAULT_BOUND),
    }
}

/// For each sample `X` over `A`: `Coker(η_X)` against `P ⊗_A X`; for each
/// sample `Y` over `B`: `Ker(ε_Y)` against `Q ⊗_B Y`. The unit and counit
/// come from the regular summands found by [`check_semt`].
pub fn check_unit_counit_pd<F: Field>(
    m: &Bimodule<F>,
    n: &Bimodule<F>,
    xs: &[Representation<F>],
    ys: &[Representation<F>],
) -> Result<UnitCounitReport> {
    let semt = check_semt(m, n)?;
    let mut notes = semt.witnesses();
    let mut report = UnitCounitReport { semt_passed: semt.passed(), unit: vec![], counit: vec![], notes: vec![] };
    let (Some(iota), Some(pi)) = (&semt.left.from_regular, &semt.right.to_regular) else {
        notes.push("no regular summand: unit and counit are undefined".into());
        report.notes = notes;
        return Ok(report);
    };
    let (lreg, lcomp) = (semt.left.regular_part(), semt.left.complement());
    for (i, x) in xs.iter().enumerate() {
        let (_, _, eta) = tensor_map_module(iota, &lreg, &semt.left.product, x)?;
        let (dom, cod) = (tensor(&lreg, x)?, tensor(&semt.left.product, x)?);
        let coker = eta.cokernel(&cod).module;
        let expected = tensor(&lcomp, x)?;
        report.unit.push(CokernelCheck {
            sample: i,
            sample_dims: x.dims().to_vec(),
            dims: coker.dims().to_vec(),
            split: eta.is_injective() && is_isomorphic(&dom, x)?.is_some(),
            matches_tensor: is_isomorphic(&coker, &expected)?.is_some(),
            projective: coker.is_projective(),
            projective_dimension: pd_of(&coker),
        });
    }
    let (rreg, rcomp) = (semt.right.regular_part(), semt.right.complement());
    for (i, y) in ys.iter().enumerate() {
        let (dom, _, eps) = tensor_map_module(pi, &semt.right.product, &rreg, y)?;
        let ker = eps.kernel(&dom).0;
        let expected = tensor(&rcomp, y)?;
        let cod = tensor(&rreg, y)?;
        report.counit.push(CokernelCheck {
            sample: i,
            sample_dims: y.dims().to_vec(),
            dims: ker.dims().to_vec(),
            split: eps.is_surjective() && is_isomorphic(&cod, y)?.is_some(),
            matches_tensor: is_isomorphic(&ker, &expected)?.is_some(),
            projective: ker.is_projective(),
            projective_dimension: pd_of(&ker),
        });
    }
    report.notes = notes;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantRow {
    pub algebra: String,
    pub dim: usize,
    pub gorenstein: GorensteinStatus,
    pub global_dim: Dim,
    pub cm: CatalogVerdict,
    pub gp_classes: usize,
    pub k0: Option<AbelianGroupDescription>,
    pub k1: Option<AbelianGroupDescription>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantComparison {
    pub left: InvariantRow,
    pub right: InvariantRow,
    pub k0_equal: Option<bool>,
    pub k1_equal: Option<bool>,
    pub cm_equal: bool,
    pub gp_classes_equal: bool,
    pub gorenstein_equal: bool,
    pub warnings: Vec<String>,
}

impl InvariantComparison {
    pub fn all_equal(&self) -> bool {
        self.k0_equal == Some(true)
            && self.k1_equal == Some(true)
            && self.cm_equal
            && self.gp_classes_equal
            && self.gorenstein_equal
    }
}

fn row<F: Field>(a: &Alg<F>, opts: &Options) -> Result<(InvariantRow, Vec<String>)>
where
    F::Elem: Send + Sync,
{
    let stages = Stages { catalog: true, k0: true, k1: true, oracle: false };
    let an = analyze(a, opts, stages)?;
    let catalog = an.catalog.as_ref().expect("catalog stage ran");
    if let CatalogVerdict::Unknown(r) = &catalog.verdict {
        return Err(Error::CatalogUnknown(format!("{}: {r}", a.name())));
    }
    let warnings = an.warnings.iter().map(|w| format!("{}: {w}", a.name())).collect();
    Ok((
        InvariantRow {
            algebra: a.name().to_string(),
            dim: a.dim(),
            gorenstein: an.report.is_gorenstein,
            global_dim: an.report.global_dim,
            cm: catalog.verdict.clone(),
            gp_classes: catalog.items.len(),
            k0: an.k0.map(|k| k.group),
            k1: an.k1.and_then(|k| k.group),
        },
        warnings,
    ))
}

fn groups_equal(x: &Option<AbelianGroupDescription>, y: &Option<AbelianGroupDescription>) -> Option<bool> {
    match (x, y) {
        (Some(x), Some(y)) => Some(x.same_group(y)),
        _ => None,
    }
}

/// Gorenstein invariants of two algebras side by side; both are analysed
/// concurrently.
pub fn compare_invariants<F: Field>(a: &Alg<F>, b: &Alg<F>, opts: &Options) -> Result<InvariantComparison>
where
    F::Elem: Send + Sync,
{
    let (ra, rb) = thread::scope(|s| {
        let ha = s.spawn(|| row(a, opts));
        let rb = row(b, opts);
        (ha.join().expect("analysis thread"), rb)
    });
    let (left, mut warnings) = ra?;
    let (right, wb) = rb?;
    warnings.extend(wb);
    let gorenstein_equal = matches!(
        (left.gorenstein, right.gorenstein),
        (GorensteinStatus::Yes(_), GorensteinStatus::Yes(_)) | (GorensteinStatus::NoWithinBound, GorensteinStatus::NoWithinBound)
    );
    Ok(InvariantComparison {
        k0_equal: groups_equal(&left.k0, &right.k0),
        k1_equal: groups_equal(&left.k1, &right.k1),
        cm_equal: std::mem::discriminant(&left.cm) == std::mem::discriminant(&right.cm),
        gp_classes_equal: left.gp_classes == right.gp_classes,
        gorenstein_equal,
        left,
        right,
        warnings,
    })
}
