use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{EchelonSpace, Field, Mat};

use super::quiver::{enumerate_paths, Arrow, Path, Quiver, RelationElem};

/// Sparse vector in the algebra basis.
pub type Sparse<E> = Vec<(usize, E)>;

/// A finite-dimensional quotient `kQ/I` with a basis of paths and a
/// multiplication table.
///
/// Products follow the path convention: `b_i * b_j` means `b_j` first, so a
/// nonzero product needs `target(b_j) == source(b_i)`.
pub struct FiniteDimAlgebra<F: Field> {
    field: F,
    quiver: Quiver,
    relations: Vec<RelationElem<F>>,
    basis: Vec<Path>,
    table: Vec<Sparse<F::Elem>>,
    vertex_elems: Vec<usize>,
    arrow_elems: Vec<Option<usize>>,
    monomial: bool,
    loewy_length: usize,
    fingerprint: u64,
    name: String,
    opposite: OnceLock<Arc<FiniteDimAlgebra<F>>>,
}

impl<F: Field> fmt::Debug for FiniteDimAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteDimAlgebra")
            .field("name", &self.name)
            .field("field", &self.field.spec())
            .field("vertices", &self.quiver.vertex_count())
            .field("arrows", &self.quiver.arrow_count())
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl<F: Field> PartialEq for FiniteDimAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.quiver == other.quiver
            && self.basis == other.basis
            && self.table == other.table
    }
}

/// Build `kQ/I` from generators of `I`.
///
/// The ideal is saturated under multiplication by arrows modulo paths longer
/// than `L`, for `L = 1, 2, ..., max_len`; the first `L` for which every path
/// of length `L` lies in the span proves `J^L ⊆ I` and fixes the quotient.
/// Normal words are the paths that are not leading terms (leading = largest in
/// the canonical order), so the basis is made of the smallest paths.
pub fn build_algebra<F: Field>(
    quiver: Quiver,
    relations: Vec<RelationElem<F>>,
    field: F,
    max_len: usize,
) -> Result<FiniteDimAlgebra<F>> {
    for r in &relations {
        for (_, p) in r.terms() {
            if p.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "term {} has length below 2",
                    p.written(&quiver)
                )));
            }
            if p.arrows.iter().any(|&a| a >= quiver.arrow_count()) {
                return Err(Error::InvalidRelation("unknown arrow index".into()));
            }
        }
    }
    let mut last_detail = String::new();
    for len in 1..=max_len.max(1) {
        match reduce_at_length(&quiver, &relations, &field, len) {
            Ok((basis, normal)) => {
                let table = mult_table(&quiver, &basis, &normal, &field);
                return Ok(FiniteDimAlgebra::from_parts(field, quiver, relations, basis, table));
            }
            Err(p) => last_detail = format!("path {} survives", p.written(&quiver)),
        }
    }
    Err(Error::NotAdmissibleWithinBound { max_len, detail: last_detail })
}

/// Normal-form data: for every path up to length `len`, its expansion in the
/// normal words.
struct NormalForms<F: Field> {
    index: HashMap<(usize, Vec<usize>), usize>,
    /// `form[path index]` = sparse combination of basis positions.
    form: Vec<Sparse<F::Elem>>,
    len: usize,
}

impl<F: Field> NormalForms<F> {
    fn of(&self, p: &Path) -> Option<&Sparse<F::Elem>> {
        if p.len() > self.len {
            return None;
        }
        self.index.get(&(p.source, p.arrows.clone())).map(|&i| &self.form[i])
    }
}

fn reduce_at_length<F: Field>(
    q: &Quiver,
    relations: &[RelationElem<F>],
    field: &F,
    len: usize,
) -> std::result::Result<(Vec<Path>, NormalForms<F>), Path> {
    let paths = enumerate_paths(q, len);
    let n = paths.len();
    let index: HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
    let col = |i: usize| n - 1 - i;
    let mut space = EchelonSpace::new(field, n);
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    let to_vec = |terms: &[(F::Elem, Path)]| {
        let mut v = vec![field.zero(); n];
        for (c, p) in terms {
            if let Some(&i) = index.get(&(p.source, p.arrows.clone())) {
                v[col(i)] = field.add(&v[col(i)], c);
            }
        }
        v
    };
    for r in relations {
        queue.push(to_vec(r.terms()));
    }
    while let Some(v) = queue.pop() {
        if !space.insert(&v) {
            continue;
        }
        let terms: Vec<(F::Elem, &Path)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(j, c)| (c.clone(), &paths[n - 1 - j]))
            .collect();
        for (ai, a) in q.arrows().iter().enumerate() {
            let arrow = Path { source: a.source, target: a.target, arrows: vec![ai] };
            // arrow after / before every term
            let after: Vec<(F::Elem, Path)> =
                terms.iter().filter_map(|(c, p)| p.then(&arrow).map(|x| (c.clone(), x))).collect();
            let before: Vec<(F::Elem, Path)> =
                terms.iter().filter_map(|(c, p)| arrow.then(p).map(|x| (c.clone(), x))).collect();
            for t in [after, before] {
                if !t.is_empty() {
                    let w = to_vec(&t);
                    if w.iter().any(|x| !field.is_zero(x)) {
                        queue.push(w);
                    }
                }
            }
        }
    }
    let mut pivot_row = vec![None; n];
    for (k, &p) in space.pivots().iter().enumerate() {
        pivot_row[n - 1 - p] = Some(k);
    }
    if let Some(p) = paths.iter().enumerate().find(|(i, p)| p.len() == len && pivot_row[*i].is_none()) {
        return Err(p.1.clone());
    }
    let basis_idx: Vec<usize> = (0..n).filter(|&i| pivot_row[i].is_none()).collect();
    let mut pos = vec![usize::MAX; n];
    for (b, &i) in basis_idx.iter().enumerate() {
        pos[i] = b;
    }
    let form = (0..n)
        .map(|i| match pivot_row[i] {
            None => vec![(pos[i], field.one())],
            Some(k) => {
                let row = &space.rows()[k];
                row.iter()
                    .enumerate()
                    .filter(|(j, c)| *j != col(i) && !field.is_zero(c))
                    .map(|(j, c)| (pos[n - 1 - j], field.neg(c)))
                    .collect()
            }
        })
        .collect();
    let basis = basis_idx.iter().map(|&i| paths[i].clone()).collect();
    Ok((basis, NormalForms { index, form, len }))
}

fn mult_table<F: Field>(_q: &Quiver, basis: &[Path], nf: &NormalForms<F>, _field: &F) -> Vec<Sparse<F::Elem>> {
    let d = basis.len();
    let mut table = Vec::with_capacity(d * d);
    for bi in basis {
        for bj in basis {
            let entry = match bj.then(bi) {
                Some(p) => nf.of(&p).cloned().unwrap_or_default(),
                None => Vec::new(),
            };
            table.push(entry);
        }
    }
    table
}

impl<F: Field> FiniteDimAlgebra<F> {
    /// Assemble an algebra from a path basis and structure constants.
    pub(crate) fn from_parts(
        field: F,
        quiver: Quiver,
        relations: Vec<RelationElem<F>>,
        basis: Vec<Path>,
        table: Vec<Sparse<F::Elem>>,
    ) -> Self {
        let vertex_elems = (0..quiver.vertex_count())
            .map(|v| basis.iter().position(|p| p.is_trivial() && p.source == v).expect("vertex idempotent in basis"))
            .collect();
        let arrow_elems = (0..quiver.arrow_count())
            .map(|a| basis.iter().position(|p| p.arrows.len() == 1 && p.arrows[0] == a))
            .collect();
        let monomial = relations.iter().all(RelationElem::is_monomial);
        let mut alg = FiniteDimAlgebra {
            field,
            quiver,
            relations,
            basis,
            table,
            vertex_elems,
            arrow_elems,
            monomial,
            loewy_length: 0,
            fingerprint: 0,
            name: String::new(),
            opposite: OnceLock::new(),
        };
        alg.loewy_length = alg.compute_loewy_length();
        alg.fingerprint = alg.compute_fingerprint();
        alg
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.spec().hash(&mut h);
        self.quiver.hash(&mut h);
        self.basis.hash(&mut h);
        for e in &self.table {
            e.hash(&mut h);
        }
        h.finish()
    }

    fn compute_loewy_length(&self) -> usize {
        let f = &self.field;
        let d = self.dim();
        let rad: Vec<usize> = (0..d).filter(|&i| !self.basis[i].is_trivial()).collect();
        if rad.is_empty() {
            return 1;
        }
        // J^n as an echelon space, J^{n+1} = J^n · J
        let mut cur: Vec<Vec<F::Elem>> = rad
            .iter()
            .map(|&i| {
                let mut v = vec![f.zero(); d];
                v[i] = f.one();
                v
            })
            .collect();
        let mut n = 1;
        while !cur.is_empty() {
            let mut next = EchelonSpace::new(f, d);
            for x in &cur {
                for &j in &rad {
                    let mut e = vec![f.zero(); d];
                    e[j] = f.one();
                    next.insert(&self.mul(x, &e));
                }
            }
            cur = next.rows().to_vec();
            n += 1;
        }
        n
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[RelationElem<F>] {
        &self.relations
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
    pub fn is_monomial(&self) -> bool {
        self.monomial
    }
    /// Smallest `n` with `J^n = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Basis position of the idempotent `e_v`.
    pub fn vertex_elem(&self, v: usize) -> usize {
        self.vertex_elems[v]
    }

    /// Basis position of an arrow, `None` if the arrow vanishes in the quotient.
    pub fn arrow_elem(&self, a: usize) -> Option<usize> {
        self.arrow_elems[a]
    }

    /// `b_i * b_j` (apply `b_j` first).
    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse<F::Elem> {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, t) in self.mul_basis(i, j) {
                    out[*k] = f.add_mul(&out[*k], &c, t);
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for &i in &self.vertex_elems {
            v[i] = self.field.one();
        }
        v
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// The element represented by a path (folded through the table).
    pub fn path_element(&self, path: &Path) -> Vec<F::Elem> {
        let mut acc = self.basis_vector(self.vertex_elem(path.source));
        for &a in &path.arrows {
            match self.arrow_elem(a) {
                Some(i) => acc = self.mul(&self.basis_vector(i), &acc),
                None => return vec![self.field.zero(); self.dim()],
            }
        }
        acc
    }

    /// Matrix of left multiplication by `b_i` restricted to `e_t A e_s`-style
    /// blocks is not needed; this returns the full left-regular action.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let d = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Mat::from_columns(&self.field, d, &cols)
    }

    /// Check `(xy)z = x(yz)` on all basis triples.
    pub fn check_associativity(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.mul(&self.basis_vector(j), &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every relation evaluates to zero.
    pub fn relations_hold(&self) -> bool {
        let f = &self.field;
        self.relations.iter().all(|r| {
            let mut acc = vec![f.zero(); self.dim()];
            for (c, p) in r.terms() {
                let e = self.path_element(p);
                for (a, x) in acc.iter_mut().zip(&e) {
                    *a = f.add_mul(a, c, x);
                }
            }
            acc.iter().all(|x| f.is_zero(x))
        })
    }

    /// Basis positions of the paths from `s` to `t`, i.e. a basis of `e_t A e_s`.
    pub fn paths_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == s && self.basis[i].target == t).collect()
    }

    /// The opposite algebra on the reversed quiver; cached.
    pub fn opposite(self: &Arc<Self>) -> Arc<Self> {
        self.opposite
            .get_or_init(|| {
                let d = self.dim();
                let basis: Vec<Path> = self.basis.iter().map(Path::reversed).collect();
                let mut table = Vec::with_capacity(d * d);
                for i in 0..d {
                    for j in 0..d {
                        table.push(self.mul_basis(j, i).clone());
                    }
                }
                let rels = self.relations.iter().map(RelationElem::reversed).collect();
                let op = FiniteDimAlgebra::from_parts(self.field.clone(), self.quiver.reversed(), rels, basis, table)
                    .with_name(format!("{}^op", self.name));
                let op = Arc::new(op);
                // the double opposite is the original algebra itself
                let _ = op.opposite.set(self.clone());
                op
            })
            .clone()
    }

    /// The algebra with a single vertex and no arrows.
    pub fn ground_field(field: F) -> Self {
        let quiver = Quiver::from_parts(vec!["*".into()], vec![]);
        let one = field.one();
        FiniteDimAlgebra::from_parts(field, quiver, vec![], vec![Path::trivial(0)], vec![vec![(0, one)]])
            .with_name("k")
    }

    /// `B ⊗_k A` on the product quiver. Vertex `(u, v)` has index
    /// `u * |Q_A| + v`; arrows are `b|v` (all `B` arrows first) then `u|a`;
    /// basis element `(i, j)` has index `i * dim A + j`.
    pub fn tensor(b: &Self, a: &Self) -> Self {
        assert_eq!(b.field, a.field, "tensor over different fields");
        let field = b.field.clone();
        let (qb, qa) = (&b.quiver, &a.quiver);
        let (nb, na) = (qb.vertex_count(), qa.vertex_count());
        let vtx = |u: usize, v: usize| u * na + v;
        let mut vertices = Vec::with_capacity(nb * na);
        for u in qb.vertices() {
            for v in qa.vertices() {
                vertices.push(format!("{u}|{v}"));
            }
        }
        let mut arrows = Vec::new();
        for bar in qb.arrows() {
            for v in 0..na {
                arrows.push(Arrow {
                    label: format!("{}|{}", bar.label, qa.vertices()[v]),
                    source: vtx(bar.source, v),
                    target: vtx(bar.target, v),
                });
            }
        }
        let off = qb.arrow_count() * na;
        for u in 0..nb {
            for aar in qa.arrows() {
                arrows.push(Arrow {
                    label: format!("{}|{}", qb.vertices()[u], aar.label),
                    source: vtx(u, aar.source),
                    target: vtx(u, aar.target),
                });
            }
        }
        let b_arrow = |x: usize, v: usize| x * na + v;
        let a_arrow = |u: usize, y: usize| off + u * qa.arrow_count() + y;
        let quiver = Quiver::from_parts(vertices, arrows);
        // (p, q): q runs at the B-vertex source(p), then p runs at target(q)
        let pair_path = |p: &Path, q: &Path| {
            let mut arrows: Vec<usize> = q.arrows.iter().map(|&y| a_arrow(p.source, y)).collect();
            arrows.extend(p.arrows.iter().map(|&x| b_arrow(x, q.target)));
            Path { source: vtx(p.source, q.source), target: vtx(p.target, q.target), arrows }
        };
        let (db, da) = (b.dim(), a.dim());
        let mut basis = Vec::with_capacity(db * da);
        for p in &b.basis {
            for q in &a.basis {
                basis.push(pair_path(p, q));
            }
        }
        let mut table = Vec::with_capacity(db * da * db * da);
        for i in 0..db {
            for j in 0..da {
                for k in 0..db {
                    let bik = b.mul_basis(i, k);
                    for l in 0..da {
                        let ajl = a.mul_basis(j, l);
                        let mut entry = Vec::new();
                        for (x, c) in bik {
                            for (y, e) in ajl {
                                entry.push((x * da + y, field.mul(c, e)));
                            }
                        }
                        table.push(entry);
                    }
                }
            }
        }
        let mut relations = Vec::new();
        for r in &b.relations {
            for v in 0..na {
                let terms = r
                    .terms()
                    .iter()
                    .map(|(c, p)| {
                        (c.clone(), Path {
                            source: vtx(p.source, v),
                            target: vtx(p.target, v),
                            arrows: p.arrows.iter().map(|&x| b_arrow(x, v)).collect(),
                        })
                    })
                    .collect();
                relations.push(RelationElem::new(&field, terms).expect("lifted relation"));
            }
        }
        for r in &a.relations {
            for u in 0..nb {
                let terms = r
                    .terms()
                    .iter()
                    .map(|(c, p)| {
                        (c.clone(), Path {
                            source: vtx(u, p.source),
                            target: vtx(u, p.target),
                            arrows: p.arrows.iter().map(|&y| a_arrow(u, y)).collect(),
                        })
                    })
                    .collect();
                relations.push(RelationElem::new(&field, terms).expect("lifted relation"));
            }
        }
        for (x, bar) in qb.arrows().iter().enumerate() {
            for (y, aar) in qa.arrows().iter().enumerate() {
                let s = vtx(bar.source, aar.source);
                let t = vtx(bar.target, aar.target);
                let p1 = Path { source: s, target: t, arrows: vec![a_arrow(bar.source, y), b_arrow(x, aar.target)] };
                let p2 = Path { source: s, target: t, arrows: vec![b_arrow(x, aar.source), a_arrow(bar.target, y)] };
                let terms = vec![(field.one(), p1), (field.neg(&field.one()), p2)];
                relations.push(RelationElem::new(&field, terms).expect("commutativity relation"));
            }
        }
        let name = format!("{}⊗{}", b.name, a.name);
        FiniteDimAlgebra::from_parts(field, quiver, relations, basis, table).with_name(name)
    }
}
