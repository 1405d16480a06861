//! Homological dimensions, Gorenstein projectivity and the catalog of
//! indecomposable non-projective Gorenstein projective modules.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::rep::{decompose, is_isomorphic, Alg, Representation};

/// Default search depth for dimensions and syzygy periodicity.
pub const DEFAULT_BOUND: usize = 10;
/// Syzygy depth used for catalog seeds when the Gorenstein dimension is unknown.
pub const PROBE_DEPTH: usize = 4;
pub const DEFAULT_ITER_CAP: usize = 32;

pub fn default_dim_cap(dim_a: usize) -> usize {
    64 * dim_a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Exact(usize),
    AtLeast(usize),
}

impl Dim {
    pub fn exact(self) -> Option<usize> {
        match self {
            Dim::Exact(d) => Some(d),
            Dim::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Exact(d) => write!(f, "{d}"),
            Dim::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Exact(d) => s.serialize_u64(*d as u64),
            Dim::AtLeast(d) => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("at_least", d)?;
                m.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GorensteinStatus {
    Yes(usize),
    NoWithinBound,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub bound: usize,
    pub proj_dims: Vec<Dim>,
    pub global_dim: Dim,
    pub self_inj_dim_left: Dim,
    pub self_inj_dim_right: Dim,
    pub is_gorenstein: GorensteinStatus,
}

impl DimensionReport {
    pub fn gorenstein_dim(&self) -> Option<usize> {
        match self.is_gorenstein {
            GorensteinStatus::Yes(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_self_injective(&self) -> bool {
        self.is_gorenstein == GorensteinStatus::Yes(0)
    }
}

fn pd<F: Field>(m: &Representation<F>, bound: usize) -> Dim {
    match m.projective_dimension(bound) {
        Some(d) => Dim::Exact(d),
        None => Dim::AtLeast(bound),
    }
}

/// Projective dimensions of the simples, global dimension and the two
/// self-injective dimensions (as projective dimensions of `D(A)` over the
/// opposite side), searched up to `bound`.
pub fn dimension_report<F: Field>(a: &Alg<F>, bound: usize) -> DimensionReport {
    let proj_dims: Vec<Dim> =
        (0..a.vertex_count()).map(|v| pd(&Representation::simple(a, v), bound)).collect();
    let global_dim = if proj_dims.iter().all(|d| d.exact().is_some()) {
        Dim::Exact(proj_dims.iter().filter_map(|d| d.exact()).max().unwrap_or(0))
    } else {
        Dim::AtLeast(bound)
    };
    let op = a.opposite();
    let left = pd(&Representation::regular(a).k_dual(), bound);
    let right = pd(&Representation::regular(&op).k_dual(), bound);
    let is_gorenstein = match (left, right) {
        (Dim::Exact(l), Dim::Exact(r)) => GorensteinStatus::Yes(l.max(r)),
        (Dim::AtLeast(_), Dim::AtLeast(_)) => GorensteinStatus::NoWithinBound,
        _ => GorensteinStatus::Unknown,
    };
    DimensionReport { bound, proj_dims, global_dim, self_inj_dim_left: left, self_inj_dim_right: right, is_gorenstein }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GPStatus {
    GorensteinProjective,
    NotGP,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "criterion")]
pub enum Certificate {
    Projective,
    SelfInjective,
    /// `Ext^i(M, A) = 0` for `1 ≤ i ≤ up_to` over a Gorenstein algebra.
    ExtVanishing { up_to: usize },
    /// `Ω^a M ≅ Ω^b M` and `Ext^i(M, A) = 0` for `1 ≤ i ≤ b`.
    Periodicity { a: usize, b: usize },
    /// `Ext^degree(M, A)` has the given nonzero dimension.
    ExtWitness { degree: usize, dimension: usize },
    /// Nothing decided within the bound.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GPVerdict {
    pub status: GPStatus,
    pub certificate: Certificate,
}

impl GPVerdict {
    fn gp(certificate: Certificate) -> Self {
        GPVerdict { status: GPStatus::GorensteinProjective, certificate }
    }

    pub fn is_gp(&self) -> bool {
        self.status == GPStatus::GorensteinProjective
    }
}

fn first_ext_witness<F: Field>(m: &Representation<F>, reg: &Representation<F>, upto: usize) -> Result<Option<(usize, usize)>> {
    for i in 1..=upto {
        let d = m.ext_dim(reg, i)?;
        if d != 0 {
            return Ok(Some((i, d)));
        }
    }
    Ok(None)
}

/// Decide Gorenstein projectivity: projective; self-injective algebra;
/// Ext-vanishing up to the Gorenstein dimension; otherwise a syzygy
/// periodicity search with Ext-vanishing up to the period end.
pub fn is_gp<F: Field>(m: &Representation<F>, report: &DimensionReport, bound: usize) -> Result<GPVerdict> {
    if m.is_projective() {
        return Ok(GPVerdict::gp(Certificate::Projective));
    }
    if report.is_self_injective() {
        return Ok(GPVerdict::gp(Certificate::SelfInjective));
    }
    let reg = Representation::regular(m.algebra());
    if let Some(d) = report.gorenstein_dim() {
        return Ok(match first_ext_witness(m, &reg, d)? {
            None => GPVerdict::gp(Certificate::ExtVanishing { up_to: d }),
            Some((degree, dimension)) => {
                GPVerdict { status: GPStatus::NotGP, certificate: Certificate::ExtWitness { degree, dimension } }
            }
        });
    }
    let syz: Vec<Representation<F>> = (0..=bound).map(|i| m.syzygy(i)).collect();
    for b in 1..=bound {
        for a in 0..b {
            if syz[a].dims() == syz[b].dims() && is_isomorphic(&syz[a], &syz[b])?.is_some() {
                return Ok(match first_ext_witness(m, &reg, b)? {
                    None => GPVerdict::gp(Certificate::Periodicity { a, b }),
                    Some((degree, dimension)) => {
                        GPVerdict { status: GPStatus::NotGP, certificate: Certificate::ExtWitness { degree, dimension } }
                    }
                });
            }
        }
    }
    Ok(match first_ext_witness(m, &reg, bound)? {
        Some((degree, dimension)) => {
            GPVerdict { status: GPStatus::NotGP, certificate: Certificate::ExtWitness { degree, dimension } }
        }
        None => GPVerdict { status: GPStatus::Inconclusive, certificate: Certificate::None },
    })
}

/// A module carrying a Gorenstein projective certificate.
#[derive(Debug, Clone)]
pub struct GpModule<F: Field> {
    module: Representation<F>,
    verdict: GPVerdict,
}

impl<F: Field> GpModule<F> {
    pub fn certify(m: Representation<F>, report: &DimensionReport, bound: usize) -> Result<Self> {
        let verdict = is_gp(&m, report, bound)?;
        if !verdict.is_gp() {
            return Err(Error::NotGPInput(format!("{:?}", verdict.status)));
        }
        Ok(GpModule { module: m, verdict })
    }

    /// Projective modules need no search.
    pub fn projective(m: Representation<F>) -> Result<Self> {
        if !m.is_projective() {
            return Err(Error::NotGPInput("module is not projective".into()));
        }
        Ok(GpModule { module: m, verdict: GPVerdict::gp(Certificate::Projective) })
    }

    pub(crate) fn trusted(m: Representation<F>, verdict: GPVerdict) -> Self {
        GpModule { module: m, verdict }
    }

    pub fn module(&self) -> &Representation<F> {
        &self.module
    }

    pub fn verdict(&self) -> &GPVerdict {
        &self.verdict
    }

    pub fn into_module(self) -> Representation<F> {
        self.module
    }
}

impl<F: Field> std::ops::Deref for GpModule<F> {
    type Target = Representation<F>;
    fn deref(&self) -> &Representation<F> {
        &self.module
    }
}

/// `Ω^{-1} M = (Ω(M*))*`, up to projective summands.
pub fn cosyzygy<F: Field>(m: &GpModule<F>) -> Representation<F> {
    let a = m.algebra().clone();
    m.star().syzygy(1).star().over(&a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "reason")]
pub enum CatalogVerdict {
    #[serde(rename = "cm_free")]
    CMFree,
    #[serde(rename = "cm_finite")]
    CMFinite,
    Unknown(String),
}

#[derive(Debug, Clone)]
pub struct GPCatalog<F: Field> {
    pub items: Vec<GpModule<F>>,
    pub verdict: CatalogVerdict,
    pub report: DimensionReport,
    pub iterations: usize,
}

impl<F: Field> GPCatalog<F> {
    pub fn is_known(&self) -> bool {
        !matches!(self.verdict, CatalogVerdict::Unknown(_))
    }

    /// Index of the item isomorphic to `m`, if any (`m` indecomposable).
    pub fn find(&self, m: &Representation<F>) -> Result<Option<usize>> {
        for (i, it) in self.items.iter().enumerate() {
            if it.dims() == m.dims() && is_isomorphic(it, m)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Close the seeds `Ω^d(S_v)` under `Ω`, `Ω^{-1}` and direct summands,
/// discarding projectives.
pub fn gp_catalog<F: Field>(a: &Alg<F>, dim_cap: usize, iter_cap: usize) -> Result<GPCatalog<F>> {
    gp_catalog_with(a, &dimension_report(a, DEFAULT_BOUND), dim_cap, iter_cap)
}

pub fn gp_catalog_with<F: Field>(
    a: &Alg<F>,
    report: &DimensionReport,
    dim_cap: usize,
    iter_cap: usize,
) -> Result<GPCatalog<F>> {
    a.field().finite_order()?;
    let bound = report.bound;
    let depth = report.gorenstein_dim().unwrap_or(PROBE_DEPTH);
    let mut items: Vec<GpModule<F>> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let mut unknown: Option<String> = None;

    let consider = |m: Representation<F>, items: &mut Vec<GpModule<F>>, queue: &mut Vec<usize>| -> Result<Option<String>> {
        for s in decompose(&m)? {
            let x = s.module;
            if x.is_projective() {
                continue;
            }
            if x.total_dim() > dim_cap {
                return Ok(Some(format!("dimension cap {dim_cap} exceeded")));
            }
            let mut known = false;
            for it in items.iter() {
                if it.dims() == x.dims() && is_isomorphic(it, &x)?.is_some() {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            let verdict = is_gp(&x, report, bound)?;
            if !verdict.is_gp() {
                return Ok(Some(format!("summand with verdict {:?}", verdict.status)));
            }
            items.push(GpModule::trusted(x, verdict));
            queue.push(items.len() - 1);
        }
        Ok(None)
    };

    for v in 0..a.vertex_count() {
        let seed = Representation::simple(a, v).syzygy(depth);
        if let Some(r) = consider(seed, &mut items, &mut queue)? {
            unknown.get_or_insert(r);
        }
    }
    let mut iterations = 0;
    while unknown.is_none() && !queue.is_empty() {
        if iterations >= iter_cap {
            unknown = Some(format!("iteration cap {iter_cap} reached"));
            break;
        }
        iterations += 1;
        let i = queue.remove(0);
        let g = items[i].clone();
        let omega = g.syzygy(1);
        let co = cosyzygy(&g);
        for m in [omega, co] {
            if let Some(r) = consider(m, &mut items, &mut queue)? {
                unknown.get_or_insert(r);
                break;
            }
        }
    }
    items.sort_by(|x, y| x.total_dim().cmp(&y.total_dim()).then_with(|| x.dims().cmp(y.dims())));
    let verdict = match unknown {
        Some(r) => CatalogVerdict::Unknown(r),
        None if items.is_empty() => CatalogVerdict::CMFree,
        None => CatalogVerdict::CMFinite,
    };
    Ok(GPCatalog { items, verdict, report: report.clone(), iterations })
}
