//! The end-to-end pipeline shared by the command line and the comparison
//! report: dimensions, catalog, K-groups and the oracle.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{AbelianGroupDescription, Field};
use crate::gorenstein::{
    default_dim_cap, dimension_report, gp_catalog_with, CatalogVerdict, Certificate, DimensionReport, GPCatalog,
    DEFAULT_BOUND, DEFAULT_ITER_CAP,
};
use crate::ktheory::{k0_gorenstein, k1_gorenstein, K0Result, K1Result};
use crate::rep::Alg;
use crate::waldhausen::{build_wdata, k0_oracle, DEFAULT_DEPTH};

#[derive(Clone, Debug)]
pub struct Options {
    pub bound: usize,
    /// `None` means `64 · dim A`.
    pub dim_cap: Option<usize>,
    pub iter_cap: usize,
    pub seed: u64,
    pub depth: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { bound: DEFAULT_BOUND, dim_cap: None, iter_cap: DEFAULT_ITER_CAP, seed: 0, depth: DEFAULT_DEPTH }
    }
}

/// Which stages to run beyond the dimension report.
#[derive(Clone, Copy, Debug, Default)]
pub struct Stages {
    pub catalog: bool,
    pub k0: bool,
    pub k1: bool,
    pub oracle: bool,
}

impl Stages {
    pub fn all() -> Self {
        Stages { catalog: true, k0: true, k1: true, oracle: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<String>,
    pub dim: usize,
    pub loewy_length: usize,
    pub monomial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogItem {
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub verdict: CatalogVerdict,
    pub items: Vec<CatalogItem>,
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub struct Analysis<F: Field> {
    pub algebra: Alg<F>,
    pub summary: AlgebraSummary,
    pub report: DimensionReport,
    pub catalog: Option<GPCatalog<F>>,
    pub k0: Option<K0Result>,
    pub k1: Option<K1Result>,
    pub oracle: Option<AbelianGroupDescription>,
    pub warnings: Vec<String>,
}

pub fn summarize<F: Field>(a: &Alg<F>) -> AlgebraSummary {
    let q = a.quiver();
    AlgebraSummary {
        name: a.name().to_string(),
        field: a.field().spec().to_string(),
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|x| format!("{}: {} -> {}", x.label, q.vertices()[x.source], q.vertices()[x.target]))
            .collect(),
        dim: a.dim(),
        loewy_length: a.loewy_length(),
        monomial: a.is_monomial(),
    }
}

pub fn analyze<F: Field>(a: &Alg<F>, opts: &Options, stages: Stages) -> Result<Analysis<F>>
where
    F::Elem: Send + Sync,
{
    let report = dimension_report(a, opts.bound);
    let mut out = Analysis {
        algebra: a.clone(),
        summary: summarize(a),
        report,
        catalog: None,
        k0: None,
        k1: None,
        oracle: None,
        warnings: Vec::new(),
    };
    if !(stages.catalog || stages.k0 || stages.k1 || stages.oracle) {
        return Ok(out);
    }
    let dim_cap = opts.dim_cap.unwrap_or_else(|| default_dim_cap(a.dim()));
    let catalog = gp_catalog_with(a, &out.report, dim_cap, opts.iter_cap)?;
    if let CatalogVerdict::Unknown(r) = &catalog.verdict {
        out.warnings.push(format!("catalog verdict unknown: {r}"));
        out.catalog = Some(catalog);
        return Ok(out);
    }
    if stages.k0 {
        let k0 = k0_gorenstein(a, &catalog, opts.seed)?;
        out.warnings.extend(k0.warnings.iter().cloned());
        out.k0 = Some(k0);
    }
    if stages.k1 {
        match k1_gorenstein(a, &catalog) {
            Ok(k1) => {
                out.warnings.extend(k1.warnings.iter().cloned());
                out.k1 = Some(k1);
            }
            Err(e @ Error::NoncommutativeStableEnd) => out.warnings.push(format!("k1 not computed: {e}")),
            Err(e) => return Err(e),
        }
    }
    if stages.oracle {
        let data = build_wdata(&catalog, a, opts.depth, opts.seed)?;
        if data.sampled {
            out.warnings.push("oracle: some Hom spaces were sampled".into());
        }
        out.warnings.push(format!(
            "oracle universe: depth {}, total dimension <= {}, {} objects",
            data.depth,
            data.dim_cap,
            data.objects.len()
        ));
        out.oracle = Some(k0_oracle(&data));
    }
    out.catalog = Some(catalog);
    Ok(out)
}

impl<F: Field> Analysis<F> {
    /// Whether some verdict is unknown (the command line exits with 2).
    pub fn is_unknown(&self) -> bool {
        self.catalog.as_ref().is_some_and(|c| !c.is_known())
    }

    pub fn oracle_agreement(&self) -> Option<bool> {
        match (&self.k0, &self.oracle) {
            (Some(k), Some(o)) => Some(k.group.same_group(o)),
            _ => None,
        }
    }

    pub fn catalog_summary(&self) -> Option<CatalogSummary> {
        self.catalog.as_ref().map(|c| CatalogSummary {
            verdict: c.verdict.clone(),
            items: c
                .items
                .iter()
                .map(|g| CatalogItem {
                    dims: g.dims().to_vec(),
                    total_dim: g.total_dim(),
                    certificate: g.verdict().certificate.clone(),
                })
                .collect(),
            iterations: c.iterations,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.summary,
            "dimension_report": self.report,
            "gp_catalog": self.catalog_summary(),
            "k0": self.k0.as_ref().map(|k| &k.group),
            "k1": self.k1,
            "oracle_k0": self.oracle,
            "oracle_agreement": self.oracle_agreement(),
            "warnings": self.warnings,
        })
    }
}
