//! On-disk schemas for the library's artifact types: the edge-list text
//! format is canonical for graphs; everything else serializes to JSON
//! documents with exact rational weights rendered as `num/den` strings
//! so that round-trips lose nothing. Expander reports also render as
//! CSV rows for sweep scripts.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use sepgrad_core::expanders::ExpanderReport;
use sepgrad_core::fragility::FractionalPacking;
use sepgrad_core::minors::{
    BranchTree, CliqueMinor, DenseMinor, DensifyOutcome, DensityReport, FailStage,
    MinorCertificate, ShallowCliqueReport,
};
use sepgrad_core::separators::Separation;
use sepgrad_core::treedecomp::{DecompNode, TreeDecomposition};
use sepgrad_core::{Graph, VertexSet};

use crate::CliError;

/// Parse an exact rational from `a/b`, a decimal like `0.25`, or an
/// integer. Decimals parse exactly (digits over a power of ten).
pub fn parse_exact_rational(s: &str) -> Result<Rational64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: i64 = den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| format!("bad integer part in {s:?}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad fractional part in {s:?}"));
        }
        let digits: i64 = frac.parse().map_err(|_| format!("fraction overflows in {s:?}"))?;
        let scale = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| format!("fraction too long in {s:?}"))?;
        let sign = if s.starts_with('-') { -1 } else { 1 };
        return Ok(Rational64::new(int_part * scale + sign * digits, scale));
    }
    let n: i64 = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
    Ok(Rational64::from_integer(n))
}

pub fn big_rational_to_string(r: &BigRational) -> String {
    format!("{r}")
}

pub fn big_rational_from_string(s: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s)
        .map_err(|e| CliError::Usage(format!("bad rational weight {s:?}: {e}")))
}

pub fn rational_to_string(r: &Rational64) -> String {
    format!("{r}")
}

pub fn rational_to_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

// --- separations -------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationDoc {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub separator: Vec<usize>,
    pub size: usize,
    pub balanced: bool,
}

pub fn separation_doc(sep: &Separation) -> SeparationDoc {
    SeparationDoc {
        side_a: sep.side_a.iter().collect(),
        side_b: sep.side_b.iter().collect(),
        separator: sep.separator().iter().collect(),
        size: sep.size,
        balanced: sep.balanced,
    }
}

// --- tree decompositions ------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub nodes: Vec<DecompNodeDoc>,
    pub root: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompNodeDoc {
    pub parent: Option<usize>,
    pub bag: Vec<usize>,
}

pub fn decomposition_doc(t: &TreeDecomposition) -> DecompositionDoc {
    DecompositionDoc {
        nodes: t
            .nodes
            .iter()
            .map(|n| DecompNodeDoc {
                parent: n.parent,
                bag: n.bag.iter().collect(),
            })
            .collect(),
        root: t.root,
    }
}

pub fn decomposition_from_doc(doc: &DecompositionDoc) -> TreeDecomposition {
    TreeDecomposition {
        nodes: doc
            .nodes
            .iter()
            .map(|n| DecompNode {
                parent: n.parent,
                bag: VertexSet::from_unsorted(n.bag.clone()),
            })
            .collect(),
        root: doc.root,
    }
}

// --- packings ------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PackingDoc {
    pub entries: Vec<PackingEntryDoc>,
    pub meta: PackingMeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PackingEntryDoc {
    pub set: Vec<usize>,
    pub weight: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PackingMeta {
    pub mode: String,
    pub eps: Option<String>,
    pub bound: Option<usize>,
    pub seed: Option<u64>,
    /// Exact thickness of the packing against its host graph, when the
    /// producing command knew the graph.
    pub thickness: Option<String>,
}

pub fn packing_doc(pi: &FractionalPacking, meta: PackingMeta) -> PackingDoc {
    PackingDoc {
        entries: pi
            .entries()
            .iter()
            .map(|(set, w)| PackingEntryDoc {
                set: set.iter().collect(),
                weight: big_rational_to_string(w),
            })
            .collect(),
        meta,
    }
}

pub fn packing_from_doc(doc: &PackingDoc) -> Result<FractionalPacking, CliError> {
    let entries = doc
        .entries
        .iter()
        .map(|e| {
            Ok((
                VertexSet::from_unsorted(e.set.clone()),
                big_rational_from_string(&e.weight)?,
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    FractionalPacking::new(entries).map_err(CliError::Core)
}

// --- minor certificates ----------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub depth: usize,
    pub trees: Vec<TreeDoc>,
    pub witness_edges: Vec<[usize; 4]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeDoc {
    pub model_vertex: usize,
    pub nodes: Vec<(usize, Option<usize>)>,
}

pub fn certificate_doc(cert: &MinorCertificate) -> CertificateDoc {
    CertificateDoc {
        depth: cert.depth,
        trees: cert
            .trees
            .iter()
            .map(|t| TreeDoc {
                model_vertex: t.model_vertex,
                nodes: t.nodes.clone(),
            })
            .collect(),
        witness_edges: cert
            .witness_edges
            .iter()
            .map(|(&(i, j), &(u, v))| [i, j, u, v])
            .collect(),
    }
}

pub fn certificate_from_doc(doc: &CertificateDoc) -> MinorCertificate {
    MinorCertificate {
        depth: doc.depth,
        trees: doc
            .trees
            .iter()
            .map(|t| BranchTree {
                model_vertex: t.model_vertex,
                nodes: t.nodes.clone(),
            })
            .collect(),
        witness_edges: doc
            .witness_edges
            .iter()
            .map(|&[i, j, u, v]| ((i, j), (u, v)))
            .collect::<BTreeMap<_, _>>(),
    }
}

// --- density reports ---------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityReportDoc {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub density: String,
    pub certificate: CertificateDoc,
}

pub fn density_report_doc(r: &DensityReport) -> DensityReportDoc {
    DensityReportDoc {
        k: r.k,
        vertices: r.vertices,
        edges: r.edges,
        density: rational_to_string(&r.density),
        certificate: certificate_doc(&r.certificate),
    }
}

// --- independent sets -----------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependentSetDoc {
    pub vertices: Vec<usize>,
    pub size: usize,
    pub support_index: Option<usize>,
}

// --- densify outcomes ------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DensifyOutcomeDoc {
    Dense {
        minor_n: usize,
        minor_edges: Vec<[usize; 2]>,
        certificate: CertificateDoc,
    },
    Clique {
        t: usize,
        certificate: CertificateDoc,
    },
    Failed {
        stage: String,
        attempts: usize,
        detail: String,
    },
}

fn stage_name(stage: FailStage) -> &'static str {
    match stage {
        FailStage::Peel => "peel",
        FailStage::Sample => "sample",
        FailStage::CliqueSearch => "clique_search",
    }
}

pub fn densify_outcome_doc(out: &DensifyOutcome) -> DensifyOutcomeDoc {
    match out {
        DensifyOutcome::Dense(DenseMinor { minor, certificate }) => DensifyOutcomeDoc::Dense {
            minor_n: minor.n(),
            minor_edges: minor.edges().map(|(u, v)| [u, v]).collect(),
            certificate: certificate_doc(certificate),
        },
        DensifyOutcome::Clique(CliqueMinor { t, certificate }) => DensifyOutcomeDoc::Clique {
            t: *t,
            certificate: certificate_doc(certificate),
        },
        DensifyOutcome::Failed(f) => DensifyOutcomeDoc::Failed {
            stage: stage_name(f.stage).to_string(),
            attempts: f.attempts,
            detail: f.detail.clone(),
        },
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShallowCliqueDoc {
    pub m: u64,
    pub t: usize,
    /// `4^m`, omitted when it overflows to infinity.
    pub d: Option<f64>,
    pub rounds: usize,
    #[serde(flatten)]
    pub outcome: DensifyOutcomeDoc,
}

pub fn shallow_clique_doc(r: &ShallowCliqueReport) -> ShallowCliqueDoc {
    ShallowCliqueDoc {
        m: r.m,
        t: r.t,
        d: r.d.is_finite().then_some(r.d),
        rounds: r.rounds,
        outcome: densify_outcome_doc(&r.outcome),
    }
}

// --- expander reports ---------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpanderReportDoc {
    pub n: usize,
    pub d: usize,
    pub alpha: String,
    pub m: usize,
    pub n_prime: usize,
    pub separator_found: usize,
    pub bound: f64,
    pub resamples: usize,
    pub seed: u64,
}

pub fn expander_report_doc(r: &ExpanderReport) -> ExpanderReportDoc {
    ExpanderReportDoc {
        n: r.n,
        d: r.d,
        alpha: rational_to_string(&r.alpha_exact),
        m: r.m_subdiv,
        n_prime: r.n_prime,
        separator_found: r.separator_found,
        bound: r.bound,
        resamples: r.resamples,
        seed: r.seed,
    }
}

pub const EXPANDER_CSV_HEADER: &str = "n,d,alpha,m,n_prime,separator_found,bound";

pub fn expander_csv_row(r: &ExpanderReport) -> String {
    format!(
        "{},{},{:.6},{},{},{},{:.6}",
        r.n,
        r.d,
        rational_to_f64(&r.alpha_exact),
        r.m_subdiv,
        r.n_prime,
        r.separator_found,
        r.bound
    )
}

pub const PROFILE_CSV_HEADER: &str = "k,nabla_estimate,reference";

// --- files ---------------------------------------------------------------

pub fn read_graph_file(path: &std::path::Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)?;
    sepgrad_core::graph::parse_edge_list(&text).map_err(CliError::Core)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)?)
}
