//! File formats: the system JSON layout, phase-table JSON, transform
//! records and point-cloud CSV. All rational scalars travel as `"p/q"`
//! strings (`"p"` when the denominator is one); matrices are row-major
//! arrays of such strings. Serialization is deterministic so identical
//! inputs produce byte-identical artifacts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hadamard::PhaseMatrix;
use crate::ratio;
use crate::ratlat::{Lattice, RatMatrix, RatVector};
use crate::system::AffineSystem;
use crate::transform::{AttractorCloud, MuHatValue};

#[derive(Serialize, Deserialize)]
struct SystemFile {
    n: usize,
    #[serde(rename = "R")]
    r: RatMatrix,
    #[serde(rename = "B")]
    b: Vec<RatVector>,
    #[serde(rename = "L")]
    l: Vec<RatVector>,
    #[serde(rename = "K")]
    k: Option<RatMatrix>,
}

pub fn system_to_json(sys: &AffineSystem) -> String {
    let file = SystemFile {
        n: sys.dim(),
        r: sys.matrix().clone(),
        b: sys.b_set().to_vec(),
        l: sys.l_set().to_vec(),
        k: sys.lattice().map(|k| k.canonical().clone()),
    };
    serde_json::to_string_pretty(&file).expect("system serialization cannot fail")
}

pub fn system_from_json(text: &str) -> Result<AffineSystem> {
    let file: SystemFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("system file: {e}")))?;
    if file.r.n_rows() != file.n {
        return Err(Error::Parse(format!(
            "system file: declared dimension {} does not match the matrix",
            file.n
        )));
    }
    let k = file.k.map(Lattice::from_basis).transpose()?;
    AffineSystem::new(file.r, file.b, file.l, k)
}

/// Phase tables as `{"n", "denominator", "exponents"}`.
pub fn phase_to_json(p: &PhaseMatrix) -> serde_json::Value {
    use num_traits::ToPrimitive;
    let d = p.denominator();
    let denominator = match d.to_u64() {
        Some(v) => serde_json::json!(v),
        None => serde_json::json!(d.to_string()),
    };
    serde_json::json!({
        "n": p.order(),
        "denominator": denominator,
        "exponents": p
            .exponents()
            .iter()
            .map(|row| row.iter().map(ratio::format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// One transform evaluation as `{"t", "re", "im", "bound"}`.
pub fn muhat_record(t: &[f64], v: &MuHatValue) -> serde_json::Value {
    serde_json::json!({
        "t": t,
        "re": v.value.re,
        "im": v.value.im,
        "bound": v.bound,
        "exact_zero": v.exact_zero,
        "depth": v.depth,
    })
}

/// Point clouds as CSV with a `x1,...,xn,weight` header.
pub fn cloud_to_csv(cloud: &AttractorCloud) -> String {
    let dim = cloud.points.first().map_or(0, Vec::len);
    let mut out = String::new();
    for d in 0..dim {
        out.push_str(&format!("x{},", d + 1));
    }
    out.push_str("weight\n");
    for p in &cloud.points {
        for x in p {
            out.push_str(&format!("{x},"));
        }
        out.push_str(&format!("{}\n", cloud.weight));
    }
    out
}
