use serde::Serialize;

use crate::error::{Error, Result};
use crate::ket::parse_state;
use crate::observables::{report, PurityEngine, DEFAULT_EPSILON};
use crate::segre::{generalized_segre_embed, membership, SegreShape, DEFAULT_RANK_EPSILON};
use crate::state::ProjectivePoint;

use super::format::{num, render_point};

#[derive(Debug, Clone, Serialize)]
pub struct EmbedReport {
    pub inputs: Vec<String>,
    /// Qubit count of each input.
    pub composition: Vec<usize>,
    /// Image with its first nonvanishing coordinate scaled to 1.
    pub point: String,
    /// Image is on the generalized Segre variety of the input shape.
    pub member: bool,
    pub worst_minor: f64,
    /// Cuts of the image where the observable vanishes.
    pub vanishing: Vec<usize>,
    /// Every boundary between inputs is among the vanishing cuts.
    pub decomposable: bool,
}

impl EmbedReport {
    pub fn render_text(&self) -> String {
        let vanishing: Vec<String> = self.vanishing.iter().map(usize::to_string).collect();
        format!(
            "point          {}\nshape          {:?}\nmember         {} (worst minor {})\nvanishing cuts [{}]\ndecomposable   {}\n",
            self.point,
            self.composition,
            self.member,
            num(self.worst_minor),
            vanishing.join(", "),
            self.decomposable
        )
    }

    pub fn ok(&self) -> bool {
        self.member && self.decomposable
    }
}

/// Generalized Segre image of the parsed inputs, checked by membership and
/// by the observables of the image state.
pub fn embed(inputs: &[String]) -> Result<EmbedReport> {
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("embed needs at least one state".into()));
    }
    let states = inputs
        .iter()
        .map(|s| parse_state(s))
        .collect::<Result<Vec<_>>>()?;
    let composition: Vec<usize> = states.iter().map(|s| s.n()).collect();
    let total: usize = composition.iter().sum();
    if total > crate::ket::MAX_QUBITS {
        return Err(Error::TooLarge(format!("image has {total} qubits")));
    }
    let shape = SegreShape::from_qubit_composition(&composition)?;
    let points: Vec<ProjectivePoint> = states.iter().map(|s| s.projective_point()).collect();
    let image = generalized_segre_embed(&points, &shape)?;
    let m = membership(&image, &shape, DEFAULT_RANK_EPSILON)?;
    let boundaries: Vec<usize> = composition
        .iter()
        .scan(0, |acc, &k| {
            *acc += k;
            Some(*acc)
        })
        .take(composition.len() - 1)
        .collect();
    let vanishing = if total >= 2 {
        report(&image.to_state()?, &PurityEngine, DEFAULT_EPSILON)?.vanishing_cuts()
    } else {
        Vec::new()
    };
    let decomposable = boundaries.iter().all(|b| vanishing.contains(b));
    Ok(EmbedReport {
        inputs: inputs.to_vec(),
        composition,
        point: render_point(&image.affine_representative()),
        member: m.member,
        worst_minor: m.worst_minor,
        vanishing,
        decomposable,
    })
}
