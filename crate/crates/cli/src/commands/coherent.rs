use grassfock_core::fock::{
    coherent_state, number_moments, overlap, phase_variance_of, u1_rotate, CoherentLabel, ModeSystem,
};
use grassfock_core::grassmann::{substitute_bilinears, Algebra, Occupancy};
use grassfock_core::ZERO_THRESHOLD;
use serde::Serialize;

use super::{emit, residual_text};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

/// Largest mode count for which the rotation check compares two distinct
/// labels; above it the label is compared with itself.
const DISTINCT_LABEL_MODES: usize = 3;

#[derive(Debug, Serialize)]
pub struct Amplitude {
    pub basis: String,
    pub coefficient: String,
}

#[derive(Debug, Serialize)]
pub struct Rotation {
    pub theta: f64,
    /// `e^{iθN}|y⟩` against `|e^{iθ}y⟩`.
    pub state_residual: f64,
    /// `⟨e^{iθ}y'|e^{iθ}y⟩` against `⟨y'|y⟩`.
    pub overlap_residual: f64,
    pub distinct_labels: bool,
}

#[derive(Debug, Serialize)]
pub struct Substituted {
    pub occupancy: Vec<f64>,
    /// `⟨ΔN²⟩` with `y*_k y_k → N_k`.
    pub number_variance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncertainty_product: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct CoherentReport {
    pub modes: usize,
    pub state: Vec<Amplitude>,
    /// `a_k|y⟩ − y_k|y⟩` per mode.
    pub eigenvalue_residuals: Vec<f64>,
    pub mean: String,
    pub variance: String,
    /// `⟨ΔN²⟩ − Σ y*_k y_k`
    pub variance_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Rotation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub substituted: Option<Substituted>,
}

impl CoherentReport {
    pub fn passed(&self) -> bool {
        let small = |r: f64| r <= ZERO_THRESHOLD;
        self.eigenvalue_residuals.iter().all(|&r| small(r))
            && small(self.variance_residual)
            && self.rotation.as_ref().is_none_or(|r| small(r.state_residual) && small(r.overlap_residual))
            && self
                .substituted
                .as_ref()
                .and_then(|s| s.uncertainty_product)
                .is_none_or(|p| (p - 0.25).abs() <= 1e-12)
    }
}

/// `|n_1 n_2 …⟩`, mode 1 first.
fn basis_label(state: usize, modes: usize) -> String {
    let bits: String = (0..modes).map(|k| if state >> k & 1 == 1 { '1' } else { '0' }).collect();
    format!("|{bits}⟩")
}

pub fn coherent_report(
    modes: usize,
    theta: Option<f64>,
    occupancy: Option<&[f64]>,
    require_phase_variance: bool,
) -> Result<CoherentReport> {
    let label = CoherentLabel::standard(modes)?;
    let sys = ModeSystem::new(modes)?;
    let ket = coherent_state(&label)?;
    let state = ket
        .entries()
        .iter()
        .enumerate()
        .map(|(s, e)| Amplitude { basis: basis_label(s, modes), coefficient: e.to_string() })
        .collect();
    let eigenvalue_residuals = (0..modes)
        .map(|k| Ok(sys.annihilation(k, label.algebra())?.apply(&ket)?.residual(&ket.left_mul(&label.y(k)))))
        .collect::<Result<Vec<f64>>>()?;
    let moments = number_moments(&label)?;
    let variance_residual = moments.variance.residual(&label.occupation());

    let rotation = theta
        .map(|theta| -> Result<Rotation> {
            let state_residual = u1_rotate(&ket, theta).residual(&coherent_state(&label.rotated(theta))?);
            let distinct_labels = modes <= DISTINCT_LABEL_MODES;
            let (bra, ket) = if distinct_labels {
                let pair = Algebra::new(2 * modes)?;
                (CoherentLabel::new(pair, 0, modes)?, CoherentLabel::new(pair, modes, modes)?)
            } else {
                (label, label)
            };
            let before = overlap(&bra, &ket)?.matrix;
            let after = overlap(&bra.rotated(theta), &ket.rotated(theta))?.matrix;
            Ok(Rotation { theta, state_residual, overlap_residual: after.residual(&before), distinct_labels })
        })
        .transpose()?;

    let substituted = occupancy
        .map(|occ| -> Result<Substituted> {
            let map: Occupancy = occ.iter().copied().enumerate().collect();
            let number_variance = substitute_bilinears(&moments.variance, &map)?.re;
            let phase_variance = if number_variance > 0.0 {
                Some(phase_variance_of(&moments.variance, &map)?)
            } else if require_phase_variance {
                return Err(CliError::Config("phase variance needs a positive total occupancy".into()));
            } else {
                None
            };
            Ok(Substituted {
                occupancy: occ.to_vec(),
                number_variance,
                phase_variance,
                uncertainty_product: phase_variance.map(|p| p * number_variance),
            })
        })
        .transpose()?;

    Ok(CoherentReport {
        modes,
        state,
        eigenvalue_residuals,
        mean: moments.mean.to_string(),
        variance: moments.variance.to_string(),
        variance_residual,
        rotation,
        substituted,
    })
}

pub(super) fn run(config: &RunConfig) -> Result<()> {
    let report = coherent_report(config.modes, config.theta, config.occupancy.as_deref(), config.phase_variance)?;
    let body = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).map_err(|e| CliError::Failed(e.to_string()))?;
            s.push('\n');
            s
        }
        _ => render_text(&report),
    };
    emit(config, &body)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed("coherent-state checks failed".into()))
    }
}

fn render_text(r: &CoherentReport) -> String {
    let mut s = format!("coherent state |y⟩ = D(y)|0⟩, {} mode{}\n", r.modes, if r.modes == 1 { "" } else { "s" });
    let width = r.modes + 3;
    for a in &r.state {
        s.push_str(&format!("  {:<width$}  {}\n", a.basis, a.coefficient));
    }
    s.push_str("a_k|y⟩ − y_k|y⟩ residual:");
    for (k, res) in r.eigenvalue_residuals.iter().enumerate() {
        s.push_str(&format!(" mode {} {}", k + 1, residual_text(*res)));
        if k + 1 < r.eigenvalue_residuals.len() {
            s.push(',');
        }
    }
    s.push('\n');
    s.push_str(&format!("⟨N⟩ = {}\n", r.mean));
    s.push_str(&format!("⟨ΔN²⟩ = {}\n", r.variance));
    s.push_str(&format!("⟨ΔN²⟩ − Σ y*_k y_k residual {}\n", residual_text(r.variance_residual)));
    if let Some(rot) = &r.rotation {
        s.push_str(&format!("rotation θ = {}\n", rot.theta));
        s.push_str(&format!("  e^{{iθN}}|y⟩ − |e^{{iθ}}y⟩ residual {}\n", residual_text(rot.state_residual)));
        let which = if rot.distinct_labels { "⟨y'|y⟩" } else { "⟨y|y⟩" };
        s.push_str(&format!("  overlap {which} invariance residual {}\n", residual_text(rot.overlap_residual)));
    }
    if let Some(sub) = &r.substituted {
        let occ: Vec<String> = sub.occupancy.iter().map(f64::to_string).collect();
        s.push_str(&format!("occupancy {}\n", occ.join(",")));
        s.push_str(&format!("  ⟨ΔN²⟩ = {}\n", sub.number_variance));
        if let Some(p) = sub.phase_variance {
            s.push_str(&format!("  ⟨Δθ²⟩ = 1/(4N) = {p}\n"));
        }
        if let Some(p) = sub.uncertainty_product {
            s.push_str(&format!("  ⟨ΔN²⟩⟨Δθ²⟩ = {p}\n"));
        }
    }
    s
}
