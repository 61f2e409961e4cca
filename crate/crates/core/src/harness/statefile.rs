use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{read_file, HarnessError, HarnessResult};
use crate::linalg::{ComplexMatrix, QubitRegister};
use crate::{Density, Pure};

pub const STATE_FORMAT_VERSION: &str = "1";

/// JSON state description. Amplitudes and matrix entries are `[re, im]`
/// pairs in computational-basis order, most significant qubit first; the
/// matrix is row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub format_version: String,
    pub num_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_matrix: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedState {
    Pure(Pure),
    Mixed(Density),
}

impl LoadedState {
    /// The pure state, or the rank-one density matrix converted to one.
    pub fn require_pure(&self) -> HarnessResult<Pure> {
        match self {
            LoadedState::Pure(p) => Ok(p.clone()),
            LoadedState::Mixed(rho) => rho.as_pure()?.ok_or_else(|| {
                HarnessError::Core(crate::Error::Unsupported(
                    "monogamy profiles need a pure global state".into(),
                ))
            }),
        }
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<Complex<f64>> {
    pairs.iter().map(|&[re, im]| Complex::new(re, im)).collect()
}

fn to_pairs(values: &[Complex<f64>]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

impl StateFile {
    pub fn parse(text: &str) -> HarnessResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> HarnessResult<Self> {
        Self::parse(&read_file(path)?)
    }

    pub fn from_pure(psi: &Pure) -> Self {
        Self {
            format_version: STATE_FORMAT_VERSION.into(),
            num_qubits: psi.num_qubits(),
            labels: Some(psi.register().labels().to_vec()),
            amplitudes: Some(to_pairs(psi.amplitudes())),
            density_matrix: None,
        }
    }

    pub fn from_density(rho: &Density) -> Self {
        Self {
            format_version: STATE_FORMAT_VERSION.into(),
            num_qubits: rho.num_qubits(),
            labels: Some(rho.register().labels().to_vec()),
            amplitudes: None,
            density_matrix: Some(to_pairs(rho.matrix().entries())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_state(&self) -> HarnessResult<LoadedState> {
        if self.format_version != STATE_FORMAT_VERSION {
            return Err(HarnessError::Config(format!(
                "unsupported state format_version {:?} (expected {STATE_FORMAT_VERSION:?})",
                self.format_version
            )));
        }
        let register = match &self.labels {
            Some(labels) => QubitRegister::new(labels.iter().cloned())?,
            None => QubitRegister::with_default_labels(self.num_qubits)?,
        };
        if register.num_qubits() != self.num_qubits {
            return Err(HarnessError::Config(format!(
                "{} labels for {} qubits",
                register.num_qubits(),
                self.num_qubits
            )));
        }
        match (&self.amplitudes, &self.density_matrix) {
            (Some(amps), None) => Ok(LoadedState::Pure(Pure::new(to_complex(amps), register)?)),
            (None, Some(entries)) => {
                let matrix = ComplexMatrix::from_entries(register.dim(), to_complex(entries))?;
                Ok(LoadedState::Mixed(Density::new(matrix, register)?))
            }
            _ => Err(HarnessError::Config(
                "state file needs exactly one of amplitudes / density_matrix".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_phi_plus, w_state};

    #[test]
    fn parse_w_state() {
        let text = r#"{
            "format_version": "1",
            "num_qubits": 3,
            "amplitudes": [[0,0],[0.5773502691896258,0],[0.5773502691896258,0],[0,0],
                           [0.5773502691896258,0],[0,0],[0,0],[0,0]]
        }"#;
        let state = StateFile::parse(text).unwrap().to_state().unwrap();
        let LoadedState::Pure(psi) = state else {
            panic!("expected pure")
        };
        assert_eq!(psi, w_state(3).unwrap());
    }

    #[test]
    fn round_trips() {
        let psi = w_state(4).unwrap();
        let back = StateFile::parse(&StateFile::from_pure(&psi).to_json())
            .unwrap()
            .to_state()
            .unwrap();
        assert_eq!(back, LoadedState::Pure(psi));
        let rho = bell_phi_plus().density_matrix();
        let back = StateFile::from_density(&rho).to_state().unwrap();
        assert_eq!(back, LoadedState::Mixed(rho));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(StateFile::parse("{"), Err(HarnessError::Json(_))));
        assert!(StateFile::parse(r#"{"format_version":"1","num_qubits":1,"bogus":1}"#).is_err());
        let both = StateFile {
            format_version: "1".into(),
            num_qubits: 1,
            labels: None,
            amplitudes: Some(vec![[1.0, 0.0], [0.0, 0.0]]),
            density_matrix: Some(vec![[1.0, 0.0]; 4]),
        };
        assert!(matches!(both.to_state(), Err(HarnessError::Config(_))));
        let wrong_len = StateFile {
            amplitudes: Some(vec![[1.0, 0.0]; 3]),
            density_matrix: None,
            ..both.clone()
        };
        assert!(wrong_len.to_state().is_err());
        let unnormalized = StateFile {
            amplitudes: Some(vec![[1.0, 0.0], [1.0, 0.0]]),
            density_matrix: None,
            ..both.clone()
        };
        assert!(unnormalized.to_state().is_err());
        let version = StateFile {
            format_version: "0".into(),
            amplitudes: Some(vec![[1.0, 0.0], [0.0, 0.0]]),
            density_matrix: None,
            ..both
        };
        assert!(matches!(version.to_state(), Err(HarnessError::Config(_))));
    }
}
