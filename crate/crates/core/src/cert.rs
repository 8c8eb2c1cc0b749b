use serde::Serialize;

/// Outcome of a law check. A failure carries a witness that reproduces it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Certificate {
    Pass,
    Fail(Violation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Name of the violated law.
    pub law: String,
    /// Indices locating the violation, in the order documented by the checker.
    pub witness: Vec<usize>,
    /// Human readable rendering of the witness.
    pub detail: String,
}

impl Certificate {
    pub fn fail(law: &str, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Certificate::Fail(Violation {
            law: law.to_string(),
            witness,
            detail: detail.into(),
        })
    }

    pub fn passed(&self) -> bool {
        matches!(self, Certificate::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Certificate::Pass => None,
            Certificate::Fail(v) => Some(v),
        }
    }

    /// Chains checks: returns the first failure.
    pub fn and_then(self, next: impl FnOnce() -> Certificate) -> Certificate {
        match self {
            Certificate::Pass => next(),
            fail => fail,
        }
    }
}

/// Resource caps for enumerations that can blow up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest function space `Y^X` that may be materialized.
    pub exponent: usize,
    /// Largest total category (in morphisms) the fibration kernel will build.
    pub morphisms: usize,
    /// Largest candidate count for the linear certification search.
    pub search: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exponent: 4096,
            morphisms: 64,
            search: 1 << 24,
        }
    }
}
