//! Names and parameters of the supported arithmetic functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ArithError;

/// One of the arithmetic functions the tables can be built for.
///
/// String form is `name[:param]`, e.g. `mobius`, `jordan:2`, `sigma:-1`,
/// `ramanujan:6`, `mu_k:3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FunctionId {
    One,
    Mobius,
    MobiusAbs,
    Totient,
    Jordan(f64),
    Mangoldt,
    Sigma(f64),
    DivisorD,
    DivisorDSq,
    Liouville,
    Omega,
    TwoPowOmega,
    /// `n ↦ c_n(v)`.
    Ramanujan(u64),
    R2,
    R4,
    R8,
    Chi1,
    CoreGamma,
    MuK(u32),
    NegOnePowOmega,
    PhiAbsMu,
    /// A table assembled from other tables; the label describes how.
    Custom(String),
}

impl FunctionId {
    /// Whether `build_table` produces exact (integer or rational) values.
    pub fn is_exact(&self) -> bool {
        match self {
            FunctionId::Jordan(a) | FunctionId::Sigma(a) => is_int(*a),
            FunctionId::Mangoldt | FunctionId::MuK(_) | FunctionId::Custom(_) => false,
            _ => true,
        }
    }
}

pub(crate) fn is_int(x: f64) -> bool {
    x.fract() == 0.0 && x.abs() <= 64.0
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionId::One => f.write_str("one"),
            FunctionId::Mobius => f.write_str("mobius"),
            FunctionId::MobiusAbs => f.write_str("mobius_abs"),
            FunctionId::Totient => f.write_str("totient"),
            FunctionId::Jordan(a) => write!(f, "jordan:{a}"),
            FunctionId::Mangoldt => f.write_str("mangoldt"),
            FunctionId::Sigma(s) => write!(f, "sigma:{s}"),
            FunctionId::DivisorD => f.write_str("divisor_d"),
            FunctionId::DivisorDSq => f.write_str("divisor_d_sq"),
            FunctionId::Liouville => f.write_str("liouville"),
            FunctionId::Omega => f.write_str("omega"),
            FunctionId::TwoPowOmega => f.write_str("two_pow_omega"),
            FunctionId::Ramanujan(v) => write!(f, "ramanujan:{v}"),
            FunctionId::R2 => f.write_str("r2"),
            FunctionId::R4 => f.write_str("r4"),
            FunctionId::R8 => f.write_str("r8"),
            FunctionId::Chi1 => f.write_str("chi1"),
            FunctionId::CoreGamma => f.write_str("core_gamma"),
            FunctionId::MuK(k) => write!(f, "mu_k:{k}"),
            FunctionId::NegOnePowOmega => f.write_str("neg_one_pow_omega"),
            FunctionId::PhiAbsMu => f.write_str("phi_abs_mu"),
            FunctionId::Custom(label) => write!(f, "custom:{label}"),
        }
    }
}

impl FromStr for FunctionId {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ArithError::Parse(s.to_string());
        let (name, param) = match s.trim().split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let real = |p: Option<&str>| -> Result<f64, ArithError> {
            let x: f64 = p.ok_or_else(err)?.parse().map_err(|_| err())?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(err())
            }
        };
        let positive = |p: Option<&str>| -> Result<u64, ArithError> {
            let v: u64 = p.ok_or_else(err)?.parse().map_err(|_| err())?;
            if v == 0 {
                return Err(ArithError::InvalidParameter(format!(
                    "{name} needs a parameter >= 1"
                )));
            }
            Ok(v)
        };
        let bare = |id: FunctionId| if param.is_none() { Ok(id) } else { Err(err()) };
        match name {
            "one" => bare(FunctionId::One),
            "mobius" | "mu" => bare(FunctionId::Mobius),
            "mobius_abs" => bare(FunctionId::MobiusAbs),
            "totient" | "phi" => bare(FunctionId::Totient),
            "jordan" => Ok(FunctionId::Jordan(real(param)?)),
            "mangoldt" => bare(FunctionId::Mangoldt),
            "sigma" => Ok(FunctionId::Sigma(real(param)?)),
            "divisor_d" => bare(FunctionId::DivisorD),
            "divisor_d_sq" => bare(FunctionId::DivisorDSq),
            "liouville" | "lambda" => bare(FunctionId::Liouville),
            "omega" => bare(FunctionId::Omega),
            "two_pow_omega" => bare(FunctionId::TwoPowOmega),
            "ramanujan" => Ok(FunctionId::Ramanujan(positive(param)?)),
            "r2" => bare(FunctionId::R2),
            "r4" => bare(FunctionId::R4),
            "r8" => bare(FunctionId::R8),
            "chi1" => bare(FunctionId::Chi1),
            "core_gamma" => bare(FunctionId::CoreGamma),
            "mu_k" => {
                let k = positive(param)?;
                u32::try_from(k)
                    .map(FunctionId::MuK)
                    .map_err(|_| ArithError::InvalidParameter(format!("mu_k order {k} too large")))
            }
            "neg_one_pow_omega" => bare(FunctionId::NegOnePowOmega),
            "phi_abs_mu" => bare(FunctionId::PhiAbsMu),
            _ => Err(err()),
        }
    }
}

impl From<FunctionId> for String {
    fn from(f: FunctionId) -> Self {
        f.to_string()
    }
}

impl TryFrom<String> for FunctionId {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        if let Some(label) = s.strip_prefix("custom:") {
            return Ok(FunctionId::Custom(label.to_string()));
        }
        s.parse().map_err(|e: ArithError| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "one",
            "mobius",
            "jordan:2",
            "jordan:0.5",
            "sigma:-1",
            "ramanujan:6",
            "mu_k:3",
            "r8",
            "phi_abs_mu",
        ] {
            let f: FunctionId = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("bogus".parse::<FunctionId>().is_err());
        assert!("jordan".parse::<FunctionId>().is_err());
        assert!("mobius:3".parse::<FunctionId>().is_err());
        assert!("ramanujan:0".parse::<FunctionId>().is_err());
        assert!("sigma:nan".parse::<FunctionId>().is_err());
    }
}
