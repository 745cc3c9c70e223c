use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation tolerance for infinite products and series.
pub const DEFAULT_EPS: f64 = 1e-14;

/// Base parameters `q`, `k` with the derived `t = q^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQParams", into = "RawQParams")]
pub struct QParams {
    q: f64,
    k: f64,
    t: f64,
    eps: f64,
}

#[derive(Serialize, Deserialize)]
struct RawQParams {
    q: f64,
    k: f64,
    #[serde(default = "default_eps")]
    eps: f64,
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

impl TryFrom<RawQParams> for QParams {
    type Error = Error;
    fn try_from(raw: RawQParams) -> Result<Self> {
        QParams::new(raw.q, raw.k)?.with_eps(raw.eps)
    }
}

impl From<QParams> for RawQParams {
    fn from(p: QParams) -> Self {
        RawQParams {
            q: p.q,
            k: p.k,
            eps: p.eps,
        }
    }
}

impl QParams {
    pub fn new(q: f64, k: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("q = {q} must lie in (0, 1)")));
        }
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::Domain(format!("k = {k} must lie in (0, 1)")));
        }
        Ok(QParams {
            q,
            k,
            t: q.powf(k),
            eps: DEFAULT_EPS,
        })
    }

    pub fn with_eps(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Domain(format!("eps = {eps} must lie in (0, 1)")));
        }
        self.eps = eps;
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `t = q^k`, always derived.
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Which of the two `(x, r)` parametrisations is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// `r = 1 / (1 - k)`
    ModeA,
    /// `r = 1 / k`
    ModeB,
}

/// The `(x, r)` view of the base parameters, with `q = x^{2r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XRParams {
    x: f64,
    r: f64,
    mode: Mode,
}

impl XRParams {
    pub fn new(x: f64, r: f64, mode: Mode) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("x = {x} must lie in (0, 1)")));
        }
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::Domain(format!("r = {r} must exceed 1")));
        }
        Ok(XRParams { x, r, mode })
    }

    /// Derives `(x, r)` from `(q, k)`: `r` per `mode`, `x = q^{1/(2r)}`.
    pub fn from_qparams(p: &QParams, mode: Mode) -> Self {
        let r = match mode {
            Mode::ModeA => 1.0 / (1.0 - p.k()),
            Mode::ModeB => 1.0 / p.k(),
        };
        XRParams {
            x: p.q().powf(1.0 / (2.0 * r)),
            r,
            mode,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `q = x^{2r}`.
    pub fn q(&self) -> f64 {
        self.x.powf(2.0 * self.r)
    }

    /// The `k` implied by `r` and the mode.
    pub fn k(&self) -> f64 {
        match self.mode {
            Mode::ModeA => 1.0 - 1.0 / self.r,
            Mode::ModeB => 1.0 / self.r,
        }
    }

    pub fn to_qparams(&self) -> Result<QParams> {
        QParams::new(self.q(), self.k())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(QParams::new(1.0, 0.5).is_err());
        assert!(QParams::new(0.5, 0.0).is_err());
        assert!(QParams::new(0.5, 1.2).is_err());
        assert!(QParams::new(0.5, 0.4).unwrap().with_eps(0.0).is_err());
        assert!(XRParams::new(0.5, 1.0, Mode::ModeA).is_err());
    }

    #[test]
    fn t_is_derived() {
        let p = QParams::new(0.5, 0.4).unwrap();
        assert_eq!(p.t(), 0.5f64.powf(0.4));
    }

    #[test]
    fn xr_reproduces_q() {
        for &(q, k) in &[(0.5, 0.4), (0.1, 0.9), (0.93, 0.07)] {
            let p = QParams::new(q, k).unwrap();
            for mode in [Mode::ModeA, Mode::ModeB] {
                let xr = XRParams::from_qparams(&p, mode);
                assert!((xr.q() - q).abs() < 1e-14);
                assert!((xr.k() - k).abs() < 1e-14);
            }
            let a = XRParams::from_qparams(&p, Mode::ModeA);
            assert!((a.r() - 1.0 / (1.0 - k)).abs() < 1e-14);
            let b = XRParams::from_qparams(&p, Mode::ModeB);
            assert!((b.r() - 1.0 / k).abs() < 1e-14);
        }
    }

    #[test]
    fn serde_round_trip_validates() {
        let p = QParams::new(0.5, 0.4).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: QParams = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
        assert!(serde_json::from_str::<QParams>(r#"{"q":1.5,"k":0.4}"#).is_err());
    }
}
