//! Exact truncated Laurent series over a rational coefficient ring.
//!
//! `FormalSeries<C>` stores dense coefficients for `t^{min_deg} … t^{tmax}`
//! and tracks truncation order through every operation: arithmetic never
//! reads (or pretends to know) coefficients beyond `tmax`.

use crate::error::{QrmError, Result};
use crate::numerics::mupoly::MuPoly;
use crate::numerics::poly::{rat_int, MultiPoly, Rational};
use num_traits::{One, Zero};

/// Coefficient ring for [`FormalSeries`].
pub trait SeriesCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse, available only for invertible scalars.
    fn try_recip(&self) -> Option<Self>;
}

impl SeriesCoeff for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<Rational as One>::one() / self.clone())
        }
    }
}

impl SeriesCoeff for MuPoly {
    fn zero() -> Self {
        MuPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MuPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        MuPoly::add(self, rhs)
    }
    fn neg(&self) -> Self {
        MuPoly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MuPoly::mul(self, rhs)
    }
    fn scale(&self, r: &Rational) -> Self {
        MuPoly::scale(self, r)
    }
    fn try_recip(&self) -> Option<Self> {
        // invertible only when a nonzero constant
        let c = self.eval_rational(&<Rational as Zero>::zero(), &[]);
        if Zero::is_zero(&c) || self != &MuPoly::constant(c.clone()) {
            return None;
        }
        Some(MuPoly::constant(<Rational as One>::one() / c))
    }
}

impl SeriesCoeff for MultiPoly {
    fn zero() -> Self {
        // ring unifies on first nonzero operand
        MultiPoly::zero(crate::numerics::poly::RingTag::Full)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn try_recip(&self) -> Option<Self> {
        let c = self.coeff([0, 0, 0]);
        if Zero::is_zero(&c) || self != &MultiPoly::constant(self.ring(), c.clone()) {
            return None;
        }
        Some(MultiPoly::constant(self.ring(), <Rational as One>::one() / c))
    }
}

/// Truncated Laurent series `Σ_{k=min_deg}^{tmax} c_k t^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries<C: SeriesCoeff> {
    min_deg: i64,
    /// coefficients of `t^{min_deg} … t^{tmax}`, dense
    coeffs: Vec<C>,
    tmax: i64,
}

impl<C: SeriesCoeff> FormalSeries<C> {
    pub fn zero(tmax: i64) -> Self {
        Self { min_deg: 0, coeffs: vec![C::zero(); (tmax + 1).max(0) as usize], tmax }
    }

    pub fn constant(c: C, tmax: i64) -> Self {
        Self::monomial(c, 0, tmax)
    }

    /// `c · t^k`, known through `t^{tmax}`.
    pub fn monomial(c: C, k: i64, tmax: i64) -> Self {
        assert!(k <= tmax, "monomial degree beyond truncation order");
        let mut coeffs = vec![C::zero(); (tmax - k + 1) as usize];
        coeffs[0] = c;
        Self { min_deg: k, coeffs, tmax }.normalized()
    }

    pub fn from_coeffs(min_deg: i64, coeffs: Vec<C>) -> Self {
        let tmax = min_deg + coeffs.len() as i64 - 1;
        Self { min_deg, coeffs, tmax }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.min_deg += 1;
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(C::zero());
            self.min_deg = self.tmax;
        }
        self
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn tmax(&self) -> i64 {
        self.tmax
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Coefficient of `t^k` (zero outside the stored range; panics beyond
    /// the truncation order — that coefficient is unknown, not zero).
    pub fn coeff(&self, k: i64) -> C {
        assert!(k <= self.tmax, "coefficient beyond truncation order");
        if k < self.min_deg {
            return C::zero();
        }
        self.coeffs
            .get((k - self.min_deg) as usize)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let tmax = self.tmax.min(other.tmax);
        let min = self.min_deg.min(other.min_deg);
        let mut coeffs = vec![C::zero(); (tmax - min + 1).max(1) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let k = min + i as i64;
            let a = if k >= self.min_deg && k <= self.tmax { self.coeff(k) } else { C::zero() };
            let b = if k >= other.min_deg && k <= other.tmax { other.coeff(k) } else { C::zero() };
            *c = a.add(&b);
        }
        Self { min_deg: min, coeffs, tmax }.normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(C::neg).collect(),
            tmax: self.tmax,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // product order of validity: min(T₁ + m₂, T₂ + m₁)
        let tmax = (self.tmax + other.min_deg).min(other.tmax + self.min_deg);
        let min = self.min_deg + other.min_deg;
        let mut coeffs = vec![C::zero(); (tmax - min + 1).max(1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ka = self.min_deg + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = ka + other.min_deg + j as i64;
                if k > tmax {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let idx = (k - min) as usize;
                coeffs[idx] = coeffs[idx].add(&a.mul(b));
            }
        }
        Self { min_deg: min, coeffs, tmax }.normalized()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
            tmax: self.tmax,
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            tmax: self.tmax,
        }
    }

    /// Multiply by `t^k` (k may be negative); truncation order shifts with
    /// the degree so no information is invented or lost.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
            tmax: self.tmax + k,
        }
    }

    pub fn truncate(&self, tmax: i64) -> Self {
        assert!(tmax <= self.tmax, "cannot extend truncation order");
        let len = ((tmax - self.min_deg + 1).max(1)) as usize;
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(len);
        let min_deg = self.min_deg.min(tmax);
        Self { min_deg, coeffs, tmax }.normalized()
    }

    /// Reciprocal of a unit series (invertible leading coefficient).
    pub fn recip(&self) -> Result<Self> {
        let this = self.clone().normalized();
        let lead = this.coeffs[0].try_recip().ok_or_else(|| {
            QrmError::InvalidArgument("series reciprocal needs an invertible leading coefficient".into())
        })?;
        let m = this.min_deg;
        let rel_order = (this.tmax - m) as usize;
        // b with b·a = 1: relative coefficients
        let mut b = vec![C::zero(); rel_order + 1];
        b[0] = lead.clone();
        for k in 1..=rel_order {
            let mut acc = C::zero();
            for j in 1..=k {
                let aj = this.coeffs.get(j).cloned().unwrap_or_else(C::zero);
                if aj.is_zero() || b[k - j].is_zero() {
                    continue;
                }
                acc = acc.add(&aj.mul(&b[k - j]));
            }
            b[k] = acc.neg().mul(&lead);
        }
        Ok(Self { min_deg: -m, coeffs: b, tmax: this.tmax - 2 * m }.normalized())
    }

}

/// Rings with a multiplicative identity, needed for the series
/// exponential seed.
pub trait CoeffOne: SeriesCoeff {
    fn one() -> Self;
}

impl CoeffOne for Rational {
    fn one() -> Self {
        <Rational as One>::one()
    }
}
impl CoeffOne for MuPoly {
    fn one() -> Self {
        MuPoly::one()
    }
}
impl CoeffOne for MultiPoly {
    fn one() -> Self {
        MultiPoly::one(crate::numerics::poly::RingTag::Full)
    }
}

/// Exponential of a series with no pole part and zero constant term.
pub fn series_exp<C: CoeffOne>(s: &FormalSeries<C>) -> Result<FormalSeries<C>> {
    s.exp()
}

impl<C: CoeffOne> FormalSeries<C> {
    pub fn constant_one(tmax: i64) -> Self {
        Self::constant(C::one(), tmax)
    }

    /// Termwise exponential via the ODE recurrence
    /// `k f_k = Σ_{j=1..k} j e_j f_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        let this = self.clone().normalized();
        if this.is_zero() {
            return Ok(Self::constant_one(this.tmax));
        }
        if this.min_deg < 0 {
            return Err(QrmError::Domain(format!(
                "series exponential of a pole part (min degree {})",
                this.min_deg
            )));
        }
        if this.min_deg == 0 && !this.coeffs[0].is_zero() {
            return Err(QrmError::Domain(
                "series exponential needs zero constant term".into(),
            ));
        }
        let tmax = this.tmax;
        let n = tmax.max(0) as usize;
        let mut f = vec![C::zero(); n + 1];
        f[0] = C::one();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                let kj = j as i64;
                let ej = if kj >= this.min_deg && kj <= tmax {
                    this.coeff(kj)
                } else {
                    C::zero()
                };
                if ej.is_zero() || f[k - j].is_zero() {
                    continue;
                }
                acc = acc.add(&ej.scale(&rat_int(j as i64)).mul(&f[k - j]));
            }
            f[k] = acc.scale(&(<Rational as One>::one() / rat_int(k as i64)));
        }
        Ok(Self { min_deg: 0, coeffs: f, tmax })
    }
}
