//! Hilbert-Schmidt and symplectic volumes of flag manifolds, unitary orbits
//! and qudit state spaces. All results are exact.

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{Rational, SymbolicReal};

/// Largest dimension accepted by the volume functions.
pub const MAX_DIMENSION: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VolumeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension {0} exceeds the cap of {MAX_DIMENSION}")]
    DimensionTooLarge(usize),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
}

fn check_dimension(n: usize) -> Result<(), VolumeError> {
    match n {
        0 => Err(VolumeError::ZeroDimension),
        n if n > MAX_DIMENSION => Err(VolumeError::DimensionTooLarge(n)),
        _ => Ok(()),
    }
}

fn is_descending(xs: &[Rational]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

fn is_strictly_descending(xs: &[Rational]) -> bool {
    xs.windows(2).all(|w| w[0] > w[1])
}

/// Eigenvalues of a density matrix, descending, nonnegative, summing to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    entries: Vec<Rational>,
}

impl Spectrum {
    pub fn new(entries: Vec<Rational>) -> Result<Self, VolumeError> {
        if entries.is_empty() {
            return Err(VolumeError::InvalidSpectrum("empty".into()));
        }
        if !is_descending(&entries) {
            return Err(VolumeError::InvalidSpectrum("not sorted descending".into()));
        }
        if entries.iter().any(Rational::is_negative) {
            return Err(VolumeError::InvalidSpectrum("negative entry".into()));
        }
        let total: Rational = entries.iter().cloned().sum();
        if !total.is_one() {
            return Err(VolumeError::InvalidSpectrum(format!("sum is {total}, not 1")));
        }
        Ok(Spectrum { entries })
    }

    /// Sorts the entries first.
    pub fn from_unsorted(mut entries: Vec<Rational>) -> Result<Self, VolumeError> {
        entries.sort_by(|a, b| b.cmp(a));
        Spectrum::new(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn is_simple(&self) -> bool {
        is_strictly_descending(&self.entries)
    }

    /// `λ − (1/N, …, 1/N)`.
    pub fn centered(&self) -> CenteredSpectrum {
        let shift = Rational::new(1, self.entries.len() as i64);
        CenteredSpectrum {
            entries: self.entries.iter().map(|e| e - &shift).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Rational::to_f64).collect()
    }
}

/// Descending trace-zero vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenteredSpectrum {
    entries: Vec<Rational>,
}

impl CenteredSpectrum {
    pub fn new(entries: Vec<Rational>) -> Result<Self, VolumeError> {
        if entries.is_empty() {
            return Err(VolumeError::InvalidSpectrum("empty".into()));
        }
        if !is_descending(&entries) {
            return Err(VolumeError::InvalidSpectrum("not sorted descending".into()));
        }
        let total: Rational = entries.iter().cloned().sum();
        if !total.is_zero() {
            return Err(VolumeError::InvalidSpectrum(format!("sum is {total}, not 0")));
        }
        Ok(CenteredSpectrum { entries })
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn is_simple(&self) -> bool {
        is_strictly_descending(&self.entries)
    }

    /// `τ·λ̂`, for `τ > 0`.
    pub fn scaled(&self, tau: &Rational) -> Result<Self, VolumeError> {
        if !tau.is_positive() {
            return Err(VolumeError::InvalidSpectrum("scale must be positive".into()));
        }
        Ok(CenteredSpectrum {
            entries: self.entries.iter().map(|e| e * tau).collect(),
        })
    }

    /// `λ̂ + (1/N, …, 1/N)`, if that is a valid spectrum.
    pub fn uncentered(&self) -> Result<Spectrum, VolumeError> {
        let shift = Rational::new(1, self.entries.len() as i64);
        Spectrum::new(self.entries.iter().map(|e| e + &shift).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Rational::to_f64).collect()
    }
}

/// `∏_{i<j} (x_i − x_j)`.
pub fn vandermonde(x: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= &(&x[i] - &x[j]);
        }
    }
    v
}

/// `∏_{k=1}^{n} Γ(k) = ∏ (k−1)!`.
pub fn gamma_product(n: usize) -> Rational {
    (1..=n as u32).map(|k| Rational::factorial(k - 1)).product()
}

fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

fn two_pow(k: u32) -> Rational {
    Rational::integer(2).pow(k as i32)
}

/// `(2π)^{N(N−1)/2} / ∏ Γ(k)`.
pub fn flag_volume_hs(n: usize) -> Result<SymbolicReal, VolumeError> {
    check_dimension(n)?;
    let m = pair_count(n);
    Ok(SymbolicReal::pi_pow(m).scale(&(two_pow(m) / gamma_product(n))))
}

/// `π^{N(N−1)/2} / ∏ Γ(k)`.
pub fn flag_volume_euclid(n: usize) -> Result<SymbolicReal, VolumeError> {
    check_dimension(n)?;
    let m = pair_count(n);
    Ok(SymbolicReal::pi_pow(m).scale(&gamma_product(n).recip().expect("nonzero")))
}

/// Volume of a unitary orbit. `degenerate` is set when the input has a
/// repeated entry, in which case the volume is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitVolume {
    pub volume: SymbolicReal,
    pub degenerate: bool,
}

/// `V_N(x)² · vol_HS(U(N)/T^N)`.
pub fn adjoint_orbit_volume_hs(x: &[Rational]) -> Result<OrbitVolume, VolumeError> {
    let flag = flag_volume_hs(x.len())?;
    let v = vandermonde(x);
    Ok(OrbitVolume {
        degenerate: v.is_zero(),
        volume: flag.scale(&(&v * &v)),
    })
}

/// `√N · (2π)^{N(N−1)/2} · ∏Γ(k) / Γ(N²)`.
pub fn state_space_volume_hs(n: usize) -> Result<SymbolicReal, VolumeError> {
    check_dimension(n)?;
    let m = pair_count(n);
    let coeff = two_pow(m) * gamma_product(n) / Rational::factorial((n * n - 1) as u32);
    Ok(SymbolicReal::new(coeff, m, n as u64).expect("positive radicand"))
}

/// `∫_{Δ∩C} V_N(λ)² dλ = (∏Γ(k))² / Γ(N²)`.
pub fn simplex_vandermonde_integral(n: usize) -> Result<Rational, VolumeError> {
    check_dimension(n)?;
    let g = gamma_product(n);
    Ok(&g * &g / Rational::factorial((n * n - 1) as u32))
}

/// Symplectic volume of the coadjoint orbit through `λ̂`.
///
/// Computed root by root as `∏_{α>0} ⟨λ̂,α⟩ · 2π/⟨ρ,α⟩` with
/// `⟨ρ, e_i − e_j⟩ = j − i`, which never touches the flag-volume formula.
pub fn coadjoint_symplectic_volume(lam: &CenteredSpectrum) -> Result<SymbolicReal, VolumeError> {
    let n = lam.dimension();
    check_dimension(n)?;
    let x = lam.entries();
    let mut coeff = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            coeff *= &(&x[i] - &x[j]);
            coeff *= &(Rational::integer(2) / Rational::integer((j - i) as i64));
        }
    }
    Ok(SymbolicReal::pi_pow(pair_count(n)).scale(&coeff))
}

/// `vol_HS(O) = V_N(λ̂) · vol_symp(O)`, checked exactly.
pub fn hs_symp_relation_check(lam: &CenteredSpectrum) -> Result<bool, VolumeError> {
    let hs = adjoint_orbit_volume_hs(lam.entries())?.volume;
    let symp = coadjoint_symplectic_volume(lam)?;
    Ok(hs == symp.scale(&vandermonde(lam.entries())))
}

/// Random simple centered spectrum with entries of the form `k/denom`
/// before centering.
pub fn random_simple_centered<R: rand::Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    denom: i64,
) -> CenteredSpectrum {
    assert!(denom as usize > n, "need at least n distinct numerators");
    let mut ks: Vec<i64> = Vec::with_capacity(n);
    while ks.len() < n {
        let k = rng.random_range(0..denom);
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    ks.sort_unstable_by(|a, b| b.cmp(a));
    let xs: Vec<Rational> = ks.iter().map(|&k| Rational::new(k, denom)).collect();
    let mean = xs.iter().cloned().sum::<Rational>() / Rational::integer(n as i64);
    CenteredSpectrum::new(xs.iter().map(|x| x - &mean).collect()).expect("centered by construction")
}

/// The quantities reported by `volumes --n N`.
#[derive(Clone, Debug, Serialize)]
pub struct VolumeTable {
    pub n: usize,
    pub flag_hs: SymbolicReal,
    pub flag_euclid: SymbolicReal,
    pub state_space_hs: SymbolicReal,
    pub simplex_integral: Rational,
}

pub fn volume_table(n: usize) -> Result<VolumeTable, VolumeError> {
    Ok(VolumeTable {
        n,
        flag_hs: flag_volume_hs(n)?,
        flag_euclid: flag_volume_euclid(n)?,
        state_space_hs: state_space_volume_hs(n)?,
        simplex_integral: simplex_vandermonde_integral(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde(&ints(&[1, 0])), q(1, 1));
        assert_eq!(vandermonde(&ints(&[3, 2, 1])), q(2, 1));
        assert!(vandermonde(&ints(&[3, 2, 2])).is_zero());
        assert_eq!(vandermonde(&ints(&[2, 3, 1])), q(-2, 1));
    }

    #[test]
    fn flag_volumes() {
        assert_eq!(flag_volume_hs(1).unwrap(), SymbolicReal::one());
        assert_eq!(flag_volume_hs(2).unwrap(), SymbolicReal::pi_pow(1).scale(&q(2, 1)));
        assert_eq!(flag_volume_hs(4).unwrap(), SymbolicReal::pi_pow(6).scale(&q(64, 12)));
        assert_eq!(flag_volume_euclid(2).unwrap(), SymbolicReal::pi_pow(1));
        assert_eq!(flag_volume_euclid(4).unwrap(), SymbolicReal::pi_pow(6).scale(&q(1, 12)));
        assert_eq!(flag_volume_euclid(1).unwrap(), SymbolicReal::one());
    }

    #[test]
    fn hs_flag_is_scaled_euclid() {
        for n in 1..=8 {
            let m = (n * (n - 1) / 2) as u32;
            assert_eq!(
                flag_volume_hs(n).unwrap(),
                flag_volume_euclid(n).unwrap().scale(&two_pow(m))
            );
        }
    }

    #[test]
    fn orbit_volumes() {
        let two_pi = SymbolicReal::pi_pow(1).scale(&q(2, 1));
        assert_eq!(adjoint_orbit_volume_hs(&ints(&[1, 0])).unwrap().volume, two_pi);
        let deg = adjoint_orbit_volume_hs(&ints(&[1, 1])).unwrap();
        assert!(deg.degenerate);
        assert!(deg.volume.is_zero());
        // V = 2, flag_hs(3) = (2π)³/2
        assert_eq!(
            adjoint_orbit_volume_hs(&ints(&[3, 2, 1])).unwrap().volume,
            SymbolicReal::pi_pow(3).scale(&q(16, 1))
        );
    }

    #[test]
    fn state_space_volumes() {
        assert_eq!(
            state_space_volume_hs(2).unwrap(),
            SymbolicReal::new(q(1, 3), 1, 2).unwrap()
        );
        let expected = q(2 * 64 * 2 * 6, 1) / Rational::factorial(15);
        assert_eq!(
            state_space_volume_hs(4).unwrap(),
            SymbolicReal::pi_pow(6).scale(&expected)
        );
        assert_eq!(state_space_volume_hs(1).unwrap(), SymbolicReal::one());
    }

    #[test]
    fn simplex_integrals() {
        assert_eq!(simplex_vandermonde_integral(1).unwrap(), q(1, 1));
        assert_eq!(simplex_vandermonde_integral(2).unwrap(), q(1, 6));
        assert_eq!(
            simplex_vandermonde_integral(4).unwrap(),
            q(144, 1) / Rational::factorial(15)
        );
    }

    #[test]
    fn state_space_factorizes() {
        for n in 1..=MAX_DIMENSION {
            let lhs = state_space_volume_hs(n).unwrap();
            let rhs = &SymbolicReal::sqrt(n as u64)
                * &flag_volume_hs(n).unwrap().scale(&simplex_vandermonde_integral(n).unwrap());
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn symplectic_volumes() {
        let lam = CenteredSpectrum::new(vec![q(1, 2), q(-1, 2)]).unwrap();
        assert_eq!(
            coadjoint_symplectic_volume(&lam).unwrap(),
            SymbolicReal::pi_pow(1).scale(&q(2, 1))
        );
        let deg = CenteredSpectrum::new(vec![q(0, 1), q(0, 1)]).unwrap();
        assert!(coadjoint_symplectic_volume(&deg).unwrap().is_zero());
        let lam4 =
            CenteredSpectrum::new(vec![q(1, 5), q(1, 50), q(-7, 100), q(-3, 20)]).unwrap();
        let v = vandermonde(lam4.entries());
        assert_eq!(
            coadjoint_symplectic_volume(&lam4).unwrap(),
            flag_volume_hs(4).unwrap().scale(&v)
        );
        assert!(hs_symp_relation_check(&lam).unwrap());
        assert!(hs_symp_relation_check(&lam4).unwrap());
    }

    #[test]
    fn dimension_cap() {
        assert_eq!(flag_volume_hs(0), Err(VolumeError::ZeroDimension));
        assert_eq!(flag_volume_hs(13), Err(VolumeError::DimensionTooLarge(13)));
    }

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![q(1, 2), q(1, 2)]).is_ok());
        assert!(Spectrum::new(vec![q(1, 4), q(3, 4)]).is_err());
        assert!(Spectrum::new(vec![q(1, 2), q(1, 4)]).is_err());
        assert!(Spectrum::new(vec![q(3, 2), q(-1, 2)]).is_err());
        let s = Spectrum::new(vec![q(9, 20), q(27, 100), q(9, 50), q(1, 10)]).unwrap();
        assert!(s.is_simple());
        assert_eq!(
            s.centered().entries(),
            &[q(1, 5), q(1, 50), q(-7, 100), q(-3, 20)]
        );
    }
}
