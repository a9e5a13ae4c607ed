//! Named system families.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::SymmetricSystem;
use crate::error::{Error, Result};
use crate::int::{self, Int};
use crate::poly::IntPolynomial;

/// Rows `φ_j = σ_j + Σ_{l ≤ k-r} a[j'][l-1] σ_l` for `j = k-r+1..k`, where
/// `j' = j - (k-r) - 1` indexes `a`.
pub fn gen_corollary_system(k: usize, r: usize, a: &[Vec<Int>]) -> Result<SymmetricSystem> {
    if r == 0 || r > k {
        return Err(Error::Dimension(format!("need 1 <= r <= k, got r = {r}, k = {k}")));
    }
    let free = k - r;
    if a.len() != r || a.iter().any(|row| row.len() != free) {
        return Err(Error::Dimension(format!("coefficient matrix must be {r} x {free}")));
    }
    let rows = a
        .iter()
        .enumerate()
        .map(|(i, coeffs)| {
            let mut row = vec![0; k];
            row[..free].copy_from_slice(coeffs);
            row[free + i] = 1;
            row
        })
        .collect();
    SymmetricSystem::new(k, rows)
}

/// Expands `∏(x_i + θ) = Σ_j σ_j θ^{k-j}` in the basis `1, θ, …, θ^{d-1}` of
/// `ℤ[θ]/(minpoly)` and returns one equation per basis element, lowest
/// first. The `σ_0` contribution is the same on both sides and is dropped.
pub fn gen_theta_system(minpoly: &IntPolynomial, k: usize) -> Result<SymmetricSystem> {
    let d = match minpoly.degree() {
        Some(d) if d >= 1 && minpoly.leading() == 1 => d,
        _ => return Err(Error::InvalidMinpoly),
    };
    if d > k {
        return Err(Error::Dimension(format!("degree {d} exceeds k = {k}")));
    }
    // powers[n] = θ^n reduced, for n = 0..k-1
    let mut powers: Vec<Vec<Int>> = Vec::with_capacity(k);
    let mut current = vec![0; d];
    current[0] = 1;
    for _ in 0..k {
        powers.push(current.clone());
        current = times_theta(&current, minpoly)?;
    }
    let rows = (0..d).map(|m| (1..=k).map(|j| powers[k - j][m]).collect()).collect();
    SymmetricSystem::new(k, rows)
}

fn times_theta(v: &[Int], minpoly: &IntPolynomial) -> Result<Vec<Int>> {
    let d = v.len();
    let top = v[d - 1];
    let mut out = vec![0; d];
    out[1..].copy_from_slice(&v[..d - 1]);
    // θ^d = -(m_0 + m_1 θ + … + m_{d-1} θ^{d-1})
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = int::sub(*slot, int::mul(top, minpoly.coeff(i))?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{normalize, Triangular};

    fn poly(c: &[Int]) -> IntPolynomial {
        IntPolynomial::from_coeffs(c.to_vec())
    }

    #[test]
    fn gaussian_k4_matches_displayed_system() {
        let sys = gen_theta_system(&poly(&[1, 0, 1]), 4).unwrap();
        assert_eq!(sys.rows(), &[vec![0, -1, 0, 1], vec![-1, 0, 1, 0]]);
    }

    #[test]
    fn gaussian_k2() {
        let sys = gen_theta_system(&poly(&[1, 0, 1]), 2).unwrap();
        // σ2 (constant part) and σ1 (θ part)
        assert_eq!(sys.rows(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn rational_theta() {
        let sys = gen_theta_system(&poly(&[-2, 1]), 2).unwrap();
        assert_eq!(sys.rows(), &[vec![2, 1]]);
    }

    #[test]
    fn minpoly_validation() {
        assert_eq!(gen_theta_system(&poly(&[1, 0, 2]), 4), Err(Error::InvalidMinpoly));
        assert_eq!(gen_theta_system(&poly(&[3]), 4), Err(Error::InvalidMinpoly));
        assert!(matches!(gen_theta_system(&poly(&[1, 0, 0, 1]), 2), Err(Error::Dimension(_))));
    }

    #[test]
    fn corollary_examples() {
        let sys = gen_corollary_system(4, 2, &[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(sys.rows(), &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(normalize(&sys).unwrap().shape().weight(), 3);

        let full = gen_corollary_system(3, 3, &[vec![], vec![], vec![]]).unwrap();
        let n = normalize(&full).unwrap();
        assert_eq!(n.shape().degrees(), &[1, 2, 3]);
        assert!(n.shape().complement().is_empty());
        assert_eq!(n.shape().weight(), 0);

        let a = [vec![1, -3], vec![2, 2], vec![-1, 0]];
        let n = normalize(&gen_corollary_system(5, 3, &a).unwrap()).unwrap();
        assert_eq!(n.shape().degrees(), &[3, 4, 5]);
        assert_eq!(n.shape().weight(), 3);

        assert!(gen_corollary_system(3, 4, &[]).is_err());
        assert!(gen_corollary_system(4, 2, &[vec![0]]).is_err());
    }
}
