//! Riemann–Hurwitz bookkeeping.

use num_rational::Ratio;

use super::Signature;
use crate::error::{Error, Result};

/// `2 − 2g' − Σ (1 − 1/m_i)`.
pub fn orbifold_euler(signature: &Signature) -> Ratio<i64> {
    let mut chi = Ratio::from_integer(2 - 2 * signature.genus as i64);
    for &m in &signature.orders {
        chi -= Ratio::new(m as i64 - 1, m as i64);
    }
    chi
}

/// Genus of the cover `C` with deck group of order `group_order` over a
/// quotient with the given signature: `2g − 2 = −|G| · χ`.
pub fn riemann_hurwitz_genus(group_order: usize, signature: &Signature) -> Result<u32> {
    let two_g_minus_two = -orbifold_euler(signature) * Ratio::from_integer(group_order as i64);
    if !two_g_minus_two.is_integer() {
        return Err(Error::InconsistentSignature(format!(
            "2g - 2 = {two_g_minus_two} is not an integer for |G| = {group_order}, {signature}"
        )));
    }
    let value = two_g_minus_two.to_integer();
    if value < -2 || value % 2 != 0 {
        return Err(Error::InconsistentSignature(format!(
            "2g - 2 = {value} is not an even integer >= -2 for |G| = {group_order}, {signature}"
        )));
    }
    Ok(((value + 2) / 2) as u32)
}

/// Dimension of the fixed locus: `3g' − 3 + r` of the quotient signature.
pub fn delta(signature: &Signature) -> i64 {
    3 * signature.genus as i64 - 3 + signature.branch_points() as i64
}
