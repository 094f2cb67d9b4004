//! Fredholm index of a two-level building in the symplectization.

use crate::error::{Error, Result};

/// Index of a genus-zero curve with one positive end at an orbit of index
/// `top` and negative ends at orbits with indices `bottoms`, in a
/// four-dimensional symplectization: `(#bottoms − 1) + top − Σ bottoms`.
pub fn building_index(top: i64, bottoms: &[i64]) -> Result<i64> {
    if bottoms.is_empty() {
        return Err(Error::InvalidInput(
            "a building needs a negative end".into(),
        ));
    }
    Ok(bottoms.len() as i64 - 1 + top - bottoms.iter().sum::<i64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_indices() {
        assert_eq!(building_index(5, &[4]).unwrap(), 1);
        for mu in -3..7 {
            assert_eq!(building_index(mu, &[mu]).unwrap(), 0);
        }
    }

    #[test]
    fn pair_of_pants() {
        assert_eq!(building_index(9, &[3, 3]).unwrap(), 4);
        assert!(building_index(1, &[]).is_err());
    }
}
