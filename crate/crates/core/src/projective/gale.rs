use num_traits::Zero;

use crate::error::{Error, Result};

use super::point::{Configuration, ProjectivePoint};

/// Association (Gale transform): n points of P^d become the n rows of a
/// kernel basis of their coordinate matrix, i.e. n points of P^{n-d-2}.
pub fn gale_transform(p: &Configuration) -> Result<Configuration> {
    let d = p.ambient_dim();
    let n = p.len();
    if n < d + 3 {
        return Err(Error::InvalidInput(format!("association needs at least {} points of P^{d}", d + 3)));
    }
    let m = p.coordinate_matrix();
    if m.rank() != d + 1 {
        return Err(Error::DegenerateInput("coordinate matrix is rank deficient".into()));
    }
    let kernel = m.kernel();
    debug_assert_eq!(kernel.len(), n - d - 1);
    let rows = (0..n)
        .map(|i| {
            let row: Vec<_> = kernel.iter().map(|v| v[i].clone()).collect();
            if row.iter().all(Zero::is_zero) {
                return Err(Error::DegenerateInput(format!("point {} has a zero associated row", i + 1)));
            }
            ProjectivePoint::from_scalars(&row)
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(rows)
}
