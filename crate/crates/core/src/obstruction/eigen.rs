use serde::Serialize;

use crate::error::{Error, Result};
use crate::finring::{scalar_field, RingMap, Shape};
use crate::partial::PartialMorphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenFailure {
    /// `r − f(r)·1` has a two-sided inverse.
    Invertible { r: usize, inverse: usize },
    /// `f(r)` is not among the diagonal entries of a triangular `r`.
    OffDiagonal { r: usize, value: usize },
}

/// For every `r`, checks that `r − f(r)·1` is not invertible, where `scalars`
/// maps the target field into the source. For triangular matrix sources
/// over the target field, `f(r)` must also be a diagonal entry of `r`.
pub fn eigenvalue_check(f: &PartialMorphism, scalars: &RingMap) -> Result<Option<EigenFailure>> {
    if let Some(v) = f.violation() {
        return Err(Error::NotPartialMorphism(format!("{v:?}")));
    }
    let (src, k) = (f.source(), f.target());
    if !k.is_field() {
        return Err(Error::NotAField(k.label().to_string()));
    }
    if **scalars.domain() != **k || **scalars.codomain() != **src {
        return Err(Error::Definition("scalar embedding does not go from the target into the source".into()));
    }
    if let Some((cond, w)) = scalars.hom_violation() {
        return Err(Error::NotRingHom(format!("scalar embedding: {cond} at {w:?}")));
    }
    let diagonal = match src.shape() {
        Shape::Triangular { base, n } if **base == **k => {
            let diag = scalar_field(src).filter(|d| d.table() == scalars.table());
            if diag.is_none() {
                return Err(Error::Definition("scalar embedding is not the diagonal one".into()));
            }
            Some(*n)
        }
        _ => None,
    };
    for r in src.elements() {
        let value = f.apply(r);
        let shifted = src.sub(r, scalars.apply(value));
        if let Some(inverse) = src.inverse(shifted) {
            return Ok(Some(EigenFailure::Invertible { r, inverse }));
        }
        if let Some(n) = diagonal {
            let entries = src.matrix_entries(r).expect("triangular element");
            if !(0..n).any(|i| entries[i * n + i] == value) {
                return Ok(Some(EigenFailure::OffDiagonal { r, value }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::commlattice::enumerate_commutative_subrings;
    use crate::exec::{Budget, ExecMode};
    use crate::finring::{make_gf, make_triangular_ring, make_zmod};
    use crate::primespec::enumerate_partial_morphisms;

    #[test]
    fn triangular_morphisms_pass() {
        let k = Arc::new(make_gf(2, 1).unwrap());
        let t = Arc::new(make_triangular_ring(&k, 2).unwrap());
        let lat = enumerate_commutative_subrings(&t, &Budget::unlimited(), ExecMode::default()).unwrap();
        let found = enumerate_partial_morphisms(&lat, &k, &Budget::unlimited(), ExecMode::default()).unwrap();
        assert!(found.morphisms.len() >= 2);
        let scalars = scalar_field(&t).unwrap();
        for f in &found.morphisms {
            assert_eq!(eigenvalue_check(f, &scalars).unwrap(), None);
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let k = Arc::new(make_zmod(2).unwrap());
        let r = Arc::new(make_gf(2, 2).unwrap());
        let bad = PartialMorphism::candidate(&r, &k, vec![0, 1, 1, 1]).unwrap();
        let scalars = scalar_field(&r).unwrap();
        assert!(matches!(eigenvalue_check(&bad, &scalars), Err(Error::NotPartialMorphism(_))));
    }
}
