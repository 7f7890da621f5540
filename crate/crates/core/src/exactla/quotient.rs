use super::{Field, LinAlgError, Matrix, Scalar};

/// A quotient `k^n / span(relations)` with a chosen projection and section.
///
/// The quotient basis is the set of non-pivot ambient coordinates of the
/// reduced relation matrix, so the construction is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    pub dim: usize,
    /// `dim × ambient_dim`
    pub projection: Matrix,
    /// `ambient_dim × dim`
    pub section: Matrix,
}

impl QuotientSpace {
    pub fn trivial(field: Field, n: usize) -> Self {
        QuotientSpace {
            ambient_dim: n,
            dim: n,
            projection: Matrix::identity(field, n),
            section: Matrix::identity(field, n),
        }
    }

    pub fn field(&self) -> Field {
        self.projection.field()
    }
}

/// Quotient of `k^ambient_dim` by the row space of `relations`.
pub fn quotient_by(
    field: Field,
    ambient_dim: usize,
    relations: &Matrix,
) -> Result<QuotientSpace, LinAlgError> {
    if relations.cols() != ambient_dim {
        return Err(LinAlgError::Shape(format!(
            "relations have {} columns, ambient dimension is {ambient_dim}",
            relations.cols()
        )));
    }
    let (reduced, pivots) = relations.rref();
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let mut slot = vec![usize::MAX; ambient_dim];
    for (k, &f) in free.iter().enumerate() {
        slot[f] = k;
    }
    let dim = free.len();
    let mut projection = Matrix::zeros(field, dim, ambient_dim);
    let mut section = Matrix::zeros(field, ambient_dim, dim);
    for (k, &f) in free.iter().enumerate() {
        projection.set(k, f, field.one());
        section.set(f, k, field.one());
    }
    // e_p + Σ_free R[row, f] e_f ≡ 0, so e_p ≡ −Σ R[row, f] e_f.
    for (row, &p) in pivots.iter().enumerate() {
        for &f in &free {
            let v = reduced.get(row, f);
            if !v.is_zero() {
                projection.set(slot[f], p, -v);
            }
        }
    }
    Ok(QuotientSpace {
        ambient_dim,
        dim,
        projection,
        section,
    })
}

/// The map `f` with `f · src.projection = dst.projection · ambient_map`, if it exists.
pub fn induced_on_quotient(
    src: &QuotientSpace,
    dst: &QuotientSpace,
    ambient_map: &Matrix,
) -> Result<Matrix, LinAlgError> {
    if ambient_map.shape() != (dst.ambient_dim, src.ambient_dim) {
        return Err(LinAlgError::Shape(format!(
            "ambient map is {:?}, expected {:?}",
            ambient_map.shape(),
            (dst.ambient_dim, src.ambient_dim)
        )));
    }
    let pushed = dst.projection.mul(ambient_map);
    let induced = pushed.mul(&src.section);
    if induced.mul(&src.projection) != pushed {
        return Err(LinAlgError::NotWellDefined);
    }
    Ok(induced)
}

/// Coordinates with respect to a fixed linearly independent family of vectors.
#[derive(Clone, Debug)]
pub struct SpanCoords {
    basis: Matrix,
    rows: Vec<usize>,
    solve: Matrix,
}

impl SpanCoords {
    /// `basis` holds the family as columns; they must be linearly independent.
    pub fn new(basis: Matrix) -> Result<Self, LinAlgError> {
        let (_, rows) = basis.transpose().rref();
        if rows.len() != basis.cols() {
            return Err(LinAlgError::Dependent);
        }
        let solve = basis
            .select_rows(&rows)
            .inverse()
            .ok_or(LinAlgError::Dependent)?;
        Ok(SpanCoords { basis, rows, solve })
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.basis.rows(), "vector length mismatch");
        let picked: Vec<Scalar> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.solve.apply(&picked);
        if self.basis.apply(&c) == v {
            Some(c)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn no_relations_is_identity() {
        let qs = quotient_by(q(), 3, &Matrix::zeros(q(), 0, 3)).unwrap();
        assert_eq!(qs.dim, 3);
        assert!(qs.projection.is_identity());
        assert!(qs.section.is_identity());
    }

    #[test]
    fn one_relation_identifies_basis_vectors() {
        let rel = Matrix::from_i64_rows(q(), &[vec![1, -1]]);
        let qs = quotient_by(q(), 2, &rel).unwrap();
        assert_eq!(qs.dim, 1);
        assert_eq!(qs.projection.col(0), qs.projection.col(1));
        assert!(qs.projection.mul(&rel.transpose()).is_zero());
        assert!(qs.projection.mul(&qs.section).is_identity());
    }

    #[test]
    fn full_rank_collapses() {
        let rel = Matrix::from_i64_rows(q(), &[vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(quotient_by(q(), 3, &rel).unwrap().dim, 0);
    }

    #[test]
    fn relation_width_is_checked() {
        let rel = Matrix::from_i64_rows(q(), &[vec![1, -1]]);
        assert!(matches!(
            quotient_by(q(), 3, &rel),
            Err(LinAlgError::Shape(_))
        ));
    }

    #[test]
    fn induced_maps() {
        let rel = Matrix::from_i64_rows(q(), &[vec![1, -1]]);
        let qs = quotient_by(q(), 2, &rel).unwrap();
        let id = induced_on_quotient(&qs, &qs, &Matrix::identity(q(), 2)).unwrap();
        assert!(id.is_identity());
        let swap = Matrix::from_i64_rows(q(), &[vec![0, 1], vec![1, 0]]);
        assert!(induced_on_quotient(&qs, &qs, &swap).unwrap().is_identity());
        let diag = Matrix::from_i64_rows(q(), &[vec![1, 0], vec![0, 2]]);
        assert_eq!(
            induced_on_quotient(&qs, &qs, &diag),
            Err(LinAlgError::NotWellDefined)
        );
    }

    #[test]
    fn span_coords() {
        let b = Matrix::from_i64_rows(q(), &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let sc = SpanCoords::new(b).unwrap();
        let v = vec![q().from_i64(2), q().from_i64(5), q().from_i64(3)];
        assert_eq!(sc.coords(&v), Some(vec![q().from_i64(2), q().from_i64(3)]));
        let w = vec![q().from_i64(1), q().from_i64(0), q().from_i64(0)];
        assert_eq!(sc.coords(&w), None);
        let dep = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![1, 2]]);
        assert!(SpanCoords::new(dep).is_err());
    }
}
