//! Set projectors: boxes, balls, finite point sets, coordinate-fixing affine sets,
//! the standard basis of R^9, and affine subspaces.

use std::collections::BTreeMap;

use crate::error::{check_dim, check_finite, check_positive, Result, SplitError};
use crate::vector::{distance, dot, Vector};

/// Relative slack used when deciding that two squared distances tie.
const TIE_TOL: f64 = 1e-12;

/// A (possibly nonconvex) proximinal set with a computable projector.
///
/// `project_into` writes the canonical nearest point. For sets where the projection
/// can be multi-valued, `project_all` returns every nearest point in stored order and
/// the canonical selection is its first element.
pub trait Projector: Send + Sync {
    fn dim(&self) -> usize;

    fn project_into(&self, x: &[f64], out: &mut [f64]);

    fn project_all(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.project_into(x, &mut out);
        vec![out]
    }

    /// Checked, allocating projection.
    fn project(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.dim())?;
        let mut out = vec![0.0; x.dim()];
        self.project_into(x, &mut out);
        Ok(Vector::from_raw(out))
    }

    /// Checked multi-valued projection.
    fn project_set(&self, x: &Vector) -> Result<Vec<Vector>> {
        check_dim(self.dim(), x.dim())?;
        Ok(self
            .project_all(x)
            .into_iter()
            .map(Vector::from_raw)
            .collect())
    }

    fn distance_to(&self, x: &[f64]) -> f64 {
        let mut p = vec![0.0; self.dim()];
        self.project_into(x, &mut p);
        distance(x, &p)
    }
}

/// Axis-aligned box `{x : lower <= x <= upper}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSet {
    lower: Vector,
    upper: Vector,
}

impl BoxSet {
    pub fn new(lower: Vector, upper: Vector) -> Result<Self> {
        check_dim(lower.dim(), upper.dim())?;
        if let Some(i) = lower.iter().zip(upper.iter()).position(|(l, u)| l > u) {
            return Err(SplitError::InvalidParameter {
                name: "box bounds",
                reason: format!("lower[{i}] > upper[{i}]"),
            });
        }
        Ok(BoxSet { lower, upper })
    }

    /// Hypercube `{x : |x_j - c_j| <= half_side}`.
    pub fn cube(center: &Vector, half_side: f64) -> Result<Self> {
        if !(half_side >= 0.0 && half_side.is_finite()) {
            return Err(SplitError::InvalidParameter {
                name: "half_side",
                reason: format!("must be nonnegative, got {half_side}"),
            });
        }
        let lower = center.iter().map(|c| c - half_side).collect();
        let upper = center.iter().map(|c| c + half_side).collect();
        BoxSet::new(Vector::new(lower)?, Vector::new(upper)?)
    }

    /// One-dimensional interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        BoxSet::new(Vector::new(vec![lo])?, Vector::new(vec![hi])?)
    }

    pub fn lower(&self) -> &Vector {
        &self.lower
    }

    pub fn upper(&self) -> &Vector {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(self.upper.iter()))
            .all(|(v, (l, u))| l <= v && v <= u)
    }
}

impl Projector for BoxSet {
    fn dim(&self) -> usize {
        self.lower.dim()
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) {
        for (((o, v), l), u) in out
            .iter_mut()
            .zip(x)
            .zip(self.lower.iter())
            .zip(self.upper.iter())
        {
            *o = v.clamp(*l, *u);
        }
    }
}

/// Closed ball `{x : ||x - center|| <= radius}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSet {
    center: Vector,
    radius: f64,
}

impl BallSet {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(SplitError::InvalidParameter {
                name: "radius",
                reason: format!("must be nonnegative, got {radius}"),
            });
        }
        Ok(BallSet { center, radius })
    }

    pub fn centered(dim: usize, radius: f64) -> Result<Self> {
        BallSet::new(Vector::zeros(dim), radius)
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        distance(x, &self.center) <= self.radius + tol
    }
}

impl Projector for BallSet {
    fn dim(&self) -> usize {
        self.center.dim()
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) {
        let d = distance(x, &self.center);
        if d <= self.radius {
            out.copy_from_slice(x);
        } else {
            let s = self.radius / d;
            for ((o, v), c) in out.iter_mut().zip(x).zip(self.center.iter()) {
                *o = c + s * (v - c);
            }
        }
    }
}

/// Finite, generally nonconvex, set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointSet {
    points: Vec<Vector>,
}

impl FinitePointSet {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let dim = points
            .first()
            .ok_or(SplitError::Empty("finite point set"))?
            .dim();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        Ok(FinitePointSet { points })
    }

    /// Set of scalars, as points of R.
    pub fn scalars(values: &[f64]) -> Result<Self> {
        FinitePointSet::new(
            values
                .iter()
                .map(|v| Vector::new(vec![*v]))
                .collect::<Result<_>>()?,
        )
    }

    /// Cartesian product of finite sets, enumerated with the last factor varying fastest.
    pub fn product(factors: &[&FinitePointSet]) -> Result<Self> {
        if factors.is_empty() {
            return Err(SplitError::Empty("product factors"));
        }
        let mut acc: Vec<Vec<f64>> = vec![Vec::new()];
        for f in factors {
            acc = acc
                .iter()
                .flat_map(|prefix| {
                    f.points.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(p);
                        v
                    })
                })
                .collect();
        }
        FinitePointSet::new(acc.into_iter().map(Vector::from_raw).collect())
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    fn nearest_indices(&self, x: &[f64]) -> Vec<usize> {
        let d2: Vec<f64> = self
            .points
            .iter()
            .map(|p| {
                let d = distance(p, x);
                d * d
            })
            .collect();
        let best = d2.iter().cloned().fold(f64::INFINITY, f64::min);
        let slack = TIE_TOL * (1.0 + best);
        (0..d2.len()).filter(|&i| d2[i] <= best + slack).collect()
    }
}

impl Projector for FinitePointSet {
    fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) {
        let i = self.nearest_indices(x)[0];
        out.copy_from_slice(&self.points[i]);
    }

    fn project_all(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.nearest_indices(x)
            .into_iter()
            .map(|i| self.points[i].to_vec())
            .collect()
    }
}

/// Affine set of tensors whose entries at a fixed index list are prescribed.
///
/// Entries are stored flat in row-major order of `shape`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFixSet {
    shape: Vec<usize>,
    fixed: BTreeMap<usize, f64>,
}

impl AffineFixSet {
    pub fn new(shape: Vec<usize>, prescribed: &[(Vec<usize>, f64)]) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(SplitError::Empty("tensor shape"));
        }
        let mut fixed = BTreeMap::new();
        for (index, value) in prescribed {
            check_finite(std::slice::from_ref(value))?;
            fixed.insert(flat_index(&shape, index)?, *value);
        }
        Ok(AffineFixSet { shape, fixed })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Prescribed `(flat index, value)` pairs in increasing index order.
    pub fn fixed(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.fixed.iter().map(|(i, v)| (*i, *v))
    }
}

impl Projector for AffineFixSet {
    fn dim(&self) -> usize {
        self.shape.iter().product()
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(x);
        for (&i, &v) in &self.fixed {
            out[i] = v;
        }
    }
}

/// Row-major flat index of a tensor index.
pub fn flat_index(shape: &[usize], index: &[usize]) -> Result<usize> {
    if index.len() != shape.len() || index.iter().zip(shape).any(|(i, n)| i >= n) {
        return Err(SplitError::IndexOutOfRange {
            index: index.to_vec(),
            shape: shape.to_vec(),
        });
    }
    Ok(index.iter().zip(shape).fold(0, |acc, (i, n)| acc * n + i))
}

/// Position of the largest value; ties go to the lowest position.
pub(crate) fn argmax_first<I: IntoIterator<Item = f64>>(values: I) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, v) in values.into_iter().enumerate() {
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    best
}

/// Projection onto the standard basis `{e_1, ..., e_9}` of R^9.
///
/// Since `||v - e_k||^2 = ||v||^2 - 2 v_k + 1`, the nearest basis vector sits at the
/// largest entry.
pub fn project_basis_set(v: &Vector) -> Result<Vector> {
    check_dim(9, v.dim())?;
    let k = argmax_first(v.iter().copied());
    let mut out = vec![0.0; 9];
    out[k] = 1.0;
    Ok(Vector::from_raw(out))
}

/// `prox_{gamma d_C}(x)` for a closed convex set `C`.
pub fn prox_distance<P: Projector + ?Sized>(set: &P, gamma: f64, x: &Vector) -> Result<Vector> {
    check_positive("gamma", gamma)?;
    check_dim(set.dim(), x.dim())?;
    let mut out = vec![0.0; x.dim()];
    prox_distance_into(set, gamma, x, &mut out);
    Ok(Vector::from_raw(out))
}

pub(crate) fn prox_distance_into<P: Projector + ?Sized>(
    set: &P,
    gamma: f64,
    x: &[f64],
    out: &mut [f64],
) {
    set.project_into(x, out);
    let d = distance(x, out);
    if d > gamma {
        let t = gamma / d;
        for (o, v) in out.iter_mut().zip(x) {
            *o = v + t * (*o - v);
        }
    }
}

/// Closed affine subspace `offset + span(basis)` with an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    offset: Vec<f64>,
    basis: Vec<Vec<f64>>,
}

impl AffineSubspace {
    /// Orthonormalizes `spanning` (modified Gram-Schmidt); dependent vectors are dropped.
    pub fn new(offset: Vector, spanning: &[Vector]) -> Result<Self> {
        let dim = offset.dim();
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for s in spanning {
            check_dim(dim, s.dim())?;
            let mut v = s.to_vec();
            for q in &basis {
                let c = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
            let n = dot(&v, &v).sqrt();
            if n > 1e-12 * (1.0 + s.norm()) {
                v.iter_mut().for_each(|vi| *vi /= n);
                basis.push(v);
            }
        }
        Ok(AffineSubspace {
            offset: offset.into_vec(),
            basis,
        })
    }

    pub fn whole(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut e = vec![0.0; dim];
                e[i] = 1.0;
                e
            })
            .collect();
        AffineSubspace {
            offset: vec![0.0; dim],
            basis,
        }
    }

    /// The diagonal `{(x, ..., x)}` of `(R^block_dim)^blocks`, flattened block by block.
    pub fn diagonal(blocks: usize, block_dim: usize) -> Self {
        let n = blocks * block_dim;
        let w = 1.0 / (blocks as f64).sqrt();
        let basis = (0..block_dim)
            .map(|j| {
                let mut e = vec![0.0; n];
                for b in 0..blocks {
                    e[b * block_dim + j] = w;
                }
                e
            })
            .collect();
        AffineSubspace {
            offset: vec![0.0; n],
            basis,
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let mut p = vec![0.0; x.len()];
        self.project_into(x, &mut p);
        distance(x, &p) <= tol
    }
}

impl Projector for AffineSubspace {
    fn dim(&self) -> usize {
        self.offset.len()
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) {
        let shifted: Vec<f64> = x.iter().zip(&self.offset).map(|(v, o)| v - o).collect();
        out.copy_from_slice(&self.offset);
        for q in &self.basis {
            let c = dot(q, &shifted);
            for (o, qi) in out.iter_mut().zip(q) {
                *o += c * qi;
            }
        }
    }
}

/// Outcome of comparing `P_{C∩D}(x)` against `P_C(P_D(x)) ∩ D`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionCheck {
    /// `P_{C∩D}(x)` by brute force over the members of `C` lying in `D`.
    pub intersection: Vec<Vector>,
    /// `P_C(P_D(x)) ∩ D`.
    pub composed: Vec<Vector>,
    /// Whether `P_C(P_D(x))` meets `D`; only then are the two sets expected to agree.
    pub hypothesis_holds: bool,
}

impl CompositionCheck {
    pub fn sets_agree(&self, tol: f64) -> bool {
        same_point_set(&self.intersection, &self.composed, tol)
    }
}

/// Evaluates both sides of the projector-composition identity for a finite set `C`
/// and an affine subspace `D`.
pub fn projection_composition_check(
    set: &FinitePointSet,
    subspace: &AffineSubspace,
    x: &Vector,
) -> Result<CompositionCheck> {
    check_dim(set.dim(), x.dim())?;
    check_dim(subspace.dim(), x.dim())?;
    const MEMBER_TOL: f64 = 1e-12;

    let members: Vec<Vector> = set
        .points()
        .iter()
        .filter(|p| subspace.contains(p, MEMBER_TOL))
        .cloned()
        .collect();
    let intersection = if members.is_empty() {
        Vec::new()
    } else {
        FinitePointSet::new(members)?.project_set(x)?
    };

    let d = subspace.project(x)?;
    let composed: Vec<Vector> = set
        .project_set(&d)?
        .into_iter()
        .filter(|p| subspace.contains(p, MEMBER_TOL))
        .collect();
    let hypothesis_holds = !composed.is_empty();
    Ok(CompositionCheck {
        intersection,
        composed,
        hypothesis_holds,
    })
}

/// Order-insensitive equality of two point lists up to `tol` per point.
pub fn same_point_set(a: &[Vector], b: &[Vector], tol: f64) -> bool {
    let covered = |xs: &[Vector], ys: &[Vector]| {
        xs.iter().all(|x| {
            ys.iter()
                .any(|y| x.dim() == y.dim() && x.distance(y) <= tol)
        })
    };
    covered(a, b) && covered(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::new(xs.to_vec()).unwrap()
    }

    /// Brute-force nearest point over a regular grid of the box.
    fn grid_nearest(b: &BoxSet, x: &[f64], steps: usize) -> Vec<f64> {
        let (l, u) = (b.lower(), b.upper());
        let mut best = (f64::INFINITY, vec![]);
        for i in 0..=steps {
            for j in 0..=steps {
                let c = vec![
                    l[0] + (u[0] - l[0]) * i as f64 / steps as f64,
                    l[1] + (u[1] - l[1]) * j as f64 / steps as f64,
                ];
                let d = distance(&c, x);
                if d < best.0 {
                    best = (d, c);
                }
            }
        }
        best.1
    }

    #[test]
    fn box_projection_examples() {
        let b = BoxSet::new(v(&[0.0, 0.0]), v(&[1.0, 1.0])).unwrap();
        assert_eq!(b.project(&v(&[0.5, 0.5])).unwrap(), v(&[0.5, 0.5]));
        let p = b.project(&v(&[2.0, -1.0])).unwrap();
        assert_eq!(p, v(&[1.0, 0.0]));
        let g = grid_nearest(&b, &[2.0, -1.0], 100);
        assert!(distance(&g, &p) < 1e-12);

        let single = BoxSet::new(v(&[0.0]), v(&[0.0])).unwrap();
        assert_eq!(single.project(&v(&[5.0])).unwrap(), v(&[0.0]));
    }

    #[test]
    fn box_rejects_bad_input() {
        assert!(BoxSet::new(v(&[1.0]), v(&[0.0])).is_err());
        let b = BoxSet::interval(0.0, 1.0).unwrap();
        assert!(matches!(
            b.project(&v(&[1.0, 2.0])),
            Err(SplitError::DimensionMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn ball_projection_examples() {
        let b = BallSet::centered(2, 10.0).unwrap();
        assert_eq!(b.project(&v(&[3.0, 4.0])).unwrap(), v(&[3.0, 4.0]));
        let p = b.project(&v(&[30.0, 40.0])).unwrap();
        // line search along the ray t*(30,40)/50 for the closest admissible point
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..=100_000 {
            let t = 10.0 * i as f64 / 100_000.0;
            let d = distance(&[0.6 * t, 0.8 * t], &[30.0, 40.0]);
            if d < best.0 {
                best = (d, t);
            }
        }
        assert!((best.1 - 10.0).abs() < 1e-9);
        assert!(distance(&p, &[6.0, 8.0]) < 1e-12);

        let degenerate = BallSet::centered(1, 0.0).unwrap();
        assert_eq!(degenerate.project(&v(&[1.0])).unwrap(), v(&[0.0]));
        assert!(BallSet::centered(1, -1.0).is_err());
    }

    #[test]
    fn finite_set_projection_examples() {
        let s = FinitePointSet::scalars(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(
            s.project_set(&v(&[1.5])).unwrap(),
            vec![v(&[1.0]), v(&[2.0])]
        );
        assert_eq!(s.project(&v(&[1.5])).unwrap(), v(&[1.0]));
        assert_eq!(s.project_set(&v(&[2.0])).unwrap(), vec![v(&[2.0])]);
        let brute = [1.0, 2.0, 3.0]
            .iter()
            .min_by(|a, b| (*a - 2.9f64).abs().total_cmp(&(*b - 2.9f64).abs()))
            .copied()
            .unwrap();
        assert_eq!(s.project_set(&v(&[2.9])).unwrap(), vec![v(&[brute])]);
    }

    #[test]
    fn prox_distance_examples() {
        let c = BoxSet::interval(-1.0, 1.0).unwrap();
        assert_eq!(prox_distance(&c, 1.0, &v(&[0.5])).unwrap(), v(&[0.5]));
        assert_eq!(prox_distance(&c, 1.0, &v(&[3.0])).unwrap(), v(&[2.0]));
        assert_eq!(prox_distance(&c, 1.0, &v(&[1.5])).unwrap(), v(&[1.0]));
        // d_C(x) = gamma exactly: both branches give P_C(x)
        assert_eq!(prox_distance(&c, 1.0, &v(&[2.0])).unwrap(), v(&[1.0]));
        assert!(prox_distance(&c, 0.0, &v(&[2.0])).is_err());
        assert!(prox_distance(&c, -1.0, &v(&[2.0])).is_err());
    }

    #[test]
    fn affine_fix_examples() {
        let empty = AffineFixSet::new(vec![9, 9, 9], &[]).unwrap();
        let x: Vec<f64> = (0..729).map(|i| i as f64 * 0.01).collect();
        let x = Vector::new(x).unwrap();
        assert_eq!(empty.project(&x).unwrap(), x);

        let one = AffineFixSet::new(vec![9, 9, 9], &[(vec![0, 0, 4], 1.0)]).unwrap();
        let p = one.project(&Vector::zeros(729)).unwrap();
        assert_eq!(p[4], 1.0);
        assert_eq!(p.iter().sum::<f64>(), 1.0);

        let all: Vec<(Vec<usize>, f64)> = (0..2)
            .flat_map(|i| (0..3).map(move |j| (vec![i, j], (i * 3 + j) as f64)))
            .collect();
        let full = AffineFixSet::new(vec![2, 3], &all).unwrap();
        let p = full.project(&v(&[9.0; 6])).unwrap();
        assert_eq!(p, v(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]));

        assert!(matches!(
            AffineFixSet::new(vec![9, 9, 9], &[(vec![0, 9, 0], 1.0)]),
            Err(SplitError::IndexOutOfRange { .. })
        ));
        assert!(AffineFixSet::new(vec![2], &[(vec![0], f64::NAN)]).is_err());
    }

    #[test]
    fn basis_set_examples() {
        let e = |k: usize| {
            let mut x = vec![0.0; 9];
            x[k] = 1.0;
            v(&x)
        };
        assert_eq!(project_basis_set(&e(2)).unwrap(), e(2));

        let brute = |x: &Vector| {
            (0..9)
                .map(|k| e(k).distance(x))
                .enumerate()
                .fold(
                    (0, f64::INFINITY),
                    |b, (k, d)| if d < b.1 { (k, d) } else { b },
                )
                .0
        };
        let mut a = vec![0.0; 9];
        a[0] = 0.1;
        a[1] = 0.9;
        let a = v(&a);
        assert_eq!(project_basis_set(&a).unwrap(), e(brute(&a)));
        assert_eq!(brute(&a), 1);

        let mut t = vec![0.0; 9];
        t[0] = 0.5;
        t[1] = 0.5;
        let t = v(&t);
        assert_eq!(e(0).distance(&t), e(1).distance(&t));
        assert_eq!(project_basis_set(&t).unwrap(), e(0));

        assert!(project_basis_set(&v(&[1.0; 8])).is_err());
    }

    #[test]
    fn composition_check_examples() {
        let c3 = FinitePointSet::scalars(&[1.0, 2.0, 3.0]).unwrap();
        let c = FinitePointSet::product(&[&c3, &c3]).unwrap();
        let diag = AffineSubspace::diagonal(2, 1);
        let chk = projection_composition_check(&c, &diag, &v(&[2.0, 1.0])).unwrap();
        assert!(chk.hypothesis_holds);
        let expected = [v(&[1.0, 1.0]), v(&[2.0, 2.0])];
        assert!(same_point_set(&chk.intersection, &expected, 0.0));
        assert!(chk.sets_agree(0.0));

        let whole = AffineSubspace::whole(2);
        let chk = projection_composition_check(&c, &whole, &v(&[2.2, 0.4])).unwrap();
        assert!(chk.sets_agree(0.0));
        assert!(same_point_set(&chk.composed, &[v(&[2.0, 1.0])], 0.0));

        let two = FinitePointSet::new(vec![v(&[0.0, 0.0]), v(&[4.0, 4.0])]).unwrap();
        let chk = projection_composition_check(&two, &diag, &v(&[1.0, 3.0])).unwrap();
        assert!(chk.hypothesis_holds);
        assert!(chk.sets_agree(0.0));
        assert_eq!(chk.intersection.len(), 2);
    }

    #[test]
    fn composition_check_flags_violated_hypothesis() {
        // P_C(P_D(x)) = (0, 1) is off the diagonal
        let c = FinitePointSet::new(vec![v(&[0.0, 1.0]), v(&[5.0, 5.0])]).unwrap();
        let diag = AffineSubspace::diagonal(2, 1);
        let chk = projection_composition_check(&c, &diag, &v(&[0.5, 0.5])).unwrap();
        assert!(!chk.hypothesis_holds);
        assert!(chk.composed.is_empty());
        assert_eq!(chk.intersection, vec![v(&[5.0, 5.0])]);
    }
}
