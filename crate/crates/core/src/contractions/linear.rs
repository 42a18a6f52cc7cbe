use super::FixedPointMap;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, DenseMatrix, LowRankFactor};
use crate::rng;

/// `Φ(X) = X_* + unvec(Q · vec(X − X_*))` with a dense operator `Q` on
/// column-major vectorised n×m matrices.
#[derive(Debug, Clone)]
pub struct LinearContraction {
    xstar_factor: LowRankFactor,
    xstar: DenseMatrix,
    operator: DenseMatrix,
    delta: f64,
}

impl LinearContraction {
    /// `delta` must bound `‖Q‖₂` and lie in `[0, 1)`; the bound itself is
    /// the caller's responsibility (see [`LinearContraction::operator_norm`]).
    pub fn new(xstar_factor: LowRankFactor, operator: DenseMatrix, delta: f64) -> Result<Self> {
        let (n, m) = xstar_factor.shape();
        if operator.shape() != (n * m, n * m) {
            return Err(Error::shape(
                "LinearContraction",
                format!("{0}x{0} operator", n * m),
                format!("{:?}", operator.shape()),
            ));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::InvalidParameter(format!("delta {delta} not in [0, 1)")));
        }
        Ok(Self {
            xstar: xstar_factor.assemble(),
            xstar_factor,
            operator,
            delta,
        })
    }

    /// `Q = c·I`.
    pub fn scalar(xstar_factor: LowRankFactor, c: f64) -> Result<Self> {
        let (n, m) = xstar_factor.shape();
        let op = DenseMatrix::identity(n * m).scale(c);
        Self::new(xstar_factor, op, c.abs())
    }

    pub fn operator(&self) -> &DenseMatrix {
        &self.operator
    }

    /// Exact `‖Q‖₂` via SVD; practical for `n·m` up to a few hundred.
    pub fn operator_norm(&self) -> f64 {
        singular_values(&self.operator)[0]
    }
}

impl FixedPointMap for LinearContraction {
    fn apply(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        if y.shape() != self.xstar.shape() {
            return Err(Error::shape(
                "linear_apply",
                format!("{:?}", self.xstar.shape()),
                format!("{:?}", y.shape()),
            ));
        }
        let diff = (y - &self.xstar).vectorize();
        let mapped = self.operator.mul_vec(&diff)?;
        let (n, m) = y.shape();
        Ok(&self.xstar + &DenseMatrix::unvectorize(n, m, &mapped)?)
    }

    fn fixed_point(&self) -> &DenseMatrix {
        &self.xstar
    }

    fn fixed_point_factor(&self) -> &LowRankFactor {
        &self.xstar_factor
    }

    fn delta(&self) -> f64 {
        self.delta
    }

    fn is_linear(&self) -> bool {
        true
    }
}

/// How the random operator `Q` is drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind {
    /// `Q = δ·O Λ Oᵀ` with `O` a product of `reflectors` random Householder
    /// reflections and `Λ` uniform on `[spectrum_floor, 1]` with one entry
    /// equal to 1, so `‖Q‖₂ = δ` exactly and every direction contracts by at
    /// least `δ·spectrum_floor`.
    NearIsometry { spectrum_floor: f64, reflectors: usize },
    /// I.i.d. standard normal entries rescaled by `δ / ‖G‖₂`. The norm is
    /// computed by a dense SVD, so keep `n·m` small.
    Gaussian,
}

impl Default for OperatorKind {
    fn default() -> Self {
        OperatorKind::NearIsometry {
            spectrum_floor: 0.96,
            reflectors: 32,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearContractionSpec {
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    /// Singular values of `X_*`, positive and descending; their count is the rank.
    pub singular_values: Vec<f64>,
    pub seed: u64,
    pub operator: OperatorKind,
}

impl LinearContractionSpec {
    /// `n×m` problem with `X_*` singular values geometric from `first` down to `last`.
    pub fn geometric(n: usize, m: usize, r: usize, first: f64, last: f64, delta: f64, seed: u64) -> Self {
        Self {
            n,
            m,
            delta,
            singular_values: geometric_values(first, last, r),
            seed,
            operator: OperatorKind::default(),
        }
    }
}

/// `r` values geometrically spaced from `first` to `last` inclusive.
pub fn geometric_values(first: f64, last: f64, r: usize) -> Vec<f64> {
    if r == 1 {
        return vec![first];
    }
    let ratio = (last / first).powf(1.0 / (r - 1) as f64);
    (0..r).map(|k| first * ratio.powi(k as i32)).collect()
}

/// `σ_k = 10^{4−2k}`, `k = 1..=r`.
pub fn staircase_values(r: usize) -> Vec<f64> {
    (1..=r).map(|k| 10f64.powi(4 - 2 * k as i32)).collect()
}

pub fn make_random_linear_contraction(spec: &LinearContractionSpec) -> Result<LinearContraction> {
    let LinearContractionSpec { n, m, delta, .. } = *spec;
    let sv = &spec.singular_values;
    let r = sv.len();
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
    }
    if r == 0 || r > n.min(m) {
        return Err(Error::InvalidRank { rank: r, max: n.min(m) });
    }
    if sv.iter().any(|s| !(s.is_finite() && *s > 0.0)) || sv.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidParameter(format!(
            "singular values must be positive and descending, got {sv:?}"
        )));
    }

    let mut rng = rng::stream(spec.seed, rng::MAP_STREAM);
    let ustar = rng::random_orthonormal(&mut rng, n, r);
    let vstar = rng::random_orthonormal(&mut rng, m, r);
    let xstar = LowRankFactor::new(ustar, DenseMatrix::diag(sv), vstar)?;

    let size = n * m;
    let operator = match spec.operator {
        OperatorKind::NearIsometry {
            spectrum_floor,
            reflectors,
        } => {
            if !(0.0..=1.0).contains(&spectrum_floor) {
                return Err(Error::InvalidParameter(format!(
                    "spectrum floor {spectrum_floor} not in [0, 1]"
                )));
            }
            near_isometry(&mut rng, size, spectrum_floor, reflectors).scale(delta)
        }
        OperatorKind::Gaussian => {
            let g = rng::gaussian_matrix(&mut rng, size, size);
            let norm = singular_values(&g)[0];
            g.scale(delta / norm)
        }
    };
    LinearContraction::new(xstar, operator, delta)
}

fn near_isometry<R: rand::Rng + ?Sized>(rng: &mut R, size: usize, floor: f64, reflectors: usize) -> DenseMatrix {
    let mut lambda: Vec<f64> = (0..size).map(|_| floor + (1.0 - floor) * rng.random::<f64>()).collect();
    lambda[0] = 1.0;
    let mut op = DenseMatrix::diag(&lambda);
    for _ in 0..reflectors {
        let mut w = rng::gaussian_vec(rng, size);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        reflect_both_sides(&mut op, &w);
    }
    op
}

/// `M ← (I − 2wwᵀ) M (I − 2wwᵀ)` for unit `w`.
fn reflect_both_sides(op: &mut DenseMatrix, w: &[f64]) {
    let size = w.len();
    // Left: M − 2 w (wᵀM)
    let mut wt_m = vec![0.0; size];
    for (i, &wi) in w.iter().enumerate() {
        for (acc, x) in wt_m.iter_mut().zip(op.row(i)) {
            *acc += wi * x;
        }
    }
    for i in 0..size {
        let c = 2.0 * w[i];
        for j in 0..size {
            op[(i, j)] -= c * wt_m[j];
        }
    }
    // Right: M − 2 (Mw) wᵀ
    let m_w: Vec<f64> = (0..size)
        .map(|i| op.row(i).iter().zip(w).map(|(a, b)| a * b).sum())
        .collect();
    for i in 0..size {
        let c = 2.0 * m_w[i];
        for j in 0..size {
            op[(i, j)] -= c * w[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(seed: u64) -> LinearContractionSpec {
        LinearContractionSpec::geometric(5, 4, 2, 3.0, 1.0, 0.7, seed)
    }

    #[test]
    fn fixed_point_is_fixed() {
        let map = make_random_linear_contraction(&small_spec(1)).unwrap();
        let x = map.fixed_point().clone();
        assert!((&map.apply(&x).unwrap() - &x).frobenius_norm() < 1e-14);
    }

    #[test]
    fn zero_operator_maps_everything_to_fixed_point() {
        let base = make_random_linear_contraction(&small_spec(2)).unwrap();
        let map = LinearContraction::scalar(base.fixed_point_factor().clone(), 0.0).unwrap();
        let y = DenseMatrix::from_fn(5, 4, |i, j| (i + j) as f64);
        assert!((&map.apply(&y).unwrap() - map.fixed_point()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn half_identity_halves_the_error() {
        let base = make_random_linear_contraction(&small_spec(3)).unwrap();
        let map = LinearContraction::scalar(base.fixed_point_factor().clone(), 0.5).unwrap();
        let y = DenseMatrix::from_fn(5, 4, |i, j| (i * j) as f64 - 1.0);
        let e0 = (&y - map.fixed_point()).frobenius_norm();
        let e1 = (&map.apply(&y).unwrap() - map.fixed_point()).frobenius_norm();
        assert!((e1 - 0.5 * e0).abs() < 1e-13 * e0);
    }

    #[test]
    fn operator_norm_equals_delta() {
        for kind in [OperatorKind::default(), OperatorKind::Gaussian] {
            let spec = LinearContractionSpec {
                operator: kind,
                ..small_spec(4)
            };
            let map = make_random_linear_contraction(&spec).unwrap();
            assert!((map.operator_norm() - 0.7).abs() < 1e-12, "{kind:?}");
        }
    }

    #[test]
    fn same_seed_same_map() {
        let a = make_random_linear_contraction(&small_spec(9)).unwrap();
        let b = make_random_linear_contraction(&small_spec(9)).unwrap();
        assert_eq!(a.operator().as_slice(), b.operator().as_slice());
        assert_eq!(a.fixed_point().as_slice(), b.fixed_point().as_slice());
    }

    #[test]
    fn presets_have_expected_condition_numbers() {
        let typical = geometric_values(10.0, 1.0, 7);
        assert!((typical[0] / typical[6] - 10.0).abs() < 1e-12);
        let stair = staircase_values(7);
        assert_eq!(stair[0], 100.0);
        assert!((stair[0] / stair[6] / 1e12 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = small_spec(1);
        spec.singular_values = vec![1.0, 2.0];
        assert!(make_random_linear_contraction(&spec).is_err());
        spec.singular_values = vec![1.0, -1.0];
        assert!(make_random_linear_contraction(&spec).is_err());
        let mut spec = small_spec(1);
        spec.delta = 1.0;
        assert!(make_random_linear_contraction(&spec).is_err());
        let mut spec = small_spec(1);
        spec.singular_values = vec![5.0, 4.0, 3.0, 2.0, 1.0];
        assert!(matches!(make_random_linear_contraction(&spec), Err(Error::InvalidRank { .. })));
    }
}
