use alloc::vec::Vec;

use super::{WeightFunction, WeightKind};
use crate::{Error, Result};

/// Least concave majorant of a piecewise-linear weight.
///
/// Upper hull (monotone chain) of the vertices together with the origin.
/// Beyond the last vertex both functions are constant, so the hull of the
/// vertex set is the majorant on all of `[0, ∞)`.
pub fn least_concave_majorant(phi: &WeightFunction) -> Result<WeightFunction> {
    let WeightKind::PiecewiseLinear { vertices } = phi.kind() else {
        return Err(Error::Unsupported("concave majorant of a non piecewise-linear weight"));
    };
    let mut points: Vec<[f64; 2]> = Vec::with_capacity(vertices.len() + 1);
    if vertices[0][0] > 0.0 {
        points.push([0.0, 0.0]);
    } else if vertices[0][1] != 0.0 {
        return Err(Error::NotVanishingAtZero);
    }
    points.extend_from_slice(vertices);

    for w in points.windows(2) {
        let ([t0, v0], [t1, v1]) = (w[0], w[1]);
        if v1 < v0 || (t0 > 0.0 && v1 * t0 > v0 * t1) {
            return Err(Error::NotQuasiconcave { at: t1 });
        }
    }

    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    WeightFunction::piecewise_linear(hull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn hull_example() {
        let phi = WeightFunction::piecewise_linear(vec![[0.0, 0.0], [1.0, 1.0], [2.0, 1.0], [4.0, 2.0]]).unwrap();
        let hull = least_concave_majorant(&phi).unwrap();
        assert_eq!(
            hull.kind(),
            &WeightKind::PiecewiseLinear {
                vertices: vec![[0.0, 0.0], [1.0, 1.0], [4.0, 2.0]]
            }
        );
        assert!((hull.eval(2.0) - 4.0 / 3.0).abs() < 1e-15);
        assert!(hull.is_concave());
        for t in [0.5, 1.0, 2.0, 3.0, 4.0, 9.0] {
            let (a, b) = (phi.eval(t), hull.eval(t));
            assert!(a <= b && 0.5 * b <= a);
        }
    }

    #[test]
    fn concave_input_is_fixed() {
        let phi = WeightFunction::piecewise_linear(vec![[1.0, 2.0], [3.0, 3.0]]).unwrap();
        let hull = least_concave_majorant(&phi).unwrap();
        for t in [0.5, 1.0, 2.0, 3.0, 10.0] {
            assert_eq!(hull.eval(t), phi.eval(t));
        }
    }

    #[test]
    fn rejects_other_kinds() {
        assert!(least_concave_majorant(&WeightFunction::max_one()).is_err());
        let lifted = WeightFunction::piecewise_linear(vec![[0.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(least_concave_majorant(&lifted), Err(Error::NotVanishingAtZero));
    }
}
