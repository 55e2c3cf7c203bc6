//! Small vector helpers shared by the geometric modules. Ambient points
//! and tangent vectors are plain `Vec<f64>`; nalgebra is reserved for the
//! dense eigen/solve work.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn add_scaled(target: &mut [f64], source: &[f64], s: f64) {
    for (t, &v) in target.iter_mut().zip(source) {
        *t += v * s;
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Modified Gram-Schmidt; returns `None` if the input is numerically
/// rank-deficient.
pub(crate) fn orthonormalize(frame: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(frame.len());
    for v in frame {
        let mut w = v.clone();
        for prev in &out {
            let proj = dot(&w, prev);
            add_scaled(&mut w, prev, -proj);
        }
        let len = norm(&w);
        if len < 1e-12 {
            return None;
        }
        out.push(scale(&w, 1.0 / len));
    }
    Some(out)
}

/// Gram determinant of a set of vectors (det of the matrix of pairwise
/// inner products).
pub(crate) fn gram_determinant(frame: &[Vec<f64>]) -> f64 {
    let m = frame.len();
    let gram = nalgebra::DMatrix::from_fn(m, m, |i, j| dot(&frame[i], &frame[j]));
    gram.determinant()
}
