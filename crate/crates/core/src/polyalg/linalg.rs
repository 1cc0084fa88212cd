use crate::numring::Field;

/// Row echelon reduction in place; returns the pivot columns.
fn echelon<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let v = m[row][c].mul(&f);
                    m[r][c] = m[r][c].sub(&v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of a matrix given by rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    echelon(&mut rows.to_vec(), ncols).len()
}

/// Some solution of `M x = b` (free variables set to zero), or `None` if
/// the system is inconsistent.
pub fn solve<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(&rhs.first()?.ctx()); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// A nonzero vector in the kernel of `M`, if the kernel is nontrivial.
pub fn kernel_vector<F: Field>(rows: &[Vec<F>], ncols: usize, ctx: &F::Ctx) -> Option<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, ncols);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut x = vec![F::zero(ctx); ncols];
    x[free] = F::one(ctx);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][free].neg();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::{QuadNum, Ring};

    #[test]
    fn small_systems() {
        let q = |n| QuadNum::int(n, 17);
        let rows = vec![vec![q(1), q(2)], vec![q(3), q(4)], vec![q(5), q(6)]];
        let x = solve(&rows, &[q(5), q(11), q(17)]).unwrap();
        assert_eq!(x, vec![q(1), q(2)]);
        assert!(solve(&rows, &[q(5), q(11), q(18)]).is_none());
        assert_eq!(rank(&rows), 2);
        assert!(x[0].is_one());
        let k = kernel_vector(&rows[..2], 2, &17);
        assert!(k.is_none());
        let sing = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(7)]];
        let k = kernel_vector(&sing, 3, &17).unwrap();
        for r in &sing {
            let dot = r.iter().zip(&k).fold(q(0), |a, (x, y)| a.add(&x.mul(y)));
            assert!(dot.is_zero());
        }
    }
}
