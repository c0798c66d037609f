//! Arithmetic in Z/p for the oracle's fingerprinting. Residues are kept
//! reduced in `[0, p)`.

/// The Mersenne prime 2^61 − 1.
pub const P: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            out = mul(out, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    out
}

pub fn inv(a: u64, p: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, p - 2, p))
}

/// Determinant of a square matrix over Z/p.
pub fn determinant(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1 % p;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = sub(0, det, p);
        }
        det = mul(det, m[col][col], p);
        let pinv = inv(m[col][col], p).expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let f = mul(m[r][col], pinv, p);
            for k in col..n {
                let v = mul(m[col][k], f, p);
                m[r][k] = sub(m[r][k], v, p);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let a = 123_456_789;
        assert_eq!(mul(a, inv(a, P).unwrap(), P), 1);
        // [[2,1],[1,3]] has determinant 5
        assert_eq!(determinant(vec![vec![2, 1], vec![1, 3]], P), 5);
        // a singular matrix
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]], P), 0);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]], P), P - 1);
    }
}
