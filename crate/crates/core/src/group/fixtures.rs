//! Small groups used throughout the tests and the CLI's `builtin` group names.

use crate::error::{Error, Result};

use super::FiniteTable;

/// The cyclic group of order `n`, elements labelled `0..n`.
pub fn cyclic(n: usize) -> Result<FiniteTable> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group order must be >= 1".into()));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteTable::new(labels, table)
}

/// The symmetric group on `degree` points, labelled in cycle notation.
pub fn symmetric(degree: usize) -> Result<FiniteTable> {
    if degree < 2 {
        return FiniteTable::new(vec!["e".into()], vec![vec![0]]);
    }
    let mut transposition: Vec<usize> = (0..degree).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
    FiniteTable::from_permutations(&[transposition, cycle])
}

/// The alternating group on 4 points.
pub fn alternating4() -> Result<FiniteTable> {
    FiniteTable::from_permutations(&[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
}

/// Symmetries of the square, acting on its vertices 0..4.
pub fn dihedral4() -> Result<FiniteTable> {
    FiniteTable::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

/// The quaternion group {1, -1, i, -i, j, -j, k, -k}.
pub fn quaternion8() -> Result<FiniteTable> {
    // basis unit index: 0=1, 1=i, 2=j, 3=k; product of units with sign
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let names = ["1", "i", "j", "k"];
    // element 2*u + s is (-1)^s * unit u
    let labels = (0..8)
        .map(|e| format!("{}{}", if e % 2 == 1 { "-" } else { "" }, names[e / 2]))
        .collect();
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, neg) = UNIT[a / 2][b / 2];
                    let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                    2 * u + usize::from(sign)
                })
                .collect()
        })
        .collect();
    FiniteTable::new(labels, table)
}

/// Resolves the builtin names accepted by configuration files:
/// `Z<n>`, `S3`, `S4`, `D4`, `Q8`, `A4`.
pub fn builtin(name: &str) -> Result<FiniteTable> {
    match name {
        "S3" => symmetric(3),
        "S4" => symmetric(4),
        "D4" => dihedral4(),
        "Q8" => quaternion8(),
        "A4" => alternating4(),
        _ => {
            let n = name
                .strip_prefix('Z')
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::Config(format!("unknown builtin group {name:?}")))?;
            cyclic(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(6).unwrap().order(), 6);
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(dihedral4().unwrap().order(), 8);
        assert_eq!(quaternion8().unwrap().order(), 8);
        assert_eq!(alternating4().unwrap().order(), 12);
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8().unwrap();
        let i = q.index_of("i").unwrap();
        let j = q.index_of("j").unwrap();
        let k = q.index_of("k").unwrap();
        let minus_one = q.index_of("-1").unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.index_of("-k").unwrap());
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(q.mul(i, j), k), minus_one);
    }

    #[test]
    fn s3_labels() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.label(s3.identity()), "e");
        for l in ["(12)", "(13)", "(23)", "(123)", "(132)"] {
            assert!(s3.index_of(l).is_some(), "{l}");
        }
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d = dihedral4().unwrap();
        let n = d.order();
        assert!((0..n).any(|a| (0..n).any(|b| d.mul(a, b) != d.mul(b, a))));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("Z12").unwrap().order(), 12);
        assert!(builtin("Z").is_err());
        assert!(builtin("X9").is_err());
    }
}
