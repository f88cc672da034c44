//! The classical lattice catalog: Zn, An, An*, Dn, Dn*, E8 with exact Gram
//! matrices and their classical (minimum, determinant) data.
//!
//! Conventions: An is Iₙ + Jₙ (det n+1, min 2); An* is the integerized dual
//! (n+1)·An⁻¹ = (n+1)Iₙ − Jₙ (det (n+1)^{n−1}, min n); Dn* is the exact
//! rational inverse Gram Dn⁻¹. D4 is pinned to a fixed integral basis, the
//! other Dn use the Cartan matrix. Duals of ℤⁿ and E8 are themselves.

use num::One;

use crate::forms::GramForm;
use crate::matrix::Matrix;
use crate::rat::{int, rat, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub gram: GramForm,
    pub known_min: Rat,
    pub known_det: Rat,
}

fn zn(n: usize) -> CatalogEntry {
    CatalogEntry {
        name: format!("Z{n}"),
        n,
        gram: GramForm::new(Matrix::identity(n)).expect("identity is positive definite"),
        known_min: Rat::one(),
        known_det: Rat::one(),
    }
}

fn an(n: usize) -> CatalogEntry {
    let mat = Matrix::from_fn(n, n, |r, c| if r == c { int(2) } else { int(1) });
    CatalogEntry {
        name: format!("A{n}"),
        n,
        gram: GramForm::new(mat).expect("An is positive definite"),
        known_min: int(2),
        known_det: int(n as i64 + 1),
    }
}

fn an_dual(n: usize) -> CatalogEntry {
    // (n+1)·An⁻¹ = (n+1)I − J
    let mat = Matrix::from_fn(n, n, |r, c| if r == c { int(n as i64) } else { int(-1) });
    CatalogEntry {
        name: format!("A{n}*"),
        n,
        gram: GramForm::new(mat).expect("An* is positive definite"),
        known_min: int(n as i64),
        known_det: crate::rat::pow_rat(&int(n as i64 + 1), n as i64 - 1),
    }
}

fn dn(n: usize) -> CatalogEntry {
    let mat = if n == 4 {
        Matrix::from_i64_rows(&[&[2, 0, 1, 0], &[0, 2, 1, 0], &[1, 1, 2, 1], &[0, 0, 1, 2]])
    } else {
        // Cartan matrix: path 1–2–…–(n−1), node n attached to n−2
        Matrix::from_fn(n, n, |r, c| {
            let path_edge = (r + 1 == c || c + 1 == r) && r < n - 1 && c < n - 1;
            let fork_edge = (r == n - 1 && c == n - 3) || (c == n - 1 && r == n - 3);
            if r == c {
                int(2)
            } else if path_edge || fork_edge {
                int(-1)
            } else {
                int(0)
            }
        })
    };
    CatalogEntry {
        name: format!("D{n}"),
        n,
        gram: GramForm::new(mat).expect("Dn is positive definite"),
        known_min: int(2),
        known_det: int(4),
    }
}

fn dn_dual(n: usize) -> CatalogEntry {
    let inv = dn(n).gram.dual();
    CatalogEntry {
        name: format!("D{n}*"),
        n,
        gram: inv,
        known_min: if n == 3 { rat(3, 4) } else { int(1) },
        known_det: rat(1, 4),
    }
}

fn e8() -> CatalogEntry {
    // Bourbaki numbering: chain 1–3–4–5–6–7–8, node 2 attached to 4
    let edges: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mat = Matrix::from_fn(8, 8, |r, c| {
        if r == c {
            int(2)
        } else if edges.contains(&(r, c)) || edges.contains(&(c, r)) {
            int(-1)
        } else {
            int(0)
        }
    });
    CatalogEntry {
        name: "E8".to_string(),
        n: 8,
        gram: GramForm::new(mat).expect("E8 is positive definite"),
        known_min: int(2),
        known_det: int(1),
    }
}

/// The full catalog: ℤⁿ for n ≤ 8, An and An* for 2 ≤ n ≤ 5, Dn and Dn* for
/// 3 ≤ n ≤ 5, and E8.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(zn(n));
    }
    for n in 2..=5 {
        out.push(an(n));
    }
    for n in 2..=5 {
        out.push(an_dual(n));
    }
    for n in 3..=5 {
        out.push(dn(n));
    }
    for n in 3..=5 {
        out.push(dn_dual(n));
    }
    out.push(e8());
    out
}

/// Case-insensitive lookup by catalog name, e.g. "A3", "a3*", "D4", "Z2".
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let wanted = name.trim().to_ascii_uppercase();
    catalog()
        .into_iter()
        .find(|e| e.name == wanted)
        .ok_or_else(|| Error::Parse(format!("unknown lattice {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_determinants_match() {
        for entry in catalog() {
            assert_eq!(entry.gram.det(), entry.known_det, "det mismatch for {}", entry.name);
        }
    }

    #[test]
    fn lookup_names() {
        assert_eq!(lookup("A3").unwrap().name, "A3");
        assert_eq!(lookup("a3*").unwrap().name, "A3*");
        assert_eq!(lookup("e8").unwrap().n, 8);
        assert!(lookup("Q5").is_err());
    }

    #[test]
    fn a3_dual_is_four_times_inverse() {
        let a3 = lookup("A3").unwrap();
        let a3s = lookup("A3*").unwrap();
        let four_inv = a3.gram.dual().matrix().scale(&int(4));
        assert_eq!(*a3s.gram.matrix(), four_inv);
    }
}
