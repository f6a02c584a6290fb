//! Bundled example codes: the `C_8` family, the self-dual `C_12`, `C_9`,
//! `C_7`, and their coset sets.

use crate::format::parse_check_matrix;
use crate::gf2::SympVector;

pub const C8: &str = include_str!("../../../data/c8.chk");
pub const ALPHA8: &str = include_str!("../../../data/alpha8.chk");
pub const C81: &str = include_str!("../../../data/c81.chk");
pub const C82: &str = include_str!("../../../data/c82.chk");
pub const C83: &str = include_str!("../../../data/c83.chk");
pub const C12: &str = include_str!("../../../data/c12.chk");
pub const C9: &str = include_str!("../../../data/c9.chk");
pub const C7: &str = include_str!("../../../data/c7.chk");
pub const TOY2: &str = include_str!("../../../data/toy2.chk");

pub const OMEGA8: &str = include_str!("../../../data/omega8.om");
pub const OMEGA81: &str = include_str!("../../../data/omega81.om");
pub const OMEGA82: &str = include_str!("../../../data/omega82.om");
pub const OMEGA83: &str = include_str!("../../../data/omega83.om");
pub const OMEGA12: &str = include_str!("../../../data/omega12.om");
pub const OMEGA9: &str = include_str!("../../../data/omega9.om");
pub const OMEGA7: &str = include_str!("../../../data/omega7.om");

/// A parsed matrix with its qubit count.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub n: usize,
    pub rows: Vec<SympVector>,
}

fn load(text: &str) -> Matrix {
    let rows = parse_check_matrix(text).expect("bundled data parses");
    Matrix {
        n: rows[0].n(),
        rows,
    }
}

pub fn c8() -> Matrix {
    load(C8)
}
pub fn c81() -> Matrix {
    load(C81)
}
pub fn c82() -> Matrix {
    load(C82)
}
pub fn c83() -> Matrix {
    load(C83)
}
pub fn c12() -> Matrix {
    load(C12)
}
pub fn c9() -> Matrix {
    load(C9)
}
pub fn c7() -> Matrix {
    load(C7)
}
pub fn toy2() -> Matrix {
    load(TOY2)
}
pub fn c8_alphas() -> Vec<SympVector> {
    load(ALPHA8).rows
}

pub fn omega8() -> Vec<SympVector> {
    load(OMEGA8).rows
}
pub fn omega81() -> Vec<SympVector> {
    load(OMEGA81).rows
}
pub fn omega82() -> Vec<SympVector> {
    load(OMEGA82).rows
}
pub fn omega83() -> Vec<SympVector> {
    load(OMEGA83).rows
}
pub fn omega12() -> Vec<SympVector> {
    load(OMEGA12).rows
}
pub fn omega9() -> Vec<SympVector> {
    load(OMEGA9).rows
}
pub fn omega7() -> Vec<SympVector> {
    load(OMEGA7).rows
}

/// One bundled `(C, Ω, d)` instance.
#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub name: &'static str,
    pub family: &'static str,
    pub check: &'static str,
    pub omega: &'static str,
    pub d: usize,
    /// Printed as `((n, 2^k·L, d))`.
    pub expected: (usize, u32, usize, usize),
}

impl Example {
    pub fn code_rows(&self) -> Vec<SympVector> {
        load(self.check).rows
    }

    pub fn omega_reps(&self) -> Vec<SympVector> {
        load(self.omega).rows
    }
}

/// Every bundled instance, grouped by family.
pub fn examples() -> Vec<Example> {
    vec![
        Example {
            name: "c8",
            family: "c8-family",
            check: C8,
            omega: OMEGA8,
            d: 3,
            expected: (8, 3, 1, 3),
        },
        Example {
            name: "c81",
            family: "c8-family",
            check: C81,
            omega: OMEGA81,
            d: 3,
            expected: (8, 2, 2, 3),
        },
        Example {
            name: "c82",
            family: "c8-family",
            check: C82,
            omega: OMEGA82,
            d: 3,
            expected: (8, 1, 4, 3),
        },
        Example {
            name: "c83",
            family: "c8-family",
            check: C83,
            omega: OMEGA83,
            d: 3,
            expected: (8, 0, 8, 3),
        },
        Example {
            name: "c12",
            family: "c12",
            check: C12,
            omega: OMEGA12,
            d: 5,
            expected: (12, 0, 2, 5),
        },
        Example {
            name: "c9",
            family: "c9",
            check: C9,
            omega: OMEGA9,
            d: 2,
            expected: (9, 2, 16, 2),
        },
        Example {
            name: "c7",
            family: "c7",
            check: C7,
            omega: OMEGA7,
            d: 2,
            expected: (7, 3, 2, 2),
        },
    ]
}

/// Instances matching a name or family; `None` selects all.
pub fn select(name: Option<&str>) -> Vec<Example> {
    examples()
        .into_iter()
        .filter(|e| name.map_or(true, |q| e.name == q || e.family == q))
        .collect()
}
