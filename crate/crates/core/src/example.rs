//! The 3 x 7 reference instance over GF(7) with its published transform
//! polynomials and systematic generator, kept symbolic in the primitive
//! element so that other choices of `alpha` can be compared against it.

use crate::field::{Felt, Field};
use crate::graph::ConstraintGraph;
use crate::poly::Poly;

pub const REFERENCE_ADJACENCY: [[u8; 7]; 3] = [
    [1, 0, 0, 1, 1, 1, 1],
    [1, 1, 1, 0, 1, 1, 1],
    [0, 0, 1, 1, 1, 1, 1],
];

/// Zero-based matching used by the reference construction.
pub const REFERENCE_MATCHING: [usize; 3] = [0, 1, 2];

pub const REFERENCE_D_MIN: usize = 5;
pub const REFERENCE_D_SYS: usize = 4;

/// A field element written as either zero or a power of `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Zero,
    Pow(u32),
}

impl Sym {
    pub fn eval(self, field: &Field) -> Felt {
        match self {
            Sym::Zero => Felt::ZERO,
            Sym::Pow(e) => field.alpha_pow(e as u64),
        }
    }
}

/// `alpha^scale * prod (x - root)`.
#[derive(Debug, Clone)]
pub struct SymPoly {
    pub scale: u32,
    pub roots: Vec<Sym>,
}

impl SymPoly {
    pub fn eval(&self, field: &Field) -> Poly {
        let roots: Vec<Felt> = self.roots.iter().map(|r| r.eval(field)).collect();
        Poly::from_roots(field, &roots).scale(field, field.alpha_pow(self.scale as u64))
    }
}

pub fn reference_graph() -> ConstraintGraph {
    let rows: Vec<Vec<u8>> = REFERENCE_ADJACENCY.iter().map(|r| r.to_vec()).collect();
    ConstraintGraph::new(&rows).expect("reference graph is valid")
}

/// Published transform polynomials.
pub fn reference_transforms() -> Vec<SymPoly> {
    use Sym::*;
    vec![
        SymPoly {
            scale: 5,
            roots: vec![Pow(0), Pow(1)],
        },
        SymPoly {
            scale: 4,
            roots: vec![Zero, Pow(1), Pow(2)],
        },
        SymPoly {
            scale: 3,
            roots: vec![Zero, Pow(0)],
        },
    ]
}

/// Published systematic generator.
pub fn reference_generator() -> Vec<Vec<Sym>> {
    use Sym::*;
    let one = Pow(0);
    vec![
        vec![one, Zero, Zero, Pow(2), Pow(5), one, Pow(5)],
        vec![Zero, one, Zero, Zero, one, Pow(4), one],
        vec![Zero, Zero, one, Pow(5), Pow(5), Pow(2), one],
    ]
}

pub fn eval_matrix(field: &Field, m: &[Vec<Sym>]) -> Vec<Vec<u32>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.eval(field).value()).collect())
        .collect()
}
