//! Built-in Lie algebras and bivector-pair fixtures, looked up by name.

use num_traits::{One, Zero};

use crate::matrix::ExactMatrix;
use crate::poisson::{BivectorField, LieAlgebraSpec, VariableKind};
use crate::poly::MultiPoly;
use crate::scalar::Gq;

type AlgebraCtor = fn() -> LieAlgebraSpec;

const ALGEBRAS: &[(&str, AlgebraCtor)] = &[
    ("so3", so3),
    ("heisenberg3", heisenberg3),
    ("sl2r", sl2r),
    ("so3xso3", so3xso3),
    ("sl3", sl3),
    ("d45", d45),
];

pub fn algebra_names() -> Vec<&'static str> {
    ALGEBRAS.iter().map(|(n, _)| *n).collect()
}

pub fn algebra(name: &str) -> Option<LieAlgebraSpec> {
    ALGEBRAS.iter().find(|(n, _)| *n == name).map(|(_, f)| f())
}

pub fn so3() -> LieAlgebraSpec {
    LieAlgebraSpec::new("so3", 3)
        .bracket(0, 1, 2, 1)
        .bracket(1, 2, 0, 1)
        .bracket(2, 0, 1, 1)
}

pub fn heisenberg3() -> LieAlgebraSpec {
    LieAlgebraSpec::new("heisenberg3", 3)
        .with_labels(&["x", "y", "z"])
        .bracket(0, 1, 2, 1)
}

pub fn sl2r() -> LieAlgebraSpec {
    LieAlgebraSpec::new("sl2r", 3)
        .with_labels(&["h", "e", "f"])
        .bracket(0, 1, 1, 2)
        .bracket(0, 2, 2, -2)
        .bracket(1, 2, 0, 1)
}

pub fn so3xso3() -> LieAlgebraSpec {
    let mut g = LieAlgebraSpec::new("so3xso3", 6);
    for off in [0, 3] {
        g = g
            .bracket(off, off + 1, off + 2, 1)
            .bracket(off + 1, off + 2, off, 1)
            .bracket(off + 2, off, off + 1, 1);
    }
    g
}

/// sl(3) in the basis E12, E13, E21, E23, E31, E32, H1 = E11−E22,
/// H2 = E22−E33, with constants computed from matrix commutators.
pub fn sl3() -> LieAlgebraSpec {
    let basis: Vec<[[i64; 3]; 3]> = {
        let e = |i: usize, j: usize| {
            let mut m = [[0; 3]; 3];
            m[i][j] = 1;
            m
        };
        let mut b = vec![e(0, 1), e(0, 2), e(1, 0), e(1, 2), e(2, 0), e(2, 1)];
        b.push([[1, 0, 0], [0, -1, 0], [0, 0, 0]]);
        b.push([[0, 0, 0], [0, 1, 0], [0, 0, -1]]);
        b
    };
    let off_diag = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    let mul = |a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]| {
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        m
    };
    let mut g = LieAlgebraSpec::new("sl3", 8).with_labels(&["E12", "E13", "E21", "E23", "E31", "E32", "H1", "H2"]);
    for i in 0..8 {
        for j in i + 1..8 {
            let ab = mul(&basis[i], &basis[j]);
            let ba = mul(&basis[j], &basis[i]);
            let mut c = [[0; 3]; 3];
            for r in 0..3 {
                for s in 0..3 {
                    c[r][s] = ab[r][s] - ba[r][s];
                }
            }
            for (k, &(r, s)) in off_diag.iter().enumerate() {
                if c[r][s] != 0 {
                    g = g.bracket(i, j, k, c[r][s]);
                }
            }
            // diag(d1, d2, d3) = d1·H1 + (d1 + d2)·H2 when traceless
            let (d1, d2) = (c[0][0], c[1][1]);
            if d1 != 0 {
                g = g.bracket(i, j, 6, d1);
            }
            if d1 + d2 != 0 {
                g = g.bracket(i, j, 7, d1 + d2);
            }
        }
    }
    g
}

/// The 14-dimensional two-step nilpotent algebra with
/// `[p₁, q_i] = f_i`, `[p₂, q_i] = g_i`.
pub fn d45() -> LieAlgebraSpec {
    let labels = [
        "p1", "p2", "q1", "q2", "q3", "q4", "f1", "f2", "f3", "f4", "g1", "g2", "g3", "g4",
    ];
    let mut g = LieAlgebraSpec::new("d45", 14).with_labels(&labels);
    for i in 0..4 {
        g = g.bracket(0, 2 + i, 6 + i, 1).bracket(1, 2 + i, 10 + i, 1);
    }
    g
}

/// A named pair of bivector fields with coordinate labels.
#[derive(Clone, Debug)]
pub struct PairFixture {
    pub name: String,
    pub coordinates: Vec<String>,
    pub first: BivectorField,
    pub second: BivectorField,
}

pub fn fixture_names() -> Vec<&'static str> {
    vec!["kron_2068", "kron_2069", "jordan4_lam(<value>)"]
}

/// Looks up a fixture; `jordan4_lam(v)` takes a Gaussian-rational parameter
/// and a bare `jordan4_lam` uses `v = 2`.
pub fn fixture(name: &str) -> Option<PairFixture> {
    match name {
        "kron_2068" => Some(kron_2068()),
        "kron_2069" => Some(kron_2069()),
        "jordan4_lam" => Some(jordan4_lam(&Gq::from(2))),
        _ => {
            let arg = name.strip_prefix("jordan4_lam(")?.strip_suffix(')')?;
            let v: Gq = arg.trim().parse().ok()?;
            Some(jordan4_lam(&v))
        }
    }
}

fn real_field(n: usize) -> BivectorField {
    BivectorField::zero(n, VariableKind::Real)
}

fn constant(n: usize, v: i64) -> MultiPoly {
    MultiPoly::constant(n, Gq::from(v))
}

/// Coordinates `(p₁, p₂, q₁, …, q₄)` on ℝ⁶:
/// `c₁ = ∂p₁∧∂q₁ + ∂p₂∧∂q₂`, `c₂ = ∂p₁∧(∂q₂ + q₁∂q₃) + ∂p₂∧∂q₄`.
pub fn kron_2068() -> PairFixture {
    let n = 6;
    let first = real_field(n).with(0, 2, constant(n, 1)).with(1, 3, constant(n, 1));
    let second = real_field(n)
        .with(0, 3, constant(n, 1))
        .with(0, 4, MultiPoly::z(n, 2))
        .with(1, 5, constant(n, 1));
    PairFixture {
        name: "kron_2068".into(),
        coordinates: ["p1", "p2", "q1", "q2", "q3", "q4"].map(String::from).to_vec(),
        first,
        second,
    }
}

/// Coordinates `(e, p, q₁, q₂)`: `c₁ = p∧q₁`, `c₂ = p∧q₂`.
pub fn kron_2069() -> PairFixture {
    let n = 4;
    PairFixture {
        name: "kron_2069".into(),
        coordinates: ["e", "p", "q1", "q2"].map(String::from).to_vec(),
        first: real_field(n).with(1, 2, constant(n, 1)),
        second: real_field(n).with(1, 3, constant(n, 1)),
    }
}

/// Constant 4-dimensional pair forming a single Jordan block of dimension 4:
/// `a = [[0, I], [−I, 0]]`, `b = [[0, J], [−Jᵀ, 0]]` with `J` the 2×2 Jordan
/// cell of `value`. The pencil degenerates at `(λ₁:λ₂) = (−value:1)`.
pub fn jordan4_lam(value: &Gq) -> PairFixture {
    let n = 4;
    let c = |v: &Gq| MultiPoly::constant(n, v.clone());
    let one = Gq::one();
    let first = real_field(n).with(0, 2, c(&one)).with(1, 3, c(&one));
    let mut second = real_field(n).with(0, 3, c(&one));
    if !value.is_zero() {
        second = second.with(0, 2, c(value)).with(1, 3, c(value));
    }
    PairFixture {
        name: format!("jordan4_lam({value})"),
        coordinates: ["x1", "x2", "y1", "y2"].map(String::from).to_vec(),
        first,
        second,
    }
}

/// The skew block matrix `[[0, x], [−xᵀ, 0]]`.
pub fn skew_from_block(x: &ExactMatrix) -> ExactMatrix {
    let (r, c) = (x.rows(), x.cols());
    let top = ExactMatrix::zeros(r, r).hstack(x);
    let bottom = x.transpose().scale(&-Gq::one()).hstack(&ExactMatrix::zeros(c, c));
    top.vstack(&bottom)
}

/// An indecomposable block of a skew pencil in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalBlock {
    /// Kronecker block with minimal index `m`, of dimension `2m+1`.
    Kronecker(usize),
    /// Jordan block of dimension `2k` degenerating at `(ev:1)`.
    Finite { k: usize, ev: i64 },
    /// Jordan block of dimension `2k` degenerating at `(1:0)`.
    Infinite { k: usize },
}

impl NormalBlock {
    pub fn dim(&self) -> usize {
        match self {
            NormalBlock::Kronecker(m) => 2 * m + 1,
            NormalBlock::Finite { k, .. } | NormalBlock::Infinite { k } => 2 * k,
        }
    }

    pub fn is_jordan(&self) -> bool {
        !matches!(self, NormalBlock::Kronecker(_))
    }

    pub fn matrices(&self) -> (ExactMatrix, ExactMatrix) {
        match *self {
            NormalBlock::Kronecker(m) => {
                // p_i is paired with q_i by the first generator and with q_{i+1} by the second
                let n = 2 * m + 1;
                let mut a = ExactMatrix::zeros(n, n);
                let mut b = ExactMatrix::zeros(n, n);
                for i in 0..m {
                    a[(i, m + i)] = Gq::one();
                    a[(m + i, i)] = -Gq::one();
                    b[(i, m + i + 1)] = Gq::one();
                    b[(m + i + 1, i)] = -Gq::one();
                }
                (a, b)
            }
            NormalBlock::Finite { k, ev } => (
                skew_from_block(&ExactMatrix::identity(k)),
                skew_from_block(&jordan_cell(k, ev)),
            ),
            NormalBlock::Infinite { k } => (
                skew_from_block(&jordan_cell(k, 0)),
                skew_from_block(&ExactMatrix::identity(k)),
            ),
        }
    }

    /// The normalised degenerate direction of a Jordan block.
    pub fn direction(&self) -> Option<[Gq; 2]> {
        match *self {
            NormalBlock::Kronecker(_) => None,
            // λ₁ + λ₂·ev = 0
            NormalBlock::Finite { ev, .. } => Some([Gq::from(-ev), Gq::one()]),
            NormalBlock::Infinite { .. } => Some([Gq::one(), Gq::zero()]),
        }
    }
}

fn jordan_cell(k: usize, ev: i64) -> ExactMatrix {
    ExactMatrix::from_fn(k, k, |i, j| {
        if i == j {
            Gq::from(ev)
        } else if j == i + 1 {
            Gq::one()
        } else {
            Gq::zero()
        }
    })
}

/// Block-diagonal generators `(a, b)` of the direct sum of `blocks`.
pub fn normal_form(blocks: &[NormalBlock]) -> (ExactMatrix, ExactMatrix) {
    let mats: Vec<(ExactMatrix, ExactMatrix)> = blocks.iter().map(NormalBlock::matrices).collect();
    let a: Vec<&ExactMatrix> = mats.iter().map(|m| &m.0).collect();
    let b: Vec<&ExactMatrix> = mats.iter().map(|m| &m.1).collect();
    (ExactMatrix::block_diag(&a), ExactMatrix::block_diag(&b))
}
