//! The ten sp(4,R) generators in the two-mode boson realization, their
//! auxiliaries and Casimirs, and checks of the commutation table, the 4×4
//! representation, ladder shifts and group-state construction.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock::{projector_indices, sparse_boson_operators, FockBasis, Interior, OperatorMatrix};
use crate::linalg::{c, solve, ComplexMatrix, SparseMatrix, C64};
use crate::report::VerificationReport;

/// One of the ten sp(4,R) generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    KpA,
    KmA,
    KpB,
    KmB,
    KpAB,
    KmAB,
    K0AB,
    Jp,
    Jm,
    J0,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::KpA,
        Generator::KmA,
        Generator::KpB,
        Generator::KmB,
        Generator::KpAB,
        Generator::KmAB,
        Generator::K0AB,
        Generator::Jp,
        Generator::Jm,
        Generator::J0,
    ];

    pub const LADDERS: [Generator; 8] = [
        Generator::KpA,
        Generator::KmA,
        Generator::KpB,
        Generator::KmB,
        Generator::KpAB,
        Generator::KmAB,
        Generator::Jp,
        Generator::Jm,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Generator::KpA => "K+a",
            Generator::KmA => "K-a",
            Generator::KpB => "K+b",
            Generator::KmB => "K-b",
            Generator::KpAB => "K+ab",
            Generator::KmAB => "K-ab",
            Generator::K0AB => "K0ab",
            Generator::Jp => "J+",
            Generator::Jm => "J-",
            Generator::J0 => "J0",
        }
    }

    /// The Hermitian adjoint in the boson realization.
    pub fn adjoint(self) -> Generator {
        match self {
            Generator::KpA => Generator::KmA,
            Generator::KmA => Generator::KpA,
            Generator::KpB => Generator::KmB,
            Generator::KmB => Generator::KpB,
            Generator::KpAB => Generator::KmAB,
            Generator::KmAB => Generator::KpAB,
            Generator::Jp => Generator::Jm,
            Generator::Jm => Generator::Jp,
            g => g,
        }
    }

    pub fn is_ladder(self) -> bool {
        !matches!(self, Generator::K0AB | Generator::J0)
    }

    /// Change `(Δn_a, Δn_b)` of occupations under the generator.
    pub fn occupation_shift(self) -> (i64, i64) {
        match self {
            Generator::KpA => (2, 0),
            Generator::KmA => (-2, 0),
            Generator::KpB => (0, 2),
            Generator::KmB => (0, -2),
            Generator::KpAB => (1, 1),
            Generator::KmAB => (-1, -1),
            Generator::Jp => (1, -1),
            Generator::Jm => (-1, 1),
            Generator::K0AB | Generator::J0 => (0, 0),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator '{s}'")))
    }
}

/// Coefficients of an operator in the basis {ten generators, identity}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub gens: [C64; 10],
    pub identity: C64,
}

impl Default for Coefficients {
    fn default() -> Self {
        Self::zero()
    }
}

impl Index<Generator> for Coefficients {
    type Output = C64;
    fn index(&self, g: Generator) -> &C64 {
        &self.gens[g.index()]
    }
}

impl IndexMut<Generator> for Coefficients {
    fn index_mut(&mut self, g: Generator) -> &mut C64 {
        &mut self.gens[g.index()]
    }
}

impl Coefficients {
    pub fn zero() -> Self {
        Self { gens: [c(0.0, 0.0); 10], identity: c(0.0, 0.0) }
    }

    pub fn unit(g: Generator) -> Self {
        let mut s = Self::zero();
        s[g] = c(1.0, 0.0);
        s
    }

    /// Builds from `(generator, real coefficient)` terms.
    pub fn from_terms(terms: &[(Generator, f64)]) -> Self {
        let mut s = Self::zero();
        for &(g, x) in terms {
            s[g] += c(x, 0.0);
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = *self;
        for (a, b) in s.gens.iter_mut().zip(other.gens) {
            *a += b;
        }
        s.identity += other.identity;
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    pub fn scale(&self, f: C64) -> Self {
        let mut s = *self;
        for a in s.gens.iter_mut() {
            *a *= f;
        }
        s.identity *= f;
        s
    }

    /// Largest coefficient modulus, identity included.
    pub fn max_abs(&self) -> f64 {
        self.gens.iter().chain(std::iter::once(&self.identity)).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest ladder-coefficient modulus.
    pub fn ladder_max(&self) -> f64 {
        Generator::LADDERS.iter().map(|&g| self[g].norm()).fold(0.0, f64::max)
    }

    /// Whether the combination is Hermitian in the boson realization.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        Generator::ALL.iter().all(|&g| (self[g] - self[g.adjoint()].conj()).norm() <= tol * scale)
            && self.identity.im.abs() <= tol * scale
    }

    /// Zeroes parts below 1e-12 and pulls values within 1e-9 of a half-integer onto it.
    pub fn snapped(&self) -> Self {
        fn snap(x: f64) -> f64 {
            if x.abs() < 1e-12 {
                return 0.0;
            }
            let h = (2.0 * x).round() / 2.0;
            if (x - h).abs() < 1e-9 {
                h
            } else {
                x
            }
        }
        let mut s = *self;
        for z in s.gens.iter_mut().chain(std::iter::once(&mut s.identity)) {
            *z = c(snap(z.re), snap(z.im));
        }
        s
    }

    /// The operator `Σ cᵢ Gᵢ + c_I·I` on the generator set's basis.
    pub fn assemble(&self, gens: &GeneratorSet) -> SparseMatrix {
        let mut terms: Vec<(C64, &SparseMatrix)> = Generator::ALL.iter().map(|&g| (self[g], gens.sparse(g))).collect();
        terms.push((self.identity, gens.aux(Auxiliary::Identity)));
        SparseMatrix::linear_combination(&terms).expect("generators share one basis")
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let fmt_c = |z: C64| {
            if z.im == 0.0 {
                format!("{}", z.re)
            } else if z.re == 0.0 {
                format!("{}i", z.im)
            } else {
                format!("({}{:+}i)", z.re, z.im)
            }
        };
        for g in Generator::ALL {
            let z = self[g];
            if z.norm() > 0.0 {
                parts.push(format!("{}·{}", fmt_c(z), g.label()));
            }
        }
        if self.identity.norm() > 0.0 {
            parts.push(fmt_c(self.identity));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Auxiliary operators carried by a [`GeneratorSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Auxiliary {
    /// `N = a†a + b†b`.
    Number,
    /// `N_d = b†b − a†a`.
    Nd,
    /// `N_s = a†a + b†b`.
    Ns,
    K0a,
    K0b,
    CasimirA,
    CasimirB,
    CasimirAB,
    J2,
    /// Casimir of the `½(a†² + b†²)` realization.
    K2,
    Identity,
}

impl Auxiliary {
    pub const ALL: [Auxiliary; 11] = [
        Auxiliary::Number,
        Auxiliary::Nd,
        Auxiliary::Ns,
        Auxiliary::K0a,
        Auxiliary::K0b,
        Auxiliary::CasimirA,
        Auxiliary::CasimirB,
        Auxiliary::CasimirAB,
        Auxiliary::J2,
        Auxiliary::K2,
        Auxiliary::Identity,
    ];
}

/// Generators, auxiliaries and Casimirs on one basis, stored sparse.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    basis: FockBasis,
    ops: Vec<SparseMatrix>,
    aux: Vec<SparseMatrix>,
    bosons: [SparseMatrix; 4],
}

impl GeneratorSet {
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn sparse(&self, g: Generator) -> &SparseMatrix {
        &self.ops[g.index()]
    }

    pub fn aux(&self, a: Auxiliary) -> &SparseMatrix {
        let i = Auxiliary::ALL.iter().position(|&x| x == a).expect("listed auxiliary");
        &self.aux[i]
    }

    /// Dense, labelled copy of a generator.
    pub fn operator(&self, g: Generator) -> OperatorMatrix {
        OperatorMatrix::from_sparse(self.sparse(g), self.basis, false, g.label()).expect("basis dimension")
    }

    pub fn aux_operator(&self, a: Auxiliary) -> OperatorMatrix {
        OperatorMatrix::from_sparse(self.aux(a), self.basis, false, format!("{a:?}")).expect("basis dimension")
    }

    /// Sparse `a, a†, b, b†`.
    pub fn bosons(&self) -> &[SparseMatrix; 4] {
        &self.bosons
    }
}

/// Builds the boson realization: `K₊⁽ᵃ⁾ = a†²/2`, `K₊⁽ᵃᵇ⁾ = a†b†`,
/// `K₀⁽ᵃᵇ⁾ = (a†a + b†b + 1)/2`, `J₊ = a†b`, `J₀ = (a†a − b†b)/2` and adjoints.
pub fn build_generators(basis: &FockBasis) -> GeneratorSet {
    let bosons = sparse_boson_operators(basis);
    let [a, ad, b, bd] = &bosons;
    let n = basis.dim();
    let mul = |x: &SparseMatrix, y: &SparseMatrix| x.matmul(y).expect("square operators");
    let half = c(0.5, 0.0);
    let one = c(1.0, 0.0);
    let diag = |f: &dyn Fn(f64, f64) -> f64| {
        SparseMatrix::from_diagonal(&basis.states().map(|(na, nb)| c(f(na as f64, nb as f64), 0.0)).collect::<Vec<_>>())
    };

    let kpa = mul(ad, ad).scale(half);
    let kma = mul(a, a).scale(half);
    let kpb = mul(bd, bd).scale(half);
    let kmb = mul(b, b).scale(half);
    let kpab = mul(ad, bd);
    let kmab = mul(b, a);
    let k0ab = diag(&|na, nb| 0.5 * (na + nb + 1.0));
    let jp = mul(ad, b);
    let jm = mul(bd, a);
    let j0 = diag(&|na, nb| 0.5 * (na - nb));

    let number = diag(&|na, nb| na + nb);
    let nd = diag(&|na, nb| nb - na);
    let k0a = diag(&|na, _| 0.5 * (na + 0.5));
    let k0b = diag(&|_, nb| 0.5 * (nb + 0.5));
    let identity = SparseMatrix::identity(n);
    let casimir_single = identity.scale(c(-3.0 / 16.0, 0.0));
    let casimir_ab = diag(&|na, nb| 0.25 * (na - nb).powi(2) - 0.25);
    let j2 = diag(&|na, nb| 0.25 * (na + nb) * (na + nb + 2.0));
    let anti = |x: &SparseMatrix, y: &SparseMatrix| mul(x, y).add(&mul(y, x)).expect("same shape");
    let k2 = SparseMatrix::linear_combination(&[
        (one, &mul(&k0ab, &k0ab)),
        (c(-0.5, 0.0), &anti(&kpa, &kma)),
        (c(-0.5, 0.0), &anti(&kpb, &kmb)),
        (c(-0.25, 0.0), &mul(&jp, &jp)),
        (c(-0.25, 0.0), &mul(&jm, &jm)),
    ])
    .expect("same shape");

    GeneratorSet {
        basis: *basis,
        ops: vec![kpa, kma, kpb, kmb, kpab, kmab, k0ab, jp, jm, j0],
        aux: vec![number.clone(), nd, number, k0a, k0b, casimir_single.clone(), casimir_single, casimir_ab, j2, k2, identity],
        bosons,
    }
}

/// Where the printed value of a commutator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintedSource {
    /// A cell of the commutation table.
    Table,
    /// The stated relations with `K₀⁽ᵃᵇ⁾`.
    DiagonalRelation,
    /// Same-type raising or lowering pairs, stated to commute.
    Commuting,
}

/// Agreement between a derived commutator and its printed value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Match,
    /// Derived equals twice the printed value.
    FactorTwo,
    /// Derived equals minus the printed value.
    SignFlip,
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct CommutatorEntry {
    pub x: Generator,
    pub y: Generator,
    /// Expansion of `P[X,Y]P`, snapped.
    pub derived: Coefficients,
    /// Relative least-squares residual of the expansion.
    pub residual: f64,
    pub printed: Coefficients,
    pub source: PrintedSource,
    pub status: EntryStatus,
}

/// All 45 projected commutators with their comparison to the printed relations.
#[derive(Clone, Debug)]
pub struct CommutationTable {
    pub entries: Vec<CommutatorEntry>,
    pub report: VerificationReport,
}

impl CommutationTable {
    /// The entry for `[x, y]`, with coefficients negated when stored as `[y, x]`.
    pub fn commutator(&self, x: Generator, y: Generator) -> Option<(Coefficients, Coefficients)> {
        self.entries.iter().find_map(|e| {
            if (e.x, e.y) == (x, y) {
                Some((e.derived, e.printed))
            } else if (e.x, e.y) == (y, x) {
                let m = c(-1.0, 0.0);
                Some((e.derived.scale(m), e.printed.scale(m)))
            } else {
                None
            }
        })
    }

    pub fn with_status(&self, status: EntryStatus) -> Vec<&CommutatorEntry> {
        self.entries.iter().filter(|e| e.status == status).collect()
    }

    pub fn deviations(&self) -> Vec<&CommutatorEntry> {
        self.entries.iter().filter(|e| e.status != EntryStatus::Match).collect()
    }
}

/// Printed commutation relations as ordered `(X, Y, [X,Y])` triples.
pub fn printed_relations() -> Vec<(Generator, Generator, Coefficients, PrintedSource)> {
    use Generator::*;
    let co = Coefficients::from_terms;
    let rows = [KpA, KpB, KpAB, Jp, J0, Jm];
    let cols = [KmA, KmB, KmAB, Jp, J0, Jm];
    let table: [[Coefficients; 6]; 6] = [
        [co(&[(K0AB, -0.5), (J0, -0.5)]), co(&[]), co(&[(Jp, -1.0)]), co(&[]), co(&[(KpA, -1.0)]), co(&[(KpAB, -1.0)])],
        [co(&[]), co(&[(K0AB, -0.5), (J0, 0.5)]), co(&[(Jm, -1.0)]), co(&[(KpAB, -1.0)]), co(&[(KpB, -1.0)]), co(&[])],
        [co(&[(Jm, -1.0)]), co(&[(Jp, -1.0)]), co(&[(K0AB, -2.0)]), co(&[(KpA, -2.0)]), co(&[]), co(&[(KpB, -2.0)])],
        [co(&[(KmAB, -1.0)]), co(&[]), co(&[(KmB, -2.0)]), co(&[]), co(&[(Jp, -1.0)]), co(&[(J0, 2.0)])],
        [co(&[(KmA, -1.0)]), co(&[(KmB, 1.0)]), co(&[]), co(&[(Jp, 1.0)]), co(&[]), co(&[(Jm, -1.0)])],
        [co(&[]), co(&[(KmAB, -1.0)]), co(&[(KmA, -2.0)]), co(&[(J0, -2.0)]), co(&[(Jm, 1.0)]), co(&[])],
    ];
    let mut out: Vec<(Generator, Generator, Coefficients, PrintedSource)> = Vec::new();
    let seen = |out: &Vec<(Generator, Generator, Coefficients, PrintedSource)>, x: Generator, y: Generator| {
        out.iter().any(|&(p, q, _, _)| (p, q) == (x, y) || (p, q) == (y, x))
    };
    for (i, &x) in rows.iter().enumerate() {
        for (j, &y) in cols.iter().enumerate() {
            if x != y && !seen(&out, x, y) {
                out.push((x, y, table[i][j], PrintedSource::Table));
            }
        }
    }
    for g in Generator::ALL {
        if g == K0AB {
            continue;
        }
        let v = match g {
            KpA | KpB | KpAB => co(&[(g, 1.0)]),
            KmA | KmB | KmAB => co(&[(g, -1.0)]),
            _ => co(&[]),
        };
        out.push((K0AB, g, v, PrintedSource::DiagonalRelation));
    }
    for set in [[KpA, KpB, KpAB], [KmA, KmB, KmAB]] {
        for i in 0..3 {
            for j in i + 1..3 {
                out.push((set[i], set[j], co(&[]), PrintedSource::Commuting));
            }
        }
    }
    out
}

fn classify(derived: &Coefficients, printed: &Coefficients) -> EntryStatus {
    let close = |a: &Coefficients, b: &Coefficients| a.sub(b).max_abs() <= 1e-9;
    if close(derived, printed) {
        EntryStatus::Match
    } else if printed.max_abs() > 0.0 && close(derived, &printed.scale(c(2.0, 0.0))) {
        EntryStatus::FactorTwo
    } else if printed.max_abs() > 0.0 && close(derived, &printed.scale(c(-1.0, 0.0))) {
        EntryStatus::SignFlip
    } else {
        EntryStatus::Mismatch
    }
}

fn inner(a: &SparseMatrix, b: &SparseMatrix) -> C64 {
    a.iter().map(|(r, k, v)| v.conj() * b.get(r, k)).sum()
}

/// Least-squares expansion of `target` in span(`basis`) via a pivoted Gram solve.
///
/// Returns the coefficients and the residual Frobenius norm relative to `max(‖target‖, 1)`.
pub fn expand_in_span(target: &SparseMatrix, basis: &[SparseMatrix]) -> Result<(Vec<C64>, f64)> {
    let m = basis.len();
    let gram = ComplexMatrix::from_fn(m, m, |i, j| inner(&basis[i], &basis[j]));
    let rhs: Vec<C64> = basis.iter().map(|b| inner(b, target)).collect();
    let x = solve(&gram, &rhs)?;
    let mut terms: Vec<(C64, &SparseMatrix)> = vec![(c(1.0, 0.0), target)];
    terms.extend(basis.iter().zip(&x).map(|(b, &xi)| (-xi, b)));
    let resid = SparseMatrix::linear_combination(&terms)?.frobenius_norm();
    Ok((x, resid / target.frobenius_norm().max(1.0)))
}

fn interior_from_projector(gens: &GeneratorSet, p: &OperatorMatrix) -> Result<Vec<usize>> {
    if p.matrix.rows() != gens.basis().dim() || p.basis != *gens.basis() {
        return Err(Error::Dimension("projector and generators live on different bases".into()));
    }
    Ok(projector_indices(p))
}

fn interior_margin(basis: &FockBasis, idx: &[usize]) -> usize {
    let max_a = idx.iter().map(|&i| basis.state(i).0).max().unwrap_or(0);
    let max_b = idx.iter().map(|&i| basis.state(i).1).max().unwrap_or(0);
    (basis.cutoff_a() - max_a).min(basis.cutoff_b() - max_b)
}

/// Expands every projected commutator `P[X,Y]P` over the projected generators and
/// identity and compares the result with the printed relations.
pub fn verify_commutation_table(gens: &GeneratorSet, p: &OperatorMatrix) -> Result<CommutationTable> {
    let idx = interior_from_projector(gens, p)?;
    if idx.is_empty() || interior_margin(gens.basis(), &idx) < 2 {
        return Err(Error::InvalidArgument("commutation table needs an interior margin of at least 2".into()));
    }
    let restrict = |m: &SparseMatrix| m.submatrix(&idx, &idx);
    let mut span: Vec<SparseMatrix> = Generator::ALL.iter().map(|&g| restrict(gens.sparse(g))).collect();
    span.push(restrict(gens.aux(Auxiliary::Identity)));

    let mut report = VerificationReport::new("sp(4,R) commutation table");
    let mut entries = Vec::new();
    for (x, y, printed, source) in printed_relations() {
        let comm = gens.sparse(x).commutator(gens.sparse(y))?;
        let (coef, residual) = expand_in_span(&restrict(&comm), &span)?;
        let mut derived = Coefficients::zero();
        for (g, &z) in Generator::ALL.iter().zip(&coef) {
            derived[*g] = z;
        }
        derived.identity = coef[10];
        let derived = derived.snapped();
        let status = classify(&derived, &printed);
        report.push(format!("closure [{x},{y}]"), residual, 1e-10, format!("= {derived}"));
        if source == PrintedSource::DiagonalRelation {
            report.push(format!("relation [{x},{y}]"), derived.sub(&printed).max_abs(), 1e-12, format!("printed {printed}"));
        }
        if status != EntryStatus::Match {
            report.note(format!("[{x},{y}] {status:?}: derived {derived}, printed {printed}"));
        }
        entries.push(CommutatorEntry { x, y, derived, residual, printed, source, status });
    }
    let table = CommutationTable { entries, report };
    let (worked, _) = table.commutator(Generator::KpAB, Generator::KmA).expect("pair present");
    let mut report = table.report.clone();
    report.push(
        "worked entry [K+ab,K-a] = -J-",
        worked.sub(&Coefficients::from_terms(&[(Generator::Jm, -1.0)])).max_abs(),
        0.0,
        format!("derived {worked}"),
    );
    Ok(CommutationTable { entries: table.entries, report })
}

fn four_by_four() -> Vec<ComplexMatrix> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let m2 = |a: C64, b: C64, cc: C64, d: C64| [[a, b], [cc, d]];
    let sp = m2(z, o, z, z);
    let sm = m2(z, z, o, z);
    let s0 = m2(o, z, z, -o);
    let id = m2(o, z, z, o);
    let zero = m2(z, z, z, z);
    let mul = |x: [[C64; 2]; 2], y: [[C64; 2]; 2]| {
        let mut r = [[z; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                r[a][b] = x[a][0] * y[0][b] + x[a][1] * y[1][b];
            }
        }
        r
    };
    let sc = |s: C64, x: [[C64; 2]; 2]| [[s * x[0][0], s * x[0][1]], [s * x[1][0], s * x[1][1]]];
    let block = |tl: [[C64; 2]; 2], tr: [[C64; 2]; 2], bl: [[C64; 2]; 2], br: [[C64; 2]; 2]| {
        ComplexMatrix::from_fn(4, 4, |r, k| {
            let b = match (r / 2, k / 2) {
                (0, 0) => tl,
                (0, 1) => tr,
                (1, 0) => bl,
                _ => br,
            };
            b[r % 2][k % 2]
        })
    };
    let s0sq = mul(s0, s0);
    let kpa = block(zero, zero, sc(i, mul(sp, s0)), zero);
    let kma = block(zero, sc(-i, mul(s0, sm)), zero, zero);
    let kpb = block(zero, zero, sc(i, mul(s0, sm)), zero);
    let kmb = block(zero, sc(-i, mul(sp, s0)), zero, zero);
    let kpab = block(zero, zero, sc(i, s0sq), zero);
    let kmab = block(zero, sc(-i, s0sq), zero, zero);
    let k0ab = block(sc(c(0.5, 0.0), id), zero, zero, sc(c(-0.5, 0.0), id));
    let jp = block(sp, zero, zero, sc(-o, sp));
    let jm = block(sm, zero, zero, sc(-o, sm));
    let j0 = block(s0, zero, zero, s0);
    vec![kpa, kma, kpb, kmb, kpab, kmab, k0ab, jp, jm, j0]
}

/// The ten generators in the printed 4×4 matrix form, in [`Generator::ALL`] order.
pub fn matrix_rep_4x4() -> Vec<ComplexMatrix> {
    four_by_four()
}

/// Commutators of the printed 4×4 matrices compared with the printed relations.
///
/// Report only: every pair becomes a note marked `pass` or `deviation`.
pub fn matrix_rep_4x4_report() -> VerificationReport {
    let mats = four_by_four();
    let mut span: Vec<SparseMatrix> = mats.iter().map(SparseMatrix::from_dense).collect();
    span.push(SparseMatrix::identity(4));
    let mut report = VerificationReport::new("4x4 representation against the printed relations");
    let mut deviations = 0;
    for (x, y, printed, _) in printed_relations() {
        let comm = mats[x.index()].commutator(&mats[y.index()]).expect("4x4");
        let target = SparseMatrix::from_dense(&comm);
        let line = match expand_in_span(&target, &span) {
            Ok((coef, residual)) => {
                let mut d = Coefficients::zero();
                for (g, &z) in Generator::ALL.iter().zip(&coef) {
                    d[*g] = z;
                }
                d.identity = coef[10];
                let d = d.snapped();
                let ok = residual <= 1e-10 && classify(&d, &printed) == EntryStatus::Match;
                if !ok {
                    deviations += 1;
                }
                format!(
                    "{} [{x},{y}] = {d}{}; printed {printed}",
                    if ok { "pass" } else { "deviation" },
                    if residual > 1e-10 { format!(" (outside span, residual {residual:.2e})") } else { String::new() }
                )
            }
            Err(e) => {
                deviations += 1;
                format!("deviation [{x},{y}]: {e}")
            }
        };
        report.note(line);
    }
    report.note(format!("{deviations} of 45 pairs deviate"));
    report
}

/// `(n, m) = (n_a + n_b, n_a − n_b)` labels of a basis state.
pub fn nm_labels(na: usize, nb: usize) -> (i64, i64) {
    ((na + nb) as i64, na as i64 - nb as i64)
}

/// Checks the printed `(n, m)` shifts of every generator on interior states and that
/// all lowering operators annihilate the lowest states.
pub fn ladder_shift_report(gens: &GeneratorSet) -> VerificationReport {
    let basis = *gens.basis();
    let mut report = VerificationReport::new("ladder shifts");
    let expected = |g: Generator| -> (i64, i64) {
        match g {
            Generator::KpAB => (2, 0),
            Generator::KpA => (2, 2),
            Generator::KpB => (2, -2),
            Generator::KmAB => (-2, 0),
            Generator::KmA => (-2, -2),
            Generator::KmB => (-2, 2),
            Generator::Jp => (0, 2),
            Generator::Jm => (0, -2),
            Generator::K0AB | Generator::J0 => (0, 0),
        }
    };
    let interior = Interior::new(basis, 2.min(basis.cutoff_a()), 2.min(basis.cutoff_b())).expect("margin within cutoff");
    for g in Generator::ALL {
        let op = gens.sparse(g);
        let (dn, dm) = expected(g);
        let mut stray = 0.0f64;
        for col in interior.indices() {
            let (na, nb) = basis.state(col);
            let (n, m) = nm_labels(na, nb);
            for r in 0..basis.dim() {
                let v = op.get(r, col);
                if v.norm() == 0.0 {
                    continue;
                }
                let (ra, rb) = basis.state(r);
                if nm_labels(ra, rb) != (n + dn, m + dm) {
                    stray = stray.max(v.norm());
                }
            }
        }
        report.push(format!("{g}|n,m> -> |n{dn:+},m{dm:+}>"), stray, 0.0, "");
    }
    for (na, nb) in [(0, 0), (0, 1)] {
        let Ok(ket) = basis.ket(na, nb) else { continue };
        for g in [Generator::KmA, Generator::KmB, Generator::KmAB, Generator::Jm] {
            let v = gens.sparse(g).mul_vec(&ket).expect("dimension");
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            report.push(format!("{g}|{na},{nb}>_modes = 0"), norm, 0.0, "lowest state");
        }
    }
    report
}

/// Group numbers of a general Sp(4,R) state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sp4rLabels {
    pub n: f64,
    pub m: f64,
    pub mu: u32,
    pub sigma: f64,
}

impl Sp4rLabels {
    /// Exponents of `K₊⁽ᵃ⁾, K₊⁽ᵃᵇ⁾, K₊⁽ᵇ⁾, J₊` for a lowest state with `J₀ = −j`.
    pub fn exponents(&self, j: f64) -> Result<[u32; 4]> {
        let mu = self.mu as f64;
        let raw = [
            (self.n + self.m - mu - self.sigma) / 2.0,
            mu,
            (self.n - self.m - mu + self.sigma) / 2.0,
            j + self.sigma,
        ];
        let mut out = [0u32; 4];
        for (o, x) in out.iter_mut().zip(raw) {
            if !(x >= -1e-12 && (x - x.round()).abs() < 1e-12) {
                return Err(Error::InvalidArgument(format!("exponent {x} is not a non-negative integer")));
            }
            *o = x.round() as u32;
        }
        Ok(out)
    }
}

fn apply_raising(gens: &GeneratorSet, g: Generator, v: &[C64]) -> Result<Vec<C64>> {
    let basis = gens.basis();
    let (da, db) = g.occupation_shift();
    for (i, z) in v.iter().enumerate() {
        if z.norm() == 0.0 {
            continue;
        }
        let (na, nb) = basis.state(i);
        let annihilated = g == Generator::Jp && nb == 0;
        let (ta, tb) = (na as i64 + da, nb as i64 + db);
        if !annihilated && (ta > basis.cutoff_a() as i64 || tb > basis.cutoff_b() as i64) {
            return Err(Error::CutoffOverflow(format!("{g} lifts |{na},{nb}⟩ past the cutoff")));
        }
    }
    gens.sparse(g).mul_vec(v)
}

fn eigenvalue_of(op: &SparseMatrix, v: &[C64]) -> Result<f64> {
    let w = op.mul_vec(v)?;
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let lambda: C64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum::<C64>() / norm2;
    let defect: f64 = v.iter().zip(&w).map(|(a, b)| (b - lambda * a).norm_sqr()).sum::<f64>().sqrt();
    if defect > 1e-10 * norm2.sqrt().max(1.0) * (1.0 + lambda.norm()) {
        return Err(Error::InvalidArgument(format!("vector is not an eigenvector (defect {defect:.2e})")));
    }
    Ok(lambda.re)
}

/// Applies the printed powers of raising operators to a lowest state:
/// `(K₊⁽ᵃ⁾)^{(N+M−μ−σ)/2} (K₊⁽ᵃᵇ⁾)^μ (K₊⁽ᵇ⁾)^{(N−M−μ+σ)/2} (J₊)^{j+σ} |lowest⟩`.
///
/// The result is unnormalized and is checked to carry `J₀ = M`.
pub fn sp4r_state(labels: &Sp4rLabels, gens: &GeneratorSet, lowest: &[C64]) -> Result<Vec<C64>> {
    if lowest.len() != gens.basis().dim() {
        return Err(Error::Dimension(format!("state of length {} for dimension {}", lowest.len(), gens.basis().dim())));
    }
    if lowest.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::InvalidArgument("zero lowest state".into()));
    }
    for g in [Generator::KmA, Generator::KmB, Generator::KmAB, Generator::Jm] {
        let w = gens.sparse(g).mul_vec(lowest)?;
        if w.iter().any(|z| z.norm() > 1e-12) {
            return Err(Error::InvalidArgument(format!("{g} does not annihilate the lowest state")));
        }
    }
    let j = -eigenvalue_of(gens.sparse(Generator::J0), lowest)?;
    eigenvalue_of(gens.sparse(Generator::K0AB), lowest)?;
    let [ea, emu, eb, ej] = labels.exponents(j)?;
    let mut v = lowest.to_vec();
    for (g, e) in [(Generator::Jp, ej), (Generator::KpB, eb), (Generator::KpAB, emu), (Generator::KpA, ea)] {
        for _ in 0..e {
            v = apply_raising(gens, g, &v)?;
        }
    }
    if v.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::InvalidArgument("raising operators annihilate the lowest state".into()));
    }
    let m = eigenvalue_of(gens.sparse(Generator::J0), &v)?;
    if (m - labels.m).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("J0 eigenvalue {m} differs from M = {}", labels.m)));
    }
    Ok(v)
}

/// Group labels `(k, m₀, j, μ)` of the number state `|n, m⟩`.
pub fn quantum_number_map(n: u32, m: i64) -> Result<(f64, f64, f64, f64)> {
    if m.unsigned_abs() > n as u64 || (n as i64 - m).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!("(n, m) = ({n}, {m}) needs |m| ≤ n and n − m even")));
    }
    let (n, m) = (n as f64, m as f64);
    Ok(((m + 1.0) / 2.0, (n - m) / 2.0, n / 2.0, m / 2.0))
}
