//! Acceptance run: one line per criterion, plus supplementary lines.
//!
//! Criteria listed in `KNOWN_FAILURES` are computed exactly as stated and are
//! expected to fail; the test asserts that every other criterion passes and
//! that the known failures have not silently started passing.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sp4r::algebra::{build_generators, verify_commutation_table, Coefficients, EntryStatus, Generator};
use sp4r::fock::{interior_projector, sparse_boson_operators, FockBasis, Interior};
use sp4r::hamiltonian::{closed_form_spectrum, laguerre, laguerre_explicit, tilt_pipeline, wavefunction_overlap, EntryFlag, ReductionPath};
use sp4r::linalg::{c, hermitian_eigenvalues, SparseMatrix, C64};
use sp4r::models::ModelPreset;
use sp4r::tilt::{
    closed_form_error, closed_form_grid_report, coherent_oracle, displacement, grid_parameters, intertwining_report, perelomov_state,
    reduce_su11_form, reduce_su2_form, su11_series_length, tilt_grid, CoherentKind, DiscrepancyLedger,
};
use sp4r::verify::{compare_spectra, conjugated_uncoupled, convergence_scan, interaction_oracle, off_diagonal_fraction, verify_model, ModelCheck};
use sp4r::{FormulaMode, ModelParams, TiltKind};

const KNOWN_FAILURES: [&str; 2] = ["C3", "C10"];

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Criterion,
    Supplementary,
    Info,
}

struct Outcome {
    id: &'static str,
    kind: Kind,
    pass: bool,
    text: String,
}

#[derive(Default)]
struct Board {
    lines: Vec<Outcome>,
}

impl Board {
    fn record(&mut self, id: &'static str, kind: Kind, pass: bool, text: String) {
        let tag = match (kind, pass) {
            (Kind::Info, _) => "INFO",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        };
        let label = if kind == Kind::Criterion { id.to_string() } else { format!("{id}+") };
        println!("[{tag}] {label:<4} {text}");
        self.lines.push(Outcome { id, kind, pass, text });
    }

    fn criterion(&mut self, id: &'static str, pass: bool, text: String) {
        self.record(id, Kind::Criterion, pass, text);
    }

    fn extra(&mut self, id: &'static str, pass: bool, text: String) {
        self.record(id, Kind::Supplementary, pass, text);
    }

    fn info(&mut self, id: &'static str, text: String) {
        self.record(id, Kind::Info, true, text);
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, f64::max)
}

fn c1_boson_ccr(board: &mut Board) {
    let t = Instant::now();
    let basis = FockBasis::new(20, 20).unwrap();
    let [a, ad, b, bd] = sparse_boson_operators(&basis);
    let idx = Interior::uniform(basis, 2).unwrap().indices();
    let id = SparseMatrix::identity(basis.dim());
    let zero = SparseMatrix::zeros(basis.dim(), basis.dim());
    let ops = [(&a, "a"), (&ad, "a†"), (&b, "b"), (&bd, "b†")];
    let mut worst: f64 = 0.0;
    for (i, (x, _)) in ops.iter().enumerate() {
        for (j, (y, _)) in ops.iter().enumerate().skip(i + 1) {
            // Only [a, a†] and [b, b†] are non-zero.
            let want = if (i, j) == (0, 1) || (i, j) == (2, 3) { &id } else { &zero };
            let d = x.commutator(y).unwrap().sub(want).unwrap().submatrix(&idx, &idx).to_dense();
            worst = worst.max(d.norm_inf());
        }
    }
    let el = t.elapsed();
    board.criterion(
        "C1",
        worst <= 1e-12 && el < Duration::from_secs(1),
        format!("boson CCR, cutoff (20,20) margin 2, 6 commutators: max ‖P([x,y]−c)P‖∞ = {worst:.1e} (tol 1e-12), {}", secs(el)),
    );
}

fn c2_closure(board: &mut Board) {
    let t = Instant::now();
    let basis = FockBasis::new(12, 12).unwrap();
    let gens = build_generators(&basis);
    let table = verify_commutation_table(&gens, &interior_projector(&basis, 2).unwrap()).unwrap();
    let el = t.elapsed();
    let closure = max_over(&table.entries, |e| e.residual);
    let (worked, _) = table.commutator(Generator::KpAB, Generator::KmA).unwrap();
    let worked_exact = worked == Coefficients::from_terms(&[(Generator::Jm, -1.0)]);
    let f2: Vec<(Generator, Generator)> = table.with_status(EntryStatus::FactorTwo).iter().map(|e| (e.x, e.y)).collect();
    let diag_pairs = [(Generator::KpA, Generator::KmA), (Generator::KpB, Generator::KmB)];
    let f2_ok = f2.len() == 2 && diag_pairs.iter().all(|p| f2.contains(p) || f2.contains(&(p.1, p.0)));
    board.criterion(
        "C2",
        table.entries.len() == 45 && closure <= 1e-10 && worked_exact && f2_ok && el < Duration::from_secs(30),
        format!(
            "sp(4,R) closure on cutoff 12 margin 2: {} pairs, max residual {closure:.1e} (tol 1e-10); [K+ab,K-a] = {worked} exact: {worked_exact}; factor-2 entries {:?}; {}",
            table.entries.len(),
            f2.iter().map(|(x, y)| format!("[{x},{y}]")).collect::<Vec<_>>(),
            secs(el)
        ),
    );
    let others: Vec<String> =
        table.deviations().iter().filter(|e| e.status != EntryStatus::FactorTwo).map(|e| format!("[{},{}] {:?}", e.x, e.y, e.status)).collect();
    board.info("C2", format!("other deviations from the printed table: {}", others.join(", ")));
}

fn c3_tilting(board: &mut Board) {
    let t = Instant::now();
    let gens = build_generators(&FockBasis::new(24, 24).unwrap());
    let grid = tilt_grid(&[0.1, 0.3, 0.5], 8);
    let report = closed_form_grid_report(&gens, 8, &grid, FormulaMode::Verified, 1e-8).unwrap();
    let el = t.elapsed();

    // Ledger against numerics at a small tilt, where cutoff 20 is exact enough.
    let small = |k: TiltKind| grid_parameters(k, C64::from_polar(0.02, 0.4));
    let ledger = DiscrepancyLedger::build(small);
    let lgens = build_generators(&FockBasis::new(20, 20).unwrap());
    let p = interior_projector(lgens.basis(), 8).unwrap();
    let mut ledger_ok = true;
    let mut verified_small: f64 = 0.0;
    for kind in TiltKind::ALL {
        let params = small(kind);
        let d = displacement(&params, &lgens).unwrap();
        for g in Generator::ALL {
            let lit = closed_form_error(g, &params, &lgens, &d, &p, FormulaMode::Literal).unwrap();
            let ver = closed_form_error(g, &params, &lgens, &d, &p, FormulaMode::Verified).unwrap();
            verified_small = verified_small.max(ver);
            let listed = ledger.entries.iter().any(|e| e.kind == kind && e.generator == g && e.needs_correction());
            ledger_ok &= listed == (lit > 1e-6);
        }
    }
    let worst_kind = TiltKind::ALL
        .iter()
        .map(|k| (k, max_over(report.checks.iter().filter(|ch| ch.name.starts_with(k.name())), |ch| ch.residual)))
        .map(|(k, r)| format!("{k} {r:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    board.criterion(
        "C3",
        report.all_passed() && ledger_ok && el < Duration::from_secs(300),
        format!(
            "tilting closed forms vs expm on cutoff 24 margin 8, |z| ∈ {{0.1,0.3,0.5}} × 8 phases: {} of {} checks within 1e-8 (worst per kind: {worst_kind}); ledger lists {} corrected printed formulas, agreeing with numerics: {ledger_ok}; {}",
            report.passed_count(),
            report.checks.len(),
            ledger.corrections().len(),
            secs(el)
        ),
    );
    board.extra(
        "C3",
        verified_small <= 1e-8,
        format!("closed forms vs expm at |z| = 0.02, cutoff 20 margin 8, all kinds and generators: max error {verified_small:.1e} (tol 1e-8)"),
    );

    let t = Instant::now();
    let single = [TiltKind::Su11TwoMode, TiltKind::Su11ModeA, TiltKind::Su11ModeB, TiltKind::Su2, TiltKind::ProductAb];
    let g80 = build_generators(&FockBasis::new(80, 80).unwrap());
    let r = intertwining_report(&g80, 4, &grid, &single, 1e-8).unwrap();
    board.extra(
        "C3",
        r.all_passed(),
        format!(
            "intertwining X·D = D·C on cutoff 80, columns n ≤ 4, same grid, all kinds but sp4r_product: max {:.1e} (tol 1e-8), {}",
            r.max_residual(),
            secs(t.elapsed())
        ),
    );
    let t = Instant::now();
    let g150 = build_generators(&FockBasis::new(150, 150).unwrap());
    let r = intertwining_report(&g150, 4, &grid, &[TiltKind::Sp4rProduct], 1e-8).unwrap();
    board.extra(
        "C3",
        r.all_passed(),
        format!("intertwining for sp4r_product on cutoff 150, columns n ≤ 4, same grid: max {:.1e} (tol 1e-8), {}", r.max_residual(), secs(t.elapsed())),
    );
}

fn c4_jc(board: &mut Board) {
    let jc = ModelPreset::Jc { hbar: 1.0, omega0: 1.5, omega1: 1.0, kappa: 1.0 };
    let v = verify_model(&jc, &ModelCheck { cutoff: 60, margin: 4, n_max: 15, tol: 1e-8 }).unwrap();
    let dark = -jc.params().detuning_energy();
    let dark_found = v.table.unmatched.iter().any(|x| (x - dark).abs() <= 1e-12);
    board.criterion(
        "C4",
        v.interaction.all_passed() && dark_found,
        format!(
            "JC (ω0=1.5, ω1=1, κ=1) vs H_I oracle at cutoff 60, n ≤ 15: max residual {:.1e} (tol 1e-8); uncoupled level {dark} in unmatched list: {dark_found}",
            v.interaction.max_residual()
        ),
    );
    let full = v.full.unwrap();
    board.extra("C4", full.all_passed(), format!("JC printed full line vs H0 + H_I: max residual {:.1e} (tol 1e-8)", full.max_residual()));
}

fn c5_gjc(board: &mut Board) {
    let f = c(0.3, 0.0);
    let g = c(0.7, 0.0);
    let p = ModelPreset::GeneralizedJc { hbar: 1.0, f, g, mc2: 1.0 };
    let v = verify_model(&p, &ModelCheck { cutoff: 120, margin: 4, n_max: 15, tol: 1e-6 }).unwrap();
    let scan = convergence_scan(&p.params(), &[(40, 1), (80, 1), (120, 1)], (4, 1)).unwrap();
    let diffs: Vec<String> = scan.checks.iter().map(|ch| format!("{:.0e}", ch.residual)).collect();
    board.criterion(
        "C5",
        v.interaction.all_passed() && scan.all_passed() && !scan.checks.is_empty(),
        format!(
            "generalized JC (f=0.3, g=0.7, mc²=1) vs oracle at cutoff 120, n ≤ 15: max residual {:.1e} (tol 1e-6); cutoff scan 40→80→120 last differences of {} tracked eigenvalues [{}] (tol 1e-8)",
            v.interaction.max_residual(),
            scan.checks.len(),
            diffs.join(", ")
        ),
    );
}

fn c6_two_mode(board: &mut Board) {
    let check = ModelCheck { cutoff: 25, margin: 4, n_max: 10, tol: 1e-6 };
    let (l1, l2) = (0.8, 0.5);
    let mjc = ModelPreset::Mjc { hbar: 1.0, omega0: 2.3, omega1: 1.0, omega2: 1.0, lambda1: l1, lambda2: l2 };
    let (m1, m2) = (1.0, 0.3);
    let ajc = ModelPreset::JcAjc { hbar: 1.0, omega0: 0.3, omega1: 1.0, omega2: 1.0, lambda1: m1, lambda2: m2 };
    let vm = verify_model(&mjc, &check).unwrap();
    let va = verify_model(&ajc, &check).unwrap();
    let rm = tilt_pipeline(&mjc.params().alphas()).unwrap();
    let ra = tilt_pipeline(&ajc.params().alphas()).unwrap();
    let sm = (rm.reduction_slope().unwrap() - (l1 * l1 + l2 * l2)).abs();
    let sa = (ra.reduction_slope().unwrap() - (m1 * m1 - m2 * m2)).abs();
    let routes = rm.path == ReductionPath::Su2 && ra.path == ReductionPath::Su11TwoMode;
    board.criterion(
        "C6",
        vm.interaction.all_passed() && va.interaction.all_passed() && sm <= 1e-12 && sa <= 1e-12 && routes,
        format!(
            "MJC (λ=0.8,0.5) and JC-AJC (λ=1,0.3) vs H_I oracle at (25,25), n+m ≤ 10: max residual {:.1e} / {:.1e} (tol 1e-6); reduction slopes off by {sm:.1e} / {sa:.1e} (tol 1e-12) via {} / {}",
            vm.interaction.max_residual(),
            va.interaction.max_residual(),
            rm.path,
            ra.path
        ),
    );
    let ajc2 = ModelPreset::JcAjc { hbar: 1.0, omega0: 0.0, omega1: 1.0, omega2: 1.0, lambda1: 2.0, lambda2: 1.0 };
    let v25 = verify_model(&ajc2, &check).unwrap();
    let v40 = verify_model(&ajc2, &ModelCheck { cutoff: 40, ..check }).unwrap();
    board.extra(
        "C6",
        v40.interaction.all_passed(),
        format!(
            "JC-AJC with λ=(2,1): max residual {:.1e} at (25,25), {:.1e} at (40,40) (tol 1e-6); the squeezed sectors need the larger cutoff",
            v25.interaction.max_residual(),
            v40.interaction.max_residual()
        ),
    );
    for (name, v) in [("MJC", &vm), ("JC-AJC", &va)] {
        let full = v.full.as_ref().unwrap();
        board.info("C6", format!("{name} printed full line vs H0 + H_I: max residual {:.1e}", full.max_residual()));
    }
}

fn c7_dirac(board: &mut Board) {
    let p = ModelPreset::Dirac { hbar: 1.0, m: 1.0, c: 1.0, omega: 0.05 };
    let v = verify_model(&p, &ModelCheck { cutoff: 60, margin: 4, n_max: 15, tol: 1e-10 }).unwrap();
    let real = v.table.entries.iter().filter(|e| e.flag != EntryFlag::NonReal).count();
    let non_real: Vec<_> = v.table.entries.iter().filter(|e| e.flag == EntryFlag::NonReal).collect();
    let none_matched = non_real.iter().all(|e| e.oracle_plus.is_none() && e.oracle_minus.is_none());
    board.criterion(
        "C7",
        v.interaction.all_passed() && none_matched && !non_real.is_empty(),
        format!(
            "Dirac oscillator (m=c=ħ=1, ω=0.05) vs diagonal uncoupled operator, n ≤ 15: {real} real entries, max residual {:.1e} (tol 1e-10); {} non-real entries flagged, none matched: {none_matched}",
            v.interaction.max_residual(),
            non_real.len()
        ),
    );
}

fn c8_coherent(board: &mut Board) {
    let xis: Vec<C64> = tilt_grid(&[0.1, 0.3, 0.5], 4).into_iter().map(|z| z * C64::from_polar(1.0, 0.3)).collect();
    let (mut norm_err, mut coef_err): (f64, f64) = (0.0, 0.0);
    let mut count = 0;
    for &xi in &xis {
        for k in [0.25, 0.5, 0.75, 1.0] {
            for n in 0..3 {
                let len = su11_series_length(k, n, xi);
                let a = perelomov_state(CoherentKind::Su11, k, n, xi, len).unwrap();
                let o = coherent_oracle(CoherentKind::Su11, k, n, xi, len).unwrap();
                norm_err = norm_err.max((a.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs());
                coef_err = coef_err.max(max_over(a.iter().zip(&o), |(x, y)| (x - y).norm()));
                count += 1;
            }
        }
        for j in [0.5, 1.0, 1.5] {
            for n in 0..=(2.0 * j) as usize {
                let a = perelomov_state(CoherentKind::Su2, j, n, xi, 0).unwrap();
                let o = coherent_oracle(CoherentKind::Su2, j, n, xi, 0).unwrap();
                norm_err = norm_err.max((a.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs());
                coef_err = coef_err.max(max_over(a.iter().zip(&o), |(x, y)| (x - y).norm()));
                count += 1;
            }
        }
    }
    board.criterion(
        "C8",
        norm_err <= 1e-10 && coef_err <= 1e-8,
        format!(
            "coherent and number-coherent states, {count} cases (|ξ| ≤ 0.5, k ∈ {{1/4,1/2,3/4,1}}, j ∈ {{1/2,1,3/2}}): max |⟨ζ|ζ⟩−1| {norm_err:.1e} (tol 1e-10), max entry error vs expm {coef_err:.1e} (tol 1e-8)"
        ),
    );
}

fn sector_spectrum(x: &Coefficients, cutoff: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<f64> {
    let basis = FockBasis::new(cutoff, cutoff).unwrap();
    let gens = build_generators(&basis);
    let idx: Vec<usize> = basis.states().enumerate().filter(|(_, (a, b))| keep(*a, *b)).map(|(i, _)| i).collect();
    hermitian_eigenvalues(&x.assemble(&gens).submatrix(&idx, &idx).to_dense()).unwrap()
}

fn c9_reductions(board: &mut Board) {
    let r11 = reduce_su11_form(c(5.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)).unwrap();
    let mut x = Coefficients::zero();
    x[Generator::K0AB] = c(5.0, 0.0);
    x[Generator::KpAB] = c(2.0, 0.0);
    x[Generator::KmAB] = c(2.0, 0.0);
    let ev = sector_spectrum(&x, 80, |a, b| a == b);
    let spacing = max_over(ev.windows(2).take(6), |w| (w[1] - w[0] - 3.0).abs());

    let r2 = reduce_su2_form(c(3.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)).unwrap();
    let mut y = Coefficients::zero();
    y[Generator::J0] = c(3.0, 0.0);
    y[Generator::Jp] = c(2.0, 0.0);
    y[Generator::Jm] = c(2.0, 0.0);
    let ev2 = sector_spectrum(&y, 6, |a, b| a + b == 4);
    let spacing2 = max_over(ev2.windows(2), |w| (w[1] - w[0] - 5.0).abs());

    let mut domain_ok = true;
    let mut cases = 0;
    for a0 in [1.0, 2.0, 5.0, -3.0] {
        for ratio in [0.0, 0.5, 0.99, 0.999_999, 1.0, 1.000_001, 1.5, 4.0] {
            let a1 = ratio * f64::abs(a0) / 2.0;
            let err = reduce_su11_form(c(a0, 0.0), c(a1, 0.0), c(a1, 0.0)).is_err();
            domain_ok &= err == (ratio >= 1.0);
            cases += 1;
        }
    }
    board.criterion(
        "C9",
        spacing <= 1e-8 && (r11.slope - 3.0).abs() <= 1e-8 && (r2.slope - 5.0).abs() <= 1e-12 && spacing2 <= 1e-8 && domain_ok,
        format!(
            "reductions: su(1,1) slope {} and N_d = 0 sector spacing off by {spacing:.1e} (tol 1e-8); su(2) slope off by {:.1e} (tol 1e-12), N = 4 shell spacing off by {spacing2:.1e}; domain errors exactly at ratio ≥ 1 in {cases} cases: {domain_ok}",
            r11.slope,
            (r2.slope - 5.0).abs()
        ),
    );
}

fn c10_wavefunctions(board: &mut Board) {
    let mut printed: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for n1 in 0..=4 {
        for m1 in 0..=4 {
            for n2 in 0..=4 {
                for m2 in 0..=4 {
                    let o = wavefunction_overlap(n1, m1, n2, m2).unwrap();
                    let want = if (n1, m1) == (n2, m2) { 1.0 } else { 0.0 };
                    printed = printed.max((o - c(want, 0.0)).norm());
                    unit = unit.max((o / 2.0 - c(want, 0.0)).norm());
                }
            }
        }
    }
    let mut lag: f64 = 0.0;
    for n in 0..=10 {
        for alpha in [0.0, 1.0, 2.0, 3.0, 4.0, 0.5] {
            for x in [0.0, 0.1, 1.0, 2.5, 5.0, 10.0] {
                let e = laguerre_explicit(n, alpha, x);
                lag = lag.max((laguerre(n, alpha, x) - e).abs() / e.abs().max(1.0));
            }
        }
    }
    board.criterion(
        "C10",
        printed <= 1e-6 && lag <= 1e-10,
        format!("wavefunctions as printed, n_l, m_n ≤ 4: max |⟨φ|φ'⟩ − δ| = {printed:.3} (tol 1e-6); Laguerre recurrence vs explicit sum, n ≤ 10: {lag:.1e} (tol 1e-10)"),
    );
    board.extra("C10", unit <= 1e-6, format!("same functions with the prefactor √2 removed: max |⟨φ|φ'⟩ − δ| = {unit:.1e} (tol 1e-6)"));
}

/// A random Hermitian SU(2)-routed coupling set with `α₅ = α₆`.
fn random_su2_family(rng: &mut ChaCha8Rng) -> ModelParams {
    let mut z = || C64::from_polar(rng.gen_range(0.3..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
    let (u, w) = (z(), z());
    let w = w * (u.norm() / w.norm());
    let zero = c(0.0, 0.0);
    let mut p = ModelParams { omega0: 0.0, omega1: 0.0, omega2: 0.0, kappa: [zero; 4], gamma: [zero; 4], hbar: 1.0 };
    p.omega0 = rng.gen_range(0.5..3.0);
    p.omega1 = rng.gen_range(0.2..1.5);
    p.omega2 = rng.gen_range(0.2..1.5);
    if rng.gen_bool(0.5) {
        p.kappa[0] = u;
        p.kappa[2] = w;
    } else {
        p.kappa[1] = u;
        p.kappa[3] = w;
    }
    // Hermitian H_I: γ = (κ₂*, κ₁*, κ₄*, κ₃*).
    p.gamma = [p.kappa[1].conj(), p.kappa[0].conj(), p.kappa[3].conj(), p.kappa[2].conj()];
    p
}

fn c11_pipeline(board: &mut Board) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2011);
    let basis = FockBasis::new(30, 30).unwrap();
    let interior = Interior::uniform(basis, 15).unwrap();
    let (mut off, mut energy): (f64, f64) = (0.0, 0.0);
    let mut all_ok = true;
    for _ in 0..20 {
        let p = random_su2_family(&mut rng);
        assert!(p.is_hermitian() && p.alphas().condition_holds());
        let r = tilt_pipeline(&p.alphas()).unwrap();
        off = off.max(off_diagonal_fraction(&conjugated_uncoupled(&p, &r, &interior).unwrap()));
        let mut table = closed_form_spectrum(&p, 10).unwrap();
        table.entries.retain(|e| e.n as i64 + e.m <= 10);
        let rep = compare_spectra(&mut table, &interaction_oracle(&p, &interior).unwrap(), 1e-6);
        all_ok &= rep.all_passed();
        energy = energy.max(rep.max_residual());
    }
    board.criterion(
        "C11",
        off <= 1e-6 && energy <= 1e-6 && all_ok,
        format!(
            "pipeline on 20 seeded random Hermitian SU(2)-routed sets with α5 = α6, cutoff (30,30) margin 15: off-diagonal fraction {off:.1e} (tol 1e-6), energies vs oracle {energy:.1e} (tol 1e-6)"
        ),
    );
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sp4r")
}

fn jc_config() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/jc.cfg").to_string()
}

fn c12_cli(board: &mut Board) {
    let run = |args: &[&str]| Command::new(bin()).args(args).output().unwrap();
    let cfg = jc_config();
    let a = run(&["spectrum", "--config", &cfg]);
    let b = run(&["spectrum", "--config", &cfg]);
    let golden = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/jc_spectrum.csv")).unwrap();
    let identical = a.stdout == b.stdout && a.stdout == golden;
    let first = String::from_utf8_lossy(&a.stdout).lines().nth(1).unwrap_or("").to_string();
    let first_ok = first.starts_with("0,0,1.0000000000000000e0,-1.0000000000000000e0,true");

    let dir = std::env::temp_dir().join(format!("sp4r-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cfg");
    std::fs::write(&bad, "model = jc\nkappa = one\n").unwrap();
    let bad = bad.to_string_lossy().to_string();
    let codes: BTreeMap<&str, (i32, i32)> = [
        ("spectrum jc", (run(&["spectrum", "--config", &cfg]).status.code().unwrap(), 0)),
        ("verify algebra", (run(&["verify", "algebra", "--cutoff", "12", "--margin", "2"]).status.code().unwrap(), 0)),
        ("failing tilting check", (run(&["verify", "tilting", "--cutoff", "8", "--margin", "2", "--phases", "1"]).status.code().unwrap(), 1)),
        ("malformed config", (run(&["spectrum", "--config", &bad]).status.code().unwrap(), 2)),
        ("unknown flag", (run(&["spectrum", "--bogus"]).status.code().unwrap(), 2)),
        ("negative index", (run(&["wavefunction", "--nl", "-1", "--mn", "0", "--rho", "0", "--phi", "0"]).status.code().unwrap(), 2)),
    ]
    .into_iter()
    .collect();
    let _ = std::fs::remove_dir_all(&dir);
    let codes_ok = codes.values().all(|(got, want)| got == want);
    let summary: Vec<String> = codes.iter().map(|(k, (g, w))| format!("{k} {g}/{w}")).collect();
    board.criterion(
        "C12",
        identical && first_ok && codes_ok,
        format!("CLI: JC spectrum byte-identical across runs and to the golden file: {identical}; first row {first}; exit codes (got/want) {}", summary.join(", ")),
    );
}

#[test]
fn acceptance() {
    let mut board = Board::default();
    let t = Instant::now();
    c1_boson_ccr(&mut board);
    c2_closure(&mut board);
    c3_tilting(&mut board);
    c4_jc(&mut board);
    c5_gjc(&mut board);
    c6_two_mode(&mut board);
    c7_dirac(&mut board);
    c8_coherent(&mut board);
    c9_reductions(&mut board);
    c10_wavefunctions(&mut board);
    c11_pipeline(&mut board);
    c12_cli(&mut board);
    println!("acceptance run took {}", secs(t.elapsed()));

    let mut problems = Vec::new();
    for o in &board.lines {
        let known = KNOWN_FAILURES.contains(&o.id);
        match o.kind {
            Kind::Criterion if known && o.pass => problems.push(format!("{} now passes; update KNOWN_FAILURES", o.id)),
            Kind::Criterion | Kind::Supplementary if !known && !o.pass => problems.push(format!("{} failed: {}", o.id, o.text)),
            Kind::Supplementary if known && !o.pass => problems.push(format!("{} supplementary failed: {}", o.id, o.text)),
            _ => {}
        }
    }
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}
