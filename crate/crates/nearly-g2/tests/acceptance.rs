//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Two criteria fail on a faithful implementation. Criterion 6 fails
//! because three operator identities, as displayed, are off by exactly 3.
//! Criterion 7 fails because the Killing spinors do not sit in (0,0,1).
//! The binary exits successfully when every outcome, including those two
//! failures and their exact signatures, is as recorded, and fails otherwise.

use std::process::ExitCode;
use std::time::Instant;

use nearly_g2::peterweyl::*;
use nearly_g2::{clifford, g2algebra, homogeneous, CheckReport, Rational, Status};

const TOL: f64 = 1e-8;

struct Line {
    n: u32,
    pass: bool,
    expect_pass: bool,
    signature_ok: bool,
    summary: String,
}

fn exact_zero(r: &CheckReport, names: &[&str]) -> bool {
    names.iter().all(|n| r.get(n).is_some_and(|c| c.status == Status::Pass && c.residual == Some(0.0)))
}

fn main() -> ExitCode {
    let mut lines = Vec::new();

    // 1
    let t = Instant::now();
    let suite = g2algebra::identity_suite::<Rational>(7, 100, 0.0);
    let secs = t.elapsed().as_secs_f64();
    let zero = suite.checks.iter().all(|c| c.residual == Some(0.0));
    lines.push(Line {
        n: 1,
        pass: suite.all_pass() && zero && suite.checks.len() == 13 && secs < 30.0,
        expect_pass: true,
        signature_ok: true,
        summary: format!("exact identity suite: {} identities x 100 rational inputs, all residuals 0, {secs:.2}s", suite.checks.len()),
    });

    // 2, 3
    let inv = g2algebra::invariant_suite::<Rational>(7, 100, 0.0);
    lines.push(Line {
        n: 2,
        pass: exact_zero(&inv, &["exterior.star-phi", "exterior.phi-wedge-psi"]),
        expect_pass: true,
        signature_ok: true,
        summary: "∗φ₀ = ψ₀ coefficient for coefficient, φ₀∧ψ₀ = 7 vol".into(),
    });
    lines.push(Line {
        n: 3,
        pass: exact_zero(&inv, &["algebra.j-after-i", "algebra.i-image"]) && inv.get("algebra.i-rank").is_some_and(|c| c.status == Status::Pass),
        expect_pass: true,
        signature_ok: true,
        summary: "j∘i = −8 on Sym₀, i(Sym₀) ⊆ ker(∧φ) ∩ ker(∧ψ) with rank 27".into(),
    });
    let cliff = clifford::clifford_suite::<Rational>(7, 100, 0.0);
    assert!(cliff.all_pass(), "Clifford relations");

    // 4
    let curv = homogeneous::curvature_suite::<Rational>(0.0);
    lines.push(Line {
        n: 4,
        pass: exact_zero(&curv, &["curvature.einstein", "curvature.canonical-ricci", "curvature.difference", "curvature.bianchi"]),
        expect_pass: true,
        signature_ok: true,
        summary: "Ric = 6g, canonical Ric = 16/3 g, curvature difference and ⅔χ Bianchi residuals exactly 0".into(),
    });

    // 5
    let t = Instant::now();
    let blocks = match build_blocks(3, None) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("block construction failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let build_secs = t.elapsed().as_secs_f64();
    let spec = bundle_spectrum(&blocks, Bundle::Functions, 1).expect("function spectrum");
    let seven = spec.eigenvalues.iter().find(|l| (l.value - 7.0).abs() < TOL);
    lines.push(Line {
        n: 5,
        pass: seven.is_some_and(|l| l.multiplicity == 8 && l.weights == vec![[0, 0, 1]]),
        expect_pass: true,
        signature_ok: true,
        summary: match seven {
            Some(l) => format!("Δ on functions: eigenvalue {:.10} with multiplicity {} at {:?}", l.value, l.multiplicity, l.weights),
            None => "Δ on functions: eigenvalue 7 missing".into(),
        },
    });

    // 6
    let t = Instant::now();
    let ids = operator_identity_suite(&blocks, 3, TOL);
    let secs = build_secs + t.elapsed().as_secs_f64();
    let failing: Vec<&str> = {
        let mut v: Vec<&str> = ids.failures().map(|c| c.name.as_str()).collect();
        v.dedup();
        v
    };
    let as_printed = ["lichnerowicz-twisted-as-printed", "twisted-dirac-square-difference", "twisted-dirac-square-difference-local"];
    // each failing identity is off by the scalar 3 on every block where the
    // bundle is present
    let off_by_three = ids.failures().all(|c| c.residual.is_some_and(|r| (r - 3.0).abs() < TOL));
    let corrected = ["lichnerowicz-twisted", "twisted-dirac-square-difference-corrected", "twisted-dirac-square-difference-local-corrected"];
    let corrected_pass = corrected.iter().all(|n| ids.named(n).count() == 20 && ids.named(n).all(|c| c.status == Status::Pass));
    lines.push(Line {
        n: 6,
        pass: ids.all_pass() && secs < 300.0,
        expect_pass: false,
        signature_ok: failing == as_printed.to_vec() && off_by_three && corrected_pass && secs < 300.0,
        summary: format!(
            "operator identities on 20 weights: {} checks, {} failing ({}), each off by exactly 3; corrected constants pass; {secs:.1}s",
            ids.checks.len(),
            ids.failures().count(),
            failing.join(", ")
        ),
    });

    // 7..11 share the spectral report
    let spectra = spectral_report(&blocks, 3, KERNEL_TOL).expect("spectral report");
    let k: Vec<[u32; 3]> = spectra.blocks.iter().filter(|b| b.killing > 0).map(|b| b.weight).collect();
    let agree = spectra.blocks.iter().all(|b| b.killing == b.dirac_killing);
    let total = spectra.totals.killing;
    lines.push(Line {
        n: 7,
        pass: total == 8 && agree && k == vec![[0, 0, 1]],
        expect_pass: false,
        signature_ok: total == 8 && agree && k == vec![[0, 0, 0], [1, 0, 0]],
        summary: format!(
            "Killing spinors: total {total}, Killing kernel and D eigenvalue −7/2 agree blockwise: {agree}, located at {k:?} instead of [[0, 0, 1]]"
        ),
    });

    let b = theorem_check(Theorem::B, &spectra);
    let per_block = ["theorem-b-rarita-schwinger", "rarita-schwinger-fields"].iter().all(|n| b.named(n).all(|c| c.status == Status::Pass));
    lines.push(Line {
        n: 8,
        pass: per_block && spectra.totals.ker_q == 0 && spectra.totals.r_gamma == 0,
        expect_pass: true,
        signature_ok: true,
        summary: format!(
            "ker Q ∩ S₃/₂ = R_γ on all {} blocks; totals {} and {}",
            spectra.blocks.len(),
            spectra.totals.ker_q,
            spectra.totals.r_gamma
        ),
    });

    let a = theorem_check(Theorem::A, &spectra);
    let a_ok = ["theorem-a-deformations", "linearized-killing-equation", "d1-killing-complement"]
        .iter()
        .all(|n| a.named(n).count() > 0 && a.named(n).all(|c| c.status == Status::Pass));
    lines.push(Line {
        n: 9,
        pass: a_ok,
        expect_pass: true,
        signature_ok: true,
        summary: format!(
            "deformations = D₃ + K₊ on all blocks (D₃ total {}, K₊ total {}); dim D₁ = {} = dim K₊ − 1",
            spectra.totals.d3, spectra.totals.killing, spectra.totals.d1
        ),
    });

    let s5 = ["rarita-schwinger-one-form-part", "rs-space-eigen-decomposition", "rs-space-exact", "d-delta-piece-empty"];
    let s5_ok = s5.iter().all(|n| b.named(n).count() == 20 && b.named(n).all(|c| c.status == Status::Pass));
    let worst = b.max_residual("rarita-schwinger-one-form-part").unwrap_or(f64::NAN);
    lines.push(Line {
        n: 10,
        pass: s5_ok,
        expect_pass: true,
        signature_ok: true,
        summary: format!("Λ¹ part of RS fields vanishes (max {worst:.1e}); constrained space = (∗d = −½) + (∗d = −3/2), dδ = −¾ piece empty"),
    });

    let cert = instability_certificate(&spectra);
    let witness = cert.get("instability-witness").map(|c| c.details.clone()).unwrap_or_default();
    lines.push(Line {
        n: 11,
        pass: cert.all_pass() && cert.max_residual("r-h-laplacian").is_some_and(|r| r < TOL) && witness.starts_with("no witness"),
        expect_pass: true,
        signature_ok: true,
        summary: format!("R_H ⊆ ker(Δ − 13/4) blockwise, 13/4 − 2·6 = {}, {witness}", instability_constant()),
    });

    let mut ok = true;
    for l in &lines {
        let status = if l.pass { "PASS" } else { "FAIL" };
        let note = match (l.pass, l.expect_pass, l.signature_ok) {
            (true, true, _) => "",
            (false, false, true) => "  [known defect, signature matches]",
            _ => {
                ok = false;
                "  [UNEXPECTED]"
            }
        };
        println!("criterion {:>2}: {status}  {}{note}", l.n, l.summary);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
