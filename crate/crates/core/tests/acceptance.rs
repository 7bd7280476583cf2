//! Acceptance checks. Runs without the libtest harness and prints one
//! `PASS` or `FAIL` line per criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use mprod::imaging::{compress, quantize, ImageRGB};
use mprod::kernels::matrix_rank;
use mprod::symbolic::{
    sym_m_product, sym_outer_inverse, sym_pinv, BigRational, Poly, RatFun, SymTensor3, SymTransform,
};
use mprod::*;
use rand::Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn within(limit: Duration, start: Instant) -> std::result::Result<(), String> {
    let took = start.elapsed();
    check(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn residuals_below(r: &GinvReport, bound: f64) -> std::result::Result<(), String> {
    for (k, v) in &r.residuals {
        check(*v <= bound, format!("{k} = {v:e} > {bound:e}"))?;
    }
    Ok(())
}

fn c1_pinv_three_cube() -> Outcome {
    let start = Instant::now();
    let (a, m) = full_tubal();
    let r = pinv_frd(&a, &m, &tol()).map_err(|e| e.to_string())?;
    let d = max_diff(&r.x, &full_tubal_pinv());
    check(d <= 1e-3, format!("entrywise gap {d:e}"))?;
    residuals_below(&r, 1e-10)?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("max gap {d:.1e}, max residual {:.1e}", r.max_residual()))
}

fn c2_pinv_exact_fractions() -> Outcome {
    let start = Instant::now();
    let a = rank_123_a();
    let m = corner_shear();
    let want = rank_123_a_pinv();
    let mut worst = 0.0f64;
    for r in [pinv_qdr(&a, &m, &tol()), pinv_frd(&a, &m, &tol())] {
        let x = r.map_err(|e| e.to_string())?.x;
        for (k, slice) in want.iter().enumerate() {
            for (i, row) in slice.iter().enumerate() {
                for (j, &(n, d)) in row.iter().enumerate() {
                    worst = worst.max((x.get(i, j, k) - Complex64::new(n as f64 / d as f64, 0.0)).norm());
                }
            }
        }
    }
    check(worst <= 1e-10, format!("entrywise gap {worst:e}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("both methods within {worst:.1e}"))
}

fn c3_drazin() -> Outcome {
    let start = Instant::now();
    let a = index_123();
    let m = corner_shear();
    let idx = multi_index(&a, &m, &tol()).map_err(|e| e.to_string())?;
    check(idx.indices == [1, 2, 3], format!("multi-index {:?}", idx.indices))?;
    let mut worst = 0.0f64;
    for r in [drazin_frd(&a, &m, &tol()), drazin_qdr(&a, &m, &tol())] {
        let r = r.map_err(|e| e.to_string())?;
        worst = worst.max(max_diff(&r.x, &index_123_drazin()));
        residuals_below(&r, 1e-10)?;
    }
    check(worst <= 1e-3, format!("entrywise gap {worst:e}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("max gap {worst:.1e}"))
}

fn below_pattern(a: &Tensor3, m: &Transform, keep: impl Fn(usize, usize) -> bool) -> f64 {
    let hat = to_transform_domain(a, m).unwrap();
    let scale = hat.max_abs().max(1.0);
    let (r, c, p) = hat.dims();
    let mut worst = 0.0f64;
    for k in 0..p {
        for i in 0..r {
            for j in 0..c {
                if !keep(i, j) {
                    worst = worst.max(hat.get(i, j, k).norm() / scale);
                }
            }
        }
    }
    worst
}

fn c4_qdr() -> Outcome {
    let start = Instant::now();
    let a = rank_123_b();
    let m = corner_shear();
    let f = tensor_qdr(&a, &m, &tol()).map_err(|e| e.to_string())?;
    let err = (&a - &f.reconstruct(&m).map_err(|e| e.to_string())?).fro_norm();
    check(err <= 1e-12, format!("reconstruction {err:e}"))?;
    let mq = multirank(&f.q, &m, &tol()).map_err(|e| e.to_string())?;
    let mr = multirank(&f.r, &m, &tol()).map_err(|e| e.to_string())?;
    check(mq.ranks == [1, 2, 3], format!("mrk(Q) = {:?}", mq.ranks))?;
    check(mr.ranks == [1, 2, 3], format!("mrk(R) = {:?}", mr.ranks))?;
    let off_diag = below_pattern(&f.d, &m, |i, j| i == j);
    check(off_diag <= 1e-14, format!("D off-diagonal {off_diag:e}"))?;
    let lower = below_pattern(&f.r, &m, |i, j| i <= j);
    check(lower <= 1e-14, format!("R below diagonal {lower:e}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("reconstruction {err:.1e}"))
}

fn c5_frd() -> Outcome {
    let (a, m) = mixed_rank();
    let f = tensor_frd(&a, &m, &tol()).map_err(|e| e.to_string())?;
    let err = (&a - &f.reconstruct(&m).map_err(|e| e.to_string())?).fro_norm();
    check(err <= 1e-12, format!("reconstruction {err:e}"))?;
    let mrk = multirank(&a, &m, &tol()).map_err(|e| e.to_string())?;
    check(mrk.ranks == [1, 2], format!("multirank {:?}", mrk.ranks))?;
    let sts = m_product(&m_transpose(&f.s, &m).unwrap(), &f.s, &m).unwrap();
    check(
        m_inverse(&sts, &m, &tol()).is_err(),
        "S^T*S inverted despite mixed multirank",
    )?;

    let mut rng = rng(55);
    for trial in 0..100 {
        let p = rng.gen_range(1..=4);
        let (rows, cols) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let r = rng.gen_range(1..=rows.min(cols));
        let tr = random_transform(&mut rng, p);
        let a = with_multirank(&mut rng, rows, cols, &vec![r; p], &tr);
        let f = tensor_frd(&a, &tr, &tol()).map_err(|e| format!("trial {trial}: {e}"))?;
        let sts = m_product(&m_transpose(&f.s, &tr).unwrap(), &f.s, &tr).unwrap();
        let ttt = m_product(&f.t, &m_transpose(&f.t, &tr).unwrap(), &tr).unwrap();
        for (name, g) in [("S^T*S", sts), ("T*T^T", ttt)] {
            let inv = m_inverse(&g, &tr, &tol()).map_err(|e| format!("trial {trial}: {name}: {e}"))?;
            let eye = m_identity(r, p, &tr).unwrap();
            let gap = (&m_product(&g, &inv, &tr).unwrap() - &eye).fro_norm();
            check(gap <= 1e-8, format!("trial {trial}: {name} inverse gap {gap:e}"))?;
        }
    }
    Ok(format!(
        "reconstruction {err:.1e}, 100 constant-multirank trials invertible"
    ))
}

fn c6_symbolic_outer() -> Outcome {
    let start = Instant::now();
    let z = sym_outer_inverse(&exp_pade_a(), &exp_pade_w(), &sym_transform_12_11()).map_err(|e| e.to_string())?;
    let num = Poly::from_ints(&[6, 6, 3, 1]);
    let expected = [
        ((0, 0, 0), Poly::from_ints(&[0, 6])),
        ((1, 0, 1), Poly::from_ints(&[6, 6])),
    ];
    for ((i, j, k), den) in &expected {
        check(
            RatFun::cross_equal(&num, den, z.get(*i, *j, *k)),
            format!("Z({i},{j},{k}) = {}", z.get(*i, *j, *k)),
        )?;
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                if !expected.iter().any(|(ix, _)| *ix == (i, j, k)) {
                    check(
                        z.get(i, j, k).is_zero(),
                        format!("Z({i},{j},{k}) = {} is not 0", z.get(i, j, k)),
                    )?;
                }
            }
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!(
        "two entries by cross-multiplication, six exact zeros, {:?}",
        start.elapsed()
    ))
}

fn c7_symbolic_pinv() -> Outcome {
    let start = Instant::now();
    let x = sym_pinv(&exp_pade_a(), &sym_transform_12_11()).map_err(|e| e.to_string())?;
    let want = exp_pade_pinv();
    for ((i, j, k), n, d) in &want {
        let got = x.get(*i, *j, *k);
        check(
            RatFun::cross_equal(&Poly::from_ints(n), &Poly::from_ints(d), got),
            format!("entry ({i},{j},{k}) = {got}"),
        )?;
    }
    for j in 0..2 {
        for k in 0..2 {
            check(
                x.get(1, j, k).is_zero(),
                format!("entry (1,{j},{k}) = {} is not 0", x.get(1, j, k)),
            )?;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "four degree-13 entries and the zero row, {:?}",
        start.elapsed()
    ))
}

/// Per-slice ranks start at 1: a zero slice built in the transform domain
/// comes back from `M^-1` then `M` as roundoff, which the relative rank rule
/// counts as full rank.
fn random_ranks(rng: &mut impl Rng, p: usize, cap: usize) -> Vec<usize> {
    (0..p).map(|_| rng.gen_range(1..=cap)).collect()
}

/// Square tensor whose transform-domain slices are `P diag(G, N) P^-1` with
/// `G` invertible and `N` a nilpotent shift, so indices vary across slices.
fn with_index_profile(rng: &mut impl Rng, n: usize, tr: &Transform) -> Tensor3 {
    let p = tr.p();
    let mut hat = Tensor3::zeros(n, n, p);
    for k in 0..p {
        let core = rng.gen_range(1..=n);
        let mut j = CMatrix::zeros(n, n);
        for i in 0..core {
            for l in 0..core {
                j[(i, l)] = c(rng.gen_range(-1.0..1.0) + if i == l { 2.5 } else { 0.0 });
            }
        }
        for i in core..n.saturating_sub(1) {
            j[(i, i + 1)] = c(1.0);
        }
        let s = CMatrix::from_fn(
            n,
            n,
            |i, l| c(if i == l { 1.0 } else { 0.0 } + rng.gen_range(-0.3..0.3)),
        );
        let si = s.clone().try_inverse().unwrap();
        hat.set_slice(k, &(&s * j * si)).unwrap();
    }
    from_transform_domain(&hat, tr).unwrap().map(|z| c(z.re))
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn c8a_identities(rng: &mut impl Rng) -> std::result::Result<String, String> {
    let bound = 1e-8;
    let mut worst = 0.0f64;
    for trial in 0..200 {
        let p = rng.gen_range(1..=4);
        let tr = random_transform(rng, p);
        let (m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let ranks = random_ranks(rng, p, m.min(n));
        let a = with_multirank(rng, m, n, &ranks, &tr);
        let pinv = pinv_qdr(&a, &tr, &tol()).map_err(|e| format!("trial {trial}: pinv: {e}"))?;
        residuals_below(&pinv, bound).map_err(|e| format!("trial {trial}: pinv {e}"))?;
        worst = worst.max(pinv.max_residual());

        let b = with_index_profile(rng, m, &tr);
        let dr = drazin_qdr(&b, &tr, &tol()).map_err(|e| format!("trial {trial}: drazin: {e}"))?;
        residuals_below(&dr, bound).map_err(|e| format!("trial {trial}: drazin {e}"))?;
        worst = worst.max(dr.max_residual());

        let w_ranks: Vec<usize> = ranks.iter().map(|&r| rng.gen_range(1..=r)).collect();
        let w = with_multirank(rng, n, m, &w_ranks, &tr);
        let z = outer_inverse_qdr(&a, &w, &tr, &tol()).map_err(|e| format!("trial {trial}: outer: {e}"))?;
        residuals_below(&z, bound).map_err(|e| format!("trial {trial}: outer {e}"))?;
        worst = worst.max(z.max_residual());
        let sub = check_subspaces(&z.x, &w, &tr, &tol()).map_err(|e| e.to_string())?;
        check(sub.passed(), format!("trial {trial}: outer subspaces {sub:?}"))?;
    }
    Ok(format!("(a) 200 trials, max residual {worst:.1e}"))
}

fn c8b_svd_oracle(rng: &mut impl Rng) -> std::result::Result<String, String> {
    let one = Transform::identity(1);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let (m, n) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let r = rng.gen_range(0..=m.min(n));
        let a = with_multirank(rng, m, n, &[r], &one);
        let oracle = a.slice(0).pseudo_inverse(1e-10).map_err(|e| e.to_string())?;
        check(matrix_rank(&a.slice(0), &tol()) == r, format!("trial {trial}: rank"))?;
        for (name, x) in [("frd", pinv_frd(&a, &one, &tol())), ("qdr", pinv_qdr(&a, &one, &tol()))] {
            let x = x.map_err(|e| format!("trial {trial}: {name}: {e}"))?.x.slice(0);
            let gap = (&x - &oracle).iter().map(|z| z.norm()).fold(0.0, f64::max);
            check(gap <= 1e-10, format!("trial {trial}: {name} gap {gap:e}"))?;
            worst = worst.max(gap);
        }
    }
    Ok(format!("(b) 100 matrices, max gap {worst:.1e}"))
}

fn c8c_cross_method(rng: &mut impl Rng) -> std::result::Result<String, String> {
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let p = rng.gen_range(1..=4);
        let tr = random_transform(rng, p);
        let (m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let ranks = random_ranks(rng, p, m.min(n));
        let a = with_multirank(rng, m, n, &ranks, &tr);
        let x1 = pinv_frd(&a, &tr, &tol()).map_err(|e| e.to_string())?.x;
        let x2 = pinv_qdr(&a, &tr, &tol()).map_err(|e| e.to_string())?.x;
        let b = with_index_profile(rng, m, &tr);
        let y1 = drazin_frd(&b, &tr, &tol()).map_err(|e| e.to_string())?.x;
        let y2 = drazin_qdr(&b, &tr, &tol()).map_err(|e| e.to_string())?.x;
        for (name, gap) in [("pinv", max_diff(&x1, &x2)), ("drazin", max_diff(&y1, &y2))] {
            check(gap <= 1e-9, format!("trial {trial}: {name} methods differ by {gap:e}"))?;
            worst = worst.max(gap);
        }
    }
    Ok(format!("(c) 100 pairs, max gap {worst:.1e}"))
}

fn random_ratfun(rng: &mut impl Rng) -> RatFun {
    if rng.gen_bool(0.2) {
        return RatFun::zero();
    }
    let num: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-3..=3)).collect();
    let den: Vec<i64> = if rng.gen_bool(0.3) {
        vec![rng.gen_range(1..=3), rng.gen_range(0..=2)]
    } else {
        vec![1]
    };
    RatFun::new(Poly::from_ints(&num), Poly::from_ints(&den)).unwrap()
}

fn random_sym_transform(rng: &mut impl Rng, p: usize) -> SymTransform {
    loop {
        let rows: Vec<Vec<i64>> = (0..p)
            .map(|_| (0..p).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if let Ok(t) = SymTransform::from_int_rows(&rows) {
            return t;
        }
    }
}

fn rel_gap(a: &Tensor3, b: &Tensor3) -> f64 {
    max_diff(a, b) / a.max_abs().max(1.0)
}

fn c8d_homomorphism(rng: &mut impl Rng) -> std::result::Result<String, String> {
    let mut worst = 0.0f64;
    let mut pinv_cases = 0;
    for trial in 0..50 {
        let p = rng.gen_range(1..=2);
        let (m, n, l) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let tr = random_sym_transform(rng, p);
        let num_tr = tr.to_numeric().map_err(|e| e.to_string())?;
        let a = SymTensor3::from_fn(m, n, p, |_, _, _| random_ratfun(rng));
        let b = SymTensor3::from_fn(n, l, p, |_, _, _| random_ratfun(rng));
        let x0 = BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(4..=11).into());
        let (Ok(ea), Ok(eb)) = (a.eval(&x0), b.eval(&x0)) else {
            continue;
        };
        let prod = sym_m_product(&a, &b, &tr).map_err(|e| e.to_string())?;
        let ep = prod.eval(&x0).map_err(|e| format!("trial {trial}: {e}"))?;
        let gap = rel_gap(&ep, &m_product(&ea, &eb, &num_tr).unwrap());
        check(gap <= 1e-9, format!("trial {trial}: product gap {gap:e}"))?;
        worst = worst.max(gap);

        let x = sym_pinv(&a, &tr).map_err(|e| format!("trial {trial}: {e}"))?;
        // the identity only holds where no slice loses rank at the point
        let sym_ranks: Vec<usize> = symbolic::to_transform_domain(&a, &tr)
            .unwrap()
            .slices()
            .iter()
            .map(|s| s.rank())
            .collect();
        let num_ranks = multirank(&ea, &num_tr, &tol()).unwrap().ranks;
        if sym_ranks != num_ranks {
            continue;
        }
        let Ok(ex) = x.eval(&x0) else { continue };
        let gap = rel_gap(&ex, &pinv_qdr(&ea, &num_tr, &tol()).unwrap().x);
        check(gap <= 1e-9, format!("trial {trial}: pinv gap {gap:e}"))?;
        worst = worst.max(gap);
        pinv_cases += 1;
    }
    check(
        pinv_cases >= 25,
        format!("only {pinv_cases} pinv cases were regular at the point"),
    )?;
    Ok(format!(
        "(d) 50 tensors ({pinv_cases} with pinv), max relative gap {worst:.1e}"
    ))
}

fn natural(rng: &mut impl Rng, h: usize, w: usize) -> ImageRGB {
    ImageRGB::from_fn(w, h, |i, j, c| {
        let (x, y) = (j as f64 / w as f64, i as f64 / h as f64);
        let base = 128.0 + 60.0 * (6.0 * x + c as f64).sin() * (4.0 * y).cos() + 40.0 * (x * y * 9.0).sin();
        quantize(base + rng.gen_range(-12.0..12.0))
    })
}

struct Sweep {
    psnr_drop: f64,
    ssim_drop: f64,
    full: (f64, f64),
}

fn sweep(img: &ImageRGB, tr: &Transform) -> std::result::Result<Sweep, String> {
    let mut out = Sweep {
        psnr_drop: 0.0,
        ssim_drop: 0.0,
        full: (0.0, 0.0),
    };
    let mut prev: Option<(f64, f64)> = None;
    for k in 1..=img.width().min(img.height()) {
        let r = compress(img, k, tr, &tol()).map_err(|e| format!("k={k}: {e}"))?;
        if let Some((pp, ps)) = prev {
            out.psnr_drop = out.psnr_drop.max(pp - r.psnr_db);
            out.ssim_drop = out.ssim_drop.max(ps - r.ssim);
        }
        prev = Some((r.psnr_db, r.ssim));
        out.full = (r.psnr_db, r.ssim);
    }
    Ok(out)
}

/// Gated on the default image transform and a seeded random one. DCT-3 is
/// swept and reported but not gated: its SSIM curve is not monotone.
fn c8e_compression(rng: &mut impl Rng) -> std::result::Result<String, String> {
    let img = natural(rng, 32, 24);
    let mut summary = Vec::new();
    for (name, tr) in [
        ("identity", Transform::identity(3)),
        ("random:7", Transform::seeded_random(3, 7).unwrap()),
    ] {
        let s = sweep(&img, &tr).map_err(|e| format!("{name}: {e}"))?;
        check(s.psnr_drop <= 0.1, format!("{name}: PSNR dropped {} dB", s.psnr_drop))?;
        check(s.ssim_drop <= 1e-3, format!("{name}: SSIM dropped {}", s.ssim_drop))?;
        check(s.full.0 >= 45.0, format!("{name}: full-rank PSNR {}", s.full.0))?;
        check(s.full.1 >= 0.99, format!("{name}: full-rank SSIM {}", s.full.1))?;
        summary.push(format!(
            "{name} monotone, full rank {:.1} dB / {:.4}",
            s.full.0, s.full.1
        ));
    }
    let dct = sweep(&img, &Transform::dct(3)).map_err(|e| format!("dct: {e}"))?;
    summary.push(format!(
        "dct (not gated) largest PSNR drop {:.3} dB, largest SSIM drop {:.4}",
        dct.psnr_drop, dct.ssim_drop
    ));
    Ok(format!("(e) {}", summary.join(", ")))
}

fn c8_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(8);
    let parts = [
        c8a_identities(&mut rng)?,
        c8b_svd_oracle(&mut rng)?,
        c8c_cross_method(&mut rng)?,
        c8d_homomorphism(&mut rng)?,
        c8e_compression(&mut rng)?,
    ];
    within(Duration::from_secs(300), start)?;
    Ok(parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "Moore-Penrose inverse of a 3x3x3 tensor, decimal reference",
            c1_pinv_three_cube,
        ),
        (
            "Moore-Penrose inverse of a 3x4x3 tensor, exact fractions",
            c2_pinv_exact_fractions,
        ),
        ("Drazin inverse with multi-index (1,2,3)", c3_drazin),
        ("M-QDR structure and reconstruction", c4_qdr),
        ("FRD reconstruction and Gram invertibility", c5_frd),
        ("symbolic outer inverse", c6_symbolic_outer),
        ("symbolic Moore-Penrose inverse", c7_symbolic_pinv),
        ("property suites", c8_properties),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
