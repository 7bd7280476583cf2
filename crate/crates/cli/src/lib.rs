//! `mprod` command-line front end.
//!
//! Exit codes: 0 success, 1 input/output or format error, 2 usage error,
//! 3 mathematical failure (the error name is printed on standard error).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mprod::imaging::{compress, psnr, read_ppm, ssim, write_ppm};
use mprod::io::{fmt_f64, read_t3, read_transform, write_t3};
use mprod::symbolic::io::{read_st3, read_sym_transform, write_st3};
use mprod::symbolic::{sym_outer_inverse, sym_pinv, SymTensor3, SymTransform};
use mprod::{
    check_subspaces, drazin_frd, drazin_qdr, multi_index, multirank, outer_inverse_qdr, pinv_frd, pinv_qdr, tensor_frd,
    tensor_qdr, Error, GinvReport, Result, ToleranceConfig, Transform,
};

#[derive(Parser, Debug)]
#[command(
    name = "mprod",
    version,
    about = "Tensor decompositions and generalized inverses under the M-product"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// identity, dct, dft, random:SEED, or a .mat file
    #[arg(long, default_value = "identity")]
    transform: String,
    /// Relative singular-value threshold for rank decisions
    #[arg(long)]
    rank_tol: Option<f64>,
    /// Residual acceptance threshold
    #[arg(long)]
    residual_tol: Option<f64>,
    /// Gram-Schmidt zero-column threshold
    #[arg(long)]
    zero_column_tol: Option<f64>,
    /// Also write the report to this file
    #[arg(long)]
    out_report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Frd,
    Qdr,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full-rank decomposition A = S * T
    Frd {
        input: PathBuf,
        #[arg(long)]
        out_s: Option<PathBuf>,
        #[arg(long)]
        out_t: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// M-QDR decomposition A = Q * D * R
    Qdr {
        input: PathBuf,
        #[arg(long)]
        out_q: Option<PathBuf>,
        #[arg(long)]
        out_d: Option<PathBuf>,
        #[arg(long)]
        out_r: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Moore-Penrose inverse
    Pinv {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "frd")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Drazin inverse of a square tensor
    Drazin {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "frd")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Outer inverse with range and null space taken from W
    Outer {
        input: PathBuf,
        #[arg(long = "W", alias = "w")]
        w: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact Moore-Penrose inverse of a rational-function tensor (.st3)
    SymPinv {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact outer inverse of a rational-function tensor (.st3)
    SymOuter {
        input: PathBuf,
        #[arg(long = "W", alias = "w")]
        w: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Truncated-QDR compression of a PPM image
    Compress {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// PSNR and SSIM between two PPM images
    Metrics {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out_report: Option<PathBuf>,
    },
}

/// Flat `key value` report.
#[derive(Default)]
struct Report(Vec<(String, String)>);

impl Report {
    fn text(&mut self, k: &str, v: impl ToString) {
        self.0.push((k.to_string(), v.to_string()));
    }

    fn num(&mut self, k: &str, v: f64) {
        self.text(k, fmt_f64(v));
    }

    fn list(&mut self, k: &str, v: &[usize]) {
        self.text(k, v.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
    }
}

impl Common {
    fn tolerances(&self) -> Result<ToleranceConfig> {
        let d = ToleranceConfig::default();
        ToleranceConfig::new(
            self.rank_tol.unwrap_or(d.rank_rel_tol),
            self.residual_tol.unwrap_or(d.residual_tol),
            self.zero_column_tol.unwrap_or(d.zero_column_tol),
        )
    }

    fn transform(&self, p: usize) -> Result<Transform> {
        let t = match self.transform.as_str() {
            "identity" => Transform::identity(p),
            "dct" => Transform::dct(p),
            "dft" => Transform::dft(p),
            s => match s.strip_prefix("random:") {
                Some(seed) => {
                    let seed = seed
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad seed in `{s}`")))?;
                    Transform::seeded_random(p, seed)?
                }
                None => read_transform(s)?,
            },
        };
        check_p(t.p(), p)?;
        Ok(t)
    }

    fn sym_transform(&self, p: usize) -> Result<SymTransform> {
        let t = match self.transform.as_str() {
            "identity" => SymTransform::identity(p),
            "dft" => return Err(Error::InvalidArgument("symbolic transforms must be real".into())),
            "dct" => SymTransform::from_numeric(&Transform::dct(p))?,
            s if s.starts_with("random:") => SymTransform::from_numeric(&self.transform(p)?)?,
            path => read_sym_transform(path)?,
        };
        check_p(t.p(), p)?;
        Ok(t)
    }
}

fn check_p(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!(
            "transform is {got}x{got}, tensor depth is {want}"
        )));
    }
    Ok(())
}

fn write_opt(path: &Option<PathBuf>, write: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => write(p),
        None => Ok(()),
    }
}

fn ginv_report(rep: &mut Report, g: &GinvReport) {
    for (name, v) in &g.residuals {
        rep.num(name.name(), *v);
    }
}

fn sym_report(rep: &mut Report, z: &SymTensor3) {
    let (m, n, p) = z.dims();
    rep.list("dims", &[m, n, p]);
    for k in 0..p {
        for i in 0..m {
            for j in 0..n {
                rep.text(&format!("Z({},{},{})", i + 1, j + 1, k + 1), z.get(i, j, k));
            }
        }
    }
}

fn execute(cmd: Command) -> Result<(Report, Option<PathBuf>)> {
    let mut rep = Report::default();
    let report_path = match cmd {
        Command::Frd {
            input,
            out_s,
            out_t,
            common,
        } => {
            let a = read_t3(&input)?;
            let (tol, t) = (common.tolerances()?, common.transform(a.depth())?);
            let f = tensor_frd(&a, &t, &tol)?;
            rep.text("tubal_rank", f.rank);
            rep.list("multirank", &multirank(&a, &t, &tol)?.ranks);
            rep.num("residual", (&a - &f.reconstruct(&t)?).fro_norm());
            write_opt(&out_s, |p| write_t3(&f.s, p))?;
            write_opt(&out_t, |p| write_t3(&f.t, p))?;
            common.out_report
        }
        Command::Qdr {
            input,
            out_q,
            out_d,
            out_r,
            common,
        } => {
            let a = read_t3(&input)?;
            let (tol, t) = (common.tolerances()?, common.transform(a.depth())?);
            let f = tensor_qdr(&a, &t, &tol)?;
            rep.text("tubal_rank", f.rank);
            rep.list("multirank", &multirank(&a, &t, &tol)?.ranks);
            rep.num("residual", (&a - &f.reconstruct(&t)?).fro_norm());
            write_opt(&out_q, |p| write_t3(&f.q, p))?;
            write_opt(&out_d, |p| write_t3(&f.d, p))?;
            write_opt(&out_r, |p| write_t3(&f.r, p))?;
            common.out_report
        }
        Command::Pinv {
            input,
            method,
            out,
            common,
        } => {
            let a = read_t3(&input)?;
            let (tol, t) = (common.tolerances()?, common.transform(a.depth())?);
            let g = match method {
                Method::Frd => pinv_frd(&a, &t, &tol)?,
                Method::Qdr => pinv_qdr(&a, &t, &tol)?,
            };
            rep.list("multirank", &multirank(&a, &t, &tol)?.ranks);
            ginv_report(&mut rep, &g);
            write_opt(&out, |p| write_t3(&g.x, p))?;
            common.out_report
        }
        Command::Drazin {
            input,
            method,
            out,
            common,
        } => {
            let a = read_t3(&input)?;
            let (tol, t) = (common.tolerances()?, common.transform(a.depth())?);
            let g = match method {
                Method::Frd => drazin_frd(&a, &t, &tol)?,
                Method::Qdr => drazin_qdr(&a, &t, &tol)?,
            };
            rep.list("multi_index", &multi_index(&a, &t, &tol)?.indices);
            ginv_report(&mut rep, &g);
            write_opt(&out, |p| write_t3(&g.x, p))?;
            common.out_report
        }
        Command::Outer { input, w, out, common } => {
            let a = read_t3(&input)?;
            let w = read_t3(&w)?;
            let (tol, t) = (common.tolerances()?, common.transform(a.depth())?);
            let g = outer_inverse_qdr(&a, &w, &t, &tol)?;
            ginv_report(&mut rep, &g);
            let sub = check_subspaces(&g.x, &w, &t, &tol)?;
            rep.text("subspaces", if sub.passed() { "pass" } else { "fail" });
            write_opt(&out, |p| write_t3(&g.x, p))?;
            common.out_report
        }
        Command::SymPinv { input, out, common } => {
            let a = read_st3(&input)?;
            let t = common.sym_transform(a.dims().2)?;
            let z = sym_pinv(&a, &t)?;
            sym_report(&mut rep, &z);
            write_opt(&out, |p| write_st3(&z, p))?;
            common.out_report
        }
        Command::SymOuter { input, w, out, common } => {
            let a = read_st3(&input)?;
            let w = read_st3(&w)?;
            let t = common.sym_transform(a.dims().2)?;
            let z = sym_outer_inverse(&a, &w, &t)?;
            sym_report(&mut rep, &z);
            write_opt(&out, |p| write_st3(&z, p))?;
            common.out_report
        }
        Command::Compress { image, k, out, common } => {
            let img = read_ppm(&image)?;
            let (tol, t) = (common.tolerances()?, common.transform(3)?);
            let r = compress(&img, k, &t, &tol)?;
            rep.text("k", r.k);
            rep.num("psnr_db", r.psnr_db);
            rep.num("ssim", r.ssim);
            rep.num("storage_ratio", r.storage_ratio);
            write_opt(&out, |p| write_ppm(&r.reconstructed, p))?;
            common.out_report
        }
        Command::Metrics { a, b, out_report } => {
            let (a, b) = (read_ppm(&a)?, read_ppm(&b)?);
            rep.num("psnr_db", psnr(&a, &b)?);
            rep.num("ssim", ssim(&a, &b)?);
            out_report
        }
    };
    Ok((rep, report_path))
}

fn exit_code(e: &Error) -> i32 {
    if e.is_math() {
        3
    } else if matches!(e, Error::InvalidArgument(_)) {
        2
    } else {
        1
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(cli.command).and_then(|(rep, path)| {
        let text = rep.render();
        if let Some(p) = path {
            std::fs::write(p, &text)?;
        }
        std::io::stdout().write_all(text.as_bytes())?;
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            exit_code(&e)
        }
    }
}
