//! Command-line front end. [`run`] is the whole program minus process I/O so
//! it can be driven from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::exactalg::parse_rational;
use crate::families::{
    family_a, family_a_even, family_a_odd, family_b_curve, family_c, residue_closed_form_c,
    secondary_contribution_check, FamilyData, FamilyKind, FamilyParams, SecondaryCheck,
};
use crate::newton_oracle::{zeta_newton_c, NewtonParams};
use crate::resolution::{
    candidate_poles, lct, pole_table, residue_via_alpha, zeta_from_strata, ResolutionData,
};
use crate::witness::{verify_certificate, witness_for, WitnessError};
use crate::{RatFunc, Rational, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "topzeta",
    version,
    about = "Exact topological zeta functions and pole witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "A-even")]
    AEven,
    #[value(name = "A-odd")]
    AOdd,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleFamily {
    #[value(name = "C")]
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFamily {
    #[value(name = "A")]
    A,
    #[value(name = "C")]
    C,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Z_top, candidate poles, actual poles with residues, and lct of a resolution-data file
    Zeta { file: PathBuf },
    /// Generate the data of one of the studied families
    Family {
        family: FamilyArg,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        /// Write the (possibly partial) resolution data to this path
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exact residue of the zeta function of a resolution-data file
    Residue {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Newton-polyhedron closed form of Z_top for family C
    Oracle {
        family: OracleFamily,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Build and verify a polynomial whose Z_top has a pole at s0
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        s0: String,
        #[arg(long)]
        n: u32,
        /// Print the single-line key=value form instead
        #[arg(long)]
        kv: bool,
    },
    /// Residue cross-checks over a parameter grid (ranges as lo..hi, inclusive)
    Scan {
        family: ScanFamily,
        #[arg(long)]
        n: String,
        #[arg(long)]
        i: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    msg: String,
}

fn invalid(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INVALID,
        msg: msg.to_string(),
    }
}

fn verification(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_VERIFICATION,
        msg: msg.to_string(),
    }
}

#[derive(Default)]
struct Output {
    out: String,
    err: String,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut o = Output::default();
    let result = match cli.command {
        Command::Zeta { file } => cmd_zeta(&file, &mut o),
        Command::Family {
            family,
            n,
            i,
            a,
            b,
            emit,
        } => cmd_family(family, n, i, a, b, emit, &mut o),
        Command::Residue { file, at } => cmd_residue(&file, &at, &mut o),
        Command::Oracle { n, a, b, .. } => cmd_oracle(n, a, b, &mut o),
        Command::Witness { s0, n, kv } => cmd_witness(&s0, n, kv, &mut o),
        Command::Scan { family, n, i, a, b } => cmd_scan(family, &n, i, a, b, &mut o),
    };
    let code = match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(o.err, "error: {}", f.msg);
            f.code
        }
    };
    Outcome {
        code,
        stdout: o.out,
        stderr: o.err,
    }
}

fn read_data(path: &PathBuf) -> Result<ResolutionData, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    ResolutionData::parse(&text).map_err(invalid)
}

fn join_rationals<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> String {
    xs.into_iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_pole_table(z: &RatFunc, out: &mut String) {
    let _ = writeln!(out, "poles:");
    let table = pole_table(z);
    if table.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for (p, (order, res)) in table {
        let _ = writeln!(out, "  s={p} order={order} residue={res}");
    }
}

fn write_lct(data: &ResolutionData, out: &mut String) {
    match lct::<Rational>(data) {
        Ok(c) => {
            let _ = writeln!(out, "lct = {c}");
        }
        Err(e) => {
            let _ = writeln!(out, "lct = undefined ({e})");
        }
    }
}

fn cmd_zeta(file: &PathBuf, o: &mut Output) -> Result<(), Failure> {
    let data = read_data(file)?;
    let z: RatFunc = zeta_from_strata(&data).map_err(invalid)?;
    let _ = writeln!(o.out, "Z_top = {z}");
    let _ = writeln!(
        o.out,
        "candidate poles: {}",
        join_rationals(&candidate_poles::<Rational>(&data))
    );
    write_pole_table(&z, &mut o.out);
    write_lct(&data, &mut o.out);
    Ok(())
}

fn need(v: Option<u32>, flag: &str) -> Result<u32, Failure> {
    v.ok_or_else(|| invalid(format!("missing --{flag}")))
}

fn cmd_family(
    family: FamilyArg,
    n: Option<u32>,
    i: Option<u32>,
    a: Option<u32>,
    b: Option<u32>,
    emit: Option<PathBuf>,
    o: &mut Output,
) -> Result<(), Failure> {
    let fam = match family {
        FamilyArg::AEven => family_a_even(need(n, "n")?, need(i, "i")?),
        FamilyArg::AOdd => family_a_odd(need(n, "n")?, need(i, "i")?),
        FamilyArg::B => {
            if let Some(n) = n.filter(|&n| n != 2) {
                return Err(invalid(format!(
                    "family B lives in dimension 2, got --n {n}"
                )));
            }
            family_b_curve(need(a, "a")?, need(b, "b")?).map(|c| c.family)
        }
        FamilyArg::C => family_c(need(n, "n")?, need(a, "a")?, need(b, "b")?),
    }
    .map_err(invalid)?;
    write_family(&fam, &mut o.out)?;
    if let Some(path) = emit {
        std::fs::write(&path, fam.emit_text())
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(o.out, "wrote {}", path.display());
    }
    Ok(())
}

fn write_family(fam: &FamilyData, out: &mut String) -> Result<(), Failure> {
    let _ = writeln!(out, "family {} n={} {}", fam.kind, fam.dim, fam.params);
    let _ = writeln!(out, "f = {}", fam.polynomial());
    let _ = writeln!(out, "components:");
    for c in &fam.data.components {
        let _ = writeln!(
            out,
            "  E{} (N={}, nu={}) {} candidate={}",
            c.id,
            c.n_mult,
            c.v_mult,
            c.kind,
            c.candidate_pole::<Rational>()
        );
    }
    let _ = writeln!(
        out,
        "target = E{} candidate pole {}",
        fam.target_id, fam.target_pole
    );
    let partial = if fam.complete {
        ""
    } else {
        " (partial: target-pole strata only)"
    };
    let _ = writeln!(out, "strata{partial}:");
    for s in &fam.data.strata {
        let ids: Vec<String> = s.members.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(out, "  {{{}}} chi={}", ids.join(","), s.chi);
    }
    let _ = writeln!(out, "alphas:");
    for (id, a) in &fam.alphas {
        let _ = writeln!(out, "  alpha_{id} = {a}");
    }
    let res = fam.residue_via_alpha().map_err(verification)?;
    let _ = writeln!(out, "residue (alpha formula) = {res}");
    if let FamilyParams::Pair { a, b } = fam.params {
        if fam.kind == FamilyKind::C {
            let closed = residue_closed_form_c(fam.dim, a, b).map_err(invalid)?;
            let _ = writeln!(out, "residue (closed form) = {closed}");
            match secondary_contribution_check(fam.dim, a, b).map_err(verification)? {
                SecondaryCheck::NotApplicable => {
                    let _ = writeln!(
                        out,
                        "coincident component: none ((2+b) does not divide (a+b))"
                    );
                }
                SecondaryCheck::Applicable {
                    component,
                    alpha_below,
                    alpha_above,
                    contribution,
                } => {
                    let _ = writeln!(
                        out,
                        "coincident component: E{component} alpha_{}={alpha_below} alpha_{}={alpha_above} contribution={contribution}",
                        component - 1,
                        component + 1
                    );
                }
            }
        }
    }
    if fam.complete {
        let z: RatFunc = zeta_from_strata(&fam.data).map_err(invalid)?;
        let _ = writeln!(out, "Z_top = {z}");
        write_pole_table(&z, out);
    }
    write_lct(&fam.data, out);
    if !fam.trace.is_empty() {
        let _ = writeln!(out, "blow-ups:");
        for st in &fam.trace {
            let _ = writeln!(
                out,
                "  {:>3}  center {:<24} strict transform {}",
                st.index, st.center, st.strict_transform
            );
        }
    }
    Ok(())
}

fn cmd_residue(file: &PathBuf, at: &str, o: &mut Output) -> Result<(), Failure> {
    let data = read_data(file)?;
    let s0 = parse_rational(at).map_err(invalid)?;
    let z: RatFunc = zeta_from_strata(&data).map_err(invalid)?;
    let r = z.residue_at(&s0).map_err(invalid)?;
    let _ = writeln!(o.out, "pole {s0} order {}", z.pole_order(&s0));
    let _ = writeln!(o.out, "residue = {r}");
    if let Ok(alpha_res) = residue_via_alpha(&data, &s0) {
        let _ = writeln!(o.out, "residue (alpha formula) = {alpha_res}");
    }
    Ok(())
}

fn cmd_oracle(n: u32, a: u32, b: u32, o: &mut Output) -> Result<(), Failure> {
    let p = NewtonParams::new(n, a, b).map_err(invalid)?;
    let z = zeta_newton_c(n, a, b).map_err(invalid)?;
    let _ = writeln!(o.out, "family C n={n} a={a} b={b}");
    let _ = writeln!(o.out, "A = {}", p.a_form);
    let _ = writeln!(o.out, "B = {}", p.b_form);
    let _ = writeln!(o.out, "Z_top = {z}");
    write_pole_table(&z, &mut o.out);
    Ok(())
}

fn cmd_witness(s0: &str, n: u32, kv: bool, o: &mut Output) -> Result<(), Failure> {
    let s0 = parse_rational(s0).map_err(invalid)?;
    let cert = witness_for(&s0, n).map_err(|e| match e {
        WitnessError::InternalVerificationFailure(_) => verification(e),
        _ => invalid(e),
    })?;
    let report = verify_certificate(&cert);
    if !report.ok {
        return Err(verification(format!("re-verification failed\n{report}")));
    }
    if kv {
        let _ = writeln!(o.out, "{} verified=true", cert.to_kv_line());
    } else {
        let _ = writeln!(o.out, "{cert}");
        let _ = writeln!(o.out, "{report}");
    }
    Ok(())
}

/// `lo..hi` (inclusive) or a single value.
fn parse_range(text: &str, flag: &str) -> Result<(u32, u32), Failure> {
    let bad = || {
        invalid(format!(
            "--{flag}: expected lo..hi or a single value, got '{text}'"
        ))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (text.trim(), text.trim()),
    };
    let lo: u32 = lo.parse().map_err(|_| bad())?;
    let hi: u32 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_scan(
    family: ScanFamily,
    n: &str,
    i: Option<String>,
    a: Option<String>,
    b: Option<String>,
    o: &mut Output,
) -> Result<(), Failure> {
    let req = |v: Option<String>, flag: &str| -> Result<(u32, u32), Failure> {
        parse_range(
            &v.ok_or_else(|| invalid(format!("missing --{flag}")))?,
            flag,
        )
    };
    let ns = parse_range(n, "n")?;
    let mut mismatches = 0usize;
    match family {
        ScanFamily::C => {
            let (as_, bs) = (req(a, "a")?, req(b, "b")?);
            let _ = writeln!(
                o.out,
                "n a b target_pole res_alpha res_closed res_newton match"
            );
            for n in ns.0..=ns.1 {
                for a in as_.0..=as_.1 {
                    for b in bs.0..=bs.1 {
                        if n < 3 || a % 2 == 1 || b % 2 == 1 || a == 2 || a == 0 || b == 0 {
                            let _ = writeln!(
                                o.err,
                                "note: skipping n={n} a={a} b={b} (outside family C)"
                            );
                            continue;
                        }
                        let fam = family_c(n, a, b).map_err(verification)?;
                        let ra = fam.residue_via_alpha().map_err(verification)?;
                        let rc = residue_closed_form_c(n, a, b).map_err(verification)?;
                        let z = zeta_newton_c(n, a, b).map_err(verification)?;
                        let rn = z.residue_at(&fam.target_pole).ok();
                        let ok = rn.as_ref() == Some(&ra) && ra == rc && !ra.is_zero();
                        mismatches += usize::from(!ok);
                        let rn = rn.map_or_else(|| "not-a-pole".to_string(), |r| r.to_string());
                        let _ = writeln!(
                            o.out,
                            "{n} {a} {b} {} {ra} {rc} {rn} {}",
                            fam.target_pole,
                            if ok { "yes" } else { "NO" }
                        );
                    }
                }
            }
        }
        ScanFamily::A => {
            let is = req(i, "i")?;
            let _ = writeln!(o.out, "n i target_pole expected_pole res_alpha nonzero");
            for n in ns.0..=ns.1 {
                for i in is.0..=is.1 {
                    if n < 4 || i < 2 {
                        let _ = writeln!(o.err, "note: skipping n={n} i={i} (outside family A)");
                        continue;
                    }
                    let fam = family_a(n, i).map_err(verification)?;
                    let expected =
                        Rational::from_frac(-(n as i64 - 1), 2) - Rational::from_frac(1, i as i64);
                    let ra = fam.residue_via_alpha().map_err(verification)?;
                    let ok = fam.target_pole == expected && !ra.is_zero();
                    mismatches += usize::from(!ok);
                    let _ = writeln!(
                        o.out,
                        "{n} {i} {} {expected} {ra} {}",
                        fam.target_pole,
                        if ok { "yes" } else { "NO" }
                    );
                }
            }
        }
    }
    if mismatches > 0 {
        return Err(verification(format!("{mismatches} grid point(s) failed")));
    }
    Ok(())
}
