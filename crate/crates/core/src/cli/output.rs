use serde::Serialize;

use crate::sieve::SieveReport;

pub const SIEVE_HEADER: &str = "d,family,k,Q,N,F,M,lambda_max,rhs,ratio,iterations,seed";
pub const BOUNDS_HEADER: &str = "theorem,k,Q,N,epsilon,delta,rhs";
pub const MODULI_HEADER: &str = "theorem,d,S,Q,N,F,M,lambda_max,rhs,ratio,X,iterations,seed";

/// `printf("%.*g")`: `sig` significant digits, trailing zeros removed.
pub fn fmt_g(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let m = strip_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn g(x: f64) -> String {
    fmt_g(x, 12)
}

pub fn sieve_row(r: &SieveReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.d,
        r.family,
        r.k,
        r.q,
        r.n,
        r.f,
        r.m,
        g(r.lambda_max),
        g(r.rhs),
        g(r.ratio),
        r.iterations,
        r.seed
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub theorem: String,
    pub k: u32,
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub rhs: f64,
}

pub fn bounds_row(r: &BoundsRow) -> String {
    format!("{},{},{},{},{},{},{}", r.theorem, r.k, r.q, r.n, g(r.epsilon), g(r.delta), g(r.rhs))
}

/// A row of the general-moduli commands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuliRow {
    pub theorem: String,
    pub d: i64,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub lambda_max: f64,
    pub rhs: f64,
    pub ratio: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub iterations: usize,
    pub seed: u64,
}

pub fn moduli_row(r: &ModuliRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.theorem,
        r.d,
        r.s,
        r.q,
        r.n,
        r.f,
        r.m,
        g(r.lambda_max),
        g(r.rhs),
        g(r.ratio),
        g(r.x),
        r.iterations,
        r.seed
    )
}

pub fn csv<T>(header: &str, rows: &[T], row: impl Fn(&T) -> String) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        s.push_str(&row(r));
        s.push('\n');
    }
    s
}

pub fn json<T: Serialize>(rows: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialise");
    s.push('\n');
    s
}
