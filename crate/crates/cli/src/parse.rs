//! Parsers for function and space descriptions given on the command line.

use std::fs;

use hllab_core::family::{dilated_cauchy, random_polynomial};
use hllab_core::multiplier::SpaceFamily;
use hllab_core::series::cauchy_power;
use hllab_core::{CoefficientSeries, Error, Result};
use num_complex::Complex64;

fn bad(what: &str, spec: &str) -> Error {
    Error::InvalidParameter(format!("{what}: {spec}"))
}

/// A real number, `inf` or `-inf`.
pub fn parse_real(text: &str) -> std::result::Result<f64, String> {
    match text.trim() {
        "inf" | "Inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        "-inf" | "-Inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        t => t.parse::<f64>().map_err(|_| format!("not a number: {t}")),
    }
}

fn real(field: &str, spec: &str) -> Result<f64> {
    parse_real(field).map_err(|_| bad("invalid number in", spec))
}

fn count(field: &str, spec: &str) -> Result<usize> {
    field.trim().parse().map_err(|_| bad("invalid integer in", spec))
}

/// Comma-separated list of degrees.
pub fn parse_degrees(text: &str) -> Result<Vec<usize>> {
    text.split(',').map(|d| count(d, text)).collect()
}

/// Coefficients from text, one complex number per line as `re im`
/// (`im` may be omitted); blank lines and `#` comments are skipped.
pub fn parse_coefficients(text: &str) -> Result<CoefficientSeries> {
    let mut coeffs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| bad("invalid coefficient on line", &(lineno + 1).to_string()))
        };
        let c = match fields.as_slice() {
            [re] => Complex64::new(parse(re)?, 0.0),
            [re, im] => Complex64::new(parse(re)?, parse(im)?),
            _ => return Err(bad("expected 're im' on line", &(lineno + 1).to_string())),
        };
        coeffs.push(c);
    }
    if coeffs.is_empty() {
        return Err(bad("no coefficients in", "file"));
    }
    CoefficientSeries::new(coeffs)
}

/// `monomial:n | cauchy:γ:N | dilated:γ:N | random:deg:seed | lacunary:N | file:path`
pub fn parse_function(spec: &str) -> Result<CoefficientSeries> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| bad("invalid function", spec))?;
    let fields: Vec<&str> = rest.split(':').collect();
    match (kind, fields.as_slice()) {
        ("monomial", [n]) => Ok(CoefficientSeries::monomial(count(n, spec)?)),
        ("cauchy", [g, n]) => cauchy_power(real(g, spec)?, count(n, spec)?),
        ("dilated", [g, n]) => dilated_cauchy(real(g, spec)?, count(n, spec)?),
        ("random", [d, seed]) => {
            let seed = seed.trim().parse::<u64>().map_err(|_| bad("invalid seed in", spec))?;
            Ok(random_polynomial(count(d, spec)?, seed))
        }
        ("lacunary", [n]) => Ok(CoefficientSeries::lacunary(count(n, spec)?)),
        ("file", _) => {
            let text = fs::read_to_string(rest).map_err(|e| bad(&format!("cannot read coefficient file ({e})"), rest))?;
            parse_coefficients(&text)
        }
        _ => Err(bad("invalid function", spec)),
    }
}

/// `hl:p:q | berg:p:q:α[:β] | blocked:p:q:α | lp:s[:α] | ces:s | bloch |
/// littlebloch | bmoa | lip:α:s | zyg:s | hsob:s:β | dirichlet:s`
pub fn parse_space(spec: &str) -> Result<SpaceFamily> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or("");
    let nums = parts.map(|f| real(f, spec)).collect::<Result<Vec<f64>>>()?;
    use SpaceFamily::*;
    Ok(match (kind, nums.as_slice()) {
        ("hl", &[p, q]) => HardyLorentz { p, q },
        ("berg", &[p, q, alpha]) => BergmanSobolev { p, q, alpha, beta: 0.0 },
        ("berg", &[p, q, alpha, beta]) => BergmanSobolev { p, q, alpha, beta },
        ("blocked", &[p, q, alpha]) => Blocked { p, q, alpha },
        ("lp", &[s]) => LpSeq { s, alpha: 0.0 },
        ("lp", &[s, alpha]) => LpSeq { s, alpha },
        ("ces", &[s]) => Ces { s },
        ("bloch", &[]) => Bloch,
        ("littlebloch", &[]) => LittleBlochMetric,
        ("bmoa", &[]) => Bmoa,
        ("lip", &[alpha, s]) => Lipschitz { alpha, s },
        ("zyg", &[s]) => Zygmund { s },
        ("hsob", &[s, beta]) => HardySobolev { s, beta },
        ("dirichlet", &[s]) => BergmanSobolev {
            p: s,
            q: s,
            alpha: 1.0,
            beta: 1.0,
        },
        _ => return Err(bad("invalid space", spec)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functions() {
        assert_eq!(parse_function("monomial:3").unwrap(), CoefficientSeries::monomial(3));
        assert_eq!(parse_function("cauchy:1:0").unwrap(), CoefficientSeries::constant(1.0));
        assert_eq!(parse_function("random:8:5").unwrap(), random_polynomial(8, 5));
        assert!(parse_function("monomial").is_err());
        assert!(parse_function("cauchy:x:3").is_err());
        assert!(parse_function("wavelet:3").is_err());
    }

    #[test]
    fn spaces() {
        assert_eq!(
            parse_space("hl:0.5:inf").unwrap(),
            SpaceFamily::HardyLorentz { p: 0.5, q: f64::INFINITY }
        );
        assert_eq!(
            parse_space("berg:2:2:1").unwrap(),
            SpaceFamily::BergmanSobolev {
                p: 2.0,
                q: 2.0,
                alpha: 1.0,
                beta: 0.0
            }
        );
        assert_eq!(parse_space("bloch").unwrap(), SpaceFamily::Bloch);
        assert!(parse_space("bloch:1").is_err());
        assert!(parse_space("hl:1").is_err());
    }

    #[test]
    fn coefficient_text() {
        let f = parse_coefficients("# header\n1 0\n\n0.5 -2\n3\n").unwrap();
        assert_eq!(
            f.coeffs(),
            &[Complex64::new(1.0, 0.0), Complex64::new(0.5, -2.0), Complex64::new(3.0, 0.0)]
        );
        assert!(parse_coefficients("1 2 3\n").is_err());
        assert!(parse_coefficients("").is_err());
    }
}
