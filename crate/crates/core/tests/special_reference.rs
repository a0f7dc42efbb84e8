//! Special functions against 40-digit reference values (tests/data/reference.txt,
//! produced by tests/data/gen_reference.py).

use invsq::special::{bessel_i, bessel_j, bessel_k, gamma, xi_multiplier, C64};

fn parse_c(s: &str) -> C64 {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let mut it = s.split(',');
    let re: f64 = it.next().unwrap().trim().parse().unwrap();
    let im: f64 = it.next().unwrap().trim().parse().unwrap();
    C64::new(re, im)
}

/// Splits a line into its tag and the complex tuples / bare numbers.
fn fields(line: &str) -> (String, Vec<String>) {
    let mut out = Vec::new();
    let mut rest = line;
    let tag_end = rest.find(' ').unwrap();
    let tag = rest[..tag_end].to_string();
    rest = &rest[tag_end..];
    let mut cur = String::new();
    let mut depth = 0;
    for ch in rest.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ' ' if depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    (tag, out)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn matches_high_precision_reference() {
    let text = include_str!("data/reference.txt");
    let mut checked = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let (tag, f) = fields(line);
        match tag.as_str() {
            "gamma" => {
                let z = parse_c(&f[0]);
                let e = rel(gamma(z).unwrap(), parse_c(&f[1]));
                assert!(e < 1e-12, "gamma({z}) rel err {e:e}");
            }
            "xi" => {
                let m = parse_c(&f[0]);
                let t: f64 = f[1].parse().unwrap();
                let e = rel(xi_multiplier(m, t).unwrap(), parse_c(&f[2]));
                assert!(e < 1e-12, "xi({m},{t}) rel err {e:e}");
            }
            "bessel" => {
                let nu = parse_c(&f[0]);
                let x: f64 = f[1].parse().unwrap();
                let ej = rel(bessel_j(nu, x).unwrap(), parse_c(&f[2]));
                let ei = rel(bessel_i(nu, x).unwrap(), parse_c(&f[3]));
                let ek = rel(bessel_k(nu, x).unwrap(), parse_c(&f[4]));
                assert!(ej < 1e-8, "J({nu},{x}) rel err {ej:e}");
                assert!(ei < 1e-10, "I({nu},{x}) rel err {ei:e}");
                assert!(ek < 1e-10, "K({nu},{x}) rel err {ek:e}");
            }
            _ => panic!("unknown tag {tag}"),
        }
        checked += 1;
    }
    assert_eq!(checked, 39);
}
