//! Rankings of node scores and rank correlation.

use std::cmp::Ordering;

/// Rounds to 12 significant digits, the precision scores are reported at.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// `%.12g`-style text for `x`.
pub fn format_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Node indices ordered by descending score (at reporting precision), ties
/// broken by ascending label.
pub fn rank_order(scores: &[f64], labels: &[String]) -> Vec<usize> {
    let rounded: Vec<f64> = scores.iter().map(|&s| round_sig12(s)).collect();
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| {
        rounded[b]
            .partial_cmp(&rounded[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| labels[a].cmp(&labels[b]))
    });
    idx
}

/// `ranks[i]` is the 1-based position of node `i` in [`rank_order`].
pub fn ranks(scores: &[f64], labels: &[String]) -> Vec<usize> {
    let mut out = vec![0; scores.len()];
    for (pos, &i) in rank_order(scores, labels).iter().enumerate() {
        out[i] = pos + 1;
    }
    out
}

/// Indices of the `k` highest-ranked nodes.
pub fn top_k(scores: &[f64], labels: &[String], k: usize) -> Vec<usize> {
    rank_order(scores, labels).into_iter().take(k).collect()
}

/// Kendall's tau-b between two score vectors; `None` when either is
/// constant or there are fewer than two items.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let (x, y): (Vec<f64>, Vec<f64>) = (
        x.iter().map(|&v| round_sig12(v)).collect(),
        y.iter().map(|&v| round_sig12(v)).collect(),
    );
    let n = x.len();
    let (mut concordant, mut discordant, mut tie_x, mut tie_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i].partial_cmp(&x[j])?;
            let dy = y[i].partial_cmp(&y[j])?;
            match (dx, dy) {
                (Ordering::Equal, Ordering::Equal) => {}
                (Ordering::Equal, _) => tie_x += 1,
                (_, Ordering::Equal) => tie_y += 1,
                _ if dx == dy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let n0 = (concordant + discordant + tie_x) as f64;
    let n1 = (concordant + discordant + tie_y) as f64;
    if n0 == 0.0 || n1 == 0.0 {
        return None;
    }
    Some((concordant - discordant) as f64 / (n0 * n1).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("n{i}")).collect()
    }

    #[test]
    fn formatting() {
        assert_eq!(format_g12(1.2), "1.2");
        assert_eq!(format_g12(0.0), "0");
        assert_eq!(format_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_g12(1e-7), "1e-07");
        assert_eq!(format_g12(-2.5e15), "-2.5e+15");
        assert_eq!(format_g12(123456789012.0), "123456789012");
        assert_eq!(format_g12(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_g12(1.2000000000000002), "1.2");
        assert_eq!(format_g12(0.0001), "0.0001");
        assert_eq!(format_g12(f64::INFINITY), "inf");
    }

    #[test]
    fn ties_break_by_label() {
        let l = vec!["b".to_string(), "a".to_string(), "c".to_string()];
        assert_eq!(
            rank_order(&[1.2, 1.2000000000000002, 0.5], &l),
            vec![1, 0, 2]
        );
        assert_eq!(ranks(&[1.2, 1.2, 0.5], &l), vec![2, 1, 3]);
        assert_eq!(top_k(&[0.1, 0.3, 0.2], &labels(3), 2), vec![1, 2]);
    }

    #[test]
    fn tau_b_known_values() {
        assert_eq!(kendall_tau_b(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), Some(1.0));
        assert_eq!(
            kendall_tau_b(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]),
            Some(-1.0)
        );
        assert_eq!(kendall_tau_b(&[1.0, 1.0], &[1.0, 2.0]), None);
        // x = [1,2,2,3], y = [1,3,2,4]: C = 5, D = 0, ties in x only = 1
        let t = kendall_tau_b(&[1.0, 2.0, 2.0, 3.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((t - 5.0 / (5.0f64 * 6.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tau_b_matches_sign_formula() {
        // tau-b = Σ sgn(Δx)sgn(Δy) / sqrt(Σ sgn(Δx)² · Σ sgn(Δy)²)
        let x = [0.3, 0.1, 0.4, 0.1, 0.5, 0.9, 0.2];
        let y = [0.2, 0.7, 0.1, 0.8, 0.2, 0.8, 0.4];
        let sgn = |v: f64| {
            if v > 0.0 {
                1.0
            } else if v < 0.0 {
                -1.0
            } else {
                0.0
            }
        };
        let (mut num, mut sx, mut sy) = (0.0, 0.0, 0.0f64);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let (a, b) = (sgn(x[i] - x[j]), sgn(y[i] - y[j]));
                num += a * b;
                sx += a * a;
                sy += b * b;
            }
        }
        let expected = num / (sx * sy).sqrt();
        assert!((kendall_tau_b(&x, &y).unwrap() - expected).abs() < 1e-15);
    }
}
