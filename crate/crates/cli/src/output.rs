use photocount::{CountDistribution, StateModel};
use serde_json::json;

/// `%.{digits}g`-style rendering: shortest of fixed or exponent notation,
/// trailing zeros removed.
pub fn format_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if exp < -5 || exp >= digits as i32 {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn dist_json(state: &StateModel, xi: f64, dist: &CountDistribution) -> String {
    let value = json!({
        "state": state,
        "xi": xi,
        "method": dist.method.name(),
        "mmax": dist.mmax,
        "trunc_err": dist.trunc_err,
        "probs": dist.probs,
    });
    serde_json::to_string_pretty(&value).unwrap()
}

pub fn dist_csv(state: &StateModel, xi: f64, dist: &CountDistribution) -> String {
    let mut out = String::new();
    out.push_str(&format!("# state: {}\n", serde_json::to_string(state).unwrap()));
    out.push_str(&format!("# xi: {xi}\n"));
    out.push_str(&format!("# method: {}\n", dist.method.name()));
    out.push_str(&format!("# trunc_err: {}\n", format_g(dist.trunc_err, 12)));
    out.push_str("m,probability\n");
    for (m, p) in dist.probs.iter().enumerate() {
        out.push_str(&format!("{m},{}\n", format_g(*p, 12)));
    }
    out
}
