//! CSV rendering with fixed six-significant-digit numbers.

use ntnsim::{SweepResult, ZeroDbSeparation};

/// Formats `x` with six significant digits in plain decimal notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x == 0.0 {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let mut decimals = 5 - x.abs().log10().floor() as i32;
    let mut s = format!("{:.*}", decimals.max(0) as usize, x);
    // Rounding can carry into a new leading digit, e.g. 9.999996 -> 10.00000.
    let digits = s.chars().filter(char::is_ascii_digit).collect::<String>();
    if digits.trim_start_matches('0').len() > 6 && decimals > 0 {
        decimals -= 1;
        s = format!("{:.*}", decimals as usize, x);
    }
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s.remove(0);
    }
    s
}

pub const SWEEP_HEADER: &str = "variable,alpha_deg,elevation_deg,theta_deg,eirp_dbw,fspl_db,gaseous_db,scint_db,channel_gain_db,rx_dbm,noise_dbm,inr_db,itu_valid";

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in &result.rows {
        let b = &r.budget;
        let fields = [
            sig6(r.value),
            sig6(r.alpha_deg),
            sig6(r.geometry.elevation_deg),
            sig6(r.geometry.theta_deg),
            sig6(b.eirp_toward_dbw()),
            sig6(b.path_loss.fspl),
            sig6(b.path_loss.gaseous),
            sig6(b.path_loss.scintillation),
            sig6(b.channel_gain_db),
            sig6(b.rx_power_dbm),
            sig6(b.noise_dbm),
            sig6(b.inr_db),
            r.itu.valid.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub const MIN_SEPARATION_HEADER: &str = "slant_km,min_separation_km,binding_alpha_deg";

/// Unresolvable slants are written as `unresolvable`; a missing binding
/// direction (INR never above 0 dB) as `none`.
pub fn min_separation_csv(profile: &[(f64, ZeroDbSeparation)]) -> String {
    let mut out = String::from(MIN_SEPARATION_HEADER);
    out.push('\n');
    for (slant, z) in profile {
        let sep = z
            .separation_km()
            .map_or_else(|| "unresolvable".into(), sig6);
        let alpha = z.binding_alpha_deg().map_or_else(|| "none".into(), sig6);
        out.push_str(&format!("{},{sep},{alpha}\n", sig6(*slant)));
    }
    out
}
