use anyhow::{anyhow, bail, Context, Result};
use cubic_mds::lfunc::{character_eta, character_mod24, psi_n_character, DirichletCharacter};
use num_complex::Complex64;

/// `"RE,IM"` or `"RE"`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(z)
}

/// `eta:-n`, `mod24:j` or `psi:n`.
pub fn parse_character(spec: &str) -> Result<DirichletCharacter> {
    let (kind, arg) =
        spec.split_once(':').ok_or_else(|| anyhow!("character '{spec}' should look like eta:-n, mod24:j or psi:n"))?;
    let chi = match kind {
        "eta" => {
            let d: i64 = arg.parse().with_context(|| format!("eta index '{arg}'"))?;
            if d >= 0 {
                bail!("eta takes a negative discriminant -n, got {d}");
            }
            character_eta(d.unsigned_abs())?
        }
        "mod24" => {
            let j: u8 = arg.parse().with_context(|| format!("mod24 pattern '{arg}'"))?;
            character_mod24(j)?
        }
        "psi" => psi_n_character(arg.parse().with_context(|| format!("psi index '{arg}'"))?)?,
        _ => bail!("unknown character family '{kind}'"),
    };
    Ok(chi)
}
