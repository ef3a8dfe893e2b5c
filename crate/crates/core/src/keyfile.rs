//! Plain-text key files: one `name = value` per line, `#` comments.
//!
//! ```text
//! x0 = 0.1
//! y0 = 0.2
//! z0 = 0.3
//! c = 8/3
//! lft = 32,22,11,8
//! polys = 1,2,3
//! ```

use std::fs;
use std::path::Path;

use crate::cipher::CipherKey;
use crate::error::{Error, Result};
use crate::golden;
use crate::lorenz::LorenzParams;

/// Everything a key file can set; missing optional fields take the defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyConfig {
    pub lorenz: LorenzParams,
    pub lft: [u8; 4],
    pub poly_indices: Vec<usize>,
}

impl KeyConfig {
    pub fn with_lorenz(lorenz: LorenzParams) -> Self {
        KeyConfig {
            lorenz,
            lft: golden::DEFAULT_LFT,
            poly_indices: (1..=golden::PRIMITIVE_DEGREE8.len()).collect(),
        }
    }

    pub fn build(&self) -> Result<CipherKey> {
        CipherKey::new(self.lorenz, self.lft, self.poly_indices.clone())
    }

    pub fn from_key(key: &CipherKey) -> Self {
        KeyConfig {
            lorenz: *key.lorenz(),
            lft: key.lft(),
            poly_indices: key.poly_indices().to_vec(),
        }
    }

    /// Serialises with 17 significant digits so every float round-trips.
    pub fn to_text(&self) -> String {
        let l = &self.lorenz;
        let join = |v: &[String]| v.join(",");
        format!(
            "x0 = {:.16e}\ny0 = {:.16e}\nz0 = {:.16e}\na = {:.16e}\nb = {:.16e}\nc = {:.16e}\nstep = {:.16e}\nburn_in = {}\nlft = {}\npolys = {}\n",
            l.x0,
            l.y0,
            l.z0,
            l.a,
            l.b,
            l.c,
            l.step,
            l.burn_in,
            join(&self.lft.iter().map(u8::to_string).collect::<Vec<_>>()),
            join(&self.poly_indices.iter().map(usize::to_string).collect::<Vec<_>>()),
        )
    }
}

/// A float or a `p/q` fraction.
fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator `{p}`"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator `{q}`"))?;
            p / q
        }
        None => s.parse().map_err(|_| format!("bad number `{s}`"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| format!("bad list item `{}`", p.trim()))
        })
        .collect()
}

pub fn parse_key_text(text: &str, path: &Path) -> Result<KeyConfig> {
    let err = |line: usize, message: String| Error::KeyFile {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut cfg = KeyConfig::with_lorenz(LorenzParams::with_initial(0.0, 0.0, 0.0));
    let mut seen = [false; 3];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("expected name = value, got `{line}`")))?;
        let (name, value) = (name.trim(), value.trim());
        let l = &mut cfg.lorenz;
        let real = || parse_real(value).map_err(|m| err(line_no, m));
        match name {
            "x0" => {
                l.x0 = real()?;
                seen[0] = true;
            }
            "y0" => {
                l.y0 = real()?;
                seen[1] = true;
            }
            "z0" => {
                l.z0 = real()?;
                seen[2] = true;
            }
            "a" => l.a = real()?,
            "b" => l.b = real()?,
            "c" => l.c = real()?,
            "step" => l.step = real()?,
            "burn_in" => {
                l.burn_in = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad burn_in `{value}`")))?
            }
            "lft" => {
                let v: Vec<u8> = parse_list(value).map_err(|m| err(line_no, m))?;
                cfg.lft = v
                    .try_into()
                    .map_err(|_| err(line_no, "lft needs exactly four bytes".into()))?;
            }
            "polys" => {
                cfg.poly_indices = parse_list(value).map_err(|m| err(line_no, m))?;
            }
            other => return Err(err(line_no, format!("unknown key `{other}`"))),
        }
    }
    for (name, ok) in ["x0", "y0", "z0"].iter().zip(seen) {
        if !ok {
            return Err(err(0, format!("missing required `{name}`")));
        }
    }
    cfg.lorenz.validate().map_err(|e| err(0, e.to_string()))?;
    Ok(cfg)
}

pub fn read_key_config(path: &Path) -> Result<KeyConfig> {
    parse_key_text(&fs::read_to_string(path)?, path)
}

pub fn read_key(path: &Path) -> Result<CipherKey> {
    read_key_config(path)?.build()
}

pub fn write_key(cfg: &KeyConfig, path: &Path) -> Result<()> {
    fs::write(path, cfg.to_text())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<KeyConfig> {
        parse_key_text(text, Path::new("k.key"))
    }

    #[test]
    fn minimal_file_uses_defaults() {
        let s = parse("x0=0.1\ny0 = 0.2\n# c\nz0 = 0.3 # trailing\n").unwrap();
        assert_eq!(s.lorenz, LorenzParams::with_initial(0.1, 0.2, 0.3));
        assert_eq!(s.lft, [32, 22, 11, 8]);
        assert_eq!(s.poly_indices.len(), 16);
    }

    #[test]
    fn fractions_lists_and_errors() {
        let s = parse("x0=1\ny0=1\nz0=1\nc=8/3\nlft=1,2,3,4\npolys=3, 5\nburn_in=7").unwrap();
        assert_eq!(s.lorenz.c, 8.0 / 3.0);
        assert_eq!(s.lft, [1, 2, 3, 4]);
        assert_eq!(s.poly_indices, vec![3, 5]);
        assert_eq!(s.lorenz.burn_in, 7);

        let e = parse("x0=1\nmu=2\n").unwrap_err();
        assert_eq!(e.code(), "E_KEY");
        assert!(e.to_string().contains(":2: unknown key `mu`"), "{e}");
        assert!(parse("x0=1\ny0=1\n")
            .unwrap_err()
            .to_string()
            .contains("z0"));
        assert!(parse("x0=1\ny0=1\nz0=1\nlft=1,2,3").is_err());
        assert!(parse("x0=1/0\ny0=1\nz0=1").is_err());
        assert!(parse("x0 1").is_err());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let mut l = LorenzParams::with_initial(0.1, 1.0 / 3.0, -2.5e-7);
        l.c = 8.0 / 3.0;
        let cfg = KeyConfig {
            lorenz: l,
            lft: [9, 8, 7, 6],
            poly_indices: vec![16, 1],
        };
        assert_eq!(parse(&cfg.to_text()).unwrap(), cfg);
    }
}
