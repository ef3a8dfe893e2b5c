use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pglbox::analysis;
use pglbox::error::{Error, Result};
use pglbox::golden;
use pglbox::image::{self, Image};
use pglbox::keyfile;
use pglbox::metrics::{self, Direction, FlipLocation, FlipPosition};
use pglbox::polyfind;
use pglbox::sbox::{self, BijectivityReport, LftParams};
use pglbox::{cipher, BinaryPoly, CipherKey};

#[derive(Parser)]
#[command(
    name = "pglbox",
    version,
    about = "LFT S-boxes over GF(2^8) and a Lorenz image cipher"
)]
struct Cli {
    /// Key file (`name = value` lines)
    #[arg(long, global = true)]
    key: Option<PathBuf>,
    /// Seed for sampled statistics only; the cipher never uses an RNG
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SboxFormat {
    Text,
    Bin,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all degree-N polynomials with nonzero constant term (TSV)
    EnumeratePolys {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        primitive_only: bool,
    },
    /// Classify a single polynomial given as hex (0x11D) or monomials (x^8+x^4+x^3+x^2+1)
    ClassifyPoly {
        poly: String,
    },
    /// Build an LFT S-box
    GenSbox {
        /// Index 1..=16 into the primitive degree-8 list
        #[arg(long, conflicts_with = "poly")]
        poly_index: Option<usize>,
        /// One of the primitive degree-8 polynomials, hex or monomial form
        #[arg(long)]
        poly: Option<String>,
        /// a,b,c,d
        #[arg(long, default_value = "32,22,11,8")]
        lft: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SboxFormat::Text)]
        format: SboxFormat,
    },
    /// Strength criteria of an S-box file (binary or 16x16 text)
    AnalyzeSbox {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Analyse the published table instead of a file
        #[arg(long, conflicts_with = "input")]
        published: bool,
    },
    Encrypt(CryptArgs),
    Decrypt(CryptArgs),
    /// Correlation, entropy, chi-square and GLCM statistics
    Metrics {
        #[arg(long = "in")]
        input: PathBuf,
        /// Second image for NPCR/UACI
        #[arg(long)]
        against: Option<PathBuf>,
        /// GLCM offset dr,dc
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        offset: String,
        /// Use this many randomly drawn pixel pairs for correlation
        #[arg(long)]
        sampled: Option<usize>,
        #[arg(long)]
        raw: Option<String>,
    },
    /// Noise, avalanche and key-sensitivity experiments
    AttackSim {
        #[arg(long = "in")]
        input: PathBuf,
        /// Ciphertext pixels overwritten with 255 before decryption
        #[arg(long, default_value_t = 10_000)]
        corrupt: usize,
        /// Where to write the recovered image
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also flip one plaintext bit at first/middle/last pixel
        #[arg(long)]
        avalanche: bool,
        /// Also perturb x0, y0 and z0 by this amount
        #[arg(long)]
        key_delta: Option<f64>,
        /// Also print the key-space and multi-box heuristics
        #[arg(long)]
        keyspace: bool,
        #[arg(long)]
        raw: Option<String>,
    },
    /// Dump the keystream (debug; reveals key material)
    Keystream {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct CryptArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Headerless input of the given WxH[xC]; output is then raw too
    #[arg(long)]
    raw: Option<String>,
    /// Write the keystream dump here (debug; reveals key material)
    #[arg(long)]
    emit_keystream: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.code());
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    let key_path = cli.key;
    let key = || -> Result<CipherKey> {
        let path = key_path
            .as_deref()
            .ok_or_else(|| Error::Domain("this command needs --key FILE".into()))?;
        keyfile::read_key(path)
    };
    match cli.command {
        Command::EnumeratePolys {
            degree,
            primitive_only,
        } => enumerate(degree, primitive_only),
        Command::ClassifyPoly { poly } => {
            let p: BinaryPoly = poly.parse()?;
            println!("{}", polyfind::classify(p)?.tsv_row());
            Ok(())
        }
        Command::GenSbox {
            poly_index,
            poly,
            lft,
            out,
            format,
        } => {
            let index = match (poly_index, poly) {
                (Some(i), _) => i,
                (None, Some(p)) => {
                    let p: BinaryPoly = p.parse()?;
                    golden::primitive_index(p).ok_or_else(|| {
                        Error::Domain(format!(
                            "{p} is not one of the 16 primitive degree-8 polynomials"
                        ))
                    })?
                }
                (None, None) => 1,
            };
            let s = sbox::build_sbox(LftParams::new(parse_lft(&lft)?, index))?;
            let bytes = match format {
                SboxFormat::Text => s.to_text().into_bytes(),
                SboxFormat::Bin => s.table().to_vec(),
            };
            emit(out.as_deref(), &bytes)
        }
        Command::AnalyzeSbox { input, published } => {
            let table = if published {
                golden::PUBLISHED_SBOX
            } else {
                let path =
                    input.ok_or_else(|| Error::Domain("need --in FILE or --published".into()))?;
                sbox::parse_sbox_bytes(&fs::read(path)?)?
            };
            let scan = BijectivityReport::scan(&table);
            let report = analysis::analyze(&table);
            println!("{report}");
            println!();
            println!("bijective={}", scan.is_bijective());
            if !scan.is_bijective() {
                println!("scan={scan}");
            }
            for (k, v) in report.key_values() {
                println!("{k}={v}");
            }
            Ok(())
        }
        Command::Encrypt(args) => crypt(&key()?, &args, true),
        Command::Decrypt(args) => crypt(&key()?, &args, false),
        Command::Metrics {
            input,
            against,
            offset,
            sampled,
            raw,
        } => {
            let img = load(&input, raw.as_deref())?;
            let offset = parse_offset(&offset)?;
            print_metrics(&img, offset, sampled, seed)?;
            if let Some(other) = against {
                let other = load(&other, raw.as_deref())?;
                let r = metrics::npcr_uaci(&img, &other)?;
                println!("npcr={:.4}", r.npcr);
                println!("uaci={:.4}", r.uaci);
            }
            Ok(())
        }
        Command::AttackSim {
            input,
            corrupt,
            out,
            avalanche,
            key_delta,
            keyspace,
            raw,
        } => {
            let key = key()?;
            let img = load(&input, raw.as_deref())?;
            let r = metrics::noise_experiment(&img, &key, corrupt)?;
            println!("corrupted_pixels={}", r.corrupted);
            println!("match_fraction={:.6}", r.match_fraction);
            println!("mean_abs_error={:.4}", r.mean_abs_error);
            if let Some(out) = out {
                store(&r.recovered, &out, raw.is_some())?;
            }
            if avalanche {
                for pos in [
                    FlipPosition::First,
                    FlipPosition::Middle,
                    FlipPosition::Last,
                ] {
                    let loc = FlipLocation {
                        byte: pos.byte_index(&img),
                        bit: 0,
                    };
                    let a = metrics::plaintext_avalanche(&img, &key, loc)?;
                    println!(
                        "avalanche {pos:?} byte={} npcr={:.4} uaci={:.4}",
                        loc.byte, a.npcr, a.uaci
                    );
                }
            }
            if let Some(delta) = key_delta {
                for (name, i) in [("x0", 0), ("y0", 1), ("z0", 2)] {
                    let mut l = *key.lorenz();
                    match i {
                        0 => l.x0 += delta,
                        1 => l.y0 += delta,
                        _ => l.z0 += delta,
                    }
                    let r = metrics::key_sensitivity(&img, &key, &key.with_lorenz_params(l)?)?;
                    println!(
                        "key_sensitivity {name}+{delta:e} wrong_key_match={:.6} npcr={:.4} uaci={:.4}",
                        r.wrong_key_match, r.ciphertexts.npcr, r.ciphertexts.uaci
                    );
                }
            }
            if keyspace {
                print!("{}", metrics::keyspace_report(&key));
                println!(
                    "{}",
                    metrics::ActiveBoxHeuristic::measure(key.sboxes(), 256)
                );
            }
            Ok(())
        }
        Command::Keystream { length, out } => {
            let ks = key()?.keystream(length)?;
            emit(out.as_deref(), ks.dump().as_bytes())
        }
    }
}

fn enumerate(degree: u32, primitive_only: bool) -> Result<()> {
    let rows = polyfind::enumerate_classified(degree)?;
    println!("# poly\tmonomials\tirreducible\tprimitive\torder_of_x");
    let (mut irr, mut prim) = (0, 0);
    for r in &rows {
        irr += usize::from(r.irreducible);
        prim += usize::from(r.primitive);
        if !primitive_only || r.primitive {
            println!("{}", r.tsv_row());
        }
    }
    println!(
        "# irreducible={irr} primitive={prim} closed_form_irreducible={} closed_form_primitive={}",
        polyfind::count_irreducible(degree, 2)?,
        polyfind::count_primitive(degree, 2)?
    );
    Ok(())
}

fn crypt(key: &CipherKey, args: &CryptArgs, forward: bool) -> Result<()> {
    let img = load(&args.input, args.raw.as_deref())?;
    let ks = key.keystream(img.pixels())?;
    if let Some(path) = &args.emit_keystream {
        fs::write(path, ks.dump())?;
    }
    let out = if forward {
        cipher::encrypt_with(&img, key, &ks)?
    } else {
        cipher::decrypt_with(&img, key, &ks)?
    };
    store(&out, &args.out, args.raw.is_some())
}

fn print_metrics(
    img: &Image,
    offset: (isize, isize),
    sampled: Option<usize>,
    seed: u64,
) -> Result<()> {
    let fmt_corr = |c: Option<f64>| c.map_or("undefined".to_string(), |v| format!("{v:.6}"));
    for (name, dir) in [
        ("horizontal", Direction::Horizontal),
        ("vertical", Direction::Vertical),
    ] {
        let c = match sampled {
            Some(n) => metrics::adjacency_correlation_sampled(img, dir, n, seed)?,
            None => metrics::adjacency_correlation(img, dir)?,
        };
        println!("correlation_{name}={}", fmt_corr(c));
    }
    let hist = metrics::histogram(img);
    println!("entropy={:.6}", metrics::entropy(img));
    println!("chi_square={:.4}", metrics::chi_square_uniform(&hist));
    println!(
        "chi_square_q999={:.4}",
        metrics::chi_square_quantile(255.0, 0.999)?
    );
    let t = metrics::glcm_features(img, offset)?;
    println!("contrast={:.6}", t.contrast);
    println!("homogeneity={:.6}", t.homogeneity);
    println!("energy={:.6}", t.energy);
    Ok(())
}

fn load(path: &Path, raw: Option<&str>) -> Result<Image> {
    match raw {
        Some(dims) => image::read_raw(path, image::parse_raw_dims(dims)?),
        None => image::read_image(path),
    }
}

fn store(img: &Image, path: &Path, raw: bool) -> Result<()> {
    if raw {
        fs::write(path, img.data())?;
        Ok(())
    } else {
        image::write_image(img, path)
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn parse_lft(s: &str) -> Result<[u8; 4]> {
    let v: Vec<u8> = s
        .split(',')
        .map(|p| p.trim().parse::<u8>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Format(format!("--lft expects four bytes a,b,c,d, got `{s}`")))?;
    v.try_into()
        .map_err(|_| Error::Format(format!("--lft expects four bytes a,b,c,d, got `{s}`")))
}

fn parse_offset(s: &str) -> Result<(isize, isize)> {
    let bad = || Error::Format(format!("--offset expects dr,dc, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}
