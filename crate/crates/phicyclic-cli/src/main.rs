use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use phicyclic_cli as cli;

/// Cyclic codes, ideal matrices, q-ary lattices, and NTRU-style
/// encryption over Z[x]/(phi).
#[derive(Parser)]
#[command(name = "phicyclic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclic-code analysis over a finite field
    Code {
        #[command(subcommand)]
        command: CodeCommand,
    },
    /// Key generation, encryption, decryption
    Ntru {
        #[command(subcommand)]
        command: NtruCommand,
    },
    /// q-ary lattice membership
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Print the ideal matrix of f, its determinant, and invertibility mod q
    Idealmat {
        /// phi coefficient vector a, comma-separated integers
        #[arg(long)]
        a: String,
        /// polynomial f, comma-separated integer coefficients, index 0 first
        #[arg(long)]
        f: String,
        /// modulus for the invertibility report
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CodeCommand {
    /// List every code of F_q[x]/(phi): divisors, dimensions, parity
    /// sources, minimum distances
    Analyze {
        /// field order, a prime power
        #[arg(long)]
        q: u64,
        /// phi coefficient vector a as comma-separated canonical
        /// field-element indices (plain residues for prime q)
        #[arg(long)]
        a: String,
    },
}

#[derive(Subcommand)]
enum NtruCommand {
    /// Generate a key pair deterministically from a seed
    Keygen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        df: usize,
        /// phi coefficient vector a, comma-separated integers
        #[arg(long)]
        a: String,
        /// 64-bit unsigned decimal seed
        #[arg(long)]
        seed: u64,
        /// private key file to write (params, h, f, g)
        #[arg(long)]
        out_priv: PathBuf,
        /// public key file to write (params, h)
        #[arg(long)]
        out_pub: PathBuf,
    },
    /// Encrypt a message vector under a public key
    Encrypt {
        /// key file holding the public data
        #[arg(long = "pub")]
        pub_key: PathBuf,
        /// message as a JSON integer array, e.g. [1,0]
        #[arg(long)]
        m: String,
        /// blinding vector as a JSON integer array; mutually exclusive
        /// with --seed
        #[arg(long)]
        r: Option<String>,
        /// 64-bit unsigned decimal seed to draw r from
        #[arg(long)]
        seed: Option<u64>,
        /// ciphertext file to write; stdout carries the same document
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decrypt a ciphertext file and report the decryption margin
    Decrypt {
        /// private key file
        #[arg(long = "priv")]
        priv_key: PathBuf,
        /// ciphertext file
        #[arg(long)]
        ct: PathBuf,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Decide membership of a 2n-vector in the key's q-ary lattice
    Check {
        /// key file; a private key decides exactly, a public key decides
        /// through h
        #[arg(long)]
        key: PathBuf,
        /// vector as a JSON integer array of length 2n
        #[arg(long)]
        vector: String,
    },
}

fn run(cli: Cli) -> anyhow::Result<serde_json::Value> {
    match cli.command {
        Command::Code {
            command: CodeCommand::Analyze { q, a },
        } => cli::cmd_code_analyze(q, &a),
        Command::Ntru { command } => match command {
            NtruCommand::Keygen {
                n,
                q,
                p,
                df,
                a,
                seed,
                out_priv,
                out_pub,
            } => cli::cmd_keygen(n, q, p, df, &a, seed, &out_priv, &out_pub),
            NtruCommand::Encrypt {
                pub_key,
                m,
                r,
                seed,
                out,
            } => cli::cmd_encrypt(&pub_key, &m, r.as_deref(), seed, out.as_deref()),
            NtruCommand::Decrypt { priv_key, ct } => cli::cmd_decrypt(&priv_key, &ct),
        },
        Command::Lattice {
            command: LatticeCommand::Check { key, vector },
        } => cli::cmd_lattice_check(&key, &vector),
        Command::Idealmat { a, f, q } => cli::cmd_idealmat(&a, &f, q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(value) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("report serializes")
            );
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
