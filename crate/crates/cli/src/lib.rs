//! Command-line front end: instance documents, the built-in library,
//! report rendering, the `eval` expression language and the fuzzer.

pub mod commands;
pub mod eval;
pub mod fuzz;
pub mod instance_file;
pub mod library;
pub mod report;

use clap::{Parser, Subcommand};

use commands::{CohomologyRequest, Level, Output};

#[derive(Parser, Debug)]
#[command(name = "gcrf", version, about = "Exact checks of generalized CR structures on polynomial instances")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Rational point, as `c1,c2,..`, at which adapted frames are validated.
    #[arg(long, global = true, value_name = "POINT", allow_hyphen_values = true)]
    pub base_point: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide the conditions of one structure level.
    Check {
        /// Instance file, or `builtin:NAME`.
        file: String,
        /// One of f, cr, crf, quasi, integrable, contact, normality, contact_poisson, submanifold.
        #[arg(long, short)]
        level: String,
    },
    /// Truncated Poisson cohomology and, with `A`, its gradings and spectral terms.
    Cohomology {
        file: String,
        /// Bound on the coefficient degree.
        #[arg(long, short = 'D', default_value_t = 2)]
        degree: u32,
        /// Highest multivector degree; defaults to the dimension.
        #[arg(long)]
        k_max: Option<usize>,
        /// Check the (Q, P) bigrading identities of d_pi.
        #[arg(long)]
        bigrading: bool,
        /// Report E1, E2, E3 of the filtration by P-degree.
        #[arg(long)]
        spectral: bool,
        /// Check the triple grading identities; needs adapted frames.
        #[arg(long)]
        triple: bool,
    },
    /// Evaluate a bracket expression on the tensors of an instance.
    Eval { file: String, expression: String },
    /// Run every built-in instance through the applicable checks.
    Corpus {
        /// List the built-in instances and exit.
        #[arg(long)]
        list: bool,
    },
    /// Print an instance in canonical form.
    Format { file: String },
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Output {
    let bp = cli.base_point.as_deref();
    match cli.command {
        Command::Check { file, level } => match Level::parse(&level) {
            Some(l) => commands::check_output(&file, l, bp, cli.json),
            None => {
                let all: Vec<&str> = Level::ALL.iter().map(|l| l.as_str()).collect();
                Output::usage_error(format!("unknown level `{level}`; expected one of {}", all.join(", ")))
            }
        },
        Command::Cohomology { file, degree, k_max, bigrading, spectral, triple } => {
            let req = CohomologyRequest { max_degree: degree, k_max, bigrading, spectral, triple };
            commands::cohomology_output(&file, &req, bp, cli.json)
        }
        Command::Eval { file, expression } => match commands::load_or_usage(&file, bp) {
            Ok(m) => commands::eval(&m, &expression, cli.json),
            Err(o) => o,
        },
        Command::Corpus { list: true } => {
            let names: Vec<&str> = library::builtin_names().collect();
            Output { stdout: names.join("\n") + "\n", stderr: String::new(), code: 0 }
        }
        Command::Corpus { list: false } => commands::corpus_output(cli.json),
        Command::Format { file } => match commands::load_or_usage(&file, bp) {
            Ok(m) => Output { stdout: instance_file::format_instance(&m), stderr: String::new(), code: 0 },
            Err(o) => o,
        },
    }
}

/// Parses `args` (program name first) and runs them; clap usage errors map to exit 2.
pub fn run_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Output { stdout: text, stderr: String::new(), code: 0 }
            }
        }
    }
}
