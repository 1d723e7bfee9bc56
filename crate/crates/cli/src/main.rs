use clap::Parser;
use nil2::budget;
use nil2_cli::{exit_code, run, Cli, Format, Objects};

fn main() {
    let cli = Cli::parse();
    if let Some(limit) = cli.max_elements {
        budget::set_max_elements(limit);
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let outcome = Objects::load(&cli).and_then(|objs| run(&cli, &objs, argv));
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            std::process::exit(exit_code(&report));
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
