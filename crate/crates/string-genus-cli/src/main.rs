use std::io::Read;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let outcome = string_genus_cli::run(argv, || {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    });
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
