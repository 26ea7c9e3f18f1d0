//! Drives the command-line interface in-process and prints its CSV.

fn main() {
    let argv = ["iqsieve", "sieve", "--d", "-3", "--family", "power", "--k", "2", "--q", "2,4", "--n", "16,64"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = iqsieve::cli::run(argv, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
}
