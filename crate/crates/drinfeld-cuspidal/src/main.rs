fn main() {
    std::process::exit(drinfeld_cuspidal::cli::run(std::env::args_os()));
}
