fn main() {
    std::process::exit(outlier_extremes::cli::run(std::env::args_os()));
}
