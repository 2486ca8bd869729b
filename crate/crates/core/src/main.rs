fn main() {
    std::process::exit(influence_duel::cli::run());
}
