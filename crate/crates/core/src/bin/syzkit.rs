fn main() {
    // placeholder until the script runner lands
    eprintln!("syzkit: command-line front end not wired up yet");
    std::process::exit(2);
}
