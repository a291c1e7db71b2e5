fn main() {
    // Die quietly when a downstream pipe closes (e.g. `yangian classify … | head`)
    // instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(yangian::run());
}
