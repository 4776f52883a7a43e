//! Writes the trace file of `Gamma_n` (default `n = 1`) to standard output.

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let file = semiarith::family::gamma_trace_file(n)?;
    println!("{}", serde_json::to_string_pretty(&file)?);
    Ok(())
}
