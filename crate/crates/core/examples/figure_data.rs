//! Density and probability-plot data for a 2x2 GOE with tuned centering,
//! written as CSV to the system temporary directory.

use twedge::cli::{figure1, FigureOptions};

fn main() {
    let fig = figure1(&FigureOptions {
        reps: 200_000,
        ..FigureOptions::default()
    })
    .unwrap();
    let dir = std::env::temp_dir();
    let density = dir.join("figure1_density.csv");
    let probability = dir.join("figure1_probability.csv");
    fig.density.write(&density).unwrap();
    fig.probability.write(&probability).unwrap();
    println!(
        "histogram mode {:.2}, probability-plot slope {:.4}",
        fig.histogram.mode(),
        fig.slope
    );
    println!("wrote {} and {}", density.display(), probability.display());
}
