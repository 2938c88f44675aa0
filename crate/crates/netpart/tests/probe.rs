// temporary diagnostic, not part of the suite
use std::time::Instant;

use num_rational::Ratio;

use netpart::generator::{generate_network, GeneratorConfig};
use netpart::graph::build_adjacency;
use netpart::segment_mapping::RemovalVariant;
use netpart::{node_mapping, segment_mapping, StartRule};

#[test]
#[ignore]
fn raw_repeat_times() {
    let cfg = GeneratorConfig {
        nodes: 500_000,
        c_target: Ratio::from_integer(5),
        partitions: 1,
        seed: 0xBE6,
        scatter_indices: false,
        allow_parallel: false,
    };
    let net = generate_network(&cfg).unwrap();
    let adj = build_adjacency(&net).unwrap();

    for label in ["node", "segment"] {
        let mut times = Vec::new();
        for _ in 0..15 {
            let start = Instant::now();
            match label {
                "node" => {
                    std::hint::black_box(
                        node_mapping::run(&adj, StartRule::LowestIndex)
                            .unwrap()
                            .partitions
                            .len(),
                    );
                }
                _ => {
                    std::hint::black_box(
                        segment_mapping::run(&net, RemovalVariant::Lazy, StartRule::LowestIndex)
                            .unwrap()
                            .partitions
                            .len(),
                    );
                }
            }
            times.push(start.elapsed().as_secs_f64() * 1e3);
        }
        let formatted: Vec<String> = times.iter().map(|t| format!("{t:.1}")).collect();
        eprintln!("{label}: {} ms", formatted.join(" "));
    }
}
