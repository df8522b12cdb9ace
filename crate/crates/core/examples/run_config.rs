//! Driving the batch front end from code: parse a TOML configuration, apply
//! overrides, run a command and print its artifacts.

use marked_hawkes::cli::{execute, CommandKind, RunConfig};

const CONFIG: &str = r#"
[model]
nu = 1.0
kernel = { family = "exp", beta = 1.0 }
marks = { family = "exponential", rate = 2.0 }

[claims]
law = { family = "exponential", rate = 1.0 }
rho = 3.0
u = 10.0

[run]
x_grid = [-1.0, 0.0, 2.0, 3.0]
replicas = 200
"#;

fn main() {
    let config = RunConfig::parse(CONFIG, &["run.seed=5".to_string()]).expect("valid config");
    for kind in [CommandKind::RateFunction, CommandKind::Ruin] {
        match execute(kind, &config) {
            Ok(artifacts) => {
                for a in artifacts {
                    println!("--- {}\n{}", a.name, a.contents);
                }
            }
            Err(e) => println!("{kind:?} failed (exit code {}): {e}", e.exit_code()),
        }
    }
}
