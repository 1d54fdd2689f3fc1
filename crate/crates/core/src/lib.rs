//! Correlations between the two photons emitted by a driven three-level atom.
//!
//! The pipeline runs through four modules:
//!
//! - [`atom`] integrates the damped Liouville equation for the Ξ, Λ and V
//!   configurations,
//! - [`photon`] maps the atomic density matrix onto two photonic qubits,
//! - [`correlations`] evaluates concurrence, MID, discord and work deficit,
//! - [`scenario`] and [`output`] tie them together for the `tricorr` binary.
//!
//! [`linops`] holds the small dense complex matrices and the Jacobi
//! eigensolver underneath. Numerical thresholds live in [`tolerances`].
//!
//! ```
//! use tricorr::scenario::{parse_config, run};
//!
//! let cfg = parse_config(r#"{"configuration": "v", "omega1": 2.0, "omega2": 4.0, "t_max": 0.2}"#)
//!     .unwrap()
//!     .config;
//! let records = run(&cfg).unwrap();
//! let last = records.last().unwrap();
//! assert_eq!(last.key, 0.2);
//! assert!(last.concurrence > 0.0);
//! ```

pub mod atom;
pub mod correlations;
pub mod linops;
pub mod output;
pub mod photon;
pub mod presets;
pub mod scenario;
pub mod tolerances;

// Compiles the snippets of the guide and README as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/atom-dynamics.md")]
    mod atom_dynamics {}
    #[doc = include_str!("../../../book/src/photon-state.md")]
    mod photon_state {}
    #[doc = include_str!("../../../book/src/correlations.md")]
    mod correlations {}
    #[doc = include_str!("../../../book/src/optimizer.md")]
    mod optimizer {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
