//! Built-in scenarios, available as `tricorr run --preset <name>`.

use crate::scenario::{parse_config, ScenarioConfig};

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub source: &'static str,
}

macro_rules! preset {
    ($name:literal, $description:literal) => {
        Preset {
            name: $name,
            description: $description,
            source: include_str!(concat!("../presets/", $name, ".json")),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    preset!("fig2a", "xi trajectory, weak upper drive (omega1 2, omega2 1)"),
    preset!("fig2b", "xi trajectory, strong upper drive (omega1 2, omega2 5)"),
    preset!("fig3a", "xi sweep of omega2 over [0.1, 5.9] at t = 1, omega1 1.5"),
    preset!("fig3b", "xi sweep of omega2 over [0.1, 5.9] at t = 1, omega1 3.5"),
    preset!("fig4a", "lambda trajectory (omega1 4, omega2 5)"),
    preset!("fig4b", "lambda trajectory (omega1 4, omega2 1)"),
    preset!("fig5", "v trajectory (omega1 2, omega2 4)"),
    preset!("fig6-xi-2", "xi trajectory, equal drives 2"),
    preset!("fig6-xi-4", "xi trajectory, equal drives 4"),
    preset!("fig6-lambda-2", "lambda trajectory, equal drives 2"),
    preset!("fig6-lambda-4", "lambda trajectory, equal drives 4"),
    preset!("fig6-v-2", "v trajectory, equal drives 2"),
    preset!("fig6-v-4", "v trajectory, equal drives 4"),
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

impl Preset {
    pub fn config(&self) -> ScenarioConfig {
        parse_config(self.source).expect("built-in preset is valid").config
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Mode;

    #[test]
    fn every_preset_parses_without_warnings() {
        for p in PRESETS {
            let parsed = parse_config(p.source).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert!(parsed.warnings.is_empty(), "{}: {:?}", p.name, parsed.warnings);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(find("fig3a").unwrap().config().mode, Mode::Sweep);
        assert!(find("fig9").is_none());
    }
}
