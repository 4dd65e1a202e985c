//! Flat `key = value` scenario files.
//!
//! Recognised keys:
//!
//! | key             | meaning                                         |
//! |-----------------|-------------------------------------------------|
//! | `mass_kg`       | particle mass                                   |
//! | `box_length_um` | box width L                                     |
//! | `state`         | `n:<int>`, `gaussian:<x0>,<s0>`, `free-gaussian:<x0>,<s0>` |
//! | `detector_x_um` | detector position X                             |
//! | `t_start_ms`    | first evaluation time                           |
//! | `t_max_ms`      | last evaluation time                            |
//! | `x_grid`        | `min:max:count` in um                           |
//! | `t_grid`        | `min:max:count` in ms                           |
//! | `x_count`       | point count of the x grid                       |
//! | `t_count`       | point count of the derived time grid            |
//!
//! Blank lines and everything after `#` are ignored. Later lines override
//! earlier ones; unknown keys are errors.

use std::path::Path;

use crate::error::{Error, Result};
use crate::scenario::{GridSpec, InitialState, Scenario};

pub const KEYS: &[&str] = &[
    "mass_kg",
    "box_length_um",
    "state",
    "detector_x_um",
    "t_start_ms",
    "t_max_ms",
    "x_grid",
    "t_grid",
    "x_count",
    "t_count",
];

/// Applies one key/value pair to `scenario`.
pub fn apply(scenario: &mut Scenario, key: &str, value: &str) -> Result<()> {
    fn num<T: std::str::FromStr>(what: &'static str, v: &str) -> Result<T> {
        v.trim().parse::<T>().map_err(|_| Error::Parse {
            what,
            input: v.to_string(),
        })
    }
    match key.trim() {
        "mass_kg" => scenario.constants.mass = num("mass_kg", value)?,
        "box_length_um" => scenario.geometry.length = num("box_length_um", value)?,
        "state" => scenario.state = value.parse::<InitialState>()?,
        "detector_x_um" => scenario.detector_x = num("detector_x_um", value)?,
        "t_start_ms" => scenario.t_start = num("t_start_ms", value)?,
        "t_max_ms" => scenario.t_max = num("t_max_ms", value)?,
        "x_grid" => scenario.x_grid = value.parse::<GridSpec>()?,
        "t_grid" => scenario.t_grid = Some(value.parse::<GridSpec>()?),
        "x_count" => scenario.x_grid.count = num("x_count", value)?,
        "t_count" => {
            let count = num("t_count", value)?;
            scenario.t_count = count;
            if let Some(g) = scenario.t_grid.as_mut() {
                g.count = count;
            }
        }
        other => {
            return Err(Error::Parse {
                what: "config key",
                input: other.to_string(),
            })
        }
    }
    Ok(())
}

/// Parses config text on top of `base`.
pub fn parse_into(base: Scenario, text: &str) -> Result<Scenario> {
    let mut scenario = base;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
            line: i + 1,
            message: format!("expected key = value, got '{line}'"),
        })?;
        apply(&mut scenario, key, value).map_err(|e| Error::Config {
            line: i + 1,
            message: e.to_string(),
        })?;
    }
    Ok(scenario)
}

pub fn parse(text: &str) -> Result<Scenario> {
    parse_into(Scenario::default(), text)
}

pub fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse(&text)
}

/// Renders `scenario` in the same format `parse` reads.
pub fn render(scenario: &Scenario) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    kv("mass_kg", format!("{:e}", scenario.constants.mass));
    kv("box_length_um", scenario.geometry.length.to_string());
    kv("state", scenario.state.to_string());
    kv("detector_x_um", scenario.detector_x.to_string());
    kv("t_start_ms", scenario.t_start.to_string());
    kv("t_max_ms", scenario.t_max.to_string());
    kv("x_grid", scenario.x_grid.to_string());
    kv("t_count", scenario.t_count.to_string());
    if let Some(g) = scenario.t_grid {
        kv("t_grid", g.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_keys() {
        let text = "\
# snapshot run
mass_kg = 1.42e-25
box_length_um = 1
state = n:6   # sixth eigenstate
detector_x_um = 2
t_start_ms = 1e-6
t_max_ms = 0.15
x_grid = -1:2:301
t_count = 11
";
        let s = parse(text).unwrap();
        assert_eq!(s.state, InitialState::Eigenstate { n: 6 });
        assert_eq!(s.t_max, 0.15);
        assert_eq!(s.x_grid, GridSpec::new(-1.0, 2.0, 301));
        assert_eq!(s.time_grid(), GridSpec::new(1e-6, 0.15, 11));
        s.validate().unwrap();
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("state = n:1\nbogus = 3\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 2, .. }), "{err}");
        let err = parse("state n:1\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 1, .. }));
    }

    #[test]
    fn render_round_trips() {
        let mut s = Scenario::with_state(InitialState::TruncatedGaussian { x0: 0.5, sigma0: 0.25 });
        s.t_grid = Some(GridSpec::new(0.001, 0.6, 600));
        let back = parse(&render(&s)).unwrap();
        assert_eq!(back, s);
    }
}
