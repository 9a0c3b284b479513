use serde::{Deserialize, Serialize};

use crate::engine::EngineMetrics;

/// Line and column of a match in token mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub line: u32,
    pub col: u32,
}

/// The `--json` output of `pgs search`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub positions: Vec<usize>,
    pub n: usize,
    pub m: usize,
    pub pi_p: usize,
    pub metrics: EngineMetrics,
    pub wall_ns: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locations: Option<Vec<Location>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub const CSV_HEADER: [&str; 7] = ["n", "m", "pi_p", "match_calls", "loop_iterations", "peak_aux_words", "wall_ns"];

/// One row of `pgs bench` output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub pi_p: usize,
    pub match_calls: u64,
    pub loop_iterations: u64,
    pub peak_aux_words: u64,
    pub wall_ns: u64,
}

impl BenchRow {
    pub fn record(&self) -> [String; 7] {
        [
            self.n.to_string(),
            self.m.to_string(),
            self.pi_p.to_string(),
            self.match_calls.to_string(),
            self.loop_iterations.to_string(),
            self.peak_aux_words.to_string(),
            self.wall_ns.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn json_round_trip_is_byte_identical(
            positions in proptest::collection::vec(0usize..1_000_000, 0..20),
            n in 0usize..1 << 40, m in 1usize..1000, pi_p in 0usize..10,
            counters in proptest::array::uniform4(0u64..u64::MAX / 4),
            wall_ns in any::<u64>(),
            with_loc in any::<bool>(),
        ) {
            let metrics = EngineMetrics {
                match_calls: counters[0], loop_iterations: counters[1],
                count_decrements: counters[2], peak_aux_words: counters[3],
            };
            let locations = with_loc.then(|| positions.iter().map(|&p| Location { line: p as u32, col: 1 }).collect());
            let r = RunReport { positions, n, m, pi_p, metrics, wall_ns, locations };
            let s = r.to_json();
            let back = RunReport::from_json(&s).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(back.to_json(), s);
        }
    }

    #[test]
    fn schema_field_names() {
        let r = RunReport {
            positions: vec![0, 4],
            n: 20,
            m: 4,
            pi_p: 2,
            metrics: EngineMetrics::default(),
            wall_ns: 5,
            locations: None,
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 6);
        for k in ["positions", "n", "m", "pi_p", "metrics", "wall_ns"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        for k in ["match_calls", "loop_iterations", "count_decrements", "peak_aux_words"] {
            assert!(v["metrics"].get(k).is_some(), "{k}");
        }
    }
}
