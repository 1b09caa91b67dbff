//! Bundled unimodular configurations, all with at most six vectors.

use super::VectorConfig;

#[derive(Clone, Debug)]
pub struct NamedConfig {
    pub name: &'static str,
    pub config: VectorConfig,
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/hypertoric/", $name, ".json")))),*]
    };
}

const FILES: &[(&str, &str)] = bundled!(
    "cotangent_p1",
    "cotangent_p2",
    "cotangent_p3",
    "cotangent_p4",
    "doubled_p2",
    "graphic_k4",
    "graphic_theta",
    "product_p1_p1",
    "product_p1_p2",
    "std1",
    "std2",
    "std3",
    "std4",
    "surface_a2",
    "surface_a3",
    "surface_a4",
    "surface_a5",
);

pub fn corpus() -> Vec<NamedConfig> {
    FILES
        .iter()
        .map(|(name, json)| NamedConfig {
            name,
            config: VectorConfig::from_json(json).expect("bundled configuration parses"),
        })
        .collect()
}
