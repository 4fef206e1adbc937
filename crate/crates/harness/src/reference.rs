//! Published accuracies (%) of TCA, JDA, BDA and JPDA on the 36 benchmark
//! tasks, used to score runs on user-supplied benchmark features.

pub struct ReferenceTask {
    pub family: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    /// TCA, JDA, BDA, JPDA.
    pub accuracy: [f64; 4],
}

macro_rules! tasks {
    ($($family:literal $src:literal $tgt:literal $tca:literal $jda:literal $bda:literal $jpda:literal;)*) => {
        &[$(ReferenceTask { family: $family, source: $src, target: $tgt, accuracy: [$tca, $jda, $bda, $jpda] },)*]
    };
}

pub const REFERENCE_TASKS: &[ReferenceTask] = tasks! {
    "Multi-PIE" "C05" "C07" 40.76 58.81 58.20 59.36;
    "Multi-PIE" "C05" "C09" 41.79 54.23 52.82 66.67;
    "Multi-PIE" "C05" "C27" 59.63 84.50 83.03 83.99;
    "Multi-PIE" "C05" "C29" 29.35 49.75 49.14 49.51;
    "Multi-PIE" "C07" "C05" 41.81 57.62 57.35 63.00;
    "Multi-PIE" "C07" "C09" 51.47 62.93 62.75 60.85;
    "Multi-PIE" "C07" "C27" 64.73 75.82 75.76 77.05;
    "Multi-PIE" "C07" "C29" 33.70 39.89 39.71 47.67;
    "Multi-PIE" "C09" "C05" 34.69 50.96 51.35 59.78;
    "Multi-PIE" "C09" "C07" 47.70 57.95 56.41 63.35;
    "Multi-PIE" "C09" "C27" 56.23 68.46 67.86 74.47;
    "Multi-PIE" "C09" "C29" 33.15 39.95 42.40 52.70;
    "Multi-PIE" "C27" "C05" 55.64 80.58 80.52 84.87;
    "Multi-PIE" "C27" "C07" 67.83 82.63 83.06 83.24;
    "Multi-PIE" "C27" "C09" 75.86 87.25 87.25 87.44;
    "Multi-PIE" "C27" "C29" 40.26 54.66 54.53 65.38;
    "Multi-PIE" "C29" "C05" 26.98 46.46 47.99 53.63;
    "Multi-PIE" "C29" "C07" 29.90 42.05 43.22 51.32;
    "Multi-PIE" "C29" "C09" 29.90 53.31 47.92 55.76;
    "Multi-PIE" "C29" "C27" 33.64 57.01 57.10 58.49;
    "Office+Caltech" "C" "A" 38.20 44.78 44.57 47.60;
    "Office+Caltech" "C" "W" 38.64 41.69 40.34 45.76;
    "Office+Caltech" "C" "D" 41.40 45.22 45.22 46.50;
    "Office+Caltech" "A" "C" 37.76 39.36 39.27 40.78;
    "Office+Caltech" "A" "W" 37.63 37.97 37.97 40.68;
    "Office+Caltech" "A" "D" 33.12 39.49 40.76 36.94;
    "Office+Caltech" "W" "C" 29.30 31.17 31.43 34.55;
    "Office+Caltech" "W" "A" 30.06 32.78 32.46 33.82;
    "Office+Caltech" "W" "D" 87.26 89.17 89.17 88.54;
    "Office+Caltech" "D" "C" 31.70 31.52 31.17 34.73;
    "Office+Caltech" "D" "A" 32.15 33.09 33.19 34.66;
    "Office+Caltech" "D" "W" 86.10 89.49 89.49 91.19;
    "COIL" "COIL1" "COIL2" 88.47 89.31 89.44 92.08;
    "COIL" "COIL2" "COIL1" 85.83 88.47 88.33 89.86;
    "USPS+MNIST" "USPS" "MNIST" 51.05 59.65 59.90 59.20;
    "USPS+MNIST" "MNIST" "USPS" 56.28 67.28 67.39 68.94;
};

/// Published four-algorithm averages over all tasks.
pub const REFERENCE_AVERAGES: [f64; 4] = [47.22, 57.37, 57.18, 60.68];

pub fn find(source: &str, target: &str) -> Option<&'static ReferenceTask> {
    REFERENCE_TASKS
        .iter()
        .find(|t| t.source.eq_ignore_ascii_case(source) && t.target.eq_ignore_ascii_case(target))
}
