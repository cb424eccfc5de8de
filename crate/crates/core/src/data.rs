//! Synthetic corpus generation and embedding-corpus ingestion.
//!
//! A corpus is a set of fixed-dimension vectors, each belonging to a class.
//! Classes are partitioned into labeled in-domain (IND) classes, whose labels
//! are visible to training, and out-of-domain (OOD) classes, whose labels are
//! stored only as hidden ground truth for diagnostics and test-split scoring.
//!
//! Class ids are remapped at construction so that `0..n_ind` are IND and
//! `n_ind..n_ind+n_ood` are OOD.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::euclidean;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    fn parse(tag: &str) -> Option<Split> {
        match tag {
            "train" => Some(Split::Train),
            "validation" => Some(Split::Validation),
            "test" => Some(Split::Test),
            _ => None,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        }
    }
}

/// A single vector with its class membership and split.
#[derive(Debug, Clone)]
pub struct Example {
    vector: Vec<f64>,
    true_label: usize,
    is_ind: bool,
    split: Split,
}

impl Example {
    pub fn vector(&self) -> &[f64] {
        &self.vector
    }

    pub fn is_ind(&self) -> bool {
        self.is_ind
    }

    pub fn split(&self) -> Split {
        self.split
    }

    /// Training-facing label accessor: `Some` only for IND examples.
    /// OOD labels are never visible through this path.
    pub fn supervised_label(&self) -> Option<usize> {
        if self.is_ind {
            Some(self.true_label)
        } else {
            None
        }
    }

    /// Hidden ground truth, for the evaluation module's diagnostics and for
    /// test-split scoring only. Training code must not consult this.
    pub fn diagnostic_true_label(&self) -> usize {
        self.true_label
    }
}

/// A labeled-IND / unlabeled-OOD corpus. Immutable after construction and
/// safe to share across threads.
#[derive(Debug, Clone)]
pub struct GidDataset {
    examples: Vec<Example>,
    class_names: Vec<String>,
    n_ind_classes: usize,
    n_ood_classes: usize,
    dimension: usize,
    seed: u64,
}

impl GidDataset {
    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn n_ind_classes(&self) -> usize {
        self.n_ind_classes
    }

    pub fn n_ood_classes(&self) -> usize {
        self.n_ood_classes
    }

    pub fn n_classes(&self) -> usize {
        self.n_ind_classes + self.n_ood_classes
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Class names indexed by class id (IND first, then OOD).
    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// Indices of all examples in the given split, in storage order.
    pub fn split_indices(&self, split: Split) -> Vec<usize> {
        self.examples
            .iter()
            .enumerate()
            .filter(|(_, ex)| ex.split == split)
            .map(|(i, _)| i)
            .collect()
    }

    /// The vectors at `indices`, stacked into a row-major matrix.
    pub fn vectors_for(&self, indices: &[usize]) -> Array2<f64> {
        let mut out = Array2::zeros((indices.len(), self.dimension));
        for (row, &i) in indices.iter().enumerate() {
            for (col, &v) in self.examples[i].vector.iter().enumerate() {
                out[(row, col)] = v;
            }
        }
        out
    }

    /// Writes the corpus as JSON Lines: one object per example with fields
    /// `vector`, `label`, `split`. Byte-stable under save/load/save.
    pub fn save_jsonl(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        for ex in &self.examples {
            let line = JsonExample {
                vector: ex.vector.clone(),
                label: self.class_names[ex.true_label].clone(),
                split: ex.split.tag().to_string(),
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Writes the sidecar metadata object describing the IND/OOD partition.
    pub fn save_metadata(&self, path: &Path) -> Result<()> {
        let meta = DatasetMetadata {
            n_ind_classes: self.n_ind_classes,
            n_ood_classes: self.n_ood_classes,
            dimension: self.dimension,
            seed: self.seed,
            ind_classes: self.class_names[..self.n_ind_classes].to_vec(),
            ood_classes: self.class_names[self.n_ind_classes..].to_vec(),
        };
        let mut out = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut out, &meta)?;
        out.write_all(b"\n")?;
        out.flush()?;
        Ok(())
    }

    /// Loads a corpus whose IND/OOD partition is fixed by a sidecar metadata
    /// file (the format written by [`GidDataset::save_metadata`]).
    pub fn load_with_metadata(jsonl_path: &Path, meta_path: &Path) -> Result<GidDataset> {
        let meta: DatasetMetadata = serde_json::from_reader(BufReader::new(File::open(meta_path)?))?;
        let raw = read_jsonl(jsonl_path)?;
        let mut class_names = meta.ind_classes.clone();
        class_names.extend(meta.ood_classes.iter().cloned());
        build_dataset(raw, class_names, meta.n_ind_classes, meta.seed)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonExample {
    vector: Vec<f64>,
    label: String,
    split: String,
}

#[derive(Serialize, Deserialize)]
struct DatasetMetadata {
    n_ind_classes: usize,
    n_ood_classes: usize,
    dimension: usize,
    seed: u64,
    ind_classes: Vec<String>,
    ood_classes: Vec<String>,
}

/// Configuration for synthetic Gaussian-mixture corpora.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_ind_classes: usize,
    pub n_ood_classes: usize,
    pub dimension: usize,
    pub samples_per_class: usize,
    /// Distance between cluster means, in units of the unit within-class
    /// standard deviation.
    pub class_separation: f64,
    /// Ratio of largest to smallest OOD class size (geometric decay).
    pub imbalance_factor: f64,
    /// Fraction of the total class pool designated OOD. The pool size is
    /// `n_ind_classes + n_ood_classes`; sweeping this value repartitions it.
    pub ood_ratio: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(n_ind: usize, n_ood: usize, dimension: usize, samples_per_class: usize) -> Self {
        let total = (n_ind + n_ood) as f64;
        Self {
            n_ind_classes: n_ind,
            n_ood_classes: n_ood,
            dimension,
            samples_per_class,
            class_separation: 6.0,
            imbalance_factor: 1.0,
            ood_ratio: n_ood as f64 / total,
            seed: 7,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dimension < 2 {
            return Err(Error::Config(format!(
                "dimension must be >= 2, got {}",
                self.dimension
            )));
        }
        if self.n_ind_classes == 0 || self.n_ood_classes == 0 {
            return Err(Error::Config("need at least one IND and one OOD class".into()));
        }
        if self.imbalance_factor < 1.0 {
            return Err(Error::Config(format!(
                "imbalance_factor must be >= 1, got {}",
                self.imbalance_factor
            )));
        }
        if !(self.ood_ratio > 0.0 && self.ood_ratio < 1.0) {
            return Err(Error::Config(format!(
                "ood_ratio must lie in (0,1), got {}",
                self.ood_ratio
            )));
        }
        if self.class_separation <= 0.0 {
            return Err(Error::Config("class_separation must be positive".into()));
        }
        Ok(())
    }
}

/// Partitions class ids into IND and OOD sets uniformly at random, with
/// `round(ood_ratio * total)` classes going OOD. Both returned sets are
/// sorted. Deterministic under `seed`.
pub fn split_ind_ood(
    class_ids: &[usize],
    ood_ratio: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(ood_ratio > 0.0 && ood_ratio < 1.0) {
        return Err(Error::Config(format!(
            "ood_ratio must lie in (0,1), got {ood_ratio}"
        )));
    }
    let total = class_ids.len();
    let n_ood = (ood_ratio * total as f64).round() as usize;
    if n_ood == 0 || n_ood == total {
        return Err(Error::Config(format!(
            "ood_ratio {ood_ratio} over {total} classes leaves one side empty"
        )));
    }
    let mut shuffled = class_ids.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);
    let mut ood: Vec<usize> = shuffled[..n_ood].to_vec();
    let mut ind: Vec<usize> = shuffled[n_ood..].to_vec();
    ood.sort_unstable();
    ind.sort_unstable();
    Ok((ind, ood))
}

/// Geometric-decay class sizes: `sizes[0] = largest`, and
/// `largest / smallest = imbalance_factor` (up to rounding).
fn imbalanced_sizes(largest: usize, count: usize, imbalance_factor: f64) -> Vec<usize> {
    if count == 1 || imbalance_factor <= 1.0 {
        return vec![largest; count];
    }
    let decay = imbalance_factor.powf(-1.0 / (count as f64 - 1.0));
    (0..count)
        .map(|r| ((largest as f64) * decay.powi(r as i32)).round() as usize)
        .collect()
}

/// Per-class 80/10/10 split counts: (train, validation, test).
fn split_counts(n: usize) -> (usize, usize, usize) {
    let train = (0.8 * n as f64).floor() as usize;
    let val = (0.1 * n as f64).floor() as usize;
    (train, val, n - train - val)
}

/// Draws `count` cluster means whose pairwise distances are all at least
/// `separation`, scaling the draw radius up until the constraint holds.
fn draw_separated_means(
    count: usize,
    dim: usize,
    separation: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>> {
    let normal = StandardNormal;
    let mut scale = separation.max(1.0);
    for _ in 0..100 {
        let means: Vec<Vec<f64>> = (0..count)
            .map(|_| (0..dim).map(|_| scale * normal.sample(rng) as f64).collect())
            .collect();
        let mut ok = true;
        'outer: for i in 0..count {
            for j in (i + 1)..count {
                if euclidean(&means[i], &means[j]) < separation {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return Ok(means);
        }
        scale *= 1.5;
    }
    Err(Error::Config(
        "failed to place separated cluster means; separation too aggressive".into(),
    ))
}

/// Generates a synthetic corpus of `n_ind + n_ood` unit-variance Gaussian
/// clusters. The IND/OOD partition of the class pool follows `ood_ratio`;
/// OOD class sizes decay geometrically according to `imbalance_factor`;
/// every class is split 80/10/10 into train/validation/test.
pub fn generate_synthetic(config: &SynthConfig) -> Result<GidDataset> {
    config.validate()?;
    let total = config.n_ind_classes + config.n_ood_classes;
    let ids: Vec<usize> = (0..total).collect();
    let (ind_ids, ood_ids) = split_ind_ood(&ids, config.ood_ratio, config.seed)?;
    let n_ind = ind_ids.len();
    let n_ood = ood_ids.len();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let means = draw_separated_means(total, config.dimension, config.class_separation, &mut rng)?;

    // New class ids: IND classes first (sorted by original id), then OOD.
    let ordering: Vec<usize> = ind_ids.iter().chain(ood_ids.iter()).copied().collect();
    let class_names: Vec<String> = ordering.iter().map(|id| format!("class_{id:02}")).collect();

    let ood_sizes = imbalanced_sizes(config.samples_per_class, n_ood, config.imbalance_factor);
    let sizes: Vec<usize> = (0..total)
        .map(|new_id| {
            if new_id < n_ind {
                config.samples_per_class
            } else {
                ood_sizes[new_id - n_ind]
            }
        })
        .collect();

    for (new_id, &n) in sizes.iter().enumerate() {
        let (train, val, test) = split_counts(n);
        if train < 2 || val < 2 || test < 2 {
            return Err(Error::Config(format!(
                "class {} would have a split with fewer than 2 samples ({train}/{val}/{test})",
                class_names[new_id]
            )));
        }
    }

    let normal = StandardNormal;
    let mut examples = Vec::new();
    for (new_id, &orig_id) in ordering.iter().enumerate() {
        let mean = &means[orig_id];
        let n = sizes[new_id];
        let (train, val, _) = split_counts(n);
        for s in 0..n {
            let vector: Vec<f64> = mean
                .iter()
                .map(|&m| m + normal.sample(&mut rng) as f64)
                .collect();
            let split = if s < train {
                Split::Train
            } else if s < train + val {
                Split::Validation
            } else {
                Split::Test
            };
            examples.push(Example {
                vector,
                true_label: new_id,
                is_ind: new_id < n_ind,
                split,
            });
        }
    }

    Ok(GidDataset {
        examples,
        class_names,
        n_ind_classes: n_ind,
        n_ood_classes: n_ood,
        dimension: config.dimension,
        seed: config.seed,
    })
}

fn read_jsonl(path: &Path) -> Result<Vec<JsonExample>> {
    let file = BufReader::new(File::open(path)?);
    let mut rows = Vec::new();
    let mut dim: Option<usize> = None;
    for (idx, line) in file.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonExample = serde_json::from_str(&line).map_err(|e| Error::Ingest {
            line: line_no,
            msg: e.to_string(),
        })?;
        if Split::parse(&row.split).is_none() {
            return Err(Error::Ingest {
                line: line_no,
                msg: format!("unknown split tag '{}'", row.split),
            });
        }
        match dim {
            None => dim = Some(row.vector.len()),
            Some(d) if d != row.vector.len() => {
                return Err(Error::Ingest {
                    line: line_no,
                    msg: format!("vector dimension {} differs from {}", row.vector.len(), d),
                })
            }
            _ => {}
        }
        if row.vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::Ingest {
                line: line_no,
                msg: "vector contains non-finite values".into(),
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput("corpus file is empty".into()));
    }
    if rows[0].vector.len() < 2 {
        return Err(Error::InvalidInput(
            "corpus vectors must have dimension >= 2".into(),
        ));
    }
    Ok(rows)
}

fn build_dataset(
    rows: Vec<JsonExample>,
    class_names: Vec<String>,
    n_ind: usize,
    seed: u64,
) -> Result<GidDataset> {
    let dimension = rows[0].vector.len();
    let id_of = |name: &str| class_names.iter().position(|c| c == name);
    let mut examples = Vec::with_capacity(rows.len());
    for row in rows {
        let class = id_of(&row.label).ok_or_else(|| {
            Error::InvalidInput(format!("label '{}' not present in class partition", row.label))
        })?;
        examples.push(Example {
            vector: row.vector,
            true_label: class,
            is_ind: class < n_ind,
            split: Split::parse(&row.split).unwrap(),
        });
    }
    // Every class must still be populated in the training split.
    let mut has_train = vec![false; class_names.len()];
    for ex in &examples {
        if ex.split == Split::Train {
            has_train[ex.true_label] = true;
        }
    }
    if let Some(missing) = has_train.iter().position(|&h| !h) {
        return Err(Error::InvalidInput(format!(
            "class '{}' is empty after the split",
            class_names[missing]
        )));
    }
    let n_ood = class_names.len() - n_ind;
    Ok(GidDataset {
        examples,
        class_names,
        n_ind_classes: n_ind,
        n_ood_classes: n_ood,
        dimension,
        seed,
    })
}

/// Ingests an externally computed embedding corpus (JSON Lines with fields
/// `vector`, `label`, `split`) and partitions its classes into IND/OOD
/// uniformly at random with the given ratio. Deterministic under `seed`.
pub fn load_embedding_corpus(path: &Path, ood_ratio: f64, seed: u64) -> Result<GidDataset> {
    let rows = read_jsonl(path)?;
    let mut names: Vec<String> = rows.iter().map(|r| r.label.clone()).collect();
    names.sort_unstable();
    names.dedup();
    let ids: Vec<usize> = (0..names.len()).collect();
    let (ind_ids, ood_ids) = split_ind_ood(&ids, ood_ratio, seed)?;
    let ordered: Vec<String> = ind_ids
        .iter()
        .chain(ood_ids.iter())
        .map(|&i| names[i].clone())
        .collect();
    build_dataset(rows, ordered, ind_ids.len(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::max_profit_assignment;
    use crate::kmeans::{self, KMeansConfig};
    use ndarray::Array2;
    use std::io::Write as _;

    fn small_config() -> SynthConfig {
        let mut cfg = SynthConfig::new(2, 2, 8, 50);
        cfg.seed = 7;
        cfg
    }

    #[test]
    fn synthetic_counts_match_config() {
        let ds = generate_synthetic(&small_config()).unwrap();
        assert_eq!(ds.examples().len(), 200);
        assert_eq!(ds.n_ind_classes(), 2);
        assert_eq!(ds.n_ood_classes(), 2);
        let ind_labeled = ds
            .examples()
            .iter()
            .filter(|e| e.supervised_label().is_some())
            .count();
        assert_eq!(ind_labeled, 100);
    }

    #[test]
    fn imbalance_sizes_follow_geometric_decay() {
        // 40 per class with factor 4 over three classes: 40:20:10.
        assert_eq!(imbalanced_sizes(40, 3, 4.0), vec![40, 20, 10]);
        let mut cfg = SynthConfig::new(2, 3, 8, 40);
        cfg.imbalance_factor = 4.0;
        cfg.ood_ratio = 0.6;
        let ds = generate_synthetic(&cfg).unwrap();
        let mut ood_counts = vec![0usize; ds.n_classes()];
        for ex in ds.examples() {
            if !ex.is_ind() {
                ood_counts[ex.diagnostic_true_label()] += 1;
            }
        }
        let sizes: Vec<usize> = ood_counts.into_iter().filter(|&c| c > 0).collect();
        assert_eq!(sizes, vec![40, 20, 10]);
    }

    #[test]
    fn kmeans_oracle_recovers_synthetic_clusters() {
        // Separation 6.0 makes raw-space clusters trivially recoverable; this
        // pins the attainability bound the end-to-end tests lean on.
        let ds = generate_synthetic(&small_config()).unwrap();
        let all: Vec<usize> = (0..ds.examples().len()).collect();
        let data = ds.vectors_for(&all);
        let fit = kmeans::fit(data.view(), &KMeansConfig::new(4, 13)).unwrap();
        let k = 4;
        let mut contingency = Array2::<f64>::zeros((k, k));
        for (i, &label) in fit.labels.iter().enumerate() {
            contingency[(label, ds.examples()[i].diagnostic_true_label())] += 1.0;
        }
        let mapping = max_profit_assignment(contingency.view()).unwrap();
        let correct: f64 = (0..k).map(|c| contingency[(c, mapping[c])]).sum();
        let acc = correct / ds.examples().len() as f64;
        assert!(acc >= 0.99, "k-means oracle accuracy {acc}");
    }

    #[test]
    fn cluster_means_are_separated() {
        let cfg = small_config();
        let ds = generate_synthetic(&cfg).unwrap();
        // Empirical class means must be pairwise >= separation - small slack.
        let k = ds.n_classes();
        let d = ds.dimension();
        let mut means = vec![vec![0.0; d]; k];
        let mut counts = vec![0usize; k];
        for ex in ds.examples() {
            let c = ex.diagnostic_true_label();
            counts[c] += 1;
            for (j, v) in ex.vector().iter().enumerate() {
                means[c][j] += v;
            }
        }
        for c in 0..k {
            for v in means[c].iter_mut() {
                *v /= counts[c] as f64;
            }
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let dist = euclidean(&means[i], &means[j]);
                assert!(
                    dist >= cfg.class_separation - 1.0,
                    "classes {i},{j} only {dist} apart"
                );
            }
        }
    }

    #[test]
    fn ood_examples_hide_labels_from_training() {
        let ds = generate_synthetic(&small_config()).unwrap();
        for ex in ds.examples() {
            if ex.is_ind() {
                assert!(ex.supervised_label().is_some());
            } else {
                assert!(ex.supervised_label().is_none());
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_synthetic(&small_config()).unwrap();
        let b = generate_synthetic(&small_config()).unwrap();
        for (x, y) in a.examples().iter().zip(b.examples()) {
            assert_eq!(x.vector(), y.vector());
            assert_eq!(x.split(), y.split());
        }
    }

    #[test]
    fn rejects_degenerate_configs() {
        let mut cfg = small_config();
        cfg.dimension = 1;
        assert!(generate_synthetic(&cfg).is_err());

        let mut cfg = small_config();
        cfg.samples_per_class = 10; // 10% split -> 1 sample
        assert!(generate_synthetic(&cfg).is_err());

        let mut cfg = small_config();
        cfg.imbalance_factor = 0.5;
        assert!(generate_synthetic(&cfg).is_err());
    }

    #[test]
    fn split_ind_ood_examples() {
        let ids: Vec<usize> = (0..10).collect();
        let (ind, ood) = split_ind_ood(&ids, 0.4, 1).unwrap();
        assert_eq!(ood.len(), 4);
        assert_eq!(ind.len(), 6);
        let mut all: Vec<usize> = ind.iter().chain(ood.iter()).copied().collect();
        all.sort_unstable();
        assert_eq!(all, ids);

        let again = split_ind_ood(&ids, 0.4, 1).unwrap();
        assert_eq!(again.0, ind);
        assert_eq!(again.1, ood);

        assert!(split_ind_ood(&ids, 0.99, 1).is_err());
    }

    #[test]
    fn corpus_partition_counts_match_reference_ratios() {
        // 77 classes at ratio 0.4 -> 46 IND / 31 OOD; 150 -> 90/60.
        let ids77: Vec<usize> = (0..77).collect();
        let (ind, ood) = split_ind_ood(&ids77, 0.4, 0).unwrap();
        assert_eq!((ind.len(), ood.len()), (46, 31));
        let ids150: Vec<usize> = (0..150).collect();
        let (ind, ood) = split_ind_ood(&ids150, 0.4, 0).unwrap();
        assert_eq!((ind.len(), ood.len()), (90, 60));
    }

    #[test]
    fn jsonl_round_trip_is_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let ds = generate_synthetic(&small_config()).unwrap();
        let p1 = dir.path().join("a.jsonl");
        let p2 = dir.path().join("b.jsonl");
        let meta = dir.path().join("a.meta.json");
        ds.save_jsonl(&p1).unwrap();
        ds.save_metadata(&meta).unwrap();
        let reloaded = GidDataset::load_with_metadata(&p1, &meta).unwrap();
        reloaded.save_jsonl(&p2).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        assert_eq!(reloaded.n_ind_classes(), ds.n_ind_classes());
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(f, r#"{{"vector": [1.0, 2.0], "label": "a", "split": "train"}}"#).unwrap();
        writeln!(f, r#"{{"vector": [1.0, 2.0], "label""#).unwrap();
        drop(f);
        match load_embedding_corpus(&path, 0.5, 0) {
            Err(Error::Ingest { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected ingest error, got {other:?}"),
        }
    }

    #[test]
    fn ingest_rejects_dimension_mismatch_and_bad_split() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dim.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(f, r#"{{"vector": [1.0, 2.0], "label": "a", "split": "train"}}"#).unwrap();
        writeln!(f, r#"{{"vector": [1.0], "label": "b", "split": "train"}}"#).unwrap();
        drop(f);
        assert!(matches!(
            load_embedding_corpus(&path, 0.5, 0),
            Err(Error::Ingest { line: 2, .. })
        ));

        let path = dir.path().join("split.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(f, r#"{{"vector": [1.0, 2.0], "label": "a", "split": "dev"}}"#).unwrap();
        drop(f);
        assert!(matches!(
            load_embedding_corpus(&path, 0.5, 0),
            Err(Error::Ingest { line: 1, .. })
        ));
    }

    #[test]
    fn ingest_partitions_classes_deterministically() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        let mut f = File::create(&path).unwrap();
        for c in 0..10 {
            for i in 0..6 {
                let split = if i < 4 {
                    "train"
                } else if i < 5 {
                    "validation"
                } else {
                    "test"
                };
                writeln!(
                    f,
                    r#"{{"vector": [{}.0, {}.0], "label": "intent_{c}", "split": "{split}"}}"#,
                    c, i
                )
                .unwrap();
            }
        }
        drop(f);
        let a = load_embedding_corpus(&path, 0.4, 9).unwrap();
        let b = load_embedding_corpus(&path, 0.4, 9).unwrap();
        assert_eq!(a.n_ood_classes(), 4);
        assert_eq!(a.class_names(), b.class_names());
    }
}
