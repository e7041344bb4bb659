//! Verification campaigns over the catalog: configuration, a work queue over
//! independent items, and deterministic JSON/TSV reports.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use chevrest::invring::{w0_invariants, DEFAULT_MONOMIAL_CAP};
use chevrest::par::{with_workers, Exec};
use chevrest::reps::{check_lemma_1_3, claim_check, smallest_non_q, smallest_q_plus, spherical_dim, RepCaps};
use chevrest::restrict::{verify_degree, VerifyOptions};
use chevrest::rootsys::{molien_dim, Weight};
use chevrest::sympair::{build_pair_with_cap, verify_q_covering, SymmetricPair, DEFAULT_GROUP_CAP, PAIR_IDS};
use chevrest::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    Theorem,
    Lemma11,
    Lemma12,
    Lemma13,
    Claim,
    Molien,
}

impl Lemma {
    pub const ALL: [Lemma; 6] = [
        Lemma::Theorem,
        Lemma::Lemma11,
        Lemma::Lemma12,
        Lemma::Lemma13,
        Lemma::Claim,
        Lemma::Molien,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Theorem => "theorem",
            Lemma::Lemma11 => "lemma11",
            Lemma::Lemma12 => "lemma12",
            Lemma::Lemma13 => "lemma13",
            Lemma::Claim => "claim",
            Lemma::Molien => "molien",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown lemma `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub monomial: usize,
    pub module: usize,
    pub tensor: usize,
    pub group: usize,
}

impl Default for Caps {
    fn default() -> Self {
        let r = RepCaps::default();
        Caps {
            monomial: DEFAULT_MONOMIAL_CAP,
            module: r.module,
            tensor: r.tensor,
            group: DEFAULT_GROUP_CAP,
        }
    }
}

impl Caps {
    fn reps(&self) -> RepCaps {
        RepCaps {
            module: self.module,
            tensor: self.tensor,
            ..RepCaps::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub pairs: Vec<String>,
    pub copies: Vec<usize>,
    pub max_degree: usize,
    /// Per `(pair, N)` maximum degree.
    pub degree_overrides: BTreeMap<(String, usize), usize>,
    pub lemmas: Vec<Lemma>,
    pub caps: Caps,
    pub box_bound: i64,
    pub workers: Option<usize>,
    pub sequential: bool,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            pairs: Vec::new(),
            copies: vec![1, 2],
            max_degree: 3,
            degree_overrides: BTreeMap::new(),
            lemmas: Vec::new(),
            caps: Caps::default(),
            box_bound: 6,
            workers: None,
            sequential: false,
            output: None,
            format: Format::Json,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{v}`")))
}

impl CampaignConfig {
    /// Parses `key = value` lines. `#` starts a comment. Lists are whitespace
    /// separated (pair ids may contain commas). Per-`(pair, N)` degree limits
    /// use `max-degree.<N>.<pair> = d`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut cfg = CampaignConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        let words = || value.split_whitespace();
        match key {
            "pairs" | "pair" => self.pairs = words().map(String::from).collect(),
            "copies" => self.copies = words().map(|w| parse_num(key, w)).collect::<Result<_, _>>()?,
            "max-degree" => self.max_degree = parse_num(key, value)?,
            "lemmas" => self.lemmas = words().map(str::parse).collect::<Result<_, _>>()?,
            "monomial-cap" => self.caps.monomial = parse_num(key, value)?,
            "module-cap" => self.caps.module = parse_num(key, value)?,
            "tensor-cap" => self.caps.tensor = parse_num(key, value)?,
            "group-cap" => self.caps.group = parse_num(key, value)?,
            "box-bound" => self.box_bound = parse_num(key, value)?,
            "workers" => self.workers = Some(parse_num(key, value)?),
            "sequential" => self.sequential = parse_num(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => {
                let rest = key
                    .strip_prefix("max-degree.")
                    .ok_or_else(|| Error::Config(format!("unknown key `{key}`")))?;
                let (n, pair) = rest
                    .split_once('.')
                    .ok_or_else(|| Error::Config(format!("`{key}`: expected max-degree.<N>.<pair>")))?;
                self.degree_overrides
                    .insert((pair.to_string(), parse_num(key, n)?), parse_num(key, value)?);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Error> {
        for p in self.pairs.iter().chain(self.degree_overrides.keys().map(|(p, _)| p)) {
            if !PAIR_IDS.contains(&p.as_str()) {
                return Err(Error::UnknownPair(p.clone()));
            }
        }
        if self.copies.contains(&0) {
            return Err(Error::Config("copies must be at least 1".into()));
        }
        if self.box_bound < 0 {
            return Err(Error::Config("box-bound must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn degree_limit(&self, pair: &str, copies: usize) -> usize {
        self.degree_overrides
            .get(&(pair.to_string(), copies))
            .copied()
            .unwrap_or(self.max_degree)
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

/// Worker count: `CHEVREST_WORKERS` wins over the configuration.
pub fn effective_workers(cfg: &CampaignConfig) -> Option<usize> {
    std::env::var("CHEVREST_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .or(cfg.workers)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ItemRecord {
    pub pair: String,
    pub lemma: Lemma,
    pub copies: Option<usize>,
    pub degree: Option<usize>,
    pub lam: Option<String>,
    pub mu: Option<String>,
    pub pass: bool,
    pub error: Option<String>,
    pub values: BTreeMap<String, Value>,
}

impl ItemRecord {
    fn new(pair: &str, lemma: Lemma) -> Self {
        ItemRecord {
            pair: pair.to_string(),
            lemma,
            copies: None,
            degree: None,
            lam: None,
            mu: None,
            pass: false,
            error: None,
            values: BTreeMap::new(),
        }
    }

    fn set(&mut self, k: &str, v: impl Into<Value>) {
        self.values.insert(k.to_string(), v.into());
    }

    fn failed(mut self, e: &Error) -> Self {
        self.pass = false;
        self.error = Some(e.to_string());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub pass: bool,
    pub items: Vec<ItemRecord>,
    /// Milliseconds per item, parallel to `items`. Left out in golden mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<Vec<u128>>,
}

impl VerificationReport {
    pub fn golden(mut self) -> Self {
        self.wall_time_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("pair\tlemma\tcopies\tdegree\tlam\tmu\tpass\terror\tvalues\n");
        let opt = |o: &Option<usize>| o.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.items {
            let values: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.pair,
                r.lemma,
                opt(&r.copies),
                opt(&r.degree),
                r.lam.clone().unwrap_or_default(),
                r.mu.clone().unwrap_or_default(),
                r.pass,
                r.error.clone().unwrap_or_default(),
                values.join(";")
            ));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
        }
    }
}

/// One unit of work; items in different tasks are independent.
#[derive(Clone, Debug)]
enum Task {
    Restriction { pair: usize, copies: usize, degree: usize, theorem: bool, lemma11: bool },
    Covering { pair: usize },
    Lemma13 { pair: usize },
    Claim { pair: usize },
    Molien { pair: usize, copies: usize, degree: usize },
}

fn plan(cfg: &CampaignConfig, npairs: usize) -> Vec<Task> {
    let has = |l: Lemma| cfg.lemmas.contains(&l);
    let mut tasks = Vec::new();
    for p in 0..npairs {
        let id = &cfg.pairs[p];
        for &n in &cfg.copies {
            for d in 0..=cfg.degree_limit(id, n) {
                if has(Lemma::Theorem) || has(Lemma::Lemma11) {
                    tasks.push(Task::Restriction {
                        pair: p,
                        copies: n,
                        degree: d,
                        theorem: has(Lemma::Theorem),
                        lemma11: has(Lemma::Lemma11),
                    });
                }
                if has(Lemma::Molien) {
                    tasks.push(Task::Molien { pair: p, copies: n, degree: d });
                }
            }
        }
        if has(Lemma::Lemma12) {
            tasks.push(Task::Covering { pair: p });
        }
        if has(Lemma::Lemma13) {
            tasks.push(Task::Lemma13 { pair: p });
        }
        if has(Lemma::Claim) {
            tasks.push(Task::Claim { pair: p });
        }
    }
    tasks
}

fn run_task(cfg: &CampaignConfig, pairs: &[Result<SymmetricPair, Error>], task: &Task) -> Vec<ItemRecord> {
    let pid = |p: usize| cfg.pairs[p].as_str();
    let pair_or = |p: usize, lemma: Lemma| -> Result<&SymmetricPair, Box<ItemRecord>> {
        pairs[p].as_ref().map_err(|e| Box::new(ItemRecord::new(pid(p), lemma).failed(e)))
    };
    match *task {
        Task::Restriction { pair, copies, degree, theorem, lemma11 } => {
            let mut recs = Vec::new();
            let base = |l: Lemma| {
                let mut r = ItemRecord::new(pid(pair), l);
                r.copies = Some(copies);
                r.degree = Some(degree);
                r
            };
            let (mut t, mut l) = (base(Lemma::Theorem), base(Lemma::Lemma11));
            let outcome = pair_or(pair, Lemma::Theorem).map_err(|r| r.error.unwrap_or_default()).and_then(|p| {
                let opts = VerifyOptions {
                    monomial_cap: cfg.caps.monomial,
                    exec: cfg.exec(),
                    check_reynolds: true,
                };
                verify_degree(p, copies, degree, &opts).map_err(|e| e.to_string())
            });
            match outcome {
                Ok(v) => {
                    t.pass = v.theorem_holds() && (copies != 1 || v.isomorphism());
                    t.set("dim_source", v.dim_source_invariants);
                    t.set("dim_target", v.dim_target_invariants);
                    t.set("molien_dim", v.molien_dim);
                    t.set("psi_rank", v.psi_rank);
                    t.set("psi_kernel_dim", v.psi_kernel_dim);
                    l.pass = v.lemma_1_1_holds();
                    l.set("theta_rank", v.theta_rank);
                    l.set("kernel_meets_image", v.kernel_meets_image);
                    l.set("psi_theta_bijective", v.psi_theta_bijective);
                    l.set("reynolds_checked", v.reynolds_checked);
                }
                Err(e) => {
                    t.error = Some(e.clone());
                    l.error = Some(e);
                }
            }
            if theorem {
                recs.push(t);
            }
            if lemma11 {
                recs.push(l);
            }
            recs
        }
        Task::Molien { pair, copies, degree } => {
            let mut r = ItemRecord::new(pid(pair), Lemma::Molien);
            r.copies = Some(copies);
            r.degree = Some(degree);
            let p = match pair_or(pair, Lemma::Molien) {
                Ok(p) => p,
                Err(rec) => return vec![ItemRecord { copies: r.copies, degree: r.degree, ..*rec }],
            };
            let m = molien_dim(&p.w0, copies, degree);
            r.set("molien_dim", m);
            match w0_invariants(p, copies, degree, cfg.caps.monomial, cfg.exec()) {
                Ok(w) => {
                    r.set("w0_invariant_dim", w.dim());
                    r.pass = w.dim() == m;
                    vec![r]
                }
                Err(e) => vec![r.failed(&e)],
            }
        }
        Task::Covering { pair } => {
            let p = match pair_or(pair, Lemma::Lemma12) {
                Ok(p) => p,
                Err(rec) => return vec![*rec],
            };
            let mut r = ItemRecord::new(pid(pair), Lemma::Lemma12);
            match verify_q_covering(p, cfg.box_bound) {
                Ok(c) => {
                    r.pass = c.passed();
                    r.set("box_bound", c.box_bound);
                    r.set("points_in_q", c.points_in_q);
                    r.set("covered", c.covered);
                    r.set("counterexamples", c.counterexamples.clone());
                    vec![r]
                }
                Err(e) => vec![r.failed(&e)],
            }
        }
        Task::Lemma13 { pair } => {
            let p = match pair_or(pair, Lemma::Lemma13) {
                Ok(p) => p,
                Err(rec) => return vec![*rec],
            };
            lemma13_records(p, &cfg.caps.reps())
        }
        Task::Claim { pair } => {
            let p = match pair_or(pair, Lemma::Claim) {
                Ok(p) => p,
                Err(rec) => return vec![*rec],
            };
            vec![claim_record(p, &cfg.caps.reps())]
        }
    }
}

fn lemma13_records(p: &SymmetricPair, caps: &RepCaps) -> Vec<ItemRecord> {
    let mut out = Vec::new();
    let base = ItemRecord::new(&p.id, Lemma::Lemma13);
    let spherical = match smallest_q_plus(p, 2, caps) {
        Ok(ws) => ws,
        Err(e) => return vec![base.failed(&e)],
    };
    if spherical.len() < 2 {
        let mut r = base.clone();
        r.error = Some("fewer than two elements of Q₊ under the module cap".into());
        out.push(r);
    }
    for lam in spherical {
        let mut r = base.clone();
        r.lam = Some(lam.to_string());
        match check_lemma_1_3(p, &lam, caps) {
            Ok(rep) => {
                r.pass = rep.passed();
                r.set("in_q", true);
                r.set("module_dim", rep.module_dim);
                r.set("spherical_dim", rep.spherical_dim);
                r.set("support", rep.support.iter().map(Weight::to_string).collect::<Vec<_>>());
                r.set("clause_i", rep.support_in_q);
                r.set("clause_ii", rep.contains_lambda);
                r.set("clause_iii", rep.meets_weyl_orbit_in_w0_orbit);
                r.set("support_w0_stable", rep.support_w0_stable);
                if let Some(b) = rep.lifts_fix_vk {
                    r.set("lifts_fix_vk", b);
                }
                out.push(r);
            }
            Err(e) => out.push(r.failed(&e)),
        }
    }
    let outside = match smallest_non_q(p, 2, caps) {
        Ok(ws) => ws,
        Err(e) => return [out, vec![base.failed(&e)]].concat(),
    };
    for lam in outside {
        let mut r = base.clone();
        r.lam = Some(lam.to_string());
        r.set("in_q", false);
        match spherical_dim(p, &lam, caps) {
            Ok(d) => {
                r.set("spherical_dim", d);
                r.pass = d == 0;
                out.push(r);
            }
            Err(e) => out.push(r.failed(&e)),
        }
    }
    out
}

fn claim_record(p: &SymmetricPair, caps: &RepCaps) -> ItemRecord {
    let mut r = ItemRecord::new(&p.id, Lemma::Claim);
    let lam = match smallest_q_plus(p, 1, caps) {
        Ok(ws) if !ws.is_empty() => ws[0].clone(),
        Ok(_) => {
            r.error = Some("no nonzero element of Q₊ under the module cap".into());
            return r;
        }
        Err(e) => return r.failed(&e),
    };
    r.lam = Some(lam.to_string());
    r.mu = Some(lam.to_string());
    match claim_check(p, &lam, &lam, caps) {
        Ok(c) => {
            r.pass = c.passed();
            r.set("tensor_dim", c.tensor_dim);
            r.set("r", c.pairs.len());
            r.set("pairs", c.pairs.iter().map(|(a, b)| vec![*a, *b]).collect::<Vec<_>>());
            r.set("component_dims", c.component_dims.clone());
            r.set("unique_highest_weight_vectors", c.unique_highest_weight_vectors);
            r.set("direct_sum", c.direct_sum);
            r.set("pi_rank", c.pi_rank);
        }
        Err(e) => r = r.failed(&e),
    }
    r
}

fn sort_key(r: &ItemRecord, order: &[String]) -> (usize, Lemma, Option<usize>, Option<usize>, Option<bool>, Option<String>) {
    let pos = order.iter().position(|p| *p == r.pair).unwrap_or(usize::MAX);
    // Within lemma13, elements of Q₊ come first.
    let in_q = r.values.get("in_q").and_then(Value::as_bool).map(|b| !b);
    (pos, r.lemma, r.copies, r.degree, in_q, r.lam.clone())
}

/// Runs every configured check. Item errors become failing records; the
/// campaign itself never aborts.
pub fn run(cfg: &CampaignConfig) -> VerificationReport {
    run_many(std::slice::from_ref(cfg))
}

/// Runs several configurations as one campaign with a merged report.
pub fn run_many(cfgs: &[CampaignConfig]) -> VerificationReport {
    let workers = cfgs.first().and_then(effective_workers);
    let mut order: Vec<String> = Vec::new();
    for c in cfgs {
        for p in &c.pairs {
            if !order.contains(p) {
                order.push(p.clone());
            }
        }
    }
    let timed: Vec<(ItemRecord, u128)> = with_workers(workers, || {
        let mut all = Vec::new();
        for cfg in cfgs {
            let exec = cfg.exec();
            let pairs: Vec<Result<SymmetricPair, Error>> =
                exec.map(cfg.pairs.clone(), |id| build_pair_with_cap(&id, cfg.caps.group));
            let tasks = plan(cfg, pairs.len());
            let done = exec.map(tasks, |t| {
                let start = Instant::now();
                let recs = run_task(cfg, &pairs, &t);
                let ms = start.elapsed().as_millis();
                recs.into_iter().map(|r| (r, ms)).collect::<Vec<_>>()
            });
            all.extend(done.into_iter().flatten());
        }
        all
    });
    let mut timed = timed;
    timed.sort_by_key(|a| sort_key(&a.0, &order));
    let (items, times): (Vec<_>, Vec<_>) = timed.into_iter().unzip();
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        pass: !items.is_empty() && items.iter().all(|r| r.pass),
        items,
        wall_time_ms: Some(times),
    }
}

/// The acceptance-scale profile used by `all --smoke`.
pub fn smoke_configs() -> Vec<CampaignConfig> {
    let five: Vec<String> = ["AI:2", "AI:3", "AIII:2,1", "CI:2", "ADJ:sl2"].map(String::from).to_vec();
    let mut restriction = CampaignConfig {
        pairs: five.clone(),
        copies: vec![1, 2, 3],
        max_degree: 4,
        lemmas: vec![Lemma::Theorem, Lemma::Lemma11, Lemma::Molien],
        ..CampaignConfig::default()
    };
    // N = 3 only for two pairs; a zero limit still runs the trivial d = 0.
    for p in &five {
        restriction.degree_overrides.insert((p.clone(), 1), 6);
        restriction.degree_overrides.insert((p.clone(), 3), 0);
    }
    for p in ["AI:2", "ADJ:sl2"] {
        restriction.degree_overrides.insert((p.into(), 2), 5);
        restriction.degree_overrides.insert((p.into(), 3), 3);
    }
    let covering = CampaignConfig {
        pairs: ["AI:2", "AI:3", "AIII:2,1", "ADJ:sl2"].map(String::from).to_vec(),
        lemmas: vec![Lemma::Lemma12],
        box_bound: 6,
        ..CampaignConfig::default()
    };
    let spherical = CampaignConfig {
        pairs: ["AI:2", "AI:3", "ADJ:sl2"].map(String::from).to_vec(),
        lemmas: vec![Lemma::Lemma13],
        ..CampaignConfig::default()
    };
    let claim = CampaignConfig {
        pairs: ["AI:2", "ADJ:sl2"].map(String::from).to_vec(),
        lemmas: vec![Lemma::Claim],
        ..CampaignConfig::default()
    };
    vec![restriction, covering, spherical, claim]
}

/// Catalog summary rows.
pub fn catalog_rows(group_cap: usize) -> Vec<Value> {
    PAIR_IDS
        .iter()
        .map(|id| match build_pair_with_cap(id, group_cap) {
            Ok(p) => json!({
                "id": p.id,
                "dim_g": p.g.dim(),
                "dim_k": p.dim_k(),
                "dim_p": p.dim_p(),
                "rank": p.rank(),
                "w0_order": p.w0.order(),
                "restricted_roots": p.restricted_roots.len(),
            }),
            Err(e) => json!({ "id": id, "error": e.to_string() }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config() {
        let cfg = CampaignConfig::parse(
            "# campaign\npairs = AI:2 AIII:2,1\ncopies = 1 2\nmax-degree = 2\nmax-degree.2.AI:2 = 4\nlemmas = theorem molien\nformat = tsv\n",
        )
        .unwrap();
        assert_eq!(cfg.pairs, vec!["AI:2", "AIII:2,1"]);
        assert_eq!(cfg.degree_limit("AI:2", 2), 4);
        assert_eq!(cfg.degree_limit("AI:2", 1), 2);
        assert_eq!(cfg.lemmas, vec![Lemma::Theorem, Lemma::Molien]);
        assert_eq!(cfg.format, Format::Tsv);
    }

    #[test]
    fn parse_errors() {
        assert!(CampaignConfig::parse("pairs = XYZ").is_err());
        assert!(CampaignConfig::parse("bogus = 1").is_err());
        assert!(CampaignConfig::parse("copies = 0").is_err());
        assert!(CampaignConfig::parse("just text").is_err());
        assert!(CampaignConfig::parse("lemmas = theorem nope").is_err());
    }
}
