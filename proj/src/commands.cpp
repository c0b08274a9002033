// Copyright 2026 The stabscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabscope/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabscope/cnn/checkpoint.hpp"
#include "stabscope/cnn/train.hpp"
#include "stabscope/csv.hpp"
#include "stabscope/dataset.hpp"
#include "stabscope/errors.hpp"
#include "stabscope/magic.hpp"
#include "stabscope/parallel.hpp"
#include "stabscope/stategen.hpp"
#include "stabscope/witness.hpp"

namespace stabscope {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kStateSpecHelp =
    "Comma-separated per-qubit tokens: 0, 1, +, -, +i, -i (stabilizer states), "
    "T = (|0> + e^{i pi/4}|1>)/sqrt2, haar:<seed> = Haar-random qubit from <seed>. "
    "Example: T,T,0,+";

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Written next to the primary output before any output file.
void write_run_manifest(const std::string& primary, const std::string& command, const std::vector<std::string>& args,
                        const Json& config, std::uint64_t seed, const std::vector<std::string>& outputs) {
  Json m;
  m["command"] = command;
  m["argv"] = args;
  m["config"] = config;
  m["seed"] = seed;
  m["started_at"] = utc_now();
  m["outputs"] = outputs;
  m["code_version"] = kVersion;
  write_file(primary + ".run.json", m.dump(2) + "\n");
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s.front() == '-') throw DimensionError("bad " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

cnn::Extent3 parse_extent(const std::string& s, const std::string& what) {
  const auto parts = split_commas(s);
  if (parts.size() != 3) throw DimensionError(what + " needs three comma-separated values");
  return {parse_u64(parts[0], what), parse_u64(parts[1], what), parse_u64(parts[2], what)};
}

// ---- gen-data ----

struct GenDataArgs {
  std::string basis = "z";
  std::size_t n = 8;
  std::size_t states = 100;
  std::size_t snapshots = 500;
  std::size_t depth = 0;
  std::size_t layers = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::size_t> threads;
};

void cmd_gen_data(const GenDataArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  DatasetConfig cfg;
  cfg.basis = parse_basis(a.basis);
  cfg.n_qubits = a.n;
  cfg.n_states = a.states;
  cfg.n_snapshots = a.snapshots;
  cfg.depth = a.depth;
  cfg.n_layers = a.layers;
  cfg.master_seed = a.seed;
  cfg.validate();
  Json c;
  c["basis"] = a.basis;
  c["n_qubits"] = a.n;
  c["n_states"] = a.states;
  c["n_snapshots"] = a.snapshots;
  c["depth"] = a.depth;
  c["n_layers"] = cfg.basis == Basis::kZ ? 1 : a.layers;
  write_run_manifest(a.out, "gen-data", argv, c, a.seed, {a.out});
  const auto container = build_dataset(cfg, resolve_threads(a.threads));
  write_container(a.out, container);
  out << "wrote " << a.out << " (" << container.entries.size() << " entries)\n";
}

// ---- train ----

struct TrainArgs {
  std::string data;
  std::string variant;
  std::size_t epochs = 20;
  std::size_t batch = 32;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::string out_model;
  std::string metrics;
  double val_fraction = 0.2;
  std::optional<double> l2;
  std::optional<double> dropout;
  std::string kernel;
  std::string pool;
  std::string pool_mode;
};

void cmd_train(const TrainArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  const auto container = read_container(a.data);
  const auto& dc = container.config;
  cnn::Variant variant = dc.basis == Basis::kZ ? cnn::Variant::kMethod1 : cnn::Variant::kMethod2;
  if (!a.variant.empty()) variant = cnn::parse_variant(a.variant);
  cnn::ModelConfig mc = variant == cnn::Variant::kMethod1
                            ? cnn::method1_config(dc.n_snapshots, dc.n_qubits)
                            : cnn::method2_config(dc.n_snapshots, container.n_layers(), dc.n_qubits);
  if (a.l2) mc.l2_coeff = *a.l2;
  if (a.dropout) mc.dropout_rate = *a.dropout;
  if (!a.kernel.empty()) mc.kernel = parse_extent(a.kernel, "--kernel");
  if (!a.pool.empty()) mc.pool = parse_extent(a.pool, "--pool");
  if (!a.pool_mode.empty()) mc.pool_mode = cnn::parse_pool_mode(a.pool_mode);
  mc.validate();
  cnn::TrainConfig tc;
  tc.epochs = a.epochs;
  tc.batch_size = a.batch;
  tc.learning_rate = a.lr;
  tc.seed = a.seed;
  tc.validation_fraction = a.val_fraction;
  tc.validate();
  const ContainerSource source(container, variant);

  const std::string metrics = a.metrics.empty() ? a.out_model + ".metrics.csv" : a.metrics;
  Json c;
  c["data"] = a.data;
  c["variant"] = cnn::variant_name(variant);
  c["epochs"] = a.epochs;
  c["batch"] = a.batch;
  c["lr"] = a.lr;
  c["val_fraction"] = a.val_fraction;
  c["l2"] = mc.l2_coeff;
  c["dropout"] = mc.dropout_rate;
  c["kernel"] = mc.kernel;
  c["pool"] = mc.pool;
  c["pool_mode"] = cnn::pool_mode_name(mc.pool_mode);
  write_run_manifest(a.out_model, "train", argv, c, a.seed, {a.out_model, metrics});

  auto result = cnn::train(mc, tc, source, [&out](const cnn::EpochMetrics& m) {
    out << "epoch " << m.epoch << " train_loss " << format_number(m.train_loss) << " train_acc "
        << format_number(m.train_acc) << " val_loss " << format_number(m.val_loss) << " val_acc "
        << format_number(m.val_acc) << "\n"
        << std::flush;
  });
  cnn::save_checkpoint(a.out_model, result.model);
  cnn::write_history_csv(metrics, result.history);
  out << "wrote " << a.out_model << " and " << metrics << "\n";
}

// ---- sweep-depth ----

struct SweepArgs {
  std::string model;
  std::optional<std::size_t> n;
  std::size_t states = 1000;
  std::optional<std::size_t> snapshots;
  std::string depths = "0..8";
  std::optional<std::size_t> layers;
  std::uint64_t seed = 0;
  std::string out;
  std::string inset;
  std::optional<std::size_t> threads;
};

void cmd_sweep_depth(const SweepArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  cnn::Model model = cnn::load_checkpoint(a.model);
  const auto& mc = model.config();
  const bool m1 = mc.variant == cnn::Variant::kMethod1;
  const auto depths = parse_index_list(a.depths);
  DatasetConfig base;
  base.basis = m1 ? Basis::kZ : Basis::kPauli;
  base.n_qubits = a.n.value_or(mc.input_extent[2]);
  base.n_snapshots = a.snapshots.value_or(mc.input_extent[0]);
  base.n_layers = m1 ? 1 : a.layers.value_or(mc.input_extent[1]);
  base.n_states = a.states;
  if (m1 && (base.n_qubits != mc.input_extent[2] || base.n_snapshots != mc.input_extent[0])) {
    throw DimensionError("method1 models only accept the geometry they were trained on");
  }
  const std::string inset = a.inset.empty() ? a.out + ".inset.csv" : a.inset;
  Json c;
  c["model"] = a.model;
  c["n_qubits"] = base.n_qubits;
  c["n_states"] = base.n_states;
  c["n_snapshots"] = base.n_snapshots;
  c["n_layers"] = base.n_layers;
  c["depths"] = depths;
  write_run_manifest(a.out, "sweep-depth", argv, c, a.seed, {a.out, inset});

  CsvTable sweep;
  sweep.header = {"depth", "label", "mean_prediction", "std_of_prediction"};
  CsvTable bins;
  bins.header = {"depth", "bin", "m2_lo", "m2_hi", "mean_prediction", "count"};
  const std::size_t threads = resolve_threads(a.threads);
  for (std::size_t d : depths) {
    DatasetConfig cfg = base;
    cfg.depth = d;
    cfg.master_seed = sub_seed(a.seed, d);
    const auto container = build_dataset(cfg, threads);
    const ContainerSource src(container, mc.variant);
    const auto pred = cnn::predict(model, src);
    for (int label = 0; label <= 1; ++label) {
      double sum = 0.0, sq = 0.0;
      std::size_t count = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (container.labels[i] != label) continue;
        sum += pred[i];
        sq += pred[i] * pred[i];
        ++count;
      }
      const double mean = sum / static_cast<double>(count);
      const double var = count > 1 ? std::max(0.0, (sq - sum * mean) / static_cast<double>(count - 1)) : 0.0;
      sweep.add_row({format_number(static_cast<std::uint64_t>(d)), std::to_string(label), format_number(mean),
                     format_number(std::sqrt(var / static_cast<double>(count)))});
    }
    for (const auto& b : inset_bins(container.m2_density, pred)) {
      bins.add_row({format_number(static_cast<std::uint64_t>(d)), format_number(static_cast<std::uint64_t>(b.bin)),
                    format_number(b.m2_lo), format_number(b.m2_hi), format_number(b.mean_prediction),
                    format_number(static_cast<std::uint64_t>(b.count))});
    }
    out << "depth " << d << " done\n" << std::flush;
  }
  sweep.write(a.out);
  bins.write(inset);
  out << "wrote " << a.out << " and " << inset << "\n";
}

// ---- verify-eq2 ----

struct VerifyArgs {
  std::size_t n = 2;
  std::size_t states = 10;
  std::size_t cliffords = 5000;
  std::uint64_t seed = 0;
  std::string out;
  std::string projector;
};

void cmd_verify_eq2(const VerifyArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  if (a.n == 0) throw DimensionError("--n must be >= 1");
  if (a.cliffords < 2) throw DimensionError("--cliffords must be >= 2");
  const std::string projector = a.projector.empty() ? a.out + ".projector.json" : a.projector;
  Json c;
  c["n_qubits"] = a.n;
  c["n_states"] = a.states;
  c["n_cliffords"] = a.cliffords;
  write_run_manifest(a.out, "verify-eq2", argv, c, a.seed, {a.out, projector});

  CsvTable t;
  t.header = {"state_id", "m_lin", "mc_mean", "mc_se", "analytic_rhs", "n_cliffords"};
  const PauliString sigma = PauliString::single(a.n, 0, PauliLetter::Z);
  const double d = std::ldexp(1.0, static_cast<int>(a.n));
  for (std::size_t k = 0; k < a.states; ++k) {
    Rng rng(sub_seed(a.seed, k));
    const LabeledState ls = random_product(a.n, StateLabel::kMagic, rng);
    const MomentEstimate e = clifford_fourth_moment_mc(ls.state, sigma, a.cliffords, rng);
    t.add_row({"mc:" + std::to_string(k), format_number(e.m_lin), format_number(e.mean), format_number(e.std_error),
               format_number(eq2_rhs(e.m_lin, d)), format_number(static_cast<std::uint64_t>(e.n_samples))});
  }
  const PauliString z1 = PauliString::single(1, 0, PauliLetter::Z);
  for (std::size_t k = 0; k < a.states; ++k) {
    Rng rng(sub_seed(a.seed ^ 0x9e3779b97f4a7c15ULL, k));
    const SingleQubitState q = random_haar_1q(rng);
    const double ml = m_lin_product(ProductState({q}));
    t.add_row({"exact1q:" + std::to_string(k), format_number(ml),
               format_number(clifford_fourth_moment_exact_1q(q, z1)), "0", format_number(eq2_rhs(ml, 2.0)), "24"});
  }
  t.write(a.out);

  const ProjectorReport r = projector_checks_d2();
  Json pj;
  pj["trace_symm"] = r.trace_symm;
  pj["expected_trace_symm"] = 5;
  pj["trace_sigma_symm"] = {{"X", r.trace_sigma_symm[0]}, {"Y", r.trace_sigma_symm[1]}, {"Z", r.trace_sigma_symm[2]}};
  pj["expected_trace_sigma_symm"] = 1;
  pj["trace_sigma_q_symm"] = {
      {"X", r.trace_sigma_q_symm[0]}, {"Y", r.trace_sigma_q_symm[1]}, {"Z", r.trace_sigma_q_symm[2]}};
  pj["expected_trace_sigma_q_symm"] = 2;
  pj["max_imag"] = r.max_imag;
  pj["projector_residual"] = r.projector_residual;
  write_file(projector, pj.dump(2) + "\n");
  out << "wrote " << a.out << " and " << projector << "\n";
}

// ---- sre / naive-classify ----

ProductState load_state(const std::string& spec, const std::string& file, std::optional<std::size_t> random_n,
                        std::uint64_t seed) {
  const int given = !spec.empty() + !file.empty() + random_n.has_value();
  if (given != 1) throw DimensionError("give exactly one of --state, --state-file, --random-product");
  if (!spec.empty()) return parse_state_spec(spec);
  if (!file.empty()) {
    std::string text = read_file(file);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return parse_state_spec(text);
  }
  Rng rng(seed);
  return random_product(*random_n, StateLabel::kMagic, rng).state;
}

struct SreArgs {
  std::string state;
  std::string state_file;
  std::optional<std::size_t> random_product;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_sre(const SreArgs& a, std::ostream& out) {
  const ProductState s = load_state(a.state, a.state_file, a.random_product, a.seed);
  Json r;
  r["n_qubits"] = s.num_qubits();
  r["m2"] = m2_product(s);
  r["m_lin"] = m_lin_product(s);
  r["m2_density"] = m2_product(s) / static_cast<double>(s.num_qubits());
  r["log_base"] = "e";
  const std::string text = r.dump(2) + "\n";
  if (!a.out.empty()) write_file(a.out, text);
  out << text;
}

struct NaiveArgs {
  std::string data;
  std::string state;
  std::string state_file;
  std::size_t rounds = 1;
  std::size_t depth = kShallowDepth;
  std::size_t snapshots = 1000;
  double k_sigma = kDefaultKSigma;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_naive_classify(const NaiveArgs& a, std::ostream& out) {
  if (a.rounds == 0) throw DimensionError("--rounds must be >= 1");
  Json r;
  r["k_sigma"] = a.k_sigma;
  if (!a.data.empty()) {
    if (!a.state.empty() || !a.state_file.empty()) throw DimensionError("give either --data or a state, not both");
    const auto c = read_container(a.data);
    if (c.config.basis != Basis::kZ) throw DataError("naive-classify --data needs z-basis snapshots");
    std::size_t flagged[2] = {0, 0}, totals[2] = {0, 0};
    Json verdicts = Json::array();
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      ByteMatrix rows(c.config.n_snapshots, c.config.n_qubits);
      const auto e = c.state_entries(i);
      std::copy(e.begin(), e.end(), rows.data.begin());
      const Verdict v = naive_classify_z(rows, a.k_sigma).verdict;
      verdicts.push_back(verdict_name(v));
      ++totals[c.labels[i]];
      if (v == Verdict::kMagic) ++flagged[c.labels[i]];
    }
    r["source"] = a.data;
    r["n_states"] = c.labels.size();
    r["stabilizer_flagged_magic"] = flagged[0];
    r["stabilizer_total"] = totals[0];
    r["magic_flagged_magic"] = flagged[1];
    r["magic_total"] = totals[1];
    r["verdicts"] = verdicts;
  } else {
    const ProductState s = load_state(a.state, a.state_file, std::nullopt, a.seed);
    Rng rng(a.seed);
    const Verdict v = naive_classify_rounds(s, a.rounds, a.depth, a.snapshots, a.k_sigma, rng);
    r["n_qubits"] = s.num_qubits();
    r["rounds"] = a.rounds;
    r["depth"] = a.depth;
    r["n_snapshots"] = a.snapshots;
    r["verdict"] = verdict_name(v);
  }
  const std::string text = r.dump(2) + "\n";
  if (!a.out.empty()) write_file(a.out, text);
  out << text;
}

}  // namespace

ProductState parse_state_spec(const std::string& spec) {
  if (spec.empty()) throw DimensionError("empty state spec");
  std::vector<SingleQubitState> qubits;
  for (const auto& tok : split_commas(spec)) {
    if (tok == "0") {
      qubits.push_back(stabilizer_1q(0));
    } else if (tok == "1") {
      qubits.push_back(stabilizer_1q(1));
    } else if (tok == "+") {
      qubits.push_back(stabilizer_1q(2));
    } else if (tok == "-") {
      qubits.push_back(stabilizer_1q(3));
    } else if (tok == "+i") {
      qubits.push_back(stabilizer_1q(4));
    } else if (tok == "-i") {
      qubits.push_back(stabilizer_1q(5));
    } else if (tok == "T") {
      qubits.push_back(phase_state(std::numbers::pi / 4));
    } else if (tok.rfind("haar:", 0) == 0) {
      Rng rng(parse_u64(tok.substr(5), "haar seed"));
      qubits.push_back(random_haar_1q(rng));
    } else {
      throw DimensionError("unknown state token '" + tok + "'");
    }
  }
  return ProductState(std::move(qubits));
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split_commas(text)) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_u64(part, "index"));
      continue;
    }
    const auto lo = parse_u64(part.substr(0, dots), "range start");
    const auto hi = parse_u64(part.substr(dots + 2), "range end");
    if (hi < lo) throw DimensionError("empty range '" + part + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabscope: magic-state detection from measurement snapshots"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenDataArgs gen;
  auto* g = app.add_subcommand("gen-data", "Generate a labeled snapshot container");
  g->add_option("--basis", gen.basis, "z (computational basis) or pauli")->check(CLI::IsMember({"z", "pauli"}));
  g->add_option("--n", gen.n, "Number of qubits")->capture_default_str();
  g->add_option("--states", gen.states, "Number of product states (labels alternate)")->capture_default_str();
  g->add_option("--snapshots", gen.snapshots, "Snapshots per state")->capture_default_str();
  g->add_option("--depth", gen.depth, "Brickwork depth of the test circuit")->capture_default_str();
  g->add_option("--layers", gen.layers, "Clifford layer slices (pauli basis)")->capture_default_str();
  g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output container path")->required();
  g->add_option("--threads", gen.threads, "Worker threads (default: $STABSCOPE_THREADS or 1)");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a classifier on a snapshot container");
  t->add_option("--data", tr.data, "Training container")->required();
  t->add_option("--variant", tr.variant, "method1 (z data) or method2 (pauli data); default from the data")
      ->check(CLI::IsMember({"method1", "method2"}));
  t->add_option("--epochs", tr.epochs)->capture_default_str();
  t->add_option("--batch", tr.batch)->capture_default_str();
  t->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str();
  t->add_option("--seed", tr.seed)->capture_default_str();
  t->add_option("--out-model", tr.out_model, "Checkpoint path")->required();
  t->add_option("--metrics", tr.metrics, "Metrics CSV (default: <out-model>.metrics.csv)");
  t->add_option("--val-fraction", tr.val_fraction)->capture_default_str();
  t->add_option("--l2", tr.l2, "L2 coefficient on weights");
  t->add_option("--dropout", tr.dropout, "Dropout rate on the dense hidden layer");
  t->add_option("--kernel", tr.kernel, "Conv kernel extents 'snapshot,layer,qubit'");
  t->add_option("--pool", tr.pool, "Pool window 'snapshot,layer,qubit'");
  t->add_option("--pool-mode", tr.pool_mode, "max or average (default depends on the variant)")
      ->check(CLI::IsMember({"max", "average"}));

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep-depth", "Mean predictions versus test-circuit depth");
  s->add_option("--model", sw.model, "Checkpoint path")->required();
  s->add_option("--n", sw.n, "Qubits (default: training geometry)");
  s->add_option("--states", sw.states, "States per depth")->capture_default_str();
  s->add_option("--snapshots", sw.snapshots, "Snapshots per state (default: training geometry)");
  s->add_option("--depths", sw.depths, "Depth list, e.g. 0..8 or 0,2,4")->capture_default_str();
  s->add_option("--layers", sw.layers, "Layer slices for method2 (default: training geometry)");
  s->add_option("--seed", sw.seed)->capture_default_str();
  s->add_option("--out", sw.out, "Sweep CSV path")->required();
  s->add_option("--inset", sw.inset, "Inset CSV (default: <out>.inset.csv)");
  s->add_option("--threads", sw.threads, "Worker threads (default: $STABSCOPE_THREADS or 1)");

  VerifyArgs ve;
  auto* v = app.add_subcommand("verify-eq2", "Check the Clifford fourth-moment identity");
  v->add_option("--n", ve.n)->capture_default_str();
  v->add_option("--states", ve.states)->capture_default_str();
  v->add_option("--cliffords", ve.cliffords, "Uniform Cliffords per state")->capture_default_str();
  v->add_option("--seed", ve.seed)->capture_default_str();
  v->add_option("--out", ve.out, "CSV path")->required();
  v->add_option("--projector", ve.projector, "Projector report JSON (default: <out>.projector.json)");

  SreArgs sr;
  auto* r = app.add_subcommand("sre", "Stabilizer Renyi entropy of a product state");
  r->add_option("--state", sr.state, kStateSpecHelp);
  r->add_option("--state-file", sr.state_file, "File containing a state spec");
  r->add_option("--random-product", sr.random_product, "Haar-random product state on this many qubits");
  r->add_option("--seed", sr.seed)->capture_default_str();
  r->add_option("--out", sr.out, "Also write the JSON report here");

  NaiveArgs na;
  auto* nc = app.add_subcommand("naive-classify", "Pauli-average witness on a state or a z-basis container");
  nc->add_option("--data", na.data, "z-basis container");
  nc->add_option("--state", na.state, kStateSpecHelp);
  nc->add_option("--state-file", na.state_file, "File containing a state spec");
  nc->add_option("--rounds", na.rounds, "1 = z-only witness; more adds shallow-Clifford rounds")->capture_default_str();
  nc->add_option("--depth", na.depth, "Brickwork depth of each extra round")->capture_default_str();
  nc->add_option("--snapshots", na.snapshots, "Snapshots per round")->capture_default_str();
  nc->add_option("--k-sigma", na.k_sigma)->capture_default_str();
  nc->add_option("--seed", na.seed)->capture_default_str();
  nc->add_option("--out", na.out, "Also write the JSON report here");

  std::vector<const char*> cargv{"stabscope"};
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (g->parsed()) cmd_gen_data(gen, args, out);
    if (t->parsed()) cmd_train(tr, args, out);
    if (s->parsed()) cmd_sweep_depth(sw, args, out);
    if (v->parsed()) cmd_verify_eq2(ve, args, out);
    if (r->parsed()) cmd_sre(sr, out);
    if (nc->parsed()) cmd_naive_classify(na, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace stabscope
