// Copyright 2026 The inembed Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "inembed/error.hpp"
#include "inembed/eval.hpp"
#include "inembed/graph.hpp"
#include "inembed/incomplete.hpp"
#include "inembed/kernels.hpp"
#include "inembed/rng.hpp"
#include "inembed/synthetic.hpp"
#include "inembed/trainer.hpp"
#include "inembed/walks.hpp"

namespace inembed::cli {

namespace {

namespace fs = std::filesystem;

// INI-style key=value lines grouped under [section] headers. The same file
// is accepted by --config, so a manifest replays its run on its own.
class Manifest {
 public:
  template <typename T>
  void set(const std::string& key, const T& value) {
    std::ostringstream ss;
    ss.precision(17);
    ss << value;
    entries_.emplace_back(key, ss.str());
  }
  void set(const std::string& key, const std::string& value) { entries_.emplace_back(key, quote(value)); }
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, bool value) { entries_.emplace_back(key, value ? "true" : "false"); }

  // Keys are `section.name`; sections appear in first-use order.
  std::string str() const {
    std::string out = "# inembed run manifest; replay with: inembed --config <this file>\n";
    std::vector<std::string> sections;
    for (const auto& [k, v] : entries_) {
      auto sec = k.substr(0, k.find('.'));
      if (std::find(sections.begin(), sections.end(), sec) == sections.end()) sections.push_back(sec);
    }
    for (const auto& sec : sections) {
      out += "[" + sec + "]\n";
      for (const auto& [k, v] : entries_) {
        if (k.compare(0, sec.size() + 1, sec + ".") == 0) out += k.substr(sec.size() + 1) + "=" + v + "\n";
      }
    }
    return out;
  }

 private:
  static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  }
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string env_name(const std::string& flag) {
  std::string out = "INEMBED_";
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& var, const std::string& desc) {
  return app->add_option("--" + name, var, desc)->envname(env_name(name))->capture_default_str();
}

struct TrainFlags {
  TrainConfig config;

  void attach(CLI::App* app) {
    flag(app, "dim", config.dim, "Embedding dimension d")->check(CLI::PositiveNumber);
    flag(app, "walk-len", config.walk_len, "Random walk length L")->check(CLI::PositiveNumber);
    flag(app, "walks-per-node", config.walks_per_node, "Walks started per node")->check(CLI::PositiveNumber);
    flag(app, "window", config.window, "Context window size t")->check(CLI::PositiveNumber);
    flag(app, "negatives", config.negatives, "Negative samples K")->check(CLI::PositiveNumber);
    flag(app, "iters", config.max_iters, "SGD iterations I")->check(CLI::PositiveNumber);
    flag(app, "lr", config.lr0, "Initial learning rate")->check(CLI::PositiveNumber);
    flag(app, "lr-period", config.lr_update_period, "Iterations between learning-rate updates");
    flag(app, "structure-prob", config.structure_prob, "Probability of a structure step")->check(CLI::Range(0.0, 1.0));
    flag(app, "threads", config.threads, "Worker threads; 1 is deterministic")->check(CLI::PositiveNumber);
  }

  void record(Manifest& m, const std::string& sec) const {
    m.set(sec + ".dim", config.dim);
    m.set(sec + ".walk-len", config.walk_len);
    m.set(sec + ".walks-per-node", config.walks_per_node);
    m.set(sec + ".window", config.window);
    m.set(sec + ".negatives", config.negatives);
    m.set(sec + ".iters", config.max_iters);
    m.set(sec + ".lr", config.lr0);
    m.set(sec + ".lr-period", config.lr_update_period);
    m.set(sec + ".structure-prob", config.structure_prob);
    m.set(sec + ".threads", config.threads);
  }
};

void record_stats(Manifest& m, const TrainStats& s) {
  m.set("meta.version", std::string(INEMBED_VERSION));
  m.set("meta.kernels", std::string(kernels::active().name));
  m.set("meta.seconds_walks", s.walk_seconds);
  m.set("meta.seconds_counts", s.count_seconds);
  m.set("meta.seconds_tables", s.table_seconds);
  m.set("meta.seconds_sgd", s.sgd_seconds);
  m.set("meta.structure_steps", s.structure_steps);
  m.set("meta.attribute_steps", s.attribute_steps);
}

AttributedGraph load_graph(const std::string& edges, const std::string& attrs) {
  auto graph = load_edges(edges);
  if (!attrs.empty()) graph = load_attrs(graph, attrs);
  return graph;
}

std::string format_edge_list(const AttributedGraph& graph, const std::vector<Edge>& edges) {
  std::string out;
  for (const auto& e : edges) {
    out += graph.node_vocab().name(e.u) + ' ' + graph.node_vocab().name(e.v);
    if (e.weight != 1.0) {
      std::ostringstream ss;
      ss.precision(17);
      ss << ' ' << e.weight;
      out += ss.str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Node embeddings for incomplete attributed networks"};
  app.name(args.empty() ? "inembed" : fs::path(args[0]).filename().string());
  app.set_version_flag("--version", INEMBED_VERSION);
  app.set_config("--config", "", "Key=value file (a run manifest); command-line flags override it");
  app.require_subcommand(0, 1);

  std::uint64_t seed = 1;
  std::string edges_path;
  std::string attrs_path;
  std::string labels_path;

  // train
  auto* train_cmd = app.add_subcommand("train", "Learn node embeddings");
  train_cmd->configurable();
  TrainFlags train_flags;
  std::string output_path;
  std::string manifest_path;
  train_cmd->add_option("--edges", edges_path, "Edge list file")->required()->check(CLI::ExistingFile)->envname(env_name("edges"));
  train_cmd->add_option("--attrs", attrs_path, "Attribute file (optional)")->check(CLI::ExistingFile)->envname(env_name("attrs"));
  train_cmd->add_option("--output", output_path, "Embedding output file")->required()->envname(env_name("output"));
  train_cmd->add_option("--manifest", manifest_path, "Manifest path (default: <output>.manifest)");
  flag(train_cmd, "seed", seed, "Random seed");
  train_flags.attach(train_cmd);

  // corrupt
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Write a corrupted copy of a graph");
  corrupt_cmd->configurable();
  std::string kind_name;
  double fraction = 0.0;
  std::string out_prefix;
  corrupt_cmd->add_option("--edges", edges_path, "Edge list file")->required()->check(CLI::ExistingFile);
  corrupt_cmd->add_option("--attrs", attrs_path, "Attribute file")->check(CLI::ExistingFile);
  corrupt_cmd->add_option("--labels", labels_path, "Label file (col_important)")->check(CLI::ExistingFile);
  corrupt_cmd->add_option("--kind", kind_name, "row_random|row_important|col_random|col_important|edge_random")
      ->required()
      ->check(CLI::IsMember({"row_random", "row_important", "col_random", "col_important", "edge_random"}));
  corrupt_cmd->add_option("--fraction", fraction, "Fraction to drop")->required()->check(CLI::Range(0.0, 1.0));
  corrupt_cmd->add_option("--out-prefix", out_prefix, "Writes <prefix>.edges/.attrs/.removed/.manifest")->required();
  flag(corrupt_cmd, "seed", seed, "Random seed");

  // linkpred
  auto* link_cmd = app.add_subcommand("linkpred", "Link prediction on held-out edges");
  link_cmd->configurable();
  TrainFlags link_flags;
  link_flags.config.dim = 128;
  link_flags.config.max_iters = 10'000'000;
  double remove_fraction = 0.3;
  std::vector<std::string> operators{"hadamard"};
  std::string attr_kind;
  double attr_fraction = 0.0;
  bool structure_only = false;
  double subsample = 1.0;
  std::string csv_path;
  link_cmd->add_option("--edges", edges_path, "Edge list file")->required()->check(CLI::ExistingFile);
  link_cmd->add_option("--attrs", attrs_path, "Attribute file")->check(CLI::ExistingFile);
  link_cmd->add_option("--labels", labels_path, "Label file (col_important)")->check(CLI::ExistingFile);
  flag(link_cmd, "remove-fraction", remove_fraction, "Fraction of edges held out")->check(CLI::Range(0.0, 1.0));
  link_cmd->add_option("--operator", operators, "average|hadamard|l1|l2|heuristic:<common|jaccard|adamic_adar|preferential>; repeatable")
      ->capture_default_str();
  link_cmd->add_option("--attr-corruption", attr_kind, "Also drop attributes: row_random|row_important|col_random|col_important")
      ->check(CLI::IsMember({"row_random", "row_important", "col_random", "col_important"}));
  link_cmd->add_option("--attr-fraction", attr_fraction, "Fraction for --attr-corruption")->check(CLI::Range(0.0, 1.0));
  link_cmd->add_flag("--structure-only", structure_only, "Ignore attributes when training");
  link_cmd->add_option("--subsample", subsample, "Keep this fraction of train/test positives")->check(CLI::Range(0.0, 1.0));
  link_cmd->add_option("--csv", csv_path, "Also write results as CSV");
  flag(link_cmd, "seed", seed, "Random seed");
  link_flags.attach(link_cmd);

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "Dump context-pair counts");
  pairs_cmd->configurable();
  TrainFlags pair_flags;
  pairs_cmd->add_option("--edges", edges_path, "Edge list file")->required()->check(CLI::ExistingFile);
  pairs_cmd->add_option("--output", output_path, "Output file (default: stdout)");
  flag(pairs_cmd, "walk-len", pair_flags.config.walk_len, "Random walk length L")->check(CLI::PositiveNumber);
  flag(pairs_cmd, "walks-per-node", pair_flags.config.walks_per_node, "Walks per node")->check(CLI::PositiveNumber);
  flag(pairs_cmd, "window", pair_flags.config.window, "Context window size t")->check(CLI::PositiveNumber);
  flag(pairs_cmd, "seed", seed, "Random seed");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic two-block attributed graph");
  BlockGraphConfig block;
  synth_cmd->add_option("--out-prefix", out_prefix, "Writes <prefix>.edges/.attrs/.labels")->required();
  synth_cmd->add_option("--blocks", block.blocks, "Number of blocks")->capture_default_str();
  synth_cmd->add_option("--block-size", block.nodes_per_block, "Nodes per block")->capture_default_str();
  synth_cmd->add_option("--p-intra", block.p_intra, "Intra-block edge probability")->capture_default_str();
  synth_cmd->add_option("--p-inter", block.p_inter, "Inter-block edge probability")->capture_default_str();
  synth_cmd->add_option("--attrs-per-block", block.attrs_per_block, "Indicative attributes per block")->capture_default_str();
  synth_cmd->add_option("--flip", block.flip_noise, "Attribute flip noise")->capture_default_str();
  flag(synth_cmd, "seed", seed, "Random seed");

  for (auto* sub : app.get_subcommands({})) {
    for (auto* opt : sub->get_options()) {
      const auto name = opt->get_single_name();
      if (name == "help" || !opt->get_envname().empty()) continue;
      opt->envname(env_name(name));
    }
  }

  std::vector<std::string> argv_rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << INEMBED_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    Manifest manifest;

    if (*train_cmd) {
      train_flags.config.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const auto graph = load_graph(edges_path, attrs_path);
      const double load_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto result = train(graph, train_flags.config);
      if (!result.model.all_finite()) throw Error("training diverged (non-finite parameters)");
      write_text(output_path, format_embeddings(graph, result.model));

      manifest.set("train.edges", edges_path);
      if (!attrs_path.empty()) manifest.set("train.attrs", attrs_path);
      manifest.set("train.output", output_path);
      manifest.set("train.seed", seed);
      train_flags.record(manifest, "train");
      manifest.set("meta.seconds_load", load_s);
      record_stats(manifest, result.stats);
      write_text(manifest_path.empty() ? output_path + ".manifest" : manifest_path, manifest.str());
      return kOk;
    }

    if (*corrupt_cmd) {
      auto graph = load_graph(edges_path, attrs_path);
      std::optional<LabelAssignment> labels;
      if (!labels_path.empty()) labels = load_labels(graph, labels_path);
      CorruptionSpec spec{parse_corruption_kind(kind_name), fraction, derive_seed(seed, "corrupt")};
      if (spec.kind == CorruptionKind::kColImportant && !labels) {
        err << "error: --labels is required for col_important\n";
        return kUsageError;
      }
      const auto result = apply_corruption(graph, spec, labels ? &*labels : nullptr);
      write_text(out_prefix + ".edges", format_edges(result.graph));
      write_text(out_prefix + ".attrs", format_attrs(result.graph));
      write_text(out_prefix + ".removed", format_edge_list(graph, result.removed));

      manifest.set("corrupt.edges", edges_path);
      if (!attrs_path.empty()) manifest.set("corrupt.attrs", attrs_path);
      if (!labels_path.empty()) manifest.set("corrupt.labels", labels_path);
      manifest.set("corrupt.kind", kind_name);
      manifest.set("corrupt.fraction", fraction);
      manifest.set("corrupt.seed", seed);
      manifest.set("corrupt.out-prefix", out_prefix);
      manifest.set("meta.version", std::string(INEMBED_VERSION));
      write_text(out_prefix + ".manifest", manifest.str());
      return kOk;
    }

    if (*link_cmd) {
      auto graph = load_graph(edges_path, attrs_path);
      std::optional<LabelAssignment> labels;
      if (!labels_path.empty()) labels = load_labels(graph, labels_path);
      LinkPredictionOptions opts;
      opts.remove_fraction = remove_fraction;
      opts.seed = seed;
      opts.scorers.clear();
      for (const auto& op : operators) opts.scorers.push_back(parse_link_scorer(op));
      if (!attr_kind.empty()) {
        opts.attr_corruption = CorruptionSpec{parse_corruption_kind(attr_kind), attr_fraction,
                                              derive_seed(seed, "attr-corruption")};
        if (opts.attr_corruption->kind == CorruptionKind::kColImportant && !labels) {
          err << "error: --labels is required for col_important\n";
          return kUsageError;
        }
      }
      opts.labels = labels ? &*labels : nullptr;
      opts.structure_only = structure_only;
      opts.subsample = subsample;
      opts.train = link_flags.config;
      opts.train.seed = derive_seed(seed, "embed");
      const auto report = run_link_prediction(graph, opts);

      char buf[128];
      std::string csv = "operator,method,auc\n";
      for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%s %s %.4f\n", row.scorer.c_str(), row.method.c_str(), row.auc);
        out << buf;
        std::snprintf(buf, sizeof(buf), "%s,%s,%.6f\n", row.scorer.c_str(), row.method.c_str(), row.auc);
        csv += buf;
      }
      if (!csv_path.empty()) {
        write_text(csv_path, csv);
        manifest.set("linkpred.edges", edges_path);
        if (!attrs_path.empty()) manifest.set("linkpred.attrs", attrs_path);
        if (!labels_path.empty()) manifest.set("linkpred.labels", labels_path);
        manifest.set("linkpred.remove-fraction", remove_fraction);
        std::string ops;
        for (const auto& op : operators) ops += (ops.empty() ? "" : " ") + op;
        manifest.set("linkpred.operator", "[" + ops + "]");
        if (!attr_kind.empty()) {
          manifest.set("linkpred.attr-corruption", attr_kind);
          manifest.set("linkpred.attr-fraction", attr_fraction);
        }
        manifest.set("linkpred.structure-only", structure_only);
        manifest.set("linkpred.subsample", subsample);
        manifest.set("linkpred.csv", csv_path);
        manifest.set("linkpred.seed", seed);
        link_flags.record(manifest, "linkpred");
        record_stats(manifest, report.train_stats);
        write_text(csv_path + ".manifest", manifest.str());
      }
      return kOk;
    }

    if (*pairs_cmd) {
      const auto graph = load_edges(edges_path);
      WalkConfig wc{pair_flags.config.walk_len, pair_flags.config.walks_per_node, derive_seed(seed, "walks")};
      const auto walks = generate_walks(graph, wc);
      const auto counts = count_context_pairs(walks, pair_flags.config.window, graph.node_count());
      const auto text = format_pairs(graph, counts);
      if (output_path.empty()) {
        out << text;
      } else {
        write_text(output_path, text);
        manifest.set("pairs.edges", edges_path);
        manifest.set("pairs.output", output_path);
        manifest.set("pairs.walk-len", pair_flags.config.walk_len);
        manifest.set("pairs.walks-per-node", pair_flags.config.walks_per_node);
        manifest.set("pairs.window", pair_flags.config.window);
        manifest.set("pairs.seed", seed);
        manifest.set("meta.version", std::string(INEMBED_VERSION));
        write_text(output_path + ".manifest", manifest.str());
      }
      return kOk;
    }

    if (*synth_cmd) {
      block.seed = seed;
      const auto lg = make_block_graph(block);
      write_text(out_prefix + ".edges", format_edges(lg.graph));
      write_text(out_prefix + ".attrs", format_attrs(lg.graph));
      write_text(out_prefix + ".labels", format_labels(lg.graph, lg.labels));
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace inembed::cli
