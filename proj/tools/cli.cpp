// Copyright 2026 The GIE Authors. All Rights Reserved.
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <thread>
#include <vector>

namespace gie::cli {

namespace {

using json = nlohmann::ordered_json;

struct DatasetDeleter {
  void operator()(gie_dataset* p) const { gie_dataset_free(p); }
};
struct ModelDeleter {
  void operator()(gie_model* p) const { gie_model_free(p); }
};
struct EvalDeleter {
  void operator()(gie_eval_report* p) const { gie_eval_report_free(p); }
};
struct MetricsDeleter {
  void operator()(gie_metrics_report* p) const { gie_metrics_report_free(p); }
};
using DatasetPtr = std::unique_ptr<gie_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<gie_model, ModelDeleter>;
using EvalPtr = std::unique_ptr<gie_eval_report, EvalDeleter>;
using MetricsPtr = std::unique_ptr<gie_metrics_report, MetricsDeleter>;

// Thrown inside commands; carries the library status for the exit code.
struct Failure {
  gie_status status;
  std::string message;
};

void check(gie_status status, const std::string& context = {}) {
  if (status == GIE_OK) return;
  std::string message = gie_last_error();
  if (!context.empty()) message = context + ": " + message;
  throw Failure{status, std::move(message)};
}

int exit_code(gie_status status) {
  switch (status) {
    case GIE_OK: return kExitOk;
    case GIE_ERR_INVALID_CONFIG:
    case GIE_ERR_INVALID_ARGUMENT: return kExitUsage;
    case GIE_ERR_TRAINING_DIVERGED: return kExitDiverged;
    default: return kExitData;
  }
}

template <typename F>
int run_command(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Failure& f) {
    err << "error: " << gie_status_name(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

DatasetPtr load_dataset(const std::filesystem::path& dir) {
  gie_dataset* raw = nullptr;
  check(gie_dataset_load(dir.string().c_str(), &raw), "loading " + dir.string());
  return DatasetPtr(raw);
}

std::string format_double(double v, int precision = 6) {
  if (std::isnan(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

json json_number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T result{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, result);
  if (ec != std::errc() || ptr != last) {
    throw UsageError("invalid value for " + key + ": '" + value + "'");
  }
  return result;
}

struct Field {
  const char* name;
  const char* type;
  const char* help;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field number_field(const char* name, const char* help, T RunConfig::*member) {
  return {name, std::is_floating_point_v<T> ? "FLOAT" : "INT", help,
          [name, member](RunConfig& c, const std::string& v) { c.*member = parse_number<T>(name, v); },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

template <typename T>
Field train_field(const char* name, const char* help, T gie_train_config::*member) {
  return {name, std::is_floating_point_v<T> ? "FLOAT" : "INT", help,
          [name, member](RunConfig& c, const std::string& v) {
            c.train.*member = parse_number<T>(name, v);
          },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              char buf[32];
              std::snprintf(buf, sizeof buf, "%g", c.train.*member);
              return std::string(buf);
            } else {
              return std::to_string(c.train.*member);
            }
          }};
}

Field path_field(const char* name, const char* help, std::filesystem::path RunConfig::*member) {
  return {name, "PATH", help, [member](RunConfig& c, const std::string& v) { c.*member = v; },
          [member](const RunConfig& c) { return (c.*member).string(); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      path_field("data", "dataset directory with train/valid/test.txt", &RunConfig::data),
      path_field("out", "output directory", &RunConfig::out),
      path_field("checkpoint", "checkpoint file (default <out>/model.gie)", &RunConfig::checkpoint),
      train_field("dim", "embedding dimension (even)", &gie_train_config::dim),
      train_field("lr", "SGD learning rate", &gie_train_config::learning_rate),
      train_field("batch", "positives per batch", &gie_train_config::batch_size),
      train_field("neg", "negatives per positive", &gie_train_config::negatives),
      train_field("epochs", "training epochs", &gie_train_config::epochs),
      train_field("patience", "early-stopping patience in epochs", &gie_train_config::patience),
      train_field("seed", "random seed", &gie_train_config::seed),
      train_field("threads", "worker threads", &gie_train_config::threads),
      {"interaction", "NAME", "interaction geometry: euclidean, hyperbolic or spherical",
       [](RunConfig& c, const std::string& v) {
         if (v == "euclidean") c.train.interaction = GIE_GEOMETRY_EUCLIDEAN;
         else if (v == "hyperbolic") c.train.interaction = GIE_GEOMETRY_HYPERBOLIC;
         else if (v == "spherical") c.train.interaction = GIE_GEOMETRY_SPHERICAL;
         else throw UsageError("invalid value for interaction: '" + v + "'");
       },
       [](const RunConfig& c) -> std::string {
         switch (c.train.interaction) {
           case GIE_GEOMETRY_EUCLIDEAN: return "euclidean";
           case GIE_GEOMETRY_SPHERICAL: return "spherical";
           default: return "hyperbolic";
         }
       }},
      {"format", "NAME", "report format: text or structured",
       [](RunConfig& c, const std::string& v) {
         if (v == "text") c.format = Format::kText;
         else if (v == "structured") c.format = Format::kStructured;
         else throw UsageError("invalid value for format: '" + v + "'");
       },
       [](const RunConfig& c) -> std::string {
         return c.format == Format::kText ? "text" : "structured";
       }},
      {"split", "NAME", "split to evaluate: train, valid or test",
       [](RunConfig& c, const std::string& v) {
         if (v == "train") c.split = GIE_SPLIT_TRAIN;
         else if (v == "valid") c.split = GIE_SPLIT_VALID;
         else if (v == "test") c.split = GIE_SPLIT_TEST;
         else throw UsageError("invalid value for split: '" + v + "'");
       },
       [](const RunConfig& c) -> std::string {
         switch (c.split) {
           case GIE_SPLIT_TRAIN: return "train";
           case GIE_SPLIT_VALID: return "valid";
           default: return "test";
         }
       }},
      number_field("samples", "triangles sampled per relation", &RunConfig::samples),
  };
  return table;
}

const Field& find_field(const std::string& key) {
  for (const auto& f : fields()) {
    if (key == f.name) return f;
  }
  throw UsageError("unknown config key '" + key + "'");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  gie_train_config_default(&cfg.train);
  cfg.train.threads = std::max(1u, std::thread::hardware_concurrency());
  return cfg;
}

std::filesystem::path RunConfig::checkpoint_path() const {
  return checkpoint.empty() ? out / "model.gie" : checkpoint;
}

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
  find_field(key).set(cfg, value);
}

std::vector<std::string> apply_config_file(RunConfig& cfg, const std::filesystem::path& file) {
  std::vector<std::string> keys;
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open config file " + file.string());
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(file.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    keys.push_back(trim(line.substr(0, eq)));
    set_field(cfg, keys.back(), trim(line.substr(eq + 1)));
  }
  return keys;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_command(err, [&] {
    const auto dataset = load_dataset(cfg.data);
    gie_model* raw = nullptr;
    check(gie_model_init(dataset.get(), &cfg.train, &raw));
    const ModelPtr model(raw);

    std::filesystem::create_directories(cfg.out);
    const auto log_path = cfg.out / "metrics.log";
    std::ofstream log(log_path);
    if (!log) throw Failure{GIE_ERR_IO, "cannot write " + log_path.string()};

    struct Sink {
      std::ostream* out;
      std::ostream* log;
      Format format;
    } sink{&out, &log, cfg.format};
    auto on_epoch = [](size_t epoch, double loss, double valid_mrr, void* user) {
      auto& s = *static_cast<Sink*>(user);
      const std::string line =
          std::to_string(epoch) + "\t" + format_double(loss, 8) + "\t" + format_double(valid_mrr);
      *s.log << line << "\n" << std::flush;
      if (s.format == Format::kText) {
        *s.out << line << "\n" << std::flush;
      } else {
        json row = {{"epoch", epoch}, {"loss", loss}, {"valid_mrr", json_number(valid_mrr)}};
        *s.out << row.dump() << "\n" << std::flush;
      }
    };

    size_t diverged_epoch = 0;
    const gie_status status =
        gie_model_train(model.get(), dataset.get(), &cfg.train, on_epoch, &sink, &diverged_epoch);
    if (status == GIE_ERR_TRAINING_DIVERGED) {
      throw Failure{status, "epoch " + std::to_string(diverged_epoch) + ": " + gie_last_error()};
    }
    check(status);

    const auto ckpt = cfg.checkpoint_path();
    if (ckpt.has_parent_path()) std::filesystem::create_directories(ckpt.parent_path());
    check(gie_model_save(model.get(), ckpt.string().c_str()), "saving " + ckpt.string());
    if (cfg.format == Format::kText) {
      out << "checkpoint\t" << ckpt.string() << "\n";
    } else {
      json done = {{"checkpoint", ckpt.string()}, {"epochs", gie_model_epoch(model.get())}};
      out << done.dump() << "\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_command(err, [&] {
    const auto dataset = load_dataset(cfg.data);
    const auto path = cfg.checkpoint_path();
    gie_model* raw_model = nullptr;
    check(gie_model_load(path.string().c_str(), &raw_model), "loading " + path.string());
    const ModelPtr model(raw_model);
    check(gie_model_check_vocab(model.get(), dataset.get()));

    gie_eval_report* raw_report = nullptr;
    check(gie_evaluate(model.get(), dataset.get(), cfg.split, cfg.train.threads, &raw_report));
    const EvalPtr report(raw_report);

    const size_t rows = gie_eval_report_num_relations(report.get());
    std::vector<gie_relation_eval> per_relation(rows);
    for (size_t i = 0; i < rows; ++i) check(gie_eval_report_relation(report.get(), i, &per_relation[i]));

    const double mrr = gie_eval_report_mrr(report.get());
    if (cfg.format == Format::kText) {
      out << "queries\t" << gie_eval_report_queries(report.get()) << "\n";
      out << "mrr\t" << format_double(mrr, 4) << "\n";
      for (int n : {1, 3, 10}) {
        out << "hits@" << n << "\t" << format_double(gie_eval_report_hits(report.get(), n), 4) << "\n";
      }
      out << "\nrelation\tmrr\thits@10\tcount\n";
      for (const auto& row : per_relation) {
        out << gie_dataset_relation_name(dataset.get(), row.relation) << "\t"
            << format_double(row.mrr, 4) << "\t" << format_double(row.hits10, 4) << "\t"
            << row.count << "\n";
      }
    } else {
      json doc;
      doc["queries"] = gie_eval_report_queries(report.get());
      doc["mrr"] = mrr;
      for (int n : {1, 3, 10}) {
        doc["hits"][std::to_string(n)] = gie_eval_report_hits(report.get(), n);
      }
      doc["relations"] = json::array();
      for (const auto& row : per_relation) {
        doc["relations"].push_back({{"relation", gie_dataset_relation_name(dataset.get(), row.relation)},
                                    {"mrr", row.mrr},
                                    {"hits10", row.hits10},
                                    {"count", row.count}});
      }
      out << doc.dump(2) << "\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_metrics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_command(err, [&] {
    const auto dataset = load_dataset(cfg.data);
    gie_metrics_report* raw = nullptr;
    check(gie_graph_metrics(dataset.get(), cfg.samples, cfg.train.seed, cfg.train.threads, &raw));
    const MetricsPtr report(raw);

    const size_t n = gie_metrics_report_size(report.get());
    std::vector<gie_relation_metrics> rows(n);
    for (size_t i = 0; i < n; ++i) check(gie_metrics_report_row(report.get(), i, &rows[i]));
    double graph = 0.0;
    const bool has_graph = gie_metrics_report_curvature(report.get(), &graph) != 0;

    if (cfg.format == Format::kText) {
      out << "relation\txi\tkhs\tedges\n";
      for (const auto& row : rows) {
        out << row.name << "\t" << (row.has_curvature ? format_double(row.curvature, 4) : "-")
            << "\t" << format_double(row.khs, 4) << "\t" << row.edges << "\n";
      }
      out << "\ngraph_xi\t" << (has_graph ? format_double(graph, 4) : "-") << "\n";
    } else {
      json doc;
      doc["relations"] = json::array();
      for (const auto& row : rows) {
        doc["relations"].push_back({{"relation", row.name},
                                    {"xi", row.has_curvature ? json(row.curvature) : json(nullptr)},
                                    {"khs", json_number(row.khs)},
                                    {"edges", row.edges}});
      }
      doc["graph_xi"] = has_graph ? json(graph) : json(nullptr);
      out << doc.dump(2) << "\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_synth(const RunConfig& cfg, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  return run_command(err, [&] {
    check(gie_synthetic_write(cfg.out.string().c_str(), seed, 0.1), "writing " + cfg.out.string());
    out << "wrote\t" << cfg.out.string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const RunConfig defaults = RunConfig::defaults();
  CLI::App app{"GIE knowledge-graph embeddings"};
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::map<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>> bound;
  std::map<CLI::App*, std::string> config_files;

  auto add_command = [&](const char* name, const char* help,
                         std::initializer_list<const char*> keys) {
    CLI::App* sub = app.add_subcommand(name, help);
    for (const char* key : keys) {
      const Field& f = find_field(key);
      auto* opt = sub->add_option(std::string("--") + key, values[key], f.help);
      opt->type_name(f.type)->default_str(f.get(defaults));
      bound[sub].emplace_back(key, opt);
    }
    sub->add_option("--config", config_files[sub], "key=value file; flags take precedence")
        ->type_name("PATH")
        ->check(CLI::ExistingFile);
    return sub;
  };

  CLI::App* train = add_command("train", "train a model and write a checkpoint",
                                {"data", "out", "checkpoint", "dim", "lr", "batch", "neg", "epochs",
                                 "patience", "seed", "threads", "interaction", "format"});
  CLI::App* eval = add_command("eval", "evaluate a checkpoint",
                               {"data", "out", "checkpoint", "split", "threads", "format"});
  CLI::App* metrics = add_command("metrics", "per-relation curvature and hierarchy scores",
                                  {"data", "samples", "seed", "threads", "format"});
  CLI::App* synth = app.add_subcommand("synth", "write the synthetic ring/tree/chain dataset");
  std::string synth_out = "data/synthetic";
  std::uint64_t synth_seed = kDefaultSyntheticSeed;
  synth->add_option("--out", synth_out, "output directory")->type_name("PATH")->capture_default_str();
  synth->add_option("--seed", synth_seed, "generator seed")->type_name("INT")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (synth->parsed()) {
    RunConfig cfg = defaults;
    cfg.out = synth_out;
    return cmd_synth(cfg, synth_seed, out, err);
  }

  CLI::App* sub = train->parsed() ? train : eval->parsed() ? eval : metrics;
  RunConfig cfg = defaults;
  std::vector<std::string> assigned;
  try {
    if (!config_files[sub].empty()) assigned = apply_config_file(cfg, config_files[sub]);
    for (const auto& [key, opt] : bound[sub]) {
      if (opt->count() == 0) continue;
      set_field(cfg, key, values[key]);
      assigned.push_back(key);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  // Shortening the run should not require restating the patience.
  if (std::find(assigned.begin(), assigned.end(), "patience") == assigned.end()) {
    cfg.train.patience = std::min(cfg.train.patience, cfg.train.epochs);
  }

  if (sub == train) return cmd_train(cfg, out, err);
  if (sub == eval) return cmd_eval(cfg, out, err);
  return cmd_metrics(cfg, out, err);
}

}  // namespace gie::cli
