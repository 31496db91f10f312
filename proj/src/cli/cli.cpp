// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "conductor/backend/cost.hpp"
#include "conductor/backend/live.hpp"
#include "conductor/backend/replay.hpp"
#include "conductor/backend/script.hpp"
#include "conductor/core/errors.hpp"
#include "conductor/core/render.hpp"
#include "conductor/core/text.hpp"
#include "conductor/data/catalog.hpp"
#include "conductor/data/dataset.hpp"
#include "conductor/data/records.hpp"
#include "conductor/metrics/analysis.hpp"
#include "conductor/metrics/report.hpp"
#include "conductor/pipelines/pipelines.hpp"

namespace conductor::cli {
namespace {

namespace fs = std::filesystem;

/// Config problems detected after parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Method> kMethods = {{"tpe", Method::Tpe},       {"cot", Method::Cot},
                                                {"react", Method::React},   {"rewoo", Method::Rewoo},
                                                {"chameleon", Method::Chameleon}, {"cuecot", Method::CueCot}};
const std::map<std::string, DatasetKind> kKinds = {
    {"focus", DatasetKind::Focus}, {"cima", DatasetKind::Cima}, {"psyqa", DatasetKind::PsyQA}};

struct PipelineOptions {
  std::string method;
  std::string kind;
  std::string backend;
  std::string base_url;
  std::string model = std::string(backend::kDefaultModel);
  std::size_t k = 1;
  int demos = -1;
  std::vector<std::string> demo_ids;
  bool no_thought_in_planner = false;
  bool no_thought_in_executor = false;
  bool tool_examples = false;
  bool no_tool_descriptions = false;
  bool no_query_enrichment = false;
  int react_max_steps = 8;
  int max_tokens = 0;
  std::string prices;
  std::string resources;
  std::string record;
  double rps = 0.0;
  int max_in_flight = 0;
};

void add_pipeline_options(CLI::App& cmd, PipelineOptions& o) {
  cmd.add_option("--method", o.method, "tpe | cot | react | rewoo | chameleon | cuecot")
      ->required()
      ->check(CLI::IsMember({"tpe", "cot", "react", "rewoo", "chameleon", "cuecot"}));
  cmd.add_option("--kind", o.kind, "focus | cima | psyqa")->required()->check(CLI::IsMember({"focus", "cima", "psyqa"}));
  cmd.add_option("--backend", o.backend, "replay:FIXTURES.jsonl | scripted:RULES.json | live")->required();
  cmd.add_option("--base-url", o.base_url, "live only: OpenAI-compatible endpoint prefix");
  cmd.add_option("--model", o.model, "model id")->capture_default_str();
  cmd.add_option("--k", o.k, "passages retrieved per step")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--demos", o.demos, "truncate the demonstration bank (0 = zero-shot)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--demo-id", o.demo_ids, "keep only these demonstration ids, in order");
  cmd.add_flag("--no-thought-in-planner", o.no_thought_in_planner, "drop the Thinker output from the planner prompt");
  cmd.add_flag("--no-thought-in-executor", o.no_thought_in_executor, "drop the Thinker output from the executor prompt");
  cmd.add_flag("--tool-examples", o.tool_examples, "document tools with their examples");
  cmd.add_flag("--no-tool-descriptions", o.no_tool_descriptions, "document tools by name only");
  cmd.add_flag("--no-query-enrichment", o.no_query_enrichment, "query sources with the dialogue alone");
  cmd.add_option("--react-max-steps", o.react_max_steps, "ReAct step cap")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--max-tokens", o.max_tokens, "completion token limit (0 = unset)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--prices", o.prices, "price table JSON {model: usd_per_1k}")->check(CLI::ExistingFile);
  cmd.add_option("--resources", o.resources, "directory overriding the embedded templates")->check(CLI::ExistingDirectory);
  cmd.add_option("--record", o.record, "merge every exchange into this replay fixture file");
  cmd.add_option("--rps", o.rps, "live only: requests per second")->check(CLI::PositiveNumber);
  cmd.add_option("--max-in-flight", o.max_in_flight, "live only: concurrent requests")->check(CLI::PositiveNumber);
}

pipelines::MethodConfig make_config(const PipelineOptions& o) {
  pipelines::MethodConfig c;
  c.method = kMethods.at(o.method);
  c.dataset_kind = kKinds.at(o.kind);
  if (!data::method_applicable(c.method, c.dataset_kind)) {
    throw UsageError(o.method + " is not defined for " + o.kind);
  }
  c.k_retrieved = o.k;
  if (o.demos >= 0) c.demo_count = static_cast<std::size_t>(o.demos);
  c.demo_ids = o.demo_ids;
  c.include_thought_in_planner = !o.no_thought_in_planner;
  c.include_thought_in_executor = !o.no_thought_in_executor;
  c.include_tool_examples = o.tool_examples;
  c.include_tool_descriptions = !o.no_tool_descriptions;
  c.enrich_query_with_thought = !o.no_query_enrichment;
  c.react_max_steps = o.react_max_steps;
  c.model_id = o.model;
  if (o.max_tokens > 0) c.max_tokens = o.max_tokens;
  if (!o.prices.empty()) c.prices = backend::PriceTable::load(o.prices);
  if (!o.resources.empty()) c.resources = std::make_shared<data::ResourceStore>(fs::path(o.resources));
  return c;
}

/// Owns the configured backend and the optional recorder around it.
class BackendHandle {
 public:
  explicit BackendHandle(const PipelineOptions& o) : record_path_(o.record) {
    const bool live_flags = !o.base_url.empty() || o.rps > 0 || o.max_in_flight > 0;
    if (o.backend == "live") {
      backend::LiveConfig cfg;
      cfg.base_url = o.base_url.empty() ? "https://api.openai.com/v1" : o.base_url;
      cfg.model_id = o.model;
      if (o.rps > 0) cfg.requests_per_second = o.rps;
      if (o.max_in_flight > 0) cfg.max_in_flight = o.max_in_flight;
      inner_ = std::make_unique<backend::LiveBackend>(std::move(cfg));
    } else if (o.backend.starts_with("replay:")) {
      if (live_flags) throw UsageError("--base-url, --rps and --max-in-flight require --backend live");
      inner_ = std::make_unique<backend::ReplayBackend>(backend::ReplayBackend::load(o.backend.substr(7)));
    } else if (o.backend.starts_with("scripted:")) {
      if (live_flags) throw UsageError("--base-url, --rps and --max-in-flight require --backend live");
      auto script = std::make_shared<backend::Script>(backend::Script::load(o.backend.substr(9)));
      inner_ = std::make_unique<backend::ScriptedBackend>(
          [script](const backend::CompletionRequest& r) { return script->respond(r.prompt_text()); });
    } else {
      throw UsageError("--backend must be replay:PATH, scripted:PATH or live");
    }
    if (!record_path_.empty()) recorder_ = std::make_unique<backend::RecordingBackend>(*inner_);
  }

  backend::Backend& get() { return recorder_ ? static_cast<backend::Backend&>(*recorder_) : *inner_; }

  /// Merges recorded exchanges into the fixture file, if recording.
  void flush() {
    if (!recorder_) return;
    auto entries = recorder_->entries();
    if (fs::exists(record_path_)) {
      std::ifstream in(record_path_, std::ios::binary);
      std::string line;
      std::size_t n = 0;
      while (std::getline(in, line)) {
        ++n;
        if (!text::trim(line).empty()) entries.push_back(backend::parse_fixture_line(line, n));
      }
    }
    backend::write_fixtures(record_path_, std::move(entries));
  }

 private:
  std::string record_path_;
  std::unique_ptr<backend::Backend> inner_;
  std::unique_ptr<backend::RecordingBackend> recorder_;
};

DatasetKind kind_or_infer(const std::string& kind, const std::vector<RunRecord>& records) {
  if (!kind.empty()) return kKinds.at(kind);
  if (records.empty()) throw UsageError("--kind is required for an empty records file");
  return records.front().dataset_kind;
}

std::vector<metrics::Reference> load_references(const std::string& path, DatasetKind kind) {
  std::vector<metrics::Reference> refs;
  for (const auto& s : data::load_dataset(path, kind)) refs.push_back(s.reference());
  return refs;
}

struct CostRow {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::vector<TokenUsage> usages;
};

void print_cost_table(const std::vector<RunRecord>& records, const backend::PriceTable& prices, std::ostream& out) {
  std::map<std::pair<std::string, std::string>, CostRow> rows;
  for (const auto& r : records) {
    for (const auto& u : r.usages) {
      auto& row = rows[{std::string(to_string(r.method)), u.model_id}];
      row.prompt_tokens += u.prompt_tokens;
      row.completion_tokens += u.completion_tokens;
      row.usages.push_back(u);
    }
  }
  out << std::left << std::setw(11) << "method" << std::setw(16) << "model" << std::right << std::setw(16)
      << "prompt_tok" << std::setw(16) << "completion_tok" << std::setw(12) << "cost_usd" << "\n";
  for (const auto& [key, row] : rows) {
    std::string cost;
    try {
      cost = backend::compute_cost(row.usages, prices).to_string(6);
    } catch (const Error&) {
      cost = "unpriced";
    }
    out << std::left << std::setw(11) << key.first << std::setw(16) << key.second << std::right << std::setw(16)
        << row.prompt_tokens << std::setw(16) << row.completion_tokens << std::setw(12) << cost << "\n";
  }
}

Usd total_cost(const std::vector<RunRecord>& records) {
  Usd total;
  for (const auto& r : records) total += r.cost_usd;
  return total;
}

int cmd_run(const PipelineOptions& o, const std::string& dataset, const std::string& out_path, int parallelism,
            std::ostream& out) {
  auto config = make_config(o);
  const auto samples = data::load_dataset(dataset, config.dataset_kind);
  BackendHandle handle(o);
  const auto records =
      pipelines::run_batch(samples, config, handle.get(), retrieval::bm25_factory(), std::max(1, parallelism));
  data::export_records(records, out_path);
  handle.flush();
  const auto failures =
      static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return r.error.has_value(); }));
  out << "samples=" << records.size() << " failures=" << failures << " cost_usd=" << total_cost(records).to_string(6)
      << "\n";
  print_cost_table(records, config.prices, out);
  return failures == 0 ? kExitOk : kExitPartialFailure;
}

int cmd_eval(const std::string& records_path, const std::string& refs_path, const std::string& kind_name,
             const std::string& out_path, std::ostream& out) {
  const auto records = data::load_records(records_path);
  const DatasetKind kind = kind_or_infer(kind_name, records);
  const auto refs = load_references(refs_path, kind);
  const auto report = metrics::score_run(records, refs, kind);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + out_path);
    f << metrics::report_json(report);
  }
  out << metrics::report_table(report);
  return report.failures == 0 ? kExitOk : kExitPartialFailure;
}

int cmd_analyze_strategies(const std::string& records_path, std::ostream& out) {
  const auto records = data::load_records(records_path);
  const auto hist = metrics::strategy_distribution(records);
  std::vector<std::pair<std::string, std::size_t>> rows(hist.counts.begin(), hist.counts.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  out << "plans=" << hist.total << "\n";
  for (const auto& [label, count] : rows) {
    out << label << "\t" << count << "\t" << std::fixed << std::setprecision(4) << hist.proportion(label) << "\n";
  }
  out.unsetf(std::ios::fixed);
  return kExitOk;
}

int cmd_analyze_retrieval(const std::string& records_path, const std::string& refs_path, std::ostream& out) {
  const auto records = data::load_records(records_path);
  const DatasetKind kind = kind_or_infer("", records);
  if (!is_source_kind(kind)) throw UsageError("retrieval analysis needs a knowledge-source dataset");
  const auto refs = load_references(refs_path, kind);
  const auto aligned = metrics::align(records, refs);
  std::vector<std::vector<std::string>> personas;
  std::vector<std::vector<std::string>> documents;
  for (const auto* r : aligned) {
    personas.push_back(r->gold_personas);
    documents.push_back(r->gold_documents);
  }
  const auto counts = metrics::retrieval_accuracy(records, personas, documents);
  out << "correct_persona=" << counts.correct_persona << " correct_document=" << counts.correct_document
      << " cost_usd=" << total_cost(records).to_string(6) << "\n";
  return kExitOk;
}

int cmd_analyze_cost(const std::string& records_path, const std::string& prices_path, std::ostream& out) {
  const auto records = data::load_records(records_path);
  const auto prices = prices_path.empty() ? backend::PriceTable::defaults() : backend::PriceTable::load(prices_path);
  print_cost_table(records, prices, out);
  out << "total_cost_usd=" << total_cost(records).to_string(6) << "\n";
  return kExitOk;
}

int cmd_schema_check(const std::string& type, const std::string& kind_name, const std::string& path,
                     std::ostream& out, std::ostream& err) {
  std::size_t n = 0;
  try {
    if (type == "dataset") {
      if (kind_name.empty()) throw UsageError("--kind is required for datasets");
      n = data::load_dataset(path, kKinds.at(kind_name)).size();
    } else if (type == "records") {
      n = data::load_records(path).size();
    } else if (type == "fixtures") {
      n = backend::ReplayBackend::load(path).size();
    } else if (type == "toolset") {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      n = data::parse_toolset(ss.str(), fs::path(path).stem().string()).tools().size();
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      n = data::parse_demo_bank(ss.str(), "").size();
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SchemaViolation) throw;
    err << e.what() << "\n";
    out << "invalid: " << path << "\n";
    return kExitPartialFailure;
  }
  out << "ok: " << n << " " << type << " entries in " << path << "\n";
  return kExitOk;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> out;
  if (path.empty()) return out;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!text::trim(line).empty()) out.emplace_back(text::trim(line));
  }
  return out;
}

void print_section(std::ostream& out, std::string_view tag, std::string_view body) {
  out << "[" << tag << "] " << body << "\n";
}

int cmd_chat(const PipelineOptions& o, const std::string& persona_file, const std::string& document_file,
             std::istream& in, std::ostream& out) {
  const auto config = make_config(o);
  const auto personas = read_lines(persona_file);
  const auto documents = read_lines(document_file);
  if (is_source_kind(config.dataset_kind) && (personas.empty() || documents.empty())) {
    throw UsageError("chat on a knowledge-source dataset needs --persona-file and --document-file");
  }
  BackendHandle handle(o);
  const pipelines::MethodRunner runner(config);
  const auto style = default_role_style(config.dataset_kind);
  const auto factory = retrieval::bm25_factory();
  std::vector<Utterance> turns;
  std::string line;
  int turn = 0;
  while (std::getline(in, line)) {
    const std::string user(text::trim(line));
    if (user.empty()) continue;
    ++turn;
    turns.push_back({Role::User, user});
    out << ">>> " << style.user << ": " << user << "\n";
    data::Sample sample{"chat-" + std::to_string(turn), Dialogue("chat", config.dataset_kind, turns), "", {}, {}, {},
                        {}, {}};
    if (is_source_kind(config.dataset_kind)) {
      sample.persona_candidates = personas;
      sample.document_candidates = documents;
    }
    const auto record = runner.run(sample, handle.get(), factory);
    if (record.thought) print_section(out, "thought", record.thought->text);
    if (record.has_flag(pipelines::kFlagPlanParseFailure)) {
      out << "!!! PlanParseFailure: the plan could not be parsed; raw planner output follows\n";
      print_section(out, "raw", record.raw_plan_text);
    } else if (!record.raw_plan_text.empty()) {
      print_section(out, "plan", record.raw_plan_text);
    }
    for (const auto& b : record.evidence.bindings()) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Evidence>) {
              print_section(out, "evidence", v.variable + " " + v.source_name + ": " + v.text());
            } else {
              print_section(out, "fragment", v.variable + " " + v.strategy + ": " + v.text);
            }
          },
          b);
    }
    for (const auto& f : record.flags) {
      if (f != pipelines::kFlagPlanParseFailure) print_section(out, "flag", f);
    }
    if (record.error) {
      print_section(out, "error", record.error->message);
      turns.pop_back();
      continue;
    }
    print_section(out, "response", record.response);
    out << "<<< " << style.system << ": " << record.response << "\n";
    if (!record.response.empty()) turns.push_back({Role::System, record.response});
  }
  handle.flush();
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dialogue planning over conceptual tools: run, score and inspect experiments", "conductor"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand help for every subcommand");

  PipelineOptions run_opts;
  std::string dataset;
  std::string out_path;
  int parallelism = 1;
  auto* run_cmd = app.add_subcommand("run", "run a method over a dataset and write records");
  add_pipeline_options(*run_cmd, run_opts);
  run_cmd->add_option("--dataset", dataset, "dataset JSONL")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_path, "records JSONL to write")->required();
  run_cmd->add_option("--parallelism", parallelism, "samples in flight")->check(CLI::PositiveNumber)->capture_default_str();

  std::string records_path;
  std::string refs_path;
  std::string eval_kind;
  std::string report_path;
  auto* eval_cmd = app.add_subcommand("eval", "score records against references");
  eval_cmd->add_option("--records", records_path, "records JSONL")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--references", refs_path, "dataset JSONL with gold responses")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--kind", eval_kind, "focus | cima | psyqa (default: from records)")
      ->check(CLI::IsMember({"focus", "cima", "psyqa"}));
  eval_cmd->add_option("--out", report_path, "write the report as JSON");

  auto* analyze_cmd = app.add_subcommand("analyze", "strategy, retrieval and cost analyses");
  analyze_cmd->require_subcommand(1);
  std::string a_records;
  std::string a_refs;
  std::string a_prices;
  auto* strat_cmd = analyze_cmd->add_subcommand("strategies", "distribution of planned strategy sequences");
  strat_cmd->add_option("--records", a_records, "records JSONL")->required()->check(CLI::ExistingFile);
  auto* retr_cmd = analyze_cmd->add_subcommand("retrieval", "correct personas and documents retrieved");
  retr_cmd->add_option("--records", a_records, "records JSONL")->required()->check(CLI::ExistingFile);
  retr_cmd->add_option("--references", a_refs, "FoCus dataset JSONL")->required()->check(CLI::ExistingFile);
  auto* cost_cmd = analyze_cmd->add_subcommand("cost", "token usage and cost per method and model");
  cost_cmd->add_option("--records", a_records, "records JSONL")->required()->check(CLI::ExistingFile);
  cost_cmd->add_option("--prices", a_prices, "price table JSON")->check(CLI::ExistingFile);

  std::string sc_type = "dataset";
  std::string sc_kind;
  std::string sc_file;
  auto* schema_cmd = app.add_subcommand("schema-check", "validate a dataset, records, fixture, toolset or demo file");
  schema_cmd->add_option("--type", sc_type, "dataset | records | fixtures | toolset | demos")
      ->check(CLI::IsMember({"dataset", "records", "fixtures", "toolset", "demos"}))
      ->capture_default_str();
  schema_cmd->add_option("--kind", sc_kind, "dataset kind (datasets only)")->check(CLI::IsMember({"focus", "cima", "psyqa"}));
  schema_cmd->add_option("--file", sc_file, "file to validate")->required()->check(CLI::ExistingFile);

  PipelineOptions chat_opts;
  std::string persona_file;
  std::string document_file;
  auto* chat_cmd = app.add_subcommand("chat", "read user turns from stdin and show each pipeline step");
  add_pipeline_options(*chat_cmd, chat_opts);
  chat_cmd->add_option("--persona-file", persona_file, "persona candidates, one per line")->check(CLI::ExistingFile);
  chat_cmd->add_option("--document-file", document_file, "document candidates, one per line")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, dataset, out_path, parallelism, out);
    if (*eval_cmd) return cmd_eval(records_path, refs_path, eval_kind, report_path, out);
    if (*strat_cmd) return cmd_analyze_strategies(a_records, out);
    if (*retr_cmd) return cmd_analyze_retrieval(a_records, a_refs, out);
    if (*cost_cmd) return cmd_analyze_cost(a_records, a_prices, out);
    if (*schema_cmd) return cmd_schema_check(sc_type, sc_kind, sc_file, out, err);
    if (*chat_cmd) return cmd_chat(chat_opts, persona_file, document_file, in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace conductor::cli
