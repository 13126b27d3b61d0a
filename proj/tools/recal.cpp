// recal: command-line front end for the indicator recalibration pipeline.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "recal/recal.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
  kOk = 0,
  kNotFulfilled = 1,
  kValidationFailure = 2,
  kIoFailure = 3,
  kUsage = 64,
};

struct CommonArgs {
  std::string config;
  std::string out_dir;
  std::string format;
};

struct CorpusArgs {
  std::string dir;
  std::string researchers, publications, citations;

  bool given() const { return !dir.empty() || !researchers.empty(); }

  recal::CorpusPaths paths() const {
    if (!dir.empty()) {
      auto jsonl = recal::corpus_paths_in(dir, recal::RecordFormat::jsonl);
      if (fs::exists(jsonl.researchers) && !fs::exists(dir + "/researchers.csv")) return jsonl;
      return recal::corpus_paths_in(dir);
    }
    if (researchers.empty() || publications.empty() || citations.empty())
      throw CLI::ValidationError("corpus", "--researchers, --publications and --citations go together");
    return {researchers, publications, citations};
  }
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& c) {
  cmd->add_option("--corpus-dir", c.dir,
                  "Directory holding researchers, publications and citations (.csv or .jsonl)");
  cmd->add_option("--researchers", c.researchers, "Researcher file");
  cmd->add_option("--publications", c.publications, "Publication file");
  cmd->add_option("--citations", c.citations, "Citation file");
}

void add_common_options(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config, "Pipeline config (JSON); built-in earth-sciences default if omitted");
  cmd->add_option("--out-dir", a.out_dir, "Output directory (overrides the config)");
  cmd->add_option("--format", a.format, "Output formats: dsv, json or dsv,json");
}

recal::PipelineConfig resolve_config(const CommonArgs& a) {
  auto cfg = a.config.empty() ? recal::default_config() : recal::load_config(a.config);
  if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
  if (!a.format.empty()) {
    cfg.formats = {false, false};
    for (const auto& f : recal::dsv::split_multi(a.format, ',')) {
      if (f == "dsv") cfg.formats.dsv = true;
      else if (f == "json") cfg.formats.json = true;
      else throw recal::ValidationError("unknown --format '" + f + "'");
    }
  }
  return cfg;
}

recal::Corpus load(const CorpusArgs& c, const recal::PipelineConfig& cfg) {
  recal::CorpusOptions opt;
  opt.max_degree_year = cfg.windows.pub_window.last;
  return recal::load_corpus(c.paths(), cfg.registry, opt);
}

std::string ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw recal::IoError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write(const std::string& dir, const std::string& name, const std::string& content) {
  recal::dsv::write_file(dir + "/" + name, content);
  std::cout << "wrote " << dir << "/" << name << "\n";
}

nlohmann::ordered_json rows_to_json(const std::vector<recal::RecalibrationRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["discipline"] = r.discipline.key();
    j["kind"] = recal::to_string(r.kind);
    j["method"] = recal::to_string(r.method);
    j["cmv"] = r.cmv;
    j["apv"] = r.apv;
    j["y_i"] = r.y_i;
    j["y_m"] = r.y_m;
    j["r_y"] = r.r_y;
    j["dsdr_current"] = r.dsdr_current;
    j["dsdr_actual"] = r.dsdr_actual;
    j["rmv_raw"] = r.rmv_raw;
    j["rmv_rounded"] = r.rmv_rounded ? nlohmann::ordered_json(*r.rmv_rounded) : nlohmann::ordered_json();
    arr.push_back(std::move(j));
  }
  return arr;
}

struct RecalibrationRun {
  std::vector<recal::RecalibrationRow> rows;
  std::optional<recal::ApvTable> apvs;  // corpus mode only
  std::optional<recal::Corpus> corpus;
};

RecalibrationRun run_recalibration(const recal::PipelineConfig& cfg, const CorpusArgs& corpus,
                                   const std::string& apv_table) {
  if (corpus.given() == !apv_table.empty())
    throw CLI::ValidationError("input", "give exactly one of --apv-table or a corpus");
  RecalibrationRun run;
  if (!apv_table.empty()) {
    auto apvs = recal::apv_table_from_dsv(recal::dsv::read_file(apv_table), &cfg.registry);
    run.rows = recal::recalibrate_all(apvs, cfg.registry, cfg.recalibration);
  } else {
    run.corpus = load(corpus, cfg);
    run.apvs = recal::compute_apv_table(*run.corpus, cfg.recalibration.kinds, cfg.recalibration.top_fraction,
                                        cfg.windows, cfg.counting);
    run.rows = recal::recalibrate_all(*run.apvs, cfg.registry, cfg.recalibration);
  }
  return run;
}

// ---------------------------------------------------------------------------

int cmd_validate(const CommonArgs& a, const CorpusArgs& c) {
  auto cfg = resolve_config(a);
  recal::CorpusOptions opt;
  opt.max_degree_year = cfg.windows.pub_window.last;
  auto result = recal::try_load_corpus(c.paths(), cfg.registry, opt);
  for (const auto& v : result.violations) std::cout << v.to_string() << "\n";
  if (!result.corpus) {
    std::cout << result.violations.size() << " violation(s)\n";
    return kValidationFailure;
  }
  std::cout << "ok: " << result.corpus->researchers().size() << " researchers, "
            << result.corpus->publications().size() << " publications, "
            << result.corpus->citations().size() << " citations\n";
  return kOk;
}

int cmd_stats(const CommonArgs& a, const CorpusArgs& c) {
  auto cfg = resolve_config(a);
  auto corpus = load(c, cfg);
  auto stats = recal::corpus_stats(corpus, cfg.windows.pub_window);
  auto text = recal::stats_to_dsv(stats);
  if (a.out_dir.empty()) {
    std::cout << text;
    return kOk;
  }
  auto dir = ensure_dir(cfg.output_dir);
  if (cfg.formats.dsv) write(dir, "coauthorship.csv", text);
  if (cfg.formats.json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : stats.rows) {
      auto avg = r.avg_coauthors_per_multi();
      arr.push_back({{"discipline", r.discipline.key()},
                     {"pub_count", r.pub_count},
                     {"multi_authored_count", r.multi_authored_count},
                     {"multi_ratio", r.multi_ratio()},
                     {"coauthor_total", r.coauthor_total},
                     {"avg_coauthors_per_multi", avg ? nlohmann::ordered_json(*avg) : nlohmann::ordered_json()}});
    }
    write(dir, "coauthorship.json", arr.dump(2) + "\n");
  }
  return kOk;
}

int cmd_recalibrate(const CommonArgs& a, const CorpusArgs& c, const std::string& apv_table) {
  auto cfg = resolve_config(a);
  auto run = run_recalibration(cfg, c, apv_table);
  auto dir = ensure_dir(cfg.output_dir);
  if (cfg.formats.dsv) write(dir, "recalibration.csv", recal::rows_to_dsv(run.rows));
  if (cfg.formats.json) write(dir, "recalibration.json", rows_to_json(run.rows).dump(2) + "\n");
  for (auto k : cfg.recalibration.kinds)
    write(dir, "dsdr_" + std::string(recal::to_string(k)) + ".csv",
          recal::dsdr_figure_data(run.rows, k, cfg.registry));
  if (run.apvs) {
    write(dir, "apv.csv", recal::apv_table_to_dsv(*run.apvs, cfg.registry, cfg.recalibration.kinds));
    auto matrix = recal::indicator_matrix(*run.corpus, cfg.indicators,
                                          {recal::CountingMethod::integer, recal::CountingMethod::fractional},
                                          cfg.windows, cfg.counting);
    write(dir, "indicators.csv", recal::matrix_to_dsv(matrix, cfg.indicators));
  }
  return kOk;
}

int cmd_derive(const CommonArgs& a, const CorpusArgs& c, const std::string& apv_table,
               const std::string& method_name) {
  auto cfg = resolve_config(a);
  auto method = recal::method_or_throw(method_name);
  auto run = run_recalibration(cfg, c, apv_table);
  auto derived = recal::derived_scaled_rows(run.rows, cfg.derived_cmv(), cfg.derived_base, method,
                                            cfg.recalibration.rounding);
  auto table = recal::recalibrated_table(run.rows, derived, method,
                                         "recalibrated minimum values (" + std::string(recal::to_string(method)) + ")");
  auto diff = recal::diff_tables(cfg.minimums, table);
  auto dir = ensure_dir(cfg.output_dir);
  auto suffix = std::string(recal::to_string(method));
  write(dir, "derived_" + suffix + ".csv", recal::derived_rows_to_dsv(derived));
  write(dir, "thresholds_" + suffix + ".csv", recal::threshold_table_to_dsv(table));
  write(dir, "threshold_diff_" + suffix + ".csv", recal::diff_to_dsv(diff));
  for (const auto& [key, v] : cfg.minimums.minimums) {
    bool recalibrated = std::find(cfg.recalibration.kinds.begin(), cfg.recalibration.kinds.end(), key.kind) !=
                        cfg.recalibration.kinds.end();
    if (!recalibrated && !cfg.derived_base.count(key.kind))
      std::cout << "not derivable: " << key.discipline.key() << "/" << recal::to_string(key.kind)
                << " (no base indicator; supply APVs for it to recalibrate)\n";
  }
  return kOk;
}

int cmd_evaluate(const CommonArgs& a, const CorpusArgs& c, const std::string& thresholds,
                 const std::string& researcher, const std::string& method_name) {
  auto cfg = resolve_config(a);
  auto method = recal::method_or_throw(method_name);
  auto table = thresholds.empty() ? cfg.minimums
                                  : recal::threshold_table_from_dsv(recal::dsv::read_file(thresholds));
  auto corpus = load(c, cfg);
  const auto& profile = corpus.researcher(researcher);
  recal::IndicatorVector vec{profile.researcher_id, method, {}};
  for (auto k : table.kinds_for(profile.discipline))
    vec.values[k] = recal::indicator_value(corpus, researcher, k, method, cfg.windows, cfg.counting);
  auto result = recal::evaluate_candidate(vec, profile.discipline, table);
  auto doc = recal::evaluation_to_json(result, table.label);
  std::cout << doc.dump(2) << "\n";
  if (!a.out_dir.empty()) write(ensure_dir(cfg.output_dir), "evaluation_" + researcher + ".json", doc.dump(2) + "\n");
  return result.overall_fulfilled ? kOk : kNotFulfilled;
}

int cmd_synth(const CommonArgs& a, const std::string& spec_path, std::optional<std::uint64_t> seed) {
  auto cfg = resolve_config(a);
  recal::SynthSpec spec;
  if (!spec_path.empty()) {
    auto j = nlohmann::json::parse(recal::dsv::read_file(spec_path), nullptr, false);
    if (j.is_discarded()) throw recal::ValidationError("synthetic spec '" + spec_path + "' is not valid JSON");
    spec = recal::synth_spec_from_json(j);
  } else {
    spec.disciplines = recal::params_from_observed(recal::earth_sciences::observed_coauthorship());
    spec.pub_window = cfg.windows.pub_window;
    spec.citation_window = cfg.windows.citation_window;
    spec.domestic_language = cfg.counting.domestic_language;
  }
  if (seed) spec.seed = *seed;
  auto corpus = recal::generate_corpus(spec);
  auto dir = ensure_dir(cfg.output_dir);
  if (cfg.formats.dsv) {
    recal::write_corpus(recal::serialize_dsv(corpus), recal::corpus_paths_in(dir));
    std::cout << "wrote " << dir << "/{researchers,publications,citations}.csv\n";
  }
  if (cfg.formats.json) {
    recal::write_corpus(recal::serialize_jsonl(corpus), recal::corpus_paths_in(dir, recal::RecordFormat::jsonl));
    std::cout << "wrote " << dir << "/{researchers,publications,citations}.jsonl\n";
  }
  write(dir, "synth_spec.json", recal::synth_spec_to_json(spec).dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recalibrate discipline-specific minimum values of bibliometric indicators"};
  app.require_subcommand(1);

  CommonArgs common;
  CorpusArgs corpus;
  std::string apv_table, thresholds, researcher, method = "integer", spec_path;
  std::optional<std::uint64_t> seed;

  auto* validate = app.add_subcommand("validate", "Check corpus files and list every violation");
  add_common_options(validate, common);
  add_corpus_options(validate, corpus);

  auto* stats = app.add_subcommand("stats", "Co-authorship statistics per discipline");
  add_common_options(stats, common);
  add_corpus_options(stats, corpus);

  auto* recalibrate = app.add_subcommand("recalibrate", "Compute recalibrated minimum values");
  add_common_options(recalibrate, common);
  add_corpus_options(recalibrate, corpus);
  recalibrate->add_option("--apv-table", apv_table, "Precomputed APVs: discipline,kind,method,apv");

  auto* derive = app.add_subcommand("derive", "Recalibrated threshold table including derived indicators");
  add_common_options(derive, common);
  add_corpus_options(derive, corpus);
  derive->add_option("--apv-table", apv_table, "Precomputed APVs: discipline,kind,method,apv");
  derive->add_option("--method", method, "integer or fractional")->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "Score one researcher against a threshold table");
  add_common_options(evaluate, common);
  add_corpus_options(evaluate, corpus);
  evaluate->add_option("--thresholds", thresholds, "Threshold table; current minimums if omitted");
  evaluate->add_option("--researcher", researcher, "Researcher id")->required();
  evaluate->add_option("--method", method, "integer or fractional")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  add_common_options(synth, common);
  synth->add_option("--spec", spec_path, "Generator spec (JSON); calibrated defaults if omitted");
  synth->add_option("--seed", seed, "Seed (overrides the spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(common, corpus);
    if (*stats) return cmd_stats(common, corpus);
    if (*recalibrate) return cmd_recalibrate(common, corpus, apv_table);
    if (*derive) return cmd_derive(common, corpus, apv_table, method);
    if (*evaluate) return cmd_evaluate(common, corpus, thresholds, researcher, method);
    if (*synth) return cmd_synth(common, spec_path, seed);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const recal::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const recal::CorpusValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << v.to_string() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const recal::DegenerateDisciplineError& e) {
    std::cerr << "degenerate discipline '" << e.discipline() << "': " << e.what() << "\n";
    return kValidationFailure;
  } catch (const recal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kUsage;
}
