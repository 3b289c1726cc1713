// casimir-sat: batch driver for Casimir and Casimir-Polder runs.
//
//   casimir-sat run <config>          result table per the config
//   casimir-sat sweep <config>        temperatures x saturation settings
//   casimir-sat dispersion <config>   lossless mode frequencies
//   casimir-sat compare <result> <dataset>
//
// Exit status: 0 success, 2 validation error, 3 convergence failure, 1 other.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "casimir/config.hpp"
#include "casimir/dataset.hpp"
#include "casimir/driver.hpp"
#include "casimir/errors.hpp"
#include "casimir/results.hpp"

namespace {

constexpr int kValidation = 2;
constexpr int kConvergence = 3;

void emit(const std::string& text, const std::filesystem::path& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw casimir::ValidationError(fmt::format("cannot write {}", path.string()));
  out << text;
}

void emit_table(const casimir::ResultTable& t, const std::filesystem::path& path) {
  if (path.empty()) {
    std::cout << casimir::to_csv(t);
    return;
  }
  casimir::write_table(t, path);
}

unsigned effective_workers(std::optional<unsigned> flag, const casimir::RunConfig& cfg) {
  return flag ? *flag : cfg.workers;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir and Casimir-Polder energies, pressures and trap shifts with saturated photon statistics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::optional<unsigned> workers;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "run configuration (INI)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", output, "output file (.csv or .json); overrides run.output");
    sub->add_option("-j,--workers", workers, "worker threads; overrides run.workers")->check(CLI::PositiveNumber);
    sub->add_flag("-q,--quiet", quiet, "no progress summary on stderr");
  };
  auto* run = app.add_subcommand("run", "compute one table over the separation grid");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "cartesian product over [sweep] settings and temperatures");
  add_common(sweep);
  auto* disp = app.add_subcommand("dispersion", "lossless dispersion curves");
  add_common(disp);

  std::string result_path;
  std::string dataset_path;
  double threshold = 0.2;
  auto* cmp = app.add_subcommand("compare", "residuals of a result table against a measured dataset");
  cmp->add_option("result", result_path, "result table (.csv or .json)")->required()->check(CLI::ExistingFile);
  cmp->add_option("dataset", dataset_path, "measured dataset")->required()->check(CLI::ExistingFile);
  cmp->add_option("-o,--output", output, "report file");
  cmp->add_flag("-q,--quiet", quiet, "no summary on stderr");
  cmp->add_option("--flag-threshold", threshold, "relative deviation that flags a curve")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }

  try {
    if (*cmp) {
      const auto table = casimir::read_table(result_path);
      const auto ds = casimir::ingest_dataset(dataset_path);
      const auto reports = casimir::compare(table, ds, threshold);
      emit(casimir::format_reports(reports), output);
      if (!quiet) {
        for (const auto& r : reports) {
          std::fprintf(stderr, "%s: chi2 = %.6g over %zu points, %zu within error bars, max |dev| = %.3g%s\n",
                       r.label.c_str(), r.chi2, r.points.size(), r.within_error, r.max_relative_deviation,
                       r.flagged ? " (flagged)" : "");
        }
      }
      return 0;
    }

    const auto cfg = casimir::load_config(config_path);
    casimir::Executor executor(effective_workers(workers, cfg));
    const std::filesystem::path out_path = output.empty() ? cfg.output : std::filesystem::path(output);
    if (*disp) {
      emit(casimir::dispersion(cfg, &executor), out_path);
      return 0;
    }
    const auto table = *sweep ? casimir::sweep(cfg, &executor) : casimir::run(cfg, &executor);
    emit_table(table, out_path);
    if (!quiet) {
      std::fprintf(stderr, "%s: %zu rows, config hash %s\n", cfg.name.c_str(), table.rows.size(),
                   casimir::hex64(cfg.hash).c_str());
    }
    if (cfg.dataset && *run) {
      const auto ds = casimir::ingest_dataset(*cfg.dataset);
      for (const auto& r : casimir::compare(table, ds)) {
        if (!quiet) {
          std::fprintf(stderr, "  vs %s [%s]: chi2 = %.6g, %zu/%zu within error bars%s\n", ds.source.c_str(),
                       r.label.c_str(), r.chi2, r.within_error, r.points.size(), r.flagged ? ", flagged" : "");
        }
      }
    }
    return 0;
  } catch (const casimir::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kValidation;
  } catch (const casimir::ConvergenceError& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
    return kConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
