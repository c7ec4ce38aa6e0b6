#include "sparsedyn/harness/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>

#include "sparsedyn/harness/bench.hpp"
#include "sparsedyn/harness/convergence.hpp"
#include "sparsedyn/harness/experiment.hpp"
#include "sparsedyn/harness/io.hpp"
#include "sparsedyn/harness/recipes.hpp"

namespace sparsedyn::harness {

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& option, const std::string& text) {
  std::vector<T> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      values.push_back(T(v));
    } catch (const std::exception&) {
      throw ConfigError(option + ": expected a comma-separated list of non-negative integers, got '" + text + "'");
    }
  }
  return values;
}

// Writes CSV text to a file when a path is given, otherwise to `out`.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& writer) {
  if (path.empty()) {
    writer(out);
    return;
  }
  auto file = open_output(path);
  writer(file);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse spectral time stepping with soft-threshold shrinkage", "sparsedyn"};
  app.require_subcommand(1);

  std::string config_path, out_dir, resolutions, sizes, sparsities, csv_path, show, write_dir;
  int reps = 9;

  auto* run_cmd = app.add_subcommand("run", "run one experiment and write its report files");
  run_cmd->add_option("--config", config_path, "config file, or recipe:<name>")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default: output_dir from the config)");

  auto* conv_cmd = app.add_subcommand("converge", "resolution study of one config");
  conv_cmd->add_option("--config", config_path, "config file, or recipe:<name>")->required();
  conv_cmd->add_option("--resolutions", resolutions, "ascending comma list of n_per_dim")->required();
  conv_cmd->add_option("--csv", csv_path, "write the table here instead of stdout");

  auto* bench_cmd = app.add_subcommand("bench-conv", "time sparse against transform-based convolution");
  bench_cmd->add_option("--sizes", sizes, "comma list of grid sizes N")->required();
  bench_cmd->add_option("--sparsities", sparsities, "comma list of entry counts n_s")->required();
  bench_cmd->add_option("--reps", reps, "timed repetitions per case");
  bench_cmd->add_option("--csv", csv_path, "write the table here instead of stdout");

  auto* recipes_cmd = app.add_subcommand("recipes", "list bundled experiment configs");
  recipes_cmd->add_option("--show", show, "print one recipe's config");
  recipes_cmd->add_option("--write", write_dir, "write every recipe as <dir>/<name>.cfg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*run_cmd) {
      const auto config = resolve_config(config_path);
      const std::filesystem::path dir = std::filesystem::path(out_dir.empty() ? config.output_dir : out_dir);
      out << "running " << (config.name.empty() ? config_path : config.name) << " -> " << dir.string() << '\n';
      const auto outcome = run(config, dir, &err);
      const auto& last = outcome.sparse.records.back();
      out << "steps " << last.step << ", final n_s " << last.n_s << " (" << std::setprecision(4)
          << 100 * last.sparsity_fraction << "% of " << outcome.sparse.grid << ")\n";
      if (outcome.final_error && outcome.reference_norms)
        out << "L2 error vs dense " << outcome.final_error->l2 << " (relative "
            << outcome.final_error->l2 / outcome.reference_norms->l2 << ")\n";
      if (outcome.low_frequency_error && outcome.reference_norms)
        out << "low-frequency K=" << outcome.low_frequency_cutoff << " L2 error " << outcome.low_frequency_error->l2
            << " (relative " << outcome.low_frequency_error->l2 / outcome.reference_norms->l2 << ")\n";
      out << "seconds per sparse step " << outcome.sparse.seconds_per_step << '\n';
    } else if (*conv_cmd) {
      const auto config = resolve_config(config_path);
      const auto table = convergence_study(config, parse_list<int>("resolutions", resolutions), &err);
      emit(csv_path, out, [&](std::ostream& o) { write_convergence_csv(o, table); });
      err << "reference: " << table.reference << '\n';
    } else if (*bench_cmd) {
      const auto rows = bench_convolution(parse_list<int>("sizes", sizes),
                                          parse_list<std::size_t>("sparsities", sparsities), reps);
      emit(csv_path, out, [&](std::ostream& o) { write_bench_csv(o, rows); });
    } else if (*recipes_cmd) {
      if (!show.empty()) {
        for (const auto& r : bundled_recipes())
          if (r.name == show) {
            out << r.text;
            return 0;
          }
        throw ConfigError("unknown recipe '" + show + "'");
      }
      if (!write_dir.empty()) {
        std::filesystem::create_directories(write_dir);
        for (const auto& r : bundled_recipes()) {
          auto file = open_output(std::filesystem::path(write_dir) / (std::string(r.name) + ".cfg"));
          file << r.text;
        }
      }
      for (const auto& r : bundled_recipes()) out << std::left << std::setw(24) << r.name << r.description << '\n';
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const SolverFailure& e) {
    err << "solver error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace sparsedyn::harness
