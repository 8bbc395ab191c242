#include "hfklift/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hfklift/complex_io.hpp"
#include "hfklift/structure.hpp"

namespace hfklift::cli {

namespace fs = std::filesystem;

int cmd_verify(const fs::path& path, std::ostream& out, std::ostream& err) {
  QuotientComplex qc;
  try {
    qc = read_quotient(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unreadable;
  }
  const auto violations = validate(qc);
  for (const auto& v : violations) {
    out << to_string(v.kind);
    if (v.arrow >= 0) out << " arrow " << v.arrow;
    if (!v.generators.empty()) {
      out << " generators";
      for (auto g : v.generators) out << ' ' << g;
    }
    out << ": " << v.message << '\n';
  }
  if (!violations.empty()) {
    out << qc.name << ": " << violations.size() << " violation(s)\n";
    return exit_code::fails;
  }
  const auto s = derived_stats(qc);
  out << qc.name << ": valid, " << qc.size() << " generators, " << qc.arrows.size()
      << " arrows, thickness " << s.thickness << ", rho " << s.rho << ", genus bound " << s.genus_bound << '\n';
  return exit_code::ok;
}

namespace {

fs::path output_path(const fs::path& input, const std::optional<fs::path>& dir, const std::string& suffix) {
  const fs::path base = dir ? *dir : input.parent_path();
  return base / (input.stem().string() + suffix + ".json");
}

}  // namespace

int cmd_lift(const fs::path& path, const LiftOptions& options, std::ostream& out, std::ostream& err) {
  QuotientComplex qc;
  try {
    qc = read_quotient(path);
    require_valid(qc);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unreadable;
  }
  try {
    const auto stats = derived_stats(qc);
    if (options.out_dir) fs::create_directories(*options.out_dir);
    if (!options.all_lifts) {
      if (stats.thickness > 1) {
        err << "error: thickness " << stats.thickness << " > 1 has no unique lift; pass --all-lifts\n";
        return exit_code::fails;
      }
      const auto fc = lift(qc);
      const auto file = output_path(path, options.out_dir, ".lifted");
      write_json_file(file, to_json(fc));
      out << "placeholders: " << placeholders(qc).size() << '\n'
          << "kernel_dim: " << solve(square_to_system(build_hv(qc), placeholders(qc))).kernel_dim() << '\n'
          << "diagonals: " << fc.diagonal_count() << '\n'
          << "wrote " << file.string() << '\n';
      return exit_code::ok;
    }
    const auto set = all_lifts(qc, options.max_kernel_dim);
    out << "placeholders: " << set.placeholder_count << '\n'
        << "equations: " << set.equation_count << '\n'
        << "kernel_dim: " << set.kernel_dim << '\n'
        << "lifts: " << set.lifts.size() << " (rejected " << set.rejected << ")\n";
    for (std::size_t i = 0; i < set.lifts.size(); ++i) {
      const auto file = output_path(path, options.out_dir, ".lift" + std::to_string(i));
      write_json_file(file, to_json(set.lifts[i]));
      out << "lift " << i << ": diagonals " << set.lifts[i].diagonal_count() << ", wrote " << file.string() << '\n';
    }
    return exit_code::ok;
  } catch (const KernelTooLargeError& e) {
    err << "error: " << e.what() << '\n';
    out << "kernel_dim: " << e.dim << '\n';
    return exit_code::unknown;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::fails;
  }
}

int cmd_ak(const fs::path& path, const AkCliOptions& options, std::ostream& out, std::ostream& err) {
  FullComplex fc;
  try {
    const auto j = read_json_file(path);
    if (j.contains("diagonals")) {
      fc = full_from_json(j);
    } else {
      const auto qc = quotient_from_json(j);
      require_valid(qc);
      if (derived_stats(qc).thickness <= 1) {
        fc = lift(qc);
      } else {
        auto set = all_lifts(qc, options.max_kernel_dim);
        if (options.lift_index >= set.lifts.size()) {
          err << "error: only " << set.lifts.size() << " lifts\n";
          return exit_code::fails;
        }
        fc = std::move(set.lifts[options.lift_index]);
      }
    }
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unreadable;
  } catch (const InvalidComplex& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unreadable;
  } catch (const KernelTooLargeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unknown;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::fails;
  }

  if (options.mirror) fc = mirror(fc);
  const auto stats = derived_stats(fc.quotient());
  std::vector<int> levels;
  if (options.k)
    levels.push_back(*options.k);
  else
    for (int k = 0; k <= stats.genus_bound; ++k) levels.push_back(k);

  nlohmann::json reports = nlohmann::json::array();
  for (int k : levels) {
    auto r = ak_report(fc, k, {options.fallback_N});
    if (stats.thickness <= 2)
      if (auto fit = fit_structure(r.summands, stats.thickness, k, stats.rho)) r.structure = fit->to_string();
    reports.push_back(to_json(r));
  }
  out << nlohmann::json{{"name", fc.name}, {"thickness", stats.thickness}, {"rho", stats.rho}, {"levels", reports}}.dump(1)
      << '\n';
  return exit_code::ok;
}

int cmd_spliff(const fs::path& path, const DecideOptions& options, Format format, std::ostream& out,
               std::ostream& err) {
  QuotientComplex qc;
  try {
    qc = read_quotient(path);
    require_valid(qc);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unreadable;
  }
  const auto v = decide(qc, options);
  switch (format) {
    case Format::Json:
      out << to_json(v).dump(1) << '\n';
      break;
    case Format::Csv: {
      BatchReport one;
      one.rows.push_back({v, crossings_from_name(v.name)});
      write_csv(one, out);
      break;
    }
    case Format::Text:
      out << v.name << ": " << to_string(v.status);
      if (v.status == Status::Unknown) out << " (" << v.reason << ")";
      if (v.failing_k && v.witness) out << ", witness " << describe_witness(*v.failing_k, *v.witness);
      if (v.kernel_dim) out << ", kernel_dim " << *v.kernel_dim;
      out << "\n  thickness " << v.thickness << ", rho " << v.rho << ", rho_mirror " << v.rho_mirror
          << "\n  trace " << v.method_trace << '\n';
      break;
  }
  switch (v.status) {
    case Status::SpliffBoth: return exit_code::ok;
    case Status::FailsKnot:
    case Status::FailsMirror: return exit_code::fails;
    case Status::Unknown: return exit_code::unknown;
  }
  return exit_code::unknown;
}

int cmd_batch(const fs::path& manifest_or_dir, const BatchOptions& options, Format format,
              const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  try {
    if (!fs::exists(manifest_or_dir)) throw FormatError("no such file or directory: " + manifest_or_dir.string());
    files = collect_inputs(manifest_or_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unreadable;
  }
  const auto report = run_batch(files, options);
  if (out_dir) {
    fs::create_directories(*out_dir);
    std::ofstream csv(*out_dir / "report.csv");
    write_csv(report, csv);
    write_json_file(*out_dir / "report.json", to_json(report));
    write_summary(report, out);
    return exit_code::ok;
  }
  if (format == Format::Json)
    out << to_json(report).dump(1) << '\n';
  else
    write_csv(report, out);
  write_summary(report, err);
  return exit_code::ok;
}

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("hfklift");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("HFKLIFT_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int run(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Lift knot Floer complexes and decide property SpliFf"};
  app.require_subcommand(1);

  std::string path;
  std::size_t max_kernel_dim = kDefaultMaxKernelDim;
  std::optional<int> fallback_N;
  bool single_lift = false;
  std::optional<std::string> out;
  std::string format_name = "text";
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};

  auto* verify = app.add_subcommand("verify", "check a complex file against the grading laws");
  verify->add_option("file", path)->required();

  auto* lift_cmd = app.add_subcommand("lift", "recover diagonal arrows and write the full complex");
  lift_cmd->add_option("file", path)->required();
  bool all = false;
  lift_cmd->add_flag("--all-lifts", all, "enumerate every lift (needed above thickness one)");
  lift_cmd->add_option("--max-kernel-dim", max_kernel_dim);
  lift_cmd->add_option("--out", out, "output directory");

  auto* ak = app.add_subcommand("ak", "report H_*(C_{i<0, j>=k}) for each level k");
  ak->add_option("file", path)->required();
  AkCliOptions ak_opts;
  ak->add_option("-k,--k", ak_opts.k, "single level (default: 0..g)");
  ak->add_flag("--mirror", ak_opts.mirror);
  ak->add_option("--lift-index", ak_opts.lift_index);
  ak->add_option("--max-kernel-dim", max_kernel_dim);
  ak->add_option("--fallback-N", fallback_N);

  auto* sp = app.add_subcommand("spliff", "decide property SpliFf for a knot and its mirror");
  sp->add_option("file", path)->required();
  sp->add_option("--max-kernel-dim", max_kernel_dim);
  sp->add_option("--fallback-N", fallback_N);
  sp->add_flag("--single-lift-over-cap", single_lift, "decide from one lift when the kernel exceeds the cap");
  sp->add_option("--format", format_name)->check(CLI::IsMember({"text", "csv", "json"}));

  auto* batch = app.add_subcommand("batch", "decide every fixture of a manifest or directory");
  batch->add_option("input", path, "manifest.json or directory")->required();
  unsigned jobs = 0;
  batch->add_option("-j,--jobs", jobs, "worker threads (default: logical cores)");
  batch->add_option("--max-kernel-dim", max_kernel_dim);
  batch->add_option("--fallback-N", fallback_N);
  batch->add_flag("--single-lift-over-cap", single_lift, "decide from one lift when the kernel exceeds the cap");
  batch->add_option("--out", out, "directory for report.csv and report.json");
  batch->add_option("--format", format_name)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::unreadable;
  }

  const DecideOptions decide_opts{max_kernel_dim, fallback_N, single_lift};
  if (*verify) return cmd_verify(path, std::cout, std::cerr);
  if (*lift_cmd) {
    LiftOptions o{all, max_kernel_dim, std::nullopt};
    if (out) o.out_dir = *out;
    return cmd_lift(path, o, std::cout, std::cerr);
  }
  if (*ak) {
    ak_opts.max_kernel_dim = max_kernel_dim;
    ak_opts.fallback_N = fallback_N;
    return cmd_ak(path, ak_opts, std::cout, std::cerr);
  }
  if (*sp) return cmd_spliff(path, decide_opts, formats.at(format_name), std::cout, std::cerr);
  if (*batch) {
    std::optional<fs::path> dir;
    if (out) dir = *out;
    const Format f = format_name == "json" ? Format::Json : Format::Csv;
    return cmd_batch(path, {jobs, decide_opts}, f, dir, std::cout, std::cerr);
  }
  return exit_code::unreadable;
}

}  // namespace hfklift::cli
