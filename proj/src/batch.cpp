#include "hfklift/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <regex>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "hfklift/complex_io.hpp"

namespace hfklift {

namespace fs = std::filesystem;

std::optional<int> crossings_from_name(const std::string& name) {
  static const std::regex census(R"(^m?(\d+)[an]\d+$)");
  std::smatch m;
  if (!std::regex_match(name, m, census)) return std::nullopt;
  return std::stoi(m[1].str());
}

std::vector<fs::path> collect_inputs(const fs::path& manifest_or_dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(manifest_or_dir)) {
    for (const auto& entry : fs::directory_iterator(manifest_or_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
        files.push_back(entry.path());
  } else {
    const auto manifest = read_json_file(manifest_or_dir);
    for (const auto& k : manifest.at("knots")) files.push_back(manifest_or_dir.parent_path() / k.at("file").get<std::string>());
  }
  std::sort(files.begin(), files.end());
  return files;
}

BatchReport run_batch(const std::vector<fs::path>& files, const BatchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  BatchReport report;
  report.settings = options.decide;
  report.jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  report.rows.resize(files.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
      Verdict v;
      try {
        v = decide(read_quotient(files[i]), options.decide);
      } catch (const std::exception& e) {
        v.name = files[i].stem().string();
        v.status = Status::Unknown;
        v.reason = std::string("unreadable: ") + e.what();
        v.method_trace = v.reason;
      }
      spdlog::debug("{}: {}", v.name, to_string(v.status));
      report.rows[i] = {std::move(v), std::nullopt};
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<std::size_t>(report.jobs, std::max<std::size_t>(files.size(), 1));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::sort(report.rows.begin(), report.rows.end(),
            [](const BatchRow& a, const BatchRow& b) { return a.verdict.name < b.verdict.name; });
  for (auto& row : report.rows) {
    row.crossings = crossings_from_name(row.verdict.name);
    const auto status = to_string(row.verdict.status);
    ++report.totals[status];
    ++report.by_crossings[row.crossings][status];
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : "";
}

}  // namespace

void write_csv(const BatchReport& report, std::ostream& out) {
  out << "name,crossings,thickness,rho,status,failing_k,kernel_dim,method_trace\n";
  for (const auto& row : report.rows) {
    const auto& v = row.verdict;
    const std::string status = v.status == Status::Unknown ? "Unknown(" + v.reason + ")" : to_string(v.status);
    out << csv_field(v.name) << ',' << opt(row.crossings) << ',' << v.thickness << ',' << v.rho << ','
        << csv_field(status) << ',' << opt(v.failing_k) << ',' << opt(v.kernel_dim) << ','
        << csv_field(v.method_trace) << '\n';
  }
}

nlohmann::json to_json(const BatchReport& report) {
  nlohmann::json j;
  j["totals"] = report.totals;
  j["by_crossings"] = nlohmann::json::object();
  for (const auto& [c, counts] : report.by_crossings) j["by_crossings"][c ? std::to_string(*c) : "other"] = counts;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    auto r = to_json(row.verdict);
    r["crossings"] = row.crossings ? nlohmann::json(*row.crossings) : nlohmann::json();
    j["rows"].push_back(std::move(r));
  }
  j["runtime"] = {{"wall_seconds", report.wall_seconds},
                  {"jobs", report.jobs},
                  {"max_kernel_dim", report.settings.max_kernel_dim},
                  {"single_lift_over_cap", report.settings.single_lift_over_cap},
                  {"fallback_N", report.settings.fallback_N ? nlohmann::json(*report.settings.fallback_N)
                                                            : nlohmann::json("auto")}};
  return j;
}

void write_summary(const BatchReport& report, std::ostream& out) {
  auto count = [](const std::map<std::string, int>& m, const char* key) {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
  };
  out << fmt::format("{:>10} {:>8} {:>8} {:>11} {:>8}\n", "crossings", "knots", "SpliFf", "non-SpliFf", "Unknown");
  int all = 0, good = 0, bad = 0, unknown = 0;
  for (const auto& [c, counts] : report.by_crossings) {
    const int g = count(counts, "SpliffBoth");
    const int b = count(counts, "FailsKnot") + count(counts, "FailsMirror");
    const int u = count(counts, "Unknown");
    out << fmt::format("{:>10} {:>8} {:>8} {:>11} {:>8}\n", c ? std::to_string(*c) : "other", g + b + u, g, b, u);
    all += g + b + u;
    good += g;
    bad += b;
    unknown += u;
  }
  out << fmt::format("{:>10} {:>8} {:>8} {:>11} {:>8}\n", "total", all, good, bad, unknown);
}

}  // namespace hfklift
