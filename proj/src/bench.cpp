#include "pground/bench.hpp"

#include <algorithm>
#include <filesystem>

#include "pground/errors.hpp"
#include "pground/report.hpp"

namespace pground::bench {

namespace {

double median_ms(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

} // namespace

std::vector<BenchRow> run_bench(const std::string& dir, int reps,
                                const pipeline::Options& base) {
  if (reps < 1) throw UsageError("--reps must be at least 1");
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".pl")
      files.push_back(e.path());
  if (ec) throw UsageError("cannot read directory " + dir);
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  for (const auto& f : files) {
    BenchRow row;
    row.program = f.filename().string();
    try {
      std::vector<double> par, non;
      for (int i = 0; i < reps; ++i) {
        pipeline::Options o = base;
        o.mode = pipeline::Mode::Parametric;
        auto a = pipeline::analyze_file(f.string(), o);
        par.push_back(a.stats.wall_us / 1000.0);
        if (i == 0) {
          row.goal = a.program.goal.key();
          row.atoms = report::count_atoms(a.program);
        }
      }
      for (int i = 0; i < reps; ++i) {
        pipeline::Options o = base;
        o.mode = pipeline::Mode::NonParametric;
        auto a = pipeline::analyze_file(f.string(), o);
        non.push_back(a.stats.wall_us / 1000.0);
      }
      row.t_parametric_ms = median_ms(par);
      row.t_nonparametric_ms = median_ms(non);
      row.ratio = row.t_nonparametric_ms > 0
                      ? row.t_parametric_ms / row.t_nonparametric_ms
                      : 0.0;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "program,goal,atoms,t_parametric_ms,t_nonparametric_ms,ratio\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  double sum_par = 0, sum_non = 0;
  int sum_atoms = 0;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    out += r.program + "," + r.goal + "," + std::to_string(r.atoms) + "," +
           num(r.t_parametric_ms) + "," + num(r.t_nonparametric_ms) + "," +
           num(r.ratio) + "\n";
    sum_par += r.t_parametric_ms;
    sum_non += r.t_nonparametric_ms;
    sum_atoms += r.atoms;
  }
  out += "TOTAL,," + std::to_string(sum_atoms) + "," + num(sum_par) + "," +
         num(sum_non) + "," + num(sum_non > 0 ? sum_par / sum_non : 0.0) + "\n";
  return out;
}

} // namespace pground::bench
