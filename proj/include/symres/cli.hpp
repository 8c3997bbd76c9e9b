#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symres/abelian_u1.hpp"
#include "symres/asymptotics.hpp"
#include "symres/random_states.hpp"
#include "symres/recoupling.hpp"
#include "symres/su2_dims.hpp"
#include "symres/typical_entropy.hpp"

namespace symres::cli {

// exit codes: 0 success, 2 usage/validation, 3 I/O
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

namespace detail {

inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// round to the 12 significant digits that all outputs carry
inline double sig12(double v) { return std::stod(fmt12(v)); }

inline std::filesystem::path resolve_output(const std::string& requested,
                                            const std::string& default_name) {
  std::filesystem::path p = requested.empty() ? std::filesystem::path(default_name)
                                              : std::filesystem::path(requested);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SYMRES_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  return p;
}

inline TwiceSpin spin_from_flags(const std::string& j_text, std::optional<int> twice_j) {
  if (twice_j.has_value()) {
    if (*twice_j < 0) throw std::invalid_argument("--twice-j must be non-negative");
    return TwiceSpin{*twice_j};
  }
  if (j_text.empty()) throw std::invalid_argument("one of --j or --twice-j is required");
  return parse_spin(j_text);
}

}  // namespace detail

struct DimsOptions {
  int n = 0;
  std::optional<int> n_a;
  TwiceSpin j;
};

inline int cmd_dims(const DimsOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const BigInt total = dim_invariant(o.n, o.j);
    if (total == 0) {
      err << "error: no spin-" << o.j.to_string() << " sector for N=" << o.n
          << " (parity or range)\n";
      return kExitUsage;
    }
    out << "N=" << o.n << " j=" << o.j.to_string() << " D_j=" << total.get_str() << "\n";
    if (!o.n_a.has_value()) return kExitOk;
    const SectorDims dims = sector_dims(o.n, *o.n_a, o.j);
    out << "l,d,b\n";
    for (const auto& s : dims.sectors)
      out << s.label.to_string() << "," << s.d.get_str() << "," << s.b.get_str() << "\n";
    out << "sum_rule_check=" << (dims.total == total ? "ok" : "FAILED") << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct PageCurveOptions {
  int n = 0;
  TwiceSpin j;
  std::string format = "csv";
  std::string output;
};

inline int cmd_page_curve(const PageCurveOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<PageCurvePoint> rows;
  try {
    rows = page_curve(o.n, o.j);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto path = detail::resolve_output(o.output, "page_curve." + o.format);
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot open " << path.string() << "\n";
    return kExitIo;
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["n"] = o.n;
    j["twice_j"] = o.j.twice;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"n_a", r.n_a},
                           {"mean", detail::sig12(r.mean)},
                           {"std", detail::sig12(r.std_dev)}});
    f << j.dump(2) << "\n";
  } else {
    f << "n_a,mean,std\n";
    for (const auto& r : rows)
      f << r.n_a << "," << detail::fmt12(r.mean) << "," << detail::fmt12(r.std_dev) << "\n";
  }
  if (!f.good()) {
    err << "error: write failed for " << path.string() << "\n";
    return kExitIo;
  }
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

struct SampleOptions {
  int n = 0;
  int n_a = 0;
  TwiceSpin j;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  int bins = 60;
  int threads = 1;
  std::string format = "csv";
  std::string output;
};

inline int cmd_sample(const SampleOptions& o, std::ostream& out, std::ostream& err) {
  SectorDims dims;
  try {
    dims = sector_dims(o.n, o.n_a, o.j);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (o.samples < 1 || o.bins < 1 || o.threads < 1) {
    err << "error: samples, bins and threads must be positive\n";
    return kExitUsage;
  }
  SeededSampler sampler{o.seed, 0};
  const SampleStats stats = empirical_stats(dims, o.samples, sampler, {o.bins, o.threads});
  const double exact_mean = average_entropy(dims);
  const double exact_var = variance_entropy(dims);
  const double n_d = static_cast<double>(o.samples);
  const double se_mean = std::sqrt(stats.stats.variance / n_d);
  const double se_var = stats.stats.variance * std::sqrt(2.0 / (n_d - 1.0));
  auto z = [](double diff, double se) {
    if (se > 0.0) return diff / se;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  nlohmann::json summary{{"empirical_mean", detail::sig12(stats.stats.mean)},
                         {"empirical_var", detail::sig12(stats.stats.variance)},
                         {"exact_mean", detail::sig12(exact_mean)},
                         {"exact_var", detail::sig12(exact_var)},
                         {"z_scores",
                          {{"mean", detail::sig12(z(stats.stats.mean - exact_mean, se_mean))},
                           {"var", detail::sig12(z(stats.stats.variance - exact_var, se_var))}}}};

  const auto path = detail::resolve_output(o.output, "sample." + o.format);
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot open " << path.string() << "\n";
    return kExitIo;
  }
  if (o.format == "json") {
    nlohmann::json j{{"n", o.n},       {"n_a", o.n_a},        {"twice_j", o.j.twice},
                     {"samples", o.samples}, {"seed", o.seed}, {"summary", summary}};
    j["histogram"] = nlohmann::json::array();
    for (std::size_t k = 0; k < stats.histogram.counts.size(); ++k)
      j["histogram"].push_back({{"bin_left", detail::sig12(stats.histogram.bin_left(k))},
                                {"bin_right", detail::sig12(stats.histogram.bin_right(k))},
                                {"count", stats.histogram.counts[k]}});
    f << j.dump(2) << "\n";
  } else {
    write_histogram_csv(f, stats.histogram);
  }
  if (!f.good()) {
    err << "error: write failed for " << path.string() << "\n";
    return kExitIo;
  }
  out << summary.dump() << "\n";
  return kExitOk;
}

struct AsymptoticsOptions {
  double f = 0.25;
  double s = 0.5;
  std::vector<int> n_list;
  std::string format = "csv";
  std::string output;
};

inline int cmd_asymptotics(const AsymptoticsOptions& o, std::ostream& out, std::ostream& err) {
  struct Row {
    int n;
    double exact, asym;
  };
  std::vector<Row> rows;
  try {
    if (o.n_list.empty()) throw std::invalid_argument("--n-list must not be empty");
    for (int n : o.n_list) {
      const ThermoPoint p = ThermoPoint::from_fractions(n, o.f, o.s);
      const double exact = exact_logdomain_average(p.n, p.n_a, p.j);
      double asym = 0.0;
      if (p.j.twice == 0)
        asym = avg_thermo_j0(p.n, p.n_a);
      else if (p.j.twice == p.n)
        asym = jmax_stats().mean;
      else
        asym = avg_thermo(p);
      rows.push_back({n, exact, asym});
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const ComparisonTable table = comparison_table(
      o.s == 0.0 ? ComparisonCase::j_zero : (o.s == 1.0 ? ComparisonCase::j_max : ComparisonCase::fixed_s),
      o.f, o.s);
  auto coeff_json = [](const CoeffRow& r) {
    return nlohmann::json{{"n", detail::sig12(r.n_term)},
                          {"sqrt_n_delta", detail::sig12(r.sqrt_n_delta)},
                          {"log_n", detail::sig12(r.log_n)},
                          {"const", detail::sig12(r.constant)},
                          {"delta", detail::sig12(r.delta)}};
  };
  nlohmann::json coeffs{{"g_local", coeff_json(table.g_local)},
                        {"k_local", coeff_json(table.k_local)},
                        {"k_local_source", "external reference"},
                        {"difference", coeff_json(table.difference)}};

  const auto path = detail::resolve_output(o.output, "asymptotics." + o.format);
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot open " << path.string() << "\n";
    return kExitIo;
  }
  if (o.format == "json") {
    nlohmann::json j{{"f", o.f}, {"s", o.s}, {"coefficients", coeffs}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"n", r.n},
                           {"exact", detail::sig12(r.exact)},
                           {"asymptotic", detail::sig12(r.asym)},
                           {"difference", detail::sig12(r.exact - r.asym)}});
    file << j.dump(2) << "\n";
  } else {
    file << "n,exact,asymptotic,difference\n";
    for (const auto& r : rows)
      file << r.n << "," << detail::fmt12(r.exact) << "," << detail::fmt12(r.asym) << ","
           << detail::fmt12(r.exact - r.asym) << "\n";
  }
  if (!file.good()) {
    err << "error: write failed for " << path.string() << "\n";
    return kExitIo;
  }
  out << coeffs.dump() << "\n";
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

// Runs the small reference states through both entropies and prints
// expected-vs-computed rows.
inline int cmd_examples(std::ostream& out, std::ostream&) {
  struct Row {
    std::string name;
    double ka_expected, ka_computed;
    double ga_expected, ga_computed;
  };
  std::vector<Row> rows;
  const double log2 = std::log(2.0), log3 = std::log(3.0);

  auto add = [&](const std::string& name, const FullStateVector& psi, int n_a, TwiceSpin j,
                 double ka_exp, double ga_exp) {
    rows.push_back({name, ka_exp, entropy_KA(psi, n_a), ga_exp, entropy_GA_fullspace(psi, n_a, j)});
  };

  add("singlet N=2", paper_example_state("singlet"), 1, TwiceSpin{0}, log2, 0.0);
  add("triplet+ N=2", paper_example_state("triplet+"), 1, TwiceSpin{2}, 0.0, 0.0);
  add("triplet0 N=2", paper_example_state("triplet0"), 1, TwiceSpin{2}, log2, 0.0);
  add("psi0 N=4 j=0", paper_example_state("psi0_N4"), 2, TwiceSpin{0}, 0.0, 0.0);
  add("psi1 N=4 j=0", paper_example_state("psi1_N4"), 2, TwiceSpin{0}, log3, 0.0);

  const auto psi0 = paper_example_state("psi0_N4");
  const auto psi1 = paper_example_state("psi1_N4");
  const auto eta1 = paper_example_state("eta1_N4");
  const auto eta2 = paper_example_state("eta2_N4");
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    FullStateVector mix0{4, std::sqrt(1.0 - p) * psi0.amplitudes + std::sqrt(p) * psi1.amplitudes};
    add("sqrt(1-p) psi0 + sqrt(p) psi1, p=" + detail::fmt12(p), mix0, 2, TwiceSpin{0},
        -xlogx(1.0 - p) - (p > 0.0 ? p * std::log(p / 3.0) : 0.0), -xlogx(1.0 - p) - xlogx(p));
    FullStateVector mix1{4, std::sqrt(1.0 - p) * eta1.amplitudes + std::sqrt(p) * eta2.amplitudes};
    add("sqrt(1-p) eta1 + sqrt(p) eta2, p=" + detail::fmt12(p), mix1, 2, TwiceSpin{2},
        -xlogx(p / 2.0) - xlogx(1.0 - p / 2.0), -xlogx(1.0 - p) - xlogx(p));
  }

  const auto a = paper_example_state("psi1_N6");
  const auto b = paper_example_state("psi2_N6");
  FullStateVector mix{6, (a.amplitudes + b.amplitudes) / std::sqrt(2.0)};
  add("(psi1+psi2)/sqrt(2) N=6", mix, 3, TwiceSpin{2},
      -0.375 * std::log(0.375) - 0.625 * std::log(0.625), log2);
  const auto mixed_b = reorder_particles(mix, {4, 5, 6, 1, 2, 3});
  add("same state, B side", mixed_b, 3, TwiceSpin{2},
      -0.375 * std::log(0.375) - 0.625 * std::log(0.625), 0.0);

  out << "state,quantity,expected,computed,status\n";
  bool all_ok = true;
  for (const auto& r : rows) {
    const bool ka_ok = std::abs(r.ka_expected - r.ka_computed) <= 1e-12;
    const bool ga_ok = std::abs(r.ga_expected - r.ga_computed) <= 1e-12;
    all_ok = all_ok && ka_ok && ga_ok;
    out << r.name << ",S_KA," << detail::fmt12(r.ka_expected) << "," << detail::fmt12(r.ka_computed)
        << "," << (ka_ok ? "pass" : "FAIL") << "\n";
    out << r.name << ",S_GA," << detail::fmt12(r.ga_expected) << "," << detail::fmt12(r.ga_computed)
        << "," << (ga_ok ? "pass" : "FAIL") << "\n";
  }
  out << (all_ok ? "all examples pass\n" : "SOME EXAMPLES FAILED\n");
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"SU(2) symmetry-resolved entanglement toolkit"};
  app.require_subcommand(1);

  std::string j_text;
  std::optional<int> twice_j;
  auto add_spin_flags = [&](CLI::App* cmd) {
    auto* a = cmd->add_option("--j", j_text, "total spin (decimal, e.g. 1 or 1.5)");
    auto* b = cmd->add_option("--twice-j", twice_j, "total spin as the doubled integer 2j");
    a->excludes(b);
    b->excludes(a);
  };

  DimsOptions dims_opts;
  auto* dims_cmd = app.add_subcommand("dims", "sector dimensions of an intertwiner space");
  dims_cmd->add_option("--n", dims_opts.n, "particle count")->required();
  int na_value = -1;
  dims_cmd->add_option("--na", na_value, "subsystem particle count");
  add_spin_flags(dims_cmd);

  PageCurveOptions page_opts;
  auto* page_cmd = app.add_subcommand("page-curve", "typical-entropy Page curve at fixed j");
  page_cmd->add_option("--n", page_opts.n, "particle count")->required();
  add_spin_flags(page_cmd);
  page_cmd->add_option("--format", page_opts.format)->check(CLI::IsMember({"csv", "json"}));
  page_cmd->add_option("--output", page_opts.output, "output path");

  SampleOptions sample_opts;
  auto* sample_cmd = app.add_subcommand("sample", "Monte-Carlo sampling of random states");
  sample_cmd->add_option("--n", sample_opts.n)->required();
  sample_cmd->add_option("--na", sample_opts.n_a)->required();
  add_spin_flags(sample_cmd);
  sample_cmd->add_option("--samples", sample_opts.samples);
  sample_cmd->add_option("--seed", sample_opts.seed);
  sample_cmd->add_option("--bins", sample_opts.bins);
  sample_cmd->add_option("--threads", sample_opts.threads);
  sample_cmd->add_option("--format", sample_opts.format)->check(CLI::IsMember({"csv", "json"}));
  sample_cmd->add_option("--output", sample_opts.output);

  AsymptoticsOptions asym_opts;
  auto* asym_cmd = app.add_subcommand("asymptotics", "exact vs thermodynamic-limit averages");
  asym_cmd->add_option("--f", asym_opts.f, "subsystem fraction")->required();
  asym_cmd->add_option("--s", asym_opts.s, "spin density")->required();
  asym_cmd->add_option("--n-list", asym_opts.n_list, "system sizes")->required()->delimiter(',');
  asym_cmd->add_option("--format", asym_opts.format)->check(CLI::IsMember({"csv", "json"}));
  asym_cmd->add_option("--output", asym_opts.output);

  auto* examples_cmd = app.add_subcommand("examples", "reference states, expected vs computed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (dims_cmd->parsed()) {
      dims_opts.j = detail::spin_from_flags(j_text, twice_j);
      if (na_value >= 0) dims_opts.n_a = na_value;
      return cmd_dims(dims_opts, out, err);
    }
    if (page_cmd->parsed()) {
      page_opts.j = detail::spin_from_flags(j_text, twice_j);
      return cmd_page_curve(page_opts, out, err);
    }
    if (sample_cmd->parsed()) {
      sample_opts.j = detail::spin_from_flags(j_text, twice_j);
      return cmd_sample(sample_opts, out, err);
    }
    if (asym_cmd->parsed()) return cmd_asymptotics(asym_opts, out, err);
    if (examples_cmd->parsed()) return cmd_examples(out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace symres::cli
