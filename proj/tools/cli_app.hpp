#pragma once

// satotate command-line front end. run_cli() is the whole program; main()
// only forwards to it so the test suite can drive commands in-process.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satotate/satotate.hpp"

namespace satotate::cli {

using nlohmann::json;

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Tabular result plus free-form summary. CSV prints only the table; JSON
// prints {"command", "columns", "rows", "summary"}.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json summary = json::object();

  std::string render(const std::string& format) const {
    if (format == "json") {
      json doc;
      doc["command"] = command;
      doc["columns"] = columns;
      doc["rows"] = json::array();
      for (const auto& r : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
        doc["rows"].push_back(std::move(obj));
      }
      doc["summary"] = summary;
      return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out << ',';
        const json& c = r[i];
        if (c.is_null()) continue;
        if (c.is_number_float()) {
          out << fmt_double(c.get<double>());
        } else if (c.is_string()) {
          out << csv_field(c.get<std::string>());
        } else {
          out << c.dump();
        }
      }
      out << '\n';
    }
    return out.str();
  }
};

struct Globals {
  std::uint64_t seed = 1;
  int workers = 1;
  std::size_t budget = kDefaultTermBudget;
  std::string out;
  std::string format = "csv";
};

inline std::string env_name(const std::string& flag) {
  std::string s = "SATOTATE_";
  for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

template <class T>
CLI::Option* add(CLI::App* app, const std::string& flag, T& var, const std::string& help) {
  return app->add_option("--" + flag, var, help)->envname(env_name(flag));
}

inline std::string partition_label(const DominantWeight& mu) {
  std::string s;
  for (const int v : mu.parts()) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

inline TensorSpec make_spec(int n, const std::vector<int>& exps) {
  if (exps.empty()) return TensorSpec::zero(n);
  return TensorSpec(n, exps);
}

inline TestFunctionH parse_h(const std::string& name) {
  if (name == "gaussian") return TestFunctionH::gaussian();
  if (name == "indicator") return TestFunctionH::indicator();
  throw Error(ErrorKind::invalid_argument, "unknown test function \"" + name + "\"");
}

inline SynthMode parse_mode(const std::string& name) {
  if (name == "sato-tate") return SynthMode::sato_tate;
  if (name == "t1") return SynthMode::t1_perturbed;
  throw Error(ErrorKind::invalid_argument, "unknown synthetic mode \"" + name + "\"");
}

// --- commands ---------------------------------------------------------------

inline Report cmd_decompose(int n, const std::vector<int>& exps, const Globals& g) {
  const TensorSpec spec = make_spec(n, exps);
  const auto parts = tensor_decompose(spec, TermBudget{g.budget});
  Report r{"decompose", {"mu", "a_mu", "dim"}, {}, json::object()};
  std::int64_t checksum = 0;
  json summary_rows = json::array();
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    const std::int64_t d = dim(it->first);
    checksum += it->second * d;
    r.rows.push_back({partition_label(it->first), it->second, d});
    summary_rows.push_back({{"mu", it->first.parts()}, {"a_mu", it->second}, {"dim", d}});
  }
  std::int64_t expected = 1;
  for (int k = 1; k < n; ++k) {
    const std::int64_t dk = dim(DominantWeight::fundamental(n, k));
    for (int e = 0; e < spec.power(k) + spec.conj_power(k); ++e) expected *= dk;
  }
  if (checksum != expected) {
    throw std::logic_error("decomposition checksum " + std::to_string(checksum) + " differs from " +
                           std::to_string(expected));
  }
  r.rows.push_back({"checksum", nullptr, checksum});
  r.summary = {{"n", n}, {"spec", spec.str()}, {"checksum", checksum}, {"decomposition", summary_rows}};
  return r;
}

inline Report cmd_moment(int n, const std::vector<int>& exps, std::int64_t m, const Globals& g) {
  const TensorSpec spec = make_spec(n, exps);
  const std::int64_t oracle = trivial_multiplicity(spec, TermBudget{g.budget});
  const McEstimate est = mc_integrate([&](const SatakeParameter& x) { return character_monomial(spec, x); }, n, m,
                                      RngSeed{g.seed, 0}, g.workers);
  const double z = est.z_score(static_cast<double>(oracle));
  Report r{"moment",
           {"n", "spec", "oracle", "mean_re", "mean_im", "std_error", "z_score", "samples"},
           {},
           json::object()};
  r.rows.push_back({n, spec.str(), oracle, est.mean.real(), est.mean.imag(), est.std_error, z, est.samples});
  r.summary = {{"seed", g.seed}, {"within_5_sigma", z <= 5.0}};
  return r;
}

inline Report cmd_sample(int n, std::int64_t m, int bins, const Globals& g) {
  detail::require_rank(n);
  detail::require(m >= 1, "sample needs --m >= 1");
  detail::require(bins >= 1, "sample needs --bins >= 1");
  const double lo = -static_cast<double>(n), hi = static_cast<double>(n);
  const double width = (hi - lo) / bins;
  const std::int64_t chunks = (m + detail::kChunkSamples - 1) / detail::kChunkSamples;
  std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(chunks),
                                                std::vector<std::int64_t>(static_cast<std::size_t>(bins)));
  std::vector<std::vector<double>> values(static_cast<std::size_t>(chunks));
  detail::for_each_chunk(chunks, g.workers, [&](std::int64_t c) {
    Engine rng = make_engine({g.seed, static_cast<std::uint64_t>(c)});
    const std::int64_t begin = c * detail::kChunkSamples;
    const std::int64_t end = std::min(m, begin + detail::kChunkSamples);
    auto& cnt = counts[static_cast<std::size_t>(c)];
    auto& vals = values[static_cast<std::size_t>(c)];
    for (std::int64_t s = begin; s < end; ++s) {
      const double v = varrho(sample_st(n, rng))[0].real();
      vals.push_back(v);
      const int b = std::clamp(static_cast<int>(std::floor((v - lo) / width)), 0, bins - 1);
      ++cnt[static_cast<std::size_t>(b)];
    }
  });

  Report r{"sample", {"bin_lo", "bin_hi", "count", "empirical_density"}, {}, json::object()};
  if (n == 2) r.columns.push_back("semicircle_density");
  for (int b = 0; b < bins; ++b) {
    std::int64_t total = 0;
    for (const auto& cnt : counts) total += cnt[static_cast<std::size_t>(b)];
    const double a = lo + b * width, z = a + width;
    std::vector<json> row{a, z, total, static_cast<double>(total) / (static_cast<double>(m) * width)};
    // bin-averaged semicircle density, comparable with the histogram
    if (n == 2) row.emplace_back((st_cdf_gl2(z) - st_cdf_gl2(a)) / width);
    r.rows.push_back(std::move(row));
  }
  r.summary = {{"n", n}, {"samples", m}, {"seed", g.seed}, {"statistic", "Re chi_1"}};
  if (n == 2) {
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(m));
    for (const auto& v : values) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    double ks = 0.0;
    const double mm = static_cast<double>(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      const double f = st_cdf_gl2(all[i]);
      ks = std::max({ks, std::abs(static_cast<double>(i + 1) / mm - f), std::abs(f - static_cast<double>(i) / mm)});
    }
    r.summary["ks_distance"] = ks;
    r.summary["ks_threshold_99"] = 1.63 / std::sqrt(mm);
  }
  return r;
}

struct FamilySource {
  std::string family_path;
  std::size_t synth = 0;
  std::string mode = "sato-tate";
  std::string save_path;
};

inline Family obtain_family(int n, std::uint64_t p, const FamilySource& src, const Globals& g) {
  detail::require(src.family_path.empty() != (src.synth == 0), "give exactly one of --family or --synth");
  Family f = src.family_path.empty() ? synth_family(n, src.synth, parse_mode(src.mode), {p}, g.seed, g.workers)
                                     : load_family(src.family_path);
  if (!src.save_path.empty()) save_family(f, src.save_path);
  return f;
}

inline Report cmd_equidist(int n, const std::vector<int>& exps, std::uint64_t p, int max_degree,
                           const std::vector<double>& t_grid, const std::string& h_name, double theta, double eps,
                           const FamilySource& src, const Globals& g) {
  const Family family = obtain_family(n, p, src, g);
  std::vector<TensorSpec> specs =
      exps.empty() ? TensorSpec::enumerate(family.n, max_degree) : std::vector<TensorSpec>{make_spec(family.n, exps)};
  EquidistOptions opts;
  opts.theta = theta;
  opts.eps = eps;
  opts.workers = g.workers;
  opts.budget = TermBudget{g.budget};
  const auto rows = equidist_report(family, p, specs, parse_h(h_name), t_grid, opts);
  Report r{"equidist",
           {"spec", "T", "L_re", "L_im", "std_error", "oracle", "abs_difference", "z_score", "error_term"},
           {},
           json::object()};
  double worst_z = 0.0;
  for (const auto& row : rows) {
    const double d = std::abs(row.difference);
    const double z = row.statistic.std_error > 0.0 ? d / row.statistic.std_error : (d == 0.0 ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, z);
    r.rows.push_back({row.spec.str(), row.t, row.statistic.value.real(), row.statistic.value.imag(),
                      row.statistic.std_error, row.oracle, d, z,
                      row.error_term ? json(*row.error_term) : json(nullptr)});
  }
  r.summary = {{"n", family.n},         {"p", p},
               {"members", family.members.size()}, {"label", family.label},
               {"max_z_score", worst_z}};
  return r;
}

inline Report cmd_bound_verify(const std::vector<double>& ps, const std::vector<double>& alphas, int max_degree,
                               const Globals& g) {
  Report r{"bound", {"i1", "i1p", "i2", "i2p", "p", "alpha", "exact", "bound"}, {}, json::object()};
  std::size_t checked = 0;
  for (double p : ps) {
    for (double a : alphas) {
      for (const auto& row : verify_multiplicity_bound(p, a, max_degree, TermBudget{g.budget})) {
        r.rows.push_back({row.exponents[0], row.exponents[1], row.exponents[2], row.exponents[3], row.p, row.alpha,
                          row.exact, row.bound});
        ++checked;
      }
    }
  }
  r.summary = {{"mode", "verify"}, {"tuples_checked", checked}, {"all_pass", true}};
  return r;
}

inline Report cmd_bound_rate(const std::vector<int>& exps, double p, double theta, double eps,
                             const std::vector<double>& t_grid, double constant, const std::string& h_name,
                             const FamilySource& src, const Globals& g) {
  Gl3BoundParams params;
  params.p = p;
  params.theta = theta;
  params.eps = eps;
  if (!exps.empty()) {
    detail::require(exps.size() == 4, "--spec for the N=3 bound needs 4 entries");
    std::copy(exps.begin(), exps.end(), params.exponents.begin());
  }
  std::optional<Family> family;
  if (!src.family_path.empty() || src.synth > 0) {
    detail::require(std::floor(p) == p, "--p must be an integer prime when a family is given");
    family = obtain_family(3, static_cast<std::uint64_t>(p), src, g);
  }
  RateFamilyInput input;
  if (family) input.family = &*family;
  input.h = parse_h(h_name);
  input.workers = g.workers;
  const RateReport rep = rate_report(params, t_grid, constant, input);

  Report r{"bound", {"T", "envelope", "measured"}, {}, json::object()};
  json gk = json::array();
  for (const auto& row : rep.rows) {
    r.rows.push_back({row.t, row.envelope, row.measured ? json(*row.measured) : json(nullptr)});
    gk.push_back(row.gk_envelope);
  }
  r.summary = {{"mode", "rate"},      {"spec", params.spec().str()}, {"p", p},
               {"theta", theta},      {"eps", eps},                  {"oracle", rep.oracle},
               {"constant", constant}, {"gk_envelope", gk}};
  return r;
}

inline Report cmd_hecke(std::int64_t m0, std::int64_t m1, const std::vector<double>& ps, const Globals& g) {
  detail::require(m0 >= 0 && m1 >= 0, "point counts must be >= 0");
  auto sweep = [&](std::int64_t count, std::uint64_t salt, auto&& draw) {
    const std::int64_t chunks = (count + detail::kChunkSamples - 1) / detail::kChunkSamples;
    std::vector<double> worst(static_cast<std::size_t>(std::max<std::int64_t>(chunks, 1)), 0.0);
    detail::for_each_chunk(chunks, g.workers, [&](std::int64_t c) {
      Engine rng = make_engine({g.seed ^ salt, static_cast<std::uint64_t>(c)});
      const std::int64_t end = std::min(count, (c + 1) * detail::kChunkSamples);
      for (std::int64_t s = c * detail::kChunkSamples; s < end; ++s) {
        worst[static_cast<std::size_t>(c)] = std::max(worst[static_cast<std::size_t>(c)], hecke_check_n3(draw(rng)));
      }
    });
    return *std::max_element(worst.begin(), worst.end());
  };

  Report r{"hecke", {"set", "p", "points", "max_residual"}, {}, json::object()};
  double overall = sweep(m0, 0, [](Engine& rng) { return sample_st(3, rng); });
  r.rows.push_back({"T0", nullptr, m0, overall});
  for (double p : ps) {
    detail::require(p > 1.0, "--p entries must exceed 1");
    const double w = sweep(m1, 0x7100ull + static_cast<std::uint64_t>(p),
                           [p](Engine& rng) { return sample_t1(3, p, rng); });
    overall = std::max(overall, w);
    r.rows.push_back({"T1", p, m1, w});
  }
  r.summary = {{"max_residual", overall}, {"tolerance", kIdentityTolerance}};
  if (!(overall < kIdentityTolerance)) {
    throw Error(ErrorKind::bound_violation, "Hecke identity residual " + fmt_double(overall) + " exceeds tolerance");
  }
  return r;
}

inline Report cmd_ingest(const std::string& path) {
  const Family f = parse_family([&] {
    std::ifstream in(path);
    if (!in) throw FamilyError("cannot open family file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }());
  const ValidationSummary s = validate(f);
  Report r{"ingest", {"n", "members", "coherence_checks", "max_residual"}, {}, json::object()};
  r.rows.push_back({f.n, s.members, s.coherence_checks, s.max_residual});
  r.summary = {{"label", f.label}, {"valid", true}};
  return r;
}

// --- driver -----------------------------------------------------------------

inline json error_object(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sato-Tate equidistribution toolkit for PGL(N) Satake parameters", "satotate"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  add(&app, "seed", g.seed, "RNG seed");
  add(&app, "workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  add(&app, "budget", g.budget, "term budget for character tables")->check(CLI::Range(std::size_t{1000}, SIZE_MAX));
  add(&app, "out", g.out, "output path (default stdout)");
  add(&app, "format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  int n = 3;
  std::vector<int> spec;
  std::int64_t m = 100000;
  int bins = 50;
  double p = 2.0;
  std::vector<double> p_list{2.0, 3.0, 5.0};
  std::vector<double> alphas{kDefaultTheta, 0.5, 5.0 / 3.0};
  double theta = kDefaultTheta;
  double eps = 1e-3;
  std::vector<double> t_grid{20.0, 40.0, 80.0};
  int max_degree = 2;
  int bound_max_degree = 4;
  std::int64_t hecke_m = 10000;
  std::string h_name = "gaussian";
  FamilySource src;
  bool verify = false, rate = false;
  double constant = 1.0;
  std::int64_t m_t1 = 1000;
  std::string ingest_path;

  auto with_n_spec = [&](CLI::App* sub) {
    add(sub, "n", n, "rank N")->check(CLI::Range(2, 64));
    add(sub, "spec", spec, "exponents i1,i1',...,i_{N-1},i'_{N-1}")->delimiter(',');
  };
  auto with_family = [&](CLI::App* sub) {
    add(sub, "family", src.family_path, "family JSON file");
    add(sub, "synth", src.synth, "synthetic family size");
    add(sub, "mode", src.mode, "synthetic family mode")->check(CLI::IsMember({"sato-tate", "t1"}));
    add(sub, "save-family", src.save_path, "write the family used to this JSON file");
    add(sub, "test-function", h_name, "test function")->check(CLI::IsMember({"gaussian", "indicator"}));
    add(sub, "T-grid", t_grid, "comma list of T values")->delimiter(',');
  };

  auto* decompose = app.add_subcommand("decompose", "irreducible decomposition of a tensor product");
  with_n_spec(decompose);

  auto* moment = app.add_subcommand("moment", "oracle multiplicity against a Monte Carlo Sato-Tate moment");
  with_n_spec(moment);
  add(moment, "m", m, "sample count");

  auto* sample = app.add_subcommand("sample", "histogram of Re chi_1 under the Sato-Tate measure");
  add(sample, "n", n, "rank N")->check(CLI::Range(2, 64));
  add(sample, "m", m, "sample count");
  add(sample, "bins", bins, "histogram bins");

  auto* equidist = app.add_subcommand("equidist", "weighted family statistics against their oracles");
  with_n_spec(equidist);
  with_family(equidist);
  add(equidist, "p", p, "prime");
  add(equidist, "max-degree", max_degree, "largest monomial degree when --spec is absent");
  add(equidist, "theta", theta, "Ramanujan exponent");
  add(equidist, "eps", eps, "epsilon in the error term");

  auto* bound = app.add_subcommand("bound", "N=3 multiplicity bound sweep or rate-of-convergence report");
  bound->add_flag("--verify", verify, "sweep the multiplicity bound");
  bound->add_flag("--rate", rate, "tabulate the convergence envelope");
  add(bound, "p", p_list, "prime(s)")->delimiter(',');
  add(bound, "alpha", alphas, "alpha values for --verify")->delimiter(',');
  add(bound, "max-degree", bound_max_degree, "largest degree for --verify");
  add(bound, "spec", spec, "exponents i1,i1',i2,i2' for --rate")->delimiter(',');
  add(bound, "theta", theta, "Ramanujan exponent");
  add(bound, "eps", eps, "epsilon in the error term");
  add(bound, "constant", constant, "implied constant for the envelope");
  with_family(bound);

  auto* hecke = app.add_subcommand("hecke", "Hecke relation residuals on T_0 and T_1 samples");
  add(hecke, "m", hecke_m, "points on T_0");
  add(hecke, "m-t1", m_t1, "points on T_1 per prime");
  add(hecke, "p", p_list, "primes for T_1")->delimiter(',');

  auto* ingest = app.add_subcommand("ingest", "validate a family JSON file");
  ingest->add_option("file", ingest_path, "family JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_object("invalid_argument", e.what()).dump() << '\n';
    return 2;
  }

  try {
    Report report;
    if (decompose->parsed()) {
      report = cmd_decompose(n, spec, g);
    } else if (moment->parsed()) {
      report = cmd_moment(n, spec, m, g);
    } else if (sample->parsed()) {
      report = cmd_sample(n, m, bins, g);
    } else if (equidist->parsed()) {
      detail::require(p >= 2.0 && std::floor(p) == p, "--p must be an integer prime");
      report = cmd_equidist(n, spec, static_cast<std::uint64_t>(p), max_degree, t_grid, h_name, theta, eps, src, g);
    } else if (bound->parsed()) {
      detail::require(verify != rate, "bound needs exactly one of --verify or --rate");
      if (verify) {
        report = cmd_bound_verify(p_list, alphas, bound_max_degree, g);
      } else {
        detail::require(p_list.size() == 1 || bound->count("--p") == 0, "--rate takes a single --p");
        const double rp = bound->count("--p") ? p_list.front() : 2.0;
        report = cmd_bound_rate(spec, rp, theta, eps, t_grid, constant, h_name, src, g);
      }
    } else if (hecke->parsed()) {
      report = cmd_hecke(hecke_m, m_t1, p_list, g);
    } else if (ingest->parsed()) {
      report = cmd_ingest(ingest_path);
    }

    const std::string text = report.render(g.format);
    if (g.out.empty()) {
      out << text;
    } else {
      std::ofstream f(g.out, std::ios::binary);
      if (!f) throw Error(ErrorKind::invalid_argument, "cannot write " + g.out);
      f << text;
    }
    return 0;
  } catch (const FamilyError& e) {
    json obj = error_object(std::string(to_string(e.kind())), e.what());
    if (e.member()) obj["error"]["member"] = *e.member();
    if (e.residual()) obj["error"]["residual"] = *e.residual();
    err << obj.dump() << '\n';
    return 1;
  } catch (const Error& e) {
    err << error_object(std::string(to_string(e.kind())), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << error_object("internal", e.what()).dump() << '\n';
    return 3;
  }
}

}  // namespace satotate::cli
