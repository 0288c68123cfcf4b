// pktool: batch front end for the cyclic fixed-point, amplitude, and lattice
// polytope computations, with deterministic JSON/CSV/table output.
//
// Exit codes: 0 ok, 1 check failure, 2 usage error, 3 resource limit.

#include <atomic>
#include <complex>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pk/amplitude.hpp"
#include "pk/io.hpp"
#include "pk/polytopes.hpp"
#include "pk/tropical.hpp"
#include "pk/verification.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunConfig {
  int k = 0, n = 0;
  std::string backend = "exact";
  std::string format = "json";
  std::string output;  // empty writes to stdout
  int workers = 1;
  unsigned seed = 0;
};

int default_workers() {
  if (const char* env = std::getenv("PKTOOL_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1 && w <= 256) return w;
  }
  return 1;
}

// Deterministic fan-out: item i's result lands in slot i regardless of the
// execution order.
template <class T, class Fn>
std::vector<T> parallel_map(int nitems, int workers, Fn&& fn) {
  std::vector<T> out(nitems);
  if (workers <= 1 || nitems <= 1) {
    for (int i = 0; i < nitems; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= nitems) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min(workers, nitems);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

int write_out(const RunConfig& cfg, const ordered_json& j, const std::string& table,
              const std::string& csv) {
  std::string text;
  if (cfg.format == "json")
    text = j.dump() + "\n";
  else if (cfg.format == "csv")
    text = csv;
  else
    text = table;
  if (cfg.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) {
    std::cerr << "pktool: cannot open output file " << cfg.output << "\n";
    return kExitUsage;
  }
  f << text;
  return 0;
}

std::vector<int> label_prefix(const pk::FixedPointLabel& A) {
  return std::vector<int>(A.begin(), A.end() - 1);
}

std::string join_ints(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string cyc_string(const pk::CyclotomicNumber& v) {
  return v.is_rational() ? pk::format_rational(v.to_rational()) : v.str();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// fixed-points

int cmd_fixed_points(const RunConfig& cfg) {
  using namespace pk;
  int k = cfg.k, n = cfg.n;
  Int lyndon = count_lyndon(k, n);
  std::vector<FixedPointLabel> defect = defective_classes(k, n);
  std::vector<PointConfiguration> sols = solutions(k, n);

  // Frame classification scans (k+1)-subsets per solution; only do it at
  // desk scale.
  bool scan_frames = binomial(n, k + 1) <= Int(5000);
  std::vector<char> framed(sols.size(), 1);
  if (scan_frames)
    framed = parallel_map<char>((int)sols.size(), cfg.workers, [&](int i) {
      Chart<CyclotomicNumber> c = solution_chart(sols[i].label, n);
      return (char)find_frame(c).has_value();
    });

  ordered_json j;
  j["k"] = k;
  j["n"] = n;
  j["lyndon"] = lyndon.convert_to<long long>();
  ordered_json dj = ordered_json::array();
  for (const auto& A : defect) dj.push_back(A);
  j["defective"] = std::move(dj);
  ordered_json sj = ordered_json::array();
  for (const auto& g : sols) sj.push_back(label_prefix(g.label));
  j["solutions"] = std::move(sj);
  if (scan_frames) {
    ordered_json fj = ordered_json::array();
    for (std::size_t i = 0; i < sols.size(); ++i)
      if (!framed[i]) fj.push_back(label_prefix(sols[i].label));
    j["frameless"] = std::move(fj);
  }

  std::ostringstream table, csv;
  table << "fixed points k=" << k << " n=" << n << "\n"
        << "  lyndon classes: " << lyndon.str() << "\n"
        << "  solutions:      " << sols.size() << "\n"
        << "  defective:      " << defect.size() << "\n";
  csv << "label,status\n";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    std::string status = !scan_frames ? "solution" : (framed[i] ? "solution" : "frameless");
    table << "    (" << join_ints(sols[i].label, ",") << ")  " << status << "\n";
    csv << join_ints(sols[i].label, " ") << "," << status << "\n";
  }
  for (const auto& A : defect) {
    table << "    (" << join_ints(A, ",") << ")  defective\n";
    csv << join_ints(A, " ") << ",defective\n";
  }
  return write_out(cfg, j, table.str(), csv.str());
}

// ---------------------------------------------------------------------------
// amplitude

int cmd_amplitude_solutions(const RunConfig& cfg) {
  using namespace pk;
  AmplitudeResult res =
      cfg.backend == "float" ? amplitude_pk_float(cfg.k, cfg.n) : amplitude_pk(cfg.k, cfg.n);

  ordered_json j;
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["amplitude"] = format_rational(res.amplitude);
  j["catalan"] = res.catalan.str();
  j["match"] = res.match;
  ordered_json per = ordered_json::array();
  for (const auto& s : res.per_solution) {
    ordered_json row;
    row["label"] = label_prefix(s.label);
    row["framed"] = s.framed;
    if (cfg.backend != "float") row["value"] = cyc_string(s.value);
    per.push_back(std::move(row));
  }
  j["per_solution"] = std::move(per);

  std::ostringstream table, csv;
  table << "amplitude k=" << cfg.k << " n=" << cfg.n << " (" << cfg.backend << ")\n"
        << "  value:   " << format_rational(res.amplitude) << "\n"
        << "  catalan: " << res.catalan.str() << "\n"
        << "  match:   " << (res.match ? "yes" : "NO") << "\n";
  csv << "label,framed,value\n";
  for (const auto& s : res.per_solution) {
    std::string value = cfg.backend != "float" ? cyc_string(s.value) : "";
    table << "    (" << join_ints(s.label, ",") << ")  " << (s.framed ? "framed   " : "frameless")
          << "  " << value << "\n";
    csv << join_ints(s.label, " ") << "," << (s.framed ? "true" : "false") << "," << value << "\n";
  }
  int rc = write_out(cfg, j, table.str(), csv.str());
  if (rc != 0) return rc;
  return res.match ? 0 : kExitCheckFailure;
}

int cmd_amplitude_tropical(const RunConfig& cfg, const std::string& kin_file) {
  using namespace pk;
  KinematicPoint s =
      kin_file.empty() ? pk_point(cfg.k, cfg.n) : kinematic_from_json(slurp(kin_file));
  TropicalAmplitude amp = evaluate_amplitude(s);

  ordered_json j;
  j["k"] = s.k();
  j["n"] = s.n();
  j["kinematics"] = kin_file.empty() ? "pk" : "file";
  j["regions"] = amp.regions.size();
  ordered_json hist = ordered_json::array();
  for (const auto& [value, count] : amp.histogram)
    hist.push_back(ordered_json::array({format_rational(value), count}));
  j["histogram"] = std::move(hist);
  j["total"] = format_rational(amp.total);

  std::ostringstream table, csv;
  table << "tropical amplitude k=" << s.k() << " n=" << s.n() << " at "
        << (kin_file.empty() ? "pk kinematics" : kin_file) << "\n"
        << "  regions: " << amp.regions.size() << "\n"
        << "  total:   " << format_rational(amp.total) << "\n"
        << "  histogram (value x count):\n";
  csv << "region_value,count\n";
  for (const auto& [value, count] : amp.histogram) {
    table << "    " << format_rational(value) << " x " << count << "\n";
    csv << format_rational(value) << "," << count << "\n";
  }
  return write_out(cfg, j, table.str(), csv.str());
}

// ---------------------------------------------------------------------------
// polytope

int export_vertices_csv(const pk::ExactPolyhedron& P, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "pktool: cannot open vertex file " << path << "\n";
    return kExitUsage;
  }
  for (const auto& v : P.vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) f << ",";
      f << pk::format_rational(v[i]);
    }
    f << "\n";
  }
  return 0;
}

int cmd_polytope(const RunConfig& cfg, const std::string& which, const std::string& vertices_csv) {
  using namespace pk;
  int k = cfg.k, n = cfg.n;
  ExactPolyhedron P = which == "pi" ? pi_polytope(k, n) : root_polytope(k, n, true);
  if (P.vertices.empty()) vertex_enumerate(P);
  if (!P.rays.empty()) {
    std::cerr << "pktool: polytope is unbounded\n";
    return kExitCheckFailure;
  }
  if (P.vertices.size() > 192) {
    std::cerr << "pktool: " << P.vertices.size()
              << " vertices exceed the face-lattice budget (192); see --limits\n";
    return kExitResource;
  }

  FVector fv = f_vector(P);
  Rational vol = relative_volume(P);
  int facets = facet_count(P);
  // The full duality and factorization cross-checks re-enumerate vertices and
  // expand polynomial products; keep them to desk scale.
  bool flags = binomial(n, k) <= Int(35);

  ordered_json j;
  j["polytope"] = which == "pi" ? "Pi" : "R";
  j["k"] = k;
  j["n"] = n;
  j["fvector"] = fv;
  j["relative_volume"] = format_rational(vol);
  j["facets"] = facets;
  std::size_t interior = 0;
  if (which == "pi") {
    interior = interior_lattice_points(P).size();
    j["interior_lattice_points"] = interior;
  }
  bool duality = true, newton = true;
  if (flags) {
    duality = duality_check(k, n);
    newton = newton_polytope_check(k, n);
    j["duality"] = duality;
    j["newton"] = newton;
  }

  std::ostringstream table, csv;
  table << (which == "pi" ? "deformation polytope" : "root polytope") << " k=" << k << " n=" << n
        << "\n  f-vector: (";
  for (std::size_t i = 0; i < fv.size(); ++i) table << (i ? "," : "") << fv[i];
  table << ")\n  facets:   " << facets << "\n  relative volume: " << format_rational(vol) << "\n";
  if (which == "pi") table << "  interior lattice points: " << interior << "\n";
  if (flags)
    table << "  duality: " << (duality ? "pass" : "FAIL") << "\n  newton:  "
          << (newton ? "pass" : "FAIL") << "\n";
  csv << "key,value\n";
  csv << "fvector," << [&] {
    std::string s;
    for (std::size_t i = 0; i < fv.size(); ++i) s += (i ? " " : "") + std::to_string(fv[i]);
    return s;
  }() << "\n";
  csv << "facets," << facets << "\n";
  csv << "relative_volume," << format_rational(vol) << "\n";
  if (which == "pi") csv << "interior_lattice_points," << interior << "\n";
  if (flags) {
    csv << "duality," << (duality ? "true" : "false") << "\n";
    csv << "newton," << (newton ? "true" : "false") << "\n";
  }

  if (!vertices_csv.empty()) {
    int rc = export_vertices_csv(P, vertices_csv);
    if (rc != 0) return rc;
  }
  int rc = write_out(cfg, j, table.str(), csv.str());
  if (rc != 0) return rc;
  return (!flags || (duality && newton)) ? 0 : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// verify

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string note;  // empty or "conjecture-support"
};

int cmd_verify(const RunConfig& cfg) {
  using namespace pk;
  int k = cfg.k, n = cfg.n;
  std::vector<CheckRow> rows;
  const std::string support = k >= 5 ? "conjecture-support" : "";

  std::vector<PointConfiguration> sols = solutions(k, n);
  std::vector<FixedPointLabel> defect = defective_classes(k, n);

  {
    Int lyndon = count_lyndon(k, n);
    std::size_t aperiodic = enumerate_aperiodic_classes(k, n).size();
    bool pass = Int((long)aperiodic) == lyndon && aperiodic == sols.size() + defect.size();
    rows.push_back({"class-census", pass, ""});
  }

  {
    auto flat = parallel_map<char>((int)sols.size(), cfg.workers, [&](int i) {
      for (const auto& x : pk_gradient(sols[i]))
        if (!cyc_is_zero(x)) return (char)0;
      return (char)1;
    });
    bool pass = std::all_of(flat.begin(), flat.end(), [](char c) { return c; });
    rows.push_back({"gradient-vanishes", pass, ""});
  }

  {
    auto flat = parallel_map<char>((int)sols.size(), cfg.workers, [&](int i) {
      for (const auto& x : pk_cross_ratio_residuals(sols[i]))
        if (!cyc_is_zero(x)) return (char)0;
      return (char)1;
    });
    bool pass = std::all_of(flat.begin(), flat.end(), [](char c) { return c; });
    rows.push_back({"cross-ratio-residuals", pass, support});
  }

  {
    std::set<FixedPointLabel> classes, conjugated;
    bool involutive = true;
    for (const auto& g : sols) {
      if (conjugate_label(conjugate_label(g.label, n), n) != g.label) involutive = false;
      classes.insert(canonical_class(g.label, n));
      conjugated.insert(canonical_class(conjugate_label(g.label, n), n));
    }
    rows.push_back({"involution-closure", involutive && classes == conjugated, ""});
  }

  {
    KinematicPoint flipped = flip_point(pk_point(k, n));
    auto flat = parallel_map<char>((int)sols.size(), cfg.workers, [&](int i) {
      for (const auto& x : potential_gradient(conjugation_involution(sols[i]), flipped))
        if (!cyc_is_zero(x)) return (char)0;
      return (char)1;
    });
    bool pass = std::all_of(flat.begin(), flat.end(), [](char c) { return c; });
    rows.push_back({"flip-covariance", pass, ""});
  }

  {
    Matrix<Rational> zero(k - 1, n - k);
    rows.push_back({"origin-embedding", psi_embedding(k, n, zero) == pk_point(k, n), ""});
  }

  {
    // a seeded perturbation of a genuine solution must leave the residual
    // variety
    std::mt19937 rng(cfg.seed);
    std::uniform_int_distribution<int> row(0, k - 1), col(0, n - 1), num(2, 7);
    PointConfiguration g = sols.front();
    int a = row(rng), b = col(rng);
    g.C(a, b) = g.C(a, b) * CyclotomicNumber(num(rng));
    bool nonzero = false;
    for (const auto& x : pk_cross_ratio_residuals(g))
      if (!cyc_is_zero(x)) nonzero = true;
    rows.push_back({"perturbation-detected", nonzero, ""});
  }

  bool scan_frames = binomial(n, k + 1) <= Int(5000);
  std::vector<char> framed;
  if (scan_frames) {
    bool census = true;
    framed = parallel_map<char>((int)sols.size(), cfg.workers, [&](int i) {
      Chart<CyclotomicNumber> c = solution_chart(sols[i].label, n);
      return (char)find_frame(c).has_value();
    });
    for (std::size_t i = 0; i < sols.size(); ++i) {
      if (framed[i]) continue;
      try {
        greedy_gauge(null_space_matrix(solution_chart(sols[i].label, n)));
      } catch (const InvalidGauge&) {
        census = false;
      }
    }
    rows.push_back({"frame-census", census, ""});
  }

  if (scan_frames && (k - 1) * (n - k - 1) <= 12 &&
      std::any_of(framed.begin(), framed.end(), [](char c) { return !c; })) {
    // frameless solutions must still contribute finitely through the greedy
    // gauge
    bool pass = true;
    KinematicPoint s = pk_point(k, n);
    Rational norm = normalization_constant(k);
    for (std::size_t i = 0; i < sols.size(); ++i) {
      if (framed[i]) continue;
      try {
        Chart<CyclotomicNumber> c = solution_chart(sols[i].label, n);
        amplitude_summand(c, s, greedy_gauge(null_space_matrix(c)), norm);
      } catch (const std::exception&) {
        pass = false;
      }
    }
    rows.push_back({"frameless-gauge", pass, ""});
  }

  if (binomial(n, k) <= Int(70)) {
    AmplitudeResult res = amplitude_pk(k, n);
    rows.push_back({"amplitude-catalan", res.match, support});
  }

  if ((k - 1) * (n - k - 1) <= 6) {
    TropicalAmplitude amp = evaluate_amplitude(pk_point(k, n));
    rows.push_back({"tropical-catalan", amp.total == Rational(catalan_number(k, n - k)), ""});
    ExactPolyhedron R = root_polytope(k, n, true);
    rows.push_back({"region-facets", (int)amp.regions.size() == facet_count(R), ""});
  }

  bool all = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });

  ordered_json j;
  j["k"] = k;
  j["n"] = n;
  ordered_json checks = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["check"] = r.name;
    row["pass"] = r.pass;
    if (!r.note.empty()) row["note"] = r.note;
    checks.push_back(std::move(row));
  }
  j["checks"] = std::move(checks);
  j["pass"] = all;

  std::ostringstream table, csv;
  table << "verify k=" << k << " n=" << n << "\n";
  csv << "check,pass,note\n";
  for (const auto& r : rows) {
    table << "  " << r.name << ": " << (r.pass ? "pass" : "FAIL");
    if (!r.note.empty()) table << " [" << r.note << "]";
    table << "\n";
    csv << r.name << "," << (r.pass ? "true" : "false") << "," << r.note << "\n";
  }
  table << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  int rc = write_out(cfg, j, table.str(), csv.str());
  if (rc != 0) return rc;
  return all ? 0 : kExitCheckFailure;
}

// ---------------------------------------------------------------------------

void print_limits() {
  std::cout <<
      "recommended desk-scale ranges (one core):\n"
      "  fixed-points    k<=6, n<=24: under a second; n<=30: seconds.\n"
      "                  frame classification included while C(n,k+1) <= 5000.\n"
      "  amplitude --method solutions\n"
      "                  C(n,k) <= 70, e.g. (3,8) or (4,8): seconds.\n"
      "                  (4,9) exact: a few seconds; (4,9) float: milliseconds.\n"
      "  amplitude --method tropical\n"
      "                  (k-1)(n-k-1) <= 6, e.g. (3,7) or (2,9): seconds.\n"
      "                  (3,8) and (4,8): minutes to an hour (hundreds of regions).\n"
      "  polytope        C(n,k) <= 150: facet and lattice data in seconds.\n"
      "                  f-vector needs at most 192 vertices; root (4,8): ~1 minute.\n"
      "                  duality/newton flags included while C(n,k) <= 35.\n"
      "  verify          k<=4, n<=9: seconds to ~1 minute; (5,11): ~1 minute.\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fixed points, amplitudes, and polytopes of planar kinematics"};
  app.require_subcommand(0, 1);
  bool limits = false;
  app.add_flag("--limits", limits, "print recommended (k,n) ranges and runtimes");

  RunConfig cfg;
  cfg.workers = default_workers();
  std::string method = "solutions", which = "root", kin_file, vertices_csv;

  auto add_common = [&](CLI::App* sub, bool k_required) {
    sub->add_option("-k,--rank", cfg.k, "number of rows k")->required(k_required);
    sub->add_option("-n,--points", cfg.n, "number of columns n")->required(k_required);
    sub->add_option("--backend", cfg.backend, "arithmetic backend")
        ->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    sub->add_option("-o,--output", cfg.output, "write the report to a file");
    sub->add_option("--workers", cfg.workers, "worker threads for per-item fan-outs")
        ->check(CLI::Range(1, 256));
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };

  CLI::App* fixed = app.add_subcommand("fixed-points", "enumerate cyclic fixed point classes");
  add_common(fixed, true);

  CLI::App* ampl = app.add_subcommand("amplitude", "evaluate the biadjoint amplitude");
  add_common(ampl, false);
  ampl->add_option("--method", method, "solutions | tropical")
      ->check(CLI::IsMember({"solutions", "tropical"}))
      ->capture_default_str();
  ampl->add_option("--kinematics", kin_file, "kinematic point JSON file (tropical only)");

  CLI::App* poly = app.add_subcommand("polytope", "f-vector, volume, and facet data");
  add_common(poly, true);
  poly->add_option("--which", which, "pi | root")
      ->check(CLI::IsMember({"pi", "root"}))
      ->capture_default_str();
  poly->add_option("--vertices", vertices_csv, "export the vertex set to a CSV file");

  CLI::App* verify = app.add_subcommand("verify", "run the consistency battery");
  add_common(verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (limits) {
    print_limits();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (fixed->parsed() || poly->parsed() || verify->parsed() ||
        (ampl->parsed() && method == "tropical")) {
      if (cfg.backend != "exact") {
        std::cerr << "pktool: this command needs exact zero tests; use --backend exact\n";
        return kExitUsage;
      }
    }
    if (ampl->parsed() && method == "solutions" && !kin_file.empty()) {
      std::cerr << "pktool: --kinematics only applies to --method tropical\n";
      return kExitUsage;
    }

    // amplitude --method tropical may take (k, n) from the kinematics file
    if (ampl->parsed() && method == "tropical" && !kin_file.empty()) {
      pk::KinematicPoint s = pk::kinematic_from_json(slurp(kin_file));
      if ((cfg.k != 0 && cfg.k != s.k()) || (cfg.n != 0 && cfg.n != s.n())) {
        std::cerr << "pktool: -k/-n disagree with the kinematics file\n";
        return kExitUsage;
      }
      cfg.k = s.k();
      cfg.n = s.n();
    }
    if (cfg.k < 2 || cfg.n < cfg.k + 2) {
      std::cerr << "pktool: need 2 <= k <= n-2\n";
      return kExitUsage;
    }

    if (fixed->parsed()) return cmd_fixed_points(cfg);
    if (ampl->parsed())
      return method == "tropical" ? cmd_amplitude_tropical(cfg, kin_file)
                                  : cmd_amplitude_solutions(cfg);
    if (poly->parsed()) return cmd_polytope(cfg, which, vertices_csv);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const pk::Divergent& e) {
    std::cerr << "pktool: tropical integral diverges: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const pk::InvalidGauge& e) {
    std::cerr << "pktool: gauge failure: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pktool: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pktool: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
