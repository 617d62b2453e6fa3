#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "spinfock/gw.hpp"
#include "spinfock/hurwitz.hpp"
#include "spinfock/partitions.hpp"
#include "spinfock/verify.hpp"

using json = nlohmann::ordered_json;
using namespace spinfock;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;

std::vector<long> parse_parts(const std::string& csv) {
  std::vector<long> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stol(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::stol(cur));
  return out;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << text << "\n";
  }
}

json series_to_json(const Series<Rat>& s) {
  json terms = json::array();
  for (auto& [e, c] : s.terms()) {
    json term;
    term["exp"] = e;
    term["coeff"] = c.str_frac();
    terms.push_back(term);
  }
  json out;
  out["vars"] = s.vars()->names;
  out["terms"] = terms;
  return out;
}

int cmd_hurwitz(long degree, const std::string& profile_csv, long cycles, long genus, bool has_mixed,
                const std::string& mixed_csv, bool connected, bool include_degree_zero,
                const std::string& out_path) {
  json req;
  req["degree"] = degree;
  if (degree < 0) {
    std::cerr << "error: the degree must be nonnegative\n";
    return kExitInvalid;
  }
  if (has_mixed) {
    std::vector<long> ks = parse_parts(mixed_csv);
    for (long k : ks)
      if (k < 0) {
        std::cerr << "error: mixed insertion indices must be nonnegative\n";
        return kExitInvalid;
      }
    req["mixed"] = ks;
    req["include_degree_zero"] = include_degree_zero;
    Rat value = mixed_hurwitz(degree, ks, include_degree_zero);
    json j;
    j["request"] = req;
    j["value"] = value.str_frac();
    emit(j, out_path);
    return kExitOk;
  }
  std::vector<long> parts = parse_parts(profile_csv);
  Partition mu;
  try {
    mu = Partition(parts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (!mu.is_odd()) {
    std::cerr << "error: the ramification profile must have odd parts\n";
    return kExitInvalid;
  }
  if (cycles <= 0 || cycles % 2 != 0) {
    std::cerr << "error: --cycles must be a positive even integer\n";
    return kExitInvalid;
  }
  req["profile"] = parts;
  req["cycles"] = cycles;
  req["genus"] = genus;
  req["connected"] = connected;
  json j;
  j["request"] = req;
  auto padded = pad_to_degree(mu, degree);
  if (!padded.has_value()) {
    j["value"] = Rat(0).str_frac();
    j["reason"] = "profile exceeds degree";
    emit(j, out_path);
    return kExitOk;
  }
  HurwitzInfo info;
  Rat value = single_hurwitz(genus, cycles, padded->first, connected, &info);
  value *= padded->second * aut_order(mu) / aut_order(padded->first);
  j["value"] = value.str_frac();
  j["connected"] = connected;
  j["b"] = info.b;
  j["g"] = genus;
  if (!info.feasible) j["reason"] = "ramification data infeasible";
  emit(j, out_path);
  return kExitOk;
}

int cmd_gw(long degree, const std::string& ins_csv, const std::string& ins_inf_csv, const std::string& route,
           const std::string& t_str, int u_order, int z_order, int q_order, bool connected,
           bool include_degree_zero, const std::string& out_path) {
  if (degree < 0) {
    std::cerr << "error: the degree must be nonnegative\n";
    return kExitInvalid;
  }
  std::vector<long> ks = parse_parts(ins_csv);
  std::vector<long> ls = parse_parts(ins_inf_csv);
  for (long k : ks)
    if (k < 0) {
      std::cerr << "error: insertion exponents must be nonnegative\n";
      return kExitInvalid;
    }
  json req;
  req["degree"] = degree;
  req["insertions"] = ks;
  json j;
  if (route.empty() || route == "recursion") {
    // stationary pipeline (exact value)
    if (!ls.empty()) {
      std::cerr << "error: stationary requests take insertions over zero only\n";
      return kExitInvalid;
    }
    req["route"] = route.empty() ? "stationary" : route;
    req["connected"] = connected;
    req["include_degree_zero"] = include_degree_zero;
    Rat value;
    if (route == "recursion") {
      if (ks.size() != 1 || connected || include_degree_zero) {
        std::cerr << "error: the recursion route serves one-point disconnected requests\n";
        return kExitInvalid;
      }
      auto u = one_point_series(degree).u_series;
      long k = ks[0];
      value = pow2(degree) / (factorial(degree) * factorial(degree)) * stationary_weight(k) *
              u.taylor_coeff(2 * k + 1);
    } else if (connected) {
      if (include_degree_zero) {
        std::cerr << "error: connected values are degree-zero free\n";
        return kExitInvalid;
      }
      value = stationary_connected(degree, ks);
    } else {
      value = stationary_disconnected(degree, ks, include_degree_zero);
    }
    j["request"] = req;
    j["value"] = value.str_frac();
    emit(j, out_path);
    return kExitOk;
  }
  // equivariant series routes
  Rat t;
  try {
    t = Rat::parse(t_str);
  } catch (const std::exception&) {
    std::cerr << "error: --t expects a rational p/q\n";
    return kExitInvalid;
  }
  if (t.is_zero()) {
    std::cerr << "error: the equivariant routes need a nonzero parameter\n";
    return kExitInfeasible;
  }
  GwRequest greq;
  greq.d = degree;
  greq.n = static_cast<int>(ks.size());
  greq.m = static_cast<int>(ls.size());
  greq.t = t;
  greq.z_order = z_order;
  greq.u_order = u_order;
  req["insertions_infinity"] = ls;
  req["route"] = route;
  req["t"] = t.str_frac();
  req["z_order"] = z_order;
  req["u_order"] = u_order;
  Series<Rat> series;
  if (route == "localization") {
    series = localization_series(greq);
  } else if (route == "quadratic_vev") {
    series = quadratic_series(greq);
  } else if (route == "single_vev") {
    if (q_order < 0) q_order = static_cast<int>(degree);
    req["q_order"] = q_order;
    series = single_series(greq, q_order);
  } else {
    std::cerr << "error: unknown route " << route << "\n";
    return kExitInvalid;
  }
  j["request"] = req;
  j["series"] = series_to_json(series);
  emit(j, out_path);
  return kExitOk;
}

int cmd_table(long max_degree, bool csv, const std::string& out_path) {
  if (max_degree < 1 || max_degree > 40) {
    std::cerr << "error: --max-degree must be between 1 and 40\n";
    return kExitInvalid;
  }
  std::vector<std::map<long, Rat>> rows(static_cast<size_t>(max_degree));
  std::vector<char> half_flag(static_cast<size_t>(max_degree), 0);
  parallel_for(static_cast<size_t>(max_degree), [&](size_t i) {
    auto u = one_point_series(static_cast<long>(i) + 1).u_series;
    for (auto& [e, c] : u.sinh_decompose()) {
      if (e % 2 != 0) {
        half_flag[i] = 1;  // half-integer frequency: report rather than fold
        rows[i][e] = c;
      } else {
        rows[i][e / 2] = c;
      }
    }
  });
  if (csv) {
    std::ostringstream os;
    os << "degree,frequency,coefficient\n";
    for (size_t i = 0; i < rows.size(); ++i)
      for (auto& [e, c] : rows[i]) os << (i + 1) << "," << e << "," << c.str_frac() << "\n";
    std::cout << os.str();
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      f << os.str();
    }
    return kExitOk;
  }
  json j;
  json table = json::object();
  for (size_t i = 0; i < rows.size(); ++i) {
    json row = json::object();
    for (auto& [e, c] : rows[i]) row[std::to_string(e)] = c.str_frac();
    if (half_flag[i]) row["half_integer_frequencies"] = true;
    table[std::to_string(i + 1)] = row;
  }
  j["table"] = table;
  emit(j, out_path);
  return kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& level, const std::string& out_path) {
  bool full = (level == "full");
  if (!full && level != "quick") {
    std::cerr << "error: --level must be quick or full\n";
    return kExitInvalid;
  }
  std::vector<std::string> suites;
  if (suite == "all" || suite.empty()) {
    suites = verify_suites();
  } else {
    bool known = false;
    for (auto& s : verify_suites()) known |= (s == suite);
    if (!known) {
      std::cerr << "error: unknown suite " << suite << "\n";
      return kExitInvalid;
    }
    suites = {suite};
  }
  bool all_pass = true;
  json out;
  json results = json::array();
  for (auto& name : suites) {
    auto rep = run_suite(name, full);
    for (auto& c : rep.checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << name << ": " << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
      json item;
      item["suite"] = name;
      item["check"] = c.name;
      item["pass"] = c.pass;
      if (!c.detail.empty()) item["detail"] = c.detail;
      results.push_back(item);
      all_pass = all_pass && c.pass;
    }
  }
  out["level"] = full ? "full" : "quick";
  out["results"] = results;
  out["pass"] = all_pass;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << out.dump(2) << "\n";
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in the neutral-fermion operator formalism"};
  app.require_subcommand(1);

  // hurwitz
  auto* hur = app.add_subcommand("hurwitz", "spin Hurwitz numbers with completed cycles");
  long h_degree = 0, h_cycles = 2, h_genus = 0;
  std::string h_profile, h_mixed, h_out;
  bool h_connected = false, h_dz = false;
  hur->add_option("--degree", h_degree, "covering degree")->required();
  hur->add_option("--profile", h_profile, "comma-separated odd profile over the marked point");
  hur->add_option("--cycles", h_cycles, "even cycle index r (insertions are (r+1)-cycles)");
  hur->add_option("--genus", h_genus, "source genus");
  auto* mixed_opt = hur->add_option("--mixed", h_mixed, "comma-separated k-list for mixed insertions (2k+1)");
  hur->add_flag("--connected", h_connected, "connected covers");
  hur->add_flag("--include-degree-zero", h_dz, "keep degree-zero contributions (mixed requests)");
  hur->add_option("--out", h_out, "write the JSON result to a file");

  // gw
  auto* gw = app.add_subcommand("gw", "stationary and equivariant invariants");
  long g_degree = 0;
  std::string g_ins, g_ins_inf, g_route, g_t = "1", g_out;
  int g_uord = 3, g_zord = 4, g_qord = -1;
  bool g_connected = false, g_dz = false;
  gw->add_option("--degree", g_degree, "degree")->required();
  gw->add_option("--insertions", g_ins, "comma-separated descendent exponents over zero");
  gw->add_option("--insertions-infinity", g_ins_inf, "comma-separated descendent exponents over infinity");
  gw->add_option("--route", g_route, "localization | quadratic_vev | single_vev | recursion");
  gw->add_option("--t", g_t, "equivariant parameter as p/q");
  gw->add_option("--u-order", g_uord, "retained genus order");
  gw->add_option("--z-order", g_zord, "retained order per point variable");
  gw->add_option("--q-order", g_qord, "retained degree order (single_vev)");
  gw->add_flag("--connected", g_connected, "connected invariants");
  gw->add_flag("--include-degree-zero", g_dz, "keep degree-zero components");
  gw->add_option("--out", g_out, "write the JSON result to a file");

  // table
  auto* tab = app.add_subcommand("table", "one-point stationary generating rows");
  long t_max = 8;
  bool t_csv = false;
  std::string t_out;
  tab->add_option("--max-degree", t_max, "largest degree");
  tab->add_flag("--csv", t_csv, "emit CSV instead of JSON");
  tab->add_option("--out", t_out, "write the result to a file");

  // verify
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string v_suite = "all", v_level = "quick", v_out;
  ver->add_option("--suite", v_suite, "suite name or 'all'");
  ver->add_option("--level", v_level, "quick | full");
  ver->add_option("--out", v_out, "write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (hur->parsed())
      return cmd_hurwitz(h_degree, h_profile, h_cycles, h_genus, mixed_opt->count() > 0, h_mixed, h_connected,
                         h_dz, h_out);
    if (gw->parsed())
      return cmd_gw(g_degree, g_ins, g_ins_inf, g_route, g_t, g_uord, g_zord, g_qord, g_connected, g_dz, g_out);
    if (tab->parsed()) return cmd_table(t_max, t_csv, t_out);
    if (ver->parsed()) return cmd_verify(v_suite, v_level, v_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitInvalid;
}
