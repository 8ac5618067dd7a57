// etaq: exact computations with Dedekind eta-quotients on Gamma_0(N).
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

#include "etaq/etaq.hpp"

using json = nlohmann::ordered_json;
using namespace etaq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;   // negative verdict (NO / not verified)
constexpr int kExitUsage = 2;      // usage, parse, or domain errors
constexpr int kExitInternal = 3;   // broken invariants

int64_t env_max_tuples() {
  const char* v = std::getenv("ETAQ_MAX_TUPLES");
  if (!v) return 5'000'000;
  try {
    return std::stoll(v);
  } catch (...) {
    throw std::invalid_argument("ETAQ_MAX_TUPLES is not an integer");
  }
}

std::string orders_text(const EtaQuotient& f) {
  std::string out;
  for (auto& [c, v] : f.cusp_orders_all().orders) {
    if (!out.empty()) out += ", ";
    out += to_string(c) + ": " + to_string(v);
  }
  return out;
}

json orders_json(const EtaQuotient& f) {
  json arr = json::array();
  for (auto& [c, v] : f.cusp_orders_all().orders)
    arr.push_back({{"cusp", to_string(c)}, {"order", to_string(v)}});
  return arr;
}

void cmd_check(const std::string& spec) {
  EtaQuotient f = EtaQuotient::parse(spec);
  auto [c1, c2] = f.newman_conditions();
  std::cout << "quotient     " << f.to_string() << "\n";
  std::cout << "weight       " << to_string(f.weight()) << "\n";
  std::cout << "sum d*r      " << (c1 ? "0" : "nonzero") << " (mod 24)\n";
  std::cout << "sum (N/d)*r  " << (c2 ? "0" : "nonzero") << " (mod 24)\n";
  if (c1 && c2 && is_integral(f.weight())) {
    NebentypusChar chi = f.nebentypus();
    std::cout << "character    " << chi.describe() << "\n";
    std::cout << "cusp orders  " << orders_text(f) << "\n";
  }
  std::cout << "class        " << to_string(f.classify()) << "\n";
}

void cmd_expand(const std::string& spec, int64_t n) {
  EtaQuotient f = EtaQuotient::parse(spec);
  std::cout << f.q_expansion(n).to_text();
}

void cmd_cusps(int64_t N) {
  for (const Cusp& c : cusp_reps(N)) std::cout << to_string(c) << "\n";
}

void cmd_profile(int64_t N, const std::string& format) {
  LevelProfile lp = LevelProfile::compute(N);
  auto fact_text = [&] {
    std::string out;
    for (auto& [p, e] : lp.factorization) {
      if (!out.empty()) out += " * ";
      out += std::to_string(p);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? std::string("1") : out;
  };
  if (format == "json") {
    json j;
    j["level"] = lp.level;
    j["factorization"] = json::array();
    for (auto& [p, e] : lp.factorization) j["factorization"].push_back({p, e});
    j["divisors"] = lp.divisors;
    j["cusps"] = json::array();
    for (auto& c : lp.cusp_reps) j["cusps"].push_back(to_string(c));
    j["index"] = lp.index_mu;
    j["eps2"] = lp.eps2;
    j["eps3"] = lp.eps3;
    j["eps_inf"] = lp.eps_inf;
    j["genus"] = lp.genus;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "level          " << lp.level << "\n";
  std::cout << "factorization  " << fact_text() << "\n";
  std::cout << "divisors      ";
  for (int64_t d : lp.divisors) std::cout << " " << d;
  std::cout << "\n";
  std::cout << "cusps         ";
  for (auto& c : lp.cusp_reps) std::cout << " " << to_string(c);
  std::cout << "\n";
  std::cout << "index          " << lp.index_mu << "\n";
  std::cout << "eps2           " << lp.eps2 << "\n";
  std::cout << "eps3           " << lp.eps3 << "\n";
  std::cout << "eps_inf        " << lp.eps_inf << "\n";
  std::cout << "genus          " << lp.genus << "\n";
}

int cmd_exists(const std::vector<int64_t>& args) {
  ExistenceVerdict v = args.size() == 2 ? exists_prime_level(args[0], args[1])
                                        : exists_semiprime_level(args[0], args[1], args[2]);
  if (v.exists) {
    std::cout << "YES " << v.witness->to_string() << "\n";
    return kExitOk;
  }
  std::cout << "NO (" << to_string(v.reason) << ")\n";
  return kExitNegative;
}

void cmd_enumerate(int64_t N, int64_t k, const std::string& space, const std::string& format,
                   int jobs) {
  SpaceKind kind = space == "cusp" ? SpaceKind::cusp : SpaceKind::holomorphic;
  SearchOptions opt;
  opt.max_tuples = env_max_tuples();
  opt.jobs = jobs;
  SearchReport rep = enumerate_eta_quotients(N, k, kind, opt);
  if (format == "json") {
    json j;
    j["level"] = rep.level;
    j["weight"] = rep.weight;
    j["space"] = to_string(rep.space_kind);
    j["found"] = json::array();
    for (auto& f : rep.found) {
      json orders = json::array();
      for (auto& [c, v] : f.cusp_orders_all().orders) orders.push_back(to_string(v));
      j["found"].push_back({{"quotient", f.to_string()}, {"orders", orders}});
    }
    j["independent_count"] = rep.independent_count;
    j["space_dim"] = rep.space_dim;
    j["spans"] = rep.spans;
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (auto& f : rep.found) std::cout << f.to_string() << "\n";
  std::cout << "found " << rep.found.size() << ", independent " << rep.independent_count
            << ", dim " << rep.space_dim << (rep.spans ? ", spans" : ", does not span") << "\n";
}

struct DecomposeArgs {
  std::string target_path;
  std::string curve_spec;
  int64_t conductor = 0;
  int64_t level = 0;
  std::string multiplier;
  std::string basis_path;
  int64_t max_weight = 16;
  int64_t margin = 10;
  int64_t n_max = 0;
  std::string format = "text";
  int jobs = 1;
};

TargetForm decompose_target(const DecomposeArgs& a) {
  if (!a.target_path.empty()) {
    if (a.level < 1) throw std::invalid_argument("--level is required with a target file");
    return load_target(a.target_path, a.level);
  }
  if (a.curve_spec.empty()) throw std::invalid_argument("need a target file or --curve");
  if (a.conductor < 1) throw std::invalid_argument("--conductor is required with --curve");
  std::vector<Int> cs;
  std::istringstream is(a.curve_spec);
  std::string tok;
  while (std::getline(is, tok, ',')) cs.push_back(parse_int(tok));
  if (cs.size() != 5) throw std::invalid_argument("--curve needs a1,a2,a3,a4,a6");
  int64_t n_max = a.n_max;
  if (n_max == 0) n_max = std::max<int64_t>(60, sturm_bound(a.conductor, a.max_weight) + 1 + a.margin);
  return curve_coefficients({cs[0], cs[1], cs[2], cs[3], cs[4], a.conductor}, n_max);
}

DecompositionResult run_decompose(const DecomposeArgs& a) {
  TargetForm target = decompose_target(a);
  DecomposeOptions opt;
  opt.max_weight = a.max_weight;
  opt.search.max_tuples = env_max_tuples();
  opt.search.jobs = a.jobs;
  if (!a.multiplier.empty()) opt.multiplier_override = EtaQuotient::parse(a.multiplier);
  if (!a.basis_path.empty()) {
    std::ifstream in(a.basis_path);
    if (!in) throw std::invalid_argument("cannot open basis file: " + a.basis_path);
    std::vector<EtaQuotient> basis;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      basis.push_back(EtaQuotient::parse(line));
    }
    opt.basis_override = std::move(basis);
  }
  return escalate_and_decompose(target, opt);
}

void print_decomposition(const DecompositionResult& res, const std::string& format) {
  auto reduced = res.reduced_quotients();
  if (format == "json") {
    json j;
    j["stage_weight"] = res.stage_weight;
    j["multiplier"] = res.multiplier ? json(res.multiplier->to_string()) : json(nullptr);
    j["entries"] = json::array();
    for (size_t i = 0; i < res.basis.size(); ++i)
      j["entries"].push_back(
          {{"coefficient", to_string(res.coefficients[i])}, {"quotient", reduced[i].to_string()}});
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "stage weight " << res.stage_weight << "\n";
  if (res.multiplier) std::cout << "multiplier   " << res.multiplier->to_string() << "\n";
  for (size_t i = 0; i < res.basis.size(); ++i)
    std::cout << to_string(res.coefficients[i]) << "  " << reduced[i].to_string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic with Dedekind eta-quotients on Gamma_0(N)"};
  app.require_subcommand(1);

  std::string quotient_spec, format = "text", space = "cusp";
  int64_t level = 0, weight = 0, n_terms = 10;
  int jobs = 1;
  std::vector<int64_t> exists_args;
  DecomposeArgs dargs;

  auto* check = app.add_subcommand("check", "modularity conditions, character, cusp orders");
  check->add_option("quotient", quotient_spec, "eta-quotient as `N; d1:r1, d2:r2, ...`")
      ->required();

  auto* expand = app.add_subcommand("expand", "q-expansion in the series text format");
  expand->add_option("quotient", quotient_spec)->required();
  expand->add_option("terms", n_terms, "integral coefficients past the lead")->check(CLI::PositiveNumber);

  auto* cusps = app.add_subcommand("cusps", "cusp representatives of Gamma_0(N)");
  cusps->add_option("level", level)->required()->check(CLI::PositiveNumber);

  auto* profile = app.add_subcommand("profile", "invariants of Gamma_0(N)");
  profile->add_option("level", level)->required()->check(CLI::PositiveNumber);
  profile->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* dim = app.add_subcommand("dim", "dim S_k(Gamma_0(N)) for even k");
  dim->add_option("level", level)->required()->check(CLI::PositiveNumber);
  dim->add_option("weight", weight)->required();

  auto* sturm = app.add_subcommand("sturm", "Sturm bound for M_k(Gamma_0(N))");
  sturm->add_option("level", level)->required()->check(CLI::PositiveNumber);
  sturm->add_option("weight", weight)->required();

  auto* exists = app.add_subcommand("exists", "eta-quotients in M_k(Gamma_1(p)) or M_k(Gamma_1(pq))");
  exists->add_option("args", exists_args, "p [q] k")->expected(2, 3);

  auto* enumerate = app.add_subcommand("enumerate", "all eta-quotients in the space");
  enumerate->add_option("--level", level)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--weight", weight)->required();
  enumerate->add_option("--space", space)->check(CLI::IsMember({"cusp", "holo"}));
  enumerate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  enumerate->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  auto add_decompose_options = [&](CLI::App* cmd) {
    cmd->add_option("target", dargs.target_path, "coefficient file (`n a_n` lines)");
    cmd->add_option("--level", dargs.level, "level of a file target");
    cmd->add_option("--curve", dargs.curve_spec, "a1,a2,a3,a4,a6");
    cmd->add_option("--conductor", dargs.conductor);
    cmd->add_option("--multiplier", dargs.multiplier, "eta-quotient text form");
    cmd->add_option("--basis", dargs.basis_path, "file listing basis quotients");
    cmd->add_option("--max-weight", dargs.max_weight);
    cmd->add_option("--margin", dargs.margin)->check(CLI::NonNegativeNumber);
    cmd->add_option("--n-max", dargs.n_max);
    cmd->add_option("--format", dargs.format)->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--jobs", dargs.jobs)->check(CLI::PositiveNumber);
  };
  auto* decompose = app.add_subcommand("decompose", "express a weight-2 target in eta-quotients");
  add_decompose_options(decompose);
  auto* verify = app.add_subcommand("verify", "decompose, then re-verify exactly past the bound");
  add_decompose_options(verify);

  try {
    app.parse(argc, argv);

    if (check->parsed()) {
      cmd_check(quotient_spec);
    } else if (expand->parsed()) {
      cmd_expand(quotient_spec, n_terms);
    } else if (cusps->parsed()) {
      cmd_cusps(level);
    } else if (profile->parsed()) {
      cmd_profile(level, format);
    } else if (dim->parsed()) {
      std::cout << dim_cusp_forms(level, weight) << "\n";
    } else if (sturm->parsed()) {
      std::cout << sturm_bound(level, weight) << "\n";
    } else if (exists->parsed()) {
      return cmd_exists(exists_args);
    } else if (enumerate->parsed()) {
      cmd_enumerate(level, weight, space, format, jobs);
    } else if (decompose->parsed()) {
      print_decomposition(run_decompose(dargs), dargs.format);
    } else if (verify->parsed()) {
      DecompositionResult res = run_decompose(dargs);
      bool ok = verify_decomposition(res, dargs.margin);
      print_decomposition(res, dargs.format);
      std::cout << (ok ? "VERIFIED" : "NOT VERIFIED") << " (margin " << dargs.margin << ")\n";
      return ok ? kExitOk : kExitNegative;
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  } catch (const DecompositionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error are handled above; what remains
    // here is a broken internal invariant
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
