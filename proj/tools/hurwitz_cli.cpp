// Command-line front end. Everything mathematical happens behind the C API
// in libhurwitz; this file only parses flags, shuttles strings and maps
// outcomes onto exit codes:
//   0 clean result, 1 mathematical negative, 2 usage or input error,
//   3 budget exceeded / unknown verdicts / crosscheck mismatch.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurwitz.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct GlobalOpts {
  std::uint64_t budget_nodes = 100000000;  // 1e8 search nodes
  double budget_seconds = 300;
  int jobs = 1;
  std::string format = "text";

  hz_budget budget() const { return {budget_nodes, budget_seconds}; }
  bool json() const { return format == "json"; }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { hz_string_free(ptr); }
  std::string str() const { return ptr != nullptr ? std::string(ptr) : std::string(); }
};

struct OwnedDatum {
  hz_datum* ptr = nullptr;
  ~OwnedDatum() { hz_datum_free(ptr); }
};

struct OwnedWitness {
  hz_witness* ptr = nullptr;
  ~OwnedWitness() { hz_witness_free(ptr); }
};

void apply_env_overrides(GlobalOpts& opts) {
  if (const char* nodes = std::getenv("HURWITZ_BUDGET_NODES")) {
    opts.budget_nodes = std::strtoull(nodes, nullptr, 10);
  }
  if (const char* seconds = std::getenv("HURWITZ_BUDGET_SECONDS")) {
    opts.budget_seconds = std::strtod(seconds, nullptr);
  }
}

int parse_or_complain(const std::string& line, OwnedDatum& datum) {
  char err[256] = {};
  hz_status status = hz_datum_parse(line.c_str(), &datum.ptr, err, sizeof err);
  if (status != HZ_OK) {
    std::cerr << "error: " << hz_status_name(status) << ": " << err << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

// batch severity: usage errors dominate, then budget trouble, then negatives
int worse(int a, int b) {
  auto rank = [](int code) {
    switch (code) {
      case kExitUsage: return 3;
      case kExitBudget: return 2;
      case kExitNegative: return 1;
      default: return 0;
    }
  };
  return rank(a) >= rank(b) ? a : b;
}

std::vector<std::string> gather_lines(const std::vector<std::string>& args) {
  if (!args.empty()) return args;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(std::cin, line)) {
    auto hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

int run_check(const GlobalOpts& global, const std::vector<std::string>& args, bool fallback) {
  int exit_code = kExitOk;
  for (const std::string& line : gather_lines(args)) {
    OwnedDatum datum;
    if (int rc = parse_or_complain(line, datum); rc != kExitOk) {
      exit_code = worse(exit_code, rc);
      continue;
    }
    hz_budget budget = global.budget();
    OwnedString json;
    hz_status status =
        hz_classify(datum.ptr, fallback ? &budget : nullptr, global.jobs, &json.ptr);
    if (status != HZ_OK) {
      std::cerr << "error: " << hz_status_name(status) << "\n";
      exit_code = worse(exit_code, kExitUsage);
      continue;
    }
    nlohmann::json verdict = nlohmann::json::parse(json.str());
    if (global.json()) {
      std::cout << json.str() << "\n";
    } else {
      std::cout << verdict.at("datum").get<std::string>() << "\n"
                << "verdict: " << verdict.at("verdict").get<std::string>() << "\n"
                << "reason: " << verdict.at("reason").get<std::string>() << "\n";
      for (const auto& family : verdict.at("families")) {
        std::cout << "family: " << family.at("id").get<int>();
        for (const auto& [key, value] : family.at("params").items()) {
          std::cout << " " << key << "=" << value.get<int>();
        }
        std::cout << "\n";
      }
      if (verdict.contains("witness") && verdict.at("witness").is_array()) {
        int index = 1;
        for (const auto& theta : verdict.at("witness")) {
          std::cout << "theta" << index++ << "=" << theta.get<std::string>() << "\n";
        }
      }
    }
    std::string kind = verdict.at("verdict").get<std::string>();
    if (kind == "exceptional") exit_code = worse(exit_code, kExitNegative);
    if (kind == "unknown") exit_code = worse(exit_code, kExitBudget);
  }
  return exit_code;
}

int run_realize(const GlobalOpts& global, const std::vector<std::string>& args) {
  int exit_code = kExitOk;
  for (const std::string& line : gather_lines(args)) {
    OwnedDatum datum;
    if (int rc = parse_or_complain(line, datum); rc != kExitOk) {
      exit_code = worse(exit_code, rc);
      continue;
    }
    hz_budget budget = global.budget();
    OwnedWitness witness;
    hz_status status = hz_realize(datum.ptr, &budget, global.jobs, &witness.ptr);
    switch (status) {
      case HZ_OK: {
        OwnedString text;
        if (global.json()) {
          hz_witness_json(witness.ptr, &text.ptr);
          std::cout << text.str() << "\n";
        } else {
          hz_witness_text(witness.ptr, &text.ptr);
          std::cout << text.str();
        }
        break;
      }
      case HZ_NOT_REALIZABLE:
        std::cout << (global.json() ? "{\"verdict\":\"not-realizable\"}" : "not realizable")
                  << "\n";
        exit_code = worse(exit_code, kExitNegative);
        break;
      case HZ_BUDGET_EXCEEDED:
        std::cout << (global.json() ? "{\"verdict\":\"unknown\"}" : "budget exceeded") << "\n";
        exit_code = worse(exit_code, kExitBudget);
        break;
      default:
        std::cerr << "error: " << hz_status_name(status) << "\n";
        exit_code = worse(exit_code, kExitUsage);
        break;
    }
  }
  return exit_code;
}

int run_census(const GlobalOpts& global, int degree, int branch_points, bool len2, int genus,
               int genus_min, int genus_max, double total_seconds, const std::string& out_path,
               bool json_summary) {
  hz_census_opts opts = {};
  opts.degree = degree;
  opts.branch_points = branch_points;
  opts.require_length2 = len2 ? 1 : 0;
  opts.genus_min = genus >= 0 ? genus : genus_min;
  opts.genus_max = genus >= 0 ? genus : genus_max;
  opts.per_datum = global.budget();
  opts.total_seconds = total_seconds;
  opts.jobs = global.jobs;

  hz_census* census = nullptr;
  char err[256] = {};
  hz_status status = hz_census_run(&opts, &census, err, sizeof err);
  if (status != HZ_OK) {
    std::cerr << "error: " << hz_status_name(status) << ": " << err << "\n";
    return kExitUsage;
  }
  OwnedString text;
  bool as_json = json_summary || global.json();
  if (as_json) {
    hz_census_json(census, &text.ptr);
  } else {
    hz_census_text(census, &text.ptr);
  }
  std::string payload = text.str();
  if (as_json) payload += "\n";
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      hz_census_free(census);
      return kExitUsage;
    }
    file << payload;
  }
  bool dirty = hz_census_unknown(census) > 0 || hz_census_mismatches(census) > 0;
  hz_census_free(census);
  return dirty ? kExitBudget : kExitOk;
}

int run_crosscheck(const GlobalOpts& global, int dmax, int branch_points) {
  std::uint64_t mismatches = 0;
  std::uint64_t unknown = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (int d = 2; d <= dmax; ++d) {
    hz_census_opts opts = {};
    opts.degree = d;
    opts.branch_points = branch_points;
    opts.require_length2 = 1;
    opts.genus_min = -1;
    opts.genus_max = -1;
    opts.per_datum = global.budget();
    opts.jobs = global.jobs;
    hz_census* census = nullptr;
    char err[256] = {};
    hz_status status = hz_census_run(&opts, &census, err, sizeof err);
    if (status != HZ_OK) {
      std::cerr << "error: d=" << d << ": " << hz_status_name(status) << ": " << err << "\n";
      return kExitUsage;
    }
    mismatches += hz_census_mismatches(census);
    unknown += hz_census_unknown(census);
    OwnedString json;
    hz_census_json(census, &json.ptr);
    nlohmann::json parsed = nlohmann::json::parse(json.str());
    for (const auto& row : parsed.at("mismatches")) {
      rows.push_back(row);
      if (!global.json()) std::cout << "mismatch: " << row.get<std::string>() << "\n";
    }
    hz_census_free(census);
  }
  if (global.json()) {
    std::cout << nlohmann::json{{"dmax", dmax},
                                {"n", branch_points},
                                {"mismatches", rows},
                                {"unknown", unknown}}
                     .dump()
              << "\n";
  } else {
    std::cout << "crosscheck dmax=" << dmax << " n=" << branch_points
              << " mismatches=" << mismatches << " unknown=" << unknown << "\n";
  }
  return (mismatches > 0 || unknown > 0) ? kExitBudget : kExitOk;
}

int run_move(const std::vector<std::string>& args) {
  if (args.size() < 2) {
    std::cerr << "error: move needs a descriptor and a datum line\n";
    return kExitUsage;
  }
  std::string spec;
  for (size_t i = 0; i + 1 < args.size(); ++i) {
    if (!spec.empty()) spec += ' ';
    spec += args[i];
  }
  OwnedDatum datum;
  if (int rc = parse_or_complain(args.back(), datum); rc != kExitOk) return rc;
  OwnedString target;
  OwnedString fragment;
  char err[256] = {};
  hz_status status =
      hz_move_apply(datum.ptr, spec.c_str(), &target.ptr, &fragment.ptr, err, sizeof err);
  if (status != HZ_OK) {
    std::cerr << "error: " << hz_status_name(status) << ": " << err << "\n";
    return kExitUsage;
  }
  std::cout << target.str() << "\n";
  if (!fragment.str().empty()) std::cout << fragment.str();
  return kExitOk;
}

int run_dessin(const GlobalOpts& global, const std::string& witness_path, int degree) {
  std::ifstream file(witness_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot read " << witness_path << "\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  OwnedWitness witness;
  char err[256] = {};
  hz_status status = hz_witness_parse(buffer.str().c_str(), degree, &witness.ptr, err, sizeof err);
  if (status != HZ_OK) {
    std::cerr << "error: " << hz_status_name(status) << ": " << err << "\n";
    return kExitUsage;
  }
  OwnedString out;
  status = hz_dessin_from_witness(witness.ptr, global.json() ? 1 : 0, &out.ptr);
  if (status != HZ_OK) {
    std::cerr << "error: " << hz_status_name(status) << "\n";
    return kExitUsage;
  }
  std::cout << out.str();
  if (global.json()) std::cout << "\n";
  return kExitOk;
}

int run_prime_check(const GlobalOpts& global, int degree, int branch_points) {
  hz_budget budget = global.budget();
  int holds = 0;
  hz_status status =
      hz_prime_degree_check(degree, branch_points, &budget, global.jobs, &holds);
  if (status != HZ_OK) {
    std::cerr << "error: " << hz_status_name(status) << "\n";
    return kExitUsage;
  }
  if (global.json()) {
    std::cout << "{\"d\":" << degree << ",\"n\":" << branch_points
              << ",\"holds\":" << (holds ? "true" : "false") << "}\n";
  } else {
    std::cout << (holds ? "true" : "false") << "\n";
  }
  return holds ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz existence problem toolkit: classify, realize and census candidate "
               "surface branched-cover data"};
  app.require_subcommand(1);

  GlobalOpts global;
  apply_env_overrides(global);
  app.add_option("--budget-nodes", global.budget_nodes, "search node budget per datum");
  app.add_option("--budget-seconds", global.budget_seconds, "wall-clock budget per datum");
  app.add_option("--jobs", global.jobs, "worker threads (never changes any output byte)");
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> check_lines;
  bool check_fallback = false;
  CLI::App* check = app.add_subcommand("check", "classifier verdict for datum lines");
  check->add_option("datum", check_lines, "datum lines (stdin if omitted)");
  check->add_flag("--fallback", check_fallback, "let the oracle settle out-of-scope data");

  std::vector<std::string> realize_lines;
  CLI::App* realize = app.add_subcommand("realize", "search for a monodromy witness");
  realize->add_option("datum", realize_lines, "datum lines (stdin if omitted)");

  int census_d = 0, census_n = 3, census_genus = -1, census_gmin = -1, census_gmax = -1;
  bool census_len2 = false, census_json = false;
  double census_total_seconds = 0;
  std::string census_out;
  CLI::App* census = app.add_subcommand("census", "enumerate and decide all candidate data");
  census->add_option("--d", census_d, "degree")->required();
  census->add_option("--n", census_n, "branch points")->required();
  census->add_flag("--len2", census_len2, "require a length-2 partition");
  census->add_option("--genus", census_genus, "keep only this cover genus");
  census->add_option("--genus-min", census_gmin, "minimum cover genus");
  census->add_option("--genus-max", census_gmax, "maximum cover genus");
  census->add_option("--total-seconds", census_total_seconds, "cap for the whole census run");
  census->add_option("--out", census_out, "write output to a file instead of stdout");
  census->add_flag("--summary", census_json, "emit the JSON summary instead of datum lines");

  int cross_dmax = 0, cross_n = 3;
  CLI::App* cross = app.add_subcommand("crosscheck", "classifier vs oracle over a degree range");
  cross->add_option("--dmax", cross_dmax, "largest degree")->required();
  cross->add_option("--n", cross_n, "branch points")->required();

  std::vector<std::string> move_args;
  CLI::App* move = app.add_subcommand("move", "apply a reduction move to a datum");
  move->add_option("args", move_args, "MOVE key=value... datum-line")->expected(-1);

  std::string dessin_witness;
  int dessin_degree = 0;
  CLI::App* dessin = app.add_subcommand("dessin", "dessin d'enfant from a witness file");
  dessin->add_option("--from-witness", dessin_witness, "witness file")->required();
  dessin->add_option("--degree", dessin_degree, "degree hint when fixed points hide it");

  int prime_d = 0, prime_n = 3;
  CLI::App* prime = app.add_subcommand("prime-check", "exceptional-free check at prime degree");
  prime->add_option("--d", prime_d, "prime degree")->required();
  prime->add_option("--n", prime_n, "branch points")->required();

  // global flags may be given after the subcommand as well
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(global, check_lines, check_fallback);
    if (realize->parsed()) return run_realize(global, realize_lines);
    if (census->parsed()) {
      return run_census(global, census_d, census_n, census_len2, census_genus, census_gmin,
                        census_gmax, census_total_seconds, census_out, census_json);
    }
    if (cross->parsed()) return run_crosscheck(global, cross_dmax, cross_n);
    if (move->parsed()) return run_move(move_args);
    if (dessin->parsed()) return run_dessin(global, dessin_witness, dessin_degree);
    if (prime->parsed()) return run_prime_check(global, prime_d, prime_n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
