// Command-line front end. Everything protocol-related happens behind the
// C API in ppkex/ppkex.h; this file only parses arguments, shuffles JSON
// documents between files and the library, and reports errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppkex/ppkex.h"

using nlohmann::json;

namespace {

struct StringDeleter {
  void operator()(char* s) const { ppkex_string_free(s); }
};
using LibString = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void fail(ppkex_status rc) {
  std::cerr << "error: " << ppkex_last_error() << "\n";
  std::exit(int(rc));
}

void check(ppkex_status rc) {
  if (rc != PPKEX_OK) fail(rc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(int(PPKEX_ERR_INVALID_ARGUMENT));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(int(PPKEX_ERR_INVALID_ARGUMENT));
  }
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

json parse_kv_list(const std::vector<std::string>& items, bool value_is_port) {
  json out = json::object();
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      std::cerr << "error: expected key=value, got '" << item << "'\n";
      std::exit(int(PPKEX_ERR_INVALID_ARGUMENT));
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (value_is_port) {
      out[key] = std::stoul(value);
    } else {
      out[key] = value;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving kidney exchange over secret-shared medical data"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a synthetic pairs cohort");
  std::string gen_out;
  json gen_cfg = json::object();
  std::uint32_t gen_pairs = 8;
  std::uint64_t gen_seed = 1;
  double antigen_rate = 0.15, antibody_rate = 0.09, senior_rate = 0.35, female_rate = 0.5;
  std::uint32_t weight_lo = 45, weight_hi = 110;
  gen->add_option("--out", gen_out, "Write the cohort here (default: stdout)");
  gen->add_option("--pairs", gen_pairs, "Number of pairs")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--antigen-rate", antigen_rate, "Per-slot antigen probability")
      ->capture_default_str();
  gen->add_option("--antibody-rate", antibody_rate, "Per-slot antibody probability")
      ->capture_default_str();
  gen->add_option("--senior-rate", senior_rate, "Probability of the senior age group")
      ->capture_default_str();
  gen->add_option("--female-rate", female_rate, "Probability of sex = female")
      ->capture_default_str();
  gen->add_option("--weight-lo", weight_lo, "Lower weight bound (kg)")->capture_default_str();
  gen->add_option("--weight-hi", weight_hi, "Upper weight bound (kg)")->capture_default_str();

  // ---- oracle -------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Plaintext reference computation");
  std::string oracle_pairs, oracle_weights, oracle_out;
  std::uint32_t oracle_len = 2;
  oracle->add_option("--pairs", oracle_pairs, "Cohort file")->required();
  oracle->add_option("--cycle-length", oracle_len, "Exchange cycle length")
      ->capture_default_str();
  oracle->add_option("--weights", oracle_weights, "Weights file");
  oracle->add_option("--out", oracle_out, "Write the result here (default: stdout)");

  // ---- run ----------------------------------------------------------
  auto* run = app.add_subcommand(
      "run", "Run the protocol: all roles locally, or one role of a distributed setup");
  std::string run_role, run_pairs, run_weights, run_transport = "socketpair";
  std::string result_out, ledger_out;
  std::vector<std::string> listen_args, connect_args;
  std::uint32_t run_len = 2, run_npairs = 0, run_providers = 1, provider_index = 0;
  std::uint64_t run_seed = 1, run_session = 1;
  int timeout_ms = 120000;
  bool reveal_guard = false, transcript_digests = false;
  run->add_option("--role", run_role, "p0, p1, dealer or provider (omit for a local run)")
      ->check(CLI::IsMember({"p0", "p1", "dealer", "provider"}));
  run->add_option("--pairs", run_pairs, "Cohort file (local run and providers)");
  run->add_option("--cycle-length", run_len, "Exchange cycle length")->capture_default_str();
  run->add_option("--n-pairs", run_npairs, "Total pair count (p0/p1 roles)");
  run->add_option("--weights", run_weights, "Weights file");
  run->add_option("--seed", run_seed, "Sharing/dealer randomness seed")->capture_default_str();
  run->add_option("--session", run_session, "Session id, equal on every node")
      ->capture_default_str();
  run->add_option("--transport", run_transport, "Local run transport: socketpair or tcp")
      ->check(CLI::IsMember({"socketpair", "tcp"}));
  run->add_option("--providers", run_providers, "Provider count")->capture_default_str();
  run->add_option("--provider-index", provider_index, "This provider's cohort position");
  run->add_option("--listen", listen_args,
                  "Listening port as purpose=port (peer=, providers=, servers=)");
  run->add_option("--connect", connect_args,
                  "Outbound endpoint as purpose=host:port (peer=, dealer=, p0=, p1=)");
  run->add_option("--timeout-ms", timeout_ms, "IO timeout")->capture_default_str();
  run->add_flag("--reveal-guard", reveal_guard,
                "Abort when the revealed cycle count exceeds the public bound");
  run->add_flag("--transcript-digests", transcript_digests,
                "Attach per-round transcript digests to the ledgers (local run)");
  run->add_option("--result-out", result_out, "Write the agreed result here");
  run->add_option("--ledger-out", ledger_out,
                  "Write ledgers here (local run appends .p0.json/.p1.json)");

  // ---- bench --------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Cost sweep over cohort sizes");
  std::string bench_plan, bench_json_out, bench_csv_out;
  bench->add_option("--plan", bench_plan, "Plan file")->required();
  bench->add_option("--json-out", bench_json_out, "Write the report here (default: stdout)");
  bench->add_option("--csv-out", bench_csv_out, "Write the row CSV here");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    gen_cfg = {{"n_pairs", gen_pairs},
               {"seed", gen_seed},
               {"antigen_rate", antigen_rate},
               {"antibody_rate", antibody_rate},
               {"senior_rate", senior_rate},
               {"female_rate", female_rate},
               {"weight_lo_kg", weight_lo},
               {"weight_hi_kg", weight_hi}};
    char* cohort = nullptr;
    check(ppkex_cohort_generate(gen_cfg.dump().c_str(), &cohort));
    LibString owned(cohort);
    if (gen_out.empty()) {
      std::cout << cohort << "\n";
    } else {
      write_file(gen_out, cohort);
    }
    return 0;
  }

  if (oracle->parsed()) {
    json cfg{{"cycle_len", oracle_len}};
    if (!oracle_weights.empty()) cfg["weights"] = json::parse(read_file(oracle_weights));
    const std::string cohort = read_file(oracle_pairs);
    char* result = nullptr;
    check(ppkex_oracle_run(cohort.c_str(), cfg.dump().c_str(), &result));
    LibString owned(result);
    if (oracle_out.empty()) {
      std::cout << result << "\n";
    } else {
      write_file(oracle_out, result);
    }
    return 0;
  }

  if (run->parsed()) {
    json weights;
    if (!run_weights.empty()) weights = json::parse(read_file(run_weights));

    if (run_role.empty()) {
      if (run_pairs.empty()) {
        std::cerr << "error: a local run needs --pairs\n";
        return int(PPKEX_ERR_INVALID_ARGUMENT);
      }
      json cfg{{"cycle_len", run_len},
               {"seed", run_seed},
               {"transport", run_transport},
               {"providers", run_providers},
               {"reveal_guard", reveal_guard},
               {"transcripts", transcript_digests}};
      if (!weights.is_null()) cfg["weights"] = weights;
      const std::string cohort = read_file(run_pairs);
      char *result = nullptr, *ledger0 = nullptr, *ledger1 = nullptr;
      check(ppkex_local_run(cohort.c_str(), cfg.dump().c_str(), &result, &ledger0, &ledger1));
      LibString r(result), l0(ledger0), l1(ledger1);
      std::cout << result << "\n";
      if (!result_out.empty()) write_file(result_out, result);
      if (!ledger_out.empty()) {
        write_file(ledger_out + ".p0.json", ledger0);
        write_file(ledger_out + ".p1.json", ledger1);
      }
      return 0;
    }

    json cfg{{"role", run_role},
             {"session", run_session},
             {"seed", run_seed},
             {"timeout_ms", timeout_ms},
             {"reveal_guard", reveal_guard},
             {"providers", run_providers},
             {"provider_index", provider_index},
             {"listen", parse_kv_list(listen_args, true)},
             {"connect", parse_kv_list(connect_args, false)}};
    if (run_role == "p0" || run_role == "p1" || run_role == "provider") {
      if (run_npairs == 0) {
        std::cerr << "error: --n-pairs is required for this role\n";
        return int(PPKEX_ERR_INVALID_ARGUMENT);
      }
      cfg["params"] = {{"n_pairs", run_npairs}, {"cycle_len", run_len}};
      if (!weights.is_null()) cfg["weights"] = weights;
    }
    if (run_role == "provider") {
      if (run_pairs.empty()) {
        std::cerr << "error: a provider needs --pairs\n";
        return int(PPKEX_ERR_INVALID_ARGUMENT);
      }
      cfg["cohort"] = json::parse(read_file(run_pairs));
    }

    ppkex_node* node = nullptr;
    check(ppkex_node_create(cfg.dump().c_str(), &node));
    const ppkex_status rc = ppkex_node_run(node);
    if (rc != PPKEX_OK) {
      std::cerr << "error: " << ppkex_last_error() << "\n";
      ppkex_node_destroy(node);
      return int(rc);
    }
    if (run_role != "dealer") {
      char* result = nullptr;
      check(ppkex_node_result(node, &result));
      LibString r(result);
      std::cout << result << "\n";
      if (!result_out.empty()) write_file(result_out, result);
      if (!ledger_out.empty() && run_role != "provider") {
        char* ledger = nullptr;
        check(ppkex_node_ledger(node, &ledger));
        LibString l(ledger);
        write_file(ledger_out, ledger);
      }
    }
    ppkex_node_destroy(node);
    return 0;
  }

  if (bench->parsed()) {
    const std::string plan = read_file(bench_plan);
    char *report = nullptr, *csv = nullptr;
    check(ppkex_bench_run(plan.c_str(), &report, &csv));
    LibString r(report), c(csv);
    if (bench_json_out.empty()) {
      std::cout << report << "\n";
    } else {
      write_file(bench_json_out, report);
    }
    if (!bench_csv_out.empty()) write_file(bench_csv_out, csv);
    return 0;
  }

  return 0;
}
