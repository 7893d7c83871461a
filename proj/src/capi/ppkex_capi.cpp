#include "ppkex/ppkex.h"

#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "common/errors.hpp"
#include "domain/cohort_json.hpp"
#include "harness/harness.hpp"
#include "kep/result.hpp"
#include "net/node.hpp"
#include "oracle/oracle.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void put_out(char** slot, const std::string& value) {
  if (slot != nullptr) *slot = dup_string(value);
}

struct BadArgument : std::runtime_error {
  explicit BadArgument(const std::string& what) : std::runtime_error(what) {}
};

json parse_doc(const char* text, const char* what) {
  if (text == nullptr) throw BadArgument(std::string(what) + " must not be NULL");
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw BadArgument(std::string(what) + " is not valid JSON");
  return doc;
}

template <typename Fn>
ppkex_status guard(Fn&& fn) {
  using namespace ppkex;
  try {
    fn();
    return PPKEX_OK;
  } catch (const BadArgument& e) {
    g_last_error = e.what();
    return PPKEX_ERR_INVALID_ARGUMENT;
  } catch (const ValidationError& e) {
    g_last_error = e.what();
    return PPKEX_ERR_VALIDATION;
  } catch (const HandshakeError& e) {
    g_last_error = e.what();
    return PPKEX_ERR_HANDSHAKE;
  } catch (const SessionAborted& e) {
    g_last_error = std::string("aborted by counterpart: ") + e.what();
    return PPKEX_ERR_ABORTED;
  } catch (const TransportError& e) {
    g_last_error = e.what();
    return PPKEX_ERR_TRANSPORT;
  } catch (const SetupUnderprovisioned& e) {
    g_last_error = e.what();
    return PPKEX_ERR_PROTOCOL;
  } catch (const ProtocolFault& e) {
    g_last_error = e.what();
    return PPKEX_ERR_PROTOCOL;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return PPKEX_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PPKEX_ERR_INTERNAL;
  }
}

// Accepts either the flat result-document form (w_hla, class_a, ...) or
// the weights-file form ({"criteria": ..., "classes": ...}).
ppkex::domain::CriteriaWeights weights_from_config(const json& cfg) {
  if (!cfg.contains("weights")) return ppkex::domain::CriteriaWeights{};
  const json& w = cfg.at("weights");
  if (w.contains("criteria") || w.contains("classes")) {
    return ppkex::domain::weights_from_json(w);
  }
  return ppkex::kep::weights_from_json(w);
}

json oracle_doc(const ppkex::oracle::OracleResult& r) {
  return {
      {"cycle_count", r.cycle_count},
      {"unique_count", r.unique_count},
      {"total_weight", r.total_weight},
      {"solution_cycles", r.solution_cycles},
      {"trace_tuple_divergence", r.trace_tuple_divergence},
      {"comp_graph", r.comp_graph},
  };
}

std::pair<std::string, std::uint16_t> parse_endpoint(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ppkex::ValidationError(std::string("missing endpoint ") + key);
  const std::string ep = cfg.at(key).get<std::string>();
  const auto colon = ep.rfind(':');
  if (colon == std::string::npos || colon + 1 == ep.size()) {
    throw ppkex::ValidationError("endpoint " + ep + " must be host:port");
  }
  const unsigned long port = std::stoul(ep.substr(colon + 1));
  if (port == 0 || port > 0xffff) throw ppkex::ValidationError("port out of range in " + ep);
  return {ep.substr(0, colon), std::uint16_t(port)};
}

std::uint16_t listen_port(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ppkex::ValidationError(std::string("missing listen port ") + key);
  const std::uint64_t port = cfg.at(key).get<std::uint64_t>();
  if (port == 0 || port > 0xffff) throw ppkex::ValidationError("listen port out of range");
  return std::uint16_t(port);
}

}  // namespace

struct ppkex_node {
  json config;
  std::string role;
  bool ran = false;
  std::optional<std::string> result;
  std::optional<std::string> ledger;
};

extern "C" {

const char* ppkex_last_error(void) { return g_last_error.c_str(); }

void ppkex_string_free(char* s) { delete[] s; }

ppkex_status ppkex_cohort_generate(const char* config_json, char** cohort_json_out) {
  return guard([&] {
    if (cohort_json_out == nullptr) throw BadArgument("cohort_json_out must not be NULL");
    const json cfg = config_json ? parse_doc(config_json, "config") : json::object();
    const auto cohort = ppkex::harness::generate_cohort(ppkex::harness::gen_config_from_json(cfg));
    put_out(cohort_json_out, ppkex::kep::dump_canonical(ppkex::domain::cohort_to_json(cohort)));
  });
}

ppkex_status ppkex_cohort_validate(const char* cohort_json, char** problems_out) {
  return guard([&] {
    const json doc = parse_doc(cohort_json, "cohort");
    json problems = json::array();
    try {
      const auto cohort = ppkex::domain::cohort_from_json(doc);
      ppkex::domain::PublicParams params;
      params.n_pairs = std::uint32_t(cohort.size());
      for (const auto& msg : ppkex::domain::validate_params(params)) problems.push_back(msg);
    } catch (const ppkex::ValidationError& e) {
      problems.push_back(e.what());
    }
    put_out(problems_out, problems.dump());
  });
}

ppkex_status ppkex_oracle_run(const char* cohort_json, const char* config_json,
                              char** result_json_out) {
  return guard([&] {
    if (result_json_out == nullptr) throw BadArgument("result_json_out must not be NULL");
    const json doc = parse_doc(cohort_json, "cohort");
    const json cfg = config_json ? parse_doc(config_json, "config") : json::object();
    const auto cohort = ppkex::domain::cohort_from_json(doc);
    const auto cycle_len = cfg.value("cycle_len", 2u);
    const auto result = ppkex::oracle::run_pipeline(cohort, weights_from_config(cfg), cycle_len);
    put_out(result_json_out, ppkex::kep::dump_canonical(oracle_doc(result)));
  });
}

ppkex_status ppkex_local_run(const char* cohort_json, const char* config_json,
                             char** result_json_out, char** ledger0_json_out,
                             char** ledger1_json_out) {
  return guard([&] {
    const json doc = parse_doc(cohort_json, "cohort");
    const json cfg = config_json ? parse_doc(config_json, "config") : json::object();
    const auto cohort = ppkex::domain::cohort_from_json(doc);

    ppkex::kep::PipelineConfig pipeline;
    pipeline.params.n_pairs = std::uint32_t(cohort.size());
    pipeline.params.cycle_len = cfg.value("cycle_len", 2u);
    pipeline.weights = weights_from_config(cfg);
    pipeline.reveal_guard = cfg.value("reveal_guard", false);

    const auto transport = cfg.value("transport", std::string("socketpair")) == "tcp"
                               ? ppkex::harness::Transport::Tcp
                               : ppkex::harness::Transport::Socketpair;
    auto run = ppkex::harness::run_local(pipeline, cohort, cfg.value("seed", 1ull), transport,
                                         cfg.value("providers", 1u));
    if (cfg.value("transcripts", false)) {
      for (int party = 0; party < 2; ++party) {
        json entries = json::array();
        for (const auto& e : run.transcripts[party]) {
          entries.push_back({
              {"type", ppkex::net::msg_type_name(e.type)},
              {"round", e.round_no},
              {"sent_len", e.sent_len},
              {"recv_len", e.recv_len},
              {"sent_digest", e.sent_digest},
              {"recv_digest", e.recv_digest},
          });
        }
        run.ledgers[party]["transcript"] = std::move(entries);
      }
    }
    put_out(result_json_out, ppkex::kep::dump_canonical(run.result));
    put_out(ledger0_json_out, ppkex::kep::dump_canonical(run.ledgers[0]));
    put_out(ledger1_json_out, ppkex::kep::dump_canonical(run.ledgers[1]));
  });
}

ppkex_status ppkex_bench_run(const char* plan_json, char** report_json_out, char** csv_out) {
  return guard([&] {
    const json plan_doc = parse_doc(plan_json, "plan");
    const auto plan = ppkex::harness::bench_plan_from_json(plan_doc);
    const auto report = ppkex::harness::run_bench(plan);
    put_out(report_json_out, ppkex::kep::dump_canonical(ppkex::harness::bench_json(plan, report)));
    put_out(csv_out, ppkex::harness::bench_csv(report));
  });
}

ppkex_status ppkex_node_create(const char* config_json, ppkex_node** node_out) {
  return guard([&] {
    if (node_out == nullptr) throw BadArgument("node_out must not be NULL");
    json cfg = parse_doc(config_json, "node config");
    const std::string role = cfg.value("role", "");
    if (role != "p0" && role != "p1" && role != "dealer" && role != "provider") {
      throw ppkex::ValidationError("role must be p0, p1, dealer or provider");
    }
    *node_out = new ppkex_node{std::move(cfg), role, false, std::nullopt, std::nullopt};
  });
}

namespace {

void node_run_impl(ppkex_node& node) {
  using namespace ppkex;
  const json& cfg = node.config;
  const std::uint64_t session = cfg.value("session", 1ull);
  const int timeout_ms = cfg.value("timeout_ms", 120000);
  const json listen = cfg.value("listen", json::object());
  const json connect = cfg.value("connect", json::object());

  if (node.role == "dealer") {
    net::TcpListener servers(listen_port(listen, "servers"));
    net::FrameIo a(servers.accept(timeout_ms), session);
    net::FrameIo b(servers.accept(timeout_ms), session);
    a.set_timeout(timeout_ms);
    b.set_timeout(timeout_ms);
    net::run_dealer(a, b, cfg.value("seed", 1ull));
    return;
  }

  kep::PipelineConfig pipeline;
  if (!cfg.contains("params")) throw ValidationError("node config needs params");
  pipeline.params = kep::params_from_json(cfg.at("params"));
  pipeline.weights = weights_from_config(cfg);
  pipeline.reveal_guard = cfg.value("reveal_guard", false);

  if (node.role == "provider") {
    if (!cfg.contains("cohort")) throw ValidationError("provider config needs a cohort");
    const auto cohort = domain::cohort_from_json(cfg.at("cohort"));
    const auto [h0, p0port] = parse_endpoint(connect, "p0");
    const auto [h1, p1port] = parse_endpoint(connect, "p1");
    net::FrameIo to_p0(net::tcp_connect(h0, p0port, timeout_ms), session);
    net::FrameIo to_p1(net::tcp_connect(h1, p1port, timeout_ms), session);
    to_p0.set_timeout(timeout_ms);
    to_p1.set_timeout(timeout_ms);
    const auto out = net::run_provider(pipeline, cohort, cfg.value("provider_index", 0u), to_p0,
                                       to_p1, cfg.value("seed", 1ull));
    node.result = kep::dump_canonical(out.result);
    return;
  }

  const int party = node.role == "p0" ? 0 : 1;
  const std::uint32_t n_providers = cfg.value("providers", 1u);

  // Listeners come up before any blocking connect so the other roles'
  // connection retries can land regardless of start order.
  std::optional<net::TcpListener> l_peer;
  std::optional<net::TcpListener> l_prov;
  if (party == 0) l_peer.emplace(listen_port(listen, "peer"));
  l_prov.emplace(listen_port(listen, "providers"));

  const auto [dh, dport] = parse_endpoint(connect, "dealer");
  net::FrameIo peer = party == 0
                          ? net::FrameIo(l_peer->accept(timeout_ms), session)
                          : [&] {
                              const auto [ph, pport] = parse_endpoint(connect, "peer");
                              return net::FrameIo(net::tcp_connect(ph, pport, timeout_ms),
                                                  session);
                            }();
  net::FrameIo dealer(net::tcp_connect(dh, dport, timeout_ms), session);
  peer.set_timeout(timeout_ms);
  dealer.set_timeout(timeout_ms);
  net::send_dealer_hello(dealer, party);
  net::RemoteTripleSource source(dealer);

  std::vector<net::FrameIo> provs;
  net::ServerLinks links;
  links.peer = &peer;
  for (std::uint32_t p = 0; p < n_providers; ++p) {
    provs.emplace_back(l_prov->accept(timeout_ms), session);
    provs.back().set_timeout(timeout_ms);
  }
  for (auto& p : provs) links.providers.push_back(&p);

  const auto out = net::run_compute_server(party, pipeline, links, source);
  node.result = kep::dump_canonical(out.result);
  node.ledger = kep::dump_canonical(out.ledger);
}

}  // namespace

ppkex_status ppkex_node_run(ppkex_node* node) {
  return guard([&] {
    if (node == nullptr) throw BadArgument("node must not be NULL");
    if (node->ran) throw BadArgument("node already ran");
    node->ran = true;
    node_run_impl(*node);
  });
}

ppkex_status ppkex_node_result(const ppkex_node* node, char** result_json_out) {
  return guard([&] {
    if (node == nullptr || result_json_out == nullptr) throw BadArgument("NULL argument");
    if (!node->result) throw BadArgument("this node role has no result document");
    put_out(result_json_out, *node->result);
  });
}

ppkex_status ppkex_node_ledger(const ppkex_node* node, char** ledger_json_out) {
  return guard([&] {
    if (node == nullptr || ledger_json_out == nullptr) throw BadArgument("NULL argument");
    if (!node->ledger) throw BadArgument("this node role has no ledger document");
    put_out(ledger_json_out, *node->ledger);
  });
}

void ppkex_node_destroy(ppkex_node* node) { delete node; }

}  // extern "C"
