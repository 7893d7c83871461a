#ifndef PPKEX_H
#define PPKEX_H

/* C interface to the privacy-preserving kidney exchange pipeline.
 *
 * Conventions:
 *   - every function returns a ppkex_status; PPKEX_OK means success
 *   - on failure, ppkex_last_error() describes the problem (thread-local)
 *   - all documents are UTF-8 JSON strings owned by the library; release
 *     them with ppkex_string_free()
 *   - document schemas are described in docs/formats.md
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PPKEX_API __attribute__((visibility("default")))

typedef enum ppkex_status {
  PPKEX_OK = 0,
  PPKEX_ERR_INVALID_ARGUMENT = 1, /* NULL pointers, malformed JSON */
  PPKEX_ERR_VALIDATION = 2,       /* well-formed but unusable inputs */
  PPKEX_ERR_TRANSPORT = 3,        /* sockets, timeouts, closed peers */
  PPKEX_ERR_HANDSHAKE = 4,        /* parameter disagreement */
  PPKEX_ERR_PROTOCOL = 5,         /* desync, bad frames, bad material */
  PPKEX_ERR_ABORTED = 6,          /* the counterpart sent an abort */
  PPKEX_ERR_INTERNAL = 7,
} ppkex_status;

/* Message for the most recent failure on this thread; never NULL. */
PPKEX_API const char* ppkex_last_error(void);

/* Releases any string this library returned. NULL is ignored. */
PPKEX_API void ppkex_string_free(char* s);

/* Synthesizes a pairs cohort.
 * config_json knobs (all optional): n_pairs, seed, antigen_rate,
 * antibody_rate, senior_rate, female_rate, weight_lo_kg, weight_hi_kg. */
PPKEX_API ppkex_status ppkex_cohort_generate(const char* config_json, char** cohort_json_out);

/* Validates a cohort document. Returns PPKEX_OK and writes a JSON array
 * of problem strings (empty when the cohort is usable). */
PPKEX_API ppkex_status ppkex_cohort_validate(const char* cohort_json, char** problems_out);

/* Plaintext reference computation on a cohort.
 * config_json: cycle_len plus optional weights overrides. */
PPKEX_API ppkex_status ppkex_oracle_run(const char* cohort_json, const char* config_json,
                                        char** result_json_out);

/* Full protocol run inside this process: both compute servers, the
 * dealer and the providers, wired over socketpairs or loopback TCP.
 * config_json: cycle_len, seed, transport ("socketpair"|"tcp"),
 * providers (count), reveal_guard, weights. Outputs may be NULL when a
 * caller does not need them. */
PPKEX_API ppkex_status ppkex_local_run(const char* cohort_json, const char* config_json,
                                       char** result_json_out, char** ledger0_json_out,
                                       char** ledger1_json_out);

/* Benchmark sweep driven by a plan document; returns the report and a
 * CSV rendering of its rows. */
PPKEX_API ppkex_status ppkex_bench_run(const char* plan_json, char** report_json_out,
                                       char** csv_out);

/* One role of a distributed deployment. The node is configured by a
 * JSON document (role, endpoints, parameters; see docs/formats.md),
 * executes its role in ppkex_node_run (blocking), and afterwards hands
 * out the result and ledger documents where the role produces them. */
typedef struct ppkex_node ppkex_node;

PPKEX_API ppkex_status ppkex_node_create(const char* config_json, ppkex_node** node_out);
PPKEX_API ppkex_status ppkex_node_run(ppkex_node* node);
PPKEX_API ppkex_status ppkex_node_result(const ppkex_node* node, char** result_json_out);
PPKEX_API ppkex_status ppkex_node_ledger(const ppkex_node* node, char** ledger_json_out);
PPKEX_API void ppkex_node_destroy(ppkex_node* node);

#ifdef __cplusplus
}
#endif

#endif /* PPKEX_H */
