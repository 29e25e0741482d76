/* parrep - multiplayer games, parallel repetition, and non-signaling values.
 *
 * C interface to the toolkit.  Games are opaque handles created from the
 * canonical JSON format; results and errors travel as JSON documents in
 * malloc'd strings that the caller releases with parrep_string_free.
 *
 * Return codes: 0 success, 1 domain error (err receives an
 * {"error": {kind, path, message}} document), 2 usage error (bad arguments
 * to the call itself).
 */
#ifndef PARREP_H
#define PARREP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PARREP_OK 0
#define PARREP_ERR_DOMAIN 1
#define PARREP_ERR_USAGE 2

typedef struct parrep_game parrep_game;

const char* parrep_version(void);

void parrep_string_free(char* s);
void parrep_game_free(parrep_game* g);

/* parse/serialize the canonical game JSON (validates every invariant) */
int parrep_game_parse(const char* json, parrep_game** out, char** err);
int parrep_game_render(const parrep_game* g, char** out);

/* named constructors: "anti-correlation", "ghz", "five-point",
 * "four-point-and", "hw1" (k required, ignored elsewhere) */
int parrep_zoo_game(const char* name, int k, parrep_game** out, char** err);

int parrep_tensor_power(const parrep_game* g, int n, parrep_game** out, char** err);

/* {"value": "p/q", "strategy": [...]} - exact search over product
 * strategies; max_strategies 0 means the default budget (2^30) */
int parrep_game_value(const parrep_game* g, uint64_t max_strategies, int threads, char** out,
                      char** err);

/* {"optimum": "p/q", "witness": {...}, "orbits": n, "pivots": n} */
int parrep_ns_value(const parrep_game* g, int all_subsets, int use_symmetries, char** out,
                    char** err);

/* {"base": "p/q", "repeated": "p/q", "n": n, "equal": bool} */
int parrep_ns_invariance(const parrep_game* g, int n, char** out, char** err);

/* {"tag": ..., "witness": ..., "components": [...], "playerwise": bool,
 *  "connectivity": ...} */
int parrep_classify(const parrep_game* g, char** out, char** err);

/* {"lower_bound": "p/q", "strategy": [...], "evaluations": n, "restarts": n} */
int parrep_heuristic_search(const parrep_game* g, int n, uint64_t budget, uint64_t seed,
                            int threads, char** out, char** err);

/* {"estimate": x, "radius": x, "wins": n, "trials": n}; the strategy is for
 * the n-fold repetition, keyed by space-joined question tuples */
int parrep_mc_estimate(const parrep_game* g, int n, const char* strategy_json, uint64_t trials,
                       uint64_t seed, int threads, char** out, char** err);

/* csv != 0: "n,exact,lower_bound,method,witness_digest,runtime_ms" rows;
 * otherwise a JSON array of the same records */
int parrep_decay_curve(const parrep_game* g, int n_max, uint64_t seed, uint64_t heuristic_budget,
                       int threads, int csv, char** out, char** err);

/* {"formula": {d, m, seed, clauses}, "game": {...}} */
int parrep_cnf_game(int d, int m, uint64_t seed, char** out, char** err);

/* CSV "seed,connected,playerwise_connected,value" over seeds
 * seed0 .. seed0+seeds-1; value column only for d <= 6 */
int parrep_cnf_experiment(int d, int m, int seeds, uint64_t seed0, int threads, char** out,
                          char** err);

/* exact tables and equalities of the correlated sampling spaces, plus an
 * empirical cross-check with `samples` draws when samples > 0 */
int parrep_diag_spaces(int n, uint64_t seed, uint64_t samples, char** out, char** err);

/* randomized product-distribution suite; {"trials": n, "violations": n,
 * "max_ratio": x} */
int parrep_diag_pinsker(int max_n, uint64_t seed, int trials, char** out, char** err);

/* averaged-L1 diagnostics for the pinned-coordinate event family on g^(x)n */
int parrep_diag_embedding(const parrep_game* g, int n, int pin_players, char** out, char** err);

#ifdef __cplusplus
}
#endif

#endif /* PARREP_H */
