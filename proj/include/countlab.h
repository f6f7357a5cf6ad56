/*
 * countlab — exact enumeration and verification of counting identities,
 * correlation inequalities, and coefficient asymptotics for spanning
 * subgraph families of complete graphs.
 *
 * C interface over the C++ core: opaque handles, integer status codes,
 * results delivered as JSON/decimal strings owned by the library (release
 * them with cl_string_free).
 */
#ifndef COUNTLAB_H
#define COUNTLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_ERR_INVALID_ARGUMENT = 1, /* bad parameters, parse failures, caps */
  CL_ERR_DOMAIN = 2,           /* empty family, division by zero, ... */
  CL_ERR_INVARIANT = 3,        /* an exactness invariant broke (hard failure) */
  CL_ERR_INTERNAL = 4
} cl_status;

typedef struct cl_session cl_session;
typedef struct cl_graph cl_graph;

const char* cl_version(void);
const char* cl_status_name(cl_status status);

/* Sessions hold the last error message and cache shared tables. */
cl_status cl_session_new(cl_session** out);
void cl_session_free(cl_session* session);
const char* cl_session_last_error(const cl_session* session);

/* Graph handles. JSON format: {"n": 4, "edges": [[0,1],[0,2,3]]} where the
 * optional third entry is a parallel-edge multiplicity. The edge-list text
 * format is one "u v [mult]" per line. */
cl_status cl_graph_complete(cl_session* session, int n, cl_graph** out);
cl_status cl_graph_parse_json(cl_session* session, const char* text, cl_graph** out);
cl_status cl_graph_parse_edge_list(cl_session* session, const char* text, cl_graph** out);
void cl_graph_free(cl_graph* graph);
cl_status cl_graph_canonical_json(cl_session* session, const cl_graph* graph, char** out);

/* Exact counts as decimal strings ("num" or "num/den"). */
cl_status cl_graph_spanning_tree_count(cl_session* session, const cl_graph* graph, char** out);
cl_status cl_graph_kforest_count(cl_session* session, const cl_graph* graph, int k, char** out);

/* Named operations with JSON parameters; see the README for the operation
 * catalogue. The result is always a JSON document. */
cl_status cl_run(cl_session* session, const char* op, const char* params_json, char** result_json);

void cl_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* COUNTLAB_H */
