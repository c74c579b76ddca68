/* SPDX-License-Identifier: Apache-2.0 */

#ifndef BIDYCK_H
#define BIDYCK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BidyckStatus {
  BIDYCK_STATUS_OK = 0,
  BIDYCK_STATUS_NULL_POINTER = 1,
  BIDYCK_STATUS_NODE_OUT_OF_RANGE = 2,
  BIDYCK_STATUS_LABEL_OUT_OF_RANGE = 3,
  BIDYCK_STATUS_ABSENT_EDGE = 4,
  BIDYCK_STATUS_PARSE_ERROR = 5,
  BIDYCK_STATUS_INVALID_ARGUMENT = 6,
  BIDYCK_STATUS_UTF8_ERROR = 7,
  /**
   * The engine panicked; the handle must be freed and not reused.
   */
  BIDYCK_STATUS_INTERNAL_ERROR = 8,
} BidyckStatus;

/**
 * Opaque engine handle.
 */
typedef struct BidyckEngine BidyckEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an engine over `n` nodes and `k` labels with no edges.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum BidyckStatus bidyck_engine_new(size_t n, size_t k, struct BidyckEngine **out);

/**
 * Creates an engine from graph text: an `n k` header followed by one
 * `u v label` line per edge copy.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be null or
 * valid for writing one pointer.
 */
enum BidyckStatus bidyck_engine_from_text(const char *text, struct BidyckEngine **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `engine` must be null or a handle from this library not yet freed.
 */
void bidyck_engine_free(struct BidyckEngine *engine);

/**
 * Adds one copy of the closing edge `u -label-> v`.
 *
 * # Safety
 * `engine` must be null or a live handle.
 */
enum BidyckStatus bidyck_insert(struct BidyckEngine *engine, size_t u, size_t v, size_t label);

/**
 * Removes one copy of `u -label-> v`; fails with `AbsentEdge` if none exists.
 *
 * # Safety
 * `engine` must be null or a live handle.
 */
enum BidyckStatus bidyck_delete(struct BidyckEngine *engine, size_t u, size_t v, size_t label);

/**
 * Writes whether `u` and `v` are in the same DSCC.
 *
 * # Safety
 * `engine` must be null or a live handle; `out` null or writable.
 */
enum BidyckStatus bidyck_same(const struct BidyckEngine *engine, size_t u, size_t v, bool *out);

/**
 * Writes the representative of `u`'s DSCC. Two nodes share a DSCC iff
 * their representatives are equal; representatives may change after any
 * update.
 *
 * # Safety
 * `engine` must be null or a live handle; `out` null or writable.
 */
enum BidyckStatus bidyck_repr(const struct BidyckEngine *engine, size_t u, size_t *out);

/**
 * Writes the node and label counts.
 *
 * # Safety
 * `engine` must be null or a live handle; `n` and `k` null or writable.
 */
enum BidyckStatus bidyck_dims(const struct BidyckEngine *engine, size_t *n, size_t *k);

/**
 * Writes the work counted by the last update (finds, list cells visited,
 * primal edge operations and queue extractions).
 *
 * # Safety
 * `engine` must be null or a live handle; `out` null or writable.
 */
enum BidyckStatus bidyck_last_op_work(const struct BidyckEngine *engine, uint64_t *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *bidyck_status_message(enum BidyckStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIDYCK_H */
