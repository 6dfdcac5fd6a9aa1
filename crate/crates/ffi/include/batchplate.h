#ifndef BATCHPLATE_H
#define BATCHPLATE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BpOrdering {
  BP_ORDERING_RANDOM = 0,
  BP_ORDERING_LARGEST_FIRST = 1,
  BP_ORDERING_SMALLEST_FIRST = 2,
  BP_ORDERING_AS_GIVEN = 3,
} BpOrdering;

/**
 * Result of every fallible call.
 */
typedef enum BpStatus {
  BP_STATUS_OK = 0,
  BP_STATUS_NULL_POINTER = 1,
  BP_STATUS_INVALID_UTF8 = 2,
  BP_STATUS_INVALID_INSTANCE = 3,
  BP_STATUS_INVALID_CONFIG = 4,
  BP_STATUS_ORACLE_LIMIT = 5,
  BP_STATUS_IO = 6,
  BP_STATUS_OUT_OF_RANGE = 7,
  BP_STATUS_PANIC = 8,
} BpStatus;

/**
 * Opaque validated instance.
 */
typedef struct BpInstance BpInstance;

/**
 * Opaque layout.
 */
typedef struct BpLayout BpLayout;

/**
 * Search parameters. Start from [`bp_search_config_default`].
 */
typedef struct BpSearchConfig {
  uint64_t iterations;
  uint64_t seed;
  enum BpOrdering ordering;
  uint64_t keep_top;
  /**
   * 0 picks one thread per core.
   */
  uint32_t threads;
  bool strict_fit;
  bool append_areas;
} BpSearchConfig;

/**
 * One placed part. `length`/`width` are the placed extents.
 */
typedef struct BpPlacement {
  double x;
  double y;
  double length;
  double width;
  bool rotated;
} BpPlacement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *bp_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *bp_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bp_string_free(char *s);

struct BpSearchConfig bp_search_config_default(void);

/**
 * Parses and validates an instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BpStatus bp_instance_from_json(const char *json, struct BpInstance **out);

/**
 * Loads an instance document from a file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum BpStatus bp_instance_load(const char *path, struct BpInstance **out);

/**
 * # Safety
 * `instance` must be a live handle or NULL.
 */
size_t bp_instance_part_count(const struct BpInstance *instance);

/**
 * # Safety
 * `instance` must come from this library and not have been freed.
 */
void bp_instance_free(struct BpInstance *instance);

/**
 * Multi-start search; writes the winning layout.
 *
 * # Safety
 * Pointers must be valid; `config` may be NULL for defaults.
 */
enum BpStatus bp_pack(const struct BpInstance *instance,
                      const struct BpSearchConfig *config,
                      struct BpLayout **winner);

/**
 * Multi-start search; writes the full report document as JSON.
 *
 * # Safety
 * Pointers must be valid; `config` may be NULL for defaults.
 */
enum BpStatus bp_pack_report_json(const struct BpInstance *instance,
                                  const struct BpSearchConfig *config,
                                  char **out);

/**
 * Exhaustive search over part orderings; writes the heaviest layout.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BpStatus bp_oracle(const struct BpInstance *instance,
                        uint64_t limit,
                        bool full_rotation,
                        uint32_t threads,
                        struct BpLayout **best_by_mass);

/**
 * # Safety
 * `layout` must be a live handle or NULL.
 */
double bp_layout_total_mass(const struct BpLayout *layout);

/**
 * # Safety
 * `layout` must be a live handle or NULL.
 */
double bp_layout_covered_area(const struct BpLayout *layout);

/**
 * Covered fraction of the platform, in `[0, 1]`.
 *
 * # Safety
 * `layout` must be a live handle or NULL.
 */
double bp_layout_coverage(const struct BpLayout *layout);

/**
 * # Safety
 * `layout` must be a live handle or NULL.
 */
size_t bp_layout_part_count(const struct BpLayout *layout);

/**
 * # Safety
 * `layout` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_layout_placement(const struct BpLayout *layout,
                                  size_t index,
                                  struct BpPlacement *out);

/**
 * Name of the part at `index`.
 *
 * # Safety
 * `layout` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_layout_part_name(const struct BpLayout *layout, size_t index, char **out);

/**
 * # Safety
 * `layout` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_layout_to_json(const struct BpLayout *layout, char **out);

/**
 * # Safety
 * `layout` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_layout_to_svg(const struct BpLayout *layout, char **out);

/**
 * # Safety
 * `layout` must come from this library and not have been freed.
 */
void bp_layout_free(struct BpLayout *layout);

/**
 * `2^n · n!` in decimal.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpStatus bp_search_space_size(uint32_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BATCHPLATE_H */
