#ifndef HKERNEL_HKERNEL_H
#define HKERNEL_HKERNEL_H

/*
 * C interface to the (k,l,H)-kernel library.
 *
 * Every function returns an hk_status. On HK_OK or HK_FALSE any char** output
 * holds a NUL-terminated UTF-8 string owned by the caller (release it with
 * hk_string_free). On an error status the outputs are left untouched and
 * hk_last_error() describes the failure; the message is thread-local and
 * valid until the next call on the same thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HK_API __declspec(dllexport)
#else
#define HK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hk_status {
  HK_OK = 0,
  /* The query ran and the answer is negative: a property is false, a
     hypothesis failed, no kernel was found, or no H-class partition exists. */
  HK_FALSE = 1,
  HK_ERR_MALFORMED = 10,
  HK_ERR_LOOP_ARC = 11,
  HK_ERR_UNKNOWN_COLOR = 12,
  HK_ERR_UNKNOWN_VERTEX = 13,
  HK_ERR_DUPLICATE_ID = 14,
  HK_ERR_PARALLEL_ARC = 15,
  HK_ERR_BAD_PARTITION = 16,
  HK_ERR_INVALID_ARGUMENT = 17,
  HK_ERR_SIZE_LIMIT = 18,
  HK_ERR_IO = 19,
  HK_ERR_INTERNAL = 20
} hk_status;

typedef struct hk_instance hk_instance;

HK_API const char* hk_last_error(void);
HK_API const char* hk_status_name(hk_status status);
HK_API void hk_string_free(char* s);

/* Parses an instance document. The SHA-256 of the bytes is kept as the
   instance digest. */
HK_API hk_status hk_instance_parse(const char* bytes, size_t length, hk_instance** out);
HK_API hk_status hk_instance_load(const char* path, hk_instance** out);
/* Loads one of the shipped fixtures by name. */
HK_API hk_status hk_instance_fixture(const char* name, hk_instance** out);
HK_API void hk_instance_free(hk_instance* instance);

HK_API size_t hk_instance_vertex_count(const hk_instance* instance);
HK_API size_t hk_instance_arc_count(const hk_instance* instance);
/* Lowercase hex SHA-256 of the source bytes. */
HK_API hk_status hk_instance_digest(const hk_instance* instance, char** out);

/* Canonical JSON: colors, vertices and arcs sorted by name. */
HK_API hk_status hk_instance_canonical_json(const hk_instance* instance, char** out);
/* The instance as given, pretty-printed. */
HK_API hk_status hk_instance_json(const hk_instance* instance, char** out);

/* Supplied (validated) or finest H-class partition as text. HK_FALSE with an
   explanation when none exists. */
HK_API hk_status hk_partition_text(const hk_instance* instance, char** out);

typedef enum hk_format { HK_FORMAT_TEXT = 0, HK_FORMAT_JSON = 1, HK_FORMAT_DOT = 2 } hk_format;

HK_API hk_status hk_class_digraph(const hk_instance* instance, hk_format format, char** out);
/* HK_FORMAT_TEXT or HK_FORMAT_JSON. */
HK_API hk_status hk_analyze(const hk_instance* instance, hk_format format, char** out);

typedef struct hk_kernel_request {
  /* classlema (alias thm35), prop41..prop44, thm51..thm55, brute */
  const char* method;
  unsigned k;
  unsigned l;
  /* Comma-separated class names such as "F6,F9", or NULL to search. */
  const char* class_kernel;
  int unchecked;
  /* 0 selects the default bound of 15. */
  size_t brute_force_limit;
} hk_kernel_request;

/* HK_OK: *out is a certificate document that passed verification.
   HK_FALSE: *out is a JSON object {"outcome": ..., ...} describing a failed
   hypothesis, a missing kernel, an unpartitionable instance, or (unchecked
   mode) a set the oracle rejected. */
HK_API hk_status hk_construct_kernel(const hk_instance* instance,
                                     const hk_kernel_request* request, char** out);

/* Comma-separated vertex names. HK_OK when the set is a (k,l,H)-kernel by
   walks, HK_FALSE otherwise; *out explains either way. */
HK_API hk_status hk_verify_set(const hk_instance* instance, const char* vertices,
                               unsigned k, unsigned l, char** out);
/* Checks a certificate document against the instance: digest, then the
   kernel re-verified at the certificate's (k,l). */
HK_API hk_status hk_verify_certificate(const hk_instance* instance,
                                       const char* certificate, size_t length,
                                       char** out);

/* Newline-separated fixture names. */
HK_API hk_status hk_fixture_names(char** out);
/* Writes <dir>/<name>.json for each fixture; *out lists the files. */
HK_API hk_status hk_fixtures_emit(const char* directory, char** out);

/* family: blobs | symmetric-classes | random. Emits instance JSON. */
HK_API hk_status hk_generate(const char* family, uint64_t seed, size_t size, char** out);

#ifdef __cplusplus
}
#endif

#endif /* HKERNEL_HKERNEL_H */
