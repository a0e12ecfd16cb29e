#ifndef TWOLAYER_H
#define TWOLAYER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// All classes of two-layer networks.
#define TL_VARIANT_FULL 0

// Classes of saturated networks.
#define TL_VARIANT_SATURATED 1

// Saturated classes modulo reflection.
#define TL_VARIANT_REFLECTION 2

// Result of a call.
typedef enum TlStatus {
  TL_STATUS_OK = 0,
  TL_STATUS_INVALID_ARGUMENT = 1,
  TL_STATUS_PARSE = 2,
  TL_STATUS_UNSUPPORTED = 3,
  TL_STATUS_RESOURCE_LIMIT = 4,
  TL_STATUS_INTERNAL = 5,
  TL_STATUS_IO = 6,
  TL_STATUS_NULL_POINTER = 7,
  TL_STATUS_PANIC = 8,
} TlStatus;

// Canonical sentences produced by [`tl_generate_classes`].
typedef struct TlClassList TlClassList;

// A comparator network.
typedef struct TlNetwork TlNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *tl_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void tl_string_free(char *s);

// Generates the canonical sentences of `variant` on `n` channels using
// `jobs` worker threads (0 or 1 means sequential).
//
// # Safety
// `out` must be a valid pointer to write the handle to.
enum TlStatus tl_generate_classes(size_t n,
                                  uint32_t variant,
                                  size_t jobs,
                                  struct TlClassList **out);

// Number of sentences in the list; 0 for null.
//
// # Safety
// `list` must be null or a live handle.
size_t tl_class_list_len(const struct TlClassList *list);

// The sentence at `index`, owned by the list; null if out of range.
//
// # Safety
// `list` must be null or a live handle.
const char *tl_class_list_sentence(const struct TlClassList *list, size_t index);

// # Safety
// `list` must be null or a handle not yet freed.
void tl_class_list_free(struct TlClassList *list);

// Counts the classes of `variant` on `n` channels.
//
// # Safety
// `out` must be a valid pointer.
enum TlStatus tl_count_classes(size_t n, uint32_t variant, size_t jobs, uint64_t *out);

// Parses the first network of a text in the `n=<channels>` block format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum TlStatus tl_network_parse(const char *text, struct TlNetwork **out);

// Builds the two-layer network of a sentence on first layer `F_n`.
//
// # Safety
// `sentence` must be a NUL-terminated string and `out` a valid pointer.
enum TlStatus tl_network_from_sentence(const char *sentence, size_t n, struct TlNetwork **out);

// Number of channels; 0 for null.
//
// # Safety
// `net` must be null or a live handle.
size_t tl_network_channels(const struct TlNetwork *net);

// The canonical sentence of a two-layer network with maximal first layer.
//
// # Safety
// `net` must be a live handle and `out` a valid pointer.
enum TlStatus tl_network_sentence(const struct TlNetwork *net, char **out);

// The network in the `n=<channels>` block format.
//
// # Safety
// `net` must be a live handle and `out` a valid pointer.
enum TlStatus tl_network_format(const struct TlNetwork *net, char **out);

// Whether a two-layer network is saturated, decided on its output set.
//
// # Safety
// `net` must be a live handle and `out` a valid pointer.
enum TlStatus tl_network_is_saturated(const struct TlNetwork *net, bool *out);

// # Safety
// `net` must be null or a handle not yet freed.
void tl_network_free(struct TlNetwork *net);

// The sentence of the reflected class of a canonical sentence.
//
// # Safety
// `sentence` must be a NUL-terminated string and `out` a valid pointer.
enum TlStatus tl_reflect_sentence(const char *sentence, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOLAYER_H */
