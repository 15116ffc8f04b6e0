#ifndef SHD_H
#define SHD_H

/* C interface to the strong homotopy derivation engine.
 *
 * Documents are opaque handles holding a graded basis, named maps and the
 * metadata that assembles them into an A-infinity or L-infinity structure,
 * possibly with a derivation. Strings returned through char** are owned by
 * the caller and released with shd_string_free. After a call that does not
 * return SHD_OK, shd_last_error() describes the problem (per thread). */

#include <stdint.h>

#if defined(_WIN32)
#define SHD_API __declspec(dllexport)
#else
#define SHD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shd_status {
  SHD_OK = 0,
  SHD_DEFECT = 1,       /* a relation fails; the report says where */
  SHD_INPUT_ERROR = 2,  /* unreadable or inconsistent input */
  SHD_PRECONDITION = 3, /* e.g. m_1(a) != 0 for an inner derivation */
  SHD_INTERNAL = 4
} shd_status;

typedef struct shd_document shd_document;

SHD_API const char* shd_version(void);
SHD_API const char* shd_last_error(void);
SHD_API void shd_string_free(char* s);

SHD_API shd_status shd_document_load(const char* path, shd_document** out);
SHD_API shd_status shd_document_parse(const char* json_text, shd_document** out);
SHD_API shd_status shd_document_to_json(const shd_document* doc, char** out);
SHD_API void shd_document_free(shd_document* doc);

/* kind: "ainfty", "linfty" or "sh-derivation". Checks every relation up to
 * max_arity on all basis tuples. Returns SHD_OK or SHD_DEFECT; *report is
 * set in both cases. */
SHD_API shd_status shd_verify(const shd_document* doc, const char* kind, int max_arity, char** report);

/* mode: "inner" (element is a combination of basis labels such as "2*e - f"),
 * "tautological", or "reservoir" (random coderivation of degree k-1 drawn from
 * seed, bracketed with the structure). */
SHD_API shd_status shd_derive(const shd_document* doc, const char* mode, const char* element, int k, uint64_t seed,
                              int max_arity, shd_document** out);

/* A-infinity structure (and derivation, when present) to its symmetrization. */
SHD_API shd_status shd_symmetrize(const shd_document* doc, int max_arity, shd_document** out);

/* Bracket of two derivations of the same structure. */
SHD_API shd_status shd_bracket(const shd_document* a, const shd_document* b, shd_document** out);

/* preset: "ass" or "lie". Differentials of x^n and xbar^n. */
SHD_API shd_status shd_operad_differential(const char* preset, int k, int n, int latex, char** out);

/* Scans d(d(g)) for every generator of arity <= max_arity. flip_generator and
 * flip_site may name one printed sign exponent to negate (both NULL for none).
 * Returns SHD_OK or SHD_DEFECT with the report in *report. */
SHD_API shd_status shd_operad_check_d2(const char* preset, int k, int max_arity, const char* flip_generator,
                                       const char* flip_site, int latex, char** report);

/* Newline-separated sign sites of one generator's differential. */
SHD_API shd_status shd_operad_sign_sites(const char* preset, int k, int max_arity, const char* generator,
                                         char** out);

#ifdef __cplusplus
}
#endif

#endif
