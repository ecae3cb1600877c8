/* C interface to the redactable-chain library.
 *
 * All functions returning rbc_status set a thread-local message readable
 * via rbc_last_error() on failure. Handles are created by the rbc_*_load /
 * rbc_*_init / rbc_keygen calls and released with the matching *_free.
 * Strings and byte buffers returned through out-parameters are owned by the
 * caller and released with rbc_string_free / rbc_bytes_free; strings
 * returned as plain `const char*` stay owned by the handle they came from.
 */

#ifndef RBCHAIN_H
#define RBCHAIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rbc_status {
  RBC_OK = 0,
  RBC_ERR_ARGUMENT = 1,  /* caller misuse: bad value, unknown block, leaf redaction */
  RBC_ERR_VERIFY = 2,    /* reserved for verification-failure mapping in callers */
  RBC_ERR_PARSE = 3,     /* malformed file */
  RBC_ERR_INTEGRITY = 4, /* well-formed but inconsistent data */
  RBC_ERR_CRYPTO = 5,    /* padding exhausted, unredactable position, bad modulus */
  RBC_ERR_IO = 6,
  RBC_ERR_INTERNAL = 7
} rbc_status;

typedef struct rbc_key rbc_key;
typedef struct rbc_chain rbc_chain;
typedef struct rbc_report rbc_report;

/* Message for the most recent failure on this thread; never NULL. */
const char* rbc_last_error(void);

void rbc_string_free(char* s);
void rbc_bytes_free(uint8_t* p);

/* ---- keys ---- */

/* seed_hex: 1..64 hex digits, or NULL for system entropy.
 * hash_alg: "sha256" or "sha512", or NULL for sha256. */
rbc_status rbc_keygen(unsigned bits_per_prime, const char* seed_hex,
                      const char* hash_alg, rbc_key** out);
rbc_status rbc_key_load(const char* path, rbc_key** out);
rbc_status rbc_key_save(const rbc_key* key, const char* path, int include_private);
void rbc_key_free(rbc_key* key);

int rbc_key_has_private(const rbc_key* key);
rbc_status rbc_key_modulus_hex(const rbc_key* key, char** out);
const char* rbc_key_hash_alg(const rbc_key* key);

/* ---- chains ---- */

rbc_status rbc_chain_init(const rbc_key* key, const char* chain_id, rbc_chain** out);
/* verify = 0 loads structurally valid but possibly inconsistent chains. */
rbc_status rbc_chain_load(const char* path, int verify, rbc_chain** out);
rbc_status rbc_chain_save(const rbc_chain* chain, const char* path);
void rbc_chain_free(rbc_chain* chain);

/* parent = -1 appends the root block of an empty chain. */
rbc_status rbc_chain_append(rbc_chain* chain, int64_t parent, const uint8_t* content,
                            size_t content_len, const char* seed_hex, size_t* new_index);
rbc_status rbc_chain_branch(rbc_chain* chain, size_t at, const char* seed_hex,
                            size_t* new_index);
/* On success *record_json receives {"block", "old_content_digest",
 * "new_content_digest", "offset", "timestamp"}. */
rbc_status rbc_chain_redact(rbc_chain* chain, const rbc_key* key, size_t block,
                            const uint8_t* content, size_t content_len,
                            char** record_json);
rbc_status rbc_chain_verify(const rbc_chain* chain, rbc_report** out);

size_t rbc_chain_block_count(const rbc_chain* chain);
const char* rbc_chain_id(const rbc_chain* chain);
const char* rbc_chain_hash_alg(const rbc_chain* chain);
rbc_status rbc_chain_modulus_hex(const rbc_chain* chain, char** out);
rbc_status rbc_chain_genesis_hex(const rbc_chain* chain, char** out);

/* ---- block inspection ---- */

/* kind: 0 = normal, 1 = intermediate. parent: -1 for the root. */
rbc_status rbc_block_kind(const rbc_chain* chain, size_t block, int* kind);
rbc_status rbc_block_parent(const rbc_chain* chain, size_t block, int64_t* parent);
rbc_status rbc_block_offset(const rbc_chain* chain, size_t block, int* offset);
rbc_status rbc_block_prefix_hex(const rbc_chain* chain, size_t block, char** out);
rbc_status rbc_block_suffix_hex(const rbc_chain* chain, size_t block, char** out);
rbc_status rbc_block_content(const rbc_chain* chain, size_t block, uint8_t** out,
                             size_t* len);
/* Recomputed from the block's stored fields. */
rbc_status rbc_block_next_prefix_hex(const rbc_chain* chain, size_t block, char** out);

/* ---- verification reports ---- */

int rbc_report_ok(const rbc_report* report);
size_t rbc_report_line_count(const rbc_report* report);
/* Lines stay valid until rbc_report_free. NULL when i is out of range. */
const char* rbc_report_line(const rbc_report* report, size_t i);
void rbc_report_free(rbc_report* report);

/* ---- attack demo ---- */

/* Runs `trials` seeded weak-scheme collisions against the key (private part
 * required). weak_forged counts trials where the Bezout forgery passes the
 * weak check x^d; strong_resisted counts trials where it fails the real
 * check x^(d^2+1). */
rbc_status rbc_attack_demo(const rbc_key* key, unsigned trials, const char* seed_hex,
                           unsigned* weak_forged, unsigned* strong_resisted);

#ifdef __cplusplus
}
#endif

#endif /* RBCHAIN_H */
