/* Densest subgraph of K3 plus a pendant vertex, through the C ABI.
 *
 *   cargo build -p supdense-ffi
 *   cc -Icrates/ffi/include crates/ffi/examples/densest.c \
 *      target/debug/libsupdense_ffi.a -lpthread -ldl -lm -o densest
 */
#include <stdio.h>
#include "supdense.h"

int main(void) {
    size_t tails[] = {0, 0, 1, 2};
    size_t heads[] = {1, 2, 2, 3};
    SdOracle *g = NULL;
    SdResult *r = NULL;

    if (sd_oracle_from_edges(4, tails, heads, NULL, 4, &g) != SD_STATUS_OK ||
        sd_densest(g, NULL, 0, &r) != SD_STATUS_OK) {
        fprintf(stderr, "error: %s\n", sd_last_error());
        sd_oracle_free(g);
        return 1;
    }

    int64_t num, den;
    sd_result_density(r, &num, &den);
    size_t ids[4];
    size_t len = sd_result_len(r);
    sd_result_members(r, ids, 4);
    printf("density %lld/%lld, set {", (long long)num, (long long)den);
    for (size_t i = 0; i < len; i++)
        printf(i ? ",%zu" : "%zu", ids[i]);
    printf("}\n");

    sd_result_free(r);
    sd_oracle_free(g);
    return 0;
}
