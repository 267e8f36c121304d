/* Build: cargo build -p topk-afd-ffi --release
 *   cc -Icrates/ffi/include crates/ffi/examples/smoke.c \
 *      target/release/libtopk_afd_ffi.a -lpthread -ldl -lm -o smoke
 * Run:   ./smoke data.csv [k]
 */
#include <stdio.h>
#include <stdlib.h>

#include "topk_afd.h"

static int report(TopkAfdStatus status, const char *what) {
    const char *msg = topk_afd_last_error();
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)status, msg ? msg : "");
    return 1;
}

int main(int argc, char **argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: %s file.csv [k]\n", argv[0]);
        return 2;
    }
    TopkAfdRelation *rel = NULL;
    TopkAfdStatus status = topk_afd_relation_load_csv(argv[1], NULL, &rel);
    if (status != TOPK_AFD_STATUS_OK) return report(status, "load");

    TopkAfdConfig cfg = topk_afd_config_default();
    if (argc > 2) cfg.k = (size_t)strtoul(argv[2], NULL, 10);

    TopkAfdResult *res = NULL;
    status = topk_afd_discover(rel, &cfg, TOPK_AFD_ALGORITHM_OPT, &res);
    if (status != TOPK_AFD_STATUS_OK) {
        topk_afd_relation_free(rel);
        return report(status, "discover");
    }
    for (size_t i = 0; i < topk_afd_result_len(res); i++) {
        TopkAfdEntry e;
        topk_afd_result_entry(res, i, &e);
        printf("%2zu  {", i + 1);
        for (size_t j = 0; j < e.lhs_len; j++)
            printf("%s%s", j ? ", " : "", topk_afd_relation_attribute_name(rel, e.lhs[j]));
        printf("} -> %s  %.6f\n", topk_afd_relation_attribute_name(rel, e.rhs), e.score);
    }
    TopkAfdStats stats;
    topk_afd_result_stats(res, &stats);
    printf("evaluated %llu candidates in %.3f ms\n", (unsigned long long)stats.evaluated_candidates, stats.elapsed_ms);

    topk_afd_result_free(res);
    topk_afd_relation_free(rel);
    return 0;
}
