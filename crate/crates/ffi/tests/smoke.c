#include <stdio.h>
#include <string.h>

#include "gcgt.h"

#define CHECK(cond)                                                \
    do {                                                           \
        if (!(cond)) {                                             \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                              \
        }                                                          \
    } while (0)

int main(void) {
    GcgtGraph *g = NULL;
    CHECK(gcgt_graph_generate("cycle:5", &g) == GCGT_STATUS_OK);
    CHECK(gcgt_graph_n(g) == 5 && gcgt_graph_m(g) == 5);

    GcgtTests *t = NULL;
    CHECK(gcgt_tests_from_text("5 4\n0\n1\n2\n4\n", &t) == GCGT_STATUS_OK);
    bool disjunct = true;
    size_t edge = 0, blocking[2], len = 0;
    CHECK(gcgt_check_disjunct(t, 2, &disjunct, &edge, blocking, 2, &len) == GCGT_STATUS_OK);
    /* edge 3 is in no test, so the empty set already blocks it */
    CHECK(!disjunct && edge == 3 && len == 0);

    size_t failed[] = {1};
    uint8_t outcomes[4];
    CHECK(gcgt_run_tests(t, failed, 1, outcomes, 4, &len) == GCGT_STATUS_OK);
    size_t decoded[5];
    CHECK(gcgt_decode(t, outcomes, 4, decoded, 5, &len) == GCGT_STATUS_OK);
    CHECK(len == 2 && decoded[0] == 1 && decoded[1] == 3);

    GcgtGraph *bad = NULL;
    char msg[256];
    CHECK(gcgt_graph_generate("nonsense", &bad) == GCGT_STATUS_INVALID_PARAMETER);
    CHECK(gcgt_last_error_message(msg, sizeof msg, &len) == GCGT_STATUS_OK);
    CHECK(strstr(msg, "nonsense") != NULL);

    double p = 0.0;
    CHECK(gcgt_gamblers_ruin(0.5, 3, 1, &p) == GCGT_STATUS_OK && p == 0.25);

    gcgt_tests_free(t);
    gcgt_graph_free(g);
    puts("ok");
    return 0;
}
