#include <stdio.h>
#include "dpcolor.h"

int main(void) {
    DpGraph *g = NULL;
    if (dp_catalog_graph("H2", NULL, &g) != DP_STATUS_OK) return 10;
    DpAssignment *m = NULL;
    if (dp_assignment_random(g, 4, 42, &m) != DP_STATUS_OK) return 11;
    DpColoring *c = NULL;
    if (dp_color_diam2(m, &c) != DP_STATUS_OK) {
        fprintf(stderr, "%s\n", dp_last_error());
        return 12;
    }
    if (!dp_coloring_verify(m, c)) return 13;
    for (size_t v = 0; v < dp_coloring_len(c); v++) {
        uint32_t color = 0;
        dp_coloring_get(c, v, &color);
        char *label = dp_graph_label(g, v);
        printf("%s %u\n", label, color);
        dp_string_free(label);
    }
    DpGraph *bad = NULL;
    if (dp_graph_parse("a a\n", &bad) != DP_STATUS_PARSE) return 14;
    dp_coloring_free(c);
    dp_assignment_free(m);
    dp_graph_free(g);
    return 0;
}
