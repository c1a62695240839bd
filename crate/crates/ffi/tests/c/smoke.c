#include <stdio.h>
#include <string.h>
#include "glim.h"

int main(void) {
    GlimGraph *g = NULL, *p = NULL;
    size_t n = 0, m = 0, girth = 0;
    if (glim_random_regular(20, 3, 7, &g) != GLIM_STATUS_OK) return 1;
    if (glim_product_c4(g, &p) != GLIM_STATUS_OK) return 2;
    if (glim_graph_counts(p, &n, &m) != GLIM_STATUS_OK || n != 80 || m != 200) return 3;
    if (glim_girth(p, &girth) != GLIM_STATUS_OK || girth < 3 || girth > 4) return 4;
    if (glim_random_regular(5, 3, 1, &g) != GLIM_STATUS_INVALID_ARGUMENT) return 5;
    if (strstr(glim_last_error(), "parity") == NULL) return 6;
    glim_graph_free(p);
    glim_graph_free(g);
    printf("ok\n");
    return 0;
}
